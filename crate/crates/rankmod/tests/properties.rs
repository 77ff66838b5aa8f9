//! Cross-module property suites: metric axioms, the structural
//! inequalities each construction leans on, and the scaling laws behind
//! the parameter formulas. Large-n behavior is covered here by checking
//! the exact inequalities at every tested size, not by measurement.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rankmod::analysis;
use rankmod::gf::{Field, LinearizedPoly};
use rankmod::gray;
use rankmod::perm::{kendall_distance, InversionVector, Permutation};
use rankmod::quant;

fn random_perm(n: usize, rng: &mut StdRng) -> Permutation {
    let mut entries: Vec<u32> = (1..=n as u32).collect();
    entries.shuffle(rng);
    Permutation::from_one_line(entries).unwrap()
}

fn perm_triple(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (2usize..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        (
            random_perm(n, &mut rng),
            random_perm(n, &mut rng),
            random_perm(n, &mut rng),
        )
    })
}

// --- Kendall metric axioms ---

proptest! {
    #[test]
    fn kendall_is_a_metric((a, b, c) in perm_triple(40)) {
        let ab = kendall_distance(&a, &b).unwrap();
        let ba = kendall_distance(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(kendall_distance(&a, &a).unwrap(), 0);
        prop_assert_eq!(ab == 0, a == b);
        let ac = kendall_distance(&a, &c).unwrap();
        let bc = kendall_distance(&b, &c).unwrap();
        prop_assert!(ac <= ab + bc);
        // Diameter of the adjacent-transposition graph.
        let n = a.n() as u64;
        prop_assert!(ab <= n * (n - 1) / 2);
    }

    #[test]
    fn kendall_is_right_invariant((a, b, s) in perm_triple(40)) {
        // In the row convention ("apply the left factor first") this is
        // d(as, bs) = d(a, b); with `compose` written as function
        // composition the common factor lands on the left.
        let before = kendall_distance(&a, &b).unwrap();
        let after = kendall_distance(&s.compose(&a).unwrap(), &s.compose(&b).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn inversion_vectors_biject_and_preserve_weight((a, _, _) in perm_triple(60)) {
        let x = a.to_inversion_vector();
        prop_assert_eq!(Permutation::from_inversion_vector(&x), a.clone());
        prop_assert_eq!(x.weight(), a.inversion_count());
        let id = Permutation::identity(a.n());
        prop_assert_eq!(x.weight(), kendall_distance(&a, &id).unwrap());
    }

    #[test]
    fn kendall_dominates_coordinate_gap((a, b, _) in perm_triple(60)) {
        let d = kendall_distance(&a, &b).unwrap();
        let l1 = a
            .to_inversion_vector()
            .l1_distance(&b.to_inversion_vector())
            .unwrap();
        prop_assert!(d >= l1, "kendall {} < l1 {}", d, l1);
    }
}

// --- Linearized polynomials ---

proptest! {
    #[test]
    fn linearized_polys_act_additively(
        field_pick in 0usize..4,
        coeff_seed in any::<u64>(),
        x in 0u32..64,
        y in 0u32..64,
    ) {
        let (p, m) = [(2, 3), (2, 6), (3, 2), (5, 2)][field_pick];
        let f = Field::new(p, m).unwrap();
        let mut rng = StdRng::seed_from_u64(coeff_seed);
        let coeffs: Vec<u32> = (0..m).map(|_| rng.random_range(0..f.q())).collect();
        let poly = LinearizedPoly::new(coeffs);
        let (x, y) = (x % f.q(), y % f.q());
        let lhs = poly.eval(&f, f.add(x, y));
        let rhs = f.add(poly.eval(&f, x), poly.eval(&f, y));
        prop_assert_eq!(lhs, rhs);
    }
}

// --- Gray reflection and clipping ---

/// Hamming distance between the bit strings of `u` and `v`.
fn bit_distance(u: u64, v: u64) -> u32 {
    (u ^ v).count_ones()
}

proptest! {
    #[test]
    fn gray_gap_amplifies_hamming_distance(w in 1u32..=16, u in any::<u64>(), v in any::<u64>()) {
        let mask = (1u64 << w) - 1;
        let (u, v) = (u & mask, v & mask);
        let gu = u ^ (u >> 1);
        let gv = v ^ (v >> 1);
        let dh = bit_distance(gu, gv) as u64;
        let gap = u.abs_diff(v);
        // The reflection structure forces integer gaps to grow
        // geometrically with the Hamming distance of the code words:
        // gap >= (2^dh - 1)/3, tight at odd dh (e.g. 1 vs 4 at dh = 3).
        prop_assert!(3 * gap >= (1u64 << dh) - 1, "w={} u={} v={} dh={} gap={}", w, u, v, dh, gap);
        prop_assert!(gap >= dh || u == v);
    }

    #[test]
    fn measured_gaps_meet_the_aggregate_bound(
        n in 3usize..40,
        seed in any::<u64>(),
    ) {
        // Random serialized words of the full layout: the summed
        // coordinate gap must clear both bound encodings.
        let layout = gray::GrayLayout::new(n).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let a: Vec<u32> = (0..layout.total_bits()).map(|_| rng.random_range(0..2)).collect();
        let b: Vec<u32> = (0..layout.total_bits()).map(|_| rng.random_range(0..2)).collect();
        let dh = a.iter().zip(&b).filter(|(x, y)| x != y).count();
        let mut d1 = 0u64;
        for idx in 0..n - 1 {
            let (lo, w) = (layout.offset(idx), layout.width(idx) as usize);
            let ua = gray::inverse_gray(&a[lo..lo + w]).unwrap();
            let ub = gray::inverse_gray(&b[lo..lo + w]).unwrap();
            d1 += ua.abs_diff(ub);
        }
        let bound = gray::kendall_distance_lower_bound(n, dh).unwrap();
        prop_assert!(d1 as f64 >= bound - 1e-9, "n={} dh={} d1={} bound={}", n, dh, d1, bound);
        prop_assert!(gray::distance_bound_holds(n, dh, d1).unwrap());
    }

    #[test]
    fn clipping_moves_estimates_closer(x in 0u32..1000, truth in 0u32..200, max in 0u32..200) {
        // The decoder clips observed coordinates into the layout range;
        // for any true value inside the range this never increases the
        // error, so distance bounds survive clipping.
        prop_assume!(truth <= max);
        let clipped = x.min(max);
        prop_assert!(clipped.abs_diff(truth) <= x.abs_diff(truth));
    }
}

// --- Quantizer radius scaling ---

proptest! {
    #[test]
    fn threshold_radius_is_quarter_square(t in 0usize..5000) {
        // Independent re-derivation: an adversary flipping the i-th
        // embedded bit can be survived iff the threshold sits floor(i/2)
        // rank steps clear, so the exact radius is the running sum of
        // those clearances.
        let running: usize = (1..=t).map(|i| i / 2).sum();
        prop_assert_eq!(quant::radius_iiia(t), running);
        prop_assert_eq!(quant::radius_iiia(t), t * t / 4);
    }

    #[test]
    fn banded_radius_scales_quadratically(t in 1usize..3000, q in 2u32..120) {
        let r = quant::radius_iiib(t, q).unwrap() as u128;
        let t = t as u128;
        let q1 = (q - 1) as u128;
        // Sandwich r = Theta(t^2 / q): the radius formula sits between
        // t^2/(4(q-1)) and (t+2q)^2/(4(q-1)).
        prop_assert!(4 * q1 * r >= t * t, "lower: q={} t={} r={}", q, t, r);
        prop_assert!(4 * q1 * r <= (t + 2 * q as u128).pow(2), "upper: q={} t={} r={}", q, t, r);
    }

    #[test]
    fn banded_radius_is_monotone_in_t(t in 1usize..2000, q in 2u32..60) {
        let a = quant::radius_iiib(t, q).unwrap();
        let b = quant::radius_iiib(t + 1, q).unwrap();
        prop_assert!(b >= a);
    }
}

// --- Sphere sizes and bounds ---

proptest! {
    #[test]
    fn sphere_sizes_sum_and_reflect(n in 2usize..40) {
        let table = analysis::sphere_sizes(n).unwrap();
        let diameter = table.diameter();
        prop_assert_eq!(table.ball(diameter), analysis::factorial(n));
        for i in 0..=diameter / 2 {
            prop_assert_eq!(&table.sizes()[i], &table.sizes()[diameter - i]);
        }
    }

    #[test]
    fn packing_bound_shrinks_as_radius_grows(n in 4usize..30, t in 0usize..6) {
        let loose = analysis::hamming_type_bound(n, t).unwrap().log2();
        let tight = analysis::hamming_type_bound(n, t + 1).unwrap().log2();
        prop_assert!(tight <= loose);
    }
}

// --- Rate and redundancy sweeps ---

#[test]
fn bit_cost_tracks_capacity_up_to_n_2000() {
    // One pass over every n: the serialized bit cost never exceeds the
    // permutation capacity, the gap stays under the (3 - log2 e) n
    // estimate, and past the two calibration points the loss fraction
    // stays under 10% and 7%.
    for n in 2..=2000 {
        let report = analysis::encoding_redundancy(n).unwrap();
        assert!(report.redundancy >= 0.0, "n={n}: bits exceed capacity");
        assert!(
            report.redundancy <= report.estimate,
            "n={n}: {} > {}",
            report.redundancy,
            report.estimate
        );
        if n >= 69 {
            assert!(report.redundancy < 0.10, "n={n}: {}", report.redundancy);
        }
        if n >= 527 {
            assert!(report.redundancy < 0.07, "n={n}: {}", report.redundancy);
        }
    }
}

#[test]
fn gray_family_rate_approaches_one() {
    // Rate of the guaranteed (n, m(n) - a t, 2t + 1) family at t = 1:
    // strictly improving along powers of two, crossing 0.9 by n = 256.
    let mut last = 0.0;
    for exp in 4..=10 {
        let n = 1usize << exp;
        let rows = analysis::parameter_table(&analysis::TableSpec::II { n, t_max: 1 }).unwrap();
        let rate = analysis::code_rate(n, rows[0].log2_m).unwrap();
        assert!(rate > last, "rate fell from {last} to {rate} at n = {n}");
        last = rate;
    }
    assert!(last > 0.93, "rate at n = 1024 is only {last}");
}

// --- Inversion vector coordinate bounds ---

proptest! {
    #[test]
    fn coordinate_bounds_are_exact(n in 2usize..50, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_perm(n, &mut rng);
        let x = p.to_inversion_vector();
        for (i, &c) in x.coords().iter().enumerate() {
            prop_assert!(c <= i as u32 + 1);
        }
        // Every coordinate pattern inside the box is hit by some
        // permutation: rebuild from a perturbed vector and map back.
        let coords: Vec<u32> = x
            .coords()
            .iter()
            .enumerate()
            .map(|(i, _)| rng.random_range(0..i as u32 + 2))
            .collect();
        let iv = InversionVector::new(coords.clone()).unwrap();
        let q = Permutation::from_inversion_vector(&iv);
        prop_assert_eq!(q.to_inversion_vector(), iv);
    }
}

// --- Gray codes meet their seed distance ---

#[test]
fn gray_code_distance_meets_seed_distance_exhaustively() {
    // n = 8 carries a 13-bit layout; a shortened BCH [13, 5, >= 5] seed
    // must push pairwise Kendall distance to at least 5.
    let seed = rankmod::block::make_bch(4, 2, 2).unwrap();
    let d_seed = seed.design_distance();
    let code = gray::GrayCode::new(8, seed).unwrap();
    let mut words = Vec::new();
    for index in 0..(1u32 << 5) {
        let bits: Vec<u32> = (0..5).rev().map(|b| (index >> b) & 1).collect();
        words.push(code.encode(&bits).unwrap());
    }
    let mut min = u64::MAX;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            min = min.min(kendall_distance(&words[i], &words[j]).unwrap());
        }
    }
    assert!(min >= d_seed as u64, "min {} < seed distance {}", min, d_seed);
}
