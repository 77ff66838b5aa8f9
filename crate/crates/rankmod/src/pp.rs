//! Rank modulation codes from linearized permutation polynomials
//! (length `n = q - 1`, correcting `t` Kendall errors).
//!
//! Codewords are the evaluation tables of linearized permutation
//! polynomials `L` of p-degree at most `nu = ⌊log_p(n - 2t - 1)⌋`,
//! read as permutations through the symbol bijection `i ↔ g^(i-1)`
//! (with `g` the field generator). There are at least `q^nu` such
//! polynomials.
//!
//! Decoding rides on an accumulator map: prefix sums turn one adjacent
//! transposition of the permutation into one symbol error of the summed
//! vector. Because `L` is additive, the accumulated codeword is `L`
//! evaluated at the prefix sums `beta_i = 1 + g + … + g^i`, which are
//! pairwise-distinct points, so a Reed-Solomon decoder of dimension
//! `n - 2t` corrects `t` accumulated errors and differencing restores
//! the permutation.

use crate::block::{BlockCode, DecodeOutcome, GrsCode};
use crate::gf::{
    enumerate_permutation_polys, permutation_poly_lower_bound, Field, LinearizedPoly,
    DEFAULT_ENUMERATION_CAP,
};
use crate::perm::Permutation;
use crate::Error;
use std::collections::HashMap;

/// Code parameters derived without building a codebook:
/// `(n, log2_size_bound, distance)` with `log2_size_bound = nu·log2 q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PpTriple {
    pub n: usize,
    pub log2_size: f64,
    pub d: usize,
    pub nu: usize,
}

/// Degree bound `nu = ⌊log_p(n - 2t - 1)⌋` and the triple it certifies.
pub fn descriptor_triple(p: u32, m: u32, t: usize) -> Result<PpTriple, Error> {
    if !(1..=16).contains(&m) {
        return Err(Error::InvalidParameter(format!("extension degree {m} outside 1..=16")));
    }
    let q = (p as u64).pow(m);
    let n = (q - 1) as usize;
    if t == 0 || 2 * t + 2 > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= (n-2)/2 with n = {n}, got t = {t}"
        )));
    }
    let reach = (n - 2 * t - 1) as u64;
    let mut nu = 0usize;
    let mut pw = p as u64;
    while pw <= reach {
        nu += 1;
        pw *= p as u64;
    }
    Ok(PpTriple {
        n,
        log2_size: nu as f64 * m as f64 * (p as f64).log2(),
        d: 2 * t + 1,
        nu,
    })
}

/// A constructed permutation-polynomial code with an enumerated,
/// canonically ordered codebook. Message indexes address codewords in
/// enumeration order, so index 0 is always the identity permutation
/// (the polynomial `x`).
pub struct PpCode {
    field: Field,
    t: usize,
    nu: usize,
    codebook: Vec<LinearizedPoly>,
    index_of: HashMap<Vec<u32>, usize>,
    /// Evaluation points 1, g, …, g^(n-1).
    points: Vec<u32>,
    /// Accumulated points beta_k = 1 + g + … + g^k. Geometric-sum
    /// telescoping makes them pairwise distinct; the last one is 0.
    betas: Vec<u32>,
    grs: GrsCode,
}

impl PpCode {
    /// Builds the code over GF(p^m) with Kendall radius `t`, enumerating
    /// the codebook (the scan covers `q^(nu+1)` tuples and errors beyond
    /// `cap`; see [`DEFAULT_ENUMERATION_CAP`]).
    pub fn new(p: u32, m: u32, t: usize, cap: u64) -> Result<PpCode, Error> {
        let triple = descriptor_triple(p, m, t)?;
        let field = Field::new(p, m)?;
        let n = triple.n;
        let nu = triple.nu;
        let codebook = enumerate_permutation_polys(&field, nu, cap)?;
        debug_assert!(codebook.len() as u128 >= permutation_poly_lower_bound(&field, nu));
        let index_of = codebook
            .iter()
            .enumerate()
            .map(|(i, l)| (l.coeffs().to_vec(), i))
            .collect();
        let points: Vec<u32> = (0..n as u64).map(|i| field.exp_generator(i)).collect();
        let mut betas = Vec::with_capacity(n);
        let mut acc = 0u32;
        for &x in &points {
            acc = field.add(acc, x);
            betas.push(acc);
        }
        {
            let mut sorted = betas.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::InvalidParameter(
                    "accumulated evaluation points must be distinct".into(),
                ));
            }
        }
        // The first nu + 1 accumulated points come from 1, g, …, g^nu by a
        // unit-triangular transform, so they are independent over the prime
        // field and the interpolation step of decoding cannot go singular.
        // Probe once so a violation surfaces at construction time.
        if interpolate_linearized(&field, &betas[..=nu], &vec![0; nu + 1]).is_none() {
            return Err(Error::InvalidParameter(
                "interpolation points are linearly dependent".into(),
            ));
        }
        let grs = GrsCode::new(field.clone(), betas.clone(), n - 2 * t)?;
        Ok(PpCode { field, t, nu, codebook, index_of, points, betas, grs })
    }

    pub fn with_default_cap(p: u32, m: u32, t: usize) -> Result<PpCode, Error> {
        PpCode::new(p, m, t, DEFAULT_ENUMERATION_CAP)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Permutation length `n = q - 1`.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Kendall correction radius.
    pub fn radius(&self) -> usize {
        self.t
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn codebook_len(&self) -> usize {
        self.codebook.len()
    }

    pub fn codebook(&self) -> &[LinearizedPoly] {
        &self.codebook
    }

    /// Symbol bijection: value `v` in 1..=n maps to `g^(v-1)`.
    fn value_to_field(&self, v: u32) -> u32 {
        self.field.exp_generator(v as u64 - 1)
    }

    fn field_to_value(&self, x: u32) -> Result<u32, Error> {
        Ok(self.field.dlog(x)? + 1)
    }

    /// Encodes the codeword at `index` in canonical codebook order.
    pub fn encode(&self, index: usize) -> Result<Permutation, Error> {
        let l = self.codebook.get(index).ok_or(Error::SymbolOutOfRange {
            index: 0,
            value: index.min(u32::MAX as usize) as u32,
            alphabet: self.codebook.len().min(u32::MAX as usize) as u32,
        })?;
        let mut entries = Vec::with_capacity(self.n());
        for &x in &self.points {
            entries.push(self.field_to_value(l.eval(&self.field, x))?);
        }
        Permutation::from_one_line(entries)
    }

    /// Prefix sums of the received permutation under the symbol
    /// bijection; an adjacent transposition at position `i` disturbs
    /// only entry `i - 1` of this vector.
    fn accumulate(&self, word: &Permutation) -> Vec<u32> {
        let mut acc = 0u32;
        word.entries()
            .iter()
            .map(|&v| {
                acc = self.field.add(acc, self.value_to_field(v));
                acc
            })
            .collect()
    }

    /// Bounded-distance decoding of up to `t` Kendall errors. Returns
    /// the message index and the corrected permutation, or `None` when
    /// the accumulated word is beyond the Reed-Solomon radius or the
    /// corrected word falls outside the codebook.
    pub fn decode(&self, word: &Permutation) -> Result<Option<(usize, Permutation)>, Error> {
        if word.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: word.n() });
        }
        let z = self.accumulate(word);
        let y = match self.grs.decode(&z)? {
            DecodeOutcome::Decoded { codeword, .. } => codeword,
            DecodeOutcome::Failure => return Ok(None),
        };
        // Difference the corrected accumulator vector back into symbols.
        let f = &self.field;
        let mut symbols = Vec::with_capacity(self.n());
        let mut prev = 0u32;
        for &v in &y {
            let s = f.sub(v, prev);
            if s == 0 {
                return Ok(None);
            }
            symbols.push(s);
            prev = v;
        }
        // Membership: the codeword must be the evaluation table of a
        // linearized permutation polynomial of p-degree at most nu.
        // Interpolating at nu+1 accumulated points pins the candidate;
        // its full evaluation vector and kernel are then checked, so no
        // dictionary over permutations is needed.
        let Some(cand) = interpolate_linearized(f, &self.betas[..=self.nu], &y[..=self.nu])
        else {
            return Ok(None);
        };
        for (k, &b) in self.betas.iter().enumerate() {
            if cand.eval(f, b) != y[k] {
                return Ok(None);
            }
        }
        if !cand.is_permutation(f) {
            return Ok(None);
        }
        let index = *self
            .index_of
            .get(cand.coeffs())
            .expect("verified permutation polynomial is enumerated");
        let mut entries = Vec::with_capacity(self.n());
        for &s in &symbols {
            entries.push(self.field_to_value(s)?);
        }
        match Permutation::from_one_line(entries) {
            Ok(perm) => Ok(Some((index, perm))),
            Err(_) => Ok(None),
        }
    }

    /// Guaranteed codebook size `q^nu`.
    pub fn size_lower_bound(&self) -> u128 {
        (self.field.q() as u128).pow(self.nu as u32)
    }
}

/// Solves for the linearized polynomial with coefficient slots
/// `a_0..=a_nu` matching the given values on `nu + 1` points that are
/// linearly independent over the prime field (Gaussian elimination on
/// the Moore matrix). Returns `None` when the system is singular.
fn interpolate_linearized(f: &Field, gammas: &[u32], values: &[u32]) -> Option<LinearizedPoly> {
    let s = gammas.len();
    let mut mat: Vec<Vec<u32>> = (0..s)
        .map(|k| {
            let mut row = Vec::with_capacity(s + 1);
            let mut pw = gammas[k];
            for i in 0..s {
                if i > 0 {
                    pw = f.frobenius(pw);
                }
                row.push(pw);
            }
            row.push(values[k]);
            row
        })
        .collect();
    for col in 0..s {
        let piv = (col..s).find(|&r| mat[r][col] != 0)?;
        mat.swap(col, piv);
        let inv = f.inv(mat[col][col]).ok()?;
        for entry in &mut mat[col][col..=s] {
            *entry = f.mul(*entry, inv);
        }
        let pivot_row = mat[col].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let c = row[col];
                for (entry, &p) in row[col..=s].iter_mut().zip(&pivot_row[col..=s]) {
                    *entry = f.sub(*entry, f.mul(c, p));
                }
            }
        }
    }
    Some(LinearizedPoly::new((0..s).map(|k| mat[k][s]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{apply_kendall_errors, kendall_distance};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn gf8_codebook_is_the_full_linear_group() {
        // With nu = 2 over GF(8), the candidate tuples are exactly the
        // F_2-linear endomorphisms of the field, so the permutation
        // polynomials are the invertible ones: |GL(3,2)| = 168.
        let code = PpCode::with_default_cap(2, 3, 1).unwrap();
        assert_eq!(code.n(), 7);
        assert_eq!(code.nu(), 2);
        assert_eq!(code.codebook_len(), 168);
        assert!(code.codebook_len() as u128 >= code.size_lower_bound());
        assert_eq!(code.size_lower_bound(), 64);
    }

    #[test]
    fn index_zero_is_the_identity_permutation() {
        let code = PpCode::with_default_cap(2, 3, 1).unwrap();
        assert_eq!(code.encode(0).unwrap(), Permutation::identity(7));
    }

    #[test]
    fn round_trip_without_errors() {
        let code = PpCode::with_default_cap(2, 3, 1).unwrap();
        for idx in 0..code.codebook_len() {
            let cw = code.encode(idx).unwrap();
            let (got, corrected) = code.decode(&cw).unwrap().expect("clean decode");
            assert_eq!(got, idx);
            assert_eq!(corrected, cw);
        }
    }

    #[test]
    fn random_errors_within_radius_decode_over_gf16() {
        // GF(16), t = 2: n = 15, nu = ⌊log2 10⌋ = 3, codebook >= 4096.
        let code = PpCode::with_default_cap(2, 4, 2).unwrap();
        assert_eq!(code.nu(), 3);
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..200 {
            let idx = rng.random_range(0..code.codebook_len());
            let cw = code.encode(idx).unwrap();
            let noisy = apply_kendall_errors(&cw, code.radius(), &mut rng).unwrap();
            let (got, corrected) = code.decode(&noisy).unwrap().expect("within radius");
            assert_eq!(got, idx);
            assert_eq!(corrected, cw);
        }
    }

    #[test]
    fn odd_characteristic_round_trip() {
        // GF(9): n = 8, t = 1, nu = 1; differencing uses true
        // subtraction here, unlike the self-inverse char-2 case.
        let code = PpCode::with_default_cap(3, 2, 1).unwrap();
        assert_eq!(code.codebook_len(), 48);
        let mut rng = StdRng::seed_from_u64(43);
        for idx in 0..code.codebook_len() {
            let cw = code.encode(idx).unwrap();
            let noisy = apply_kendall_errors(&cw, 1, &mut rng).unwrap();
            let (got, corrected) = code.decode(&noisy).unwrap().expect("single error");
            assert_eq!(got, idx);
            assert_eq!(corrected, cw);
        }
    }

    #[test]
    fn codeword_distances_respect_the_design_distance_spot_check() {
        let code = PpCode::with_default_cap(2, 3, 1).unwrap();
        let words: Vec<Permutation> =
            (0..code.codebook_len()).map(|i| code.encode(i).unwrap()).collect();
        for i in (0..words.len()).step_by(7) {
            for j in (i + 1..words.len()).step_by(5) {
                assert!(kendall_distance(&words[i], &words[j]).unwrap() >= 3);
            }
        }
    }

    #[test]
    fn descriptor_triples_for_64_and_256_point_fields() {
        for (m, t, log2m, d) in [(6, 15, 30.0, 31), (6, 23, 24.0, 47), (8, 63, 56.0, 127), (8, 95, 48.0, 191)] {
            let triple = descriptor_triple(2, m, t).unwrap();
            assert_eq!(triple.n, (1usize << m) - 1);
            assert_eq!(triple.log2_size, log2m);
            assert_eq!(triple.d, d);
        }
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        assert!(descriptor_triple(2, 3, 0).is_err());
        assert!(descriptor_triple(2, 3, 3).is_err());
        assert!(matches!(
            PpCode::new(2, 6, 15, DEFAULT_ENUMERATION_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }
}
