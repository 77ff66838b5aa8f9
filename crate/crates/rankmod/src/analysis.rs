//! Combinatorics of the Kendall metric and parameter tables: sphere
//! sizes, packing-style size bounds, code rate, the bit cost of the
//! inversion-vector embedding, and tabulation of the code families this
//! crate constructs.
//!
//! All counting runs in exact big integers; base-2 logarithms are taken
//! at the end through a fixed-point routine carrying 64 fractional bits
//! (truncation error below 2^-120, so the returned `f64` is correct to
//! its last bit).

use crate::block::BlockCode;
use crate::gf::Field;
use crate::gray;
use crate::quant;
use crate::{pp, Error};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Largest permutation length [`sphere_sizes`] accepts; the table holds
/// `n(n-1)/2 + 1` big integers.
pub const MAX_SPHERE_N: usize = 500;

// --- Sphere sizes ---

/// The distribution of Kendall distances from a fixed permutation:
/// `size(i)` counts permutations of `[n]` with exactly `i` inversions.
#[derive(Clone, Debug)]
pub struct SphereTable {
    n: usize,
    sizes: Vec<BigUint>,
}

impl SphereTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest possible distance, `n(n-1)/2`.
    pub fn diameter(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// All sphere sizes, indexed by distance `0..=diameter`.
    pub fn sizes(&self) -> &[BigUint] {
        &self.sizes
    }

    pub fn size(&self, i: usize) -> BigUint {
        self.sizes.get(i).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Number of permutations within distance `r`.
    pub fn ball(&self, r: usize) -> BigUint {
        self.sizes.iter().take(r + 1).sum()
    }
}

/// Builds the sphere table by expanding
/// `Π_{j=1..n} (1 + x + … + x^{j-1})` with a sliding-window sum.
pub fn sphere_sizes(n: usize) -> Result<SphereTable, Error> {
    if n == 0 || n > MAX_SPHERE_N {
        return Err(Error::InvalidParameter(format!(
            "sphere table supports 1..={MAX_SPHERE_N} elements, got {n}"
        )));
    }
    let diameter = n * (n - 1) / 2;
    let mut sizes = vec![BigUint::zero(); diameter + 1];
    sizes[0] = BigUint::one();
    let mut filled = 0usize;
    for j in 2..=n {
        filled += j - 1;
        // Multiply by (1 + x + … + x^(j-1)): each new coefficient is a
        // window sum of the previous row, maintained incrementally.
        let mut next = Vec::with_capacity(filled + 1);
        next.push(sizes[0].clone());
        for i in 1..=filled {
            let mut v = &next[i - 1] + &sizes[i];
            if i >= j {
                v -= &sizes[i - j];
            }
            next.push(v);
        }
        sizes[..=filled].clone_from_slice(&next);
    }
    Ok(SphereTable { n, sizes })
}

/// Closed forms for small distances: `1`, `n-1`, `(n²-n-2)/2`,
/// `C(n+1,3) - n`. Returns `None` for `i > 3` (no closed form wired)
/// or when the form needs a larger `n` than given.
pub fn sphere_closed_form(n: usize, i: usize) -> Option<BigUint> {
    let nb = BigUint::from(n);
    match i {
        0 => Some(BigUint::one()),
        1 if n >= 2 => Some(&nb - 1u32),
        2 if n >= 3 => Some((&nb * &nb - &nb - 2u32) / 2u32),
        3 if n >= 4 => {
            let np1 = &nb + 1u32;
            Some(&np1 * &nb * (&nb - 1u32) / 6u32 - &nb)
        }
        _ => None,
    }
}

pub fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

// --- High-precision base-2 logarithms ---

/// `log2` of a positive big integer. The mantissa is tracked as a
/// 192-bit fixed-point number and 64 fractional bits are extracted by
/// repeated squaring, so truncation error stays below 2^-120; the
/// result is then rounded once to `f64`.
pub fn log2_biguint(x: &BigUint) -> Result<f64, Error> {
    if x.is_zero() {
        return Err(Error::InvalidParameter("log2 of zero".into()));
    }
    const P: u64 = 192;
    let bits = x.bits();
    let mut m = if bits >= P { x >> (bits - P) } else { x << (P - bits) };
    let two = BigUint::one() << P;
    let mut frac = 0u64;
    for i in (0..64).rev() {
        m = (&m * &m) >> (P - 1);
        if m >= two {
            m >>= 1;
            frac |= 1u64 << i;
        }
    }
    Ok((bits - 1) as f64 + frac as f64 / 2f64.powi(64))
}

pub fn log2_factorial(n: usize) -> f64 {
    log2_biguint(&factorial(n)).expect("factorial is positive")
}

/// `table[k] = log2(k!)` for `k = 0..=max`, sharing one running
/// product so sweeps stay cheap.
pub fn log2_factorial_table(max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(max + 1);
    let mut fact = BigUint::one();
    table.push(0.0);
    for k in 1..=max {
        fact *= k;
        table.push(log2_biguint(&fact).expect("positive"));
    }
    table
}

// --- Size bounds ---

/// A code size bound kept as an exact ratio, with `log2` for display.
#[derive(Clone, Debug)]
pub struct SizeBound {
    pub numer: BigUint,
    pub denom: BigUint,
}

impl SizeBound {
    pub fn log2(&self) -> f64 {
        log2_biguint(&self.numer).expect("positive") - log2_biguint(&self.denom).expect("positive")
    }
}

/// Packing bound on codes correcting `t` Kendall errors:
/// `M ≤ n! / Σ_{i=0..t} K_n(i)`.
pub fn hamming_type_bound(n: usize, t: usize) -> Result<SizeBound, Error> {
    let table = sphere_sizes(n)?;
    Ok(SizeBound { numer: factorial(n), denom: table.ball(t) })
}

/// Size `n!/(2n)` of the classical single-error-correcting family,
/// the reference the packing bound gets compared against; as `log2`.
pub fn single_error_reference_log2(n: usize) -> Result<f64, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    Ok(log2_biguint(&factorial(n))? - log2_biguint(&BigUint::from(2 * n))?)
}

/// Fraction of the Kendall-space capacity a codebook of `2^log2_m`
/// words uses: `log2_m / log2(n!)`.
pub fn code_rate(n: usize, log2_m: f64) -> Result<f64, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if log2_m < 0.0 {
        return Err(Error::InvalidParameter(format!("log2_m must be >= 0, got {log2_m}")));
    }
    Ok(log2_m / log2_factorial(n))
}

// --- Embedding redundancy ---

/// How many of the `log2(n!)` available bits the error-free
/// inversion-vector bit embedding gives up, with the closed-form
/// estimate `(3 - log2 e)·n / log2(n!)` it stays under.
#[derive(Clone, Debug, Serialize)]
pub struct RedundancyReport {
    pub n: usize,
    /// Bits the embedding carries (the Gray layout total).
    pub bits: usize,
    /// `1 - bits/log2(n!)`.
    pub redundancy: f64,
    /// `(3 - log2 e)·n / log2(n!)`.
    pub estimate: f64,
}

pub fn encoding_redundancy(n: usize) -> Result<RedundancyReport, Error> {
    let bits = gray::serialized_bits(n)?;
    let capacity = log2_factorial(n);
    Ok(RedundancyReport {
        n,
        bits,
        redundancy: 1.0 - bits as f64 / capacity,
        estimate: (3.0 - std::f64::consts::LOG2_E) * n as f64 / capacity,
    })
}

// --- Parameter tables ---

/// One `(n, log2 M, d)` row of a parameter table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub log2_m: f64,
    pub d: usize,
    pub construction: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
}

/// A family sweep. Rows come from each construction's parameter
/// arithmetic; nothing is encoded or decoded.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "construction")]
pub enum TableSpec {
    /// Linearized-polynomial codes over GF(p^m), one row per `t`.
    I { p: u32, m: u32, ts: Vec<usize> },
    /// Gray-embedded codes of length `n` with the guaranteed BCH
    /// redundancy spend, `t = 1..=t_max`.
    II { n: usize, t_max: usize },
    /// Threshold-embedded BCH seeds on `2^ext_degree` cells, one row
    /// per `t`, using the actual BCH dimension.
    IIIA { ext_degree: u32, ts: Vec<usize> },
    /// Banded embedding with a GRS-product seed over GF(p^m): fixed row
    /// code `[row_n, row_k]`, column length `col_n`, one table row per
    /// column dimension.
    IIIB { p: u32, m: u32, l: usize, row_n: usize, row_k: usize, col_n: usize, col_ks: Vec<usize> },
}

pub fn parameter_table(spec: &TableSpec) -> Result<Vec<TableRow>, Error> {
    let mut rows = Vec::new();
    match spec {
        TableSpec::I { p, m, ts } => {
            for &t in ts {
                let triple = pp::descriptor_triple(*p, *m, t)?;
                rows.push(TableRow {
                    n: triple.n,
                    log2_m: triple.log2_size,
                    d: triple.d,
                    construction: "I".into(),
                    seed: None,
                });
            }
        }
        TableSpec::II { n, t_max } => {
            let bits = gray::serialized_bits(*n)?;
            for (n, k, d) in gray::descriptor_family(*n, *t_max)? {
                rows.push(TableRow {
                    n,
                    log2_m: k as f64,
                    d,
                    construction: "II".into(),
                    seed: Some(format!("bch[{bits},t={}]", (d - 1) / 2)),
                });
            }
        }
        TableSpec::IIIA { ext_degree, ts } => {
            for &t in ts {
                let seed = crate::block::BchCode::new(*ext_degree, t)?;
                rows.push(TableRow {
                    n: seed.len() + 1,
                    log2_m: seed.dimension() as f64,
                    d: 2 * quant::radius_iiia(t) + 1,
                    construction: "IIIA".into(),
                    seed: Some(format!("bch[{},{},t={t}]", seed.len(), seed.dimension())),
                });
            }
        }
        TableSpec::IIIB { p, m, l, row_n, row_k, col_n, col_ks } => {
            let field = Field::new(*p, *m)?;
            let q = field.q();
            let q1 = q as usize - 1;
            if row_n * col_n != 2 * (l - 1) * q1 {
                return Err(Error::DimensionMismatch {
                    expected: 2 * (l - 1) * q1,
                    got: row_n * col_n,
                });
            }
            if *row_k == 0 || row_k > row_n || *row_n > q as usize {
                return Err(Error::InvalidParameter(format!(
                    "row code [{row_n},{row_k}] not realizable over GF({q})"
                )));
            }
            for &col_k in col_ks {
                if col_k == 0 || col_k > *col_n || *col_n > q as usize {
                    return Err(Error::InvalidParameter(format!(
                        "column code [{col_n},{col_k}] not realizable over GF({q})"
                    )));
                }
                let d_seed = (row_n - row_k + 1) * (col_n - col_k + 1);
                let t_seed = (d_seed - 1) / 2;
                rows.push(TableRow {
                    n: (2 * l + 1) * q1,
                    log2_m: (row_k * col_k * *m as usize) as f64 * (*p as f64).log2(),
                    d: 2 * quant::radius_iiib(t_seed, q)? + 1,
                    construction: "IIIB".into(),
                    seed: Some(format!(
                        "grs[{row_n},{row_k}]*grs[{col_n},{col_k}]@gf({q})"
                    )),
                });
            }
        }
    }
    Ok(rows)
}

pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,log2_m,d,construction,seed\n");
    for r in rows {
        let log2_m = if r.log2_m.fract() == 0.0 {
            format!("{}", r.log2_m as u64)
        } else {
            format!("{:.3}", r.log2_m)
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            log2_m,
            r.d,
            r.construction,
            r.seed.as_deref().unwrap_or("")
        ));
    }
    out
}

pub fn table_to_json(rows: &[TableRow]) -> String {
    serde_json::to_string_pretty(rows).expect("table rows serialize")
}
