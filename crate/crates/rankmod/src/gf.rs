//! Finite fields GF(p^m) with table-based arithmetic, ordinary polynomial
//! helpers, and linearized polynomials.
//!
//! Elements are canonical residues encoded as integers: the residue with
//! coefficient vector `(c_0, …, c_{m-1})` in powers of the root of the
//! modulus is the integer `Σ c_i p^i`. The modulus is the monic primitive
//! polynomial of degree `m` with the smallest such encoding, so every
//! field instance with the same `(p, m)` is identical and `x` itself
//! (encoded as `p`) generates the multiplicative group. For `m = 1` the
//! elements are integers mod `p` and the generator is the least primitive
//! root.

use crate::Error;

/// Largest supported field size for table-based arithmetic.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Default cap on candidate tuples for codebook enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

// --- Field ---

/// A finite field GF(p^m) with exp/log tables over a canonical modulus.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, little-endian coefficient digits, length m+1.
    /// For m = 1 this is `x` and plays no role in arithmetic.
    modulus: Vec<u32>,
    /// exp[i] = g^i for i < 2(q-1), where g is the canonical generator.
    exp: Vec<u32>,
    /// log[v] for v in 1..q; log[0] is unused.
    log: Vec<u32>,
}

impl Field {
    /// Constructs GF(p^m). `p` must be prime and `p^m <= 2^16`.
    pub fn new(p: u32, m: u32) -> Result<Field, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_FIELD_SIZE).ok_or(
            Error::InvalidParameter(format!("field size {p}^{m} exceeds {MAX_FIELD_SIZE}")),
        )? as u32;
        let (modulus, exp_half) = if m == 1 {
            let g = least_primitive_root(p);
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut v = 1u64;
            for _ in 0..q - 1 {
                exp.push(v as u32);
                v = v * g as u64 % p as u64;
            }
            (vec![0, 1], exp)
        } else {
            least_primitive_modulus(p, m, q)?
        };
        let mut exp = exp_half;
        exp.extend_from_slice(&exp.clone()[..(q - 2).max(1) as usize]);
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp[..(q - 1) as usize].iter().enumerate() {
            log[v as usize] = i as u32;
        }
        Ok(Field { p, m, q, modulus, exp, log })
    }

    /// Field characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size `q = p^m`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// The canonical generator of the multiplicative group: the root `x`
    /// of the modulus for `m >= 2`, the least primitive root for `m = 1`.
    pub fn generator(&self) -> u32 {
        self.exp[1]
    }

    /// Modulus digits, little-endian, length `m + 1`.
    pub fn modulus_digits(&self) -> &[u32] {
        &self.modulus
    }

    /// Modulus encoded as `Σ c_i p^i`.
    pub fn modulus_encoding(&self) -> u64 {
        self.modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// Validates an integer encoding as a field element.
    pub fn element(&self, v: u64) -> Result<u32, Error> {
        if v < self.q as u64 {
            Ok(v as u32)
        } else {
            Err(Error::SymbolOutOfRange {
                index: 0,
                value: v.min(u32::MAX as u64) as u32,
                alphabet: self.q,
            })
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, Error> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.exp[(self.q - 1 - self.log[a as usize]) as usize % (self.q - 1) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, Error> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `generator^i` for any exponent.
    pub fn exp_generator(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log base the canonical generator; errors on 0.
    pub fn dlog(&self, a: u32) -> Result<u32, Error> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a as usize])
    }

    /// Frobenius endomorphism `a ↦ a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn least_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    'candidate: for g in 2..p {
        let mut v = g as u64;
        for _ in 1..p - 1 {
            if v == 1 {
                continue 'candidate;
            }
            v = v * g as u64 % p as u64;
        }
        if v == 1 {
            return g;
        }
    }
    unreachable!("every prime field has a primitive root");
}

/// Finds the monic degree-m polynomial with the smallest integer encoding
/// whose root x generates all q-1 nonzero residues, returning the modulus
/// digits and the exp table (powers of x). Order exactly q-1 forces the
/// quotient ring to be a field, so no separate irreducibility test is
/// needed.
fn least_primitive_modulus(p: u32, m: u32, q: u32) -> Result<(Vec<u32>, Vec<u32>), Error> {
    let mut digits = vec![0u32; m as usize + 1];
    digits[m as usize] = 1;
    'candidate: for lower in 0..q {
        // Encode the lower digits of the candidate.
        let mut v = lower;
        for d in digits[..m as usize].iter_mut() {
            *d = v % p;
            v /= p;
        }
        // x must be a unit, so the constant term cannot vanish.
        if digits[0] == 0 {
            continue;
        }
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut cur = vec![0u32; m as usize]; // residue digits of x^k
        cur[0] = 1;
        exp.push(1);
        for _ in 1..q - 1 {
            mul_by_x_mod(&mut cur, &digits, p);
            let enc = encode(&cur, p);
            if enc == 1 {
                continue 'candidate; // order of x divides a proper factor
            }
            exp.push(enc);
        }
        // One more step must return to 1 for order exactly q-1.
        mul_by_x_mod(&mut cur, &digits, p);
        if encode(&cur, p) == 1 {
            return Ok((digits, exp));
        }
    }
    Err(Error::InvalidParameter(format!(
        "no primitive polynomial found for p={p}, m={m}"
    )))
}

/// Multiplies a residue (digit vector of length m) by x modulo the monic
/// modulus given by `digits` (length m+1), in place.
fn mul_by_x_mod(cur: &mut [u32], modulus: &[u32], p: u32) {
    let m = cur.len();
    let lead = cur[m - 1];
    for i in (1..m).rev() {
        cur[i] = cur[i - 1];
    }
    cur[0] = 0;
    if lead != 0 {
        for i in 0..m {
            cur[i] = (cur[i] + (p - lead) * modulus[i] % p) % p;
        }
    }
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

// --- Ordinary polynomials over a field ---

/// Dense univariate polynomials over a [`Field`], little-endian
/// coefficient vectors (`poly[i]` multiplies `x^i`). The zero polynomial
/// is the empty vector; [`normalize`] trims trailing zeros.
pub mod poly {
    use super::Field;
    use crate::Error;

    /// Trims trailing zero coefficients.
    pub fn normalize(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(a: &[u32]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn add(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = f.add(x, y);
        }
        normalize(&mut out);
        out
    }

    pub fn sub(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
        let neg: Vec<u32> = b.iter().map(|&c| f.neg(c)).collect();
        add(f, a, &neg)
    }

    pub fn scale(f: &Field, a: &[u32], c: u32) -> Vec<u32> {
        let mut out: Vec<u32> = a.iter().map(|&x| f.mul(x, c)).collect();
        normalize(&mut out);
        out
    }

    pub fn mul(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        normalize(&mut out);
        out
    }

    /// Quotient and remainder; errors when `b` is zero.
    pub fn divrem(f: &Field, a: &[u32], b: &[u32]) -> Result<(Vec<u32>, Vec<u32>), Error> {
        let db = degree(b).ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(b[db])?;
        let mut rem: Vec<u32> = a.to_vec();
        normalize(&mut rem);
        if degree(&rem).is_none_or(|da| da < db) {
            return Ok((Vec::new(), rem));
        }
        let da = degree(&rem).unwrap();
        let mut quo = vec![0u32; da - db + 1];
        for i in (db..=da).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quo[i - db] = qc;
            for j in 0..=db {
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(qc, b[j]));
            }
        }
        normalize(&mut rem);
        normalize(&mut quo);
        Ok((quo, rem))
    }

    /// Horner evaluation.
    pub fn eval(f: &Field, a: &[u32], x: u32) -> u32 {
        a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(f: &Field, roots: &[u32]) -> Vec<u32> {
        let mut out = vec![1u32];
        for &r in roots {
            out = mul(f, &out, &[f.neg(r), 1]);
        }
        out
    }

    /// Lagrange interpolation through points with distinct x coordinates.
    pub fn interpolate(f: &Field, points: &[(u32, u32)]) -> Result<Vec<u32>, Error> {
        let xs: Vec<u32> = points.iter().map(|&(x, _)| x).collect();
        let master = from_roots(f, &xs);
        let mut out = Vec::new();
        for &(x, y) in points {
            if y == 0 {
                continue;
            }
            // master / (X - x), evaluated form of the basis numerator.
            let (basis, rem) = divrem(f, &master, &[f.neg(x), 1])?;
            debug_assert!(rem.is_empty());
            let denom = eval(f, &basis, x);
            if denom == 0 {
                return Err(Error::InvalidParameter(
                    "interpolation points must be distinct".into(),
                ));
            }
            let c = f.div(y, denom)?;
            out = add(f, &out, &scale(f, &basis, c));
        }
        Ok(out)
    }
}

// --- Linearized polynomials ---

/// A linearized polynomial `L(x) = Σ a_i x^{p^i}` over GF(p^m);
/// `coeffs[i]` is `a_i`. The coefficient vector keeps its length (and so
/// its identity within an enumeration) even when leading entries are
/// zero. Linearized polynomials are additive maps: evaluation is
/// F_p-linear, so `L` permutes the field exactly when its kernel is
/// trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: Vec<u32>,
}

impl LinearizedPoly {
    pub fn new(coeffs: Vec<u32>) -> LinearizedPoly {
        LinearizedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Index of the highest coefficient slot (the formal p-degree bound).
    pub fn nu(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Evaluates `L` at `x` by iterating the Frobenius map.
    pub fn eval(&self, f: &Field, x: u32) -> u32 {
        let mut acc = 0u32;
        let mut pw = x;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pw = f.frobenius(pw);
            }
            if c != 0 {
                acc = f.add(acc, f.mul(c, pw));
            }
        }
        acc
    }

    /// Evaluates `L` at every point in order.
    pub fn eval_vector(&self, f: &Field, points: &[u32]) -> Vec<u32> {
        points.iter().map(|&x| self.eval(f, x)).collect()
    }

    /// True when `L` permutes the field, i.e. its only root is zero.
    /// O(q · nu).
    pub fn is_permutation(&self, f: &Field) -> bool {
        (1..f.q()).all(|x| self.eval(f, x) != 0)
    }
}

/// Enumerates every linearized permutation polynomial with coefficient
/// slots `a_0..=a_nu`, ordered by the coefficient tuple `(a_nu, …, a_0)`
/// ascending in the canonical residue order. The scan covers `q^(nu+1)`
/// candidate tuples and errors when that exceeds `cap`.
pub fn enumerate_permutation_polys(
    f: &Field,
    nu: usize,
    cap: u64,
) -> Result<Vec<LinearizedPoly>, Error> {
    let q = f.q() as u128;
    let total = q.checked_pow(nu as u32 + 1).ok_or(Error::CapExceeded {
        required: u128::MAX,
        cap: cap as u128,
    })?;
    if total > cap as u128 {
        return Err(Error::CapExceeded { required: total, cap: cap as u128 });
    }
    let mut out = Vec::new();
    for rank in 0..total as u64 {
        let mut coeffs = vec![0u32; nu + 1];
        let mut r = rank;
        for c in coeffs.iter_mut() {
            *c = (r % q as u64) as u32;
            r /= q as u64;
        }
        let cand = LinearizedPoly::new(coeffs);
        if cand.is_permutation(f) {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Guaranteed number of linearized permutation polynomials with slots
/// `a_0..=a_nu`: `q^nu (q(p-2) + 1) / (p-1)`, which reduces to `q^nu`
/// for p = 2.
pub fn permutation_poly_lower_bound(f: &Field, nu: usize) -> u128 {
    let q = f.q() as u128;
    let p = f.p() as u128;
    q.pow(nu as u32) * (q * (p - 2) + 1) / (p - 1)
}
