//! Reed-Solomon codes over arbitrary distinct evaluation points, with a
//! partial-GCD decoder. Evaluation points need not be consecutive
//! generator powers, which the permutation-polynomial construction
//! depends on.

use super::{check_symbols, hamming, BlockCode, CodeDescriptor, DecodeOutcome};
use crate::gf::{poly, Field};
use crate::Error;

/// Codewords are evaluations of polynomials of degree below `k` at `n`
/// distinct points, so the minimum distance is exactly `n - k + 1`.
/// Encoding interpolates the message through the first `k` points,
/// making the code systematic in its first `k` positions.
pub struct GrsCode {
    field: Field,
    points: Vec<u32>,
    k: usize,
    /// Product of (x - point) over all points, precomputed for decoding.
    master: Vec<u32>,
}

impl GrsCode {
    pub fn new(field: Field, points: Vec<u32>, k: usize) -> Result<GrsCode, Error> {
        let n = points.len();
        if n == 0 || n > field.q() as usize {
            return Err(Error::InvalidParameter(format!(
                "need 1..=q distinct evaluation points, got {n}"
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "dimension {k} outside 1..={n}"
            )));
        }
        let mut seen = vec![false; field.q() as usize];
        for &x in &points {
            field.element(x as u64)?;
            if seen[x as usize] {
                return Err(Error::InvalidParameter(
                    "evaluation points must be distinct".into(),
                ));
            }
            seen[x as usize] = true;
        }
        let master = poly::from_roots(&field, &points);
        Ok(GrsCode { field, points, k, master })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }
}

impl BlockCode for GrsCode {
    fn q(&self) -> u32 {
        self.field.q()
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn dimension(&self) -> usize {
        self.k
    }

    fn design_distance(&self) -> usize {
        self.points.len() - self.k + 1
    }

    fn encode(&self, message: &[u32]) -> Result<Vec<u32>, Error> {
        check_symbols(message, self.k, self.q())?;
        let pts: Vec<(u32, u32)> = self.points[..self.k]
            .iter()
            .copied()
            .zip(message.iter().copied())
            .collect();
        let f = poly::interpolate(&self.field, &pts)?;
        debug_assert!(poly::degree(&f).is_none_or(|d| d < self.k));
        Ok(self.points.iter().map(|&x| poly::eval(&self.field, &f, x)).collect())
    }

    fn decode(&self, word: &[u32]) -> Result<DecodeOutcome, Error> {
        let n = self.len();
        check_symbols(word, n, self.q())?;
        let f = &self.field;
        let radius = self.corrector_radius();

        // Partial extended Euclid on (master, interpolant): stop at the
        // first remainder of degree below (n + k) / 2; the message
        // polynomial is then the quotient remainder / cofactor when the
        // word is within the radius of a codeword.
        let pts: Vec<(u32, u32)> =
            self.points.iter().copied().zip(word.iter().copied()).collect();
        let g1 = poly::interpolate(f, &pts)?;
        let mut r0 = self.master.clone();
        let mut r1 = g1;
        let mut v0: Vec<u32> = Vec::new();
        let mut v1: Vec<u32> = vec![1];
        while poly::degree(&r1).is_some_and(|d| 2 * d >= n + self.k) {
            let (quo, rem) = poly::divrem(f, &r0, &r1)?;
            let vnew = poly::sub(f, &v0, &poly::mul(f, &quo, &v1));
            r0 = r1;
            r1 = rem;
            v0 = v1;
            v1 = vnew;
        }
        if v1.is_empty() {
            return Ok(DecodeOutcome::Failure);
        }
        let (fpoly, rem) = poly::divrem(f, &r1, &v1)?;
        if !rem.is_empty() {
            return Ok(DecodeOutcome::Failure);
        }
        if poly::degree(&fpoly).is_some_and(|d| d >= self.k) {
            return Ok(DecodeOutcome::Failure);
        }
        let codeword: Vec<u32> =
            self.points.iter().map(|&x| poly::eval(f, &fpoly, x)).collect();
        if hamming(&codeword, word) > radius {
            return Ok(DecodeOutcome::Failure);
        }
        Ok(DecodeOutcome::Decoded {
            message: codeword[..self.k].to_vec(),
            codeword,
        })
    }

    fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            family: "grs",
            q: self.q(),
            n: self.len(),
            k: Some(self.k),
            k_bits: self.dimension_bits(),
            d: self.design_distance(),
            t: self.corrector_radius(),
            params: serde_json::json!({
                "p": self.field.p(),
                "m": self.field.m(),
                "points": self.points,
            }),
        }
    }
}
