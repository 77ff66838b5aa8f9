//! Binary primitive narrow-sense BCH codes with syndrome decoding:
//! Berlekamp-Massey for the error locator, exhaustive root search for the
//! error positions.

use super::{check_symbols, BlockCode, CodeDescriptor, DecodeOutcome};
use crate::gf::{poly, Field};
use crate::Error;

/// A binary BCH code of length `2^a - 1` with designed distance `2t + 1`.
///
/// The generator polynomial is the least common multiple of the minimal
/// polynomials of the first `2t` powers of the field generator, so the
/// redundancy is at most `a·t` and the codebook holds at least
/// `2^n / (n+1)^t` words. The true dimension (often larger than the
/// `n - a·t` guarantee) is computed exactly from the generator degree.
pub struct BchCode {
    field: Field,
    n: usize,
    k: usize,
    t: usize,
    /// Generator polynomial, little-endian 0/1 coefficients.
    gen: Vec<u32>,
}

impl BchCode {
    pub fn new(ext_degree: u32, t: usize) -> Result<BchCode, Error> {
        if ext_degree < 2 {
            return Err(Error::InvalidParameter(
                "BCH extension degree must be at least 2".into(),
            ));
        }
        let field = Field::new(2, ext_degree)?;
        let n = field.q() as usize - 1;
        if 2 * t + 1 > n {
            return Err(Error::InvalidParameter(format!(
                "designed distance {} exceeds length {n}",
                2 * t + 1
            )));
        }
        let mut gen = vec![1u32];
        let mut covered = vec![false; n];
        for i in (1..=2 * t).step_by(1) {
            if covered[i % n] {
                continue;
            }
            // Cyclotomic coset of i under doubling mod n.
            let mut coset = Vec::new();
            let mut e = i % n;
            while !covered[e] {
                covered[e] = true;
                coset.push(e);
                e = e * 2 % n;
            }
            let roots: Vec<u32> =
                coset.iter().map(|&e| field.exp_generator(e as u64)).collect();
            let minpoly = poly::from_roots(&field, &roots);
            debug_assert!(minpoly.iter().all(|&c| c <= 1), "minimal polynomial is binary");
            gen = poly::mul(&field, &gen, &minpoly);
        }
        let k = n - poly::degree(&gen).unwrap_or(0);
        if k == 0 {
            return Err(Error::InvalidParameter(format!(
                "BCH(2^{ext_degree}-1, t={t}) has dimension zero"
            )));
        }
        debug_assert!(n - k <= ext_degree as usize * t, "redundancy bound");
        Ok(BchCode { field, n, k, t, gen })
    }

    pub fn ext_degree(&self) -> u32 {
        self.field.m()
    }

    /// Generator polynomial, little-endian 0/1 coefficients.
    pub fn generator(&self) -> &[u32] {
        &self.gen
    }

    /// Word order is most-significant coefficient first:
    /// `word[i]` is the coefficient of `x^(n-1-i)`.
    fn word_to_poly(&self, word: &[u32]) -> Vec<u32> {
        let mut p: Vec<u32> = word.iter().rev().copied().collect();
        poly::normalize(&mut p);
        p
    }

    fn syndromes(&self, r: &[u32]) -> Vec<u32> {
        (1..=2 * self.t as u64)
            .map(|j| poly::eval(&self.field, r, self.field.exp_generator(j)))
            .collect()
    }
}

impl BlockCode for BchCode {
    fn q(&self) -> u32 {
        2
    }

    fn len(&self) -> usize {
        self.n
    }

    fn dimension(&self) -> usize {
        self.k
    }

    fn design_distance(&self) -> usize {
        2 * self.t + 1
    }

    fn encode(&self, message: &[u32]) -> Result<Vec<u32>, Error> {
        check_symbols(message, self.k, 2)?;
        // Message bits fill the top coefficients; the remainder of the
        // data polynomial mod g fills the parity positions, making the
        // codeword divisible by g with the message in the first k slots.
        let mut data = vec![0u32; self.n];
        for (j, &bit) in message.iter().enumerate() {
            data[self.n - 1 - j] = bit;
        }
        let (_, rem) = poly::divrem(&self.field, &data, &self.gen)?;
        for (i, &c) in rem.iter().enumerate() {
            data[i] = c;
        }
        Ok((0..self.n).map(|i| data[self.n - 1 - i]).collect())
    }

    fn decode(&self, word: &[u32]) -> Result<DecodeOutcome, Error> {
        check_symbols(word, self.n, 2)?;
        let mut r = self.word_to_poly(word);
        let synd = self.syndromes(&r);
        if synd.iter().all(|&s| s == 0) {
            return Ok(DecodeOutcome::Decoded {
                message: word[..self.k].to_vec(),
                codeword: word.to_vec(),
            });
        }
        let f = &self.field;

        // Berlekamp-Massey over GF(2^a).
        let mut lambda = vec![1u32];
        let mut prev = vec![1u32];
        let mut l = 0usize;
        let mut shift = 1usize;
        let mut prev_disc = 1u32;
        for i in 0..2 * self.t {
            let mut delta = synd[i];
            for j in 1..=l.min(lambda.len().saturating_sub(1)) {
                delta = f.add(delta, f.mul(lambda[j], synd[i - j]));
            }
            if delta == 0 {
                shift += 1;
                continue;
            }
            let coef = f.div(delta, prev_disc)?;
            let mut update = vec![0u32; shift];
            update.extend(poly::scale(f, &prev, coef));
            let next = poly::sub(f, &lambda, &update);
            if 2 * l <= i {
                prev = lambda;
                prev_disc = delta;
                l = i + 1 - l;
                shift = 1;
            } else {
                shift += 1;
            }
            lambda = next;
        }
        if l > self.t || poly::degree(&lambda) != Some(l) {
            return Ok(DecodeOutcome::Failure);
        }

        // The locator's roots are the inverses of the error locations:
        // a root at generator^(-i) marks an error in the coefficient of
        // x^i. The root count must match the locator degree.
        let n = self.n as u64;
        let mut flipped = Vec::new();
        for i in 0..n {
            let x = f.exp_generator(n - i % n);
            if poly::eval(f, &lambda, x) == 0 {
                flipped.push(i as usize);
            }
        }
        if flipped.len() != l {
            return Ok(DecodeOutcome::Failure);
        }
        if r.len() < self.n {
            r.resize(self.n, 0);
        }
        for &i in &flipped {
            r[i] ^= 1;
        }
        if self.syndromes(&r).iter().any(|&s| s != 0) {
            return Ok(DecodeOutcome::Failure);
        }
        let codeword: Vec<u32> = (0..self.n).map(|i| r[self.n - 1 - i]).collect();
        Ok(DecodeOutcome::Decoded {
            message: codeword[..self.k].to_vec(),
            codeword,
        })
    }

    fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            family: "bch",
            q: 2,
            n: self.n,
            k: Some(self.k),
            k_bits: self.k as f64,
            d: self.design_distance(),
            t: self.t,
            params: serde_json::json!({ "ext_degree": self.field.m() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::rngs::StdRng;
    use rand::{seq::index::sample, Rng, SeedableRng};

    #[test]
    fn known_dimensions_at_length_63_and_255() {
        // Standard BCH dimension tables; some cosets collapse below
        // full size, so the dimension can exceed the n - a·t guarantee.
        for (a, t, k) in [
            (6, 1, 57),
            (6, 2, 51),
            (6, 3, 45),
            (6, 4, 39),
            (6, 5, 36),
            (6, 6, 30),
            (6, 7, 24),
            (6, 10, 18),
            (6, 11, 16),
            (6, 13, 10),
            (8, 1, 247),
            (8, 2, 239),
            (8, 5, 215),
            (8, 6, 207),
            (8, 7, 199),
            (8, 8, 191),
        ] {
            let code = BchCode::new(a, t).unwrap();
            assert_eq!(code.dimension(), k, "BCH(2^{a}-1, t={t})");
        }
    }

    #[test]
    fn hamming_code_as_degenerate_case() {
        let code = BchCode::new(4, 1).unwrap();
        assert_eq!((code.len(), code.dimension()), (15, 11));
        assert_eq!(code.generator(), &[1, 1, 0, 0, 1]); // x^4 + x + 1
    }

    #[test]
    fn trivial_full_space_at_t_zero() {
        let code = BchCode::new(4, 0).unwrap();
        assert_eq!(code.dimension(), 15);
        assert_eq!(code.design_distance(), 1);
        let w: Vec<u32> = (0..15).map(|i| (i % 2) as u32).collect();
        assert_eq!(code.encode(&w).unwrap(), w);
    }

    #[test]
    fn cardinality_meets_the_hamming_space_bound() {
        // M >= 2^n / (n+1)^t for the primitive (unshortened) code.
        for (a, t) in [(4, 1), (6, 3), (6, 5), (8, 5), (8, 8)] {
            let code = BchCode::new(a, t).unwrap();
            let m = BigUint::from(1u32) << code.dimension();
            let bound_num = BigUint::from(1u32) << code.len();
            let bound_den = BigUint::from(code.len() as u32 + 1).pow(t as u32);
            assert!(
                &m * &bound_den >= bound_num,
                "BCH(2^{a}-1, t={t}) misses the cardinality bound"
            );
        }
    }

    #[test]
    fn corrects_up_to_t_and_flags_beyond() {
        let mut rng = StdRng::seed_from_u64(11);
        for (a, t) in [(4, 2), (5, 3), (8, 5)] {
            let code = BchCode::new(a, t).unwrap();
            for _ in 0..200 {
                let msg = code.random_message(&mut rng);
                let cw = code.encode(&msg).unwrap();
                let e = rng.random_range(0..=t);
                let mut noisy = cw.clone();
                for pos in sample(&mut rng, code.len(), e) {
                    noisy[pos] ^= 1;
                }
                match code.decode(&noisy).unwrap() {
                    DecodeOutcome::Decoded { message, codeword } => {
                        assert_eq!(message, msg);
                        assert_eq!(codeword, cw);
                    }
                    DecodeOutcome::Failure => panic!("{e} <= t errors must decode"),
                }
            }
            // Beyond-radius patterns must never silently return a word
            // closer to the input than a codeword: they either fail or
            // land on a codeword at distance <= t from the input.
            for _ in 0..100 {
                let msg = code.random_message(&mut rng);
                let cw = code.encode(&msg).unwrap();
                let mut noisy = cw.clone();
                for pos in sample(&mut rng, code.len(), t + 1) {
                    noisy[pos] ^= 1;
                }
                if let DecodeOutcome::Decoded { codeword, .. } =
                    code.decode(&noisy).unwrap()
                {
                    assert!(super::super::hamming(&codeword, &noisy) <= t);
                }
            }
        }
    }
}
