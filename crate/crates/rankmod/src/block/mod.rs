//! Block codes in Hamming space used as seeds for the permutation code
//! constructions: binary BCH codes, generalized Reed-Solomon codes over
//! arbitrary evaluation sets, shortening, and product codes with an
//! iterative row/column decoder.
//!
//! All codes speak one trait, [`BlockCode`], with symbols in `0..q` and
//! systematic encoders (the message occupies the first `k` positions of
//! the codeword). Decoders are bounded-distance: within the advertised
//! [`BlockCode::corrector_radius`] they must return the transmitted
//! codeword; beyond it they may either report [`DecodeOutcome::Failure`]
//! or miscorrect to some other codeword.

use crate::{Error, gf::Field};
use serde::Serialize;

mod bch;
mod grs;
mod product;

pub use bch::BchCode;
pub use grs::GrsCode;
pub use product::{ProductCode, DEFAULT_MAX_ITERS};

/// Result of bounded-distance decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    /// The corrected codeword and the message it carries.
    Decoded { message: Vec<u32>, codeword: Vec<u32> },
    /// The word is detectably further than the corrector radius from
    /// every codeword the decoder is willing to return.
    Failure,
}

/// Serializable summary of a code's parameters.
#[derive(Clone, Debug, Serialize)]
pub struct CodeDescriptor {
    pub family: &'static str,
    /// Alphabet size.
    pub q: u32,
    /// Block length.
    pub n: usize,
    /// Message length in symbols, when messages are symbol strings.
    pub k: Option<usize>,
    /// log2 of the codebook size.
    pub k_bits: f64,
    /// Design distance.
    pub d: usize,
    /// Radius the decoder promises to correct.
    pub t: usize,
    /// Family-specific parameters.
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
}

/// A q-ary block code with a systematic encoder and a bounded-distance
/// decoder. Implementations are immutable lookup structures, hence the
/// thread-safety bounds.
#[allow(clippy::len_without_is_empty)] // codes have positive length by construction
pub trait BlockCode: Send + Sync {
    /// Alphabet size.
    fn q(&self) -> u32;

    /// Block length.
    fn len(&self) -> usize;

    /// Message length in symbols.
    fn dimension(&self) -> usize;

    /// Design distance (the promised minimum distance; the true minimum
    /// distance may exceed it).
    fn design_distance(&self) -> usize;

    /// Radius within which decoding is guaranteed to correct. Defaults
    /// to half the design distance; the product decoder promises less.
    fn corrector_radius(&self) -> usize {
        (self.design_distance() - 1) / 2
    }

    /// log2 of the codebook size.
    fn dimension_bits(&self) -> f64 {
        self.dimension() as f64 * (self.q() as f64).log2()
    }

    /// Encodes `message` (length [`BlockCode::dimension`]) into a
    /// codeword of length [`BlockCode::len`].
    fn encode(&self, message: &[u32]) -> Result<Vec<u32>, Error>;

    /// Bounded-distance decoding of a word of length [`BlockCode::len`].
    /// `Err` means the input itself is malformed; a clean word further
    /// than the radius from the code yields `Ok(Failure)` or a
    /// miscorrection.
    fn decode(&self, word: &[u32]) -> Result<DecodeOutcome, Error>;

    fn descriptor(&self) -> CodeDescriptor;

    /// Draws a uniform message.
    fn random_message(&self, rng: &mut dyn rand::RngCore) -> Vec<u32> {
        use rand::Rng;
        (0..self.dimension()).map(|_| rng.random_range(0..self.q())).collect()
    }
}

pub(crate) fn check_symbols(word: &[u32], len: usize, q: u32) -> Result<(), Error> {
    if word.len() != len {
        return Err(Error::DimensionMismatch { expected: len, got: word.len() });
    }
    for (i, &s) in word.iter().enumerate() {
        if s >= q {
            return Err(Error::SymbolOutOfRange { index: i, value: s, alphabet: q });
        }
    }
    Ok(())
}

// --- Shortening ---

/// A systematically shortened code: the first `by` message symbols are
/// pinned to zero and dropped from the codeword. Distance never
/// decreases under shortening.
pub struct ShortenedCode {
    inner: Box<dyn BlockCode>,
    by: usize,
}

impl ShortenedCode {
    pub fn new(inner: Box<dyn BlockCode>, by: usize) -> Result<ShortenedCode, Error> {
        if by >= inner.dimension() {
            return Err(Error::InvalidParameter(format!(
                "cannot shorten dimension {} by {by}",
                inner.dimension()
            )));
        }
        Ok(ShortenedCode { inner, by })
    }
}

impl BlockCode for ShortenedCode {
    fn q(&self) -> u32 {
        self.inner.q()
    }

    fn len(&self) -> usize {
        self.inner.len() - self.by
    }

    fn dimension(&self) -> usize {
        self.inner.dimension() - self.by
    }

    fn design_distance(&self) -> usize {
        self.inner.design_distance()
    }

    fn corrector_radius(&self) -> usize {
        self.inner.corrector_radius()
    }

    fn encode(&self, message: &[u32]) -> Result<Vec<u32>, Error> {
        check_symbols(message, self.dimension(), self.q())?;
        let mut full = vec![0u32; self.by];
        full.extend_from_slice(message);
        Ok(self.inner.encode(&full)?[self.by..].to_vec())
    }

    fn decode(&self, word: &[u32]) -> Result<DecodeOutcome, Error> {
        check_symbols(word, self.len(), self.q())?;
        let mut full = vec![0u32; self.by];
        full.extend_from_slice(word);
        match self.inner.decode(&full)? {
            DecodeOutcome::Decoded { message, codeword } => {
                // A correction that moves the pinned symbols leaves the
                // shortened code entirely.
                if message[..self.by].iter().any(|&s| s != 0) {
                    return Ok(DecodeOutcome::Failure);
                }
                Ok(DecodeOutcome::Decoded {
                    message: message[self.by..].to_vec(),
                    codeword: codeword[self.by..].to_vec(),
                })
            }
            DecodeOutcome::Failure => Ok(DecodeOutcome::Failure),
        }
    }

    fn descriptor(&self) -> CodeDescriptor {
        let inner = self.inner.descriptor();
        CodeDescriptor {
            family: "shortened",
            q: self.q(),
            n: self.len(),
            k: Some(self.dimension()),
            k_bits: self.dimension_bits(),
            d: self.design_distance(),
            t: self.corrector_radius(),
            params: serde_json::json!({ "by": self.by, "inner": inner }),
        }
    }
}

// --- Explicit-list codes ---

/// A code given by an explicit codeword list, decoded by exhaustive
/// nearest-codeword search within half the true minimum distance.
/// Messages are single-symbol indexes into the list. Intended for small
/// fixtures and verification, not for production-size codes.
pub struct ListCode {
    q: u32,
    words: Vec<Vec<u32>>,
    d: usize,
}

impl ListCode {
    /// Builds the code and measures the exact minimum distance. Errors
    /// on duplicate or ragged words, or on lists larger than 2^16.
    pub fn new(q: u32, words: Vec<Vec<u32>>) -> Result<ListCode, Error> {
        if words.is_empty() || words.len() > 1 << 16 {
            return Err(Error::InvalidParameter(format!(
                "list code needs 1..=65536 words, got {}",
                words.len()
            )));
        }
        let n = words[0].len();
        for w in &words {
            check_symbols(w, n, q)?;
        }
        let mut d = n;
        if words.len() == 1 {
            // Trivial code; any radius works, use the length.
            return Ok(ListCode { q, words, d: n });
        }
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let dist = hamming(&words[i], &words[j]);
                if dist == 0 {
                    return Err(Error::InvalidParameter("duplicate codewords".into()));
                }
                d = d.min(dist);
            }
        }
        Ok(ListCode { q, words, d })
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }
}

pub(crate) fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl BlockCode for ListCode {
    fn q(&self) -> u32 {
        self.q
    }

    fn len(&self) -> usize {
        self.words[0].len()
    }

    fn dimension(&self) -> usize {
        1
    }

    fn design_distance(&self) -> usize {
        self.d
    }

    fn dimension_bits(&self) -> f64 {
        (self.words.len() as f64).log2()
    }

    fn encode(&self, message: &[u32]) -> Result<Vec<u32>, Error> {
        if message.len() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: message.len() });
        }
        let idx = message[0] as usize;
        if idx >= self.words.len() {
            return Err(Error::SymbolOutOfRange {
                index: 0,
                value: message[0],
                alphabet: self.words.len() as u32,
            });
        }
        Ok(self.words[idx].clone())
    }

    fn decode(&self, word: &[u32]) -> Result<DecodeOutcome, Error> {
        check_symbols(word, self.len(), self.q)?;
        let radius = self.corrector_radius();
        for (idx, w) in self.words.iter().enumerate() {
            if hamming(w, word) <= radius {
                return Ok(DecodeOutcome::Decoded {
                    message: vec![idx as u32],
                    codeword: w.clone(),
                });
            }
        }
        Ok(DecodeOutcome::Failure)
    }

    fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            family: "list",
            q: self.q,
            n: self.len(),
            k: None,
            k_bits: self.dimension_bits(),
            d: self.d,
            t: self.corrector_radius(),
            params: serde_json::json!({ "size": self.words.len() }),
        }
    }

    fn random_message(&self, rng: &mut dyn rand::RngCore) -> Vec<u32> {
        use rand::Rng;
        vec![rng.random_range(0..self.words.len() as u32)]
    }
}

// --- Construction helpers ---

/// Binary primitive narrow-sense BCH code of length `2^ext_degree - 1`
/// correcting `t` errors, optionally shortened.
pub fn make_bch(ext_degree: u32, t: usize, shorten_by: usize) -> Result<Box<dyn BlockCode>, Error> {
    let code = BchCode::new(ext_degree, t)?;
    if shorten_by == 0 {
        Ok(Box::new(code))
    } else {
        Ok(Box::new(ShortenedCode::new(Box::new(code), shorten_by)?))
    }
}

/// Generalized Reed-Solomon code over the first `n` powers of the field
/// generator.
pub fn make_grs(field: Field, n: usize, k: usize) -> Result<Box<dyn BlockCode>, Error> {
    let points: Vec<u32> = (0..n as u64).map(|i| field.exp_generator(i)).collect();
    Ok(Box::new(GrsCode::new(field, points, k)?))
}

/// Ternary [4,2,3] code from generator rows (1,0,1,1), (0,1,1,2).
#[cfg(test)]
pub(crate) fn tetracode() -> ListCode {
    let mut words = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            words.push(vec![a, b, (a + b) % 3, (a + 2 * b) % 3]);
        }
    }
    ListCode::new(3, words).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn shortened_code_round_trips_and_pins_zeros() {
        // Hamming [15,11,3] shortened by 2 -> [13,9,3].
        let code = make_bch(4, 1, 2).unwrap();
        assert_eq!(code.len(), 13);
        assert_eq!(code.dimension(), 9);
        assert_eq!(code.design_distance(), 3);
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let msg = code.random_message(&mut rng);
            let cw = code.encode(&msg).unwrap();
            assert_eq!(&cw[..9], &msg[..], "systematic prefix");
            let mut noisy = cw.clone();
            let pos = rng.random_range(0..13);
            noisy[pos] ^= 1;
            match code.decode(&noisy).unwrap() {
                DecodeOutcome::Decoded { message, codeword } => {
                    assert_eq!(message, msg);
                    assert_eq!(codeword, cw);
                }
                DecodeOutcome::Failure => panic!("single error must decode"),
            }
        }
    }

    #[test]
    fn list_code_measures_distance_and_decodes() {
        // The [4,2,3] ternary Hamming code (tetracode).
        let code = tetracode();
        assert_eq!(code.design_distance(), 3);
        assert_eq!(code.corrector_radius(), 1);
        assert_eq!(code.words().len(), 9);
        for (idx, w) in code.words().to_vec().iter().enumerate() {
            for pos in 0..4 {
                for delta in 1..3 {
                    let mut noisy = w.clone();
                    noisy[pos] = (noisy[pos] + delta) % 3;
                    match code.decode(&noisy).unwrap() {
                        DecodeOutcome::Decoded { message, .. } => {
                            assert_eq!(message, vec![idx as u32]);
                        }
                        DecodeOutcome::Failure => panic!("radius-1 error must decode"),
                    }
                }
            }
        }
    }

}
