//! One façade over the four code families: JSON-configurable codecs
//! behind a single trait, for the CLI, the simulator, and foreign
//! bindings.

use crate::block::{make_bch, make_grs, BlockCode, CodeDescriptor, ProductCode};
use crate::gf::{Field, DEFAULT_ENUMERATION_CAP};
use crate::gray::{self, GrayCode};
use crate::perm::Permutation;
use crate::pp::PpCode;
use crate::quant::{QuantACode, QuantBCode};
use crate::Error;
use rand::RngCore;
use serde::{Deserialize, Serialize};

// --- Messages ---

/// What a codec encodes: an index into an enumerated codebook
/// (construction I) or a string of seed-code symbols (the rest).
/// Serialized as a bare integer or a bare array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Message {
    Index(u64),
    Symbols(Vec<u32>),
}

// --- Configuration ---

fn default_product_iters() -> usize {
    crate::block::DEFAULT_MAX_ITERS
}

/// Recipe for a seed block code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SeedSpec {
    /// Binary primitive BCH of length `2^ext_degree - 1`, optionally
    /// shortened.
    Bch {
        ext_degree: u32,
        t: usize,
        #[serde(default)]
        shorten_by: usize,
    },
    /// Reed-Solomon over GF(p^m) on the first `n` generator powers.
    Grs { p: u32, m: u32, n: usize, k: usize },
    /// Product of two seeds over the same alphabet.
    Product {
        row: Box<SeedSpec>,
        col: Box<SeedSpec>,
        #[serde(default = "default_product_iters")]
        iters: usize,
    },
}

pub fn build_seed(spec: &SeedSpec) -> Result<Box<dyn BlockCode>, Error> {
    match spec {
        SeedSpec::Bch { ext_degree, t, shorten_by } => make_bch(*ext_degree, *t, *shorten_by),
        SeedSpec::Grs { p, m, n, k } => make_grs(Field::new(*p, *m)?, *n, *k),
        SeedSpec::Product { row, col, iters } => Ok(Box::new(ProductCode::new(
            build_seed(row)?,
            build_seed(col)?,
            *iters,
        )?)),
    }
}

/// Complete codec recipe, as read from a JSON config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction")]
pub enum CodecConfig {
    I { p: u32, m: u32, t: usize },
    II { n: usize, seed: SeedSpec },
    IIIA { n: usize, seed: SeedSpec },
    IIIB { q: u32, l: usize, seed: SeedSpec },
}

/// The BCH seed the CLI reaches for when construction II is requested
/// by length and radius alone: parent length `2^a - 1` just covering
/// the layout, shortened to fit.
pub fn default_gray_seed(n: usize, t: usize) -> Result<SeedSpec, Error> {
    let bits = gray::serialized_bits(n)?;
    let mut a = 2u32;
    while ((1usize << a) - 1) < bits {
        a += 1;
    }
    Ok(SeedSpec::Bch { ext_degree: a, t, shorten_by: ((1usize << a) - 1) - bits })
}

/// Likewise for construction IIIA and its length-`n-1` binary seed.
pub fn default_threshold_seed(n: usize, t: usize) -> Result<SeedSpec, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let len = n - 1;
    let mut a = 2u32;
    while ((1usize << a) - 1) < len {
        a += 1;
    }
    Ok(SeedSpec::Bch { ext_degree: a, t, shorten_by: ((1usize << a) - 1) - len })
}

// --- The codec trait ---

/// A rank modulation code: fixed-length permutations in, permutations
/// out, with a bounded-distance decoder under the Kendall metric.
pub trait RankModCodec: Send + Sync {
    /// Permutation length.
    fn n(&self) -> usize;

    /// Symbols per message (`1` for index-addressed codebooks).
    fn message_len(&self) -> usize;

    /// Kendall errors the decoder guarantees to correct.
    fn kendall_radius(&self) -> usize;

    /// Minimum Kendall distance the construction certifies.
    fn design_kendall_distance(&self) -> usize;

    /// Total number of messages, when it fits in a `u128`.
    fn message_count(&self) -> Option<u128>;

    fn descriptor(&self) -> CodeDescriptor;

    fn encode(&self, message: &Message) -> Result<Permutation, Error>;

    /// `Ok(None)` when the word is beyond the decoder's reach.
    fn decode(&self, word: &Permutation) -> Result<Option<(Message, Permutation)>, Error>;

    fn random_message(&self, rng: &mut dyn RngCore) -> Message;

    /// Deterministic message enumeration for small-codebook sweeps;
    /// `index < message_count` required.
    fn message_by_index(&self, index: u128) -> Result<Message, Error>;
}

pub fn build_codec(config: &CodecConfig) -> Result<Box<dyn RankModCodec>, Error> {
    match config {
        CodecConfig::I { p, m, t } => Ok(Box::new(PpCodec {
            code: PpCode::new(*p, *m, *t, DEFAULT_ENUMERATION_CAP)?,
        })),
        CodecConfig::II { n, seed } => Ok(Box::new(GrayCodec {
            code: GrayCode::new(*n, build_seed(seed)?)?,
        })),
        CodecConfig::IIIA { n, seed } => Ok(Box::new(QuantACodec {
            code: QuantACode::new(*n, build_seed(seed)?)?,
        })),
        CodecConfig::IIIB { q, l, seed } => Ok(Box::new(QuantBCodec {
            code: QuantBCode::new(*q, *l, build_seed(seed)?)?,
        })),
    }
}

// --- Shared helpers for seeded codecs ---

fn expect_symbols(message: &Message, len: usize) -> Result<&[u32], Error> {
    match message {
        Message::Symbols(s) if s.len() == len => Ok(s),
        Message::Symbols(s) => Err(Error::DimensionMismatch { expected: len, got: s.len() }),
        Message::Index(_) => Err(Error::InvalidParameter(
            "this codec takes symbol-string messages, not an index".into(),
        )),
    }
}

fn seed_message_count(seed: &dyn BlockCode) -> Option<u128> {
    let q = seed.q() as u128;
    let mut total = 1u128;
    for _ in 0..seed.dimension() {
        total = total.checked_mul(q)?;
    }
    Some(total)
}

fn seed_message_by_index(seed: &dyn BlockCode, index: u128) -> Result<Message, Error> {
    if let Some(count) = seed_message_count(seed) {
        if index >= count {
            return Err(Error::InvalidParameter(format!(
                "message index {index} outside 0..{count}"
            )));
        }
    }
    let q = seed.q() as u128;
    let k = seed.dimension();
    let mut digits = vec![0u32; k];
    let mut rest = index;
    // Big-endian digits: index 0 is the all-zero message.
    for slot in digits.iter_mut().rev() {
        *slot = (rest % q) as u32;
        rest /= q;
    }
    Ok(Message::Symbols(digits))
}

// --- Construction I ---

struct PpCodec {
    code: PpCode,
}

impl RankModCodec for PpCodec {
    fn n(&self) -> usize {
        self.code.n()
    }

    fn message_len(&self) -> usize {
        1
    }

    fn kendall_radius(&self) -> usize {
        self.code.radius()
    }

    fn design_kendall_distance(&self) -> usize {
        2 * self.code.radius() + 1
    }

    fn message_count(&self) -> Option<u128> {
        Some(self.code.codebook_len() as u128)
    }

    fn descriptor(&self) -> CodeDescriptor {
        let f = self.code.field();
        CodeDescriptor {
            family: "linearized-pp",
            q: self.code.n() as u32,
            n: self.code.n(),
            k: None,
            k_bits: (self.code.codebook_len() as f64).log2(),
            d: self.design_kendall_distance(),
            t: self.code.radius(),
            params: serde_json::json!({
                "p": f.p(),
                "m": f.m(),
                "nu": self.code.nu(),
                "codebook": self.code.codebook_len(),
            }),
        }
    }

    fn encode(&self, message: &Message) -> Result<Permutation, Error> {
        match message {
            Message::Index(i) => self.code.encode(*i as usize),
            Message::Symbols(_) => Err(Error::InvalidParameter(
                "this codec takes an index message, not symbols".into(),
            )),
        }
    }

    fn decode(&self, word: &Permutation) -> Result<Option<(Message, Permutation)>, Error> {
        Ok(self
            .code
            .decode(word)?
            .map(|(idx, perm)| (Message::Index(idx as u64), perm)))
    }

    fn random_message(&self, rng: &mut dyn RngCore) -> Message {
        use rand::Rng;
        Message::Index(rng.random_range(0..self.code.codebook_len() as u64))
    }

    fn message_by_index(&self, index: u128) -> Result<Message, Error> {
        if index >= self.code.codebook_len() as u128 {
            return Err(Error::InvalidParameter(format!(
                "message index {index} outside 0..{}",
                self.code.codebook_len()
            )));
        }
        Ok(Message::Index(index as u64))
    }
}

// --- Construction II ---

struct GrayCodec {
    code: GrayCode,
}

impl RankModCodec for GrayCodec {
    fn n(&self) -> usize {
        self.code.n()
    }

    fn message_len(&self) -> usize {
        self.code.message_bits()
    }

    fn kendall_radius(&self) -> usize {
        self.code.kendall_radius()
    }

    fn design_kendall_distance(&self) -> usize {
        // Kendall distance dominates the Hamming distance of the
        // serialized seed words.
        self.code.seed().design_distance()
    }

    fn message_count(&self) -> Option<u128> {
        seed_message_count(self.code.seed())
    }

    fn descriptor(&self) -> CodeDescriptor {
        self.code.descriptor()
    }

    fn encode(&self, message: &Message) -> Result<Permutation, Error> {
        self.code.encode(expect_symbols(message, self.message_len())?)
    }

    fn decode(&self, word: &Permutation) -> Result<Option<(Message, Permutation)>, Error> {
        Ok(self
            .code
            .decode(word)?
            .map(|(bits, perm)| (Message::Symbols(bits), perm)))
    }

    fn random_message(&self, rng: &mut dyn RngCore) -> Message {
        Message::Symbols(self.code.seed().random_message(rng))
    }

    fn message_by_index(&self, index: u128) -> Result<Message, Error> {
        seed_message_by_index(self.code.seed(), index)
    }
}

// --- Construction IIIA ---

struct QuantACodec {
    code: QuantACode,
}

impl RankModCodec for QuantACodec {
    fn n(&self) -> usize {
        self.code.n()
    }

    fn message_len(&self) -> usize {
        self.code.message_bits()
    }

    fn kendall_radius(&self) -> usize {
        self.code.kendall_radius()
    }

    fn design_kendall_distance(&self) -> usize {
        self.code.design_kendall_distance()
    }

    fn message_count(&self) -> Option<u128> {
        seed_message_count(self.code.seed())
    }

    fn descriptor(&self) -> CodeDescriptor {
        self.code.descriptor()
    }

    fn encode(&self, message: &Message) -> Result<Permutation, Error> {
        self.code.encode(expect_symbols(message, self.message_len())?)
    }

    fn decode(&self, word: &Permutation) -> Result<Option<(Message, Permutation)>, Error> {
        Ok(self
            .code
            .decode(word)?
            .map(|(bits, perm)| (Message::Symbols(bits), perm)))
    }

    fn random_message(&self, rng: &mut dyn RngCore) -> Message {
        Message::Symbols(self.code.seed().random_message(rng))
    }

    fn message_by_index(&self, index: u128) -> Result<Message, Error> {
        seed_message_by_index(self.code.seed(), index)
    }
}

// --- Construction IIIB ---

struct QuantBCodec {
    code: QuantBCode,
}

impl RankModCodec for QuantBCodec {
    fn n(&self) -> usize {
        self.code.n()
    }

    fn message_len(&self) -> usize {
        self.code.seed().dimension()
    }

    fn kendall_radius(&self) -> usize {
        self.code.kendall_radius()
    }

    fn design_kendall_distance(&self) -> usize {
        self.code.design_kendall_distance().unwrap_or(1)
    }

    fn message_count(&self) -> Option<u128> {
        seed_message_count(self.code.seed())
    }

    fn descriptor(&self) -> CodeDescriptor {
        self.code.descriptor()
    }

    fn encode(&self, message: &Message) -> Result<Permutation, Error> {
        self.code.encode(expect_symbols(message, self.message_len())?)
    }

    fn decode(&self, word: &Permutation) -> Result<Option<(Message, Permutation)>, Error> {
        Ok(self
            .code
            .decode(word)?
            .map(|(symbols, perm)| (Message::Symbols(symbols), perm)))
    }

    fn random_message(&self, rng: &mut dyn RngCore) -> Message {
        Message::Symbols(self.code.seed().random_message(rng))
    }

    fn message_by_index(&self, index: u128) -> Result<Message, Error> {
        seed_message_by_index(self.code.seed(), index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::apply_kendall_errors;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn round_trip(codec: &dyn RankModCodec, seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..20 {
            let msg = codec.random_message(&mut rng);
            let cw = codec.encode(&msg).unwrap();
            assert_eq!(cw.n(), codec.n());
            let noisy = apply_kendall_errors(&cw, codec.kendall_radius(), &mut rng).unwrap();
            let (got, corrected) = codec.decode(&noisy).unwrap().expect("within radius");
            assert_eq!(got, msg);
            assert_eq!(corrected, cw);
        }
    }

    #[test]
    fn configs_parse_and_build() {
        let configs = [
            r#"{"construction": "I", "p": 2, "m": 3, "t": 1}"#,
            r#"{"construction": "II", "n": 62,
                "seed": {"family": "bch", "ext_degree": 8, "t": 5, "shorten_by": 2}}"#,
            r#"{"construction": "IIIA", "n": 64, "seed": {"family": "bch", "ext_degree": 6, "t": 5}}"#,
            r#"{"construction": "IIIB", "q": 16, "l": 8,
                "seed": {"family": "product",
                         "row": {"family": "grs", "p": 2, "m": 4, "n": 15, "k": 9},
                         "col": {"family": "grs", "p": 2, "m": 4, "n": 14, "k": 3}}}"#,
        ];
        for (i, text) in configs.iter().enumerate() {
            let config: CodecConfig = serde_json::from_str(text).unwrap();
            let codec = build_codec(&config).unwrap();
            round_trip(codec.as_ref(), 100 + i as u64);
        }
    }

    #[test]
    fn codec_parameters_match_the_constructions() {
        let codec = build_codec(&CodecConfig::I { p: 2, m: 3, t: 1 }).unwrap();
        assert_eq!(codec.n(), 7);
        assert_eq!(codec.kendall_radius(), 1);
        assert_eq!(codec.message_count(), Some(168));
        assert_eq!(codec.message_by_index(0).unwrap(), Message::Index(0));
        assert!(codec.message_by_index(168).is_err());

        let codec = build_codec(&CodecConfig::II {
            n: 62,
            seed: SeedSpec::Bch { ext_degree: 8, t: 5, shorten_by: 2 },
        })
        .unwrap();
        assert_eq!(codec.n(), 62);
        assert_eq!(codec.message_len(), 213);
        assert_eq!(codec.kendall_radius(), 5);
        assert_eq!(codec.design_kendall_distance(), 11);
        assert_eq!(codec.message_count(), None);
        assert_eq!(
            codec.message_by_index(5).unwrap(),
            Message::Symbols({
                let mut bits = vec![0u32; 213];
                bits[211] = 0;
                bits[210] = 1;
                bits[212] = 1;
                bits
            })
        );
    }

    #[test]
    fn default_seeds_fit_their_layouts() {
        assert_eq!(
            default_gray_seed(62, 5).unwrap(),
            SeedSpec::Bch { ext_degree: 8, t: 5, shorten_by: 2 }
        );
        assert_eq!(
            default_gray_seed(8, 2).unwrap(),
            SeedSpec::Bch { ext_degree: 4, t: 2, shorten_by: 2 }
        );
        assert_eq!(
            default_threshold_seed(64, 5).unwrap(),
            SeedSpec::Bch { ext_degree: 6, t: 5, shorten_by: 0 }
        );
        // Both must actually build.
        build_codec(&CodecConfig::II { n: 62, seed: default_gray_seed(62, 5).unwrap() }).unwrap();
        build_codec(&CodecConfig::IIIA { n: 64, seed: default_threshold_seed(64, 5).unwrap() })
            .unwrap();
    }

    #[test]
    fn message_type_mismatches_are_rejected() {
        let codec = build_codec(&CodecConfig::I { p: 2, m: 3, t: 1 }).unwrap();
        assert!(codec.encode(&Message::Symbols(vec![0])).is_err());
        let codec = build_codec(&CodecConfig::IIIA {
            n: 64,
            seed: SeedSpec::Bch { ext_degree: 6, t: 5, shorten_by: 0 },
        })
        .unwrap();
        assert!(codec.encode(&Message::Index(0)).is_err());
        assert!(codec.encode(&Message::Symbols(vec![0; 10])).is_err());
    }

    #[test]
    fn messages_serialize_bare() {
        assert_eq!(serde_json::to_string(&Message::Index(7)).unwrap(), "7");
        assert_eq!(serde_json::to_string(&Message::Symbols(vec![1, 0])).unwrap(), "[1,0]");
        assert_eq!(serde_json::from_str::<Message>("7").unwrap(), Message::Index(7));
        assert_eq!(
            serde_json::from_str::<Message>("[1,0]").unwrap(),
            Message::Symbols(vec![1, 0])
        );
    }
}
