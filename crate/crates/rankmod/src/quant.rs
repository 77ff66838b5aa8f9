//! Rank modulation codes that embed block-code symbols into inversion
//! coordinates through scalar quantizers.
//!
//! Two embeddings are provided. The binary one ([`QuantACode`]) writes
//! bit `b` of a length-`n-1` seed codeword into coordinate `i` as
//! `b · i` and reads it back by thresholding at `⌊i/2⌋`; flipping the
//! bit read from coordinate `i` costs the channel at least `⌈i/2⌉`
//! units of coordinate movement, so `t` bit-correction buys
//! `⌊t²/4⌋` Kendall errors. The q-ary one ([`QuantBCode`]) spends the
//! low coordinates as a dead zone and spreads the symbols of a seed
//! over the remaining coordinates in bands of growing resolution, so
//! that symbol flips get more expensive the further out they sit.

use crate::block::{BlockCode, CodeDescriptor, DecodeOutcome};
use crate::perm::{InversionVector, Permutation};
use crate::Error;

// --- Guaranteed Kendall radii ---

/// Kendall errors guaranteed correctable by the binary embedding when
/// the seed corrects `t` bit errors: `⌊t²/4⌋ = Σ_{i=1..t} ⌊i/2⌋`.
pub fn radius_iiia(t: usize) -> usize {
    t * t / 4
}

/// Kendall errors guaranteed correctable by the banded q-ary embedding
/// when the seed corrects `t` symbol errors. Forcing `t + 1` symbol
/// errors costs least when the flips fill the cheapest bands first
/// (band `k` holds `2(q-1)` coordinates at `k - 1` movement each), and
/// that minimum is `(s+1)·(t+1-(q-1)s) - 1 + 1` with
/// `s = ⌊(t+1) / (2(q-1))⌋`.
pub fn radius_iiib(t: usize, q: u32) -> Result<usize, Error> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet must have q >= 2, got {q}")));
    }
    let q1 = (q - 1) as usize;
    let f = t + 1;
    let s = f / (2 * q1);
    Ok((s + 1) * (f - q1 * s) - 1)
}

// --- Binary embedding ---

/// Permutation code from a binary seed of length `n - 1`: coordinate
/// `i` (which ranges over `0..=i`) carries one bit, written as `0` or
/// `i` and read back by comparing against `⌊i/2⌋`.
pub struct QuantACode {
    seed: Box<dyn BlockCode>,
}

impl QuantACode {
    pub fn new(n: usize, seed: Box<dyn BlockCode>) -> Result<QuantACode, Error> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "permutation length must be at least 2, got {n}"
            )));
        }
        if seed.q() != 2 {
            return Err(Error::InvalidParameter(format!(
                "seed code must be binary, got alphabet {}",
                seed.q()
            )));
        }
        if seed.len() != n - 1 {
            return Err(Error::DimensionMismatch { expected: n - 1, got: seed.len() });
        }
        Ok(QuantACode { seed })
    }

    pub fn n(&self) -> usize {
        self.seed.len() + 1
    }

    pub fn seed(&self) -> &dyn BlockCode {
        self.seed.as_ref()
    }

    pub fn message_bits(&self) -> usize {
        self.seed.dimension()
    }

    pub fn kendall_radius(&self) -> usize {
        radius_iiia(self.seed.corrector_radius())
    }

    /// Kendall distance certified by the seed's design distance.
    pub fn design_kendall_distance(&self) -> usize {
        2 * self.kendall_radius() + 1
    }

    fn bits_to_coords(&self, bits: &[u32]) -> Vec<u32> {
        bits.iter()
            .enumerate()
            .map(|(idx, &b)| if b == 0 { 0 } else { idx as u32 + 1 })
            .collect()
    }

    pub fn encode(&self, message: &[u32]) -> Result<Permutation, Error> {
        let bits = self.seed.encode(message)?;
        let coords = self.bits_to_coords(&bits);
        Ok(Permutation::from_inversion_vector(&InversionVector::new(coords)?))
    }

    pub fn decode(&self, word: &Permutation) -> Result<Option<(Vec<u32>, Permutation)>, Error> {
        if word.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: word.n() });
        }
        let received = word.to_inversion_vector();
        let bits: Vec<u32> = received
            .coords()
            .iter()
            .enumerate()
            .map(|(idx, &y)| u32::from(y > (idx as u32).div_ceil(2)))
            .collect();
        let (message, codeword) = match self.seed.decode(&bits)? {
            DecodeOutcome::Decoded { message, codeword } => (message, codeword),
            DecodeOutcome::Failure => return Ok(None),
        };
        let coords = self.bits_to_coords(&codeword);
        let perm = Permutation::from_inversion_vector(&InversionVector::new(coords)?);
        Ok(Some((message, perm)))
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            family: "threshold-permutation",
            q: self.n() as u32,
            n: self.n(),
            k: Some(self.seed.dimension()),
            k_bits: self.seed.dimension_bits(),
            d: self.design_kendall_distance(),
            t: self.kendall_radius(),
            params: serde_json::json!({ "seed": self.seed.descriptor() }),
        }
    }
}

// --- Banded q-ary embedding ---

/// Permutation code of length `n = (2l+1)(q-1)` from a q-ary seed of
/// length `2(l-1)(q-1)`. The first `3(q-1)-1` coordinates are a dead
/// zone pinned to zero; the rest carry one seed symbol each. A
/// coordinate `i` in band `k = ⌊(i+q-1) / (2(q-1))⌋` (bands run
/// `2..=l`) stores symbol `s` as `(2k-1)·s` and reads values back by
/// scanning the bins `[(2k-1)s - (k-1), (2k-1)s + k]` in ascending
/// order.
pub struct QuantBCode {
    q: u32,
    l: usize,
    seed: Box<dyn BlockCode>,
}

impl QuantBCode {
    pub fn new(q: u32, l: usize, seed: Box<dyn BlockCode>) -> Result<QuantBCode, Error> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("alphabet must have q >= 2, got {q}")));
        }
        if l < 2 {
            return Err(Error::InvalidParameter(format!("need at least two bands, got l = {l}")));
        }
        if seed.q() != q {
            return Err(Error::InvalidParameter(format!(
                "seed alphabet {} does not match q = {q}",
                seed.q()
            )));
        }
        let expect = 2 * (l - 1) * (q as usize - 1);
        if seed.len() != expect {
            return Err(Error::DimensionMismatch { expected: expect, got: seed.len() });
        }
        Ok(QuantBCode { q, l, seed })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        (2 * self.l + 1) * (self.q as usize - 1)
    }

    pub fn seed(&self) -> &dyn BlockCode {
        self.seed.as_ref()
    }

    /// Number of leading coordinates that carry no symbol.
    pub fn dead_zone(&self) -> usize {
        3 * (self.q as usize - 1) - 1
    }

    pub fn kendall_radius(&self) -> usize {
        radius_iiib(self.seed.corrector_radius(), self.q).expect("q validated")
    }

    /// Kendall distance certified by the seed's design distance.
    pub fn design_kendall_distance(&self) -> Result<usize, Error> {
        let t_design = (self.seed.design_distance() - 1) / 2;
        Ok(2 * radius_iiib(t_design, self.q)? + 1)
    }

    /// Band of the coordinate with 1-based bound `i`.
    fn band(&self, i: usize) -> usize {
        (i + self.q as usize - 1) / (2 * (self.q as usize - 1))
    }

    fn symbols_to_coords(&self, symbols: &[u32]) -> Vec<u32> {
        let mut coords = vec![0u32; self.n() - 1];
        for (j, &s) in symbols.iter().enumerate() {
            let i = self.dead_zone() + 1 + j;
            let k = self.band(i) as u32;
            coords[i - 1] = (2 * k - 1) * s;
        }
        coords
    }

    /// Nearest stored symbol for value `y` at a band-`k` coordinate:
    /// the first `s` whose bin `[(2k-1)s - (k-1), (2k-1)s + k]`
    /// contains `y`, clamping overshoots to the top symbol.
    fn unquantize(&self, k: u32, y: u32) -> u32 {
        for s in 0..self.q - 1 {
            if y <= (2 * k - 1) * s + k {
                return s;
            }
        }
        self.q - 1
    }

    pub fn encode(&self, message: &[u32]) -> Result<Permutation, Error> {
        let symbols = self.seed.encode(message)?;
        let coords = self.symbols_to_coords(&symbols);
        Ok(Permutation::from_inversion_vector(&InversionVector::new(coords)?))
    }

    pub fn decode(&self, word: &Permutation) -> Result<Option<(Vec<u32>, Permutation)>, Error> {
        if word.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: word.n() });
        }
        let received = word.to_inversion_vector();
        let mut symbols = Vec::with_capacity(self.seed.len());
        for j in 0..self.seed.len() {
            let i = self.dead_zone() + 1 + j;
            let k = self.band(i) as u32;
            symbols.push(self.unquantize(k, received.coords()[i - 1]));
        }
        let (message, codeword) = match self.seed.decode(&symbols)? {
            DecodeOutcome::Decoded { message, codeword } => (message, codeword),
            DecodeOutcome::Failure => return Ok(None),
        };
        let coords = self.symbols_to_coords(&codeword);
        let perm = Permutation::from_inversion_vector(&InversionVector::new(coords)?);
        Ok(Some((message, perm)))
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            family: "banded-permutation",
            q: self.n() as u32,
            n: self.n(),
            k: Some(self.seed.dimension()),
            k_bits: self.seed.dimension_bits(),
            d: self.design_kendall_distance().unwrap_or(0),
            t: self.kendall_radius(),
            params: serde_json::json!({
                "alphabet": self.q,
                "bands": self.l,
                "seed": self.seed.descriptor(),
            }),
        }
    }
}
