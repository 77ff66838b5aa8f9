//! Product codes with an iterative row/column bounded-distance decoder.

use super::{check_symbols, BlockCode, CodeDescriptor, DecodeOutcome};
use crate::Error;

/// Default bound on row/column decoding sweeps.
pub const DEFAULT_MAX_ITERS: usize = 4;

/// The product of two systematic codes over one alphabet: codewords are
/// `col.len() × row.len()` matrices whose rows belong to `row` and whose
/// columns belong to `col`. The minimum distance is the product of the
/// component distances.
///
/// Decoding alternates bounded-distance passes over rows and columns.
/// The radius this decoder can promise is `(t_r + 1)(t_c + 1) - 1`, not
/// half the design distance: with at most that many errors, fewer than
/// `t_c + 1` rows can carry more than `t_r` errors each, so after the
/// row pass every column has at most `t_c` errors left. Larger patterns
/// often decode too, but are not guaranteed.
pub struct ProductCode {
    row: Box<dyn BlockCode>,
    col: Box<dyn BlockCode>,
    max_iters: usize,
}

impl ProductCode {
    pub fn new(
        row: Box<dyn BlockCode>,
        col: Box<dyn BlockCode>,
        max_iters: usize,
    ) -> Result<ProductCode, Error> {
        if row.q() != col.q() {
            return Err(Error::InvalidParameter(format!(
                "component alphabets differ: {} vs {}",
                row.q(),
                col.q()
            )));
        }
        if max_iters == 0 {
            return Err(Error::InvalidParameter("need at least one sweep".into()));
        }
        Ok(ProductCode { row, col, max_iters })
    }

    pub fn row_code(&self) -> &dyn BlockCode {
        self.row.as_ref()
    }

    pub fn col_code(&self) -> &dyn BlockCode {
        self.col.as_ref()
    }

    fn rows(&self) -> usize {
        self.col.len()
    }

    fn cols(&self) -> usize {
        self.row.len()
    }

    /// True when every row and every column re-encodes to itself, i.e.
    /// the matrix is a codeword. Systematic components make the check a
    /// pure re-encoding of the leading symbols.
    fn is_codeword(&self, m: &[Vec<u32>]) -> Result<bool, Error> {
        for r in m.iter() {
            if self.row.encode(&r[..self.row.dimension()])? != *r {
                return Ok(false);
            }
        }
        for j in 0..self.cols() {
            let col: Vec<u32> = m.iter().map(|r| r[j]).collect();
            if self.col.encode(&col[..self.col.dimension()])? != col {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl BlockCode for ProductCode {
    fn q(&self) -> u32 {
        self.row.q()
    }

    fn len(&self) -> usize {
        self.rows() * self.cols()
    }

    fn dimension(&self) -> usize {
        self.row.dimension() * self.col.dimension()
    }

    fn design_distance(&self) -> usize {
        self.row.design_distance() * self.col.design_distance()
    }

    fn corrector_radius(&self) -> usize {
        (self.row.corrector_radius() + 1) * (self.col.corrector_radius() + 1) - 1
    }

    /// Message and codeword are row-major matrices.
    fn encode(&self, message: &[u32]) -> Result<Vec<u32>, Error> {
        let (ka, kb) = (self.row.dimension(), self.col.dimension());
        check_symbols(message, ka * kb, self.q())?;
        // Encode the kb message rows, then every column; systematic
        // linear components make the two orders agree.
        let mut top: Vec<Vec<u32>> = Vec::with_capacity(kb);
        for i in 0..kb {
            top.push(self.row.encode(&message[i * ka..(i + 1) * ka])?);
        }
        let mut matrix = vec![vec![0u32; self.cols()]; self.rows()];
        for j in 0..self.cols() {
            let col_msg: Vec<u32> = top.iter().map(|r| r[j]).collect();
            let col = self.col.encode(&col_msg)?;
            for (i, &s) in col.iter().enumerate() {
                matrix[i][j] = s;
            }
        }
        Ok(matrix.concat())
    }

    fn decode(&self, word: &[u32]) -> Result<DecodeOutcome, Error> {
        check_symbols(word, self.len(), self.q())?;
        let (rows, cols) = (self.rows(), self.cols());
        let mut m: Vec<Vec<u32>> =
            (0..rows).map(|i| word[i * cols..(i + 1) * cols].to_vec()).collect();
        for _ in 0..self.max_iters {
            let mut changed = false;
            for r in m.iter_mut() {
                if let DecodeOutcome::Decoded { codeword, .. } = self.row.decode(r)? {
                    if codeword != *r {
                        *r = codeword;
                        changed = true;
                    }
                }
            }
            for j in 0..cols {
                let col: Vec<u32> = m.iter().map(|r| r[j]).collect();
                if let DecodeOutcome::Decoded { codeword, .. } = self.col.decode(&col)? {
                    if codeword != col {
                        for (i, &s) in codeword.iter().enumerate() {
                            m[i][j] = s;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if !self.is_codeword(&m)? {
            return Ok(DecodeOutcome::Failure);
        }
        let (ka, kb) = (self.row.dimension(), self.col.dimension());
        let mut message = Vec::with_capacity(ka * kb);
        for r in m.iter().take(kb) {
            message.extend_from_slice(&r[..ka]);
        }
        Ok(DecodeOutcome::Decoded { message, codeword: m.concat() })
    }

    fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            family: "product",
            q: self.q(),
            n: self.len(),
            k: Some(self.dimension()),
            k_bits: self.dimension_bits(),
            d: self.design_distance(),
            t: self.corrector_radius(),
            params: serde_json::json!({
                "design_radius": (self.design_distance() - 1) / 2,
                "max_iters": self.max_iters,
                "row": self.row.descriptor(),
                "col": self.col.descriptor(),
            }),
        }
    }
}
