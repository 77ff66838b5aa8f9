//! Permutations of `[n] = {1, …, n}`, inversion vectors, and the Kendall
//! tau metric.
//!
//! A permutation is stored in one-line notation: `entries[k]` is the image
//! of position `k + 1`, with values `1..=n`. The Kendall tau distance
//! between two permutations of `[n]` is the minimum number of adjacent
//! transpositions turning one into the other; it is right-invariant and
//! has diameter `n(n-1)/2`.
//!
//! The inversion vector `x` of a permutation has `n - 1` coordinates,
//! where coordinate `i` (for `i = 1..=n-1`, bound `i`) counts the values
//! smaller than `i + 1` that appear to the right of `i + 1` in one-line
//! notation. The map between permutations and inversion vectors is a
//! bijection that preserves weight: the sum of the coordinates equals the
//! Kendall distance to the identity. It does not preserve distances in
//! general, but the ell-1 distance of inversion vectors never exceeds the
//! Kendall distance, which is what the code constructions rely on.

use crate::Error;
use rand::Rng;
use std::collections::HashMap;

// --- Permutation ---

/// A permutation of `[n]` in one-line notation (1-based values).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// The identity permutation on `[n]`.
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    /// Builds a permutation from one-line notation, validating that
    /// `entries` contains every value `1..=n` exactly once.
    pub fn from_one_line(entries: Vec<u32>) -> Result<Permutation, Error> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n || seen[(v - 1) as usize] {
                return Err(Error::NotAPermutation);
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { entries })
    }

    /// Ground-set size `n`.
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// One-line notation.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Image of `i` under the permutation (`i` is 1-based).
    pub fn image(&self, i: u32) -> u32 {
        self.entries[(i - 1) as usize]
    }

    /// Functional composition: `(self ∘ pi)(i) = self(pi(i))`.
    ///
    /// In the product notation where `pi sigma` means "apply `pi`, then
    /// `sigma`", this computes the product `pi self`.
    pub fn compose(&self, pi: &Permutation) -> Result<Permutation, Error> {
        if self.n() != pi.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: pi.n(),
            });
        }
        let entries = pi.entries.iter().map(|&v| self.image(v)).collect();
        Ok(Permutation { entries })
    }

    /// The inverse permutation.
    pub fn invert(&self) -> Permutation {
        let mut entries = vec![0u32; self.n()];
        for (k, &v) in self.entries.iter().enumerate() {
            entries[(v - 1) as usize] = k as u32 + 1;
        }
        Permutation { entries }
    }

    /// Number of inversions: pairs of values `i > j` where `i` appears
    /// before `j` in one-line notation. Equals the Kendall distance to
    /// the identity. O(n log n).
    pub fn inversion_count(&self) -> u64 {
        let n = self.n();
        let mut bit = Fenwick::new(n);
        let mut count = 0u64;
        for (k, &v) in self.entries.iter().enumerate() {
            // Values already placed that are larger than v.
            count += k as u64 - bit.prefix(v as usize);
            bit.add(v as usize);
        }
        count
    }

    /// The inversion vector: coordinate `i` counts values `j < i + 1`
    /// positioned after `i + 1`. O(n log n).
    pub fn to_inversion_vector(&self) -> InversionVector {
        let n = self.n();
        if n <= 1 {
            return InversionVector { coords: Vec::new() };
        }
        let inv = self.invert();
        // pos[v-1] = position of value v, 1-based.
        let pos = &inv.entries;
        let mut bit = Fenwick::new(n);
        bit.add(pos[0] as usize);
        let mut coords = Vec::with_capacity(n - 1);
        for v in 2..=n {
            let p = pos[v - 1] as usize;
            // Of the v-1 smaller values, those at positions < p sit left.
            let left = bit.prefix(p);
            coords.push((v as u64 - 1 - left) as u32);
            bit.add(p);
        }
        InversionVector { coords }
    }

    /// Inverse of [`Permutation::to_inversion_vector`]: rebuilds the
    /// permutation whose inversion vector is `x`.
    ///
    /// Processes values `2..=n` in increasing order, inserting value `k`
    /// so that exactly `x(k-1)` smaller values end up to its right.
    pub fn from_inversion_vector(x: &InversionVector) -> Permutation {
        let n = x.n();
        let mut entries: Vec<u32> = Vec::with_capacity(n);
        entries.push(1);
        for k in 2..=n {
            let drop = x.coords[k - 2] as usize;
            entries.insert(k - 1 - drop, k as u32);
        }
        Permutation { entries }
    }

    /// Swaps the entries at 1-based positions `pos` and `pos + 1`.
    pub fn swap_adjacent(&mut self, pos: usize) -> Result<(), Error> {
        if pos == 0 || pos >= self.n() {
            return Err(Error::InvalidParameter(format!(
                "swap position {pos} outside 1..={}",
                self.n().saturating_sub(1)
            )));
        }
        self.entries.swap(pos - 1, pos);
        Ok(())
    }
}

/// Every permutation of `[n]`, in lexicographic one-line order.
///
/// Intended for exhaustive verification at small `n`; errors above
/// `n = 10` (10! is just over 3.6 million).
pub fn enumerate_all(n: usize) -> Result<Vec<Permutation>, Error> {
    if n == 0 || n > 10 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive enumeration supports 1 <= n <= 10, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut cur = Permutation::identity(n).entries;
    loop {
        out.push(Permutation { entries: cur.clone() });
        // Next permutation in lexicographic order.
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    Ok(out)
}

// --- Inversion vectors ---

/// An element of `[0,1] × [0,2] × … × [0,n-1]`: coordinate `i` (1-based)
/// lies in `0..=i`. Stored as `coords[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InversionVector {
    coords: Vec<u32>,
}

impl InversionVector {
    /// Validates coordinate bounds: `coords[i] <= i + 1`.
    pub fn new(coords: Vec<u32>) -> Result<InversionVector, Error> {
        for (i, &v) in coords.iter().enumerate() {
            let bound = i as u32 + 1;
            if v > bound {
                return Err(Error::CoordinateOutOfRange { index: i + 1, value: v, bound });
            }
        }
        Ok(InversionVector { coords })
    }

    /// The all-zero vector for permutations of `[n]` (the identity's).
    pub fn zero(n: usize) -> InversionVector {
        InversionVector {
            coords: vec![0; n.saturating_sub(1)],
        }
    }

    /// Ground-set size of the corresponding permutations.
    pub fn n(&self) -> usize {
        self.coords.len() + 1
    }

    /// The coordinates `x(1), …, x(n-1)`.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Sum of coordinates; equals the Kendall distance between the
    /// corresponding permutation and the identity.
    pub fn weight(&self) -> u64 {
        self.coords.iter().map(|&v| v as u64).sum()
    }

    /// ell-1 distance between two inversion vectors of the same size.
    pub fn l1_distance(&self, other: &InversionVector) -> Result<u64, Error> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coords.len(),
                got: other.coords.len(),
            });
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs())
            .sum())
    }
}

// --- Kendall tau metric ---

/// Kendall tau distance: the minimum number of adjacent transpositions
/// turning `sigma` into `pi`. Computed as the inversion count of
/// `sigma⁻¹ ∘ pi`. O(n log n).
pub fn kendall_distance(sigma: &Permutation, pi: &Permutation) -> Result<u64, Error> {
    if sigma.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: sigma.n(),
            got: pi.n(),
        });
    }
    Ok(sigma.invert().compose(pi)?.inversion_count())
}

/// Kendall tau distance by breadth-first search over the adjacent
/// transposition graph. Independent of the inversion machinery; intended
/// as an oracle for small `n` (errors above `n = 8`).
pub fn bfs_kendall_distance(sigma: &Permutation, pi: &Permutation) -> Result<u64, Error> {
    if sigma.n() != pi.n() {
        return Err(Error::DimensionMismatch {
            expected: sigma.n(),
            got: pi.n(),
        });
    }
    if sigma.n() > 8 {
        return Err(Error::InvalidParameter(format!(
            "BFS oracle supports n <= 8, got {}",
            sigma.n()
        )));
    }
    if sigma == pi {
        return Ok(0);
    }
    let n = sigma.n();
    let mut dist: HashMap<Vec<u32>, u64> = HashMap::new();
    dist.insert(sigma.entries.clone(), 0);
    let mut frontier = vec![sigma.entries.clone()];
    let mut d = 0u64;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for cur in frontier {
            for k in 0..n - 1 {
                let mut nb = cur.clone();
                nb.swap(k, k + 1);
                if nb == pi.entries {
                    return Ok(d);
                }
                if !dist.contains_key(&nb) {
                    dist.insert(nb.clone(), d);
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    unreachable!("adjacent transpositions connect the symmetric group");
}

// --- Adjacent-transposition error channel ---

/// Applies `count` uniformly random adjacent transpositions to `sigma`.
///
/// Transpositions may cancel, so the realized Kendall distance to
/// `sigma` is at most `count` but can be smaller.
pub fn apply_kendall_errors<R: Rng + ?Sized>(
    sigma: &Permutation,
    count: usize,
    rng: &mut R,
) -> Result<Permutation, Error> {
    if sigma.n() < 2 && count > 0 {
        return Err(Error::InvalidParameter(
            "cannot apply adjacent transpositions with n < 2".to_string(),
        ));
    }
    let mut out = sigma.clone();
    for _ in 0..count {
        let pos = rng.random_range(1..sigma.n());
        out.swap_adjacent(pos)?;
    }
    Ok(out)
}

// --- Fenwick tree (internal) ---

struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(n: usize) -> Fenwick {
        Fenwick { tree: vec![0; n + 1] }
    }

    /// Adds one at index `i` (1-based).
    fn add(&mut self, mut i: usize) {
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Count of inserted indices in `1..=i`.
    fn prefix(&self, mut i: usize) -> u64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}
