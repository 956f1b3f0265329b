//! Multidimensional (0,1)-matrices, hyperplanes, rates, and profiles.
//!
//! A d-dimensional matrix of order n holds one bit per index in {0,..,n-1}^d.
//! The hyperplane in direction i at value j is the set of indices whose i-th
//! coordinate equals j; its rate is the number of unit entries it contains.

use std::fmt;

use crate::error::Error;

/// Hard cap on n^d so a single matrix stays in memory comfortably.
pub const MAX_ENTRIES: u64 = 1 << 24;

/// One position in {0,..,n-1}^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Index {
    coords: Vec<usize>,
}

impl Index {
    pub fn new(coords: Vec<usize>, d: usize, n: usize) -> Result<Self, Error> {
        if coords.len() != d {
            return Err(Error::shape(format!(
                "index has {} coordinates, matrix dimension is {d}",
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|&&c| c >= n) {
            return Err(Error::range(format!("coordinate {c} exceeds order {n}")));
        }
        Ok(Index { coords })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Linear offset under the canonical ordering: lexicographic with the
    /// last coordinate varying fastest.
    pub fn to_offset(&self, n: usize) -> usize {
        let mut offset = 0usize;
        for &c in &self.coords {
            offset = offset * n + c;
        }
        offset
    }

    pub fn from_offset(mut offset: usize, d: usize, n: usize) -> Self {
        let mut coords = vec![0usize; d];
        for slot in coords.iter_mut().rev() {
            *slot = offset % n;
            offset /= n;
        }
        Index { coords }
    }

    /// Coordinate-wise complement, defined for order 2 only.
    pub fn antipode(&self) -> Index {
        Index {
            coords: self.coords.iter().map(|&c| 1 - c).collect(),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense d-dimensional 0/1 matrix of order n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiMatrix {
    d: usize,
    n: usize,
    bits: Vec<bool>,
}

impl MultiMatrix {
    pub fn new(d: usize, n: usize, bits: Vec<bool>) -> Result<Self, Error> {
        let len = checked_size(d, n)?;
        if bits.len() != len {
            return Err(Error::shape(format!(
                "bit vector has length {}, expected n^d = {len}",
                bits.len()
            )));
        }
        Ok(MultiMatrix { d, n, bits })
    }

    pub fn zeros(d: usize, n: usize) -> Result<Self, Error> {
        let len = checked_size(d, n)?;
        Ok(MultiMatrix {
            d,
            n,
            bits: vec![false; len],
        })
    }

    pub fn full(d: usize, n: usize) -> Result<Self, Error> {
        let len = checked_size(d, n)?;
        Ok(MultiMatrix {
            d,
            n,
            bits: vec![true; len],
        })
    }

    pub fn from_support<'a, I>(d: usize, n: usize, support: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = &'a [usize]>,
    {
        let mut m = MultiMatrix::zeros(d, n)?;
        for coords in support {
            let idx = Index::new(coords.to_vec(), d, n)?;
            m.bits[idx.to_offset(n)] = true;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, index: &Index) -> Result<bool, Error> {
        if index.dim() != self.d || index.coords().iter().any(|&c| c >= self.n) {
            return Err(Error::range(format!(
                "index {index} outside a {}-dimensional matrix of order {}",
                self.d, self.n
            )));
        }
        Ok(self.bits[index.to_offset(self.n)])
    }

    pub fn get_offset(&self, offset: usize) -> bool {
        self.bits[offset]
    }

    pub fn set_offset(&mut self, offset: usize, value: bool) {
        self.bits[offset] = value;
    }

    pub fn support_size(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn support_offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(o, _)| o)
    }

    pub fn support(&self) -> impl Iterator<Item = Index> + '_ {
        self.support_offsets()
            .map(|o| Index::from_offset(o, self.d, self.n))
    }

    pub fn zero_offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(o, _)| o)
    }

    pub fn with_entry_added(&self, index: &Index) -> Result<Self, Error> {
        if self.get(index)? {
            return Err(Error::domain(format!("entry {index} is already 1")));
        }
        let mut m = self.clone();
        m.bits[index.to_offset(self.n)] = true;
        Ok(m)
    }

    /// Offsets of the hyperplane in direction `i` at value `j`, in increasing
    /// order. Every index whose i-th coordinate is j appears exactly once.
    pub fn hyperplane_offsets(&self, i: usize, j: usize) -> Result<Vec<usize>, Error> {
        hyperplane_offsets(self.d, self.n, i, j)
    }

    pub fn hyperplane_indices(&self, i: usize, j: usize) -> Result<Vec<Index>, Error> {
        Ok(self
            .hyperplane_offsets(i, j)?
            .into_iter()
            .map(|o| Index::from_offset(o, self.d, self.n))
            .collect())
    }

    /// Number of unit entries in the hyperplane (i, j).
    pub fn rate(&self, i: usize, j: usize) -> Result<u64, Error> {
        Ok(self
            .hyperplane_offsets(i, j)?
            .into_iter()
            .filter(|&o| self.bits[o])
            .count() as u64)
    }

    /// All rates of direction `i`, indexed by hyperplane value.
    pub fn direction_rates(&self, i: usize) -> Result<Vec<u64>, Error> {
        (0..self.n).map(|j| self.rate(i, j)).collect()
    }

    /// Canonicalized rate profile: rates within each direction are sorted
    /// ascending, then the directions themselves are sorted lexicographically.
    /// Equivalent matrices always share a profile.
    pub fn profile(&self) -> Profile {
        let mut directions: Vec<Vec<u64>> = (0..self.d)
            .map(|i| {
                let mut rates = self.direction_rates(i).expect("direction in range");
                rates.sort_unstable();
                rates
            })
            .collect();
        directions.sort();
        Profile { directions }
    }
}

fn checked_size(d: usize, n: usize) -> Result<usize, Error> {
    if d == 0 {
        return Err(Error::shape("dimension must be at least 1".to_string()));
    }
    if n == 0 {
        return Err(Error::shape("order must be at least 1".to_string()));
    }
    let mut size: u64 = 1;
    for _ in 0..d {
        size = size
            .checked_mul(n as u64)
            .filter(|&s| s <= MAX_ENTRIES)
            .ok_or_else(|| {
                Error::TooLarge(format!("n^d with n={n}, d={d} exceeds {MAX_ENTRIES} entries"))
            })?;
    }
    Ok(size as usize)
}

/// Hyperplane offsets without a matrix in hand.
pub fn hyperplane_offsets(d: usize, n: usize, i: usize, j: usize) -> Result<Vec<usize>, Error> {
    if i >= d {
        return Err(Error::range(format!("direction {i} exceeds dimension {d}")));
    }
    if j >= n {
        return Err(Error::range(format!("value {j} exceeds order {n}")));
    }
    let stride = n.pow((d - 1 - i) as u32);
    let block = stride * n;
    let highs = n.pow(i as u32);
    let mut offsets = Vec::with_capacity(n.pow((d - 1) as u32));
    for high in 0..highs {
        let base = high * block + j * stride;
        for low in 0..stride {
            offsets.push(base + low);
        }
    }
    Ok(offsets)
}

/// Sorted rate profile; a complete equivalence invariant for threshold
/// matrices and a cheap prefilter for everything else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Profile {
    directions: Vec<Vec<u64>>,
}

impl Profile {
    pub fn directions(&self) -> &[Vec<u64>] {
        &self.directions
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, dir) in self.directions.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (t, r) in dir.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}

/// The majority matrix of dimension 3, order 2: entries with at least two
/// coordinates equal to 1. A recurring fixture.
pub fn majority3() -> MultiMatrix {
    MultiMatrix::from_support(3, 2, [[0, 1, 1].as_slice(), &[1, 0, 1], &[1, 1, 0], &[1, 1, 1]])
        .expect("majority fixture is well formed")
}
