//! Equivalence of multidimensional matrices.
//!
//! Two matrices are equivalent when one maps onto the other by permuting
//! hyperplanes within directions (relabeling coordinate values) and permuting
//! the directions themselves. The group has d!(n!)^d elements; every search
//! here is a budgeted brute-force walk over it, which is exact at desk scale
//! and refuses loudly beyond it.

use itertools::Itertools;

use crate::error::Error;
use crate::matrix::MultiMatrix;

/// One group element: direction i of the output reads direction
/// `direction_perm[i]` of the input, with coordinate values relabeled by
/// `coord_perms[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transform {
    pub direction_perm: Vec<usize>,
    pub coord_perms: Vec<Vec<usize>>,
}

impl Transform {
    pub fn identity(d: usize, n: usize) -> Self {
        Transform {
            direction_perm: (0..d).collect(),
            coord_perms: vec![(0..n).collect(); d],
        }
    }

    /// Offset map of the transform: `map[out] = in` such that
    /// `apply(m).bits[out] == m.bits[map[out]]`.
    fn offset_map(&self, d: usize, n: usize) -> Vec<u32> {
        let mut strides = vec![1usize; d];
        for k in (0..d.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * n;
        }
        let len = n.pow(d as u32);
        let mut map = Vec::with_capacity(len);
        let mut coords = vec![0usize; d];
        for out in 0..len {
            if out > 0 {
                let mut k = d - 1;
                loop {
                    coords[k] += 1;
                    if coords[k] < n {
                        break;
                    }
                    coords[k] = 0;
                    k -= 1;
                }
            }
            let mut input = 0usize;
            for i in 0..d {
                input += self.coord_perms[i][coords[i]] * strides[self.direction_perm[i]];
            }
            map.push(input as u32);
        }
        map
    }

    pub fn apply(&self, m: &MultiMatrix) -> MultiMatrix {
        let map = self.offset_map(m.dim(), m.order());
        let bits = map.iter().map(|&o| m.get_offset(o as usize)).collect();
        MultiMatrix::new(m.dim(), m.order(), bits).expect("transform preserves shape")
    }
}

/// d!(n!)^d, or None on overflow.
pub fn group_size(d: usize, n: usize) -> Option<u128> {
    fn factorial(k: usize) -> Option<u128> {
        (1..=k as u128).try_fold(1u128, |acc, v| acc.checked_mul(v))
    }
    let mut size = factorial(d)?;
    let per_direction = factorial(n)?;
    for _ in 0..d {
        size = size.checked_mul(per_direction)?;
    }
    Some(size)
}

fn search_steps(d: usize, n: usize) -> Option<u128> {
    let cells = (n as u128).checked_pow(d as u32)?;
    group_size(d, n)?.checked_mul(cells)
}

fn check_budget(d: usize, n: usize, budget: u64) -> Result<(), Error> {
    match search_steps(d, n) {
        Some(steps) if steps <= budget as u128 => Ok(()),
        _ => Err(Error::BudgetExceeded(format!(
            "equivalence search over d={d}, n={n} needs {:?} steps, budget is {budget}",
            search_steps(d, n)
        ))),
    }
}

/// All group elements in a fixed deterministic order, identity first.
pub fn all_transforms(d: usize, n: usize) -> impl Iterator<Item = Transform> {
    let value_perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    (0..d).permutations(d).flat_map(move |direction_perm| {
        let value_perms = value_perms.clone();
        let count = value_perms.len().pow(d as u32);
        (0..count).map(move |mut code| {
            let mut coord_perms = Vec::with_capacity(d);
            for _ in 0..d {
                coord_perms.push(value_perms[code % value_perms.len()].clone());
                code /= value_perms.len();
            }
            Transform {
                direction_perm: direction_perm.clone(),
                coord_perms,
            }
        })
    })
}

/// Exhaustive equivalence test. Profiles and support sizes gate the group
/// walk; a search space above `budget` steps is refused.
pub fn is_equivalent(a: &MultiMatrix, b: &MultiMatrix, budget: u64) -> Result<bool, Error> {
    if a.dim() != b.dim() || a.order() != b.order() {
        return Err(Error::shape(format!(
            "cannot compare shapes ({}, {}) and ({}, {})",
            a.dim(),
            a.order(),
            b.dim(),
            b.order()
        )));
    }
    if a.support_size() != b.support_size() || a.profile() != b.profile() {
        return Ok(false);
    }
    check_budget(a.dim(), a.order(), budget)?;
    let (d, n) = (a.dim(), a.order());
    for t in all_transforms(d, n) {
        let map = t.offset_map(d, n);
        if map
            .iter()
            .enumerate()
            .all(|(out, &input)| a.get_offset(input as usize) == b.get_offset(out))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Lexicographically minimal bit string over the whole orbit of `m`.
pub fn canonical_form(m: &MultiMatrix, budget: u64) -> Result<MultiMatrix, Error> {
    check_budget(m.dim(), m.order(), budget)?;
    let group = ShapeGroup::new(m.dim(), m.order(), budget)?;
    let bits = group.canonical_bits(m.bits());
    MultiMatrix::new(m.dim(), m.order(), bits)
}

/// Precomputed offset maps for one shape, shared across a whole enumeration.
pub struct ShapeGroup {
    maps: Vec<Vec<u32>>,
}

impl ShapeGroup {
    pub fn new(d: usize, n: usize, budget: u64) -> Result<Self, Error> {
        check_budget(d, n, budget)?;
        let maps = all_transforms(d, n)
            .map(|t| t.offset_map(d, n))
            .collect();
        Ok(ShapeGroup { maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// True when no transform produces a lexicographically smaller bit
    /// string, i.e. `bits` is its own class representative.
    pub fn is_orbit_minimal(&self, bits: &[bool]) -> bool {
        for map in &self.maps {
            for (out, &input) in map.iter().enumerate() {
                let transformed = bits[input as usize];
                let original = bits[out];
                if transformed != original {
                    if !transformed {
                        // transformed string is smaller: not minimal
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    pub fn canonical_bits(&self, bits: &[bool]) -> Vec<bool> {
        let mut best: Vec<bool> = bits.to_vec();
        for map in &self.maps {
            let mut smaller = false;
            for (out, &input) in map.iter().enumerate() {
                let transformed = bits[input as usize];
                if transformed != best[out] {
                    smaller = !transformed;
                    break;
                }
            }
            if smaller {
                for (out, &input) in map.iter().enumerate() {
                    best[out] = bits[input as usize];
                }
            }
        }
        best
    }
}
