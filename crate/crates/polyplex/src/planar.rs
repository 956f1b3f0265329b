//! The two-dimensional theory: stepped matrices, the outer-index weight
//! construction, the extremal matrices with a full rectangle of zeros, and
//! exhaustive small-order classification.
//!
//! A 2D matrix is stepped when both the row supports and the column supports
//! are nested decreasingly in index order; equivalently the support is a
//! staircase region anchored at the top-left corner. Every threshold 2D
//! matrix is equivalent to a stepped one, and the stepped ones regenerate
//! themselves from an explicit weight table read off their outer corners.

use rayon::prelude::*;

use crate::duality::{is_extremal, WeightTable};
use crate::equivalence::ShapeGroup;
use crate::error::Error;
use crate::matrix::MultiMatrix;
use crate::rat::rat;
use crate::threshold::is_threshold;

fn require_planar(a: &MultiMatrix, what: &str) -> Result<(), Error> {
    if a.dim() != 2 {
        return Err(Error::Dimension(format!(
            "{what} is defined for 2-dimensional matrices, got d={}",
            a.dim()
        )));
    }
    Ok(())
}

fn cell(a: &MultiMatrix, i: usize, j: usize) -> bool {
    a.get_offset(i * a.order() + j)
}

/// True iff later rows and later columns have supports contained in earlier
/// ones.
pub fn is_stepped(a: &MultiMatrix) -> Result<bool, Error> {
    require_planar(a, "steppedness")?;
    let n = a.order();
    for i in 0..n.saturating_sub(1) {
        for j in 0..n {
            if cell(a, i + 1, j) && !cell(a, i, j) {
                return Ok(false);
            }
            if cell(a, j, i + 1) && !cell(a, j, i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The support corners of a stepped matrix: support cells whose right and
/// lower neighbors (out of range counts as empty) are both outside the
/// support. Rows increase and columns decrease strictly along the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterIndexList {
    pairs: Vec<(usize, usize)>,
}

impl OuterIndexList {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn outer_indices(a: &MultiMatrix) -> Result<OuterIndexList, Error> {
    if !is_stepped(a)? {
        return Err(Error::domain(
            "outer indices are read off stepped matrices only".to_string(),
        ));
    }
    let n = a.order();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let right = j + 1 < n && cell(a, i, j + 1);
            let below = i + 1 < n && cell(a, i + 1, j);
            if cell(a, i, j) && !right && !below {
                pairs.push((i, j));
            }
        }
    }
    debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1));
    Ok(OuterIndexList { pairs })
}

/// The regenerating weight table of a stepped matrix: with k outer corners,
/// the l-th one (1-based, top to bottom) puts weight (k-l+1)/(k+1) on its
/// row and l/(k+1) on its column, copied to every equal row or column. Rows
/// and columns outside the support stay at weight 0.
pub fn stepped_weights(a: &MultiMatrix) -> Result<WeightTable, Error> {
    let outer = outer_indices(a)?;
    let n = a.order();
    let mut table = WeightTable::zeros(2, n);
    let k = outer.len();
    if k == 0 {
        return Ok(table);
    }
    let row_len: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| cell(a, i, j)).count())
        .collect();
    let col_len: Vec<usize> = (0..n)
        .map(|j| (0..n).filter(|&i| cell(a, i, j)).count())
        .collect();
    for (l, &(oi, oj)) in outer.pairs().iter().enumerate() {
        let row_weight = rat((k - l) as i64, (k + 1) as i64);
        let col_weight = rat((l + 1) as i64, (k + 1) as i64);
        for i in 0..n {
            if row_len[i] == row_len[oi] {
                table.weights[0][i] = row_weight.clone();
            }
        }
        for j in 0..n {
            if col_len[j] == col_len[oj] {
                table.weights[1][j] = col_weight.clone();
            }
        }
    }
    Ok(table)
}

/// The n x n matrix whose zero entries are exactly the last s rows crossed
/// with the last t columns, s + t = n + 1. Extremal with deficiency 1.
pub fn khe_matrix(n: usize, s: usize, t: usize) -> Result<MultiMatrix, Error> {
    if s < 1 || t < 1 || s > n || t > n || s + t != n + 1 {
        return Err(Error::Parameter(format!(
            "zero block needs 1 <= s,t <= n and s + t = n + 1, got n={n} s={s} t={t}"
        )));
    }
    let mut m = MultiMatrix::zeros(2, n)?;
    for i in 0..n {
        for j in 0..n {
            if i < n - s || j < n - t {
                m.set_offset(i * n + j, true);
            }
        }
    }
    Ok(m)
}

/// Exhaustive 2D classification at order n: one representative per extremal
/// class and per threshold class, plus the raw count of stepped matrices.
#[derive(Clone, Debug)]
pub struct PlanarCensus {
    pub extremal: Vec<MultiMatrix>,
    pub threshold: Vec<MultiMatrix>,
    pub stepped_count: u64,
}

/// Per-mask scan record: stepped flag, then class data for orbit-minimal
/// representatives (threshold flag, extremal flag, the matrix).
type ScanRecord = (bool, Option<(bool, bool, MultiMatrix)>);

pub fn enumerate_2d(n: usize, budget: u64) -> Result<PlanarCensus, Error> {
    let cells = MultiMatrix::zeros(2, n)?.len();
    if cells >= 64 || (1u128 << cells) > u128::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "classifying order {n} needs 2^{cells} candidates, budget is {budget}"
        )));
    }
    let group = ShapeGroup::new(2, n, budget)?;
    let scanned = (0..1u64 << cells)
        .into_par_iter()
        .map(|mask| -> Result<ScanRecord, Error> {
            let bits: Vec<bool> = (0..cells).map(|c| mask >> c & 1 == 1).collect();
            let m = MultiMatrix::new(2, n, bits)?;
            let stepped = is_stepped(&m)?;
            if !group.is_orbit_minimal(m.bits()) {
                return Ok((stepped, None));
            }
            let threshold = is_threshold(&m)?.is_some();
            let extremal = is_extremal(&m)?.is_extremal;
            Ok((stepped, Some((threshold, extremal, m))))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let stepped_count = scanned.iter().filter(|(stepped, _)| *stepped).count() as u64;
    let mut threshold = Vec::new();
    let mut extremal = Vec::new();
    for (_, rep) in scanned {
        if let Some((is_thr, is_ext, m)) = rep {
            if is_thr {
                threshold.push(m.clone());
            }
            if is_ext {
                extremal.push(m);
            }
        }
    }
    threshold.sort();
    extremal.sort();
    Ok(PlanarCensus {
        extremal,
        threshold,
        stepped_count,
    })
}
