//! Order-2 matrices viewed as Boolean functions: selfduality, essential
//! weights, the extremality characterization, rate parity, enumeration, and
//! twelve built-in weight vectors whose cover polytopes are edges.
//!
//! For order 2 an index and its coordinate-wise complement form an antipodal
//! pair; a matrix is selfdual when exactly one index of every pair lies in
//! the support. Extremal order-2 matrices are exactly the selfdual threshold
//! matrices, and all optimal covers put weight on at most one hyperplane per
//! direction, so a cover collapses to one positive essential weight per
//! direction, attached here to the coordinate-value-1 hyperplane.

use num_traits::Signed;
use rayon::prelude::*;

use crate::duality::{cover_polytope_is_unique, is_cover, is_extremal, WeightTable};
use crate::equivalence::ShapeGroup;
use crate::error::Error;
use crate::matrix::MultiMatrix;
use crate::rat::{is_multiple_of_unit_fraction, rat, rat_int, Rat};
use crate::threshold::{is_threshold, matrix_from_weights};

/// One positive weight per direction, attached to the value-1 hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialWeights {
    weights: Vec<Rat>,
}

impl EssentialWeights {
    pub fn new(weights: Vec<Rat>) -> Result<EssentialWeights, Error> {
        if weights.is_empty() {
            return Err(Error::shape(
                "essential weights need at least one direction".to_string(),
            ));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::domain(
                "essential weights must be positive".to_string(),
            ));
        }
        Ok(EssentialWeights { weights })
    }

    pub fn from_numerators(q: u64, numerators: &[u64]) -> Result<EssentialWeights, Error> {
        if q == 0 {
            return Err(Error::Parameter("denominator q must be positive".to_string()));
        }
        EssentialWeights::new(
            numerators
                .iter()
                .map(|&m| rat(m as i64, q as i64))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn total(&self) -> Rat {
        self.weights.iter().sum()
    }
}

/// Expands essential weights to the full d x 2 table: the value-1 hyperplane
/// of each direction carries the weight, the value-0 hyperplane carries 0.
pub fn essential_to_table(w: &EssentialWeights) -> WeightTable {
    let mut table = WeightTable::zeros(w.dim(), 2);
    for (i, weight) in w.weights().iter().enumerate() {
        table.weights[i][1] = weight.clone();
    }
    table
}

fn require_order2(a: &MultiMatrix, what: &str) -> Result<(), Error> {
    if a.order() != 2 {
        return Err(Error::Order(format!(
            "{what} is defined for order 2, matrix has order {}",
            a.order()
        )));
    }
    Ok(())
}

/// True iff exactly one index of every antipodal pair is in the support.
pub fn is_selfdual(a: &MultiMatrix) -> Result<bool, Error> {
    require_order2(a, "selfduality")?;
    let size = a.len();
    Ok((0..size / 2).all(|off| a.get_offset(off) != a.get_offset(size - 1 - off)))
}

/// Theorem harness: does the LP extremality test agree with the combination
/// of selfduality and thresholdness on this matrix?
pub fn extremal_iff_selfdual_threshold(a: &MultiMatrix) -> Result<bool, Error> {
    require_order2(a, "the extremality characterization")?;
    let extremal = is_extremal(a)?.is_extremal;
    let characterized = is_selfdual(a)? && is_threshold(a)?.is_some();
    Ok(extremal == characterized)
}

/// True iff all 2d hyperplane rates share one parity.
pub fn rate_parity_check(a: &MultiMatrix) -> Result<bool, Error> {
    require_order2(a, "rate parity")?;
    let mut parity = None;
    for i in 0..a.dim() {
        for r in a.direction_rates(i)? {
            let p = r % 2;
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Ok(false),
                Some(_) => {}
            }
        }
    }
    Ok(true)
}

/// All extremal order-2 matrices of dimension d up to equivalence, one
/// orbit-minimal representative each, sorted. Candidates are the selfdual
/// supports (one choice per antipodal pair) filtered by thresholdness.
pub fn enumerate_extremal_order2(d: usize, budget: u64) -> Result<Vec<MultiMatrix>, Error> {
    let size = MultiMatrix::zeros(d, 2)?.len();
    let pairs = size / 2;
    if pairs >= 64 || (1u128 << pairs) > u128::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "enumerating selfdual supports at d={d} needs 2^{pairs} candidates, budget is {budget}"
        )));
    }
    let candidates = 1u64 << pairs;
    let group = ShapeGroup::new(d, 2, budget)?;
    let mut reps: Vec<MultiMatrix> = (0..candidates)
        .into_par_iter()
        .map(|mask| -> Result<Option<MultiMatrix>, Error> {
            let mut bits = vec![false; size];
            for p in 0..pairs {
                if mask >> p & 1 == 1 {
                    bits[p] = true;
                } else {
                    bits[size - 1 - p] = true;
                }
            }
            if !group.is_orbit_minimal(&bits) {
                return Ok(None);
            }
            let m = MultiMatrix::new(d, 2, bits)?;
            Ok(is_threshold(&m)?.map(|_| m))
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .flatten()
        .collect();
    reps.sort();
    Ok(reps)
}

/// A printed weight vector: numerators over a common denominator q, plus the
/// two positions whose values interchange to form the second vertex of the
/// cover polytope edge. Positions are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleRecord {
    pub q: u64,
    pub numerators: Vec<u64>,
    pub swap_positions: (usize, usize),
}

/// Summary of a successful verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub q: u64,
    pub dimension: usize,
    pub support_size: usize,
    pub cover_weight: Rat,
    pub deficiency: Rat,
    pub edge_positions: (usize, usize),
    pub edge_width: Rat,
    pub midpoint_entry: Rat,
}

/// The twelve built-in weight vectors, each the vertex of an edge-shaped
/// polytope of optimal covers in dimension 9.
pub fn builtin_counterexamples() -> Vec<CounterexampleRecord> {
    let data: [(u64, [u64; 9], (usize, usize)); 12] = [
        (25, [13, 7, 6, 6, 4, 4, 4, 3, 2], (7, 8)),
        (30, [17, 9, 8, 7, 6, 5, 3, 2, 2], (3, 4)),
        (28, [13, 9, 7, 7, 6, 4, 4, 3, 2], (7, 8)),
        (27, [14, 9, 7, 6, 5, 5, 3, 2, 2], (2, 3)),
        (33, [17, 12, 8, 8, 7, 6, 3, 2, 2], (4, 5)),
        (24, [11, 9, 6, 6, 4, 4, 4, 2, 1], (7, 8)),
        (28, [13, 11, 7, 7, 5, 5, 4, 2, 1], (7, 8)),
        (28, [13, 11, 8, 6, 6, 4, 4, 2, 1], (7, 8)),
        (32, [15, 13, 9, 7, 7, 5, 4, 2, 1], (7, 8)),
        (33, [13, 11, 10, 8, 6, 6, 5, 4, 2], (6, 7)),
        (34, [16, 14, 11, 9, 6, 4, 4, 2, 1], (7, 8)),
        (38, [18, 16, 12, 10, 7, 5, 4, 2, 1], (7, 8)),
    ];
    data.iter()
        .map(|(q, nums, swap)| CounterexampleRecord {
            q: *q,
            numerators: nums.to_vec(),
            swap_positions: *swap,
        })
        .collect()
}

fn clause_failure(clause: &str, detail: String) -> Error {
    Error::Verification {
        clause: clause.to_string(),
        detail,
    }
}

/// Checks one record end to end with exact arithmetic:
/// (a) the numerators sum to 2q-1, so the vector has total weight 2 - 1/q;
/// (b) both vertices generate the same matrix;
/// (c) that matrix is extremal with deficiency exactly 1/q;
/// (d) both vertices are optimal covers of it;
/// (e) the optimal cover is not unique, and exactly the swapped pair of
///     weights moves, by exactly the printed gap;
/// (f) the midpoint of the vertices is an optimal cover with an entry that
///     is not an integer multiple of 1/q.
pub fn verify_counterexample(rec: &CounterexampleRecord) -> Result<CounterexampleReport, Error> {
    let d = rec.numerators.len();
    if rec.q == 0 {
        return Err(Error::Parameter("denominator q must be positive".to_string()));
    }
    if d == 0 {
        return Err(Error::Parameter("record has no numerators".to_string()));
    }
    let (p1, p2) = rec.swap_positions;
    if p1 >= d || p2 >= d || p1 == p2 {
        return Err(Error::Parameter(format!(
            "swap positions ({p1},{p2}) invalid for {d} numerators"
        )));
    }
    if rec.numerators.contains(&0) {
        return Err(Error::Parameter("numerators must be positive".to_string()));
    }

    let sum: u64 = rec.numerators.iter().sum();
    if sum != 2 * rec.q - 1 {
        return Err(clause_failure(
            "a",
            format!("numerators sum to {sum}, expected 2q-1 = {}", 2 * rec.q - 1),
        ));
    }
    let weight_expected = rat((2 * rec.q - 1) as i64, rec.q as i64);
    let delta = rat(1, rec.q as i64);

    let vertex1 = EssentialWeights::from_numerators(rec.q, &rec.numerators)?;
    let mut swapped = rec.numerators.clone();
    swapped.swap(p1, p2);
    let vertex2 = EssentialWeights::from_numerators(rec.q, &swapped)?;

    let a1 = matrix_from_weights(&essential_to_table(&vertex1))?;
    let a2 = matrix_from_weights(&essential_to_table(&vertex2))?;
    if a1 != a2 {
        return Err(clause_failure(
            "b",
            "the two vertices generate different matrices".to_string(),
        ));
    }
    let matrix = a1;

    let report = is_extremal(&matrix)?;
    if !report.is_extremal {
        return Err(clause_failure("c", "generated matrix is not extremal".to_string()));
    }
    if report.deficiency != delta {
        return Err(clause_failure(
            "c",
            format!(
                "deficiency is {}, expected 1/{}",
                report.deficiency, rec.q
            ),
        ));
    }

    for (name, vertex) in [("first", &vertex1), ("second", &vertex2)] {
        let table = essential_to_table(vertex);
        if !is_cover(&matrix, &table)? {
            return Err(clause_failure(
                "d",
                format!("{name} vertex does not cover the support"),
            ));
        }
        if table.total_weight() != weight_expected {
            return Err(clause_failure(
                "d",
                format!("{name} vertex has weight {}, optimum is {weight_expected}", table.total_weight()),
            ));
        }
    }

    let (unique, ranges) = cover_polytope_is_unique(&matrix)?;
    if unique {
        return Err(clause_failure(
            "e",
            "cover polytope unexpectedly has a single point".to_string(),
        ));
    }
    let lo_num = rec.numerators[p1].min(rec.numerators[p2]);
    let hi_num = rec.numerators[p1].max(rec.numerators[p2]);
    let gap = rat((hi_num - lo_num) as i64, rec.q as i64);
    let mut moving = Vec::new();
    for r in &ranges {
        if r.width().is_positive() {
            moving.push((r.direction, r.line));
            if r.min != rat(lo_num as i64, rec.q as i64)
                || r.max != rat(hi_num as i64, rec.q as i64)
            {
                return Err(clause_failure(
                    "e",
                    format!(
                        "weight ({},{}) ranges over [{}, {}], expected [{}/{}, {}/{}]",
                        r.direction, r.line, r.min, r.max, lo_num, rec.q, hi_num, rec.q
                    ),
                ));
            }
        }
    }
    let mut expected_cells = vec![(p1, 1), (p2, 1)];
    expected_cells.sort_unstable();
    if moving != expected_cells {
        return Err(clause_failure(
            "e",
            format!("moving weights are {moving:?}, expected {expected_cells:?}"),
        ));
    }

    let mut midpoint = Vec::with_capacity(d);
    for (w1, w2) in vertex1.weights().iter().zip(vertex2.weights()) {
        midpoint.push((w1 + w2) / rat_int(2));
    }
    let midpoint = EssentialWeights::new(midpoint)?;
    let mid_table = essential_to_table(&midpoint);
    if !is_cover(&matrix, &mid_table)? || mid_table.total_weight() != weight_expected {
        return Err(clause_failure(
            "f",
            "midpoint is not an optimal cover".to_string(),
        ));
    }
    let mid_entry = midpoint.weights()[p1].clone();
    if is_multiple_of_unit_fraction(&mid_entry, rec.q) {
        return Err(clause_failure(
            "f",
            format!("midpoint entry {mid_entry} is a multiple of 1/{}", rec.q),
        ));
    }

    Ok(CounterexampleReport {
        q: rec.q,
        dimension: d,
        support_size: matrix.support_size(),
        cover_weight: weight_expected,
        deficiency: delta,
        edge_positions: (p1.min(p2), p1.max(p2)),
        edge_width: gap,
        midpoint_entry: mid_entry,
    })
}
