//! The central LP pair over a (0,1)-matrix: heaviest polyplex inside the
//! support versus lightest hyperplane cover of the support.
//!
//! Both sides come out of one simplex solve. The polyplex program has a
//! variable per support entry and a row per hyperplane, so its dual values
//! are exactly the cover weights; strong duality makes the two optimal
//! weights equal for every matrix, and the pair is always returned as a
//! mutually certifying optimal solution.

use rayon::prelude::*;

use crate::error::Error;
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense, Simplex};
use crate::matrix::{Index, MultiMatrix};
use crate::rat::{rat_int, Rat};
use num_traits::{One, Signed, Zero};

/// A fractional system of nonnegative entry weights supported inside a
/// matrix, with every hyperplane sum at most 1. Entries are kept sorted by
/// offset and only positive weights are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyplex {
    pub d: usize,
    pub n: usize,
    pub entries: Vec<(Index, Rat)>,
    pub weight: Rat,
}

impl Polyplex {
    pub fn empty(d: usize, n: usize) -> Polyplex {
        Polyplex {
            d,
            n,
            entries: Vec::new(),
            weight: Rat::zero(),
        }
    }

    /// Sum of entry weights inside each hyperplane, as a d x n grid.
    pub fn hyperplane_sums(&self) -> Vec<Vec<Rat>> {
        let mut sums = vec![vec![Rat::zero(); self.n]; self.d];
        for (idx, w) in &self.entries {
            for (i, &c) in idx.coords().iter().enumerate() {
                sums[i][c] += w;
            }
        }
        sums
    }
}

/// Nonnegative weights on hyperplanes: `weights[i][j]` belongs to the
/// hyperplane fixing coordinate i to value j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub d: usize,
    pub n: usize,
    pub weights: Vec<Vec<Rat>>,
}

impl WeightTable {
    pub fn new(d: usize, n: usize, weights: Vec<Vec<Rat>>) -> Result<WeightTable, Error> {
        if weights.len() != d || weights.iter().any(|row| row.len() != n) {
            return Err(Error::shape(format!("weight table must be {d} x {n}")));
        }
        if weights.iter().flatten().any(|w| w.is_negative()) {
            return Err(Error::range(
                "hyperplane weights must be nonnegative".to_string(),
            ));
        }
        Ok(WeightTable { d, n, weights })
    }

    pub fn zeros(d: usize, n: usize) -> WeightTable {
        WeightTable {
            d,
            n,
            weights: vec![vec![Rat::zero(); n]; d],
        }
    }

    pub fn total_weight(&self) -> Rat {
        self.weights.iter().flatten().sum()
    }

    /// Total weight of the hyperplanes through the given index.
    pub fn coverage(&self, idx: &Index) -> Rat {
        idx.coords()
            .iter()
            .enumerate()
            .map(|(i, &c)| self.weights[i][c].clone())
            .sum()
    }
}

/// Why a matrix fails to be extremal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonExtremalWitness {
    /// The matrix already carries a full-weight polyplex.
    Polydiagonal(Polyplex),
    /// A zero entry whose addition still leaves the optimum below n.
    StuckZero(Index),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalityReport {
    pub is_extremal: bool,
    pub optimal_weight: Rat,
    /// n minus the optimal weight; strictly between 0 and 1 when extremal.
    pub deficiency: Rat,
    pub witness: Option<NonExtremalWitness>,
}

fn shape_check(a: &MultiMatrix, d: usize, n: usize, what: &str) -> Result<(), Error> {
    if a.dim() != d || a.order() != n {
        return Err(Error::shape(format!(
            "{what} is for d={d}, n={n}, matrix has d={}, n={}",
            a.dim(),
            a.order()
        )));
    }
    Ok(())
}

/// The maximization program: one variable per support entry, one row per
/// hyperplane capping its weight sum at 1.
fn polyplex_lp(a: &MultiMatrix, support: &[usize]) -> LinearProgram {
    let nvars = support.len();
    let mut program = LinearProgram::new(Sense::Maximize, vec![Rat::one(); nvars]);
    for i in 0..a.dim() {
        for j in 0..a.order() {
            let mut coeffs = vec![Rat::zero(); nvars];
            for (v, &off) in support.iter().enumerate() {
                if Index::from_offset(off, a.dim(), a.order()).coords()[i] == j {
                    coeffs[v] = Rat::one();
                }
            }
            program
                .push_constraint(coeffs, Relation::Le, Rat::one())
                .expect("hyperplane row matches variable count");
        }
    }
    program
}

/// Column of a single entry in the hyperplane-row space of `polyplex_lp`.
fn entry_column(a: &MultiMatrix, offset: usize) -> Vec<Rat> {
    let idx = Index::from_offset(offset, a.dim(), a.order());
    let mut col = vec![Rat::zero(); a.dim() * a.order()];
    for (i, &c) in idx.coords().iter().enumerate() {
        col[i * a.order() + c] = Rat::one();
    }
    col
}

struct PairSolve {
    weight: Rat,
    polyplex: Polyplex,
    cover: WeightTable,
    simplex: Option<Simplex>,
}

fn solve_pair(a: &MultiMatrix) -> Result<PairSolve, Error> {
    let support: Vec<usize> = a.support_offsets().collect();
    if support.is_empty() {
        return Ok(PairSolve {
            weight: Rat::zero(),
            polyplex: Polyplex::empty(a.dim(), a.order()),
            cover: WeightTable::zeros(a.dim(), a.order()),
            simplex: None,
        });
    }
    let program = polyplex_lp(a, &support);
    let mut simplex = Simplex::build(&program)?;
    let status = simplex.run();
    if status != LpStatus::Optimal {
        return Err(Error::state(format!(
            "polyplex program ended {status:?}, expected optimal"
        )));
    }
    let weight = simplex.objective_value();
    let primal = simplex.primal();
    let entries: Vec<(Index, Rat)> = support
        .iter()
        .zip(primal)
        .filter(|(_, w)| w.is_positive())
        .map(|(&off, w)| (Index::from_offset(off, a.dim(), a.order()), w))
        .collect();
    let polyplex = Polyplex {
        d: a.dim(),
        n: a.order(),
        entries,
        weight: weight.clone(),
    };
    let dual = simplex.dual();
    let weights: Vec<Vec<Rat>> = (0..a.dim())
        .map(|i| dual[i * a.order()..(i + 1) * a.order()].to_vec())
        .collect();
    let cover = WeightTable {
        d: a.dim(),
        n: a.order(),
        weights,
    };
    Ok(PairSolve {
        weight,
        polyplex,
        cover,
        simplex: Some(simplex),
    })
}

/// Maximum polyplex weight in the matrix, with a witness. The weight is at
/// most n, with equality exactly when the matrix has a polydiagonal.
pub fn optimal_polyplex(a: &MultiMatrix) -> Result<(Rat, Polyplex), Error> {
    let pair = solve_pair(a)?;
    Ok((pair.weight, pair.polyplex))
}

/// Minimum total weight of a hyperplane cover of the support, with a witness
/// table. Equals the optimal polyplex weight by strong duality.
pub fn optimal_cover(a: &MultiMatrix) -> Result<(Rat, WeightTable), Error> {
    let pair = solve_pair(a)?;
    Ok((pair.weight, pair.cover))
}

/// Both optimal witnesses from a single solve.
pub fn optimal_pair(a: &MultiMatrix) -> Result<(Rat, Polyplex, WeightTable), Error> {
    let pair = solve_pair(a)?;
    Ok((pair.weight, pair.polyplex, pair.cover))
}

/// True iff every support index is covered with total weight at least 1 by
/// a nonnegative table.
pub fn is_cover(a: &MultiMatrix, table: &WeightTable) -> Result<bool, Error> {
    shape_check(a, table.d, table.n, "weight table")?;
    if table.weights.iter().flatten().any(|w| w.is_negative()) {
        return Ok(false);
    }
    let one = Rat::one();
    for idx in a.support() {
        if table.coverage(&idx) < one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the entries sit inside the support with nonnegative weights, no
/// hyperplane sum exceeds 1, and the recorded total matches the entries.
pub fn validate_polyplex(a: &MultiMatrix, k: &Polyplex) -> Result<bool, Error> {
    shape_check(a, k.d, k.n, "polyplex")?;
    let mut total = Rat::zero();
    for (idx, w) in &k.entries {
        if w.is_negative() || !a.get(idx)? {
            return Ok(false);
        }
        total += w;
    }
    if total != k.weight {
        return Ok(false);
    }
    let one = Rat::one();
    for direction in k.hyperplane_sums() {
        for sum in direction {
            if sum > one {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The slackness relations binding an optimal pair: positive entry weights
/// force coverage exactly 1, and positive hyperplane weights force the
/// polyplex to fill that hyperplane exactly.
pub fn check_complementary_slackness(
    a: &MultiMatrix,
    k: &Polyplex,
    table: &WeightTable,
) -> Result<bool, Error> {
    shape_check(a, k.d, k.n, "polyplex")?;
    shape_check(a, table.d, table.n, "weight table")?;
    let one = Rat::one();
    for (idx, w) in &k.entries {
        if w.is_positive() && table.coverage(idx) != one {
            return Ok(false);
        }
    }
    let sums = k.hyperplane_sums();
    for (row, sum_row) in table.weights.iter().zip(&sums) {
        for (w, sum) in row.iter().zip(sum_row) {
            if w.is_positive() && *sum != one {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Extremality test: the optimum must fall short of n, and appending any
/// single zero entry must raise it to exactly n. The per-entry solves reuse
/// the optimal base tableau, appending one column and reoptimizing.
pub fn is_extremal(a: &MultiMatrix) -> Result<ExtremalityReport, Error> {
    let n_rat = rat_int(a.order() as i64);
    if a.support_size() == 0 {
        // a single added entry always achieves weight exactly 1
        let extremal = a.order() == 1;
        let witness = if extremal {
            None
        } else {
            Some(NonExtremalWitness::StuckZero(Index::from_offset(
                0,
                a.dim(),
                a.order(),
            )))
        };
        return Ok(ExtremalityReport {
            is_extremal: extremal,
            optimal_weight: Rat::zero(),
            deficiency: n_rat,
            witness,
        });
    }
    let pair = solve_pair(a)?;
    let deficiency = &n_rat - &pair.weight;
    if pair.weight == n_rat {
        return Ok(ExtremalityReport {
            is_extremal: false,
            optimal_weight: pair.weight,
            deficiency,
            witness: Some(NonExtremalWitness::Polydiagonal(pair.polyplex)),
        });
    }
    let zeros: Vec<usize> = a.zero_offsets().collect();
    let base = pair.simplex.as_ref().expect("support is nonempty");
    let stuck = zeros
        .par_iter()
        .find_first(|&&off| {
            let mut warm = base.clone();
            warm.add_column(&entry_column(a, off), Rat::one())
                .expect("base tableau is optimal");
            let status = warm.reoptimize();
            debug_assert_eq!(status, LpStatus::Optimal);
            warm.objective_value() != n_rat
        })
        .copied();
    match stuck {
        Some(off) => Ok(ExtremalityReport {
            is_extremal: false,
            optimal_weight: pair.weight,
            deficiency,
            witness: Some(NonExtremalWitness::StuckZero(Index::from_offset(
                off,
                a.dim(),
                a.order(),
            ))),
        }),
        None => Ok(ExtremalityReport {
            is_extremal: true,
            optimal_weight: pair.weight,
            deficiency,
            witness: None,
        }),
    }
}

/// Range of one cover weight over the optimal face of the cover program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRange {
    pub direction: usize,
    pub line: usize,
    pub min: Rat,
    pub max: Rat,
}

impl WeightRange {
    pub fn width(&self) -> Rat {
        &self.max - &self.min
    }
}

/// The cover program in its literal orientation: a variable per hyperplane,
/// a coverage row per support entry.
fn cover_lp(a: &MultiMatrix, support: &[usize]) -> LinearProgram {
    let nvars = a.dim() * a.order();
    let mut program = LinearProgram::new(Sense::Minimize, vec![Rat::one(); nvars]);
    for &off in support {
        program
            .push_constraint(entry_column(a, off), Relation::Ge, Rat::one())
            .expect("coverage row matches variable count");
    }
    program
}

/// Decides whether the optimal cover is unique by measuring the range of
/// every hyperplane weight over the optimal face. Each range endpoint is
/// found by solving the dual of a face probe, which has one row per
/// hyperplane rather than one per support entry.
pub fn cover_polytope_is_unique(a: &MultiMatrix) -> Result<(bool, Vec<WeightRange>), Error> {
    let support: Vec<usize> = a.support_offsets().collect();
    let weight = if support.is_empty() {
        Rat::zero()
    } else {
        solve_pair(a)?.weight
    };
    let mut face = cover_lp(a, &support);
    face.push_constraint(
        vec![Rat::one(); a.dim() * a.order()],
        Relation::Eq,
        weight.clone(),
    )?;
    let probes: Vec<(usize, usize)> = (0..a.dim())
        .flat_map(|i| (0..a.order()).map(move |j| (i, j)))
        .collect();
    let ranges: Vec<WeightRange> = probes
        .par_iter()
        .map(|&(i, j)| -> Result<WeightRange, Error> {
            let var = i * a.order() + j;
            let mut endpoints = Vec::with_capacity(2);
            for sense in [Sense::Minimize, Sense::Maximize] {
                let mut probe = face.clone();
                probe.sense = sense;
                probe.objective = vec![Rat::zero(); a.dim() * a.order()];
                probe.objective[var] = Rat::one();
                let sol = lp::solve(&probe.dual()?)?;
                if sol.status != LpStatus::Optimal {
                    return Err(Error::state(format!(
                        "face probe for weight ({i},{j}) ended {:?}",
                        sol.status
                    )));
                }
                endpoints.push(sol.objective_value);
            }
            let max = endpoints.pop().expect("two endpoints");
            let min = endpoints.pop().expect("two endpoints");
            Ok(WeightRange {
                direction: i,
                line: j,
                min,
                max,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let unique = ranges.iter().all(|r| r.min == r.max);
    Ok((unique, ranges))
}
