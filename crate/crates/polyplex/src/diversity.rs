//! Diversity of extremal order-2 matrices: how many distinct values the
//! essential weights of an optimal cover take.
//!
//! Diversity 1 forces odd dimension with all weights 2/(d+1). Diversity 2,
//! written as x = p/q repeated t_x times and y = s/q repeated t_y times with
//! 1 > x > y > 0, is governed by a Diophantine criterion: gcd(p,s) = 1,
//! t_x p + t_y s = 2q - 1, and the equation mu_x p + mu_y s = q must have at
//! least two solutions inside the box 0..=t_x x 0..=t_y. The extreme box
//! solutions r (minimal mu_x) and l (maximal mu_x) then yield an explicit
//! optimal polyplex witnessing that the tuple is an optimal cover.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::duality::{is_cover, is_extremal, Polyplex};
use crate::error::Error;
use crate::matrix::{Index, MultiMatrix};
use crate::rat::{rat, rat_int, Rat};
use crate::selfdual2::{essential_to_table, EssentialWeights};
use crate::threshold::matrix_from_weights;

/// Number of distinct values among the essential weights.
pub fn diversity_of(w: &EssentialWeights) -> usize {
    w.weights().iter().collect::<BTreeSet<_>>().len()
}

/// The unique diversity-1 tuple in odd dimension d: d copies of 2/(d+1).
/// The matrix it generates is extremal with deficiency 1/k, k = (d+1)/2.
pub fn div1_cover(d: usize) -> Result<EssentialWeights, Error> {
    if d.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "diversity-1 extremal matrices exist only in odd dimension, got d={d}"
        )));
    }
    EssentialWeights::new(vec![rat(2, (d + 1) as i64); d])
}

/// Support is the set of indices with at least `level` coordinates equal 1.
fn symmetric_level_matrix(d: usize, level: usize) -> Result<MultiMatrix, Error> {
    let mut matrix = MultiMatrix::zeros(d, 2)?;
    for off in 0..matrix.len() {
        if off.count_ones() as usize >= level {
            matrix.set_offset(off, true);
        }
    }
    Ok(matrix)
}

/// Exhaustive search for a diversity-1 extremal matrix in dimension d.
///
/// A uniform tuple (c,..,c) generates the symmetric matrix whose support is
/// the set of indices with at least ceil(1/c) ones, so every candidate is a
/// symmetric level matrix. For each level the tuple can only be optimal at
/// c = W/d (W the LP cover optimum), and it is a cover iff the lightest
/// support index, with exactly `level` ones, reaches coverage 1. Returns the
/// level and weight on success.
pub fn div1_search(d: usize) -> Result<Option<(usize, Rat)>, Error> {
    for level in 1..=d {
        let matrix = symmetric_level_matrix(d, level)?;
        let report = is_extremal(&matrix)?;
        if !report.is_extremal {
            continue;
        }
        let c = report.optimal_weight / rat_int(d as i64);
        if rat_int(level as i64) * c.clone() >= Rat::one() {
            return Ok(Some((level, c)));
        }
    }
    Ok(None)
}

/// A diversity-2 tuple: weight x = p/q on the first t_x directions and
/// y = s/q on the remaining t_y, with 1 > x > y > 0 and q minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Div2Params {
    pub p: u64,
    pub s: u64,
    pub q: u64,
    pub t_x: usize,
    pub t_y: usize,
}

impl Div2Params {
    pub fn new(p: u64, s: u64, q: u64, t_x: usize, t_y: usize) -> Result<Div2Params, Error> {
        if s < 1 || p <= s || q <= p {
            return Err(Error::Parameter(format!(
                "need q > p > s >= 1 so that 1 > x > y > 0, got p={p} s={s} q={q}"
            )));
        }
        if t_x < 1 || t_y < 1 {
            return Err(Error::Parameter(
                "both multiplicities must be positive".to_string(),
            ));
        }
        if p.gcd(&s).gcd(&q) > 1 {
            return Err(Error::Parameter(format!(
                "p={p}, s={s}, q={q} share a common factor, so q is not minimal"
            )));
        }
        Ok(Div2Params { p, s, q, t_x, t_y })
    }

    pub fn d(&self) -> usize {
        self.t_x + self.t_y
    }

    pub fn x(&self) -> Rat {
        rat(self.p as i64, self.q as i64)
    }

    pub fn y(&self) -> Rat {
        rat(self.s as i64, self.q as i64)
    }

    pub fn essential(&self) -> EssentialWeights {
        let mut weights = vec![self.x(); self.t_x];
        weights.extend(vec![self.y(); self.t_y]);
        EssentialWeights::new(weights).expect("x and y are positive")
    }
}

/// Certificate that a diversity-2 tuple is an optimal cover: the two extreme
/// box solutions of mu_x p + mu_y s = q and the polyplex weights they induce
/// on the index classes covered (r_x, r_y) and (l_x, l_y) times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Div2Witness {
    pub r_x: usize,
    pub r_y: usize,
    pub l_x: usize,
    pub l_y: usize,
    pub i: u64,
    pub w_i: Rat,
    pub w_j: Rat,
}

fn choose(n: usize, k: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

/// Decides whether the tuple is an optimal cover of an extremal matrix, and
/// if so returns the witness. The solution set of mu_x p + mu_y s = q is an
/// arithmetic progression stepping by (s, -p); inside the multiplicity box
/// the valid solutions are contiguous, so the minimal-mu_x and maximal-mu_x
/// ones are the unique candidates for r and l, and admissibility reduces to
/// having at least two box solutions.
pub fn div2_admissible(params: &Div2Params) -> Option<Div2Witness> {
    let Div2Params { p, s, q, t_x, t_y } = *params;
    if p.gcd(&s) != 1 {
        return None;
    }
    if (t_x as u64) * p + (t_y as u64) * s != 2 * q - 1 {
        return None;
    }
    let mut solutions: Vec<(usize, usize)> = Vec::new();
    for mu_x in 0..=t_x as u64 {
        let used = mu_x * p;
        if used > q {
            break;
        }
        let rest = q - used;
        if rest % s == 0 && rest / s <= t_y as u64 {
            solutions.push((mu_x as usize, (rest / s) as usize));
        }
    }
    if solutions.len() < 2 {
        return None;
    }
    let (r_x, r_y) = solutions[0];
    let (l_x, l_y) = *solutions.last().unwrap();
    let i = (l_x - r_x) as u64 / s;
    // extremal box solutions cannot step further without leaving the box
    debug_assert!(r_x < (s as usize) || r_y + (p as usize) > t_y);
    debug_assert!(l_x + (s as usize) > t_x || l_y < p as usize);
    debug_assert_eq!(l_y as u64, r_y as u64 - i * p);
    let scale_i = choose(t_x, r_x) * choose(t_y, r_y) * BigInt::from(i) * BigInt::from(q);
    let scale_j = choose(t_x, l_x) * choose(t_y, l_y) * BigInt::from(i) * BigInt::from(q);
    let w_i = Rat::new(
        BigInt::from(l_x) * BigInt::from(t_y) - BigInt::from(l_y) * BigInt::from(t_x),
        scale_i,
    );
    let w_j = Rat::new(
        BigInt::from(r_y) * BigInt::from(t_x) - BigInt::from(r_x) * BigInt::from(t_y),
        scale_j,
    );
    assert!(
        !w_i.is_negative() && !w_j.is_negative(),
        "extreme box solutions always induce nonnegative weights"
    );
    Some(Div2Witness {
        r_x,
        r_y,
        l_x,
        l_y,
        i,
        w_i,
        w_j,
    })
}

/// Builds the explicit optimal polyplex for an admissible tuple: weight w_i
/// on every index covered exactly (r_x, r_y) times by the (x, y) directions
/// and w_j on every index covered exactly (l_x, l_y) times. Total weight is
/// 2 - 1/q.
pub fn div2_polyplex(params: &Div2Params, witness: &Div2Witness) -> Result<Polyplex, Error> {
    match div2_admissible(params) {
        Some(w) if w == *witness => {}
        _ => {
            return Err(Error::domain(
                "witness does not certify these parameters".to_string(),
            ))
        }
    }
    let d = params.d();
    if d > 24 {
        return Err(Error::TooLarge(format!(
            "polyplex construction would enumerate 2^{d} indices"
        )));
    }
    let t_y = params.t_y;
    let mut entries = Vec::new();
    let mut total = Rat::zero();
    for off in 0..1usize << d {
        let ones_x = (off >> t_y).count_ones() as usize;
        let ones_y = (off & ((1 << t_y) - 1)).count_ones() as usize;
        let weight = if ones_x == witness.r_x && ones_y == witness.r_y {
            &witness.w_i
        } else if ones_x == witness.l_x && ones_y == witness.l_y {
            &witness.w_j
        } else {
            continue;
        };
        if weight.is_positive() {
            entries.push((Index::from_offset(off, d, 2), weight.clone()));
            total += weight;
        }
    }
    Ok(Polyplex {
        d,
        n: 2,
        entries,
        weight: total,
    })
}

/// One sweep instance: the parameters, the Diophantine verdict, and the LP
/// oracle's verdict on whether the tuple is an optimal cover of an extremal
/// matrix. `deficiency` is the LP deficiency of the generated matrix for
/// admissible instances.
#[derive(Clone, Debug)]
pub struct Div2Case {
    pub params: Div2Params,
    pub witness: Option<Div2Witness>,
    pub oracle_confirms: bool,
    pub deficiency: Option<Rat>,
}

impl Div2Case {
    pub fn agrees(&self) -> bool {
        self.witness.is_some() == self.oracle_confirms
    }
}

#[derive(Clone, Debug)]
pub struct Div2Report {
    pub cases: Vec<Div2Case>,
    pub admissible: usize,
    pub disagreeing: Vec<usize>,
    pub observed_i: Vec<u64>,
}

/// Sweeps every well-formed Div2Params with q <= max_q and dimension
/// <= max_d, comparing the Diophantine criterion against the LP oracle on
/// each. Disagreements are recorded, not raised.
pub fn div2_cross_validate(max_q: u64, max_d: usize) -> Result<Div2Report, Error> {
    let mut all = Vec::new();
    for q in 3..=max_q {
        for p in 2..q {
            for s in 1..p {
                for d in 2..=max_d {
                    for t_x in 1..d {
                        if let Ok(params) = Div2Params::new(p, s, q, t_x, d - t_x) {
                            all.push(params);
                        }
                    }
                }
            }
        }
    }
    let cases = all
        .into_par_iter()
        .map(|params| -> Result<Div2Case, Error> {
            let witness = div2_admissible(&params);
            let table = essential_to_table(&params.essential());
            let matrix = matrix_from_weights(&table)?;
            let report = is_extremal(&matrix)?;
            let oracle_confirms = report.is_extremal
                && table.total_weight() == report.optimal_weight
                && is_cover(&matrix, &table)?;
            let deficiency = witness.as_ref().map(|_| report.deficiency.clone());
            Ok(Div2Case {
                params,
                witness,
                oracle_confirms,
                deficiency,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let disagreeing = cases
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.agrees())
        .map(|(k, _)| k)
        .collect();
    let admissible = cases.iter().filter(|c| c.witness.is_some()).count();
    let mut observed_i: Vec<u64> = cases
        .iter()
        .filter_map(|c| c.witness.as_ref().map(|w| w.i))
        .collect();
    observed_i.sort_unstable();
    observed_i.dedup();
    Ok(Div2Report {
        cases,
        admissible,
        disagreeing,
        observed_i,
    })
}
