//! Threshold matrices: regeneration from hyperplane weights and the exact
//! thresholdness decision with a separating certificate.
//!
//! A matrix is a threshold matrix when some nonnegative weighting of the
//! hyperplanes puts every support index at incident weight at least 1 and
//! every non-support index strictly below 1. The decision maximizes the
//! separating slack by LP; a positive optimum is the certificate, and the
//! regenerated matrix then provably equals the input.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::duality::WeightTable;
use crate::equivalence::ShapeGroup;
use crate::error::Error;
use crate::lp::{self, LinearProgram, LpStatus, Relation, Sense};
use crate::matrix::{Index, MultiMatrix};
use crate::rat::Rat;

/// The 0/1 incidence grid of one index: cell (i, j) is 1 exactly when the
/// index lies in the hyperplane fixing coordinate i to value j. Each row of
/// the grid holds exactly one 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceTable {
    d: usize,
    n: usize,
    grid: Vec<Vec<bool>>,
}

impl IncidenceTable {
    pub fn of(idx: &Index, n: usize) -> IncidenceTable {
        let d = idx.dim();
        let mut grid = vec![vec![false; n]; d];
        for (i, &c) in idx.coords().iter().enumerate() {
            grid[i][c] = true;
        }
        IncidenceTable { d, n, grid }
    }

    pub fn grid(&self) -> &[Vec<bool>] {
        &self.grid
    }

    /// Inner product with a weight table; equals the table's coverage of the
    /// underlying index.
    pub fn inner_product(&self, table: &WeightTable) -> Result<Rat, Error> {
        if table.d != self.d || table.n != self.n {
            return Err(Error::shape(format!(
                "incidence table is {} x {}, weight table is {} x {}",
                self.d, self.n, table.d, table.n
            )));
        }
        let mut sum = Rat::zero();
        for (row, weights) in self.grid.iter().zip(&table.weights) {
            for (cell, w) in row.iter().zip(weights) {
                if *cell {
                    sum += w;
                }
            }
        }
        Ok(sum)
    }
}

/// A separating weight table together with its positive slack: support
/// indices reach incident weight 1, non-support indices stay at or below
/// 1 minus the margin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdCertificate {
    pub table: WeightTable,
    pub margin: Rat,
}

fn validated_shape(table: &WeightTable) -> Result<(), Error> {
    if table.weights.len() != table.d || table.weights.iter().any(|row| row.len() != table.n) {
        return Err(Error::shape(format!(
            "weight table claims {} x {} but holds a ragged grid",
            table.d, table.n
        )));
    }
    if table.weights.iter().flatten().any(|w| w.is_negative()) {
        return Err(Error::domain(
            "threshold construction requires nonnegative weights".to_string(),
        ));
    }
    Ok(())
}

/// The matrix generated by a weight table: an entry is 1 exactly when the
/// weights of its incident hyperplanes sum to at least 1.
pub fn matrix_from_weights(table: &WeightTable) -> Result<MultiMatrix, Error> {
    validated_shape(table)?;
    let mut m = MultiMatrix::zeros(table.d, table.n)?;
    let one = Rat::one();
    for off in 0..m.len() {
        let idx = Index::from_offset(off, table.d, table.n);
        if table.coverage(&idx) >= one {
            m.set_offset(off, true);
        }
    }
    Ok(m)
}

/// Decides thresholdness by maximizing the separating slack. Returns a
/// certificate when the optimum is positive, `None` when the best possible
/// slack is zero. The slack is capped at 1 so full matrices stay bounded.
pub fn is_threshold(a: &MultiMatrix) -> Result<Option<ThresholdCertificate>, Error> {
    let d = a.dim();
    let n = a.order();
    let nweights = d * n;
    let eps = nweights;
    let mut objective = vec![Rat::zero(); nweights + 1];
    objective[eps] = Rat::one();
    let mut program = LinearProgram::new(Sense::Maximize, objective);
    for off in 0..a.len() {
        let idx = Index::from_offset(off, d, n);
        let mut coeffs = vec![Rat::zero(); nweights + 1];
        for (i, &c) in idx.coords().iter().enumerate() {
            coeffs[i * n + c] = Rat::one();
        }
        if a.get_offset(off) {
            program.push_constraint(coeffs, Relation::Ge, Rat::one())?;
        } else {
            coeffs[eps] = Rat::one();
            program.push_constraint(coeffs, Relation::Le, Rat::one())?;
        }
    }
    let mut cap = vec![Rat::zero(); nweights + 1];
    cap[eps] = Rat::one();
    program.push_constraint(cap, Relation::Le, Rat::one())?;
    let sol = lp::solve(&program)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::state(format!(
            "threshold separation program ended {:?}",
            sol.status
        )));
    }
    if !sol.objective_value.is_positive() {
        return Ok(None);
    }
    let weights: Vec<Vec<Rat>> = (0..d)
        .map(|i| sol.primal[i * n..(i + 1) * n].to_vec())
        .collect();
    Ok(Some(ThresholdCertificate {
        table: WeightTable { d, n, weights },
        margin: sol.objective_value,
    }))
}

/// All threshold matrices of the given shape up to equivalence, one
/// orbit-minimal representative each, sorted. Every candidate support is
/// examined, so the budget must admit 2^(n^d) candidates.
pub fn enumerate_threshold(d: usize, n: usize, budget: u64) -> Result<Vec<MultiMatrix>, Error> {
    let size = MultiMatrix::zeros(d, n)?.len();
    if size >= 64 {
        return Err(Error::BudgetExceeded(format!(
            "enumerating d={d}, n={n} needs 2^{size} candidates, budget is {budget}"
        )));
    }
    let candidates: u128 = 1u128 << size;
    if candidates > u128::from(budget) {
        return Err(Error::BudgetExceeded(format!(
            "enumerating d={d}, n={n} needs {candidates} candidates, budget is {budget}"
        )));
    }
    let group = ShapeGroup::new(d, n, budget)?;
    let mut reps: Vec<MultiMatrix> = (0..candidates as u64)
        .into_par_iter()
        .map(|mask| -> Result<Option<MultiMatrix>, Error> {
            let bits: Vec<bool> = (0..size).map(|k| mask >> k & 1 == 1).collect();
            if !group.is_orbit_minimal(&bits) {
                return Ok(None);
            }
            let m = MultiMatrix::new(d, n, bits)?;
            Ok(is_threshold(&m)?.map(|_| m))
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .flatten()
        .collect();
    reps.sort();
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality;
    use crate::equivalence::{all_transforms, is_equivalent};
    use crate::matrix::majority3;
    use crate::rat::{rat, rat_int};
    use crate::DEFAULT_BUDGET;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(d: usize, n: usize, cells: &[(usize, usize, Rat)]) -> WeightTable {
        let mut t = WeightTable::zeros(d, n);
        for (i, j, w) in cells {
            t.weights[*i][*j] = w.clone();
        }
        t
    }

    fn random_matrix(rng: &mut ChaCha8Rng, d: usize, n: usize, density: f64) -> MultiMatrix {
        let mut m = MultiMatrix::zeros(d, n).unwrap();
        for off in 0..m.len() {
            if rng.gen_bool(density) {
                m.set_offset(off, true);
            }
        }
        m
    }

    #[test]
    fn incidence_table_has_one_unit_per_direction() {
        let idx = Index::new(vec![2, 0, 1], 3, 3).unwrap();
        let inc = IncidenceTable::of(&idx, 3);
        for (i, row) in inc.grid().iter().enumerate() {
            assert_eq!(row.iter().filter(|&&b| b).count(), 1);
            assert!(row[idx.coords()[i]]);
        }
    }

    #[test]
    fn incidence_inner_product_equals_coverage() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let d = rng.gen_range(1..=4);
            let n = rng.gen_range(1..=3);
            let coords: Vec<usize> = (0..d).map(|_| rng.gen_range(0..n)).collect();
            let idx = Index::new(coords, d, n).unwrap();
            let mut t = WeightTable::zeros(d, n);
            for row in &mut t.weights {
                for w in row.iter_mut() {
                    *w = rat(rng.gen_range(0..5), rng.gen_range(1..4));
                }
            }
            let inc = IncidenceTable::of(&idx, n);
            assert_eq!(inc.inner_product(&t).unwrap(), t.coverage(&idx));
        }
    }

    #[test]
    fn zero_table_generates_the_zero_matrix() {
        let t = WeightTable::zeros(3, 2);
        assert_eq!(
            matrix_from_weights(&t).unwrap(),
            MultiMatrix::zeros(3, 2).unwrap()
        );
    }

    #[test]
    fn unit_weight_generates_one_hyperplane() {
        let t = table(2, 2, &[(0, 0, rat_int(1))]);
        let m = matrix_from_weights(&t).unwrap();
        let support: Vec<Index> = m.support().collect();
        assert_eq!(
            support,
            vec![
                Index::new(vec![0, 0], 2, 2).unwrap(),
                Index::new(vec![0, 1], 2, 2).unwrap()
            ]
        );
    }

    #[test]
    fn essential_halves_generate_majority() {
        let t = table(
            3,
            2,
            &[(0, 1, rat(1, 2)), (1, 1, rat(1, 2)), (2, 1, rat(1, 2))],
        );
        assert_eq!(matrix_from_weights(&t).unwrap(), majority3());
    }

    #[test]
    fn negative_weights_are_a_domain_error() {
        let t = table(2, 2, &[(0, 0, rat_int(-1))]);
        assert!(matches!(matrix_from_weights(&t), Err(Error::Domain(_))));
    }

    #[test]
    fn and_function_is_threshold_with_margin_half() {
        let a = MultiMatrix::from_support(2, 2, [[1usize, 1].as_slice()]).unwrap();
        let cert = is_threshold(&a).unwrap().expect("conjunction separates");
        assert_eq!(cert.margin, rat(1, 2));
        assert_eq!(matrix_from_weights(&cert.table).unwrap(), a);
    }

    #[test]
    fn xor_function_is_not_threshold() {
        let a = MultiMatrix::from_support(2, 2, [[0usize, 1].as_slice(), &[1, 0]]).unwrap();
        assert!(is_threshold(&a).unwrap().is_none());
    }

    #[test]
    fn full_and_empty_matrices_are_threshold() {
        let full = MultiMatrix::full(2, 2).unwrap();
        let cert = is_threshold(&full).unwrap().expect("full separates");
        assert_eq!(cert.margin, rat_int(1));
        assert_eq!(matrix_from_weights(&cert.table).unwrap(), full);

        let empty = MultiMatrix::zeros(2, 2).unwrap();
        let cert = is_threshold(&empty).unwrap().expect("empty separates");
        assert!(cert.margin.is_positive());
        assert_eq!(matrix_from_weights(&cert.table).unwrap(), empty);
    }

    #[test]
    fn majority_is_threshold_and_round_trips() {
        let a = majority3();
        let cert = is_threshold(&a).unwrap().expect("majority separates");
        assert!(cert.margin.is_positive());
        assert!(cert.margin <= rat_int(1));
        assert_eq!(matrix_from_weights(&cert.table).unwrap(), a);
    }

    #[test]
    fn certificates_round_trip_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut hits = 0;
        for _ in 0..60 {
            let d = rng.gen_range(1..=3);
            let n = rng.gen_range(2..=3);
            let m = random_matrix(&mut rng, d, n, 0.5);
            if let Some(cert) = is_threshold(&m).unwrap() {
                hits += 1;
                assert!(cert.margin.is_positive());
                assert_eq!(matrix_from_weights(&cert.table).unwrap(), m);
            }
        }
        assert!(hits > 5, "sampling produced almost no threshold matrices");
    }

    #[test]
    fn scaling_a_certificate_upward_keeps_the_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let d = rng.gen_range(1..=3);
            let m = random_matrix(&mut rng, d, 2, 0.5);
            let Some(cert) = is_threshold(&m).unwrap() else {
                continue;
            };
            for scale in [rat(3, 2), rat_int(2), rat_int(7)] {
                let mut scaled = cert.table.clone();
                for row in &mut scaled.weights {
                    for w in row.iter_mut() {
                        *w *= &scale;
                    }
                }
                let grown = matrix_from_weights(&scaled).unwrap();
                for idx in m.support() {
                    assert!(grown.get(&idx).unwrap());
                }
            }
        }
    }

    #[test]
    fn thresholdness_is_invariant_under_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let transforms: Vec<_> = all_transforms(3, 2).collect();
        for _ in 0..25 {
            let m = random_matrix(&mut rng, 3, 2, 0.5);
            let base = is_threshold(&m).unwrap().is_some();
            let t = &transforms[rng.gen_range(0..transforms.len())];
            let moved = t.apply(&m);
            assert_eq!(is_threshold(&moved).unwrap().is_some(), base);
        }
    }

    #[test]
    fn extremal_fixtures_are_threshold() {
        let row = MultiMatrix::from_support(2, 2, [[0usize, 0].as_slice(), &[0, 1]]).unwrap();
        for m in [majority3(), row] {
            assert!(duality::is_extremal(&m).unwrap().is_extremal);
            assert!(is_threshold(&m).unwrap().is_some());
        }
    }

    #[test]
    fn enumeration_for_one_dimension_has_three_classes() {
        let reps = enumerate_threshold(1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(reps.len(), 3);
        let sizes: Vec<usize> = reps.iter().map(|m| m.support_size()).collect();
        assert_eq!(sizes, vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_for_two_by_two_has_five_classes() {
        let reps = enumerate_threshold(2, 2, DEFAULT_BUDGET).unwrap();
        // of the six equivalence classes of 2x2 supports, only the
        // two-entry diagonal class fails separation
        assert_eq!(reps.len(), 5);
        let xor = MultiMatrix::from_support(2, 2, [[0usize, 1].as_slice(), &[1, 0]]).unwrap();
        for rep in &reps {
            assert!(is_threshold(rep).unwrap().is_some());
            assert!(!is_equivalent(rep, &xor, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn enumerated_representatives_are_canonical_and_profile_distinct() {
        for (d, n) in [(2usize, 2usize), (3, 2), (2, 3)] {
            let reps = enumerate_threshold(d, n, DEFAULT_BUDGET).unwrap();
            let group = ShapeGroup::new(d, n, DEFAULT_BUDGET).unwrap();
            let mut profiles = Vec::new();
            for rep in &reps {
                assert!(group.is_orbit_minimal(rep.bits()));
                profiles.push(rep.profile());
            }
            let total = profiles.len();
            profiles.sort();
            profiles.dedup();
            assert_eq!(profiles.len(), total, "profiles collide at d={d}, n={n}");
        }
    }

    #[test]
    fn enumeration_respects_the_budget() {
        assert!(matches!(
            enumerate_threshold(5, 2, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            enumerate_threshold(2, 2, 4),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
