//! Exact linear programming over arbitrary-precision rationals.
//!
//! The solver is a two-phase primal simplex on a dense tableau. Every row is
//! stored as integer numerators over one common denominator, so a pivot is
//! pure integer arithmetic followed by a content reduction; no floating point
//! and no per-cell gcd churn. Intermediate values routinely outgrow machine
//! words, hence `BigInt` throughout.
//!
//! Pivoting uses Dantzig's rule with lowest-index tie-breaking and falls back
//! to Bland's rule permanently once a run of degenerate pivots is detected,
//! which guarantees termination on every input.
//!
//! Dual values are read off the reduced costs of the artificial columns,
//! which double as an explicit copy of the basis inverse. Sign conventions:
//! for a minimization program, duals of >= rows are nonnegative and duals of
//! <= rows nonpositive; for maximization the signs swap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

/// A linear program over nonnegative variables (optionally shifted by
/// per-variable lower bounds).
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<Rat>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rat>) -> Self {
        let lower_bounds = vec![Rat::zero(); objective.len()];
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            lower_bounds,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn push_constraint(
        &mut self,
        coeffs: Vec<Rat>,
        relation: Relation,
        rhs: Rat,
    ) -> Result<(), Error> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::shape(format!(
                "constraint has {} coefficients, program has {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.objective.is_empty() {
            return Err(Error::shape(
                "program must have at least one variable".to_string(),
            ));
        }
        if self.lower_bounds.len() != self.num_vars() {
            return Err(Error::shape(format!(
                "{} lower bounds for {} variables",
                self.lower_bounds.len(),
                self.num_vars()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars() {
                return Err(Error::shape(format!(
                    "constraint {i} has {} coefficients, program has {} variables",
                    c.coeffs.len(),
                    self.num_vars()
                )));
            }
        }
        Ok(())
    }

    /// The dual program, with every dual variable expressed as a nonnegative
    /// one: equality rows split into a difference pair, and rows whose dual
    /// is sign-constrained to be nonpositive are negated into the objective.
    /// Only defined for programs with all-zero lower bounds.
    pub fn dual(&self) -> Result<LinearProgram, Error> {
        self.validate()?;
        if self.lower_bounds.iter().any(|l| !l.is_zero()) {
            return Err(Error::domain(
                "dual construction requires zero lower bounds".to_string(),
            ));
        }
        // sign of y_i in terms of the nonnegative dual variable u_i
        let signs: Vec<Vec<i8>> = self
            .constraints
            .iter()
            .map(|c| match (self.sense, c.relation) {
                (Sense::Minimize, Relation::Ge) => vec![1],
                (Sense::Minimize, Relation::Le) => vec![-1],
                (Sense::Maximize, Relation::Le) => vec![1],
                (Sense::Maximize, Relation::Ge) => vec![-1],
                (_, Relation::Eq) => vec![1, -1],
            })
            .collect();
        let dual_sense = match self.sense {
            Sense::Minimize => Sense::Maximize,
            Sense::Maximize => Sense::Minimize,
        };
        let mut objective = Vec::new();
        for (c, sg) in self.constraints.iter().zip(&signs) {
            for &s in sg {
                objective.push(&c.rhs * Rat::from_integer(BigInt::from(s)));
            }
        }
        let mut dual = LinearProgram::new(dual_sense, objective);
        let relation = match self.sense {
            Sense::Minimize => Relation::Le,
            Sense::Maximize => Relation::Ge,
        };
        for j in 0..self.num_vars() {
            let mut coeffs = Vec::new();
            for (c, sg) in self.constraints.iter().zip(&signs) {
                for &s in sg {
                    coeffs.push(&c.coeffs[j] * Rat::from_integer(BigInt::from(s)));
                }
            }
            dual.push_constraint(coeffs, relation, self.objective[j].clone())?;
        }
        Ok(dual)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve. `primal` and `dual` are meaningful only when the status
/// is `Optimal`; an optimal pair is always a strong-duality certificate.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: Rat,
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution, Error> {
    let mut simplex = Simplex::build(lp)?;
    let status = simplex.run();
    Ok(match status {
        LpStatus::Optimal => LpSolution {
            status,
            objective_value: simplex.objective_value(),
            primal: simplex.primal(),
            dual: simplex.dual(),
        },
        _ => LpSolution {
            status,
            objective_value: Rat::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
        },
    })
}

/// Exact certificate check: primal feasibility, dual feasibility (including
/// sign conventions), and equality of primal and dual objectives. Everything
/// must hold exactly for a `true`.
pub fn verify_solution(lp: &LinearProgram, sol: &LpSolution) -> Result<bool, Error> {
    lp.validate()?;
    if sol.status != LpStatus::Optimal {
        return Ok(false);
    }
    if sol.primal.len() != lp.num_vars() || sol.dual.len() != lp.num_constraints() {
        return Err(Error::shape(format!(
            "solution has {} primal and {} dual values for a {}x{} program",
            sol.primal.len(),
            sol.dual.len(),
            lp.num_constraints(),
            lp.num_vars()
        )));
    }
    // primal feasibility
    for (x, l) in sol.primal.iter().zip(&lp.lower_bounds) {
        if x < l {
            return Ok(false);
        }
    }
    for c in &lp.constraints {
        let lhs: Rat = c
            .coeffs
            .iter()
            .zip(&sol.primal)
            .map(|(a, x)| a * x)
            .sum();
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        };
        if !ok {
            return Ok(false);
        }
    }
    // dual sign conventions
    for (c, y) in lp.constraints.iter().zip(&sol.dual) {
        let ok = match (lp.sense, c.relation) {
            (_, Relation::Eq) => true,
            (Sense::Minimize, Relation::Ge) | (Sense::Maximize, Relation::Le) => {
                !y.is_negative()
            }
            (Sense::Minimize, Relation::Le) | (Sense::Maximize, Relation::Ge) => {
                !y.is_positive()
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    // dual feasibility and the reduced costs it leaves on each variable
    let mut reduced = Vec::with_capacity(lp.num_vars());
    for j in 0..lp.num_vars() {
        let s: Rat = lp
            .constraints
            .iter()
            .zip(&sol.dual)
            .map(|(c, y)| &c.coeffs[j] * y)
            .sum();
        let r = match lp.sense {
            Sense::Minimize => &lp.objective[j] - &s,
            Sense::Maximize => &s - &lp.objective[j],
        };
        if r.is_negative() {
            return Ok(false);
        }
        reduced.push(r);
    }
    // objective equality, with lower bounds priced at their reduced costs
    let primal_obj: Rat = lp
        .objective
        .iter()
        .zip(&sol.primal)
        .map(|(c, x)| c * x)
        .sum();
    if primal_obj != sol.objective_value {
        return Ok(false);
    }
    let bound_part: Rat = reduced
        .iter()
        .zip(&lp.lower_bounds)
        .map(|(r, l)| r * l)
        .sum();
    let dual_obj: Rat = lp
        .constraints
        .iter()
        .zip(&sol.dual)
        .map(|(c, y)| &c.rhs * y)
        .sum();
    let dual_total = match lp.sense {
        Sense::Minimize => dual_obj + bound_part,
        Sense::Maximize => dual_obj - bound_part,
    };
    Ok(primal_obj == dual_total)
}

/// Minimum and maximum of one variable over the optimal face, obtained by
/// re-solving with the objective pinned to its optimal value.
pub fn variable_range_at_optimum(lp: &LinearProgram, var: usize) -> Result<(Rat, Rat), Error> {
    if var >= lp.num_vars() {
        return Err(Error::range(format!(
            "variable {var} of {}",
            lp.num_vars()
        )));
    }
    let base = solve(lp)?;
    if base.status != LpStatus::Optimal {
        return Err(Error::state(format!(
            "variable range requires an optimal base solve, got {:?}",
            base.status
        )));
    }
    let mut pinned = lp.clone();
    pinned.constraints.push(Constraint {
        coeffs: lp.objective.clone(),
        relation: Relation::Eq,
        rhs: base.objective_value.clone(),
    });
    let mut probe_objective = vec![Rat::zero(); lp.num_vars()];
    probe_objective[var] = Rat::one();
    let mut results = Vec::new();
    for sense in [Sense::Minimize, Sense::Maximize] {
        let mut probe = pinned.clone();
        probe.sense = sense;
        probe.objective = probe_objective.clone();
        let sol = solve(&probe)?;
        if sol.status != LpStatus::Optimal {
            return Err(Error::state(format!(
                "range probe for variable {var} ended {:?}",
                sol.status
            )));
        }
        results.push(sol.objective_value);
    }
    let hi = results.pop().expect("two probes");
    let lo = results.pop().expect("two probes");
    Ok((lo, hi))
}

/// One tableau row: integer numerators over a shared positive denominator.
#[derive(Clone, Debug)]
struct Row {
    nums: Vec<BigInt>,
    rhs: BigInt,
    den: BigInt,
}

impl Row {
    fn zeros(width: usize) -> Row {
        Row {
            nums: vec![BigInt::zero(); width],
            rhs: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    fn value(&self, col: usize) -> Rat {
        Rat::new(self.nums[col].clone(), self.den.clone())
    }

    fn rhs_value(&self) -> Rat {
        Rat::new(self.rhs.clone(), self.den.clone())
    }

    /// Divide out the content and keep the denominator positive.
    fn reduce(&mut self) {
        debug_assert!(!self.den.is_zero());
        let mut g = self.den.abs();
        if !g.is_one() {
            g = g.gcd(&self.rhs);
            for v in &self.nums {
                if g.is_one() {
                    break;
                }
                g = g.gcd(v);
            }
        }
        if !g.is_one() {
            for v in &mut self.nums {
                *v = &*v / &g;
            }
            self.rhs = &self.rhs / &g;
            self.den = &self.den / &g;
        }
        if self.den.is_negative() {
            for v in &mut self.nums {
                *v = -&*v;
            }
            self.rhs = -&self.rhs;
            self.den = -&self.den;
        }
    }

    /// self -= other, lifting both sides to a common denominator.
    fn sub_row(&mut self, other: &Row) {
        let common = self.den.lcm(&other.den);
        let fs = &common / &self.den;
        let fo = &common / &other.den;
        for (v, o) in self.nums.iter_mut().zip(&other.nums) {
            *v = &*v * &fs - o * &fo;
        }
        self.rhs = &self.rhs * &fs - &other.rhs * &fo;
        self.den = common;
        self.reduce();
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    One,
    Two,
}

/// Two-phase simplex state. Kept cloneable so callers can branch a solved
/// tableau: clone, append a column, and reoptimize from the optimal basis
/// instead of re-solving from scratch.
#[derive(Clone)]
pub(crate) struct Simplex {
    nv: usize,
    m: usize,
    ncols: usize,
    art_start: usize,
    rows: Vec<Row>,
    obj: Row,
    phase1: Option<Row>,
    basis: Vec<usize>,
    row_negated: Vec<bool>,
    sense: Sense,
    shift: Vec<Rat>,
    objective_shift: Rat,
    status: Option<LpStatus>,
    bland: bool,
    stall: u32,
    stall_limit: u32,
    appended: usize,
}

impl Simplex {
    pub(crate) fn build(lp: &LinearProgram) -> Result<Simplex, Error> {
        lp.validate()?;
        let nv = lp.num_vars();
        let m = lp.num_constraints();
        let art_start = nv + m;
        let ncols = nv + 2 * m;

        let internal_cost: Vec<Rat> = match lp.sense {
            Sense::Minimize => lp.objective.clone(),
            Sense::Maximize => lp.objective.iter().map(|c| -c).collect(),
        };
        let shifted = lp.lower_bounds.iter().any(|l| !l.is_zero());

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut row_negated = Vec::with_capacity(m);
        for (i, con) in lp.constraints.iter().enumerate() {
            let mut rhs = con.rhs.clone();
            if shifted {
                for (a, l) in con.coeffs.iter().zip(&lp.lower_bounds) {
                    rhs -= a * l;
                }
            }
            let slack: i64 = match con.relation {
                Relation::Le => 1,
                Relation::Ge => -1,
                Relation::Eq => 0,
            };
            let negate = rhs.is_negative();
            let sign = if negate { -1i64 } else { 1 };
            // common denominator over the coefficients and the shifted rhs
            let mut den = rhs.denom().clone();
            for a in &con.coeffs {
                den = den.lcm(a.denom());
            }
            let mut nums = vec![BigInt::zero(); ncols];
            for (j, a) in con.coeffs.iter().enumerate() {
                nums[j] = a.numer() * (&den / a.denom()) * sign;
            }
            nums[nv + i] = BigInt::from(slack * sign) * &den;
            nums[art_start + i] = den.clone();
            let rhs_num = rhs.numer() * (&den / rhs.denom()) * sign;
            let mut row = Row {
                nums,
                rhs: rhs_num,
                den,
            };
            row.reduce();
            let slack_is_identity = slack * sign == 1;
            basis.push(if slack_is_identity {
                nv + i
            } else {
                art_start + i
            });
            row_negated.push(negate);
            rows.push(row);
        }

        let mut obj = Row::zeros(ncols);
        let mut obj_den = BigInt::one();
        for c in &internal_cost {
            obj_den = obj_den.lcm(c.denom());
        }
        for (j, c) in internal_cost.iter().enumerate() {
            obj.nums[j] = c.numer() * (&obj_den / c.denom());
        }
        obj.den = obj_den;
        obj.reduce();

        let any_artificial_basic = basis.iter().any(|&b| b >= art_start);
        let phase1 = if any_artificial_basic {
            let mut p1 = Row::zeros(ncols);
            for k in 0..m {
                p1.nums[art_start + k] = BigInt::one();
            }
            for (r, &b) in basis.iter().enumerate() {
                if b >= art_start {
                    p1.sub_row(&rows[r]);
                }
            }
            Some(p1)
        } else {
            None
        };

        let objective_shift: Rat = lp
            .objective
            .iter()
            .zip(&lp.lower_bounds)
            .map(|(c, l)| c * l)
            .sum();

        let stall_limit = 4 * (m as u32 + 16);
        Ok(Simplex {
            nv,
            m,
            ncols,
            art_start,
            rows,
            obj,
            phase1,
            basis,
            row_negated,
            sense: lp.sense,
            shift: lp.lower_bounds.clone(),
            objective_shift,
            status: None,
            bland: false,
            stall: 0,
            stall_limit,
            appended: 0,
        })
    }

    pub(crate) fn run(&mut self) -> LpStatus {
        if self.phase1.is_some() {
            let outcome = self.pivot_loop(Phase::One);
            debug_assert!(
                outcome.is_none(),
                "phase 1 objective is bounded below by zero"
            );
            let infeasible = {
                let p1 = self.phase1.as_ref().expect("phase 1 row present");
                // stored rhs is -z1; infeasible when z1 > 0
                p1.rhs.is_negative()
            };
            if infeasible {
                self.status = Some(LpStatus::Infeasible);
                return LpStatus::Infeasible;
            }
            self.evict_basic_artificials();
            self.phase1 = None;
        }
        let status = match self.pivot_loop(Phase::Two) {
            Some(status) => status,
            None => LpStatus::Optimal,
        };
        self.status = Some(status);
        status
    }

    /// Runs one phase to completion. Returns Some(Unbounded) if a column
    /// prices out with no blocking row, None at phase optimality.
    fn pivot_loop(&mut self, phase: Phase) -> Option<LpStatus> {
        loop {
            let col = self.select_entering(phase)?;
            let row = match self.select_leaving(col) {
                Some(row) => row,
                None => {
                    return match phase {
                        Phase::One => unreachable!("phase 1 cannot be unbounded"),
                        Phase::Two => Some(LpStatus::Unbounded),
                    }
                }
            };
            if self.rows[row].rhs.is_zero() {
                self.stall += 1;
                if self.stall >= self.stall_limit {
                    self.bland = true;
                }
            } else {
                self.stall = 0;
            }
            self.pivot(row, col);
        }
    }

    fn objective_row(&self, phase: Phase) -> &Row {
        match phase {
            Phase::One => self.phase1.as_ref().expect("phase 1 row present"),
            Phase::Two => &self.obj,
        }
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.art_start && col < self.art_start + self.m
    }

    fn select_entering(&self, phase: Phase) -> Option<usize> {
        let objrow = self.objective_row(phase);
        let mut best: Option<usize> = None;
        for col in 0..self.ncols {
            if self.is_artificial(col) {
                continue;
            }
            let num = &objrow.nums[col];
            if num.is_negative() {
                if self.bland {
                    return Some(col);
                }
                match best {
                    Some(b) if objrow.nums[b] <= *num => {}
                    _ => best = Some(col),
                }
            }
        }
        best
    }

    fn select_leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for r in 0..self.m {
            let a = &self.rows[r].nums[col];
            if !a.is_positive() {
                continue;
            }
            match best {
                None => best = Some(r),
                Some(b) => {
                    // compare rhs_r / a_r against rhs_b / a_b by cross products
                    let lhs = &self.rows[r].rhs * &self.rows[b].nums[col];
                    let rhs = &self.rows[b].rhs * a;
                    if lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[b]) {
                        best = Some(r);
                    }
                }
            }
        }
        best
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let prow = self.rows[row].clone();
        let p = prow.nums[col].clone();
        debug_assert!(!p.is_zero());
        for r in 0..self.m {
            if r != row {
                Self::eliminate(&mut self.rows[r], &prow, &p, col);
            }
        }
        Self::eliminate(&mut self.obj, &prow, &p, col);
        if let Some(p1) = self.phase1.as_mut() {
            Self::eliminate(p1, &prow, &p, col);
        }
        let target = &mut self.rows[row];
        target.den = p;
        target.reduce();
        self.basis[row] = col;
    }

    fn eliminate(target: &mut Row, prow: &Row, p: &BigInt, col: usize) {
        let f = target.nums[col].clone();
        if f.is_zero() {
            return;
        }
        for (v, pv) in target.nums.iter_mut().zip(&prow.nums) {
            let scaled = &*v * p;
            if pv.is_zero() {
                *v = scaled;
            } else {
                *v = scaled - &f * pv;
            }
        }
        target.rhs = &target.rhs * p - &f * &prow.rhs;
        target.den = &target.den * p;
        target.reduce();
    }

    /// After phase 1, pivot any artificial still basic (necessarily at zero)
    /// onto a structural or slack column; rows with no such column are
    /// redundant and keep their artificial harmlessly parked at zero.
    fn evict_basic_artificials(&mut self) {
        for r in 0..self.m {
            if self.basis[r] < self.art_start {
                continue;
            }
            debug_assert!(self.rows[r].rhs.is_zero());
            let col = (0..self.art_start).find(|&c| !self.rows[r].nums[c].is_zero());
            if let Some(col) = col {
                self.pivot(r, col);
            }
        }
    }

    /// Values of the original variables (lower-bound shift included).
    pub(crate) fn primal(&self) -> Vec<Rat> {
        debug_assert_eq!(self.status, Some(LpStatus::Optimal));
        let mut x = self.shift.clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.nv {
                x[b] += self.rows[r].rhs_value();
            }
        }
        x
    }

    /// Value of an appended column's variable, unscaled.
    #[cfg(test)]
    pub(crate) fn appended_value(&self, handle: usize) -> Rat {
        let col = self.art_start + self.m + handle;
        for (r, &b) in self.basis.iter().enumerate() {
            if b == col {
                return self.rows[r].rhs_value();
            }
        }
        Rat::zero()
    }

    pub(crate) fn objective_value(&self) -> Rat {
        debug_assert_eq!(self.status, Some(LpStatus::Optimal));
        // the stored objective rhs is -z of the shifted internal minimization
        let z_internal = -self.obj.rhs_value();
        let signed = match self.sense {
            Sense::Minimize => z_internal,
            Sense::Maximize => -z_internal,
        };
        signed + &self.objective_shift
    }

    /// Dual values per original constraint, in the reported sign convention.
    pub(crate) fn dual(&self) -> Vec<Rat> {
        debug_assert_eq!(self.status, Some(LpStatus::Optimal));
        (0..self.m)
            .map(|i| {
                let mut y = -self.obj.value(self.art_start + i);
                if self.row_negated[i] {
                    y = -y;
                }
                if self.sense == Sense::Maximize {
                    y = -y;
                }
                y
            })
            .collect()
    }

    /// Appends a fresh nonnegative variable with the given column over the
    /// original constraint rows and the given objective coefficient. Only
    /// valid on an optimally solved tableau; follow with `reoptimize`.
    pub(crate) fn add_column(&mut self, coeffs: &[Rat], cost: Rat) -> Result<usize, Error> {
        if self.status != Some(LpStatus::Optimal) {
            return Err(Error::state(
                "columns can only be appended to an optimal tableau".to_string(),
            ));
        }
        if coeffs.len() != self.m {
            return Err(Error::shape(format!(
                "column has {} entries for {} rows",
                coeffs.len(),
                self.m
            )));
        }
        let internal_cost = match self.sense {
            Sense::Minimize => cost.clone(),
            Sense::Maximize => -cost.clone(),
        };
        let mut scale = internal_cost.denom().clone();
        for a in coeffs {
            scale = scale.lcm(a.denom());
        }
        // integer column of the scaled variable, with row sign normalization
        let column: Vec<BigInt> = coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let v = a.numer() * (&scale / a.denom());
                if self.row_negated[i] {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let cost_int = internal_cost.numer() * (&scale / internal_cost.denom());

        // transformed column B^-1 a, read through the artificial block
        for r in 0..self.m {
            let cell: BigInt = (0..self.m)
                .map(|k| &self.rows[r].nums[self.art_start + k] * &column[k])
                .sum();
            self.rows[r].nums.push(cell);
        }
        let obj_cell: BigInt = &cost_int * &self.obj.den
            + (0..self.m)
                .map(|k| &self.obj.nums[self.art_start + k] * &column[k])
                .sum::<BigInt>();
        self.obj.nums.push(obj_cell);
        self.ncols += 1;
        self.appended += 1;
        Ok(self.appended - 1)
    }

    pub(crate) fn reoptimize(&mut self) -> LpStatus {
        debug_assert!(self.phase1.is_none());
        self.stall = 0;
        let status = match self.pivot_loop(Phase::Two) {
            Some(status) => status,
            None => LpStatus::Optimal,
        };
        self.status = Some(status);
        status
    }
}
