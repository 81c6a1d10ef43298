//! Exact rational linear programming.
//!
//! Two-phase dense tableau simplex with Bland's pivoting rule. Programs are
//! stated as `maximize c.x` subject to `A x = b` and per-variable bounds; they
//! are rewritten into standard form (`y >= 0`) internally and the witness is
//! mapped back to the original variables.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{dot, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("malformed program: {0}")]
    MalformedProgram(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarBound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBound {
    pub fn free() -> Self {
        VarBound { lower: None, upper: None }
    }

    pub fn nonneg() -> Self {
        VarBound { lower: Some(Rational::zero()), upper: None }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        VarBound { lower: Some(lower), upper: Some(upper) }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| l <= x) && self.upper.as_ref().is_none_or(|u| x <= u)
    }
}

/// `maximize objective . x` subject to `eq_matrix x = eq_rhs` and `bounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub eq_matrix: RationalMatrix,
    pub eq_rhs: Vec<Rational>,
    pub bounds: Vec<VarBound>,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<Rational>,
        eq_matrix: RationalMatrix,
        eq_rhs: Vec<Rational>,
        bounds: Vec<VarBound>,
    ) -> Result<Self, LpError> {
        let p = LinearProgram { objective, eq_matrix, eq_rhs, bounds };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if self.eq_matrix.cols() != n {
            return Err(LpError::MalformedProgram(format!(
                "constraint matrix has {} columns, objective has {n}",
                self.eq_matrix.cols()
            )));
        }
        if self.eq_rhs.len() != self.eq_matrix.rows() {
            return Err(LpError::MalformedProgram("rhs length differs from constraint rows".into()));
        }
        if self.bounds.len() != n {
            return Err(LpError::MalformedProgram("one bound per variable required".into()));
        }
        for (i, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(LpError::MalformedProgram(format!("variable {i} has lower > upper")));
                }
            }
        }
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    /// Exact feasibility check of a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars()
            && self.bounds.iter().zip(x).all(|(b, v)| b.contains(v))
            && self.eq_matrix.mul_vec(x).map(|ax| ax == self.eq_rhs).unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub optimum: Option<Rational>,
    pub witness: Option<Vec<Rational>>,
}

impl LpOutcome {
    fn infeasible() -> Self {
        LpOutcome { status: LpStatus::Infeasible, optimum: None, witness: None }
    }

    fn unbounded() -> Self {
        LpOutcome { status: LpStatus::Unbounded, optimum: None, witness: None }
    }
}

/// How an original variable is expressed through standard-form columns.
#[derive(Debug, Clone)]
enum VarMap {
    /// x = offset + sign * y[col]
    Shifted { col: usize, offset: Rational, negate: bool },
    /// x = y[pos] - y[neg]
    Split { pos: usize, neg: usize },
}

struct StandardForm {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    constant: Rational,
    maps: Vec<VarMap>,
}

fn to_standard_form(p: &LinearProgram) -> StandardForm {
    let m = p.eq_matrix.rows();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    let mut c = Vec::new();
    let mut b = p.eq_rhs.clone();
    let mut constant = Rational::zero();
    let mut maps = Vec::new();
    // extra rows y + s = u - l for doubly bounded variables: (col, rhs)
    let mut caps: Vec<(usize, Rational)> = Vec::new();

    for (j, bound) in p.bounds.iter().enumerate() {
        let col = p.eq_matrix.column(j);
        let cj = p.objective[j].clone();
        match (&bound.lower, &bound.upper) {
            (Some(l), upper) => {
                for (bi, ai) in b.iter_mut().zip(&col) {
                    *bi -= ai * l;
                }
                constant += &cj * l;
                let idx = cols.len();
                cols.push(col);
                c.push(cj);
                if let Some(u) = upper {
                    caps.push((idx, u - l));
                }
                maps.push(VarMap::Shifted { col: idx, offset: l.clone(), negate: false });
            }
            (None, Some(u)) => {
                for (bi, ai) in b.iter_mut().zip(&col) {
                    *bi -= ai * u;
                }
                constant += &cj * u;
                let idx = cols.len();
                cols.push(col.iter().map(|x| -x).collect());
                c.push(-cj);
                maps.push(VarMap::Shifted { col: idx, offset: u.clone(), negate: true });
            }
            (None, None) => {
                let pos = cols.len();
                cols.push(col.clone());
                c.push(cj.clone());
                let neg = cols.len();
                cols.push(col.iter().map(|x| -x).collect());
                c.push(-cj);
                maps.push(VarMap::Split { pos, neg });
            }
        }
    }

    let n_struct = cols.len();
    let n_total = n_struct + caps.len();
    let mut a: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|col| col[i].clone()).collect();
            row.resize(n_total, Rational::zero());
            row
        })
        .collect();
    for (k, (idx, rhs)) in caps.into_iter().enumerate() {
        let mut row = vec![Rational::zero(); n_total];
        row[idx] = Rational::one();
        row[n_struct + k] = Rational::one();
        a.push(row);
        b.push(rhs);
    }
    c.resize(n_total, Rational::zero());
    StandardForm { a, b, c, constant, maps }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

enum PhaseResult {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . y` over columns flagged in `allowed`, Bland's rule.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> PhaseResult {
        loop {
            // reduced cost of column j: c_j - c_B . column_j
            let entering = (0..cost.len()).filter(|&j| allowed[j] && !self.basis.contains(&j)).find(|&j| {
                let mut rc = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    let a = &self.rows[i][j];
                    if !a.is_zero() && !cost[bi].is_zero() {
                        rc -= &cost[bi] * a;
                    }
                }
                rc.is_positive()
            });
            let Some(e) = entering else {
                return PhaseResult::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return PhaseResult::Unbounded,
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().zip(&self.rhs).fold(Rational::zero(), |acc, (&j, v)| acc + &cost[j] * v)
    }
}

/// Solves the program exactly. Deterministic for a given input.
pub fn lp_solve(p: &LinearProgram) -> Result<LpOutcome, LpError> {
    p.validate()?;
    let sf = to_standard_form(p);
    let m = sf.a.len();
    let n = sf.c.len();

    let mut rows = sf.a;
    let mut rhs = sf.b;
    for i in 0..m {
        if rhs[i].is_negative() {
            rhs[i] = -rhs[i].clone();
            for x in rows[i].iter_mut() {
                *x = -x.clone();
            }
        }
        rows[i].extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect() };

    // phase 1: maximize -(sum of artificials)
    let mut cost1 = vec![Rational::zero(); n + m];
    for x in cost1.iter_mut().skip(n) {
        *x = -Rational::one();
    }
    let all = vec![true; n + m];
    t.optimize(&cost1, &all);
    if !t.value(&cost1).is_zero() {
        return Ok(LpOutcome::infeasible());
    }

    // drive remaining (zero-level) artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    // phase 2
    let mut cost2 = sf.c.clone();
    cost2.resize(n + m, Rational::zero());
    let allowed: Vec<bool> = (0..n + m).map(|j| j < n).collect();
    if let PhaseResult::Unbounded = t.optimize(&cost2, &allowed) {
        return Ok(LpOutcome::unbounded());
    }

    let mut y = vec![Rational::zero(); n];
    for (&j, v) in t.basis.iter().zip(&t.rhs) {
        y[j] = v.clone();
    }
    let x: Vec<Rational> = sf
        .maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, offset, negate } => {
                if *negate {
                    offset - &y[*col]
                } else {
                    offset + &y[*col]
                }
            }
            VarMap::Split { pos, neg } => &y[*pos] - &y[*neg],
        })
        .collect();
    let optimum = dot(&p.objective, &x);
    debug_assert_eq!(optimum, t.value(&cost2) + &sf.constant);
    debug_assert!(p.is_feasible(&x));
    Ok(LpOutcome { status: LpStatus::Optimal, optimum: Some(optimum), witness: Some(x) })
}
