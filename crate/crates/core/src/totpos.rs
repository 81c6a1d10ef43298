//! Flat matrices with positive maximal minors: grid-network generation of
//! totally positive matrices, the suffix-sum construction from a matrix `C`,
//! and the closed forms for their minors, semi-activities and `f_A`.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::exactnum::{minor, ratio, MatrixError, Rational, RationalMatrix};
use crate::ormatroid::{orient_circuit, GenericVector, MatroidContext};
use crate::polyshape::{q_product, BoxCertificate, RatPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TotposError {
    #[error("maximal minor on columns {0:?} is not positive")]
    NotMaxPositive(Vec<usize>),
    #[error("invalid network: {0}")]
    BadNetwork(String),
    #[error("column set {0:?} is not a strictly increasing subset of the right size")]
    BadColumns(Vec<usize>),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Weighted `d x N` grid: horizontal edges run right to left, vertical edges
/// run down with weight 1. Source `i` feeds the right end of row `i` and sink
/// `j` hangs below column `j` of the bottom row. `weights[i][N-1]` is the
/// source edge of row `i`, `weights[i][c]` for `c < N-1` the edge entering
/// column `c` from column `c+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridNetwork {
    pub weights: Vec<Vec<Rational>>,
    /// bottom-row weights are taken to be 1 regardless of `weights`
    pub last_row_unit: bool,
}

/// Weights drawn by [`GridNetwork::random`].
pub fn weight_palette() -> Vec<Rational> {
    vec![ratio(1, 4), ratio(1, 3), ratio(1, 2), ratio(1, 1), ratio(2, 1), ratio(3, 1), ratio(4, 1)]
}

impl GridNetwork {
    pub fn new(weights: Vec<Vec<Rational>>, last_row_unit: bool) -> Result<Self, TotposError> {
        let n = weights.first().map_or(0, Vec::len);
        if weights.is_empty() || n == 0 {
            return Err(TotposError::BadNetwork("empty grid".into()));
        }
        if weights.iter().any(|r| r.len() != n) {
            return Err(TotposError::BadNetwork("rows of different lengths".into()));
        }
        if weights.iter().flatten().any(|w| !w.is_positive()) {
            return Err(TotposError::BadNetwork("weights must be positive".into()));
        }
        Ok(GridNetwork { weights, last_row_unit })
    }

    pub fn unit(d: usize, n: usize) -> Self {
        GridNetwork { weights: vec![vec![Rational::one(); n]; d], last_row_unit: true }
    }

    pub fn random<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> Self {
        let palette = weight_palette();
        let weights =
            (0..d).map(|_| (0..n).map(|_| palette.choose(rng).expect("nonempty").clone()).collect()).collect();
        GridNetwork { weights, last_row_unit: true }
    }

    pub fn rows(&self) -> usize {
        self.weights.len()
    }

    pub fn cols(&self) -> usize {
        self.weights[0].len()
    }

    fn weight(&self, r: usize, c: usize) -> Rational {
        if self.last_row_unit && r + 1 == self.rows() {
            Rational::one()
        } else {
            self.weights[r][c].clone()
        }
    }

    /// The network with its bottom row of horizontal edges removed.
    pub fn without_last_row(&self) -> Option<GridNetwork> {
        if self.rows() < 2 {
            return None;
        }
        Some(GridNetwork { weights: self.weights[..self.rows() - 1].to_vec(), last_row_unit: false })
    }
}

/// Matrix of weighted path sums from each source to each sink.
pub fn tp_from_network(net: &GridNetwork) -> RationalMatrix {
    let (d, n) = (net.rows(), net.cols());
    let mut out = RationalMatrix::zeros(d, n);
    for s in 0..d {
        // reach[r][c]: weighted paths from source s to grid node (r, c)
        let mut reach = vec![vec![Rational::zero(); n]; d];
        for r in s..d {
            for c in (0..n).rev() {
                let mut v = Rational::zero();
                if r == s && c + 1 == n {
                    v += net.weight(r, c);
                }
                if c + 1 < n {
                    v += &reach[r][c + 1] * net.weight(r, c);
                }
                if r > s {
                    v += &reach[r - 1][c];
                }
                reach[r][c] = v;
            }
        }
        for (c, v) in reach[d - 1].iter().enumerate() {
            out.set(s, c, v.clone());
        }
    }
    out
}

/// `A` with last row all ones and `a_ij = sum_{j' >= j} c_ij'`, together with
/// the `C` it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatMaxPositive {
    pub a: RationalMatrix,
    pub c: RationalMatrix,
}

/// Every maximal minor of `m` is positive (true for zero rows).
pub fn maximal_minors_positive(m: &RationalMatrix) -> Result<(), Vec<usize>> {
    let rows: Vec<usize> = (0..m.rows()).collect();
    for cols in (0..m.cols()).combinations(m.rows()) {
        if !minor(m, &rows, &cols).expect("in range").is_positive() {
            return Err(cols);
        }
    }
    Ok(())
}

pub fn flat_maxpos_from_c(c: &RationalMatrix) -> Result<FlatMaxPositive, TotposError> {
    if c.rows() > c.cols() {
        return Err(TotposError::NotMaxPositive(vec![]));
    }
    maximal_minors_positive(c).map_err(TotposError::NotMaxPositive)?;
    let n = c.cols();
    let mut a = RationalMatrix::zeros(c.rows() + 1, n);
    for i in 0..c.rows() {
        let mut acc = Rational::zero();
        for j in (0..n).rev() {
            acc += c.get(i, j);
            a.set(i, j, acc.clone());
        }
    }
    for j in 0..n {
        a.set(c.rows(), j, Rational::one());
    }
    Ok(FlatMaxPositive { a, c: c.clone() })
}

impl FlatMaxPositive {
    pub fn rank(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Maximal minor of `C` on the given columns (1 when `C` has no rows).
    pub fn c_minor(&self, cols: &[usize]) -> Rational {
        let rows: Vec<usize> = (0..self.c.rows()).collect();
        minor(&self.c, &rows, cols).expect("valid column subset")
    }
}

/// Maximal minor of `A` on `cols` (0-based, increasing) as the sum of the
/// `C`-minors on the column sets `j` interleaving them:
/// `i_1 <= j_1 < i_2 <= j_2 < ... <= j_{d-1} < i_d`.
pub fn minor_via_c(fmp: &FlatMaxPositive, cols: &[usize]) -> Result<Rational, TotposError> {
    check_subset(cols, fmp.rank(), fmp.n())?;
    let mut total = Rational::zero();
    let mut js = Vec::with_capacity(cols.len().saturating_sub(1));
    interleave(cols, &mut js, &mut |j| total += fmp.c_minor(j));
    Ok(total)
}

fn interleave(cols: &[usize], js: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    let k = js.len();
    if k + 1 >= cols.len() {
        visit(js);
        return;
    }
    for j in cols[k]..cols[k + 1] {
        js.push(j);
        interleave(cols, js, visit);
        js.pop();
    }
}

fn check_subset(cols: &[usize], d: usize, n: usize) -> Result<(), TotposError> {
    if cols.len() != d || cols.windows(2).any(|w| w[0] >= w[1]) || cols.iter().any(|&c| c >= n) {
        return Err(TotposError::BadColumns(cols.to_vec()));
    }
    Ok(())
}

/// `ext(B)` for the alternating uniform oriented matroid under the
/// lexicographic orientation: with 1-based `i_0 = 0` and `i_{d+1} = N + 1`,
/// `(i_1 - i_0 - 1) + (i_3 - i_2 - 1) + ...`. `basis` is 0-based.
pub fn ext_closed_form(basis: &[usize], n: usize) -> Result<usize, TotposError> {
    check_subset(basis, basis.len(), n)?;
    let mut idx = Vec::with_capacity(basis.len() + 2);
    idx.push(0);
    idx.extend(basis.iter().map(|&i| i + 1));
    idx.push(n + 1);
    Ok(idx.chunks(2).filter(|p| p.len() == 2).map(|p| p[1] - p[0] - 1).sum())
}

/// Elements outside `basis` with an even number of smaller basis elements.
pub fn ext_set_closed_form(basis: &[usize], n: usize) -> Vec<usize> {
    (0..n)
        .filter(|j| !basis.contains(j) && basis.iter().filter(|&&i| i < *j).count() % 2 == 0)
        .collect()
}

/// Checks that every circuit of `ctx` has `d + 1` elements and, oriented
/// lexicographically, alternates in sign starting with `+`.
pub fn circuit_signs_alternate(ctx: &MatroidContext) -> bool {
    let n = ctx.n_elements();
    let d = ctx.rank();
    let circuits = ctx.circuits();
    let expected = if d < n { num_integer::binomial(n, d + 1) } else { 0 };
    circuits.len() == expected
        && circuits.iter().all(|c| {
            let o = orient_circuit(c, &GenericVector::LexOrder).expect("lex order is generic");
            o.support.len() == d + 1
                && o.support.iter().enumerate().all(|(k, i)| (k % 2 == 0) == o.positive.contains(i))
        })
}

/// `f_A` as `sum over (d-1)-subsets j of [N-1]` of
/// `Delta_j(C) [j_1][j_2 - j_1] ... [N - j_{d-1}]`, with the certificate
/// listing each product's part sizes and weight.
pub fn f_tp_closed(fmp: &FlatMaxPositive) -> (RatPolynomial, BoxCertificate) {
    let d = fmp.rank();
    let n = fmp.n();
    let mut terms = Vec::new();
    for js in (0..n - 1).combinations(d - 1) {
        let weight = fmp.c_minor(&js);
        // 1-based cut points j_1 < ... < j_{d-1}
        let mut parts = Vec::with_capacity(d);
        let mut prev = 0;
        for &j in &js {
            parts.push(j + 1 - prev);
            prev = j + 1;
        }
        parts.push(n - prev);
        terms.push((parts, weight));
    }
    let poly = terms.iter().fold(RatPolynomial::zero(), |acc, (parts, w)| {
        let prod = q_product(parts).expect("parts are positive").to_rational();
        &acc + &prod.scale(w)
    });
    (poly, BoxCertificate { degree_d: d, terms })
}
