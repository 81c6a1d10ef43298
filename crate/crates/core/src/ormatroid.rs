//! Oriented matroids of flat vector configurations and the external
//! semi-activity polynomial `f_A(t) = sum_B t^{ext(B)} Vol(B)`.
//!
//! A [`MatroidContext`] wraps a full-row-rank flat matrix. For every basis it
//! caches the coordinates of all columns in that basis (`B^{-1} A`); the
//! fundamental circuit of `(B, j)` is then read off directly as
//! `sum_i x_i a_i - a_j = 0`, so evaluating `f_A` for another generic vector
//! only costs dot products.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{det_rows, dot, flat_witness, rank, FlatWitness, Rational, RationalMatrix};
use crate::polyshape::{IntPolynomial, RatPolynomial};

/// Attempts made by [`f_poly_random`] before giving up on drawing a generic
/// vector.
pub const MAX_RESAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("matrix has rank {rank} but {rows} rows; a full-row-rank presentation is required")]
    NotFullRank { rank: usize, rows: usize },
    #[error("matrix is not flat: no linear form takes the value 1 on every column")]
    NotFlat,
    #[error("{0:?} is not a basis")]
    NotABasis(Vec<usize>),
    #[error("element {0} lies in the basis")]
    IndexInBasis(usize),
    #[error("index {index} out of range for {bound} columns")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("generic vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vector is not generic: it is orthogonal to the circuit on {0:?}")]
    NotGeneric(Vec<usize>),
    #[error("no generic vector found after {0} draws")]
    ResamplingExhausted(usize),
    #[error("coefficient of t^{0} is not an integer")]
    NonIntegerCoefficient(usize),
}

/// Generic vector orienting the circuits. `LexOrder` is the limit
/// `rho = (e, e^2, ..., e^N)` for infinitesimal `e`: each circuit is oriented
/// so that its smallest element is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericVector {
    LexOrder,
    Explicit(Vec<Rational>),
}

impl GenericVector {
    pub fn negated(&self) -> Option<Self> {
        match self {
            GenericVector::LexOrder => None,
            GenericVector::Explicit(v) => Some(GenericVector::Explicit(v.iter().map(|x| -x).collect())),
        }
    }
}

/// Strictly increasing index set of size `d` whose columns are independent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    indices: Vec<usize>,
}

impl Basis {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }
}

/// Circuit with coefficient vector `lambda` (length `N`, zero off the
/// support) satisfying `sum lambda_i a_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCircuit {
    pub support: Vec<usize>,
    pub lambda: Vec<Rational>,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl SignedCircuit {
    fn from_lambda(lambda: Vec<Rational>) -> Self {
        let support: Vec<usize> = (0..lambda.len()).filter(|&i| !lambda[i].is_zero()).collect();
        let positive = support.iter().copied().filter(|&i| lambda[i].is_positive()).collect();
        let negative = support.iter().copied().filter(|&i| lambda[i].is_negative()).collect();
        SignedCircuit { support, lambda, positive, negative }
    }

    pub fn negated(&self) -> Self {
        Self::from_lambda(self.lambda.iter().map(|x| -x).collect())
    }

    pub fn is_dependence_of(&self, a: &RationalMatrix) -> bool {
        a.mul_vec(&self.lambda).map(|v| v.iter().all(Zero::is_zero)).unwrap_or(false)
    }
}

/// Flips `c` if needed so that `(lambda, rho) > 0`, or under `LexOrder` so
/// that the smallest support element is positive.
pub fn orient_circuit(c: &SignedCircuit, rho: &GenericVector) -> Result<SignedCircuit, MatroidError> {
    let keep = match rho {
        GenericVector::LexOrder => match c.support.first() {
            Some(&m) => c.lambda[m].is_positive(),
            None => true,
        },
        GenericVector::Explicit(r) => {
            if r.len() != c.lambda.len() {
                return Err(MatroidError::WrongLength { expected: c.lambda.len(), found: r.len() });
            }
            let s = dot(&c.lambda, r);
            if s.is_zero() {
                return Err(MatroidError::NotGeneric(c.support.clone()));
            }
            s.is_positive()
        }
    };
    Ok(if keep { c.clone() } else { c.negated() })
}

#[derive(Debug)]
struct BasisFrame {
    basis: Basis,
    volume: Rational,
    /// coords[j] = coordinates of column j in the basis (length d)
    coords: Vec<Vec<Rational>>,
}

/// Flat, full-row-rank matrix together with its flatness witness.
#[derive(Debug)]
pub struct MatroidContext {
    matrix: RationalMatrix,
    witness: FlatWitness,
    rank_d: usize,
    frames: OnceLock<Vec<BasisFrame>>,
}

impl Clone for MatroidContext {
    fn clone(&self) -> Self {
        MatroidContext {
            matrix: self.matrix.clone(),
            witness: self.witness.clone(),
            rank_d: self.rank_d,
            frames: OnceLock::new(),
        }
    }
}

impl MatroidContext {
    pub fn new(matrix: RationalMatrix) -> Result<Self, MatroidError> {
        let r = rank(&matrix);
        if r != matrix.rows() {
            return Err(MatroidError::NotFullRank { rank: r, rows: matrix.rows() });
        }
        let witness = flat_witness(&matrix).ok_or(MatroidError::NotFlat)?;
        Ok(MatroidContext { matrix, witness, rank_d: r, frames: OnceLock::new() })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn witness(&self) -> &FlatWitness {
        &self.witness
    }

    pub fn rank(&self) -> usize {
        self.rank_d
    }

    pub fn n_elements(&self) -> usize {
        self.matrix.cols()
    }

    fn frames(&self) -> &[BasisFrame] {
        self.frames.get_or_init(|| {
            let d = self.rank_d;
            let n = self.matrix.cols();
            let subsets: Vec<Vec<usize>> = (0..n).combinations(d).collect();
            subsets.into_par_iter().filter_map(|s| self.build_frame(s)).collect()
        })
    }

    fn build_frame(&self, subset: Vec<usize>) -> Option<BasisFrame> {
        let d = self.rank_d;
        let n = self.matrix.cols();
        let sub: Vec<Vec<Rational>> =
            (0..d).map(|i| subset.iter().map(|&j| self.matrix.get(i, j).clone()).collect()).collect();
        let det = det_rows(&sub);
        if det.is_zero() {
            return None;
        }
        // Gauss-Jordan on [A_B | A] yields B^{-1} A in the right block
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row = sub[i].clone();
                row.extend_from_slice(self.matrix.row(i));
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !aug[r][c].is_zero()).expect("nonsingular basis block");
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x *= &inv;
            }
            let prow = aug[c].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let coords = (0..n).map(|j| (0..d).map(|i| aug[i][d + j].clone()).collect()).collect();
        Some(BasisFrame { basis: Basis { indices: subset }, volume: det.abs(), coords })
    }

    fn frame(&self, b: &Basis) -> Result<&BasisFrame, MatroidError> {
        let frames = self.frames();
        frames
            .binary_search_by(|f| f.basis.cmp(b))
            .map(|i| &frames[i])
            .map_err(|_| MatroidError::NotABasis(b.indices.clone()))
    }

    /// Validates an index set as a basis.
    pub fn basis(&self, indices: &[usize]) -> Result<Basis, MatroidError> {
        for &i in indices {
            if i >= self.n_elements() {
                return Err(MatroidError::IndexOutOfRange { index: i, bound: self.n_elements() });
            }
        }
        let mut v = indices.to_vec();
        v.sort_unstable();
        v.dedup();
        let b = Basis { indices: v };
        self.frame(&b).map(|_| b)
    }

    /// Every basis exactly once in lexicographic order, with `|det|` of its
    /// column submatrix.
    pub fn enumerate_bases(&self) -> Vec<(Basis, Rational)> {
        self.frames().iter().map(|f| (f.basis.clone(), f.volume.clone())).collect()
    }

    pub fn total_volume(&self) -> Rational {
        self.frames().iter().fold(Rational::zero(), |acc, f| acc + &f.volume)
    }

    /// True when every basis has volume one.
    pub fn is_unimodular(&self) -> bool {
        self.frames().iter().all(|f| f.volume.is_one())
    }

    /// The unique circuit in `B + j`, scaled so that `lambda_j = -1`.
    pub fn fundamental_circuit(&self, b: &Basis, j: usize) -> Result<SignedCircuit, MatroidError> {
        if j >= self.n_elements() {
            return Err(MatroidError::IndexOutOfRange { index: j, bound: self.n_elements() });
        }
        if b.contains(j) {
            return Err(MatroidError::IndexInBasis(j));
        }
        let frame = self.frame(b)?;
        let mut lambda = vec![Rational::zero(); self.n_elements()];
        for (x, &i) in frame.coords[j].iter().zip(&b.indices) {
            lambda[i] = x.clone();
        }
        lambda[j] = -Rational::one();
        Ok(SignedCircuit::from_lambda(lambda))
    }

    fn check_rho(&self, rho: &GenericVector) -> Result<(), MatroidError> {
        match rho {
            GenericVector::Explicit(r) if r.len() != self.n_elements() => {
                Err(MatroidError::WrongLength { expected: self.n_elements(), found: r.len() })
            }
            _ => Ok(()),
        }
    }

    fn ext_of_frame(&self, frame: &BasisFrame, rho: &GenericVector) -> Result<Vec<usize>, MatroidError> {
        let b = &frame.basis.indices;
        let mut ext = Vec::new();
        for j in 0..self.n_elements() {
            if frame.basis.contains(j) {
                continue;
            }
            let x = &frame.coords[j];
            // lambda = x on B, -1 at j; j is semi-active iff orientation flips
            let active = match rho {
                GenericVector::LexOrder => {
                    let first = b.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c)).next();
                    match first {
                        Some((i, c)) if i < j => c.is_negative(),
                        _ => true,
                    }
                }
                GenericVector::Explicit(r) => {
                    let mut s = -r[j].clone();
                    for (c, &i) in x.iter().zip(b) {
                        if !c.is_zero() {
                            s += c * &r[i];
                        }
                    }
                    if s.is_zero() {
                        let mut support: Vec<usize> =
                            b.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(&i, _)| i).collect();
                        support.push(j);
                        support.sort_unstable();
                        return Err(MatroidError::NotGeneric(support));
                    }
                    s.is_negative()
                }
            };
            if active {
                ext.push(j);
            }
        }
        Ok(ext)
    }

    /// Externally semi-active elements of `b` and their count.
    pub fn ext_semiactivity(&self, b: &Basis, rho: &GenericVector) -> Result<(Vec<usize>, usize), MatroidError> {
        self.check_rho(rho)?;
        let ext = self.ext_of_frame(self.frame(b)?, rho)?;
        let n = ext.len();
        Ok((ext, n))
    }

    /// `(basis, volume, Ext set)` for every basis, lexicographic order.
    pub fn ext_table(&self, rho: &GenericVector) -> Result<Vec<(Basis, Rational, Vec<usize>)>, MatroidError> {
        self.check_rho(rho)?;
        self.frames()
            .par_iter()
            .map(|f| Ok((f.basis.clone(), f.volume.clone(), self.ext_of_frame(f, rho)?)))
            .collect()
    }

    /// All circuits, each once, gathered from the fundamental circuits of all
    /// bases. Sorted by support.
    pub fn circuits(&self) -> Vec<SignedCircuit> {
        let mut by_support: BTreeMap<Vec<usize>, SignedCircuit> = BTreeMap::new();
        for f in self.frames() {
            for j in 0..self.n_elements() {
                if f.basis.contains(j) {
                    continue;
                }
                let c = self.fundamental_circuit(&f.basis, j).expect("frame basis and non-basis element");
                by_support.entry(c.support.clone()).or_insert(c);
            }
        }
        by_support.into_values().collect()
    }

    /// True iff `rho` lies on no hyperplane `(lambda_C, x) = 0`.
    pub fn is_generic(&self, rho: &GenericVector) -> bool {
        match rho {
            GenericVector::LexOrder => true,
            GenericVector::Explicit(r) => {
                r.len() == self.n_elements() && self.circuits().iter().all(|c| !dot(&c.lambda, r).is_zero())
            }
        }
    }
}

/// `f_A(t)` with rational coefficients.
pub fn f_poly_rational(ctx: &MatroidContext, rho: &GenericVector) -> Result<RatPolynomial, MatroidError> {
    let table = ctx.ext_table(rho)?;
    let top = ctx.n_elements() - ctx.rank();
    let mut coeffs = vec![Rational::zero(); top + 1];
    for (_, vol, ext) in table {
        coeffs[ext.len()] += vol;
    }
    Ok(RatPolynomial::new(coeffs))
}

/// `f_A(t)`; errors if a coefficient is not an integer.
pub fn f_poly(ctx: &MatroidContext, rho: &GenericVector) -> Result<IntPolynomial, MatroidError> {
    let p = f_poly_rational(ctx, rho)?;
    if let Some(k) = p.coeffs().iter().position(|c| !c.is_integer()) {
        return Err(MatroidError::NonIntegerCoefficient(k));
    }
    Ok(p.map(|c| c.to_integer()))
}

/// Uniform rational in `[-1000, 1000]` with denominator at most 16, per
/// coordinate.
pub fn random_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let den: i64 = rng.gen_range(1..=16);
            let num: i64 = rng.gen_range(-1000 * den..=1000 * den);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Draws random vectors until one is generic for `ctx` (at most
/// [`MAX_RESAMPLES`] draws) and returns `f_A` together with the vector used.
pub fn f_poly_random<R: Rng + ?Sized>(
    ctx: &MatroidContext,
    rng: &mut R,
) -> Result<(IntPolynomial, GenericVector), MatroidError> {
    for _ in 0..MAX_RESAMPLES {
        let rho = GenericVector::Explicit(random_vector(ctx.n_elements(), rng));
        match f_poly(ctx, &rho) {
            Ok(p) => return Ok((p, rho)),
            Err(MatroidError::NotGeneric(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(MatroidError::ResamplingExhausted(MAX_RESAMPLES))
}
