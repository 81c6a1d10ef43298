//! Exact rational scalars and dense rational matrices.
//!
//! Everything here works over arbitrary-precision rationals: determinants go
//! through fraction-free (Bareiss) elimination on an integer-scaled copy,
//! linear systems through exact reduced row echelon form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("row selection of size {rows} does not match column selection of size {cols}")]
    NonSquareSelection { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("column labels must be distinct and one per column")]
    BadLabels,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational, MatrixError> {
    let bad = || MatrixError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if !q.is_positive() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense row-major matrix of rationals with optional column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols], labels: None }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but keeps an explicit column count,
    /// which matters for matrices with zero rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, MatrixError> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { rows: n_rows, cols, entries, labels: None })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_rows_with_cols(data, cols).expect("ragged integer rows")
    }

    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(MatrixError::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MatrixError> {
        let mut seen = std::collections::HashSet::new();
        if labels.len() != self.cols || !labels.iter().all(|l| seen.insert(l.clone())) {
            return Err(MatrixError::BadLabels);
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(k, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if x.len() != self.cols {
            return Err(MatrixError::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Result of [`solve`]: one particular solution plus a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact solution of `A x = b`. `Ok(None)` means the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<Option<Solution>, MatrixError> {
    if b.len() != a.rows {
        return Err(MatrixError::DimensionMismatch { expected: a.rows, found: b.len() });
    }
    let n = a.cols;
    let mut aug: Vec<Vec<Rational>> = (0..a.rows)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Ok(Some(Solution { particular, kernel }))
}

pub fn rank(a: &RationalMatrix) -> usize {
    let mut m: Vec<Vec<Rational>> = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
    rref(&mut m, a.cols).len()
}

/// Indices of a maximal set of linearly independent rows (first-found order).
pub fn independent_rows(a: &RationalMatrix) -> Vec<usize> {
    let t = a.transpose();
    let mut m: Vec<Vec<Rational>> = (0..t.rows).map(|i| t.row(i).to_vec()).collect();
    rref(&mut m, t.cols)
}

/// Fraction-free Bareiss determinant of a square integer matrix.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant of a square rational matrix given as rows. Each row is scaled
/// to integers by the lcm of its denominators before Bareiss elimination.
pub fn det_rows(rows: &[Vec<Rational>]) -> Rational {
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    Rational::new(bareiss_det(int_rows), scale)
}

pub fn determinant(a: &RationalMatrix) -> Result<Rational, MatrixError> {
    if a.rows != a.cols {
        return Err(MatrixError::NonSquareSelection { rows: a.rows, cols: a.cols });
    }
    let rows: Vec<Vec<Rational>> = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
    Ok(det_rows(&rows))
}

/// Determinant of the square submatrix on `rows` x `cols`.
pub fn minor(a: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Result<Rational, MatrixError> {
    if rows.len() != cols.len() {
        return Err(MatrixError::NonSquareSelection { rows: rows.len(), cols: cols.len() });
    }
    for &i in rows {
        if i >= a.rows {
            return Err(MatrixError::IndexOutOfRange { index: i, bound: a.rows });
        }
    }
    for &j in cols {
        if j >= a.cols {
            return Err(MatrixError::IndexOutOfRange { index: j, bound: a.cols });
        }
    }
    let sub: Vec<Vec<Rational>> =
        rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
    Ok(det_rows(&sub))
}

/// Maximal minor on the given column set (all rows).
pub fn max_minor(a: &RationalMatrix, cols: &[usize]) -> Result<Rational, MatrixError> {
    let rows: Vec<usize> = (0..a.rows).collect();
    minor(a, &rows, cols)
}

/// Linear form certifying flatness: `h . a_i = 1` for every column `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatWitness {
    pub h: Vec<Rational>,
}

impl FlatWitness {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.h, x)
    }

    pub fn certifies(&self, a: &RationalMatrix) -> bool {
        self.h.len() == a.rows() && (0..a.cols()).all(|j| self.eval(&a.column(j)).is_one())
    }
}

/// Solves `h A = (1, ..., 1)`; `None` when the matrix is not flat. When the
/// solution is not unique the particular solution from row reduction is
/// returned.
pub fn flat_witness(a: &RationalMatrix) -> Option<FlatWitness> {
    let ones = vec![Rational::one(); a.cols()];
    let sol = solve(&a.transpose(), &ones).expect("dimensions agree by construction")?;
    Some(FlatWitness { h: sol.particular })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64(rows)
    }

    #[test]
    fn minor_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(minor(&id, &[0, 1], &[0, 1]).unwrap(), rat(1));
        assert_eq!(determinant(&m(&[vec![3, 1], vec![1, 1]])).unwrap(), rat(2));
        let a = m(&[vec![3, 2, 1], vec![1, 1, 1]]);
        assert_eq!(minor(&a, &[0, 1], &[0, 2]).unwrap(), rat(2));
    }

    #[test]
    fn minor_errors() {
        let a = m(&[vec![3, 2, 1], vec![1, 1, 1]]);
        assert_eq!(
            minor(&a, &[0, 1], &[0]),
            Err(MatrixError::NonSquareSelection { rows: 2, cols: 1 })
        );
        assert_eq!(minor(&a, &[0, 2], &[0, 1]), Err(MatrixError::IndexOutOfRange { index: 2, bound: 2 }));
        assert_eq!(minor(&a, &[0], &[3]), Err(MatrixError::IndexOutOfRange { index: 3, bound: 3 }));
    }

    #[test]
    fn rational_determinant() {
        let a = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(2, 5), rat(7)],
        ])
        .unwrap();
        // 1/2 * 7 - 1/3 * 2/5
        assert_eq!(determinant(&a).unwrap(), ratio(7, 2) - ratio(2, 15));
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(3);
        let b = vec![rat(4), ratio(-1, 2), rat(0)];
        let s = solve(&id, &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let s = solve(&m(&[vec![1, 1]]), &[rat(1)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![rat(1), rat(0)]);
        assert_eq!(s.kernel, vec![vec![rat(-1), rat(1)]]);

        assert_eq!(solve(&m(&[vec![1], vec![2]]), &[rat(1), rat(1)]).unwrap(), None);
        assert!(matches!(
            solve(&m(&[vec![1], vec![2]]), &[rat(1)]),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn flat_witness_examples() {
        let w = flat_witness(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(w.h, vec![rat(1), rat(1)]);

        let a = RationalMatrix::from_rows(vec![
            vec![rat(1), rat(0), ratio(1, 2)],
            vec![rat(0), rat(1), ratio(1, 2)],
        ])
        .unwrap();
        let w = flat_witness(&a).unwrap();
        assert_eq!(w.h, vec![rat(1), rat(1)]);
        assert!(w.certifies(&a));

        assert!(flat_witness(&m(&[vec![1, 2], vec![0, 0]])).is_none());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::zeros(2, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        // incidence matrix of the path 0-1-2-3 plus chord 0-3 (connected, n = 4)
        let inc = m(&[
            vec![1, 0, 0, 1],
            vec![-1, 1, 0, 0],
            vec![0, -1, 1, 0],
            vec![0, 0, -1, -1],
        ]);
        assert_eq!(rank(&inc), 3);
        assert_eq!(independent_rows(&inc), vec![0, 1, 2]);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn labels_must_be_distinct() {
        let a = RationalMatrix::identity(2);
        assert!(a.clone().with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(a.clone().with_labels(vec!["a".into()]).is_err());
        assert!(a.with_labels(vec!["a".into(), "b".into()]).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = RationalMatrix> {
            proptest::collection::vec(-5i64..=5, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                RationalMatrix::from_i64(&rows)
            })
        }

        proptest! {
            #[test]
            fn swapping_columns_negates_minor(a in small_matrix(3, 4), i in 0usize..3, j in 0usize..3) {
                prop_assume!(i != j);
                let cols = vec![0usize, 1, 3];
                let mut swapped = cols.clone();
                swapped.swap(i, j);
                let d1 = minor(&a, &[0, 1, 2], &cols).unwrap();
                let d2 = minor(&a, &[0, 1, 2], &swapped).unwrap();
                prop_assert_eq!(d1, -d2);
            }

            #[test]
            fn solve_reproduces_rhs(a in small_matrix(3, 4), b in proptest::collection::vec(-6i64..=6, 3)) {
                let b: Vec<Rational> = b.into_iter().map(rat).collect();
                if let Some(sol) = solve(&a, &b).unwrap() {
                    prop_assert_eq!(a.mul_vec(&sol.particular).unwrap(), b.clone());
                    for k in &sol.kernel {
                        prop_assert!(a.mul_vec(k).unwrap().iter().all(Zero::is_zero));
                    }
                    prop_assert_eq!(sol.kernel.len(), 4 - rank(&a));
                }
            }

            #[test]
            fn witness_certifies(a in small_matrix(2, 4)) {
                if let Some(w) = flat_witness(&a) {
                    prop_assert!(w.certifies(&a));
                }
            }
        }
    }
}
