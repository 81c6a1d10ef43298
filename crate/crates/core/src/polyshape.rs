//! Univariate polynomials, q-numbers and coefficient-shape predicates.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, Zero};

use crate::exactnum::{Rational, RationalMatrix};
use crate::lpexact::{lp_solve, LinearProgram, LpStatus, VarBound};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `t^i`.
/// Stored without trailing zeros, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<Rational>;

impl<T: Clone + Num> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `t = 1`.
    pub fn sum_coeffs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// `t^n p(1/t)`; requires `n >= degree`.
    pub fn reverse_in_degree(&self, n: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n), "reversal degree below polynomial degree");
        let mut v = vec![T::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    /// Reversal of the stored coefficient list.
    pub fn reverse(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(d) => self.reverse_in_degree(d),
        }
    }

    /// Drops the factor `t^k` of lowest order.
    pub fn strip_low_zeros(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Num> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Num> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl IntPolynomial {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        self.map(|c| Rational::from_integer(c.clone()))
    }

    /// The representative of `p` up to `±t^k` with nonzero constant term and
    /// positive leading coefficient.
    pub fn normalize_unit_monomial(&self) -> Self {
        let p = self.strip_low_zeros();
        match p.coeffs.last() {
            Some(c) if c.is_negative() => p.map(|x| -x),
            _ => p,
        }
    }
}

impl RatPolynomial {
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(self.map(|c| c.to_integer()))
        } else {
            None
        }
    }
}

impl<T: Clone + Num + fmt::Display + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<T: Clone + Num + fmt::Display + Signed> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("q-number parts must be positive")]
    NonPositivePart,
}

/// `[m]_q = 1 + q + ... + q^{m-1}`.
pub fn q_number(m: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); m])
}

/// Product of q-numbers `[m_1]_q ... [m_k]_q`.
pub fn q_product(ms: &[usize]) -> Result<IntPolynomial, ShapeError> {
    if ms.contains(&0) {
        return Err(ShapeError::NonPositivePart);
    }
    Ok(ms.iter().fold(IntPolynomial::one(), |acc, &m| &acc * &q_number(m)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ShapeReport {
    pub palindromic: bool,
    pub nonnegative: bool,
    pub no_internal_zeros: bool,
    pub log_concave: bool,
    pub trapezoidal: bool,
}

fn support<T: Clone + Num>(c: &[T]) -> &[T] {
    let lo = c.iter().take_while(|x| x.is_zero()).count();
    let hi = c.len() - c.iter().rev().take_while(|x| x.is_zero()).count();
    if lo >= hi {
        &[]
    } else {
        &c[lo..hi]
    }
}

/// Strictly increasing, then a constant plateau, then strictly decreasing.
pub fn is_trapezoidal<T: Clone + Num + PartialOrd>(seq: &[T]) -> bool {
    let mut i = 1;
    while i < seq.len() && seq[i - 1] < seq[i] {
        i += 1;
    }
    while i < seq.len() && seq[i - 1] == seq[i] {
        i += 1;
    }
    while i < seq.len() && seq[i - 1] > seq[i] {
        i += 1;
    }
    i >= seq.len()
}

pub fn is_log_concave<T: Clone + Num + PartialOrd>(seq: &[T]) -> bool {
    seq.windows(3).all(|w| w[1].clone() * w[1].clone() >= w[0].clone() * w[2].clone())
}

/// `2 b_i > b_{i-1} + b_{i+1}` at every interior index.
pub fn is_strictly_concave<T: Clone + Num + PartialOrd>(seq: &[T]) -> bool {
    seq.windows(3).all(|w| w[1].clone() + w[1].clone() > w[0].clone() + w[2].clone())
}

/// Shape flags of the coefficient sequence. Log-concavity and
/// trapezoidality are judged on the support (outer zeros dropped).
pub fn shape_report<T: Clone + Num + PartialOrd + Signed>(p: &Poly<T>) -> ShapeReport {
    let c = p.coeffs();
    let s = support(c);
    ShapeReport {
        palindromic: c.iter().eq(c.iter().rev()),
        nonnegative: c.iter().all(|x| !x.is_negative()),
        no_internal_zeros: s.iter().all(|x| !x.is_zero()),
        log_concave: is_log_concave(s),
        trapezoidal: is_trapezoidal(s),
    }
}

/// Positive combination of q-number products certifying `d`-box-positivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCertificate {
    pub degree_d: usize,
    pub terms: Vec<(Vec<usize>, Rational)>,
}

impl BoxCertificate {
    pub fn expand(&self) -> RatPolynomial {
        self.terms.iter().fold(RatPolynomial::zero(), |acc, (ms, c)| {
            let q = q_product(ms).expect("certificate parts are positive").to_rational();
            &acc + &q.scale(c)
        })
    }

    /// Every part positive, every composition of the same total, every
    /// coefficient positive, and the expansion equals `p`.
    pub fn certifies(&self, p: &RatPolynomial) -> bool {
        let Some(deg) = p.degree() else { return false };
        self.terms.iter().all(|(ms, c)| {
            ms.len() == self.degree_d && ms.iter().all(|&m| m > 0) && ms.iter().sum::<usize>() == deg + self.degree_d && c.is_positive()
        }) && self.expand() == *p
    }
}

/// All compositions of `total` into `parts` positive integers, lex order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        for first in 1..=total - (parts - 1) {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Searches for a `d`-box-positivity certificate by one exact feasibility LP
/// over all compositions of `deg + d` into `d` parts. `None` when no
/// nonnegative combination exists.
pub fn box_certificate_rational(p: &RatPolynomial, d: usize) -> Option<BoxCertificate> {
    let deg = p.degree()?;
    if d == 0 || p.coeffs().iter().any(|c| c.is_negative()) {
        return None;
    }
    let comps = compositions(deg + d, d);
    let columns: Vec<Vec<Rational>> = comps
        .iter()
        .map(|ms| {
            let q = q_product(ms).expect("compositions have positive parts");
            (0..=deg).map(|k| Rational::from_integer(q.coeff(k))).collect()
        })
        .collect();
    let a = RationalMatrix::from_columns(&columns, deg + 1).expect("uniform column length");
    let rhs: Vec<Rational> = (0..=deg).map(|k| p.coeff(k)).collect();
    let lp = LinearProgram::new(vec![Rational::zero(); comps.len()], a, rhs, vec![VarBound::nonneg(); comps.len()])
        .expect("well-formed by construction");
    let out = lp_solve(&lp).expect("validated program");
    if out.status != LpStatus::Optimal {
        return None;
    }
    let witness = out.witness.expect("optimal outcomes carry a witness");
    let terms = comps.into_iter().zip(witness).filter(|(_, c)| c.is_positive()).collect();
    let cert = BoxCertificate { degree_d: d, terms };
    assert!(cert.certifies(p), "box certificate failed re-expansion");
    Some(cert)
}

pub fn box_certificate(p: &IntPolynomial, d: usize) -> Option<BoxCertificate> {
    box_certificate_rational(&p.to_rational(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn normalization_and_arithmetic() {
        assert_eq!(ip(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(ip(&[0, 0]).is_zero());
        assert_eq!(&ip(&[1, 1]) * &ip(&[1, 1]), ip(&[1, 2, 1]));
        assert_eq!(&ip(&[1, 1]) + &ip(&[-1, -1]), IntPolynomial::zero());
        assert_eq!(ip(&[1, 2]).shift(2), ip(&[0, 0, 1, 2]));
        assert_eq!(ip(&[1, 2]).reverse_in_degree(3), ip(&[0, 0, 2, 1]));
        assert_eq!(ip(&[0, 0, -1, -3]).normalize_unit_monomial(), ip(&[1, 3]));
        assert_eq!(ip(&[3, -54, 1]).to_string(), "3 - 54t + t^2");
    }

    #[test]
    fn q_product_examples() {
        assert_eq!(q_product(&[1]).unwrap(), ip(&[1]));
        assert_eq!(q_product(&[2, 2]).unwrap(), ip(&[1, 2, 1]));
        assert_eq!(q_product(&[1, 3]).unwrap(), ip(&[1, 1, 1]));
        assert_eq!(q_product(&[2, 0]), Err(ShapeError::NonPositivePart));
        assert_eq!(q_product(&[]).unwrap(), ip(&[1]));
    }

    #[test]
    fn shape_examples() {
        let r = shape_report(&ip(&[16, 54, 77, 54, 16]));
        assert!(r.palindromic && r.log_concave && r.trapezoidal && r.no_internal_zeros && r.nonnegative);

        let r = shape_report(&ip(&[1, 0, 1]));
        assert!(r.palindromic);
        assert!(!r.no_internal_zeros);
        assert!(!r.trapezoidal);

        let r = shape_report(&ip(&[1, 2, 2, 1]));
        assert!(r.trapezoidal && r.log_concave && r.palindromic);

        // trapezoidal (plateau at top only) but not log-concave
        let r = shape_report(&ip(&[1, 2, 10, 2, 1]));
        assert!(r.trapezoidal && !r.log_concave);

        // plateau below the top is not trapezoidal
        assert!(!is_trapezoidal(&[1, 1, 2, 1]));
        assert!(is_trapezoidal::<i64>(&[]));
        assert!(is_trapezoidal(&[3, 3, 3]));
    }

    #[test]
    fn strict_concavity() {
        assert!(is_strictly_concave(&[2, 4, 5, 4, 2]));
        assert!(!is_strictly_concave(&[1, 2, 3, 2, 1]));
    }

    #[test]
    fn box_certificate_examples() {
        let p = ip(&[2, 2]);
        let cert = box_certificate(&p, 2).unwrap();
        assert_eq!(cert.expand(), p.to_rational());

        assert!(box_certificate(&ip(&[1, 0, 1]), 2).is_none());

        let n = 5;
        let cert = box_certificate(&q_number(n), 1).unwrap();
        assert_eq!(cert.terms, vec![(vec![n], rat(1))]);
    }

    #[test]
    fn box_certificate_rejects_bad_inputs() {
        assert!(box_certificate(&IntPolynomial::zero(), 2).is_none());
        assert!(box_certificate(&ip(&[1, -1, 1]), 2).is_none());
        assert!(box_certificate(&ip(&[1, 1]), 0).is_none());
        // q is not a combination of products with constant term one
        assert!(box_certificate(&ip(&[0, 1]), 1).is_none());
    }

    #[test]
    fn rational_box_certificate() {
        let p = RatPolynomial::new(vec![ratio(3, 2), ratio(3, 2)]);
        let cert = box_certificate_rational(&p, 2).unwrap();
        assert!(cert.certifies(&p));
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        // C(7, 2) = 21
        assert_eq!(compositions(8, 3).len(), 21);
        assert!(compositions(2, 3).is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn q_product_is_symmetric(ms in proptest::collection::vec(1usize..6, 1..5), seed in any::<u64>()) {
                use rand::seq::SliceRandom;
                use rand::SeedableRng;
                let mut shuffled = ms.clone();
                shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let p = q_product(&ms).unwrap();
                prop_assert_eq!(&p, &q_product(&shuffled).unwrap());
                prop_assert_eq!(p.degree(), Some(ms.iter().sum::<usize>() - ms.len()));
            }

            #[test]
            fn reversal_keeps_flags_of_palindromes(half in proptest::collection::vec(0i64..20, 1..5), mid in 0i64..20) {
                let mut c = half.clone();
                c.push(mid);
                c.extend(half.iter().rev());
                prop_assume!(c[0] != 0);
                let p = ip(&c);
                prop_assert_eq!(shape_report(&p), shape_report(&p.reverse()));
            }

            #[test]
            fn log_concave_implies_trapezoidal(c in proptest::collection::vec(0i64..30, 0..8)) {
                let r = shape_report(&ip(&c));
                if r.log_concave && r.no_internal_zeros && r.nonnegative {
                    prop_assert!(r.trapezoidal);
                }
            }

            #[test]
            fn box_positive_implies_palindromic_trapezoidal(
                terms in proptest::collection::vec((1usize..5, 1i64..5), 1..4),
            ) {
                // products [m]_q [6 - m]_q with positive weights
                let p = terms.iter().fold(IntPolynomial::zero(), |acc, &(m, w)| {
                    &acc + &q_product(&[m, 6 - m]).unwrap().scale(&BigInt::from(w))
                });
                let cert = box_certificate(&p, 2).expect("constructed box-positive");
                prop_assert_eq!(cert.expand(), p.to_rational());
                let r = shape_report(&p);
                prop_assert!(r.palindromic && r.trapezoidal);
            }
        }
    }
}
