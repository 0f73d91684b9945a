//! Truncated power series and dense polynomials over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{int, Integer, Rational};

/// A power series known through `t^order`.
///
/// Binary operations between series of different orders truncate to the
/// smaller order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector, which has no order.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least t^0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`, or `None` past the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries::new(self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `self^e` by repeated multiplication; `self^0` is `1`.
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| series_mul(&acc, self))
    }
}

/// Cauchy product truncated to the smaller of the two orders.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order().min(b.order());
    let coeffs = (0..=order)
        .map(|n| {
            (0..=n)
                .filter(|&i| !a.coeffs[i].is_zero())
                .map(|i| &a.coeffs[i] * &b.coeffs[n - i])
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `ln(1 + t)` through `t^order`: `c_0 = 0`, `c_n = (-1)^(n+1) / n`.
pub fn series_log1p(order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|n| match n {
            0 => Rational::zero(),
            n if n % 2 == 1 => Rational::new(Integer::one(), Integer::from(n)),
            n => Rational::new(-Integer::one(), Integer::from(n)),
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `(1 + x)^e` through `x^order` for any integer `e`, negative included.
pub fn series_binomial_power(e: i64, order: usize) -> TruncatedSeries {
    // C(e, i+1) = C(e, i) (e-i) / (i+1)
    let mut c = Integer::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for i in 0..=order as i64 {
        coeffs.push(Rational::from_integer(c.clone()));
        c = c * (e - i) / (i + 1);
    }
    TruncatedSeries::new(coeffs)
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        series_mul(self, rhs)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries::new(
            (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        )
    }
}

/// Dense polynomial with trailing zeros trimmed. The zero polynomial has no
/// coefficients and degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(int).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_integers([0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        poly_eval(self, x)
    }

    /// `<x>_0, <x>_1, ..., <x>_n`, each built from the previous one.
    pub fn falling_factorial_basis(n: u64) -> Vec<Self> {
        let mut basis = vec![Self::constant(Rational::one())];
        for j in 0..n as i64 {
            let next = poly_mul(&basis[j as usize], &Self::from_integers([-j, 1]));
            basis.push(next);
        }
        basis
    }

    /// `x (x+1) ... (x+n-1)`, the rising factorial as a polynomial.
    pub fn rising_factorial(n: u64) -> Self {
        (0..n as i64).fold(Self::constant(Rational::one()), |acc, j| {
            poly_mul(&acc, &Self::from_integers([j, 1]))
        })
    }

    /// `x (x-1) ... (x-n+1)`, the falling factorial as a polynomial.
    pub fn falling_factorial(n: u64) -> Self {
        (0..n as i64).fold(Self::constant(Rational::one()), |acc, j| {
            poly_mul(&acc, &Self::from_integers([-j, 1]))
        })
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::new(out)
}

pub fn poly_eval(p: &Polynomial, x: &Rational) -> Rational {
    p.coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        poly_mul(self, rhs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, rising};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(Integer::from(n), Integer::from(d))
    }

    fn ints(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn product_of_conjugate_binomials() {
        let a = ints(&[1, 1, 0, 0]);
        let b = ints(&[1, -1, 0, 0]);
        assert_eq!(series_mul(&a, &b), ints(&[1, 0, -1, 0]));
    }

    #[test]
    fn one_is_multiplicative_identity() {
        let a = ints(&[3, -1, 4, 1, -5]);
        assert_eq!(&a * &TruncatedSeries::one(4), a);
    }

    #[test]
    fn mul_truncates_to_smaller_order() {
        let a = ints(&[1, 1, 1, 1, 1]);
        let b = ints(&[1, 1]);
        let p = series_mul(&a, &b);
        assert_eq!(p.order(), 1);
        assert_eq!(p, ints(&[1, 2]));
    }

    #[test]
    fn log_squared_over_two() {
        let l = series_log1p(5);
        let half_sq = series_mul(&l, &l).scale(&q(1, 2));
        assert_eq!(half_sq.coeff(3), Some(&q(-1, 2)));
    }

    #[test]
    fn log1p_coefficients() {
        assert_eq!(
            series_log1p(3).coeffs(),
            &[int(0), int(1), q(-1, 2), q(1, 3)]
        );
        assert_eq!(series_log1p(0).coeffs(), &[int(0)]);
        assert_eq!(series_log1p(2).coeff(2), Some(&q(-1, 2)));
    }

    #[test]
    fn binomial_power_examples() {
        assert_eq!(series_binomial_power(0, 3), ints(&[1, 0, 0, 0]));
        assert_eq!(series_binomial_power(2, 3), ints(&[1, 2, 1, 0]));
        assert_eq!(series_binomial_power(-2, 3), ints(&[1, -2, 3, -4]));
    }

    #[test]
    fn negative_power_matches_alternating_expansion() {
        // 1/(1+x)^(d+1) = sum_i (-1)^i C(i+d, i) x^i
        for d in 0..6i64 {
            let s = series_binomial_power(-(d + 1), 10);
            for i in 0..=10i64 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let expect = int(sign) * Rational::from_integer(binomial(i + d, i));
                assert_eq!(s.coeff(i as usize), Some(&expect));
            }
        }
    }

    #[test]
    fn polynomial_examples() {
        let p = Polynomial::from_integers([0, 1, 1]);
        assert_eq!(poly_eval(&p, &int(-3)), int(6));
        assert_eq!(poly_eval(&p, &int(-3)), rising(&int(-3), 2));
        assert!(poly_mul(&p, &Polynomial::zero()).is_zero());
        assert_eq!(
            poly_mul(&Polynomial::x(), &Polynomial::from_integers([1, 1])),
            p
        );
        assert_eq!(Polynomial::rising_factorial(2), p);
    }

    #[test]
    fn falling_basis_matches_direct_products() {
        let basis = Polynomial::falling_factorial_basis(6);
        for (n, p) in basis.iter().enumerate() {
            assert_eq!(p, &Polynomial::falling_factorial(n as u64));
        }
    }

    #[test]
    fn zero_polynomial_degree() {
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!(Polynomial::from_integers([0, 0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::from_integers([5]).degree(), 0);
    }

    fn series_strategy() -> impl Strategy<Value = TruncatedSeries> {
        (0usize..=16).prop_flat_map(|order| {
            prop::collection::vec((-20i64..20, 1i64..6), order + 1)
                .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(n, d)| q(n, d)).collect()))
        })
    }

    proptest! {
        #[test]
        fn mul_commutes(a in series_strategy(), b in series_strategy()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_associates(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn binomial_powers_add_exponents(e1 in -6i64..=6, e2 in -6i64..=6, order in 0usize..12) {
            let lhs = series_mul(&series_binomial_power(e1, order), &series_binomial_power(e2, order));
            prop_assert_eq!(lhs, series_binomial_power(e1 + e2, order));
        }

        #[test]
        fn rising_polynomial_evaluates_to_rising(n in 0u64..=12, num in -40i64..40, den in 1i64..9) {
            let x = q(num, den);
            prop_assert_eq!(Polynomial::rising_factorial(n).eval(&x), rising(&x, n));
        }
    }
}
