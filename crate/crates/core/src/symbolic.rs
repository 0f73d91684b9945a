//! A small symbolic engine for expressions `sum c * u^a * t^b * exp(-u/t)`.
//!
//! Only three rules are needed:
//!
//! * differentiation in `t` (product rule on `t^b * exp(-u/t)`),
//! * the exponential moment `int_0^inf u^a exp(-u/t) du = a! t^(a+1)`, which
//!   turns an expression into a Laurent polynomial in `t`,
//! * multiplication by a polynomial in `u`.
//!
//! With them the derivative of `int_0^inf prod_{j<m} (u+j) exp(-u/t) du` can
//! be computed two ways (differentiate the moment, or take the moment of the
//! differentiated integrand) and compared exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::comb::{lah, stirling1_from_rising_poly};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, sign, to_integer, Integer, Rational};
use crate::series::Polynomial;

/// Finite sum of terms `c * u^a * t^b`, all multiplying `exp(-u/t)`.
///
/// Like terms are merged eagerly and zero coefficients are never stored, so
/// two expressions are equal exactly when their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpLaurentExpr {
    terms: BTreeMap<(u64, i64), Rational>,
}

impl ExpLaurentExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `exp(-u/t)` itself.
    pub fn exp() -> Self {
        let mut e = Self::zero();
        e.accumulate(Rational::one(), 0, 0);
        e
    }

    /// A single term `c * u^a * t^b`; rejects `a < 0`.
    pub fn term(c: Rational, a: i64, b: i64) -> Result<Self> {
        Self::from_terms([(c, a, b)])
    }

    /// Sum of `(c, a, b)` terms, merging duplicates; rejects any `a < 0`.
    pub fn from_terms<I: IntoIterator<Item = (Rational, i64, i64)>>(terms: I) -> Result<Self> {
        let mut e = Self::zero();
        for (c, a, b) in terms {
            let a = u64::try_from(a).map_err(|_| Error::NegativeUExponent(a))?;
            e.accumulate(c, a, b);
        }
        Ok(e)
    }

    fn accumulate(&mut self, c: Rational, a: u64, b: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `u^a t^b`.
    pub fn coeff(&self, a: u64, b: i64) -> Rational {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms as `(c, a, b)` in increasing `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, u64, i64)> {
        self.terms.iter().map(|(&(a, b), c)| (c, a, b))
    }

    /// Product with `u^i`.
    pub fn mul_u_power(&self, i: u64) -> Self {
        ExpLaurentExpr {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b), c.clone()))
                .collect(),
        }
    }

    /// Product with a polynomial in `u`.
    pub fn mul_u_poly(&self, p: &Polynomial) -> Self {
        let mut out = Self::zero();
        for (i, pc) in p.coeffs().iter().enumerate() {
            if pc.is_zero() {
                continue;
            }
            for (&(a, b), c) in &self.terms {
                out.accumulate(c * pc, a + i as u64, b);
            }
        }
        out
    }

    pub fn diff_t(&self) -> Self {
        expr_diff_t(self)
    }

    pub fn moment_u(&self) -> LaurentPoly {
        expr_moment_u(self)
    }
}

impl Add for &ExpLaurentExpr {
    type Output = ExpLaurentExpr;

    fn add(self, rhs: &ExpLaurentExpr) -> ExpLaurentExpr {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.accumulate(c.clone(), a, b);
        }
        out
    }
}

impl fmt::Display for ExpLaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "(")?;
        for (i, (c, a, b)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*u^{a}*t^{b}")?;
        }
        write!(f, ")*exp(-u/t)")
    }
}

/// Finite sum `sum c * t^b` with integer exponents of either sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, b) in terms {
            p.accumulate(c, b);
        }
        p
    }

    fn accumulate(&mut self, c: Rational, b: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^b`.
    pub fn coeff(&self, b: i64) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms as `(c, b)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i64)> {
        self.terms.iter().map(|(&b, c)| (c, b))
    }

    /// `d/dt`.
    pub fn diff(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&b, c)| (c * int(b), b - 1)))
    }

    pub fn diff_n(&self, k: u64) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.diff())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&b, c)| (c * s, b)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&b, c) in &rhs.terms {
            out.accumulate(c.clone(), b);
        }
        out
    }
}

impl Mul<&Rational> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &Rational) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, b)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*t^{b}")?;
        }
        Ok(())
    }
}

/// `d/dt [c u^a t^b exp(-u/t)] = c b u^a t^(b-1) exp(-u/t) + c u^(a+1) t^(b-2) exp(-u/t)`.
pub fn expr_diff_t(e: &ExpLaurentExpr) -> ExpLaurentExpr {
    let mut out = ExpLaurentExpr::zero();
    for (&(a, b), c) in &e.terms {
        out.accumulate(c * int(b), a, b - 1);
        out.accumulate(c.clone(), a + 1, b - 2);
    }
    out
}

/// Integrates over `u` in `(0, inf)` term by term with
/// `int u^a exp(-u/t) du = a! t^(a+1)`.
pub fn expr_moment_u(e: &ExpLaurentExpr) -> LaurentPoly {
    LaurentPoly::from_terms(
        e.terms
            .iter()
            .map(|(&(a, b), c)| (c * Rational::from_integer(factorial(a)), b + a as i64 + 1)),
    )
}

/// The `k`-th `t`-derivative of `exp(-u/t)` from its closed form
/// `sum_{l=0}^{k-1} (-1)^l L(k, k-l) u^(k-l) t^(l-2k) exp(-u/t)`.
pub fn exp_derivative_lah(k: i64) -> Result<ExpLaurentExpr> {
    if k < 1 {
        return Err(Error::DerivativeOrder(k));
    }
    ExpLaurentExpr::from_terms((0..k).map(|l| {
        let c = Rational::from_integer(sign(l) * lah(k as u64, (k - l) as u64));
        (c, k - l, l - 2 * k)
    }))
}

/// `prod_{j=0}^{m-1} (u + j)` written through `s(m, i)`.
pub fn gamma_ratio_poly(m: u64) -> Polynomial {
    let s = stirling1_from_rising_poly(m);
    Polynomial::new(
        s.iter()
            .enumerate()
            .map(|(i, v)| Rational::from_integer(sign(m as i64 - i as i64) * v))
            .collect(),
    )
}

/// `(-1)^m sum_{i=0}^m (-1)^i i! s(m, i) t^(i+1)`, the closed form of
/// `int_0^inf prod_{j<m}(u+j) exp(-u/t) du`.
pub fn gamma_ratio_moment(m: u64) -> LaurentPoly {
    let s = stirling1_from_rising_poly(m);
    LaurentPoly::from_terms(s.iter().enumerate().map(|(i, v)| {
        let c = sign(m as i64 + i as i64) * factorial(i as u64) * v;
        (Rational::from_integer(c), i as i64 + 1)
    }))
}

/// Closed form of the `k`-th `t`-derivative of [`gamma_ratio_moment`]:
/// `(-1)^m sum_{i=k-1}^m (-1)^i i! (i+1)! / (i-k+1)! s(m, i) t^(i-k+1)`.
pub fn gamma_ratio_moment_derivative(m: u64, k: u64) -> LaurentPoly {
    let s = stirling1_from_rising_poly(m);
    LaurentPoly::from_terms((k.saturating_sub(1)..=m).map(|i| {
        let c = sign((m + i) as i64) * factorial(i) * factorial(i + 1) / factorial(i + 1 - k)
            * &s[i as usize];
        (Rational::from_integer(c), i as i64 - k as i64 + 1)
    }))
}

/// Runs the symbolic chain for one `(m, k)` with `1 <= k <= m + 1`.
///
/// Side A differentiates the closed-form moment `k` times. Side B multiplies
/// the closed-form `k`-th derivative of `exp(-u/t)` by `prod_{j<m}(u+j)` and
/// takes the moment. The two sides must agree as Laurent polynomials.
///
/// Side B splits by the power `u^i` of the product: the `u^i` part
/// contributes only at `t^(i-k+1)`, with coefficient
/// `(-1)^(m-i) s(m, i) * sum_{l=0}^{k-1} (-1)^l (i+k-l)! L(k, k-l)`.
/// The returned map sends each `i` in `0..=m` to that bracketed sum, read off
/// the moment of `u^i` times the derivative. Wherever `s(m, i) != 0` it is
/// checked against the side A coefficient.
pub fn route6_coefficient_chain(m: i64, k: i64) -> Result<BTreeMap<i64, Integer>> {
    if m < 1 || k < 1 || k > m + 1 {
        return Err(Error::ChainRange { m, k });
    }
    let mismatch = |detail: String| Error::Mismatch {
        route: "r6",
        detail,
    };
    let (mu, ku) = (m as u64, k as u64);

    let poly = gamma_ratio_poly(mu);
    let closed_moment = gamma_ratio_moment(mu);
    let integrand = ExpLaurentExpr::exp().mul_u_poly(&poly);
    if integrand.moment_u() != closed_moment {
        return Err(mismatch(format!(
            "moment of the rising product differs at m = {m}"
        )));
    }

    let side_a = closed_moment.diff_n(ku);
    if side_a != gamma_ratio_moment_derivative(mu, ku) {
        return Err(mismatch(format!(
            "{k}-fold derivative differs from closed form at m = {m}"
        )));
    }

    let derivative = exp_derivative_lah(k)?;
    let side_b = derivative.mul_u_poly(&poly).moment_u();
    if side_a != side_b {
        return Err(mismatch(format!(
            "sides differ at m = {m}, k = {k}: {side_a} vs {side_b}"
        )));
    }

    let stirling = stirling1_from_rising_poly(mu);
    let mut brackets = BTreeMap::new();
    for i in 0..=m {
        let exponent = i - k + 1;
        let piece = derivative.mul_u_power(i as u64).moment_u();
        if piece.terms().any(|(_, b)| b != exponent) {
            return Err(mismatch(format!("u^{i} part leaks outside t^{exponent}")));
        }
        let bracket = to_integer(&piece.coeff(exponent))
            .ok_or_else(|| mismatch(format!("non-integral bracket at i = {i}")))?;

        let s = &stirling[i as usize];
        if !s.is_zero() {
            let weight = Rational::from_integer(sign(m - i) * s);
            if side_a.coeff(exponent) != weight * Rational::from_integer(bracket.clone()) {
                return Err(mismatch(format!(
                    "coefficient of t^{exponent} disagrees with bracket at i = {i}"
                )));
            }
        }
        brackets.insert(i, bracket);
    }
    Ok(brackets)
}
