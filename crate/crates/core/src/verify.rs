//! Six independent computations of
//! `sum_{l=1}^{k} (-1)^l (n+l)! L(k,l)` together with the classical
//! identities they lean on.
//!
//! Every route returns its value of that left-hand sum, so all of them are
//! compared against the single closed form [`rhs_reference`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::comb::lah;
use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, falling, int, reciprocal_factorial_weight, rising, sign, to_integer,
    Integer, Rational,
};
use crate::series::{series_binomial_power, series_mul, Polynomial};
use crate::symbolic::route6_coefficient_chain;

/// A `(k, n)` pair with `k >= 2` and `n >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdentityInstance {
    k: i64,
    n: i64,
}

impl IdentityInstance {
    pub fn new(k: i64, n: i64) -> Result<Self> {
        if k < 2 || n < 0 {
            return Err(Error::InvalidInstance { k, n });
        }
        Ok(IdentityInstance { k, n })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn ku(&self) -> u64 {
        self.k as u64
    }

    fn nu(&self) -> u64 {
        self.n as u64
    }
}

/// `0` for `n <= k-2`, otherwise `(-1)^k n! (n+1)! / (n-k+1)!`.
pub fn rhs_reference(inst: &IdentityInstance) -> Integer {
    let (k, n) = (inst.k, inst.n);
    if n <= k - 2 {
        return Integer::zero();
    }
    sign(k) * factorial(inst.nu()) * factorial(inst.nu() + 1) / factorial((n - k + 1) as u64)
}

/// The left-hand sum evaluated literally.
pub fn lhs_direct(inst: &IdentityInstance) -> Integer {
    (1..=inst.ku())
        .map(|l| sign(l as i64) * factorial(inst.nu() + l) * lah(inst.ku(), l))
        .sum()
}

/// Both sides of
/// `sum_i C(l, m+i) C(s+i, n) (-1)^i = (-1)^(l+m) C(s-m, n-l)`.
pub fn gkp_identity(l: u64, m: i64, s: i64, n: i64) -> (Integer, Integer) {
    let l = l as i64;
    // C(l, m+i) vanishes unless 0 <= m+i <= l
    let lhs = (-m..=l - m)
        .map(|i| sign(i) * binomial(l, m + i) * binomial(s + i, n))
        .sum();
    let rhs = sign(l + m) * binomial(s - m, n - l);
    (lhs, rhs)
}

/// Both sides of `sum_j C(r, m+j) C(s, n-j) = C(r+s, m+n)` for `r >= 0`.
pub fn chu_vandermonde(r: u64, s: i64, m: i64, n: i64) -> (Integer, Integer) {
    let r = r as i64;
    let lhs = (-m..=r - m)
        .map(|j| binomial(r, m + j) * binomial(s, n - j))
        .sum();
    (lhs, binomial(r + s, m + n))
}

/// `T(h)(k) = sum_{l=0}^{k} C(k, l) (-1)^l h(l)`. `T` is an involution.
pub fn binomial_inversion(h: &[Integer]) -> Vec<Integer> {
    (0..h.len())
        .map(|k| {
            // walk row k of Pascal's triangle with alternating sign folded in
            let mut c = Integer::one();
            let mut acc = Integer::zero();
            for (l, v) in h[..=k].iter().enumerate() {
                acc += &c * v;
                c = -c * (k - l) / (l + 1);
            }
            acc
        })
        .collect()
}

fn check_hypergeom_params(a: i64, c: i64) -> Result<()> {
    if a > 0 {
        return Err(Error::NonTerminating(a));
    }
    if c < 1 {
        return Err(Error::ForbiddenLowerParameter(c));
    }
    Ok(())
}

/// `2F1(a, b; c; 1)` summed term by term; needs `a <= 0` and `c >= 1`.
pub fn hypergeom_2f1_terminating(a: i64, b: i64, c: i64) -> Result<Rational> {
    check_hypergeom_params(a, c)?;
    // term(l+1) / term(l) = (a+l)(b+l) / ((c+l)(l+1)); the sum stops once
    // the factor a+l reaches zero
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for l in 0..=-a {
        sum += &term;
        term = term * int((a + l) * (b + l)) / int((c + l) * (l + 1));
    }
    Ok(sum)
}

/// Chu-Vandermonde closed form `2F1(-N, b; c; 1) = (c-b)_N / (c)_N`.
pub fn chu_vandermonde_closed(a: i64, b: i64, c: i64) -> Result<Rational> {
    check_hypergeom_params(a, c)?;
    let terms = (-a) as u64;
    Ok(rising(&int(c - b), terms) / rising(&int(c), terms))
}

fn mismatch(route: &'static str, detail: String) -> Error {
    Error::Mismatch { route, detail }
}

/// Divide through by `k! n!` to get
/// `sum_l (-1)^l C(n+l, n) C(k-1, l-1) = (-1)^k C(n+1, k)`, which is the
/// general alternating binomial identity at `l = k-1`, `m = -1`, `s = n`.
pub fn route1_gkp(inst: &IdentityInstance) -> Result<Integer> {
    let (k, n) = (inst.k, inst.n);
    let reduced: Integer = (1..=k)
        .map(|l| sign(l) * binomial(n + l, n) * binomial(k - 1, l - 1))
        .sum();
    let (lhs, rhs) = gkp_identity((k - 1) as u64, -1, n, n);
    if reduced != lhs {
        return Err(mismatch(
            "r1",
            format!("substituted sum {lhs} != reduced sum {reduced}"),
        ));
    }
    if lhs != rhs {
        return Err(mismatch(
            "r1",
            format!("alternating identity fails: {lhs} != {rhs}"),
        ));
    }
    if rhs != sign(k) * binomial(n + 1, k) {
        return Err(mismatch("r1", format!("{rhs} != (-1)^k C(n+1, k)")));
    }
    Ok(rhs * factorial(inst.ku()) * factorial(inst.nu()))
}

/// Factorial generating function `(-1)^k <-t>_k = sum_l L(k,l) <t>_l`,
/// checked as a polynomial identity in `t` and evaluated at `t = -(n+1)`.
pub fn route2_factorial_gf(inst: &IdentityInstance) -> Result<Integer> {
    let (k, n) = (inst.ku(), inst.n);
    let left = Polynomial::falling_factorial(k)
        .reflect()
        .scale(&Rational::from_integer(sign(k as i64)));
    let basis = Polynomial::falling_factorial_basis(k);
    let right = basis
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (l, p)| {
            &acc + &p.scale(&Rational::from_integer(lah(k, l as u64)))
        });
    if left != right {
        return Err(mismatch(
            "r2",
            format!("generating function fails for row {k}: {left} != {right}"),
        ));
    }

    let t = int(-(n + 1));
    let nf = Rational::from_integer(factorial(inst.nu()));
    // <-n-1>_l n! = (-1)^l (n+l)!, so n! times the right side is the left-hand sum
    let value = &nf * left.eval(&t);
    let expected = Rational::from_integer(sign(k as i64)) * &nf * falling(&int(n + 1), k);
    if value != expected {
        return Err(mismatch(
            "r2",
            format!("{value} != (-1)^k n! <n+1>_k = {expected}"),
        ));
    }
    let mut fall = Rational::one();
    let mut summed = Rational::zero();
    for l in 0..=k {
        summed += Rational::from_integer(lah(k, l)) * &fall * &nf;
        fall *= &t - int(l as i64);
    }
    if summed != value {
        return Err(mismatch("r2", format!("expanded side {summed} != {value}")));
    }
    to_integer(&value).ok_or_else(|| mismatch("r2", format!("non-integral value {value}")))
}

/// Coefficient of `x^k` in `(1+x)^-(n+1) (1+x)^(k-1) = (1+x)^-(n-k+2)`.
pub fn route3_convolution(inst: &IdentityInstance) -> Result<Integer> {
    let (k, n) = (inst.k, inst.n);
    let order = k as usize;
    let product = series_mul(
        &series_binomial_power(-(n + 1), order),
        &series_binomial_power(k - 1, order),
    );
    let direct = series_binomial_power(-(n - k + 2), order);
    let (lhs, rhs) = (&product.coeffs()[order], &direct.coeffs()[order]);
    if lhs != rhs {
        return Err(mismatch(
            "r3",
            format!("coefficient of x^{k}: {lhs} != {rhs}"),
        ));
    }
    // C(-(n+1), l) = (-1)^l C(n+l, n) and C(k-1, k-l) = C(k-1, l-1), so the
    // product coefficient is already the reduced alternating sum
    let scaled = rhs * Rational::from_integer(factorial(inst.ku()) * factorial(inst.nu()));
    to_integer(&scaled).ok_or_else(|| mismatch("r3", format!("non-integral value {scaled}")))
}

/// Inversion route.
///
/// With `a(l) = (n+l)!/(l-1)!` and
/// `b(l) = (-1)^l n! (n+1)! / ((n-l+1)! (l-1)!)` (zero outside
/// `1 <= l <= n+1`), the left-hand sum is `(k-1)! T(a)(k)`. The dual
/// statement `T(b) = a` is verified by direct summation on `0..=k`; since
/// `T` is an involution this gives `T(a) = b`, so the sum is `(k-1)! b(k)`.
pub fn route4_inversion(inst: &IdentityInstance) -> Result<Integer> {
    let (k, n) = (inst.k, inst.n);
    let nn = Rational::from_integer(factorial(inst.nu()) * factorial(inst.nu() + 1));
    let seq = |f: &dyn Fn(i64) -> Rational| -> Result<Vec<Integer>> {
        (0..=k)
            .map(|l| {
                let v = f(l);
                to_integer(&v).ok_or_else(|| mismatch("r4", format!("non-integral term {v}")))
            })
            .collect()
    };
    let a = seq(&|l| {
        Rational::from_integer(factorial((n + l) as u64)) * reciprocal_factorial_weight(l - 1)
    })?;
    let b = seq(&|l| {
        Rational::from_integer(sign(l))
            * &nn
            * reciprocal_factorial_weight(n - l + 1)
            * reciprocal_factorial_weight(l - 1)
    })?;

    let dual = binomial_inversion(&b);
    if dual != a {
        return Err(mismatch(
            "r4",
            format!("dual identity fails for n = {n}: T(b) != a"),
        ));
    }
    let inverted = binomial_inversion(&dual);
    if inverted != b {
        return Err(mismatch("r4", "transform is not an involution".to_owned()));
    }
    let bk = &inverted[k as usize];
    Ok(bk * factorial(inst.ku() - 1))
}

/// `-k! (n+1)! 2F1(1-k, n+2; 2; 1)` evaluated by Chu-Vandermonde and checked
/// against the terminating sum.
pub fn route5_hypergeom(inst: &IdentityInstance) -> Result<Integer> {
    let (k, n) = (inst.k, inst.n);
    let closed = chu_vandermonde_closed(1 - k, n + 2, 2)?;
    let summed = hypergeom_2f1_terminating(1 - k, n + 2, 2)?;
    if closed != summed {
        return Err(mismatch(
            "r5",
            format!("closed form {closed} != series {summed}"),
        ));
    }
    let value = -closed * Rational::from_integer(factorial(inst.ku()) * factorial(inst.nu() + 1));
    to_integer(&value).ok_or_else(|| mismatch("r5", format!("non-integral value {value}")))
}

/// Symbolic route through the `exp(-u/t)` moment chain with `m = max(k, n+1)`.
pub fn route6_stirling(inst: &IdentityInstance) -> Result<Integer> {
    let (k, n) = (inst.k, inst.n);
    let m = k.max(n + 1);
    let brackets = route6_coefficient_chain(m, k)?;
    let bracket = brackets
        .get(&n)
        .ok_or_else(|| mismatch("r6", format!("no coefficient for i = {n} at m = {m}")))?;
    // sum_{l=0}^{k-1} (-1)^l (n+k-l)! L(k,k-l) is (-1)^k times the left-hand sum
    Ok(sign(k) * bracket)
}

/// The six routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

/// Largest `k` and `n` for which `all` includes the symbolic route.
pub const ROUTE6_MAX_K: i64 = 8;
pub const ROUTE6_MAX_N: i64 = 10;

impl Route {
    pub const ALL: [Route; 6] = [
        Route::R1,
        Route::R2,
        Route::R3,
        Route::R4,
        Route::R5,
        Route::R6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::R1 => "r1",
            Route::R2 => "r2",
            Route::R3 => "r3",
            Route::R4 => "r4",
            Route::R5 => "r5",
            Route::R6 => "r6",
        }
    }

    pub fn eval(self, inst: &IdentityInstance) -> Result<Integer> {
        match self {
            Route::R1 => route1_gkp(inst),
            Route::R2 => route2_factorial_gf(inst),
            Route::R3 => route3_convolution(inst),
            Route::R4 => route4_inversion(inst),
            Route::R5 => route5_hypergeom(inst),
            Route::R6 => route6_stirling(inst),
        }
    }

    pub fn named(self) -> NamedRoute {
        let eval: RouteFn = match self {
            Route::R1 => route1_gkp,
            Route::R2 => route2_factorial_gf,
            Route::R3 => route3_convolution,
            Route::R4 => route4_inversion,
            Route::R5 => route5_hypergeom,
            Route::R6 => route6_stirling,
        };
        NamedRoute {
            name: self.name().to_owned(),
            eval,
        }
    }

    /// Routes that `all` expands to for a grid with the given maxima.
    pub fn default_set(k_max: i64, n_max: i64) -> Vec<Route> {
        let mut routes = Route::ALL[..5].to_vec();
        if k_max <= ROUTE6_MAX_K && n_max <= ROUTE6_MAX_N {
            routes.push(Route::R6);
        }
        routes
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownRoute(s.to_owned()))
    }
}

pub type RouteFn = fn(&IdentityInstance) -> Result<Integer>;

/// A route under an arbitrary name; lets callers run extra evaluators
/// alongside the built-in six.
#[derive(Clone, Debug)]
pub struct NamedRoute {
    pub name: String,
    pub eval: RouteFn,
}

/// What a route produced for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RouteValue {
    Value(Integer),
    Failed(String),
}

impl RouteValue {
    pub fn value(&self) -> Option<&Integer> {
        match self {
            RouteValue::Value(v) => Some(v),
            RouteValue::Failed(_) => None,
        }
    }
}

impl fmt::Display for RouteValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RouteValue::Value(v) => write!(f, "{v}"),
            RouteValue::Failed(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance: IdentityInstance,
    pub reference: Integer,
    pub lhs_direct: Integer,
    pub route_values: BTreeMap<String, RouteValue>,
    /// True iff the direct sum and every route equal the reference.
    pub all_match: bool,
}

impl VerificationReport {
    pub fn evaluate(inst: IdentityInstance, routes: &[NamedRoute]) -> Self {
        let reference = rhs_reference(&inst);
        let lhs_direct = lhs_direct(&inst);
        let route_values: BTreeMap<_, _> = routes
            .iter()
            .map(|r| {
                let v = match (r.eval)(&inst) {
                    Ok(v) => RouteValue::Value(v),
                    Err(e) => RouteValue::Failed(e.to_string()),
                };
                (r.name.clone(), v)
            })
            .collect();
        let all_match =
            lhs_direct == reference && route_values.values().all(|v| v.value() == Some(&reference));
        VerificationReport {
            instance: inst,
            reference,
            lhs_direct,
            route_values,
            all_match,
        }
    }
}

/// All instances of the grid in `(k, n)` lexicographic order.
pub fn grid(
    k_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<IdentityInstance>> {
    let mut out = Vec::new();
    for k in k_range {
        for n in n_range.clone() {
            out.push(IdentityInstance::new(k, n)?);
        }
    }
    Ok(out)
}

/// Reports for `instances` in their given order, evaluated on up to `jobs`
/// threads.
pub fn verify_instances(
    instances: &[IdentityInstance],
    routes: &[NamedRoute],
    jobs: usize,
) -> Vec<VerificationReport> {
    let eval = |inst: &IdentityInstance| VerificationReport::evaluate(*inst, routes);
    if jobs <= 1 {
        return instances.iter().map(eval).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| instances.par_iter().map(eval).collect()),
        Err(_) => instances.iter().map(eval).collect(),
    }
}

/// One report per `(k, n)` of the grid, in lexicographic order.
pub fn verify_grid(
    k_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
    routes: &[Route],
    jobs: usize,
) -> Result<Vec<VerificationReport>> {
    let instances = grid(k_range, n_range)?;
    let named: Vec<_> = routes.iter().map(|r| r.named()).collect();
    Ok(verify_instances(&instances, &named, jobs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(k: i64, n: i64) -> IdentityInstance {
        IdentityInstance::new(k, n).unwrap()
    }

    fn i(x: i64) -> Integer {
        Integer::from(x)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(i(n), i(d))
    }

    #[test]
    fn instance_rejects_hypothesis_violations() {
        assert_eq!(
            IdentityInstance::new(1, 0),
            Err(Error::InvalidInstance { k: 1, n: 0 })
        );
        assert!(IdentityInstance::new(2, -1).is_err());
    }

    #[test]
    fn reference_values() {
        assert_eq!(rhs_reference(&inst(2, 0)), i(0));
        assert_eq!(rhs_reference(&inst(2, 1)), i(2));
        assert_eq!(rhs_reference(&inst(5, 4)), i(-2880));
        assert_eq!(rhs_reference(&inst(5, 3)), i(0));
    }

    #[test]
    fn direct_sum_values() {
        assert_eq!(lhs_direct(&inst(2, 1)), i(2));
        assert_eq!(lhs_direct(&inst(4, 1)), i(0));
        assert_eq!(lhs_direct(&inst(3, 5)), i(-14400));
    }

    #[test]
    fn gkp_examples() {
        assert_eq!(gkp_identity(0, 2, 5, 3), (i(1), i(1)));
        assert_eq!(gkp_identity(1, 0, 2, 1), (i(-1), i(-1)));
        // l = k-1, m = -1, s = n at (k, n) = (2, 1): (-1)^k C(n+1, k) = 1
        assert_eq!(gkp_identity(1, -1, 1, 1), (i(1), i(1)));
    }

    #[test]
    fn inversion_examples() {
        let h = vec![i(1), i(2), i(3)];
        assert_eq!(binomial_inversion(&h), vec![i(1), i(-1), i(0)]);
        assert_eq!(binomial_inversion(&binomial_inversion(&h)), h);
        assert_eq!(
            binomial_inversion(&[i(1), i(0), i(0)]),
            vec![i(1), i(1), i(1)]
        );
        assert!(binomial_inversion(&[]).is_empty());
    }

    #[test]
    fn hypergeom_examples() {
        assert_eq!(hypergeom_2f1_terminating(0, 7, 3).unwrap(), q(1, 1));
        assert_eq!(hypergeom_2f1_terminating(-1, 3, 2).unwrap(), q(-1, 2));
        assert_eq!(hypergeom_2f1_terminating(-2, 3, 2).unwrap(), q(0, 1));
        assert_eq!(chu_vandermonde_closed(-1, 3, 2).unwrap(), q(-1, 2));
        assert_eq!(chu_vandermonde_closed(-2, 3, 2).unwrap(), q(0, 1));
        assert_eq!(chu_vandermonde_closed(0, -4, 9).unwrap(), q(1, 1));
    }

    #[test]
    fn hypergeom_rejects_bad_parameters() {
        assert_eq!(
            hypergeom_2f1_terminating(1, 3, 2),
            Err(Error::NonTerminating(1))
        );
        assert_eq!(
            hypergeom_2f1_terminating(-1, 3, 0),
            Err(Error::ForbiddenLowerParameter(0))
        );
        assert_eq!(
            chu_vandermonde_closed(-1, 3, -2),
            Err(Error::ForbiddenLowerParameter(-2))
        );
    }

    #[test]
    fn route_spot_values() {
        let cases = [
            ((2, 0), 0),
            ((2, 1), 2),
            ((4, 1), 0),
            ((3, 5), -14400),
            ((5, 4), -2880),
        ];
        for ((k, n), v) in cases {
            for r in Route::ALL {
                assert_eq!(
                    r.eval(&inst(k, n)).unwrap(),
                    i(v),
                    "{r} at k = {k}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
        assert!("r7".parse::<Route>().is_err());
    }

    #[test]
    fn default_route_set() {
        assert_eq!(Route::default_set(8, 10), Route::ALL.to_vec());
        assert_eq!(Route::default_set(9, 10).len(), 5);
        assert_eq!(Route::default_set(8, 11).len(), 5);
    }

    #[test]
    fn small_grid_all_match() {
        let reports = verify_grid(2..=3, 0..=2, &Route::ALL, 1).unwrap();
        assert_eq!(reports.len(), 6);
        assert!(reports.iter().all(|r| r.all_match));
        let order: Vec<_> = reports
            .iter()
            .map(|r| (r.instance.k(), r.instance.n()))
            .collect();
        assert_eq!(order, vec![(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)]);
    }

    #[test]
    fn empty_route_set() {
        let reports = verify_grid(2..=2, 1..=1, &[], 1).unwrap();
        assert!(reports[0].route_values.is_empty());
        assert_eq!(reports[0].reference, i(2));
        assert_eq!(reports[0].lhs_direct, i(2));
        assert!(reports[0].all_match);
    }

    #[test]
    fn faulty_route_clears_all_match() {
        fn off_by_one(inst: &IdentityInstance) -> Result<Integer> {
            Ok(rhs_reference(inst) + 1)
        }
        fn failing(_: &IdentityInstance) -> Result<Integer> {
            Err(Error::Mismatch {
                route: "x",
                detail: "boom".into(),
            })
        }
        for eval in [off_by_one as RouteFn, failing] {
            let routes = [
                Route::R1.named(),
                NamedRoute {
                    name: "fault".into(),
                    eval,
                },
            ];
            let r = VerificationReport::evaluate(inst(3, 3), &routes);
            assert!(!r.all_match);
        }
    }

    #[test]
    fn grid_rejects_k_below_two() {
        assert!(verify_grid(1..=3, 0..=1, &[Route::R1], 1).is_err());
    }
}
