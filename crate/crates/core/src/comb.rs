//! Lah numbers and signed Stirling numbers of the first kind.
//!
//! Each family has more than one independent computation path so the paths
//! can be checked against each other:
//!
//! * Lah: closed form, a row recurrence, and explicit enumeration of
//!   partitions into ordered blocks.
//! * Stirling: the row recurrence, expansion of the rising factorial
//!   polynomial, and powers of the `ln(1+t)` series.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, sign, to_integer, Integer, Rational};
use crate::series::{series_log1p, series_mul, Polynomial, TruncatedSeries};

/// Largest `n` accepted by [`lah_bruteforce`].
pub const BRUTEFORCE_MAX_N: i64 = 9;

/// Lower-triangular table of exact integers indexed by `(n, k)`,
/// `0 <= k <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<Integer>>,
}

impl Triangle {
    fn from_rows(rows: Vec<Vec<Integer>>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == n + 1));
        Triangle { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(n, k)`; reads as zero for `k < 0` or `k > n`.
    ///
    /// Panics if `n` is outside `0..=max_n`.
    pub fn get(&self, n: usize, k: i64) -> Integer {
        let row = &self.rows[n];
        usize::try_from(k)
            .ok()
            .and_then(|k| row.get(k))
            .cloned()
            .unwrap_or_else(Integer::zero)
    }

    pub fn row(&self, n: usize) -> &[Integer] {
        &self.rows[n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Integer]> {
        self.rows.iter().map(Vec::as_slice)
    }
}

/// `L(n, k) = C(n-1, k-1) n! / k!` for `1 <= k <= n`, `L(0, 0) = 1`, and zero
/// otherwise.
pub fn lah(n: u64, k: u64) -> Integer {
    if n == 0 && k == 0 {
        return Integer::one();
    }
    if k == 0 || k > n {
        return Integer::zero();
    }
    binomial(n as i64 - 1, k as i64 - 1) * factorial(n) / factorial(k)
}

/// Lah numbers by `L(n+1, k) = L(n, k-1) + (n+k) L(n, k)`.
pub fn lah_triangle(max_n: usize) -> Triangle {
    let mut rows = vec![vec![Integer::one()]];
    for n in 0..max_n {
        let prev = &rows[n];
        let next = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    Integer::zero()
                };
                let up = prev.get(k).map_or_else(Integer::zero, |v| v * (n + k));
                left + up
            })
            .collect();
        rows.push(next);
    }
    Triangle::from_rows(rows)
}

/// Number of partitions of `{1..n}` into ordered blocks, by block count.
///
/// Every partition is built explicitly: elements are placed in increasing
/// order, each either at one of the slots of an existing block or as the
/// head of a new block. Removing the largest element of a partition gives
/// its unique predecessor, so nothing is produced twice.
pub fn ordered_partition_counts(n: i64) -> Result<Vec<u64>> {
    if !(1..=BRUTEFORCE_MAX_N).contains(&n) {
        return Err(Error::EnumerationBound { n, k: 0 });
    }
    let n = n as usize;
    let mut counts = vec![0u64; n + 1];
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
    place(0, n, &mut blocks, &mut counts);
    Ok(counts)
}

fn place(element: usize, n: usize, blocks: &mut Vec<Vec<usize>>, counts: &mut [u64]) {
    if element == n {
        debug_assert!(blocks.iter().all(|b| !b.is_empty()));
        counts[blocks.len()] += 1;
        return;
    }
    for b in 0..blocks.len() {
        for slot in 0..=blocks[b].len() {
            blocks[b].insert(slot, element);
            place(element + 1, n, blocks, counts);
            blocks[b].remove(slot);
        }
    }
    blocks.push(vec![element]);
    place(element + 1, n, blocks, counts);
    blocks.pop();
}

/// `L(n, k)` counted by explicit enumeration; `1 <= n <= 9`, `k >= 1`.
pub fn lah_bruteforce(n: i64, k: i64) -> Result<Integer> {
    if !(1..=BRUTEFORCE_MAX_N).contains(&n) || k < 1 {
        return Err(Error::EnumerationBound { n, k });
    }
    let counts = ordered_partition_counts(n)?;
    Ok(counts
        .get(k as usize)
        .map_or_else(Integer::zero, |&c| Integer::from(c)))
}

/// Signed Stirling numbers of the first kind, rows `0..=max_n`, by
/// `s(n+1, k) = s(n, k-1) - n s(n, k)`.
pub fn stirling1_triangle(max_n: usize) -> Triangle {
    let mut rows = vec![vec![Integer::one()]];
    for n in 0..max_n {
        let prev = &rows[n];
        let next = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    Integer::zero()
                };
                let up = prev.get(k).map_or_else(Integer::zero, |v| v * n);
                left - up
            })
            .collect();
        rows.push(next);
    }
    Triangle::from_rows(rows)
}

/// Signed `s(n, k)`.
pub fn stirling1(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    stirling1_triangle(n as usize).get(n as usize, k as i64)
}

/// `|s(n, k)|`.
pub fn stirling1_unsigned(n: u64, k: u64) -> Integer {
    stirling1(n, k).abs()
}

/// Row `s(n, 0..=n)` read off `x (x+1) ... (x+n-1) = sum_k (-1)^(n-k) s(n,k) x^k`.
pub fn stirling1_from_rising_poly(n: u64) -> Vec<Integer> {
    let poly = Polynomial::rising_factorial(n);
    (0..=n)
        .map(|k| {
            let c = to_integer(&poly.coeff(k as usize))
                .expect("rising factorial polynomial has integer coefficients");
            sign((n - k) as i64) * c
        })
        .collect()
}

/// Coefficients of `t^0 ..= t^max_n` in `[ln(1+t)]^k / k!`; the coefficient
/// of `t^n` is `s(n, k) / n!`.
///
/// Panics if `k > max_n`.
pub fn stirling1_from_log_series(max_n: usize, k: usize) -> Vec<Rational> {
    assert!(k <= max_n, "need k <= max_n, got k = {k}, max_n = {max_n}");
    let log = series_log1p(max_n);
    let power = (0..k).fold(TruncatedSeries::one(max_n), |acc, _| series_mul(&acc, &log));
    power
        .scale(&Rational::new(Integer::one(), factorial(k as u64)))
        .coeffs()
        .to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn i(x: i64) -> Integer {
        Integer::from(x)
    }

    #[test]
    fn lah_examples() {
        assert_eq!(lah(3, 2), i(6));
        assert_eq!(lah(3, 2), lah_bruteforce(3, 2).unwrap());
        for n in 0..10 {
            assert_eq!(lah(n, n), i(1));
        }
        assert_eq!(lah(4, 1), factorial(4));
        assert_eq!(lah(2, 3), i(0));
        assert_eq!(lah(5, 0), i(0));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(lah_bruteforce(3, 2).unwrap(), i(6));
        assert_eq!(lah_bruteforce(1, 1).unwrap(), i(1));
        assert_eq!(lah_bruteforce(4, 4).unwrap(), i(1));
        assert_eq!(lah_bruteforce(3, 5).unwrap(), i(0));
    }

    #[test]
    fn bruteforce_rejects_out_of_bound() {
        assert!(matches!(
            lah_bruteforce(10, 2),
            Err(Error::EnumerationBound { n: 10, .. })
        ));
        assert!(lah_bruteforce(0, 1).is_err());
        assert!(lah_bruteforce(3, 0).is_err());
    }

    #[test]
    fn triangle_small_rows() {
        let t = lah_triangle(3);
        assert_eq!(t.max_n(), 3);
        assert_eq!(t.row(0), &[i(1)]);
        assert_eq!(t.row(1), &[i(0), i(1)]);
        assert_eq!(t.row(2), &[i(0), i(2), i(1)]);
        assert_eq!(&t.row(3)[1..], &[i(6), i(6), i(1)]);
        assert_eq!(t.get(2, 5), i(0));
        assert_eq!(t.get(2, -1), i(0));
    }

    #[test]
    fn triangle_matches_closed_form() {
        let t = lah_triangle(30);
        for n in 0..=30u64 {
            for k in 0..=n {
                assert_eq!(t.get(n as usize, k as i64), lah(n, k), "L({n},{k})");
            }
        }
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling1(3, 2), i(-3));
        for n in 0..10 {
            assert_eq!(stirling1(n, n), i(1));
        }
        assert_eq!(stirling1(4, 1), i(-6));
        assert_eq!(stirling1(2, 4), i(0));
        assert_eq!(stirling1_unsigned(4, 1), i(6));
    }

    #[test]
    fn rising_poly_rows() {
        assert_eq!(stirling1_from_rising_poly(3), vec![i(0), i(2), i(-3), i(1)]);
        assert_eq!(stirling1_from_rising_poly(0), vec![i(1)]);
        assert_eq!(stirling1_from_rising_poly(2), vec![i(0), i(-1), i(1)]);
    }

    #[test]
    fn log_series_columns() {
        let c0 = stirling1_from_log_series(6, 0);
        assert_eq!(c0[0], int(1));
        assert!(c0[1..].iter().all(Zero::is_zero));

        let c2 = stirling1_from_log_series(5, 2);
        assert_eq!(c2[3], Rational::new(i(-1), i(2)));

        let c1 = stirling1_from_log_series(12, 1);
        for n in 1..=12i64 {
            let expect = Rational::new(sign(n - 1), i(n));
            assert_eq!(c1[n as usize], expect);
        }
    }

    #[test]
    fn stirling_column_one_pattern() {
        for n in 1..15u64 {
            assert_eq!(stirling1(n, 1), sign(n as i64 - 1) * factorial(n - 1));
        }
    }
}
