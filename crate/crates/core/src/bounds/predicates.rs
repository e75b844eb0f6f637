//! Existence conditions, each decided by exact integer or `Q[sqrt(q)]`
//! comparisons.
//!
//! Decimal exponents are read as exact rationals (`0.9 = 9/10`, `0.24 = 24/100`,
//! `0.02 = 2/100`) and cleared by raising both sides to a common power, which
//! preserves order because every side involved is nonnegative.

use crate::combinatorics::QSqrt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `k <= q^(num/den)`, as `k^den <= q^num`.
pub fn k_at_most_q_power(q: &BigInt, k: u64, num: u32, den: u32) -> bool {
    BigInt::from(k).pow(den) <= q.pow(num)
}

/// `k <= 2 q^0.9 - sqrt(q) + 1`.
///
/// Both sides of `k - 1 + sqrt(q) <= 2 q^(9/10)` are positive for `k >= 1`,
/// so this is `(k - 1 + sqrt(q))^10 <= 2^10 q^9`.
pub fn large_k_condition(q: &BigInt, k: u64) -> bool {
    if k == 0 {
        return true;
    }
    let lhs = (&QSqrt::integer(q, k - 1) + &QSqrt::sqrt(q)).pow(10);
    lhs <= QSqrt::integer(q, BigInt::from(1024) * q.pow(9))
}

/// `d <= (sqrt(3)/3) k^0.02`.
///
/// Raising to the 100th power gives `d^100 <= 3^-50 k^2`, i.e.
/// `3^50 d^100 <= k^2`.
pub fn small_d_condition(k: u64, d: u64) -> bool {
    BigInt::from(3).pow(50) * BigInt::from(d).pow(100) <= BigInt::from(k).pow(2)
}

/// Inputs to [`existence_predicates`]; `q = p^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExistenceQuery {
    pub p: u64,
    pub s: u32,
    pub k: u64,
    pub m: u64,
    /// Largest exponent of the system.
    pub d_m: u64,
    /// Degree of the polynomial whose image is the evaluation set.
    pub n: u64,
    /// Whether the target vector is zero; only the large-`k` conditions read it.
    pub b_is_zero: bool,
}

impl ExistenceQuery {
    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(self.s)
    }
}

/// One flag per existence condition; `true` means the condition's hypotheses
/// all hold, so it certifies a solution for every target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExistencePredicates {
    /// `k >= 5`, `2m <= k - 1` and `q > (7 m d_m / 2)^((2k+2)/(k-2m))`.
    /// `None` when `k - 2m <= 0`, where the exponent is undefined.
    pub diagonal: Option<bool>,
    /// Large `k`, `p` not dividing `k` or `b = 0`, `q > 2^20`.
    pub large_k_coprime: bool,
    /// Large `k`, `p | k`, `b != 0`, `q >= 2^21`.
    pub large_k_divisible: bool,
    /// `m <= d_m <= (k - 25)/50` and `k <= q^0.24`.
    pub brun: bool,
    /// `m n < (k - 25)/50` and `k <= q^0.24`, for an image evaluation set.
    pub image_brun: bool,
}

/// `q > (7 m d_m / 2)^((2k+2)/(k-2m))` for `k > 2m`.
///
/// With `v = k - 2m`, `u = 4m + 2` and `c = 7 m d_m / 2` the exponent is
/// `(2v + u)/v`, so the condition is `(q / c^2)^v > c^u`. Evaluating it in that
/// form keeps the numbers small when `k` is huge and `q` is far from `c^2`.
fn diagonal_condition(q: &BigInt, k: u64, m: u64, d_m: u64) -> bool {
    let c = BigRational::new(BigInt::from(7 * m * d_m), BigInt::from(2));
    if c.is_zero() {
        return q.is_positive();
    }
    let rho = BigRational::from_integer(q.clone()) / (&c * &c);
    pow_exceeds(&rho, k - 2 * m, &c.pow((4 * m + 2) as i32))
}

/// `rho^v > target` for `target >= 1`, stopping as soon as a partial power
/// exceeds the target. Every factor is at least one once `rho > 1`, so partial
/// products only grow.
fn pow_exceeds(rho: &BigRational, v: u64, target: &BigRational) -> bool {
    if *rho <= BigRational::one() {
        return false;
    }
    // Bernoulli: rho^v >= 1 + v (rho - 1)
    if BigRational::one() + BigRational::from_integer(BigInt::from(v)) * (rho - BigRational::one()) > *target {
        return true;
    }
    let (mut acc, mut base, mut e) = (BigRational::one(), rho.clone(), v);
    loop {
        if e & 1 == 1 {
            acc *= &base;
            if acc > *target {
                return true;
            }
        }
        e >>= 1;
        if e == 0 {
            return false;
        }
        base = &base * &base;
        if base > *target {
            return true;
        }
    }
}

pub fn existence_predicates(query: &ExistenceQuery) -> ExistencePredicates {
    let ExistenceQuery { p, k, m, d_m, n, b_is_zero, .. } = *query;
    let q = query.q();

    let diagonal = (k > 2 * m).then(|| k >= 5 && m >= 1 && diagonal_condition(&q, k, m, d_m));

    let large_k_shared = p >= 3 && m >= 1 && m <= d_m && small_d_condition(k, d_m) && large_k_condition(&q, k);
    let divisible = k % p == 0;
    let large_k_coprime = large_k_shared && (!divisible || b_is_zero) && q > BigInt::from(1u64 << 20);
    let large_k_divisible = large_k_shared && divisible && !b_is_zero && q >= BigInt::from(1u64 << 21);

    let k_small = k_at_most_q_power(&q, k, 24, 100);
    // d_m <= (k - 25)/50  <=>  50 d_m + 25 <= k
    let brun = m >= 1 && m <= d_m && 50 * d_m + 25 <= k && k_small;
    // m n < (k - 25)/50  <=>  50 m n + 25 < k
    let image_brun = m >= 1 && n >= 1 && 50 * m * n + 25 < k && k_small;

    ExistencePredicates {
        diagonal,
        large_k_coprime,
        large_k_divisible,
        brun,
        image_brun,
    }
}
