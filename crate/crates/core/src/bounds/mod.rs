//! Exact values of the point-count estimates, error terms and existence
//! conditions, and instance reports that compare them with exact counts.
//!
//! Every quantity lives in `Q[sqrt(q)]` or `Q`, so every comparison is exact.
//! Fractional exponents such as `q^0.24` are never evaluated; each condition
//! is rewritten as an equivalent comparison of integer powers.
//!
//! ```
//! use fqcount::bounds::{bound_main_estimate, nm_main_term};
//! use num_bigint::BigInt;
//! use num_rational::BigRational;
//!
//! // 27 * 2 * (3 + 3*2)^6 * 9^(5/2)
//! let b = bound_main_estimate(&BigInt::from(9), 5, 2, 3);
//! assert_eq!(b.value.as_rational().unwrap(), &BigRational::from_integer(BigInt::from(54u64 * 531_441 * 243)));
//! assert!(b.hypothesis_met);
//!
//! // GF(4), k = 2, m = 1: two pairs {x, x + b} for each b != 0, none for b = 0
//! assert_eq!(nm_main_term(&BigInt::from(4), 2, 1, 2, false).unwrap(), BigRational::from_integer(2.into()));
//! assert_eq!(nm_main_term(&BigInt::from(4), 2, 1, 2, true).unwrap(), BigRational::from_integer(0.into()));
//! ```

mod auxiliary;
mod predicates;
mod report;

pub use auxiliary::{auxiliary_remarks_check, sandwich_check, AuxiliaryRemarks, RemarkOutcome, Sandwich, SANDWICH_EXACT_K_MAX};
pub use predicates::{
    existence_predicates, k_at_most_q_power, large_k_condition, small_d_condition, ExistencePredicates, ExistenceQuery,
};
pub use report::{
    verify_diagonal, verify_diagonal_all_targets, verify_moment, verify_moment_all_targets, CountReport, ReportKind,
};

use crate::combinatorics::{binomial, neg_sqrt_binomial, QSqrt};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// Which estimate a [`BoundValue`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// `27 * 2^(m-1) (3 + d_m m)^(k+1) q^(k/2)` for diagonal systems.
    DiagonalEstimate,
    /// `81 * 2^(m-1) (3 + d_m m)^(k+1) (-1)^k binom(-sqrt q, k)` for subset counts.
    SubsetErrorTerm,
    /// Lower bound on subset counts from the two-coordinate sieve.
    BrunLowerBound,
    /// `27 * 2^(m-1) (m^2 + 3)^(k+1) q^((k-m+1)/2)` for the power-sum system.
    HomogeneousDiagonal,
    /// `(7 m^2 / 2)^(k+1) (-1)^k binom(-sqrt q, k) / q^((m-1)/2)` for `b = 0`.
    HomogeneousSubset,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::DiagonalEstimate => "diagonal_estimate",
            Formula::SubsetErrorTerm => "subset_error_term",
            Formula::BrunLowerBound => "brun_lower_bound",
            Formula::HomogeneousDiagonal => "homogeneous_diagonal",
            Formula::HomogeneousSubset => "homogeneous_subset",
        }
    }
}

/// Parameters a bound was evaluated at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInputs {
    pub q: BigInt,
    pub k: u64,
    pub m: u64,
    pub d_m: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub formula: Formula,
    pub value: QSqrt,
    pub inputs: BoundInputs,
    /// Whether the structural hypothesis on `(k, m)` that the estimate is
    /// stated under holds. The value is computed either way.
    pub hypothesis_met: bool,
}

impl BoundValue {
    fn new(formula: Formula, value: QSqrt, q: &BigInt, k: u64, m: u64, d_m: Option<u64>, hypothesis_met: bool) -> Self {
        Self {
            formula,
            value,
            inputs: BoundInputs { q: q.clone(), k, m, d_m },
            hypothesis_met,
        }
    }
}

fn int(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

/// `2^(m-1)`, which is `1/2` at `m = 0`.
fn two_pow_m_minus_1(m: u64) -> BigRational {
    if m == 0 {
        BigRational::new(int(1), int(2))
    } else {
        BigRational::from_integer(int(2).pow((m - 1) as u32))
    }
}

fn q_half_power(q: &BigInt, e: i64) -> QSqrt {
    QSqrt::half_power(q, e)
}

/// `27 * 2^(m-1) (3 + d_m m)^(k+1) q^(k/2)`; the hypothesis is `2m <= k - 1`.
pub fn bound_main_estimate(q: &BigInt, k: u64, m: u64, d_m: u64) -> BoundValue {
    let coeff = two_pow_m_minus_1(m) * BigRational::from_integer(int(27) * int(3 + d_m * m).pow((k + 1) as u32));
    let value = q_half_power(q, k as i64).scale(&coeff);
    BoundValue::new(Formula::DiagonalEstimate, value, q, k, m, Some(d_m), m >= 1 && 2 * m < k)
}

/// `M = 81 * 2^(m-1) (3 + d_m m)^(k+1)`.
fn subset_constant(m: u64, d_m: u64, k: u64) -> BigRational {
    two_pow_m_minus_1(m) * BigRational::from_integer(int(81) * int(3 + d_m * m).pow((k + 1) as u32))
}

/// `M (-1)^k binom(-sqrt q, k)`. Always positive.
pub fn error_term_m(q: &BigInt, k: u64, m: u64, d_m: u64) -> BoundValue {
    let value = neg_sqrt_binomial(q, k).scale(&subset_constant(m, d_m, k));
    BoundValue::new(Formula::SubsetErrorTerm, value, q, k, m, Some(d_m), true)
}

/// `(binom(q, k) + [p | k] (-1)^(k + k/p) v(b) binom(q/p, k/p)) / q^m` with
/// `v(0) = q^m - 1` and `v(b) = -1` otherwise.
pub fn nm_main_term(q: &BigInt, k: u64, m: u64, p: u64, b_is_zero: bool) -> Result<BigRational> {
    if p < 2 {
        return Err(Error::InvalidInput(format!("characteristic {p} is not prime")));
    }
    let qm = q.pow(m as u32);
    let mut num = binomial(q, k);
    if k % p == 0 {
        let (quot, rem) = q.div_rem(&int(p));
        if !rem.is_zero() {
            return Err(Error::NotPrimePower(q.to_string(), p));
        }
        let v = if b_is_zero { &qm - 1 } else { int(-1) };
        let mut corr = v * binomial(&quot, k / p);
        if (k + k / p) % 2 == 1 {
            corr = -corr;
        }
        num += corr;
    }
    Ok(BigRational::new(num, qm))
}

/// `q^(k-m) - (3 d_m m)^(k+1) q^(k/2) - (k^2/2) (q^(k-m-1) + (3 d_m m)^k q^((k-1)/2))`.
///
/// A positive value certifies that every target has a `k`-subset solution.
/// The hypothesis is `2m <= k - 2`.
pub fn brun_lower_bound(q: &BigInt, k: u64, m: u64, d_m: u64) -> BoundValue {
    let (ki, mi) = (k as i64, m as i64);
    let c = int(3 * d_m * m);
    let half_k2 = BigRational::new(int(k * k), int(2));
    let main = q_half_power(q, 2 * (ki - mi));
    let spread = q_half_power(q, ki).scale_int(&c.pow((k + 1) as u32));
    let collisions = (&q_half_power(q, 2 * (ki - mi - 1)) + &q_half_power(q, ki - 1).scale_int(&c.pow(k as u32)))
        .scale(&half_k2);
    let value = &(&main - &spread) - &collisions;
    BoundValue::new(Formula::BrunLowerBound, value, q, k, m, Some(d_m), m >= 1 && 2 * m + 2 <= k)
}

/// `q^((k-1)/2 - m) (q - k^2/2) > (3 d_m m)^k (3 d_m m sqrt(q) + k^2/2)`, the
/// Brun condition after dividing by `q^((k-1)/2)`.
pub fn brun_rearranged_holds(q: &BigInt, k: u64, m: u64, d_m: u64) -> bool {
    let c = int(3 * d_m * m);
    let half_k2 = BigRational::new(int(k * k), int(2));
    let lhs = (&QSqrt::integer(q, q.clone()) - &QSqrt::rational(q, half_k2.clone()))
        * q_half_power(q, k as i64 - 1 - 2 * m as i64);
    let rhs = (&QSqrt::sqrt(q).scale_int(&c) + &QSqrt::rational(q, half_k2)).scale_int(&c.pow(k as u32));
    lhs > rhs
}

/// The two error bounds for the homogeneous case `b = 0`, `d_i = i`: first for
/// the point count of the power-sum system, then for the subset count.
pub fn homogeneous_bounds(q: &BigInt, k: u64, m: u64) -> (BoundValue, BoundValue) {
    let coeff = two_pow_m_minus_1(m) * BigRational::from_integer(int(27) * int(m * m + 3).pow((k + 1) as u32));
    let points = q_half_power(q, k as i64 - m as i64 + 1).scale(&coeff);
    let points = BoundValue::new(Formula::HomogeneousDiagonal, points, q, k, m, None, m >= 1 && m + 2 <= k);

    let c = BigRational::new(int(7 * m * m), int(2)).pow((k + 1) as i32);
    let subsets = (neg_sqrt_binomial(q, k) * q_half_power(q, -(m as i64 - 1))).scale(&c);
    // m <= k/30 + 2/3 together with the large-k condition
    let ok = m >= 1 && 30 * m <= k + 20 && large_k_condition(q, k);
    let subsets = BoundValue::new(Formula::HomogeneousSubset, subsets, q, k, m, None, ok);
    (points, subsets)
}
