//! Elementary inequalities between binomial coefficients and the error-term
//! factor `(-1)^k binom(-sqrt q, k)`, checked exactly on given instances.

use super::predicates::large_k_condition;
use super::{nm_main_term, two_pow_m_minus_1};
use crate::combinatorics::{binomial, factorial, rising_sqrt, QSqrt};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `binom(q, k) / ((-1)^k binom(-sqrt q, k))` bracketed between
/// `(q / (sqrt(q) + k - 1))^k` and `q^(k/2)`.
///
/// Stored as integer parts of `Z[sqrt q]`; the three exact values are formed
/// on demand since their reduced fractions are costly at large `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sandwich {
    q: BigInt,
    k: u64,
    /// `q (q - 1) ... (q - k + 1)`
    falling: BigInt,
    /// `sqrt(q) (sqrt(q) + 1) ... (sqrt(q) + k - 1)`
    rising: QSqrt,
    /// `(sqrt(q) + k - 1)^k`
    base_power: QSqrt,
    /// `lower <= ratio <= upper`.
    pub pass: bool,
}

impl Sandwich {
    pub fn lower(&self) -> QSqrt {
        if self.k == 0 {
            return QSqrt::one(&self.q);
        }
        self.base_power.inv().expect("positive").scale_int(&self.q.pow(self.k as u32))
    }

    pub fn ratio(&self) -> QSqrt {
        self.rising.inv().expect("sqrt(q) + i > 0").scale_int(&self.falling)
    }

    pub fn upper(&self) -> QSqrt {
        QSqrt::half_power(&self.q, self.k as i64)
    }

    /// `ratio >= c`, decided without division.
    pub fn ratio_at_least(&self, c: &BigInt) -> bool {
        QSqrt::integer(&self.q, self.falling.clone()) >= self.rising.scale_int(c)
    }
}

/// Requires `k <= q - sqrt(q) + 1`; `q` may be any positive integer.
pub fn sandwich_check(q: &BigInt, k: u64) -> Result<Sandwich> {
    if q.sign() != num_bigint::Sign::Plus {
        return Err(Error::InvalidInput(format!("q = {q} must be positive")));
    }
    let slack = &QSqrt::integer(q, q + 1 - BigInt::from(k)) - &QSqrt::sqrt(q);
    if slack.sign() == std::cmp::Ordering::Less {
        return Err(Error::HypothesisViolated(format!("k = {k} > q - sqrt(q) + 1 for q = {q}")));
    }
    let mut falling = BigInt::one();
    for i in 0..k {
        falling *= q - BigInt::from(i);
    }
    let rising = rising_sqrt(q, k);
    let base = &QSqrt::sqrt(q) + &QSqrt::integer(q, k.saturating_sub(1));
    let base_power = base.pow(k as u32);
    // every operand is integral, so both comparisons stay in Z[sqrt q]
    let f = QSqrt::integer(q, falling.clone());
    let lower_ok = rising.scale_int(&q.pow(k as u32)) <= &f * &base_power;
    let upper_ok = f <= &QSqrt::half_power(q, k as i64) * &rising;
    Ok(Sandwich { q: q.clone(), k, falling, rising, base_power, pass: lower_ok && upper_ok })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RemarkOutcome {
    /// The instance falls outside the remark's hypotheses.
    NotApplicable,
    Holds,
    Fails,
}

impl RemarkOutcome {
    fn of(applicable: bool, holds: impl FnOnce() -> bool) -> Self {
        match (applicable, applicable && holds()) {
            (false, _) => RemarkOutcome::NotApplicable,
            (true, true) => RemarkOutcome::Holds,
            (true, false) => RemarkOutcome::Fails,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RemarkOutcome::NotApplicable => "not_applicable",
            RemarkOutcome::Holds => "holds",
            RemarkOutcome::Fails => "fails",
        }
    }
}

/// Beyond this `k` the exact binomial ratio is not formed; the chain is then
/// checked through its integerized links only.
pub const SANDWICH_EXACT_K_MAX: u64 = 4096;

/// Outcome of each auxiliary inequality on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxiliaryRemarks {
    /// `ratio >= q^k / (sqrt(q) + k - 1)^k >= q^(k/10) / 2^k >= q^m` under
    /// `q >= 2^20`, `20 m <= k` and the large-`k` condition.
    pub ratio_chain: RemarkOutcome,
    /// `binom(q/p, k/p) <= binom(q, k) ((k-1)/(q-1))^(2p-2) <= binom(q, k) (k/q)^(2p-2)`
    /// for `p | k`, `k > p`.
    pub binomial_quotient: RemarkOutcome,
    /// Main term `> (-1)^k binom(-sqrt q, k)` for both `b = 0` and `b != 0`,
    /// under `p | k`, `p >= 3`, `q >= 2^21`, `20 m <= k` and the large-`k` condition.
    pub main_term_dominates: RemarkOutcome,
    /// `M_1 rising >= d_m^m 2^(k+2m) q^((2m+1)/2)` and
    /// `M_1 rising >= q^(m + [k/p]) 2^(k + 2m + [k/p] + 1)`, with
    /// `M_1 = 27 * 2^(m-1) (3 + d_m m)^(k+1)` and `rising = sqrt(q) ... (sqrt(q) + k - 1)`.
    pub constant_dominates: RemarkOutcome,
}

pub fn auxiliary_remarks_check(q: &BigInt, p: u64, k: u64, m: u64, d_m: u64) -> AuxiliaryRemarks {
    let pb = BigInt::from(p);
    let q_is_p_multiple = p >= 2 && (q % &pb).is_zero();
    let k_cond = || large_k_condition(q, k);

    let ratio_chain = RemarkOutcome::of(*q >= BigInt::from(1u64 << 20) && 20 * m <= k && k_cond(), || {
        let root_plus = &QSqrt::sqrt(q) + &QSqrt::integer(q, k.saturating_sub(1));
        let second = root_plus.pow(10) <= QSqrt::integer(q, BigInt::from(1024) * q.pow(9));
        // q^(k/10) / 2^k >= q^m  <=>  q^(k - 10m) >= 2^(10k)
        let third = q.pow((k - 10 * m) as u32) >= BigInt::from(2).pow((10 * k) as u32);
        let first = k > SANDWICH_EXACT_K_MAX
            || sandwich_check(q, k).is_ok_and(|s| s.pass && s.ratio_at_least(&q.pow(m as u32)));
        first && second && third
    });

    let binomial_quotient = RemarkOutcome::of(q_is_p_multiple && k % p == 0 && k > p, || {
        let small = BigRational::from_integer(binomial(&(q / &pb), k / p));
        let big = BigRational::from_integer(binomial(q, k));
        let e = (2 * p - 2) as i32;
        let mid = &big * BigRational::new(BigInt::from(k - 1), q - 1).pow(e);
        let top = &big * BigRational::new(BigInt::from(k), q.clone()).pow(e);
        small <= mid && mid <= top
    });

    let main_term_dominates = RemarkOutcome::of(
        q_is_p_multiple && p >= 3 && k % p == 0 && m >= 1 && 20 * m <= k && *q >= BigInt::from(1u64 << 21) && k_cond(),
        || {
            let err = rising_sqrt(q, k).scale(&BigRational::new(BigInt::one(), factorial(k).into()));
            [true, false].iter().all(|&zero| {
                nm_main_term(q, k, m, p, zero).is_ok_and(|t| QSqrt::rational(q, t) > err)
            })
        },
    );

    let floor = if p >= 2 { k / p } else { 0 };
    let applicable = m >= 1 && ((k < p && 2 * m + floor < k) || (k > p && 2 * m + 2 * floor <= k));
    let constant_dominates = RemarkOutcome::of(applicable, || {
        let m1 = two_pow_m_minus_1(m) * BigRational::from_integer(BigInt::from(27) * BigInt::from(3 + d_m * m).pow((k + 1) as u32));
        let lhs = rising_sqrt(q, k).scale(&m1);
        let two = BigInt::from(2);
        let rhs1 = QSqrt::half_power(q, (2 * m + 1) as i64)
            .scale_int(&(BigInt::from(d_m).pow(m as u32) * two.pow((k + 2 * m) as u32)));
        let rhs2 = QSqrt::integer(q, q.pow((m + floor) as u32) * two.pow((k + 2 * m + floor + 1) as u32));
        lhs >= rhs1 && lhs >= rhs2
    });

    AuxiliaryRemarks {
        ratio_chain,
        binomial_quotient,
        main_term_dominates,
        constant_dominates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn sandwich_q4_k2() {
        let s = sandwich_check(&q(4), 2).unwrap();
        assert_eq!(s.ratio().as_rational().unwrap(), &BigRational::from_integer(2.into()));
        assert_eq!(s.lower().as_rational().unwrap(), &BigRational::new(16.into(), 9.into()));
        assert_eq!(s.upper().as_rational().unwrap(), &BigRational::from_integer(4.into()));
        assert!(s.pass);
    }

    #[test]
    fn sandwich_single_factor() {
        for n in [2u64, 5, 9, 10, 17] {
            let s = sandwich_check(&q(n), 1).unwrap();
            assert_eq!(s.ratio(), QSqrt::sqrt(&q(n)));
            assert_eq!(s.lower(), s.ratio());
            assert_eq!(s.upper(), s.ratio());
            assert!(s.pass);
        }
    }

    #[test]
    fn sandwich_q9_k3() {
        // 9*8*7 / (3*4*5) = 42/5; lower (9/5)^3; upper 27
        let s = sandwich_check(&q(9), 3).unwrap();
        assert_eq!(s.ratio().as_rational().unwrap(), &BigRational::new(42.into(), 5.into()));
        assert_eq!(s.lower().as_rational().unwrap(), &BigRational::new(729.into(), 125.into()));
        assert!(s.pass);
    }

    #[test]
    fn sandwich_flag_matches_exact_triple() {
        for n in 2u64..=40 {
            for k in 0..=n {
                let Ok(s) = sandwich_check(&q(n), k) else { continue };
                let (lo, r, hi) = (s.lower(), s.ratio(), s.upper());
                assert_eq!(s.pass, lo <= r && r <= hi, "q={n} k={k}");
                assert!(s.ratio_at_least(&q(1)) == (r >= QSqrt::one(&q(n))));
            }
        }
    }

    #[test]
    fn sandwich_hypothesis() {
        // q = 9: k <= 7
        assert!(sandwich_check(&q(9), 7).is_ok());
        assert!(matches!(sandwich_check(&q(9), 8), Err(Error::HypothesisViolated(_))));
        // q = 5: k <= 6 - sqrt(5) = 3.76
        assert!(sandwich_check(&q(5), 3).is_ok());
        assert!(sandwich_check(&q(5), 4).is_err());
    }

    #[test]
    fn binomial_quotient_example() {
        let r = auxiliary_remarks_check(&q(16), 2, 4, 1, 2);
        assert_eq!(r.binomial_quotient, RemarkOutcome::Holds);
        assert_eq!(auxiliary_remarks_check(&q(16), 2, 2, 1, 2).binomial_quotient, RemarkOutcome::NotApplicable);
    }

    #[test]
    fn ratio_chain_thresholds() {
        assert_eq!(auxiliary_remarks_check(&q(1024), 2, 40, 1, 2).ratio_chain, RemarkOutcome::NotApplicable);
        let big = BigInt::from(2).pow(30);
        assert_eq!(auxiliary_remarks_check(&big, 2, 100, 5, 6).ratio_chain, RemarkOutcome::Holds);
    }

    #[test]
    fn main_term_dominates_large_q() {
        let big = BigInt::from(3).pow(14);
        assert_eq!(auxiliary_remarks_check(&big, 3, 60, 3, 4).main_term_dominates, RemarkOutcome::Holds);
        assert_eq!(auxiliary_remarks_check(&big, 3, 61, 3, 4).main_term_dominates, RemarkOutcome::NotApplicable);
    }

    #[test]
    fn constant_dominates_cases() {
        let r = auxiliary_remarks_check(&q(49), 7, 5, 2, 3);
        assert_eq!(r.constant_dominates, RemarkOutcome::Holds);
        let r = auxiliary_remarks_check(&q(49), 7, 7, 2, 3);
        assert_eq!(r.constant_dominates, RemarkOutcome::NotApplicable);
    }
}
