//! The cycle-index sum `C_k(t_1, ..., t_k) = sum_tau C(tau) prod_i t_i^(c_i)`
//! over any commutative ring.

use super::{class_size_checked, cycle_types, QSqrt};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The ring operations the generating sum needs. Implementations must be
/// commutative rings with `scale` the action of the integers.
pub trait RingValue: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigInt) -> Self;
}

impl RingValue for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigInt) -> Self {
        self * c
    }
}

impl RingValue for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigInt) -> Self {
        self * BigRational::from_integer(c.clone())
    }
}

impl RingValue for QSqrt {
    fn zero_like(&self) -> Self {
        QSqrt::zero(self.radicand())
    }
    fn one_like(&self) -> Self {
        QSqrt::one(self.radicand())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigInt) -> Self {
        self.scale_int(c)
    }
}

/// `C_k(t_1, ..., t_k)`; `t` must hold exactly `k` values.
pub fn generating_c<R: RingValue>(k: usize, t: &[R]) -> Result<R> {
    if t.len() != k {
        return Err(Error::InvalidInput(format!("expected {k} ring values, got {}", t.len())));
    }
    let mut total = t[0].zero_like();
    for tau in cycle_types(k)? {
        let mut term = t[0].one_like();
        for i in 1..=k {
            for _ in 0..tau.count(i) {
                term = term.mul(&t[i - 1]);
            }
        }
        let size = BigInt::from(class_size_checked(&tau)?);
        total = total.add(&term.scale(&size));
    }
    Ok(total)
}

/// `C_k(q, -q, ..., (-1)^(k-1) q)`, which equals `binom(q, k) k!`.
pub fn generating_c_alternating_q(k: usize, q: &BigInt) -> Result<BigInt> {
    let t: Vec<BigInt> = (0..k).map(|i| if i % 2 == 0 { q.clone() } else { -q }).collect();
    generating_c(k, &t)
}

/// `C_k(sqrt(q), ..., sqrt(q))`, which equals `(-1)^k binom(-sqrt(q), k) k!`.
pub fn generating_c_constant_sqrt(k: usize, q: &BigInt) -> Result<QSqrt> {
    generating_c(k, &vec![QSqrt::sqrt(q); k])
}
