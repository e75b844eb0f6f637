//! Rational arithmetic for `Q[sqrt(q)]`.
//!
//! The stock reduction runs a binary gcd on the full operands, which is
//! quadratic in the larger one. Bound evaluations produce numerators of
//! millions of bits over tiny denominators, so here the gcd starts with one
//! Euclidean step and integers skip reduction entirely.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.clone();
    }
    let r = big % small;
    small.gcd(&r)
}

/// `n / d` in lowest terms; `d != 0`.
pub(crate) fn reduce(n: BigInt, d: BigInt) -> BigRational {
    assert!(!d.is_zero(), "zero denominator");
    let (n, d) = if d.sign() == Sign::Minus { (-n, -d) } else { (n, d) };
    if n.is_zero() {
        return BigRational::zero();
    }
    if d.is_one() {
        return BigRational::from_integer(n);
    }
    let g = BigInt::from(gcd(n.magnitude(), d.magnitude()));
    if g.is_one() {
        BigRational::new_raw(n, d)
    } else {
        BigRational::new_raw(n / &g, d / g)
    }
}

pub(crate) fn add(x: &BigRational, y: &BigRational) -> BigRational {
    if x.denom() == y.denom() {
        return reduce(x.numer() + y.numer(), x.denom().clone());
    }
    reduce(x.numer() * y.denom() + y.numer() * x.denom(), x.denom() * y.denom())
}

pub(crate) fn sub(x: &BigRational, y: &BigRational) -> BigRational {
    if x.denom() == y.denom() {
        return reduce(x.numer() - y.numer(), x.denom().clone());
    }
    reduce(x.numer() * y.denom() - y.numer() * x.denom(), x.denom() * y.denom())
}

pub(crate) fn mul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() || y.is_zero() {
        return BigRational::zero();
    }
    if x.denom().is_one() && y.denom().is_one() {
        return BigRational::from_integer(x.numer() * y.numer());
    }
    reduce(x.numer() * y.numer(), x.denom() * y.denom())
}

pub(crate) fn mul_int(x: &BigRational, c: &BigInt) -> BigRational {
    if x.denom().is_one() {
        return BigRational::from_integer(x.numer() * c);
    }
    reduce(x.numer() * c, x.denom().clone())
}

/// `1 / x` for nonzero `x`; already reduced, so no gcd is taken.
pub(crate) fn recip(x: &BigRational) -> BigRational {
    let (n, d) = (x.numer().clone(), x.denom().clone());
    if n.sign() == Sign::Minus {
        BigRational::new_raw(-d, -n)
    } else {
        BigRational::new_raw(d, n)
    }
}
