//! Exact arithmetic in `Q[sqrt(q)]`.
//!
//! A value is `a + b sqrt(q)` with rational `a`, `b` and a positive integer
//! radicand `q`. When `q` is a perfect square the value is folded into `a`, so
//! the representation is canonical and `==` is mathematical equality.
//! Comparisons never touch floating point: the sign of `a + b sqrt(q)` follows
//! from the signs of `a`, `b` and the comparison of `a^2` with `b^2 q`.

use super::rat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSqrt {
    a: BigRational,
    b: BigRational,
    q: BigInt,
    /// `Some(r)` when `q = r^2`.
    root: Option<BigInt>,
}

impl QSqrt {
    pub fn new(a: BigRational, b: BigRational, q: BigInt) -> Self {
        assert!(q.is_positive(), "radicand must be positive");
        let r = q.sqrt();
        let root = (&r * &r == q).then_some(r);
        let mut x = QSqrt { a, b, q, root };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if let Some(r) = &self.root {
            if !self.b.is_zero() {
                self.a = rat::add(&self.a, &rat::mul_int(&self.b, r));
                self.b = BigRational::zero();
            }
        }
    }

    fn with_parts(&self, a: BigRational, b: BigRational) -> Self {
        let mut x = QSqrt {
            a,
            b,
            q: self.q.clone(),
            root: self.root.clone(),
        };
        x.normalize();
        x
    }

    pub fn rational(q: &BigInt, a: BigRational) -> Self {
        Self::new(a, BigRational::zero(), q.clone())
    }

    pub fn integer(q: &BigInt, n: impl Into<BigInt>) -> Self {
        Self::rational(q, BigRational::from_integer(n.into()))
    }

    pub fn zero(q: &BigInt) -> Self {
        Self::integer(q, 0)
    }

    pub fn one(q: &BigInt) -> Self {
        Self::integer(q, 1)
    }

    /// `sqrt(q)` itself.
    pub fn sqrt(q: &BigInt) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), q.clone())
    }

    /// `q^(e/2)` for any integer `e`.
    pub fn half_power(q: &BigInt, e: i64) -> Self {
        let whole = q.pow((e.unsigned_abs() / 2) as u32);
        let mut x = Self::integer(q, whole);
        if e.unsigned_abs() % 2 == 1 {
            x = &x * &Self::sqrt(q);
        }
        if e < 0 {
            x = x.inv().expect("q^(e/2) is nonzero");
        }
        x
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign, as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            _ if sa == sb => sa,
            _ => {
                // opposite signs: whichever of |a| and |b| sqrt(q) is larger wins
                let a2 = rat::mul(&self.a, &self.a);
                let b2q = rat::mul_int(&rat::mul(&self.b, &self.b), &self.q);
                match a2.cmp(&b2q) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse via the conjugate; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = rat::sub(&rat::mul(&self.a, &self.a), &rat::mul_int(&rat::mul(&self.b, &self.b), &self.q));
        // norm vanishes only for zero when q is not a square; squares have b = 0
        let inv = rat::recip(&norm);
        Some(self.with_parts(rat::mul(&self.a, &inv), -rat::mul(&self.b, &inv)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.q);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.with_parts(rat::mul(&self.a, c), rat::mul(&self.b, c))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.with_parts(rat::mul_int(&self.a, c), rat::mul_int(&self.b, c))
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed radicands in Q[sqrt(q)]");
    }

    /// Rough decimal value, for human-readable output only.
    pub fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        a + b * q.sqrt()
    }
}

impl PartialOrd for QSqrt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

impl Add for &QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: &QSqrt) -> QSqrt {
        self.check_same(rhs);
        self.with_parts(rat::add(&self.a, &rhs.a), rat::add(&self.b, &rhs.b))
    }
}

impl Sub for &QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: &QSqrt) -> QSqrt {
        self.check_same(rhs);
        self.with_parts(rat::sub(&self.a, &rhs.a), rat::sub(&self.b, &rhs.b))
    }
}

impl Mul for &QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: &QSqrt) -> QSqrt {
        self.check_same(rhs);
        let a = rat::add(&rat::mul(&self.a, &rhs.a), &rat::mul_int(&rat::mul(&self.b, &rhs.b), &self.q));
        let b = rat::add(&rat::mul(&self.a, &rhs.b), &rat::mul(&self.b, &rhs.a));
        self.with_parts(a, b)
    }
}

impl Div for &QSqrt {
    type Output = QSqrt;
    fn div(self, rhs: &QSqrt) -> QSqrt {
        self * &rhs.inv().expect("division by zero in Q[sqrt(q)]")
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        self.with_parts(-&self.a, -&self.b)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QSqrt {
            type Output = QSqrt;
            fn $m(self, rhs: QSqrt) -> QSqrt { (&self).$m(&rhs) }
        }
        impl $tr<&QSqrt> for QSqrt {
            type Output = QSqrt;
            fn $m(self, rhs: &QSqrt) -> QSqrt { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        -&self
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.q)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.q)
        }
    }
}
