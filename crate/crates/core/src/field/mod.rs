//! A concrete, enumerable model of the finite field GF(p^s).
//!
//! Elements are coefficient vectors `(c_0, ..., c_{s-1})` in the power basis of
//! a fixed monic irreducible modulus. Each element is stored as its index
//! `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`, so index order is the canonical
//! element order and the constants `0..p` of the prime subfield have indices
//! `0..p`.
//!
//! The modulus is the first monic irreducible polynomial of degree `s` in that
//! same order (for `s = 1` this is `T`), which makes every count reproducible
//! bit for bit.
//!
//! ```
//! use fqcount::FieldSpec;
//!
//! let f = FieldSpec::new(3, 2).unwrap();
//! assert_eq!(f.order(), 9);
//! let x = f.from_coeffs(&[1, 2]).unwrap();
//! assert_eq!(f.pow(x, 9), x);
//! ```

mod families;
mod gfp_poly;
mod poly;

pub use families::ImageFamily;
pub use poly::{dickson_eval, dickson_image, image_set, PolySpec};

pub(crate) use gfp_poly::{is_prime, prime_factors};

use crate::error::{Error, Result};
use crate::Limits;
use gfp_poly::GfpPoly;
use std::fmt;

/// An element of some [`FieldSpec`], identified by its canonical index.
///
/// The element carries no reference to its field; all arithmetic goes through
/// the field (`field.add(a, b)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The canonical index of this element.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `index < q` for the field in use.
    pub(crate) fn from_index_unchecked(index: u32) -> Self {
        FieldElement(index)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^s) with precomputed log/antilog tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    s: u32,
    q: u32,
    /// `c_0..c_{s-1}` of the monic modulus; the leading 1 is implicit.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// Full addition table for small extension fields.
    add_table: Option<Vec<u32>>,
    /// `p^i` for `0 <= i <= s`.
    radix: Vec<u32>,
}

const ADD_TABLE_MAX_ORDER: u32 = 512;

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(p^s) under the default [`Limits`].
    pub fn new(p: u64, s: u32) -> Result<Self> {
        Self::with_limits(p, s, &Limits::default())
    }

    pub fn with_limits(p: u64, s: u32, limits: &Limits) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(s).filter(|&q| q <= limits.field_order as u128);
        let Some(q) = q else {
            return Err(Error::LimitExceeded {
                what: "field order",
                needed: format!("{p}^{s}"),
                limit: limits.field_order,
            });
        };
        let (p, q) = (p as u32, q as u32);
        let radix: Vec<u32> = (0..=s).map(|i| p.pow(i)).collect();
        let modulus = smallest_irreducible(p, s, &radix);

        let mut field = FieldSpec {
            p,
            s,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
            radix,
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if self.s > 1 && q <= ADD_TABLE_MAX_ORDER {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(table);
        }

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..q)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_reference(g, order / r) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = FieldElement::ONE;
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_reference(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0..c_{s-1}` of the monic modulus (leading 1 omitted).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + ExactSizeIterator {
        (0..self.q).map(FieldElement)
    }

    /// The element with the given canonical index.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidInput(format!(
                "element index {index} out of range for GF({})",
                self.q
            )))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.s as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!(
                "{coeffs:?} is not a coefficient vector of GF({}^{})",
                self.p, self.s
            )));
        }
        Ok(FieldElement(
            coeffs.iter().zip(&self.radix).map(|(c, r)| c * r).sum(),
        ))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        (0..self.s as usize)
            .map(|i| x.0 / self.radix[i] % self.p)
            .collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &r in &self.radix[..self.s as usize] {
            out += ((a % p + b % p) % p) * r;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.s == 1 {
            let c = a.0 + b.0;
            return FieldElement(if c >= self.p { c - self.p } else { c });
        }
        match &self.add_table {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p;
        let mut x = a.0;
        let mut out = 0;
        for &r in &self.radix[..self.s as usize] {
            out += ((p - x % p) % p) * r;
            x /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[i as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    /// `x^e` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The unique `y` with `y^(p^r) = x`, computed as `x^(p^(s-r))`.
    pub fn frobenius_inverse(&self, x: FieldElement, r: u32) -> FieldElement {
        let r = r % self.s;
        self.pow(x, u64::from(self.p).pow(self.s - r))
    }

    /// `x^(p^r)`.
    pub fn frobenius(&self, x: FieldElement, r: u32) -> FieldElement {
        let mut y = x;
        for _ in 0..r {
            y = self.pow(y, u64::from(self.p));
        }
        y
    }

    /// Schoolbook product of coefficient vectors reduced by the modulus.
    ///
    /// Independent of the log tables; used to build them and to check them.
    pub fn mul_reference(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let to_poly = |x: FieldElement| {
            GfpPoly::new(p, self.coeffs(x).into_iter().map(u64::from).collect())
        };
        let mut m: Vec<u64> = self.modulus.iter().map(|&c| u64::from(c)).collect();
        m.push(1);
        let prod = to_poly(a).mul_mod(&to_poly(b), &GfpPoly::new(p, m));
        let digits: Vec<u32> = prod.coeffs().iter().map(|&c| c as u32).collect();
        FieldElement(digits.iter().zip(&self.radix).map(|(c, r)| c * r).sum())
    }

    fn pow_reference(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reference(acc, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        acc
    }
}

fn smallest_irreducible(p: u32, s: u32, radix: &[u32]) -> Vec<u32> {
    (0..radix[s as usize])
        .map(|code| (0..s as usize).map(|i| code / radix[i] % p).collect::<Vec<u32>>())
        .find(|low| {
            let mut c: Vec<u64> = low.iter().map(|&x| u64::from(x)).collect();
            c.push(1);
            GfpPoly::new(u64::from(p), c).is_irreducible()
        })
        .expect("irreducible polynomials exist in every degree")
}
