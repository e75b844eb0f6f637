//! Dense polynomials over the prime field GF(p).
//!
//! Only what modulus selection needs: reduction, gcd, modular powering and
//! Rabin's irreducibility test. Coefficients are stored lowest degree first
//! and the vector is kept trimmed, so the zero polynomial is empty.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GfpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl GfpPoly {
    pub(crate) fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn inv_mod_p(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Self::new(p, coeffs)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Self::new(p, out)
    }

    pub(crate) fn rem(&self, modulus: &Self) -> Self {
        let dm = modulus.degree().expect("division by the zero polynomial");
        let lead_inv = self.inv_mod_p(modulus.coeffs[dm]);
        let p = self.p;
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for (i, &m) in modulus.coeffs.iter().enumerate() {
                    let idx = top - dm + i;
                    r[idx] = (r[idx] + p - c * m % p) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(p, r)
    }

    pub(crate) fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::new(self.p, vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn has_root(&self) -> bool {
        let p = self.p;
        (0..p).any(|x| {
            self.coeffs
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x + c) % p)
                == 0
        })
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) = x mod f`
    /// and `gcd(x^(p^(n/r)) - x, f) = 1` for every prime `r | n`.
    pub(crate) fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        if self.has_root() {
            return false;
        }
        let x = Self::x(self.p);
        // frob[i] = x^(p^i) mod f
        let mut frob = vec![x.rem(self)];
        for i in 1..=n {
            let next = frob[i - 1].pow_mod(self.p, self);
            frob.push(next);
        }
        if frob[n] != x.rem(self) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let h = frob[n / r as usize].sub(&x);
            let g = h.gcd(self);
            g.degree() == Some(0)
        })
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
