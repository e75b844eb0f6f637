//! Shared helpers for the integration tests: grids, small independent oracles.
#![allow(dead_code)]

use fqcount::{FieldElement, FieldSpec};
use num_bigint::BigInt;
use std::sync::Arc;

/// `(p, s)` with `p^s = q`, by trial division.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut n, mut s) = (q, 0);
    while n % p == 0 {
        n /= p;
        s += 1;
    }
    (n == 1).then_some((p, s))
}

pub fn prime_powers_upto(n: u64) -> Vec<(u64, u32)> {
    (2..=n).filter_map(prime_power).collect()
}

pub fn field(p: u64, s: u32) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::new(p, s).unwrap())
}

pub fn field_of_order(q: u64) -> Arc<FieldSpec> {
    let (p, s) = prime_power(q).expect("prime power");
    field(p, s)
}

/// Strictly increasing lists of length `m` drawn from `pool` (sorted).
pub fn increasing_lists(pool: &[u64], m: usize) -> Vec<Vec<u64>> {
    fn go(pool: &[u64], m: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for (i, &d) in pool.iter().enumerate() {
            cur.push(d);
            go(&pool[i + 1..], m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, m, &mut Vec::new(), &mut out);
    out
}

/// Every vector of `F_q^m`, in lexicographic index order.
pub fn all_targets(f: &FieldSpec, m: usize) -> Vec<Vec<FieldElement>> {
    let q = f.order();
    let total = (q as usize).pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let x = f.element((code % q as usize) as u32).unwrap();
                    code /= q as usize;
                    x
                })
                .collect()
        })
        .collect()
}

/// `q (q-1) ... (q-k+1)`.
pub fn falling(q: &BigInt, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (q - BigInt::from(i)))
}

pub fn fact(k: u64) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

/// `binom(n, k)` for `n >= 0` by the multiplicative formula.
pub fn binom(n: &BigInt, k: u64) -> BigInt {
    falling(n, k) / fact(k)
}

/// `sum_i x_i^d` by repeated multiplication.
pub fn power_sum(f: &FieldSpec, xs: &[FieldElement], d: u64) -> FieldElement {
    xs.iter().fold(FieldElement::ZERO, |acc, &x| {
        let mut t = FieldElement::ONE;
        for _ in 0..d {
            t = f.mul(t, x);
        }
        f.add(acc, t)
    })
}

/// Number of `k`-subsets of `domain` with the given moments, by walking every
/// subset.
pub fn subsets_oracle(f: &FieldSpec, domain: &[FieldElement], k: usize, exponents: &[u64], targets: &[FieldElement]) -> u64 {
    fn go(
        f: &FieldSpec,
        rest: &[FieldElement],
        k: usize,
        chosen: &mut Vec<FieldElement>,
        check: &dyn Fn(&FieldSpec, &[FieldElement]) -> bool,
    ) -> u64 {
        if chosen.len() == k {
            return u64::from(check(f, chosen));
        }
        let mut n = 0;
        for (i, &x) in rest.iter().enumerate() {
            chosen.push(x);
            n += go(f, &rest[i + 1..], k, chosen, check);
            chosen.pop();
        }
        n
    }
    let check = |f: &FieldSpec, s: &[FieldElement]| exponents.iter().zip(targets).all(|(&d, &b)| power_sum(f, s, d) == b);
    go(f, domain, k, &mut Vec::new(), &check)
}
