//! Row-by-row checks of the counting identities, for reports.

use super::{
    binom_general, binomial, conjugacy_class_size, cycle_types, factorial, generating_c_alternating_q,
    generating_c_constant_sqrt, newton_holds, p_cycle_alternating_closed_form, p_cycle_alternating_sum,
    QSqrt,
};
use crate::error::Result;
use crate::field::{FieldElement, FieldSpec};
use num_bigint::{BigInt, BigUint};
use std::ops::RangeInclusive;

/// Which identity a row checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityKind {
    /// `sum_tau C(tau) = k!`.
    ClassSizes,
    /// `C_k(q, -q, ...) = binom(q, k) k!`.
    AlternatingQ,
    /// `C_k(sqrt q, ..., sqrt q) = (-1)^k binom(-sqrt q, k) k!`.
    ConstantSqrt,
    /// `sum_j (-1)^(k-j) p(k, j) q^j` against its closed form.
    PCycleSum,
    /// Newton's identity on every tuple of a given length.
    Newton,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::ClassSizes => "class_sizes",
            IdentityKind::AlternatingQ => "alternating_q",
            IdentityKind::ConstantSqrt => "constant_sqrt",
            IdentityKind::PCycleSum => "p_cycle_sum",
            IdentityKind::Newton => "newton",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRow {
    pub kind: IdentityKind,
    /// Named integer parameters, e.g. `[("k", 3), ("q", 5)]`.
    pub params: Vec<(&'static str, u64)>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Radicands for the constant-`sqrt(q)` identity.
pub const SQRT_RADICANDS: [u64; 6] = [2, 3, 5, 7, 11, 13];
/// Primes for the `p(k, j)` identity; each is tried with `q = p, p^2, p^3`.
pub const P_CYCLE_PRIMES: [u64; 3] = [2, 3, 5];
/// Integer `q` range for the alternating identity, enough to pin a degree-`k`
/// polynomial in `q` for every `k <= 60`.
pub const ALTERNATING_Q_MAX: u64 = 60;

fn row(kind: IdentityKind, params: Vec<(&'static str, u64)>, lhs: String, rhs: String) -> IdentityRow {
    let pass = lhs == rhs;
    IdentityRow { kind, params, lhs, rhs, pass }
}

pub fn class_size_rows(ks: RangeInclusive<usize>) -> Result<Vec<IdentityRow>> {
    let mut out = Vec::new();
    for k in ks {
        let total: BigUint = cycle_types(k)?.iter().map(conjugacy_class_size).sum();
        out.push(row(
            IdentityKind::ClassSizes,
            vec![("k", k as u64)],
            total.to_string(),
            factorial(k as u64).to_string(),
        ));
    }
    Ok(out)
}

pub fn alternating_q_rows(ks: RangeInclusive<usize>) -> Result<Vec<IdentityRow>> {
    let mut out = Vec::new();
    for k in ks {
        for q in 0..=ALTERNATING_Q_MAX {
            let qb = BigInt::from(q);
            let lhs = generating_c_alternating_q(k, &qb)?;
            let rhs = binomial(&qb, k as u64) * BigInt::from(factorial(k as u64));
            out.push(row(
                IdentityKind::AlternatingQ,
                vec![("k", k as u64), ("q", q)],
                lhs.to_string(),
                rhs.to_string(),
            ));
        }
    }
    Ok(out)
}

pub fn constant_sqrt_rows(ks: RangeInclusive<usize>) -> Result<Vec<IdentityRow>> {
    let mut out = Vec::new();
    for q in SQRT_RADICANDS {
        let qb = BigInt::from(q);
        for k in ks.clone() {
            let lhs = generating_c_constant_sqrt(k, &qb)?;
            let sign: i32 = if k % 2 == 0 { 1 } else { -1 };
            let rhs: QSqrt = binom_general(&-QSqrt::sqrt(&qb), k as u64)
                .scale_int(&(BigInt::from(factorial(k as u64)) * sign));
            out.push(row(
                IdentityKind::ConstantSqrt,
                vec![("k", k as u64), ("q", q)],
                lhs.to_string(),
                rhs.to_string(),
            ));
        }
    }
    Ok(out)
}

pub fn p_cycle_rows(ks: RangeInclusive<usize>) -> Result<Vec<IdentityRow>> {
    let mut out = Vec::new();
    for p in P_CYCLE_PRIMES {
        for e in 1..=3u32 {
            let q = BigInt::from(p.pow(e));
            for k in ks.clone() {
                let lhs = p_cycle_alternating_sum(k, p, &q)?;
                let rhs = p_cycle_alternating_closed_form(k, p, &q);
                out.push(row(
                    IdentityKind::PCycleSum,
                    vec![("k", k as u64), ("p", p), ("q", p.pow(e))],
                    lhs.to_string(),
                    rhs.to_string(),
                ));
            }
        }
    }
    Ok(out)
}

/// Newton's identity on every tuple of length `len` over a few small fields,
/// with `m = len`. Lengths above 4 are skipped to keep the sweep small.
pub fn newton_rows(ks: RangeInclusive<usize>) -> Result<Vec<IdentityRow>> {
    let mut out = Vec::new();
    for (p, s) in [(5u64, 1u32), (7, 1), (2, 3), (3, 2)] {
        let field = FieldSpec::new(p, s)?;
        let q = u64::from(field.order());
        for len in ks.clone().filter(|&l| l <= 4) {
            let total = q.pow(len as u32);
            let failures = (0..total)
                .filter(|&code| {
                    let tuple: Vec<FieldElement> = (0..len)
                        .map(|i| field.element((code / q.pow(i as u32) % q) as u32).unwrap())
                        .collect();
                    !newton_holds(&field, &tuple, len)
                })
                .count();
            out.push(row(
                IdentityKind::Newton,
                vec![("k", len as u64), ("p", p), ("s", u64::from(s))],
                format!("{failures} failing tuples of {total}"),
                format!("0 failing tuples of {total}"),
            ));
        }
    }
    Ok(out)
}

/// Every identity suite over `ks`.
pub fn all_rows(ks: RangeInclusive<usize>) -> Result<Vec<IdentityRow>> {
    let mut out = class_size_rows(ks.clone())?;
    out.extend(alternating_q_rows(ks.clone())?);
    out.extend(constant_sqrt_rows(ks.clone())?);
    out.extend(p_cycle_rows(ks.clone())?);
    out.extend(newton_rows(ks)?);
    Ok(out)
}
