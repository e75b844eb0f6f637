//! Exact counts set against their main term and error bound.

use super::predicates::large_k_condition;
use super::{bound_main_estimate, error_term_m, nm_main_term, BoundValue};
use crate::combinatorics::QSqrt;
use crate::diagonal::{count_points_dp, solution_distribution, Domain, WeightedDiagonalSystem};
use crate::error::{invalid, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::limits::Limits;
use crate::moment::{moment_distribution_dp, MomentInstance};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReportKind {
    /// Point count of `sum_j y_j^(d_i) = b_i`, main term `q^(k-m)`.
    Diagonal,
    /// Number of `k`-subsets of `F_q` with prescribed moments.
    Subset,
}

impl ReportKind {
    pub fn name(self) -> &'static str {
        match self {
            ReportKind::Diagonal => "diagonal",
            ReportKind::Subset => "subset",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub kind: ReportKind,
    pub p: u64,
    pub s: u32,
    pub q: u64,
    /// Number of unknowns (diagonal) or subset size (subset).
    pub k: usize,
    pub m: usize,
    pub exponents: Vec<u64>,
    pub targets: Vec<FieldElement>,
    pub exact: BigUint,
    pub main_term: BigRational,
    pub bound: BoundValue,
    /// `|exact - main_term|`.
    pub residual: BigRational,
    /// Whether the instance satisfies every hypothesis the bound is proved
    /// under. Outside them the comparison is reported, not asserted.
    pub in_hypothesis: bool,
    /// `residual <= bound`, decided exactly.
    pub pass: bool,
    pub method: &'static str,
}

impl CountReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        kind: ReportKind,
        field: &FieldSpec,
        k: usize,
        exponents: &[u64],
        targets: Vec<FieldElement>,
        exact: BigUint,
        main_term: BigRational,
        bound: BoundValue,
        in_hypothesis: bool,
        method: &'static str,
    ) -> Self {
        let residual = (BigRational::from_integer(BigInt::from(exact.clone())) - &main_term).abs();
        let pass = QSqrt::rational(bound.value.radicand(), residual.clone()) <= bound.value;
        Self {
            kind,
            p: u64::from(field.characteristic()),
            s: field.degree(),
            q: u64::from(field.order()),
            k,
            m: exponents.len(),
            exponents: exponents.to_vec(),
            targets,
            exact,
            main_term,
            bound,
            residual,
            in_hypothesis,
            pass,
            method,
        }
    }

    pub fn b_is_zero(&self) -> bool {
        self.targets.iter().all(|b| b.is_zero())
    }
}

/// `2 <= d_1 < ... < d_m` with `p` dividing none of them.
fn exponents_admissible(exponents: &[u64], p: u64) -> bool {
    exponents.first().is_some_and(|&d| d >= 2)
        && exponents.windows(2).all(|w| w[0] < w[1])
        && exponents.iter().all(|d| d % p != 0)
}

fn diagonal_in_hypothesis(sys: &WeightedDiagonalSystem) -> bool {
    let p = u64::from(sys.field().characteristic());
    let (k, m) = (sys.l(), sys.m());
    m >= 1
        && 2 * m < k
        && exponents_admissible(sys.exponents(), p)
        && sys.weights().iter().all(|&a| a == 1)
        && matches!(sys.domain(), Domain::FullField)
}

fn diagonal_parts(sys: &WeightedDiagonalSystem) -> (BigRational, BoundValue, bool) {
    let q = BigInt::from(sys.field().order());
    let (k, m) = (sys.l() as u64, sys.m() as u64);
    let d_m = sys.exponents().iter().copied().max().unwrap_or(1);
    let main = BigRational::from_integer(q.pow((k - m.min(k)) as u32)) / BigRational::from_integer(q.pow(m.saturating_sub(k) as u32));
    (main, bound_main_estimate(&q, k, m, d_m), diagonal_in_hypothesis(sys))
}

/// Compares the solution count of `sys` with `q^(l-m)` and the diagonal estimate.
pub fn verify_diagonal(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<CountReport> {
    let exact = count_points_dp(sys, limits)?.count;
    let (main, bound, ok) = diagonal_parts(sys);
    Ok(CountReport::new(
        ReportKind::Diagonal,
        sys.field(),
        sys.l(),
        sys.exponents(),
        sys.targets().to_vec(),
        exact,
        main,
        bound,
        ok,
        "dp",
    ))
}

/// One report per target vector, from a single distribution pass.
pub fn verify_diagonal_all_targets(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<Vec<CountReport>> {
    let dist = solution_distribution(sys, limits)?;
    let (main, bound, ok) = diagonal_parts(sys);
    Ok(dist
        .iter()
        .map(|(b, c)| {
            CountReport::new(
                ReportKind::Diagonal,
                sys.field(),
                sys.l(),
                sys.exponents(),
                b,
                c.clone(),
                main.clone(),
                bound.clone(),
                ok,
                "dp",
            )
        })
        .collect())
}

/// Whether the subset error bound is proved for this instance: either
/// `p` does not divide `k`, `p >= 5`, `2 <= m <= k/20`, `q > 2^20`, or
/// `p | k`, `p >= 3`, `m <= k/20`, `q >= 2^21`; both with the large-`k`
/// condition and admissible exponents.
fn subset_in_hypothesis(field: &FieldSpec, k: u64, exponents: &[u64]) -> bool {
    let p = u64::from(field.characteristic());
    let q = BigInt::from(field.order());
    let m = exponents.len() as u64;
    let shared = exponents_admissible(exponents, p) && 20 * m <= k && large_k_condition(&q, k);
    let coprime = k % p != 0 && p >= 5 && m >= 2 && q > BigInt::from(1u64 << 20);
    let divisible = k % p == 0 && p >= 3 && m >= 1 && q >= BigInt::from(1u64 << 21);
    shared && (coprime || divisible)
}

fn subset_parts(field: &FieldSpec, k: usize, exponents: &[u64], b_is_zero: bool) -> Result<(BigRational, BoundValue, bool)> {
    let q = BigInt::from(field.order());
    let (k64, m) = (k as u64, exponents.len() as u64);
    let d_m = exponents.iter().copied().max().unwrap_or(1);
    let main = nm_main_term(&q, k64, m, u64::from(field.characteristic()), b_is_zero)?;
    Ok((main, error_term_m(&q, k64, m, d_m), subset_in_hypothesis(field, k64, exponents)))
}

fn require_full_field(domain: &Domain) -> Result<()> {
    match domain {
        Domain::FullField => Ok(()),
        Domain::Subset(_) => invalid("subset main terms are stated for the full field only"),
    }
}

/// Compares `N_m(k, b)` with its main term and error bound.
pub fn verify_moment(inst: &MomentInstance, limits: &Limits) -> Result<CountReport> {
    require_full_field(inst.domain())?;
    let dist = moment_distribution_dp(inst.field(), inst.domain(), inst.k(), inst.exponents(), limits)?;
    let b_is_zero = inst.targets().iter().all(|b| b.is_zero());
    let (main, bound, ok) = subset_parts(inst.field(), inst.k(), inst.exponents(), b_is_zero)?;
    Ok(CountReport::new(
        ReportKind::Subset,
        inst.field(),
        inst.k(),
        inst.exponents(),
        inst.targets().to_vec(),
        dist.get(inst.targets()).clone(),
        main,
        bound,
        ok,
        "dist",
    ))
}

/// One report per target vector over `F_q`.
pub fn verify_moment_all_targets(
    field: &Arc<FieldSpec>,
    k: usize,
    exponents: &[u64],
    limits: &Limits,
) -> Result<Vec<CountReport>> {
    let dist = moment_distribution_dp(field, &Domain::FullField, k, exponents, limits)?;
    let zero = subset_parts(field, k, exponents, true)?;
    let nonzero = subset_parts(field, k, exponents, false)?;
    Ok(dist
        .iter()
        .map(|(b, c)| {
            let (main, bound, ok) = if b.iter().all(|x| x.is_zero()) { &zero } else { &nonzero };
            CountReport::new(
                ReportKind::Subset,
                field,
                k,
                exponents,
                b,
                c.clone(),
                main.clone(),
                bound.clone(),
                *ok,
                "dist",
            )
        })
        .collect())
}
