//! Weighted diagonal systems `sum_j a_j y_j^(d_i) = b_i` (`i = 1..m`) over a
//! domain, counted exactly.
//!
//! The fast path is a dynamic program over the value group `F_q^m`: the state
//! after `j` variables is the distribution of the partial sum vector, and each
//! new variable convolves it with the distribution of `a_j (y^(d_1), ..., y^(d_m))`
//! over the domain. One run yields the count for every target at once.
//!
//! ```
//! use fqcount::diagonal::{count_points_dp, Domain, WeightedDiagonalSystem};
//! use fqcount::{FieldSpec, Limits};
//! use std::sync::Arc;
//!
//! let f = Arc::new(FieldSpec::new(5, 1).unwrap());
//! let four = f.from_int(4);
//! let sys = WeightedDiagonalSystem::unweighted(f, vec![2], 1, vec![four], Domain::FullField).unwrap();
//! assert_eq!(count_points_dp(&sys, &Limits::default()).unwrap().count, 2u32.into());
//! ```

use crate::combinatorics::{elementary_symmetric, power_sums};
use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::limits::Limits;
use crate::tally::{
    fits_u128, for_each_tuple, shift_accumulate, shift_tables, state_count, Distribution, Tally,
};
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Where the unknowns range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    FullField,
    /// Sorted, duplicate-free.
    Subset(Vec<FieldElement>),
}

impl Domain {
    /// Sorts and deduplicates.
    pub fn subset(mut elements: Vec<FieldElement>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Domain::Subset(elements)
    }

    pub fn elements(&self, field: &FieldSpec) -> Vec<FieldElement> {
        match self {
            Domain::FullField => field.elements().collect(),
            Domain::Subset(v) => v.clone(),
        }
    }

    pub fn size(&self, field: &FieldSpec) -> u64 {
        match self {
            Domain::FullField => u64::from(field.order()),
            Domain::Subset(v) => v.len() as u64,
        }
    }

    pub(crate) fn validate(&self, field: &FieldSpec) -> Result<()> {
        if let Domain::Subset(v) = self {
            if let Some(bad) = v.iter().find(|x| x.index() >= field.order()) {
                return invalid(format!("domain element {bad} is not in GF({})", field.order()));
            }
        }
        Ok(())
    }
}

pub(crate) fn validate_exponents(exponents: &[u64]) -> Result<()> {
    if exponents.is_empty() {
        return invalid("at least one equation is required");
    }
    if exponents[0] == 0 || exponents.windows(2).any(|w| w[0] >= w[1]) {
        return invalid(format!("exponents {exponents:?} must be positive and strictly increasing"));
    }
    Ok(())
}

pub(crate) fn validate_targets(field: &FieldSpec, targets: &[FieldElement], m: usize) -> Result<()> {
    if targets.len() != m {
        return invalid(format!("{m} equations need {m} targets, got {}", targets.len()));
    }
    if let Some(bad) = targets.iter().find(|x| x.index() >= field.order()) {
        return invalid(format!("target {bad} is not in GF({})", field.order()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDiagonalSystem {
    field: Arc<FieldSpec>,
    exponents: Vec<u64>,
    weights: Vec<u64>,
    targets: Vec<FieldElement>,
    domain: Domain,
    /// Set when normalization found two equations with the same exponent and
    /// different targets; the system then has no solutions.
    infeasible: bool,
}

impl WeightedDiagonalSystem {
    pub fn new(
        field: Arc<FieldSpec>,
        exponents: Vec<u64>,
        weights: Vec<u64>,
        targets: Vec<FieldElement>,
        domain: Domain,
    ) -> Result<Self> {
        validate_exponents(&exponents)?;
        if weights.is_empty() || weights.contains(&0) {
            return invalid("weights must be a nonempty list of positive integers");
        }
        validate_targets(&field, &targets, exponents.len())?;
        domain.validate(&field)?;
        Ok(Self {
            field,
            exponents,
            weights,
            targets,
            domain,
            infeasible: false,
        })
    }

    /// All `l` weights equal to one.
    pub fn unweighted(
        field: Arc<FieldSpec>,
        exponents: Vec<u64>,
        l: usize,
        targets: Vec<FieldElement>,
        domain: Domain,
    ) -> Result<Self> {
        Self::new(field, exponents, vec![1; l], targets, domain)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn targets(&self) -> &[FieldElement] {
        &self.targets
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_infeasible(&self) -> bool {
        self.infeasible
    }

    /// Number of equations.
    pub fn m(&self) -> usize {
        self.exponents.len()
    }

    /// Number of unknowns.
    pub fn l(&self) -> usize {
        self.weights.len()
    }

    pub fn with_targets(&self, targets: Vec<FieldElement>) -> Result<Self> {
        validate_targets(&self.field, &targets, self.m())?;
        Ok(Self { targets, ..self.clone() })
    }

    /// Strips `p`-powers from the exponents: `d = p^r t` with `p` not dividing
    /// `t` becomes `t`, and its target `b` becomes the unique `b'` with
    /// `b'^(p^r) = b`. Since Frobenius fixes the integer weights,
    /// `sum a_j y_j^d = (sum a_j y_j^t)^(p^r)`, so the solution set is unchanged.
    pub fn normalize_exponents(&self) -> Self {
        let p = u64::from(self.field.characteristic());
        let s = self.field.degree();
        let mut reduced: BTreeMap<u64, FieldElement> = BTreeMap::new();
        let mut infeasible = self.infeasible;
        for (&d, &b) in self.exponents.iter().zip(&self.targets) {
            let (mut t, mut r) = (d, 0u32);
            while t % p == 0 {
                t /= p;
                r += 1;
            }
            let b_adj = self.field.frobenius_inverse(b, r % s);
            match reduced.get(&t) {
                Some(&prev) if prev != b_adj => infeasible = true,
                Some(_) => {}
                None => {
                    reduced.insert(t, b_adj);
                }
            }
        }
        Self {
            field: self.field.clone(),
            exponents: reduced.keys().copied().collect(),
            targets: reduced.values().copied().collect(),
            weights: self.weights.clone(),
            domain: self.domain.clone(),
            infeasible,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Dp,
    BruteForce,
}

/// A solution count with an echo of the instance it answers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCount {
    pub count: BigUint,
    pub method: CountMethod,
    pub q: u32,
    pub m: usize,
    pub l: usize,
    pub exponents: Vec<u64>,
    pub targets: Vec<FieldElement>,
}

impl SolutionCount {
    fn for_system(sys: &WeightedDiagonalSystem, count: BigUint, method: CountMethod) -> Self {
        Self {
            count,
            method,
            q: sys.field.order(),
            m: sys.m(),
            l: sys.l(),
            exponents: sys.exponents.clone(),
            targets: sys.targets.clone(),
        }
    }
}

enum Table {
    Small(Vec<u128>),
    Big(Vec<BigUint>),
}

/// The value-vector dynamic program, one variable at a time.
///
/// The state is the distribution of `sum_j a_j (y_j^(d_1), ..., y_j^(d_m))`
/// over the variables pushed so far.
pub struct DiagonalDp {
    field: Arc<FieldSpec>,
    m: usize,
    q: usize,
    /// Distinct power vectors `(y^(d_1), ..., y^(d_m))` over the domain, with
    /// multiplicities.
    powers: Vec<(Vec<FieldElement>, u64)>,
    domain_size: u64,
    mass: BigUint,
    table: Table,
    variables: usize,
}

impl DiagonalDp {
    pub fn new(field: Arc<FieldSpec>, exponents: &[u64], domain: &Domain, limits: &Limits) -> Result<Self> {
        validate_exponents(exponents)?;
        domain.validate(&field)?;
        let m = exponents.len();
        let q = field.order() as usize;
        let states = state_count(q as u64, m, 1, limits.dp_states, "diagonal DP states q^m")?;
        let mut grouped: BTreeMap<Vec<FieldElement>, u64> = BTreeMap::new();
        let elements = domain.elements(&field);
        for &y in &elements {
            let v: Vec<FieldElement> = exponents.iter().map(|&d| field.pow(y, d)).collect();
            *grouped.entry(v).or_default() += 1;
        }
        let mut table = vec![0u128; states];
        table[0] = 1;
        Ok(Self {
            field,
            m,
            q,
            powers: grouped.into_iter().collect(),
            domain_size: elements.len() as u64,
            mass: BigUint::from(1u8),
            table: Table::Small(table),
            variables: 0,
        })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    /// Adds one unknown with integer weight `a` (reduced mod `p` here).
    pub fn push(&mut self, weight: u64) {
        let a = self.field.from_int((weight % u64::from(self.field.characteristic())) as i64);
        let mut shifts: BTreeMap<Vec<FieldElement>, u64> = BTreeMap::new();
        for (v, mult) in &self.powers {
            let scaled: Vec<FieldElement> = v.iter().map(|&x| self.field.mul(a, x)).collect();
            *shifts.entry(scaled).or_default() += mult;
        }
        let tables: Vec<(Vec<Vec<usize>>, u64)> = shifts
            .iter()
            .map(|(v, &mult)| (shift_tables(&self.field, v), mult))
            .collect();
        self.mass *= self.domain_size;
        if let Table::Small(t) = &self.table {
            if !fits_u128(&self.mass) {
                self.table = Table::Big(t.iter().map(|&c| BigUint::from(c)).collect());
            }
        }
        match &mut self.table {
            Table::Small(t) => *t = step(t, &tables, self.q),
            Table::Big(t) => *t = step(t, &tables, self.q),
        }
        self.variables += 1;
    }

    pub fn distribution(&self) -> Distribution {
        match &self.table {
            Table::Small(t) => Distribution::from_tallies(self.field.clone(), self.m, t),
            Table::Big(t) => Distribution::from_tallies(self.field.clone(), self.m, t),
        }
    }

    pub fn count(&self, targets: &[FieldElement]) -> BigUint {
        let index = crate::tally::encode(self.q, targets);
        match &self.table {
            Table::Small(t) => BigUint::from(t[index]),
            Table::Big(t) => t[index].clone(),
        }
    }
}

impl Clone for DiagonalDp {
    fn clone(&self) -> Self {
        Self {
            field: self.field.clone(),
            m: self.m,
            q: self.q,
            powers: self.powers.clone(),
            domain_size: self.domain_size,
            mass: self.mass.clone(),
            table: match &self.table {
                Table::Small(t) => Table::Small(t.clone()),
                Table::Big(t) => Table::Big(t.clone()),
            },
            variables: self.variables,
        }
    }
}

fn step<T: Tally>(src: &[T], shifts: &[(Vec<Vec<usize>>, u64)], q: usize) -> Vec<T> {
    let mut dst = vec![T::empty(); src.len()];
    for (tables, mult) in shifts {
        shift_accumulate(src, &mut dst, tables, q, *mult);
    }
    dst
}

/// Counts for every target vector of the system's left-hand side.
pub fn solution_distribution(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<Distribution> {
    let mut dp = DiagonalDp::new(sys.field.clone(), &sys.exponents, &sys.domain, limits)?;
    for &a in &sys.weights {
        dp.push(a);
    }
    Ok(dp.distribution())
}

/// Exact count by the value-vector dynamic program.
pub fn count_points_dp(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<SolutionCount> {
    let count = if sys.infeasible {
        BigUint::default()
    } else {
        let mut dp = DiagonalDp::new(sys.field.clone(), &sys.exponents, &sys.domain, limits)?;
        for &a in &sys.weights {
            dp.push(a);
        }
        dp.count(&sys.targets)
    };
    Ok(SolutionCount::for_system(sys, count, CountMethod::Dp))
}

fn check_enumeration(n: u64, l: usize, limits: &Limits) -> Result<()> {
    match n.checked_pow(l as u32) {
        Some(t) if t <= limits.enumeration => Ok(()),
        _ => Err(Error::LimitExceeded {
            what: "brute-force tuples |D|^l",
            needed: format!("{n}^{l}"),
            limit: limits.enumeration,
        }),
    }
}

/// Visits every tuple of `domain^l`, passing the left-hand side vector.
fn enumerate_lhs(sys: &WeightedDiagonalSystem, limits: &Limits, mut f: impl FnMut(&[FieldElement])) -> Result<()> {
    let field = &sys.field;
    let elements = sys.domain.elements(field);
    check_enumeration(elements.len() as u64, sys.l(), limits)?;
    let weights: Vec<FieldElement> = sys.weights.iter().map(|&a| field.from_int((a % u64::from(field.characteristic())) as i64)).collect();
    let mut lhs = vec![FieldElement::ZERO; sys.m()];
    for_each_tuple(elements.len(), sys.l(), |idx| {
        for (i, &d) in sys.exponents.iter().enumerate() {
            lhs[i] = idx.iter().zip(&weights).fold(FieldElement::ZERO, |acc, (&j, &a)| {
                field.add(acc, field.mul(a, field.pow(elements[j], d)))
            });
        }
        f(&lhs);
    });
    Ok(())
}

/// Exact count by enumerating `domain^l`.
pub fn count_points_bruteforce(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<SolutionCount> {
    let mut count = 0u64;
    enumerate_lhs(sys, limits, |lhs| {
        if lhs == sys.targets.as_slice() {
            count += 1;
        }
    })?;
    if sys.infeasible {
        count = 0;
    }
    Ok(SolutionCount::for_system(sys, BigUint::from(count), CountMethod::BruteForce))
}

/// Brute-force counts for every target.
pub fn bruteforce_distribution(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<Distribution> {
    let q = sys.field.order() as usize;
    let states = state_count(q as u64, sys.m(), 1, limits.dp_states, "target vectors q^m")?;
    let mut tally = vec![0u128; states];
    enumerate_lhs(sys, limits, |lhs| tally[crate::tally::encode(q, lhs)] += 1)?;
    Ok(Distribution::from_tallies(sys.field.clone(), sys.m(), &tally))
}

/// Solutions with `X_1 = X_2`: the collapsed system with weights
/// `(2, 1, ..., 1)` in `l - 1` unknowns.
pub fn count_slice_equal_coords(sys: &WeightedDiagonalSystem, limits: &Limits) -> Result<SolutionCount> {
    if sys.l() < 2 || sys.weights.iter().any(|&a| a != 1) {
        return invalid("the equal-coordinate slice needs at least two unit-weight unknowns");
    }
    let mut weights = vec![1u64; sys.l() - 1];
    weights[0] = 2;
    let collapsed = WeightedDiagonalSystem { weights, ..sys.clone() };
    count_points_dp(&collapsed, limits)
}

/// Both sides of the power-sum / elementary-symmetric comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomogeneousComparison {
    /// Whether the two solution sets coincide.
    pub equal: bool,
    /// `#{x : P_1(x) = ... = P_m(x) = 0}`.
    pub power_sum_zero: u64,
    /// `#{x : e_1(x) = ... = e_m(x) = 0}`.
    pub elementary_zero: u64,
}

/// Compares the zero sets of `P_1..P_m` and `e_1..e_m` on `F_q^k` by
/// enumeration. Refuses when `p` divides `k!`, where Newton's identity no
/// longer lets one side be solved for the other.
pub fn homogeneous_equivalence_check(field: &FieldSpec, k: usize, m: usize, limits: &Limits) -> Result<HomogeneousComparison> {
    let p = field.characteristic() as usize;
    if p <= k {
        return Err(Error::HypothesisViolated(format!("p = {p} divides {k}!")));
    }
    if m == 0 || k == 0 {
        return invalid("k and m must be positive");
    }
    let q = field.order() as usize;
    check_enumeration(q as u64, k, limits)?;
    let elements: Vec<FieldElement> = field.elements().collect();
    let mut out = HomogeneousComparison {
        equal: true,
        power_sum_zero: 0,
        elementary_zero: 0,
    };
    let mut x = vec![FieldElement::ZERO; k];
    for_each_tuple(q, k, |idx| {
        for (slot, &i) in x.iter_mut().zip(idx) {
            *slot = elements[i];
        }
        let ps = power_sums(field, &x, m).iter().all(|v| v.is_zero());
        let es = elementary_symmetric(field, &x, m).iter().all(|v| v.is_zero());
        out.power_sum_zero += u64::from(ps);
        out.elementary_zero += u64::from(es);
        out.equal &= ps == es;
    });
    Ok(out)
}
