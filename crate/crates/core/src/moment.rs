//! `N_m(k, b, D)`: the number of `k`-subsets `S` of `D` with
//! `sum_{a in S} a^(d_i) = b_i` for every `i`.
//!
//! Three independent algorithms compute it:
//!
//! * inclusion–exclusion over the cycle types of `S_k`, where each term counts
//!   a weighted diagonal system with [`crate::diagonal`];
//! * a subset dynamic program with state (elements chosen, moment vector);
//! * enumeration of every `k`-subset.
//!
//! ```
//! use fqcount::diagonal::Domain;
//! use fqcount::moment::{count_subsets, MomentInstance, SspMethod};
//! use fqcount::{FieldSpec, Limits};
//! use std::sync::Arc;
//!
//! let f = Arc::new(FieldSpec::new(5, 1).unwrap());
//! let zero = f.from_int(0);
//! let inst = MomentInstance::new(f, Domain::FullField, 2, vec![1], vec![zero]).unwrap();
//! for method in SspMethod::ALL {
//!     assert_eq!(count_subsets(&inst, method, &Limits::default()).unwrap(), 2u32.into());
//! }
//! ```

use crate::combinatorics::{class_size_checked, cycle_types_with_limits, exact_div, factorial, CycleType};
use crate::diagonal::{count_points_dp, validate_exponents, validate_targets, DiagonalDp, Domain, WeightedDiagonalSystem};
use crate::error::{invalid, Error, Result};
use crate::field::{image_set, FieldElement, FieldSpec, PolySpec};
use crate::limits::Limits;
use crate::tally::{
    encode, fits_u128, for_each_subset, for_each_tuple, shift_accumulate, shift_tables, state_count, Distribution, Tally,
};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::sync::Arc;

/// Target-to-count table for one `(D, k, exponents)`.
pub type MomentDistribution = Distribution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentInstance {
    field: Arc<FieldSpec>,
    domain: Domain,
    k: usize,
    exponents: Vec<u64>,
    targets: Vec<FieldElement>,
}

impl MomentInstance {
    /// `k` larger than `|D|` is accepted; every count is then zero.
    pub fn new(
        field: Arc<FieldSpec>,
        domain: Domain,
        k: usize,
        exponents: Vec<u64>,
        targets: Vec<FieldElement>,
    ) -> Result<Self> {
        if k == 0 {
            return invalid("subset size k must be at least 1");
        }
        validate_exponents(&exponents)?;
        validate_targets(&field, &targets, exponents.len())?;
        domain.validate(&field)?;
        Ok(Self {
            field,
            domain,
            k,
            exponents,
            targets,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn targets(&self) -> &[FieldElement] {
        &self.targets
    }

    pub fn with_targets(&self, targets: Vec<FieldElement>) -> Result<Self> {
        validate_targets(&self.field, &targets, self.m())?;
        Ok(Self { targets, ..self.clone() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SspMethod {
    InclusionExclusion,
    SubsetDp,
    Enumeration,
}

impl SspMethod {
    pub const ALL: [SspMethod; 3] = [SspMethod::InclusionExclusion, SspMethod::SubsetDp, SspMethod::Enumeration];

    pub fn name(self) -> &'static str {
        match self {
            SspMethod::InclusionExclusion => "ie",
            SspMethod::SubsetDp => "dist",
            SspMethod::Enumeration => "brute",
        }
    }
}

pub fn count_subsets(inst: &MomentInstance, method: SspMethod, limits: &Limits) -> Result<BigUint> {
    match method {
        SspMethod::InclusionExclusion => count_subsets_inclusion_exclusion(inst, limits),
        SspMethod::SubsetDp => {
            let dist = moment_distribution_dp(&inst.field, &inst.domain, inst.k, &inst.exponents, limits)?;
            Ok(dist.get(&inst.targets).clone())
        }
        SspMethod::Enumeration => count_subsets_enum(inst, limits),
    }
}

pub fn moment_distribution(
    field: &Arc<FieldSpec>,
    domain: &Domain,
    k: usize,
    exponents: &[u64],
    method: SspMethod,
    limits: &Limits,
) -> Result<MomentDistribution> {
    match method {
        SspMethod::InclusionExclusion => inclusion_exclusion_distribution(field, domain, k, exponents, limits),
        SspMethod::SubsetDp => moment_distribution_dp(field, domain, k, exponents, limits),
        SspMethod::Enumeration => enumeration_distribution(field, domain, k, exponents, limits),
    }
}

/// One summand `(-1)^(k - l(tau)) C(tau) |X_tau|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionExclusionTerm {
    pub cycle_type: CycleType,
    pub sign: i32,
    pub class_size: BigUint,
    /// Solutions whose coordinates agree within each cycle of `tau`.
    pub x_tau: BigUint,
}

/// The summands of the inclusion–exclusion formula, one per cycle type.
///
/// `X_tau` collapses the coordinates inside each cycle of `tau` into a single
/// unknown weighted by the cycle length. It does not require different cycles
/// to take different values.
pub fn inclusion_exclusion_terms(inst: &MomentInstance, limits: &Limits) -> Result<Vec<InclusionExclusionTerm>> {
    let mut out = Vec::new();
    for tau in cycle_types_with_limits(inst.k, limits)? {
        let weights: Vec<u64> = tau.cycle_lengths().iter().map(|&c| c as u64).collect();
        let sys = WeightedDiagonalSystem::new(
            inst.field.clone(),
            inst.exponents.clone(),
            weights,
            inst.targets.clone(),
            inst.domain.clone(),
        )?;
        out.push(InclusionExclusionTerm {
            sign: tau.sign(),
            class_size: class_size_checked(&tau)?,
            x_tau: count_points_dp(&sys, limits)?.count,
            cycle_type: tau,
        });
    }
    Ok(out)
}

/// `N = (1/k!) sum_tau (-1)^(k - l(tau)) C(tau) |X_tau|`.
pub fn count_subsets_inclusion_exclusion(inst: &MomentInstance, limits: &Limits) -> Result<BigUint> {
    let mut total = BigInt::zero();
    for term in inclusion_exclusion_terms(inst, limits)? {
        total += BigInt::from(term.sign) * BigInt::from(term.class_size) * BigInt::from(term.x_tau);
    }
    let n = exact_div(&total, &BigInt::from(factorial(inst.k as u64)), "distinct solutions over k!")?;
    n.try_into()
        .map_err(|_| Error::InexactDivision(format!("negative subset count {total}/k!")))
}

/// Inclusion–exclusion for every target at once. Cycle types are visited as a
/// trie of their decreasing cycle-length sequences, so types sharing a prefix
/// share the diagonal DP for it.
pub fn inclusion_exclusion_distribution(
    field: &Arc<FieldSpec>,
    domain: &Domain,
    k: usize,
    exponents: &[u64],
    limits: &Limits,
) -> Result<MomentDistribution> {
    // validates k and the limit
    cycle_types_with_limits(k, limits)?;
    let root = DiagonalDp::new(field.clone(), exponents, domain, limits)?;
    let states = root.distribution().counts().len();
    let mut acc = vec![BigInt::zero(); states];
    let mut lengths = Vec::with_capacity(k);
    let mut failure = None;
    visit_partitions(k, k, &root, &mut lengths, &mut |lengths, dp| {
        if failure.is_some() {
            return;
        }
        let tau = CycleType::from_lengths(k, lengths).expect("partition of k");
        let coeff = match class_size_checked(&tau) {
            Ok(c) => BigInt::from(c) * tau.sign(),
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        for (slot, x_tau) in acc.iter_mut().zip(dp.distribution().counts()) {
            if !Zero::is_zero(x_tau) {
                *slot += &coeff * BigInt::from(x_tau.clone());
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let k_fact = BigInt::from(factorial(k as u64));
    let counts = acc
        .iter()
        .map(|total| {
            let n = exact_div(total, &k_fact, "distinct solutions over k!")?;
            n.try_into()
                .map_err(|_| Error::InexactDivision(format!("negative subset count {total}/k!")))
        })
        .collect::<Result<Vec<BigUint>>>()?;
    Ok(Distribution::from_tallies(field.clone(), exponents.len(), &counts))
}

fn visit_partitions(
    rest: usize,
    max: usize,
    dp: &DiagonalDp,
    lengths: &mut Vec<usize>,
    leaf: &mut impl FnMut(&[usize], &DiagonalDp),
) {
    if rest == 0 {
        leaf(lengths, dp);
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        let mut next = dp.clone();
        next.push(part as u64);
        lengths.push(part);
        visit_partitions(rest - part, part, &next, lengths, leaf);
        lengths.pop();
    }
}

fn check_subsets(n: usize, k: usize, limits: &Limits) -> Result<()> {
    let subsets = crate::combinatorics::binomial(&BigInt::from(n), k as u64);
    if subsets > BigInt::from(limits.enumeration) {
        return Err(Error::LimitExceeded {
            what: "enumerated subsets binom(|D|, k)",
            needed: subsets.to_string(),
            limit: limits.enumeration,
        });
    }
    Ok(())
}

fn for_each_moment_vector(
    field: &FieldSpec,
    domain: &Domain,
    k: usize,
    exponents: &[u64],
    limits: &Limits,
    mut f: impl FnMut(&[FieldElement]),
) -> Result<()> {
    let elements = domain.elements(field);
    check_subsets(elements.len(), k, limits)?;
    let powers: Vec<Vec<FieldElement>> = elements
        .iter()
        .map(|&a| exponents.iter().map(|&d| field.pow(a, d)).collect())
        .collect();
    let mut sums = vec![FieldElement::ZERO; exponents.len()];
    for_each_subset(elements.len(), k, |subset| {
        sums.iter_mut().for_each(|s| *s = FieldElement::ZERO);
        for &i in subset {
            for (s, &v) in sums.iter_mut().zip(&powers[i]) {
                *s = field.add(*s, v);
            }
        }
        f(&sums);
    });
    Ok(())
}

/// `N_m(k, b, D)` by visiting every `k`-subset of `D`.
pub fn count_subsets_enum(inst: &MomentInstance, limits: &Limits) -> Result<BigUint> {
    let mut count = 0u64;
    for_each_moment_vector(&inst.field, &inst.domain, inst.k, &inst.exponents, limits, |sums| {
        count += u64::from(sums == inst.targets.as_slice());
    })?;
    Ok(BigUint::from(count))
}

pub fn enumeration_distribution(
    field: &Arc<FieldSpec>,
    domain: &Domain,
    k: usize,
    exponents: &[u64],
    limits: &Limits,
) -> Result<MomentDistribution> {
    validate_exponents(exponents)?;
    let q = field.order() as usize;
    let states = state_count(q as u64, exponents.len(), 1, limits.dp_states, "target vectors q^m")?;
    let mut tally = vec![0u64; states];
    for_each_moment_vector(field, domain, k, exponents, limits, |sums| tally[encode(q, sums)] += 1)?;
    let counts: Vec<BigUint> = tally.into_iter().map(BigUint::from).collect();
    Ok(Distribution::from_tallies(field.clone(), exponents.len(), &counts))
}

/// Subset DP over the elements of `D`: after visiting a prefix of `D`,
/// `layer[j][v]` counts the `j`-subsets of that prefix with moment vector `v`.
pub fn moment_distribution_dp(
    field: &Arc<FieldSpec>,
    domain: &Domain,
    k: usize,
    exponents: &[u64],
    limits: &Limits,
) -> Result<MomentDistribution> {
    validate_exponents(exponents)?;
    domain.validate(field)?;
    let q = field.order() as usize;
    let states = state_count(q as u64, exponents.len(), k as u64 + 1, limits.dp_states, "subset DP states (k+1) q^m")?;
    let elements = domain.elements(field);
    let mass = crate::combinatorics::binomial(&BigInt::from(elements.len()), k as u64);
    let mass = mass.to_biguint().unwrap_or_default();
    let layers = if fits_u128(&mass) {
        subset_dp::<u128>(field, &elements, k, exponents, states)
    } else {
        subset_dp::<BigUint>(field, &elements, k, exponents, states)
    };
    Ok(layers)
}

fn subset_dp<T: Tally>(
    field: &Arc<FieldSpec>,
    elements: &[FieldElement],
    k: usize,
    exponents: &[u64],
    states: usize,
) -> Distribution {
    let q = field.order() as usize;
    let mut layers: Vec<Vec<T>> = vec![vec![T::empty(); states]; k + 1];
    layers[0][0] = T::unit();
    for (seen, &a) in elements.iter().enumerate() {
        let shift: Vec<FieldElement> = exponents.iter().map(|&d| field.pow(a, d)).collect();
        let tables = shift_tables(field, &shift);
        // descending j so each element is used at most once
        for j in (1..=k.min(seen + 1)).rev() {
            let (lower, upper) = layers.split_at_mut(j);
            shift_accumulate(&lower[j - 1], &mut upper[0], &tables, q, 1);
        }
    }
    Distribution::from_tallies(field.clone(), exponents.len(), &layers[k])
}

/// Materializes the value set of `f` as an explicit domain.
pub fn image_domain(field: &FieldSpec, f: &PolySpec) -> Domain {
    Domain::Subset(image_set(f, field))
}

/// `N_m(k, b, D)` with `D = f(F_q)`, via any of the three algorithms.
pub fn count_subsets_image(
    field: &Arc<FieldSpec>,
    f: &PolySpec,
    k: usize,
    exponents: Vec<u64>,
    targets: Vec<FieldElement>,
    method: SspMethod,
    limits: &Limits,
) -> Result<BigUint> {
    let inst = MomentInstance::new(field.clone(), image_domain(field, f), k, exponents, targets)?;
    count_subsets(&inst, method, limits)
}

/// The two tuple sets behind the image-domain count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageTupleCounts {
    /// Tuples of pairwise-distinct values of `D = f(F_q)` with the prescribed
    /// moments.
    pub a: BigUint,
    /// Tuples `x` of `F_q` with pairwise-distinct `x_i` and pairwise-distinct
    /// `f(x_i)` whose images have the prescribed moments.
    pub b: BigUint,
    /// `sum_{y in A} prod_i |f^-1(y_i)|`, which always equals `|B|`: each
    /// tuple of `A` lifts to one tuple of `B` per choice of preimages.
    pub b_from_fibers: BigUint,
    /// `N_m(k, b, D)`, which equals `|A| / k!`.
    pub n: BigUint,
}

impl ImageTupleCounts {
    /// Whether `|A| = |B|`. This fails as soon as a tuple of `A` uses a value
    /// with more than one preimage.
    pub fn sets_equinumerous(&self) -> bool {
        self.a == self.b
    }
}

/// Counts both tuple sets by brute force, plus `N` through `method`.
pub fn image_tuple_counts(
    field: &Arc<FieldSpec>,
    f: &PolySpec,
    k: usize,
    exponents: &[u64],
    targets: &[FieldElement],
    method: SspMethod,
    limits: &Limits,
) -> Result<ImageTupleCounts> {
    validate_exponents(exponents)?;
    validate_targets(field, targets, exponents.len())?;
    let q = field.order() as usize;
    let tuples = (q as u64).checked_pow(k as u32).filter(|&t| t <= limits.enumeration);
    if tuples.is_none() {
        return Err(Error::LimitExceeded {
            what: "image tuples q^k",
            needed: format!("{q}^{k}"),
            limit: limits.enumeration,
        });
    }
    let values: Vec<FieldElement> = field.elements().map(|x| f.eval(field, x)).collect();
    let image = image_set(f, field);
    let moments = |ys: &mut dyn Iterator<Item = FieldElement>| -> bool {
        let ys: Vec<FieldElement> = ys.collect();
        exponents.iter().zip(targets).all(|(&d, &b)| {
            ys.iter().fold(FieldElement::ZERO, |acc, &y| field.add(acc, field.pow(y, d))) == b
        })
    };
    let pairwise_distinct = |v: &mut dyn Iterator<Item = usize>| {
        let mut seen: Vec<usize> = v.collect();
        let len = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == len
    };

    let mut fiber = vec![0u64; q];
    for v in &values {
        fiber[v.index() as usize] += 1;
    }
    let (mut a, mut lifted) = (0u64, 0u64);
    for_each_tuple(image.len(), k, |idx| {
        if pairwise_distinct(&mut idx.iter().copied()) && moments(&mut idx.iter().map(|&i| image[i])) {
            a += 1;
            lifted += idx.iter().map(|&i| fiber[image[i].index() as usize]).product::<u64>();
        }
    });
    let mut b = 0u64;
    for_each_tuple(q, k, |idx| {
        if pairwise_distinct(&mut idx.iter().copied())
            && pairwise_distinct(&mut idx.iter().map(|&i| values[i].index() as usize))
            && moments(&mut idx.iter().map(|&i| values[i]))
        {
            b += 1;
        }
    });
    let n = count_subsets_image(field, f, k, exponents.to_vec(), targets.to_vec(), method, limits)?;
    Ok(ImageTupleCounts {
        a: BigUint::from(a),
        b: BigUint::from(b),
        b_from_fibers: BigUint::from(lifted),
        n,
    })
}

/// `binom(|D|, k)`, the total mass of every moment distribution.
pub fn subset_total(domain_size: u64, k: usize) -> BigUint {
    crate::combinatorics::binomial(&BigInt::from(domain_size), k as u64)
        .to_biguint()
        .unwrap_or_default()
}
