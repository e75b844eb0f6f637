//! Cycle types of the symmetric group and the counting identities built on them.
//!
//! ```
//! use fqcount::combinatorics::{conjugacy_class_size, cycle_types};
//! use num_bigint::BigUint;
//!
//! let types = cycle_types(4).unwrap();
//! assert_eq!(types.len(), 5);
//! let total: BigUint = types.iter().map(conjugacy_class_size).sum();
//! assert_eq!(total, BigUint::from(24u32));
//! ```

mod generating;
pub mod identities;
mod newton;
mod rat;
mod qsqrt;

pub use generating::{
    generating_c, generating_c_alternating_q, generating_c_constant_sqrt, RingValue,
};
pub use newton::{elementary_symmetric, newton_holds, newton_rhs, power_sums};
pub use qsqrt::QSqrt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A conjugacy class of `S_k`, stored as `counts[i - 1] = c_i`, the number of
/// cycles of length `i`. Invariant: `sum i * c_i = k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<u32>,
}

impl CycleType {
    /// Builds a type from `(c_1, ..., c_k)`; `k` is the vector length.
    pub fn from_counts(counts: Vec<u32>) -> Result<Self> {
        let k: u64 = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * u64::from(c))
            .sum();
        if counts.is_empty() || k != counts.len() as u64 {
            return Err(Error::InvalidInput(format!(
                "cycle counts {counts:?} do not describe a permutation of {} points",
                counts.len()
            )));
        }
        Ok(Self { counts })
    }

    /// Builds the type whose cycles have the given lengths.
    pub fn from_lengths(k: usize, lengths: &[usize]) -> Result<Self> {
        let mut counts = vec![0u32; k];
        for &len in lengths {
            if len == 0 || len > k {
                return Err(Error::InvalidInput(format!("cycle length {len} out of range 1..={k}")));
            }
            counts[len - 1] += 1;
        }
        Self::from_counts(counts)
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// `c_i` for `1 <= i <= k`.
    pub fn count(&self, i: usize) -> u32 {
        self.counts[i - 1]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `l(tau)`, the number of cycles including fixed points.
    pub fn length(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        for i in (1..=self.k()).rev() {
            out.extend(std::iter::repeat_n(i, self.count(i) as usize));
        }
        out
    }

    /// `(-1)^(k - l(tau))`.
    pub fn sign(&self) -> i32 {
        if (self.k() - self.length()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether every cycle length is divisible by `p`.
    pub fn all_divisible_by(&self, p: usize) -> bool {
        (1..=self.k()).all(|i| self.count(i) == 0 || i % p == 0)
    }
}

/// Every cycle type of `S_k`, one per partition of `k`, ordered by their
/// partitions in decreasing lexicographic order (`[k]` first, `[1; k]` last).
pub fn cycle_types(k: usize) -> Result<Vec<CycleType>> {
    cycle_types_with_limits(k, &Limits::default())
}

pub fn cycle_types_with_limits(k: usize, limits: &Limits) -> Result<Vec<CycleType>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k > limits.cycle_k {
        return Err(Error::LimitExceeded {
            what: "cycle-type k",
            needed: k.to_string(),
            limit: limits.cycle_k as u64,
        });
    }
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(k);
    partitions(k, k, &mut parts, &mut |lengths| {
        out.push(CycleType::from_lengths(k, lengths).expect("partition of k"));
    });
    Ok(out)
}

fn partitions(rest: usize, max: usize, parts: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if rest == 0 {
        emit(parts);
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        parts.push(part);
        partitions(rest - part, part, parts, emit);
        parts.pop();
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `a / b` for integers, failing unless the division is exact.
pub fn exact_div(a: &BigInt, b: &BigInt, context: &str) -> Result<BigInt> {
    let (quot, rem) = a.div_rem(b);
    if b.is_zero() || !rem.is_zero() {
        return Err(Error::InexactDivision(format!("{context}: {a} / {b}")));
    }
    Ok(quot)
}

/// `C(tau) = k! / prod i^(c_i) c_i!`.
pub fn conjugacy_class_size(t: &CycleType) -> BigUint {
    class_size_checked(t).expect("k! is divisible by every centralizer order")
}

pub(crate) fn class_size_checked(t: &CycleType) -> Result<BigUint> {
    let denom = (1..=t.k()).fold(BigUint::one(), |acc, i| {
        let c = t.count(i);
        acc * BigUint::from(i).pow(c) * factorial(u64::from(c))
    });
    let quot = exact_div(&factorial(t.k() as u64).into(), &denom.into(), "class size")?;
    Ok(quot.try_into().expect("class sizes are positive"))
}

/// `binom(n, k)` for any integer `n`, as the falling factorial over `k!`.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
    }
    num / BigInt::from(factorial(k))
}

/// `x (x - 1) ... (x - k + 1) / k!` in `Q[sqrt(q)]`.
pub fn binom_general(x: &QSqrt, k: u64) -> QSqrt {
    let q = x.radicand();
    let mut acc = QSqrt::one(q);
    for i in 0..k {
        acc = &acc * &(x - &QSqrt::integer(q, i));
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(factorial(k))))
}

/// `sqrt(q) (sqrt(q) + 1) ... (sqrt(q) + k - 1)`, which equals
/// `(-1)^k binom(-sqrt(q), k) k!`.
pub fn rising_sqrt(q: &BigInt, k: u64) -> QSqrt {
    // integer coordinates throughout: (a + b sqrt q)(i + sqrt q) = (a i + b q) + (a + b i) sqrt q
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    for i in 0..k {
        let i = BigInt::from(i);
        (a, b) = (&a * &i + &b * q, a + &b * &i);
    }
    QSqrt::new(BigRational::from_integer(a), BigRational::from_integer(b), q.clone())
}

/// `(-1)^k binom(-sqrt(q), k)`.
pub fn neg_sqrt_binomial(q: &BigInt, k: u64) -> QSqrt {
    rising_sqrt(q, k).scale(&BigRational::new(BigInt::one(), BigInt::from(factorial(k))))
}

/// `p(k, j)`: permutations of `S_k` with `j` cycles, all of length divisible
/// by `p`.
pub fn p_cycles_count(k: usize, j: usize, p: u64) -> Result<BigUint> {
    let p = p as usize;
    Ok(cycle_types(k)?
        .iter()
        .filter(|t| t.length() == j && t.all_divisible_by(p))
        .map(conjugacy_class_size)
        .sum())
}

/// `sum_j (-1)^(k - j) p(k, j) q^j`, summed over the cycle types directly.
pub fn p_cycle_alternating_sum(k: usize, p: u64, q: &BigInt) -> Result<BigInt> {
    if !is_power_of(q, p) {
        return Err(Error::InvalidInput(format!("{q} is not a power of {p}")));
    }
    let mut total = BigInt::zero();
    for t in cycle_types(k)?.iter().filter(|t| t.all_divisible_by(p as usize)) {
        let term = BigInt::from(conjugacy_class_size(t)) * q.pow(t.length() as u32);
        total += if t.sign() > 0 { term } else { -term };
    }
    Ok(total)
}

/// Closed form of [`p_cycle_alternating_sum`]: zero when `p` does not divide
/// `k`, else `(-1)^(k + k/p) binom(q/p, k/p) k!`.
pub fn p_cycle_alternating_closed_form(k: usize, p: u64, q: &BigInt) -> BigInt {
    let (k64, pk) = (k as u64, p as usize);
    if k % pk != 0 {
        return BigInt::zero();
    }
    let value = binomial(&(q / BigInt::from(p)), k64 / p) * BigInt::from(factorial(k64));
    if (k64 + k64 / p) % 2 == 0 {
        value
    } else {
        -value
    }
}

fn is_power_of(q: &BigInt, p: u64) -> bool {
    if !q.is_positive() || p < 2 {
        return false;
    }
    let p = BigInt::from(p);
    let mut x = q.clone();
    while x > BigInt::one() {
        let (quot, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return false;
        }
        x = quot;
    }
    // q = 1 = p^0 is not a field order
    q > &BigInt::one()
}
