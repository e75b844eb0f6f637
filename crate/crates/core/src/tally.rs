//! Shared plumbing for the dense counting tables: the counter type, the
//! `F_q^m` vector encoding, and tuple/subset odometers.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use num_bigint::BigUint;
use num_traits::Zero;
use std::sync::Arc;

/// A nonnegative counter. `u128` is used while the total mass provably fits.
pub(crate) trait Tally: Clone + Send + Sync {
    fn empty() -> Self;
    fn unit() -> Self;
    fn add_scaled(&mut self, other: &Self, mult: u64);
    fn is_empty(&self) -> bool;
    fn to_big(&self) -> BigUint;
}

impl Tally for u128 {
    fn empty() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn add_scaled(&mut self, other: &Self, mult: u64) {
        *self += other * u128::from(mult);
    }
    fn is_empty(&self) -> bool {
        *self == 0
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Tally for BigUint {
    fn empty() -> Self {
        BigUint::zero()
    }
    fn unit() -> Self {
        BigUint::from(1u8)
    }
    fn add_scaled(&mut self, other: &Self, mult: u64) {
        if mult == 1 {
            *self += other;
        } else if !other.is_zero() {
            *self += other * mult;
        }
    }
    fn is_empty(&self) -> bool {
        self.is_zero()
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// Whether a total mass of `mass` fits the `u128` fast path with headroom.
pub(crate) fn fits_u128(mass: &BigUint) -> bool {
    mass.bits() < 126
}

/// Checks `q^m` (times `layers`) against the dense-state limit and returns it.
pub(crate) fn state_count(q: u64, m: usize, layers: u64, limit: u64, what: &'static str) -> Result<usize> {
    let states = (q as u128).checked_pow(m as u32).and_then(|s| s.checked_mul(layers as u128));
    match states {
        Some(s) if s <= limit as u128 => Ok((s / layers as u128) as usize),
        _ => Err(Error::LimitExceeded {
            what,
            needed: format!("{q}^{m} x {layers}"),
            limit,
        }),
    }
}

/// Index of `(v_1, ..., v_m)` as `sum v_i q^(i-1)`.
pub(crate) fn encode(q: usize, v: &[FieldElement]) -> usize {
    v.iter().rev().fold(0, |acc, x| acc * q + x.index() as usize)
}

pub(crate) fn decode(q: usize, m: usize, mut index: usize) -> Vec<FieldElement> {
    (0..m)
        .map(|_| {
            let x = FieldElement::from_index_unchecked((index % q) as u32);
            index /= q;
            x
        })
        .collect()
}

/// Adds the fixed vector `shift` to every state of `src`, scaled by `mult`,
/// accumulating into `dst`. `tables[i][v]` is `(v + shift_i) q^i`.
pub(crate) fn shift_accumulate<T: Tally>(src: &[T], dst: &mut [T], tables: &[Vec<usize>], q: usize, mult: u64) {
    fn go<T: Tally>(
        coord: usize,
        src: &[T],
        dst: &mut [T],
        tables: &[Vec<usize>],
        q: usize,
        stride: usize,
        src_off: usize,
        dst_off: usize,
        mult: u64,
    ) {
        let table = &tables[coord];
        if coord == 0 {
            for v in 0..q {
                let s = &src[src_off + v];
                if !s.is_empty() {
                    dst[dst_off + table[v]].add_scaled(s, mult);
                }
            }
            return;
        }
        let inner = stride / q;
        for v in 0..q {
            go(coord - 1, src, dst, tables, q, inner, src_off + v * inner, dst_off + table[v], mult);
        }
    }
    let m = tables.len();
    let stride = q.pow(m as u32);
    go(m - 1, src, dst, tables, q, stride, 0, 0, mult);
}

/// Per-coordinate translation tables for [`shift_accumulate`].
pub(crate) fn shift_tables(field: &FieldSpec, shift: &[FieldElement]) -> Vec<Vec<usize>> {
    let q = field.order() as usize;
    let mut place = 1usize;
    shift
        .iter()
        .map(|&c| {
            let table = field.elements().map(|v| field.add(v, c).index() as usize * place).collect();
            place *= q;
            table
        })
        .collect()
}

/// A map from target vectors in `F_q^m` to counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    field: Arc<FieldSpec>,
    m: usize,
    counts: Vec<BigUint>,
}

impl Distribution {
    pub(crate) fn from_tallies<T: Tally>(field: Arc<FieldSpec>, m: usize, tallies: &[T]) -> Self {
        Self {
            field,
            m,
            counts: tallies.iter().map(Tally::to_big).collect(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Count for target `b`; `b` must have length `m`.
    pub fn get(&self, b: &[FieldElement]) -> &BigUint {
        assert_eq!(b.len(), self.m, "target length");
        &self.counts[encode(self.field.order() as usize, b)]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Every target in canonical order (first coordinate fastest) with its count.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<FieldElement>, &BigUint)> + '_ {
        let q = self.field.order() as usize;
        self.counts.iter().enumerate().map(move |(i, c)| (decode(q, self.m, i), c))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<FieldElement>, &BigUint)> + '_ {
        self.iter().filter(|(_, c)| !Zero::is_zero(*c))
    }

    /// The raw counts, indexed by `sum b_i q^(i-1)`.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

/// Calls `f` on every tuple in `0..n` of length `l`, first position fastest.
pub(crate) fn for_each_tuple(n: usize, l: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; l];
    if n == 0 && l > 0 {
        return;
    }
    loop {
        f(&idx);
        let mut pos = 0;
        loop {
            if pos == l {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Calls `f` on every increasing `k`-subset of `0..n`.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
