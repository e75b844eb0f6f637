//! Power sums, elementary symmetric polynomials and Newton's identity over a
//! finite field.

use crate::field::{FieldElement, FieldSpec};

/// `P_1, ..., P_m` with `P_j = sum_i x_i^j`.
pub fn power_sums(field: &FieldSpec, values: &[FieldElement], m: usize) -> Vec<FieldElement> {
    (1..=m)
        .map(|j| {
            values
                .iter()
                .fold(FieldElement::ZERO, |acc, &x| field.add(acc, field.pow(x, j as u64)))
        })
        .collect()
}

/// `e_1, ..., e_m`, read off the coefficients of `prod_i (1 + x_i z)`.
pub fn elementary_symmetric(field: &FieldSpec, values: &[FieldElement], m: usize) -> Vec<FieldElement> {
    let mut e = vec![FieldElement::ZERO; m + 1];
    e[0] = FieldElement::ONE;
    for &x in values {
        for j in (1..=m).rev() {
            e[j] = field.add(e[j], field.mul(e[j - 1], x));
        }
    }
    e.split_off(1)
}

/// Right-hand side of Newton's identity for `P_j`:
/// `(-1)^(j-1) j e_j + sum_{i<j} (-1)^(j-1+i) e_(j-i) P_i`.
///
/// `e` and `p` are 1-indexed in the sense that `e[0] = e_1`.
pub fn newton_rhs(field: &FieldSpec, e: &[FieldElement], p: &[FieldElement], j: usize) -> FieldElement {
    let signed = |v: FieldElement, exp: usize| if exp % 2 == 0 { v } else { field.neg(v) };
    let mut acc = signed(field.mul(field.from_int(j as i64), e[j - 1]), j - 1);
    for i in 1..j {
        acc = field.add(acc, signed(field.mul(e[j - i - 1], p[i - 1]), j - 1 + i));
    }
    acc
}

/// Whether Newton's identity holds for every `j <= m` on these values.
pub fn newton_holds(field: &FieldSpec, values: &[FieldElement], m: usize) -> bool {
    let p = power_sums(field, values, m);
    let e = elementary_symmetric(field, values, m);
    (1..=m).all(|j| newton_rhs(field, &e, &p, j) == p[j - 1])
}
