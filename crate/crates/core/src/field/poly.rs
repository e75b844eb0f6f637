use super::{FieldElement, FieldSpec};
use crate::error::{invalid, Result};

/// A univariate polynomial over GF(q), dense, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpec {
    coeffs: Vec<FieldElement>,
}

impl PolySpec {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `T^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = FieldElement::ONE;
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, integer coefficient)` terms, the
    /// coefficients taken in the prime subfield.
    pub fn from_int_terms(field: &FieldSpec, terms: &[(usize, i64)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::ZERO; deg + 1];
        for &(e, c) in terms {
            coeffs[e] = field.add(coeffs[e], field.from_int(c));
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Checks the shape `a_n T^n + ... + a_2 T^2` with `n >= 2`: no constant
    /// or linear term.
    pub fn check_no_low_terms(&self) -> Result<()> {
        match self.degree() {
            Some(n) if n >= 2 => {}
            _ => return invalid("polynomial must have degree at least 2"),
        }
        if self.coeffs.iter().take(2).any(|c| !c.is_zero()) {
            return invalid("polynomial must have zero constant and linear terms");
        }
        Ok(())
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &FieldSpec, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }
}

/// The value set `{f(x) : x in GF(q)}`, sorted in canonical order.
pub fn image_set(f: &PolySpec, field: &FieldSpec) -> Vec<FieldElement> {
    collect_image(field, |x| f.eval(field, x))
}

/// Dickson polynomial `D_n(x, a)` from `D_0 = 2`, `D_1 = x`,
/// `D_j = x D_{j-1} - a D_{j-2}`.
pub fn dickson_eval(field: &FieldSpec, n: u64, a: FieldElement, x: FieldElement) -> FieldElement {
    let two = field.from_int(2);
    if n == 0 {
        return two;
    }
    let (mut prev, mut cur) = (two, x);
    for _ in 1..n {
        let next = field.sub(field.mul(x, cur), field.mul(a, prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// Value set of `x -> D_n(x, a)`.
pub fn dickson_image(field: &FieldSpec, n: u64, a: FieldElement) -> Vec<FieldElement> {
    collect_image(field, |x| dickson_eval(field, n, a, x))
}

fn collect_image(field: &FieldSpec, f: impl Fn(FieldElement) -> FieldElement) -> Vec<FieldElement> {
    let mut hit = vec![false; field.order() as usize];
    for x in field.elements() {
        hit[f(x).index() as usize] = true;
    }
    field.elements().filter(|y| hit[y.index() as usize]).collect()
}
