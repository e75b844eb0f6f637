//! Polynomial families whose value sets have a closed-form size.

use super::{dickson_image, image_set, FieldElement, FieldSpec, PolySpec};
use num_integer::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFamily {
    /// `T^p - T^(p-1)`, value set of size `q - q/p`.
    PShiftedMonomial,
    /// `T^n`, value set of size `1 + (q-1)/gcd(n, q-1)`.
    Monomial { n: u64 },
    /// Dickson `D_n(T, a)`, value set of size
    /// `(q-1)/(2 gcd(n, q-1)) + (q+1)/(2 gcd(n, q+1))` when either `q` is even
    /// with `s >= 2` and `n` even, or `p` is odd and `n` is an odd multiple of
    /// `p`. The parameter must be nonzero (`D_n(T, 0) = T^n`).
    Dickson { n: u64, a: FieldElement },
}

impl ImageFamily {
    /// Whether the closed form is claimed for this field.
    pub fn applies(&self, field: &FieldSpec) -> bool {
        let (p, s) = (u64::from(field.characteristic()), field.degree());
        match *self {
            ImageFamily::PShiftedMonomial => true,
            ImageFamily::Monomial { n } => n >= 1,
            ImageFamily::Dickson { n, a } => {
                !a.is_zero()
                    && n >= 1
                    && ((p == 2 && s >= 2 && n % 2 == 0) || (p > 2 && n % 2 == 1 && n % p == 0))
            }
        }
    }

    /// The closed-form value-set size, or `None` where it is not claimed.
    pub fn expected_size(&self, field: &FieldSpec) -> Option<u64> {
        if !self.applies(field) {
            return None;
        }
        let q = u64::from(field.order());
        let p = u64::from(field.characteristic());
        Some(match *self {
            ImageFamily::PShiftedMonomial => q - q / p,
            ImageFamily::Monomial { n } => 1 + (q - 1) / gcd(n, q - 1),
            ImageFamily::Dickson { n, .. } => {
                let twice = (q - 1) / gcd(n, q - 1) + (q + 1) / gcd(n, q + 1);
                debug_assert!(twice % 2 == 0);
                twice / 2
            }
        })
    }

    pub fn image(&self, field: &FieldSpec) -> Vec<FieldElement> {
        match *self {
            ImageFamily::PShiftedMonomial => {
                let p = field.characteristic() as usize;
                image_set(&PolySpec::from_int_terms(field, &[(p, 1), (p - 1, -1)]), field)
            }
            ImageFamily::Monomial { n } => image_set(&PolySpec::monomial(n as usize), field),
            ImageFamily::Dickson { n, a } => dickson_image(field, n, a),
        }
    }

    /// Every family member with degree at most `max_n` for which the closed
    /// form is claimed over `field`.
    pub fn instances(field: &FieldSpec, max_n: u64) -> Vec<ImageFamily> {
        let mut out = vec![ImageFamily::PShiftedMonomial];
        out.extend((1..=max_n).map(|n| ImageFamily::Monomial { n }));
        for n in 1..=max_n {
            for a in field.elements() {
                let fam = ImageFamily::Dickson { n, a };
                if fam.applies(field) {
                    out.push(fam);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_formula() {
        let f = FieldSpec::new(5, 1).unwrap();
        let fam = ImageFamily::Monomial { n: 2 };
        assert_eq!(fam.expected_size(&f), Some(3));
        assert_eq!(fam.image(&f).len(), 3);
    }

    #[test]
    fn dickson_conditions() {
        let f8 = FieldSpec::new(2, 3).unwrap();
        let one = FieldElement::ONE;
        assert!(ImageFamily::Dickson { n: 4, a: one }.applies(&f8));
        assert!(!ImageFamily::Dickson { n: 3, a: one }.applies(&f8));
        assert!(!ImageFamily::Dickson { n: 4, a: FieldElement::ZERO }.applies(&f8));
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert!(!ImageFamily::Dickson { n: 2, a: one }.applies(&f2));
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert!(ImageFamily::Dickson { n: 9, a: one }.applies(&f9));
        assert!(!ImageFamily::Dickson { n: 6, a: one }.applies(&f9));
    }
}
