//! Exact counting over finite fields: solutions of diagonal equation systems,
//! moment subset sums, and exact evaluation of the estimates that bound them.
//!
//! ```
//! use fqcount::FieldSpec;
//!
//! let f = FieldSpec::new(3, 2).unwrap();
//! assert_eq!(f.order(), 9);
//! ```

pub mod bounds;
pub mod combinatorics;
pub mod diagonal;
mod error;
pub mod field;
mod limits;
pub mod moment;
mod tally;

pub use combinatorics::{CycleType, QSqrt};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, ImageFamily, PolySpec};
pub use limits::Limits;
pub use tally::Distribution;

// The guide's snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/diagonal.md")]
    mod diagonal {}
    #[doc = include_str!("../../../book/src/subsets.md")]
    mod subsets {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
