//! Linear codes over `F_p` from the defining set
//! `D = {x ∈ F_{p^m}* : Tr(x² + x) = 0}`.
//!
//! The crate builds the code, enumerates its weight distribution, evaluates
//! the closed-form weight tables and the character-sum identities behind
//! them, and checks each closed form against an independent enumeration.
//!
//! ```
//! use tracecodes::field::{FieldCtx, DEFAULT_MAX_Q};
//! use tracecodes::code::{brute_weight_distribution, DefiningSet};
//!
//! let ctx = FieldCtx::new(3, 4, DEFAULT_MAX_Q).unwrap();
//! let ds = DefiningSet::new(&ctx);
//! let dist = brute_weight_distribution(&ds, DEFAULT_MAX_Q).unwrap();
//! assert_eq!(dist.enumerator_string(), "1+44x^18+30x^21+6x^24");
//! ```

pub mod closed_form;
pub mod code;
pub mod cyclotomic;
pub mod field;
pub mod report;
