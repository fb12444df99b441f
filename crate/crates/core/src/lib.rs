//! Exact hulls of linear codes over finite fields, constructive
//! diagonalization of their Gramians, and the entanglement-assisted quantum
//! code parameters that follow from them.
//!
//! Module map:
//!
//! * [`gf`]: arithmetic in GF(p^m)
//! * [`matfq`]: dense matrices, elimination, Gramians
//! * [`codes`]: linear codes, duals, hulls, predicates, minimum distance
//! * [`diag`]: Gramian diagonalization
//! * [`eaqecc`]: EAQECC parameters and the length extension
//! * [`oracle`]: brute-force reference implementations
//! * [`cli`]: code files, reports and the `hullforge` command line

pub mod cli;
pub mod codes;
pub mod diag;
pub mod eaqecc;
pub mod gf;
pub mod matfq;
pub mod oracle;

pub use codes::{HullReport, LinearCode, Side, Subspace};
pub use diag::DiagonalizationResult;
pub use eaqecc::{EaqeccRecord, ExtensionCertificate, Rational};
pub use gf::{Fe, FieldSpec};
pub use matfq::{Form, MatrixFq};
pub use oracle::EnumerationBudget;
