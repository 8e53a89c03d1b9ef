//! SLOCC invariants and residual entanglement for n-qubit pure states.
//!
//! * [`statevec`] builds and manipulates amplitude vectors.
//! * [`signtab`] holds the recursive `sign` / `sign*` orientation tables.
//! * [`invariant`] evaluates `IV*`, `IVbar`, the odd-n invariant and `tau`.
//! * [`slocc`] applies local operator chains and checks the transform laws.
//! * [`criteria`] evaluates the D- and F-criteria.
//! * [`classify`] turns invariant vanishing into pairwise verdicts.
//! * [`oracle`] has literal small-n expressions for cross-checking.
//! * [`io`] reads and writes the JSON file formats.

pub mod classify;
pub mod criteria;
pub mod error;
pub mod invariant;
pub mod io;
pub mod oracle;
pub mod signtab;
pub mod slocc;
pub mod statevec;
mod sum;

pub use classify::{compare, compare_with_witness, dual_equivalence, Outcome, Verdict};
pub use criteria::{criteria_signature, d_criteria, f_enumerate, f_evaluate, CriteriaSet, CriteriaSignature, FSubscripts};
pub use error::{Error, Result};
pub use invariant::{invariant_report, iv_bar, iv_even, iv_star, iv_star_shifted, odd_invariant, tau, InvariantReport, Parity};
pub use num_complex::Complex64;
pub use signtab::SignTable;
pub use slocc::{apply_chain, det_product, random_chain, verify_theorem1, verify_theorem2, LocalOperator, LocalOperatorChain};
pub use statevec::StateVector;
pub use sum::CompensatedSum;
