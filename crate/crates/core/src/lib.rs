//! Certified growth constants for integer sequences defined by polynomial
//! recursions `x_{n+1} = P(x_n)`.
//!
//! Such a sequence, when it tends to infinity, satisfies
//! `x_n = A α^(d^n) + B + O(α^(-d^n))`. This crate computes rigorous
//! enclosures of `α`, checks floor/round closed forms against the exact
//! iterates, and issues irrationality certificates: for an integer sequence
//! the constant `α` is either an integer or irrational, so an enclosure that
//! excludes every integer settles the question.
//!
//! Module map:
//! * [`polynomial`]: exact polynomials, parsing, normalization constants;
//! * [`real`]: dyadic ball arithmetic with certified `exp`/`log`/roots;
//! * [`orbit`]: exact iteration and divergence certification;
//! * [`growth`]: the telescoping series for `log α` and closed-form checks;
//! * [`classify`]: certificates and the algebraic-candidate probe;
//! * [`seqfit`]: non-certified fits of `A α^n + B` to b-file data.

pub mod classify;
pub mod growth;
pub mod orbit;
pub mod polynomial;
pub mod rational;
pub mod real;
pub mod seqfit;

pub use classify::{certify_irrational, search_algebraic_candidates, Certificate, CertificateKind};
pub use growth::{growth_constant, ClosedFormMode, GrowthConstant, GrowthOptions, Verdict};
pub use orbit::{Budget, OrbitRecord, OrbitStatus};
pub use polynomial::{parse_poly, NormalizationData, RationalPoly};
pub use rational::Rational;
pub use seqfit::{fit_geometric, load_bfile, FitResult, SequenceSample};
pub use real::{ball_to_decimal, Ball, DecimalOutput, Dyadic, IntegerContent, Precision};
