//! Exact-arithmetic toolkit for totally real algebraic integers of small
//! arboreal height: squared-spectrum construction, interlacing sets, the
//! integer-monoid certification engine, witness star-trees, refutation
//! obstructions, and the real cyclotomic classification.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point anywhere in a verdict path.

pub mod analyze;
pub mod certify;
pub mod cyclo;
pub mod error;
pub mod generator;
pub mod modp;
pub mod obstruct;
pub mod poly;
pub mod roots;
pub mod spectrum;
pub mod startree;

pub use analyze::{
    analyze, cubic_analyze, quadratic_certificate, scale_to_a2, AnalysisReport, InputKind, Verdict,
};
pub use certify::{
    assemble_certificate, combine_vectors, monoid_search, signed_delta, verify_certificate,
    weight_vector, Certificate, GammaElement, MonoidState, SearchBudget, WeightVector,
};
pub use cyclo::{classify_cyclotomic, cyclotomic_poly, real_cyclotomic_min_poly, CycloReport};
pub use error::{Error, Result};
pub use modp::{modp_factor_degrees, modp_obstruction};
pub use obstruct::{
    no_interlacing_obstruction, zeta48_poly, zeta48_three_adic_report, Obstruction, Zeta48Report,
};
pub use poly::{parse_polynomial, IntPolynomial};
pub use roots::{isolate_positive_roots, refine_interval, RationalInterval};
pub use spectrum::{squares_min_poly, EnumBudget, InterlacingSet, Side, SquaresSpectrum};
pub use startree::{
    char_poly_bruteforce, char_poly_closed_form, export_tree, search_min_tree,
    verify_tree_eigenvalue, ExportFormat, RootedStarTree, SearchBounds,
};
