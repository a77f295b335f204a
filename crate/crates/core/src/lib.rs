//! Prohibition tools for real algebraic curves on quadrics: sphere schemes,
//! their enumeration, congruence verdicts, ℤ₄ quadratic forms, Arf
//! invariants of singular points and index integrals on the hyperboloid.

pub mod classify;
pub mod congruence;
pub mod enumerate;
pub mod family;
pub mod hyperboloid;
pub mod notation;
pub mod scheme;
pub mod singularity;
pub mod verdict;
pub mod z4form;

pub use classify::{classify, classify_scheme, ClassificationReport, ClassifyOptions, ReportRow};
pub use congruence::{
    characteristic_numbers, theorem1_verdict, theorem1_with_brown, theorem2a_verdict, theorem2b_verdict,
    CharacteristicNumbers, CongruenceError, CurveClass, CurveType,
};
pub use enumerate::{
    apply_filters, bezout_triple_bound, enumerate_schemes, harnack_bound, FilterConfig, FilterReport,
};
pub use family::Family;
pub use scheme::{euler_parts, x_of_oval, OrientedScheme, PlaneScheme, SchemeError, SphereScheme};
pub use verdict::{ResidueCheck, Status, Verdict};
pub use z4form::{brown_invariant, gauss_sum, isotropic_reduce, BrownValue, Z4Form};
pub use hyperboloid::{check_b10, check_b4_b7, euler_integral, index_function, netsvetaev_b12, TorusArrangement};
pub use singularity::{arf_of_sequence, is_odd_sequence, prop_a1_verdict, MultiplicitySequence};
