//! Exact computation of Buchsbaum–Rim multiplicities, generalized Koszul
//! complexes and their homology over standard-graded quotients of
//! polynomial rings over prime fields.

pub mod error;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod koszul;
pub mod monomial;
pub mod multiplicity;
pub mod poly;
pub mod ring;
pub mod syzygy;
pub mod vector;

pub use error::{AlgebraError, Error, Result};
pub use field::PrimeField;
pub use groebner::{buchberger, Budget, GroebnerBasis, Length};
pub use homology::{
    acyclicity_report, all_homology, annihilation_check, annihilation_violations,
    euler_characteristics, homology, kernel_generators, AcyclicityReport, AnnihilationViolation,
    EulerTable, HomologyPresentation,
};
pub use koszul::{
    build_koszul, contraction, fitting_ideal, verify_complex, BasisElement, DifferentialKind,
    ExteriorIndex, FreeComplex, ModuleMatrix, PolyMatrix, SymIndex, Violation,
};
pub use monomial::{monomial_ideal_dimension, Monomial};
pub use multiplicity::{
    br_coefficients, br_function_table, br_multiplicity, buchsbaum_spread, lambda,
    rees_power_generators, theorem_check, BRFunctionTable, BRReport, CheckOptions, SamplingSpec,
    SpreadReport, SpreadSample, TSlice, Verdicts,
};
pub use poly::{ArithOp, Poly, PolyRing};
pub use ring::{GradedRing, ParameterVerdict, RingElement, SubmoduleOfFree, Telemetry};
pub use syzygy::{relation_basis, syzygy_basis};
pub use vector::{ModMonomial, MonomialOrder, VecPoly};
