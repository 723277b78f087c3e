//! Exact spectral machinery for the Johnson association scheme.
//!
//! Matrices whose `(x, y)` entry depends only on `|x ∩ y|` are handled through
//! the standard basis `B_i(x, y) = C(|x \ y|, i)` of the Bose–Mesner algebra,
//! which yields closed-form eigenvalues in exact rational arithmetic. The
//! Hoffman ratio bound built on those spectra certifies
//! `α(J(k²−k+1, k, 1)) = C(k²−k−1, k−2)` together with explicit extremal
//! families, and the lines of `PG(2, q)` supply matching cliques.
//!
//! Eigenvalues and bounds never pass through floating point.

pub mod bose_mesner;
pub mod bounds;
pub mod combinatorics;
pub mod dense;
pub mod error;
pub mod extremal;
pub mod plane;
pub mod ratio;

pub use bose_mesner::{
    basis_eigenvalue, decompose, dense_profile_matrix, eigenspace_profile, spectrum,
    verify_spectrum_dense, BasisCoefficients, DenseCheckReport, EigenspaceProfile,
    ProfileMatrixSpec, Spectrum,
};
pub use bounds::{hoffman_bound, transitivity_bound, verify_theorem, HoffmanReport, TheoremReport};
pub use combinatorics::{
    binomial, build_johnson_graph, intersection_size, unrank, verify_scheme_axioms, AxiomReport,
    JohnsonGraph, JohnsonParams, KSubset,
};
pub use dense::DenseSymmetricMatrix;
pub use error::{Error, Result};
pub use extremal::{
    canonical_family, enumerate_maximum_independent_sets, is_independent, max_independent_set,
    sporadic_family_k3, Census, Enumeration, Family, FamilyKind, Independence, MisResult, Provenance,
};
pub use plane::{
    bruck_ryser_excludes, build_plane, make_field, plane_clique, BruckRyser, BruckRyserVerdict,
    CliqueCertificate, FiniteField, ProjectivePlane,
};

/// Exact rational used for every matrix entry and eigenvalue.
pub type Rational = num_rational::BigRational;
