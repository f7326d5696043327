//! Exact computer algebra for bijective skew PBW extensions over computable
//! fields: normal forms, left Gröbner bases, two-sided saturation, roots and
//! vanishing sets, ideals of points, central Nullstellensatz checks and
//! normality tests.

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod normality;
pub mod nullstellensatz;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod scalar;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use geometry::{
    classify_hypersurface, point_ideal, Geometry, Point, PointIdeal, PointStatus, SearchDomain, VanishingSet,
};
pub use groebner::{
    divide, intersect_left, is_member_left, left_groebner, left_groebner_certified, normal_form, two_sided_saturate,
    Budget, DivisionResult, GroebnerBasis, IdealHandle, IdealStatus, Membership, Sidedness,
};
pub use monomial::{compare_monomials, monomial_divides, Exponent, MonomialOrder};
pub use normality::{central_probe, is_normal, normal_from_parts, NormalElement, NormalityStatus, NormalityVerdict};
pub use nullstellensatz::{
    center_generators, central_nilpotency, commutative_points_ideal, contract_to_center,
    radical_membership_commutative, verify_sandwich, CenterDescription, GeneratorReport, GeneratorStatus,
    SandwichReport, Verdict,
};
pub use poly::{leading_data, LeadingData, Polynomial};
pub use presentation::{check_pbw_consistency, load_presentation, ClassificationFlags, Presentation, Relation};
pub use scalar::{apply_automorphism, field_op, make_field, AutomorphismSpec, Field, FieldOp, FieldSpec, Scalar};
