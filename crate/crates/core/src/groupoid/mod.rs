//! The Kummer groupoid of a projective structure in coordinates: groupoid
//! equation, differential invariant, parallel bases, Lie-algebra operators
//! and the affine reduction.

mod affine;
mod ode;
mod projective;

pub use affine::{infinitesimal_pullback_symbolic, AffineStructure};
pub use ode::LinearODE;
pub use projective::{
    base_curvature, change_of_basis_symbolic, curvature_letter, identity_matrix, invariant_symbolic,
    left_translation_jacobian, left_translation_jacobian_at, lie_expression, mat_mul, parallel_basis_y_symbolic,
    sl2_basis_e_symbolic, Matrix3, ProjectiveStructure,
};
