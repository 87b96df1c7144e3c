//! Scalar and matrix arithmetic over reals, complexes and quaternions.

pub mod eigen;
pub mod embed;
pub mod exterior;
pub mod matrix;
pub mod quaternion;

pub use eigen::{
    cluster_means, eigenvalues, hermitian_eigenvalues, singular_values, sorted_moduli,
    spectral_norm, spectral_radius, Spectrum,
};
pub use embed::quat_embed;
pub use exterior::{binomial, binomial_big, exterior_power, subsets, Determinant};
pub use matrix::{Conjugate, GaussInt, MatC, MatH, MatR, Matrix, Scalar};
pub use quaternion::Quaternion;
