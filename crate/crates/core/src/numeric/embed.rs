use num_complex::Complex;

use super::matrix::{Matrix, Scalar};
use super::quaternion::Quaternion;
use crate::error::Result;

/// Embeds `Mₙ(H)` into `M₂ₙ(C)`.
///
/// Writing `A = A₁ + A₂𝕛` with complex `A₁, A₂`, the image is
/// `[[A₁, A₂], [−conj(A₂), conj(A₁)]]`. This is an algebra homomorphism that
/// commutes with conjugate transposition.
pub fn quat_embed<T: Scalar>(a: &Matrix<Quaternion<T>>) -> Result<Matrix<Complex<T>>> {
    let n = a.ensure_square()?;
    Ok(Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let q = &a[(i % n, j % n)];
        let (z1, z2) = q.split();
        match (i < n, j < n) {
            (true, true) => z1,
            (true, false) => z2,
            (false, true) => Complex::new(-z2.re, z2.im),
            (false, false) => Complex::new(z1.re, -z1.im),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion<f64> {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn identity_maps_to_identity() {
        let id = Matrix::<Quaternion<f64>>::identity(3);
        assert_eq!(quat_embed(&id).unwrap(), Matrix::<Complex64>::identity(6));
    }

    #[test]
    fn j_maps_to_rotation() {
        let j = Matrix::from_vec(1, 1, vec![q(0.0, 0.0, 1.0, 0.0)]).unwrap();
        let e = quat_embed(&j).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn i_maps_to_diag_i_minus_i() {
        let i = Matrix::from_vec(1, 1, vec![q(0.0, 1.0, 0.0, 0.0)]).unwrap();
        let e = quat_embed(&i).unwrap();
        assert_eq!(e[(0, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(e[(1, 1)], Complex64::new(0.0, -1.0));
        assert_eq!(e[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_non_square() {
        let a = Matrix::<Quaternion<f64>>::zeros(1, 2);
        assert!(quat_embed(&a).is_err());
    }
}
