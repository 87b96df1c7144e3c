use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use super::Poly;
use crate::error::Result;
use crate::numeric::eigen::eigenvalues;
use crate::numeric::matrix::{GaussInt, MatC, Matrix, Scalar};

/// Division by a small positive integer that is known to be exact.
pub trait ExactIntDiv: Scalar {
    fn div_exact(&self, k: usize) -> Self;
}

impl ExactIntDiv for BigInt {
    fn div_exact(&self, k: usize) -> Self {
        let (q, r) = self.div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "inexact division in characteristic polynomial");
        q
    }
}

impl ExactIntDiv for GaussInt {
    fn div_exact(&self, k: usize) -> Self {
        GaussInt::new(self.re.div_exact(k), self.im.div_exact(k))
    }
}

/// `det(tI − M)` by Faddeev–LeVerrier in exact arithmetic.
///
/// `M_k = A·M_{k−1} + c_{n−k+1}·I` and `c_{n−k} = −tr(A·M_k)/k`; the
/// divisions are exact because the coefficients are integral.
pub fn char_poly_exact<T: ExactIntDiv>(m: &Matrix<T>) -> Result<Poly<T>> {
    let n = m.ensure_square()?;
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut mk = Matrix::<T>::zeros(n, n);
    for k in 1..=n {
        mk = m.matmul(&mk)?;
        for i in 0..n {
            mk[(i, i)] = mk[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let tr = m.matmul(&mk)?.trace();
        coeffs[n - k] = -tr.div_exact(k);
    }
    Ok(Poly::new(coeffs))
}

/// Monic characteristic polynomial of a complex matrix, expanded from its
/// eigenvalues.
pub fn char_poly_float(m: &MatC) -> Result<Poly<Complex64>> {
    let eig = eigenvalues(m)?;
    Ok(eig
        .iter()
        .fold(Poly::one(), |acc, z| acc.mul(&Poly::linear(*z))))
}
