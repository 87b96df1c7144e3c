//! Exterior powers `∧ⁱM` built from `i×i` minors.
//!
//! The basis of `∧ⁱ` is indexed by sorted `i`-subsets of `0..dim` in
//! lexicographic order, and entry `(S, T)` of `∧ⁱM` is `det M[S, T]`, so that
//! `∧ⁱ(MN) = ∧ⁱM · ∧ⁱN` (Cauchy–Binet).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::eigen::det_c;
use super::matrix::{GaussInt, Matrix, Scalar};
use crate::error::{Error, Result};

/// Determinant over a commutative ring.
pub trait Determinant: Scalar {
    fn det(m: &Matrix<Self>) -> Self;
}

impl Determinant for Complex64 {
    fn det(m: &Matrix<Self>) -> Self {
        det_c(m).expect("square by construction")
    }
}

impl Determinant for f64 {
    fn det(m: &Matrix<Self>) -> Self {
        det_c(&m.to_complex()).expect("square by construction").re
    }
}

/// Bareiss fraction-free elimination: every division is exact.
fn bareiss<T: Scalar>(m: &Matrix<T>, exact_div: impl Fn(&T, &T) -> T) -> T {
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(p, k);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = exact_div(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

impl Determinant for BigInt {
    fn det(m: &Matrix<Self>) -> Self {
        bareiss(m, |a, b| {
            let (q, r) = a.div_rem(b);
            debug_assert!(r.is_zero());
            q
        })
    }
}

impl Determinant for i64 {
    fn det(m: &Matrix<Self>) -> Self {
        let big = m.map(|&x| BigInt::from(x));
        i64::try_from(BigInt::det(&big)).expect("determinant exceeds i64")
    }
}

/// Exact quotient in `Z[i]` when the divisor divides the dividend.
pub fn gauss_exact_div(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let norm = &b.re * &b.re + &b.im * &b.im;
    let num = a * GaussInt::new(b.re.clone(), -b.im.clone());
    debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
    GaussInt::new(num.re / &norm, num.im / &norm)
}

impl Determinant for GaussInt {
    fn det(m: &Matrix<Self>) -> Self {
        bareiss(m, gauss_exact_div)
    }
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

pub fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The `i`-th exterior power of a square matrix.
pub fn exterior_power<T: Determinant>(m: &Matrix<T>, i: usize) -> Result<Matrix<T>> {
    let n = m.ensure_square()?;
    if i > n {
        return Err(Error::OutOfRange {
            what: "exterior degree",
            value: i,
            min: 0,
            max: n,
        });
    }
    let idx = subsets(n, i);
    let size = idx.len();
    Ok(Matrix::from_fn(size, size, |r, c| {
        T::det(&m.select(&idx[r], &idx[c]))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(12, 6).len(), 924);
        assert_eq!(binomial(12, 6), 924);
    }

    #[test]
    fn degree_zero_is_one_by_one() {
        let m = Matrix::from_rows(vec![vec![3i64, 1], vec![4, 1]]).unwrap();
        assert_eq!(exterior_power(&m, 0).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn top_degree_is_determinant() {
        let m = Matrix::from_rows(vec![vec![3i64, 1], vec![4, 2]]).unwrap();
        assert_eq!(exterior_power(&m, 2).unwrap()[(0, 0)], 2);
    }

    #[test]
    fn diagonal_minors() {
        let m = Matrix::diagonal(&[1i64, 2, 3]);
        assert_eq!(exterior_power(&m, 2).unwrap(), Matrix::diagonal(&[2, 3, 6]));
    }

    #[test]
    fn out_of_range_degree() {
        let m = Matrix::<i64>::identity(2);
        assert!(exterior_power(&m, 3).is_err());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
        ])
        .unwrap();
        // 0(0-1) - 2(0-1) + 1(3-0) = 5
        assert_eq!(BigInt::det(&m), BigInt::from(5));
    }

    #[test]
    fn gaussian_determinant() {
        let z = |a: i64, b: i64| GaussInt::new(BigInt::from(a), BigInt::from(b));
        let m = Matrix::from_rows(vec![vec![z(1, 2), z(0, 1)], vec![z(3, 0), z(1, -1)]]).unwrap();
        // (1+2i)(1-i) - i*3 = 3 + i - 3i = 3 - 2i
        assert_eq!(GaussInt::det(&m), z(3, -2));
    }
}
