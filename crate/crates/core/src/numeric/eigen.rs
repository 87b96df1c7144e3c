//! Eigenvalues, singular values and spectral radii of complex matrices.
//!
//! General eigenvalues come from a Hessenberg reduction followed by single
//! shifted QR sweeps with Wilkinson shifts. The sweep count is capped at
//! `500·n`; exceeding it is reported as [`Error::NoConvergence`].

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::MatC;
use crate::error::{Error, Result};

const ITERATIONS_PER_DIM: usize = 500;

/// Eigenvalues and singular values of one matrix.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    /// Nonincreasing.
    pub singular_values: Vec<f64>,
}

impl Spectrum {
    pub fn of(m: &MatC) -> Result<Self> {
        Ok(Spectrum {
            eigenvalues: eigenvalues(m)?,
            singular_values: singular_values(m)?,
        })
    }
}

/// `(m / s, s)` with `s` a power of two near the largest entry, so that
/// iterations never overflow. Rejects non-finite entries.
pub(crate) fn normalized(m: &MatC) -> Result<(MatC, f64)> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Overflow(format!(
            "{}x{} matrix has non-finite entries",
            m.rows(),
            m.cols()
        )));
    }
    let max = m.max_abs();
    if max == 0.0 {
        return Ok((m.clone(), 1.0));
    }
    let s = 2f64.powi((max.log2().floor() as i32).clamp(-1022, 1023));
    Ok((m.map(|z| z / s), s))
}

/// All `n` eigenvalues of a square complex matrix, with multiplicity.
pub fn eigenvalues(m: &MatC) -> Result<Vec<Complex64>> {
    let n = m.ensure_square()?;
    let (m, s) = normalized(m)?;
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![m[(0, 0)] * s]),
        _ => {}
    }
    let mut h: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    balance(&mut h);
    hessenberg(&mut h);
    Ok(hessenberg_qr(h)?.into_iter().map(|z| z * s).collect())
}

/// Diagonal similarity scaling by powers of two so that row and column norms
/// are comparable.
fn balance(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += h[j][i].l1_norm();
                    r += h[i][j].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let g = r / radix;
            while cc < g {
                f *= radix;
                cc *= radix * radix;
            }
            let g = r * radix;
            while cc > g {
                f /= radix;
                cc /= radix * radix;
            }
            if (cc + r / f) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    h[i][j] /= f;
                }
                for row in h.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let norm: f64 = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] -= alpha;
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vt) in v.iter().enumerate() {
                dot += vt.conj() * h[k + 1 + t][j];
            }
            for (t, vt) in v.iter().enumerate() {
                h[k + 1 + t][j] -= *vt * dot * 2.0;
            }
        }
        // H <- H (I - 2vv*)
        for row in h.iter_mut() {
            let mut dot = Complex64::new(0.0, 0.0);
            for (t, vt) in v.iter().enumerate() {
                dot += row[k + 1 + t] * vt;
            }
            for (t, vt) in v.iter().enumerate() {
                row[k + 1 + t] -= dot * vt.conj() * 2.0;
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = Complex64::new(0.0, 0.0);
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let s1 = mid + disc;
    let s2 = mid - disc;
    if (s1 - d).norm() <= (s2 - d).norm() {
        s1
    } else {
        s2
    }
}

fn hessenberg_qr(mut h: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = h.len();
    let cap = ITERATIONS_PER_DIM * n;
    let norm: f64 = h
        .iter()
        .flat_map(|r| r.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let eps = f64::EPSILON;
    let tiny = f64::MIN_POSITIVE.max(eps * norm * 1e-3);
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut total = 0usize;
    let mut since_deflation = 0usize;

    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo][lo - 1].norm();
            let scale = h[lo][lo].norm() + h[lo - 1][lo - 1].norm();
            if sub <= eps * scale || sub <= tiny {
                h[lo][lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(Error::NoConvergence {
                dim: n,
                iterations: total,
            });
        }
        let shift = if since_deflation % 11 == 10 {
            h[hi][hi] + Complex64::new(0.75, 0.5) * h[hi][hi - 1].norm()
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

/// One explicit shifted QR step `H − μI = QR`, `H ← RQ + μI` on the window
/// `lo..=hi`.
fn qr_sweep(h: &mut [Vec<Complex64>], lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[k][k] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[k][k];
        let b = h[k + 1][k];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (1.0, Complex64::new(0.0, 0.0))
        } else if a.norm() == 0.0 {
            (0.0, Complex64::new(1.0, 0.0))
        } else {
            let c = a.norm() / r;
            let s = (a / a.norm()) * b.conj() / r;
            (c, s)
        };
        for j in k..=hi {
            let x = h[k][j];
            let y = h[k + 1][j];
            h[k][j] = x * c + s * y;
            h[k + 1][j] = -s.conj() * x + y * c;
        }
        rots.push((c, s));
    }
    for (idx, (c, s)) in rots.into_iter().enumerate() {
        let k = lo + idx;
        for row in h.iter_mut().take((k + 2).min(hi + 1)).skip(lo) {
            let x = row[k];
            let y = row[k + 1];
            row[k] = x * c + y * s.conj();
            row[k + 1] = -x * s + y * c;
        }
    }
    for k in lo..=hi {
        h[k][k] += shift;
    }
}

/// Singular values in nonincreasing order.
pub fn singular_values(m: &MatC) -> Result<Vec<f64>> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let (m, s) = normalized(m)?;
    let svd = nalgebra::SVD::try_new(
        m.to_nalgebra(),
        false,
        false,
        f64::EPSILON,
        ITERATIONS_PER_DIM * n,
    )
    .ok_or(Error::NoConvergence {
        dim: n,
        iterations: ITERATIONS_PER_DIM * n,
    })?;
    let mut sv: Vec<f64> = svd.singular_values.iter().map(|x| x * s).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Largest singular value (the spectral norm).
pub fn spectral_norm(m: &MatC) -> Result<f64> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Real eigenvalues of a Hermitian matrix, nonincreasing.
pub fn hermitian_eigenvalues(m: &MatC) -> Result<Vec<f64>> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = m.max_abs().max(1.0);
    if !m.is_hermitian(1e-12 * scale) {
        return Err(Error::NotSymmetric);
    }
    let (m, s) = normalized(m)?;
    let eig = nalgebra::SymmetricEigen::try_new(
        m.to_nalgebra(),
        f64::EPSILON,
        ITERATIONS_PER_DIM * n,
    )
    .ok_or(Error::NoConvergence {
        dim: n,
        iterations: ITERATIONS_PER_DIM * n,
    })?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().map(|x| x * s).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// Groups values whose single-linkage distance is at most `radius` and
/// replaces each group by its mean. Eigenvalues split by a defective Jordan
/// block have a mean that is accurate to working precision.
pub fn cluster_means(values: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += values[i];
                g.2 += 1;
            }
            None => groups.push((r, values[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, count)| (sum / count as f64, count))
        .collect()
}

/// Relative radius used to merge eigenvalues split by rounding.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Eigenvalues with rounding-split clusters merged back together.
pub fn clustered_eigenvalues(m: &MatC) -> Result<Vec<Complex64>> {
    let eig = eigenvalues(m)?;
    let scale = 1.0 + eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(cluster_means(&eig, CLUSTER_RADIUS * scale)
        .into_iter()
        .flat_map(|(z, k)| std::iter::repeat_n(z, k))
        .collect())
}

/// Maximum eigenvalue modulus.
pub fn spectral_radius(m: &MatC) -> Result<f64> {
    Ok(clustered_eigenvalues(m)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

/// Eigenvalue moduli, nonincreasing.
pub fn sorted_moduli(m: &MatC) -> Result<Vec<f64>> {
    let mut v: Vec<f64> = clustered_eigenvalues(m)?.iter().map(|z| z.norm()).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// Determinant by partial-pivot LU.
pub fn det_c(m: &MatC) -> Result<Complex64> {
    let n = m.ensure_square()?;
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap_or(k);
        if a[p][k].norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::matrix::Matrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: Vec<Vec<f64>>) -> MatC {
        Matrix::from_rows(rows).unwrap().to_complex()
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn assert_close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn diagonal_eigenvalues() {
        let e = sorted(eigenvalues(&real(vec![vec![2.0, 0.0], vec![0.0, 3.0]])).unwrap());
        assert_close(&e, &[c(2.0, 0.0), c(3.0, 0.0)], 1e-14);
    }

    #[test]
    fn rotation_eigenvalues() {
        let e = sorted(eigenvalues(&real(vec![vec![0.0, 1.0], vec![-1.0, 0.0]])).unwrap());
        assert_close(&e, &[c(0.0, -1.0), c(0.0, 1.0)], 1e-14);
    }

    #[test]
    fn realified_gaussian_eigenvalues() {
        // t^2 - 2t + 5 has roots 1 ± 2i.
        let e = sorted(eigenvalues(&real(vec![vec![1.0, -2.0], vec![2.0, 1.0]])).unwrap());
        assert_close(&e, &[c(1.0, -2.0), c(1.0, 2.0)], 1e-13);
    }

    #[test]
    fn larger_matrix_product_matches_det() {
        let m = real(vec![
            vec![4.0, 1.0, -2.0, 2.0, 0.5],
            vec![1.0, 2.0, 0.0, 1.0, -1.0],
            vec![-2.0, 0.0, 3.0, -2.0, 2.0],
            vec![2.0, 1.0, -2.0, -1.0, 0.0],
            vec![3.0, -1.0, 1.0, 0.0, 1.0],
        ]);
        let e = eigenvalues(&m).unwrap();
        let prod = e.iter().fold(c(1.0, 0.0), |acc, z| acc * z);
        let det = det_c(&m).unwrap();
        assert!((prod - det).norm() <= 1e-9 * det.norm());
    }

    #[test]
    fn singular_values_examples() {
        let id = Matrix::<Complex64>::identity(4);
        assert!(singular_values(&id)
            .unwrap()
            .iter()
            .all(|s| (s - 1.0).abs() < 1e-14));
        let d = singular_values(&real(vec![vec![2.0, 0.0], vec![0.0, 1.0]])).unwrap();
        assert!((d[0] - 2.0).abs() < 1e-14 && (d[1] - 1.0).abs() < 1e-14);
        // A*A = [[4,2],[2,2]]: mu^2 - 6 mu + 4 = 0, mu = 3 ± sqrt(5).
        let s = singular_values(&real(vec![vec![2.0, 1.0], vec![0.0, 1.0]])).unwrap();
        let hi = (3.0 + 5f64.sqrt()).sqrt();
        let lo = (3.0 - 5f64.sqrt()).sqrt();
        assert!((s[0] - hi).abs() < 1e-12, "{s:?}");
        assert!((s[1] - lo).abs() < 1e-12, "{s:?}");
        assert!((s[0] - 2.2882).abs() < 1e-4 && (s[1] - 0.8740).abs() < 1e-4);
    }

    #[test]
    fn spectral_radius_examples() {
        let d = Matrix::diagonal(&[c(2.0, 0.0), c(-3.0, 0.0)]);
        assert!((spectral_radius(&d).unwrap() - 3.0).abs() < 1e-14);
        let r = real(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]);
        assert!((spectral_radius(&r).unwrap() - 1.0).abs() < 1e-14);
        let t = real(vec![vec![2.0, 1.0], vec![0.0, 1.0]]);
        assert!((spectral_radius(&t).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn defective_cluster_is_averaged() {
        let j = real(vec![
            vec![3.0, 1.0, 0.0],
            vec![0.0, 3.0, 1.0],
            vec![0.0, 0.0, 3.0],
        ]);
        let r = spectral_radius(&j).unwrap();
        assert!((r - 3.0).abs() < 1e-12, "{r}");
    }

    #[test]
    fn non_square_is_rejected() {
        let m = Matrix::<Complex64>::zeros(2, 3);
        assert!(matches!(eigenvalues(&m), Err(Error::NotSquare { .. })));
        assert!(singular_values(&m).is_err());
    }

    #[test]
    fn hermitian_rejects_non_hermitian() {
        let m = real(vec![vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotSymmetric)));
        let h = real(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = hermitian_eigenvalues(&h).unwrap();
        assert!((e[0] - 3.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
    }
}
