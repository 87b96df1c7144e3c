//! Splitting the roots of a real polynomial into conjugate pairs.
//!
//! Given `P` of degree `2g` whose real roots all have even multiplicity, the
//! root multiset is `{π₁, π̄₁, …, π_g, π̄_g}`. The representative of each pair
//! is the member with nonnegative imaginary part. This is a convention only:
//! either member of a pair gives a valid factor `∏(t − π)`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{PolyC, PolyQ, PolyZ};
use crate::error::{Error, Result};
use crate::numeric::eigen::{cluster_means, eigenvalues, CLUSTER_RADIUS};
use crate::numeric::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Pair {
    /// Representative with `im ≥ 0`; exactly real for real pairs.
    pub root: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugatePairing {
    /// Sorted by modulus (descending), then real and imaginary part.
    pub pairs: Vec<Pair>,
    pub residual: f64,
}

/// Which member of each conjugate pair goes into the Albert factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairingConvention {
    #[default]
    UpperHalf,
    LowerHalf,
}

impl ConjugatePairing {
    /// Number of pairs counted with multiplicity (half the degree).
    pub fn half_degree(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Representatives expanded by multiplicity.
    pub fn representatives(&self, convention: PairingConvention) -> Vec<Complex64> {
        self.pairs
            .iter()
            .flat_map(|p| {
                let r = match convention {
                    PairingConvention::UpperHalf => p.root,
                    PairingConvention::LowerHalf => p.root.conj(),
                };
                std::iter::repeat_n(r, p.multiplicity)
            })
            .collect()
    }

    /// `|π_i|` for the `g` representatives, nonincreasing.
    pub fn sorted_moduli(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self
            .representatives(PairingConvention::UpperHalf)
            .iter()
            .map(|z| z.norm())
            .collect();
        m.sort_by(|a, b| b.total_cmp(a));
        m
    }

    /// `∏ (t − π)^μ` over the chosen representatives.
    pub fn albert_factor(&self, convention: PairingConvention) -> PolyC {
        let roots: Vec<(Complex64, usize)> = self
            .pairs
            .iter()
            .map(|p| {
                let r = match convention {
                    PairingConvention::UpperHalf => p.root,
                    PairingConvention::LowerHalf => p.root.conj(),
                };
                (r, p.multiplicity)
            })
            .collect();
        PolyC::from_roots(&roots)
    }

    /// `∏ (t − π)^μ (t − π̄)^μ`.
    pub fn expand(&self) -> PolyC {
        let f = self.albert_factor(PairingConvention::UpperHalf);
        f.mul(&f.conj())
    }
}

/// Yun's square-free decomposition over `Q`: `p = lc · ∏ fᵢ^i` with each `fᵢ`
/// monic, square-free and pairwise coprime. Only factors of positive degree
/// are returned.
pub fn square_free_decomposition(p: &PolyZ) -> Vec<(PolyQ, usize)> {
    let f = p.to_rational().make_monic();
    if f.degree() == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_rem(&a0).0;
    let c = df.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let b_next = b.div_rem(&a).0;
        let c_next = d.div_rem(&a).0;
        d = c_next.sub(&b_next.derivative());
        if a.degree() > 0 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn newton_polish(p: &PolyC, dp: &PolyC, mut x: Complex64) -> Complex64 {
    let mut fx = p.eval(&x);
    for _ in 0..8 {
        let d = dp.eval(&x);
        if d.norm() == 0.0 {
            break;
        }
        let step = fx / d;
        let y = x - step;
        let fy = p.eval(&y);
        if fy.norm() >= fx.norm() {
            break;
        }
        x = y;
        fx = fy;
    }
    x
}

/// Roots of a monic square-free rational polynomial.
pub fn roots_of_square_free(f: &PolyQ) -> Result<Vec<Complex64>> {
    let f = f.make_monic();
    let n = f.degree();
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-rational_to_f64(&f.coeff(0)), 0.0)]),
        2 => {
            // Exact discriminant decides realness.
            let b = f.coeff(1);
            let c = f.coeff(0);
            let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
            let bf = rational_to_f64(&b);
            let df = rational_to_f64(&disc);
            return Ok(if disc.is_negative() {
                let im = (-df).sqrt() / 2.0;
                vec![Complex64::new(-bf / 2.0, im), Complex64::new(-bf / 2.0, -im)]
            } else {
                let s = df.sqrt();
                let sign = if bf < 0.0 { -1.0 } else { 1.0 };
                let q = -0.5 * (bf + sign * s);
                let r2 = if q != 0.0 { rational_to_f64(&c) / q } else { 0.0 };
                vec![Complex64::new(q, 0.0), Complex64::new(r2, 0.0)]
            });
        }
        _ => {}
    }
    let pc = f.to_complex();
    let companion = Matrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -pc.coeff(i)
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        }
    });
    let dp = pc.derivative();
    Ok(eigenvalues(&companion)?
        .into_iter()
        .map(|x| newton_polish(&pc, &dp, x))
        .collect())
}

/// Real roots of a square-free rational polynomial whose roots are known to
/// be real.
pub fn real_roots_of_square_free(f: &PolyQ) -> Result<Vec<f64>> {
    Ok(roots_of_square_free(f)?.iter().map(|z| z.re).collect())
}

fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol * (1.0 + z.norm())
}

fn finish(mut pairs: Vec<Pair>, degree: usize, reference: &PolyC, tol: f64) -> Result<ConjugatePairing> {
    let count: usize = pairs.iter().map(|p| p.multiplicity).sum();
    if 2 * count != degree {
        return Err(Error::PairingFailure(format!(
            "paired {} of {} roots",
            2 * count,
            degree
        )));
    }
    pairs.sort_by(|a, b| {
        b.root
            .norm()
            .total_cmp(&a.root.norm())
            .then(b.root.re.total_cmp(&a.root.re))
            .then(b.root.im.total_cmp(&a.root.im))
    });
    let mut pairing = ConjugatePairing {
        pairs,
        residual: 0.0,
    };
    pairing.residual = pairing.expand().relative_residual(reference);
    if pairing.residual > tol {
        return Err(Error::PairingFailure(format!(
            "reconstruction residual {:.3e} exceeds {:.1e}",
            pairing.residual, tol
        )));
    }
    Ok(pairing)
}

/// Conjugate pairing of an exact integer polynomial.
///
/// Multiplicities come from an exact square-free decomposition, so repeated
/// roots cause no loss of accuracy. A real root of odd multiplicity is a
/// [`Error::PairingFailure`].
pub fn conjugate_pairing(p: &PolyZ, tol: f64) -> Result<ConjugatePairing> {
    if p.is_zero() || p.degree() % 2 == 1 {
        return Err(Error::PairingFailure(format!(
            "degree {} is not even",
            p.degree()
        )));
    }
    let mut pairs = Vec::new();
    for (factor, mult) in square_free_decomposition(p) {
        for r in roots_of_square_free(&factor)? {
            if is_real(r, tol) {
                if mult % 2 == 1 {
                    return Err(Error::PairingFailure(format!(
                        "real root {:.6} has odd multiplicity {mult}",
                        r.re
                    )));
                }
                pairs.push(Pair {
                    root: Complex64::new(r.re, 0.0),
                    multiplicity: mult / 2,
                });
            } else if r.im > 0.0 {
                pairs.push(Pair {
                    root: r,
                    multiplicity: mult,
                });
            }
        }
    }
    let lead = p.leading();
    let monic_ref = p.to_complex().map(|c| c / crate::numeric::matrix::big_to_f64(&lead));
    finish(pairs, p.degree(), &monic_ref, tol)
}

/// Conjugate pairing of a floating polynomial: roots from the companion
/// matrix, single-linkage clustering with radius `max(tol, 1e-6)·(1 + max|root|)`,
/// then pairing of the clusters. A double root splits by roughly `√ε·|root|`
/// in floating point, hence the floor on the radius.
pub fn conjugate_pairing_float(p: &PolyC, tol: f64) -> Result<ConjugatePairing> {
    if p.is_zero() || p.degree() % 2 == 1 {
        return Err(Error::PairingFailure(format!(
            "degree {} is not even",
            p.degree()
        )));
    }
    let lead = p.leading();
    let monic: PolyC = p.map(|c| c / lead);
    let n = monic.degree();
    let companion = Matrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -monic.coeff(i)
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        }
    });
    let roots = eigenvalues(&companion)?;
    let radius =
        tol.max(CLUSTER_RADIUS) * (1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max));
    let clusters = cluster_means(&roots, radius);
    let mut pairs = Vec::new();
    let mut lower = Vec::new();
    for (z, count) in clusters {
        if z.im.abs() <= radius {
            if count % 2 == 1 {
                return Err(Error::PairingFailure(format!(
                    "real root {:.6} has odd multiplicity {count}",
                    z.re
                )));
            }
            pairs.push(Pair {
                root: Complex64::new(z.re, 0.0),
                multiplicity: count / 2,
            });
        } else if z.im > 0.0 {
            pairs.push(Pair {
                root: z,
                multiplicity: count,
            });
        } else {
            lower.push((z, count));
        }
    }
    for (z, count) in lower {
        let matched = pairs
            .iter()
            .any(|p| p.multiplicity == count && (p.root - z.conj()).norm() <= 2.0 * radius);
        if !matched {
            return Err(Error::PairingFailure(format!(
                "root {z} has no conjugate partner"
            )));
        }
    }
    finish(pairs, n, &monic, tol)
}
