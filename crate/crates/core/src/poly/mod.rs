//! Univariate polynomials with ascending coefficient vectors.
//!
//! [`PolyZ`] and [`PolyQ`] are exact; [`PolyC`] carries `f64` complex
//! coefficients. Characteristic polynomials are monic.

mod charpoly;
mod pairing;
mod symmetric;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::matrix::{big_to_f64, gauss_to_c64, GaussInt, Scalar};

pub use charpoly::{char_poly_exact, char_poly_float, ExactIntDiv};
pub use pairing::{
    conjugate_pairing, conjugate_pairing_float, real_roots_of_square_free, roots_of_square_free,
    square_free_decomposition, ConjugatePairing, Pair, PairingConvention,
};
pub use symmetric::{elementary_symmetric, elementary_symmetric_exact};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Exact integer polynomial.
pub type PolyZ = Poly<BigInt>;
/// Exact Gaussian-integer polynomial.
pub type PolyG = Poly<GaussInt>;
/// Exact rational polynomial.
pub type PolyQ = Poly<BigRational>;
/// Floating complex polynomial.
pub type PolyC = Poly<Complex64>;

impl<T: Scalar> Poly<T> {
    /// Builds from ascending coefficients, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    /// `t − root`.
    pub fn linear(root: T) -> Self {
        Poly::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn product<'a>(polys: impl IntoIterator<Item = &'a Self>) -> Self
    where
        T: 'a,
    {
        polys.into_iter().fold(Poly::one(), |acc, p| acc.mul(p))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| {
                    (0..k).fold(T::zero(), |acc, _| acc + c.clone())
                })
                .collect(),
        )
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl PolyZ {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_complex(&self) -> PolyC {
        self.map(|c| Complex64::new(big_to_f64(c), 0.0))
    }

    pub fn to_rational(&self) -> PolyQ {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Coefficients as `i64` when they all fit.
    /// The monic integer polynomial `q` with `q² = self`, if there is one.
    pub fn exact_sqrt(&self) -> Option<PolyZ> {
        if self.is_zero() || !self.is_monic() || self.degree() % 2 == 1 {
            return None;
        }
        let n = self.degree() / 2;
        let two = BigInt::from(2);
        // q_{n−j} from the coefficient of t^{2n−j}, top down.
        let mut q = vec![BigInt::zero(); n + 1];
        q[n] = BigInt::one();
        for j in 1..=n {
            let mut r = self.coeff(2 * n - j);
            for i in 1..j {
                r -= &q[n - i] * &q[n - j + i];
            }
            if !(&r % &two).is_zero() {
                return None;
            }
            q[n - j] = r / &two;
        }
        let q = Poly::new(q);
        (q.mul(&q) == *self).then_some(q)
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl PolyG {
    pub fn to_complex(&self) -> PolyC {
        self.map(gauss_to_c64)
    }

    /// Coefficientwise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| GaussInt::new(z.re.clone(), -z.im.clone()))
    }

    /// The integer polynomial when every imaginary part vanishes.
    pub fn to_integer(&self) -> Option<PolyZ> {
        if self.coeffs.iter().all(|z| z.im.is_zero()) {
            Some(self.map(|z| z.re.clone()))
        } else {
            None
        }
    }
}

impl PolyQ {
    pub fn to_complex(&self) -> PolyC {
        self.map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        self.map(|c| c / &lead)
    }

    /// Euclidean division `self = q·d + r`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.leading();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &c * dc;
                }
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<PolyZ> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(self.map(|c| c.to_integer()))
        } else {
            None
        }
    }
}

impl PolyC {
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// `∏ (t − r)^m`.
    pub fn from_roots(roots: &[(Complex64, usize)]) -> Self {
        roots.iter().fold(Poly::one(), |acc, (r, m)| {
            acc.mul(&Poly::linear(*r).pow(*m))
        })
    }

    /// Largest coefficientwise error `|a_k − b_k| / max(1, |b_k|)` against a
    /// reference polynomial.
    pub fn relative_residual(&self, reference: &PolyC) -> f64 {
        let n = self.coeffs.len().max(reference.coeffs.len());
        (0..n)
            .map(|k| {
                let r = reference.coeff(k);
                (self.coeff(k) - r).norm() / r.norm().max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part relative to the coefficient scale.
    pub fn imaginary_residue(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|z| z.im.abs() / z.re.abs().max(1.0))
            .fold(0.0, f64::max)
    }

    /// Rounds to an integer polynomial if every coefficient lies within
    /// `tol` of an integer (relative to its size for large coefficients).
    pub fn round_to_integer(&self, tol: f64) -> Option<PolyZ> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for z in &self.coeffs {
            let r = z.re.round();
            let scale = r.abs().max(1.0);
            if (z.re - r).abs() > tol * scale || z.im.abs() > tol * scale {
                return None;
            }
            out.push(BigInt::from(r as i128));
        }
        Some(Poly::new(out))
    }
}

/// `n^{−deg} · p(n·t)` for an even-degree exact polynomial, as exact rationals.
pub fn scale_char_poly(p: &PolyZ, n: u64) -> PolyQ {
    let deg = p.degree();
    let nn = BigInt::from(n);
    let denom = num_traits::pow(nn.clone(), deg);
    Poly::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| BigRational::new(c * num_traits::pow(nn.clone(), k), denom.clone()))
            .collect(),
    )
}

/// Floating counterpart of [`scale_char_poly`]; roots are divided by `n`.
pub fn scale_poly_float(p: &PolyC, n: u64) -> PolyC {
    let deg = p.degree() as i32;
    let nf = n as f64;
    Poly::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * nf.powi(k as i32 - deg))
            .collect(),
    )
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, k: usize) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let show_coeff = !mag.is_one() || k == 0;
    if show_coeff {
        write!(f, "{mag}")?;
    }
    match k {
        0 => Ok(()),
        1 => write!(f, "t"),
        _ => write!(f, "t^{k}"),
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_term(f, first, c, k)?;
            first = false;
        }
        Ok(())
    }
}
