//! Albert polynomials: monic `P^A` of degree `g` with `P^A·conj(P^A) = P`.
//!
//! The construction goes factor by factor through the endomorphism algebra.
//! Types I and II take `χ_red^{m/2}`. Type III pairs the roots of the reduced
//! norm of each quaternionic block and takes one representative per pair.
//! Type IV takes `∏ det(t − Aᵢ)^m`, which only uses the complex blocks
//! themselves and not their conjugates.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    full_char_poly, multiplicity, reduced_char_poly, AlbertType, Block, Endomorphism,
    SimpleFactor, VarietyModel,
};
use crate::numeric::{hermitian_eigenvalues, Matrix};
use crate::poly::{
    char_poly_exact, conjugate_pairing, scale_char_poly, scale_poly_float, PairingConvention,
    Poly, PolyC, PolyQ, PolyZ,
};

/// Default relative tolerance for pairing and for the factorization check.
pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub factor: usize,
    pub case: AlbertType,
    pub multiplicity: usize,
    /// Exponent applied to the per-factor base polynomial.
    pub exponent: usize,
    /// Cases I and II: the exponent is `m/2`.
    pub halved: bool,
    /// Case III: roots of the reduced norm were paired.
    pub paired: bool,
}

#[derive(Clone, Debug)]
pub struct AlbertFactorization {
    pub p_albert: PolyC,
    /// Integer coefficients, present exactly when every factor is of type I
    /// or II.
    pub p_albert_exact: Option<PolyZ>,
    pub char_poly: PolyZ,
    pub case_trace: Vec<CaseRecord>,
    pub exact: bool,
    /// `max_k |(P^A·conj P^A − P)_k| / max(1, |P_k|)`.
    pub residual: f64,
}

impl AlbertFactorization {
    /// Albert polynomial of `α/n`: `n^{−g}·P^A(n·t)`.
    pub fn scaled(&self, n: u64) -> PolyC {
        scale_poly_float(&self.p_albert, n)
    }

    /// Characteristic polynomial of `α/n`, exactly.
    pub fn scaled_char_poly(&self, n: u64) -> PolyQ {
        scale_char_poly(&self.char_poly, n)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AlbertOptions {
    pub convention: PairingConvention,
    pub tol: f64,
}

impl Default for AlbertOptions {
    fn default() -> Self {
        AlbertOptions {
            convention: PairingConvention::UpperHalf,
            tol: DEFAULT_TOL,
        }
    }
}

pub fn albert_poly(model: &VarietyModel, alpha: &Endomorphism) -> Result<AlbertFactorization> {
    albert_poly_with(model, alpha, AlbertOptions::default())
}

pub fn albert_poly_with(
    model: &VarietyModel,
    alpha: &Endomorphism,
    opts: AlbertOptions,
) -> Result<AlbertFactorization> {
    model.validate()?;
    alpha.check_shape(model)?;
    let mut p_albert = PolyC::one();
    let mut exact_part = PolyZ::one();
    let mut exact = true;
    let mut trace = Vec::with_capacity(model.factors.len());
    for (j, (f, blocks)) in model.factors.iter().zip(&alpha.blocks).enumerate() {
        let m = multiplicity(f)?;
        let (piece, record) = factor_albert(j, f, m, blocks, opts)?;
        match piece {
            Piece::Exact(p) => {
                p_albert = p_albert.mul(&p.to_complex());
                exact_part = exact_part.mul(&p);
            }
            Piece::Float(p) => {
                p_albert = p_albert.mul(&p);
                exact = false;
            }
        }
        trace.push(record);
    }
    let char_poly = full_char_poly(model, alpha)?;
    let residual = p_albert
        .mul(&p_albert.conj())
        .relative_residual(&char_poly.to_complex());
    if residual > opts.tol {
        return Err(Error::PairingFailure(format!(
            "P^A·conj(P^A) differs from P by {residual:.3e}"
        )));
    }
    Ok(AlbertFactorization {
        p_albert,
        p_albert_exact: exact.then_some(exact_part),
        char_poly,
        case_trace: trace,
        exact,
        residual,
    })
}

enum Piece {
    Exact(PolyZ),
    Float(PolyC),
}

fn factor_albert(
    index: usize,
    f: &SimpleFactor,
    m: usize,
    blocks: &[Block],
    opts: AlbertOptions,
) -> Result<(Piece, CaseRecord)> {
    let mut record = CaseRecord {
        factor: index,
        case: f.albert_type,
        multiplicity: m,
        exponent: m,
        halved: false,
        paired: false,
    };
    let piece = match f.albert_type {
        AlbertType::I | AlbertType::II => {
            assert!(
                m % 2 == 0,
                "validated type {} factor has odd multiplicity {m}",
                f.albert_type
            );
            record.exponent = m / 2;
            record.halved = true;
            Piece::Exact(reduced_char_poly(f, blocks)?.pow(m / 2))
        }
        AlbertType::III => {
            record.paired = true;
            let mut out = PolyC::one();
            for b in blocks {
                let nrd = reduced_char_poly(f, std::slice::from_ref(b))?;
                let pairing = conjugate_pairing(&nrd, opts.tol)?;
                out = out.mul(&pairing.albert_factor(opts.convention).pow(m));
            }
            Piece::Float(out)
        }
        AlbertType::IV => {
            let mut out = PolyC::one();
            for b in blocks {
                let Block::Complex(a) = b else {
                    return Err(Error::Shape("type IV factor needs complex blocks".into()));
                };
                let p = char_poly_exact(a)?.to_complex();
                let p = match opts.convention {
                    PairingConvention::UpperHalf => p,
                    PairingConvention::LowerHalf => p.conj(),
                };
                out = out.mul(&p.pow(m));
            }
            Piece::Float(out)
        }
    };
    Ok((piece, record))
}

/// Albert polynomial of a Rosati-symmetric endomorphism from the real
/// eigenvalues of its Hermitian blocks.
pub fn albert_poly_symmetric(model: &VarietyModel, alpha: &Endomorphism) -> Result<PolyC> {
    model.validate()?;
    alpha.check_shape(model)?;
    if !alpha.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut roots: Vec<(Complex64, usize)> = Vec::new();
    for (f, blocks) in model.factors.iter().zip(&alpha.blocks) {
        let m = multiplicity(f)?;
        for b in blocks {
            let eig = hermitian_eigenvalues(&b.to_gauss()?.to_complex())?;
            match f.albert_type {
                AlbertType::I | AlbertType::II => {
                    roots.extend(eig.iter().map(|&x| (Complex64::new(x, 0.0), m / 2)));
                }
                // Eigenvalues of an embedded Hermitian quaternion matrix come
                // in equal pairs.
                AlbertType::III => {
                    roots.extend(eig.iter().step_by(2).map(|&x| (Complex64::new(x, 0.0), m)));
                }
                AlbertType::IV => {
                    roots.extend(eig.iter().map(|&x| (Complex64::new(x, 0.0), m)));
                }
            }
        }
    }
    Ok(PolyC::from_roots(&roots))
}

/// Exact integer Albert polynomial of a Rosati-symmetric endomorphism.
pub fn albert_poly_symmetric_exact(model: &VarietyModel, alpha: &Endomorphism) -> Result<PolyZ> {
    model.validate()?;
    alpha.check_shape(model)?;
    if !alpha.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut out = PolyZ::one();
    for (f, blocks) in model.factors.iter().zip(&alpha.blocks) {
        let m = multiplicity(f)?;
        for b in blocks {
            let base = match (f.albert_type, b) {
                (AlbertType::I | AlbertType::II, _) => {
                    reduced_char_poly(f, std::slice::from_ref(b))?.pow(m / 2)
                }
                (AlbertType::III, _) => reduced_char_poly(f, std::slice::from_ref(b))?
                    .exact_sqrt()
                    .ok_or_else(|| {
                        Error::Oracle("reduced norm of a Hermitian block is not a square".into())
                    })?
                    .pow(m),
                (AlbertType::IV, Block::Complex(a)) => char_poly_exact(a)?
                    .to_integer()
                    .ok_or_else(|| {
                        Error::Oracle("Hermitian block has a non-real characteristic polynomial".into())
                    })?
                    .pow(m),
                _ => return Err(Error::Shape("type IV factor needs complex blocks".into())),
            };
            out = out.mul(&base);
        }
    }
    Ok(out)
}

/// `(c_0, …, c_g)` with `P^A_{α†α}(t) = Σ (−1)^k c_k t^{g−k}`.
pub fn corollary_b_coefficients(model: &VarietyModel, alpha: &Endomorphism) -> Result<Vec<BigInt>> {
    let sym = alpha.rosati_square()?;
    let p = albert_poly_symmetric_exact(model, &sym)?;
    let g = p.degree();
    Ok((0..=g)
        .map(|k| {
            let c = p.coeff(g - k);
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect())
}

/// Reduced norm polynomial of `a + b𝕚 + c𝕛 + d𝕜`.
pub fn supersingular_char_poly(a: i64, b: i64, c: i64, d: i64) -> PolyZ {
    let (a, b, c, d) = (
        BigInt::from(a),
        BigInt::from(b),
        BigInt::from(c),
        BigInt::from(d),
    );
    let norm = &a * &a + &b * &b + &c * &c + &d * &d;
    Poly::new(vec![norm, -(BigInt::from(2) * a), BigInt::from(1)])
}

/// Convenience for a one-block quaternionic endomorphism.
pub fn quaternion_scalar_block(a: i64, b: i64, c: i64, d: i64) -> Block {
    Block::Quaternion(Matrix::from_vec(
        1,
        1,
        vec![crate::numeric::Quaternion::new(a.into(), b.into(), c.into(), d.into())],
    )
    .expect("1x1"))
}
