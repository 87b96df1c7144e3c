use num_bigint::BigInt;

use super::{multiplicity, AlbertType, Block, Endomorphism, SimpleFactor, VarietyModel};
use crate::error::{Error, Result};
use crate::numeric::{GaussInt, MatC, Matrix};
use crate::poly::{char_poly_exact, PolyZ};

/// Reduced characteristic polynomial of one factor's blocks, of degree
/// `e·d·n`, with integer coefficients.
///
/// Types I and II multiply the block characteristic polynomials. Type III
/// uses the reduced norm of each quaternionic block, which is the
/// characteristic polynomial of its complex embedding. Type IV multiplies
/// each block's polynomial by its complex conjugate.
pub fn reduced_char_poly(factor: &SimpleFactor, blocks: &[Block]) -> Result<PolyZ> {
    let mut out = PolyZ::one();
    for b in blocks {
        let p = match (factor.albert_type, b) {
            (AlbertType::I | AlbertType::II, Block::Real(m)) => char_poly_exact(m)?,
            (AlbertType::III, Block::Quaternion(_)) => {
                let g = char_poly_exact(&b.to_gauss()?)?;
                g.to_integer().ok_or_else(|| {
                    Error::Shape("reduced norm of a quaternionic block is not real".into())
                })?
            }
            (AlbertType::IV, Block::Complex(m)) => {
                let g = char_poly_exact(m)?;
                g.mul(&g.conj())
                    .to_integer()
                    .expect("p·conj(p) has real coefficients")
            }
            _ => {
                return Err(Error::Shape(format!(
                    "{:?} block in a type {} factor",
                    b.kind(),
                    factor.albert_type
                )))
            }
        };
        out = out.mul(&p);
    }
    Ok(out)
}

/// Characteristic polynomial of the action on first cohomology,
/// `∏ⱼ P_red,j^{mⱼ}`, of degree `2g`.
pub fn full_char_poly(model: &VarietyModel, alpha: &Endomorphism) -> Result<PolyZ> {
    alpha.check_shape(model)?;
    let mut out = PolyZ::one();
    for (f, bl) in model.factors.iter().zip(&alpha.blocks) {
        let m = multiplicity(f)?;
        out = out.mul(&reduced_char_poly(f, bl)?.pow(m));
    }
    Ok(out)
}

/// `deg α = P(0)`, since `P` has even degree.
pub fn degree(model: &VarietyModel, alpha: &Endomorphism) -> Result<BigInt> {
    Ok(full_char_poly(model, alpha)?.coeff(0))
}

/// Diagonal blocks of [`rational_rep_exact`], in order.
///
/// Per factor, `m` copies of a basic block are listed. For types I and II a
/// copy is `A₁, …, A_e`; for type III it is `ι(A₁), …, ι(A_e)`; for type IV
/// it is `A₁, …, A_{e₀}, conj(A₁), …, conj(A_{e₀})`.
pub fn rational_rep_blocks(model: &VarietyModel, alpha: &Endomorphism) -> Result<Vec<Matrix<GaussInt>>> {
    alpha.check_shape(model)?;
    let mut pieces = Vec::new();
    for (f, bl) in model.factors.iter().zip(&alpha.blocks) {
        let m = multiplicity(f)?;
        let mut copy: Vec<Matrix<GaussInt>> =
            bl.iter().map(Block::to_gauss).collect::<Result<_>>()?;
        if f.albert_type == AlbertType::IV {
            let conj: Vec<_> = copy.iter().map(Matrix::conj).collect();
            copy.extend(conj);
        }
        for _ in 0..m {
            pieces.extend(copy.iter().cloned());
        }
    }
    let size: usize = pieces.iter().map(Matrix::rows).sum();
    let two_g = 2 * model.dimension();
    if size != two_g {
        return Err(Error::Shape(format!(
            "representation has size {size} but 2g = {two_g}"
        )));
    }
    Ok(pieces)
}

/// Exact matrix of `α` on the complexified first cohomology: the block sum
/// of [`rational_rep_blocks`].
pub fn rational_rep_exact(model: &VarietyModel, alpha: &Endomorphism) -> Result<Matrix<GaussInt>> {
    Ok(Matrix::block_diag(&rational_rep_blocks(model, alpha)?))
}

/// Floating-point copy of [`rational_rep_exact`].
pub fn rational_rep(model: &VarietyModel, alpha: &Endomorphism) -> Result<MatC> {
    Ok(rational_rep_exact(model, alpha)?.to_complex())
}
