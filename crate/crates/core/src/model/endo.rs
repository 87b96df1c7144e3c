use num_bigint::BigInt;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{SimpleFactor, VarietyModel};
use crate::error::{Error, Result};
use crate::numeric::{quat_embed, GaussInt, Matrix, Quaternion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Real,
    Complex,
    Quaternion,
}

/// One simple summand of the real endomorphism algebra, with exact entries.
#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    Real(Matrix<BigInt>),
    Complex(Matrix<GaussInt>),
    Quaternion(Matrix<Quaternion<BigInt>>),
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Real(_) => BlockKind::Real,
            Block::Complex(_) => BlockKind::Complex,
            Block::Quaternion(_) => BlockKind::Quaternion,
        }
    }

    pub fn size(&self) -> (usize, usize) {
        match self {
            Block::Real(m) => (m.rows(), m.cols()),
            Block::Complex(m) => (m.rows(), m.cols()),
            Block::Quaternion(m) => (m.rows(), m.cols()),
        }
    }

    pub fn identity(kind: BlockKind, n: usize) -> Block {
        Block::scalar(kind, n, 1)
    }

    /// `s·I` in the given ring.
    pub fn scalar(kind: BlockKind, n: usize, s: i64) -> Block {
        let s = BigInt::from(s);
        match kind {
            BlockKind::Real => Block::Real(Matrix::scalar(n, s)),
            BlockKind::Complex => Block::Complex(Matrix::scalar(n, Complex::new(s, BigInt::from(0)))),
            BlockKind::Quaternion => {
                let z = BigInt::from(0);
                Block::Quaternion(Matrix::scalar(n, Quaternion::new(s, z.clone(), z.clone(), z)))
            }
        }
    }

    /// Conjugate transpose; the positive involution on this summand.
    pub fn adjoint(&self) -> Block {
        match self {
            Block::Real(m) => Block::Real(m.transpose()),
            Block::Complex(m) => Block::Complex(m.adjoint()),
            Block::Quaternion(m) => Block::Quaternion(m.adjoint()),
        }
    }

    pub fn matmul(&self, other: &Block) -> Result<Block> {
        match (self, other) {
            (Block::Real(a), Block::Real(b)) => Ok(Block::Real(a.matmul(b)?)),
            (Block::Complex(a), Block::Complex(b)) => Ok(Block::Complex(a.matmul(b)?)),
            (Block::Quaternion(a), Block::Quaternion(b)) => Ok(Block::Quaternion(a.matmul(b)?)),
            _ => Err(Error::Shape(format!(
                "cannot compose {:?} and {:?} blocks",
                self.kind(),
                other.kind()
            ))),
        }
    }

    /// The block as a complex matrix; quaternionic blocks go through the
    /// standard embedding and double in size.
    pub fn to_gauss(&self) -> Result<Matrix<GaussInt>> {
        match self {
            Block::Real(m) => Ok(m.to_gauss()),
            Block::Complex(m) => Ok(m.clone()),
            Block::Quaternion(m) => quat_embed(m),
        }
    }

    /// Largest absolute value of any integer component.
    pub fn max_entry(&self) -> BigInt {
        let mut best = BigInt::from(0);
        let mut see = |x: &BigInt| {
            let a = if x < &BigInt::from(0) { -x.clone() } else { x.clone() };
            if a > best {
                best = a;
            }
        };
        match self {
            Block::Real(m) => m.iter().for_each(&mut see),
            Block::Complex(m) => m.iter().for_each(|z| {
                see(&z.re);
                see(&z.im);
            }),
            Block::Quaternion(m) => m.iter().for_each(|q| {
                see(&q.a);
                see(&q.b);
                see(&q.c);
                see(&q.d);
            }),
        }
        best
    }
}

/// An endomorphism given by its blocks, one list per factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Endomorphism {
    pub blocks: Vec<Vec<Block>>,
    pub label: Option<String>,
}

impl Endomorphism {
    pub fn new(blocks: Vec<Vec<Block>>) -> Self {
        Endomorphism {
            blocks,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `[n]`, acting as the scalar `n` on every block.
    pub fn multiplication_by(model: &VarietyModel, n: i64) -> Result<Endomorphism> {
        let mut blocks = Vec::with_capacity(model.factors.len());
        for f in &model.factors {
            let (count, size) = checked_shape(f)?;
            blocks.push((0..count).map(|_| Block::scalar(f.block_kind(), size, n)).collect());
        }
        Ok(Endomorphism::new(blocks).with_label(format!("[{n}]")))
    }

    pub fn identity(model: &VarietyModel) -> Result<Endomorphism> {
        Ok(Endomorphism::multiplication_by(model, 1)?.with_label("id"))
    }

    /// Checks block counts, kinds and sizes against the model.
    pub fn check_shape(&self, model: &VarietyModel) -> Result<()> {
        if self.blocks.len() != model.factors.len() {
            return Err(Error::Shape(format!(
                "{} block lists for {} factors",
                self.blocks.len(),
                model.factors.len()
            )));
        }
        for (j, (f, bl)) in model.factors.iter().zip(&self.blocks).enumerate() {
            let (count, size) = checked_shape(f)?;
            if bl.len() != count {
                return Err(Error::Shape(format!(
                    "factor {j}: expected {count} blocks, got {}",
                    bl.len()
                )));
            }
            for (i, b) in bl.iter().enumerate() {
                if b.kind() != f.block_kind() {
                    return Err(Error::Shape(format!(
                        "factor {j} block {i}: expected {:?} entries, got {:?}",
                        f.block_kind(),
                        b.kind()
                    )));
                }
                if b.size() != (size, size) {
                    let (r, c) = b.size();
                    return Err(Error::Shape(format!(
                        "factor {j} block {i}: expected {size}x{size}, got {r}x{c}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Image under the Rosati involution of the standard polarization.
    pub fn rosati(&self) -> Endomorphism {
        Endomorphism {
            blocks: self
                .blocks
                .iter()
                .map(|bl| bl.iter().map(Block::adjoint).collect())
                .collect(),
            label: self.label.as_ref().map(|l| format!("{l}†")),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rosati().blocks == self.blocks
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::Shape("factor counts differ".into()));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            if a.len() != b.len() {
                return Err(Error::Shape("block counts differ".into()));
            }
            blocks.push(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.matmul(y))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Endomorphism::new(blocks))
    }

    /// `α†∘α`.
    pub fn rosati_square(&self) -> Result<Endomorphism> {
        self.rosati().compose(self)
    }

    pub fn pow(&self, exp: u32) -> Result<Endomorphism> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for bl in &self.blocks {
            let mut out = Vec::with_capacity(bl.len());
            for b in bl {
                out.push(match b {
                    Block::Real(m) => Block::Real(m.pow(exp)?),
                    Block::Complex(m) => Block::Complex(m.pow(exp)?),
                    Block::Quaternion(m) => Block::Quaternion(m.pow(exp)?),
                });
            }
            blocks.push(out);
        }
        Ok(Endomorphism::new(blocks))
    }

    pub fn max_entry(&self) -> BigInt {
        self.blocks
            .iter()
            .flatten()
            .map(Block::max_entry)
            .max()
            .unwrap_or_default()
    }
}

/// Block count and block side length, refusing absurd sizes before anything
/// is allocated.
pub(crate) fn checked_shape(f: &SimpleFactor) -> Result<(usize, usize)> {
    let count = f.block_count();
    let size = f.block_size();
    let limit = 4 * super::MAX_DIMENSION;
    if count == 0 || size == 0 || count > limit || size > limit {
        return Err(Error::Shape(format!(
            "factor with {count} blocks of size {size} is outside the supported range"
        )));
    }
    Ok((count as usize, size as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AlbertType, Characteristic};

    fn q(a: i64, b: i64, c: i64, d: i64) -> Quaternion<BigInt> {
        Quaternion::new(a.into(), b.into(), c.into(), d.into())
    }

    fn supersingular() -> VarietyModel {
        VarietyModel::simple(SimpleFactor::new(
            AlbertType::III,
            1,
            1,
            1,
            2,
            Characteristic::Positive,
        ))
    }

    #[test]
    fn rosati_on_quaternion_is_conjugation() {
        let a = Endomorphism::new(vec![vec![Block::Quaternion(
            Matrix::from_vec(1, 1, vec![q(1, 1, 1, 1)]).unwrap(),
        )]]);
        let r = a.rosati();
        assert_eq!(
            r.blocks[0][0],
            Block::Quaternion(Matrix::from_vec(1, 1, vec![q(1, -1, -1, -1)]).unwrap())
        );
        let n = a.rosati_square().unwrap();
        assert_eq!(
            n.blocks[0][0],
            Block::Quaternion(Matrix::from_vec(1, 1, vec![q(4, 0, 0, 0)]).unwrap())
        );
        assert!(n.is_symmetric());
        assert!(!a.is_symmetric());
    }

    #[test]
    fn multiplication_by_n_shape() {
        let m = supersingular();
        let e = Endomorphism::multiplication_by(&m, 3).unwrap();
        e.check_shape(&m).unwrap();
        assert!(e.is_symmetric());
    }

    #[test]
    fn shape_mismatch_detected() {
        let m = supersingular();
        let wrong = Endomorphism::new(vec![vec![Block::Real(Matrix::identity(1))]]);
        assert!(matches!(wrong.check_shape(&m), Err(Error::Shape(_))));
        let huge = VarietyModel::simple(SimpleFactor::new(
            AlbertType::IV,
            1,
            u64::MAX / 2,
            1,
            1,
            Characteristic::Zero,
        ));
        assert!(Endomorphism::identity(&huge).is_err());
    }

    #[test]
    fn compose_is_blockwise_in_order() {
        let a = Matrix::from_rows(vec![vec![1i64, 2], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(vec![vec![1i64, 0], vec![3, 1]]).unwrap();
        let big = |m: &Matrix<i64>| Block::Real(m.map(|&x| BigInt::from(x)));
        let ea = Endomorphism::new(vec![vec![big(&a)]]);
        let eb = Endomorphism::new(vec![vec![big(&b)]]);
        let ab = ea.compose(&eb).unwrap();
        assert_eq!(ab.blocks[0][0], big(&a.matmul(&b).unwrap()));
        assert_ne!(ab, eb.compose(&ea).unwrap());
    }
}
