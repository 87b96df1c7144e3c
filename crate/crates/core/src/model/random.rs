use num_bigint::BigInt;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::endo::checked_shape;
use super::{AlbertType, Block, BlockKind, Characteristic, Endomorphism, SimpleFactor, VarietyModel};
use crate::error::{Error, Result};
use crate::numeric::{Matrix, Quaternion};

/// Every `(type, dim_A, e0, d)` with `dim_A ≤ max_dim` allowed in the given
/// characteristic.
fn simple_shapes(max_dim: u64, ch: Characteristic) -> Vec<(AlbertType, u64, u64, u64)> {
    let mut out = Vec::new();
    for dim_a in 1..=max_dim {
        for e0 in 1..=2 * dim_a {
            for (t, d) in [
                (AlbertType::I, 1),
                (AlbertType::II, 2),
                (AlbertType::III, 2),
            ] {
                let f = SimpleFactor::new(t, dim_a, 1, e0, d, ch);
                if f.violations(0).is_empty() {
                    out.push((t, dim_a, e0, d));
                }
            }
            for d in 1..=2 * dim_a {
                let f = SimpleFactor::new(AlbertType::IV, dim_a, 1, e0, d, ch);
                if f.violations(0).is_empty() {
                    out.push((AlbertType::IV, dim_a, e0, d));
                }
            }
        }
    }
    out
}

/// A valid model with `1 ≤ g ≤ max_g`, drawn deterministically from `seed`.
///
/// Types are chosen uniformly among those that still fit, so that every type
/// allowed in the characteristic shows up regularly.
pub fn random_model(seed: u64, max_g: usize, ch: Characteristic) -> Result<VarietyModel> {
    if max_g == 0 || max_g as u64 > super::MAX_DIMENSION {
        return Err(Error::OutOfRange {
            what: "max_g",
            value: max_g,
            min: 1,
            max: super::MAX_DIMENSION as usize,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = simple_shapes(max_g as u64, ch);
    let mut remaining = rng.random_range(1..=max_g as u64);
    let mut factors = Vec::new();
    while remaining > 0 {
        let fits: Vec<_> = shapes.iter().filter(|s| s.1 <= remaining).collect();
        let mut types: Vec<AlbertType> = fits.iter().map(|s| s.0).collect();
        types.sort();
        types.dedup();
        let t = types[rng.random_range(0..types.len())];
        let of_type: Vec<_> = fits.iter().filter(|s| s.0 == t).collect();
        let &&(t, dim_a, e0, d) = of_type[rng.random_range(0..of_type.len())];
        let n = rng.random_range(1..=remaining / dim_a);
        factors.push(SimpleFactor::new(t, dim_a, n, e0, d, ch));
        remaining -= dim_a * n;
    }
    let model = VarietyModel::new(factors);
    debug_assert!(model.violations().is_empty());
    Ok(model)
}

/// An endomorphism of `model` whose integer components lie in
/// `[-bound, bound]`.
pub fn random_endomorphism(seed: u64, model: &VarietyModel, bound: i64) -> Result<Endomorphism> {
    let bound = bound.abs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || BigInt::from(rng.random_range(-bound..=bound));
    let mut blocks = Vec::with_capacity(model.factors.len());
    for f in &model.factors {
        let (count, size) = checked_shape(f)?;
        let mut bl = Vec::with_capacity(count);
        for _ in 0..count {
            bl.push(match f.block_kind() {
                BlockKind::Real => Block::Real(Matrix::from_fn(size, size, |_, _| draw())),
                BlockKind::Complex => {
                    Block::Complex(Matrix::from_fn(size, size, |_, _| Complex::new(draw(), draw())))
                }
                BlockKind::Quaternion => Block::Quaternion(Matrix::from_fn(size, size, |_, _| {
                    Quaternion::new(draw(), draw(), draw(), draw())
                })),
            });
        }
        blocks.push(bl);
    }
    Ok(Endomorphism::new(blocks).with_label(format!("random({seed})")))
}

/// A model and an endomorphism of it from one seed.
pub fn random_pair(
    seed: u64,
    max_g: usize,
    ch: Characteristic,
    bound: i64,
) -> Result<(VarietyModel, Endomorphism)> {
    let model = random_model(seed, max_g, ch)?;
    let alpha = random_endomorphism(seed ^ 0x9e37_79b9_7f4a_7c15, &model, bound)?;
    Ok((model, alpha))
}
