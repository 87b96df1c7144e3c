//! Formal abelian varieties as products of powers of simple factors.
//!
//! A factor `X = Aⁿ` is described only through the shape of its real
//! endomorphism algebra: `e` copies of `Mₙ(R)` (type I), `M₂ₙ(R)` (type II),
//! `Mₙ(H)` (type III), or `e₀` copies of `M_{dn}(C)` (type IV). Number fields
//! and division algebras themselves are never represented.

mod endo;
mod random;
mod rep;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use endo::{Block, BlockKind, Endomorphism};
pub use random::{random_endomorphism, random_model, random_pair};
pub use rep::{
    degree, full_char_poly, rational_rep, rational_rep_blocks, rational_rep_exact, reduced_char_poly,
};

/// Largest supported total dimension `g`.
pub const MAX_DIMENSION: u64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlbertType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for AlbertType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlbertType::I => "I",
            AlbertType::II => "II",
            AlbertType::III => "III",
            AlbertType::IV => "IV",
        };
        f.write_str(s)
    }
}

/// Characteristic of the ground field. Only gates type restrictions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Characteristic {
    Zero,
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub albert_type: AlbertType,
    /// Dimension of the simple variety `A`.
    pub dim_a: u64,
    /// Power: the factor is `Aⁿ`.
    pub n: u64,
    /// `[K₀ : Q]`.
    pub e0: u64,
    /// `d² = [D : K]`.
    pub d: u64,
    pub characteristic: Characteristic,
}

impl SimpleFactor {
    pub fn new(
        albert_type: AlbertType,
        dim_a: u64,
        n: u64,
        e0: u64,
        d: u64,
        characteristic: Characteristic,
    ) -> Self {
        SimpleFactor {
            albert_type,
            dim_a,
            n,
            e0,
            d,
            characteristic,
        }
    }

    /// `e = [K : Q]`: `e₀` for types I–III and `2e₀` for type IV.
    pub fn e(&self) -> u64 {
        match self.albert_type {
            AlbertType::IV => 2 * self.e0,
            _ => self.e0,
        }
    }

    /// `dim X = dim_A · n`.
    pub fn dimension(&self) -> u64 {
        self.dim_a.saturating_mul(self.n)
    }

    pub fn block_kind(&self) -> BlockKind {
        match self.albert_type {
            AlbertType::I | AlbertType::II => BlockKind::Real,
            AlbertType::III => BlockKind::Quaternion,
            AlbertType::IV => BlockKind::Complex,
        }
    }

    /// Number of simple summands of the real endomorphism algebra.
    pub fn block_count(&self) -> u64 {
        self.e0
    }

    /// Side length of each block over its own scalar ring.
    pub fn block_size(&self) -> u64 {
        match self.albert_type {
            AlbertType::I | AlbertType::III => self.n,
            AlbertType::II => 2 * self.n,
            AlbertType::IV => self.d.saturating_mul(self.n),
        }
    }

    /// Degree `e·d·n` of the reduced characteristic polynomial.
    pub fn reduced_degree(&self) -> u64 {
        self.e() * self.d * self.n
    }

    fn violations(&self, index: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let v = |rule, detail: String| Violation {
            factor: Some(index),
            rule,
            detail,
        };
        if self.dim_a == 0 || self.n == 0 || self.e0 == 0 || self.d == 0 {
            out.push(v(
                Rule::Positivity,
                "dim_A, n, e0 and d must all be positive".into(),
            ));
            return out;
        }
        let expected_d = match self.albert_type {
            AlbertType::I => Some(1),
            AlbertType::II | AlbertType::III => Some(2),
            AlbertType::IV => None,
        };
        if let Some(d) = expected_d {
            if self.d != d {
                out.push(v(
                    Rule::DegreeIndex,
                    format!("type {} requires d = {d}, got {}", self.albert_type, self.d),
                ));
            }
        }
        let e = self.e();
        let (divisor, text) = match (self.albert_type, self.characteristic) {
            (AlbertType::I, _) => (e, "e | dim_A"),
            (AlbertType::II, _) => (2 * e, "2e | dim_A"),
            (AlbertType::III, Characteristic::Zero) => (2 * e, "2e | dim_A"),
            (AlbertType::III, Characteristic::Positive) => (e, "e | dim_A"),
            (AlbertType::IV, Characteristic::Zero) => {
                (self.e0.saturating_mul(self.d.saturating_mul(self.d)), "e0·d² | dim_A")
            }
            (AlbertType::IV, Characteristic::Positive) => {
                (self.e0.saturating_mul(self.d), "e0·d | dim_A")
            }
        };
        if self.dim_a % divisor != 0 {
            out.push(v(
                Rule::Divisibility,
                format!(
                    "type {} in characteristic {:?} requires {text}: {divisor} does not divide {}",
                    self.albert_type, self.characteristic, self.dim_a
                ),
            ));
        }
        if let Err(detail) = raw_multiplicity(self) {
            out.push(v(Rule::Multiplicity, detail));
        } else if matches!(self.albert_type, AlbertType::I | AlbertType::II)
            && raw_multiplicity(self).is_ok_and(|m| m % 2 == 1)
        {
            out.push(v(
                Rule::Multiplicity,
                format!("type {} requires an even multiplicity", self.albert_type),
            ));
        }
        out
    }
}

fn raw_multiplicity(f: &SimpleFactor) -> std::result::Result<u64, String> {
    let denom = f.e().saturating_mul(f.d);
    let num = 2 * f.dim_a;
    if denom == 0 || num % denom != 0 {
        Err(format!("2·dim_A/(e·d) = {num}/{denom} is not an integer"))
    } else {
        Ok(num / denom)
    }
}

/// Multiplicity `m = 2·dim_A/(e·d)` of the reduced representation inside the
/// first cohomology.
pub fn multiplicity(factor: &SimpleFactor) -> Result<usize> {
    raw_multiplicity(factor)
        .map(|m| m as usize)
        .map_err(|detail| {
            Error::InvalidModel(vec![Violation {
                factor: None,
                rule: Rule::Multiplicity,
                detail,
            }])
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    EmptyModel,
    Positivity,
    DegreeIndex,
    Divisibility,
    Multiplicity,
    MixedCharacteristic,
    DimensionLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub factor: Option<usize>,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factor {
            Some(i) => write!(f, "factor {i}: {:?}: {}", self.rule, self.detail),
            None => write!(f, "model: {:?}: {}", self.rule, self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarietyModel {
    pub factors: Vec<SimpleFactor>,
}

impl VarietyModel {
    pub fn new(factors: Vec<SimpleFactor>) -> Self {
        VarietyModel { factors }
    }

    /// A single factor `Aⁿ`.
    pub fn simple(factor: SimpleFactor) -> Self {
        VarietyModel {
            factors: vec![factor],
        }
    }

    /// Total dimension `g = Σ dim_A·n`.
    pub fn dimension(&self) -> usize {
        self.factors
            .iter()
            .map(SimpleFactor::dimension)
            .fold(0u64, u64::saturating_add) as usize
    }

    pub fn characteristic(&self) -> Option<Characteristic> {
        self.factors.first().map(|f| f.characteristic)
    }

    pub fn multiplicities(&self) -> Result<Vec<usize>> {
        self.factors.iter().map(multiplicity).collect()
    }

    /// Every violated type restriction, or an empty list.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.factors.is_empty() {
            out.push(Violation {
                factor: None,
                rule: Rule::EmptyModel,
                detail: "a model needs at least one factor".into(),
            });
            return out;
        }
        let ch = self.factors[0].characteristic;
        if self.factors.iter().any(|f| f.characteristic != ch) {
            out.push(Violation {
                factor: None,
                rule: Rule::MixedCharacteristic,
                detail: "all factors must share one characteristic".into(),
            });
        }
        for (i, f) in self.factors.iter().enumerate() {
            out.extend(f.violations(i));
        }
        let g = self
            .factors
            .iter()
            .map(SimpleFactor::dimension)
            .fold(0u64, u64::saturating_add);
        if g > MAX_DIMENSION {
            out.push(Violation {
                factor: None,
                rule: Rule::DimensionLimit,
                detail: format!("dimension {g} exceeds the supported maximum {MAX_DIMENSION}"),
            });
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel(v))
        }
    }
}
