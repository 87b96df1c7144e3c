//! JSON model files and complex matrix files.
//!
//! A model file looks like
//!
//! ```json
//! { "characteristic": "zero",
//!   "factors": [ { "type": "IV", "dim_A": 1, "n": 1, "e0": 1, "d": 1 } ],
//!   "endomorphism": [ [ [[ [1, 2] ]] ] ] }
//! ```
//!
//! Real blocks hold integers, complex blocks `[re, im]` pairs and
//! quaternionic blocks `[a, b, c, d]` tuples. Both parsers take untrusted
//! input and reject anything malformed with [`Error::Parse`] or
//! [`Error::Shape`] rather than panicking.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::{
    AlbertType, Block, BlockKind, Characteristic, Endomorphism, SimpleFactor, VarietyModel,
};
use crate::numeric::{MatC, Matrix, Quaternion};

/// Largest side length accepted for a matrix file.
pub const MAX_MATRIX_SIZE: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct ModelFile {
    pub model: VarietyModel,
    pub endomorphism: Option<Endomorphism>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    #[serde(rename = "type")]
    albert_type: AlbertType,
    #[serde(rename = "dim_A")]
    dim_a: u64,
    n: u64,
    e0: u64,
    d: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    characteristic: Characteristic,
    factors: Vec<RawFactor>,
    #[serde(default)]
    endomorphism: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    label: Option<String>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parses a model file. The model is not validated against the type
/// restrictions; the endomorphism, if present, is checked for shape.
pub fn parse_model_file(text: &str) -> Result<ModelFile> {
    let raw: RawFile = serde_json::from_str(text)?;
    let model = VarietyModel::new(
        raw.factors
            .iter()
            .map(|f| SimpleFactor::new(f.albert_type, f.dim_a, f.n, f.e0, f.d, raw.characteristic))
            .collect(),
    );
    let endomorphism = match raw.endomorphism {
        None => None,
        Some(lists) => {
            if lists.len() != model.factors.len() {
                return Err(Error::Shape(format!(
                    "{} block lists for {} factors",
                    lists.len(),
                    model.factors.len()
                )));
            }
            let mut blocks = Vec::with_capacity(lists.len());
            for (j, (f, list)) in model.factors.iter().zip(&lists).enumerate() {
                let mut bl = Vec::with_capacity(list.len());
                for (i, v) in list.iter().enumerate() {
                    let b = parse_block(v, f.block_kind())
                        .map_err(|e| parse_err(format!("factor {j} block {i}: {e}")))?;
                    bl.push(b);
                }
                blocks.push(bl);
            }
            let mut e = Endomorphism::new(blocks);
            e.label = raw.label;
            e.check_shape(&model)?;
            Some(e)
        }
    };
    Ok(ModelFile {
        model,
        endomorphism,
    })
}

fn rows_of(v: &Value) -> std::result::Result<Vec<&Vec<Value>>, String> {
    let rows = v.as_array().ok_or("block must be an array of rows")?;
    if rows.is_empty() {
        return Err("block is empty".into());
    }
    let out: Vec<&Vec<Value>> = rows
        .iter()
        .map(|r| r.as_array().ok_or_else(|| "row must be an array".to_string()))
        .collect::<std::result::Result<_, _>>()?;
    let n = out.len();
    if out.iter().any(|r| r.len() != n) {
        return Err(format!("block must be square with {n} entries per row"));
    }
    Ok(out)
}

fn int(v: &Value) -> std::result::Result<BigInt, String> {
    v.as_i64()
        .map(BigInt::from)
        .ok_or_else(|| format!("expected an integer, got {v}"))
}

fn tuple<const N: usize>(v: &Value) -> std::result::Result<[BigInt; N], String> {
    let a = v
        .as_array()
        .filter(|a| a.len() == N)
        .ok_or_else(|| format!("expected an array of {N} integers, got {v}"))?;
    let parts: Vec<BigInt> = a.iter().map(int).collect::<std::result::Result<_, _>>()?;
    Ok(parts.try_into().expect("length checked"))
}

fn parse_block(v: &Value, kind: BlockKind) -> std::result::Result<Block, String> {
    let rows = rows_of(v)?;
    let n = rows.len();
    let flat = rows.into_iter().flatten();
    Ok(match kind {
        BlockKind::Real => Block::Real(
            Matrix::from_vec(n, n, flat.map(int).collect::<std::result::Result<_, _>>()?)
                .map_err(|e| e.to_string())?,
        ),
        BlockKind::Complex => Block::Complex(
            Matrix::from_vec(
                n,
                n,
                flat.map(|x| tuple::<2>(x).map(|[a, b]| Complex::new(a, b)))
                    .collect::<std::result::Result<_, _>>()?,
            )
            .map_err(|e| e.to_string())?,
        ),
        BlockKind::Quaternion => Block::Quaternion(
            Matrix::from_vec(
                n,
                n,
                flat.map(|x| tuple::<4>(x).map(|[a, b, c, d]| Quaternion::new(a, b, c, d)))
                    .collect::<std::result::Result<_, _>>()?,
            )
            .map_err(|e| e.to_string())?,
        ),
    })
}

fn block_json(b: &Block) -> Value {
    fn grid(rows: usize, cols: usize, at: impl Fn(usize, usize) -> Value) -> Value {
        Value::Array(
            (0..rows)
                .map(|i| Value::Array((0..cols).map(|j| at(i, j)).collect()))
                .collect(),
        )
    }
    let num = |x: &BigInt| -> Value {
        serde_json::from_str(&x.to_string()).expect("integer literal")
    };
    match b {
        Block::Real(m) => grid(m.rows(), m.cols(), |i, j| num(&m[(i, j)])),
        Block::Complex(m) => grid(m.rows(), m.cols(), |i, j| {
            let z = &m[(i, j)];
            Value::Array(vec![num(&z.re), num(&z.im)])
        }),
        Block::Quaternion(m) => grid(m.rows(), m.cols(), |i, j| {
            let q = &m[(i, j)];
            Value::Array(vec![num(&q.a), num(&q.b), num(&q.c), num(&q.d)])
        }),
    }
}

/// Serializes a model (and optionally an endomorphism) in the file format.
pub fn model_file_json(model: &VarietyModel, endomorphism: Option<&Endomorphism>) -> String {
    let ch = model.characteristic().unwrap_or(Characteristic::Zero);
    let factors: Vec<RawFactor> = model
        .factors
        .iter()
        .map(|f| RawFactor {
            albert_type: f.albert_type,
            dim_a: f.dim_a,
            n: f.n,
            e0: f.e0,
            d: f.d,
        })
        .collect();
    let mut obj = serde_json::Map::new();
    obj.insert("characteristic".into(), serde_json::to_value(ch).expect("enum"));
    obj.insert("factors".into(), serde_json::to_value(factors).expect("plain struct"));
    if let Some(e) = endomorphism {
        obj.insert(
            "endomorphism".into(),
            Value::Array(
                e.blocks
                    .iter()
                    .map(|bl| Value::Array(bl.iter().map(block_json).collect()))
                    .collect(),
            ),
        );
        if let Some(l) = &e.label {
            obj.insert("label".into(), Value::String(l.clone()));
        }
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable")
}

/// Parses a square complex matrix given as rows whose entries are numbers
/// or `[re, im]` pairs.
pub fn parse_matrix_file(text: &str) -> Result<MatC> {
    let v: Value = serde_json::from_str(text)?;
    let rows = rows_of(&v).map_err(parse_err)?;
    let n = rows.len();
    if n > MAX_MATRIX_SIZE {
        return Err(Error::OutOfRange {
            what: "matrix size",
            value: n,
            min: 1,
            max: MAX_MATRIX_SIZE,
        });
    }
    let mut data = Vec::with_capacity(n * n);
    for x in rows.into_iter().flatten() {
        let z = match x {
            Value::Number(_) => Complex64::new(real(x)?, 0.0),
            Value::Array(p) if p.len() == 2 => Complex64::new(real(&p[0])?, real(&p[1])?),
            _ => return Err(parse_err(format!("bad matrix entry {x}"))),
        };
        data.push(z);
    }
    Matrix::from_vec(n, n, data)
}

fn real(v: &Value) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| parse_err(format!("expected a number, got {v}")))?;
    if !x.is_finite() {
        return Err(parse_err("matrix entries must be finite"));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::random_pair;

    const CM: &str = r#"{
        "characteristic": "zero",
        "factors": [ { "type": "IV", "dim_A": 1, "n": 1, "e0": 1, "d": 1 } ],
        "endomorphism": [ [ [ [ [1, 2] ] ] ] ],
        "label": "cm"
    }"#;

    #[test]
    fn parses_cm_file() {
        let f = parse_model_file(CM).unwrap();
        assert_eq!(f.model.dimension(), 1);
        let e = f.endomorphism.unwrap();
        assert_eq!(e.label.as_deref(), Some("cm"));
        assert_eq!(
            e.blocks[0][0],
            Block::Complex(Matrix::from_vec(1, 1, vec![Complex::new(1.into(), 2.into())]).unwrap())
        );
    }

    #[test]
    fn roundtrip_random_files() {
        for seed in 0..50 {
            let ch = if seed % 2 == 0 { Characteristic::Zero } else { Characteristic::Positive };
            let (m, a) = random_pair(seed, 6, ch, 4).unwrap();
            let text = model_file_json(&m, Some(&a));
            let back = parse_model_file(&text).unwrap();
            assert_eq!(back.model, m);
            assert_eq!(back.endomorphism.as_ref().map(|e| &e.blocks), Some(&a.blocks));
        }
    }

    #[test]
    fn model_without_endomorphism_and_invalid_model_still_parse() {
        let text = r#"{"characteristic":"zero","factors":[{"type":"III","dim_A":1,"n":1,"e0":1,"d":2}]}"#;
        let f = parse_model_file(text).unwrap();
        assert!(f.endomorphism.is_none());
        assert!(!f.model.violations().is_empty());
    }

    #[test]
    fn rejects_malformed() {
        let bad = [
            "",
            "[]",
            r#"{"characteristic":"odd","factors":[]}"#,
            r#"{"characteristic":"zero","factors":[{"type":"V","dim_A":1,"n":1,"e0":1,"d":1}]}"#,
            r#"{"characteristic":"zero","factors":[{"type":"I","dim_A":-1,"n":1,"e0":1,"d":1}]}"#,
            r#"{"characteristic":"zero","factors":[],"extra":1}"#,
            r#"{"characteristic":"zero","factors":[{"type":"IV","dim_A":1,"n":1,"e0":1,"d":1}],"endomorphism":[[[[1]]]]}"#,
            r#"{"characteristic":"zero","factors":[{"type":"I","dim_A":1,"n":1,"e0":1,"d":1}],"endomorphism":[[[[1,2]]]]}"#,
            r#"{"characteristic":"zero","factors":[{"type":"I","dim_A":1,"n":1,"e0":1,"d":1}],"endomorphism":[[[[1.5]]]]}"#,
            r#"{"characteristic":"zero","factors":[{"type":"I","dim_A":1,"n":1,"e0":1,"d":1}],"endomorphism":[[]]}"#,
            r#"{"characteristic":"zero","factors":[{"type":"I","dim_A":1,"n":1,"e0":1,"d":1}],"endomorphism":[]}"#,
        ];
        for text in bad {
            assert!(parse_model_file(text).is_err(), "{text}");
        }
        let huge = r#"{"characteristic":"zero","factors":[{"type":"IV","dim_A":1,"n":18446744073709551615,"e0":1,"d":1}],"endomorphism":[[[[[1,0]]]]]}"#;
        assert!(matches!(parse_model_file(huge), Err(Error::Shape(_))));
    }

    #[test]
    fn matrix_file() {
        let m = parse_matrix_file("[[2, 1], [0, [1, -0.5]]]").unwrap();
        assert_eq!(m[(1, 1)], Complex64::new(1.0, -0.5));
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
        for bad in ["[]", "[[1,2]]", "[[1],[2]]", "[[\"x\"]]", "[[[1,2,3]]]", "{}"] {
            assert!(parse_matrix_file(bad).is_err(), "{bad}");
        }
        let row = format!("[{}]", vec!["0"; 13].join(","));
        let big = format!("[{}]", vec![row; 13].join(","));
        assert!(matches!(parse_matrix_file(&big), Err(Error::OutOfRange { .. })));
    }
}
