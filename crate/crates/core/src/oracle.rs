//! Exact intersection numbers on the first cohomology.
//!
//! Classes in `H²` are alternating bilinear forms on the complexified `H¹`
//! with Gaussian-integer entries. A product `ω₁⋯ω_g ∈ H^{2g}` is evaluated as
//! the sum over perfect matchings of `{0, …, 2g−1}` of the signed permanent
//! `Σ_σ ∏ₜ ω_{σ(t)}(iₜ, jₜ)`, which gives `g!·Pf(ω)` when all forms agree.
//! Only ratios against `H^g` are reported, so the volume normalization never
//! matters. Nothing here touches floating point.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::albert::{albert_poly_symmetric_exact, corollary_b_coefficients};
use crate::error::{Error, Result};
use crate::model::{
    degree, multiplicity, rational_rep_exact, AlbertType, Endomorphism, VarietyModel,
};
use crate::numeric::{binomial_big, Determinant, GaussInt, Matrix};
use crate::poly::{Poly, PolyQ};

/// Largest `g` the matching sums accept: `(2g−1)!! = 10395` at `g = 6`.
pub const MAX_ORACLE_DIMENSION: usize = 6;

fn gi(x: i64) -> GaussInt {
    Complex::new(BigInt::from(x), BigInt::zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlternatingForm {
    matrix: Matrix<GaussInt>,
}

impl AlternatingForm {
    pub fn new(matrix: Matrix<GaussInt>) -> Result<Self> {
        let n = matrix.ensure_square()?;
        if n % 2 == 1 {
            return Err(Error::Oracle(format!("odd dimension {n}")));
        }
        for i in 0..n {
            for j in 0..=i {
                if matrix[(i, j)] != -matrix[(j, i)].clone() {
                    return Err(Error::Oracle(format!("not alternating at ({i}, {j})")));
                }
            }
        }
        Ok(AlternatingForm { matrix })
    }

    pub fn matrix(&self) -> &Matrix<GaussInt> {
        &self.matrix
    }

    /// `2g`.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn scale(&self, s: i64) -> AlternatingForm {
        AlternatingForm {
            matrix: self.matrix.scale(&gi(s)),
        }
    }

    pub fn add(&self, other: &AlternatingForm) -> Result<AlternatingForm> {
        Ok(AlternatingForm {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &AlternatingForm) -> Result<AlternatingForm> {
        Ok(AlternatingForm {
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    /// Pfaffian as a signed sum over perfect matchings.
    pub fn pfaffian(&self) -> Result<GaussInt> {
        let n = self.dim();
        check_oracle_size(n / 2)?;
        let mut total = GaussInt::zero();
        for_each_matching(n, &mut |pairs, sign| {
            let prod = pairs
                .iter()
                .fold(GaussInt::one(), |acc, &(i, j)| acc * self.matrix[(i, j)].clone());
            total = total.clone() + if sign > 0 { prod } else { -prod };
        });
        Ok(total)
    }
}

fn check_oracle_size(g: usize) -> Result<()> {
    if g > MAX_ORACLE_DIMENSION {
        return Err(Error::OutOfRange {
            what: "oracle dimension g",
            value: g,
            min: 0,
            max: MAX_ORACLE_DIMENSION,
        });
    }
    Ok(())
}

/// Visits every perfect matching of `0..n` as `(i, j)` pairs with `i < j`,
/// together with the sign of the permutation `(i₁ j₁ i₂ j₂ …)`.
pub fn for_each_matching(n: usize, f: &mut dyn FnMut(&[(usize, usize)], i8)) {
    fn rec(
        rest: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        sign: i8,
        f: &mut dyn FnMut(&[(usize, usize)], i8),
    ) {
        if rest.is_empty() {
            f(pairs, sign);
            return;
        }
        let i = rest.remove(0);
        for p in 0..rest.len() {
            let j = rest.remove(p);
            pairs.push((i, j));
            let s = if p % 2 == 0 { sign } else { -sign };
            rec(rest, pairs, s, f);
            pairs.pop();
            rest.insert(p, j);
        }
        rest.insert(0, i);
    }
    if n % 2 == 1 {
        return;
    }
    let mut rest: Vec<usize> = (0..n).collect();
    rec(&mut rest, &mut Vec::with_capacity(n / 2), 1, f);
}

/// `[[0, I], [−I, 0]]` blocks of half-size `h`, in the coordinates of
/// [`rational_rep_exact`].
fn polarization_chunks(model: &VarietyModel) -> Result<Vec<usize>> {
    let mut chunks = Vec::new();
    for f in &model.factors {
        let m = multiplicity(f)?;
        let (e0, n, d) = (f.e0 as usize, f.n as usize, f.d as usize);
        match f.albert_type {
            // Copies 2t and 2t+1 pair with each other.
            AlbertType::I | AlbertType::II => {
                let h = e0 * f.block_size() as usize;
                chunks.extend(std::iter::repeat_n(h, m / 2));
            }
            // Each embedded block ι(A) carries its own pairing.
            AlbertType::III => chunks.extend(std::iter::repeat_n(n, m * e0)),
            // The A-part of a copy pairs with its conjugate part.
            AlbertType::IV => chunks.extend(std::iter::repeat_n(e0 * d * n, m)),
        }
    }
    Ok(chunks)
}

/// The principal form `J` whose adjoint on `H¹` is the Rosati involution.
pub fn standard_polarization(model: &VarietyModel) -> Result<AlternatingForm> {
    model.validate()?;
    let chunks = polarization_chunks(model)?;
    let size: usize = chunks.iter().map(|h| 2 * h).sum();
    if size != 2 * model.dimension() {
        return Err(Error::Polarization(format!(
            "form of size {size} for g = {}",
            model.dimension()
        )));
    }
    let mut j = Matrix::<GaussInt>::zeros(size, size);
    let mut o = 0;
    for h in chunks {
        for i in 0..h {
            j[(o + i, o + h + i)] = gi(1);
            j[(o + h + i, o + i)] = gi(-1);
        }
        o += 2 * h;
    }
    AlternatingForm::new(j)
}

/// Checks `J⁻¹·Mᵀ·J = rep(α†)` exactly.
pub fn check_polarization(
    model: &VarietyModel,
    j: &AlternatingForm,
    alpha: &Endomorphism,
) -> Result<()> {
    let m = rational_rep_exact(model, alpha)?;
    let dagger = rational_rep_exact(model, &alpha.rosati())?;
    // J² = −I for the standard form, so J⁻¹ = −J.
    let jm = j.matrix();
    if jm.matmul(jm)? != Matrix::scalar(jm.rows(), gi(-1)) {
        return Err(Error::Polarization("J² ≠ −I".into()));
    }
    let lhs = jm.scale(&gi(-1)).matmul(&m.transpose())?.matmul(jm)?;
    if lhs != dagger {
        return Err(Error::Polarization(
            "J-adjoint of the representation differs from the Rosati image".into(),
        ));
    }
    Ok(())
}

/// `(Mᵐ)ᵀ·ω·Mᵐ`.
pub fn pullback_form(rep: &Matrix<GaussInt>, omega: &AlternatingForm, m: u32) -> Result<AlternatingForm> {
    let mm = rep.pow(m)?;
    AlternatingForm::new(mm.transpose().matmul(omega.matrix())?.matmul(&mm)?)
}

/// `ω₁⋯ω_g` up to the fixed volume normalization.
pub fn mixed_intersection(forms: &[AlternatingForm]) -> Result<GaussInt> {
    let g = forms.len();
    check_oracle_size(g)?;
    if forms.iter().any(|f| f.dim() != 2 * g) {
        return Err(Error::DimensionMismatch(format!(
            "{g} forms need dimension {}",
            2 * g
        )));
    }
    let mut total = GaussInt::zero();
    for_each_matching(2 * g, &mut |pairs, sign| {
        let p = permanent(forms, pairs);
        total = total.clone() + if sign > 0 { p } else { -p };
    });
    Ok(total)
}

/// `Σ_σ ∏ₜ ω_{σ(t)}(pairₜ)` by dynamic programming over subsets of forms.
fn permanent(forms: &[AlternatingForm], pairs: &[(usize, usize)]) -> GaussInt {
    let g = forms.len();
    let mut dp = vec![GaussInt::zero(); 1 << g];
    dp[0] = GaussInt::one();
    for mask in 0usize..(1 << g) {
        if dp[mask].is_zero() {
            continue;
        }
        let t = mask.count_ones() as usize;
        if t == g {
            continue;
        }
        let (i, j) = pairs[t];
        for (s, form) in forms.iter().enumerate() {
            if mask & (1 << s) == 0 {
                let add = dp[mask].clone() * form.matrix[(i, j)].clone();
                dp[mask | (1 << s)] = dp[mask | (1 << s)].clone() + add;
            }
        }
    }
    dp[(1 << g) - 1].clone()
}

/// `Pf(b + x·a)` as a polynomial in `x`, by matching expansion.
///
/// Its `xᵏ` coefficient times `k!(g−k)!` is the mixed product of `k` copies
/// of `a` and `g−k` copies of `b`.
pub fn pfaffian_pencil(a: &AlternatingForm, b: &AlternatingForm) -> Result<Vec<GaussInt>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch("forms of different size".into()));
    }
    check_oracle_size(n / 2)?;
    let mut coeffs = vec![GaussInt::zero(); n / 2 + 1];
    for_each_matching(n, &mut |pairs, sign| {
        let mut poly = vec![GaussInt::one()];
        for &(i, j) in pairs {
            let (bij, aij) = (&b.matrix[(i, j)], &a.matrix[(i, j)]);
            let mut next = vec![GaussInt::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] = next[k].clone() + c.clone() * bij.clone();
                next[k + 1] = next[k + 1].clone() + c.clone() * aij.clone();
            }
            poly = next;
        }
        for (k, c) in poly.into_iter().enumerate() {
            coeffs[k] = coeffs[k].clone() + if sign > 0 { c } else { -c };
        }
    });
    Ok(coeffs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntersectionRatio {
    pub k: usize,
    pub m: u32,
    /// `(α^m)*H^k · H^{g−k}` in units where `H^g = denominator`.
    #[serde(serialize_with = "ser_big")]
    pub numerator: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub denominator: BigInt,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl IntersectionRatio {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }

    pub fn value(&self) -> f64 {
        self.ratio().to_f64().unwrap_or(f64::INFINITY)
    }

    /// `binom(g, k)·ratio`.
    pub fn normalized(&self, g: usize) -> BigRational {
        self.ratio() * BigRational::from_integer(binomial_big(g, self.k))
    }
}

fn real_part(z: &GaussInt, what: &str) -> Result<BigInt> {
    if !z.im.is_zero() {
        return Err(Error::Oracle(format!("{what} has imaginary part {}", z.im)));
    }
    Ok(z.re.clone())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(α^m)*H^k·H^{g−k} / H^g` for every `k = 0..=g`.
pub fn intersection_ratios(model: &VarietyModel, alpha: &Endomorphism, m: u32) -> Result<Vec<IntersectionRatio>> {
    let g = model.dimension();
    check_oracle_size(g)?;
    let j = standard_polarization(model)?;
    let rep = rational_rep_exact(model, alpha)?;
    let omega = pullback_form(&rep, &j, m)?;
    let pencil = pfaffian_pencil(&omega, &j)?;
    let h_g = real_part(&j.pfaffian()?, "Pf(J)")? * factorial(g);
    pencil
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let num = real_part(c, "mixed intersection")? * factorial(k) * factorial(g - k);
            Ok(IntersectionRatio {
                k,
                m,
                numerator: num,
                denominator: h_g.clone(),
            })
        })
        .collect()
}

pub fn intersection_ratio(
    model: &VarietyModel,
    alpha: &Endomorphism,
    k: usize,
    m: u32,
) -> Result<IntersectionRatio> {
    let g = model.dimension();
    if k > g {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            min: 0,
            max: g,
        });
    }
    Ok(intersection_ratios(model, alpha, m)?.swap_remove(k))
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryBReport {
    pub g: usize,
    /// `binom(g,k)·(α*H^k·H^{g−k})/H^g`.
    pub oracle: Vec<String>,
    pub coefficients: Vec<String>,
    pub degree: String,
    pub pass: bool,
}

/// Compares `binom(g,k)·α*H^k·H^{g−k}/H^g` with the coefficients `c_k` of
/// the Albert polynomial of `α†α`, exactly.
pub fn verify_corollary_b(model: &VarietyModel, alpha: &Endomorphism) -> Result<CorollaryBReport> {
    let g = model.dimension();
    let ratios = intersection_ratios(model, alpha, 1)?;
    let oracle: Vec<BigRational> = ratios.iter().map(|r| r.normalized(g)).collect();
    let coeffs = corollary_b_coefficients(model, alpha)?;
    let deg = degree(model, alpha)?;
    let pass = oracle.len() == coeffs.len()
        && oracle
            .iter()
            .zip(&coeffs)
            .all(|(o, c)| *o == BigRational::from_integer(c.clone()))
        && coeffs.last() == Some(&deg);
    Ok(CorollaryBReport {
        g,
        oracle: oracle.iter().map(|x| x.to_string()).collect(),
        coefficients: coeffs.iter().map(|x| x.to_string()).collect(),
        degree: deg.to_string(),
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PfaffianCheck {
    /// `(n, Pf(nJ − α*J)/Pf(J))` for `n = 0..=2g+1`.
    pub samples: Vec<(i64, String)>,
    pub interpolated: Vec<String>,
    pub albert: Vec<String>,
    /// `det(nJ − α*J)/det(J)` is the square of each sample.
    pub squares_match: bool,
    pub pass: bool,
}

/// Interpolates `n ↦ Pf(nJ − α*J)/Pf(J)` through `2g+2` integer points and
/// compares the result with the exact Albert polynomial of `α†α`.
pub fn pfaffian_interpolation(model: &VarietyModel, alpha: &Endomorphism) -> Result<PfaffianCheck> {
    let g = model.dimension();
    check_oracle_size(g)?;
    let j = standard_polarization(model)?;
    let rep = rational_rep_exact(model, alpha)?;
    let omega = pullback_form(&rep, &j, 1)?;
    let pf_j = real_part(&j.pfaffian()?, "Pf(J)")?;
    let det_j = real_part(&GaussInt::det(j.matrix()), "det(J)")?;
    let mut points = Vec::new();
    let mut squares_match = true;
    for n in 0..=(2 * g as i64 + 1) {
        let form = j.scale(n).sub(&omega)?;
        let pf = real_part(&form.pfaffian()?, "Pfaffian")?;
        let det = real_part(&GaussInt::det(form.matrix()), "determinant")?;
        let value = BigRational::new(pf, pf_j.clone());
        let det_ratio = BigRational::new(det, det_j.clone());
        squares_match &= &value * &value == det_ratio;
        points.push((n, value));
    }
    let interpolated = lagrange(&points);
    let albert = albert_poly_symmetric_exact(model, &alpha.rosati_square()?)?;
    let pass = squares_match && interpolated == albert.to_rational();
    Ok(PfaffianCheck {
        samples: points.iter().map(|(n, v)| (*n, v.to_string())).collect(),
        interpolated: interpolated.coeffs().iter().map(|c| c.to_string()).collect(),
        albert: albert.coeffs().iter().map(|c| c.to_string()).collect(),
        squares_match,
        pass,
    })
}

/// Exact Lagrange interpolation through integer nodes.
pub fn lagrange(points: &[(i64, BigRational)]) -> PolyQ {
    let mut out = PolyQ::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = PolyQ::one();
        let mut denom = BigRational::one();
        for (k, (xk, _)) in points.iter().enumerate() {
            if k != i {
                basis = basis.mul(&Poly::linear(BigRational::from_integer((*xk).into())));
                denom *= BigRational::from_integer((xi - xk).into());
            }
        }
        let scale = yi / denom;
        out = out.add(&basis.map(|c| c * &scale));
    }
    out
}

/// Real form of a complex matrix: `x + iy ↦ [[x, −y], [y, x]]` entrywise.
pub fn realify(m: &Matrix<GaussInt>) -> Matrix<BigInt> {
    let (r, c) = (m.rows(), m.cols());
    Matrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = &m[(i / 2, j / 2)];
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => z.re.clone(),
            (0, 1) => -z.im.clone(),
            _ => z.im.clone(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{random_endomorphism, random_model, Block, Characteristic, SimpleFactor};
    use crate::poly::PolyZ;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn form(rows: Vec<Vec<i64>>) -> AlternatingForm {
        AlternatingForm::new(Matrix::from_rows(rows).unwrap().map(|&x| gi(x))).unwrap()
    }

    fn cm_model() -> VarietyModel {
        VarietyModel::simple(SimpleFactor::new(AlbertType::IV, 1, 1, 1, 1, Characteristic::Zero))
    }

    fn type_i() -> (VarietyModel, Endomorphism) {
        let model = VarietyModel::simple(SimpleFactor::new(
            AlbertType::I,
            2,
            1,
            2,
            1,
            Characteristic::Zero,
        ));
        let blk = |x| Block::Real(Matrix::from_vec(1, 1, vec![big(x)]).unwrap());
        (model, Endomorphism::new(vec![vec![blk(2), blk(3)]]))
    }

    #[test]
    fn matchings_count_and_pfaffian_of_j() {
        for g in 1..=5 {
            let mut count = 0;
            for_each_matching(2 * g, &mut |_, _| count += 1);
            assert_eq!(count, (1..=g).map(|i| 2 * i - 1).product::<usize>());
        }
        let j = form(vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(j.pfaffian().unwrap(), gi(1));
        // Pf of a 4x4 form: a01 a23 − a02 a13 + a03 a12.
        let a = form(vec![
            vec![0, 2, 3, 5],
            vec![-2, 0, 7, 11],
            vec![-3, -7, 0, 13],
            vec![-5, -11, -13, 0],
        ]);
        assert_eq!(a.pfaffian().unwrap(), gi(2 * 13 - 3 * 11 + 5 * 7));
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let model = VarietyModel::simple(SimpleFactor::new(AlbertType::IV, 1, 3, 1, 1, Characteristic::Zero));
        let j = standard_polarization(&model).unwrap();
        let pf = j.pfaffian().unwrap();
        assert_eq!(pf.clone() * pf, GaussInt::det(j.matrix()));
    }

    #[test]
    fn rejects_non_alternating() {
        let m = Matrix::from_rows(vec![vec![gi(0), gi(1)], vec![gi(1), gi(0)]]).unwrap();
        assert!(AlternatingForm::new(m).is_err());
    }

    #[test]
    fn g1_polarization_and_pullback() {
        let model = cm_model();
        let j = standard_polarization(&model).unwrap();
        assert_eq!(j, form(vec![vec![0, 1], vec![-1, 0]]));
        // Realified 1 + 2i.
        let m = Matrix::from_rows(vec![vec![gi(1), gi(-2)], vec![gi(2), gi(1)]]).unwrap();
        assert_eq!(pullback_form(&m, &j, 1).unwrap(), j.scale(5));
        let id = Matrix::<GaussInt>::identity(2);
        assert_eq!(pullback_form(&id, &j, 3).unwrap(), j);
    }

    #[test]
    fn realification_carries_conjugation() {
        let z = Complex::new(big(1), big(2));
        let r = realify(&Matrix::from_vec(1, 1, vec![z.clone()]).unwrap());
        assert_eq!(
            r,
            Matrix::from_rows(vec![vec![big(1), big(-2)], vec![big(2), big(1)]]).unwrap()
        );
        let j = Matrix::from_rows(vec![vec![big(0), big(1)], vec![big(-1), big(0)]]).unwrap();
        let adj = j
            .scale(&big(-1))
            .matmul(&r.transpose())
            .unwrap()
            .matmul(&j)
            .unwrap();
        let conj = realify(&Matrix::from_vec(1, 1, vec![Complex::new(big(1), big(-2))]).unwrap());
        assert_eq!(adj, conj);
    }

    #[test]
    fn type_i_duplicate_copies_pair() {
        let (model, alpha) = type_i();
        let j = standard_polarization(&model).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![-1, 0, 0, 0],
            vec![0, -1, 0, 0],
        ])
        .unwrap()
        .map(|&x| gi(x));
        assert_eq!(j.matrix(), &expected);
        check_polarization(&model, &j, &alpha).unwrap();
    }

    #[test]
    fn calibration_and_linearity() {
        let j = form(vec![vec![0, 1], vec![-1, 0]]);
        let five = j.scale(5);
        let a = mixed_intersection(std::slice::from_ref(&five)).unwrap();
        let b = mixed_intersection(std::slice::from_ref(&j)).unwrap();
        assert_eq!(a, b.clone() * gi(5));
        let (model, _) = type_i();
        let j2 = standard_polarization(&model).unwrap();
        let jj = mixed_intersection(&[j2.clone(), j2.clone()]).unwrap();
        assert_eq!(jj, j2.pfaffian().unwrap() * gi(2));
    }

    #[test]
    fn type_i_ratio_is_thirteen_halves() {
        let (model, alpha) = type_i();
        let r = intersection_ratio(&model, &alpha, 1, 1).unwrap();
        assert_eq!(r.ratio(), BigRational::new(big(13), big(2)));
        assert_eq!(r.normalized(2), BigRational::from_integer(big(13)));
        let top = intersection_ratio(&model, &alpha, 2, 1).unwrap();
        assert_eq!(top.ratio(), BigRational::from_integer(big(36)));
        assert_eq!(intersection_ratio(&model, &alpha, 0, 1).unwrap().ratio(), BigRational::one());
        let report = verify_corollary_b(&model, &alpha).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.coefficients, vec!["1", "13", "36"]);
    }

    #[test]
    fn cm_ratio_is_five() {
        let model = cm_model();
        let alpha = Endomorphism::new(vec![vec![Block::Complex(
            Matrix::from_vec(1, 1, vec![Complex::new(big(1), big(2))]).unwrap(),
        )]]);
        let r = intersection_ratio(&model, &alpha, 1, 1).unwrap();
        assert_eq!(r.ratio(), BigRational::from_integer(big(5)));
        let r3 = intersection_ratio(&model, &alpha, 1, 3).unwrap();
        assert_eq!(r3.ratio(), BigRational::from_integer(big(125)));
        assert!(verify_corollary_b(&model, &alpha).unwrap().pass);
    }

    #[test]
    fn multiplication_by_n_both_sides() {
        let model = VarietyModel::simple(SimpleFactor::new(AlbertType::IV, 1, 2, 1, 1, Characteristic::Zero));
        for n in 1..4i64 {
            let a = Endomorphism::multiplication_by(&model, n).unwrap();
            let rep = verify_corollary_b(&model, &a).unwrap();
            assert!(rep.pass);
            assert_eq!(
                rep.coefficients,
                vec!["1".to_string(), (2 * n * n).to_string(), n.pow(4).to_string()]
            );
        }
    }

    #[test]
    fn polarization_adjoint_on_random_models() {
        for seed in 0..40u64 {
            let ch = if seed % 2 == 0 { Characteristic::Zero } else { Characteristic::Positive };
            let model = random_model(seed, 6, ch).unwrap();
            let j = standard_polarization(&model).unwrap();
            assert!(!j.pfaffian().unwrap().is_zero());
            for s in 0..20 {
                let a = random_endomorphism(seed * 100 + s, &model, 3).unwrap();
                check_polarization(&model, &j, &a).unwrap();
            }
        }
    }

    #[test]
    fn interpolation_small_models() {
        let (model, alpha) = type_i();
        let c = pfaffian_interpolation(&model, &alpha).unwrap();
        assert!(c.pass, "{c:?}");
        assert_eq!(c.albert, vec!["36", "-13", "1"]);
    }

    #[test]
    fn lagrange_recovers_polynomial() {
        let p = PolyZ::from_i64(&[3, -1, 0, 2]).to_rational();
        let pts: Vec<_> = (0..6).map(|n| (n, p.eval(&BigRational::from_integer(n.into())))).collect();
        assert_eq!(lagrange(&pts), p);
    }

    fn arb_form(g: usize) -> impl Strategy<Value = AlternatingForm> {
        prop::collection::vec(-3i64..=3, g * (2 * g - 1)).prop_map(move |v| {
            let n = 2 * g;
            let mut m = Matrix::<GaussInt>::zeros(n, n);
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let x = it.next().unwrap();
                    m[(i, j)] = gi(x);
                    m[(j, i)] = gi(-x);
                }
            }
            AlternatingForm::new(m).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn mixed_is_symmetric_and_multilinear(a in arb_form(3), b in arb_form(3), c in arb_form(3), d in arb_form(3)) {
            let abc = mixed_intersection(&[a.clone(), b.clone(), c.clone()]).unwrap();
            prop_assert_eq!(&abc, &mixed_intersection(&[c.clone(), a.clone(), b.clone()]).unwrap());
            prop_assert_eq!(&abc, &mixed_intersection(&[b.clone(), a.clone(), c.clone()]).unwrap());
            let sum = mixed_intersection(&[a.add(&d).unwrap(), b.clone(), c.clone()]).unwrap();
            let split = abc.clone() + mixed_intersection(&[d.clone(), b.clone(), c.clone()]).unwrap();
            prop_assert_eq!(sum, split);
            let scaled = mixed_intersection(&[a.scale(-2), b.clone(), c.clone()]).unwrap();
            prop_assert_eq!(scaled, abc * gi(-2));
        }

        #[test]
        fn pencil_matches_general_sum(a in arb_form(3), b in arb_form(3)) {
            let pencil = pfaffian_pencil(&a, &b).unwrap();
            for k in 0..=3usize {
                let mut forms = vec![a.clone(); k];
                forms.extend(std::iter::repeat_n(b.clone(), 3 - k));
                let general = mixed_intersection(&forms).unwrap();
                let fast = pencil[k].clone() * gi((factorial(k) * factorial(3 - k)).to_i64().unwrap());
                prop_assert_eq!(general, fast);
            }
            prop_assert_eq!(&pencil[0], &b.pfaffian().unwrap());
            prop_assert_eq!(&pencil[3], &a.pfaffian().unwrap());
        }
    }
}
