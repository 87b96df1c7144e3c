//! Every identity checked at once for a single `(model, α)` pair.

use serde::Serialize;

use crate::albert::{albert_poly_with, AlbertOptions};
use crate::dynamics::{degree_report, dinh_check, norm_comparison, polarized_check, relative_gap, Tolerances};
use crate::error::Result;
use crate::model::{degree, full_char_poly, random_endomorphism, random_model, Characteristic, Endomorphism, VarietyModel};
use crate::oracle::{pfaffian_interpolation, verify_corollary_b};
use crate::poly::conjugate_pairing;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: &'static str, r: Result<(bool, String)>) -> Check {
        match r {
            Ok((pass, detail)) => Check { name, pass, detail },
            Err(e) => Check {
                name,
                pass: false,
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub label: Option<String>,
    pub g: usize,
    pub degree: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Runs the pairing, factorization, degree, intersection, Dinh, norm,
/// polarized and Pfaffian checks. Fails early only for an invalid model.
pub fn verify_pair(model: &VarietyModel, alpha: &Endomorphism, tol: &Tolerances) -> Result<VerifyReport> {
    model.validate()?;
    alpha.check_shape(model)?;
    let g = model.dimension();
    let deg = degree(model, alpha)?;
    let mut checks = Vec::new();

    checks.push(Check::from_result("pairing", (|| {
        let p = full_char_poly(model, alpha)?;
        let cp = conjugate_pairing(&p, tol.pairing)?;
        Ok((cp.residual <= tol.pairing, format!("residual {:.3e}", cp.residual)))
    })()));

    checks.push(Check::from_result("factorization", (|| {
        let opts = AlbertOptions {
            tol: tol.pairing,
            ..AlbertOptions::default()
        };
        let f = albert_poly_with(model, alpha, opts)?;
        Ok((f.residual <= tol.pairing, format!("residual {:.3e}", f.residual)))
    })()));

    checks.push(Check::from_result("degrees", (|| {
        let r = degree_report(model, alpha, None, tol)?;
        let worst = r.entries.iter().map(|e| e.gap).fold(0.0, f64::max);
        Ok((r.chi_lambda, format!("max gap {worst:.3e}")))
    })()));

    checks.push(Check::from_result("intersection", (|| {
        let r = verify_corollary_b(model, alpha)?;
        Ok((r.pass, format!("oracle [{}] albert [{}]", r.oracle.join(", "), r.coefficients.join(", "))))
    })()));

    checks.push(Check::from_result("dinh", (|| {
        let r = dinh_check(model, alpha, tol.dinh)?;
        let worst = r.entries.iter().map(|e| e.gap).fold(0.0, f64::max);
        Ok((r.pass, format!("max gap {worst:.3e}")))
    })()));

    checks.push(Check::from_result("norm", (|| {
        let mut worst: f64 = 0.0;
        for k in 1..=g {
            let (s, r) = norm_comparison(model, alpha, k)?;
            worst = worst.max(relative_gap(s, r));
        }
        Ok((worst <= tol.norm, format!("max gap {worst:.3e}")))
    })()));

    checks.push(Check::from_result("polarized", (|| {
        let r = polarized_check(model, 2)?;
        Ok((r.pass, format!("n = 2, q = {}", r.q)))
    })()));

    checks.push(Check::from_result("pfaffian", (|| {
        let r = pfaffian_interpolation(model, alpha)?;
        Ok((r.pass, format!("[{}]", r.interpolated.join(", "))))
    })()));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        label: alpha.label.clone(),
        g,
        degree: deg.to_string(),
        checks,
        pass,
    })
}

/// A random valid model with a random endomorphism of nonzero degree.
///
/// The endomorphism is redrawn from a derived seed until it is an isogeny.
pub fn random_isogeny(
    seed: u64,
    max_g: usize,
    ch: Characteristic,
    bound: i64,
) -> Result<(VarietyModel, Endomorphism)> {
    let model = random_model(seed, max_g, ch)?;
    let mut s = seed ^ 0x9e37_79b9_7f4a_7c15;
    loop {
        let alpha = random_endomorphism(s, &model, bound)?;
        if !degree(&model, &alpha)?.eq(&0.into()) {
            return Ok((model, alpha));
        }
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_pairs_verify() {
        for seed in 0..12u64 {
            let ch = if seed % 2 == 0 { Characteristic::Zero } else { Characteristic::Positive };
            let (m, a) = random_isogeny(seed, 3, ch, 3).unwrap();
            let r = verify_pair(&m, &a, &Tolerances::default()).unwrap();
            assert!(r.pass, "seed {seed}: {r:?}");
            assert_eq!(r.checks.len(), 8);
        }
    }

    #[test]
    fn singular_endomorphism_still_verifies() {
        let (m, _) = random_isogeny(3, 2, Characteristic::Zero, 2).unwrap();
        let zero = Endomorphism::multiplication_by(&m, 0).unwrap();
        let r = verify_pair(&m, &zero, &Tolerances::default()).unwrap();
        assert_eq!(r.degree, "0");
        assert!(r.pass, "{r:?}");
    }
}
