//! Cohomological and numerical dynamical degrees.
//!
//! `χᵢ` is the spectral radius of `∧ⁱ` of the action on `H¹`. `λ_k` has the
//! closed form `∏_{j≤k} |π_j|²` over the Albert roots sorted by modulus, and
//! is also estimated from intersection growth `((α^m)*H^k·H^{g−k})^{1/m}`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{full_char_poly, rational_rep_blocks, Endomorphism, VarietyModel};
use crate::numeric::eigen::normalized;
use crate::numeric::{exterior_power, sorted_moduli, spectral_norm, spectral_radius, MatC, Matrix};
use crate::oracle::intersection_ratios;
use crate::poly::conjugate_pairing;

/// Relative tolerances for the verification identities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub pairing: f64,
    pub chi_lambda: f64,
    pub dinh: f64,
    pub norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pairing: 1e-7,
            chi_lambda: 1e-9,
            dinh: 1e-7,
            norm: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            pairing: tol,
            chi_lambda: tol,
            dinh: tol,
            norm: tol,
        }
    }
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `a ≈ b` to relative tolerance `tol`. When the exact value `b` is zero the
/// float side is compared against `zero_floor` instead, since a relative
/// test against zero is meaningless.
pub fn agrees(a: f64, b: f64, tol: f64, zero_floor: f64) -> bool {
    if b == 0.0 {
        a.abs() <= zero_floor
    } else {
        relative_gap(a, b) <= tol
    }
}

/// Size below which a float `χᵢ` counts as zero: the rounding error of an
/// eigenvalue of `∧ⁱM` is of order `ε·‖M‖ⁱ`.
fn zero_floor(norm: f64, i: usize) -> f64 {
    1e-12 * norm.max(1.0).powi(i as i32)
}

fn check_index(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::OutOfRange {
            what,
            value,
            min: 0,
            max,
        });
    }
    Ok(())
}

/// `rep(α)` as its distinct diagonal blocks with their number of copies.
///
/// `∧ⁱ(B₁ ⊕ … ⊕ B_r)` is, after a permutation of the basis, the sum over
/// `i₁ + … + i_r = i` of `∧^{i₁}B₁ ⊗ … ⊗ ∧^{i_r}B_r`. Spectral radii and top
/// singular values are multiplicative under `⊗` and maximal under `⊕`, so
/// both are computed from the blocks without forming `∧ⁱ rep(α)`. This also
/// keeps Jordan blocks of different copies from combining into larger ones.
struct BlockRep {
    blocks: Vec<(MatC, usize)>,
}

impl BlockRep {
    fn new(model: &VarietyModel, alpha: &Endomorphism) -> Result<Self> {
        let mut blocks: Vec<(MatC, usize)> = Vec::new();
        for b in rational_rep_blocks(model, alpha)? {
            let b = b.to_complex();
            match blocks.iter_mut().find(|(x, _)| *x == b) {
                Some(entry) => entry.1 += 1,
                None => blocks.push((b, 1)),
            }
        }
        Ok(BlockRep { blocks })
    }

    /// `max ∏ⱼ f(∧^{iⱼ}Bⱼ)` over all splittings of `i` among the copies.
    fn exterior_max(&self, i: usize, f: impl Fn(&MatC) -> Result<f64>) -> Result<f64> {
        let mut best = vec![-1.0; i + 1];
        best[0] = 1.0;
        for (b, copies) in &self.blocks {
            let top = b.rows().min(i);
            let mut vals = vec![1.0];
            for s in 1..=top {
                vals.push(f(&exterior_power(b, s)?)?);
            }
            for _ in 0..*copies {
                let mut next = vec![-1.0f64; i + 1];
                for (t, slot) in next.iter_mut().enumerate() {
                    for (s, v) in vals.iter().enumerate().take(t + 1) {
                        if best[t - s] >= 0.0 {
                            *slot = slot.max(best[t - s] * v);
                        }
                    }
                }
                best = next;
            }
        }
        Ok(best[i].max(0.0))
    }

    fn chi(&self, i: usize) -> Result<f64> {
        self.exterior_max(i, spectral_radius)
    }

    fn top_singular(&self, i: usize) -> Result<f64> {
        self.exterior_max(i, spectral_norm)
    }
}

/// `χᵢ(α) = ρ(∧ⁱ rep(α))`.
pub fn cohomological_degree(model: &VarietyModel, alpha: &Endomorphism, i: usize) -> Result<f64> {
    let g = model.dimension();
    check_index("cohomological degree index", i, 2 * g)?;
    BlockRep::new(model, alpha)?.chi(i)
}

/// `|π₁| ≥ … ≥ |π_g|` from the exact characteristic polynomial.
pub fn albert_moduli(model: &VarietyModel, alpha: &Endomorphism, tol: f64) -> Result<Vec<f64>> {
    let p = full_char_poly(model, alpha)?;
    Ok(conjugate_pairing(&p, tol)?.sorted_moduli())
}

/// `λ_k = ∏_{j≤k} |π_j|²`.
pub fn numerical_degree_closed(model: &VarietyModel, alpha: &Endomorphism, k: usize) -> Result<f64> {
    let g = model.dimension();
    check_index("numerical degree index", k, g)?;
    let moduli = albert_moduli(model, alpha, Tolerances::default().pairing)?;
    Ok(lambda_from_moduli(&moduli, k))
}

fn lambda_from_moduli(moduli: &[f64], k: usize) -> f64 {
    moduli[..k].iter().map(|r| r * r).product()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub index: usize,
    /// `(m, estimate)` with strictly increasing `m`.
    pub points: Vec<(u32, f64)>,
    pub target: f64,
}

impl ConvergenceTrace {
    pub fn last(&self) -> Option<(u32, f64)> {
        self.points.last().copied()
    }

    pub fn final_gap(&self) -> f64 {
        self.last()
            .map(|(_, v)| relative_gap(v, self.target))
            .unwrap_or(f64::INFINITY)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,value,target\n");
        for (m, v) in &self.points {
            s.push_str(&format!("{m},{v:.16e},{:.16e}\n", self.target));
        }
        s
    }
}

/// Natural logarithm of a positive big integer, valid beyond `f64` range.
pub fn ln_big(x: &BigInt) -> f64 {
    if x.sign() != Sign::Plus {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_rational(q: &BigRational) -> f64 {
    ln_big(q.numer()) - ln_big(q.denom())
}

/// `(binom(g,k)·(α^m)*H^k·H^{g−k}/H^g)^{1/m}` for `m = 1..=m_max`, one trace
/// per `k = 1..=g`, with the closed form as target.
pub fn numerical_degree_limits(
    model: &VarietyModel,
    alpha: &Endomorphism,
    m_max: u32,
) -> Result<Vec<ConvergenceTrace>> {
    let g = model.dimension();
    if m_max == 0 {
        return Err(Error::OutOfRange {
            what: "m_max",
            value: 0,
            min: 1,
            max: u32::MAX as usize,
        });
    }
    let moduli = albert_moduli(model, alpha, Tolerances::default().pairing)?;
    let mut traces: Vec<ConvergenceTrace> = (1..=g)
        .map(|k| ConvergenceTrace {
            index: k,
            points: Vec::new(),
            target: lambda_from_moduli(&moduli, k),
        })
        .collect();
    for m in 1..=m_max {
        let ratios = intersection_ratios(model, alpha, m)?;
        for (k, trace) in traces.iter_mut().enumerate().map(|(i, t)| (i + 1, t)) {
            let r = ratios[k].normalized(g);
            let est = if r.is_zero() {
                0.0
            } else {
                (ln_rational(&r) / m as f64).exp()
            };
            trace.points.push((m, est));
        }
    }
    Ok(traces)
}

pub fn numerical_degree_limit(
    model: &VarietyModel,
    alpha: &Endomorphism,
    k: usize,
    m_max: u32,
) -> Result<ConvergenceTrace> {
    let g = model.dimension();
    if k == 0 || k > g {
        return Err(Error::OutOfRange {
            what: "numerical degree index",
            value: k,
            min: 1,
            max: g,
        });
    }
    Ok(numerical_degree_limits(model, alpha, m_max)?.swap_remove(k - 1))
}

/// Top singular value of `M^m` in log form, for `m = 1, 2, 4, …, ≤ m_max`.
fn log_norm_of_powers(m: &MatC, m_max: u32) -> Result<Vec<(u32, f64)>> {
    let mut out = Vec::new();
    let (mut cur, s0) = normalized(m)?;
    let mut log_scale = s0.ln();
    let mut p = 1u32;
    loop {
        let norm = spectral_norm(&cur)?;
        out.push((p, if norm > 0.0 { norm.ln() + log_scale } else { f64::NEG_INFINITY }));
        if p > m_max / 2 {
            break;
        }
        cur = cur.matmul(&cur)?;
        log_scale *= 2.0;
        let s = cur.max_abs();
        if s > 0.0 {
            cur = cur.map(|z| z / s);
            log_scale += s.ln();
        }
        p *= 2;
    }
    Ok(out)
}

/// `σᵢ(A^m)^{1/m}` against `|πᵢ|` for every `i`.
///
/// `log σᵢ(A^m) = log‖∧ⁱ(A^m)‖ − log‖∧^{i−1}(A^m)‖`; the top norm of each
/// exterior power is well conditioned even when `σᵢ(A^m)` itself is far
/// below machine precision relative to `σ₁(A^m)`.
pub fn sv_limit(a: &MatC, m_max: u32) -> Result<Vec<ConvergenceTrace>> {
    let n = a.ensure_square()?;
    if m_max == 0 {
        return Err(Error::OutOfRange {
            what: "m_max",
            value: 0,
            min: 1,
            max: u32::MAX as usize,
        });
    }
    // σᵢ and |πᵢ| are homogeneous of degree one, so work with a / s.
    let (a, s) = normalized(a)?;
    let a = &a;
    let targets = sorted_moduli(a)?;
    let mut prev: Option<Vec<(u32, f64)>> = None;
    let mut traces = Vec::with_capacity(n);
    for i in 1..=n {
        let logs = log_norm_of_powers(&exterior_power(a, i)?, m_max)?;
        let points = logs
            .iter()
            .enumerate()
            .map(|(t, &(m, l))| {
                let below = prev.as_ref().map(|p| p[t].1).unwrap_or(0.0);
                let log_sigma = if l == f64::NEG_INFINITY { l } else { l - below };
                (m, (log_sigma / m as f64).exp() * s)
            })
            .collect();
        traces.push(ConvergenceTrace {
            index: i,
            points,
            target: targets[i - 1] * s,
        });
        prev = Some(logs);
    }
    if traces.iter().any(|t| t.points.iter().any(|p| !p.1.is_finite())) {
        return Err(Error::Overflow("singular values exceed the f64 range".into()));
    }
    Ok(traces)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeEntry {
    pub k: usize,
    pub chi_2k: f64,
    pub lambda_closed: f64,
    pub gap: f64,
    pub lambda_limit: Option<f64>,
    pub limit_m: Option<u32>,
    pub limit_gap: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub g: usize,
    pub entries: Vec<DegreeEntry>,
    /// `(i, χᵢ)` for odd `i`.
    pub odd: Vec<(usize, f64)>,
    pub chi_lambda: bool,
    pub log_concave: bool,
    #[serde(skip)]
    pub traces: Vec<ConvergenceTrace>,
}

/// Every degree of `α`, with intersection-growth estimates when `m_max` is
/// given.
pub fn degree_report(
    model: &VarietyModel,
    alpha: &Endomorphism,
    m_max: Option<u32>,
    tol: &Tolerances,
) -> Result<DegreeReport> {
    let g = model.dimension();
    let rep = BlockRep::new(model, alpha)?;
    let moduli = albert_moduli(model, alpha, tol.pairing)?;
    let traces = match m_max {
        Some(m) => numerical_degree_limits(model, alpha, m)?,
        None => Vec::new(),
    };
    let norm = rep.top_singular(1)?;
    let mut entries = Vec::with_capacity(g + 1);
    let mut odd = Vec::new();
    let mut chi_lambda = true;
    for i in 0..=2 * g {
        let c = rep.chi(i)?;
        if i % 2 == 1 {
            odd.push((i, c));
            continue;
        }
        let k = i / 2;
        let lambda = lambda_from_moduli(&moduli, k);
        chi_lambda &= agrees(c, lambda, tol.chi_lambda, zero_floor(norm, i));
        let last = (k >= 1).then(|| traces.get(k - 1).and_then(ConvergenceTrace::last)).flatten();
        entries.push(DegreeEntry {
            k,
            chi_2k: c,
            lambda_closed: lambda,
            gap: relative_gap(c, lambda),
            lambda_limit: last.map(|p| p.1),
            limit_m: last.map(|p| p.0),
            limit_gap: last.map(|p| relative_gap(p.1, lambda)),
        });
    }
    let log_concave = (1..g).all(|k| {
        let (a, b, c) = (
            entries[k - 1].lambda_closed,
            entries[k].lambda_closed,
            entries[k + 1].lambda_closed,
        );
        b * b >= a * c * (1.0 - 1e-12)
    });
    Ok(DegreeReport {
        g,
        entries,
        odd,
        chi_lambda,
        log_concave,
        traces,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarizedReport {
    pub n: i64,
    pub q: f64,
    /// `(k, λ_k, χ_{2k}, q^k)`.
    pub rows: Vec<(usize, f64, f64, f64)>,
    /// Exact `(α*H^k·H^{g−k})/H^g = q^k`.
    pub oracle_exact: bool,
    pub pass: bool,
}

/// Multiplication by `n` pulls `H` back to `n²H`, so every degree is a power
/// of `q = n²`.
pub fn polarized_check(model: &VarietyModel, n: i64) -> Result<PolarizedReport> {
    let g = model.dimension();
    let alpha = Endomorphism::multiplication_by(model, n)?;
    let rep = BlockRep::new(model, &alpha)?;
    let moduli = albert_moduli(model, &alpha, Tolerances::default().pairing)?;
    let q = (n * n) as f64;
    let mut rows = Vec::with_capacity(g + 1);
    let mut pass = true;
    for k in 0..=g {
        let lambda = lambda_from_moduli(&moduli, k);
        let c = rep.chi(2 * k)?;
        let qk = q.powi(k as i32);
        pass &= lambda == qk && c == qk;
        rows.push((k, lambda, c, qk));
    }
    let ratios = intersection_ratios(model, &alpha, 1)?;
    let qb = BigInt::from(n * n);
    let oracle_exact = ratios
        .iter()
        .all(|r| r.ratio() == BigRational::from_integer(qb.pow(r.k as u32)));
    Ok(PolarizedReport {
        n,
        q,
        rows,
        oracle_exact,
        pass: pass && oracle_exact,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DinhEntry {
    pub i: usize,
    pub chi_sq: f64,
    pub best_product: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DinhReport {
    pub entries: Vec<DinhEntry>,
    pub pass: bool,
}

/// `χᵢ² = max_{p+q=i} λ_p·λ_q` for `0 ≤ i ≤ 2g`.
pub fn dinh_check(model: &VarietyModel, alpha: &Endomorphism, tol: f64) -> Result<DinhReport> {
    let g = model.dimension();
    let rep = BlockRep::new(model, alpha)?;
    let moduli = albert_moduli(model, alpha, Tolerances::default().pairing)?;
    let lambda: Vec<f64> = (0..=g).map(|k| lambda_from_moduli(&moduli, k)).collect();
    let norm = rep.top_singular(1)?;
    let mut entries = Vec::with_capacity(2 * g + 1);
    let mut pass = true;
    for i in 0..=2 * g {
        let c = rep.chi(i)?;
        let lo = i.saturating_sub(g);
        let best = (lo..=i.min(g))
            .map(|p| lambda[p] * lambda[i - p])
            .fold(0.0, f64::max);
        pass &= agrees(c * c, best, tol, zero_floor(norm, i).powi(2));
        entries.push(DinhEntry {
            i,
            chi_sq: c * c,
            best_product: best,
            gap: relative_gap(c * c, best),
        });
    }
    Ok(DinhReport { entries, pass })
}

/// `(σ₁(∧^{2k} rep(α)), ρ(∧^{2k} rep(α†α))^{1/2})`.
pub fn norm_comparison(model: &VarietyModel, alpha: &Endomorphism, k: usize) -> Result<(f64, f64)> {
    let g = model.dimension();
    check_index("norm comparison index", k, g)?;
    if k == 0 {
        return Ok((1.0, 1.0));
    }
    let sigma = BlockRep::new(model, alpha)?.top_singular(2 * k)?;
    let rho = BlockRep::new(model, &alpha.rosati_square()?)?.chi(2 * k)?;
    Ok((sigma, rho.sqrt()))
}

/// A square complex matrix from rows of `(re, im)` pairs.
pub fn complex_matrix(rows: &[Vec<(f64, f64)>]) -> Result<MatC> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(a, b)| num_complex::Complex64::new(a, b)).collect())
            .collect(),
    )
}
