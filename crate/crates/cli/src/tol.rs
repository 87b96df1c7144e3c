//! `ALBERTINE_TOL`: either one number applied to every check, or
//! comma-separated `name=value` overrides.

use albertine::dynamics::Tolerances;

pub const ENV_VAR: &str = "ALBERTINE_TOL";

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{ENV_VAR}: '{s}' is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{ENV_VAR}: tolerance must be positive and finite, got {s}"))
    }
}

pub fn parse(spec: &str) -> Result<Tolerances, String> {
    let spec = spec.trim();
    if !spec.contains('=') {
        return positive(spec).map(Tolerances::uniform);
    }
    let mut tol = Tolerances::default();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("{ENV_VAR}: expected name=value, got '{part}'"))?;
        let v = positive(value)?;
        match key.trim() {
            "pairing" => tol.pairing = v,
            "chi_lambda" | "degrees" => tol.chi_lambda = v,
            "dinh" => tol.dinh = v,
            "norm" => tol.norm = v,
            other => return Err(format!("{ENV_VAR}: unknown tolerance '{other}'")),
        }
    }
    Ok(tol)
}

pub fn from_env() -> Result<Tolerances, String> {
    match std::env::var(ENV_VAR) {
        Ok(s) if !s.trim().is_empty() => parse(&s),
        _ => Ok(Tolerances::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse("1e-6").unwrap(), Tolerances::uniform(1e-6));
        let t = parse("dinh=1e-5, norm=2e-8").unwrap();
        assert_eq!(t.dinh, 1e-5);
        assert_eq!(t.norm, 2e-8);
        assert_eq!(t.pairing, Tolerances::default().pairing);
        for bad in ["x", "-1", "0", "inf", "dinh=", "speed=1e-3", "dinh=1e-3,oops"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
