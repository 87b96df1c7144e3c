use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `e_k` of a multiset of reals, with `e_0 = 1`.
pub fn elementary_symmetric(k: usize, values: &[f64]) -> Result<f64> {
    if k > values.len() {
        return Err(Error::OutOfRange {
            what: "symmetric function index",
            value: k,
            min: 0,
            max: values.len(),
        });
    }
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for (n, &v) in values.iter().enumerate() {
        for j in (1..=k.min(n + 1)).rev() {
            e[j] += v * e[j - 1];
        }
    }
    Ok(e[k])
}

pub fn elementary_symmetric_exact(k: usize, values: &[BigInt]) -> Result<BigInt> {
    if k > values.len() {
        return Err(Error::OutOfRange {
            what: "symmetric function index",
            value: k,
            min: 0,
            max: values.len(),
        });
    }
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for (n, v) in values.iter().enumerate() {
        for j in (1..=k.min(n + 1)).rev() {
            let add = v * &e[j - 1];
            e[j] += add;
        }
    }
    Ok(e[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(elementary_symmetric(1, &[9.0, 4.0]).unwrap(), 13.0);
        assert_eq!(elementary_symmetric(2, &[9.0, 4.0]).unwrap(), 36.0);
        assert_eq!(elementary_symmetric(0, &[9.0, 4.0]).unwrap(), 1.0);
        assert_eq!(elementary_symmetric(0, &[]).unwrap(), 1.0);
        assert!(elementary_symmetric(3, &[9.0, 4.0]).is_err());
    }

    /// Recovers `e_1..e_n` from power sums with Newton's identities
    /// `k·e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i`.
    fn newton_from_power_sums(values: &[f64]) -> Vec<f64> {
        let n = values.len();
        let p: Vec<f64> = (0..=n)
            .map(|i| values.iter().map(|v| v.powi(i as i32)).sum())
            .collect();
        let mut e = vec![1.0];
        for k in 1..=n {
            let mut s = 0.0;
            for i in 1..=k {
                let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                s += sign * e[k - i] * p[i];
            }
            e.push(s / k as f64);
        }
        e
    }

    proptest! {
        #[test]
        fn matches_newton_identities(values in prop::collection::vec(-4.0f64..4.0, 0..7)) {
            let newton = newton_from_power_sums(&values);
            let scale = values.iter().map(|v| 1.0 + v.abs()).product::<f64>();
            for (k, ek) in newton.iter().enumerate() {
                let direct = elementary_symmetric(k, &values).unwrap();
                prop_assert!((direct - ek).abs() <= 1e-9 * scale, "k={} {} vs {}", k, direct, ek);
            }
        }

        #[test]
        fn exact_matches_float(values in prop::collection::vec(-20i64..20, 0..6)) {
            let big: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
            let flt: Vec<f64> = values.iter().map(|&v| v as f64).collect();
            for k in 0..=values.len() {
                let e = elementary_symmetric_exact(k, &big).unwrap();
                prop_assert_eq!(e, BigInt::from(elementary_symmetric(k, &flt).unwrap() as i64));
            }
        }
    }
}
