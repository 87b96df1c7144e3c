use albertine::albert::{albert_poly, albert_poly_symmetric, albert_poly_with, AlbertOptions};
use albertine::dynamics::{degree_report, Tolerances};
use albertine::model::{
    degree, full_char_poly, random_pair, rational_rep, AlbertType, Characteristic, Endomorphism,
    VarietyModel,
};
use albertine::numeric::{
    eigenvalues, exterior_power, hermitian_eigenvalues, quat_embed, singular_values, Determinant,
    MatC, MatH, Matrix, Quaternion,
};
use albertine::oracle::intersection_ratio;
use albertine::poly::{
    char_poly_exact, conjugate_pairing, elementary_symmetric, PairingConvention, PolyC,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn ch(seed: u64) -> Characteristic {
    if seed % 2 == 0 {
        Characteristic::Zero
    } else {
        Characteristic::Positive
    }
}

fn pair(seed: u64) -> (VarietyModel, Endomorphism) {
    random_pair(seed, 4, ch(seed), 3).unwrap()
}

fn quat_matrix(n: usize, v: &[f64]) -> MatH {
    Matrix::from_fn(n, n, |i, j| {
        let o = 4 * (i * n + j);
        Quaternion::new(v[o], v[o + 1], v[o + 2], v[o + 3])
    })
}

fn complex_matrix(n: usize, v: &[f64]) -> MatC {
    Matrix::from_fn(n, n, |i, j| Complex64::new(v[2 * (i * n + j)], v[2 * (i * n + j) + 1]))
}

fn int_matrix(n: usize, v: &[i64]) -> Matrix<BigInt> {
    Matrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]))
}

/// Greedy nearest matching; returns the worst scaled distance.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d / (1.0 + x.norm()));
    }
    worst
}

fn det_by_elimination(m: &Matrix<BigInt>) -> BigInt {
    <BigInt as Determinant>::det(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quaternion_embedding_is_multiplicative(
        n in 1usize..=4,
        v in prop::collection::vec(-3.0f64..3.0, 128),
    ) {
        let a = quat_matrix(n, &v[..64]);
        let b = quat_matrix(n, &v[64..]);
        let lhs = quat_embed(&a.matmul(&b).unwrap()).unwrap();
        let rhs = quat_embed(&a).unwrap().matmul(&quat_embed(&b).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn hermitian_quaternion_spectrum_is_real(
        n in 1usize..=4,
        v in prop::collection::vec(-3.0f64..3.0, 64),
    ) {
        let a = quat_matrix(n, &v);
        let h = a.add(&a.adjoint()).unwrap();
        prop_assert!(h.is_hermitian(0.0));
        for z in eigenvalues(&quat_embed(&h).unwrap()).unwrap() {
            prop_assert!(z.im.abs() <= 1e-9 * (1.0 + z.re.abs()), "{z}");
        }
    }

    #[test]
    fn doubled_matrix_spectrum_is_conjugation_closed(
        n in 1usize..=5,
        v in prop::collection::vec(-3.0f64..3.0, 50),
    ) {
        let a = complex_matrix(n, &v);
        let d = Matrix::block_diag(&[a.clone(), a.conj()]);
        let ev = eigenvalues(&d).unwrap();
        let conj: Vec<Complex64> = ev.iter().map(|z| z.conj()).collect();
        prop_assert!(multiset_distance(&ev, &conj) <= 1e-8);
    }

    #[test]
    fn exterior_power_is_functorial(
        n in 1usize..=6,
        k in 0usize..=6,
        v in prop::collection::vec(-4i64..=4, 72),
    ) {
        let k = k.min(n);
        let a = int_matrix(n, &v[..36]);
        let b = int_matrix(n, &v[36..]);
        let lhs = exterior_power(&a.matmul(&b).unwrap(), k).unwrap();
        let rhs = exterior_power(&a, k).unwrap().matmul(&exterior_power(&b, k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_poly_matches_determinant(
        n in 1usize..=8,
        r in -5i64..=5,
        v in prop::collection::vec(-6i64..=6, 64),
    ) {
        let m = int_matrix(n, &v);
        let p = char_poly_exact(&m).unwrap();
        let shifted = Matrix::scalar(n, BigInt::from(r)).sub(&m).unwrap();
        prop_assert_eq!(p.eval(&BigInt::from(r)), det_by_elimination(&shifted));
    }

    #[test]
    fn newton_identities(values in prop::collection::vec(-5.0f64..5.0, 1..8)) {
        let n = values.len();
        let p: Vec<f64> = (0..=n).map(|j| values.iter().map(|x| x.powi(j as i32)).sum()).collect();
        let mut e = vec![1.0];
        for k in 1..=n {
            let s: f64 = (1..=k)
                .map(|i| if i % 2 == 1 { 1.0 } else { -1.0 } * e[k - i] * p[i])
                .sum();
            e.push(s / k as f64);
        }
        let scale = values.iter().map(|x| 1.0 + x.abs()).product::<f64>();
        for (k, ek) in e.iter().enumerate() {
            let direct = elementary_symmetric(k, &values).unwrap();
            prop_assert!((direct - ek).abs() <= 1e-9 * scale, "k={k}: {direct} vs {ek}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairing_round_trip(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let p = full_char_poly(&m, &a).unwrap();
        let cp = conjugate_pairing(&p, 1e-7).unwrap();
        prop_assert_eq!(cp.half_degree(), m.dimension());
        prop_assert!(cp.expand().relative_residual(&p.to_complex()) <= 1e-7);
    }

    #[test]
    fn albert_factorization_identity(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let f = albert_poly(&m, &a).unwrap();
        let p = full_char_poly(&m, &a).unwrap().to_complex();
        prop_assert!(f.p_albert.mul(&f.p_albert.conj()).relative_residual(&p) <= 1e-7);
        prop_assert_eq!(f.p_albert.degree(), m.dimension());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rep_spectrum_matches_char_poly_roots(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let p = full_char_poly(&m, &a).unwrap();
        let cp = conjugate_pairing(&p, 1e-7).unwrap();
        let mut roots = cp.representatives(PairingConvention::UpperHalf);
        roots.extend(cp.representatives(PairingConvention::LowerHalf));
        let ev = eigenvalues(&rational_rep(&m, &a).unwrap()).unwrap();
        prop_assert!(multiset_distance(&ev, &roots) <= 1e-7);
    }

    #[test]
    fn rosati_is_an_involutive_anti_automorphism(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let b = albertine::model::random_endomorphism(seed ^ 0xabcdef, &m, 3).unwrap();
        prop_assert_eq!(&a.rosati().rosati().blocks, &a.blocks);
        let lhs = a.compose(&b).unwrap().rosati();
        let rhs = b.rosati().compose(&a.rosati()).unwrap();
        prop_assert_eq!(lhs.blocks, rhs.blocks);
        prop_assert!(a.rosati_square().unwrap().is_symmetric());
    }

    #[test]
    fn degree_of_rosati_square(seed in any::<u64>()) {
        let (m, b) = pair(seed);
        let sym = b.rosati_square().unwrap();
        let d = degree(&m, &sym).unwrap();
        prop_assert!(!d.is_negative());
        prop_assert_eq!(&d, &degree(&m, &b).unwrap().pow(2));
        let s = singular_values(&rational_rep(&m, &sym).unwrap()).unwrap();
        let top = s[0].max(1.0);
        for w in s.chunks(2) {
            prop_assert!((w[0] - w[1]).abs() <= 1e-9 * top);
        }
        let prod: f64 = s.iter().step_by(2).product::<f64>().powi(2);
        let df = d.to_f64().unwrap();
        if df == 0.0 {
            prop_assert!(prod <= 1e-9 * top.powi(2 * m.dimension() as i32));
        } else {
            prop_assert!((prod - df).abs() <= 1e-7 * df, "{prod} vs {df}");
        }
    }

    #[test]
    fn symmetric_albert_ignores_the_convention(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let sym = a.rosati_square().unwrap();
        let up = albert_poly_with(&m, &sym, AlbertOptions::default()).unwrap().p_albert;
        let down = albert_poly_with(&m, &sym, AlbertOptions {
            convention: PairingConvention::LowerHalf,
            ..AlbertOptions::default()
        }).unwrap().p_albert;
        let direct = albert_poly_symmetric(&m, &sym).unwrap();
        prop_assert!(up.relative_residual(&down) <= 1e-9);
        prop_assert!(direct.relative_residual(&up) <= 1e-9);
    }

    #[test]
    fn constant_term_squared_is_degree(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let f = albert_poly(&m, &a).unwrap();
        let c0 = f.p_albert.coeff(0).norm_sqr();
        let d = degree(&m, &a).unwrap().to_f64().unwrap();
        prop_assert!((c0 - d).abs() <= 1e-7 * d.abs().max(1.0), "{c0} vs {d}");
    }

    #[test]
    fn top_intersection_is_degree(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let g = m.dimension();
        let r = intersection_ratio(&m, &a, g, 1).unwrap();
        prop_assert_eq!(r.ratio().to_integer(), degree(&m, &a).unwrap());
        prop_assert!(r.ratio().is_integer());
    }

    #[test]
    fn intersections_are_symmetric_functions_of_singular_values(seed in any::<u64>()) {
        let (m, a) = random_pair(seed, 4, ch(seed), 2).unwrap();
        let g = m.dimension();
        let sym = rational_rep(&m, &a.rosati_square().unwrap()).unwrap();
        // Hermitian, each σ² doubled.
        let sq: Vec<f64> = hermitian_eigenvalues(&sym).unwrap().into_iter().step_by(2).collect();
        for k in 0..=g {
            let oracle = intersection_ratio(&m, &a, k, 1).unwrap().normalized(g);
            prop_assert!(oracle.is_integer());
            let exact = oracle.to_integer().to_f64().unwrap();
            let float = elementary_symmetric(k, &sq).unwrap();
            prop_assert!((exact - float).abs() <= 1e-9 * exact.abs().max(1.0),
                "k={k}: {exact} vs {float}");
        }
    }

    #[test]
    fn numerical_degrees_are_log_concave(seed in any::<u64>()) {
        let (m, a) = pair(seed);
        let r = degree_report(&m, &a, None, &Tolerances::default()).unwrap();
        prop_assert!(r.log_concave);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn totally_real_and_indefinite_albert_polys_are_integral(seed in any::<u64>()) {
        let mut s = seed;
        let (m, a) = loop {
            let (m, a) = pair(s);
            if m.factors.iter().all(|f| matches!(f.albert_type, AlbertType::I | AlbertType::II)) {
                break (m, a);
            }
            s = s.wrapping_add(0x51ed_270b);
        };
        let f = albert_poly(&m, &a).unwrap();
        let exact = f.p_albert_exact.clone().unwrap();
        prop_assert!(f.exact);
        prop_assert_eq!(f.p_albert.round_to_integer(1e-9), Some(exact));
    }
}

#[test]
fn identity_is_fixed_by_everything() {
    let (m, _) = pair(7);
    let id = Endomorphism::identity(&m).unwrap();
    assert!(id.is_symmetric());
    assert_eq!(degree(&m, &id).unwrap(), BigInt::one());
    let f = albert_poly(&m, &id).unwrap();
    let expected = PolyC::from_roots(&[(Complex64::new(1.0, 0.0), m.dimension())]);
    assert!(f.p_albert.relative_residual(&expected) <= 1e-12);
    assert!(degree(&m, &Endomorphism::multiplication_by(&m, 0).unwrap()).unwrap().is_zero());
}
