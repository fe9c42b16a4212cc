use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_fusion::folding::{enumerate_b, enumerate_p, enumerate_s, lattice_index};
use twisted_fusion::fusion::{conjugate, nimrep, ordinary_fusion, twisted_fusion};
use twisted_fusion::oracle::{
    character_ratio, fusion_numeric, smatrix_at_shifted, twisted_smatrix, Oracle,
};
use twisted_fusion::{Algebra, Automorphism, AutomorphismKind, Error, Weight};

fn setup(name: &str, kind: AutomorphismKind) -> (Algebra, Automorphism) {
    let alg = Algebra::from_name(name.parse().unwrap()).unwrap();
    let aut = Automorphism::named(&alg, kind).unwrap();
    (alg, aut)
}

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

#[test]
fn a3_flip_level_two_agrees_everywhere() {
    let (alg, aut) = setup("A3", AutomorphismKind::Flip);
    let bs = enumerate_b(&alg, &aut, 2);
    assert_eq!(bs.len(), enumerate_s(&alg, &aut, 2).len());
    for i in enumerate_p(&alg, 2) {
        for alpha in &bs {
            let exact = twisted_fusion(&i, alpha, 2, &aut, &alg).unwrap();
            for beta in &bs {
                let num = fusion_numeric(&i, alpha, beta, 2, &aut, &alg, 1e-6).unwrap();
                assert_eq!(
                    num.rounded,
                    exact.get(beta) as i64,
                    "({i}) ({alpha}) ({beta})"
                );
            }
        }
    }
}

#[test]
fn su2_matches_closed_form() {
    let (alg, _) = setup("A1", AutomorphismKind::Trivial);
    for k in 1..=8u32 {
        let k = i64::from(k);
        for a in 0..=k {
            for b in 0..=k {
                let product = ordinary_fusion(
                    &Weight::from_ints(&[a]),
                    &Weight::from_ints(&[b]),
                    k as u32,
                    &alg,
                )
                .unwrap();
                for c in 0..=k {
                    let allowed = (a - b).abs() <= c
                        && c <= (a + b).min(2 * k - a - b)
                        && (a + b + c) % 2 == 0;
                    assert_eq!(
                        product.get(&Weight::from_ints(&[c])),
                        u64::from(allowed),
                        "k={k} {a}x{b}->{c}"
                    );
                }
            }
        }
    }
}

#[test]
fn su3_level_two_sample_products() {
    let (alg, _) = setup("A2", AutomorphismKind::Trivial);
    let product = ordinary_fusion(&w("1,0"), &w("0,1"), 2, &alg).unwrap();
    assert_eq!(product.get(&w("0,0")), 1);
    assert_eq!(product.get(&w("1,1")), 1);
    assert_eq!(product.total(), 2);
    let at_level_one = ordinary_fusion(&w("1,0"), &w("1,0"), 1, &alg).unwrap();
    assert_eq!(at_level_one.terms().len(), 1);
    assert_eq!(at_level_one.get(&w("0,1")), 1);
}

#[test]
fn conjugate_representation_gives_transpose() {
    let cases = [
        ("A2", AutomorphismKind::Flip, 3),
        ("A3", AutomorphismKind::Flip, 3),
        ("A4", AutomorphismKind::Flip, 2),
        ("D4", AutomorphismKind::Triality, 2),
        ("E6", AutomorphismKind::Flip, 1),
    ];
    for (name, kind, kmax) in cases {
        let (alg, aut) = setup(name, kind);
        for k in 1..=kmax {
            let oracle = Oracle::new(k, &aut, &alg).unwrap();
            for i in enumerate_p(&alg, k) {
                let direct = nimrep(&i, k, &aut, &alg).unwrap();
                let dual = nimrep(&conjugate(&i, &alg), k, &aut, &alg).unwrap();
                assert_eq!(
                    dual.entries(),
                    direct.transpose().as_slice(),
                    "{name} {kind} k={k} ({i})"
                );
                let order = direct.index_order();
                for (b, beta) in order.iter().enumerate() {
                    for (a, alpha) in order.iter().enumerate() {
                        let num = oracle
                            .coefficient(&conjugate(&i, &alg), alpha, beta)
                            .unwrap();
                        assert_eq!(num.rounded, direct.entry(a, b) as i64);
                    }
                }
            }
        }
    }
}

#[test]
fn coefficients_do_not_depend_on_overall_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, kind, k) in [
        ("A2", AutomorphismKind::Flip, 2),
        ("D4", AutomorphismKind::Flip, 1),
    ] {
        let (alg, aut) = setup(name, kind);
        let base = Oracle::new(k, &aut, &alg).unwrap();
        let factor = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        let rephased = Oracle::with_smatrix(k, &alg, base.smatrix().rephased(factor));
        let bs = enumerate_b(&alg, &aut, k);
        for i in enumerate_p(&alg, k) {
            for alpha in &bs {
                for beta in &bs {
                    let x = base.coefficient(&i, alpha, beta).unwrap();
                    let y = rephased.coefficient(&i, alpha, beta).unwrap();
                    assert_eq!(x.rounded, y.rounded);
                    assert!((x.value - y.value).norm() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn untwisted_vacuum_row_matches_product_formula() {
    for (name, kmax) in [("A1", 5u32), ("A2", 3), ("B2", 2), ("G2", 2), ("C3", 1)] {
        let (alg, aut) = setup(name, AutomorphismKind::Trivial);
        for k in 1..=kmax {
            let h = k + alg.dual_coxeter();
            let s = twisted_smatrix(k, &aut, &alg).unwrap();
            assert_eq!(s.rows()[0], Weight::zero(alg.rank()));
            let norm = (lattice_index(&alg, &aut, h).unwrap() as f64).sqrt();
            for (m, mu) in s.cols().iter().enumerate() {
                let shifted = mu + alg.rho();
                let product: f64 = alg
                    .positive_roots()
                    .iter()
                    .map(|a| {
                        let x = *alg.ip(a, &shifted).numer() as f64
                            / *alg.ip(a, &shifted).denom() as f64;
                        2.0 * (PI * x / f64::from(h)).sin().abs()
                    })
                    .product();
                let got = s.entry(0, m).norm();
                assert!(
                    (got - product / norm).abs() < 1e-9,
                    "{name} k={k} ({mu}): {got} vs {}",
                    product / norm
                );
            }
        }
    }
}

#[test]
fn self_conjugate_characters_are_real() {
    for (name, kind, k) in [
        ("A2", AutomorphismKind::Flip, 3),
        ("A3", AutomorphismKind::Flip, 2),
        ("D4", AutomorphismKind::Triality, 2),
    ] {
        let (alg, aut) = setup(name, kind);
        for i in enumerate_p(&alg, k)
            .into_iter()
            .filter(|i| conjugate(i, &alg) == *i)
        {
            for mu in enumerate_s(&alg, &aut, k) {
                let chi = character_ratio(&i, &mu, k, &alg).unwrap();
                assert!(chi.im.abs() < 1e-9, "{name} ({i}) at ({mu}): {chi}");
            }
        }
    }
}

#[test]
fn shifted_entries_vanish_on_alcove_walls() {
    let (alg, aut) = setup("D5", AutomorphismKind::Flip);
    let k = 1;
    let h = k + alg.dual_coxeter();
    let walls: Vec<Weight> = enumerate_s(&alg, &aut, h)
        .into_iter()
        .filter(|nu| {
            nu.coords().iter().any(|c| *c == 0.into())
                || alg.ip(alg.theta(), nu) == i64::from(h).into()
        })
        .collect();
    assert!(!walls.is_empty());
    for alpha in enumerate_b(&alg, &aut, k) {
        for nu in &walls {
            assert!(
                smatrix_at_shifted(&alpha, nu, k, &aut, &alg)
                    .unwrap()
                    .norm()
                    < 1e-9
            );
        }
    }
    let interior = &alg.rho().clone();
    let vacuum = Weight::zero(alg.rank());
    assert!(
        smatrix_at_shifted(&vacuum, interior, k, &aut, &alg)
            .unwrap()
            .norm()
            > 1e-3
    );
}

#[test]
fn domain_errors_are_reported() {
    let (alg, aut) = setup("A2", AutomorphismKind::Flip);
    let err = twisted_fusion(&w("2,0"), &w("0,0"), 1, &aut, &alg).unwrap_err();
    assert!(matches!(err, Error::NotInDomain { .. }), "{err}");
    let err = twisted_fusion(&w("1,0"), &w("1,0"), 2, &aut, &alg).unwrap_err();
    assert!(
        matches!(err, Error::NotSymmetric(_) | Error::NotInDomain { .. }),
        "{err}"
    );
    let err = twisted_fusion(&w("1,0,0"), &w("0,0"), 2, &aut, &alg).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { .. }), "{err}");
    let err = smatrix_at_shifted(&w("5,5"), &w("1,1"), 1, &aut, &alg).unwrap_err();
    assert!(matches!(err, Error::NotInDomain { .. }), "{err}");
}
