use std::sync::OnceLock;

use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twisted_fusion::cli::JobSpec;
use twisted_fusion::folding::{
    apply_steps, fold_to_fundamental, fold_with_trace, folded_reflection, lattice_index, project,
};
use twisted_fusion::rootdata::simple_reflection;
use twisted_fusion::weightsys::weight_system;
use twisted_fusion::{Algebra, Automorphism, AutomorphismKind, Weight};

const CASES: &[(&str, AutomorphismKind)] = &[
    ("A2", AutomorphismKind::Flip),
    ("A3", AutomorphismKind::Flip),
    ("A4", AutomorphismKind::Flip),
    ("A5", AutomorphismKind::Flip),
    ("D4", AutomorphismKind::Flip),
    ("D4", AutomorphismKind::Triality),
    ("D4", AutomorphismKind::Triality2),
    ("D5", AutomorphismKind::Flip),
    ("E6", AutomorphismKind::Flip),
    ("B3", AutomorphismKind::Trivial),
    ("C3", AutomorphismKind::Trivial),
    ("G2", AutomorphismKind::Trivial),
    ("F4", AutomorphismKind::Trivial),
];

fn cases() -> &'static [(Algebra, Automorphism)] {
    static CELL: OnceLock<Vec<(Algebra, Automorphism)>> = OnceLock::new();
    CELL.get_or_init(|| {
        CASES
            .iter()
            .map(|&(name, kind)| {
                let alg = Algebra::from_name(name.parse().unwrap()).unwrap();
                let aut = Automorphism::named(&alg, kind).unwrap();
                (alg, aut)
            })
            .collect()
    })
}

fn all_algebras() -> Vec<Algebra> {
    [
        "A1", "A2", "A4", "B2", "B4", "C3", "C4", "D4", "D6", "E6", "E7", "E8", "F4", "G2",
    ]
    .iter()
    .map(|n| Algebra::from_name(n.parse().unwrap()).unwrap())
    .collect()
}

fn truncate(raw: &[i64], rank: usize) -> Weight {
    Weight::from_ints(&raw[..rank])
}

fn case_and_weight() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..CASES.len(), proptest::collection::vec(-8i64..=8, 8))
}

#[test]
fn simple_reflections_are_exact_involutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let algebras = all_algebras();
    for _ in 0..10_000 {
        let alg = &algebras[rng.gen_range(0..algebras.len())];
        let labels: Vec<i64> = (0..alg.rank()).map(|_| rng.gen_range(-20..=20)).collect();
        let lambda = Weight::from_ints(&labels);
        let i = rng.gen_range(1..=alg.rank());
        let once = simple_reflection(i, &lambda, alg).unwrap();
        for j in 0..alg.rank() {
            assert_eq!(
                once[j],
                lambda[j] - lambda[i - 1] * alg.cartan()[i - 1][j],
                "{} s_{i}({lambda})",
                alg.name()
            );
        }
        assert_eq!(simple_reflection(i, &once, alg).unwrap(), lambda);
    }
}

#[test]
fn quadratic_form_reproduces_cartan_pairings() {
    for alg in all_algebras() {
        let r = alg.rank();
        for i in 0..r {
            let ai = &alg.simple_roots()[i];
            for j in 0..r {
                let aj = &alg.simple_roots()[j];
                let pairing = alg.ip(ai, aj) * 2 / alg.ip(aj, aj);
                assert_eq!(
                    pairing,
                    alg.cartan()[i][j].into(),
                    "{} ({i},{j})",
                    alg.name()
                );
                let coroot_on_weight = alg.ip(&alg.simple_coroots()[i], &Weight::fundamental(r, j));
                let expected = if i == j { 1 } else { 0 };
                assert_eq!(coroot_on_weight, expected.into());
            }
        }
        let longest = alg
            .simple_roots()
            .iter()
            .map(|a| alg.ip(a, a))
            .max()
            .unwrap();
        assert_eq!(longest, 2.into());
    }
}

#[test]
fn weight_systems_are_weyl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algebras: Vec<Algebra> = ["A2", "A3", "B3", "C3", "D4", "G2"]
        .iter()
        .map(|n| Algebra::from_name(n.parse().unwrap()).unwrap())
        .collect();
    for _ in 0..100 {
        let alg = &algebras[rng.gen_range(0..algebras.len())];
        let top: Vec<i64> = (0..alg.rank()).map(|_| rng.gen_range(0..=2)).collect();
        let ws = weight_system(&Weight::from_ints(&top), alg).unwrap();
        let weights: Vec<&Weight> = ws.entries().keys().collect();
        let mu = weights[rng.gen_range(0..weights.len())].clone();
        let mut image = mu.clone();
        for _ in 0..rng.gen_range(1..12) {
            image = simple_reflection(rng.gen_range(1..=alg.rank()), &image, alg).unwrap();
        }
        assert_eq!(
            ws.multiplicity(&image),
            ws.multiplicity(&mu),
            "{} {mu} -> {image}",
            alg.name()
        );
    }
}

#[test]
fn lattice_index_scales_with_level() {
    for (alg, aut) in cases() {
        let base = lattice_index(alg, aut, 1).unwrap();
        for h in 2..6u32 {
            let expected = base * u128::from(h).pow(aut.orbit_count() as u32);
            assert_eq!(
                lattice_index(alg, aut, h).unwrap(),
                expected,
                "{} {}",
                alg.name(),
                aut.kind()
            );
        }
    }
}

/// `s̃_i` as a word in ordinary reflections over the orbit of `i`.
fn reflection_word(alg: &Algebra, orbit: &[usize]) -> Vec<usize> {
    let adjacent = orbit.len() == 2 && alg.cartan()[orbit[0]][orbit[1]] != 0;
    if adjacent {
        vec![orbit[0], orbit[1], orbit[0]]
    } else {
        orbit.to_vec()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn projection_is_idempotent_and_equivariant((c, raw) in case_and_weight()) {
        let (alg, aut) = &cases()[c];
        let lambda = truncate(&raw, alg.rank());
        let p = project(&lambda, aut);
        prop_assert_eq!(project(&p, aut), p.clone());
        prop_assert_eq!(project(&aut.apply(&lambda), aut), p.clone());
        prop_assert!(aut.is_symmetric(&p));
        prop_assert!(aut.in_fractional_lattice(&p));
        for orbit in aut.orbits() {
            prop_assert!((p[orbit[0]] * orbit.len() as i64).is_integer());
        }
    }

    #[test]
    fn folded_reflection_is_involution_commuting_with_omega((c, raw) in case_and_weight()) {
        let (alg, aut) = &cases()[c];
        let lambda = project(&truncate(&raw, alg.rank()), aut);
        for (o, orbit) in aut.orbits().iter().enumerate() {
            let i = orbit[0] + 1;
            let once = folded_reflection(i, &lambda, aut, alg).unwrap();
            prop_assert_eq!(aut.apply(&once), once.clone());
            prop_assert_eq!(folded_reflection(i, &once, aut, alg).unwrap(), lambda.clone());
            let pairing = alg.ip(&lambda, aut.projected_root(o));
            if lambda[orbit[0]] == Rational64::from_integer(0) {
                prop_assert_eq!(pairing, Rational64::from_integer(0));
            } else {
                let ratio = pairing / lambda[orbit[0]];
                prop_assert!(ratio > Rational64::from_integer(0));
            }
        }
    }

    #[test]
    fn folded_reflection_matches_reflection_word((c, raw) in case_and_weight()) {
        let (alg, aut) = &cases()[c];
        let lambda = project(&truncate(&raw, alg.rank()), aut);
        for orbit in aut.orbits() {
            let mut v = lambda.clone();
            for &node in &reflection_word(alg, orbit) {
                v = simple_reflection(node + 1, &v, alg).unwrap();
            }
            prop_assert_eq!(folded_reflection(orbit[0] + 1, &lambda, aut, alg).unwrap(), v);
        }
    }

    #[test]
    fn fold_is_idempotent_and_reversible((c, raw) in case_and_weight(), h in 1u32..12) {
        let (alg, aut) = &cases()[c];
        let lambda = project(&truncate(&raw, alg.rank()), aut);
        let (fold, steps) = fold_with_trace(&lambda, h, aut, alg).unwrap();
        prop_assert!(fold.rep.is_dominant());
        prop_assert!(aut.theta_pairing(&fold.rep) <= Rational64::from_integer(h.into()));
        prop_assert_eq!(fold.sign, if steps.len() % 2 == 0 { 1 } else { -1 });
        let again = fold_to_fundamental(&fold.rep, h, aut, alg).unwrap();
        prop_assert_eq!(&again.rep, &fold.rep);
        prop_assert_eq!(again.sign, 1);
        prop_assert_eq!(again.boundary, fold.boundary);
        let reversed: Vec<_> = steps.iter().rev().copied().collect();
        prop_assert_eq!(apply_steps(&fold.rep, &reversed, h, aut), lambda);
    }

    #[test]
    fn weight_strings_round_trip(raw in proptest::collection::vec((-50i64..50, 1i64..7), 1..9)) {
        let w = Weight::new(raw.iter().map(|&(p, q)| Rational64::new(p, q)).collect());
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Weight>().unwrap(), w.clone());
        prop_assert_eq!(format!("({text})").parse::<Weight>().unwrap(), w);
    }

    #[test]
    fn job_specs_round_trip(
        c in 0..CASES.len(),
        level in 0u32..40,
        rep in proptest::option::of(proptest::collection::vec(0i64..5, 8)),
        boundary in proptest::option::of(proptest::collection::vec((0i64..9, 1i64..4), 8)),
        json in any::<bool>(),
    ) {
        let (alg, aut) = &cases()[c];
        let mut text = format!("algebra={} automorphism={} level={level}", alg.name(), aut.kind());
        if let Some(r) = &rep {
            text.push_str(&format!(" rep={}", truncate(r, alg.rank())));
        }
        if let Some(b) = &boundary {
            let w = Weight::new(b[..alg.rank()].iter().map(|&(p, q)| Rational64::new(p, q)).collect());
            text.push_str(&format!(" boundary={w}"));
        }
        text.push_str(if json { " format=json" } else { " format=text" });
        let job: JobSpec = text.parse().unwrap();
        prop_assert_eq!(job.to_string(), text.clone());
        prop_assert_eq!(job.to_string().parse::<JobSpec>().unwrap(), job);
    }
}
