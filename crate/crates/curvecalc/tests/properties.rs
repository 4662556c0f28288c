//! Invariants as property tests.

mod common;

use curvecalc::curve::{
    adjunction_defect, check_embedded_projection, check_gin_zero, check_no_isect, check_sgin_zero, concat_gin,
    gin_cylindrical, gin_from_rin, gin_from_witness, self_asymptotic_index_total, Component,
};
use curvecalc::generate::Generator;
use curvecalc::oracle::{self, LoopOperator, Tolerances};
use curvecalc::orbit::{alpha_iter, concat_defect, cz_index, parity_iter, shift_alpha, spectral_covering};
use curvecalc::{CurveClass, CurveData, EndData, Error, PairForm, PairProfile, SimpleOrbit, Q};
use proptest::prelude::*;
use rand::SeedableRng;

fn orbit() -> impl Strategy<Value = SimpleOrbit> {
    prop_oneof![
        (-60i64..60, 2i64..60)
            .prop_filter("non-integer theta", |(p, q)| p % q != 0)
            .prop_map(|(p, q)| SimpleOrbit::elliptic("g", Q::new(p, q)).unwrap()),
        (-5i64..=5).prop_map(|a| SimpleOrbit::even("g", a)),
        (-5i64..=5).prop_map(|a| SimpleOrbit::odd("g", a)),
    ]
}

fn cover() -> impl Strategy<Value = i64> {
    (-50i64..=50).prop_filter("nonzero", |k| *k != 0)
}

fn unguarded(o: &SimpleOrbit, k: i64) -> bool {
    !common::guarded(common::kind(o), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn index_is_twice_alpha_plus_parity(o in orbit(), k in cover()) {
        prop_assume!(unguarded(&o, k));
        let (a, p) = (alpha_iter(&o, k).unwrap(), parity_iter(&o, k).unwrap());
        prop_assert_eq!(cz_index(&o, k).unwrap(), 2 * a + p);
        prop_assert_eq!(a, common::alpha(common::kind(&o), k));
    }

    #[test]
    fn opposite_covers_sum_to_minus_parity(o in orbit(), k in cover()) {
        prop_assume!(unguarded(&o, k));
        let sum = alpha_iter(&o, k).unwrap() + alpha_iter(&o, -k).unwrap();
        let expected = match common::kind(&o) {
            common::Kind::Elliptic(..) => -1,
            common::Kind::Even(_) => 0,
            common::Kind::Odd(_) => -k.rem_euclid(2),
        };
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn odd_alpha_has_both_forms(a0 in -5i64..=5, k in cover()) {
        let o = SimpleOrbit::odd("o", a0);
        let p = k.rem_euclid(2);
        let half = Q::new(2 * a0 + 1, 2) * Q::from_integer(k);
        prop_assert_eq!(alpha_iter(&o, k).unwrap(), half.floor().to_integer());
        prop_assert_eq!(alpha_iter(&o, k).unwrap(), k * a0 + (k - p) / 2);
    }

    #[test]
    fn sigma_bar_ignores_trivialization(o in orbit(), k in cover(), deg in -5i64..=5) {
        prop_assume!(unguarded(&o, k));
        let a = alpha_iter(&o, k).unwrap();
        prop_assert_eq!(common::gcd(k, shift_alpha(a, k, deg)), spectral_covering(&o, k).unwrap());
    }

    #[test]
    fn concat_defect_follows_kind(o in orbit(), m in 1i64..=30, n in 1i64..=30) {
        prop_assume!(unguarded(&o, m * n));
        let d = concat_defect(&o, m, n).unwrap();
        prop_assert!(d >= 0);
        match common::concat_closed(common::kind(&o), m, n) {
            common::Expected::Exactly(v) => prop_assert_eq!(d, v),
            common::Expected::AtLeastOne => prop_assert!(d >= 1),
        }
    }

    #[test]
    fn end_defects_are_even_and_split_the_self_index(seed in any::<u64>(), m in -12i64..=12, d0 in 0i64..=3) {
        prop_assume!(m != 0);
        let mut g = Generator::new(seed);
        let o = g.pool()[seed as usize % g.pool().len()].clone();
        prop_assume!(unguarded(&o, m));
        let alpha = alpha_iter(&o, m).unwrap();
        let w = curvecalc::generate::embedded_windings(g.rng(), m, alpha, d0);
        let e = EndData::hol(&o, m, &w).unwrap();
        let (d1, d2) = (e.delta1().unwrap(), e.delta2().unwrap());
        prop_assert!(d1 >= 0 && d1 % 2 == 0 && d2 >= 0 && d2 % 2 == 0);
        prop_assert_eq!(d1 == 0, common::delta1_vanishes(&e));
        prop_assert_eq!(d2 == 0, common::delta2_vanishes(&e));
        prop_assert_eq!(2 * e.self_asymptotic_index().unwrap(), d1 + d2);
        for deg in [-5, -1, 2, 5] {
            let moved = e.retrivialize(deg);
            prop_assert_eq!(moved.delta1().unwrap(), d1);
            prop_assert_eq!(moved.delta2().unwrap(), d2);
            prop_assert_eq!(moved.alpha().unwrap(), shift_alpha(alpha, m, deg));
        }
    }

    #[test]
    fn covers_scale_windings(seed in any::<u64>(), c in 1i64..=4) {
        let mut g = Generator::new(seed);
        let h = SimpleOrbit::even("h", (seed % 5) as i64 - 2);
        let (a, b) = (g.end(&h, 2, false).unwrap(), g.end(&h, 2, false).unwrap());
        let ca = a.cover(c).unwrap();
        prop_assert_eq!(ca.wind_infty().unwrap(), c * a.wind_infty().unwrap());
        for form in [PairForm::Direct, PairForm::CommonCover] {
            let p = PairProfile::generic(a.clone(), b.clone(), form).unwrap();
            let q = p.cover(c).unwrap();
            let scale = if form == PairForm::Direct { c * c } else { c * c * c * c };
            prop_assert_eq!(q.wind_rel().unwrap(), scale * p.wind_rel().unwrap());
            prop_assert_eq!(q.asymptotic_index().unwrap(), c * c * p.asymptotic_index().unwrap());
        }
    }

    #[test]
    fn pair_indices_ignore_trivialization(seed in any::<u64>(), deg in -5i64..=5) {
        let mut g = Generator::new(seed);
        let o = g.pool()[seed as usize % g.pool().len()].clone();
        let (ma, mb) = (1 + (seed % 3) as i64, 1 + (seed / 3 % 3) as i64);
        let (a, b) = (g.end(&o, ma, false).unwrap(), g.end(&o, mb, false).unwrap());
        let p = g.pair_profile(&a, &b, false).unwrap();
        let moved = p.retrivialize(deg).unwrap();
        prop_assert_eq!(moved.asymptotic_index().unwrap(), p.asymptotic_index().unwrap());
    }

    #[test]
    fn unsaturated_simple_even_pairs_have_positive_index(a0 in -3i64..=3, d in 0i64..=2, e in 0i64..=2, drop in 1i64..=3) {
        let h = SimpleOrbit::even("h", a0);
        let (x, y) = (EndData::hol(&h, 1, &[a0 - d]).unwrap(), EndData::hol(&h, 1, &[a0 - e]).unwrap());
        let bound = PairProfile::generic(x.clone(), y.clone(), PairForm::Direct).unwrap().entry_bound().unwrap();
        let p = PairProfile::new(x, y, vec![bound - drop]).unwrap();
        prop_assert!(p.asymptotic_index().unwrap() >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gin_is_symmetric_and_routes_agree(seed in any::<u64>(), tight in any::<bool>()) {
        let mut g = Generator::new(seed);
        let (u, v) = g.curve_pair(tight).unwrap();
        let forward = gin_cylindrical(&u, &v).unwrap().total;
        prop_assert_eq!(forward, gin_cylindrical(&v, &u).unwrap().total);
        prop_assert_eq!(forward, gin_from_witness(&u, &v).unwrap());
        prop_assert_eq!(forward, gin_from_rin(&u, &v).unwrap());
        prop_assert_eq!(forward, common::gin(&u, &v));
    }

    #[test]
    fn gin_is_additive_over_disjoint_unions(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let (u, w) = g.curve_pair(false).unwrap();
        let (v, _) = g.curve_pair(false).unwrap();
        let mut union = CurveData::new(
            "uv",
            u.components.iter().chain(&v.components).cloned().collect::<Vec<Component>>(),
            u.c1_rel + v.c1_rel,
            CurveClass::Holomorphic,
        );
        let mut witness = curvecalc::Witness::default();
        for c in [&u, &v] {
            for (k, n) in &c.witness.as_ref().unwrap().orbit_intersections {
                *witness.orbit_intersections.entry(k.clone()).or_insert(0) += n;
            }
        }
        for o in g.pool() {
            witness.orbit_intersections.entry(o.name.clone()).or_insert(0);
        }
        union.witness = Some(witness);
        let mut w = w;
        let ww = w.witness.as_mut().unwrap();
        for o in g.pool() {
            ww.orbit_intersections.entry(o.name.clone()).or_insert(0);
        }
        let fill = |c: &CurveData| {
            let mut c = c.clone();
            let cw = c.witness.as_mut().unwrap();
            for o in g.pool() {
                cw.orbit_intersections.entry(o.name.clone()).or_insert(0);
            }
            c
        };
        let (u, v) = (fill(&u), fill(&v));
        let total = gin_cylindrical(&union, &w).unwrap().total;
        prop_assert_eq!(total, gin_cylindrical(&u, &w).unwrap().total + gin_cylindrical(&v, &w).unwrap().total);
    }

    #[test]
    fn adjunction_defect_counts_singularities(seed in any::<u64>(), tight in any::<bool>()) {
        let mut g = Generator::new(seed);
        let u = g.simple_curve(tight).unwrap();
        let d = adjunction_defect(&u).unwrap();
        prop_assert!(d >= 0 && d % 2 == 0);
        prop_assert_eq!(d, 2 * (u.double_points().unwrap() + self_asymptotic_index_total(&u).unwrap()));
    }

    #[test]
    fn condition_sets_agree(seed in any::<u64>(), tight in any::<bool>()) {
        let mut g = Generator::new(seed);
        let (u, v) = g.curve_pair(tight).unwrap();
        let s = g.simple_curve(tight).unwrap();
        for verdict in [
            check_gin_zero(&u, &v).unwrap(),
            check_no_isect(&u, &v).unwrap(),
            check_sgin_zero(&s).unwrap(),
            check_embedded_projection(&s).unwrap(),
        ] {
            prop_assert_eq!(verdict.holds, verdict.quantity == 0);
            prop_assert!(verdict.sets.iter().all(|set| set.holds == verdict.holds));
        }
    }

    #[test]
    fn verdicts_ignore_trivialization(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let (u, v) = g.curve_pair(seed % 2 == 0).unwrap();
        let s = g.simple_curve(seed % 2 == 0).unwrap();
        let pool = g.pool().to_vec();
        let shift = g.shift(&pool, 5);
        let (u2, v2, s2) = (
            u.retrivialize(&shift, &[&v]).unwrap(),
            v.retrivialize(&shift, &[&u]).unwrap(),
            s.retrivialize(&shift, &[]).unwrap(),
        );
        prop_assert_eq!(u2.total_cz().unwrap(), u.total_cz().unwrap());
        prop_assert_eq!(s2.fredholm_index().unwrap(), s.fredholm_index().unwrap());
        prop_assert_eq!(gin_cylindrical(&u2, &v2).unwrap().total, gin_cylindrical(&u, &v).unwrap().total);
        prop_assert_eq!(adjunction_defect(&s2).unwrap(), adjunction_defect(&s).unwrap());
        prop_assert_eq!(check_gin_zero(&u2, &v2).unwrap().holds, check_gin_zero(&u, &v).unwrap().holds);
        prop_assert_eq!(check_no_isect(&u2, &v2).unwrap().holds, check_no_isect(&u, &v).unwrap().holds);
        prop_assert_eq!(check_sgin_zero(&s2).unwrap().holds, check_sgin_zero(&s).unwrap().holds);
        prop_assert_eq!(
            check_embedded_projection(&s2).unwrap().holds,
            check_embedded_projection(&s).unwrap().holds
        );
    }

    #[test]
    fn concat_defect_is_positive_exactly_for_odd_pairs(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let ([u1, u2, v1, v2], mu, mv) = g.buildings().unwrap();
        let r = concat_gin(&u1, &u2, &v1, &v2, &mu, &mv).unwrap();
        prop_assert!(r.defect >= 0);
        prop_assert_eq!(r.defect > 0, r.strict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn discretization_is_symmetric_and_converged(seed in any::<u64>(), f in 1usize..=4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let op = LoopOperator::random(&mut rng, f, 1.0);
        let m = oracle::discretize(&op, 32).unwrap();
        prop_assert!((&m - m.transpose()).amax() <= 1e-12 * m.amax());
        let tol = Tolerances::default();
        let (coarse, fine) = match (oracle::eigenpairs(&op, 32, 40.0, &tol), oracle::eigenpairs(&op, 64, 40.0, &tol)) {
            (Ok(c), Ok(f)) => (c, f),
            (Err(Error::DegenerateOrbit(_)), _) | (_, Err(Error::DegenerateOrbit(_))) => return Ok(()),
            (Err(e), _) | (_, Err(e)) => panic!("{e}"),
        };
        prop_assert_eq!(coarse.len(), fine.len());
        for (a, b) in coarse.iter().zip(&fine) {
            prop_assert!((a.eigenvalue - b.eigenvalue).abs() < 1e-8);
        }
        let report = oracle::verify_spectrum_laws(&op, 64, 40.0, &tol).unwrap();
        prop_assert!(report.bins.values().all(|n| *n <= 2));
    }
}

#[test]
fn error_codes_are_distinct() {
    let samples = vec![
        Error::ZeroMultiplicity,
        Error::EllipticGuardViolated { orbit: "e".into(), k: 7, theta: "5/7".into() },
        Error::HorizonExceeded { orbit: "e".into(), k: 9, horizon: 8 },
        Error::NotElliptic("h".into()),
        Error::InvalidOrbit { orbit: "e".into(), reason: "r".into() },
        Error::EmptyProfile,
        Error::InvalidProfile("p".into()),
        Error::NonHolomorphicEnd,
        Error::NotEmbeddedEnd(2),
        Error::MismatchedOrbits("m".into()),
        Error::ProfileLength { got: 1, expected: "2".into() },
        Error::ProfileBound { value: 3, bound: 2 },
        Error::NonIntegralResult("1/2".into()),
        Error::NegativeIndex(-1),
        Error::MissingWitness("w".into()),
        Error::InconsistentWitness("w".into()),
        Error::NotSimple("u".into()),
        Error::NotConnected("u".into()),
        Error::WrongClass("u".into()),
        Error::OrbitNotEligible,
        Error::ProfileContradictsFlag,
        Error::InvalidOpenBook("b".into()),
        Error::InconsistentInput("i".into()),
        Error::MatchingInvalid("m".into()),
        Error::TruncationTooSmall { n: 1, f: 2 },
        Error::VectorTooSmall(0.0),
        Error::WindingAmbiguous(0.5),
        Error::DegenerateOrbit(0.0),
        Error::NonSymmetric,
        Error::LawViolation("l".into()),
        Error::Schema { pointer: "/".into(), message: "s".into() },
        Error::Reference { pointer: "/".into(), name: "n".into() },
        Error::Guard { pointer: "/".into(), message: "g".into() },
        Error::Io("io".into()),
    ];
    let codes: std::collections::BTreeSet<&str> = samples.iter().map(Error::code).collect();
    assert_eq!(codes.len(), samples.len());
}
