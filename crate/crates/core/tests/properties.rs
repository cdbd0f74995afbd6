use proptest::prelude::*;

use tribonacci::arith::{det_dense, rat, DenseMatrix, Rational};
use tribonacci::identities::{
    check_lemma_cameron, check_lemma_rel2step, check_theorem1, check_thm_bell_tribo, r_sequence,
    run_grid_with, sweep_cor_det_t2n1, sweep_theorem1, sweep_thm_det_t2n1, Execution, GridConfig,
    GridSpec, IdentityId, IndexRange, RSequenceState, Variant,
};
use tribonacci::sequences::make_tribonacci;
use tribonacci::series::{gf_odd, series_recip};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn nonzero_triple() -> impl Strategy<Value = (Rational, Rational, Rational)> {
    (small_rational(), small_rational(), small_rational())
        .prop_filter("not all zero", |(u, v, w)| !(u.is_zero() && v.is_zero() && w.is_zero()))
}

fn odd_terms(u: &Rational, v: &Rational, w: &Rational, hi: usize) -> Vec<Rational> {
    let mut t = make_tribonacci(u.clone(), v.clone(), w.clone(), rat(0), rat(1), rat(1))
        .unwrap()
        .handle();
    (0..=hi).map(|k| t.term(2 * k as i64 + 1).unwrap()).collect()
}

#[test]
fn theorem1_variants_coincide_at_classical_parameters() {
    let one = rat(1);
    for k in 0..=12usize {
        for n in (2 * k as i64)..=24 {
            let a = check_theorem1(&one, &one, &one, n, k, Variant::AsStated);
            let b = check_theorem1(&one, &one, &one, n, k, Variant::DerivationConsistent);
            assert!(a.is_verified() && b.is_verified(), "n={n} k={k}");
            assert_eq!((a.lhs, a.rhs), (b.lhs, b.rhs));
        }
    }
}

#[test]
fn r_sequence_is_reciprocal_of_odd_gf_on_grid() {
    for u in -2..=3 {
        for v in -2..=3 {
            for w in -2..=3 {
                let (u, v, w) = (rat(u), rat(v), rat(w));
                let inv = series_recip(&gf_odd(&u, &v, &w, 33)).unwrap();
                let mut st = RSequenceState::new(u.clone(), v.clone(), w.clone());
                for n in 1..=32 {
                    assert_eq!(inv.coeff(n).unwrap(), &st.r(n));
                }
            }
        }
    }
}

#[test]
fn degenerate_discriminant_line() {
    // u = 1 kills D2; v = 0 as well makes D1^2 + 4 D2 = 0.
    for (v, w) in [(0, 1), (0, -2), (1, 3), (-2, 2), (0, 0)] {
        let (u, v, w) = (rat(1), rat(v), rat(w));
        let st = RSequenceState::new(u.clone(), v.clone(), w.clone());
        assert!(st.d2().is_zero());
        for rep in sweep_thm_det_t2n1(&u, &v, &w, 1..=40) {
            assert!(rep.is_verified(), "{rep:?}");
        }
        for rep in sweep_cor_det_t2n1(&u, &v, &w, 1..=40) {
            assert!(rep.is_verified(), "{rep:?}");
        }
    }
    assert_eq!(r_sequence(&rat(1), &rat(0), &rat(1), 5).unwrap(), r_sequence(&rat(1), &rat(0), &rat(1), 4).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Builds each n x n matrix explicitly and takes a dense determinant,
    /// independent of the leading-minor sweep.
    #[test]
    fn det_t2n1_against_dense((u, v, w) in nonzero_triple(), n in 1usize..=10) {
        let mut st = RSequenceState::new(u.clone(), v.clone(), w.clone());
        let m = DenseMatrix::from_fn(n, n, |p, q| {
            if q == p + 1 {
                rat(1)
            } else if q <= p {
                let d = (p - q) as i64;
                Rational::sign_pow(d + 1) * st.r(p - q + 1)
            } else {
                rat(0)
            }
        });
        let odd = odd_terms(&u, &v, &w, n);
        prop_assert_eq!(det_dense(&m).unwrap(), odd[n].clone());
        let sweep = sweep_thm_det_t2n1(&u, &v, &w, n..=n);
        prop_assert!(sweep[0].is_verified());
    }

    #[test]
    fn theorem1_derivation_form_holds((u, v, w) in nonzero_triple(), k in 0usize..=5) {
        for rep in sweep_theorem1(&u, &v, &w, k, Variant::DerivationConsistent, 0..=(2 * k as i64 + 6)) {
            prop_assert!(!rep.is_counterexample(), "{:?}", rep);
        }
    }

    #[test]
    fn theorem1_printed_form_holds_at_u_one(v in small_rational(), w in small_rational(), k in 0usize..=5) {
        prop_assume!(!v.is_zero());
        for rep in sweep_theorem1(&rat(1), &v, &w, k, Variant::AsStated, 0..=(2 * k as i64 + 6)) {
            prop_assert!(!rep.is_counterexample(), "{:?}", rep);
        }
    }

    #[test]
    fn rel2step_holds((u, v, w) in nonzero_triple(), n in 6i64..=30) {
        prop_assert!(check_lemma_rel2step(&u, &v, &w, n).is_verified());
    }

    #[test]
    fn cameron_lemma_random(x in prop::collection::vec(-5i64..=5, 15), n in 1usize..=15) {
        let x: Vec<Rational> = x.into_iter().map(rat).collect();
        prop_assert!(check_lemma_cameron(&x, n).unwrap().is_verified());
    }

    #[test]
    fn bell_three_routes((u, v, w) in nonzero_triple(), n in 1usize..=12) {
        prop_assert!(check_thm_bell_tribo(&u, &v, &w, n).is_verified());
    }

    #[test]
    fn execution_mode_does_not_change_output(u in -2i64..=2, k in 0i64..=3, hi in 4i64..=12) {
        let cfg = GridConfig {
            grid: GridSpec {
                u: Some(vec![rat(u)]),
                v: Some(vec![rat(1), rat(-1)]),
                w: Some(vec![rat(2)]),
                n: Some(IndexRange::new(0, hi).unwrap()),
                k: Some(IndexRange::new(0, k).unwrap()),
                ..GridSpec::default()
            },
            ..GridConfig::suites(&[IdentityId::Theorem1, IdentityId::CorDetT2n1, IdentityId::QDet3x3])
        };
        let a = run_grid_with(&cfg, Execution::Sequential).unwrap();
        let b = run_grid_with(&cfg, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}
