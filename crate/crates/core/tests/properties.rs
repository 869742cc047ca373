mod common;

use std::cmp::Ordering;

use common::*;
use exponent_bootstrap::bootstrap::DiscriminantSign;
use exponent_bootstrap::rules::{map_gain, quarter_branch_threshold, sigma, sigma_branch, spinor_gain, SigmaBranch};
use exponent_bootstrap::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn positive() -> impl Strategy<Value = BigRational> {
    (1i64..5000, 1i64..500).prop_map(|(n, d)| rat(n, d))
}

fn surd_value() -> impl Strategy<Value = Exponent> {
    // a + b√r with a few small radicands, kept positive
    (1i64..400, 1i64..50, -60i64..60, 1i64..50, prop::sample::select(vec![2i64, 3, 6, 7]))
        .prop_filter_map("positive surd", |(an, ad, bn, bd, r)| {
            let s = QuadraticSurd::new(rat(an, ad), rat(bn, bd), rat(r, 1)).ok()?;
            Exponent::from_surd(s).ok()
        })
}

fn mixed_value() -> impl Strategy<Value = Exponent> {
    prop_oneof![positive().prop_map(|r| ex(&r)), surd_value(), Just(Exponent::infinity())]
}

/// Exact value scaled by 10^50 and floored, as an independent ordering key.
fn key(e: &Exponent) -> Option<BigInt> {
    let s = e.finite()?;
    let scale = BigRational::from_integer(BigInt::from(10).pow(50));
    Some(s.scale(&scale).floor())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn holder_commutes_and_absorbs_infinity(a in positive(), b in positive()) {
        let (x, y) = (ex(&a), ex(&b));
        prop_assert_eq!(exp_holder(&x, &y).unwrap(), exp_holder(&y, &x).unwrap());
        prop_assert_eq!(exp_holder(&x, &Exponent::infinity()).unwrap(), x.clone());
        let r = exp_holder(&x, &y).unwrap();
        let expect = &a * &b / (&a + &b);
        prop_assert_eq!(r.as_rational(), Some(&expect));
    }

    #[test]
    fn holder_strictly_increasing(a in positive(), b in positive(), c in positive()) {
        let (x, y, z) = (ex(&a), ex(&b), ex(&(&a + &c)));
        prop_assert!(exp_holder(&x, &y).unwrap().lt(&exp_holder(&z, &y).unwrap()));
        prop_assert!(exp_holder(&y, &x).unwrap().lt(&exp_holder(&y, &z).unwrap()));
    }

    #[test]
    fn sobolev_conjugate_increasing_and_inverted(n in 1i64..999, m in 1i64..999) {
        let (lo, hi) = (n.min(m), n.max(m));
        prop_assume!(lo < hi);
        // s = 1 + k/1000 in [1, 2)
        let s1 = rat(1000 + lo, 1000);
        let s2 = rat(1000 + hi, 1000);
        let c1 = exp_sobolev_conj_2d(&ex(&s1)).unwrap();
        let c2 = exp_sobolev_conj_2d(&ex(&s2)).unwrap();
        prop_assert!(c1.lt(&c2));
        let t = c1.as_rational().unwrap().clone();
        prop_assert_eq!(rat(2, 1) * &t / (rat(2, 1) + &t), s1);
    }

    #[test]
    fn compare_is_a_total_order(a in mixed_value(), b in mixed_value(), c in mixed_value()) {
        prop_assert_eq!(exp_compare(&a, &b), exp_compare(&b, &a).reverse());
        if exp_compare(&a, &b) != Ordering::Greater && exp_compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(exp_compare(&a, &c), Ordering::Greater);
        }
        if let (Some(ka), Some(kb)) = (key(&a), key(&b)) {
            if ka != kb {
                prop_assert_eq!(exp_compare(&a, &b), ka.cmp(&kb));
            }
        }
    }

    #[test]
    fn zero_coefficient_surds_are_rational(a in positive(), r in 2i64..1000) {
        let s = QuadraticSurd::new(a.clone(), rat(0, 1), rat(r, 1)).unwrap();
        let e1 = Exponent::from_surd(s).unwrap();
        prop_assert_eq!(exp_compare(&e1, &ex(&a)), Ordering::Equal);
        prop_assert_eq!(e1, ex(&a));
    }

    #[test]
    fn serialization_round_trips(v in mixed_value(), almost in any::<bool>()) {
        let v = v.with_almost(almost);
        let text = v.to_string();
        prop_assert_eq!(text.parse::<Exponent>().unwrap(), v);
    }

    #[test]
    fn surd_field_identities(x in surd_value(), y in surd_value()) {
        let (a, b) = (x.finite().unwrap(), y.finite().unwrap());
        if let Ok(sum) = a.try_add(&b) {
            prop_assert_eq!(sum.try_sub(&b).unwrap(), a.clone());
            let prod = a.try_mul(&b).unwrap();
            prop_assert_eq!(prod.try_div(&b).unwrap(), a.clone());
        }
        let d = a.to_f64();
        prop_assert!((a.to_decimal(12).parse::<f64>().unwrap() - d).abs() < 1e-9 * d.abs().max(1.0));
    }

    #[test]
    fn spinor_and_map_gains_increase(n1 in 1i64..10_000, n2 in 1i64..10_000, p in positive(), t1 in positive(), t2 in positive()) {
        // s in (4/3, 2)
        let (lo, hi) = (n1.min(n2), n1.max(n2));
        prop_assume!(lo < hi);
        let s = |k: i64| ex(&(rat(4, 3) + rat(2, 3) * rat(k, 10_000)));
        prop_assert!(spinor_gain(&s(lo)).unwrap().lt(&spinor_gain(&s(hi)).unwrap()));
        let p = ex(&(rat(4, 1) + p));
        let (a, b) = (ex(&(rat(4, 1) + t1.clone())), ex(&(rat(4, 1) + t1 + t2)));
        let (ga, gb) = (map_gain(&p, &a).unwrap(), map_gain(&p, &b).unwrap());
        prop_assert!(ga.lt(&gb));
        prop_assert!(e("2").lt(&ga) && ga.lt(&p));
    }

    #[test]
    fn branch_matches_direct_minimum(p in positive(), t in positive()) {
        let p = ex(&(rat(4, 1) + p));
        let t = ex(&(rat(4, 1) + t));
        let (pr, tr) = (p.as_rational().unwrap(), t.as_rational().unwrap());
        let holder = rat(2, 1) * pr * tr / (rat(2, 1) * (pr + tr) + pr * tr);
        let quarter = tr / rat(4, 1);
        let branch = sigma_branch(&p, &t).unwrap();
        let sig = sigma(&p, &t).unwrap();
        if holder <= quarter {
            prop_assert_eq!(branch, SigmaBranch::Holder);
            prop_assert_eq!(sig.as_rational(), Some(&holder));
        } else {
            prop_assert_eq!(branch, SigmaBranch::Quarter);
            prop_assert_eq!(sig.as_rational(), Some(&quarter));
        }
    }

    #[test]
    fn map_update_monotone_with_range(p in positive(), a in 1i64..1000, b in 1i64..1000) {
        let p = rat(4, 1) + p;
        let pe = ex(&p);
        let barrier = q_barrier(&pe).unwrap().as_rational().unwrap().clone();
        let at = |k: i64| rat(2, 1) + (&barrier - rat(2, 1)) * rat(k, 1000);
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assume!(lo < hi);
        let (q1, q2) = (ex(&at(lo)), ex(&at(hi)));
        let (m1, m2) = (map_update(&pe, &q1).unwrap(), map_update(&pe, &q2).unwrap());
        prop_assert!(m1.lt(&m2));
        prop_assert!(spinor_update(&pe, &q1).unwrap().lt(&spinor_update(&pe, &q2).unwrap()));
        prop_assert!(e("2").lt(&m1) && m1.lt(&pe));
        prop_assert!(m1.same_value(&ex(&oracle_map(&p, &at(lo)))));
    }

    #[test]
    fn quarter_threshold_below_two(p in positive()) {
        let p = rat(4, 1) + p;
        prop_assert!(quarter_branch_threshold(&p) < rat(2, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stall_roots_inside_the_barrier(p in rational_in(rat(4, 1), p0_below())) {
        let pe = ex(&p);
        let fp = fixed_points(&pe).unwrap();
        prop_assert_eq!(fp.discriminant_sign, DiscriminantSign::Positive);
        let (qm, qp) = (fp.q_minus.unwrap(), fp.q_plus.unwrap());
        prop_assert!(e("2").lt(&qm));
        prop_assert!(qm.lt(&qp) && qp.lt(&fp.barrier));
        let q1 = ex(&(rat(2, 1) * &p * (&p + rat(2, 1)) / (rat(5, 1) * &p + rat(4, 1))));
        prop_assert!(q1.lt(&qm));
        prop_assert!((qm.to_f64() - q_minus_f64(f64_of(&p))).abs() < 1e-9);
    }

    #[test]
    fn discriminant_negative_above_threshold(p in rational_in(p0_above(), rat(40, 1))) {
        let fp = fixed_points(&ex(&p)).unwrap();
        prop_assert_eq!(fp.discriminant_sign, DiscriminantSign::Negative);
        prop_assert!(!fp.has_roots());
    }

    #[test]
    fn el_run_matches_closed_form(p in rational_in(rat(401, 100), p0_below())) {
        let pe = ex(&p);
        let run = el_run(&pe).unwrap();
        prop_assert_eq!(BigInt::from(run.k_star), el_steps_needed(&pe).unwrap());
        let d = rat(1, 2) - rat(2, 1) / &p;
        let d = QuadraticSurd::from_rational(d);
        let q0 = run.trace.initial.get("q").unwrap().reciprocal();
        let t0 = run.trace.initial.get("t").unwrap().reciprocal();
        let mut prev = run.trace.initial.clone();
        for step in &run.trace.steps {
            let drop = d.scale(&rat(step.k as i64, 1));
            let (q, t) = (step.outgoing.get("q").unwrap(), step.outgoing.get("t").unwrap());
            prop_assert_eq!(q.reciprocal(), q0.try_sub(&drop).unwrap());
            prop_assert_eq!(t.reciprocal(), t0.try_sub(&drop).unwrap());
            prop_assert!(prev.get("q").unwrap().lt(q) && prev.get("t").unwrap().lt(t));
            prev = step.outgoing.clone();
        }
        prop_assert!(prev.get("q").unwrap().ge(&q_barrier(&pe).unwrap()));
        prop_assert_eq!(run.classification.map_space, pe.clone());
    }
}

#[test]
fn decimal_rendering_matches_reference() {
    // 30 digits (trailing zero trimmed) of sqrt(2), and of q_- at p = 83/20
    let root2 = QuadraticSurd::sqrt(&rat(2, 1)).unwrap();
    assert_eq!(root2.to_decimal(30), "1.41421356237309504880168872421");
    let qm = fixed_points(&e("4.15")).unwrap().q_minus.unwrap();
    assert_eq!(qm.to_decimal(30), "2.265421767174744760911317969915");
    assert_eq!(qm.to_f64().to_u64(), Some(2));
}
