//! Property tests: group axioms, canonical-form invariance, action laws,
//! and serialization round-trips on randomized exact inputs.

use proptest::prelude::*;

use higgs_moduli::actions::{canonical_form, stabilizer_order_formula, ActionSpec};
use higgs_moduli::hitchin::hitchin_map;
use higgs_moduli::moduli::{det_tr, isomorphic, make_class, translate, GroupLabel, Level};
use higgs_moduli::rational::{ComplexRational, Rational};
use higgs_moduli::torus::{CotangentPoint, CurvePoint, TorusCoord};
use higgs_moduli::{descriptor, stabilizer_order};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn arb_coord() -> impl Strategy<Value = TorusCoord> {
    arb_rational().prop_map(TorusCoord::new)
}

fn arb_curve_point() -> impl Strategy<Value = CurvePoint> {
    (arb_coord(), arb_coord()).prop_map(|(a, b)| CurvePoint::new(a, b))
}

fn arb_t() -> impl Strategy<Value = ComplexRational> {
    (arb_rational(), arb_rational()).prop_map(|(re, im)| ComplexRational::new(re, im))
}

fn arb_cotangent() -> impl Strategy<Value = CotangentPoint> {
    (arb_curve_point(), arb_t()).prop_map(|(x, t)| CotangentPoint::new(x, t))
}

fn arb_tuple(m: usize) -> impl Strategy<Value = Vec<CotangentPoint>> {
    prop::collection::vec(arb_cotangent(), m)
}

fn arb_spec() -> impl Strategy<Value = ActionSpec> {
    (1usize..=3).prop_flat_map(|m| {
        prop_oneof![
            Just(ActionSpec::Sym { m }),
            Just(ActionSpec::Hyperoct { m }),
            Just(ActionSpec::EvenSign { m }),
            (1u32..=3).prop_map(move |h| ActionSpec::SymTranslate { h, m }),
        ]
    })
}

proptest! {
    #[test]
    fn cotangent_points_form_an_abelian_group(
        p in arb_cotangent(),
        q in arb_cotangent(),
        r in arb_cotangent(),
    ) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p + &CotangentPoint::origin(), p.clone());
        prop_assert!((&p + &-&p).is_origin());
        prop_assert_eq!(-&-&p, p);
    }

    #[test]
    fn ordering_is_total_and_consistent(
        p in arb_cotangent(),
        q in arb_cotangent(),
        r in arb_cotangent(),
    ) {
        use std::cmp::Ordering;
        prop_assert_eq!(p.cmp(&q), q.cmp(&p).reverse());
        prop_assert_eq!(p.cmp(&q) == Ordering::Equal, p == q);
        if p <= q && q <= r {
            prop_assert!(p <= r);
        }
    }

    #[test]
    fn scalar_mul_is_iterated_addition(p in arb_cotangent(), k in -6i64..=6) {
        let mut expected = CotangentPoint::origin();
        let step = if k < 0 { -&p } else { p.clone() };
        for _ in 0..k.unsigned_abs() {
            expected = &expected + &step;
        }
        prop_assert_eq!(p.scalar_mul(k), expected);
    }

    #[test]
    fn canonical_forms_are_idempotent_and_orbit_invariant(
        (spec, z, pick) in arb_spec().prop_flat_map(|spec| {
            let m = spec.arity();
            (Just(spec), arb_tuple(m), any::<prop::sample::Index>())
        })
    ) {
        let canon = canonical_form(&spec, &z).unwrap();
        prop_assert_eq!(canonical_form(&spec, &canon).unwrap(), canon.clone());
        let elements = spec.elements().unwrap();
        let g = &elements[pick.index(elements.len())];
        prop_assert_eq!(canonical_form(&spec, &g.apply(&z).unwrap()).unwrap(), canon);
    }

    #[test]
    fn stabilizer_formula_agrees_with_enumeration(
        (spec, z) in arb_spec().prop_flat_map(|spec| {
            let m = spec.arity();
            (Just(spec), arb_tuple(m))
        })
    ) {
        prop_assert_eq!(
            stabilizer_order(&spec, &z).unwrap(),
            stabilizer_order_formula(&spec, &z).unwrap()
        );
    }

    #[test]
    fn translation_acts_on_gl_classes(
        raw in arb_tuple(2),
        v in arb_cotangent(),
        w in arb_cotangent(),
    ) {
        let label = GroupLabel::Gl { n: 4, d: 2 };
        let class = make_class(&label, &raw).unwrap();
        let one = translate(&translate(&class, &v).unwrap(), &w).unwrap();
        let both = translate(&class, &(&v + &w)).unwrap();
        prop_assert!(isomorphic(&one, &both).unwrap());
        prop_assert!(isomorphic(&translate(&class, &CotangentPoint::origin()).unwrap(), &class).unwrap());
        // det_tr moves by (n x, n s).
        let moved = det_tr(&translate(&class, &w).unwrap()).unwrap();
        prop_assert_eq!(moved, &det_tr(&class).unwrap() + &w.scalar_mul(4));
    }

    #[test]
    fn hitchin_map_ignores_x_translation(raw in arb_tuple(3), x in arb_curve_point()) {
        let label = GroupLabel::Gl { n: 3, d: 0 };
        let class = make_class(&label, &raw).unwrap();
        let shift = CotangentPoint::from_curve(x);
        prop_assert_eq!(
            hitchin_map(&translate(&class, &shift).unwrap()),
            hitchin_map(&class)
        );
    }

    #[test]
    fn class_json_round_trips(raw in arb_tuple(2)) {
        for label in [
            GroupLabel::Gl { n: 2, d: 0 },
            GroupLabel::Sp { m: 2 },
            GroupLabel::So { n: 8, w2: 1 },
            GroupLabel::So { n: 4, w2: 0 },
        ] {
            let class = make_class(&label, &raw).unwrap();
            let json = serde_json::to_string(&class).unwrap();
            let back: higgs_moduli::HiggsClass = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, class);
        }
    }

    #[test]
    fn bundle_projection_commutes_with_isomorphism(
        (raw, pick) in (arb_tuple(2), any::<prop::sample::Index>())
    ) {
        use higgs_moduli::moduli::underlying_bundle;
        let label = GroupLabel::Sp { m: 2 };
        let class = make_class(&label, &raw).unwrap();
        let elements = descriptor(&label, Level::Higgs)
            .unwrap()
            .action
            .elements()
            .unwrap();
        let g = &elements[pick.index(elements.len())];
        let moved = make_class(&label, &g.apply(&raw).unwrap()).unwrap();
        prop_assert_eq!(underlying_bundle(&moved), underlying_bundle(&class));
    }

    #[test]
    fn bundle_projection_commutes_with_x_translation(
        raw in arb_tuple(2),
        x in arb_curve_point(),
    ) {
        use higgs_moduli::moduli::underlying_bundle;
        let label = GroupLabel::Gl { n: 4, d: 2 };
        let class = make_class(&label, &raw).unwrap();
        let shift = CotangentPoint::from_curve(x.clone());
        let translated_then_projected = underlying_bundle(&translate(&class, &shift).unwrap());
        let projected_then_translated = underlying_bundle(&class).translate(&x).unwrap();
        prop_assert_eq!(translated_then_projected, projected_then_translated);
    }
}
