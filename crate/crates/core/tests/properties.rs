use proptest::prelude::*;

use projbill::curves::right_spherical;
use projbill::dynamics::iterate;
use projbill::projective::{
    cross_ratio_lines, cross_ratio_points, det, reflect_azimuth, reflect_line, P1Value, PLine, Point2,
};
use projbill::{Rational, Scalar};

fn p1_gap(a: &P1Value<f64>, b: &P1Value<f64>) -> f64 {
    det(a, b).abs() / (a.norm() * b.norm())
}

fn is_minus_one(x: &P1Value<f64>) -> bool {
    (x.u + x.v).abs() <= 1e-10 * x.norm()
}

fn real_p1() -> impl Strategy<Value = P1Value<f64>> {
    (-1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("nonzero", |(u, v)| u.hypot(*v) > 1e-3)
        .prop_map(|(u, v)| P1Value::new(u, v).unwrap())
}

fn rational_p1() -> impl Strategy<Value = P1Value<Rational>> {
    (-50i64..50, -50i64..50, 1i64..20)
        .prop_filter("nonzero", |(u, v, _)| *u != 0 || *v != 0)
        .prop_map(|(u, v, d)| P1Value::new(Rational::from_ratio(u, d), Rational::from_i64(v)).unwrap())
}

fn well_separated(a: &P1Value<f64>, b: &P1Value<f64>) -> bool {
    p1_gap(a, b) > 1e-2
}

/// The double reflection loses about `ε / sin²∠(l, t)`; frames closer than
/// this to the tangent are covered by the scaled bound below.
const FRAME_SEPARATION: f64 = 0.05;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn reflection_is_an_involution(z in real_p1(), l in real_p1(), t in real_p1()) {
        let sep = p1_gap(&l, &t);
        prop_assume!(sep > 0.0);
        let z1 = reflect_azimuth(&z, &l, &t).unwrap();
        let z2 = reflect_azimuth(&z1, &l, &t).unwrap();
        let err = p1_gap(&z, &z2);
        prop_assert!(err * sep * sep <= 1e-14, "{z} -> {z1} -> {z2}");
        if sep >= FRAME_SEPARATION {
            prop_assert!(err <= 1e-12, "{z} -> {z1} -> {z2}");
        }
    }

    #[test]
    fn exact_reflection_is_an_involution(z in rational_p1(), l in rational_p1(), t in rational_p1()) {
        prop_assume!(!l.same_as(&t));
        let z1 = reflect_azimuth(&z, &l, &t).unwrap();
        let z2 = reflect_azimuth(&z1, &l, &t).unwrap();
        prop_assert!(z.same_as(&z2));
    }

    #[test]
    fn frame_and_tangent_are_fixed(l in rational_p1(), t in rational_p1()) {
        prop_assume!(!l.same_as(&t));
        prop_assert!(reflect_azimuth(&l, &l, &t).unwrap().same_as(&l));
        prop_assert!(reflect_azimuth(&t, &l, &t).unwrap().same_as(&t));
    }

    #[test]
    fn image_is_harmonic(z in real_p1(), l in real_p1(), t in real_p1()) {
        let zs = reflect_azimuth(&z, &l, &t).unwrap();
        let pts = [&z, &l, &t, &zs];
        for i in 0..4 {
            for j in (i + 1)..4 {
                prop_assume!(well_separated(pts[i], pts[j]));
            }
        }
        prop_assert!(is_minus_one(&cross_ratio_points(&l, &t, &z, &zs).unwrap()));
    }

    #[test]
    fn exact_image_is_harmonic(z in rational_p1(), l in rational_p1(), t in rational_p1()) {
        let zs = reflect_azimuth(&z, &l, &t).unwrap();
        let pts = [&z, &l, &t, &zs];
        for i in 0..4 {
            for j in (i + 1)..4 {
                prop_assume!(!pts[i].same_as(pts[j]));
            }
        }
        let cr = cross_ratio_points(&l, &t, &z, &zs).unwrap();
        prop_assert_eq!(cr.u + cr.v, Rational::from_i64(0));
    }

    #[test]
    fn harmonic_quadruples_survive_pair_swaps(z in real_p1(), l in real_p1(), t in real_p1()) {
        let zs = reflect_azimuth(&z, &l, &t).unwrap();
        let pts = [&z, &l, &t, &zs];
        for i in 0..4 {
            for j in (i + 1)..4 {
                prop_assume!(well_separated(pts[i], pts[j]));
            }
        }
        for (a, b, c, d) in [(&t, &l, &z, &zs), (&l, &t, &zs, &z), (&z, &zs, &l, &t)] {
            prop_assert!(is_minus_one(&cross_ratio_points(a, b, c, d).unwrap()));
        }
    }

    #[test]
    fn cross_ratio_is_mobius_invariant(
        x in proptest::array::uniform4(real_p1()),
        m in proptest::array::uniform4(-2.0f64..2.0),
    ) {
        let mat = [[m[0], m[1]], [m[2], m[3]]];
        prop_assume!((m[0] * m[3] - m[1] * m[2]).abs() > 0.1);
        prop_assume!(well_separated(&x[1], &x[2]) && well_separated(&x[1], &x[3]) && well_separated(&x[2], &x[3]));
        let y: Vec<_> = x.iter().map(|p| p.mobius(&mat)).collect();
        let a = cross_ratio_points(&x[0], &x[1], &x[2], &x[3]).unwrap();
        let b = cross_ratio_points(&y[0], &y[1], &y[2], &y[3]).unwrap();
        prop_assert!(p1_gap(&a, &b) <= 1e-10, "{a} vs {b}");
    }

    #[test]
    fn line_cross_ratio_ignores_the_auxiliary_line(
        c in (-5i64..5, -5i64..5),
        dirs in proptest::array::uniform4((-9i64..9, -9i64..9)),
        aux in proptest::array::uniform2(proptest::array::uniform3(-7i64..7)),
    ) {
        let r = |n: i64| Rational::from_i64(n);
        let center = Point2::affine(r(c.0), r(c.1));
        let mut lines = Vec::new();
        for (dx, dy) in dirs {
            prop_assume!(dx != 0 || dy != 0);
            let far = Point2::affine(r(c.0 + dx), r(c.1 + dy));
            lines.push(center.join(&far).unwrap());
        }
        for i in 1..4 {
            for j in (i + 1)..4 {
                prop_assume!(!lines[i].same_as(&lines[j]));
            }
        }
        let auxes: Vec<_> = aux
            .iter()
            .map(|k| PLine::new([r(k[0]), r(k[1]), r(k[2])]))
            .collect::<Result<_, _>>()
            .map_err(|_| TestCaseError::reject("zero aux"))?;
        let mut values = Vec::new();
        for a in &auxes {
            match cross_ratio_lines([&lines[0], &lines[1], &lines[2], &lines[3]], a) {
                Ok(v) => values.push(v),
                Err(_) => return Err(TestCaseError::reject("aux through center")),
            }
        }
        prop_assert!(values[0].same_as(&values[1]));
    }

    #[test]
    fn line_reflection_is_an_involution(
        at in proptest::array::uniform2(-3i64..3),
        d in proptest::array::uniform3((-6i64..6, -6i64..6)),
    ) {
        let r = |n: i64| Rational::from_i64(n);
        let p = Point2::affine(r(at[0]), r(at[1]));
        let mut ls = Vec::new();
        for (dx, dy) in d {
            prop_assume!(dx != 0 || dy != 0);
            ls.push(p.join(&Point2::affine(r(at[0] + dx), r(at[1] + dy))).unwrap());
        }
        prop_assume!(!ls[1].same_as(&ls[2]));
        let once = reflect_line(&p, &ls[0], &ls[1], &ls[2]).unwrap();
        let twice = reflect_line(&p, &once, &ls[1], &ls[2]).unwrap();
        prop_assert!(twice.same_as(&ls[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reversed_orbits_obey_the_reflection_law(sn in 1i64..19, tn in 1i64..19) {
        let r = |n: i64, d: i64| Rational::from_ratio(n, d);
        let bil = right_spherical(
            &Point2::affine(r(0, 1), r(0, 1)),
            &Point2::affine(r(0, 1), r(1, 1)),
            &Point2::affine(r(1, 1), r(0, 1)),
        )
        .unwrap();
        let orbit = iterate(&bil, &r(sn, 20), &r(tn, 20), 4)
            .map_err(|_| TestCaseError::reject("degenerate start"))?;
        for d in orbit.reversed().defects(&bil) {
            prop_assert_eq!(d.reflection, 0.0);
            prop_assert_eq!(d.on_curve, 0.0);
            prop_assert_eq!(d.chain, 0.0);
        }
    }
}
