use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;

use wreathplane::bireg::{build_fixed_point, is_biregular, persistent_fibre, singular_set, FibreVerdict, FixedPointResult};
use wreathplane::projgeo::{
    chordal_distance, distance_to_line, line_point_incidence, span_line, ChordalContext, Distance, ProjLine, ProjMap,
    ProjPoint,
};
use wreathplane::random;
use wreathplane::resprod::Config;
use wreathplane::scalar::{compare_abs, padic_valuation, Embedding, Field, Literal, Place, Valuation, Valued};
use wreathplane::{Gf, QuadExt, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=40).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn quad(d: u64) -> impl Strategy<Value = QuadExt> {
    (rational(), rational()).prop_map(move |(a, b)| QuadExt::new(a, b, d).unwrap())
}

fn gf7() -> impl Strategy<Value = Gf<7>> {
    (0i64..7).prop_map(Gf::new)
}

fn field_axioms<F: Field>(a: F, b: F, c: F) -> Result<(), TestCaseError> {
    prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    prop_assert_eq!(a.clone() - a.clone(), F::zero());
    if let Some(inv) = a.recip() {
        prop_assert_eq!(a * inv, F::one());
    }
    Ok(())
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        field_axioms(a, b, c)?;
    }

    #[test]
    fn quadratic_field_axioms(a in quad(5), b in quad(5), c in quad(5)) {
        field_axioms(a, b, c)?;
    }

    #[test]
    fn prime_field_axioms(a in gf7(), b in gf7(), c in gf7()) {
        field_axioms(a, b, c)?;
    }

    #[test]
    fn literals_round_trip(a in quad(2), q in rational(), g in gf7()) {
        prop_assert_eq!(QuadExt::parse_literal(&a.to_literal()).unwrap(), a);
        prop_assert_eq!(Rational::parse_literal(&q.to_literal()).unwrap(), q);
        prop_assert_eq!(Gf::<7>::parse_literal(&g.to_literal()).unwrap(), g);
    }

    #[test]
    fn valuations_add_and_bound_sums(x in nonzero_rational(), y in nonzero_rational(), q in prop::sample::select(vec![2u64, 3, 5])) {
        let v = |r: &Rational| padic_valuation(r, q).unwrap().finite().unwrap();
        prop_assert_eq!(v(&(x.clone() * y.clone())), v(&x) + v(&y));
        let s = x.clone() + y.clone();
        if !s.is_zero() {
            prop_assert!(v(&s) >= v(&x).min(v(&y)));
        } else {
            prop_assert_eq!(padic_valuation(&s, q).unwrap(), Valuation::Infinite);
        }
    }

    #[test]
    fn abs_values_are_multiplicative(x in quad(3), y in quad(3), q in prop::sample::select(vec![2u64, 5])) {
        for place in [Place::REAL, Place::Real(Embedding::Minus)] {
            let lhs = (x.clone() * y.clone()).abs_value(&place).unwrap();
            let rhs = x.abs_value(&place).unwrap() * y.abs_value(&place).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        let (a, b) = (x.a().clone(), y.a().clone());
        let padic = Place::PAdic(q);
        let lhs = (a.clone() * b.clone()).abs_value(&padic).unwrap();
        prop_assert_eq!(lhs, a.abs_value(&padic).unwrap() * b.abs_value(&padic).unwrap());
    }

    #[test]
    fn ultrametric_inequality(x in rational(), y in rational(), q in prop::sample::select(vec![2u64, 3, 5])) {
        let place = Place::PAdic(q);
        let sum = (x.clone() + y.clone()).abs_value(&place).unwrap();
        let big = std::cmp::max(x.abs_value(&place).unwrap(), y.abs_value(&place).unwrap());
        prop_assert!(sum <= big);
    }

    #[test]
    fn compare_abs_agrees_with_abs_value(x in quad(2), y in quad(2)) {
        for place in [Place::REAL, Place::Real(Embedding::Minus)] {
            let direct = x.abs_value(&place).unwrap().cmp(&y.abs_value(&place).unwrap());
            prop_assert_eq!(compare_abs(&x, &y, &place).unwrap(), direct);
        }
        prop_assert_eq!(compare_abs(&x, &x, &Place::REAL).unwrap(), Ordering::Equal);
    }

    #[test]
    fn canonicalization_is_idempotent(v in prop::array::uniform3(rational()), s in nonzero_rational()) {
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let p = ProjPoint::new(v.clone()).unwrap();
        prop_assert_eq!(ProjPoint::new(p.coords().clone()).unwrap(), p.clone());
        let scaled = v.map(|x| x * s.clone());
        prop_assert_eq!(ProjPoint::new(scaled).unwrap(), p.clone());
        let first = p.coords().iter().find(|x| !x.is_zero()).unwrap();
        prop_assert!(first.is_one());
    }

    #[test]
    fn apply_is_an_action(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let m1: ProjMap<Rational> = random::map(&mut rng, 3);
        let m2: ProjMap<Rational> = random::map(&mut rng, 3);
        let x: ProjPoint<Rational> = random::point(&mut rng, 9);
        prop_assert_eq!(m1.compose(&m2).apply(&x), m1.apply(&m2.apply(&x)));
        prop_assert_eq!(ProjMap::identity().apply(&x), x.clone());
        prop_assert_eq!(m1.inverse().apply(&m1.apply(&x)), x);
    }

    #[test]
    fn chordal_metric_axioms(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x: ProjPoint<Rational> = random::point(&mut rng, 12);
        let y: ProjPoint<Rational> = random::point(&mut rng, 12);
        let z: ProjPoint<Rational> = random::point(&mut rng, 12);
        for ctx in [ChordalContext::real(), ChordalContext::padic(2), ChordalContext::padic(5)] {
            let dxy = chordal_distance(&x, &y, &ctx).unwrap();
            let dyz = chordal_distance(&y, &z, &ctx).unwrap();
            let dxz = chordal_distance(&x, &z, &ctx).unwrap();
            prop_assert_eq!(&dxy, &chordal_distance(&y, &x, &ctx).unwrap());
            prop_assert_eq!(dxy.is_zero(), x == y);
            prop_assert!(dxy.at_most_one());
            match ctx.place {
                Place::PAdic(_) => prop_assert!(Distance::ultrametric_le(&dxz, &dxy, &dyz)),
                Place::Real(_) => prop_assert_eq!(Distance::triangle_le(&dxz, &dxy, &dyz), Some(true)),
            }
        }
    }

    #[test]
    fn line_distance_vanishes_exactly_on_the_line(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a: ProjPoint<Rational> = random::point(&mut rng, 5);
        let b: ProjPoint<Rational> = random::point(&mut rng, 5);
        let x: ProjPoint<Rational> = random::point(&mut rng, 5);
        prop_assume!(a != b);
        let l: ProjLine<Rational> = span_line(&a, &b).unwrap();
        prop_assert!(line_point_incidence(&l, &a) && line_point_incidence(&l, &b));
        for ctx in [ChordalContext::real(), ChordalContext::padic(3)] {
            let d = distance_to_line(&x, &l, &ctx).unwrap();
            prop_assert_eq!(d.is_zero(), line_point_incidence(&l, &x));
        }
    }

    #[test]
    fn wreath_group_and_action_laws(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x0 = random::symmetric_space(3);
        let elem = |rng: &mut _| {
            let m = random::map::<Gf<3>>(rng, 2);
            random::element(rng, &x0, m, 1, 3)
        };
        let (a, b, c) = (elem(&mut rng), elem(&mut rng), elem(&mut rng));
        let x: Config<Gf<3>> = random::config(&mut rng, &x0, 1, 4);
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert!(a.multiply(&a.invert()).is_identity());
        prop_assert_eq!(a.multiply(&b).act(&x), a.act(&b.act(&x)));
        prop_assert_eq!(a.invert().act(&a.act(&x)), x.clone());
        let composed = a.proj().compose(b.proj());
        prop_assert_eq!(a.multiply(&b).proj().clone(), composed);
        let product = a.multiply(&b).invert();
        prop_assert!(product.is_member(&x0));
        let tight = |w: &wreathplane::resprod::WreathElement<Gf<3>>| w.cofactor().all(|(_, g)| !g.is_identity());
        prop_assert!(tight(&product));
        let moved = a.act(&x);
        prop_assert!(moved.support().all(|(_, v)| *v != x0.basepoint()));
    }

    #[test]
    fn fixed_iff_biregular_everywhere(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let s = random::finite_scenario::<Gf<2>>(&mut rng);
        let f = &s.generators()[0];
        let z = random::config(&mut rng, s.based_space(), 1, 3);
        let points = wreathplane::projgeo::enumerate_points::<Gf<2>>().unwrap();
        let everywhere = points.iter().all(|p| is_biregular(f, p, &z));
        prop_assert_eq!(f.act(&z) == z, everywhere);
        prop_assert_eq!(singular_set(f, &z).is_empty(), everywhere);
    }

    #[test]
    fn singular_sets_are_conjugation_covariant(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let s = random::finite_scenario::<Gf<3>>(&mut rng);
        let f = &s.generators()[0];
        let m = random::map::<Gf<3>>(&mut rng, 2);
        let w = random::element(&mut rng, s.based_space(), m, 1, 2);
        let z = random::config(&mut rng, s.based_space(), 1, 3);
        let conj = w.multiply(f).multiply(&w.invert());
        let lhs = singular_set(&conj, &w.act(&z)).points();
        let rhs: std::collections::BTreeSet<_> = singular_set(f, &z).points().iter().map(|p| w.proj().apply(p)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn built_fixed_points_are_fixed(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x0 = random::symmetric_space(2);
        let t = random::hyperbolic_element::<Rational>(&mut rng, &x0, 3);
        match build_fixed_point(&t, x0.basepoint()) {
            FixedPointResult::Fixed(z) => {
                prop_assert_eq!(t.act(&z), z.clone());
                let start = z.support_points().next().cloned().unwrap_or_else(|| ProjPoint::from_i64([1, 1, 1]));
                let v = persistent_fibre(&t, &start, &z, 40).unwrap();
                prop_assert!(!v.is_certified());
            }
            FixedPointResult::NoFixedPoint { .. } | FixedPointResult::Inconclusive(_) => {}
        }
    }

    #[test]
    fn persistent_fibre_excludes_fixed_points(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x0 = random::symmetric_space(2);
        let t = random::hyperbolic_element::<Rational>(&mut rng, &x0, 2);
        let z = Config::basepoint_config(x0.basepoint());
        for p in t.support() {
            if let FibreVerdict::Certified { .. } = persistent_fibre(&t, p, &z, 40).unwrap() {
                let fixed = matches!(build_fixed_point(&t, x0.basepoint()), FixedPointResult::Fixed(_));
                prop_assert!(!fixed);
            }
        }
    }
}
