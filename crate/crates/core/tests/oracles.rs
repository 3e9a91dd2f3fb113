//! Library results against independent computations: naive valuations,
//! floating-point chordal formulas, direct determinants and exhaustive
//! enumeration of configurations.

use num_traits::{Signed, Zero};

use wreathplane::pipeline::{brute_force_fixed_point, count_fixed_points, Scenario};
use wreathplane::projgeo::{chordal_distance, enumerate_points, lines_through, ChordalContext, ProjMap, ProjPoint};
use wreathplane::random;
use wreathplane::resprod::Config;
use wreathplane::scalar::{padic_valuation, rat, Field};
use wreathplane::spectral::{classify_proximality, eig_point, spectrum, Proximality};
use wreathplane::{Gf, QuadExt, Rational};

fn naive_valuation(x: &Rational, q: i64) -> i64 {
    let strip = |n: &num_bigint::BigInt| {
        let mut n = n.abs();
        let mut v = 0;
        let q = num_bigint::BigInt::from(q);
        while (&n % &q).is_zero() {
            n /= &q;
            v += 1;
        }
        v
    };
    strip(x.numer()) - strip(x.denom())
}

#[test]
fn valuations_match_trial_division() {
    let mut rng = random::rng(11);
    for _ in 0..500 {
        let x: Rational = random::scalar::<Rational>(&mut rng, 5000) / random::scalar::<Rational>(&mut rng, 5000);
        if x.is_zero() || !x.denom().is_positive() {
            continue;
        }
        for q in [2u64, 3, 5, 7] {
            let v = padic_valuation(&x, q).unwrap().finite().unwrap();
            assert_eq!(v, naive_valuation(&x, q as i64), "{x} at {q}");
        }
    }
    assert_eq!(padic_valuation(&rat(8, 3), 2).unwrap().finite(), Some(3));
    assert_eq!(padic_valuation(&rat(12, 1), 2).unwrap().finite(), Some(2));
}

fn float_chordal(v: [f64; 3], w: [f64; 3]) -> f64 {
    let n = |a: [f64; 3]| a.iter().map(|x| x * x).sum::<f64>();
    let ip: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
    ((n(v) * n(w) - ip * ip).max(0.0) / (n(v) * n(w))).sqrt()
}

fn padic_chordal(v: &[Rational; 3], w: &[Rational; 3], q: i64) -> f64 {
    let abs = |x: &Rational| if x.is_zero() { 0.0 } else { (q as f64).powi(-naive_valuation(x, q) as i32) };
    let max = |a: &[Rational; 3]| a.iter().map(abs).fold(0.0, f64::max);
    let minors = [(0, 1), (0, 2), (1, 2)]
        .map(|(i, j)| abs(&(v[i].clone() * w[j].clone() - v[j].clone() * w[i].clone())));
    minors.into_iter().fold(0.0, f64::max) / (max(v) * max(w))
}

#[test]
fn chordal_distances_match_direct_formulas() {
    let mut rng = random::rng(5);
    for _ in 0..300 {
        let x: ProjPoint<Rational> = random::point(&mut rng, 20);
        let y: ProjPoint<Rational> = random::point(&mut rng, 20);
        let f = |p: &ProjPoint<Rational>| p.coords().clone().map(|c| Field::to_f64(&c));
        let real = chordal_distance(&x, &y, &ChordalContext::real()).unwrap().to_f64();
        assert!((real - float_chordal(f(&x), f(&y))).abs() < 1e-12);
        for q in [2, 5] {
            let d = chordal_distance(&x, &y, &ChordalContext::padic(q as u64)).unwrap().to_f64();
            assert!((d - padic_chordal(x.coords(), y.coords(), q)).abs() < 1e-12, "{x:?} {y:?} at {q}");
        }
    }
    let e1 = ProjPoint::<Rational>::from_i64([1, 0, 0]);
    let d = chordal_distance(&e1, &ProjPoint::from_i64([1, 1, 0]), &ChordalContext::real()).unwrap();
    assert!((d.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    let d = chordal_distance(&e1, &ProjPoint::from_i64([3, 1, 0]), &ChordalContext::padic(3)).unwrap();
    assert_eq!(d.to_f64(), 1.0);
}

fn det3<F: Field>(m: [[F; 3]; 3]) -> F {
    let t = |a: &F, b: &F, c: &F| a.clone() * b.clone() * c.clone();
    t(&m[0][0], &m[1][1], &m[2][2]) + t(&m[0][1], &m[1][2], &m[2][0]) + t(&m[0][2], &m[1][0], &m[2][1])
        - t(&m[0][2], &m[1][1], &m[2][0])
        - t(&m[0][0], &m[1][2], &m[2][1])
        - t(&m[0][1], &m[1][0], &m[2][2])
}

#[test]
fn resolved_eigenvalues_are_roots_of_the_determinant() {
    let mut rng = random::rng(3);
    let mut resolved = 0;
    for _ in 0..300 {
        let m: ProjMap<Rational> = random::map(&mut rng, 3);
        let s = spectrum(&m);
        let total: usize = s.eigenvalues.iter().map(|(_, k)| k).sum();
        assert_eq!(total, 3);
        for (lambda, _) in s.resolved() {
            let mut a = [[0i64; 3]; 3].map(|r| r.map(|_| QuadExt::rational(Rational::zero())));
            for (i, row) in a.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = QuadExt::rational(m.lift().get(i, j).clone());
                    if i == j {
                        *x = x.clone() - lambda.clone();
                    }
                }
            }
            assert!(det3(a).is_zero(), "{lambda} is not an eigenvalue of {}", m.to_literal());
            resolved += 1;
        }
    }
    assert!(resolved > 100, "only {resolved} eigenvalues resolved");
}

#[test]
fn attracting_points_attract_under_float_iteration() {
    let m = ProjMap::<Rational>::from_i64([[2, 1, 0], [1, 1, 0], [0, 0, 3]]);
    let Proximality::VeryProximal(d) = classify_proximality(&m, wreathplane::scalar::Place::REAL) else {
        panic!("expected a very proximal map");
    };
    // 3 dominates the block eigenvalues (3 ± √5)/2
    assert_eq!(d.p_plus, eig_point(&ProjPoint::<Rational>::from_i64([0, 0, 1])));
    let mut v = [1.0f64, -2.0, 0.5];
    for _ in 0..400 {
        v = [2.0 * v[0] + v[1], v[0] + v[1], 3.0 * v[2]];
        let n = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        v = v.map(|x| x / n);
    }
    assert!(float_chordal(v, [0.0, 0.0, 1.0]) < 1e-6);
}

/// Every configuration of `X₀^P` on a GF(2) plane, fixed or not.
fn all_configs(degree: usize, basepoint: usize) -> Vec<Config<Gf<2>>> {
    let points = enumerate_points::<Gf<2>>().unwrap();
    let total = degree.pow(points.len() as u32);
    (0..total)
        .map(|mut code| {
            let entries = points.iter().map(|p| {
                let v = code % degree;
                code /= degree;
                (p.clone(), v)
            });
            Config::from_entries(basepoint, entries.collect::<Vec<_>>())
        })
        .collect()
}

#[test]
fn brute_force_oracle_matches_exhaustive_enumeration() {
    let mut rng = random::rng(21);
    let mut with_fixed = 0;
    for _ in 0..40 {
        let s: Scenario<Gf<2>> = random::finite_scenario(&mut rng);
        let x0 = s.based_space();
        if x0.size() > 3 {
            continue;
        }
        let fixed: Vec<Config<Gf<2>>> = all_configs(x0.size(), x0.basepoint()).into_iter().filter(|z| s.fixes(z)).collect();
        let found = brute_force_fixed_point(&s).unwrap();
        assert_eq!(found.is_some(), !fixed.is_empty());
        if let Some(z) = found {
            assert!(fixed.contains(&z));
            with_fixed += 1;
        }
        let count = count_fixed_points(s.generators(), x0.size()).unwrap();
        assert_eq!(count, fixed.len() as u128);
    }
    assert!(with_fixed > 0);
}

#[test]
fn plane_and_pencil_sizes() {
    fn sizes<const P: u64>() -> (usize, usize) {
        let u = ProjPoint::<Gf<P>>::from_i64([1, 0, 0]);
        (enumerate_points::<Gf<P>>().unwrap().len(), lines_through(&u).unwrap().len())
    }
    for (p, got) in [(2, sizes::<2>()), (3, sizes::<3>()), (5, sizes::<5>()), (7, sizes::<7>())] {
        assert_eq!(got, ((p * p + p + 1) as usize, (p + 1) as usize));
    }
    let diag = ProjMap::<Rational>::from_i64([[4, 0, 0], [0, 2, 0], [0, 0, 1]]);
    let image = diag.apply(&ProjPoint::from_i64([1, 1, 1]));
    assert_eq!(image, ProjPoint::new([rat(1, 1), rat(1, 2), rat(1, 4)]).unwrap());
}
