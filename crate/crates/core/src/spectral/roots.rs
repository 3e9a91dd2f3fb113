//! Exact roots of polynomials of degree at most 3.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::scalar::{
    rational_sqrt, rational_sqrt_in_quadratic, Embedding, Field, Gf, QuadExt, Rational,
};

/// Roots found in the eigenvalue field, with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit<E> {
    pub roots: Vec<(E, usize)>,
    /// Degree of the factor whose roots were not found.
    pub unresolved_degree: usize,
    /// `true` when the unresolved factor provably has no roots in the
    /// eigenvalue field, so the listed roots are all of them.
    pub complete: bool,
}

/// Strips every root in `candidates` from `p`, recording multiplicities.
fn peel<E: Field>(p: &mut Poly<E>, candidates: Vec<E>, out: &mut Vec<(E, usize)>) {
    for r in candidates {
        if out.iter().any(|(x, _)| *x == r) {
            continue;
        }
        let lin = Poly::linear(r.clone());
        let mut mult = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            *p = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((r, mult));
        }
    }
}

/// Prime factorization by trial division; `None` when a cofactor is too large
/// to certify as prime.
fn factor(n: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    const BOUND: u64 = 1_000_000;
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= BOUND {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        let b = BigUint::from(BOUND);
        if n > &b * &b {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

fn divisors(n: &BigUint) -> Option<Vec<BigUint>> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        out = next;
        if out.len() > 20_000 {
            return None;
        }
    }
    Some(out)
}

/// Integer polynomial proportional to `p`.
fn integral(p: &Poly<Rational>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// Real roots of a real polynomial of small degree, numerically.
pub(crate) fn numeric_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    type C = (f64, f64);
    let mul = |a: C, b: C| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let sub = |a: C, b: C| (a.0 - b.0, a.1 - b.1);
    let div = |a: C, b: C| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let eval = |z: C| c.iter().rev().fold((0.0, 0.0), |acc, &k| {
        let m = mul(acc, z);
        (m.0 + k, m.1)
    });
    let mut z: Vec<C> = (0..n).map(|k| {
        let base: C = (0.4, 0.9);
        (0..k).fold((1.0, 0.0), |acc, _| mul(acc, base))
    }).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den = mul(den, sub(z[i], z[j]));
                }
            }
            if den.0 == 0.0 && den.1 == 0.0 {
                den = (1e-12, 0.0);
            }
            let step = div(eval(z[i]), den);
            z[i] = sub(z[i], step);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let scale = c.iter().map(|x| x.abs()).fold(1.0, f64::max);
    z.into_iter()
        .filter(|(re, im)| im.abs() <= 1e-6 * (1.0 + re.abs()) * scale.sqrt())
        .map(|(re, _)| re)
        .collect()
}

/// Best rational approximations of `x` by continued fractions with bounded denominator.
pub(crate) fn continued_fraction_candidates(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(Rational::new(BigInt::from(h2), BigInt::from(k2)));
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Rational roots of a rational polynomial. The flag reports whether the
/// search was exhaustive (rational root theorem) rather than numeric.
pub fn rational_roots(p: &Poly<Rational>) -> (Vec<Rational>, bool) {
    let Some(deg) = p.degree() else {
        return (Vec::new(), true);
    };
    if deg == 0 {
        return (Vec::new(), true);
    }
    let mut c = integral(p);
    let mut roots = Vec::new();
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c.first().is_some_and(|x| x.is_zero()) {
            c.remove(0);
        }
    }
    if c.len() <= 1 {
        return (roots, true);
    }
    let c0 = c[0].abs().to_biguint().unwrap();
    let cn = c[c.len() - 1].abs().to_biguint().unwrap();
    let reduced = Poly::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect());
    if let (Some(dp), Some(dq)) = (divisors(&c0), divisors(&cn)) {
        if dp.len() * dq.len() <= 200_000 {
            for q in &dq {
                for pp in &dp {
                    for sign in [1, -1] {
                        let r = Rational::new(BigInt::from(pp.clone()) * sign, BigInt::from(q.clone()));
                        if reduced.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
            roots.sort();
            return (roots, true);
        }
    }
    let fc: Vec<f64> = reduced.coeffs().iter().map(|x| Field::to_f64(x)).collect();
    for x in numeric_real_roots(&fc) {
        for r in continued_fraction_candidates(x, 1_000_000_000) {
            if reduced.eval(&r).is_zero() && !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    (roots, false)
}

/// Roots of a monic rational polynomial of degree ≤ 3 in real quadratic fields.
pub fn split_rational(p: &Poly<Rational>) -> RootSplit<QuadExt> {
    let (rr, exhaustive) = rational_roots(p);
    let mut rest = p.clone();
    let mut found = Vec::new();
    peel(&mut rest, rr, &mut found);
    let mut roots: Vec<(QuadExt, usize)> =
        found.into_iter().map(|(r, m)| (QuadExt::rational(r), m)).collect();
    let deg = rest.degree().unwrap_or(0);
    let mut complete = exhaustive;
    let mut unresolved = deg;
    match deg {
        0 => {}
        1 => {
            // cannot happen after exhaustive peeling; a numeric miss lands here
            let r = -rest.coeff(0) / rest.coeff(1);
            roots.push((QuadExt::rational(r), 1));
            unresolved = 0;
            complete = true;
        }
        2 => {
            let m = rest.monic();
            let (b, c) = (m.coeff(1), m.coeff(0));
            let disc = b.clone() * b.clone() - Rational::from_integer(4.into()) * c;
            if disc.is_negative() {
                // complex pair: no real roots
                complete = true;
            } else if let Some(s) = rational_sqrt_in_quadratic(&disc, None) {
                let half = Rational::new(1.into(), 2.into());
                let mb = QuadExt::rational(-b * half.clone());
                let sh = s * QuadExt::rational(half);
                let mut pair = vec![mb.clone() - sh.clone(), mb + sh];
                pair.sort();
                for r in pair {
                    roots.push((r, 1));
                }
                unresolved = 0;
                complete = true;
            }
        }
        _ => {
            // a cubic without rational roots is irreducible and has no root in
            // any quadratic field
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RootSplit { roots, unresolved_degree: unresolved, complete }
}

/// Roots of a polynomial over ℚ(√d) inside the same field.
pub fn split_quadratic_field(p: &Poly<QuadExt>) -> RootSplit<QuadExt> {
    let d = p.coeffs().iter().map(|c| c.radicand()).max().unwrap_or(0);
    if d == 0 {
        let rp = Poly::new(p.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect());
        return split_rational(&rp);
    }
    let sigma = |e: Embedding| -> Vec<f64> {
        p.coeffs().iter().map(|c| c.embed(e).to_f64()).collect()
    };
    let plus = numeric_real_roots(&sigma(Embedding::Plus));
    let minus = numeric_real_roots(&sigma(Embedding::Minus));
    let sd = (d as f64).sqrt();
    let mut candidates = Vec::new();
    for &rp in &plus {
        for &rm in &minus {
            let a = (rp + rm) / 2.0;
            let b = (rp - rm) / (2.0 * sd);
            for ca in continued_fraction_candidates(a, 1_000_000) {
                for cb in continued_fraction_candidates(b, 1_000_000) {
                    if let Ok(x) = QuadExt::new(ca.clone(), cb, d) {
                        if p.eval(&x).is_zero() && !candidates.contains(&x) {
                            candidates.push(x);
                        }
                    }
                }
            }
        }
    }
    let mut rest = p.clone();
    let mut roots = Vec::new();
    peel(&mut rest, candidates, &mut roots);
    let deg = rest.degree().unwrap_or(0);
    let mut unresolved = deg;
    let mut complete = deg == 0;
    if deg == 1 {
        roots.push((-rest.coeff(0) / rest.coeff(1), 1));
        unresolved = 0;
        complete = true;
    } else if deg == 2 {
        let m = rest.monic();
        let (b, c) = (m.coeff(1), m.coeff(0));
        let disc = b.clone() * b.clone() - QuadExt::from_i64(4) * c;
        let s = if disc.is_rational() {
            rational_sqrt_in_quadratic(disc.as_rational().unwrap(), Some(d))
                .or_else(|| rational_sqrt(disc.as_rational().unwrap()).map(QuadExt::rational))
        } else {
            disc.sqrt()
        };
        match s {
            Some(s) => {
                let half = QuadExt::rational(Rational::new(1.into(), 2.into()));
                let mut pair = vec![(-b.clone() - s.clone()) * half.clone(), (-b + s) * half];
                pair.sort();
                let before = roots.len();
                for r in pair {
                    if let Some(e) = roots[before..].iter_mut().find(|(x, _)| *x == r) {
                        e.1 += 1;
                    } else {
                        roots.push((r, 1));
                    }
                }
                unresolved = 0;
                complete = true;
            }
            None => complete = true,
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RootSplit { roots, unresolved_degree: unresolved, complete }
}

/// Roots in GF(P) by exhaustion.
pub fn split_finite<const P: u64>(p: &Poly<Gf<P>>) -> RootSplit<Gf<P>> {
    let cands: Vec<Gf<P>> = Gf::<P>::elements().filter(|x| p.eval(x).is_zero()).collect();
    let mut rest = p.clone();
    let mut roots = Vec::new();
    peel(&mut rest, cands, &mut roots);
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    RootSplit { roots, unresolved_degree: rest.degree().unwrap_or(0), complete: true }
}

/// Small primes dividing a rational's numerator or denominator.
pub fn prime_support(q: &Rational) -> Vec<u64> {
    let mut out = Vec::new();
    for n in [q.numer().abs(), q.denom().abs()] {
        let Some(n) = n.to_biguint() else { continue };
        if n.is_zero() {
            continue;
        }
        if let Some(f) = factor(&n) {
            for (p, _) in f {
                if let Some(p) = p.to_u64() {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort();
    out
}
