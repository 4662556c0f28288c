//! Test-side oracles. Everything here is written from the defining formulas with plain
//! integer arithmetic and does not call the library's computations.
#![allow(dead_code)]

use curvecalc::{CurveData, EndData, OrbitKind, SimpleOrbit};

pub fn floor_div(a: i64, b: i64) -> i64 {
    let (q, r) = (a / b, a % b);
    if r != 0 && ((r < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Orbit data as plain integers: `(p, q)` for an elliptic surrogate `p/q`, or `alpha0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Elliptic(i64, i64),
    Even(i64),
    Odd(i64),
}

pub fn kind(o: &SimpleOrbit) -> Kind {
    match o.kind {
        OrbitKind::Elliptic { theta } => Kind::Elliptic(*theta.numer(), *theta.denom()),
        OrbitKind::EvenHyperbolic { alpha0 } => Kind::Even(alpha0),
        OrbitKind::OddHyperbolic { alpha0 } => Kind::Odd(alpha0),
    }
}

/// Extremal negative winding at the `k`-fold cover.
pub fn alpha(kind: Kind, k: i64) -> i64 {
    match kind {
        Kind::Elliptic(p, q) => floor_div(k * p, q),
        Kind::Even(a) => k * a,
        Kind::Odd(a) => k * a + floor_div(k, 2),
    }
}

pub fn parity(kind: Kind, k: i64) -> i64 {
    match kind {
        Kind::Elliptic(..) => 1,
        Kind::Even(_) => 0,
        Kind::Odd(_) => k.rem_euclid(2),
    }
}

pub fn cz(kind: Kind, k: i64) -> i64 {
    2 * alpha(kind, k) + parity(kind, k)
}

pub fn sigma_bar(kind: Kind, k: i64) -> i64 {
    gcd(k, alpha(kind, k))
}

/// Whether `k theta` is an integer, where the elliptic formulas do not apply.
pub fn guarded(kind: Kind, k: i64) -> bool {
    matches!(kind, Kind::Elliptic(p, q) if (k * p) % q == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Exactly(i64),
    AtLeastOne,
}

/// Concatenation defect closed forms: 0 (even), `min(n p(m), m p(n))` (odd), at least 1 (elliptic).
pub fn concat_closed(kind: Kind, m: i64, n: i64) -> Expected {
    match kind {
        Kind::Even(_) => Expected::Exactly(0),
        Kind::Odd(_) => Expected::Exactly((n * (m % 2)).min(m * (n % 2))),
        Kind::Elliptic(..) => Expected::AtLeastOne,
    }
}

/// `m_z m_w max(a_z / |m_z|, a_w / |m_w|)` for ends of equal sign.
pub fn scaled_max(mz: i64, az: i64, mw: i64, aw: i64) -> i64 {
    (az * mw.abs()).max(aw * mz.abs())
}

fn end_alpha(e: &EndData) -> i64 {
    alpha(kind(&e.orbit), e.mult)
}

/// Balance term over same-orbit ends of equal sign.
pub fn omega(u: &CurveData, v: &CurveData) -> i64 {
    let mut total = 0;
    for z in u.ends() {
        for w in v.ends() {
            if z.orbit.name == w.orbit.name && (z.mult > 0) == (w.mult > 0) {
                total += scaled_max(z.mult, end_alpha(z), w.mult, end_alpha(w));
            }
        }
    }
    total
}

fn limit_int(c: &CurveData, orbit: &str) -> i64 {
    c.witness.as_ref().expect("witness")
        .orbit_intersections
        .get(orbit)
        .copied()
        .expect("limit intersection")
}

/// Relative intersection number from limit intersections and leading windings.
pub fn rin(u: &CurveData, v: &CurveData) -> i64 {
    let mut total = 0;
    for w in v.ends().filter(|w| w.mult > 0) {
        let inner: i64 = limit_int(u, &w.orbit.name)
            - u.ends().filter(|z| z.orbit.name == w.orbit.name).map(|z| z.windings[0]).sum::<i64>();
        total += w.mult * inner;
    }
    for z in u.ends().filter(|z| z.mult < 0) {
        let inner: i64 = limit_int(v, &z.orbit.name)
            - v.ends().filter(|w| w.orbit.name == z.orbit.name).map(|w| w.windings[0]).sum::<i64>();
        total += -z.mult * inner;
    }
    total
}

/// Generalized intersection number as `rin + Omega`.
pub fn gin(u: &CurveData, v: &CurveData) -> i64 {
    rin(u, v) + omega(u, v)
}

/// `d0 = alpha - wind_infty`.
pub fn d0(e: &EndData) -> i64 {
    end_alpha(e) - e.windings[0]
}

/// Covering numbers `k_0 = |m|`, `k_i = gcd(k_{i-1}, w_i)`.
pub fn cov(e: &EndData) -> Vec<i64> {
    let mut ks = vec![e.mult.abs()];
    for w in &e.windings {
        let last = *ks.last().unwrap();
        ks.push(gcd(last, *w));
    }
    ks
}

/// Zero set of the first end defect.
pub fn delta1_vanishes(e: &EndData) -> bool {
    let m = e.mult.abs();
    let d = d0(e);
    m == 1 || d == 0 || (d == 1 && sigma_bar(kind(&e.orbit), e.mult) == m)
}

/// Zero set of the second end defect.
pub fn delta2_vanishes(e: &EndData) -> bool {
    let n = e.windings.len();
    n == 1 || (n == 2 && e.windings[0] - e.windings[1] == 1)
}

/// `gin(u, gamma~^k)` for an even or odd hyperbolic orbit.
pub fn orbit_cylinder_gin(u: &CurveData, orbit: &SimpleOrbit, k: i64) -> i64 {
    let odd = matches!(kind(orbit), Kind::Odd(_));
    let mut total = k * limit_int(u, &orbit.name);
    for z in u.ends().filter(|z| z.orbit.name == orbit.name) {
        let m = z.mult.abs();
        total += k * d0(z);
        if odd {
            total += ((k * (m % 2) - m * (k % 2)) / 2).max(0);
        }
    }
    total
}

/// `floor(m rot)` with `rot` the fractional part of `p/q`.
pub fn rotation_count(orbit: &SimpleOrbit, m: i64) -> i64 {
    let Kind::Elliptic(p, q) = kind(orbit) else {
        panic!("rotation count of a hyperbolic orbit")
    };
    floor_div(m * p.rem_euclid(q), q)
}

/// Integer determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Eigenvalues `2 pi (n - theta)` of the constant elliptic model, within `window`.
pub fn elliptic_spectrum(theta: f64, window: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let top = (window / (2.0 * std::f64::consts::PI)).ceil() as i64 + 2;
    for n in -top..=top {
        let l = 2.0 * std::f64::consts::PI * (n as f64 - theta);
        if l.abs() <= window {
            out.push(l);
            out.push(l);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalues `+-sqrt(a^2 + 4 pi^2 n^2)` of constant `diag(a, -a)`, within `window`.
pub fn hyperbolic_spectrum(a: f64, window: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let top = (window / (2.0 * std::f64::consts::PI)).ceil() as i64 + 2;
    for n in -top..=top {
        let l = (a * a + 4.0 * std::f64::consts::PI.powi(2) * (n * n) as f64).sqrt();
        for s in [l, -l] {
            if s.abs() <= window {
                out.push(s);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
