//! Seeded random instances for property checks: ends, curve pairs with consistent
//! witnesses, witnessed simple curves, open books and buildings.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{
    gin_cylindrical, omega_term, Component, CurveClass, CurveData, Matching, OpenBookData, PairWitness,
    Witness,
};
use crate::end::{EndData, PairForm, PairProfile};
use crate::error::Result;
use crate::orbit::{alpha_iter, SimpleOrbit, TrivializationShift};
use crate::rational::{gcd, Q};

/// Orbits used by the generators. Elliptic denominators exceed every multiplicity drawn.
pub fn orbit_pool() -> Vec<SimpleOrbit> {
    let ell = |name: &str, p: i64, q: i64| SimpleOrbit::elliptic(name, Q::new(p, q)).expect("valid theta");
    vec![
        ell("e1", 5, 7),
        ell("e2", 12, 31),
        ell("e3", 101, 257),
        ell("e4", -3, 11),
        ell("e5", 19, 13),
        SimpleOrbit::even("h0", 0),
        SimpleOrbit::even("h1", 1),
        SimpleOrbit::even("h2", -1),
        SimpleOrbit::odd("o0", 0),
        SimpleOrbit::odd("o1", 1),
        SimpleOrbit::odd("o2", -1),
    ]
}

/// Strictly decreasing windings starting at `alpha - d0` whose covering sequence ends at 1.
pub fn embedded_windings<R: Rng>(rng: &mut R, mult: i64, alpha: i64, d0: i64) -> Vec<i64> {
    let mut windings = vec![alpha - d0];
    let mut k = gcd(mult.abs(), windings[0]);
    while k > 1 {
        let last = *windings.last().expect("nonempty");
        let mut next = last - rng.random_range(1..=3);
        while next % k == 0 {
            next -= 1;
        }
        windings.push(next);
        k = gcd(k, next);
    }
    windings
}

/// Relative intersection number from limit intersections and leading windings:
/// `sum_{w in Gamma_v^+} |m_w| (int(gamma_w, u) - sum_{z at gamma_w} wind_z)`
/// plus the symmetric sum over negative punctures of `u`.
pub fn rin_from_limits(
    u: &CurveData,
    v: &CurveData,
    int_u: &BTreeMap<String, i64>,
    int_v: &BTreeMap<String, i64>,
) -> Result<i64> {
    let mut total = 0;
    for w in v.ends().filter(|w| w.mult > 0) {
        let mut inner = int_u[&w.orbit.name];
        for z in u.ends().filter(|z| z.same_orbit(w)) {
            inner -= z.wind_infty()?;
        }
        total += w.abs_mult() * inner;
    }
    for z in u.ends().filter(|z| z.mult < 0) {
        let mut inner = int_v[&z.orbit.name];
        for w in v.ends().filter(|w| w.same_orbit(z)) {
            inner -= w.wind_infty()?;
        }
        total += z.abs_mult() * inner;
    }
    Ok(total)
}

/// Seeded instance generator.
pub struct Generator {
    rng: ChaCha8Rng,
    pool: Vec<SimpleOrbit>,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: orbit_pool(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn pool(&self) -> &[SimpleOrbit] {
        &self.pool
    }

    fn orbits(&mut self, max: usize) -> Vec<SimpleOrbit> {
        let n = self.rng.random_range(1..=max);
        self.pool.choose_multiple(&mut self.rng, n).cloned().collect()
    }

    /// Embedded holomorphic end; `tight` forces `d0 = 0`.
    pub fn end(&mut self, orbit: &SimpleOrbit, mult: i64, tight: bool) -> Result<EndData> {
        let alpha = alpha_iter(orbit, mult)?;
        let d0 = if tight { 0 } else { self.rng.random_range(0..=2) };
        let windings = embedded_windings(&mut self.rng, mult, alpha, d0);
        EndData::new(orbit.clone(), mult, windings, true)
    }

    fn mult(&mut self, max: i64) -> i64 {
        let m = self.rng.random_range(1..=max);
        if self.rng.random_bool(0.5) {
            m
        } else {
            -m
        }
    }

    fn ends(&mut self, orbits: &[SimpleOrbit], count: usize, tight: bool) -> Result<Vec<EndData>> {
        (0..count)
            .map(|_| {
                let orbit = orbits.choose(&mut self.rng).expect("nonempty").clone();
                let m = self.mult(3);
                self.end(&orbit, m, tight)
            })
            .collect()
    }

    fn counts(&mut self, orbits: &[SimpleOrbit], tight: bool) -> BTreeMap<String, i64> {
        orbits
            .iter()
            .map(|o| {
                let n = if tight && self.rng.random_bool(0.8) { 0 } else { self.rng.random_range(0..=2) };
                (o.name.clone(), n)
            })
            .collect()
    }

    /// Relative windings at most the entry bound; common-cover sums stay divisible by `m_a m_b`.
    pub fn pair_profile(&mut self, a: &EndData, b: &EndData, tight: bool) -> Result<PairProfile> {
        let form = if a.mult == b.mult && self.rng.random_bool(0.5) {
            PairForm::Direct
        } else {
            PairForm::CommonCover
        };
        let generic = PairProfile::generic(a.clone(), b.clone(), form)?;
        if tight {
            return Ok(generic);
        }
        let bound = generic.entry_bound()?;
        let len = generic.relative_windings.len();
        let mut entries = match form {
            PairForm::Direct => (0..len).map(|_| bound - self.rng.random_range(0..=2)).collect::<Vec<_>>(),
            PairForm::CommonCover => {
                let t = self.rng.random_range(0..=2);
                let mut e = vec![bound - t; len];
                for _ in 0..len {
                    let (i, j) = (self.rng.random_range(0..len), self.rng.random_range(0..len));
                    if i != j && e[i] < bound && e[j] > bound - 3 {
                        e[i] += 1;
                        e[j] -= 1;
                    }
                }
                e
            }
        };
        entries.sort_unstable_by(|x, y| y.cmp(x));
        PairProfile::new(a.clone(), b.clone(), entries)
    }

    /// Distinct holomorphic curves `u`, `v` with limit intersections, cross pair profiles,
    /// a symmetric relative intersection number and `int(u, v)` consistent with both.
    pub fn curve_pair(&mut self, tight: bool) -> Result<(CurveData, CurveData)> {
        loop {
            if let Some(pair) = self.try_curve_pair(tight)? {
                return Ok(pair);
            }
        }
    }

    fn try_curve_pair(&mut self, tight: bool) -> Result<Option<(CurveData, CurveData)>> {
        let orbits = self.orbits(3);
        let (nu, nv) = (self.rng.random_range(1..=3), self.rng.random_range(1..=3));
        let u_ends = self.ends(&orbits, nu, tight)?;
        let v_ends = self.ends(&orbits, nv, tight)?;
        let (gu, gv) = (self.rng.random_range(0..=1), self.rng.random_range(0..=1));
        let mut u = CurveData::connected("u", gu, u_ends, self.rng.random_range(-2..=2), CurveClass::Holomorphic);
        let mut v = CurveData::connected("v", gv, v_ends, self.rng.random_range(-2..=2), CurveClass::Holomorphic);
        let mut int_u = self.counts(&orbits, tight);
        let mut int_v = self.counts(&orbits, tight);

        let diff = rin_from_limits(&u, &v, &int_u, &int_v)? - rin_from_limits(&v, &u, &int_v, &int_u)?;
        if diff != 0 {
            let mass = |c: &CurveData, name: &str, sign: i64| -> i64 {
                c.ends()
                    .filter(|e| e.orbit.name == name && e.sign() == sign)
                    .map(EndData::abs_mult)
                    .sum()
            };
            let mut options = Vec::new();
            for o in &orbits {
                options.push((true, o.name.clone(), mass(&v, &o.name, 1) - mass(&v, &o.name, -1)));
                options.push((false, o.name.clone(), mass(&u, &o.name, -1) - mass(&u, &o.name, 1)));
            }
            let fixed = options.into_iter().find_map(|(on_u, name, c)| {
                let table = if on_u { &int_u } else { &int_v };
                let n = table[&name] - if c != 0 { diff / c } else { 0 };
                (c != 0 && diff % c == 0 && n >= 0).then_some((on_u, name, n))
            });
            match fixed {
                Some((true, name, n)) => {
                    int_u.insert(name, n);
                }
                Some((false, name, n)) => {
                    int_v.insert(name, n);
                }
                None => return Ok(None),
            }
        }
        let rin = rin_from_limits(&u, &v, &int_u, &int_v)?;
        debug_assert_eq!(rin, rin_from_limits(&v, &u, &int_v, &int_u)?);

        let mut profiles = Vec::new();
        let mut delta_infty = 0;
        for (i, z) in u.ends().enumerate() {
            for (j, w) in v.ends().enumerate() {
                if z.same_orbit(w) && z.sign() == w.sign() {
                    let p = self.pair_profile(z, w, tight)?;
                    delta_infty += p.asymptotic_index()?;
                    profiles.push(PairWitness {
                        other: Some("v".into()),
                        a: i,
                        b: j,
                        relative_windings: p.relative_windings,
                    });
                }
            }
        }
        u.witness = Some(Witness {
            orbit_intersections: int_u,
            pair_profiles: profiles,
            ..Witness::default()
        });
        v.witness = Some(Witness {
            orbit_intersections: int_v,
            ..Witness::default()
        });
        let int = rin + omega_term(&u, &v)? - delta_infty;
        if int < 0 {
            return Ok(None);
        }
        let w = u.witness.as_mut().expect("set above");
        w.pair_intersections.insert("v".into(), int);
        w.relative_intersections.insert("v".into(), rin);
        Ok(Some((u, v)))
    }

    /// Connected simple holomorphic curve with a complete witness; `wind_pi` and `c1`
    /// are solved from the adjunction and `wind_pi` identities.
    pub fn simple_curve(&mut self, tight: bool) -> Result<CurveData> {
        loop {
            if let Some(u) = self.try_simple_curve(tight)? {
                return Ok(u);
            }
        }
    }

    fn try_simple_curve(&mut self, tight: bool) -> Result<Option<CurveData>> {
        let orbits = self.orbits(2);
        let n = self.rng.random_range(1..=3);
        let ends = self.ends(&orbits, n, tight)?;
        let genus = if tight { 0 } else { self.rng.random_range(0..=1) };
        let mut u = CurveData::connected("u", genus, ends, 0, CurveClass::Holomorphic);
        let mut profiles = Vec::new();
        let mut pair_index = 0;
        let all: Vec<EndData> = u.ends().cloned().collect();
        for (i, z) in all.iter().enumerate() {
            for (j, w) in all.iter().enumerate().skip(i + 1) {
                if z.same_orbit(w) && z.sign() == w.sign() {
                    let p = self.pair_profile(z, w, tight)?;
                    pair_index += p.asymptotic_index()?;
                    profiles.push(PairWitness {
                        other: None,
                        a: i,
                        b: j,
                        relative_windings: p.relative_windings,
                    });
                }
            }
        }
        let mut end_index = 0;
        for e in &all {
            end_index += e.self_asymptotic_index()?;
        }
        let delta_infty = end_index + pair_index;
        u.witness = Some(Witness {
            orbit_intersections: self.counts(&orbits, tight),
            pair_profiles: profiles,
            ..Witness::default()
        });
        let gin = gin_cylindrical(&u, &u)?.total;
        let base = gin - u.d0()? - u.sigma_bar()? + u.num_punctures() as i64 - 2 * delta_infty;
        if base < 0 {
            return Ok(None);
        }
        let delta = if tight { 0 } else { self.rng.random_range(0..=base / 2) };
        let wind_pi = base - 2 * delta;
        let chi = u.euler_characteristic();
        let ind = 2 * wind_pi + 2 * u.d0()? + chi - u.num_even()?;
        let mu = ind + chi - u.num_punctures() as i64;
        let ends_mu = u.total_cz()?;
        debug_assert_eq!((mu - ends_mu) % 2, 0);
        u.c1_rel = (mu - ends_mu) / 2;
        let w = u.witness.as_mut().expect("set above");
        w.double_points = Some(delta);
        w.wind_pi = Some(wind_pi);
        Ok(Some(u))
    }

    /// Random shift with degrees in `[-range, range]` on the given orbits.
    pub fn shift(&mut self, orbits: &[SimpleOrbit], range: i64) -> TrivializationShift {
        let mut s = TrivializationShift::new();
        for o in orbits {
            s = s.with(o.name.clone(), self.rng.random_range(-range..=range));
        }
        s
    }

    /// Open book with elliptic bindings and a curve whose positive limits are binding covers,
    /// at least one of them meeting the pages.
    pub fn open_book(&mut self) -> Result<(OpenBookData, CurveData)> {
        let nb = self.rng.random_range(1..=3);
        let mut bindings = Vec::new();
        for i in 0..nb {
            let q = *[7i64, 11, 13, 31, 257].choose(&mut self.rng).expect("nonempty");
            let p = self.rng.random_range(q / 5 + 1..q) + q * self.rng.random_range(-1..=1);
            bindings.push(SimpleOrbit::elliptic(format!("b{i}"), Q::new(p, q))?);
        }
        let mut page_ends = Vec::new();
        for b in &bindings {
            page_ends.push(EndData::hol(b, 1, &[alpha_iter(b, 1)?])?);
        }
        let mut page = CurveData::connected("page", 0, page_ends, 0, CurveClass::Holomorphic);
        let mu_ends = page.total_cz()?;
        // ind = mu - 2 + #Gamma = 2
        page.c1_rel = (4 - nb as i64 - mu_ends) / 2;
        page.witness = Some(Witness {
            double_points: Some(0),
            wind_pi: Some(0),
            ..Witness::default()
        });
        let ob = OpenBookData {
            name: "ob".into(),
            bindings: bindings.clone(),
            page,
        };
        let hyperbolic: Vec<SimpleOrbit> = self.pool.iter().filter(|o| !o.is_elliptic()).cloned().collect();
        loop {
            let mut ends = Vec::new();
            for _ in 0..self.rng.random_range(1..=3) {
                let b = bindings.choose(&mut self.rng).expect("nonempty").clone();
                let m = self.rng.random_range(1..=6);
                ends.push(self.end(&b, m, false)?);
            }
            for _ in 0..self.rng.random_range(0..=2) {
                let h = hyperbolic.choose(&mut self.rng).expect("nonempty").clone();
                let m = -self.rng.random_range(1..=3);
                ends.push(self.end(&h, m, false)?);
            }
            let u = CurveData::new(
                "u",
                vec![Component {
                    genus: self.rng.random_range(0..=1),
                    punctures: ends,
                }],
                0,
                CurveClass::Holomorphic,
            );
            let meets = u.ends().filter(|e| e.mult > 0).any(|e| {
                let rot = crate::orbit::rotation_index(&e.orbit).expect("elliptic binding");
                Q::from_integer(e.mult) * rot >= Q::from_integer(1)
            });
            if meets {
                return Ok((ob, u));
            }
        }
    }

    /// Two-level buildings `(u1, u2, v1, v2)` with complete matchings of the breaking punctures.
    #[allow(clippy::type_complexity)]
    pub fn buildings(&mut self) -> Result<([CurveData; 4], Matching, Matching)> {
        let orbits = self.orbits(2);
        let level = |this: &mut Self, tag: &str| -> Result<(CurveData, CurveData, Matching)> {
            let n = this.rng.random_range(1..=2);
            let (mut upper, mut lower, mut pairs) = (Vec::new(), Vec::new(), Vec::new());
            for i in 0..n {
                let o = orbits.choose(&mut this.rng).expect("nonempty").clone();
                let m = this.rng.random_range(1..=4);
                upper.push(this.end(&o, -m, false)?);
                lower.push(this.end(&o, m, false)?);
                pairs.push((i, i));
            }
            let cap = this.pool.choose(&mut this.rng).expect("nonempty").clone();
            let m = this.rng.random_range(1..=2);
            upper.insert(0, this.end(&cap, m, false)?);
            let pairs = pairs.into_iter().map(|(a, b)| (a + 1, b)).collect();
            Ok((
                CurveData::connected(format!("{tag}1"), 0, upper, 0, CurveClass::Holomorphic),
                CurveData::connected(format!("{tag}2"), 0, lower, 0, CurveClass::Holomorphic),
                Matching { pairs },
            ))
        };
        let (u1, u2, mu) = level(self, "u")?;
        let (v1, v2, mv) = level(self, "v")?;
        Ok(([u1, u2, v1, v2], mu, mv))
    }
}
