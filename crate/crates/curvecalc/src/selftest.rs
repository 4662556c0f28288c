//! The property and fixture suite behind the `selftest` command. Each criterion runs
//! on seeded random instances or exhaustive enumerations and reports its counts.

use std::f64::consts::PI;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{
    adjunction_defect, check_embedded_projection, check_gin_zero, check_no_isect, check_sgin_zero, gin_cylindrical,
    gin_from_rin, gin_from_witness, gin_orbit_cylinder, openbook_analyze, pair_asymptotic_index_total,
    self_asymptotic_index_total, self_gin_orbit_cylinder, CurveClass, CurveData, OpenBookVerdict, Verdict, Witness,
};
use crate::end::EndData;
use crate::error::{Error, Result};
use crate::generate::Generator;
use crate::local::{det4, intersection_matrix};
use crate::oracle::{self, LoopOperator, Tolerances};
use crate::orbit::{alpha_iter, concat_defect, cz_index, parity_iter, spectral_covering, SimpleOrbit};
use crate::rational::{gcd, Q};

/// Seed and instance scale; `scale = 1` gives the full counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    pub scale: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 20240917, scale: 1.0 }
    }
}

impl Config {
    fn count(&self, full: usize) -> usize {
        ((full as f64 * self.scale).ceil() as usize).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

/// Runs `body` and reports its time on stderr so reports stay deterministic.
fn criterion(id: u32, name: &str, body: impl FnOnce() -> Result<(usize, String)>) -> CriterionResult {
    let start = Instant::now();
    let (passed, checked, detail) = match body() {
        Ok((checked, detail)) => (true, checked, detail),
        Err(e) => (false, 0, format!("{}: {e}", e.code())),
    };
    eprintln!("criterion {id} ({name}): {:.2} s", start.elapsed().as_secs_f64());
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        checked,
        detail,
    }
}

fn fail(message: String) -> Error {
    Error::LawViolation(message)
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(message()))
    }
}

fn elliptic(name: &str, p: i64, q: i64) -> SimpleOrbit {
    SimpleOrbit::elliptic(name, Q::new(p, q)).expect("noninteger theta")
}

fn hyperbolic_orbits() -> Vec<SimpleOrbit> {
    let mut out = Vec::new();
    for a in -2..=2 {
        out.push(SimpleOrbit::even(format!("h{a}"), a));
        out.push(SimpleOrbit::odd(format!("o{a}"), a));
    }
    out
}

/// Iteration laws for every kind and `0 < |k| <= 50`.
pub fn iteration_laws() -> Result<(usize, String)> {
    let mut orbits = vec![elliptic("e57", 5, 7), elliptic("e1217", 12, 17), elliptic("e101", 101, 257)];
    orbits.extend(hyperbolic_orbits());
    let mut checked = 0;
    let mut guarded = 0;
    for o in &orbits {
        for k in (-50..=50).filter(|k| *k != 0) {
            let a = match alpha_iter(o, k) {
                Err(Error::EllipticGuardViolated { .. }) => {
                    guarded += 1;
                    continue;
                }
                other => other?,
            };
            let (p, mu, sb) = (parity_iter(o, k)?, cz_index(o, k)?, spectral_covering(o, k)?);
            let (a_neg, p_neg) = (alpha_iter(o, -k)?, parity_iter(o, -k)?);
            ensure(mu == 2 * a + p, || format!("{}^{k}: mu {mu} != 2 alpha + p", o.name))?;
            ensure(a + a_neg == -p, || format!("{}^{k}: alpha(k) + alpha(-k) = {}", o.name, a + a_neg))?;
            ensure(p == p_neg && mu + cz_index(o, -k)? == 0, || format!("{}^{k}: sign law", o.name))?;
            ensure(sb == gcd(k.abs(), a), || format!("{}^{k}: sigma_bar {sb}", o.name))?;
            checked += 1;
        }
    }
    Ok((checked, format!("{checked} covers, {guarded} guarded multiples skipped")))
}

/// Concatenation defects against their closed forms for `1 <= m, n <= 30`.
pub fn concatenation_defects() -> Result<(usize, String)> {
    let ell = [
        elliptic("c1", 12, 31),
        elliptic("c2", 101, 257),
        elliptic("c3", 7, 37),
        elliptic("c4", -5, 41),
        elliptic("c5", 50, 43),
    ];
    let mut checked = 0;
    for o in ell.iter().chain(hyperbolic_orbits().iter()) {
        for m in 1..=30 {
            for n in 1..=30 {
                let d = concat_defect(o, m, n)?;
                let ok = if o.is_elliptic() {
                    d >= 1
                } else if o.is_even_hyperbolic() {
                    d == 0
                } else {
                    d == (n * (m % 2)).min(m * (n % 2))
                };
                ensure(ok, || format!("{} at ({m}, {n}): defect {d}", o.name))?;
                checked += 1;
            }
        }
    }
    Ok((checked, format!("{checked} (orbit, m, n) triples")))
}

/// Decreasing winding lists drawn from `[alpha - 6, alpha]`.
fn winding_subsets(alpha: i64) -> impl Iterator<Item = Vec<i64>> {
    (1u32..128).map(move |mask| (0..7).filter(|b| mask & (1 << b) != 0).map(|b| alpha - b).collect())
}

/// Parity, sign and zero sets of the end defects over all admissible embedded profiles.
pub fn end_defects() -> Result<(usize, String)> {
    let mut orbits = vec![elliptic("e57", 5, 7), elliptic("e101", 101, 257), elliptic("e413", -4, 13)];
    orbits.extend(hyperbolic_orbits());
    let mut checked = 0;
    for o in &orbits {
        for m in (-12..=12).filter(|m| *m != 0) {
            let Ok(alpha) = alpha_iter(o, m) else { continue };
            for windings in winding_subsets(alpha) {
                let Ok(e) = EndData::new(o.clone(), m, windings, true) else { continue };
                if !e.is_embedded() {
                    continue;
                }
                let (d1, d2) = (e.delta1()?, e.delta2()?);
                let here = || format!("{} m={m} windings {:?}", o.name, e.windings);
                ensure(d1 >= 0 && d1 % 2 == 0, || format!("{}: delta1 = {d1}", here()))?;
                ensure(d2 >= 0 && d2 % 2 == 0, || format!("{}: delta2 = {d2}", here()))?;
                let (d0, sb, n) = (e.d0()?, e.sigma_bar()?, e.windings.len());
                let zero1 = m.abs() == 1 || d0 == 0 || (d0 == 1 && sb == m.abs());
                ensure((d1 == 0) == zero1, || format!("{}: delta1 zero set", here()))?;
                let zero2 = n == 1 || (n == 2 && e.windings[0] - e.windings[1] == 1);
                ensure((d2 == 0) == zero2, || format!("{}: delta2 zero set", here()))?;
                checked += 1;
            }
        }
    }
    Ok((checked, format!("{checked} embedded profiles")))
}

fn verdict_shape(v: Result<Verdict>) -> std::result::Result<(i64, bool, Vec<bool>), &'static str> {
    v.map(|v| (v.quantity, v.holds, v.sets.iter().map(|s| s.holds).collect()))
        .map_err(|e| e.code())
}

/// Quantities that must not change under a trivialization shift.
fn pair_fingerprint(u: &CurveData, v: &CurveData) -> Result<Vec<String>> {
    Ok(vec![
        format!("{:?}", (u.total_cz()?, v.total_cz()?, u.fredholm_index()?, v.fredholm_index()?)),
        format!("{:?}", (gin_cylindrical(u, v)?.total, gin_from_rin(u, v)?, gin_from_witness(u, v)?)),
        format!("{:?}", pair_asymptotic_index_total(u, v)?),
        format!("{:?}", verdict_shape(check_gin_zero(u, v))),
        format!("{:?}", verdict_shape(check_no_isect(u, v))),
    ])
}

fn self_fingerprint(u: &CurveData) -> Result<Vec<String>> {
    Ok(vec![
        format!("{:?}", (u.total_cz()?, u.fredholm_index()?, gin_cylindrical(u, u)?.total)),
        format!("{:?}", (adjunction_defect(u)?, self_asymptotic_index_total(u)?)),
        format!("{:?}", verdict_shape(check_sgin_zero(u))),
        format!("{:?}", verdict_shape(check_embedded_projection(u))),
    ])
}

/// Invariance of indices, intersection numbers, defects and verdicts under trivialization shifts.
pub fn trivialization_invariance(config: &Config) -> Result<(usize, String)> {
    let mut g = Generator::new(config.seed ^ 4);
    let pool = g.pool().to_vec();
    let n = config.count(1000);
    let mut shifts = 0;
    for i in 0..n {
        let (u, v) = g.curve_pair(i % 3 == 0)?;
        let s = g.simple_curve(i % 3 == 0)?;
        let (base, self_base) = (pair_fingerprint(&u, &v)?, self_fingerprint(&s)?);
        for _ in 0..3 {
            let shift = g.shift(&pool, 5);
            let (u2, v2) = (u.retrivialize(&shift, &[&v])?, v.retrivialize(&shift, &[&u])?);
            let moved = pair_fingerprint(&u2, &v2)?;
            ensure(moved == base, || format!("pair {i}: {base:?} became {moved:?} under {shift:?}"))?;
            let s2 = s.retrivialize(&shift, &[])?;
            let moved = self_fingerprint(&s2)?;
            ensure(moved == self_base, || format!("curve {i}: {self_base:?} became {moved:?}"))?;
            shifts += 1;
        }
    }
    Ok((2 * n, format!("{n} pairs and {n} simple curves under {shifts} shifts")))
}

/// Agreement of the witness, cylindrical and relative-intersection routes.
pub fn route_agreement(config: &Config) -> Result<(usize, String)> {
    let mut g = Generator::new(config.seed ^ 5);
    let n = config.count(10_000);
    for i in 0..n {
        let (u, v) = g.curve_pair(i % 2 == 0)?;
        let cyl = gin_cylindrical(&u, &v)?.total;
        let routes = [gin_cylindrical(&v, &u)?.total, gin_from_witness(&u, &v)?, gin_from_rin(&u, &v)?];
        ensure(routes.iter().all(|r| *r == cyl), || format!("instance {i}: cylindrical {cyl}, others {routes:?}"))?;
    }
    Ok((n, format!("{n} pairs")))
}

/// Orbit cylinder self numbers and intersection numbers with curves at hyperbolic orbits.
pub fn orbit_cylinders(config: &Config) -> Result<(usize, String)> {
    let mut checked = 0;
    let mut orbits = vec![elliptic("c1", 12, 31), elliptic("c2", 101, 257), elliptic("c3", -5, 41)];
    orbits.extend(hyperbolic_orbits());
    for o in &orbits {
        for k in 1..=30 {
            let s = self_gin_orbit_cylinder(o, k)?;
            ensure(s == -k * parity_iter(o, k)?, || format!("{}^{k}: self gin {s}", o.name))?;
            checked += 1;
        }
    }
    let mut g = Generator::new(config.seed ^ 6);
    for o in hyperbolic_orbits() {
        for k in 1..=30 {
            let count = 1 + (k as usize) % 3;
            let mut ends = Vec::new();
            for j in 0..count {
                let m = (k + j as i64) % 4 + 1;
                ends.push(g.end(&o, if j % 2 == 0 { m } else { -m }, false)?);
            }
            let int = k % 3;
            let witness = Witness {
                orbit_intersections: [(o.name.clone(), int)].into(),
                ..Witness::default()
            };
            let u = CurveData::connected("u", 0, ends, 0, CurveClass::Holomorphic).with_witness(witness);
            let mut expected = k * int;
            for z in u.ends() {
                let m = z.abs_mult();
                expected += k * z.d0()?;
                if o.is_odd_hyperbolic() {
                    expected += (k * (m % 2) - m * (k % 2)).max(0) / 2;
                }
            }
            let got = gin_orbit_cylinder(&u, &o, k)?;
            ensure(got == expected, || format!("{}^{k}: gin {got}, closed form {expected}", o.name))?;
            checked += 1;
        }
    }
    Ok((checked, format!("{checked} cylinder fixtures")))
}

/// The single-end page over an elliptic binding with rotation surrogate 6/5.
pub fn page_example() -> Result<CurveData> {
    let b = elliptic("b", 6, 5);
    let witness = Witness {
        double_points: Some(0),
        wind_pi: Some(0),
        orbit_intersections: [("b".to_string(), 0)].into(),
        ..Witness::default()
    };
    Ok(CurveData::connected("page", 0, vec![EndData::hol(&b, 1, &[1])?], 0, CurveClass::Holomorphic).with_witness(witness))
}

/// Adjunction defect against the singularity index on witnessed simple curves.
pub fn adjunction_suite(config: &Config) -> Result<(usize, String)> {
    let mut g = Generator::new(config.seed ^ 7);
    let n = config.count(10_000);
    let mut positive = 0;
    for i in 0..n {
        let u = g.simple_curve(i % 4 == 0)?;
        let d = adjunction_defect(&u)?;
        let sing = u.double_points()? + self_asymptotic_index_total(&u)?;
        ensure(d >= 0 && d % 2 == 0 && d == 2 * sing, || format!("curve {i}: defect {d}, sing {sing}"))?;
        positive += (d > 0) as usize;
    }
    let page = page_example()?;
    let (d, ind) = (adjunction_defect(&page)?, page.fredholm_index()?);
    ensure(d == 0 && ind == 2, || format!("page: defect {d}, index {ind}"))?;
    Ok((n + 1, format!("{n} curves ({positive} with positive defect) and the page")))
}

/// Every condition set agrees with the directly computed quantity; the checkers reject disagreement.
pub fn equivalence_coherence(config: &Config) -> Result<(usize, String)> {
    let n = config.count(10_000);
    let mut g = Generator::new(config.seed ^ 8);
    let mut holds = [0usize; 4];
    for i in 0..n {
        let tight = i % 2 == 0;
        let (u, v) = g.curve_pair(tight)?;
        holds[0] += check_gin_zero(&u, &v)?.holds as usize;
        holds[1] += check_no_isect(&u, &v)?.holds as usize;
        let s = g.simple_curve(tight)?;
        holds[2] += check_sgin_zero(&s)?.holds as usize;
        holds[3] += check_embedded_projection(&s)?.holds as usize;
    }
    Ok((
        4 * n,
        format!(
            "{n} instances per theorem; holding verdicts: gin-zero {}, no-isect {}, sgin-zero {}, embedded-projection {}",
            holds[0], holds[1], holds[2], holds[3]
        ),
    ))
}

/// Closed-form `(alpha, parity)` of the `k`-fold cover.
type Prediction = Box<dyn Fn(i64) -> (i64, i64)>;

fn model_cases() -> Vec<(String, LoopOperator, Prediction)> {
    let mut out: Vec<(String, LoopOperator, Prediction)> = Vec::new();
    for theta in [0.3, 0.71, -0.45, 1.13] {
        out.push((
            format!("elliptic {theta}"),
            LoopOperator::elliptic(theta),
            Box::new(move |k| ((k as f64 * theta).floor() as i64, 1)),
        ));
    }
    for d in [-1, 0, 1] {
        out.push((
            format!("even hyperbolic {d}"),
            LoopOperator::even_hyperbolic(d, 1.0),
            Box::new(move |k| (k * d, 0)),
        ));
        out.push((
            format!("odd hyperbolic {d}"),
            LoopOperator::odd_hyperbolic(d, 1.0),
            Box::new(move |k| ((k * (2 * d + 1)).div_euclid(2), k % 2)),
        ));
    }
    out
}

/// Spectral laws, closed-form spectra, the cover law and the model families at truncation 64.
pub fn spectral_oracle(config: &Config, tol: &Tolerances) -> Result<(usize, String)> {
    const N: usize = 64;
    const WINDOW: f64 = 40.0;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 9);
    let randoms: Vec<LoopOperator> = (0..20).map(|i| LoopOperator::random(&mut rng, 1 + i % 4, 1.0)).collect();
    for op in &randoms {
        oracle::verify_spectrum_laws(op, N, WINDOW, tol)?;
    }

    let mut closed_error: f64 = 0.0;
    for theta in [0.3, -0.45, 0.71] {
        for p in oracle::eigenpairs(&LoopOperator::elliptic(theta), N, WINDOW, tol)? {
            closed_error = closed_error.max((p.eigenvalue - 2.0 * PI * (p.winding as f64 - theta)).abs());
        }
    }
    for a in [1.0, 0.5] {
        for p in oracle::eigenpairs(&LoopOperator::even_hyperbolic(0, a), N, WINDOW, tol)? {
            let n = p.winding as f64;
            let exact = (a * a + 4.0 * PI * PI * n * n).sqrt();
            closed_error = closed_error.max((p.eigenvalue.abs() - exact).abs());
        }
    }
    ensure(closed_error < 1e-8, || format!("closed-form spectra off by {closed_error:e}"))?;

    let mut cover_error: f64 = 0.0;
    for op in randoms.iter().take(4).chain([LoopOperator::odd_hyperbolic(0, 1.0)].iter()) {
        for k in [2, 3, 4] {
            cover_error = cover_error.max(oracle::verify_cover_law(op, k, N, WINDOW, tol)?.max_error);
        }
    }

    let mut models = 0;
    for (name, op, predict) in model_cases() {
        for k in 1..=8i64 {
            let expected = predict(k);
            if name.starts_with("elliptic") && (k as f64 * op.constant.a / (2.0 * PI)).fract().abs() < 1e-9 {
                continue;
            }
            let got = oracle::alpha_parity_numeric(&op.cover(k as usize), N, tol)?;
            ensure(got == expected, || format!("{name} cover {k}: numeric {got:?}, closed form {expected:?}"))?;
            models += 1;
        }
    }
    Ok((
        20 + models,
        format!(
            "20 random loops; closed-form error {closed_error:.1e}; cover error {cover_error:.1e}; {models} model covers"
        ),
    ))
}

/// Rotation counts of curves with binding-only positive limits against the cylindrical number.
pub fn open_books(config: &Config) -> Result<(usize, String)> {
    let mut g = Generator::new(config.seed ^ 10);
    let n = config.count(1000);
    for i in 0..n {
        let (ob, u) = g.open_book()?;
        match openbook_analyze(&u, &ob)? {
            OpenBookVerdict::MultipleCover {
                gin,
                gin_formula,
                exceeds_inverse_rotation,
                mult,
                ..
            } => {
                ensure(gin == gin_formula, || format!("book {i}: gin {gin}, formula {gin_formula}"))?;
                ensure(exceeds_inverse_rotation && mult > 1, || format!("book {i}: cover {mult} within 1/rot"))?;
            }
            other => return Err(fail(format!("book {i}: unexpected alternative {other:?}"))),
        }
    }
    Ok((n, format!("{n} open books")))
}

/// Determinant of the local intersection matrix.
pub fn local_determinant() -> Result<(usize, String)> {
    let det = det4(intersection_matrix(Q::from_integer(-1)));
    ensure(det == Q::from_integer(-1), || format!("determinant {det}"))?;
    Ok((1, "det = -1".into()))
}

pub const NAMES: [&str; 11] = [
    "iteration laws",
    "concatenation defects",
    "end defect parity",
    "trivialization invariance",
    "route agreement",
    "orbit cylinders",
    "adjunction",
    "equivalence coherence",
    "spectral oracle",
    "open books",
    "local determinant",
];

pub fn run_one(id: u32, config: &Config) -> CriterionResult {
    let tol = Tolerances::default();
    let name = NAMES[(id - 1) as usize];
    match id {
        1 => criterion(id, name, iteration_laws),
        2 => criterion(id, name, concatenation_defects),
        3 => criterion(id, name, end_defects),
        4 => criterion(id, name, || trivialization_invariance(config)),
        5 => criterion(id, name, || route_agreement(config)),
        6 => criterion(id, name, || orbit_cylinders(config)),
        7 => criterion(id, name, || adjunction_suite(config)),
        8 => criterion(id, name, || equivalence_coherence(config)),
        9 => criterion(id, name, || spectral_oracle(config, &tol)),
        10 => criterion(id, name, || open_books(config)),
        _ => criterion(id, name, local_determinant),
    }
}

pub fn run_all(config: &Config) -> Vec<CriterionResult> {
    (1..=11).map(|id| run_one(id, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scale_suite_passes() {
        let config = Config { seed: 1, scale: 0.01 };
        for id in [1, 2, 3, 4, 5, 6, 7, 8, 10, 11] {
            let r = run_one(id, &config);
            assert!(r.passed, "{r:?}");
        }
    }
}
