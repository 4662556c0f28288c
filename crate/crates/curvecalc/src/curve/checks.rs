//! Evaluators for the equivalence theorems, direction of approach and open books.
//! Every condition set is evaluated on its own; a verdict is returned only when all
//! sets agree with the directly computed quantity.

use serde::{Deserialize, Serialize};

use super::{
    adjunction_defect, gin_cylindrical, rshift_int_bound, self_asymptotic_index_total,
    self_rshift_bound, self_rshift_bound_windpi, windpi_consistency, CurveClass, CurveData,
};
use crate::end::EndData;
use crate::error::{Error, Result};
use crate::orbit::{rotation_index, SimpleOrbit};
use crate::rational::{self, Q};

/// Truth value of one condition set with the clauses that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub set: String,
    pub holds: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: String,
    /// The directly computed quantity whose vanishing the theorem characterizes.
    pub quantity: i64,
    pub holds: bool,
    pub sets: Vec<ClauseReport>,
}

struct Clauses {
    set: &'static str,
    failures: Vec<String>,
}

impl Clauses {
    fn new(set: &'static str) -> Self {
        Clauses {
            set,
            failures: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, clause: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(clause());
        }
    }

    fn finish(self) -> ClauseReport {
        ClauseReport {
            set: self.set.to_string(),
            holds: self.failures.is_empty(),
            failures: self.failures,
        }
    }
}

fn verdict(theorem: &str, quantity: i64, sets: Vec<ClauseReport>) -> Result<Verdict> {
    let holds = quantity == 0;
    if let Some(bad) = sets.iter().find(|s| s.holds != holds) {
        let detail = bad
            .failures
            .first()
            .cloned()
            .unwrap_or_else(|| "all clauses hold".to_string());
        return Err(Error::InconsistentWitness(format!(
            "{theorem}: set {} is {} while the quantity is {quantity} ({detail})",
            bad.set, bad.holds
        )));
    }
    Ok(Verdict {
        theorem: theorem.to_string(),
        quantity,
        holds,
        sets,
    })
}

fn require_class(c: &CurveData, class: CurveClass) -> Result<()> {
    if c.class != class {
        return Err(Error::WrongClass(c.name.clone()));
    }
    Ok(())
}

fn ratio(value: i64, end: &EndData) -> Q {
    Q::new(value, end.mult)
}

fn abs_ratio(value: i64, end: &EndData) -> Q {
    Q::new(value, end.abs_mult())
}

fn at(c: &CurveData, i: usize) -> String {
    format!("{}:{i}", c.name)
}

/// Limit clauses: `u` misses the positive limits of `v` and `v` misses the negative limits of `u`.
fn one_sided_limits(c: &mut Clauses, u: &CurveData, v: &CurveData) -> Result<()> {
    for (j, w) in v.ends().enumerate().filter(|(_, w)| w.mult > 0) {
        let n = u.orbit_intersection(&w.orbit.name)?;
        c.require(n == 0, || format!("int({}, {}) = {n} at positive limit {}", w.orbit.name, u.name, at(v, j)));
    }
    for (i, z) in u.ends().enumerate().filter(|(_, z)| z.mult < 0) {
        let n = v.orbit_intersection(&z.orbit.name)?;
        c.require(n == 0, || format!("int({}, {}) = {n} at negative limit {}", z.orbit.name, v.name, at(u, i)));
    }
    Ok(())
}

/// Limit clauses in both directions for every limit.
fn all_limits(c: &mut Clauses, u: &CurveData, v: &CurveData) -> Result<()> {
    for (x, y) in [(u, v), (v, u)] {
        for (j, w) in y.ends().enumerate() {
            let n = x.orbit_intersection(&w.orbit.name)?;
            c.require(n == 0, || format!("int({}, {}) = {n} at limit {}", w.orbit.name, x.name, at(y, j)));
        }
    }
    Ok(())
}

fn mixed_even(c: &mut Clauses, u: &CurveData, i: usize, z: &EndData, v: &CurveData, j: usize, w: &EndData) -> Result<()> {
    c.require(z.d0()? == 0 && w.d0()? == 0, || {
        format!("mixed pair ({}, {}) has nonzero d0", at(u, i), at(v, j))
    });
    c.require(z.parity()? == 0 && w.parity()? == 0, || {
        format!("mixed pair ({}, {}) is not at even covers", at(u, i), at(v, j))
    });
    Ok(())
}

fn shared_pairs<'a>(u: &'a CurveData, v: &'a CurveData) -> Vec<(usize, &'a EndData, usize, &'a EndData)> {
    let mut out = Vec::new();
    for (i, z) in u.ends().enumerate() {
        for (j, w) in v.ends().enumerate() {
            if z.same_orbit(w) {
                out.push((i, z, j, w));
            }
        }
    }
    out
}

fn symmetric(name: &str, a: i64, b: i64, u: &CurveData, v: &CurveData) -> Result<()> {
    if a != b {
        return Err(Error::InconsistentWitness(format!(
            "{name}({}, {}) = {a} but {name}({}, {}) = {b}",
            u.name, v.name, v.name, u.name
        )));
    }
    Ok(())
}

fn gin_zero_one_sided(u: &CurveData, v: &CurveData) -> Result<Clauses> {
    let mut c = Clauses::new("one_sided_limits");
    one_sided_limits(&mut c, u, v)?;
    for (i, z, j, w) in shared_pairs(u, v) {
        let (az, aw) = (z.alpha()?, w.alpha()?);
        match (z.mult > 0, w.mult > 0) {
            (true, true) => {
                c.require(z.d0()? == 0, || format!("d0 at {} is nonzero", at(u, i)));
                c.require(ratio(az, z) >= ratio(aw, w), || {
                    format!("alpha ratio at {} below that at {}", at(u, i), at(v, j))
                });
            }
            (false, false) => {
                c.require(w.d0()? == 0, || format!("d0 at {} is nonzero", at(v, j)));
                c.require(abs_ratio(aw, w) >= abs_ratio(az, z), || {
                    format!("alpha ratio at {} below that at {}", at(v, j), at(u, i))
                });
            }
            (false, true) => mixed_even(&mut c, u, i, z, v, j, w)?,
            (true, false) => {}
        }
    }
    Ok(c)
}

/// Conditions for `gin(u, v) = 0`.
pub fn check_gin_zero(u: &CurveData, v: &CurveData) -> Result<Verdict> {
    require_class(u, CurveClass::Holomorphic)?;
    require_class(v, CurveClass::Holomorphic)?;
    let gin = gin_cylindrical(u, v)?.total;
    symmetric("gin", gin, gin_cylindrical(v, u)?.total, u, v)?;

    let two = gin_zero_one_sided(u, v)?.finish();

    let mut three = Clauses::new("all_limits");
    all_limits(&mut three, u, v)?;
    for (i, z, j, w) in shared_pairs(u, v) {
        let pair = || format!("({}, {})", at(u, i), at(v, j));
        three.require(z.d0()? == 0 && w.d0()? == 0, || format!("pair {} has nonzero d0", pair()));
        if z.orbit.is_elliptic() {
            three.require(z.sign() == w.sign(), || format!("elliptic pair {} has opposite signs", pair()));
            three.require(ratio(z.alpha()?, z) == ratio(w.alpha()?, w), || {
                format!("elliptic pair {} has unequal alpha ratios", pair())
            });
        } else if z.orbit.is_odd_hyperbolic() {
            three.require(
                (z.mult % 2 == 0 && w.mult % 2 == 0) || z.mult == w.mult,
                || format!("odd hyperbolic pair {} is neither doubly even nor equal", pair()),
            );
        }
    }
    verdict("gin-zero", gin, vec![two, three.finish()])
}

/// Conditions for the projections of `u` and `v` to be disjoint.
pub fn check_no_isect(u: &CurveData, v: &CurveData) -> Result<Verdict> {
    require_class(u, CurveClass::Holomorphic)?;
    require_class(v, CurveClass::Holomorphic)?;
    let bound = rshift_int_bound(u, v)?.total;
    symmetric("R-shift bound", bound, rshift_int_bound(v, u)?.total, u, v)?;

    let mut two = Clauses::new("one_sided_limits");
    one_sided_limits(&mut two, u, v)?;
    for (i, z, j, w) in shared_pairs(u, v) {
        if z.sign() == w.sign() {
            two.require(ratio(z.wind_infty()?, z) >= ratio(w.wind_infty()?, w), || {
                format!("winding ratio at {} below that at {}", at(u, i), at(v, j))
            });
        } else if z.mult < 0 {
            mixed_even(&mut two, u, i, z, v, j, w)?;
        }
    }

    let mut three = Clauses::new("all_limits");
    all_limits(&mut three, u, v)?;
    for (i, z, j, w) in shared_pairs(u, v) {
        three.require(ratio(z.wind_infty()?, z) == ratio(w.wind_infty()?, w), || {
            format!("winding ratios differ at ({}, {})", at(u, i), at(v, j))
        });
    }
    verdict("no-isect", bound, vec![two.finish(), three.finish()])
}

fn require_simple_holomorphic(u: &CurveData) -> Result<()> {
    require_class(u, CurveClass::Holomorphic)?;
    if !u.simple {
        return Err(Error::NotSimple(u.name.clone()));
    }
    Ok(())
}

/// Singularity index `delta + delta_infty`, checked against the adjunction defect.
fn checked_sing(u: &CurveData) -> Result<i64> {
    let sing = u.double_points()? + self_asymptotic_index_total(u)?;
    let defect = adjunction_defect(u)?;
    if defect != 2 * sing {
        return Err(Error::InconsistentWitness(format!(
            "adjunction defect {defect} of `{}` differs from twice the singularity index {sing}",
            u.name
        )));
    }
    Ok(sing)
}

fn distinct_shared(u: &CurveData) -> Vec<(usize, &EndData, usize, &EndData)> {
    shared_pairs(u, u).into_iter().filter(|(i, _, j, _)| i < j).collect()
}

/// Conditions for `gin(u, u) = 0` of a simple curve.
pub fn check_sgin_zero(u: &CurveData) -> Result<Verdict> {
    require_simple_holomorphic(u)?;
    let gin = gin_cylindrical(u, u)?.total;
    let windpi = windpi_consistency(u)?;
    let sing = checked_sing(u)?;

    let mut one = Clauses::new("direct");
    one.require(gin == 0, || format!("gin = {gin}"));

    let mut two = Clauses::new("limits_and_ratios");
    for (i, z) in u.ends().enumerate() {
        let n = u.orbit_intersection(&z.orbit.name)?;
        two.require(n == 0, || format!("int({}, {}) = {n}", z.orbit.name, u.name));
        two.require(z.d0()? == 0, || format!("d0 at {} is nonzero", at(u, i)));
    }
    for (i, z, j, w) in distinct_shared(u) {
        two.require(ratio(z.alpha()?, z) == ratio(w.alpha()?, w), || {
            format!("alpha ratios differ at ({}, {})", at(u, i), at(u, j))
        });
    }

    let sigma_clauses = |c: &mut Clauses| -> Result<()> {
        for (i, z) in u.ends().enumerate() {
            let s = z.sigma_bar()?;
            c.require(s == 1, || format!("sigma_bar at {} is {s}", at(u, i)));
        }
        Ok(())
    };

    let mut three = Clauses::new("index_side");
    let index_side = u.fredholm_index()? - u.euler_characteristic() + u.num_even()?;
    three.require(index_side == 0, || format!("ind - chi + #even = {index_side}"));
    sigma_clauses(&mut three)?;
    three.require(sing == 0, || format!("sing = {sing}"));

    let mut four = Clauses::new("wind_pi");
    four.require(windpi.wind_pi == 0, || format!("wind_pi = {}", windpi.wind_pi));
    four.require(windpi.d0 == 0, || format!("d0 = {}", windpi.d0));
    sigma_clauses(&mut four)?;
    four.require(sing == 0, || format!("sing = {sing}"));

    verdict(
        "sgin-zero",
        gin,
        vec![one.finish(), two.finish(), three.finish(), four.finish()],
    )
}

/// Conditions for the projection of a connected simple curve to be an embedding.
pub fn check_embedded_projection(u: &CurveData) -> Result<Verdict> {
    require_simple_holomorphic(u)?;
    if !u.is_connected() {
        return Err(Error::NotConnected(u.name.clone()));
    }
    let bound = self_rshift_bound(u)?.total;
    let alt = self_rshift_bound_windpi(u)?;
    if bound != alt {
        return Err(Error::InconsistentWitness(format!(
            "self R-shift bound of `{}` is {bound} cylindrically but {alt} from wind_pi",
            u.name
        )));
    }

    let mut two = Clauses::new("shift_bound");
    two.require(bound == 0, || format!("generic int(u, u_c) = {bound}"));

    let mut three = Clauses::new("limits_and_windings");
    for z in u.ends() {
        let n = u.orbit_intersection(&z.orbit.name)?;
        three.require(n == 0, || format!("int({}, {}) = {n}", z.orbit.name, u.name));
    }
    for (i, z, j, w) in distinct_shared(u) {
        three.require(ratio(z.wind_infty()?, z) == ratio(w.wind_infty()?, w), || {
            format!("winding ratios differ at ({}, {})", at(u, i), at(u, j))
        });
    }

    let mut four = Clauses::new("local_data");
    let delta = u.double_points()?;
    four.require(delta == 0, || format!("{delta} double points"));
    let wind_pi = u.wind_pi()?;
    four.require(wind_pi == 0, || format!("wind_pi = {wind_pi}"));
    for (i, z) in u.ends().enumerate() {
        let cov = z.cov_e1()?;
        four.require(cov == 1, || format!("cov(e1) at {} is {cov}", at(u, i)));
    }
    for (i, z, j, w) in distinct_shared(u) {
        if z.sign() != w.sign() {
            continue;
        }
        let iinf = u.self_pair(i, j)?.asymptotic_intersection()?;
        let extremal = -(w.abs_mult() * z.wind_infty()?).max(z.abs_mult() * w.wind_infty()?);
        four.require(iinf == extremal, || {
            format!("i_infty at ({}, {}) is {iinf}, not {extremal}", at(u, i), at(u, j))
        });
    }
    verdict("embedded-projection", bound, vec![two.finish(), three.finish(), four.finish()])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionVerdict {
    pub flagged: bool,
    pub pair_index: i64,
    pub gin: i64,
    /// `Some(true)` when the flag forces `gin >= 1`; `None` without a flag.
    pub gin_positive: Option<bool>,
}

/// Positivity of `gin(u, v)` from ends `z` of `u` and `w` of `v` approaching in the same direction.
pub fn same_direction_positivity(
    u: &CurveData,
    z: usize,
    v: &CurveData,
    w: usize,
    flagged: bool,
) -> Result<DirectionVerdict> {
    let (ez, ew) = (u.end(z)?, v.end(w)?);
    if !ez.same_orbit(ew) || ez.sign() != ew.sign() {
        return Err(Error::MismatchedOrbits(format!("({}, {})", at(u, z), at(v, w))));
    }
    let eligible = ez.orbit.is_even_hyperbolic()
        || (ez.orbit.is_odd_hyperbolic() && ez.mult % 2 == 0 && ew.mult % 2 == 0);
    if !eligible {
        return Err(Error::OrbitNotEligible);
    }
    let pair = if u.name == v.name {
        u.self_pair(z, w)?
    } else {
        u.cross_pair(z, v, w)?
    };
    let pair_index = pair.asymptotic_index()?;
    let gin = gin_cylindrical(u, v)?.total;
    if !flagged {
        return Ok(DirectionVerdict {
            flagged,
            pair_index,
            gin,
            gin_positive: None,
        });
    }
    if pair_index == 0 {
        return Err(Error::ProfileContradictsFlag);
    }
    if gin < 1 {
        return Err(Error::InconsistentWitness(format!(
            "same-direction ends force gin >= 1 but gin({}, {}) = {gin}",
            u.name, v.name
        )));
    }
    Ok(DirectionVerdict {
        flagged,
        pair_index,
        gin,
        gin_positive: Some(true),
    })
}

/// Binding orbits and one page of a stable holomorphic open book.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBookData {
    pub name: String,
    pub bindings: Vec<SimpleOrbit>,
    pub page: CurveData,
}

impl OpenBookData {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidOpenBook(m));
        if self.bindings.is_empty() {
            return bad("no binding orbits".into());
        }
        if let Some(b) = self.bindings.iter().find(|b| !b.is_elliptic()) {
            return bad(format!("binding `{}` is not elliptic", b.name));
        }
        let page = &self.page;
        if !page.is_connected() || page.components[0].genus != 0 {
            return bad("page is not a connected genus zero curve".into());
        }
        for end in page.ends() {
            if end.mult != 1 {
                return bad(format!("page puncture at `{}` has multiplicity {}", end.orbit.name, end.mult));
            }
            if !self.bindings.iter().any(|b| b.name == end.orbit.name) {
                return bad(format!("page puncture at non-binding `{}`", end.orbit.name));
            }
        }
        for b in &self.bindings {
            if !page.ends().any(|e| e.orbit.name == b.name) {
                return bad(format!("binding `{}` bounds no page puncture", b.name));
            }
        }
        let ind = page.fredholm_index().map_err(|e| Error::InvalidOpenBook(e.to_string()))?;
        if ind != 2 {
            return bad(format!("page has index {ind}, expected 2"));
        }
        let d0 = page.d0().map_err(|e| Error::InvalidOpenBook(e.to_string()))?;
        if d0 != 0 {
            return bad(format!("page has d0 = {d0}, expected 0"));
        }
        Ok(())
    }

    fn binding(&self, name: &str) -> Option<&SimpleOrbit> {
        self.bindings.iter().find(|b| b.name == name)
    }

    /// The page with `int(binding, page) = 0` for every binding.
    fn page_with_binding_witness(&self) -> CurveData {
        let mut page = self.page.clone();
        let witness = page.witness.get_or_insert_with(Default::default);
        for b in &self.bindings {
            witness.orbit_intersections.insert(b.name.clone(), 0);
        }
        page
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "alternative", rename_all = "snake_case")]
pub enum OpenBookVerdict {
    /// A positive puncture limits to an orbit that is not a binding.
    NonBindingLimit { puncture: usize, orbit: String },
    /// All positive limits are binding covers and one of them is multiply covered.
    MultipleCover {
        puncture: usize,
        mult: i64,
        rot: String,
        gin: i64,
        gin_formula: i64,
        exceeds_inverse_rotation: bool,
    },
}

/// Which alternative of the open book theorem `u` realizes.
pub fn openbook_analyze(u: &CurveData, ob: &OpenBookData) -> Result<OpenBookVerdict> {
    ob.validate()?;
    for (i, z) in u.ends().enumerate() {
        if z.mult > 0 && ob.binding(&z.orbit.name).is_none() {
            return Ok(OpenBookVerdict::NonBindingLimit {
                puncture: i,
                orbit: z.orbit.name.clone(),
            });
        }
    }
    let page = ob.page_with_binding_witness();
    let gin = gin_cylindrical(&page, u)?.total;
    let mut gin_formula = 0;
    let mut best: Option<(usize, i64, Q, i64)> = None;
    for (i, z) in u.ends().enumerate().filter(|(_, z)| z.mult > 0) {
        let rot = rotation_index(&z.orbit)?;
        let count = (Q::from_integer(z.mult) * rot).floor().to_integer();
        let pages = page.ends().filter(|w| w.same_orbit(z)).count() as i64;
        gin_formula += pages * count;
        if count >= 1 && best.is_none() {
            best = Some((i, z.mult, rot, count));
        }
    }
    if gin != gin_formula {
        return Err(Error::InconsistentInput(format!(
            "gin(page, {}) = {gin} but the rotation formula gives {gin_formula}",
            u.name
        )));
    }
    match best {
        None => Err(Error::InconsistentInput(format!(
            "gin(page, {}) = 0: the curve must be a page or meet every page",
            u.name
        ))),
        Some((puncture, mult, rot, _)) => Ok(OpenBookVerdict::MultipleCover {
            puncture,
            mult,
            rot: rational::fmt(rot),
            gin,
            gin_formula,
            exceeds_inverse_rotation: Q::from_integer(mult) > rot.recip(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{PairWitness, Witness};

    fn witness(ints: &[(&str, i64)]) -> Witness {
        Witness {
            double_points: Some(0),
            wind_pi: Some(0),
            orbit_intersections: ints.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            ..Witness::default()
        }
    }

    fn binding() -> SimpleOrbit {
        SimpleOrbit::elliptic("b", Q::new(6, 5)).unwrap()
    }

    fn page() -> CurveData {
        CurveData::connected("page", 0, vec![EndData::hol(&binding(), 1, &[1]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("b", 0)]))
    }

    #[test]
    fn page_is_sgin_zero_and_embedded() {
        let v = check_sgin_zero(&page()).unwrap();
        assert!(v.holds);
        assert_eq!(v.sets.len(), 4);
        assert!(v.sets.iter().all(|s| s.holds));
        assert!(check_embedded_projection(&page()).unwrap().holds);
    }

    #[test]
    fn distinct_planes_have_zero_gin() {
        let (h, g) = (SimpleOrbit::even("h", 0), SimpleOrbit::even("g", 0));
        let u = CurveData::connected("u", 0, vec![EndData::hol(&h, 1, &[0]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("h", 0), ("g", 0)]));
        let v = CurveData::connected("v", 0, vec![EndData::hol(&g, 1, &[0]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("h", 0), ("g", 0)]));
        let verdict = check_gin_zero(&u, &v).unwrap();
        assert!(verdict.holds && verdict.sets.iter().all(|s| s.holds));
        assert!(check_no_isect(&u, &v).unwrap().holds);
    }

    #[test]
    fn elliptic_mixed_pair_fails_gin_zero() {
        let e = SimpleOrbit::elliptic("e", Q::new(5, 7)).unwrap();
        let h = SimpleOrbit::even("h", 0);
        let ends = vec![EndData::hol(&h, 1, &[0]).unwrap(), EndData::hol(&e, -1, &[-1]).unwrap()];
        let u = CurveData::connected("u", 0, ends, 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("e", 0), ("h", 0)]));
        let v = CurveData::connected("v", 0, vec![EndData::hol(&e, 1, &[0]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("e", 0), ("h", 1)]));
        let verdict = check_gin_zero(&u, &v).unwrap();
        assert!(!verdict.holds);
        assert!(verdict.sets[0].failures.iter().any(|f| f.contains("even covers")));
    }

    fn double_cover_pair(l: Vec<i64>) -> (CurveData, CurveData) {
        let h = SimpleOrbit::even("h", 1);
        let mut u = CurveData::connected("u", 0, vec![EndData::hol(&h, 2, &[2, 1]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("h", 1)]));
        u.witness.as_mut().unwrap().pair_profiles.push(PairWitness {
            other: Some("v".into()),
            a: 0,
            b: 0,
            relative_windings: l,
        });
        let v = CurveData::connected("v", 0, vec![EndData::hol(&h, 2, &[2, 1]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness(&[("h", 1)]));
        (u, v)
    }

    #[test]
    fn same_direction_examples() {
        let (u, v) = double_cover_pair(vec![1, 2]);
        let d = same_direction_positivity(&u, 0, &v, 0, true).unwrap();
        assert_eq!(d.pair_index, 1);
        assert!(d.gin >= 1);
        let (u, v) = double_cover_pair(vec![2, 2]);
        assert!(matches!(
            same_direction_positivity(&u, 0, &v, 0, true),
            Err(Error::ProfileContradictsFlag)
        ));
        assert_eq!(same_direction_positivity(&u, 0, &v, 0, false).unwrap().gin_positive, None);
    }

    #[test]
    fn openbook_examples() {
        let e = SimpleOrbit::elliptic("b", Q::new(12, 7)).unwrap();
        let page = CurveData::connected("page", 0, vec![EndData::hol(&e, 1, &[1]).unwrap()], 0, CurveClass::Holomorphic);
        let ob = OpenBookData {
            name: "ob".into(),
            bindings: vec![e.clone()],
            page,
        };
        let h = SimpleOrbit::even("h", 0);
        let far = CurveData::connected("far", 0, vec![EndData::hol(&h, 1, &[0]).unwrap()], 0, CurveClass::Holomorphic);
        assert!(matches!(
            openbook_analyze(&far, &ob).unwrap(),
            OpenBookVerdict::NonBindingLimit { .. }
        ));
        let u = CurveData::connected("u", 0, vec![EndData::hol(&e, 2, &[3]).unwrap()], 0, CurveClass::Holomorphic);
        match openbook_analyze(&u, &ob).unwrap() {
            OpenBookVerdict::MultipleCover { gin, mult, exceeds_inverse_rotation, .. } => {
                assert_eq!((gin, mult, exceeds_inverse_rotation), (1, 2, true));
            }
            other => panic!("unexpected {other:?}"),
        }
        let simple = CurveData::connected("s", 0, vec![EndData::hol(&e, 1, &[1]).unwrap()], 0, CurveClass::Holomorphic);
        assert!(matches!(openbook_analyze(&simple, &ob), Err(Error::InconsistentInput(_))));
    }
}
