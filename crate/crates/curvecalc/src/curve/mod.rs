//! Curve-level data, topological invariants and trivialization changes.

mod adjunction;
mod checks;
mod concat;
mod gin;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::end::{EndData, PairProfile};
use crate::error::{Error, Result};
use crate::orbit::TrivializationShift;

pub use adjunction::{
    adjunction_defect, adjunction_defect_index_form, self_asymptotic_index_total,
    self_gin_from_witness, windpi_consistency, WindPiReport,
};
pub use checks::{
    check_embedded_projection, check_gin_zero, check_no_isect, check_sgin_zero, openbook_analyze,
    same_direction_positivity, ClauseReport, DirectionVerdict, OpenBookData, OpenBookVerdict,
    Verdict,
};
pub use concat::{concat_gin, ConcatReport, Matching};
pub use gin::{
    gin_cylindrical, gin_from_rin, gin_from_witness, gin_orbit_cylinder, genhol_positivity,
    omega_term, pair_asymptotic_index_total, rshift_int_bound, self_gin_orbit_cylinder,
    self_rshift_bound, self_rshift_bound_windpi, GinBreakdown, Term, TermKind,
};

/// Analytic class of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveClass {
    Holomorphic,
    GeneralizedHolomorphic,
    Smooth,
}

impl CurveClass {
    /// Whether ends carry the leading-term guarantee `d0 >= 0`.
    pub fn has_holomorphic_ends(self) -> bool {
        !matches!(self, CurveClass::Smooth)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub genus: i64,
    pub punctures: Vec<EndData>,
}

/// Relative winding data for two ends, addressed by flattened puncture index.
/// With `other` unset both ends belong to the owning curve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    pub a: usize,
    pub b: usize,
    pub relative_windings: Vec<i64>,
}

/// Declared geometric data that the asymptotic analysis would provide.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_points: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wind_pi: Option<i64>,
    /// `int(gamma, u)` keyed by simple orbit name.
    #[serde(default)]
    pub orbit_intersections: BTreeMap<String, i64>,
    /// `int(u, v)` keyed by the other curve.
    #[serde(default)]
    pub pair_intersections: BTreeMap<String, i64>,
    /// Relative intersection number in the reference trivialization, keyed by the other curve.
    #[serde(default)]
    pub relative_intersections: BTreeMap<String, i64>,
    #[serde(default)]
    pub pair_profiles: Vec<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub name: String,
    pub components: Vec<Component>,
    pub c1_rel: i64,
    pub class: CurveClass,
    #[serde(default = "yes")]
    pub simple: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn yes() -> bool {
    true
}

impl CurveData {
    pub fn new(name: impl Into<String>, components: Vec<Component>, c1_rel: i64, class: CurveClass) -> Self {
        CurveData {
            name: name.into(),
            components,
            c1_rel,
            class,
            simple: true,
            witness: None,
        }
    }

    /// Connected genus-`genus` curve.
    pub fn connected(
        name: impl Into<String>,
        genus: i64,
        punctures: Vec<EndData>,
        c1_rel: i64,
        class: CurveClass,
    ) -> Self {
        Self::new(name, vec![Component { genus, punctures }], c1_rel, class)
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.components {
            if c.genus < 0 {
                return Err(Error::InvalidProfile(format!(
                    "curve `{}` has negative genus",
                    self.name
                )));
            }
        }
        let hol = self.class.has_holomorphic_ends();
        for end in self.ends() {
            if end.holomorphic != hol {
                return Err(Error::InvalidProfile(format!(
                    "curve `{}`: end holomorphic flag disagrees with curve class",
                    self.name
                )));
            }
            end.validate()?;
        }
        if let Some(w) = &self.witness {
            let counts = w
                .double_points
                .iter()
                .chain(w.wind_pi.iter())
                .chain(w.orbit_intersections.values())
                .chain(w.pair_intersections.values());
            if counts.into_iter().any(|&n| n < 0) && hol {
                return Err(Error::InconsistentWitness(format!(
                    "curve `{}` declares a negative count",
                    self.name
                )));
            }
            let n = self.num_punctures();
            for p in w.pair_profiles.iter().filter(|p| p.other.is_none()) {
                if p.a >= n || p.b >= n || p.a == p.b {
                    return Err(Error::InvalidProfile(format!(
                        "curve `{}`: self pair ({}, {}) is not a pair of distinct punctures",
                        self.name, p.a, p.b
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// All punctures in flattened order.
    pub fn ends(&self) -> impl Iterator<Item = &EndData> {
        self.components.iter().flat_map(|c| c.punctures.iter())
    }

    pub fn end(&self, index: usize) -> Result<&EndData> {
        self.ends().nth(index).ok_or_else(|| {
            Error::InvalidProfile(format!("curve `{}` has no puncture {index}", self.name))
        })
    }

    pub fn num_punctures(&self) -> usize {
        self.components.iter().map(|c| c.punctures.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|c| 2 - 2 * c.genus).sum()
    }

    pub fn num_odd(&self) -> Result<i64> {
        self.ends().map(EndData::parity).sum()
    }

    pub fn num_even(&self) -> Result<i64> {
        Ok(self.num_punctures() as i64 - self.num_odd()?)
    }

    /// `mu(u) = 2 c1 + sum mu(gamma_z^{m_z})`.
    pub fn total_cz(&self) -> Result<i64> {
        let mut mu = 2 * self.c1_rel;
        for end in self.ends() {
            mu += 2 * end.alpha()? + end.parity()?;
        }
        Ok(mu)
    }

    pub fn fredholm_index(&self) -> Result<i64> {
        Ok(self.total_cz()? - self.euler_characteristic() + self.num_punctures() as i64)
    }

    pub fn sigma_bar(&self) -> Result<i64> {
        self.ends().map(EndData::sigma_bar).sum()
    }

    pub fn d0(&self) -> Result<i64> {
        self.ends().map(EndData::d0).sum()
    }

    pub fn witness(&self) -> Result<&Witness> {
        self.witness
            .as_ref()
            .ok_or_else(|| Error::MissingWitness(format!("curve `{}` has no witness", self.name)))
    }

    /// `int(gamma, u)` for a simple orbit.
    pub fn orbit_intersection(&self, orbit: &str) -> Result<i64> {
        self.witness()?
            .orbit_intersections
            .get(orbit)
            .copied()
            .ok_or_else(|| Error::MissingWitness(format!("int({orbit}, {})", self.name)))
    }

    pub fn double_points(&self) -> Result<i64> {
        self.witness()?
            .double_points
            .ok_or_else(|| Error::MissingWitness(format!("double points of `{}`", self.name)))
    }

    pub fn wind_pi(&self) -> Result<i64> {
        self.witness()?
            .wind_pi
            .ok_or_else(|| Error::MissingWitness(format!("wind_pi of `{}`", self.name)))
    }

    /// Self pair profile of distinct punctures `a`, `b`, oriented as requested.
    pub fn self_pair(&self, a: usize, b: usize) -> Result<PairProfile> {
        let w = self.witness()?;
        let found = w.pair_profiles.iter().find(|p| {
            p.other.is_none() && ((p.a == a && p.b == b) || (p.a == b && p.b == a))
        });
        let p = found.ok_or_else(|| {
            Error::MissingWitness(format!("pair profile ({a}, {b}) of `{}`", self.name))
        })?;
        let (x, y) = if p.a == a { (a, b) } else { (b, a) };
        let pair = PairProfile::new(self.end(x)?.clone(), self.end(y)?.clone(), p.relative_windings.clone())?;
        Ok(if p.a == a { pair } else { pair.swapped() })
    }

    /// Profile of puncture `a` of `self` against puncture `b` of `other`, looked up on either curve.
    pub fn cross_pair(&self, a: usize, other: &CurveData, b: usize) -> Result<PairProfile> {
        let lookup = |owner: &CurveData, peer: &str, x: usize, y: usize| {
            owner.witness.as_ref().and_then(|w| {
                w.pair_profiles
                    .iter()
                    .find(|p| p.other.as_deref() == Some(peer) && p.a == x && p.b == y)
                    .cloned()
            })
        };
        if let Some(p) = lookup(self, &other.name, a, b) {
            return PairProfile::new(self.end(a)?.clone(), other.end(b)?.clone(), p.relative_windings);
        }
        if let Some(p) = lookup(other, &self.name, b, a) {
            return Ok(PairProfile::new(
                other.end(b)?.clone(),
                self.end(a)?.clone(),
                p.relative_windings,
            )?
            .swapped());
        }
        Err(Error::MissingWitness(format!(
            "pair profile ({}:{a}, {}:{b})",
            self.name, other.name
        )))
    }

    /// `int(u, v)` declared on either curve.
    pub fn pair_intersection(&self, other: &CurveData) -> Result<i64> {
        let get = |owner: &CurveData, peer: &str| {
            owner
                .witness
                .as_ref()
                .and_then(|w| w.pair_intersections.get(peer).copied())
        };
        get(self, &other.name)
            .or_else(|| get(other, &self.name))
            .ok_or_else(|| Error::MissingWitness(format!("int({}, {})", self.name, other.name)))
    }

    /// Relative intersection number declared on either curve.
    pub fn relative_intersection(&self, other: &CurveData) -> Result<i64> {
        let get = |owner: &CurveData, peer: &str| {
            owner
                .witness
                .as_ref()
                .and_then(|w| w.relative_intersections.get(peer).copied())
        };
        get(self, &other.name)
            .or_else(|| get(other, &self.name))
            .ok_or_else(|| Error::MissingWitness(format!("rin({}, {})", self.name, other.name)))
    }

    /// Same curve described in trivializations shifted by `shift`.
    ///
    /// Relative intersection numbers against `peers` are shifted too; entries for
    /// curves not listed are kept unchanged.
    pub fn retrivialize(&self, shift: &TrivializationShift, peers: &[&CurveData]) -> Result<CurveData> {
        let mut out = self.clone();
        out.c1_rel = self.c1_rel - self.ends().map(|e| e.mult * shift.get(&e.orbit.name)).sum::<i64>();
        for comp in &mut out.components {
            for end in &mut comp.punctures {
                *end = end.retrivialize(shift.get(&end.orbit.name));
            }
        }
        if let Some(w) = &mut out.witness {
            for p in &mut w.pair_profiles {
                let (a, b) = match &p.other {
                    None => (self.end(p.a)?.clone(), self.end(p.b)?.clone()),
                    Some(name) => match peers.iter().find(|c| &c.name == name) {
                        Some(peer) => (self.end(p.a)?.clone(), peer.end(p.b)?.clone()),
                        None => continue,
                    },
                };
                let deg = shift.get(&a.orbit.name);
                p.relative_windings = PairProfile {
                    a,
                    b,
                    relative_windings: p.relative_windings.clone(),
                }
                .retrivialize(deg)?
                .relative_windings;
            }
            for (name, rin) in &mut w.relative_intersections {
                if let Some(peer) = peers.iter().find(|c| &c.name == name) {
                    *rin -= same_sign_shift(self, peer, shift);
                }
            }
        }
        Ok(out)
    }
}

/// Change of `Omega` under a trivialization shift: `sum sign(m) m_z m_w deg`.
pub(crate) fn same_sign_shift(u: &CurveData, v: &CurveData, shift: &TrivializationShift) -> i64 {
    let mut total = 0;
    for z in u.ends() {
        for w in v.ends() {
            if z.same_orbit(w) && z.sign() == w.sign() {
                total += z.sign() * z.mult * w.mult * shift.get(&z.orbit.name);
            }
        }
    }
    total
}

/// Ordered pairs `(z, w)` of ends of `u` and `v` at one orbit with equal sign.
pub(crate) fn same_sign_pairs<'a>(
    u: &'a CurveData,
    v: &'a CurveData,
) -> Vec<(usize, &'a EndData, usize, &'a EndData)> {
    let mut out = Vec::new();
    for (i, z) in u.ends().enumerate() {
        for (j, w) in v.ends().enumerate() {
            if z.same_orbit(w) && z.sign() == w.sign() {
                out.push((i, z, j, w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::SimpleOrbit;
    use crate::rational::Q;

    fn page() -> CurveData {
        let b = SimpleOrbit::elliptic("b", Q::new(6, 5)).unwrap();
        CurveData::connected(
            "page",
            0,
            vec![EndData::hol(&b, 1, &[1]).unwrap()],
            0,
            CurveClass::Holomorphic,
        )
    }

    #[test]
    fn index_examples() {
        let p = page();
        assert_eq!(p.total_cz().unwrap(), 3);
        assert_eq!(p.fredholm_index().unwrap(), 2);
        let closed = CurveData::connected("s", 0, vec![], 4, CurveClass::Holomorphic);
        assert_eq!(closed.total_cz().unwrap(), 8);
        assert_eq!(closed.fredholm_index().unwrap(), 6);
        let h = SimpleOrbit::even("h", 0);
        let plane = CurveData::connected(
            "p",
            0,
            vec![EndData::hol(&h, 1, &[0]).unwrap()],
            0,
            CurveClass::Holomorphic,
        );
        assert_eq!(plane.total_cz().unwrap(), 0);
        assert_eq!(plane.fredholm_index().unwrap(), -1);
    }

    #[test]
    fn retrivialization_keeps_mu() {
        let p = page();
        let shifted = p.retrivialize(&TrivializationShift::new().with("b", 1), &[]).unwrap();
        assert_eq!(shifted.c1_rel, -1);
        assert_eq!(shifted.ends().next().unwrap().windings, vec![2]);
        assert_eq!(shifted.total_cz().unwrap(), 3);
        assert_eq!(p.retrivialize(&TrivializationShift::new(), &[]).unwrap(), p);
    }
}
