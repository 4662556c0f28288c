//! The generalized intersection number by its three routes, orbit cylinders and
//! the R-shift intersection bounds.

use serde::{Deserialize, Serialize};

use super::{same_sign_pairs, CurveClass, CurveData};
use crate::end::EndData;
use crate::error::{Error, Result};
use crate::orbit::{alpha_iter, parity_iter, SimpleOrbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// `|m_w| int(gamma_w, u)` for a positive puncture `w` of the second curve.
    FirstMeetsLimit,
    /// `|m_z| int(gamma_z, v)` for a negative puncture `z` of the first curve.
    SecondMeetsLimit,
    PositivePair,
    NegativePair,
    MixedPair,
}

/// One summand of a cylindrical formula; `z` indexes the first curve, `w` the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub kind: TermKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    pub value: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinBreakdown {
    pub total: i64,
    pub terms: Vec<Term>,
}

impl GinBreakdown {
    fn push(&mut self, kind: TermKind, z: Option<usize>, w: Option<usize>, value: i64) {
        self.total += value;
        self.terms.push(Term { kind, z, w, value });
    }

    pub fn negative_terms(&self) -> Vec<&Term> {
        self.terms.iter().filter(|t| t.value < 0).collect()
    }
}

/// `|m_z| |m_w| max(f_z / |m_z|, f_w / |m_w|)` for integers `f`.
fn scaled_max(z: &EndData, fz: i64, w: &EndData, fw: i64) -> i64 {
    (w.abs_mult() * fz).max(z.abs_mult() * fw)
}

/// `Omega` summed over same-orbit pairs of equal sign.
pub fn omega_term(u: &CurveData, v: &CurveData) -> Result<i64> {
    let mut total = 0;
    for (_, z, _, w) in same_sign_pairs(u, v) {
        total += scaled_max(z, z.alpha()?, w, w.alpha()?);
    }
    Ok(total)
}

/// Shared skeleton of the cylindrical gin formula and the R-shift bound.
/// `same_sign(z, w)` is the pair term with `z` the puncture whose own ratio is subtracted.
fn cylindrical(
    u: &CurveData,
    v: &CurveData,
    same_sign: impl Fn(&EndData, &EndData) -> Result<i64>,
) -> Result<GinBreakdown> {
    let mut out = GinBreakdown::default();
    for (j, w) in v.ends().enumerate().filter(|(_, w)| w.mult > 0) {
        let int = u.orbit_intersection(&w.orbit.name)?;
        out.push(TermKind::FirstMeetsLimit, None, Some(j), w.abs_mult() * int);
        for (i, z) in u.ends().enumerate() {
            if z.mult > 0 && z.same_orbit(w) {
                out.push(TermKind::PositivePair, Some(i), Some(j), same_sign(z, w)?);
            }
        }
    }
    for (i, z) in u.ends().enumerate().filter(|(_, z)| z.mult < 0) {
        let int = v.orbit_intersection(&z.orbit.name)?;
        out.push(TermKind::SecondMeetsLimit, Some(i), None, z.abs_mult() * int);
        for (j, w) in v.ends().enumerate() {
            if w.mult < 0 && w.same_orbit(z) {
                out.push(TermKind::NegativePair, Some(i), Some(j), same_sign(w, z)?);
            }
        }
    }
    for (i, z) in u.ends().enumerate().filter(|(_, z)| z.mult < 0) {
        for (j, w) in v.ends().enumerate() {
            if w.mult > 0 && w.same_orbit(z) {
                let value = w.abs_mult() * z.d0()? + z.abs_mult() * w.d0()?
                    - w.abs_mult() * z.alpha()?
                    - z.abs_mult() * w.alpha()?;
                out.push(TermKind::MixedPair, Some(i), Some(j), value);
            }
        }
    }
    Ok(out)
}

/// `gin(u, v)` from limit intersections, end defects and iterated orbit data.
/// With `v = u` this is the self-intersection formula.
pub fn gin_cylindrical(u: &CurveData, v: &CurveData) -> Result<GinBreakdown> {
    cylindrical(u, v, |a, b| {
        Ok(scaled_max(a, a.alpha()?, b, b.alpha()?) - b.abs_mult() * a.alpha()?
            + b.abs_mult() * a.d0()?)
    })
}

/// Generic upper bound on `int(u, v_c)` over R-translates `v_c` of `v`.
pub fn rshift_int_bound(u: &CurveData, v: &CurveData) -> Result<GinBreakdown> {
    cylindrical(u, v, |a, b| {
        let (wa, wb) = (a.wind_infty()?, b.wind_infty()?);
        Ok(scaled_max(a, wa, b, wb) - b.abs_mult() * wa)
    })
}

/// Generic upper bound on `int(u, u_c)`, cylindrical form.
pub fn self_rshift_bound(u: &CurveData) -> Result<GinBreakdown> {
    rshift_int_bound(u, u)
}

/// Generic upper bound on `int(u, u_c)` from `wind_pi`, double points and end data.
pub fn self_rshift_bound_windpi(u: &CurveData) -> Result<i64> {
    let mut total = u.wind_pi()? + 2 * u.double_points()?;
    for end in u.ends() {
        total += end.cov_e1()? - 1 + end.delta2()?;
    }
    for (i, z, j, w) in same_sign_pairs(u, u) {
        if i != j {
            let pair = u.self_pair(i, j)?;
            total += pair.asymptotic_intersection()? + scaled_max(z, z.wind_infty()?, w, w.wind_infty()?);
        }
    }
    Ok(total)
}

/// `gin(u, v) = rin(u, v) + Omega(u, v)` from a declared relative intersection number.
pub fn gin_from_rin(u: &CurveData, v: &CurveData) -> Result<i64> {
    Ok(u.relative_intersection(v)? + omega_term(u, v)?)
}

/// Sum of pair asymptotic intersection indices over same-orbit, same-sign pairs.
pub fn pair_asymptotic_index_total(u: &CurveData, v: &CurveData) -> Result<i64> {
    let mut total = 0;
    for (i, _, j, _) in same_sign_pairs(u, v) {
        total += u.cross_pair(i, v, j)?.asymptotic_index()?;
    }
    Ok(total)
}

/// `gin(u, v) = int(u, v) + delta_infty(u, v)` for distinct holomorphic curves.
pub fn gin_from_witness(u: &CurveData, v: &CurveData) -> Result<i64> {
    if u.name == v.name {
        return super::self_gin_from_witness(u);
    }
    for c in [u, v] {
        if c.class != CurveClass::Holomorphic {
            return Err(Error::WrongClass(c.name.clone()));
        }
    }
    Ok(u.pair_intersection(v)? + pair_asymptotic_index_total(u, v)?)
}

fn require_positive(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidProfile(format!(
            "orbit cylinder cover {k} must be positive"
        )));
    }
    Ok(())
}

/// `gin(u, gamma~^k)` against the `k`-fold orbit cylinder over `orbit`.
pub fn gin_orbit_cylinder(u: &CurveData, orbit: &SimpleOrbit, k: i64) -> Result<i64> {
    require_positive(k)?;
    let (ak, a_neg_k) = (alpha_iter(orbit, k)?, alpha_iter(orbit, -k)?);
    let mut total = k * u.orbit_intersection(&orbit.name)?;
    for z in u.ends().filter(|z| z.orbit.name == orbit.name) {
        let az = z.alpha()?;
        let target = if z.mult > 0 { ak } else { a_neg_k };
        total += (k * az).max(z.abs_mult() * target) - k * az + k * z.d0()?;
    }
    Ok(total)
}

/// `gin(gamma~^k, gamma~^k) = k (alpha(gamma^k) + alpha(gamma^-k))`.
pub fn self_gin_orbit_cylinder(orbit: &SimpleOrbit, k: i64) -> Result<i64> {
    require_positive(k)?;
    let value = k * (alpha_iter(orbit, k)? + alpha_iter(orbit, -k)?);
    debug_assert_eq!(value, -k * parity_iter(orbit, k)?);
    Ok(value)
}

/// Cylindrical gin for generalized holomorphic curves; the caller inspects the sign of each term.
pub fn genhol_positivity(u: &CurveData, v: &CurveData) -> Result<GinBreakdown> {
    for c in [u, v] {
        if c.class != CurveClass::GeneralizedHolomorphic {
            return Err(Error::WrongClass(c.name.clone()));
        }
        for end in c.ends() {
            if end.d0()? < 0 {
                return Err(Error::InvalidProfile(format!(
                    "curve `{}` has an end with negative d0",
                    c.name
                )));
            }
        }
    }
    gin_cylindrical(u, v)
}
