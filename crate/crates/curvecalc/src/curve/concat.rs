//! Change of the generalized intersection number under concatenation of buildings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{same_sign_pairs, CurveData};
use crate::error::{Error, Result};
use crate::orbit::concat_defect;

/// Negative punctures of the upper level matched with positive punctures of the lower level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakingTerm {
    pub orbit: String,
    pub m: i64,
    pub n: i64,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatReport {
    /// `gin(u1.u2, v1.v2) - gin(u1, v1) - gin(u2, v2)`.
    pub defect: i64,
    pub terms: Vec<BreakingTerm>,
    /// Whether some breaking pair has both covers odd.
    pub strict: bool,
}

fn validate(upper: &CurveData, lower: &CurveData, matching: &Matching) -> Result<()> {
    let bad = |m: String| Err(Error::MatchingInvalid(m));
    let (mut seen_up, mut seen_low) = (BTreeSet::new(), BTreeSet::new());
    for &(a, b) in &matching.pairs {
        let (x, y) = (upper.end(a)?, lower.end(b)?);
        if x.mult >= 0 || y.mult <= 0 {
            return bad(format!(
                "({}:{a}, {}:{b}) must pair a negative with a positive puncture",
                upper.name, lower.name
            ));
        }
        if !x.same_orbit(y) || x.mult != -y.mult {
            return bad(format!(
                "({}:{a}, {}:{b}) do not have matching asymptotic orbits",
                upper.name, lower.name
            ));
        }
        if !seen_up.insert(a) || !seen_low.insert(b) {
            return bad(format!("puncture matched twice in ({}, {})", upper.name, lower.name));
        }
    }
    let negatives = upper.ends().filter(|e| e.mult < 0).count();
    let positives = lower.ends().filter(|e| e.mult > 0).count();
    if seen_up.len() != negatives || seen_low.len() != positives {
        return bad(format!(
            "matching of ({}, {}) is not complete",
            upper.name, lower.name
        ));
    }
    Ok(())
}

/// Defect of `gin` under concatenation, summed over breaking punctures of `u1` and `v1` at common orbits.
pub fn concat_gin(
    u1: &CurveData,
    u2: &CurveData,
    v1: &CurveData,
    v2: &CurveData,
    mu: &Matching,
    mv: &Matching,
) -> Result<ConcatReport> {
    validate(u1, u2, mu)?;
    validate(v1, v2, mv)?;
    let mut terms = Vec::new();
    let mut strict = false;
    for z in u1.ends().filter(|z| z.mult < 0) {
        for w in v1.ends().filter(|w| w.mult < 0 && w.same_orbit(z)) {
            let (m, n) = (z.abs_mult(), w.abs_mult());
            let value = concat_defect(&z.orbit, m, n)?;
            strict |= z.parity()? == 1 && w.parity()? == 1;
            terms.push(BreakingTerm {
                orbit: z.orbit.name.clone(),
                m,
                n,
                value,
            });
        }
    }
    let defect: i64 = terms.iter().map(|t| t.value).sum();

    let mut balance = 0;
    for (_, z, _, w) in same_sign_pairs(u1, v1) {
        if z.mult < 0 {
            balance += (w.abs_mult() * z.alpha()?).max(z.abs_mult() * w.alpha()?);
        }
    }
    for (_, z, _, w) in same_sign_pairs(u2, v2) {
        if z.mult > 0 {
            balance += (w.abs_mult() * z.alpha()?).max(z.abs_mult() * w.alpha()?);
        }
    }
    if defect != -balance {
        return Err(Error::InconsistentInput(format!(
            "concatenation defect {defect} disagrees with the Omega balance {}",
            -balance
        )));
    }
    if defect < 0 || (defect > 0) != strict {
        return Err(Error::InconsistentInput(format!(
            "concatenation defect {defect} contradicts the odd-cover criterion"
        )));
    }
    Ok(ConcatReport {
        defect,
        terms,
        strict,
    })
}
