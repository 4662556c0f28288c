//! Periodic-orbit arithmetic: iterated winding data, parity, Conley-Zehnder index,
//! spectral covering number, trivialization shifts and concatenation defects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, floor_div, gcd, qmax, to_int, Q};

/// Default bound on multiplicities for which a rational rotation surrogate is trusted.
pub const DEFAULT_HORIZON: i64 = 10_000;

fn default_horizon() -> i64 {
    DEFAULT_HORIZON
}

/// Type data of a simple orbit relative to its reference trivialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OrbitKind {
    /// Rotation surrogate `theta`; `alpha(gamma^k) = floor(k theta)`.
    Elliptic {
        #[serde(with = "rational")]
        theta: Q,
    },
    /// Positive real Floquet multipliers; `alpha(gamma^k) = k alpha0`.
    EvenHyperbolic { alpha0: i64 },
    /// Negative real Floquet multipliers; `alpha(gamma^k) = floor(k (alpha0 + 1/2))`.
    OddHyperbolic { alpha0: i64 },
}

/// A simple periodic orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleOrbit {
    pub name: String,
    #[serde(with = "rational")]
    pub period: Q,
    pub kind: OrbitKind,
    #[serde(default = "default_horizon")]
    pub horizon: i64,
}

impl SimpleOrbit {
    pub fn new(name: impl Into<String>, period: Q, kind: OrbitKind) -> Result<Self> {
        let orbit = SimpleOrbit {
            name: name.into(),
            period,
            kind,
            horizon: DEFAULT_HORIZON,
        };
        orbit.validate()?;
        Ok(orbit)
    }

    pub fn elliptic(name: impl Into<String>, theta: Q) -> Result<Self> {
        Self::new(name, Q::from_integer(1), OrbitKind::Elliptic { theta })
    }

    pub fn even(name: impl Into<String>, alpha0: i64) -> Self {
        Self::new(name, Q::from_integer(1), OrbitKind::EvenHyperbolic { alpha0 })
            .expect("hyperbolic orbits have no guard")
    }

    pub fn odd(name: impl Into<String>, alpha0: i64) -> Self {
        Self::new(name, Q::from_integer(1), OrbitKind::OddHyperbolic { alpha0 })
            .expect("hyperbolic orbits have no guard")
    }

    pub fn with_horizon(mut self, horizon: i64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Error::InvalidOrbit {
            orbit: self.name.clone(),
            reason: reason.to_string(),
        };
        if self.period <= Q::from_integer(0) {
            return Err(bad("period must be positive"));
        }
        if self.horizon < 1 {
            return Err(bad("horizon must be positive"));
        }
        if let OrbitKind::Elliptic { theta } = self.kind {
            if *theta.denom() < 2 {
                return Err(bad("theta must not be an integer"));
            }
        }
        Ok(())
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self.kind, OrbitKind::Elliptic { .. })
    }

    pub fn is_even_hyperbolic(&self) -> bool {
        matches!(self.kind, OrbitKind::EvenHyperbolic { .. })
    }

    pub fn is_odd_hyperbolic(&self) -> bool {
        matches!(self.kind, OrbitKind::OddHyperbolic { .. })
    }

    /// Checks that `k` is a usable multiplicity for this orbit.
    pub fn guard(&self, k: i64) -> Result<()> {
        if k == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        if let OrbitKind::Elliptic { theta } = self.kind {
            if k.abs() > self.horizon {
                return Err(Error::HorizonExceeded {
                    orbit: self.name.clone(),
                    k,
                    horizon: self.horizon,
                });
            }
            if k % theta.denom() == 0 {
                return Err(Error::EllipticGuardViolated {
                    orbit: self.name.clone(),
                    k,
                    theta: rational::fmt(theta),
                });
            }
        }
        Ok(())
    }

    /// The same orbit described in a trivialization differing by `deg`.
    pub fn retrivialize(&self, deg: i64) -> SimpleOrbit {
        let kind = match self.kind {
            OrbitKind::Elliptic { theta } => OrbitKind::Elliptic {
                theta: theta + Q::from_integer(deg),
            },
            OrbitKind::EvenHyperbolic { alpha0 } => OrbitKind::EvenHyperbolic {
                alpha0: alpha0 + deg,
            },
            OrbitKind::OddHyperbolic { alpha0 } => OrbitKind::OddHyperbolic {
                alpha0: alpha0 + deg,
            },
        };
        SimpleOrbit {
            kind,
            ..self.clone()
        }
    }
}

/// An orbit together with a signed covering multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveredOrbit {
    pub orbit: SimpleOrbit,
    pub mult: i64,
}

impl CoveredOrbit {
    pub fn new(orbit: SimpleOrbit, mult: i64) -> Result<Self> {
        orbit.guard(mult)?;
        Ok(CoveredOrbit { orbit, mult })
    }

    pub fn alpha(&self) -> Result<i64> {
        alpha_iter(&self.orbit, self.mult)
    }

    pub fn parity(&self) -> Result<i64> {
        parity_iter(&self.orbit, self.mult)
    }

    pub fn cz(&self) -> Result<i64> {
        cz_index(&self.orbit, self.mult)
    }

    pub fn sigma_bar(&self) -> Result<i64> {
        spectral_covering(&self.orbit, self.mult)
    }
}

/// Per-orbit degrees of a change of trivialization; missing orbits have degree 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivializationShift {
    pub deg: BTreeMap<String, i64>,
}

impl TrivializationShift {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, orbit: impl Into<String>, deg: i64) -> Self {
        self.deg.insert(orbit.into(), deg);
        self
    }

    pub fn get(&self, orbit: &str) -> i64 {
        self.deg.get(orbit).copied().unwrap_or(0)
    }

    pub fn compose(&self, other: &TrivializationShift) -> TrivializationShift {
        let mut deg = self.deg.clone();
        for (name, d) in &other.deg {
            *deg.entry(name.clone()).or_insert(0) += d;
        }
        TrivializationShift { deg }
    }

    pub fn inverse(&self) -> TrivializationShift {
        TrivializationShift {
            deg: self.deg.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

/// `alpha(gamma^k)` in the reference trivialization.
pub fn alpha_iter(orbit: &SimpleOrbit, k: i64) -> Result<i64> {
    orbit.guard(k)?;
    Ok(match orbit.kind {
        OrbitKind::EvenHyperbolic { alpha0 } => k * alpha0,
        OrbitKind::OddHyperbolic { alpha0 } => floor_div(k * (2 * alpha0 + 1), 2),
        OrbitKind::Elliptic { theta } => floor_div(k * theta.numer(), *theta.denom()),
    })
}

/// Parity of `gamma^k`: 0 for even covers, 1 for odd covers.
pub fn parity_iter(orbit: &SimpleOrbit, k: i64) -> Result<i64> {
    if k == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    Ok(match orbit.kind {
        OrbitKind::EvenHyperbolic { .. } => 0,
        OrbitKind::OddHyperbolic { .. } => k.rem_euclid(2),
        OrbitKind::Elliptic { .. } => 1,
    })
}

/// Conley-Zehnder index `2 alpha + p`.
pub fn cz_index(orbit: &SimpleOrbit, k: i64) -> Result<i64> {
    Ok(2 * alpha_iter(orbit, k)? + parity_iter(orbit, k)?)
}

/// Spectral covering number `gcd(|k|, alpha(gamma^k))`.
pub fn spectral_covering(orbit: &SimpleOrbit, k: i64) -> Result<i64> {
    Ok(gcd(k.abs(), alpha_iter(orbit, k)?))
}

/// `alpha` after a change of trivialization of degree `deg`.
pub fn shift_alpha(alpha: i64, k: i64, deg: i64) -> i64 {
    alpha + k * deg
}

/// Defect of the generalized intersection number when two ends of multiplicities
/// `m` and `n` at `orbit` are glued away in a concatenation.
pub fn concat_defect(orbit: &SimpleOrbit, m: i64, n: i64) -> Result<i64> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidProfile(format!(
            "concatenation multiplicities must be positive, got {m}, {n}"
        )));
    }
    orbit.guard(m * n)?;
    let a = |k: i64| -> Result<Q> { Ok(Q::from_integer(alpha_iter(orbit, k)?)) };
    let (mq, nq) = (Q::from_integer(m), Q::from_integer(n));
    let top = qmax(a(m)? / mq, a(n)? / nq);
    let bottom = qmax(a(-m)? / mq, a(-n)? / nq);
    let value = -(mq * nq) * (top + bottom);
    to_int(value).ok_or_else(|| Error::NonIntegralResult(format!("concat defect {value}")))
}

/// Fractional part of the rotation surrogate of an elliptic orbit.
pub fn rotation_index(orbit: &SimpleOrbit) -> Result<Q> {
    match orbit.kind {
        OrbitKind::Elliptic { theta } => Ok(theta - theta.floor()),
        _ => Err(Error::NotElliptic(orbit.name.clone())),
    }
}
