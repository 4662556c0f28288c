//! Invariants of single asymptotically cylindrical ends and of pairs of ends.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::{alpha_iter, parity_iter, spectral_covering, SimpleOrbit};
use crate::rational::{gcd, qmax, to_int, Q};

/// One puncture: covered orbit, signed multiplicity and the windings of the
/// eigenvectors in its asymptotic expansion (reference trivialization).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndData {
    pub orbit: SimpleOrbit,
    pub mult: i64,
    pub windings: Vec<i64>,
    pub holomorphic: bool,
}

impl EndData {
    pub fn new(orbit: SimpleOrbit, mult: i64, windings: Vec<i64>, holomorphic: bool) -> Result<Self> {
        let end = EndData {
            orbit,
            mult,
            windings,
            holomorphic,
        };
        end.validate()?;
        Ok(end)
    }

    /// Holomorphic end.
    pub fn hol(orbit: &SimpleOrbit, mult: i64, windings: &[i64]) -> Result<Self> {
        Self::new(orbit.clone(), mult, windings.to_vec(), true)
    }

    pub fn validate(&self) -> Result<()> {
        self.orbit.guard(self.mult)?;
        if self.windings.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if self.windings.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidProfile(format!(
                "windings {:?} are not strictly decreasing",
                self.windings
            )));
        }
        let ks = self.cov_sequence();
        if ks.len() > 2 && ks[1..].windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidProfile(format!(
                "covering sequence {ks:?} is not strictly decreasing"
            )));
        }
        if self.holomorphic && self.d0()? < 0 {
            return Err(Error::InvalidProfile(format!(
                "leading winding {} exceeds alpha {}",
                self.windings[0],
                self.alpha()?
            )));
        }
        Ok(())
    }

    pub fn sign(&self) -> i64 {
        self.mult.signum()
    }

    pub fn abs_mult(&self) -> i64 {
        self.mult.abs()
    }

    pub fn alpha(&self) -> Result<i64> {
        alpha_iter(&self.orbit, self.mult)
    }

    pub fn parity(&self) -> Result<i64> {
        parity_iter(&self.orbit, self.mult)
    }

    pub fn sigma_bar(&self) -> Result<i64> {
        spectral_covering(&self.orbit, self.mult)
    }

    /// `alpha / |m|` as an exact rational.
    pub fn alpha_ratio(&self) -> Result<Q> {
        Ok(Q::new(self.alpha()?, self.abs_mult()))
    }

    /// `wind_infty / |m|` as an exact rational.
    pub fn wind_ratio(&self) -> Result<Q> {
        Ok(Q::new(self.wind_infty()?, self.abs_mult()))
    }

    /// `k_0 = |m|`, `k_i = gcd(k_{i-1}, w_i)`.
    pub fn cov_sequence(&self) -> Vec<i64> {
        let mut ks = vec![self.abs_mult()];
        for &w in &self.windings {
            let last = *ks.last().expect("nonempty");
            ks.push(gcd(last, w));
        }
        ks
    }

    pub fn is_embedded(&self) -> bool {
        self.cov_sequence().last() == Some(&1)
    }

    pub fn wind_infty(&self) -> Result<i64> {
        self.windings.first().copied().ok_or(Error::EmptyProfile)
    }

    /// Covering number of the leading eigenvector.
    pub fn cov_e1(&self) -> Result<i64> {
        Ok(gcd(self.abs_mult(), self.wind_infty()?))
    }

    pub fn d0(&self) -> Result<i64> {
        Ok(self.alpha()? - self.wind_infty()?)
    }

    pub fn delta1(&self) -> Result<i64> {
        if !self.holomorphic {
            return Err(Error::NonHolomorphicEnd);
        }
        Ok((self.abs_mult() - 1) * self.d0()? - self.sigma_bar()? + self.cov_e1()?)
    }

    fn require_embedded(&self) -> Result<()> {
        let last = *self.cov_sequence().last().expect("nonempty");
        if last != 1 {
            return Err(Error::NotEmbeddedEnd(last));
        }
        Ok(())
    }

    pub fn wind2(&self) -> Result<i64> {
        if self.windings.is_empty() {
            return Err(Error::EmptyProfile);
        }
        self.require_embedded()?;
        let ks = self.cov_sequence();
        Ok(self
            .windings
            .iter()
            .enumerate()
            .map(|(i, w)| (ks[i] - ks[i + 1]) * w)
            .sum())
    }

    pub fn delta2(&self) -> Result<i64> {
        if !self.holomorphic {
            return Err(Error::NonHolomorphicEnd);
        }
        let w2 = self.wind2()?;
        Ok((self.abs_mult() - 1) * self.wind_infty()? - self.cov_e1()? + 1 - w2)
    }

    pub fn delta_tot(&self) -> Result<i64> {
        if !self.holomorphic {
            return Err(Error::NonHolomorphicEnd);
        }
        let w2 = self.wind2()?;
        Ok((self.abs_mult() - 1) * self.alpha()? - self.sigma_bar()? + 1 - w2)
    }

    pub fn self_asymptotic_intersection(&self) -> Result<i64> {
        Ok(-self.wind2()?)
    }

    pub fn self_asymptotic_index(&self) -> Result<i64> {
        if !self.holomorphic {
            return Err(Error::NonHolomorphicEnd);
        }
        let twice = self.self_asymptotic_intersection()? + (self.abs_mult() - 1) * self.alpha()?
            - self.sigma_bar()?
            + 1;
        if twice % 2 != 0 {
            return Err(Error::NonIntegralResult(format!("self asymptotic index {twice}/2")));
        }
        if twice < 0 {
            return Err(Error::NegativeIndex(twice / 2));
        }
        Ok(twice / 2)
    }

    pub fn cover(&self, c: i64) -> Result<EndData> {
        if c < 1 {
            return Err(Error::InvalidProfile(format!("cover degree {c} must be positive")));
        }
        EndData::new(
            self.orbit.clone(),
            c * self.mult,
            self.windings.iter().map(|w| c * w).collect(),
            self.holomorphic,
        )
    }

    /// Same end in a trivialization of the orbit differing by `deg`.
    pub fn retrivialize(&self, deg: i64) -> EndData {
        EndData {
            orbit: self.orbit.retrivialize(deg),
            mult: self.mult,
            windings: self.windings.iter().map(|w| w + self.mult * deg).collect(),
            holomorphic: self.holomorphic,
        }
    }

    pub fn same_orbit(&self, other: &EndData) -> bool {
        self.orbit.name == other.orbit.name
    }
}

/// How a list of relative windings is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairForm {
    /// Equal covers, `|m|` entries compared directly.
    Direct,
    /// Covers lifted to the common multiplicity `m_a |m_b|`, `|m_a m_b|` entries.
    CommonCover,
}

/// Relative winding data for two ends at covers of one orbit with equal sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairProfile {
    pub a: EndData,
    pub b: EndData,
    pub relative_windings: Vec<i64>,
}

impl PairProfile {
    pub fn new(a: EndData, b: EndData, relative_windings: Vec<i64>) -> Result<Self> {
        let pair = PairProfile {
            a,
            b,
            relative_windings,
        };
        pair.validate()?;
        Ok(pair)
    }

    /// Profile with every entry at its upper bound (the generic relative position).
    pub fn generic(a: EndData, b: EndData, form: PairForm) -> Result<Self> {
        let len = match form {
            PairForm::Direct => a.abs_mult() as usize,
            PairForm::CommonCover => (a.mult * b.mult).unsigned_abs() as usize,
        };
        let bound = Self::bound_for(&a, &b, form)?;
        Self::new(a, b, vec![bound; len])
    }

    fn check_ends(a: &EndData, b: &EndData) -> Result<()> {
        if !a.same_orbit(b) {
            return Err(Error::MismatchedOrbits(format!(
                "`{}` vs `{}`",
                a.orbit.name, b.orbit.name
            )));
        }
        if a.sign() != b.sign() {
            return Err(Error::MismatchedOrbits(format!(
                "multiplicities {} and {} have opposite signs",
                a.mult, b.mult
            )));
        }
        Ok(())
    }

    pub fn form(&self) -> Result<PairForm> {
        Self::check_ends(&self.a, &self.b)?;
        let len = self.relative_windings.len() as i64;
        let common = (self.a.mult * self.b.mult).abs();
        if len == common {
            Ok(PairForm::CommonCover)
        } else if self.a.mult == self.b.mult && len == self.a.abs_mult() {
            Ok(PairForm::Direct)
        } else {
            Err(Error::ProfileLength {
                got: self.relative_windings.len(),
                expected: if self.a.mult == self.b.mult {
                    format!("{} or {}", self.a.abs_mult(), common)
                } else {
                    format!("{common}")
                },
            })
        }
    }

    fn bound_for(a: &EndData, b: &EndData, form: PairForm) -> Result<i64> {
        Ok(match form {
            PairForm::Direct => a.wind_infty()?.max(b.wind_infty()?),
            PairForm::CommonCover => {
                (b.abs_mult() * a.wind_infty()?).max(a.abs_mult() * b.wind_infty()?)
            }
        })
    }

    /// Upper bound on each entry for holomorphic pairs.
    pub fn entry_bound(&self) -> Result<i64> {
        Self::bound_for(&self.a, &self.b, self.form()?)
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate()?;
        self.b.validate()?;
        let bound = self.entry_bound()?;
        if self.a.holomorphic && self.b.holomorphic {
            if let Some(&value) = self.relative_windings.iter().find(|&&l| l > bound) {
                return Err(Error::ProfileBound { value, bound });
            }
        }
        Ok(())
    }

    pub fn is_saturated(&self) -> Result<bool> {
        let bound = self.entry_bound()?;
        Ok(self.relative_windings.iter().all(|&l| l == bound))
    }

    pub fn wind_rel(&self) -> Result<i64> {
        self.form()?;
        Ok(self.relative_windings.iter().sum())
    }

    pub fn asymptotic_intersection(&self) -> Result<i64> {
        let total = self.wind_rel()?;
        match self.form()? {
            PairForm::Direct => Ok(-total),
            PairForm::CommonCover => {
                let q = Q::new(-total, self.a.mult * self.b.mult);
                to_int(q).ok_or_else(|| {
                    Error::NonIntegralResult(format!("pair asymptotic intersection {q}"))
                })
            }
        }
    }

    /// `m_a m_b max(alpha_a/|m_a|, alpha_b/|m_b|)`.
    pub fn alpha_balance(&self) -> Result<i64> {
        pair_max_term(&self.a, &self.b, EndData::alpha_ratio)
    }

    /// `m_a m_b max(wind_a/|m_a|, wind_b/|m_b|)`.
    pub fn wind_balance(&self) -> Result<i64> {
        pair_max_term(&self.a, &self.b, EndData::wind_ratio)
    }

    pub fn asymptotic_index(&self) -> Result<i64> {
        let value = self.asymptotic_intersection()? + self.alpha_balance()?;
        if value < 0 && self.a.holomorphic && self.b.holomorphic {
            return Err(Error::NegativeIndex(value));
        }
        Ok(value)
    }

    pub fn retrivialize(&self, deg: i64) -> Result<PairProfile> {
        let step = match self.form()? {
            PairForm::Direct => self.a.mult * deg,
            PairForm::CommonCover => self.a.mult * self.b.abs_mult() * deg,
        };
        Ok(PairProfile {
            a: self.a.retrivialize(deg),
            b: self.b.retrivialize(deg),
            relative_windings: self.relative_windings.iter().map(|l| l + step).collect(),
        })
    }

    /// Joint `c`-fold cover of both ends, in the same form.
    pub fn cover(&self, c: i64) -> Result<PairProfile> {
        let form = self.form()?;
        let (copies, scale) = match form {
            PairForm::Direct => (c, c),
            PairForm::CommonCover => (c * c, c * c),
        };
        let relative_windings = (0..copies)
            .flat_map(|_| self.relative_windings.iter().map(move |l| l * scale))
            .collect();
        PairProfile::new(self.a.cover(c)?, self.b.cover(c)?, relative_windings)
    }

    pub fn swapped(&self) -> PairProfile {
        PairProfile {
            a: self.b.clone(),
            b: self.a.clone(),
            relative_windings: self.relative_windings.clone(),
        }
    }
}

/// `m_a m_b max(f(a), f(b))` for ends of equal sign; integral by construction.
pub fn pair_max_term(a: &EndData, b: &EndData, f: fn(&EndData) -> Result<Q>) -> Result<i64> {
    let value = Q::from_integer(a.mult * b.mult) * qmax(f(a)?, f(b)?);
    to_int(value).ok_or_else(|| Error::NonIntegralResult(format!("pair term {value}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::SimpleOrbit;

    fn e57() -> SimpleOrbit {
        SimpleOrbit::elliptic("e", Q::new(5, 7)).unwrap()
    }

    fn end(orbit: &SimpleOrbit, m: i64, w: &[i64]) -> EndData {
        EndData::hol(orbit, m, w).unwrap()
    }

    #[test]
    fn single_end_examples() {
        let h = SimpleOrbit::even("h", 0);
        let big = SimpleOrbit::even("big", 3);
        assert_eq!(end(&big, 4, &[2, 1]).wind_infty().unwrap(), 2);
        assert_eq!(end(&h, 1, &[0]).wind_infty().unwrap(), 0);
        assert_eq!(end(&SimpleOrbit::even("n", 1), -3, &[-3, -4]).wind_infty().unwrap(), -3);
        assert_eq!(end(&e57(), 4, &[2]).d0().unwrap(), 0);
        assert_eq!(end(&e57(), 4, &[1]).d0().unwrap(), 1);
        assert_eq!(end(&h, 1, &[0]).d0().unwrap(), 0);
        assert_eq!(end(&e57(), 4, &[1]).delta1().unwrap(), 2);
        assert_eq!(end(&e57(), 4, &[2]).delta1().unwrap(), 0);
    }

    #[test]
    fn wind2_examples() {
        let big = SimpleOrbit::even("big", 3);
        assert_eq!(end(&big, 4, &[1]).wind2().unwrap(), 3);
        assert_eq!(end(&big, 4, &[2, 1]).wind2().unwrap(), 5);
        assert_eq!(end(&big, 1, &[3]).wind2().unwrap(), 0);
        assert_eq!(end(&big, 4, &[2, 1]).delta2().unwrap(), 0);
        assert_eq!(end(&big, 6, &[3, 1]).delta2().unwrap(), 2);
        assert_eq!(end(&big, 4, &[1]).self_asymptotic_intersection().unwrap(), -3);
        assert_eq!(end(&big, 4, &[2, 1]).self_asymptotic_intersection().unwrap(), -5);
        assert!(matches!(end(&big, 4, &[2]).wind2(), Err(Error::NotEmbeddedEnd(2))));
    }

    #[test]
    fn self_index_examples() {
        assert_eq!(end(&e57(), 4, &[1]).self_asymptotic_index().unwrap(), 1);
        assert_eq!(end(&e57(), 1, &[0]).self_asymptotic_index().unwrap(), 0);
        assert!(matches!(
            end(&e57(), 4, &[2]).self_asymptotic_index(),
            Err(Error::NotEmbeddedEnd(2))
        ));
        assert_eq!(end(&e57(), 4, &[2, 1]).self_asymptotic_index().unwrap(), 0);
    }

    #[test]
    fn cover_examples() {
        let h = SimpleOrbit::even("h", 1);
        let c = end(&h, 2, &[1]).cover(3).unwrap();
        assert_eq!((c.mult, c.windings.clone()), (6, vec![3]));
        assert_eq!(end(&h, 2, &[1]).cover(1).unwrap(), end(&h, 2, &[1]));
        let n = end(&h, -1, &[-1]).cover(2).unwrap();
        assert_eq!((n.mult, n.windings), (-2, vec![-2]));
    }

    #[test]
    fn pair_examples() {
        let h = SimpleOrbit::even("h", 1);
        let a = end(&h, 2, &[2]);
        let p = PairProfile::new(a.clone(), a.clone(), vec![2, 2]).unwrap();
        assert_eq!(p.wind_rel().unwrap(), 4);
        assert_eq!(p.asymptotic_intersection().unwrap(), -4);
        assert_eq!(p.asymptotic_index().unwrap(), 0);
        let q = PairProfile::new(a.clone(), a.clone(), vec![1, 2]).unwrap();
        assert_eq!(q.wind_rel().unwrap(), 3);
        assert_eq!(q.asymptotic_index().unwrap(), 1);
        let one = end(&h, 1, &[1]);
        let r = PairProfile::new(one.clone(), a.clone(), vec![2, 2]).unwrap();
        assert_eq!(r.form().unwrap(), PairForm::CommonCover);
        assert_eq!(r.asymptotic_intersection().unwrap(), -2);
        let s = PairProfile::new(one.clone(), one.clone(), vec![1]).unwrap();
        assert_eq!(s.asymptotic_index().unwrap(), 0);
        assert!(matches!(
            PairProfile::new(a.clone(), a.clone(), vec![3, 2]),
            Err(Error::ProfileBound { .. })
        ));
    }

    #[test]
    fn pair_retrivialization_keeps_index() {
        let h = SimpleOrbit::even("h", 1);
        let a = end(&h, 2, &[2]);
        let p = PairProfile::new(a.clone(), a, vec![1, 2]).unwrap();
        let shifted = p.retrivialize(1).unwrap();
        assert_eq!(shifted.relative_windings, vec![3, 4]);
        assert_eq!(shifted.asymptotic_index().unwrap(), p.asymptotic_index().unwrap());
    }

    #[test]
    fn end_retrivialization_example() {
        let e = end(&e57(), 4, &[2]);
        let s = e.retrivialize(1);
        assert_eq!(s.windings, vec![6]);
        assert_eq!(s.delta1().unwrap(), e.delta1().unwrap());
    }
}
