//! Adjunction formula, its index form and the `wind_pi` identity.

use serde::{Deserialize, Serialize};

use super::{gin_cylindrical, same_sign_pairs, CurveClass, CurveData};
use crate::error::{Error, Result};

fn require_simple_holomorphic(u: &CurveData) -> Result<()> {
    if !u.simple {
        return Err(Error::NotSimple(u.name.clone()));
    }
    if u.class != CurveClass::Holomorphic {
        return Err(Error::WrongClass(u.name.clone()));
    }
    Ok(())
}

fn half(twice: i64, what: &str) -> Result<i64> {
    if twice % 2 != 0 {
        return Err(Error::InconsistentWitness(format!("{what} {twice}/2 is not an integer")));
    }
    Ok(twice / 2)
}

/// `gin(u,u) - mu/2 + #Gamma_odd/2 + chi - sigma_bar`, required to be even and nonnegative.
pub fn adjunction_defect(u: &CurveData) -> Result<i64> {
    require_simple_holomorphic(u)?;
    let gin = gin_cylindrical(u, u)?.total;
    let defect = gin + half(u.num_odd()? - u.total_cz()?, "adjunction defect")?
        + u.euler_characteristic()
        - u.sigma_bar()?;
    if defect < 0 || defect % 2 != 0 {
        return Err(Error::InconsistentWitness(format!(
            "adjunction defect {defect} of `{}` is not even and nonnegative",
            u.name
        )));
    }
    Ok(defect)
}

/// Same defect written as `gin(u,u) - (ind - chi + #Gamma_even)/2 + #Gamma - sigma_bar`.
pub fn adjunction_defect_index_form(u: &CurveData) -> Result<i64> {
    require_simple_holomorphic(u)?;
    let gin = gin_cylindrical(u, u)?.total;
    let twice = u.fredholm_index()? - u.euler_characteristic() + u.num_even()?;
    Ok(gin - half(twice, "index term")? + u.num_punctures() as i64 - u.sigma_bar()?)
}

/// Total asymptotic self-intersection index `delta_infty(u)` from end and self-pair data.
pub fn self_asymptotic_index_total(u: &CurveData) -> Result<i64> {
    let mut total = 0;
    for end in u.ends() {
        total += end.self_asymptotic_index()?;
    }
    for (i, _, j, _) in same_sign_pairs(u, u) {
        if i < j {
            total += u.self_pair(i, j)?.asymptotic_index()?;
        }
    }
    Ok(total)
}

/// `gin(u,u)` from double points and asymptotic indices via the adjunction formula.
pub fn self_gin_from_witness(u: &CurveData) -> Result<i64> {
    require_simple_holomorphic(u)?;
    let sing = u.double_points()? + self_asymptotic_index_total(u)?;
    Ok(2 * sing + half(u.total_cz()? - u.num_odd()?, "mu term")? - u.euler_characteristic()
        + u.sigma_bar()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindPiReport {
    pub wind_pi: i64,
    pub d0: i64,
    /// `(ind - chi + #Gamma_even) / 2`.
    pub index_side: i64,
    /// `gin(u,u) - wind_pi - d0 + #Gamma - sigma_bar`, twice the singularity index.
    pub twice_sing: i64,
}

/// Checks `wind_pi + d0 = (ind - chi + #Gamma_even)/2` for the declared `wind_pi`.
pub fn windpi_consistency(u: &CurveData) -> Result<WindPiReport> {
    if u.class != CurveClass::Holomorphic {
        return Err(Error::WrongClass(u.name.clone()));
    }
    let wind_pi = u.wind_pi()?;
    let d0 = u.d0()?;
    let twice = u.fredholm_index()? - u.euler_characteristic() + u.num_even()?;
    let index_side = half(twice, "index term")?;
    if wind_pi + d0 != index_side {
        return Err(Error::InconsistentWitness(format!(
            "wind_pi {wind_pi} + d0 {d0} != {index_side} for `{}`",
            u.name
        )));
    }
    let gin = gin_cylindrical(u, u)?.total;
    let twice_sing = gin - wind_pi - d0 + u.num_punctures() as i64 - u.sigma_bar()?;
    Ok(WindPiReport {
        wind_pi,
        d0,
        index_side,
        twice_sing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Witness;
    use crate::end::EndData;
    use crate::orbit::SimpleOrbit;
    use crate::rational::Q;

    fn page(w: i64) -> CurveData {
        let b = SimpleOrbit::elliptic("b", Q::new(6, 5)).unwrap();
        let witness = Witness {
            double_points: Some(0),
            wind_pi: Some(0),
            orbit_intersections: [("b".to_string(), 0)].into(),
            ..Witness::default()
        };
        CurveData::connected("page", 0, vec![EndData::hol(&b, 1, &[w]).unwrap()], 0, CurveClass::Holomorphic)
            .with_witness(witness)
    }

    #[test]
    fn page_defect_vanishes() {
        let p = page(1);
        assert_eq!(adjunction_defect(&p).unwrap(), 0);
        assert_eq!(adjunction_defect_index_form(&p).unwrap(), 0);
        assert_eq!(self_gin_from_witness(&p).unwrap(), 0);
        assert_eq!(p.fredholm_index().unwrap(), 2);
    }

    #[test]
    fn odd_defect_is_rejected() {
        assert!(matches!(
            adjunction_defect(&page(0)),
            Err(Error::InconsistentWitness(_))
        ));
    }

    #[test]
    fn embedded_cylinder_between_even_orbits() {
        let (h, g) = (SimpleOrbit::even("h", 0), SimpleOrbit::even("g", 0));
        let witness = Witness {
            orbit_intersections: [("h".to_string(), 0), ("g".to_string(), 0)].into(),
            ..Witness::default()
        };
        let cyl = CurveData::connected(
            "cyl",
            0,
            vec![EndData::hol(&h, 1, &[0]).unwrap(), EndData::hol(&g, -1, &[0]).unwrap()],
            0,
            CurveClass::Holomorphic,
        )
        .with_witness(witness);
        assert_eq!(adjunction_defect(&cyl).unwrap(), 0);
    }

    #[test]
    fn windpi_examples() {
        let r = windpi_consistency(&page(1)).unwrap();
        assert_eq!((r.wind_pi, r.d0, r.index_side, r.twice_sing), (0, 0, 0, 0));
        let mut bad = page(1);
        bad.witness.as_mut().unwrap().wind_pi = Some(1);
        assert!(matches!(windpi_consistency(&bad), Err(Error::InconsistentWitness(_))));
    }
}
