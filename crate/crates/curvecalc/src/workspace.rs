//! Workspace files: JSON with orbits, curves, pair profiles, open books, buildings and
//! oracle scenarios. Exact fields use integers and `{num, den}` rationals; floats are only
//! accepted in oracle scenarios. Diagnostics carry a JSON pointer.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::curve::{Component, CurveClass, CurveData, Matching, OpenBookData, PairWitness, Witness};
use crate::end::{EndData, PairProfile};
use crate::error::{Error, Result};
use crate::oracle::{LoopOperator, Sym2};
use crate::orbit::{OrbitKind, SimpleOrbit, DEFAULT_HORIZON};
use crate::rational::{self, Q};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the directory that holds `workspace.json`.
pub const WORKSPACE_ENV: &str = "CURVECALC_WORKSPACE";
pub const WORKSPACE_FILE: &str = "workspace.json";

fn one() -> Q {
    Q::from_integer(1)
}

fn default_horizon() -> i64 {
    DEFAULT_HORIZON
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    name: String,
    #[serde(with = "rational", default = "one")]
    period: Q,
    kind: OrbitKind,
    #[serde(default = "default_horizon")]
    horizon: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPuncture {
    orbit: String,
    mult: i64,
    windings: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    #[serde(default)]
    genus: i64,
    punctures: Vec<RawPuncture>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    name: String,
    class: CurveClass,
    #[serde(default)]
    c1_rel: i64,
    #[serde(default = "yes")]
    simple: bool,
    components: Vec<RawComponent>,
    #[serde(default)]
    witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PunctureRef {
    pub curve: String,
    pub puncture: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    a: PunctureRef,
    b: PunctureRef,
    relative_windings: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOpenBook {
    name: String,
    bindings: Vec<String>,
    page: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBuilding {
    name: String,
    upper: String,
    lower: String,
    matching: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    version: u32,
    #[serde(default)]
    orbits: Vec<RawOrbit>,
    #[serde(default)]
    curves: Vec<RawCurve>,
    #[serde(default)]
    pairs: Vec<RawPair>,
    #[serde(default)]
    openbooks: Vec<RawOpenBook>,
    #[serde(default)]
    buildings: Vec<RawBuilding>,
    #[serde(default)]
    oracle_scenarios: Vec<OracleScenario>,
}

/// Loop operator family of an oracle scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OracleModel {
    Elliptic { theta: f64 },
    EvenHyperbolic { d: i64, a: f64 },
    OddHyperbolic { d: i64, a: f64 },
    Fourier { operator: LoopOperator },
    Samples { samples: Vec<Sym2> },
}

fn default_modes() -> usize {
    32
}

fn default_window() -> f64 {
    40.0
}

fn default_cover() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleScenario {
    pub name: String,
    #[serde(flatten)]
    pub model: OracleModel,
    #[serde(default = "default_cover")]
    pub cover: usize,
    #[serde(default = "default_modes")]
    pub modes: usize,
    #[serde(default = "default_window")]
    pub window: f64,
}

impl OracleScenario {
    pub fn operator(&self) -> Result<LoopOperator> {
        let base = match &self.model {
            OracleModel::Elliptic { theta } => LoopOperator::elliptic(*theta),
            OracleModel::EvenHyperbolic { d, a } => LoopOperator::even_hyperbolic(*d, *a),
            OracleModel::OddHyperbolic { d, a } => LoopOperator::odd_hyperbolic(*d, *a),
            OracleModel::Fourier { operator } => operator.clone(),
            OracleModel::Samples { samples } => LoopOperator::from_samples(samples)?,
        };
        if self.cover == 0 {
            return Err(Error::InvalidProfile("cover degree must be positive".into()));
        }
        Ok(base.cover(self.cover))
    }
}

/// Two-level building: the upper level's negative punctures matched with the lower level's positive ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Building {
    pub name: String,
    pub upper: String,
    pub lower: String,
    pub matching: Matching,
}

/// Validated workspace with every reference resolved.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Workspace {
    pub orbits: BTreeMap<String, SimpleOrbit>,
    pub curves: BTreeMap<String, CurveData>,
    pub openbooks: BTreeMap<String, OpenBookData>,
    pub buildings: BTreeMap<String, Building>,
    pub oracle_scenarios: BTreeMap<String, OracleScenario>,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn reference(pointer: impl Into<String>, name: &str) -> Error {
    Error::Reference {
        pointer: pointer.into(),
        name: name.to_string(),
    }
}

fn guard(pointer: impl Into<String>, e: &Error) -> Error {
    Error::Guard {
        pointer: pointer.into(),
        message: e.to_string(),
    }
}

/// Library error found while validating the item at `pointer`.
fn invalid(pointer: impl Into<String>, e: &Error) -> Error {
    schema(pointer, format!("{}: {e}", e.code()))
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", escape(key))),
            Segment::Enum { variant } => out.push_str(&format!("/{}", escape(variant))),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        "/".into()
    } else {
        out
    }
}

fn unique<'a>(names: impl Iterator<Item = &'a String>, section: &str) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for (i, name) in names.enumerate() {
        if !seen.insert(name) {
            return Err(schema(format!("/{section}/{i}/name"), format!("duplicate name `{name}`")));
        }
    }
    Ok(())
}

impl Workspace {
    /// Parses and validates a workspace document.
    pub fn parse_str(text: &str) -> Result<Workspace> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| schema("/", format!("malformed JSON: {e}")))?;
        match value.get("version").and_then(serde_json::Value::as_u64) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => {}
            Some(v) => return Err(schema("/version", format!("unsupported schema version {v}"))),
            None => return Err(schema("/version", "missing integer schema version")),
        }
        let raw: RawWorkspace = serde_path_to_error::deserialize(value)
            .map_err(|e| schema(pointer_of(e.path()), e.inner().to_string()))?;
        Self::resolve(raw)
    }

    pub fn parse_file(path: &Path) -> Result<Workspace> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Workspace file location: an explicit path (file or directory) or the directory named by
    /// the environment variable.
    pub fn locate(explicit: Option<&Path>) -> Result<PathBuf> {
        let base = match explicit {
            Some(p) => p.to_path_buf(),
            None => std::env::var_os(WORKSPACE_ENV)
                .map(PathBuf::from)
                .ok_or_else(|| Error::Io(format!("no workspace given and {WORKSPACE_ENV} is unset")))?,
        };
        Ok(if base.is_dir() { base.join(WORKSPACE_FILE) } else { base })
    }

    fn resolve(raw: RawWorkspace) -> Result<Workspace> {
        unique(raw.orbits.iter().map(|o| &o.name), "orbits")?;
        unique(raw.curves.iter().map(|c| &c.name), "curves")?;
        unique(raw.openbooks.iter().map(|o| &o.name), "openbooks")?;
        unique(raw.buildings.iter().map(|b| &b.name), "buildings")?;
        unique(raw.oracle_scenarios.iter().map(|s| &s.name), "oracle_scenarios")?;

        let mut ws = Workspace::default();
        for (i, o) in raw.orbits.iter().enumerate() {
            let orbit = SimpleOrbit {
                name: o.name.clone(),
                period: o.period,
                kind: o.kind.clone(),
                horizon: o.horizon,
            };
            orbit.validate().map_err(|e| invalid(format!("/orbits/{i}"), &e))?;
            ws.orbits.insert(o.name.clone(), orbit);
        }

        for (i, c) in raw.curves.iter().enumerate() {
            let curve = ws.resolve_curve(i, c)?;
            ws.curves.insert(c.name.clone(), curve);
        }
        for (i, c) in raw.curves.iter().enumerate() {
            ws.check_witness_refs(i, c)?;
        }

        for (i, p) in raw.pairs.iter().enumerate() {
            ws.attach_pair(i, p)?;
        }
        for (i, c) in raw.curves.iter().enumerate() {
            let curve = &ws.curves[&c.name];
            curve.validate().map_err(|e| invalid(format!("/curves/{i}"), &e))?;
            ws.check_profiles(i, curve)?;
        }

        for (i, ob) in raw.openbooks.iter().enumerate() {
            let base = format!("/openbooks/{i}");
            let bindings = ob
                .bindings
                .iter()
                .enumerate()
                .map(|(j, b)| ws.orbits.get(b).cloned().ok_or_else(|| reference(format!("{base}/bindings/{j}"), b)))
                .collect::<Result<Vec<_>>>()?;
            let page = ws
                .curves
                .get(&ob.page)
                .cloned()
                .ok_or_else(|| reference(format!("{base}/page"), &ob.page))?;
            let data = OpenBookData {
                name: ob.name.clone(),
                bindings,
                page,
            };
            data.validate().map_err(|e| invalid(base, &e))?;
            ws.openbooks.insert(ob.name.clone(), data);
        }

        for (i, b) in raw.buildings.iter().enumerate() {
            let base = format!("/buildings/{i}");
            for (field, name) in [("upper", &b.upper), ("lower", &b.lower)] {
                if !ws.curves.contains_key(name) {
                    return Err(reference(format!("{base}/{field}"), name));
                }
            }
            ws.buildings.insert(
                b.name.clone(),
                Building {
                    name: b.name.clone(),
                    upper: b.upper.clone(),
                    lower: b.lower.clone(),
                    matching: Matching {
                        pairs: b.matching.clone(),
                    },
                },
            );
        }

        for (i, s) in raw.oracle_scenarios.iter().enumerate() {
            s.operator().map_err(|e| invalid(format!("/oracle_scenarios/{i}"), &e))?;
            ws.oracle_scenarios.insert(s.name.clone(), s.clone());
        }
        Ok(ws)
    }

    fn resolve_curve(&self, i: usize, c: &RawCurve) -> Result<CurveData> {
        let hol = c.class.has_holomorphic_ends();
        let mut components = Vec::new();
        for (j, comp) in c.components.iter().enumerate() {
            let mut punctures = Vec::new();
            for (k, p) in comp.punctures.iter().enumerate() {
                let base = format!("/curves/{i}/components/{j}/punctures/{k}");
                let orbit = self
                    .orbits
                    .get(&p.orbit)
                    .ok_or_else(|| reference(format!("{base}/orbit"), &p.orbit))?;
                orbit.guard(p.mult).map_err(|e| guard(format!("{base}/mult"), &e))?;
                let end = EndData::new(orbit.clone(), p.mult, p.windings.clone(), hol)
                    .map_err(|e| invalid(format!("{base}/windings"), &e))?;
                punctures.push(end);
            }
            components.push(Component {
                genus: comp.genus,
                punctures,
            });
        }
        let mut curve = CurveData::new(c.name.clone(), components, c.c1_rel, c.class);
        curve.simple = c.simple;
        curve.witness = c.witness.clone();
        Ok(curve)
    }

    fn check_witness_refs(&self, i: usize, c: &RawCurve) -> Result<()> {
        let Some(w) = &c.witness else { return Ok(()) };
        let base = format!("/curves/{i}/witness");
        for name in w.orbit_intersections.keys() {
            if !self.orbits.contains_key(name) {
                return Err(reference(format!("{base}/orbit_intersections/{}", escape(name)), name));
            }
        }
        for (field, map) in [
            ("pair_intersections", &w.pair_intersections),
            ("relative_intersections", &w.relative_intersections),
        ] {
            for name in map.keys() {
                if !self.curves.contains_key(name) {
                    return Err(reference(format!("{base}/{field}/{}", escape(name)), name));
                }
            }
        }
        for (j, p) in w.pair_profiles.iter().enumerate() {
            if let Some(other) = &p.other {
                if !self.curves.contains_key(other) {
                    return Err(reference(format!("{base}/pair_profiles/{j}/other"), other));
                }
            }
        }
        Ok(())
    }

    fn attach_pair(&mut self, i: usize, p: &RawPair) -> Result<()> {
        let base = format!("/pairs/{i}");
        let end = |r: &PunctureRef, field: &str| -> Result<EndData> {
            let curve = self
                .curves
                .get(&r.curve)
                .ok_or_else(|| reference(format!("{base}/{field}/curve"), &r.curve))?;
            curve
                .end(r.puncture)
                .cloned()
                .map_err(|e| invalid(format!("{base}/{field}/puncture"), &e))
        };
        let (a, b) = (end(&p.a, "a")?, end(&p.b, "b")?);
        if p.a == p.b {
            return Err(schema(base, "a pair needs two distinct punctures"));
        }
        PairProfile::new(a, b, p.relative_windings.clone()).map_err(|e| invalid(format!("{base}/relative_windings"), &e))?;
        let curve = self.curves.get_mut(&p.a.curve).expect("checked above");
        let witness = curve.witness.get_or_insert_with(Witness::default);
        witness.pair_profiles.push(PairWitness {
            other: (p.b.curve != p.a.curve).then(|| p.b.curve.clone()),
            a: p.a.puncture,
            b: p.b.puncture,
            relative_windings: p.relative_windings.clone(),
        });
        Ok(())
    }

    fn check_profiles(&self, i: usize, curve: &CurveData) -> Result<()> {
        let Some(w) = &curve.witness else { return Ok(()) };
        for (j, p) in w.pair_profiles.iter().enumerate() {
            let pointer = format!("/curves/{i}/witness/pair_profiles/{j}");
            let result = match &p.other {
                None => curve.self_pair(p.a, p.b).map(|_| ()),
                Some(other) => curve.cross_pair(p.a, &self.curves[other], p.b).map(|_| ()),
            };
            result.map_err(|e| invalid(pointer, &e))?;
        }
        Ok(())
    }

    pub fn orbit(&self, name: &str) -> Result<&SimpleOrbit> {
        self.orbits.get(name).ok_or_else(|| reference("/orbits", name))
    }

    pub fn curve(&self, name: &str) -> Result<&CurveData> {
        self.curves.get(name).ok_or_else(|| reference("/curves", name))
    }

    pub fn openbook(&self, name: &str) -> Result<&OpenBookData> {
        self.openbooks.get(name).ok_or_else(|| reference("/openbooks", name))
    }

    pub fn building(&self, name: &str) -> Result<&Building> {
        self.buildings.get(name).ok_or_else(|| reference("/buildings", name))
    }

    pub fn scenario(&self, name: &str) -> Result<&OracleScenario> {
        self.oracle_scenarios
            .get(name)
            .ok_or_else(|| reference("/oracle_scenarios", name))
    }
}
