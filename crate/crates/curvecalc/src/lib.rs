//! Exact invariants of punctured pseudoholomorphic curves in symplectizations and
//! cylindrical cobordisms, theorem checkers, and a numerical spectral oracle.

pub mod commands;
pub mod curve;
pub mod end;
pub mod error;
pub mod generate;
pub mod local;
pub mod oracle;
pub mod orbit;
pub mod rational;
pub mod report;
pub mod selftest;
pub mod workspace;

pub use curve::{Component, CurveClass, CurveData, PairWitness, Witness};
pub use end::{EndData, PairForm, PairProfile};
pub use error::{Error, Result};
pub use orbit::{CoveredOrbit, OrbitKind, SimpleOrbit, TrivializationShift};
pub use rational::Q;
