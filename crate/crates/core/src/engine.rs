//! Words in the generators acting on (ν, moduli point), orbits, and the cross-realization suites.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::convolution::{mc_pair, ConvolutionError};
use crate::lattice::{Generator, LatticeError};
use crate::params::{act_nu, Membership, ParamVector};
use crate::surface::{eval_map, phi_generator, MPoint, SurfaceError};

/// A sequence of generators, applied leftmost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl FromStr for Word {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, LatticeError> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Generator::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&tokens.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// How the central reflection is realized on points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Via {
    /// The quadratic transformation of the plane.
    Surface,
    /// Middle convolution of the attached connection.
    Mc,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModuliState {
    pub nu: ParamVector,
    pub point: MPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum StepError {
    #[error("nu is in {membership}; at least N0 is required")]
    OutsideN0 { membership: Membership },
    #[error("{0}")]
    #[serde(untagged)]
    Surface(SurfaceError),
    #[error("{0}")]
    #[serde(untagged)]
    Convolution(ConvolutionError),
}

impl StepError {
    pub fn code(&self) -> String {
        crate::report::error_code(self)
    }
}

/// A failed step, with the word position where it happened.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("step {position} ({generator}): {error}")]
pub struct ApplyError {
    pub position: usize,
    #[serde(serialize_with = "crate::report::display")]
    pub generator: Generator,
    pub code: String,
    pub error: StepError,
}

/// One generator acting on a state.
pub fn apply_generator(g: Generator, state: &ModuliState, via: Via) -> Result<ModuliState, StepError> {
    let membership = state.nu.membership();
    if membership < Membership::N0 {
        return Err(StepError::OutsideN0 { membership });
    }
    let nu = act_nu(g, &state.nu);
    let point = match (g, via) {
        (Generator::W(3), Via::Mc) => {
            let (q, p) = state.point.chart1();
            let r = mc_pair(&q, &p, &state.nu).map_err(StepError::Convolution)?;
            MPoint::from_chart1(r.qbar, r.pbar).map_err(StepError::Surface)?
        }
        _ => {
            let map = phi_generator(g, &state.nu).map_err(StepError::Surface)?;
            let image = eval_map(&map, state.point.point()).map_err(StepError::Surface)?;
            MPoint::new(image).map_err(StepError::Surface)?
        }
    };
    Ok(ModuliState { nu, point })
}

pub fn apply(word: &Word, state: &ModuliState, via: Via) -> Result<ModuliState, ApplyError> {
    let mut cur = state.clone();
    for (position, &g) in word.0.iter().enumerate() {
        cur = apply_generator(g, &cur, via).map_err(|error| ApplyError {
            position,
            generator: g,
            code: error.code(),
            error,
        })?;
    }
    Ok(cur)
}

/// States `s_0, s_1 = word(s_0), …`, stopping at the first failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub states: Vec<ModuliState>,
    pub stopped: Option<OrbitStop>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStop {
    /// The step that could not be completed (1-based).
    pub step: usize,
    pub error: ApplyError,
}

pub fn orbit(word: &Word, state: &ModuliState, steps: usize, via: Via) -> Orbit {
    let mut states = vec![state.clone()];
    let mut stopped = None;
    for step in 1..=steps {
        match apply(word, states.last().expect("nonempty"), via) {
            Ok(next) => states.push(next),
            Err(error) => {
                stopped = Some(OrbitStop { step, error });
                break;
            }
        }
    }
    Orbit { states, stopped }
}
