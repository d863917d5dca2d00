//! JSON run configuration.
//!
//! Spaces are given by characteristic zeros, curves by control points or
//! ordinary coefficients, and surfaces by a control net or a sum of separable
//! terms. Ordinary basis functions are written as
//! `{"power": r, "exp_rate": a, "frequency": b, "phase": "cos" | "sin", "coefficient": c}`
//! with every field except `coefficient` optional.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use ecbasis::bsurface::{represent_ordinary_surface, SeparableSurfaceSpec, SeparableTerm};
use ecbasis::ecspace::{
    make_polynomial, CharacteristicPolynomial, CharacteristicZero, EcSpace, OrdinaryBasisFunction,
    Phase, SpaceOptions,
};
use ecbasis::{bcurve::represent_ordinary_curve, BCurve, BSurface};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub space: Option<SpaceConfig>,
    pub curve: Option<CurveConfig>,
    pub surface: Option<SurfaceConfig>,
    pub critical_length: Option<CriticalLengthConfig>,
    pub conditioning_sweep: Option<SweepConfig>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(CliError::io(path))?;
        serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_path_buf(),
            source,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroConfig {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

fn polynomial(zeros: &[ZeroConfig]) -> Result<CharacteristicPolynomial, CliError> {
    let zeros: Vec<CharacteristicZero> = zeros
        .iter()
        .map(|z| CharacteristicZero::new(z.re, z.im, z.multiplicity))
        .collect();
    Ok(make_polynomial(&zeros)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub zeros: Vec<ZeroConfig>,
    pub alpha: f64,
    pub beta: f64,
}

impl SpaceConfig {
    pub fn polynomial(&self) -> Result<CharacteristicPolynomial, CliError> {
        polynomial(&self.zeros)
    }

    pub fn build(&self, options: &SpaceOptions) -> Result<Arc<EcSpace>, CliError> {
        Ok(Arc::new(EcSpace::build(
            &self.polynomial()?,
            self.alpha,
            self.beta,
            options,
        )?))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConfig {
    #[default]
    Cos,
    Sin,
}

/// `coefficient · u^power e^{exp_rate u} cos/sin(frequency u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    #[serde(default)]
    pub power: usize,
    #[serde(default)]
    pub exp_rate: f64,
    #[serde(default)]
    pub frequency: f64,
    #[serde(default)]
    pub phase: PhaseConfig,
    pub coefficient: f64,
}

impl TermConfig {
    fn function(&self) -> Result<OrdinaryBasisFunction, CliError> {
        let phase = match self.phase {
            PhaseConfig::Cos => Phase::Cos,
            PhaseConfig::Sin if self.frequency == 0.0 => {
                return Err(CliError::InvalidConfig(
                    "a sin term needs a nonzero frequency".into(),
                ))
            }
            PhaseConfig::Sin => Phase::Sin,
        };
        Ok(OrdinaryBasisFunction::new(
            self.power,
            self.exp_rate,
            self.frequency.abs(),
            phase,
        ))
    }
}

/// Coordinates of a linear combination of ordinary functions in the ordinary basis of `space`.
pub fn ordinary_coordinates(space: &EcSpace, terms: &[TermConfig]) -> Result<Vec<f64>, CliError> {
    let mut lambda = vec![0.0; space.dimension()];
    for t in terms {
        let f = t.function()?;
        let k = space
            .ordinary_index(&f)
            .ok_or_else(|| CliError::InvalidConfig(format!("{} is not in the space", f.latex())))?;
        lambda[k] += t.coefficient;
    }
    Ok(lambda)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub space: SpaceConfig,
    /// One point per B-basis function.
    pub control_points: Option<Vec<Vec<f64>>>,
    /// One list of terms per coordinate.
    pub ordinary: Option<Vec<Vec<TermConfig>>>,
}

impl CurveConfig {
    pub fn build(&self, options: &SpaceOptions) -> Result<BCurve, CliError> {
        let space = self.space.build(options)?;
        match (&self.control_points, &self.ordinary) {
            (Some(points), None) => Ok(BCurve::new(space, points.clone())?),
            (None, Some(coordinates)) => {
                let columns = coordinates
                    .iter()
                    .map(|terms| ordinary_coordinates(&space, terms))
                    .collect::<Result<Vec<_>, _>>()?;
                let lambda: Vec<Vec<f64>> = (0..space.dimension())
                    .map(|k| columns.iter().map(|c| c[k]).collect())
                    .collect();
                Ok(represent_ordinary_curve(space, &lambda)?)
            }
            _ => Err(CliError::InvalidConfig(
                "a curve needs exactly one of `control_points` and `ordinary`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparableTermConfig {
    pub u0: Vec<TermConfig>,
    pub u1: Vec<TermConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsolineConfig {
    pub lines: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub u0: SpaceConfig,
    pub u1: SpaceConfig,
    /// `net[i0][i1]`.
    pub net: Option<Vec<Vec<[f64; 3]>>>,
    /// Sums of separable terms for the x, y and z coordinates.
    pub separable: Option<[Vec<SeparableTermConfig>; 3]>,
    /// Field used to color the mesh.
    pub field: Option<String>,
    pub isolines_u0: Option<IsolineConfig>,
    pub isolines_u1: Option<IsolineConfig>,
}

impl SurfaceConfig {
    pub fn build(&self, options: &SpaceOptions) -> Result<BSurface, CliError> {
        let s0 = self.u0.build(options)?;
        let s1 = self.u1.build(options)?;
        match (&self.net, &self.separable) {
            (Some(net), None) => Ok(BSurface::new(s0, s1, net.clone())?),
            (None, Some(coordinates)) => {
                let mut spec = SeparableSurfaceSpec::default();
                for (out, terms) in spec.coordinates.iter_mut().zip(coordinates) {
                    for t in terms {
                        out.push(SeparableTerm {
                            u0: ordinary_coordinates(&s0, &t.u0)?,
                            u1: ordinary_coordinates(&s1, &t.u1)?,
                        });
                    }
                }
                Ok(represent_ordinary_surface(s0, s1, &spec)?)
            }
            _ => Err(CliError::InvalidConfig(
                "a surface needs exactly one of `net` and `separable`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalLengthConfig {
    pub zeros: Vec<ZeroConfig>,
    #[serde(default)]
    pub alpha: f64,
    pub search_cap: Option<f64>,
    pub grid_step: Option<f64>,
    /// Scan the derivative space, which bounds the B-basis interval.
    #[serde(default = "yes")]
    pub design: bool,
}

fn yes() -> bool {
    true
}

impl CriticalLengthConfig {
    pub fn polynomial(&self) -> Result<CharacteristicPolynomial, CliError> {
        polynomial(&self.zeros)
    }
}

/// Polynomial spaces `P_n` on `[alpha, beta]` for `n = 1..=max_order`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub max_order: usize,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default = "unit")]
    pub beta: f64,
}

fn unit() -> f64 {
    1.0
}
