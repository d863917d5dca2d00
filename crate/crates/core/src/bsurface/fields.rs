use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bcurve::uniform_parameters;

use super::surface::{BSurface, Point3};
use super::SurfaceError;

const DEGENERATE_AREA: f64 = 1e-14;

/// Scalar quantity sampled over the parameter domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Gaussian,
    Mean,
    Willmore,
    LogWillmore,
    Umbilic,
    LogUmbilic,
    Total,
    LogTotal,
    /// One Cartesian coordinate of the surface point.
    Coordinate(usize),
    /// Length of `∂s/∂u0 × ∂s/∂u1`.
    NormalLength,
}

impl FieldKind {
    pub const ALL_NAMED: [FieldKind; 10] = [
        FieldKind::Gaussian,
        FieldKind::Mean,
        FieldKind::Willmore,
        FieldKind::LogWillmore,
        FieldKind::Umbilic,
        FieldKind::LogUmbilic,
        FieldKind::Total,
        FieldKind::LogTotal,
        FieldKind::Coordinate(2),
        FieldKind::NormalLength,
    ];

    pub fn value(self, g: &SurfaceGeometry) -> f64 {
        let log = |raw: f64| raw.max(0.0).ln_1p();
        let (k, h) = (g.gaussian(), g.mean());
        match self {
            FieldKind::Gaussian => k,
            FieldKind::Mean => h,
            FieldKind::Willmore => h * h,
            FieldKind::LogWillmore => log(h * h),
            FieldKind::Umbilic => h * h - k,
            FieldKind::LogUmbilic => log(h * h - k),
            FieldKind::Total => 4.0 * h * h - 2.0 * k,
            FieldKind::LogTotal => log(4.0 * h * h - 2.0 * k),
            FieldKind::Coordinate(c) => g.position[c.min(2)],
            FieldKind::NormalLength => g.area_element(),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Gaussian => f.write_str("gaussian"),
            FieldKind::Mean => f.write_str("mean"),
            FieldKind::Willmore => f.write_str("willmore"),
            FieldKind::LogWillmore => f.write_str("log_willmore"),
            FieldKind::Umbilic => f.write_str("umbilic"),
            FieldKind::LogUmbilic => f.write_str("log_umbilic"),
            FieldKind::Total => f.write_str("total"),
            FieldKind::LogTotal => f.write_str("log_total"),
            FieldKind::Coordinate(c) => write!(f, "coordinate{c}"),
            FieldKind::NormalLength => f.write_str("normal_length"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = SurfaceError;

    /// `coordinate` alone selects the third coordinate.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gaussian" => FieldKind::Gaussian,
            "mean" => FieldKind::Mean,
            "willmore" => FieldKind::Willmore,
            "log_willmore" => FieldKind::LogWillmore,
            "umbilic" => FieldKind::Umbilic,
            "log_umbilic" => FieldKind::LogUmbilic,
            "total" => FieldKind::Total,
            "log_total" => FieldKind::LogTotal,
            "coordinate" | "coordinate2" => FieldKind::Coordinate(2),
            "coordinate0" => FieldKind::Coordinate(0),
            "coordinate1" => FieldKind::Coordinate(1),
            "normal_length" => FieldKind::NormalLength,
            _ => return Err(SurfaceError::UnknownField(s.to_string())),
        })
    }
}

fn dot(a: &Point3, b: &Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &Point3, b: &Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// First and second fundamental forms at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceGeometry {
    pub position: Point3,
    pub normal: Point3,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl SurfaceGeometry {
    pub fn at(s: &BSurface, u0: f64, u1: f64) -> Result<Self, SurfaceError> {
        let d = s.partials(2, u0, u1)?;
        let (su, sv) = (d[1][0], d[0][1]);
        let (e, f, g) = (dot(&su, &su), dot(&su, &sv), dot(&sv, &sv));
        if e * g - f * f < DEGENERATE_AREA {
            return Err(SurfaceError::DegeneratePoint { u0, u1 });
        }
        let c = cross(&su, &sv);
        let len = dot(&c, &c).sqrt();
        let normal = [c[0] / len, c[1] / len, c[2] / len];
        Ok(Self {
            position: d[0][0],
            normal,
            e,
            f,
            g,
            l: dot(&d[2][0], &normal),
            m: dot(&d[1][1], &normal),
            n: dot(&d[0][2], &normal),
        })
    }

    pub fn area_element(&self) -> f64 {
        (self.e * self.g - self.f * self.f).sqrt()
    }

    pub fn gaussian(&self) -> f64 {
        (self.l * self.n - self.m * self.m) / (self.e * self.g - self.f * self.f)
    }

    pub fn mean(&self) -> f64 {
        (self.e * self.n - 2.0 * self.f * self.m + self.g * self.l)
            / (2.0 * (self.e * self.g - self.f * self.f))
    }
}

/// Values over an `m0 × m1` parameter grid, stored row-major in `u0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub kind: FieldKind,
    pub u0: Vec<f64>,
    pub u1: Vec<f64>,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn get(&self, i0: usize, i1: usize) -> f64 {
        self.values[i0 * self.u1.len() + i1]
    }

    pub fn range(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

pub(crate) fn grid_parameters(
    s: &BSurface,
    m0: usize,
    m1: usize,
) -> Result<(Vec<f64>, Vec<f64>), SurfaceError> {
    if m0 < 2 || m1 < 2 {
        return Err(SurfaceError::GridTooSmall(m0, m1));
    }
    let [a0, b0, a1, b1] = s.domain();
    Ok((
        uniform_parameters(a0, b0, m0),
        uniform_parameters(a1, b1, m1),
    ))
}

/// Maps `f` over the grid in parallel; output is row-major in `u0`.
pub(crate) fn map_grid<T: Send>(
    u0: &[f64],
    u1: &[f64],
    f: impl Fn(f64, f64) -> Result<T, SurfaceError> + Sync,
) -> Result<Vec<T>, SurfaceError> {
    let m1 = u1.len();
    (0..u0.len() * m1)
        .into_par_iter()
        .map(|k| f(u0[k / m1], u1[k % m1]))
        .collect()
}

pub fn curvature_field(
    s: &BSurface,
    m0: usize,
    m1: usize,
    kind: FieldKind,
) -> Result<ScalarField, SurfaceError> {
    let (u0, u1) = grid_parameters(s, m0, m1)?;
    let values = map_grid(&u0, &u1, |a, b| {
        SurfaceGeometry::at(s, a, b).map(|g| kind.value(&g))
    })?;
    Ok(ScalarField {
        kind,
        u0,
        u1,
        values,
    })
}
