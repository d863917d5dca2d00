use std::sync::Arc;

use rayon::prelude::*;

use crate::bcurve::{
    elevate_order, split_spaces, subdivide_with, uniform_parameters, BCurve, SampledCurve,
};
use crate::ecspace::{transformation_matrix, EcSpace};

use super::SurfaceError;

pub type Point3 = [f64; 3];

/// Parameter direction of a tensor-product surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    U0,
    U1,
}

/// `s(u0, u1) = Σ Σ p_{i0,i1} b_{i0}(u0) b_{i1}(u1)`.
#[derive(Debug, Clone)]
pub struct BSurface {
    space_u0: Arc<EcSpace>,
    space_u1: Arc<EcSpace>,
    /// `net[i0][i1]`.
    net: Vec<Vec<Point3>>,
}

fn add_scaled(acc: &mut Point3, p: &Point3, w: f64) {
    for d in 0..3 {
        acc[d] += w * p[d];
    }
}

impl BSurface {
    pub fn new(
        space_u0: Arc<EcSpace>,
        space_u1: Arc<EcSpace>,
        net: Vec<Vec<Point3>>,
    ) -> Result<Self, SurfaceError> {
        let (r, c) = (space_u0.dimension(), space_u1.dimension());
        let cols = net.first().map_or(0, Vec::len);
        if net.len() != r || net.iter().any(|row| row.len() != c) {
            return Err(SurfaceError::NetShape {
                rows: net.len(),
                cols,
                expected_rows: r,
                expected_cols: c,
            });
        }
        Ok(Self {
            space_u0,
            space_u1,
            net,
        })
    }

    pub fn space_u0(&self) -> &Arc<EcSpace> {
        &self.space_u0
    }

    pub fn space_u1(&self) -> &Arc<EcSpace> {
        &self.space_u1
    }

    pub fn space(&self, direction: Direction) -> &Arc<EcSpace> {
        match direction {
            Direction::U0 => &self.space_u0,
            Direction::U1 => &self.space_u1,
        }
    }

    pub fn control_net(&self) -> &[Vec<Point3>] {
        &self.net
    }

    /// `[α0, β0, α1, β1]`.
    pub fn domain(&self) -> [f64; 4] {
        [
            self.space_u0.alpha(),
            self.space_u0.beta(),
            self.space_u1.alpha(),
            self.space_u1.beta(),
        ]
    }

    /// `∂^{j0+j1} s / ∂u0^{j0} ∂u1^{j1}` at `(u0, u1)`.
    pub fn eval(&self, j0: usize, j1: usize, u0: f64, u1: f64) -> Result<Point3, SurfaceError> {
        let b0 = self.space_u0.b_values(j0, u0)?;
        let b1 = self.space_u1.b_values(j1, u1)?;
        Ok(self.blend(&b0, &b1))
    }

    pub(crate) fn blend(&self, b0: &[f64], b1: &[f64]) -> Point3 {
        let mut out = [0.0; 3];
        for (row, w0) in self.net.iter().zip(b0) {
            let mut inner = [0.0; 3];
            for (p, w1) in row.iter().zip(b1) {
                add_scaled(&mut inner, p, *w1);
            }
            add_scaled(&mut out, &inner, *w0);
        }
        out
    }

    /// All mixed partials with `j0, j1 ≤ max_order`, indexed `[j0][j1]`.
    pub fn partials(
        &self,
        max_order: usize,
        u0: f64,
        u1: f64,
    ) -> Result<Vec<Vec<Point3>>, SurfaceError> {
        let b0: Vec<Vec<f64>> = (0..=max_order)
            .map(|j| self.space_u0.b_values(j, u0))
            .collect::<Result<_, _>>()?;
        let b1: Vec<Vec<f64>> = (0..=max_order)
            .map(|j| self.space_u1.b_values(j, u1))
            .collect::<Result<_, _>>()?;
        Ok(b0
            .iter()
            .map(|x| b1.iter().map(|y| self.blend(x, y)).collect())
            .collect())
    }

    /// Rows of the net along `direction` as curves over that direction's space.
    fn strands(&self, direction: Direction) -> Result<Vec<BCurve>, SurfaceError> {
        let (r, c) = (self.net.len(), self.net[0].len());
        let space = self.space(direction).clone();
        let strands = match direction {
            Direction::U0 => (0..c)
                .map(|i1| {
                    (0..r)
                        .map(|i0| self.net[i0][i1].to_vec())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
            Direction::U1 => (0..r)
                .map(|i0| self.net[i0].iter().map(|p| p.to_vec()).collect())
                .collect(),
        };
        strands
            .into_iter()
            .map(|pts| BCurve::new(space.clone(), pts).map_err(SurfaceError::from))
            .collect()
    }

    fn from_strands(
        &self,
        direction: Direction,
        space: Arc<EcSpace>,
        strands: &[BCurve],
    ) -> Result<Self, SurfaceError> {
        let to3 = |p: &Vec<f64>| [p[0], p[1], p[2]];
        let net: Vec<Vec<Point3>> = match direction {
            Direction::U0 => {
                let rows = space.dimension();
                (0..rows)
                    .map(|i0| {
                        strands
                            .iter()
                            .map(|s| to3(&s.control_points()[i0]))
                            .collect()
                    })
                    .collect()
            }
            Direction::U1 => strands
                .iter()
                .map(|s| s.control_points().iter().map(to3).collect())
                .collect(),
        };
        match direction {
            Direction::U0 => Self::new(space, self.space_u1.clone(), net),
            Direction::U1 => Self::new(self.space_u0.clone(), space, net),
        }
    }
}

/// Order elevation of every strand of the net along `direction`.
pub fn elevate_order_surface(
    s: &BSurface,
    direction: Direction,
    target: Arc<EcSpace>,
) -> Result<BSurface, SurfaceError> {
    let strands = s
        .strands(direction)?
        .iter()
        .map(|c| elevate_order(c, target.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    s.from_strands(direction, target, &strands)
}

/// Splits the surface at `gamma` along `direction`.
pub fn subdivide_surface(
    s: &BSurface,
    direction: Direction,
    gamma: f64,
) -> Result<(BSurface, BSurface), SurfaceError> {
    let (left, right) = split_spaces(s.space(direction), gamma)?;
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for c in s.strands(direction)? {
        let (l, r) = subdivide_with(&c, gamma, left.clone(), right.clone())?;
        lower.push(l);
        upper.push(r);
    }
    Ok((
        s.from_strands(direction, left, &lower)?,
        s.from_strands(direction, right, &upper)?,
    ))
}

/// One product term `(Σ λ0_i φ0_i(u0))·(Σ λ1_i φ1_i(u1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableTerm {
    pub u0: Vec<f64>,
    pub u1: Vec<f64>,
}

/// Each coordinate of the surface as a sum of separable terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeparableSurfaceSpec {
    pub coordinates: [Vec<SeparableTerm>; 3],
}

/// Control net reproducing a separable ordinary surface exactly.
pub fn represent_ordinary_surface(
    space_u0: Arc<EcSpace>,
    space_u1: Arc<EcSpace>,
    spec: &SeparableSurfaceSpec,
) -> Result<BSurface, SurfaceError> {
    let (d0, d1) = (space_u0.dimension(), space_u1.dimension());
    for term in spec.coordinates.iter().flatten() {
        if term.u0.len() != d0 {
            return Err(SurfaceError::DimensionMismatch {
                expected: d0,
                actual: term.u0.len(),
            });
        }
        if term.u1.len() != d1 {
            return Err(SurfaceError::DimensionMismatch {
                expected: d1,
                actual: term.u1.len(),
            });
        }
    }
    let t0 = transformation_matrix(&space_u0)?;
    let t1 = transformation_matrix(&space_u1)?;
    let project = |lambda: &[f64], t: &crate::ecspace::TransformationMatrix, j: usize| -> f64 {
        lambda
            .iter()
            .enumerate()
            .map(|(i, l)| l * t.get(i, j))
            .sum()
    };
    let mut net = vec![vec![[0.0; 3]; d1]; d0];
    for (l, terms) in spec.coordinates.iter().enumerate() {
        for term in terms {
            let a: Vec<f64> = (0..d0).map(|j| project(&term.u0, &t0, j)).collect();
            let b: Vec<f64> = (0..d1).map(|j| project(&term.u1, &t1, j)).collect();
            for j0 in 0..d0 {
                for j1 in 0..d1 {
                    net[j0][j1][l] += a[j0] * b[j1];
                }
            }
        }
    }
    BSurface::new(space_u0, space_u1, net)
}

fn uniform(alpha: f64, beta: f64, count: usize) -> Vec<f64> {
    match count {
        1 => vec![0.5 * (alpha + beta)],
        _ => uniform_parameters(alpha, beta, count),
    }
}

/// Lines along `direction` (that parameter varies, the other is fixed at
/// uniformly spaced values), with derivatives along the free parameter.
pub fn isoparametric_lines(
    s: &BSurface,
    direction: Direction,
    line_count: usize,
    samples_per_line: usize,
    d_max: usize,
) -> Result<Vec<SampledCurve>, SurfaceError> {
    if line_count == 0 || samples_per_line < 2 {
        return Err(SurfaceError::InvalidLines);
    }
    let [a0, b0, a1, b1] = s.domain();
    let (free, fixed) = match direction {
        Direction::U0 => (
            uniform(a0, b0, samples_per_line),
            uniform(a1, b1, line_count),
        ),
        Direction::U1 => (
            uniform(a1, b1, samples_per_line),
            uniform(a0, b0, line_count),
        ),
    };
    fixed
        .par_iter()
        .map(|&c| {
            let derivatives = free
                .iter()
                .map(|&u| {
                    (0..=d_max)
                        .map(|j| {
                            let p = match direction {
                                Direction::U0 => s.eval(j, 0, u, c)?,
                                Direction::U1 => s.eval(0, j, c, u)?,
                            };
                            Ok(p.to_vec())
                        })
                        .collect::<Result<Vec<_>, SurfaceError>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SampledCurve {
                parameters: free.clone(),
                derivatives,
            })
        })
        .collect()
}
