use super::fields::{cross, grid_parameters, map_grid, FieldKind, SurfaceGeometry};
use super::surface::{BSurface, Point3};
use super::SurfaceError;

const DEFAULT_COLOR: [f64; 3] = [0.8, 0.8, 0.8];

const ANCHORS: [[f64; 3]; 5] = [
    [0.0, 0.0, 0.5],
    [0.0, 1.0, 1.0],
    [0.0, 1.0, 0.0],
    [1.0, 1.0, 0.0],
    [1.0, 0.0, 0.0],
];

/// Per-vertex grid mesh; `faces` index `positions` from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub positions: Vec<Point3>,
    pub normals: Vec<Point3>,
    pub tex_coords: Vec<[f64; 2]>,
    pub colors: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

/// Cold-to-hot color for `value` within `[min, max]`.
pub fn color_map(value: f64, min: f64, max: f64) -> [f64; 3] {
    let t = if max > min {
        ((value - min) / (max - min)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let x = t * 4.0;
    let k = (x.floor() as usize).min(3);
    let w = x - k as f64;
    let (a, b) = (ANCHORS[k], ANCHORS[k + 1]);
    [
        a[0] + w * (b[0] - a[0]),
        a[1] + w * (b[1] - a[1]),
        a[2] + w * (b[2] - a[2]),
    ]
}

pub fn tessellate(
    s: &BSurface,
    m0: usize,
    m1: usize,
    field: Option<FieldKind>,
) -> Result<TriangleMesh, SurfaceError> {
    let (u0, u1) = grid_parameters(s, m0, m1)?;
    let vertices = map_grid(&u0, &u1, |a, b| {
        let d = s.partials(1, a, b)?;
        let c = cross(&d[1][0], &d[0][1]);
        let len = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        if len * len < 1e-14 {
            return Err(SurfaceError::DegeneratePoint { u0: a, u1: b });
        }
        let value = match field {
            Some(kind) => Some(kind.value(&SurfaceGeometry::at(s, a, b)?)),
            None => None,
        };
        Ok((d[0][0], [c[0] / len, c[1] / len, c[2] / len], value))
    })?;

    let colors = match field {
        Some(_) => {
            let values: Vec<f64> = vertices.iter().filter_map(|v| v.2).collect();
            let (lo, hi) = values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
                    (l.min(v), h.max(v))
                });
            values.iter().map(|&v| color_map(v, lo, hi)).collect()
        }
        None => vec![DEFAULT_COLOR; vertices.len()],
    };
    let tex_coords = (0..m0)
        .flat_map(|i| {
            (0..m1).map(move |j| [i as f64 / (m0 - 1) as f64, j as f64 / (m1 - 1) as f64])
        })
        .collect();
    let mut faces = Vec::with_capacity(2 * (m0 - 1) * (m1 - 1));
    for i in 0..m0 - 1 {
        for j in 0..m1 - 1 {
            let v = |a: usize, b: usize| a * m1 + b;
            faces.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            faces.push([v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    Ok(TriangleMesh {
        positions: vertices.iter().map(|v| v.0).collect(),
        normals: vertices.iter().map(|v| v.1).collect(),
        tex_coords,
        colors,
        faces,
    })
}
