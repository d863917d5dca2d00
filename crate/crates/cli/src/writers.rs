//! CSV, SVG and Wavefront OBJ output.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use ecbasis::TriangleMesh;

use crate::CliError;

/// 17 significant digits; parses back to the same double.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(
        File::create(path).map_err(CliError::io(path))?,
    ))
}

/// Header row, then one row of reals per record.
pub fn write_csv<W: Write>(out: W, header: &[String], rows: &[Vec<f64>]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| format_real(x)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_csv(path: &Path, header: &[String], rows: &[Vec<f64>]) -> Result<(), CliError> {
    write_csv(create(path)?, header, rows).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    })
}

/// Parses a file written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>), CliError> {
    let bad = |e: csv::Error| CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    };
    let mut r = csv::Reader::from_path(path).map_err(bad)?;
    let header = r.headers().map_err(bad)?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(bad)?;
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|e| CliError::Io {
                    path: path.to_path_buf(),
                    source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// One named polyline of a plot.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Line plot with axes; one `<polyline>` per series.
pub fn svg_plot(title: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < f64::EPSILON {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < f64::EPSILON {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let axis_y = sy(0.0_f64.clamp(y0, y1));
    let axis_x = sx(0.0_f64.clamp(x0, x1));
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1"><line x1="{MARGIN}" y1="{axis_y:.3}" x2="{:.3}" y2="{axis_y:.3}"/><line x1="{axis_x:.3}" y1="{MARGIN}" x2="{axis_x:.3}" y2="{:.3}"/></g>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<g font-size="11" font-family="sans-serif"><text x="{MARGIN}" y="{:.3}">{}</text><text x="{:.3}" y="{:.3}" text-anchor="end">{}</text><text x="4" y="{:.3}">{}</text><text x="4" y="{:.3}">{}</text></g>"#,
        HEIGHT - MARGIN + 16.0,
        format_tick(x0),
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 16.0,
        format_tick(x1),
        sy(y0),
        format_tick(y0),
        sy(y1) + 4.0,
        format_tick(y1),
    );
    for (k, s) in series.iter().enumerate() {
        let points: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            PALETTE[k % PALETTE.len()],
            points.join(" "),
            escape(&s.name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_tick(x: f64) -> String {
    format!("{x:.4}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn save_svg(path: &Path, title: &str, series: &[Series]) -> Result<(), CliError> {
    std::fs::write(path, svg_plot(title, series)).map_err(CliError::io(path))
}

/// `v`/`vn`/`vt` per vertex and 1-based `f v/vt/vn` per face. Vertex colors
/// are appended to the `v` records when `colors` is set.
pub fn write_obj<W: Write>(mut out: W, mesh: &TriangleMesh, colors: bool) -> std::io::Result<()> {
    writeln!(
        out,
        "# {} vertices, {} faces",
        mesh.positions.len(),
        mesh.faces.len()
    )?;
    for (k, p) in mesh.positions.iter().enumerate() {
        if colors {
            let c = mesh.colors[k];
            writeln!(
                out,
                "v {} {} {} {} {} {}",
                p[0], p[1], p[2], c[0], c[1], c[2]
            )?;
        } else {
            writeln!(out, "v {} {} {}", p[0], p[1], p[2])?;
        }
    }
    for n in &mesh.normals {
        writeln!(out, "vn {} {} {}", n[0], n[1], n[2])?;
    }
    for t in &mesh.tex_coords {
        writeln!(out, "vt {} {}", t[0], t[1])?;
    }
    for f in &mesh.faces {
        let [a, b, c] = f.map(|i| i + 1);
        writeln!(out, "f {a}/{a}/{a} {b}/{b}/{b} {c}/{c}/{c}")?;
    }
    out.flush()
}

pub fn save_obj(path: &Path, mesh: &TriangleMesh, colors: bool) -> Result<(), CliError> {
    write_obj(create(path)?, mesh, colors).map_err(CliError::io(path))
}
