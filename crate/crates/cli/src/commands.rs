use std::fs;
use std::path::{Path, PathBuf};

use ecbasis::bcurve::sample_curve;
use ecbasis::bsurface::{curvature_field, isoparametric_lines, tessellate};
use ecbasis::ecspace::{
    critical_length, critical_length_for_design, transformation_matrix, EcSpace, SpaceOptions,
};
use ecbasis::{Direction, FieldKind};

use crate::bench::{conditioning_sweep, summarize, time_trials, StageTiming, SweepOutcome};
use crate::config::ConfigFile;
use crate::writers::{format_real, save_csv, save_obj, save_svg, Series};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Space,
    Curve,
    Surface,
    CriticalLength,
    Bench,
}

/// Everything one invocation needs; fields left `None` take per-command defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub config: PathBuf,
    pub out: PathBuf,
    pub samples: Option<usize>,
    pub grid: Option<(usize, usize)>,
    pub d_max: usize,
    pub check_conditioning: bool,
    pub expected_digits: u32,
    pub trials: usize,
    pub significance: f64,
}

impl RunConfig {
    pub fn new(command: Command, config: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        Self {
            command,
            config: config.into(),
            out: out.into(),
            samples: None,
            grid: None,
            d_max: 0,
            check_conditioning: false,
            expected_digits: 6,
            trials: 10,
            significance: 0.05,
        }
    }

    fn options(&self) -> SpaceOptions {
        SpaceOptions {
            check_conditioning: self.check_conditioning,
            expected_digits: self.expected_digits,
            ..SpaceOptions::default()
        }
    }
}

/// Files written and report lines for the terminal.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub lines: Vec<String>,
}

impl RunReport {
    fn file(&mut self, path: PathBuf) -> &Path {
        self.files.push(path);
        self.files.last().expect("just pushed")
    }
}

pub const BASIS_SAMPLES: usize = 501;
pub const DEFAULT_GRID: (usize, usize) = (50, 100);

pub fn run(rc: &RunConfig) -> Result<RunReport, CliError> {
    let config = ConfigFile::load(&rc.config)?;
    fs::create_dir_all(&rc.out).map_err(CliError::io(&rc.out))?;
    let mut report = RunReport::default();
    match rc.command {
        Command::Space => run_space(rc, &config, &mut report)?,
        Command::Curve => run_curve(rc, &config, &mut report)?,
        Command::Surface => run_surface(rc, &config, &mut report)?,
        Command::CriticalLength => run_critical_length(rc, &config, &mut report)?,
        Command::Bench => run_bench(rc, &config, &mut report)?,
    }
    Ok(report)
}

fn uniform(alpha: f64, beta: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|k| {
            if k + 1 == m {
                beta
            } else {
                alpha + (beta - alpha) * k as f64 / (m - 1) as f64
            }
        })
        .collect()
}

fn sample_count(rc: &RunConfig) -> Result<usize, CliError> {
    let m = rc.samples.unwrap_or(BASIS_SAMPLES);
    if m < 2 {
        return Err(CliError::TooFewSamples(m));
    }
    Ok(m)
}

fn conditioning_lines(space: &EcSpace) -> Vec<String> {
    space
        .condition_reports()
        .iter()
        .map(|r| {
            format!(
                "{}: condition {:.3e}, about {} correct digits",
                r.stage_label, r.condition_number, r.estimated_correct_digits
            )
        })
        .collect()
}

fn run_space(rc: &RunConfig, config: &ConfigFile, report: &mut RunReport) -> Result<(), CliError> {
    let space_config = config
        .space
        .as_ref()
        .ok_or(CliError::MissingSection("space"))?;
    let space = space_config.build(&rc.options())?;
    let m = sample_count(rc)?;
    let dim = space.dimension();
    let grid = uniform(space.alpha(), space.beta(), m);
    let mut header = vec!["u".to_string()];
    header.extend((0..dim).map(|k| format!("phi_{k}")));
    header.extend((0..dim).map(|i| format!("b_{i}")));

    for j in 0..=rc.d_max {
        let rows = grid
            .iter()
            .map(|&u| {
                let mut row = vec![u];
                row.extend(space.ordinary_values(j, u));
                row.extend(space.b_values(j, u)?);
                Ok(row)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let name = if j == 0 {
            "space.csv".to_string()
        } else {
            format!("space_d{j}.csv")
        };
        save_csv(report.file(rc.out.join(name)), &header, &rows)?;
        if j == 0 {
            let latex = space.latex_ordinary_basis();
            let column = |c: usize, name: String| Series {
                name,
                points: rows.iter().map(|r| (r[0], r[c])).collect(),
            };
            let ordinary: Vec<Series> = (0..dim).map(|k| column(1 + k, latex[k].clone())).collect();
            let b: Vec<Series> = (0..dim)
                .map(|i| column(1 + dim + i, format!("b_{{{},{}}}", dim - 1, i)))
                .collect();
            save_svg(
                report.file(rc.out.join("ordinary.svg")),
                "ordinary basis",
                &ordinary,
            )?;
            save_svg(
                report.file(rc.out.join("b_basis.svg")),
                "normalized B-basis",
                &b,
            )?;
        }
    }

    let t = transformation_matrix(&space)?;
    let header: Vec<String> = (0..dim).map(|j| format!("t_{j}")).collect();
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|i| (0..dim).map(|j| t.get(i, j)).collect())
        .collect();
    save_csv(
        report.file(rc.out.join("transformation.csv")),
        &header,
        &rows,
    )?;

    let lines = conditioning_lines(&space);
    fs::write(
        report.file(rc.out.join("conditioning.txt")),
        lines.join("\n") + "\n",
    )
    .map_err(CliError::io(rc.out.join("conditioning.txt")))?;
    report.lines.push(format!(
        "space of dimension {dim} on [{}, {}], {m} samples",
        space.alpha(),
        space.beta()
    ));
    report.lines.extend(lines);
    Ok(())
}

fn run_curve(rc: &RunConfig, config: &ConfigFile, report: &mut RunReport) -> Result<(), CliError> {
    let curve_config = config
        .curve
        .as_ref()
        .ok_or(CliError::MissingSection("curve"))?;
    let curve = curve_config.build(&rc.options())?;
    let delta = curve.point_dimension();
    let sampled = sample_curve(&curve, sample_count(rc)?, rc.d_max)?;

    let mut header = vec!["u".to_string()];
    for j in 0..=rc.d_max {
        header.extend((0..delta).map(|l| format!("d{j}_x{l}")));
    }
    let rows: Vec<Vec<f64>> = sampled
        .parameters
        .iter()
        .zip(&sampled.derivatives)
        .map(|(&u, d)| {
            std::iter::once(u)
                .chain(d.iter().flatten().copied())
                .collect()
        })
        .collect();
    save_csv(report.file(rc.out.join("curve.csv")), &header, &rows)?;

    let header: Vec<String> = (0..delta).map(|l| format!("x{l}")).collect();
    save_csv(
        report.file(rc.out.join("control_points.csv")),
        &header,
        curve.control_points(),
    )?;

    let project = |p: &[f64], u: f64| if delta == 1 { (u, p[0]) } else { (p[0], p[1]) };
    let mut series = vec![Series {
        name: "curve".into(),
        points: sampled
            .parameters
            .iter()
            .zip(sampled.points())
            .map(|(&u, p)| project(p, u))
            .collect(),
    }];
    if delta > 1 {
        series.push(Series {
            name: "control polygon".into(),
            points: curve
                .control_points()
                .iter()
                .map(|p| (p[0], p[1]))
                .collect(),
        });
    }
    save_svg(report.file(rc.out.join("curve.svg")), "B-curve", &series)?;
    report.lines.push(format!(
        "curve with {} control points in R^{delta}, {} samples",
        curve.control_points().len(),
        sampled.parameters.len()
    ));
    report.lines.extend(conditioning_lines(curve.space()));
    Ok(())
}

fn run_surface(
    rc: &RunConfig,
    config: &ConfigFile,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let surface_config = config
        .surface
        .as_ref()
        .ok_or(CliError::MissingSection("surface"))?;
    let surface = surface_config.build(&rc.options())?;
    let (m0, m1) = rc.grid.unwrap_or(DEFAULT_GRID);
    let field: Option<FieldKind> = surface_config
        .field
        .as_deref()
        .map(str::parse)
        .transpose()?;

    let mesh = tessellate(&surface, m0, m1, field)?;
    save_obj(
        report.file(rc.out.join("surface.obj")),
        &mesh,
        field.is_some(),
    )?;
    report.lines.push(format!(
        "mesh on a {m0}x{m1} grid: {} vertices, {} faces",
        mesh.positions.len(),
        mesh.faces.len()
    ));

    if let Some(kind) = field {
        let f = curvature_field(&surface, m0, m1, kind)?;
        let rows: Vec<Vec<f64>> =
            f.u0.iter()
                .enumerate()
                .flat_map(|(i0, &u0)| {
                    f.u1.iter()
                        .enumerate()
                        .map(move |(i1, &u1)| (i0, i1, u0, u1))
                })
                .map(|(i0, i1, u0, u1)| vec![u0, u1, f.get(i0, i1)])
                .collect();
        let header = ["u0".to_string(), "u1".to_string(), kind.to_string()];
        save_csv(report.file(rc.out.join("field.csv")), &header, &rows)?;
        let (lo, hi) = f.range();
        report.lines.push(format!(
            "{kind} field in [{}, {}]",
            format_real(lo),
            format_real(hi)
        ));
    }

    let header: Vec<String> = ["i0", "i1", "x", "y", "z"].map(String::from).to_vec();
    let rows: Vec<Vec<f64>> = surface
        .control_net()
        .iter()
        .enumerate()
        .flat_map(|(i0, row)| {
            row.iter()
                .enumerate()
                .map(move |(i1, p)| vec![i0 as f64, i1 as f64, p[0], p[1], p[2]])
        })
        .collect();
    save_csv(report.file(rc.out.join("net.csv")), &header, &rows)?;

    for (direction, lines, name) in [
        (
            Direction::U0,
            &surface_config.isolines_u0,
            "isolines_u0.csv",
        ),
        (
            Direction::U1,
            &surface_config.isolines_u1,
            "isolines_u1.csv",
        ),
    ] {
        let Some(lines) = lines else { continue };
        let curves =
            isoparametric_lines(&surface, direction, lines.lines, lines.samples, rc.d_max)?;
        let mut header = vec!["line".to_string(), "u".to_string()];
        for j in 0..=rc.d_max {
            header.extend(["x", "y", "z"].map(|c| format!("d{j}_{c}")));
        }
        let rows: Vec<Vec<f64>> = curves
            .iter()
            .enumerate()
            .flat_map(|(k, c)| {
                c.parameters.iter().zip(&c.derivatives).map(move |(&u, d)| {
                    [k as f64, u]
                        .into_iter()
                        .chain(d.iter().flatten().copied())
                        .collect()
                })
            })
            .collect();
        save_csv(report.file(rc.out.join(name)), &header, &rows)?;
        report.lines.push(format!(
            "{} isolines along {direction:?} with {} points each",
            curves.len(),
            lines.samples
        ));
    }
    Ok(())
}

fn run_critical_length(
    rc: &RunConfig,
    config: &ConfigFile,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let c = config
        .critical_length
        .as_ref()
        .ok_or(CliError::MissingSection("critical_length"))?;
    let p = c.polynomial()?;
    let length = if c.design {
        critical_length_for_design(&p, c.alpha, c.search_cap, c.grid_step)?
    } else {
        critical_length(&p, c.alpha, c.search_cap, c.grid_step)?
    };
    let what = if c.design {
        "critical length for design"
    } else {
        "critical length"
    };
    let line = format!("{what}: {}", format_real(length));
    let path = rc.out.join("critical_length.txt");
    fs::write(report.file(path.clone()), format!("{line}\n")).map_err(CliError::io(path))?;
    report.lines.push(line);
    Ok(())
}

fn timing_line(t: &StageTiming) -> String {
    format!(
        "{}: mean {:.6} ms, interval [{:.6}, {:.6}] ms over {} trials",
        t.stage, t.interval.mean, t.interval.lower, t.interval.upper, t.interval.samples
    )
}

fn run_bench(rc: &RunConfig, config: &ConfigFile, report: &mut RunReport) -> Result<(), CliError> {
    if rc.trials < 2 {
        return Err(CliError::TooFewSamples(rc.trials));
    }
    let options = rc.options();
    let mut timings = Vec::new();
    if let Some(space_config) = &config.space {
        let p = space_config.polynomial()?;
        let (a, b) = (space_config.alpha, space_config.beta);
        let samples = time_trials(rc.trials, || EcSpace::build(&p, a, b, &options))?;
        timings.push(summarize("construct space", &samples, rc.significance)?);

        let space = space_config.build(&options)?;
        let grid = uniform(a, b, rc.samples.unwrap_or(1001));
        let samples = time_trials(rc.trials, || {
            grid.iter()
                .map(|&u| (0..=rc.d_max).map(|j| space.b_values(j, u)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()
        })?;
        timings.push(summarize("evaluate B-basis", &samples, rc.significance)?);

        let samples = time_trials(rc.trials, || transformation_matrix(&space))?;
        timings.push(summarize(
            "transformation matrix",
            &samples,
            rc.significance,
        )?);
    }
    if let Some(surface_config) = &config.surface {
        let surface = surface_config.build(&options)?;
        let (m0, m1) = rc.grid.unwrap_or(DEFAULT_GRID);
        let samples = time_trials(rc.trials, || tessellate(&surface, m0, m1, None))?;
        timings.push(summarize("tessellate surface", &samples, rc.significance)?);
    }

    let path = rc.out.join("bench.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Io {
        path: path.clone(),
        source: e.into(),
    })?;
    let csv_error = |e: csv::Error| CliError::Io {
        path: path.clone(),
        source: e.into(),
    };
    w.write_record([
        "stage",
        "trials",
        "mean_ms",
        "stddev_ms",
        "lower_ms",
        "upper_ms",
    ])
    .map_err(csv_error)?;
    for t in &timings {
        let ci = &t.interval;
        w.write_record([
            t.stage.clone(),
            ci.samples.to_string(),
            format_real(ci.mean),
            format_real(ci.stddev),
            format_real(ci.lower),
            format_real(ci.upper),
        ])
        .map_err(csv_error)?;
        report.lines.push(timing_line(t));
    }
    w.flush().map_err(CliError::io(&path))?;
    report.files.push(path);

    if let Some(sweep) = &config.conditioning_sweep {
        let path = rc.out.join("conditioning_sweep.csv");
        let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e.into(),
        })?;
        let csv_error = |e: csv::Error| CliError::Io {
            path: path.clone(),
            source: e.into(),
        };
        w.write_record([
            "order",
            "condition_number",
            "digits",
            "outcome",
            "partition_error",
        ])
        .map_err(csv_error)?;
        for row in conditioning_sweep(sweep, &options) {
            let (outcome, error) = match &row.outcome {
                SweepOutcome::Built { partition_error } => {
                    ("built".to_string(), format_real(*partition_error))
                }
                SweepOutcome::IllConditioned { stage } => {
                    (format!("ill-conditioned: {stage}"), String::new())
                }
                SweepOutcome::Failed(e) => (format!("failed: {e}"), String::new()),
            };
            report.lines.push(format!(
                "P_{}: condition {:.3e}, {} digits, {outcome}",
                row.order, row.condition_number, row.estimated_digits
            ));
            w.write_record([
                row.order.to_string(),
                format_real(row.condition_number),
                row.estimated_digits.to_string(),
                outcome,
                error,
            ])
            .map_err(csv_error)?;
        }
        w.flush().map_err(CliError::io(&path))?;
        report.files.push(path);
    }
    if timings.is_empty() && config.conditioning_sweep.is_none() {
        return Err(CliError::MissingSection("space"));
    }
    Ok(())
}
