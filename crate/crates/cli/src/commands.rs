//! Subcommand implementations. Each writes its artifacts into the output
//! directory and reports the paths written.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use brio_core::delta::{sample_brio, solve_brio};
use brio_core::riemann::build_fan_with;
use brio_core::state::lift;
use brio_core::verify::{property_suite_with, refinement_table, FvGrid, SuiteConfig};
use brio_core::wave_curves::{tabulate, write_csv, CurveKind};
use brio_core::{BrioState, RiemannData, TransState};
use serde_json::{json, Value};

use crate::args::{Command, CurvesArgs, FamilyArg, Format, FvCompareArgs, SampleArgs, SolveArgs, VerifyArgs};
use crate::config::{finite, pick, require, resolve_data, Merger, Settings};
use crate::error::{CliError, Result};

/// Result of a successful run: the exit code and the files written.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub written: Vec<PathBuf>,
}

impl Outcome {
    pub fn summary(&self, command: &str) -> Value {
        json!({
            "command": command,
            "exit_code": self.code,
            "written": self.written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        })
    }
}

struct Output {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Output {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, bytes).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.written.push(path);
        Ok(())
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    fn finish(self, code: u8) -> Outcome {
        Outcome {
            code,
            written: self.written,
        }
    }
}

fn json_only(command: &str, format: Option<Format>) -> Result<()> {
    match format {
        Some(Format::Csv) => Err(CliError::Usage(format!("`{command}` writes JSON only"))),
        _ => Ok(()),
    }
}

fn data(left: [f64; 2], right: [f64; 2]) -> RiemannData {
    RiemannData::from_components(left[0], left[1], right[0], right[1])
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Solve(a) => solve(a),
        Command::Curves(a) => curves(a),
        Command::Sample(a) => sample(a),
        Command::Verify(a) => verify(a),
        Command::FvCompare(a) => fv_compare(a),
    }
}

fn solve(a: &SolveArgs) -> Result<Outcome> {
    let mut m = Merger::new(&a.common, "solve")?;
    let s = Settings::resolve(&a.common, &mut m)?;
    json_only("solve", s.format)?;
    let (l, r) = resolve_data(&a.data, &mut m)?;
    let sol = solve_brio(data(l, r), &s.options)?;
    let mut out = Output::new(&s.out_dir)?;
    out.json("solution.json", &sol.to_json())?;
    Ok(out.finish(0))
}

fn curves(a: &CurvesArgs) -> Result<Outcome> {
    let mut m = Merger::new(&a.common, "curves")?;
    let s = Settings::resolve(&a.common, &mut m)?;
    let f = m.file();
    let base = require("base", pick("base", a.base, f.base.take()))?.0;
    let base = TransState::new(finite("base", base[0])?, finite("base", base[1])?);
    let family = pick("family", a.family, f.family.take()).unwrap_or(FamilyArg::All);
    let inverse = pick("inverse", a.inverse.then_some(true), f.inverse.take()).unwrap_or(false);
    let span = pick("span", a.span, f.span.take()).unwrap_or(2.0);
    let points = pick("points", a.points, f.points.take()).unwrap_or(201);
    let mut kinds = match family {
        FamilyArg::All => CurveKind::FORWARD.to_vec(),
        FamilyArg::Sw1 => vec![CurveKind::Sw1],
        FamilyArg::Sw2 => vec![CurveKind::Sw2],
        FamilyArg::Rw1 => vec![CurveKind::Rw1],
        FamilyArg::Rw2 => vec![CurveKind::Rw2],
    };
    if inverse {
        kinds.extend(CurveKind::INVERSE);
    }
    let tables = kinds
        .iter()
        .map(|&k| tabulate(k, base, span, points, &s.options.solver.ode).map(|t| (k, t)))
        .collect::<brio_core::Result<Vec<_>>>()?;
    let mut out = Output::new(&s.out_dir)?;
    match s.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            for (k, t) in &tables {
                let mut buf = Vec::new();
                write_csv(t, &mut buf).expect("writing to memory");
                out.write(&format!("{}.csv", k.name()), &buf)?;
            }
        }
        Format::Json => {
            let curves: serde_json::Map<String, Value> = tables
                .iter()
                .map(|(k, t)| {
                    (
                        k.name().to_string(),
                        serde_json::to_value(t).expect("samples serialize"),
                    )
                })
                .collect();
            out.json("curves.json", &json!({ "base": base, "span": span, "curves": curves }))?;
        }
    }
    Ok(out.finish(0))
}

fn sample(a: &SampleArgs) -> Result<Outcome> {
    let mut m = Merger::new(&a.common, "sample")?;
    let s = Settings::resolve(&a.common, &mut m)?;
    let (l, r) = resolve_data(&a.data, &mut m)?;
    let f = m.file();
    let t = pick("t", a.t, f.t.take()).unwrap_or(1.0);
    let x_min = finite("x_min", pick("x_min", a.x_min, f.x_min.take()).unwrap_or(-5.0))?;
    let x_max = finite("x_max", pick("x_max", a.x_max, f.x_max.take()).unwrap_or(5.0))?;
    let points = pick("points", a.points, f.points.take()).unwrap_or(401);
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Usage(format!("sampling time must be positive, got {t}")));
    }
    if !(x_max > x_min) || points < 2 {
        return Err(CliError::Usage(format!(
            "need x_min < x_max and at least 2 points (x_min = {x_min}, x_max = {x_max}, points = {points})"
        )));
    }
    let sol = solve_brio(data(l, r), &s.options)?;
    let xs: Vec<f64> = (0..points)
        .map(|i| x_min + (x_max - x_min) * i as f64 / (points - 1) as f64)
        .collect();
    let states: Vec<BrioState> = xs.iter().map(|&x| sample_brio(&sol, x, t).state).collect();
    let mut out = Output::new(&s.out_dir)?;
    match s.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = String::from("x,u,v\n");
            for (x, st) in xs.iter().zip(&states) {
                writeln!(text, "{},{},{}", sci(*x), sci(st.u), sci(st.v)).expect("writing to a string");
            }
            out.write("sample.csv", text.as_bytes())?;
        }
        Format::Json => {
            let u: Vec<f64> = states.iter().map(|s| s.u).collect();
            let v: Vec<f64> = states.iter().map(|s| s.v).collect();
            out.json("sample.json", &json!({ "t": t, "x": xs, "u": u, "v": v }))?;
        }
    }
    let singular: Vec<Value> = sol
        .singular
        .iter()
        .map(|d| {
            json!({
                "speed": d.speed,
                "position": d.speed * t,
                "strength": d.strength(t),
                "component": d.component,
            })
        })
        .collect();
    out.json("singularities.json", &json!({ "t": t, "singularities": singular }))?;
    Ok(out.finish(0))
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let mut m = Merger::new(&a.common, "verify")?;
    let s = Settings::resolve(&a.common, &mut m)?;
    json_only("verify", s.format)?;
    let report = property_suite_with(&SuiteConfig {
        seed: s.seed,
        options: s.options,
        quadrature: s.quadrature,
        tol_weak: s.tol_weak,
        ..SuiteConfig::default()
    });
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "check failed: {} measured {:e} against {:e}",
            c.name, c.measured, c.tolerance
        );
    }
    let mut out = Output::new(&s.out_dir)?;
    out.json("report.json", &report.to_json())?;
    Ok(out.finish(if report.all_passed() { 0 } else { 2 }))
}

fn fv_compare(a: &FvCompareArgs) -> Result<Outcome> {
    let mut m = Merger::new(&a.common, "fv-compare")?;
    let s = Settings::resolve(&a.common, &mut m)?;
    let (l, r) = resolve_data(&a.data, &mut m)?;
    let f = m.file();
    let cells = pick("cells", a.cells.clone(), f.cells.take()).unwrap_or_else(|| vec![256, 512, 1024, 2048]);
    let cfl = pick("cfl", a.cfl, f.cfl.take()).unwrap_or(0.9);
    let t_final = pick("t_final", a.t_final, f.t_final.take()).unwrap_or(0.5);
    let x_min = pick("x_min", a.x_min, f.x_min.take()).unwrap_or(-5.0);
    let x_max = pick("x_max", a.x_max, f.x_max.take()).unwrap_or(5.0);
    let Some(&first) = cells.first() else {
        return Err(CliError::Usage("at least one cell count is required".into()));
    };
    let d = data(l, r);
    let fan = build_fan_with(lift(d.left), lift(d.right), &s.options.solver)?;
    let grid = FvGrid::new(x_min, x_max, first, cfl, t_final)?;
    for &n in &cells {
        grid.with_cells(n).validate()?;
    }
    let table = refinement_table(&fan, &grid, &cells)?;
    let mut out = Output::new(&s.out_dir)?;
    match s.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = String::from("n_cells,dx,l1_error\n");
            for &(n, e) in &table {
                writeln!(text, "{n},{},{}", sci(grid.with_cells(n).dx()), sci(e)).expect("writing to a string");
            }
            out.write("fv_refinement.csv", text.as_bytes())?;
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .iter()
                .map(|&(n, e)| json!({ "n_cells": n, "dx": grid.with_cells(n).dx(), "l1_error": e }))
                .collect();
            out.json(
                "fv_refinement.json",
                &json!({ "grid": grid, "fan": fan.to_json(), "rows": rows }),
            )?;
        }
    }
    Ok(out.finish(0))
}
