use std::path::Path;

use serde_json::{json, Value};

use liebrace::exactlin::Rational;
use liebrace::liealg::LieAlgebra;
use liebrace::lsb::{self, LsbSpec};
use liebrace::postlie::{ObstructionReport, PostLieStructure, CONNECTED_CAVEAT};
use liebrace::report::{to_canonical_json, VerificationReport};
use liebrace::tablerepro::{build_table, encode_grid};
use liebrace::Error;

use crate::input::load;
use crate::{Cli, Command, Format, Status, Which};

pub fn run(cli: &Cli) -> Status {
    let result = match &cli.command {
        Command::CheckPostlie { file } => check_postlie(file, cli.format),
        Command::CheckLsb { file, samples, seed, tol } => check_lsb(file, *samples, *seed, *tol, cli.format),
        Command::Classify { file } => classify(file, cli.format),
        Command::Extract { file, which } => extract(file, *which, cli.format),
        Command::Obstructions { file } => obstructions(file, cli.format),
        Command::Table { golden } => table(golden.as_deref(), cli.format),
    };
    match result {
        Ok(status) => status,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            Status::InputError
        }
        Err(Failure::Math(msg)) => {
            eprintln!("FAIL: {msg}");
            Status::MathFailure
        }
    }
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotLie(..)
            | Error::Inconsistent
            | Error::Singular
            | Error::Splitting(_)
            | Error::Inconclusive(_)
            | Error::LogOutOfRange(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    load(path).map_err(Failure::Input)
}

fn emit_json(v: &Value) {
    println!("{}", to_canonical_json(v).expect("values serialize"));
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::MathFailure
    }
}

fn fmt_vector(v: &[Rational]) -> String {
    let mut s = String::new();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let coef = if mag.is_one() { String::new() } else { format!("{mag} ") };
        if s.is_empty() {
            s = format!("{}{coef}e{}", if c.is_negative() { "-" } else { "" }, k + 1);
        } else {
            s.push_str(&format!(" {sign} {coef}e{}", k + 1));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn algebra_text(g: &LieAlgebra) -> String {
    let n = g.dim();
    let mut lines = vec![format!("{} (dim {n})", g.name())];
    for i in 0..n {
        for j in i + 1..n {
            let v = g.bracket_basis(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                lines.push(format!("  [e{}, e{}] = {}", i + 1, j + 1, fmt_vector(v)));
            }
        }
    }
    lines.join("\n")
}

fn triangle_text(p: &PostLieStructure) -> String {
    let n = p.dim();
    let mut lines = vec![format!("triangle on {} (dim {n})", p.dot().name())];
    for i in 0..n {
        for j in 0..n {
            let v = p.triangle_basis(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                lines.push(format!("  e{} > e{} = {}", i + 1, j + 1, fmt_vector(v)));
            }
        }
    }
    lines.join("\n")
}

fn obstruction_value(reports: &[ObstructionReport]) -> Value {
    json!({
        "reports": reports,
        "non_integrable": reports.iter().any(|r| r.fired),
        "caveat": CONNECTED_CAVEAT,
    })
}

fn obstruction_text(reports: &[ObstructionReport]) -> String {
    let mut lines = vec!["obstructions:".to_string()];
    let fired: Vec<_> = reports.iter().filter(|r| r.fired).collect();
    if fired.is_empty() {
        lines.push("  none fired".into());
    }
    for r in fired {
        lines.push(format!("  warning: {} fires, not integrable ({})", r.rule, r.detail));
    }
    lines.push(format!("  note: {CONNECTED_CAVEAT}"));
    lines.join("\n")
}

fn check_postlie(file: &Path, format: Format) -> Result<Status, Failure> {
    let p: PostLieStructure = read(file)?;
    if let Err(e) = p.dot().jacobi_check() {
        return Err(Failure::Math(format!("dot bracket: {e}")));
    }
    if let Some(v) = p.check_axioms()? {
        match format {
            Format::Json => emit_json(&json!({"check": "postlie-axioms", "pass": false, "violation": v})),
            Format::Text => println!("post-Lie axioms: FAIL, {v}"),
        }
        return Ok(Status::MathFailure);
    }
    let circ = p.derive_circ()?;
    let prelie = if p.dot().is_abelian() { Some(p.check_prelie()?) } else { None };
    let reports = p.obstruction_scan()?;
    match format {
        Format::Json => emit_json(&json!({
            "check": "postlie-axioms",
            "pass": true,
            "dot_label": p.dot().classify(),
            "circ_label": circ.classify(),
            "prelie": prelie.map(|r| json!({"pass": r.is_none(), "violation": r})),
            "obstructions": obstruction_value(&reports),
        })),
        Format::Text => {
            println!("post-Lie axioms: pass");
            println!("dot: {}  circ: {}", p.dot().classify(), circ.classify());
            if let Some(r) = prelie {
                match r {
                    None => println!("pre-Lie: pass"),
                    Some((i, j, k)) => println!("pre-Lie: fail on (e{}, e{}, e{})", i + 1, j + 1, k + 1),
                }
            }
            println!("{}", obstruction_text(&reports));
        }
    }
    Ok(Status::Pass)
}

fn obstructions(file: &Path, format: Format) -> Result<Status, Failure> {
    let p: PostLieStructure = read(file)?;
    if let Some(v) = p.check_axioms()? {
        return Err(Failure::Math(format!("not a post-Lie structure: {v}")));
    }
    let reports = p.obstruction_scan()?;
    match format {
        Format::Json => emit_json(&obstruction_value(&reports)),
        Format::Text => println!("{}", obstruction_text(&reports)),
    }
    Ok(Status::Pass)
}

fn classify(file: &Path, format: Format) -> Result<Status, Failure> {
    let g: LieAlgebra = read(file)?;
    if let Some((i, j, k)) = g.jacobi_violation() {
        let msg = format!("Jacobi identity fails on (e{}, e{}, e{})", i + 1, j + 1, k + 1);
        if format == Format::Json {
            emit_json(&json!({"pass": false, "jacobi_violation": [i, j, k]}));
        }
        return Err(Failure::Math(msg));
    }
    let c = g.classify_detailed();
    for w in &c.warnings {
        eprintln!("warning: {w}");
    }
    match format {
        Format::Json => emit_json(&serde_json::to_value(&c).expect("classification serializes")),
        Format::Text => println!("{}", c.label),
    }
    Ok(Status::Pass)
}

fn report_line(r: &VerificationReport) -> String {
    let verdict = if r.pass { "pass" } else { "FAIL" };
    let mut s = format!("{:<20} {verdict}  max residual {:.3e}", r.check, r.max_residual);
    if let Some(f) = &r.first_failure {
        s.push_str(&format!("\n  first failure: sample {} residual {:.3e} at {:?}", f.index, f.residual, f.points));
    }
    s
}

fn check_lsb(file: &Path, samples: usize, seed: u64, tol: f64, format: Format) -> Result<Status, Failure> {
    let spec: LsbSpec = read(file)?;
    if samples == 0 {
        return Err(Failure::Input("--samples must be at least 1".into()));
    }
    let inst = lsb::realize(&spec)?;
    let mut reports = vec![lsb::verify_lsb(&inst, samples, seed, tol)?];
    reports.extend(lsb::verify_lambda_properties(&inst, samples, seed, tol)?);
    reports.extend(lsb::verify_simple_transitivity(&inst, samples, seed, tol)?);
    let displacement = lsb::lambda_displacement(&inst, samples, seed)?;
    let pass = reports.iter().all(|r| r.pass);
    match format {
        Format::Json => emit_json(&json!({
            "lsb": spec.name(),
            "pass": pass,
            "reports": reports,
            "lambda_nontrivial": displacement > lsb::LAMBDA_TRIVIAL_TOL,
        })),
        Format::Text => {
            println!("{}", spec.name());
            for r in &reports {
                println!("{}", report_line(r));
            }
            let kind = if displacement > lsb::LAMBDA_TRIVIAL_TOL { "non-trivial" } else { "trivial" };
            println!("lambda: {kind} (max displacement {displacement:.3e})");
            println!("{}", if pass { "pass" } else { "FAIL" });
        }
    }
    Ok(status(pass))
}

fn extract(file: &Path, which: Which, format: Format) -> Result<Status, Failure> {
    let spec: LsbSpec = read(file)?;
    let inst = lsb::realize(&spec)?;
    let x = lsb::extract_postlie(&inst)?;
    match (which, format) {
        (Which::Dot, Format::Json) => emit_json(&serde_json::to_value(x.structure.dot()).expect("serializes")),
        (Which::Circ, Format::Json) => emit_json(&serde_json::to_value(&x.circ).expect("serializes")),
        (Which::Triangle, Format::Json) => emit_json(&serde_json::to_value(&x.structure).expect("serializes")),
        (Which::Dot, Format::Text) => println!("{}", algebra_text(x.structure.dot())),
        (Which::Circ, Format::Text) => println!("{}", algebra_text(&x.circ)),
        (Which::Triangle, Format::Text) => println!("{}", triangle_text(&x.structure)),
    }
    if let Some(v) = x.axioms {
        eprintln!("FAIL: extracted structure violates the post-Lie axioms: {v}");
        return Ok(Status::MathFailure);
    }
    Ok(Status::Pass)
}

fn table(golden: Option<&Path>, format: Format) -> Result<Status, Failure> {
    let expected = match golden {
        Some(p) => {
            Some(std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?)
        }
        None => None,
    };
    let report = build_table();
    let encoded = encode_grid(&report.symbols());
    let golden_match = expected.as_ref().map(|g| *g == encoded);
    let pass = report.all_certified() && golden_match != Some(false);
    match format {
        Format::Json => {
            let grid: Vec<String> = report.symbols().iter().map(|r| r.join(" ")).collect();
            let cells: Vec<_> = report.rows.iter().flatten().collect();
            emit_json(&json!({
                "rows": "circ",
                "columns": "dot",
                "grid": grid,
                "certified": report.all_certified(),
                "golden_match": golden_match,
                "cells": cells,
            }));
        }
        Format::Text => {
            print!("{}", report.render_text());
            for f in report.failures() {
                println!("cell (dot {}, circ {}): {}", f.cell.dot_label, f.cell.circ_label, f.detail);
            }
            match golden_match {
                Some(true) => println!("golden: match"),
                Some(false) => println!("golden: MISMATCH"),
                None => {}
            }
        }
    }
    Ok(status(pass))
}
