//! Reproduces the 6×6 existence table for pairs of Lie group types
//! `((G, ·), (G, ∘))`.  Rows are indexed by the circ type, columns by the
//! dot type.
//!
//! ✓ cells are certified by a registered witness brace, ≅ cells by a trivial
//! brace whose two laws share every invariant, and dash (—) cells by the label
//! pattern of an obstruction rule.

use serde::Serialize;

use crate::error::Result;
use crate::liealg::{ClassLabel, InvariantBattery};
use crate::lsb::{
    extract_postlie, lambda_nontrivial, realize, verify_lambda_properties, verify_lsb, Factorization, LsbSpec,
    DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL,
};
use crate::matgrp::{Action, GroupSpec};
use crate::par::par_map;
use crate::postlie::differing_invariants;

pub const LAMBDA_SAMPLES: usize = 100;
pub const LAMBDA_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Check,
    Cong,
    Dash,
}

impl CellStatus {
    pub fn symbol(self) -> &'static str {
        match self {
            CellStatus::Check => "✓",
            CellStatus::Cong => "≅",
            CellStatus::Dash => "—",
        }
    }
}

/// Rules ruling out a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DashRule {
    /// Solvable dot forces solvable circ.
    S2,
    /// Nilpotent circ forces solvable dot.
    R1,
    /// Semisimple circ forces dot ≅ circ.
    R2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableCell {
    pub dot_label: ClassLabel,
    pub circ_label: ClassLabel,
    pub status: CellStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LsbSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<DashRule>,
}

/// What was measured for a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellEvidence {
    pub witness: String,
    pub lsb_residual: f64,
    pub lsb_pass: bool,
    pub lambda_residuals: Vec<(String, f64)>,
    pub lambda_pass: bool,
    pub lambda_nontrivial: bool,
    pub axioms_pass: bool,
    pub dot_label: ClassLabel,
    pub circ_label: ClassLabel,
    pub dot_invariants: InvariantBattery,
    pub circ_invariants: InvariantBattery,
    /// Necessary invariants in which dot and circ differ.
    pub invariant_differences: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellOutcome {
    pub cell: TableCell,
    pub certified: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<CellEvidence>,
}

impl CellOutcome {
    pub fn symbol(&self) -> &'static str {
        if self.certified {
            self.cell.status.symbol()
        } else {
            "✗"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableReport {
    /// `rows[r][c]` has circ label `ClassLabel::ALL[r]` and dot label
    /// `ClassLabel::ALL[c]`.
    pub rows: Vec<Vec<CellOutcome>>,
}

impl TableReport {
    pub fn all_certified(&self) -> bool {
        self.rows.iter().flatten().all(|c| c.certified)
    }

    pub fn failures(&self) -> Vec<&CellOutcome> {
        self.rows.iter().flatten().filter(|c| !c.certified).collect()
    }

    pub fn cell(&self, dot: ClassLabel, circ: ClassLabel) -> &CellOutcome {
        &self.rows[label_index(circ)][label_index(dot)]
    }

    pub fn symbols(&self) -> Vec<Vec<&'static str>> {
        self.rows.iter().map(|r| r.iter().map(CellOutcome::symbol).collect()).collect()
    }

    /// Plain-text grid with row and column headers.
    pub fn render_text(&self) -> String {
        let mut s = format!("{:<12}", "circ \\ dot");
        for l in ClassLabel::ALL {
            s.push_str(&format!("{:<7}", l.as_str()));
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        for (r, row) in self.rows.iter().enumerate() {
            s.push_str(&format!("{:<12}", ClassLabel::ALL[r].as_str()));
            for c in row {
                s.push_str(c.symbol());
                s.push_str("      ");
            }
            s.truncate(s.trim_end().len());
            s.push('\n');
        }
        s
    }
}

fn label_index(l: ClassLabel) -> usize {
    ClassLabel::ALL.iter().position(|&x| x == l).expect("label in ALL")
}

/// Golden-file encoding of a grid of symbols.
pub fn encode_grid(symbols: &[Vec<&str>]) -> String {
    let labels: Vec<String> = ClassLabel::ALL.iter().map(|l| format!("\"{}\"", l.as_str())).collect();
    let rows: Vec<String> = symbols.iter().map(|r| format!("    \"{}\"", r.join(" "))).collect();
    format!(
        "{{\n  \"rows\": \"circ\",\n  \"columns\": \"dot\",\n  \"labels\": [{}],\n  \"grid\": [\n{}\n  ]\n}}\n",
        labels.join(", "),
        rows.join(",\n")
    )
}

fn zappa_h3() -> LsbSpec {
    LsbSpec::zappa(GroupSpec::Heisenberg3, Factorization::H3NormalSplit)
}

fn aff_twist() -> LsbSpec {
    LsbSpec::twist(GroupSpec::abelian(1), GroupSpec::abelian(1), Action::Aff1Exp)
}

fn shear_twist() -> LsbSpec {
    LsbSpec::twist(GroupSpec::abelian(2), GroupSpec::abelian(1), Action::HeisenbergShear)
}

fn iwasawa(n: usize) -> LsbSpec {
    LsbSpec::zappa(GroupSpec::sl(n), Factorization::IwasawaKAn)
}

/// The fixed witness for a ✓ cell.
pub fn witness(dot: ClassLabel, circ: ClassLabel) -> Option<LsbSpec> {
    use ClassLabel::*;
    Some(match (dot, circ) {
        (Nil, Ab) => zappa_h3(),
        (Solv, Ab) => LsbSpec::zappa(GroupSpec::Aff1, Factorization::Aff1Split),
        (Ab, Nil) => shear_twist(),
        (Nil, Nil) => LsbSpec::product(vec![shear_twist(), zappa_h3()]),
        (Solv, Nil) => LsbSpec::zappa(GroupSpec::DilationSemidirectH3, Factorization::SemidirectSplit),
        (Ab, Solv) => aff_twist(),
        (Nil, Solv) => LsbSpec::product(vec![aff_twist(), zappa_h3()]),
        (Solv, Solv) => {
            LsbSpec::zappa(GroupSpec::AdSemidirect { h: Box::new(GroupSpec::Aff1) }, Factorization::SemidirectSplit)
        }
        (Simp, Solv) => iwasawa(2),
        (Ssimp, Solv) => LsbSpec::product(vec![iwasawa(2), iwasawa(2)]),
        (Mixed, Solv) => LsbSpec::product(vec![iwasawa(2), LsbSpec::trivial(GroupSpec::abelian(1))]),
        (Simp, Mixed) => iwasawa(3),
        (Ssimp, Mixed) => LsbSpec::product(vec![iwasawa(3), iwasawa(3)]),
        (Mixed, Mixed) => LsbSpec::zappa(GroupSpec::AdjointSemidirectSu2, Factorization::SemidirectSplit),
        _ => return None,
    })
}

/// Trivial brace used for a ≅ cell.
pub fn cong_witness(dot: ClassLabel, circ: ClassLabel) -> Option<LsbSpec> {
    match (dot, circ) {
        (ClassLabel::Ab, ClassLabel::Ab) => Some(LsbSpec::trivial(GroupSpec::abelian(2))),
        (ClassLabel::Simp, ClassLabel::Simp) => Some(LsbSpec::trivial(GroupSpec::sl(2))),
        _ => None,
    }
}

/// Expected status of a cell from the labels alone.
pub fn certify_cell(dot: ClassLabel, circ: ClassLabel) -> TableCell {
    use ClassLabel::*;
    let dash = |rule| TableCell {
        dot_label: dot,
        circ_label: circ,
        status: CellStatus::Dash,
        witness: None,
        obstruction: Some(rule),
    };
    if (dot, circ) == (Ab, Ab) || (dot, circ) == (Simp, Simp) {
        return TableCell {
            dot_label: dot,
            circ_label: circ,
            status: CellStatus::Cong,
            witness: cong_witness(dot, circ),
            obstruction: None,
        };
    }
    if circ.is_nilpotent() && !dot.is_solvable() {
        return dash(DashRule::R1);
    }
    if dot.is_solvable() && !circ.is_solvable() {
        return dash(DashRule::S2);
    }
    if circ.is_semisimple() {
        // dot must be isomorphic to circ; the only such cell with a
        // printed entry is (simp, simp)
        return dash(DashRule::R2);
    }
    TableCell {
        dot_label: dot,
        circ_label: circ,
        status: CellStatus::Check,
        witness: witness(dot, circ),
        obstruction: None,
    }
}

fn gather_evidence(spec: &LsbSpec) -> Result<CellEvidence> {
    let inst = realize(spec)?;
    let lsb = verify_lsb(&inst, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL)?;
    let props = verify_lambda_properties(&inst, LAMBDA_SAMPLES, DEFAULT_SEED, LAMBDA_TOL)?;
    let ext = extract_postlie(&inst)?;
    let dot = ext.structure.dot();
    Ok(CellEvidence {
        witness: spec.name(),
        lsb_residual: lsb.max_residual,
        lsb_pass: lsb.pass,
        lambda_pass: props.iter().all(|r| r.pass),
        lambda_residuals: props.into_iter().map(|r| (r.check, r.max_residual)).collect(),
        lambda_nontrivial: lambda_nontrivial(&inst, DEFAULT_SAMPLES, DEFAULT_SEED)?,
        axioms_pass: ext.axioms.is_none(),
        dot_label: dot.classify(),
        circ_label: ext.circ.classify(),
        dot_invariants: dot.invariants(),
        circ_invariants: ext.circ.invariants(),
        invariant_differences: differing_invariants(dot, &ext.circ),
    })
}

fn run_cell(dot: ClassLabel, circ: ClassLabel) -> CellOutcome {
    let cell = certify_cell(dot, circ);
    let spec = match (cell.status, &cell.witness) {
        (CellStatus::Dash, _) => {
            let why = match cell.obstruction.expect("dash cells carry a rule") {
                DashRule::S2 => format!("S2: dot {dot} is solvable, circ {circ} is not"),
                DashRule::R1 => format!("R1: circ {circ} is nilpotent, dot {dot} is not solvable"),
                DashRule::R2 => format!("R2: circ {circ} is semisimple, so dot must be isomorphic to it"),
            };
            return CellOutcome { cell, certified: true, detail: why, evidence: None };
        }
        (_, None) => {
            return CellOutcome { cell, certified: false, detail: "no witness registered".into(), evidence: None }
        }
        (_, Some(spec)) => spec.clone(),
    };
    let ev = match gather_evidence(&spec) {
        Ok(ev) => ev,
        Err(e) => {
            return CellOutcome { cell, certified: false, detail: format!("{}: {e}", spec.name()), evidence: None }
        }
    };
    let mut problems = Vec::new();
    if !ev.lsb_pass {
        problems.push(format!("LSB identity residual {:e}", ev.lsb_residual));
    }
    if !ev.lambda_pass {
        problems.push("lambda properties fail".to_string());
    }
    if !ev.axioms_pass {
        problems.push("extracted structure violates the post-Lie axioms".to_string());
    }
    if (ev.dot_label, ev.circ_label) != (dot, circ) {
        problems.push(format!("extracted labels (dot {}, circ {})", ev.dot_label, ev.circ_label));
    }
    match cell.status {
        CellStatus::Check if !ev.lambda_nontrivial => problems.push("lambda is trivial".into()),
        CellStatus::Cong if !ev.invariant_differences.is_empty() => {
            problems.push(format!("invariants differ: {}", ev.invariant_differences.join(", ")))
        }
        _ => {}
    }
    let certified = problems.is_empty();
    let detail = if certified { format!("certified by {}", ev.witness) } else { problems.join("; ") };
    CellOutcome { cell, certified, detail, evidence: Some(ev) }
}

/// Runs every cell; never aborts early so the report shows all failures.
pub fn build_table() -> TableReport {
    let coords: Vec<(usize, usize)> = (0..6).flat_map(|r| (0..6).map(move |c| (r, c))).collect();
    let outcomes = par_map(&coords, |&(r, c)| run_cell(ClassLabel::ALL[c], ClassLabel::ALL[r]));
    let mut rows: Vec<Vec<CellOutcome>> = Vec::with_capacity(6);
    let mut it = outcomes.into_iter();
    for _ in 0..6 {
        rows.push(it.by_ref().take(6).collect());
    }
    TableReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ClassLabel::*;

    #[test]
    fn label_logic_examples() {
        assert_eq!(certify_cell(Ab, Ab).status, CellStatus::Cong);
        let c = certify_cell(Nil, Ab);
        assert_eq!(c.status, CellStatus::Check);
        assert_eq!(c.witness, Some(zappa_h3()));
        let c = certify_cell(Ab, Ssimp);
        assert_eq!((c.status, c.obstruction), (CellStatus::Dash, Some(DashRule::S2)));
        assert_eq!(certify_cell(Mixed, Ssimp).status, CellStatus::Dash);
        assert_eq!(certify_cell(Simp, Nil).obstruction, Some(DashRule::R1));
    }

    #[test]
    fn every_check_cell_has_a_witness() {
        for d in ClassLabel::ALL {
            for c in ClassLabel::ALL {
                let cell = certify_cell(d, c);
                assert_eq!(cell.status == CellStatus::Dash, cell.witness.is_none(), "({d}, {c})");
                assert_eq!(cell.status == CellStatus::Dash, cell.obstruction.is_some());
            }
        }
    }

    #[test]
    fn encoding_shape() {
        let g = vec![vec!["✓"; 6]; 6];
        let s = encode_grid(&g);
        assert!(s.starts_with("{\n  \"rows\": \"circ\""));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["grid"][0], "✓ ✓ ✓ ✓ ✓ ✓");
    }
}
