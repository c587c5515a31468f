//! The operations behind each subcommand, independent of argument parsing.

use std::fmt::Write as _;
use std::path::Path;

use evenartin_core::brute::brute_lie_iso_field;
use evenartin_core::lie::{
    lie_iso_family, verify_morphism, FamilyDecision, ReducedMismatch, Separation,
};
use evenartin_core::magnus::{verify_magnus_model, TruncatedRing};
use evenartin_core::{brute_matrix_iso, matrices_isomorphic, Entry, Family, LieAlgebra, Report};
use serde_json::{json, Map, Value};

use crate::io::{
    entry_json, field_witness_json, matrix_json, permutation_json, read_matrix, read_morphism,
    FormatError, MorphismFile,
};
use crate::suites::magnus_suites;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NonIsomorphic,
}

/// Everything a command prints.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: String,
    pub info: Vec<(String, Value)>,
    pub report: Report,
    pub witness: Option<Value>,
    pub verdict: Option<Verdict>,
}

impl Outcome {
    fn new(command: &str) -> Self {
        Outcome {
            command: command.to_owned(),
            info: Vec::new(),
            report: Report::new(),
            witness: None,
            verdict: None,
        }
    }

    fn info(&mut self, key: &str, value: impl Into<Value>) {
        self.info.push((key.to_owned(), value.into()));
    }

    pub fn info_value(&self, key: &str) -> Option<&Value> {
        self.info.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// 1 if any check failed, otherwise 2 for a non-isomorphism verdict and 0
    /// for everything else.
    pub fn exit_code(&self) -> i32 {
        if !self.report.all_passed() {
            1
        } else if self.verdict == Some(Verdict::NonIsomorphic) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let info: Map<String, Value> = self.info.iter().cloned().collect();
        let checks: Vec<Value> = self
            .report
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        json!({
            "command": self.command,
            "info": info,
            "checks": checks,
            "witness": self.witness,
            "verdict": self.verdict.map(verdict_name),
            "exit": self.exit_code(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "COMMAND {}", self.command).unwrap();
        for (k, v) in &self.info {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}").unwrap(),
                other => writeln!(out, "{k}: {other}").unwrap(),
            }
        }
        write!(out, "{}", self.report).unwrap();
        if let Some(w) = &self.witness {
            writeln!(out, "WITNESS {w}").unwrap();
        }
        if let Some(v) = self.verdict {
            writeln!(out, "RESULT {}", verdict_name(v)).unwrap();
        }
        out
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Isomorphic => "ISOMORPHIC",
        Verdict::NonIsomorphic => "NON-ISOMORPHIC",
    }
}

fn label_json(l: Option<Entry>) -> Value {
    l.map_or(json!(0), entry_json)
}

pub fn validate(path: &Path, families: &[(u64, u64)]) -> Result<Outcome, FormatError> {
    let m = read_matrix(path)?;
    let c = m.classify(families)?;
    let mut out = Outcome::new("validate");
    out.info("rank", m.rank());
    out.info("even", c.is_even);
    out.info("right-angled", c.is_right_angled);
    for (f, member) in &c.family_memberships {
        out.info(&format!("E({},{})", f.c(), f.d()), *member);
    }
    out.report
        .push("parse", true, format!("{0}x{0} Coxeter matrix", m.rank()));
    Ok(out)
}

pub fn reduce(path: &Path) -> Result<Outcome, FormatError> {
    let m = read_matrix(path)?;
    let r = m.reduce()?;
    let mut out = Outcome::new("reduce");
    out.info("classes", json!(r.classes));
    out.info("sizes", json!(r.sizes));
    out.info(
        "labels",
        Value::Array(r.labels.iter().copied().map(label_json).collect()),
    );
    out.info("reduced", matrix_json(&r.matrix)["entries"].clone());
    out.info("identity", r.len() == m.rank());
    out.report.push(
        "reduction",
        true,
        format!("{} classes from {} generators", r.len(), m.rank()),
    );
    Ok(out)
}

pub fn iso(a: &Path, b: &Path, brute: bool) -> Result<Outcome, FormatError> {
    let (m, n) = (read_matrix(a)?, read_matrix(b)?);
    let mut out = Outcome::new("iso");
    let found = matrices_isomorphic(&m, &n);
    if brute {
        let slow = brute_matrix_iso(&m, &n)?;
        out.report.push(
            "brute-agrees",
            slow.is_some() == found.is_some(),
            format!(
                "class search {}, permutation search {}",
                found.is_some(),
                slow.is_some()
            ),
        );
    }
    match found {
        Some(w) => {
            out.report.push(
                "witness-verifies",
                w.verify(&m, &n),
                format!("permutation {:?}", w.permutation),
            );
            out.witness = Some(permutation_json(&w));
            out.verdict = Some(Verdict::Isomorphic);
        }
        None => out.verdict = Some(Verdict::NonIsomorphic),
    }
    Ok(out)
}

pub fn lie_info(path: &Path) -> Result<Outcome, FormatError> {
    let l = LieAlgebra::new(read_matrix(path)?)?;
    let mut out = Outcome::new("lie info");
    out.info("degree1-rank", l.rank());
    let slots: Vec<String> = l
        .slots()
        .iter()
        .map(|s| format!("({},{}) {}", s.s, s.t, s.modulus))
        .collect();
    out.info("slots", slots.join(", "));
    out.info("torsion", l.torsion_invariant().to_string());
    Ok(out)
}

fn describe_mismatch(m: &ReducedMismatch) -> String {
    match m {
        ReducedMismatch::ClassCount { source, target } => {
            format!("reduced matrices have {source} and {target} classes")
        }
        ReducedMismatch::ClassData => "reduced matrices differ in class sizes or labels".into(),
        ReducedMismatch::NoClassIsomorphism => {
            "reduced matrices admit no label-preserving isomorphism".into()
        }
    }
}

pub fn lie_iso(a: &Path, b: &Path, family: (u64, u64)) -> Result<Outcome, FormatError> {
    let (m, n) = (read_matrix(a)?, read_matrix(b)?);
    let family = Family::new(family.0, family.1)?;
    let mut out = Outcome::new("lie iso");
    out.info("family", format!("E({},{})", family.c(), family.d()));
    match lie_iso_family(&m, &n, family)? {
        FamilyDecision::Isomorphic {
            matrix_witness,
            witness,
            report,
        } => {
            let src = LieAlgebra::new(m)?;
            let dst = LieAlgebra::new(n)?;
            let file = MorphismFile::from_witness(&witness, &src, &dst);
            let mut payload = serde_json::to_value(file).expect("morphism files serialize");
            payload["permutation"] = json!(matrix_witness.permutation);
            out.report = report;
            out.witness = Some(payload);
            out.verdict = Some(Verdict::Isomorphic);
        }
        FamilyDecision::NonIsomorphic(sep) => {
            let (kind, detail) = match &sep {
                Separation::Degree1Rank { source, target } => ("invariant", format!("degree-1 ranks {source} and {target}")),
                Separation::Torsion { source, target } => ("invariant", format!("torsion invariants {source} and {target}")),
                Separation::ByTheorem(mismatch) => (
                    "theorem",
                    format!(
                        "by the rigidity theorem for E({},{}): the Lie rings are isomorphic iff the matrices are; {}",
                        family.c(),
                        family.d(),
                        describe_mismatch(mismatch)
                    ),
                ),
            };
            out.info("separated-by", kind);
            out.info("separation", detail);
            out.verdict = Some(Verdict::NonIsomorphic);
        }
    }
    Ok(out)
}

pub fn lie_verify_morphism(a: &Path, b: &Path, morphism: &Path) -> Result<Outcome, FormatError> {
    let src = LieAlgebra::new(read_matrix(a)?)?;
    let dst = LieAlgebra::new(read_matrix(b)?)?;
    let w = read_morphism(morphism, &src, &dst)?;
    let mut out = Outcome::new("lie verify-morphism");
    out.report = verify_morphism(&src, &dst, &w)?;
    Ok(out)
}

pub fn magnus(path: &Path, trials: usize, seed: u64) -> Result<Outcome, FormatError> {
    let m = read_matrix(path)?;
    let mut out = Outcome::new("magnus");
    out.info("seed", seed);
    out.info("trials", trials);
    out.report = verify_magnus_model(&m)?;
    if trials > 0 {
        let ring = TruncatedRing::new(m.clone())?;
        let lie = LieAlgebra::new(m)?;
        out.report.extend(magnus_suites(&ring, &lie, trials, seed)?);
    }
    Ok(out)
}

pub fn brute_lie(a: &Path, b: &Path, p: u64) -> Result<Outcome, FormatError> {
    let (m, n) = (read_matrix(a)?, read_matrix(b)?);
    let mut out = Outcome::new("brute-lie");
    out.info("prime", p);
    match brute_lie_iso_field(&m, &n, p)? {
        Some(w) => {
            let src = evenartin_core::field::FieldLieAlgebra::new(m, p)?;
            let dst = evenartin_core::field::FieldLieAlgebra::new(n, p)?;
            out.report.push(
                "witness-verifies",
                w.verify(&src, &dst),
                format!("F1 {:?}", w.f1.rows),
            );
            out.witness = Some(field_witness_json(&w));
            out.verdict = Some(Verdict::Isomorphic);
        }
        None => out.verdict = Some(Verdict::NonIsomorphic),
    }
    Ok(out)
}
