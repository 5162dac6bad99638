//! Run reports: deterministic JSON plus a human-readable rendering.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use twistkh_core::diagram::pd_string;
use twistkh_core::{Diagram, GradedDims};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Verdict { check: check.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeRow {
    pub resolution: String,
    pub delta: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2Row {
    pub source: String,
    pub target: String,
    pub value: String,
}

/// Enough to rerun a failing check by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reproduction {
    pub pd: String,
    pub basepoint: u32,
    pub weights: Vec<(u32, String)>,
    pub seed: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub weights: Vec<(u32, String)>,
    pub delta_dims: Option<GradedDims>,
    pub trees: Vec<TreeRow>,
    pub d2: Vec<D2Row>,
    pub verdicts: Vec<Verdict>,
    pub digest: String,
    pub reproduction: Option<Reproduction>,
}

/// Marking weights summed per edge, zeros dropped, by edge label.
pub fn weight_table(d: &Diagram) -> Vec<(u32, String)> {
    let mut per_edge = vec![d.field().zero(); d.edge_count()];
    for m in d.markings() {
        per_edge[m.edge] = per_edge[m.edge].add(&m.weight).expect("markings live in the diagram field");
    }
    (0..d.edge_count())
        .filter(|&e| !per_edge[e].is_zero())
        .map(|e| (d.label(e), d.field().format(&per_edge[e])))
        .collect()
}

/// SHA-256 of a canonical rendering of the diagram, field, weights and seed.
pub fn input_digest(d: &Diagram, seed: Option<u64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "pd:{}", pd_string(d));
    let _ = writeln!(s, "basepoint:{}", d.label(d.basepoint()));
    let _ = writeln!(s, "field:{}", d.field().name());
    for (e, w) in weight_table(d) {
        let _ = writeln!(s, "mark:{e}:{w}");
    }
    if let Some(seed) = seed {
        let _ = writeln!(s, "seed:{seed}");
    }
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Report {
    pub fn for_diagram(command: &str, d: &Diagram, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            field: d.field().name(),
            weights: weight_table(d),
            digest: input_digest(d, seed),
            ..Report::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        let dims: Map<String, Value> =
            self.delta_dims.iter().flat_map(|d| d.iter()).map(|(k, v)| (k.to_string(), json!(v))).collect();
        m.insert("delta_dims".into(), Value::Object(dims));
        m.insert("total".into(), json!(self.delta_dims.as_ref().map_or(0, GradedDims::total)));
        m.insert("field".into(), json!(self.field));
        let weights: Map<String, Value> = self.weights.iter().map(|(e, w)| (e.to_string(), json!(w))).collect();
        m.insert("weights".into(), Value::Object(weights));
        m.insert(
            "trees".into(),
            self.trees.iter().map(|t| json!({"resolution": t.resolution, "delta": t.delta})).collect(),
        );
        m.insert(
            "verdicts".into(),
            self.verdicts.iter().map(|v| json!({"check": v.check, "passed": v.passed, "detail": v.detail})).collect(),
        );
        if !self.d2.is_empty() {
            m.insert(
                "d2".into(),
                self.d2.iter().map(|r| json!({"source": r.source, "target": r.target, "value": r.value})).collect(),
            );
        }
        m.insert("command".into(), json!(self.command));
        m.insert("input_digest".into(), json!(self.digest));
        if let Some(r) = &self.reproduction {
            let weights: Map<String, Value> = r.weights.iter().map(|(e, w)| (e.to_string(), json!(w))).collect();
            m.insert(
                "reproduction".into(),
                json!({"pd": r.pd, "basepoint": r.basepoint, "weights": weights, "seed": r.seed}),
            );
        }
        Value::Object(m)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field: {}", self.field);
        if !self.weights.is_empty() {
            let w: Vec<String> = self.weights.iter().map(|(e, w)| format!("{e}: {w}")).collect();
            let _ = writeln!(s, "weights: {}", w.join(", "));
        }
        if let Some(d) = &self.delta_dims {
            let _ = writeln!(s, "P(d) = {}", poincare(d));
            let _ = writeln!(s, "total: {}", d.total());
        }
        if !self.trees.is_empty() {
            let _ = writeln!(s, "trees ({}):", self.trees.len());
            for t in &self.trees {
                let _ = writeln!(s, "  {}  delta {}", t.resolution, t.delta);
            }
        }
        if !self.d2.is_empty() {
            let _ = writeln!(s, "d2:");
            for r in &self.d2 {
                let _ = writeln!(s, "  {} -> {}: {}", r.source, r.target, r.value);
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(s, "[{}] {}: {}", if v.passed { "pass" } else { "FAIL" }, v.check, v.detail);
        }
        if let Some(r) = &self.reproduction {
            let _ = writeln!(s, "reproduce with: {} basepoint {} seed {}", r.pd, r.basepoint, r.seed);
        }
        s
    }
}

/// Poincare polynomial in a formal variable `d` marking the delta grading.
pub fn poincare(dims: &GradedDims) -> String {
    let terms: Vec<String> = dims
        .iter()
        .map(|(delta, n)| match (n, delta) {
            (n, 0) => n.to_string(),
            (1, delta) => format!("d^{delta}"),
            (n, delta) => format!("{n} d^{delta}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
