//! The PD text format.
//!
//! ```text
//! # left-handed trefoil
//! X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
//! basepoint 1
//! field ratfn(a, b)
//! mark 2 a
//! mark 4 (a + b)/b
//! ```
//!
//! Crossing terms may appear anywhere outside directive lines. A directive
//! occupies its whole line. `#` starts a comment.

use std::fmt;

use twistkh_core::diagram::EdgeLabel;
use twistkh_core::field::RatFnField;
use twistkh_core::{Diagram, DiagramError, Field, FieldElement};

use crate::expr::parse_weight;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// A `mark` directive with its weight still unparsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkSpec {
    pub edge: EdgeLabel,
    pub expr: String,
    pub line: usize,
    /// column where the expression starts
    pub column: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PdFile {
    pub crossings: Vec<[EdgeLabel; 4]>,
    pub basepoint: Option<EdgeLabel>,
    pub field: Option<FieldSpec>,
    pub marks: Vec<MarkSpec>,
}

/// A field as written in a file or on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Gf2,
    Gf2k(u32),
    /// `ratfn(...)`; an empty list means "choose variables automatically"
    RatFn(Vec<String>),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<FieldSpec, String> {
        let s = s.trim();
        if s == "gf2" {
            return Ok(FieldSpec::Gf2);
        }
        if let Some(k) = s.strip_prefix("gf2k:") {
            let k: u32 = k.trim().parse().map_err(|_| format!("bad extension degree '{k}'"))?;
            if !(1..=64).contains(&k) {
                return Err(format!("extension degree {k} is outside 1..=64"));
            }
            return Ok(FieldSpec::Gf2k(k));
        }
        if s == "ratfn" {
            return Ok(FieldSpec::RatFn(Vec::new()));
        }
        if let Some(rest) = s.strip_prefix("ratfn(").and_then(|r| r.strip_suffix(')')) {
            let vars: Vec<String> = rest.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
            for v in &vars {
                let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !ok || v == "t" {
                    return Err(format!("bad variable name '{v}'"));
                }
            }
            let mut sorted = vars.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != vars.len() {
                return Err("repeated variable name".into());
            }
            return Ok(FieldSpec::RatFn(vars));
        }
        Err(format!("unknown field '{s}' (expected gf2, gf2k:<k> or ratfn(<vars>))"))
    }

    /// The field; `ratfn` with no variables gets `default_vars`.
    pub fn build(&self, default_vars: impl FnOnce() -> Vec<String>) -> Field {
        match self {
            FieldSpec::Gf2 => Field::Gf2,
            FieldSpec::Gf2k(k) => Field::gf2k(*k).expect("degree checked at parse time"),
            FieldSpec::RatFn(v) if v.is_empty() => Field::RatFn(RatFnField::new(default_vars())),
            FieldSpec::RatFn(v) => Field::RatFn(RatFnField::new(v.iter().cloned())),
        }
    }
}

pub fn parse_pd(text: &str) -> Result<PdFile, ParseError> {
    let mut out = PdFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let indent = body.len() - trimmed.len();
        let word_end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let (word, rest) = trimmed.split_at(word_end);
        let rest_col = indent + word_end + 1 + (rest.len() - rest.trim_start().len());
        let err = |column: usize, message: String| ParseError { line, column, message };
        match word {
            "basepoint" => {
                if out.basepoint.is_some() {
                    return Err(err(indent + 1, "basepoint given twice".into()));
                }
                out.basepoint = Some(parse_label(rest.trim()).map_err(|m| err(rest_col, m))?);
            }
            "field" => {
                if out.field.is_some() {
                    return Err(err(indent + 1, "field given twice".into()));
                }
                out.field = Some(FieldSpec::parse(rest).map_err(|m| err(rest_col, m))?);
            }
            "mark" => {
                let r = rest.trim_start();
                let edge_end = r.find(char::is_whitespace).ok_or_else(|| err(rest_col, "expected 'mark <edge> <weight>'".into()))?;
                let edge = parse_label(&r[..edge_end]).map_err(|m| err(rest_col, m))?;
                let after = &r[edge_end..];
                let expr = after.trim();
                let column = rest_col + edge_end + (after.len() - after.trim_start().len());
                out.marks.push(MarkSpec { edge, expr: expr.to_string(), line, column });
            }
            _ => scan_terms(body, line, &mut out.crossings)?,
        }
    }
    Ok(out)
}

fn parse_label(s: &str) -> Result<EdgeLabel, String> {
    match s.parse::<EdgeLabel>() {
        Ok(0) => Err("edge labels start at 1".into()),
        Ok(v) => Ok(v),
        Err(_) => Err(format!("expected an edge label, found '{s}'")),
    }
}

fn scan_terms(body: &str, line: usize, out: &mut Vec<[EdgeLabel; 4]>) -> Result<(), ParseError> {
    let bytes = body.as_bytes();
    let mut i = 0;
    let err = |i: usize, message: String| ParseError { line, column: i + 1, message };
    let skip = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip(&mut i);
        if i == bytes.len() {
            return Ok(());
        }
        if bytes[i] != b'X' {
            return Err(err(i, format!("expected a crossing 'X(a,b,c,d)' or a directive, found '{}'", bytes[i] as char)));
        }
        i += 1;
        skip(&mut i);
        if bytes.get(i) != Some(&b'(') {
            return Err(err(i, "expected '('".into()));
        }
        i += 1;
        let mut quad = [0; 4];
        for (k, slot) in quad.iter_mut().enumerate() {
            skip(&mut i);
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            *slot = parse_label(&body[start..i]).map_err(|m| err(start, m))?;
            skip(&mut i);
            let want = if k == 3 { b')' } else { b',' };
            if bytes.get(i) != Some(&want) {
                return Err(err(i, format!("expected '{}'", want as char)));
            }
            i += 1;
        }
        out.push(quad);
    }
}

/// Builds a diagram from a parsed file. Explicit arguments override the
/// file's basepoint and field. Without any basepoint the lowest edge label
/// is used.
pub fn build_diagram(file: &PdFile, basepoint: Option<EdgeLabel>, field: Option<&FieldSpec>) -> Result<Diagram, crate::InputError> {
    let labels = || {
        let mut l: Vec<EdgeLabel> = file.crossings.iter().flatten().copied().collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    let bp = basepoint.or(file.basepoint).unwrap_or_else(|| labels().first().copied().unwrap_or(1));
    let spec = field.or(file.field.as_ref()).cloned().unwrap_or(FieldSpec::Gf2);
    let field = spec.build(|| labels().iter().filter(|&&l| l != bp).map(|l| format!("w{l}")).collect());
    let marks = file
        .marks
        .iter()
        .map(|m| {
            let w = parse_weight(&m.expr, &field).map_err(|e| ParseError {
                line: m.line,
                column: m.column + e.column - 1,
                message: e.message,
            })?;
            Ok((m.edge, w))
        })
        .collect::<Result<Vec<(EdgeLabel, FieldElement)>, ParseError>>()?;
    if file.crossings.is_empty() {
        return Ok(Diagram::unknot(bp, marks, field)?);
    }
    Ok(Diagram::new(&file.crossings, bp, marks, field)?)
}

impl From<DiagramError> for crate::InputError {
    fn from(e: DiagramError) -> Self {
        crate::InputError::Diagram(e.to_string())
    }
}
