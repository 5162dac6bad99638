//! Weight sources and the `compute`, `spanning-trees` and `spectral` commands.

use std::path::PathBuf;

use twistkh_core::complex::tree_delta;
use twistkh_core::diagram::{EdgeLabel, Marking};
use twistkh_core::homology::dims_equal;
use twistkh_core::roberts::{region_edge_map, region_variable, roberts_weights};
use twistkh_core::spectral::{e3_page_with, SpectralError};
use twistkh_core::{build_twisted_reduced, build_untwisted_reduced, graded_dims, verify_d_squared, Diagram, Field};

use crate::pd::{build_diagram, parse_pd, FieldSpec, PdFile};
use crate::report::{D2Row, Report, TreeRow, Verdict};
use crate::InputError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSource {
    /// `mark` directives of the diagram file
    Explicit,
    /// `mark` and `field` directives of a separate file
    File(PathBuf),
    /// a distinct basis element or variable on every non-basepoint edge
    Generic,
    /// region-derived weights
    Roberts,
    /// no markings
    Zero,
}

impl WeightSource {
    pub fn parse(s: &str) -> WeightSource {
        match s {
            "generic" => WeightSource::Generic,
            "roberts" => WeightSource::Roberts,
            "zero" => WeightSource::Zero,
            "explicit" => WeightSource::Explicit,
            path => WeightSource::File(PathBuf::from(path)),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub field: Option<FieldSpec>,
    pub basepoint: Option<EdgeLabel>,
    /// `None`: the file's markings if it has any, otherwise generic weights
    pub weights: Option<WeightSource>,
}

fn edge_labels(file: &PdFile) -> Vec<EdgeLabel> {
    let mut l: Vec<EdgeLabel> = file.crossings.iter().flatten().copied().collect();
    l.sort_unstable();
    l.dedup();
    if l.is_empty() {
        l.push(file.basepoint.unwrap_or(1));
    }
    l
}

/// The diagram of `text` with the weights selected by `opts`.
pub fn load(text: &str, opts: &Options) -> Result<Diagram, InputError> {
    let file = parse_pd(text)?;
    let source = opts.weights.clone().unwrap_or(if file.marks.is_empty() { WeightSource::Generic } else { WeightSource::Explicit });
    match source {
        WeightSource::Explicit => build_diagram(&file, opts.basepoint, opts.field.as_ref()),
        WeightSource::File(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
            let w = parse_pd(&text)?;
            if !w.crossings.is_empty() {
                return Err(InputError::Usage(format!("{}: a weights file may not contain crossings", path.display())));
            }
            let merged = PdFile { marks: w.marks, field: w.field.or(file.field.clone()), ..file };
            build_diagram(&merged, opts.basepoint, opts.field.as_ref())
        }
        WeightSource::Zero => {
            let bare = PdFile { marks: Vec::new(), ..file };
            build_diagram(&bare, opts.basepoint, opts.field.as_ref())
        }
        WeightSource::Generic => {
            let bare = PdFile { marks: Vec::new(), ..file.clone() };
            let labels = edge_labels(&file);
            let plain = build_diagram(&bare, opts.basepoint, Some(&FieldSpec::Gf2))?;
            let bp = plain.label(plain.basepoint());
            let spec = opts.field.clone().or(file.field.clone()).unwrap_or(FieldSpec::Gf2k((labels.len() as u32 - 1).max(1)));
            let field = spec.build(|| labels.iter().filter(|&&l| l != bp).map(|l| format!("w{l}")).collect());
            let marks = (0..plain.edge_count())
                .filter(|&e| e != plain.basepoint())
                .enumerate()
                .map(|(i, edge)| {
                    let weight = region_variable(&field, i)
                        .map_err(|_| InputError::Usage(format!("field {} is too small for generic weights on {} edges", field.name(), labels.len() - 1)))?;
                    Ok(Marking { edge, weight })
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            Ok(plain.with_field(field, marks)?)
        }
        WeightSource::Roberts => {
            let bare = PdFile { marks: Vec::new(), ..file.clone() };
            let plain = build_diagram(&bare, opts.basepoint, Some(&FieldSpec::Gf2))?;
            let m = region_edge_map(&plain).map_err(|e| InputError::Diagram(e.to_string()))?;
            let n = m.region_count().max(1);
            let spec = opts.field.clone().or(file.field.clone()).unwrap_or(FieldSpec::Gf2k(n as u32));
            let field = spec.build(|| (1..=n).map(|i| format!("x{i}")).collect());
            let marks = roberts_weights(&m, &field).map_err(|_| {
                InputError::Usage(format!("field {} is too small for {} region variables", field.name(), m.region_count()))
            })?;
            Ok(plain.with_field(field, marks)?)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Untwisted,
    Twisted,
}

pub fn compute(d: &Diagram, mode: Mode) -> Result<Report, InputError> {
    let (c, label) = match mode {
        Mode::Untwisted => {
            let plain = d.with_field(Field::Gf2, Vec::new())?;
            (build_untwisted_reduced(&plain)?, "untwisted")
        }
        Mode::Twisted => (build_twisted_reduced(d)?, "twisted"),
    };
    let mut r = Report::for_diagram(&format!("compute {label}"), d, None);
    if mode == Mode::Untwisted {
        r.field = Field::Gf2.name();
        r.weights.clear();
    }
    let ok = verify_d_squared(&c);
    r.verdicts.push(Verdict::new("d_squared", ok, format!("{} generators, {} matrix entries", c.len(), c.entries().len())));
    if ok {
        r.delta_dims = Some(graded_dims(&c).map_err(|e| InputError::Diagram(e.to_string()))?);
    }
    Ok(r)
}

pub fn spanning_trees(d: &Diagram) -> Result<Report, InputError> {
    let mut r = Report::for_diagram("spanning-trees", d, None);
    r.trees = d
        .connected_resolutions()?
        .into_iter()
        .map(|res| TreeRow { resolution: res.to_string(), delta: tree_delta(d, res) })
        .collect();
    Ok(r)
}

/// Adds a self-loop to `d2`, which always makes `d2 ∘ d2` nonzero.
pub fn corrupt_d2(d: &Diagram) -> impl FnOnce(&mut Vec<(usize, usize, twistkh_core::FieldElement)>) + '_ {
    move |d2| d2.push((0, 0, d.field().one()))
}

pub fn spectral(d: &Diagram, inject_fault: bool) -> Result<Report, InputError> {
    let mut r = Report::for_diagram("spectral", d, None);
    let page = if inject_fault { e3_page_with(d, corrupt_d2(d)) } else { e3_page_with(d, |_| {}) };
    let page = match page {
        Ok(p) => p,
        Err(SpectralError::D2SquaredNonzero) => {
            r.verdicts.push(Verdict::new("d2_squared", false, "d2 composed with d2 is nonzero"));
            return Ok(r);
        }
        Err(e) => return Err(InputError::Precondition(e.to_string())),
    };
    r.verdicts.push(Verdict::new("d2_squared", true, format!("{} nonzero d2 entries", page.d2.len())));
    r.trees = page.trees.iter().map(|t| TreeRow { resolution: t.resolution.to_string(), delta: t.delta }).collect();
    r.d2 = page
        .d2
        .iter()
        .map(|(s, t, v)| D2Row {
            source: page.trees[*s].resolution.to_string(),
            target: page.trees[*t].resolution.to_string(),
            value: d.field().format(v),
        })
        .collect();
    let homology = graded_dims(&build_twisted_reduced(d)?).map_err(|e| InputError::Diagram(e.to_string()))?;
    let same = dims_equal(&page.e3_dims, &homology, false);
    r.verdicts.push(Verdict::new(
        "e3_equals_homology",
        same,
        format!("E3 total {}, homology total {}", page.e3_dims.total(), homology.total()),
    ));
    r.delta_dims = Some(page.e3_dims);
    Ok(r)
}
