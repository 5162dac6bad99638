//! Verification suites run by `twistkh verify`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistkh_core::complex::slide_marking;
use twistkh_core::diagram::pd_string;
use twistkh_core::homology::{dims_equal, eval_rank, rank};
use twistkh_core::random::{generic_diagram, random_element, redistribute, symbolic_generic_diagram};
use twistkh_core::roberts::{check_injective, circle_sum_property, region_edge_map, roberts_diagram};
use twistkh_core::spectral::{d2_block, e3_page_with, vertical_acyclicity, SpectralError};
use twistkh_core::{build_twisted_reduced, build_untwisted_reduced, graded_dims, verify_d_squared, Diagram, Field, GradedDims};

use crate::report::{weight_table, Report, Reproduction, Verdict};
use crate::run::corrupt_d2;
use crate::InputError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Invariance,
    Theorem,
    Spectral,
    Roberts,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "invariance" => Suite::Invariance,
            "theorem" => Suite::Theorem,
            "spectral" => Suite::Spectral,
            "roberts" => Suite::Roberts,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub inject_d2_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { suite: Suite::All, trials: 25, seed: 0, inject_d2_fault: false }
    }
}

fn dims(d: &Diagram) -> Result<GradedDims, InputError> {
    let c = build_twisted_reduced(d)?;
    if !verify_d_squared(&c) {
        return Err(InputError::Internal("twisted differential does not square to zero".into()));
    }
    graded_dims(&c).map_err(|e| InputError::Internal(e.to_string()))
}

fn plain(d: &Diagram) -> Result<Diagram, InputError> {
    Ok(d.with_field(Field::Gf2, Vec::new())?)
}

/// Homology depends only on per-component marking totals; also checks
/// sliding a marking through a crossing.
pub fn invariance(d: &Diagram, trials: usize, seed: u64) -> Result<Vec<Verdict>, InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = if matches!(d.field(), Field::Gf2) { d.with_field(Field::gf2k(16).unwrap(), Vec::new())? } else { d.clone() };
    let totals = if base.markings().is_empty() {
        (0..base.component_count()).map(|_| random_element(&mut rng, base.field())).collect()
    } else {
        base.component_totals()
    };
    let reference = if base.markings().is_empty() { base.with_markings(redistribute(&mut rng, &base, &totals))? } else { base.clone() };
    let expected = dims(&reference)?;
    let mut out = Vec::new();
    let mut failures = 0;
    for _ in 0..trials {
        let moved = base.with_markings(redistribute(&mut rng, &base, &totals))?;
        if dims(&moved)? != expected {
            failures += 1;
        }
    }
    out.push(Verdict::new(
        "marking_totals",
        failures == 0,
        format!("{trials} redistributions with fixed component totals, {failures} changed the homology"),
    ));
    let mut slid = 0;
    let mut bad = 0;
    for i in 0..reference.markings().len() {
        let Some((x, _)) = reference.head_dart(reference.markings()[i].edge) else { continue };
        let moved = slide_marking(&reference, i, x)?;
        slid += 1;
        if dims(&moved)? != expected {
            bad += 1;
        }
    }
    out.push(Verdict::new("slides", bad == 0, format!("{slid} single-crossing slides, {bad} changed the homology")));
    Ok(out)
}

/// For knots, twisted homology with generic weights equals the
/// delta-graded untwisted homology.
pub fn theorem(d: &Diagram) -> Result<Vec<Verdict>, InputError> {
    if !d.is_knot() {
        return Ok(vec![Verdict::new("generic_equals_untwisted", true, format!("not applicable: {} components", d.component_count()))]);
    }
    let p = plain(d)?;
    let untwisted = graded_dims(&build_untwisted_reduced(&p)?).map_err(|e| InputError::Internal(e.to_string()))?;
    let twisted = dims(&generic_diagram(&p)?)?;
    let ok = dims_equal(&twisted, &untwisted, false);
    Ok(vec![Verdict::new(
        "generic_equals_untwisted",
        ok,
        format!("twisted total {}, untwisted total {}", twisted.total(), untwisted.total()),
    )])
}

/// Spanning-tree model: tree count, vertical acyclicity, d2 squared, E3 =
/// homology, and symbolic against evaluated ranks of the d2 blocks.
pub fn spectral(d: &Diagram, seed: u64, inject_d2_fault: bool) -> Result<Vec<Verdict>, InputError> {
    let g = generic_diagram(&plain(d)?)?;
    let mut out = Vec::new();
    let page = if inject_d2_fault { e3_page_with(&g, corrupt_d2(&g)) } else { e3_page_with(&g, |_| {}) };
    let page = match page {
        Ok(p) => p,
        Err(SpectralError::D2SquaredNonzero) => {
            out.push(Verdict::new("d2_squared", false, "d2 composed with d2 is nonzero"));
            return Ok(out);
        }
        Err(e) => return Err(InputError::Precondition(e.to_string())),
    };
    out.push(Verdict::new("d2_squared", true, format!("{} nonzero entries", page.d2.len())));
    let trees = g.connected_resolutions()?.len();
    out.push(Verdict::new(
        "e1_trees",
        page.trees.len() == trees,
        format!("{} E1 generators, {trees} connected resolutions", page.trees.len()),
    ));
    let c = build_twisted_reduced(&g)?;
    let vertical = vertical_acyclicity(&c, &g).map_err(|e| InputError::Internal(e.to_string()))?;
    let cyclic = vertical.iter().filter(|(_, ok)| !ok).count();
    out.push(Verdict::new(
        "vertical_acyclic",
        cyclic == 0,
        format!("{} disconnected resolutions, {cyclic} not acyclic", vertical.len()),
    ));
    let homology = dims(&g)?;
    out.push(Verdict::new(
        "e3_equals_homology",
        dims_equal(&page.e3_dims, &homology, false),
        format!("E3 total {}, homology total {}", page.e3_dims.total(), homology.total()),
    ));
    // the same blocks with symbolic weights
    let s = symbolic_generic_diagram(&plain(d)?)?;
    let spage = e3_page_with(&s, |_| {}).map_err(|e| InputError::Internal(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deltas: std::collections::BTreeSet<i32> = spage.trees.iter().map(|t| t.delta).collect();
    let mut blocks = 0;
    let mut mismatches = 0;
    for &delta in &deltas {
        let block = d2_block(&spage, s.field(), delta);
        let exact = rank(&block, s.field()).map_err(|e| InputError::Internal(e.to_string()))?;
        for _ in 0..3 {
            if eval_rank(&block, 1, &mut rng).map_err(|e| InputError::Internal(e.to_string()))? != exact {
                mismatches += 1;
            }
        }
        blocks += 1;
    }
    out.push(Verdict::new(
        "rank_cross_check",
        mismatches == 0,
        format!("{blocks} symbolic d2 blocks at 3 evaluation points each, {mismatches} disagreements"),
    ));
    Ok(out)
}

/// Region weights: injectivity of f, g∘f = id, circle sums, and homology
/// against generic weights.
pub fn roberts(d: &Diagram) -> Result<Vec<Verdict>, InputError> {
    let p = plain(d)?;
    let mut out = Vec::new();
    let m = region_edge_map(&p);
    let m = match m {
        Ok(m) => m,
        Err(e) => {
            out.push(Verdict::new("f_injective", false, e.to_string()));
            return Ok(out);
        }
    };
    out.push(Verdict::new(
        "f_injective",
        check_injective(&m),
        format!("{} regions, {} edges", m.region_count(), m.edge_count()),
    ));
    out.push(Verdict::new("g_left_inverse", m.composes_to_identity(), "g composed with f is the identity"));
    let w = roberts_diagram(&p, false).map_err(|e| InputError::Internal(e.to_string()))?;
    match circle_sum_property(&p, &m, Some(&w)) {
        Ok(n) => out.push(Verdict::new("circle_sums", true, format!("{n} basepoint-avoiding circles"))),
        Err(e) => out.push(Verdict::new("circle_sums", false, e.to_string())),
    }
    let generic = dims(&generic_diagram(&p)?)?;
    let region = dims(&w)?;
    out.push(Verdict::new(
        "roberts_homology",
        dims_equal(&region, &generic, false),
        format!("region weights total {}, generic total {}", region.total(), generic.total()),
    ));
    Ok(out)
}

pub fn verify(d: &Diagram, opts: &VerifyOptions) -> Result<Report, InputError> {
    let mut r = Report::for_diagram("verify", d, Some(opts.seed));
    let s = opts.suite;
    let c = build_twisted_reduced(d)?;
    r.verdicts.push(Verdict::new("d_squared", verify_d_squared(&c), "differential of the given diagram"));
    if matches!(s, Suite::Invariance | Suite::All) {
        r.verdicts.extend(invariance(d, opts.trials, opts.seed)?);
    }
    if matches!(s, Suite::Theorem | Suite::All) {
        r.verdicts.extend(theorem(d)?);
    }
    if matches!(s, Suite::Spectral | Suite::All) {
        r.verdicts.extend(spectral(d, opts.seed, opts.inject_d2_fault)?);
    }
    if matches!(s, Suite::Roberts | Suite::All) {
        r.verdicts.extend(roberts(d)?);
    }
    if !r.passed() {
        r.reproduction = Some(Reproduction {
            pd: pd_string(d),
            basepoint: d.label(d.basepoint()),
            weights: weight_table(d),
            seed: opts.seed,
        });
    }
    Ok(r)
}
