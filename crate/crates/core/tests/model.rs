mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistkh_core::complex::slide_marking;
use twistkh_core::homology::dims_equal;
use twistkh_core::random::{generic_diagram, random_diagram, random_element, redistribute};
use twistkh_core::roberts::{circle_sum_property, region_edge_map, roberts_diagram};
use twistkh_core::spectral::{d2_entry, e3_page, vertical_acyclicity};
use twistkh_core::{build_twisted_reduced, build_untwisted_reduced, graded_dims, verify_d_squared, Diagram, Field, Resolution};

fn plain(pd: &[[u32; 4]]) -> Diagram {
    Diagram::new(pd, 1, Vec::new(), Field::Gf2).unwrap()
}

#[test]
fn generic_twisting_on_knots() {
    for f in common::knots() {
        let d = plain(&f.pd);
        let untwisted = graded_dims(&build_untwisted_reduced(&d).unwrap()).unwrap();
        let twisted = graded_dims(&build_twisted_reduced(&generic_diagram(&d).unwrap()).unwrap()).unwrap();
        assert!(dims_equal(&twisted, &untwisted, false), "{}: {twisted:?} vs {untwisted:?}", f.name);
    }
}

#[test]
fn spectral_model_on_fixtures() {
    let mut saw_nonzero_d2 = false;
    for f in common::all() {
        let d = generic_diagram(&plain(&f.pd)).unwrap();
        let c = build_twisted_reduced(&d).unwrap();
        let page = e3_page(&d).unwrap();
        assert_eq!(page.trees.len() as u64, common::spanning_tree_count(&f.pd), "{}", f.name);
        assert!(vertical_acyclicity(&c, &d).unwrap().iter().all(|(_, ok)| *ok), "{}", f.name);
        assert!(dims_equal(&page.e3_dims, &graded_dims(&c).unwrap(), false), "{}", f.name);
        saw_nonzero_d2 |= f.name == "8_19" && !page.d2.is_empty();
    }
    assert!(saw_nonzero_d2, "8_19 should have a nonzero d2 entry");
}

#[test]
fn hopf_sum_has_no_admissible_pair() {
    let f = common::all().into_iter().find(|f| f.name == "hopf#hopf").unwrap();
    let page = e3_page(&generic_diagram(&plain(&f.pd)).unwrap()).unwrap();
    assert_eq!(page.trees.len(), 4);
    assert!(page.d2.is_empty());
}

#[test]
fn d2_entries_match_intermediate_weights() {
    let f = common::all().into_iter().find(|f| f.name == "8_19").unwrap();
    let d = generic_diagram(&plain(&f.pd)).unwrap();
    let trees = d.connected_resolutions().unwrap();
    let mut checked = 0;
    for &r in &trees {
        for &r2 in &trees {
            let diff = r.bits() ^ r2.bits();
            if r.bits() & diff != 0 || diff.count_ones() != 2 {
                continue;
            }
            let ws: Vec<_> = (0..r.len())
                .filter(|&i| diff >> i & 1 == 1)
                .map(|i| {
                    let cs = d.resolve(r.flip(i));
                    assert_eq!(cs.count(), 2);
                    d.circle_weight(&cs, 1)
                })
                .collect();
            // (W + W') / (W W')
            let expected = ws[0].add(&ws[1]).unwrap().mul(&ws[0].mul(&ws[1]).unwrap().inv().unwrap()).unwrap();
            assert_eq!(d2_entry(&d, r, r2).unwrap(), expected);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn d2_squares_to_zero_on_random_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let d = generic_diagram(&random_diagram(&mut rng, 6, Field::Gf2).unwrap()).unwrap();
        let page = e3_page(&d).unwrap();
        let c = build_twisted_reduced(&d).unwrap();
        assert!(dims_equal(&page.e3_dims, &graded_dims(&c).unwrap(), false));
    }
}

#[test]
fn roberts_on_fixtures() {
    for f in common::all().into_iter().filter(|f| f.pd.len() <= 6) {
        let d = plain(&f.pd);
        let m = region_edge_map(&d).unwrap();
        assert!(m.composes_to_identity(), "{}", f.name);
        let w = roberts_diagram(&d, false).unwrap();
        circle_sum_property(&d, &m, Some(&w)).unwrap();
        let generic = graded_dims(&build_twisted_reduced(&generic_diagram(&d).unwrap()).unwrap()).unwrap();
        let roberts = graded_dims(&build_twisted_reduced(&w).unwrap()).unwrap();
        assert!(dims_equal(&roberts, &generic, false), "{}", f.name);
    }
}

#[test]
fn trefoil_with_symbolic_roberts_weights() {
    let d = plain(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
    let w = roberts_diagram(&d, true).unwrap();
    assert_eq!(graded_dims(&build_twisted_reduced(&w).unwrap()).unwrap().total(), 3);
}

#[test]
fn marking_totals_determine_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in common::all().into_iter().filter(|f| f.pd.len() <= 6) {
        let base = plain(&f.pd).with_field(Field::gf2k(8).unwrap(), Vec::new()).unwrap();
        let totals: Vec<_> = (0..base.component_count()).map(|_| random_element(&mut rng, base.field())).collect();
        let reference = base.with_markings(redistribute(&mut rng, &base, &totals)).unwrap();
        let expected = graded_dims(&build_twisted_reduced(&reference).unwrap()).unwrap();
        for _ in 0..5 {
            let d = base.with_markings(redistribute(&mut rng, &base, &totals)).unwrap();
            let c = build_twisted_reduced(&d).unwrap();
            assert!(verify_d_squared(&c));
            assert_eq!(graded_dims(&c).unwrap(), expected, "{}", f.name);
        }
    }
}

#[test]
fn slides_preserve_homology() {
    let f = common::knots().into_iter().find(|f| f.name == "4_1").unwrap();
    let d = generic_diagram(&plain(&f.pd)).unwrap();
    let expected = graded_dims(&build_twisted_reduced(&d).unwrap()).unwrap();
    for i in 0..d.markings().len() {
        let e = d.markings()[i].edge;
        let (x, _) = d.head_dart(e).unwrap();
        let slid = slide_marking(&d, i, x).unwrap();
        assert_ne!(slid.markings()[i].edge, e);
        assert_eq!(graded_dims(&build_twisted_reduced(&slid).unwrap()).unwrap(), expected);
    }
}

#[test]
fn resolution_parse_matches_bits() {
    let r = Resolution::parse("0110").unwrap();
    assert!(!r.bit(0) && r.bit(1) && r.bit(2) && !r.bit(3));
}
