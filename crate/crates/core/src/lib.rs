//! Reduced characteristic-2 Khovanov homology of marked link diagrams and its
//! twisted variant.
//!
//! A link diagram with a basepoint and weighted markings on its edges gives a
//! chain complex over a field of characteristic 2. The untwisted part is the
//! reduced Khovanov cube; each marking adds its weight times the dot action
//! on the circle through the marked edge. With generic weights the complex
//! admits a spanning-tree model whose only nontrivial higher differential is
//! an explicit `d2`, and region-labelled twistings correspond to edge
//! markings through a left inverse of the region-to-edge boundary map.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and reports live in the `twistkh` crate.

#![no_std]

extern crate alloc;

pub mod complex;
pub mod diagram;
pub mod field;
pub mod homology;
pub mod linalg;
pub mod random;
pub mod roberts;
pub mod spectral;

pub use complex::{build_twisted_reduced, build_untwisted_reduced, verify_d_squared, ChainComplex, Generator};
pub use diagram::{Diagram, DiagramError, Marking, Resolution, Sign};
pub use field::{Field, FieldElement, FieldError};
pub use homology::{dims_equal, graded_dims, GradedDims, HomologyError};
pub use spectral::{e1_page, e3_page, SpectralError, SpectralPage};
