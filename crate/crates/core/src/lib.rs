//! Marked polytopes of two-generator one-relator presentations.
//!
//! A presentation `<x, y | r>` determines a marked lattice polygon `M` in
//! `H_1(G; R) = R^2`. It is computed here in two independent ways: from the
//! lattice walk traced by the relator, and from the Fox derivatives of the
//! relator. From `M` the crate derives the BNS invariant (a set of open arcs on
//! the character circle), thicknesses, splitting complexities and explicit HNN
//! splittings over free groups.
//!
//! All arithmetic is exact integer arithmetic.

pub mod bns;
pub mod check;
pub mod geometry;
pub mod groupring;
pub mod pipeline;
pub mod splitting;
pub mod words;

pub use bns::{
    exists_non_sigma, fg_kernel_certificate, in_sigma, membership, sigma_arcs, Membership, NonSigma, SigmaReport,
    SigmaSet,
};
pub use geometry::{Arc, ArcSet, Direction, GeometryError, MarkedPolytope, Point, Vertex};
pub use groupring::{fox_derivative, FreeRingElement, LatticeMultiset};
pub use pipeline::{
    analyze, compute, marked_polytope, simple_form, Ambient, Classification, FoxRoute, PipelineError, PolytopeResult,
    Presentation, PresentationInfo, SimpleForm,
};
pub use splitting::{hnn_splitting, splitting_complexity, width_seminorm_table, ComplexityReport, SplittingData};
pub use words::{AbelianImage, Generator, GeneratorNames, Letter, Word, WordError};
