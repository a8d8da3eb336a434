//! Graded quadratic monomial and gentle algebras.
//!
//! The crate covers the quadratic dual, idempotent cuts and corner algebras,
//! partial cofibrant dg resolutions with an exact check of their contracting
//! homotopy, smoothness and properness, the marked surface of a gentle
//! algebra, and existence criteria for exceptional sequences and silting
//! objects.

mod error;
mod graph;

pub mod classify;
pub mod constructions;
pub mod dg;
pub mod document;
#[cfg(any(test, feature = "test-support"))]
pub mod gen;
pub mod homology;
pub mod iso;
pub mod quiver;
pub mod surface;

pub use classify::{
    an_algebra, an_arrow_names, detect_an_shape, exceptional_sequence_acyclic, g11_equivalences,
    has_full_exceptional_sequence, silting_existence, AnShape, Existence, G11Report, Rule, Verdict,
};
pub use constructions::{
    check_iterated_cut, corner_algebra, corner_via_dual, idempotent_cut, quadratic_dual,
    IteratedCut, WordAlgebra,
};
pub use dg::{
    build_aj, check_differential, check_homotopy, check_phi, is_aj_finite, DgQuiverAlgebra,
    DifferentialCheck, FormalCombination, HomotopyReport,
};
pub use document::{
    parse_algebra, parse_document, serialize_algebra, serialize_document, Document,
};
pub use error::{Error, Result};
pub use homology::{
    ext_table, is_presilting_projective, is_presmc_simples, is_proper, is_smooth, CycleCheck,
    ExtTable, PreSmcCheck, PresiltingCheck,
};
pub use iso::{find_iso, graded_iso, GradedIso};
pub use quiver::{
    enumerate_paths, validate_gentle, Arrow, ArrowId, GentleCondition, GentleReport, GradedQuiver,
    Idempotent, Path, PathMode, QuadraticMonomialAlgebra, VertexId, Violation, Witness,
};
pub use surface::{
    assemble_ribbon, cut_invariants, surface_invariants, two_out_of_three, RibbonModel,
    SurfaceInvariants, TwoOutOfThree,
};
