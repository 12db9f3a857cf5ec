//! Tropical plane curves dual to marked Newton subdivisions.

mod census;
mod curve;
mod subdivision;

pub use census::{face_census, CaseId, FaceCensus, FaceType};
pub use curve::{
    check_balanced, curve_from_subdivision, curve_genus, dual_area, dual_cells_from_graph,
    vertex_multiplicity, BalancingViolation, CurveEdge, CurveKey, CurveVertex, Marking,
    TropicalCurve,
};
pub use subdivision::{
    cell_doubled_area, cell_locate, is_parallelogram, normalize_cell, Affine, Cell,
    NewtonSubdivision,
};
