//! Exact symbolic arithmetic: half-integer Laurent polynomials in `y`,
//! motivic classes localized at `L - 1`, and truncated `q`-series.

mod laurent;
mod motivic;
mod series;

pub use laurent::HalfLaurent;
pub use motivic::{CurveTerm, MotivicClass, MotivicOp};
pub use series::SeriesY;
