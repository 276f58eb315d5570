//! Tate resolutions: windows, region and corner complexes, the Beilinson
//! window algorithms, the functor `U`, and cohomology tables.

pub mod beilinson;
pub mod bw;
pub mod detect;
pub mod positivity;
pub mod regions;
pub mod table;
pub mod window;

pub use beilinson::{apply_u, fiber_matrix, BeilinsonComplex};
pub use bw::{cohomology_table_bw, corner_from_bw, lower_quadrant_extension, tate_window_bw, CornerPiece};
pub use detect::{
    detect_bundle, detect_bundle_table, detect_split, in_multigraded_regularity, line_bundle_poly, line_bundle_table,
    regularity_report, RegularityReport, SplitOutcome,
};
pub use positivity::{check_sufficiently_positive, cycles_p, sufficiently_positive, truncation_vanishes, PositivityReport};
pub use regions::{amplitude, beilinson_window, corner, pushforward_strand, region, RegionSpec};
pub use table::{format_poly, CohomologyTable, HPoly};
pub use window::{tate_window_complex, tate_window_module, TateWindow, WindowOptions};
