//! Matching: detection, matching intervals and their endpoints, SFT
//! approximation, the algebraic obstruction and fiber scans.

mod approx;
mod interval;
mod obstruction;
mod report;
mod scan;

pub use approx::{approximation_candidates, sft_approximate, Approximation, Candidate};
pub use interval::{
    classify_endpoints, endpoints_by_extension, extension_endpoints, inequality_bounds,
    interval_from_prefixes, left_extension, matching_interval, matching_interval_inequalities,
    same_matching, AlphaBound, EndpointClass, EndpointPairs, ExtensionCase, IntervalMethod,
    MatchingInterval,
};
pub use obstruction::{is_multinacci, matching_obstruction, multinacci_poly, Obstruction};
pub use report::{detect_matching, difference_poly, matching_time, MatchingCase, MatchingReport};
pub use scan::{closures_disjoint, scan_fiber, FiberScan, ScanConfig};
