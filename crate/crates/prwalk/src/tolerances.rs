//! Build-time numerical constants and validation tolerances.
//!
//! Tolerances are sized from the arithmetic that produces the quantity,
//! not tuned to make tests pass.

/// Largest n for which probability tables use exact big-integer walk counts.
/// Counts stay below 2^(n+1), so their f64 conversion is exact to one
/// rounding at n = 300 with an order of magnitude of headroom before f64
/// overflow; beyond this the log-factorial path takes over.
pub const EXACT_COUNT_MAX_N: u32 = 300;

/// Cap on exhaustive 2^n path enumeration.
pub const ENUMERATION_MAX_N: u32 = 24;

/// Cap on exact-rational path enumeration (big-rational products are slow).
pub const ENUMERATION_RATIONAL_MAX_N: u32 = 16;

/// Entries with log-probability below this floor are dropped from tables
/// built on the log-factorial path. exp(-80) ~ 1.8e-35; with at most ~1e8
/// support cells the discarded mass stays below 1e-26, far inside
/// [`MASS_TOL_LOG`]. Exact-count tables keep the full support.
pub const TABLE_LN_FLOOR: f64 = -80.0;

/// Total-mass tolerance for linear-mode tables (n <= 300): ~100x the
/// double-precision accumulation error of summing ~1e5 nonnegative terms.
pub const MASS_TOL_LINEAR: f64 = 1e-12;

/// Total-mass tolerance for log-mode tables (n up to 1e4), where each entry
/// passes through exp() and the support holds ~1e7 cells.
pub const MASS_TOL_LOG: f64 = 1e-9;

/// Elementwise agreement between the closed form, the recursion, and
/// exhaustive enumeration at n <= 12.
pub const ELEMENTWISE_TOL: f64 = 1e-12;

/// Relative tolerance for table-summed means against the closed-form
/// moment expressions.
pub const MOMENT_REL_TOL: f64 = 1e-10;

/// Relative eigenvalue-gap threshold below which the generating-function
/// power formula switches to its repeated-eigenvalue limit.
pub const NU_DEGENERATE_REL: f64 = 1e-12;

/// Round-trip tolerance for the thermodynamic parameterization.
pub const THERMO_ROUNDTRIP_TOL: f64 = 1e-12;

/// Tolerance for the odd-reversal-probability identities at n <= 12.
pub const DELTA_IDENTITY_TOL: f64 = 1e-11;

/// Exact moment-inversion round trip tolerance.
pub const ESTIMATE_ROUNDTRIP_TOL: f64 = 1e-14;
