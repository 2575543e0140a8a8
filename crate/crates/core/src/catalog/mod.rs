//! Inequality catalog: exponents, best known constants, diagonal and
//! repeated-index restrictions, ratio checks, witness forms, multiple summing
//! ratios and exponent scans.

mod constants;
mod exponents;
mod instance;
mod restriction;
mod scan;
mod summing;
mod witness;

pub use constants::{
    bh_constant_complex, bh_constant_real, complex_constant_bound, constants_table,
    real_constant_bound, ConstantsRow, COMPLEX_BOUND_EXPONENT, REAL_BOUND_EXPONENT,
};
pub use exponents::{bh_exponent, hl_dsp_exponent, hl_pp_exponent, lp_exponent};
pub use instance::{
    catalog_entries, check_instance, zalduendo_check, CatalogEntry, DimensionFactor,
    InequalityInstance, NormMethod, RatioReport, Restriction,
};
pub use restriction::{
    diagonal_restriction_sum, diagonal_restriction_terms, repeated_index_sum, repeated_index_terms,
};
pub use scan::{
    exponent_scan, scan_csv, Denominator, DiagonalWitnessFamily, ScanFamily, ScanSeries,
    BOUNDED_SLOPE,
};
pub use summing::{canonical_sequences, multiple_summing_ratio, Sequence, SummingReport};
pub use witness::{default_witness_sigmas, diagonal_witness};
