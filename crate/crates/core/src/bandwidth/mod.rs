//! Grid surrogates of timed languages and empirical bandwidth curves.

mod count;
mod curve;
mod enumerate;
mod system;

pub use count::{count_point_signatures, count_signatures, log2_big};
pub use curve::{
    bandwidth_curve, capacity_lattices, estimate_capacity, fit_class, symbolic_capacity, symbolic_entropy,
    BandwidthCurve, CurveRow, Estimate, FitError, FitReport, Model,
};
pub use enumerate::{enumerate_raw, enumerate_words, raw_to_word, EnumError, Limits, RawWord};
pub use system::{Config, GridError, GridSystem, Step};
