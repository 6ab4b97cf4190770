//! Fixed-point, rank-1 and parameter-space analysis for the integrable family
//! `J = R₁z₁ + R₂z₂`, `H = t₁z₁ + t₂z₂ + t₃(x₁x₂ + y₁y₂) + t₄z₁z₂` on S²×S².
//!
//! ```
//! use semitoric_core::{classify_fixed_points, BlockType, SystemParams};
//!
//! let reports = classify_fixed_points(&SystemParams::reference());
//! assert_eq!(reports[1].block_type, BlockType::FocusFocus);
//! ```

// `!(x < y)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod error;
pub mod geometry;
pub mod rank0;
pub mod rank1;
pub mod roots;
pub mod spectral;
pub mod system;

pub use error::{Error, Result};
pub use geometry::{ChartPoint, CylPoint, Interval, ProductPoint, Sign};
pub use rank0::{
    classify_fixed_point, classify_fixed_points, ff_count, FfCount, FixedPointReport, PoleLabel,
};
pub use rank1::{
    a_eval, b_max_over_domain, b_value, classify_rank1, critical_zeta, rank1_points, reduced_h,
    AValues, Branch, Rank1Kind, Rank1Point, ReducedContext, ScanOptions,
};
pub use spectral::{
    char_poly_coeffs, discriminant, discriminant_factors, hessian_operators, quartic_eigenvalues,
    BlockType, HessianPair, QuarticCoeffs,
};
pub use system::{momentum_map, s_to_t, Couplings, MomentumValue, SWeights, SystemParams};
