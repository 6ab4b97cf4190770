//! Classification of the four fixed points `(N,N)`, `(N,S)`, `(S,N)`, `(S,S)`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{ProductPoint, Sign};
use crate::spectral::{
    char_poly_coeffs, classify_block_structure, delta_sign, find_regular_combination,
    hessian_operators, quartic_eigenvalues, BlockType, DeltaSign,
};
use crate::system::{momentum_map, SystemParams};

/// One of the four pole pairs; the label fixes the chart signs `(e₁,e₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PoleLabel {
    NN,
    NS,
    SN,
    SS,
}

impl PoleLabel {
    pub const ALL: [PoleLabel; 4] = [PoleLabel::NN, PoleLabel::NS, PoleLabel::SN, PoleLabel::SS];

    pub fn signs(self) -> (Sign, Sign) {
        match self {
            PoleLabel::NN => (Sign::Plus, Sign::Plus),
            PoleLabel::NS => (Sign::Plus, Sign::Minus),
            PoleLabel::SN => (Sign::Minus, Sign::Plus),
            PoleLabel::SS => (Sign::Minus, Sign::Minus),
        }
    }

    pub fn from_signs(e1: Sign, e2: Sign) -> Self {
        match (e1, e2) {
            (Sign::Plus, Sign::Plus) => PoleLabel::NN,
            (Sign::Plus, Sign::Minus) => PoleLabel::NS,
            (Sign::Minus, Sign::Plus) => PoleLabel::SN,
            (Sign::Minus, Sign::Minus) => PoleLabel::SS,
        }
    }

    pub fn point(self) -> ProductPoint {
        let (e1, e2) = self.signs();
        ProductPoint::pole(e1, e2)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PoleLabel::NN => "NN",
            PoleLabel::NS => "NS",
            PoleLabel::SN => "SN",
            PoleLabel::SS => "SS",
        }
    }
}

impl fmt::Display for PoleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification of one fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub label: PoleLabel,
    pub j_value: f64,
    pub h_value: f64,
    pub discriminant: f64,
    /// Spectrum of `A_H = ω⁻¹d²H`.
    #[serde(with = "complex_array")]
    pub eigenvalues: [Complex64; 4],
    pub block_type: BlockType,
    /// Set when no element of the pencil `αA_J + βA_H` is regular.
    pub degenerate: bool,
    /// Pencil coefficients used when `A_H` itself was not regular.
    pub combination: Option<(f64, f64)>,
}

/// Classifies one fixed point.
///
/// The sign of `Δ` decides directly when it is clear of the zero band.
/// Inside the band, or when `A_H` has a repeated eigenvalue, the type is
/// taken from a regular element of the pencil; if none exists the point is
/// flagged degenerate.
pub fn classify_fixed_point(label: PoleLabel, params: &SystemParams) -> FixedPointReport {
    let (e1, e2) = label.signs();
    let pair = hessian_operators(e1, e2, params);
    let q = char_poly_coeffs(&pair);
    let delta = q.discriminant();
    let eigenvalues = quartic_eigenvalues(&q);
    let value = momentum_map(&label.point(), params);

    let direct = match delta_sign(delta, q.b) {
        DeltaSign::Negative => Some(BlockType::FocusFocus),
        DeltaSign::Positive => {
            Some(classify_block_structure(&eigenvalues)).filter(|t| *t != BlockType::Indeterminate)
        }
        DeltaSign::Zero => None,
    };

    let (block_type, degenerate, combination) = match direct {
        Some(t) => (t, false, None),
        None => match find_regular_combination(&pair) {
            Some(rc) => (rc.block_type, false, Some((rc.alpha, rc.beta))),
            None => (BlockType::Indeterminate, true, None),
        },
    };

    FixedPointReport {
        label,
        j_value: value.j,
        h_value: value.h,
        discriminant: delta,
        eigenvalues,
        block_type,
        degenerate,
        combination,
    }
}

/// Reports for `NN, NS, SN, SS`, in that order.
pub fn classify_fixed_points(params: &SystemParams) -> [FixedPointReport; 4] {
    PoleLabel::ALL.map(|label| classify_fixed_point(label, params))
}

/// Number of focus-focus points among `(N,S)` and `(S,N)`, with a flag for
/// any degenerate fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FfCount {
    pub count: u8,
    pub degenerate: bool,
}

pub fn ff_count_from_reports(reports: &[FixedPointReport; 4]) -> FfCount {
    let count = reports
        .iter()
        .filter(|r| matches!(r.label, PoleLabel::NS | PoleLabel::SN))
        .filter(|r| r.block_type == BlockType::FocusFocus)
        .count() as u8;
    FfCount {
        count,
        degenerate: reports.iter().any(|r| r.degenerate),
    }
}

pub fn ff_count(params: &SystemParams) -> FfCount {
    ff_count_from_reports(&classify_fixed_points(params))
}

mod complex_array {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64; 4], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Complex64; 4], D::Error> {
        let pairs = <[[f64; 2]; 4]>::deserialize(d)?;
        Ok(pairs.map(|[re, im]| Complex64::new(re, im)))
    }
}
