//! The blowup pipeline for normal-form germs, with every structural claim
//! certified as it is made.
//!
//! Case A (`n` even or `p` odd) descends `y^e -> y^{e-2}` on the `y`-chart.
//! Case B (`n` odd, `p = 2`, `d > 2`) runs `d/2` blowups keeping
//! `y^{d-2i} + q + gamma y^i x1^3 + y^i c + y^{2i} f_i`, recentres at
//! `(1, 0, ..., 0)`, and then repeatedly resolves germs of type `k`.
//! Every run ends by blowing up the vertex of the last quadric cone, unless
//! the last exceptional divisor is already a smooth quadric.

mod chain;
pub mod forms;
pub mod pattern;
mod pipeline;
pub mod simulate;

pub use chain::{chain_check, chain_diagnostics};
pub use forms::{eta_consistency, eta_initial, theta_pullback, ThetaForm};
pub use pattern::{match_type, TailShape, TypeMatch};
pub use pipeline::{resolve, resolve_case_a, resolve_case_b, verify_form_regularity};
pub use simulate::simulate_blowups;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::ClassifyError;
use crate::field::{Elem, FieldDescriptor, FieldError};
use crate::germ::{Case, ChartLabel, DivisorKind, GermError, QuadricClass, SmoothnessCertificate};
use crate::poly::{PolyError, PolyTerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("step {step}: claim failed: {claim} ({witness})")]
    StructuralClaimFailed {
        step: usize,
        claim: String,
        witness: String,
    },
    #[error("step {step}: chart equation is not of the expected type; residual {residual}")]
    TypePatternMismatch { step: usize, residual: String },
    #[error("dF/dx_n has no linear part")]
    DenominatorVanishes,
    #[error("the pipeline needs n >= 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("input is not a normal-form germ: {0}")]
    NotNormalForm(String),
    #[error("no extension of degree <= 6 supplies the scalars the pipeline needs")]
    NoExtensionFound,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Strict runs stop at the first failed claim; warn runs record it and go
/// on while the next germ can still be formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Strict,
    Warn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepRule {
    /// `y^e -> y^{e-2}` descent of case A.
    QuadricDescent,
    /// First stage of case B.
    EvenFirstStage,
    /// Germ of even type.
    EvenType,
    /// Germ of odd type.
    OddType,
    FinalVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentType {
    ProjSpace,
    NonsingQuadric,
    BlowupOfConeAtVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureKind {
    StructuralClaim,
    TypePattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub step: usize,
    pub kind: FailureKind,
    pub claim: String,
    pub witness: String,
}

impl Failure {
    pub fn to_error(&self) -> ResolveError {
        match self.kind {
            FailureKind::StructuralClaim => ResolveError::StructuralClaimFailed {
                step: self.step,
                claim: self.claim.clone(),
                witness: self.witness.clone(),
            },
            FailureKind::TypePattern => ResolveError::TypePatternMismatch {
                step: self.step,
                residual: self.witness.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartSummary {
    pub label: ChartLabel,
    pub equation_hash: String,
    pub num_terms: usize,
    pub origin_on_chart: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupStep {
    pub index: usize,
    pub rule: StepRule,
    /// Chart of the previous step holding this step's center (`None` for
    /// the first step, centred at the origin of the input).
    pub center_chart: Option<ChartLabel>,
    /// The center in that chart's coordinates.
    pub center: Vec<Elem>,
    pub coordinate_shift_applied: bool,
    /// `y -> lambda y` applied after the shift.
    pub y_scale: Option<Elem>,
    pub input_hash: String,
    pub multiplicity: u32,
    pub charts: Vec<ChartSummary>,
    pub certificates: Vec<SmoothnessCertificate>,
    pub predicted: DivisorKind,
    pub exceptional: DivisorKind,
    /// Predicted singular point of the blown-up variety, on `E`.
    pub next_singular: Option<Vec<Elem>>,
    pub germ_type_after: Option<u32>,
    pub shape_matched: Option<TailShape>,
    pub identity_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub index: usize,
    pub kind: Option<ComponentType>,
    /// Equation of `E` in `P^n` (coordinates `x_1..x_n, y`).
    pub form: Vec<PolyTerm>,
    pub witness: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub from: usize,
    pub to: usize,
    /// Tangent cone at the vertex of `E_from`, in the `n` coordinates of `E_from`.
    pub tangent_cone: Vec<PolyTerm>,
    pub class: Option<QuadricClass>,
    /// Whether the center lies on the proper transform of the exceptional
    /// divisor before `E_from`.
    pub center_on_earlier_transform: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormVerdict {
    RegularTypeTheta,
    PoleDetected { step: usize, order: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub step: usize,
    /// False when the step's `y`-chart misses `E` or the center is off the
    /// previous `y`-chart.
    pub replayed: bool,
    pub valuation: Option<u16>,
    /// Order of vanishing of `dF/dx_n` along `E` on the `y`-chart.
    pub denominator_order: u16,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub field: FieldDescriptor,
    pub n: usize,
    pub d: u32,
    pub case: Case,
    pub mode: Mode,
    pub input_hash: String,
    pub steps: Vec<BlowupStep>,
    pub total_blowups: usize,
    pub simulated_blowups: u32,
    pub components: Vec<Component>,
    pub chain: Vec<ChainLink>,
    pub component_types: Vec<Option<ComponentType>>,
    pub form_verdict: Option<FormVerdict>,
    pub form_records: Vec<FormRecord>,
    pub ch0_chain_check: bool,
    pub failures: Vec<Failure>,
    pub completed: bool,
}

impl ResolutionReport {
    /// All certificates passed, the chain is sound and the form is regular.
    pub fn is_success(&self) -> bool {
        self.completed
            && self.failures.is_empty()
            && self.ch0_chain_check
            && self.form_verdict == Some(FormVerdict::RegularTypeTheta)
            && self.total_blowups as u32 == self.simulated_blowups
    }
}
