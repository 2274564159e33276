//! Critical points of a local section `s = g tau^m` of the branch divisor:
//! nondegeneracy, the associated quadric and admissibility, plus the
//! reduction of `y^m = g` to the normal form consumed by the resolver.

pub mod frame;
mod normal;

pub use frame::{linear_change, standard_frame, standard_quadric, Frame};
pub use normal::{normal_form, read_shape, validate_normal_form, NormalForm};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldError, FieldTower};
use crate::germ::quadric::{classify_quadric, normalize_point, polar_matrix, ProjQuadric};
use crate::germ::{GermError, QuadricClass};
use crate::poly::{MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("the origin is not a critical point")]
    NotCritical,
    #[error("expansion order {order} is too short; at least {needed} is needed")]
    TruncationTooShort { order: u32, needed: u32 },
    #[error("the associated quadric is only defined for n odd, p = 2 and (4 | m or m > 2 with s(0) = 0)")]
    OutsideWellDefinedRegime,
    #[error("not admissible ({}): {reason}", .case.map_or("case undetermined".to_string(), |c| format!("case {c}")))]
    NotAdmissible { case: Option<u8>, reason: String },
    #[error("beta = 0 with n odd, p = 2, d > 2 on an input classified admissible")]
    BetaVanishes,
    #[error("no extension of degree <= 6 supplies the roots the normal form needs")]
    NoExtensionFound,
    #[error("equation is not in normal-form shape: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `s = g tau^m` near a point, `g` in `x_1..x_n`, exact through degree
/// `order` (`u32::MAX` for an exact polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSection {
    pub n: usize,
    pub g: MultiPoly,
    pub m: u32,
    pub order: u32,
}

impl LocalSection {
    pub fn new(g: MultiPoly, m: u32, order: u32) -> Result<Self, ClassifyError> {
        let p = g.field().characteristic();
        if m < 2 || !(m as u64).is_multiple_of(p) {
            return Err(ClassifyError::InvalidSection(format!(
                "covering degree {m} must be divisible by p = {p}"
            )));
        }
        if g.nvars() == 0 {
            return Err(ClassifyError::InvalidSection("no variables".into()));
        }
        Ok(LocalSection {
            n: g.nvars(),
            g,
            m,
            order,
        })
    }

    pub fn exact(g: MultiPoly, m: u32) -> Result<Self, ClassifyError> {
        Self::new(g, m, u32::MAX)
    }

    pub fn field(&self) -> &FieldTower {
        self.g.field()
    }

    pub fn p(&self) -> u64 {
        self.field().characteristic()
    }

    pub fn alpha(&self) -> Elem {
        self.g.constant_term()
    }

    /// The cover `y^m - g` in `x_1..x_n, y`.
    pub fn cover_equation(&self) -> MultiPoly {
        let f = self.field();
        let g = self.g.extend_vars(self.n + 1).expect("variable budget");
        &MultiPoly::var(f, self.n + 1, self.n).pow(self.m) - &g
    }

    /// `n` odd and `p = 2`: the quadratic part is always degenerate.
    pub fn forced_degenerate(&self) -> bool {
        self.n % 2 == 1 && self.p() == 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Taxonomy {
    Nondegenerate,
    AlmostNondegenerate,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalVerdict {
    pub is_critical: bool,
    pub is_singular_point: bool,
    pub taxonomy: Taxonomy,
    pub admissible: bool,
    /// Which admissibility case the parameters select (1 to 5).
    pub case: u8,
    pub t_quadric: Option<ProjQuadric>,
    /// Radical vector of the polar form (`n` odd, `p = 2`), normalized.
    pub radical: Option<Vec<Elem>>,
    /// `Q(r)` and `g_3(r)` at that radical vector.
    pub beta: Option<Elem>,
    pub cubic: Option<Elem>,
}

pub fn is_critical_at_origin(s: &LocalSection) -> bool {
    s.g.homogeneous_part(1).is_zero()
}

/// Case number selected by `(n, p, m, alpha)`.
pub fn admissibility_case(n: usize, p: u64, m: u32, alpha_zero: bool) -> u8 {
    if n.is_multiple_of(2) || p != 2 {
        1
    } else if m == 2 {
        2
    } else if !m.is_multiple_of(4) {
        if alpha_zero {
            4
        } else {
            3
        }
    } else {
        5
    }
}

/// The quadric of `g_2` in `P^{n-1}`; the zero form counts as rank 0.
fn quadric_of(g2: &MultiPoly, n: usize) -> Result<ProjQuadric, ClassifyError> {
    if g2.is_zero() {
        return Ok(ProjQuadric {
            n_coords: n,
            quad: g2.clone(),
            classification: QuadricClass::Degenerate {
                polar_rank: 0,
                singular_dim: n - 1,
            },
        });
    }
    Ok(ProjQuadric::new(g2)?)
}

pub fn classify_critical(s: &LocalSection) -> Result<CriticalVerdict, ClassifyError> {
    if !is_critical_at_origin(s) {
        return Err(ClassifyError::NotCritical);
    }
    let needed = if s.forced_degenerate() { 4 } else { 3 };
    if s.order < needed {
        return Err(ClassifyError::TruncationTooShort {
            order: s.order,
            needed,
        });
    }
    let f = s.field();
    let n = s.n;
    let alpha_zero = s.alpha().is_zero();
    let case = admissibility_case(n, s.p(), s.m, alpha_zero);
    let g2 = s.g.homogeneous_part(2);
    let polar = polar_matrix(&g2);

    let (taxonomy, radical, beta, cubic) = if !s.forced_degenerate() {
        let t = if polar.rank(f) == n {
            Taxonomy::Nondegenerate
        } else {
            Taxonomy::Degenerate
        };
        (t, None, None, None)
    } else {
        let ker = polar.kernel(f);
        if ker.len() != 1 {
            (Taxonomy::Degenerate, None, None, None)
        } else {
            let r = normalize_point(f, &ker[0]);
            let beta = g2.evaluate(&r);
            let cubic = s.g.homogeneous_part(3).evaluate(&r);
            let t = if cubic.is_zero() {
                Taxonomy::Degenerate
            } else {
                Taxonomy::AlmostNondegenerate
            };
            (t, Some(r), Some(beta), Some(cubic))
        }
    };

    let t_quadric = if matches!(case, 4 | 5) {
        Some(quadric_of(&g2, n)?)
    } else {
        None
    };
    let admissible = match case {
        1 => taxonomy == Taxonomy::Nondegenerate,
        2 | 3 => taxonomy == Taxonomy::AlmostNondegenerate,
        _ => {
            taxonomy == Taxonomy::AlmostNondegenerate
                && t_quadric.as_ref().is_some_and(ProjQuadric::is_nonsingular)
        }
    };
    Ok(CriticalVerdict {
        is_critical: true,
        is_singular_point: alpha_zero,
        taxonomy,
        admissible,
        case,
        t_quadric,
        radical,
        beta,
        cubic,
    })
}

/// The quadric `T(s, q)` where it does not depend on the generator `tau`.
pub fn associated_quadric(s: &LocalSection) -> Result<ProjQuadric, ClassifyError> {
    let in_regime =
        s.forced_degenerate() && (s.m.is_multiple_of(4) || (s.m > 2 && s.alpha().is_zero()));
    if !in_regime {
        return Err(ClassifyError::OutsideWellDefinedRegime);
    }
    if s.order < 2 {
        return Err(ClassifyError::TruncationTooShort {
            order: s.order,
            needed: 2,
        });
    }
    quadric_of(&s.g.homogeneous_part(2), s.n)
}

/// Convenience: class of the associated quadric, if defined.
pub fn associated_class(s: &LocalSection) -> Option<QuadricClass> {
    associated_quadric(s).ok().map(|q| q.classification)
}

/// Classification of `g_2` as an affine quadratic form, independent of the
/// regime (used by reports).
pub fn quadratic_part_class(s: &LocalSection) -> Result<QuadricClass, ClassifyError> {
    let g2 = s.g.homogeneous_part(2);
    if g2.is_zero() {
        return Ok(quadric_of(&g2, s.n)?.classification);
    }
    Ok(classify_quadric(&g2, s.n)?)
}
