//! Hypersurface germs `{F = 0}` at the origin of `A^{n+1}` (coordinates
//! `x_1..x_n, y`), their point blowups and Gröbner smoothness certificates.

pub mod quadric;

pub use quadric::{certify_quadric, classify_quadric, rational_point, ProjQuadric, QuadricClass};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldError, FieldTower};
use crate::poly::{buchberger, IdealBasis, Monomial, MultiPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GermError {
    #[error("zero equation")]
    ZeroEquation,
    #[error("the origin does not lie on the hypersurface")]
    OriginNotOnGerm,
    #[error("lowest-degree part is a proper power; its exceptional divisor is non-reduced")]
    ProperPowerLowestPart,
    #[error("equation must have n+1 = {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("not a homogeneous quadric")]
    NotHomogeneousDegree2,
    #[error("chart {chart}: singular points outside the expected set (witness basis {witness})")]
    UnexpectedSingularity { chart: String, witness: String },
    #[error("chart {chart}: expected singular point is not singular")]
    ExpectedPointSmooth { chart: String },
    #[error("at most one expected singular point per chart is supported")]
    TooManyExpectedPoints,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `n` even, or `p` odd.
    A,
    /// `n` odd and `p = 2`.
    B,
}

impl Case {
    pub fn of(n: usize, p: u64) -> Case {
        if n.is_multiple_of(2) || p != 2 {
            Case::A
        } else {
            Case::B
        }
    }
}

/// How `d` was read when the constant term of the section vanished.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DReading {
    /// `d = m`, `e = 1`.
    Literal,
    /// `d` the p-part of `m`.
    PPart,
}

/// Shape data of `gamma_e y^{ed} + ... + gamma_2 y^{2d} + y^d + q + f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermMeta {
    pub p: u64,
    pub d: u32,
    pub e: u32,
    /// `gamma_2, ..., gamma_e`.
    pub gammas: Vec<Elem>,
    /// Coefficient of `x_1^2` in `q` (`n` odd only).
    pub beta: Option<Elem>,
    /// Coefficient of `x_1^3` (`n` odd, `p = 2`).
    pub cubic: Option<Elem>,
    pub case: Case,
    pub d_reading: DReading,
    /// `d` under the p-part reading, when it differs from `d`.
    pub d_ppart: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub n: usize,
    pub equation: MultiPoly,
    pub meta: Option<GermMeta>,
}

impl Germ {
    /// Rejects zero equations, equations not vanishing at the origin and
    /// lowest-degree parts that are proper powers.
    pub fn new(n: usize, equation: MultiPoly) -> Result<Germ, GermError> {
        let g = Self::unchecked(n, equation)?;
        if g.equation.is_zero() {
            return Err(GermError::ZeroEquation);
        }
        if !g.equation.constant_term().is_zero() {
            return Err(GermError::OriginNotOnGerm);
        }
        let (_, fd, _) = g.equation.lowest_degree_part()?;
        if is_proper_power(&fd) {
            return Err(GermError::ProperPowerLowestPart);
        }
        Ok(g)
    }

    /// Only checks the arity; for chart-level experiments.
    pub fn unchecked(n: usize, equation: MultiPoly) -> Result<Germ, GermError> {
        if equation.nvars() != n + 1 {
            return Err(GermError::ArityMismatch {
                expected: n + 1,
                found: equation.nvars(),
            });
        }
        Ok(Germ {
            n,
            equation,
            meta: None,
        })
    }

    pub fn field(&self) -> &FieldTower {
        self.equation.field()
    }

    pub fn y(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self) -> Result<u32, GermError> {
        self.equation.min_degree().ok_or(GermError::ZeroEquation)
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = MultiPoly::germ_names(self.n + 1);
        write!(f, "{}", self.equation.format_with(&names))
    }
}

/// Detects the proper powers we can certify cheaply: a p-th power (every
/// exponent divisible by `p`, the field being perfect) or a quadric that is
/// a square of a linear form.
fn is_proper_power(fd: &MultiPoly) -> bool {
    let f = fd.field();
    let p = f.characteristic();
    let n = fd.nvars();
    let all_p = fd
        .terms()
        .iter()
        .all(|(m, _)| (0..n).all(|i| (m.exp(i) as u64).is_multiple_of(p)));
    if all_p && fd.total_degree().unwrap_or(0) > 0 {
        return true;
    }
    if fd.total_degree() == Some(2) && p != 2 {
        return quadric::polar_matrix(fd).rank(f) == 1;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartLabel {
    /// The `x_{i+1}`-chart.
    X(usize),
    Y,
}

impl fmt::Display for ChartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartLabel::X(i) => write!(f, "x{}", i + 1),
            ChartLabel::Y => write!(f, "y"),
        }
    }
}

impl Serialize for ChartLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ChartLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "y" {
            return Ok(ChartLabel::Y);
        }
        s.strip_prefix('x')
            .and_then(|i| i.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .map(|i| ChartLabel::X(i - 1))
            .ok_or_else(|| serde::de::Error::custom(format!("bad chart label {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub label: ChartLabel,
    pub equation: MultiPoly,
    /// Index of the chart variable; the exceptional divisor is its zero set.
    pub exceptional_coord: usize,
    /// Whether the chart origin lies on the chart hypersurface.
    pub origin_on_chart: bool,
}

/// Equation of one standard chart: substitute `v -> v`, `w -> w * v` for
/// every other variable `w`, then divide by `v^d`.
pub fn chart_equation(f: &MultiPoly, v: usize, d: u32) -> Result<MultiPoly, PolyError> {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = m
                .degree()
                .checked_sub(d)
                .ok_or_else(|| PolyError::InexactDivision(m.exps(f.nvars()).to_vec()))?;
            let e: u16 = e.try_into().map_err(|_| PolyError::ExponentOverflow)?;
            Ok((m.with_exp(v, e), *c))
        })
        .collect::<Result<Vec<(Monomial, Elem)>, PolyError>>()?;
    Ok(MultiPoly::from_terms(f.field(), f.nvars(), terms))
}

/// Images of the chart substitution, for callers that want it explicitly.
pub fn chart_images(field: &FieldTower, nvars: usize, v: usize) -> Vec<MultiPoly> {
    let cv = MultiPoly::var(field, nvars, v);
    (0..nvars)
        .map(|i| {
            if i == v {
                cv.clone()
            } else {
                &MultiPoly::var(field, nvars, i) * &cv
            }
        })
        .collect()
}

/// The `n+1` standard charts `x_1, ..., x_n, y` of the blowup at the origin.
pub fn blowup_charts(g: &Germ) -> Result<Vec<Chart>, GermError> {
    let d = g.multiplicity()?;
    let nv = g.n + 1;
    (0..nv)
        .map(|v| {
            let equation = chart_equation(&g.equation, v, d)?;
            Ok(Chart {
                label: if v == g.n {
                    ChartLabel::Y
                } else {
                    ChartLabel::X(v)
                },
                origin_on_chart: equation.constant_term().is_zero(),
                equation,
                exceptional_coord: v,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisorKind {
    /// A hyperplane: `E = P^{n-1}`.
    ProjSpace,
    Quadric(QuadricClass),
    Hypersurface {
        degree: u32,
    },
}

/// `E = (f_d = 0)` in `P^n` with coordinates `x_1..x_n, y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalDivisor {
    pub degree: u32,
    pub form: MultiPoly,
    pub kind: DivisorKind,
}

pub fn exceptional_divisor(g: &Germ) -> Result<ExceptionalDivisor, GermError> {
    if g.equation.is_zero() {
        return Err(GermError::ZeroEquation);
    }
    let (degree, form, _) = g.equation.lowest_degree_part()?;
    let kind = match degree {
        1 => DivisorKind::ProjSpace,
        2 => DivisorKind::Quadric(classify_quadric(&form, g.n + 1)?),
        _ => DivisorKind::Hypersurface { degree },
    };
    Ok(ExceptionalDivisor { degree, form, kind })
}

/// Coordinates of a point of `E` (projective, in `x_1..x_n, y`) on a chart,
/// or `None` if the chart misses it.
pub fn point_on_chart(field: &FieldTower, proj: &[Elem], label: ChartLabel) -> Option<Vec<Elem>> {
    let v = match label {
        ChartLabel::X(i) => i,
        ChartLabel::Y => proj.len() - 1,
    };
    let inv = field.inv(proj[v])?;
    Some(
        proj.iter()
            .enumerate()
            .map(|(j, &c)| {
                if j == v {
                    Elem::ZERO
                } else {
                    field.mul(c, inv)
                }
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertScope {
    /// Singular points anywhere on the chart.
    Global,
    /// Singular points on the exceptional divisor of the chart. Away from it
    /// the blowup is an isomorphism, so this is the local statement.
    AlongExceptional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothnessVerdict {
    SmoothEverywhere,
    SingularExactlyAt(Vec<Vec<Elem>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessCertificate {
    pub chart: ChartLabel,
    pub scope: CertScope,
    pub verdict: SmoothnessVerdict,
    /// Hash of the reduced Gröbner basis of the singular-locus ideal.
    pub gb_hash: String,
}

/// Ideal of the singular locus: the equation and all partials, plus the
/// exceptional coordinate when scoped to the exceptional divisor.
pub fn singular_ideal(chart: &Chart, scope: CertScope) -> Vec<MultiPoly> {
    let eq = &chart.equation;
    let mut gens = vec![eq.clone()];
    gens.extend((0..eq.nvars()).map(|i| eq.partial_derivative(i)));
    if scope == CertScope::AlongExceptional {
        gens.push(MultiPoly::var(
            eq.field(),
            eq.nvars(),
            chart.exceptional_coord,
        ));
    }
    gens
}

/// Certifies that the singular locus of the chart (within `scope`) is
/// exactly `expected` (at most one point).
pub fn certify_chart_smoothness(
    chart: &Chart,
    expected: &[Vec<Elem>],
    scope: CertScope,
) -> Result<SmoothnessCertificate, GermError> {
    if expected.len() > 1 {
        return Err(GermError::TooManyExpectedPoints);
    }
    let ideal = singular_ideal(chart, scope);
    let gb = buchberger(&IdealBasis::new(ideal.clone()));
    let gb_hash = gb.fingerprint();
    let unit = gb.generators().len() == 1 && gb.generators()[0].is_constant();
    let label = chart.label.to_string();
    if unit {
        if !expected.is_empty() {
            return Err(GermError::ExpectedPointSmooth { chart: label });
        }
        return Ok(SmoothnessCertificate {
            chart: chart.label,
            scope,
            verdict: SmoothnessVerdict::SmoothEverywhere,
            gb_hash,
        });
    }
    let Some(point) = expected.first() else {
        return Err(GermError::UnexpectedSingularity {
            chart: label,
            witness: gb_hash,
        });
    };
    if ideal.iter().any(|g| !g.evaluate(point).is_zero()) {
        return Err(GermError::UnexpectedSingularity {
            chart: label,
            witness: gb_hash,
        });
    }
    if !quadric::only_zero_is(gb.generators(), point) {
        return Err(GermError::UnexpectedSingularity {
            chart: label,
            witness: gb_hash,
        });
    }
    Ok(SmoothnessCertificate {
        chart: chart.label,
        scope,
        verdict: SmoothnessVerdict::SingularExactlyAt(vec![point.clone()]),
        gb_hash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::poly;

    fn f2() -> FieldTower {
        make_field(2, 1).unwrap()
    }

    #[test]
    fn y_chart_of_quadric_germ_is_smooth() {
        // y^2 + x1 x2 + x3 x4, n = 4
        let f = f2();
        let eq = poly(
            &f,
            5,
            &[
                (&[0, 0, 0, 0, 2], 1),
                (&[1, 1, 0, 0, 0], 1),
                (&[0, 0, 1, 1, 0], 1),
            ],
        );
        let g = Germ::new(4, eq).unwrap();
        let charts = blowup_charts(&g).unwrap();
        let y = &charts[4];
        assert_eq!(
            y.equation,
            poly(
                &f,
                5,
                &[
                    (&[0, 0, 0, 0, 0], 1),
                    (&[1, 1, 0, 0, 0], 1),
                    (&[0, 0, 1, 1, 0], 1)
                ]
            )
        );
        assert!(!y.origin_on_chart);
        for c in &charts {
            let cert = certify_chart_smoothness(c, &[], CertScope::Global).unwrap();
            assert_eq!(cert.verdict, SmoothnessVerdict::SmoothEverywhere);
        }
        let e = exceptional_divisor(&g).unwrap();
        assert_eq!(e.kind, DivisorKind::Quadric(QuadricClass::Nonsingular));
    }

    #[test]
    fn y_chart_descends_exponent() {
        // y^4 + x1^2 + x2 x3 over F_2 (n = 3): y-chart y^2 + x1^2 + x2 x3
        let f = f2();
        let eq = poly(
            &f,
            4,
            &[
                (&[0, 0, 0, 4], 1),
                (&[2, 0, 0, 0], 1),
                (&[0, 1, 1, 0], 1),
                (&[3, 0, 0, 0], 1),
            ],
        );
        let g = Germ::new(3, eq).unwrap();
        let charts = blowup_charts(&g).unwrap();
        let expected = poly(
            &f,
            4,
            &[
                (&[0, 0, 0, 2], 1),
                (&[2, 0, 0, 0], 1),
                (&[0, 1, 1, 0], 1),
                (&[3, 0, 0, 1], 1),
            ],
        );
        assert_eq!(charts[3].equation, expected);
        let e = exceptional_divisor(&g).unwrap();
        let one = f.one();
        let z = Elem::ZERO;
        assert_eq!(
            e.kind,
            DivisorKind::Quadric(QuadricClass::ConeWithVertex(vec![z, z, z, one]))
        );
        let origin = vec![Elem::ZERO; 4];
        let cert =
            certify_chart_smoothness(&charts[3], std::slice::from_ref(&origin), CertScope::Global)
                .unwrap();
        assert_eq!(
            cert.verdict,
            SmoothnessVerdict::SingularExactlyAt(vec![origin])
        );
        let x1 = certify_chart_smoothness(&charts[0], &[], CertScope::AlongExceptional).unwrap();
        assert_eq!(x1.verdict, SmoothnessVerdict::SmoothEverywhere);
    }

    #[test]
    fn degenerate_square_chart_rule() {
        // F = x1^2 (n = 2); unchecked since x1^2 is a proper power.
        let f = make_field(3, 1).unwrap();
        let eq = poly(&f, 3, &[(&[2, 0, 0], 1)]);
        assert_eq!(
            Germ::new(2, eq.clone()),
            Err(GermError::ProperPowerLowestPart)
        );
        let g = Germ::unchecked(2, eq).unwrap();
        let charts = blowup_charts(&g).unwrap();
        assert_eq!(charts[0].equation, MultiPoly::one(&f, 3));
        assert_eq!(charts[1].equation, poly(&f, 3, &[(&[2, 0, 0], 1)]));
        assert_eq!(charts[2].equation, poly(&f, 3, &[(&[2, 0, 0], 1)]));
    }

    #[test]
    fn constructor_rejections() {
        let f = f2();
        assert_eq!(
            Germ::new(1, MultiPoly::zero(&f, 2)),
            Err(GermError::ZeroEquation)
        );
        assert_eq!(
            Germ::new(1, poly(&f, 2, &[(&[0, 0], 1), (&[1, 1], 1)])),
            Err(GermError::OriginNotOnGerm)
        );
        assert_eq!(
            Germ::new(1, poly(&f, 2, &[(&[2, 0], 1), (&[0, 2], 1)])),
            Err(GermError::ProperPowerLowestPart)
        );
    }

    #[test]
    fn smooth_unit_chart() {
        let f = f2();
        let chart = Chart {
            label: ChartLabel::Y,
            equation: poly(&f, 3, &[(&[0, 0, 0], 1), (&[1, 1, 0], 1)]),
            exceptional_coord: 2,
            origin_on_chart: false,
        };
        let cert = certify_chart_smoothness(&chart, &[], CertScope::Global).unwrap();
        assert_eq!(cert.verdict, SmoothnessVerdict::SmoothEverywhere);
    }
}
