use crate::classify::{read_shape, standard_quadric, validate_normal_form};
use crate::field::{extensions, Elem, FieldEmbedding, FieldError, FieldTower};
use crate::germ::{
    blowup_charts, certify_chart_smoothness, chart_equation, classify_quadric, exceptional_divisor,
    point_on_chart, rational_point, Case, CertScope, Chart, ChartLabel, DivisorKind, Germ,
    GermError, GermMeta, QuadricClass,
};
use crate::poly::{Monomial, MonomialType, MultiPoly, PolyError};

use super::chain::chain_check;
use super::forms::{eta_initial, theta_pullback, ThetaForm};
use super::pattern::{match_type, TypeMatch};
use super::simulate::simulate_blowups;
use super::{
    BlowupStep, ChainLink, ChartSummary, Component, ComponentType, Failure, FailureKind,
    FormRecord, FormVerdict, StepRule, Mode, ResolutionReport, ResolveError,
};

/// Extensions tried when a scaling root is missing.
const MAX_EXTENSION: usize = 6;

enum Halt {
    /// A failure was recorded and the run cannot (strict) or need not go on.
    Stop,
    NeedRoot,
    Error(ResolveError),
}

impl<E: Into<ResolveError>> From<E> for Halt {
    fn from(e: E) -> Self {
        Halt::Error(e.into())
    }
}

type Flow<T> = Result<T, Halt>;

struct Prediction {
    kind: DivisorKind,
    next: Option<Vec<Elem>>,
}

fn cone(v: Vec<Elem>) -> DivisorKind {
    DivisorKind::Quadric(QuadricClass::ConeWithVertex(v))
}

/// The germ about to be blown up, centred at the origin, with the
/// bookkeeping of how its center was reached.
struct Cursor {
    eq: MultiPoly,
    /// Hyperplane of the previous exceptional divisor, in these coordinates.
    earlier: Option<MultiPoly>,
    center_chart: Option<ChartLabel>,
    center: Vec<Elem>,
    y_scale: Option<Elem>,
}

impl Cursor {
    fn start(eq: MultiPoly, n: usize) -> Self {
        Cursor {
            eq,
            earlier: None,
            center_chart: None,
            center: vec![Elem::ZERO; n + 1],
            y_scale: None,
        }
    }
}

struct Run {
    field: FieldTower,
    n: usize,
    mode: Mode,
    steps: Vec<BlowupStep>,
    components: Vec<crate::resolve::Component>,
    chain: Vec<ChainLink>,
    failures: Vec<Failure>,
}

fn names(nv: usize) -> Vec<String> {
    MultiPoly::germ_names(nv)
}

fn y_pow(f: &FieldTower, nv: usize, e: u32) -> MultiPoly {
    MultiPoly::monomial(f, nv, Monomial::var(nv - 1, e as u16), Elem::ONE)
}

fn y_point(n: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n + 1];
    v[n] = Elem::ONE;
    v
}

/// `(1 : 0 : ... : 0 : 1)`, the vertex of `y^2 + x1^2 + ...`.
fn x1_y_point(n: usize) -> Vec<Elem> {
    let mut v = y_point(n);
    v[0] = Elem::ONE;
    v
}

/// `(1, 0, ..., 0)` on the `y`-chart.
fn x1_unit(n: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n + 1];
    v[0] = Elem::ONE;
    v
}

fn shift_images(f: &FieldTower, nv: usize, center: &[Elem]) -> Vec<MultiPoly> {
    (0..nv)
        .map(|i| &MultiPoly::var(f, nv, i) + &MultiPoly::constant(f, nv, center[i]))
        .collect()
}

fn scale_images(f: &FieldTower, nv: usize, lambda: Elem) -> Vec<MultiPoly> {
    (0..nv)
        .map(|i| {
            let v = MultiPoly::var(f, nv, i);
            if i == nv - 1 {
                v.scale(lambda)
            } else {
                v
            }
        })
        .collect()
}

/// Sets variable `v` to zero and renumbers the rest into `nv - 1` variables.
fn drop_var(p: &MultiPoly, v: usize) -> Result<MultiPoly, PolyError> {
    let f = p.field();
    let nv = p.nvars();
    let images: Vec<MultiPoly> = (0..nv)
        .map(|i| match i.cmp(&v) {
            std::cmp::Ordering::Less => MultiPoly::var(f, nv - 1, i),
            std::cmp::Ordering::Equal => MultiPoly::zero(f, nv - 1),
            std::cmp::Ordering::Greater => MultiPoly::var(f, nv - 1, i - 1),
        })
        .collect();
    p.substitute(&images)
}

fn chart_of(charts: &[Chart], label: ChartLabel) -> &Chart {
    charts
        .iter()
        .find(|c| c.label == label)
        .expect("every label has a chart")
}

impl Run {
    fn new(field: &FieldTower, n: usize, mode: Mode) -> Self {
        Run {
            field: field.clone(),
            n,
            mode,
            steps: Vec::new(),
            components: Vec::new(),
            chain: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn fmt(&self, p: &MultiPoly) -> String {
        p.format_with(&names(self.n + 1))
    }

    fn record(&mut self, step: usize, kind: FailureKind, claim: String, witness: String) {
        self.failures.push(Failure {
            step,
            kind,
            claim,
            witness,
        });
    }

    fn fail(&mut self, step: usize, claim: String, witness: String) -> Flow<()> {
        self.record(step, FailureKind::StructuralClaim, claim, witness);
        match self.mode {
            Mode::Strict => Err(Halt::Stop),
            Mode::Warn => Ok(()),
        }
    }

    fn blow(&mut self, cur: &Cursor, tag: StepRule, pred: Prediction) -> Flow<Vec<Chart>> {
        let idx = self.steps.len() + 1;
        let c0 = cur.eq.constant_term();
        if !c0.is_zero() {
            self.record(
                idx,
                FailureKind::StructuralClaim,
                "center lies on the hypersurface".into(),
                format!("constant term {}", self.field.format(c0)),
            );
            return Err(Halt::Stop);
        }
        let germ = Germ::unchecked(self.n, cur.eq.clone())?;
        let multiplicity = germ.multiplicity()?;
        let charts = blowup_charts(&germ)?;
        let e = exceptional_divisor(&germ)?;
        if e.kind != pred.kind {
            self.fail(
                idx,
                format!("exceptional divisor is {:?}", pred.kind),
                format!("{:?}", e.kind),
            )?;
        }
        let mut certificates = Vec::with_capacity(charts.len());
        for ch in &charts {
            let expected: Vec<Vec<Elem>> = pred
                .next
                .as_ref()
                .and_then(|p| point_on_chart(&self.field, p, ch.label))
                .into_iter()
                .collect();
            match certify_chart_smoothness(ch, &expected, CertScope::AlongExceptional) {
                Ok(c) => certificates.push(c),
                Err(GermError::UnexpectedSingularity { witness, .. }) => self.fail(
                    idx,
                    format!(
                        "chart {} is singular along E only at {:?}",
                        ch.label, expected
                    ),
                    format!("singular-locus basis {witness}"),
                )?,
                Err(GermError::ExpectedPointSmooth { .. }) => self.fail(
                    idx,
                    format!("chart {} is singular at {:?}", ch.label, expected),
                    "chart is smooth along E".into(),
                )?,
                Err(err) => return Err(err.into()),
            }
        }
        let kind = match &e.kind {
            DivisorKind::ProjSpace => Some(ComponentType::ProjSpace),
            DivisorKind::Quadric(QuadricClass::Nonsingular) => Some(ComponentType::NonsingQuadric),
            DivisorKind::Quadric(QuadricClass::ConeWithVertex(_)) => {
                Some(ComponentType::BlowupOfConeAtVertex)
            }
            _ => None,
        };
        let witness = match &e.kind {
            DivisorKind::Quadric(QuadricClass::ConeWithVertex(v)) => Some(v.clone()),
            _ => rational_point(&e.form),
        };
        self.steps.push(BlowupStep {
            index: idx,
            rule: tag,
            center_chart: cur.center_chart,
            center: cur.center.clone(),
            coordinate_shift_applied: cur.center.iter().any(|c| !c.is_zero()),
            y_scale: cur.y_scale,
            input_hash: cur.eq.fingerprint(),
            multiplicity,
            charts: charts
                .iter()
                .map(|c| ChartSummary {
                    label: c.label,
                    equation_hash: c.equation.fingerprint(),
                    num_terms: c.equation.num_terms(),
                    origin_on_chart: c.origin_on_chart,
                })
                .collect(),
            certificates,
            predicted: pred.kind,
            exceptional: e.kind,
            next_singular: pred.next,
            germ_type_after: None,
            shape_matched: None,
            identity_checked: false,
        });
        self.components.push(Component {
            index: idx,
            kind,
            form: e.form.to_json(),
            witness,
        });
        Ok(charts)
    }

    /// Moves to the next center (given in chart coordinates) and records
    /// how the last two exceptional divisors meet.
    fn advance(
        &mut self,
        charts: &[Chart],
        cur: &Cursor,
        label: ChartLabel,
        center: Vec<Elem>,
    ) -> Flow<Cursor> {
        let idx = self.steps.len();
        let f = self.field.clone();
        let nv = self.n + 1;
        let chart = chart_of(charts, label);
        let eq = chart.equation.substitute(&shift_images(&f, nv, &center))?;
        let exc = chart.exceptional_coord;
        let on_e = drop_var(&eq, exc)?;
        let tangent = if on_e.is_zero() {
            on_e
        } else {
            on_e.lowest_degree_part()?.1
        };
        let class = if tangent.total_degree() == Some(2) {
            classify_quadric(&tangent, self.n).ok()
        } else {
            None
        };
        let center_on_earlier_transform = match &cur.earlier {
            Some(h) => chart_equation(h, exc, 1)
                .map(|t| t.evaluate(&center).is_zero())
                .unwrap_or(false),
            None => false,
        };
        self.chain.push(ChainLink {
            from: idx,
            to: idx + 1,
            tangent_cone: tangent.to_json(),
            class,
            center_on_earlier_transform,
        });
        Ok(Cursor {
            eq,
            earlier: Some(MultiPoly::var(&f, nv, exc)),
            center_chart: Some(label),
            center,
            y_scale: None,
        })
    }

    fn final_vertex(&mut self, cur: &Cursor) -> Flow<()> {
        self.blow(
            cur,
            StepRule::FinalVertex,
            Prediction {
                kind: DivisorKind::ProjSpace,
                next: None,
            },
        )?;
        Ok(())
    }

    /// Checks an exact chart identity, reporting the difference on failure.
    fn identity(&mut self, chart_eq: &MultiPoly, expected: &MultiPoly, what: &str) -> Flow<()> {
        let idx = self.steps.len();
        if chart_eq == expected {
            self.steps[idx - 1].identity_checked = true;
            return Ok(());
        }
        let residual = self.fmt(&(chart_eq - expected));
        self.fail(
            idx,
            format!("y-chart equation is {what}"),
            format!("difference {residual}"),
        )
    }

    /// Rescales `y` so that the coefficient of `y^k` becomes 1.
    fn scale_y(&mut self, cur: &mut Cursor, k: u32) -> Flow<()> {
        let f = self.field.clone();
        let c = cur.eq.coefficient(&Monomial::var(self.n, k as u16));
        if c.is_zero() {
            self.record(
                self.steps.len(),
                FailureKind::TypePattern,
                format!("y^{k} occurs with a unit coefficient"),
                self.fmt(&cur.eq),
            );
            return Err(Halt::Stop);
        }
        if c == Elem::ONE {
            return Ok(());
        }
        let target = f.inv(c).expect("nonzero");
        let lambda = match f.mth_root(target, k as u64) {
            Ok(l) => l,
            Err(FieldError::NoRoot { .. }) => return Err(Halt::NeedRoot),
            Err(e) => return Err(e.into()),
        };
        cur.eq = cur.eq.substitute(&scale_images(&f, self.n + 1, lambda))?;
        cur.y_scale = Some(lambda);
        Ok(())
    }

    fn matched(&mut self, cur: &Cursor, k: u32) -> Flow<TypeMatch> {
        let idx = self.steps.len();
        match match_type(&cur.eq, self.n, k) {
            Ok(m) => {
                if let Some(s) = self.steps.last_mut() {
                    s.germ_type_after = Some(k);
                    s.shape_matched = Some(m.shape);
                }
                Ok(m)
            }
            Err(residual) => {
                let w = self.fmt(&residual);
                self.record(
                    idx,
                    FailureKind::TypePattern,
                    format!("germ is of type {k}"),
                    w,
                );
                Err(Halt::Stop)
            }
        }
    }

    fn check_descent(&mut self, chart_eq: &MultiPoly, e: u32) -> Flow<()> {
        let y = self.n;
        let lowest = chart_eq
            .terms()
            .iter()
            .filter(|(m, _)| m.degree() == m.exp(y) as u32)
            .map(|(m, c)| (m.exp(y) as u32, *c))
            .min_by_key(|t| t.0);
        if lowest == Some((e, Elem::ONE)) {
            self.steps.last_mut().expect("a step").identity_checked = true;
            return Ok(());
        }
        let idx = self.steps.len();
        self.fail(
            idx,
            format!("lowest pure power on the y-chart is y^{e}"),
            format!("{lowest:?}"),
        )
    }

    fn case_a(&mut self, germ: &Germ, meta: &GermMeta) -> Flow<()> {
        let n = self.n;
        let mut e = meta.d;
        let mut cur = Cursor::start(germ.equation.clone(), n);
        loop {
            let pred = Prediction {
                kind: if e >= 3 {
                    cone(y_point(n))
                } else {
                    DivisorKind::Quadric(QuadricClass::Nonsingular)
                },
                next: (e >= 4).then(|| y_point(n)),
            };
            let charts = self.blow(&cur, StepRule::QuadricDescent, pred)?;
            if e > 2 {
                let ych = chart_of(&charts, ChartLabel::Y).equation.clone();
                self.check_descent(&ych, e - 2)?;
            }
            e -= 2;
            match e {
                0 => return Ok(()),
                1 => {
                    let c = self.advance(&charts, &cur, ChartLabel::Y, vec![Elem::ZERO; n + 1])?;
                    return self.final_vertex(&c);
                }
                _ => cur = self.advance(&charts, &cur, ChartLabel::Y, vec![Elem::ZERO; n + 1])?,
            }
        }
    }

    fn case_b(&mut self, germ: &Germ, meta: &GermMeta) -> Flow<()> {
        let n = self.n;
        let nv = n + 1;
        let f = self.field.clone();
        let d = meta.d;
        let beta = meta.beta.unwrap_or(Elem::ZERO);
        let cur = Cursor::start(germ.equation.clone(), n);
        if d == 2 {
            let mut vertex = vec![Elem::ZERO; nv];
            vertex[0] = Elem::ONE;
            vertex[n] = f.frobenius_root(beta);
            let charts = self.blow(
                &cur,
                StepRule::EvenFirstStage,
                Prediction {
                    kind: cone(vertex.clone()),
                    next: None,
                },
            )?;
            let label = if vertex[n].is_zero() {
                ChartLabel::X(0)
            } else {
                ChartLabel::Y
            };
            let center = point_on_chart(&f, &vertex, label).expect("vertex lies on its chart");
            let c = self.advance(&charts, &cur, label, center)?;
            return self.final_vertex(&c);
        }

        let y = n;
        let gamma = meta.cubic.unwrap_or(Elem::ZERO);
        let q = standard_quadric(&f, n, nv, meta.beta);
        let x1cube = MultiPoly::monomial(&f, nv, Monomial::var(0, 3), gamma);
        let cubic = germ
            .equation
            .filter_terms(|m| m.exp(y) == 0 && m.degree() == 3);
        let c = &cubic - &x1cube;
        let mut fi = &(&(&germ.equation - &y_pow(&f, nv, d)) - &q) - &cubic;
        if !fi.is_of_type(MonomialType { a: 4, b: 2 * d }) {
            let w = self.fmt(&fi);
            self.fail(0, format!("higher part is of type (4; {})", 2 * d), w)?;
        }
        let mut cur = cur;
        let half = d / 2;
        for i in 1..=half {
            let expo = d - 2 * (i - 1);
            let vertex = if expo >= 3 { y_point(n) } else { x1_y_point(n) };
            let charts = self.blow(
                &cur,
                StepRule::EvenFirstStage,
                Prediction {
                    kind: cone(vertex.clone()),
                    next: Some(vertex),
                },
            )?;
            let y4 = Monomial::var(y, 4);
            fi = match fi.star().divide_exact(&y4) {
                Ok(p) => p,
                Err(_) => {
                    let w = self.fmt(&fi.star());
                    self.record(
                        self.steps.len(),
                        FailureKind::StructuralClaim,
                        "f* is divisible by y^4".into(),
                        w,
                    );
                    return Err(Halt::Stop);
                }
            };
            let yi = y_pow(&f, nv, i);
            let expected = &(&(&(&y_pow(&f, nv, d - 2 * i) + &q) + &(&yi * &x1cube)) + &(&yi * &c))
                + &(&y_pow(&f, nv, 2 * i) * &fi);
            let ych = chart_of(&charts, ChartLabel::Y).equation.clone();
            self.identity(
                &ych,
                &expected,
                "y^(d-2i) + q + gamma y^i x1^3 + y^i c + y^(2i) f_i",
            )?;
            let t = 2 * d - 4 * i;
            if !fi.is_of_type(MonomialType { a: 4, b: t }) {
                let w = self.fmt(&fi);
                self.fail(self.steps.len(), format!("f_{i} is of type (4; {t})"), w)?;
            }
            let center = if i < half {
                vec![Elem::ZERO; nv]
            } else {
                x1_unit(n)
            };
            cur = self.advance(&charts, &cur, ChartLabel::Y, center)?;
        }
        self.scale_y(&mut cur, half)?;
        self.typed(cur, half)
    }

    /// Resolves a germ of type `k`, recursing through the halved types.
    fn typed(&mut self, mut cur: Cursor, mut k: u32) -> Flow<()> {
        let n = self.n;
        let nv = n + 1;
        let f = self.field.clone();
        let q = standard_quadric(&f, n, nv, Some(Elem::ONE));
        loop {
            let m = self.matched(&cur, k)?;
            let tag = if k.is_multiple_of(2) {
                StepRule::EvenType
            } else {
                StepRule::OddType
            };
            let half = k / 2;
            let x1 = MultiPoly::var(&f, nv, 0);
            let (mut g, mut h) = (m.g.clone(), m.h.clone());
            let mut charts = Vec::new();
            for i in 1..=half {
                let expo = k - 2 * (i - 1);
                let vertex = if expo >= 3 { y_point(n) } else { x1_y_point(n) };
                let next = match expo {
                    e if e >= 4 => Some(y_point(n)),
                    2 if half >= 2 => Some(x1_y_point(n)),
                    _ => None,
                };
                charts = self.blow(
                    &cur,
                    tag,
                    Prediction {
                        kind: cone(vertex),
                        next,
                    },
                )?;
                g = match g.star().divide_exact(&Monomial::var(n, 2)) {
                    Ok(p) => p,
                    Err(_) => {
                        let w = self.fmt(&g);
                        let idx = self.steps.len();
                        self.record(
                            idx,
                            FailureKind::StructuralClaim,
                            "g* is divisible by y^2".into(),
                            w,
                        );
                        return Err(Halt::Stop);
                    }
                };
                h = h.star();
                let lead = &y_pow(&f, nv, k - 2 * i)
                    * &(&MultiPoly::one(&f, nv) + &(&y_pow(&f, nv, i) * &x1));
                let expected = &(&(&(&lead + &q) + &(&y_pow(&f, nv, k - i) * &m.linear))
                    + &(&y_pow(&f, nv, k) * &g))
                    + &(&y_pow(&f, nv, 2 * k - 2 * i) * &h);
                let ych = chart_of(&charts, ChartLabel::Y).equation.clone();
                self.identity(
                    &ych,
                    &expected,
                    "y^(k-2i)(1 + y^i x1) + q + y^(k-i) l + y^k g_i + y^(2k-2i) h_i",
                )?;
                if i < half {
                    cur = self.advance(&charts, &cur, ChartLabel::Y, vec![Elem::ZERO; nv])?;
                }
            }
            if k % 2 == 1 {
                let c = self.advance(&charts, &cur, ChartLabel::Y, vec![Elem::ZERO; nv])?;
                return self.final_vertex(&c);
            }
            let next = self.advance(&charts, &cur, ChartLabel::Y, x1_unit(n))?;
            if half == 1 {
                return self.final_vertex(&next);
            }
            cur = next;
            k = half;
            self.scale_y(&mut cur, k)?;
        }
    }
}

fn run_once(
    germ: &Germ,
    meta: &GermMeta,
    mode: Mode,
    failures: &[Failure],
) -> Result<Option<ResolutionReport>, ResolveError> {
    let mut run = Run::new(germ.field(), germ.n, mode);
    run.failures = failures.to_vec();
    let outcome = match meta.case {
        Case::A => run.case_a(germ, meta),
        Case::B => run.case_b(germ, meta),
    };
    let completed = match outcome {
        Ok(()) => true,
        Err(Halt::Stop) => false,
        Err(Halt::NeedRoot) => return Ok(None),
        Err(Halt::Error(e)) => return Err(e),
    };
    let component_types = run.components.iter().map(|c| c.kind).collect();
    let mut report = ResolutionReport {
        field: germ.field().descriptor(),
        n: germ.n,
        d: meta.d,
        case: meta.case,
        mode,
        input_hash: germ.equation.fingerprint(),
        total_blowups: run.steps.len(),
        simulated_blowups: simulate_blowups(meta.case, meta.d),
        steps: run.steps,
        components: run.components,
        chain: run.chain,
        component_types,
        form_verdict: None,
        form_records: Vec::new(),
        ch0_chain_check: false,
        failures: run.failures,
        completed,
    };
    report.ch0_chain_check = chain_check(&report);
    if completed && germ.n >= 3 {
        let (verdict, records) = verify_form_regularity(&report, germ)?;
        report.form_verdict = Some(verdict);
        report.form_records = records;
    }
    Ok(Some(report))
}

/// Runs the pipeline on a normal-form germ. In strict mode a non-normal-form
/// input is an error; in warn mode it becomes a recorded failure.
///
/// When a rescaling of `y` needs a root missing from the field, the whole
/// run is repeated over the next extension (degree at most 6).
pub fn resolve(germ: &Germ, mode: Mode) -> Result<ResolutionReport, ResolveError> {
    let mut pre = Vec::new();
    if let Err(e) = validate_normal_form(germ) {
        match mode {
            Mode::Strict => return Err(e.into()),
            Mode::Warn => pre.push(Failure {
                step: 0,
                kind: FailureKind::StructuralClaim,
                claim: "input is an admissible normal form".into(),
                witness: e.to_string(),
            }),
        }
    }
    for emb in extensions(germ.field(), MAX_EXTENSION) {
        let g = if emb.source() == emb.target() {
            germ.clone()
        } else {
            Germ::unchecked(germ.n, germ.equation.embed(&emb))?
        };
        let meta = read_shape(&g.equation, g.n)?;
        if let Some(r) = run_once(&g, &meta, mode, &pre)? {
            return Ok(r);
        }
    }
    Err(ResolveError::NoExtensionFound)
}

fn strict_for(germ: &Germ, case: Case) -> Result<ResolutionReport, ResolveError> {
    let found = Case::of(germ.n, germ.field().characteristic());
    if found != case {
        return Err(ResolveError::NotNormalForm(format!(
            "expected case {case:?}, found case {found:?}"
        )));
    }
    let report = resolve(germ, Mode::Strict)?;
    match report.failures.first() {
        Some(f) => Err(f.to_error()),
        None => Ok(report),
    }
}

/// Strict run for `n` even or `p` odd.
pub fn resolve_case_a(germ: &Germ) -> Result<ResolutionReport, ResolveError> {
    strict_for(germ, Case::A)
}

/// Strict run for `n` odd and `p = 2`.
pub fn resolve_case_b(germ: &Germ) -> Result<ResolutionReport, ResolveError> {
    strict_for(germ, Case::B)
}

fn label_var(label: ChartLabel, n: usize) -> usize {
    match label {
        ChartLabel::X(i) => i,
        ChartLabel::Y => n,
    }
}

/// Replays the recorded centers and tracks the local generator on each
/// `y`-chart, in the theta basis. A pole shows up as `dF/dx_n` vanishing
/// along the new exceptional divisor.
pub fn verify_form_regularity(
    report: &ResolutionReport,
    germ: &Germ,
) -> Result<(FormVerdict, Vec<FormRecord>), ResolveError> {
    let n = germ.n;
    if n < 3 {
        return Err(ResolveError::DimensionTooSmall(n));
    }
    let field = FieldTower::from_descriptor(&report.field)?;
    let emb = FieldEmbedding::new(germ.field(), &field)?;
    let nv = n + 1;
    let mut eq = germ.equation.embed(&emb);
    let mut omega: Option<ThetaForm> = None;
    let mut verdict = FormVerdict::RegularTypeTheta;
    let mut records = Vec::with_capacity(report.steps.len());
    for (i, step) in report.steps.iter().enumerate() {
        let mut images = None;
        let mut on_y = i == 0;
        if i > 0 {
            let prev = &report.steps[i - 1];
            let label = step.center_chart.unwrap_or(ChartLabel::Y);
            on_y = label == ChartLabel::Y;
            let chart = chart_equation(&eq, label_var(label, n), prev.multiplicity)?;
            let mut im = shift_images(&field, nv, &step.center);
            if let Some(l) = step.y_scale {
                let sc = scale_images(&field, nv, l);
                im = im
                    .iter()
                    .map(|p| p.substitute(&sc))
                    .collect::<Result<_, _>>()?;
            }
            eq = chart.substitute(&im)?;
            images = Some(im);
        }
        let (_, form, _) = eq.lowest_degree_part()?;
        let meets_y = form.valuation_in(n) == 0;
        if !(on_y && meets_y) {
            omega = None;
        } else if i == 0 {
            omega = Some(eta_initial(&Germ::unchecked(n, eq.clone())?)?);
        } else if let (Some(w), Some(im)) = (omega.take(), images) {
            omega = Some(theta_pullback(&w.substitute(&im)));
        }
        let ychart = chart_equation(&eq, n, step.multiplicity)?;
        let den = ychart.partial_derivative(n - 1);
        let denominator_order = if den.is_zero() {
            u16::MAX
        } else {
            den.valuation_in(n)
        };
        let replayed = omega.is_some();
        if replayed && denominator_order > 0 && verdict == FormVerdict::RegularTypeTheta {
            verdict = FormVerdict::PoleDetected {
                step: step.index,
                order: denominator_order as u32,
            };
        }
        records.push(FormRecord {
            step: step.index,
            replayed,
            valuation: omega.as_ref().and_then(ThetaForm::y_valuation),
            denominator_order,
        });
    }
    Ok((verdict, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::poly;

    fn germ(p: u64, n: usize, terms: &[(&[u16], i64)]) -> Germ {
        let f = make_field(p, 1).unwrap();
        Germ::new(n, poly(&f, n + 1, terms)).unwrap()
    }

    #[test]
    fn case_b_counts_match_simulation() {
        for d in [2u16, 4, 8] {
            let g = germ(
                2,
                3,
                &[
                    (&[0, 0, 0, d], 1),
                    (&[2, 0, 0, 0], 1),
                    (&[0, 1, 1, 0], 1),
                    (&[3, 0, 0, 0], 1),
                ],
            );
            let r = resolve_case_b(&g).unwrap();
            assert_eq!(r.total_blowups as u32, r.simulated_blowups, "d = {d}");
            assert!(r.is_success(), "d = {d}: {:?}", r.failures);
        }
    }

    #[test]
    fn case_a_counts_match_simulation() {
        let g = germ(
            3,
            3,
            &[(&[0, 0, 0, 3], 1), (&[2, 0, 0, 0], 1), (&[0, 1, 1, 0], 1)],
        );
        let r = resolve_case_a(&g).unwrap();
        assert_eq!(r.total_blowups, 2);
        assert!(r.is_success(), "{:?}", r.failures);
        let g = germ(
            3,
            4,
            &[
                (&[0, 0, 0, 0, 9], 1),
                (&[1, 1, 0, 0, 0], 1),
                (&[0, 0, 1, 1, 0], 1),
            ],
        );
        let r = resolve_case_a(&g).unwrap();
        assert_eq!(r.total_blowups, 5);
        assert!(r.is_success(), "{:?}", r.failures);
    }

    #[test]
    fn degenerate_input_fails_under_warn() {
        let g = germ(
            2,
            3,
            &[(&[0, 0, 0, 4], 1), (&[0, 1, 1, 0], 1), (&[3, 0, 0, 0], 1)],
        );
        assert!(resolve_case_b(&g).is_err());
        let r = resolve(&g, Mode::Warn).unwrap();
        assert!(!r.failures.is_empty());
        assert!(!r.is_success());
    }
}
