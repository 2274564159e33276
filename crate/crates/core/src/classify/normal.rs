//! Reduction of `y^m - g` to `gamma_e y^{ed} + ... + gamma_2 y^{2d} + y^d + q + f`
//! with `q` standard, recording every substitution so it can be undone.

use crate::field::{extensions, Elem, FieldEmbedding, FieldError, FieldTower};
use crate::germ::{Case, DReading, Germ, GermMeta};
use crate::poly::linalg::Matrix;
use crate::poly::{Monomial, MultiPoly};

use super::frame::{standard_frame, standard_quadric};
use super::{admissibility_case, classify_critical, ClassifyError, LocalSection};

/// Normal-form germ over `embedding.target()` together with the changes
/// `x = A x'`, `y = lambda y' + shift` and the unit factor applied.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub germ: Germ,
    pub embedding: FieldEmbedding,
    pub transform: Matrix,
    pub shift: Elem,
    pub y_scale: Elem,
    pub unit: Elem,
    pub source: LocalSection,
}

impl NormalForm {
    /// The cover equation `y^m - g` over the target field.
    pub fn source_equation(&self) -> MultiPoly {
        self.source.cover_equation().embed(&self.embedding)
    }

    /// Undoes the recorded substitutions: `unit^{-1} G(A^{-1} x, (y - shift)/lambda)`.
    pub fn invert(&self) -> MultiPoly {
        let f = self.germ.field();
        let n = self.germ.n;
        let nv = n + 1;
        let ainv = self.transform.inverse(f).expect("invertible transform");
        let li = f.inv(self.y_scale).expect("nonzero scale");
        let images = substitution_images(f, &ainv, li, f.neg(f.mul(self.shift, li)), nv);
        let back = self.germ.equation.substitute(&images).expect("arity");
        back.scale(f.inv(self.unit).expect("nonzero unit"))
    }
}

/// Images of `x -> A x`, `y -> s y + t` in `n+1` variables.
fn substitution_images(f: &FieldTower, a: &Matrix, s: Elem, t: Elem, nv: usize) -> Vec<MultiPoly> {
    let n = nv - 1;
    (0..nv)
        .map(|i| {
            if i == n {
                MultiPoly::from_terms(f, nv, [(Monomial::var(n, 1), s), (Monomial::ONE, t)])
            } else {
                MultiPoly::from_terms(f, nv, (0..n).map(|j| (Monomial::var(j, 1), a.get(i, j))))
            }
        })
        .collect()
}

fn p_part(m: u32, p: u64) -> (u32, u32) {
    let (mut d, mut e) = (1u32, m);
    while (e as u64).is_multiple_of(p) {
        d *= p as u32;
        e /= p as u32;
    }
    (d, e)
}

/// Reads the shape data off an equation in `x_1..x_n, y`, without judging
/// admissibility.
pub fn read_shape(eq: &MultiPoly, n: usize) -> Result<GermMeta, ClassifyError> {
    let bad = |s: String| Err(ClassifyError::ShapeMismatch(s));
    if eq.nvars() != n + 1 {
        return bad(format!(
            "expected {} variables, found {}",
            n + 1,
            eq.nvars()
        ));
    }
    let f = eq.field();
    let p = f.characteristic();
    let y = n;
    let case = Case::of(n, p);
    let min_mixed = if case == Case::B { 4 } else { 3 };
    let mut pure_y: Vec<(u32, Elem)> = Vec::new();
    for (m, c) in eq.terms() {
        let j = m.exp(y) as u32;
        let xd = m.degree() - j;
        match (xd, j) {
            (0, 0) => return bad("nonzero constant term".into()),
            (0, _) => pure_y.push((j, *c)),
            (1, 0) => return bad("linear term in x".into()),
            (_, 0) => {}
            _ if xd < min_mixed => {
                return bad(format!("mixed term of x-degree {xd} (need >= {min_mixed})"))
            }
            _ => {}
        }
    }
    pure_y.sort_by_key(|t| t.0);
    let Some(&(d, lead)) = pure_y.first() else {
        return bad("no pure power of y".into());
    };
    if lead != Elem::ONE {
        return bad(format!("coefficient of y^{d} is not 1"));
    }
    if d < 2 || !(d as u64).is_multiple_of(p) {
        return bad(format!("lowest power y^{d} is not a multiple of p = {p}"));
    }
    let mut gammas: Vec<Elem> = Vec::new();
    for &(j, c) in &pure_y[1..] {
        if j < 2 * d {
            return bad(format!("y^{j} lies strictly between y^d and y^(2d)"));
        }
        if j % d == 0 {
            let idx = (j / d - 2) as usize;
            if gammas.len() <= idx {
                gammas.resize(idx + 1, Elem::ZERO);
            }
            gammas[idx] = c;
        }
    }
    let e = gammas.len() as u32 + 1;
    let nv = n + 1;
    let x1sq = Monomial::var(0, 2);
    let beta = (n % 2 == 1).then(|| eq.coefficient(&x1sq));
    let q = eq.filter_terms(|m| m.exp(y) == 0 && m.degree() == 2);
    if q != standard_quadric(f, n, nv, beta) {
        return bad("quadratic part is not in standard shape".into());
    }
    if p != 2 && beta.is_some_and(|b| b.is_zero()) {
        return bad("x1^2 is missing from q for odd p".into());
    }
    let cubic = (case == Case::B).then(|| eq.coefficient(&Monomial::var(0, 3)));
    Ok(GermMeta {
        p,
        d,
        e,
        gammas,
        beta,
        cubic,
        case,
        d_reading: DReading::Literal,
        d_ppart: p_part(d, p).0,
    })
}

/// Checks a germ against the normal-form shape and the admissibility
/// conditions the resolver relies on.
pub fn validate_normal_form(germ: &Germ) -> Result<GermMeta, ClassifyError> {
    let n = germ.n;
    let eq = &germ.equation;
    let meta = read_shape(eq, n)?;
    let f = eq.field();
    let yd = MultiPoly::monomial(f, n + 1, Monomial::var(n, meta.d as u16), Elem::ONE);
    let rest = eq - &yd;
    if let Ok(g) = rest.restrict_vars(n) {
        let s = LocalSection::exact(g.neg(), meta.d)?;
        let v = classify_critical(&s)?;
        if !v.admissible {
            return Err(ClassifyError::NotAdmissible {
                case: Some(v.case),
                reason: format!(
                    "{:?} critical point with the section read as y^d - g",
                    v.taxonomy
                ),
            });
        }
    } else if meta.case == Case::B {
        let case = Some(admissibility_case(n, f.characteristic(), meta.d, true));
        if meta.cubic.is_some_and(|c| c.is_zero()) {
            return Err(ClassifyError::NotAdmissible {
                case,
                reason: "x1^3 coefficient vanishes".into(),
            });
        }
        if meta.d > 2 && meta.beta.is_some_and(|b| b.is_zero()) {
            return Err(ClassifyError::NotAdmissible {
                case,
                reason: "beta = 0 with d > 2".into(),
            });
        }
    }
    if meta.case == Case::B && meta.d > 2 && meta.beta != Some(Elem::ONE) {
        return Err(ClassifyError::ShapeMismatch(
            "beta must be 1 when d > 2".into(),
        ));
    }
    Ok(meta)
}

enum Attempt {
    Done(Box<NormalForm>),
    Retry,
}

fn retry_on_no_root<T>(r: Result<T, FieldError>) -> Result<Option<T>, ClassifyError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(FieldError::NoRoot { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Normal form of an admissible exact section, extending the field by
/// degree at most 6 when roots are missing.
pub fn normal_form(s: &LocalSection) -> Result<NormalForm, ClassifyError> {
    if s.order != u32::MAX {
        return Err(ClassifyError::InvalidSection(
            "the normal form needs the exact polynomial".into(),
        ));
    }
    let v = classify_critical(s)?;
    if !v.admissible {
        return Err(ClassifyError::NotAdmissible {
            case: Some(v.case),
            reason: format!("{:?} critical point", v.taxonomy),
        });
    }
    for emb in extensions(s.field(), 6) {
        if let Attempt::Done(nf) = attempt(s, emb)? {
            return Ok(*nf);
        }
    }
    Err(ClassifyError::NoExtensionFound)
}

fn attempt(s: &LocalSection, emb: FieldEmbedding) -> Result<Attempt, ClassifyError> {
    let f = emb.target().clone();
    let n = s.n;
    let nv = n + 1;
    let p = f.characteristic();
    let g = s.g.embed(&emb);
    let alpha = g.constant_term();
    let (d_pp, e_pp) = p_part(s.m, p);
    let (r, d, e): (Elem, u32, u32) = if alpha.is_zero() {
        (Elem::ZERO, s.m, 1)
    } else {
        let Some(r) = retry_on_no_root(f.mth_root(alpha, s.m as u64))? else {
            return Ok(Attempt::Retry);
        };
        (r, d_pp, e_pp)
    };
    let minus_g2 = g.homogeneous_part(2).neg();
    let frame = match standard_frame(&minus_g2) {
        Ok(Some(fr)) => fr,
        Ok(None) => {
            return Err(ClassifyError::NotAdmissible {
                case: None,
                reason: "quadratic part has no standard frame".into(),
            })
        }
        Err(FieldError::NoRoot { .. }) => return Ok(Attempt::Retry),
        Err(e) => return Err(e.into()),
    };
    // coefficient of y^d after y -> y + r
    let c1 = if alpha.is_zero() {
        Elem::ONE
    } else {
        f.mul(
            f.from_int(e as i64),
            f.pow(r, (d as u128) * (e as u128 - 1)),
        )
    };
    let target = f.inv(c1).expect("e is prime to p");
    let Some(lambda) = retry_on_no_root(f.mth_root(target, d as u64))? else {
        return Ok(Attempt::Retry);
    };
    let a = frame.matrix();
    let images = substitution_images(&f, &a, lambda, r, nv);
    let source = s.cover_equation().embed(&emb);
    let equation = source.substitute(&images)?;
    let mut germ = Germ::new(n, equation)?;
    let mut meta = read_shape(&germ.equation, n)?;
    debug_assert_eq!(meta.d, d);
    if meta.case == Case::B && meta.d > 2 && meta.beta.is_some_and(|b| b.is_zero()) {
        return Err(ClassifyError::BetaVanishes);
    }
    meta.d_ppart = d_pp;
    germ.meta = Some(meta);
    Ok(Attempt::Done(Box::new(NormalForm {
        germ,
        embedding: emb,
        transform: a,
        shift: r,
        y_scale: lambda,
        unit: Elem::ONE,
        source: s.clone(),
    })))
}
