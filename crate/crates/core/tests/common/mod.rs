//! Shared strategies, brute-force oracles and law checks for the
//! integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;

use insep::field::{make_field, Elem, FieldEmbedding, FieldTower};
use insep::poly::{buchberger, IdealBasis, Monomial, MonomialType, MultiPoly};
use insep::resolve::{theta_pullback, ThetaForm};

/// All `(p, k)` with `p^k <= 49`.
pub fn small_fields() -> Vec<FieldTower> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut k = 1;
        while p.pow(k as u32) <= 49 {
            out.push(make_field(p, k).unwrap());
            k += 1;
        }
    }
    out
}

/// Raw polynomial data: (exponents, coefficient code) pairs.
pub type RawPoly = Vec<(Vec<u16>, u64)>;

pub fn raw_poly(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), any::<u64>()),
        0..=max_terms,
    )
}

pub fn build(f: &FieldTower, nvars: usize, raw: &RawPoly) -> MultiPoly {
    let terms: Vec<(Monomial, Elem)> = raw
        .iter()
        .map(|(e, c)| (Monomial::new(e), f.element(c % f.size()).unwrap()))
        .collect();
    MultiPoly::from_terms(f, nvars, terms)
}

/// All points of `f^nvars`, in odometer order.
pub fn points(f: &FieldTower, nvars: usize) -> impl Iterator<Item = Vec<Elem>> {
    let elems: Vec<Elem> = f.elements().collect();
    let q = elems.len();
    let total = q.pow(nvars as u32);
    (0..total).map(move |mut code| {
        (0..nvars)
            .map(|_| {
                let e = elems[code % q];
                code /= q;
                e
            })
            .collect()
    })
}

/// The quadratic extension `F_{q^2}` with the embedding of `F_q`.
pub fn quadratic_extension(f: &FieldTower) -> FieldEmbedding {
    let ext = make_field(f.characteristic(), 2 * f.degree()).unwrap();
    FieldEmbedding::new(f, &ext).unwrap()
}

/// A common zero over `F_{q^2}`, by enumeration.
pub fn common_zero(gens: &[MultiPoly]) -> Option<Vec<Elem>> {
    let f = gens[0].field();
    let emb = quadratic_extension(f);
    let lifted: Vec<MultiPoly> = gens.iter().map(|g| g.embed(&emb)).collect();
    points(emb.target(), gens[0].nvars()).find(|pt| lifted.iter().all(|g| g.evaluate(pt).is_zero()))
}

/// `F_{q^2}`-points where `eq` and all its partials vanish, optionally
/// restricted to `x_coord = 0`.
pub fn singular_points(eq: &MultiPoly, on_coord: Option<usize>) -> Vec<Vec<Elem>> {
    let emb = quadratic_extension(eq.field());
    let e = eq.embed(&emb);
    let mut gens = vec![e.clone()];
    gens.extend((0..e.nvars()).map(|i| e.partial_derivative(i)));
    points(emb.target(), e.nvars())
        .filter(|pt| on_coord.is_none_or(|c| pt[c].is_zero()))
        .filter(|pt| gens.iter().all(|g| g.evaluate(pt).is_zero()))
        .collect()
}

// ---- algebra laws, shared by the property suites and the acceptance run ----

pub fn law_mth_root(f: &FieldTower, code: u64, m: u64) -> Result<(), String> {
    let a = f.element(code % f.size()).unwrap();
    let roots: Vec<Elem> = f.elements().filter(|&x| f.pow(x, m as u128) == a).collect();
    match f.mth_root(a, m) {
        Ok(b) if roots.first() == Some(&b) => Ok(()),
        Ok(b) => Err(format!(
            "F_{}: root of {a:?} for m = {m} is {b:?}, least is {:?}",
            f.size(),
            roots.first()
        )),
        Err(_) if roots.is_empty() => Ok(()),
        Err(e) => Err(format!(
            "F_{}: {e} but {:?}^{m} = {a:?}",
            f.size(),
            roots[0]
        )),
    }
}

/// Exponent vectors (`n` x-variables then `y`) of a polynomial of type `(a; b)`.
pub fn typed_poly(n: usize) -> impl Strategy<Value = (u32, u32, RawPoly)> {
    (1u32..=4, 0u32..=8).prop_flat_map(move |(a, b)| {
        let x_term = (prop::collection::vec(0u16..=3, n), 0u16..=4, any::<u64>()).prop_map(
            move |(mut xs, j, c)| {
                // top up x-degree to at least a
                let deficit = (a as u16).saturating_sub(xs.iter().sum());
                xs[0] += deficit;
                xs.push(j);
                (xs, c)
            },
        );
        let y_term = ((b as u16)..=(b as u16 + 4), any::<u64>()).prop_map(move |(j, c)| {
            let mut e = vec![0u16; n];
            e.push(j);
            (e, c)
        });
        (
            Just(a),
            Just(b),
            prop::collection::vec(prop_oneof![x_term, y_term], 0..8),
        )
    })
}

pub fn law_star_type(
    f: &FieldTower,
    n: usize,
    a: u32,
    b: u32,
    raw: &RawPoly,
) -> Result<(), String> {
    let h = build(f, n + 1, raw);
    let t = MonomialType { a, b };
    if !h.is_of_type(t) {
        return Err(format!("generated polynomial is not of type ({a}; {b})"));
    }
    let s = h.star();
    if !s.is_of_type(t) {
        return Err(format!(
            "star of a type ({a}; {b}) polynomial lost the type"
        ));
    }
    if b >= a {
        let q = s
            .divide_exact(&Monomial::var(n, a as u16))
            .map_err(|e| format!("star not divisible by y^{a}: {e}"))?;
        if !q.is_of_type(MonomialType { a, b: b - a }) {
            return Err(format!("star / y^{a} is not of type ({a}; {})", b - a));
        }
    }
    Ok(())
}

pub fn law_divide_exact(
    f: &FieldTower,
    nvars: usize,
    raw: &RawPoly,
    t: &[u16],
) -> Result<(), String> {
    let p = build(f, nvars, raw);
    let t = Monomial::new(t);
    let prod = p.mul_monomial(&t).map_err(|e| e.to_string())?;
    let back = prod.divide_exact(&t).map_err(|e| e.to_string())?;
    if back != p {
        return Err("(p * t) / t != p".into());
    }
    let divisible = p.terms().iter().all(|(m, _)| t.divides(m));
    if divisible != p.divide_exact(&t).is_ok() {
        return Err("divide_exact accepted an inexact quotient or rejected an exact one".into());
    }
    Ok(())
}

pub fn law_substitute(
    f: &FieldTower,
    p: &RawPoly,
    a: &[RawPoly],
    b: &[RawPoly],
) -> Result<(), String> {
    let nv = a.len();
    let p = build(f, nv, p);
    let a: Vec<MultiPoly> = a.iter().map(|r| build(f, nv, r)).collect();
    let b: Vec<MultiPoly> = b.iter().map(|r| build(f, nv, r)).collect();
    let lhs = p.substitute(&a).unwrap().substitute(&b).unwrap();
    let ab: Vec<MultiPoly> = a.iter().map(|ai| ai.substitute(&b).unwrap()).collect();
    let rhs = p.substitute(&ab).unwrap();
    if lhs != rhs {
        return Err("p(A)(B) != p(A(B))".into());
    }
    Ok(())
}

pub fn law_gb_permutation(
    f: &FieldTower,
    nvars: usize,
    gens: &[RawPoly],
    rotate: usize,
) -> Result<(), String> {
    let polys: Vec<MultiPoly> = gens.iter().map(|r| build(f, nvars, r)).collect();
    let mut perm = polys.clone();
    perm.reverse();
    if !perm.is_empty() {
        let k = rotate % perm.len();
        perm.rotate_left(k);
    }
    let g1 = buchberger(&IdealBasis::new(polys.clone()));
    let g2 = buchberger(&IdealBasis::new(perm));
    if g1.generators() != g2.generators() || g1.fingerprint() != g2.fingerprint() {
        return Err("reduced basis depends on generator order".into());
    }
    if !g1.is_groebner() {
        return Err("output is not a Gröbner basis".into());
    }
    for p in &polys {
        if !insep::poly::normal_form(p, g1.generators()).is_zero() {
            return Err("a generator does not reduce to zero".into());
        }
    }
    Ok(())
}

pub fn law_theta_closure(f: &FieldTower, n: usize, coeffs: &[RawPoly]) -> Result<(), String> {
    let polys: Vec<MultiPoly> = coeffs.iter().map(|r| build(f, n + 1, r)).collect();
    let w = ThetaForm {
        n,
        f: polys[..n - 1].to_vec(),
        g: polys[n - 1].clone(),
    };
    let v = theta_pullback(&w);
    if v.f.len() != n - 1 || v.coefficients().any(|c| c.nvars() != n + 1) {
        return Err("pullback changed the form's shape".into());
    }
    if let Some(val) = v.y_valuation() {
        if (val as usize) < n - 3 {
            return Err(format!("pullback has y-valuation {val} < n - 3"));
        }
    }
    if w.is_zero() != v.is_zero() {
        return Err("pullback of a nonzero form vanished".into());
    }
    Ok(())
}

// ---- golden files ----

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Compares `actual` with the named golden file. `INSEP_BLESS=1` rewrites it.
pub fn golden(name: &str, actual: &str) -> Result<(), String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("INSEP_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != actual {
        return Err(format!("{} differs from the golden copy", path.display()));
    }
    Ok(())
}

// ---- Gröbner and smoothness oracle cases ----

use insep::germ::{certify_chart_smoothness, CertScope, Chart, ChartLabel, SmoothnessVerdict};
use insep::poly::contains_one;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Field and variable count with `(q^2)^nvars` small enough to enumerate.
fn oracle_shape(rng: &mut ChaCha8Rng) -> (FieldTower, usize) {
    let (p, k) = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3)][rng.gen_range(0..6)];
    let f = make_field(p, k).unwrap();
    let max_vars = match f.size() {
        2..=4 => 4,
        5 | 7 => 3,
        _ => 2,
    };
    (f, rng.gen_range(1..=max_vars))
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    f: &FieldTower,
    nvars: usize,
    max_deg: u32,
    terms: usize,
) -> MultiPoly {
    let raw: RawPoly = (0..terms)
        .map(|_| {
            let mut e = vec![0u16; nvars];
            for _ in 0..rng.gen_range(0..=max_deg) {
                e[rng.gen_range(0..nvars)] += 1;
            }
            (e, rng.gen_range(1..f.size()))
        })
        .collect();
    build(f, nvars, &raw)
}

#[derive(Debug, Default, Clone, Copy)]
pub struct OracleTally {
    pub ideals: usize,
    pub with_zero: usize,
    pub charts: usize,
    pub smooth_verdicts: usize,
    pub point_verdicts: usize,
}

/// One random ideal, half the time with a planted `F_q`-point: if the
/// enumeration finds a common zero, `contains_one` must say no.
pub fn oracle_ideal(seed: u64, tally: &mut OracleTally) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (f, nv) = oracle_shape(&mut rng);
    let mut gens: Vec<MultiPoly> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let terms = rng.gen_range(1..=4);
            random_poly(&mut rng, &f, nv, 4, terms)
        })
        .collect();
    if rng.gen_bool(0.5) {
        let pt: Vec<Elem> = (0..nv)
            .map(|_| f.element(rng.gen_range(0..f.size())).unwrap())
            .collect();
        for g in &mut gens {
            let v = g.evaluate(&pt);
            *g = &*g - &MultiPoly::constant(&f, nv, v);
        }
    }
    tally.ideals += 1;
    let unit = contains_one(&IdealBasis::new(gens.clone()));
    if let Some(z) = common_zero(&gens) {
        tally.with_zero += 1;
        if unit {
            return Err(format!(
                "seed {seed}: contains_one on an ideal with common zero {z:?}"
            ));
        }
    }
    Ok(())
}

/// One random chart: a `SmoothEverywhere` verdict must have no `F_{q^2}`
/// singular point, and a certified single point must be the only one.
pub fn oracle_chart(seed: u64, tally: &mut OracleTally) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (f, nv) = oracle_shape(&mut rng);
    let nv = nv.max(2);
    let nv = if f.size() > 4 { nv.min(3) } else { nv };
    let nv = if f.size() > 7 { 2 } else { nv };
    let terms = rng.gen_range(1..=5);
    let mut eq = random_poly(&mut rng, &f, nv, 4, terms);
    if rng.gen_bool(0.5) {
        // singular at the origin: drop the constant and linear parts
        eq = eq.filter_terms(|m| m.degree() >= 2);
    }
    let exc = rng.gen_range(0..nv);
    let chart = Chart {
        label: ChartLabel::Y,
        origin_on_chart: eq.constant_term().is_zero(),
        equation: eq.clone(),
        exceptional_coord: exc,
    };
    tally.charts += 1;
    for scope in [CertScope::Global, CertScope::AlongExceptional] {
        let on = (scope == CertScope::AlongExceptional).then_some(exc);
        let origin = vec![Elem::ZERO; nv];
        for expected in [vec![], vec![origin]] {
            let Ok(cert) = certify_chart_smoothness(&chart, &expected, scope) else {
                continue;
            };
            let found = singular_points(&eq, on);
            match cert.verdict {
                SmoothnessVerdict::SmoothEverywhere => {
                    tally.smooth_verdicts += 1;
                    if !found.is_empty() {
                        return Err(format!(
                            "seed {seed}: smooth verdict but singular at {:?}",
                            found[0]
                        ));
                    }
                }
                SmoothnessVerdict::SingularExactlyAt(pts) => {
                    tally.point_verdicts += 1;
                    let emb = quadratic_extension(&f);
                    let lifted: Vec<Vec<Elem>> = pts
                        .iter()
                        .map(|p| p.iter().map(|&a| emb.apply(a)).collect())
                        .collect();
                    if found != lifted {
                        return Err(format!(
                            "seed {seed}: certified {pts:?}, enumeration found {found:?}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

// ---- seeded germs and sections ----

use insep::classify::{classify_critical, LocalSection};
use insep::cli::gen::{gen_equation, GenKind, GenParams};
use insep::germ::{point_on_chart, DivisorKind, Germ, QuadricClass};
use insep::resolve::ResolutionReport;

/// 25 seeded admissible germs over `p in {2,3,5}`, `n in {3,4,5}`, `d <= 8`.
pub fn sweep_germs() -> Vec<(String, Germ)> {
    let mut shapes = Vec::new();
    for n in [3usize, 5] {
        for d in [2u32, 4, 6, 8] {
            shapes.push((GenKind::CaseB, n, 2u64, d));
        }
    }
    for d in [2u32, 4, 6, 8] {
        shapes.push((GenKind::CaseA, 4, 2, d));
    }
    for n in [3usize, 4, 5] {
        for d in [3u32, 6] {
            shapes.push((GenKind::CaseA, n, 3, d));
        }
        shapes.push((GenKind::CaseA, n, 5, 5));
    }
    (0..25u64)
        .map(|seed| {
            let (kind, n, p, d) = shapes[seed as usize % shapes.len()];
            let eq = gen_equation(&GenParams {
                kind,
                n,
                p,
                k: 1,
                d,
                seed,
            })
            .unwrap();
            (
                format!("{kind:?} n={n} p={p} d={d} seed={seed}"),
                Germ::new(n, eq).unwrap(),
            )
        })
        .collect()
}

/// Every step's divisor is the predicted one: a cone whose vertex is the
/// next center, or at the last step a hyperplane or smooth quadric.
pub fn divisor_chain_ok(r: &ResolutionReport) -> Result<(), String> {
    let f = insep::field::FieldTower::from_descriptor(&r.field).unwrap();
    for (i, s) in r.steps.iter().enumerate() {
        if s.predicted != s.exceptional {
            return Err(format!(
                "step {}: predicted {:?}, got {:?}",
                s.index, s.predicted, s.exceptional
            ));
        }
        if s.certificates.is_empty() {
            return Err(format!("step {}: no certificates", s.index));
        }
        match (&s.exceptional, r.steps.get(i + 1)) {
            (DivisorKind::Quadric(QuadricClass::ConeWithVertex(v)), Some(next)) => {
                let label = next.center_chart.ok_or("later step without a chart")?;
                if point_on_chart(&f, v, label).as_deref() != Some(&next.center[..]) {
                    return Err(format!(
                        "step {}: vertex {v:?} is not the next center",
                        s.index
                    ));
                }
            }
            (DivisorKind::ProjSpace | DivisorKind::Quadric(QuadricClass::Nonsingular), None) => {}
            (k, next) => {
                return Err(format!(
                    "step {}: divisor {k:?} with next step present = {}",
                    s.index,
                    next.is_some()
                ))
            }
        }
    }
    Ok(())
}

/// A random exact section at the origin (constant, no linear part).
pub fn random_section(seed: u64) -> LocalSection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, n) = [(2u64, 3usize), (2, 4), (3, 3), (3, 4), (5, 3), (2, 5)][rng.gen_range(0..6)];
    let f = make_field(p, 1).unwrap();
    let m = p as u32 * [1u32, 2, 4][rng.gen_range(0..3)];
    let mut g = random_poly(&mut rng, &f, n, 4, 8).filter_terms(|mo| mo.degree() >= 2);
    for i in 0..n {
        for j in i..n {
            if rng.gen_bool(0.6) {
                let mut e = vec![0u16; n];
                e[i] += 1;
                e[j] += 1;
                g = &g + &build(&f, n, &vec![(e, rng.gen_range(1..p))]);
            }
        }
    }
    let c = rng.gen_range(0..p);
    g = &g + &MultiPoly::constant(&f, n, f.element(c).unwrap());
    LocalSection::exact(g, m).unwrap()
}

pub fn is_admissible(s: &LocalSection) -> bool {
    classify_critical(s).is_ok_and(|v| v.admissible)
}
