//! Monte-Carlo admissibility census for sections of `O(d)` on `P^3`.
//!
//! Critical points are found by enumerating `P^3(F_{q^2})` and testing the
//! three affine partials of the dehomogenized section; points defined only
//! over larger extensions are not searched. A sample with no critical point
//! found counts as all-admissible (vacuously) and is also tallied
//! separately.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_critical, LocalSection, Taxonomy};
use crate::field::{make_field, Elem, FieldEmbedding, FieldError, FieldTower};
use crate::poly::{Monomial, MultiPoly};

use super::{CliError, SCHEMA, TOOL_VERSION};

/// `q = p^k` is capped so that `P^3(F_{q^2})` stays enumerable.
pub const MAX_Q: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusParams {
    pub n: usize,
    pub d: u32,
    pub p: u64,
    pub k: usize,
    pub m: u32,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalRecord {
    /// Index of the first nonzero homogeneous coordinate.
    pub chart: usize,
    /// Affine coordinates in that chart, as digit vectors over `F_{q^2}`.
    pub point: Vec<Vec<u64>>,
    /// 1 if the point is `F_q`-rational, else 2.
    pub degree: u32,
    pub taxonomy: Taxonomy,
    pub case: u8,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub index: usize,
    pub injected: bool,
    pub critical_points: Vec<CriticalRecord>,
    pub taxonomy_counts: BTreeMap<String, usize>,
    pub all_admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema: u32,
    pub tool_version: String,
    pub params: CensusParams,
    pub field_size: u64,
    pub search_field_size: u64,
    /// Which admissibility regime each critical point exercised.
    pub regime: String,
    pub samples: Vec<SampleReport>,
    pub all_admissible_count: usize,
    pub vacuous_count: usize,
    pub all_admissible_fraction: f64,
    pub critical_points_total: usize,
    pub taxonomy_counts: BTreeMap<String, usize>,
    pub notes: Vec<String>,
}

fn check(params: &CensusParams) -> Result<(FieldTower, FieldTower), CliError> {
    if params.n != 3 {
        return Err(CliError::ParamOutOfRange(format!(
            "census runs on P^3 only, got n = {}",
            params.n
        )));
    }
    if params.d == 0 {
        return Err(CliError::ParamOutOfRange("d must be positive".into()));
    }
    let base = make_field(params.p, params.k)?;
    if base.size() > MAX_Q {
        return Err(FieldError::DeskScaleExceeded {
            q: base.size(),
            cap: MAX_Q,
        }
        .into());
    }
    if params.m < 2 || !(params.m as u64).is_multiple_of(params.p) {
        return Err(CliError::ParamOutOfRange(format!(
            "p = {} must divide m = {}",
            params.p, params.m
        )));
    }
    Ok((base.clone(), make_field(params.p, 2 * params.k)?))
}

/// Exponent vectors of all degree-`d` monomials in 4 variables.
fn monomials(d: u32) -> Vec<[u16; 4]> {
    let d = d as u16;
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// A uniformly random homogeneous form of degree `d` in `X_0..X_3`.
pub fn random_form(f: &FieldTower, d: u32, seed: u64, index: usize) -> MultiPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let terms: Vec<(Monomial, Elem)> = monomials(d)
        .into_iter()
        .map(|e| {
            let c = f.element(rng.gen_range(0..f.size())).expect("in range");
            (Monomial::new(&e), c)
        })
        .collect();
    MultiPoly::from_terms(f, 4, terms)
}

/// `S(x)` with `X_chart = 1` and the other coordinates renumbered.
fn dehomogenize(s: &MultiPoly, chart: usize) -> MultiPoly {
    let f = s.field();
    let images: Vec<MultiPoly> = (0..4)
        .map(|i| match i.cmp(&chart) {
            std::cmp::Ordering::Less => MultiPoly::var(f, 3, i),
            std::cmp::Ordering::Equal => MultiPoly::one(f, 3),
            std::cmp::Ordering::Greater => MultiPoly::var(f, 3, i - 1),
        })
        .collect();
    s.substitute(&images).expect("arity")
}

fn shifted(g: &MultiPoly, point: &[Elem]) -> MultiPoly {
    let f = g.field();
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| &MultiPoly::var(f, 3, i) + &MultiPoly::constant(f, 3, point[i]))
        .collect();
    g.substitute(&images).expect("arity")
}

fn taxonomy_name(t: Taxonomy) -> String {
    format!("{t:?}")
}

fn sample(
    form: &MultiPoly,
    index: usize,
    injected: bool,
    ext: &FieldTower,
    q: u64,
    m: u32,
) -> Result<SampleReport, CliError> {
    let emb = FieldEmbedding::new(form.field(), ext)?;
    let s = form.embed(&emb);
    let elems: Vec<Elem> = ext.elements().collect();
    let mut records = Vec::new();
    for chart in 0..4 {
        let g = dehomogenize(&s, chart);
        let partials: Vec<MultiPoly> = (0..3).map(|i| g.partial_derivative(i)).collect();
        // affine coordinate j is homogeneous coordinate j (< chart) or j + 1
        let free: Vec<bool> = (0..3).map(|j| j >= chart).collect();
        let mut point = vec![Elem::ZERO; 3];
        let sizes: Vec<usize> = free
            .iter()
            .map(|&fr| if fr { elems.len() } else { 1 })
            .collect();
        let total: usize = sizes.iter().product();
        for code in 0..total {
            let mut c = code;
            for j in 0..3 {
                point[j] = if free[j] {
                    elems[c % sizes[j]]
                } else {
                    Elem::ZERO
                };
                c /= sizes[j];
            }
            if partials.iter().any(|p| !p.evaluate(&point).is_zero()) {
                continue;
            }
            let local = LocalSection::exact(shifted(&g, &point), m)?;
            let v = classify_critical(&local)?;
            let rational = point.iter().all(|&a| ext.pow(a, q as u128) == a);
            records.push(CriticalRecord {
                chart,
                point: point.iter().map(|&a| ext.digits(a)).collect(),
                degree: if rational { 1 } else { 2 },
                taxonomy: v.taxonomy,
                case: v.case,
                admissible: v.admissible,
            });
        }
    }
    let mut taxonomy_counts = BTreeMap::new();
    for r in &records {
        *taxonomy_counts
            .entry(taxonomy_name(r.taxonomy))
            .or_insert(0) += 1;
    }
    Ok(SampleReport {
        index,
        injected,
        all_admissible: records.iter().all(|r| r.admissible),
        critical_points: records,
        taxonomy_counts,
    })
}

/// Runs `params.samples` random sections, then each `injected` form (over
/// the base field, homogeneous of degree `d` in 4 variables) as an extra
/// sample. Samples run in parallel and are merged by index.
pub fn run_census(params: &CensusParams, injected: &[MultiPoly]) -> Result<CensusReport, CliError> {
    let (base, ext) = check(params)?;
    let q = base.size();
    for s in injected {
        if s.field() != &base
            || s.nvars() != 4
            || !s.is_homogeneous()
            || s.total_degree() != Some(params.d)
        {
            return Err(CliError::Schema(format!(
                "injected sections must be degree-{} forms in 4 variables over F_{q}",
                params.d
            )));
        }
    }
    let forms: Vec<(MultiPoly, bool)> = (0..params.samples)
        .map(|i| (random_form(&base, params.d, params.seed, i), false))
        .chain(injected.iter().map(|s| (s.clone(), true)))
        .collect();
    let samples: Vec<SampleReport> = forms
        .par_iter()
        .enumerate()
        .map(|(i, (s, inj))| sample(s, i, *inj, &ext, q, params.m))
        .collect::<Result<_, _>>()?;
    let all_admissible_count = samples.iter().filter(|s| s.all_admissible).count();
    let vacuous_count = samples
        .iter()
        .filter(|s| s.critical_points.is_empty())
        .count();
    let mut taxonomy_counts = BTreeMap::new();
    for s in &samples {
        for (k, v) in &s.taxonomy_counts {
            *taxonomy_counts.entry(k.clone()).or_insert(0) += v;
        }
    }
    let regime = if params.n % 2 == 1 && params.p == 2 && params.m > 2 {
        "n odd, p = 2, m > 2: almost nondegenerate critical points with the associated quadric checked".into()
    } else {
        "nondegeneracy (or almost nondegeneracy) alone".into()
    };
    Ok(CensusReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        params: *params,
        field_size: q,
        search_field_size: ext.size(),
        regime,
        all_admissible_fraction: if samples.is_empty() {
            0.0
        } else {
            all_admissible_count as f64 / samples.len() as f64
        },
        critical_points_total: samples.iter().map(|s| s.critical_points.len()).sum(),
        all_admissible_count,
        vacuous_count,
        samples,
        taxonomy_counts,
        notes: vec![
            format!("critical points searched over F_{} only", ext.size()),
            "samples without a found critical point count as all-admissible".into(),
            "the 0.5 acceptance threshold on the fraction is a regression pin, not a theorem"
                .into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;

    fn params(samples: usize) -> CensusParams {
        CensusParams {
            n: 3,
            d: 4,
            p: 2,
            k: 1,
            m: 4,
            samples,
            seed: 3,
        }
    }

    #[test]
    fn empty_census() {
        let r = run_census(&params(0), &[]).unwrap();
        assert!(r.samples.is_empty());
        assert_eq!(r.all_admissible_count, 0);
        assert_eq!(r.critical_points_total, 0);
    }

    #[test]
    fn injected_degenerate_point_is_flagged() {
        let f = make_field(2, 1).unwrap();
        // chart X0: x2 x3 + x1^3, a degenerate critical point at the origin
        let s = poly(&f, 4, &[(&[2, 0, 1, 1], 1), (&[1, 3, 0, 0], 1)]);
        let r = run_census(&params(2), &[s]).unwrap();
        let inj = &r.samples[2];
        assert!(inj.injected && !inj.all_admissible);
        let origin = vec![vec![0u64; 2]; 3];
        assert!(inj
            .critical_points
            .iter()
            .any(|c| c.chart == 0 && c.point == origin && !c.admissible));
    }

    #[test]
    fn rejects_large_fields() {
        let p = CensusParams { k: 4, ..params(1) };
        assert!(run_census(&p, &[]).is_err());
    }
}
