//! Seeded normal-form germs for fixtures and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::standard_quadric;
use crate::field::{make_field, Elem, FieldTower};
use crate::germ::Case;
use crate::poly::{Monomial, MultiPoly};

use super::{CliError, InstanceMode, InstanceSpec, RunOptions, SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenKind {
    #[serde(rename = "caseA")]
    CaseA,
    #[serde(rename = "caseB")]
    CaseB,
    #[serde(rename = "inadmissible")]
    Inadmissible,
}

impl std::str::FromStr for GenKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "caseA" => Ok(GenKind::CaseA),
            "caseB" => Ok(GenKind::CaseB),
            "inadmissible" => Ok(GenKind::Inadmissible),
            _ => Err(format!("unknown kind {s} (caseA, caseB, inadmissible)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    pub p: u64,
    pub k: usize,
    pub d: u32,
    pub seed: u64,
}

fn random_elem(rng: &mut ChaCha8Rng, f: &FieldTower, nonzero: bool) -> Elem {
    let lo = u64::from(nonzero);
    f.element(rng.gen_range(lo..f.size())).expect("in range")
}

/// A random monomial in `x_1..x_n` of the given total degree.
fn random_x_monomial(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u16; n + 1];
    for _ in 0..degree {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(&exps)
}

fn with_y(m: Monomial, n: usize, j: u16) -> Monomial {
    m.checked_mul(&Monomial::var(n, j))
        .expect("small exponents")
}

fn check(params: &GenParams) -> Result<FieldTower, CliError> {
    let GenParams {
        kind, n, p, k, d, ..
    } = *params;
    let bad = |s: String| Err(CliError::ParamOutOfRange(s));
    if !(3..=6).contains(&n) {
        return bad(format!("n = {n} (need 3..=6)"));
    }
    if !(2..=16).contains(&d) {
        return bad(format!("d = {d} (need 2..=16)"));
    }
    let f = make_field(p, k)?;
    if f.size() > 64 {
        return bad(format!("q = {} (need q <= 64)", f.size()));
    }
    if !(d as u64).is_multiple_of(p) {
        return bad(format!("p = {p} does not divide d = {d}"));
    }
    let case = Case::of(n, p);
    match kind {
        GenKind::CaseA if case != Case::A => bad("caseA needs n even or p odd".into()),
        GenKind::CaseB | GenKind::Inadmissible if case != Case::B => {
            bad(format!("{kind:?} needs n odd and p = 2"))
        }
        GenKind::Inadmissible if d < 4 => bad("inadmissible germs need d >= 4".into()),
        _ => Ok(f),
    }
}

/// The germ equation for `params`, deterministic in the seed.
///
/// Case A: `y^d + q + gamma_2 y^{2d} + f(x)` with `f` of x-degree 3 and 4.
/// Case B: `y^d + x1^2 + q' + x1^3 + c + f`, `c` a cubic without `x1^3`
/// and `f` of type `(4; 2d)`. The inadmissible kind drops `x1^2`.
pub fn gen_equation(params: &GenParams) -> Result<MultiPoly, CliError> {
    let f = check(params)?;
    let GenParams {
        kind, n, d, seed, ..
    } = *params;
    let nv = n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = match kind {
        GenKind::CaseA => None,
        GenKind::CaseB => Some(Elem::ONE),
        GenKind::Inadmissible => Some(Elem::ZERO),
    };
    let beta = if n % 2 == 1 {
        beta.or(Some(Elem::ONE))
    } else {
        None
    };
    let mut terms: Vec<(Monomial, Elem)> = vec![(Monomial::var(n, d as u16), Elem::ONE)];
    let mut eq = &MultiPoly::from_terms(&f, nv, terms.clone()) + &standard_quadric(&f, n, nv, beta);
    terms.clear();
    match kind {
        GenKind::CaseA => {
            terms.push((
                Monomial::var(n, 2 * d as u16),
                random_elem(&mut rng, &f, false),
            ));
            for deg in [3, 3, 4, 4] {
                let m = random_x_monomial(&mut rng, n, deg);
                terms.push((m, random_elem(&mut rng, &f, true)));
            }
        }
        GenKind::CaseB | GenKind::Inadmissible => {
            terms.push((Monomial::var(0, 3), Elem::ONE));
            for _ in 0..2 {
                let m = random_x_monomial(&mut rng, n, 3);
                if m != Monomial::var(0, 3) {
                    terms.push((m, random_elem(&mut rng, &f, true)));
                }
            }
            // f of type (4; 2d)
            for _ in 0..2 {
                let deg = rng.gen_range(4..=5);
                let j = rng.gen_range(0..=2);
                let m = with_y(random_x_monomial(&mut rng, n, deg), n, j);
                terms.push((m, random_elem(&mut rng, &f, true)));
            }
            let j = rng.gen_range(2 * d..=2 * d + 2);
            terms.push((Monomial::var(n, j as u16), random_elem(&mut rng, &f, false)));
        }
    }
    eq = &eq + &MultiPoly::from_terms(&f, nv, terms);
    Ok(eq)
}

pub fn gen_instance(params: &GenParams) -> Result<InstanceSpec, CliError> {
    let eq = gen_equation(params)?;
    Ok(InstanceSpec {
        schema: SCHEMA,
        mode: InstanceMode::Resolve,
        kind: Some(params.kind),
        field: eq.field().descriptor(),
        n: params.n,
        m: params.d,
        germ: Some(eq.to_json()),
        section: None,
        order: None,
        seed: params.seed,
        options: RunOptions {
            warn: params.kind == GenKind::Inadmissible,
            report: None,
        },
    })
}
