//! Matching `F = y^K (1 + x_1) + q + y^K (l + g) + y^{2K} h`, the germs met
//! midway through the characteristic-2 resolution.

use serde::{Deserialize, Serialize};

use crate::classify::standard_quadric;
use crate::field::Elem;
use crate::poly::{Monomial, MultiPoly};

/// Which tail shape matched. `YkTypeTwo` is `y^K h` with `h` of type
/// `(2; K)`; `Y2k` is `y^{2K} h` with `h` arbitrary. The first implies the
/// second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailShape {
    YkTypeTwo,
    Y2k,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeMatch {
    pub k: u32,
    /// Linear form in `x_2..x_n`.
    pub linear: MultiPoly,
    /// Terms of x-degree at least 2.
    pub g: MultiPoly,
    pub h: MultiPoly,
    pub shape: TailShape,
}

/// Returns the decomposition, or the part of `F - y^K(1+x_1) - q` fitting
/// neither tail shape.
pub fn match_type(eq: &MultiPoly, n: usize, k: u32) -> Result<TypeMatch, MultiPoly> {
    let f = eq.field();
    let nv = n + 1;
    let y = n;
    let lead = MultiPoly::from_terms(
        f,
        nv,
        [
            (Monomial::var(y, k as u16), Elem::ONE),
            (
                Monomial::var(y, k as u16)
                    .checked_mul(&Monomial::var(0, 1))
                    .expect("small"),
                Elem::ONE,
            ),
        ],
    );
    let q = standard_quadric(f, n, nv, (n % 2 == 1).then_some(Elem::ONE));
    let rest = &(eq - &lead) - &q;
    let mut lin = Vec::new();
    let mut g = Vec::new();
    let mut h = Vec::new();
    let mut bad = Vec::new();
    let mut literal = true;
    for &(m, c) in rest.terms() {
        let j = m.exp(y) as u32;
        let xd = m.degree() - j;
        if j < k {
            bad.push((m, c));
            continue;
        }
        let r = m.with_exp(y, (j - k) as u16);
        let jr = j - k;
        if jr == 0 && xd == 1 && m.exp(0) == 0 {
            lin.push((r, c));
        } else if xd >= 2 {
            g.push((r, c));
        } else if jr >= k {
            // y^{2K} h, h = r / y^K
            if xd == 1 {
                literal = false;
            }
            h.push((r.with_exp(y, (jr - k) as u16), c));
        } else {
            bad.push((m, c));
        }
    }
    if !bad.is_empty() {
        return Err(MultiPoly::from_terms(f, nv, bad));
    }
    Ok(TypeMatch {
        k,
        linear: MultiPoly::from_terms(f, nv, lin),
        g: MultiPoly::from_terms(f, nv, g),
        h: MultiPoly::from_terms(f, nv, h),
        shape: if literal {
            TailShape::YkTypeTwo
        } else {
            TailShape::Y2k
        },
    })
}
