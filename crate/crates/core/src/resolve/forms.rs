//! `(n-1)`-forms written in the basis `theta_1..theta_{n-1}, theta_y`, and
//! the local generator `eta` of the canonical-type sheaf on the germ.
//!
//! In the `y`-chart of a point blowup,
//! `theta_i -> y^{n-3} theta_i` and
//! `theta_y -> y^{n-2} (theta_1 + ... + theta_{n-1} + theta_y)`.

use std::collections::BTreeMap;

use crate::germ::Germ;
use crate::poly::{Monomial, MultiPoly};

use super::ResolveError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaForm {
    pub n: usize,
    /// Coefficients of `theta_1..theta_{n-1}`.
    pub f: Vec<MultiPoly>,
    /// Coefficient of `theta_y`.
    pub g: MultiPoly,
}

impl ThetaForm {
    pub fn zero(like: &MultiPoly, n: usize) -> Self {
        let z = MultiPoly::zero(like.field(), like.nvars());
        ThetaForm {
            n,
            f: vec![z.clone(); n - 1],
            g: z,
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &MultiPoly> {
        self.f.iter().chain(std::iter::once(&self.g))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().all(MultiPoly::is_zero)
    }

    /// Least power of `y` dividing every coefficient; `None` for the zero form.
    pub fn y_valuation(&self) -> Option<u16> {
        let y = self.n;
        self.coefficients()
            .filter(|c| !c.is_zero())
            .map(|c| c.valuation_in(y))
            .min()
    }

    /// Applies a coordinate substitution to every coefficient.
    pub fn substitute(&self, images: &[MultiPoly]) -> ThetaForm {
        let sub = |p: &MultiPoly| p.substitute(images).expect("arity");
        ThetaForm {
            n: self.n,
            f: self.f.iter().map(sub).collect(),
            g: sub(&self.g),
        }
    }
}

fn y_power(like: &MultiPoly, n: usize, e: u32) -> MultiPoly {
    MultiPoly::monomial(
        like.field(),
        like.nvars(),
        Monomial::var(n, e as u16),
        crate::field::Elem::ONE,
    )
}

/// `eta` after the first blowup, in theta coordinates: every coefficient is
/// `y^{n-3}`. Fails when `dF/dx_n` has no linear part, since then `eta`'s
/// denominator vanishes to higher order at the point.
pub fn eta_initial(g: &Germ) -> Result<ThetaForm, ResolveError> {
    let n = g.n;
    if n < 3 {
        return Err(ResolveError::DimensionTooSmall(n));
    }
    let den = g.equation.partial_derivative(n - 1);
    if den.homogeneous_part(1).is_zero() {
        return Err(ResolveError::DenominatorVanishes);
    }
    let c = y_power(&g.equation, n, n as u32 - 3);
    Ok(ThetaForm {
        n,
        f: vec![c.clone(); n - 1],
        g: c,
    })
}

/// Pullback along the `y`-chart of a blowup at the chart origin.
pub fn theta_pullback(w: &ThetaForm) -> ThetaForm {
    let n = w.n;
    let Some(like) = w.f.first().or(Some(&w.g)) else {
        unreachable!()
    };
    let y3 = y_power(like, n, n as u32 - 3);
    let y2 = y_power(like, n, n as u32 - 2);
    let gs = &w.g.star() * &y2;
    ThetaForm {
        n,
        f: w.f.iter().map(|fi| &(&fi.star() * &y3) + &gs).collect(),
        g: gs,
    }
}

/// Differential forms in `dx_1..dx_n` with polynomial coefficients, keyed
/// by the bitmask of the wedge factors (in increasing order).
#[derive(Clone, Debug, PartialEq, Eq)]
struct ExtForm(BTreeMap<u32, MultiPoly>);

impl ExtForm {
    fn basis(mask: u32, c: MultiPoly) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(mask, c);
        }
        ExtForm(m)
    }

    fn add(&self, other: &ExtForm) -> ExtForm {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            let s = match out.get(k) {
                Some(a) => a + v,
                None => v.clone(),
            };
            if s.is_zero() {
                out.remove(k);
            } else {
                out.insert(*k, s);
            }
        }
        ExtForm(out)
    }

    fn scale(&self, c: &MultiPoly) -> ExtForm {
        ExtForm(
            self.0
                .iter()
                .map(|(k, v)| (*k, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    fn wedge(&self, other: &ExtForm) -> ExtForm {
        let mut out = ExtForm(BTreeMap::new());
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                if a & b != 0 {
                    continue;
                }
                // sign of merging the sorted factor lists
                let mut swaps = 0u32;
                for i in 0..32 {
                    if b >> i & 1 == 1 {
                        swaps += (a >> (i + 1)).count_ones();
                    }
                }
                let mut c = ca * cb;
                if swaps % 2 == 1 {
                    c = c.neg();
                }
                out = out.add(&ExtForm::basis(a | b, c));
            }
        }
        out
    }
}

/// Checks `F_j omega_i - (-1)^{i+j} F_i omega_j = (-1)^j w ^ omega_{ij}` for all
/// `i < j`, where `omega_S` omits `dx_S` and `w = sum F_k dx_k` is the
/// differential of the equation (so the local generators
/// `eta_i = (-1)^i omega_i / F_i` agree up to sign on the hypersurface).
/// Requires `dF/dy = 0`.
pub fn eta_consistency(g: &Germ) -> bool {
    let n = g.n;
    let eq = &g.equation;
    if !eq.partial_derivative(n).is_zero() {
        return false;
    }
    let one = MultiPoly::one(eq.field(), eq.nvars());
    let partials: Vec<MultiPoly> = (0..n).map(|k| eq.partial_derivative(k)).collect();
    let full = (1u32 << n) - 1;
    let w = (0..n).fold(ExtForm(BTreeMap::new()), |acc, k| {
        acc.add(&ExtForm::basis(1 << k, partials[k].clone()))
    });
    let omega = |omit: u32| ExtForm::basis(full & !omit, one.clone());
    for i in 0..n {
        for j in i + 1..n {
            // 1-based signs: (-1)^{(i+1)+(j+1)} = (-1)^{i+j}
            let mut lhs = omega(1 << i).scale(&partials[j]);
            let mut second = omega(1 << j).scale(&partials[i]);
            if (i + j) % 2 == 1 {
                second = second.scale(&one.neg());
            }
            lhs = lhs.add(&second.scale(&one.neg()));
            let mut rhs = w.wedge(&omega((1 << i) | (1 << j)));
            if (j + 1) % 2 == 1 {
                rhs = rhs.scale(&one.neg());
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::poly;

    #[test]
    fn pullback_examples() {
        let f = make_field(2, 1).unwrap();
        // n = 3: theta_y -> y (theta_1 + theta_2 + theta_y)
        let z = MultiPoly::zero(&f, 4);
        let w = ThetaForm {
            n: 3,
            f: vec![z.clone(), z.clone()],
            g: MultiPoly::one(&f, 4),
        };
        let p = theta_pullback(&w);
        let y = MultiPoly::var(&f, 4, 3);
        assert_eq!(p.f, vec![y.clone(), y.clone()]);
        assert_eq!(p.g, y);
        assert!(theta_pullback(&ThetaForm::zero(&z, 3)).is_zero());
        // n = 5: theta_1 -> y^2 theta_1
        let z6 = MultiPoly::zero(&f, 6);
        let mut fs = vec![z6.clone(); 4];
        fs[0] = MultiPoly::one(&f, 6);
        let p = theta_pullback(&ThetaForm { n: 5, f: fs, g: z6 });
        assert_eq!(p.f[0], poly(&f, 6, &[(&[0, 0, 0, 0, 0, 2], 1)]));
        assert!(p.f[1..].iter().all(MultiPoly::is_zero) && p.g.is_zero());
    }

    #[test]
    fn eta_after_first_blowup() {
        let f = make_field(2, 1).unwrap();
        let eq = poly(
            &f,
            4,
            &[(&[0, 0, 0, 4], 1), (&[2, 0, 0, 0], 1), (&[0, 1, 1, 0], 1)],
        );
        let g = Germ::new(3, eq).unwrap();
        let w = eta_initial(&g).unwrap();
        assert!(w.coefficients().all(|c| *c == MultiPoly::one(&f, 4)));
        assert_eq!(w.y_valuation(), Some(0));
        assert!(eta_consistency(&g));
    }

    #[test]
    fn eta_denominator_must_have_linear_part() {
        let f = make_field(3, 1).unwrap();
        let eq = poly(
            &f,
            5,
            &[
                (&[0, 0, 0, 0, 3], 1),
                (&[1, 1, 0, 0, 0], 1),
                (&[0, 0, 3, 1, 0], 1),
            ],
        );
        let g = Germ::new(4, eq).unwrap();
        assert_eq!(eta_initial(&g), Err(ResolveError::DenominatorVanishes));
    }
}
