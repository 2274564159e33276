//! Linear coordinate changes bringing a quadratic form to the standard shape
//! `x1 x2 + x3 x4 + ...` (n even) or `beta x1^2 + x2 x3 + ...` (n odd).
//!
//! Odd `p`: orthogonal diagonalization, then each pair `a u^2 + b v^2` is
//! split as `(s u + t v)(s u - t v)` with `s^2 = a`, `t^2 = -b`. Leftover odd
//! coordinate is scaled to `x1^2`.
//!
//! `p = 2`: symplectic basis for the polar form, with the radical vector
//! `r` as `x1`. When `Q(r) != 0`, the squares `Q(e)` of each pair are
//! absorbed by `e -> e + sqrt(Q(e)/Q(r)) r`, which needs only Frobenius
//! roots. Otherwise each pair is made hyperbolic through a root of
//! `a t^2 + t + b`, which may require a field extension.

use crate::field::{Elem, FieldError, FieldTower};
use crate::germ::quadric::polar_matrix;
use crate::poly::linalg::Matrix;
use crate::poly::MultiPoly;

/// Columns `v_1..v_n` with `Q(sum x_i v_i)` in standard shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub basis: Vec<Vec<Elem>>,
    /// Coefficient of `x1^2` (n odd).
    pub beta: Option<Elem>,
}

impl Frame {
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis)
    }
}

fn bilinear(f: &FieldTower, b: &Matrix, u: &[Elem], v: &[Elem]) -> Elem {
    let bv = b.apply(f, v);
    u.iter()
        .zip(&bv)
        .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

fn axpy(f: &FieldTower, a: Elem, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| f.add(f.mul(a, xi), yi))
        .collect()
}

fn scale(f: &FieldTower, a: Elem, x: &[Elem]) -> Vec<Elem> {
    x.iter().map(|&xi| f.mul(a, xi)).collect()
}

fn unit_vectors(n: usize) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Elem::ZERO; n];
            v[i] = Elem::ONE;
            v
        })
        .collect()
}

/// `Ok(None)` when the form is too degenerate for the standard shape;
/// `Err(NoRoot)` when a needed root lies outside the field.
pub fn standard_frame(q: &MultiPoly) -> Result<Option<Frame>, FieldError> {
    if q.field().characteristic() == 2 {
        frame_char2(q)
    } else {
        frame_odd(q)
    }
}

fn frame_odd(q: &MultiPoly) -> Result<Option<Frame>, FieldError> {
    let f = q.field();
    let n = q.nvars();
    let b = polar_matrix(q);
    let two = f.from_int(2);
    let half = f.inv(two).expect("odd characteristic");
    let qv = |v: &[Elem]| f.mul(half, bilinear(f, &b, v, v));

    let mut work = unit_vectors(n);
    let mut diag: Vec<(Vec<Elem>, Elem)> = Vec::new();
    while !work.is_empty() {
        let mut pick = (0..work.len()).find(|&i| !qv(&work[i]).is_zero());
        if pick.is_none() {
            // all diagonal values vanish: w_i + w_j has Q = B(w_i, w_j)
            'outer: for i in 0..work.len() {
                for j in i + 1..work.len() {
                    if !bilinear(f, &b, &work[i], &work[j]).is_zero() {
                        work[i] = axpy(f, Elem::ONE, &work[i], &work[j]);
                        pick = Some(i);
                        break 'outer;
                    }
                }
            }
        }
        let pick = pick.map(|i| work.remove(i));
        let Some(u) = pick else {
            return Ok(None);
        };
        let a = qv(&u);
        let buu = bilinear(f, &b, &u, &u);
        for w in work.iter_mut() {
            let c = f.div(bilinear(f, &b, w, &u), buu).expect("nonzero");
            *w = axpy(f, f.neg(c), &u, w);
        }
        diag.push((u, a));
    }

    let mut basis = Vec::with_capacity(n);
    let mut rest: &[(Vec<Elem>, Elem)] = &diag;
    if n % 2 == 1 {
        let (u, a) = &diag[n - 1];
        let s = f.mth_root(*a, 2)?;
        basis.push(scale(f, f.inv(s).expect("nonzero"), u));
        rest = &diag[..n - 1];
    }
    for pair in rest.chunks(2) {
        let (v1, a) = &pair[0];
        let (v2, bb) = &pair[1];
        let s = f.mth_root(*a, 2)?;
        let t = f.mth_root(f.neg(*bb), 2)?;
        let c1 = f.inv(f.mul(two, s)).expect("nonzero");
        let c2 = f.inv(f.mul(two, t)).expect("nonzero");
        let w1 = scale(f, c1, v1);
        let w2 = scale(f, c2, v2);
        basis.push(axpy(f, Elem::ONE, &w1, &w2));
        basis.push(axpy(f, f.neg(Elem::ONE), &w2, &w1));
    }
    Ok(Some(Frame {
        basis,
        beta: (n % 2 == 1).then_some(Elem::ONE),
    }))
}

fn frame_char2(q: &MultiPoly) -> Result<Option<Frame>, FieldError> {
    let f = q.field();
    let n = q.nvars();
    let b = polar_matrix(q);
    let bil = |u: &[Elem], v: &[Elem]| bilinear(f, &b, u, v);

    let mut work = unit_vectors(n);
    let mut pairs: Vec<(Vec<Elem>, Vec<Elem>)> = Vec::new();
    loop {
        let mut found = None;
        'outer: for i in 0..work.len() {
            for j in i + 1..work.len() {
                if !bil(&work[i], &work[j]).is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = found else { break };
        let bij = bil(&work[i], &work[j]);
        let e = work[i].clone();
        let fv = scale(f, f.inv(bij).expect("nonzero"), &work[j]);
        work.remove(j);
        work.remove(i);
        for w in work.iter_mut() {
            let (bwf, bwe) = (bil(w, &fv), bil(w, &e));
            let t = axpy(f, bwf, &e, w);
            *w = axpy(f, bwe, &fv, &t);
        }
        pairs.push((e, fv));
    }
    let expected_radical = n % 2;
    if work.len() != expected_radical {
        return Ok(None);
    }
    let radical = work.pop();
    let beta = radical.as_ref().map(|r| q.evaluate(r));

    let mut basis = Vec::with_capacity(n);
    match (&radical, beta) {
        (Some(r), Some(beta)) if !beta.is_zero() => {
            let sb = f.frobenius_root(beta);
            let r1 = scale(f, f.inv(sb).expect("nonzero"), r);
            basis.push(r1.clone());
            // Q(r1) = 1 now.
            for (e, fv) in pairs {
                let ce = f.frobenius_root(q.evaluate(&e));
                let cf = f.frobenius_root(q.evaluate(&fv));
                basis.push(axpy(f, ce, &r1, &e));
                basis.push(axpy(f, cf, &r1, &fv));
            }
            return Ok(Some(Frame {
                basis,
                beta: Some(Elem::ONE),
            }));
        }
        (Some(r), _) => basis.push(r.clone()),
        (None, _) => {}
    }
    for (e, fv) in pairs {
        let (a, bb) = (q.evaluate(&e), q.evaluate(&fv));
        let (e1, f1) = if a.is_zero() {
            (e.clone(), axpy(f, bb, &e, &fv))
        } else {
            let t = f
                .find_root(&[bb, Elem::ONE, a])
                .ok_or(FieldError::NoRoot { m: 2, q: f.size() })?;
            let iso = axpy(f, t, &e, &fv);
            let other = axpy(f, a, &iso, &e);
            (iso, other)
        };
        basis.push(e1);
        basis.push(f1);
    }
    Ok(Some(Frame { basis, beta }))
}

/// The standard quadric in `nvars` variables (the first `n` used).
pub fn standard_quadric(f: &FieldTower, n: usize, nvars: usize, beta: Option<Elem>) -> MultiPoly {
    use crate::germ::quadric::quad_term;
    let mut q = MultiPoly::zero(f, nvars);
    let start = if n % 2 == 1 {
        q = &q + &quad_term(f, nvars, 0, 0, beta.unwrap_or(Elem::ONE));
        1
    } else {
        0
    };
    let mut i = start;
    while i + 1 < n {
        q = &q + &quad_term(f, nvars, i, i + 1, Elem::ONE);
        i += 2;
    }
    q
}

/// `g(A x)` for a polynomial in the first `A.rows` variables.
pub fn linear_change(g: &MultiPoly, a: &Matrix) -> MultiPoly {
    let f = g.field();
    let nv = g.nvars();
    let images: Vec<MultiPoly> = (0..nv)
        .map(|i| {
            if i >= a.rows {
                return MultiPoly::var(f, nv, i);
            }
            (0..a.cols).fold(MultiPoly::zero(f, nv), |acc, j| {
                &acc + &MultiPoly::monomial(f, nv, crate::poly::Monomial::var(j, 1), a.get(i, j))
            })
        })
        .collect();
    g.substitute(&images).expect("arity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::poly;

    fn check(q: &MultiPoly, n: usize) -> Frame {
        let fr = standard_frame(q).unwrap().unwrap();
        let changed = linear_change(q, &fr.matrix());
        assert_eq!(changed, standard_quadric(q.field(), n, n, fr.beta));
        fr
    }

    #[test]
    fn odd_characteristic_pairs() {
        let f = make_field(5, 1).unwrap();
        // x1^2 + x2^2 + x3^2 + x4^2 over F_5 (-1 is a square)
        let q = poly(
            &f,
            4,
            &[
                (&[2, 0, 0, 0], 1),
                (&[0, 2, 0, 0], 1),
                (&[0, 0, 2, 0], 1),
                (&[0, 0, 0, 2], 1),
            ],
        );
        check(&q, 4);
        let q3 = poly(&f, 3, &[(&[1, 1, 0], 1), (&[0, 0, 2], 2)]);
        assert!(standard_frame(&q3).is_err() || check(&q3, 3).beta == Some(f.one()));
    }

    #[test]
    fn char_two_radical_absorbs_squares() {
        let f = make_field(2, 1).unwrap();
        // x1^2 + x2^2 + x2 x3 + x3^2: beta != 0, no extension needed
        let q = poly(
            &f,
            3,
            &[
                (&[2, 0, 0], 1),
                (&[0, 2, 0], 1),
                (&[0, 1, 1], 1),
                (&[0, 0, 2], 1),
            ],
        );
        let fr = check(&q, 3);
        assert_eq!(fr.beta, Some(f.one()));
    }

    #[test]
    fn char_two_anisotropic_plane_needs_extension() {
        let f2 = make_field(2, 1).unwrap();
        let q = poly(&f2, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        assert!(matches!(standard_frame(&q), Err(FieldError::NoRoot { .. })));
        let f4 = make_field(2, 2).unwrap();
        let q4 = poly(&f4, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        check(&q4, 2);
    }

    #[test]
    fn degenerate_forms_have_no_frame() {
        let f = make_field(2, 1).unwrap();
        let q = poly(&f, 3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert_eq!(standard_frame(&q).unwrap(), None);
    }
}
