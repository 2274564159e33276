//! Projective quadrics `(Q = 0)`: singular locus and type.
//!
//! For odd `p` the singular locus is the kernel of the polar matrix. In
//! characteristic 2 the polar form is alternating and only its radical can
//! be singular; on the radical `Q` is Frobenius-semilinear,
//! `Q(sum a_i r_i) = sum a_i^2 Q(r_i)`, so the singular points form the kernel
//! of the linear functional `a -> sum a_i sqrt(Q(r_i))`.

use serde::{Deserialize, Serialize};

use super::GermError;
use crate::field::{Elem, FieldTower};
use crate::poly::linalg::Matrix;
use crate::poly::{contains_one, IdealBasis, Monomial, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadricClass {
    Nonsingular,
    /// Singular at exactly one point, normalized so its first nonzero
    /// coordinate is 1.
    ConeWithVertex(Vec<Elem>),
    /// `polar_rank` is the rank of the polar form; `singular_dim` the
    /// projective dimension of the singular locus.
    Degenerate {
        polar_rank: usize,
        singular_dim: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjQuadric {
    pub n_coords: usize,
    pub quad: MultiPoly,
    pub classification: QuadricClass,
}

impl ProjQuadric {
    pub fn new(quad: &MultiPoly) -> Result<Self, GermError> {
        let classification = classify_quadric(quad, quad.nvars())?;
        Ok(ProjQuadric {
            n_coords: quad.nvars(),
            quad: quad.clone(),
            classification,
        })
    }

    pub fn is_nonsingular(&self) -> bool {
        self.classification == QuadricClass::Nonsingular
    }
}

/// Symmetric matrix of the polar form `B(u, v) = Q(u+v) - Q(u) - Q(v)`.
pub fn polar_matrix(q: &MultiPoly) -> Matrix {
    let f = q.field();
    let n = q.nvars();
    let mut b = Matrix::zeros(n, n);
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
        match idx.as_slice() {
            [i] => b.set(*i, *i, f.add(*c, *c)),
            [i, j] => {
                b.set(*i, *j, *c);
                b.set(*j, *i, *c);
            }
            _ => unreachable!("degree-2 monomial"),
        }
    }
    b
}

fn check_quadratic(q: &MultiPoly, n_coords: usize) -> Result<(), GermError> {
    if q.is_zero() || q.nvars() != n_coords || q.terms().iter().any(|(m, _)| m.degree() != 2) {
        return Err(GermError::NotHomogeneousDegree2);
    }
    Ok(())
}

/// Basis of the linear subspace of singular points of `(Q = 0)`.
pub fn singular_subspace(q: &MultiPoly) -> Vec<Vec<Elem>> {
    let f = q.field();
    let radical = polar_matrix(q).kernel(f);
    if f.characteristic() != 2 {
        return radical;
    }
    let roots: Vec<Elem> = radical
        .iter()
        .map(|r| f.frobenius_root(q.evaluate(r)))
        .collect();
    let Some(pivot) = roots.iter().position(|r| !r.is_zero()) else {
        return radical;
    };
    let pr = roots[pivot];
    (0..radical.len())
        .filter(|&j| j != pivot)
        .map(|j| {
            let c = f.div(roots[j], pr).expect("nonzero pivot");
            radical[j]
                .iter()
                .zip(&radical[pivot])
                .map(|(&a, &b)| f.sub(a, f.mul(c, b)))
                .collect()
        })
        .collect()
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_point(f: &FieldTower, v: &[Elem]) -> Vec<Elem> {
    let lead = v
        .iter()
        .copied()
        .find(|x| !x.is_zero())
        .expect("nonzero vector");
    let inv = f.inv(lead).expect("nonzero");
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

pub fn classify_quadric(q: &MultiPoly, n_coords: usize) -> Result<QuadricClass, GermError> {
    check_quadratic(q, n_coords)?;
    let sing = singular_subspace(q);
    Ok(match sing.len() {
        0 => QuadricClass::Nonsingular,
        1 => QuadricClass::ConeWithVertex(normalize_point(q.field(), &sing[0])),
        s => QuadricClass::Degenerate {
            polar_rank: polar_matrix(q).rank(q.field()),
            singular_dim: s - 1,
        },
    })
}

/// Ideal of the singular locus of `(Q = 0)` on the affine chart `x_i = 1`.
fn chart_ideal(q: &MultiPoly, i: usize) -> Vec<MultiPoly> {
    let f = q.field();
    let n = q.nvars();
    let images: Vec<MultiPoly> = (0..n)
        .map(|j| {
            if j == i {
                MultiPoly::one(f, n)
            } else {
                MultiPoly::var(f, n, j)
            }
        })
        .collect();
    let mut gens = vec![q.clone()];
    gens.extend((0..n).map(|j| q.partial_derivative(j)));
    let mut out: Vec<MultiPoly> = gens
        .iter()
        .map(|g| g.substitute(&images).expect("arity"))
        .collect();
    // Pin the dehomogenized coordinate so zeros are points of the chart.
    out.push(MultiPoly::var(f, n, i));
    out
}

/// True iff every common zero of `ideal` equals `point`, certified with one
/// Rabinowitsch variable per coordinate. `point` must itself be a zero.
pub fn only_zero_is(ideal: &[MultiPoly], point: &[Elem]) -> bool {
    let Some(first) = ideal.first() else {
        return false;
    };
    let f = first.field();
    let n = first.nvars();
    if ideal.iter().any(|g| !g.evaluate(point).is_zero()) {
        return false;
    }
    let ext: Vec<MultiPoly> = ideal
        .iter()
        .map(|g| g.extend_vars(n + 1).expect("variable budget"))
        .collect();
    let t = MultiPoly::var(f, n + 1, n);
    (0..n).all(|j| {
        let shifted = &MultiPoly::var(f, n + 1, j) - &MultiPoly::constant(f, n + 1, point[j]);
        let rab = &MultiPoly::one(f, n + 1) - &(&t * &shifted);
        let mut gens = ext.clone();
        gens.push(rab);
        contains_one(&IdealBasis::new(gens))
    })
}

/// Gröbner cross-check of a classification over the algebraic closure,
/// chart by chart (`x_i = 1`).
pub fn certify_quadric(q: &MultiPoly, class: &QuadricClass) -> bool {
    let f = q.field();
    let n = q.nvars();
    match class {
        QuadricClass::Nonsingular => {
            (0..n).all(|i| contains_one(&IdealBasis::new(chart_ideal(q, i))))
        }
        QuadricClass::ConeWithVertex(v) => (0..n).all(|i| {
            let ideal = chart_ideal(q, i);
            if v[i].is_zero() {
                return contains_one(&IdealBasis::new(ideal));
            }
            let inv = f.inv(v[i]).expect("nonzero");
            let affine: Vec<Elem> = (0..n)
                .map(|j| if j == i { Elem::ZERO } else { f.mul(v[j], inv) })
                .collect();
            only_zero_is(&ideal, &affine)
        }),
        QuadricClass::Degenerate { .. } => {
            (0..n).any(|i| !contains_one(&IdealBasis::new(chart_ideal(q, i))))
        }
    }
}

/// A rational point of `(h = 0)` in projective space, searched over
/// coordinate vectors with entries in the prime field, small supports first.
pub fn rational_point(h: &MultiPoly) -> Option<Vec<Elem>> {
    let f = h.field();
    let n = h.nvars();
    let p = f.characteristic().min(5);
    for support in 1..=n.min(3) {
        let mut found = None;
        for_each_support(n, support, &mut |idx: &[usize]| {
            if found.is_some() {
                return;
            }
            let total = (p - 1).pow(support as u32 - 1);
            for code in 0..total {
                let mut v = vec![Elem::ZERO; n];
                v[idx[0]] = Elem::ONE;
                let mut c = code;
                for &j in &idx[1..] {
                    v[j] = f.from_int((c % (p - 1) + 1) as i64);
                    c /= p - 1;
                }
                if h.evaluate(&v).is_zero() {
                    found = Some(v);
                    return;
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn for_each_support(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), visit);
}

/// `x_i x_j` or `x_i^2` with a coefficient; used when assembling quadrics.
pub fn quad_term(f: &FieldTower, n: usize, i: usize, j: usize, c: Elem) -> MultiPoly {
    let m = Monomial::var(i, 1)
        .checked_mul(&Monomial::var(j, 1))
        .expect("small");
    MultiPoly::monomial(f, n, m, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::poly;

    #[test]
    fn char_two_examples() {
        let f = make_field(2, 1).unwrap();
        let q = poly(
            &f,
            5,
            &[
                (&[2, 0, 0, 0, 0], 1),
                (&[0, 1, 1, 0, 0], 1),
                (&[0, 0, 0, 1, 1], 1),
            ],
        );
        assert_eq!(classify_quadric(&q, 5).unwrap(), QuadricClass::Nonsingular);
        assert!(certify_quadric(&q, &QuadricClass::Nonsingular));

        let cone = poly(&f, 5, &[(&[0, 1, 1, 0, 0], 1), (&[0, 0, 0, 1, 1], 1)]);
        let class = classify_quadric(&cone, 5).unwrap();
        let e = |v: i64| f.from_int(v);
        assert_eq!(
            class,
            QuadricClass::ConeWithVertex(vec![e(1), e(0), e(0), e(0), e(0)])
        );
        assert!(certify_quadric(&cone, &class));
    }

    #[test]
    fn odd_characteristic_diagonal() {
        let f = make_field(3, 1).unwrap();
        let q = poly(&f, 3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        assert_eq!(classify_quadric(&q, 3).unwrap(), QuadricClass::Nonsingular);
    }

    #[test]
    fn degenerate_and_errors() {
        let f = make_field(2, 1).unwrap();
        let q = poly(&f, 3, &[(&[0, 1, 1], 1)]);
        // x2 x3 in P^2 is a pair of lines: singular at one point.
        assert!(matches!(
            classify_quadric(&q, 3).unwrap(),
            QuadricClass::ConeWithVertex(_)
        ));
        let q4 = poly(&f, 4, &[(&[0, 1, 1, 0], 1)]);
        assert_eq!(
            classify_quadric(&q4, 4).unwrap(),
            QuadricClass::Degenerate {
                polar_rank: 2,
                singular_dim: 1
            }
        );
        assert!(certify_quadric(&q4, &classify_quadric(&q4, 4).unwrap()));
        let cubic = poly(&f, 2, &[(&[3, 0], 1)]);
        assert_eq!(
            classify_quadric(&cubic, 2),
            Err(GermError::NotHomogeneousDegree2)
        );
    }

    #[test]
    fn radical_square_contributes() {
        // x1^2 + x2^2 + x3 x4 over F_4: (x1 + x2)^2 + x3 x4, vertex (1:1:0:0)
        let f = make_field(2, 2).unwrap();
        let q = poly(
            &f,
            4,
            &[(&[2, 0, 0, 0], 1), (&[0, 2, 0, 0], 1), (&[0, 0, 1, 1], 1)],
        );
        let one = f.one();
        assert_eq!(
            classify_quadric(&q, 4).unwrap(),
            QuadricClass::ConeWithVertex(vec![one, one, Elem::ZERO, Elem::ZERO])
        );
    }
}
