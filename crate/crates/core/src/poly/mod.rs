//! Sparse multivariate polynomials over a [`FieldTower`].
//!
//! Germ equations live in `k[x_1, ..., x_n, y]` with `y` the last variable;
//! sections live in `k[x_1, ..., x_n]`. Terms are kept sorted ascending in
//! grevlex, so the leading term is the last one.

mod groebner;
pub mod linalg;
mod monomial;

pub use groebner::{buchberger, contains_one, normal_form, IdealBasis};
pub use monomial::{Monomial, MAX_VARS};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::field::{Elem, FieldEmbedding, FieldError, FieldTower};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomials are defined over different fields")]
    FieldMismatch,
    #[error("exponent overflow (limit {})", u16::MAX)]
    ExponentOverflow,
    #[error("term with exponents {0:?} is not divisible by the divisor")]
    InexactDivision(Vec<u16>),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Predicate of a polynomial "of type (a; b)": every monomial has x-degree
/// at least `a`, or is a pure power `y^j` with `j >= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialType {
    pub a: u32,
    pub b: u32,
}

#[derive(Clone)]
pub struct MultiPoly {
    field: FieldTower,
    nvars: usize,
    terms: Vec<(Monomial, Elem)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field == other.field && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(field: &FieldTower, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MultiPoly {
            field: field.clone(),
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: &FieldTower, nvars: usize, c: Elem) -> Self {
        Self::monomial(field, nvars, Monomial::ONE, c)
    }

    pub fn one(field: &FieldTower, nvars: usize) -> Self {
        Self::constant(field, nvars, Elem::ONE)
    }

    pub fn var(field: &FieldTower, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(field, nvars, Monomial::var(i, 1), Elem::ONE)
    }

    pub fn monomial(field: &FieldTower, nvars: usize, m: Monomial, c: Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(
        field: &FieldTower,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        Self::from_map(field, nvars, acc)
    }

    fn from_map(field: &FieldTower, nvars: usize, acc: HashMap<Monomial, Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        MultiPoly {
            field: field.clone(),
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Elem {
        self.coefficient(&Monomial::ONE)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Elem)> {
        self.terms.last()
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1)
            .unwrap_or(Elem::ZERO)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .max()
            .unwrap_or(0)
    }

    /// Largest power of `var` dividing every term (0 for the zero polynomial).
    pub fn valuation_in(&self, var: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .min()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.total_degree()
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, Elem::ONE, &Monomial::ONE))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                let e = acc.entry(m).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(f, self.nvars, acc))
    }

    /// `self + c * m * other`, assuming compatible operands.
    fn merge(&self, other: &MultiPoly, c: Elem, m: &Monomial) -> MultiPoly {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(mb, cb)| (mb.checked_mul(m).expect("exponent overflow"), f.mul(*cb, c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ma, ca)), Some(&(mb, cb))) => match ma.cmp(&mb) {
                    std::cmp::Ordering::Less => {
                        out.push((ma, ca));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        if !cb.is_zero() {
                            out.push((mb, cb));
                        }
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let s = f.add(ca, cb);
                        if !s.is_zero() {
                            out.push((ma, s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&t), None) => {
                    out.push(t);
                    a.next();
                }
                (None, Some(&(mb, cb))) => {
                    if !cb.is_zero() {
                        out.push((mb, cb));
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: out,
        }
    }

    /// `self - c * m * other`.
    pub(crate) fn sub_scaled(&self, c: Elem, m: &Monomial, other: &MultiPoly) -> MultiPoly {
        self.merge(other, self.field.neg(c), m)
    }

    pub fn scale(&self, c: Elem) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<MultiPoly, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| t.checked_mul(m).map(|t| (t, *c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(PolyError::ExponentOverflow)?;
        Ok(MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading coefficient scaled to one.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some(&(_, c)) => self.scale(self.field.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &x) in point.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u128));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Simultaneous substitution `x_i -> images[i]`, fully expanded.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let Some(target) = images.first() else {
            return Ok(self.clone());
        };
        let nv = target.nvars;
        for img in images {
            if img.nvars != nv {
                return Err(PolyError::ArityMismatch {
                    expected: nv,
                    found: img.nvars,
                });
            }
            if img.field != self.field {
                return Err(PolyError::FieldMismatch);
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|img| vec![MultiPoly::one(&self.field, nv), img.clone()])
            .collect();
        let mut acc = MultiPoly::zero(&self.field, nv);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&self.field, nv, *c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw[pw.len() - 1].try_mul(&pw[1])?;
                    pw.push(next);
                }
                term = term.try_mul(&pw[e])?;
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative; exponent factors are reduced mod p.
    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        let f = &self.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(var);
            if e == 0 {
                return None;
            }
            let factor = f.from_int(e as i64);
            Some((m.with_exp(var, e - 1), f.mul(*c, factor)))
        });
        MultiPoly::from_terms(f, self.nvars, terms)
    }

    pub fn homogeneous_part(&self, degree: u32) -> MultiPoly {
        self.filter_terms(|m| m.degree() == degree)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .copied()
                .collect(),
        }
    }

    /// `(d, f_d, f_{>d})` with `d` the least total degree present.
    pub fn lowest_degree_part(&self) -> Result<(u32, MultiPoly, MultiPoly), PolyError> {
        let d = self.min_degree().ok_or(PolyError::ZeroPolynomial)?;
        Ok((
            d,
            self.filter_terms(|m| m.degree() == d),
            self.filter_terms(|m| m.degree() > d),
        ))
    }

    fn x_degree(&self, m: &Monomial) -> u32 {
        m.partial_degree(0..self.nvars - 1)
    }

    /// Type (a; b) test with the last variable playing the role of `y`.
    pub fn is_of_type(&self, t: MonomialType) -> bool {
        let y = self.nvars - 1;
        self.terms.iter().all(|(m, _)| {
            let xd = self.x_degree(m);
            xd >= t.a || (xd == 0 && m.exp(y) as u32 >= t.b)
        })
    }

    /// `h* = h(x_1 y, ..., x_n y, y)`.
    pub fn star(&self) -> MultiPoly {
        self.try_star().expect("exponent overflow")
    }

    pub fn try_star(&self) -> Result<MultiPoly, PolyError> {
        let y = self.nvars - 1;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let xd = self.x_degree(m);
                let e = (m.exp(y) as u32 + xd)
                    .try_into()
                    .map_err(|_| PolyError::ExponentOverflow)?;
                Ok((m.with_exp(y, e), *c))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        Ok(MultiPoly::from_terms(&self.field, self.nvars, terms))
    }

    /// Termwise quotient by a monomial that divides every term.
    pub fn divide_exact(&self, t: &Monomial) -> Result<MultiPoly, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                t.quotient_of(m)
                    .map(|q| (q, *c))
                    .ok_or_else(|| PolyError::InexactDivision(m.exps(self.nvars).to_vec()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// Image under a field embedding.
    pub fn embed(&self, emb: &FieldEmbedding) -> MultiPoly {
        assert!(emb.source() == &self.field, "embedding source mismatch");
        let terms = self.terms.iter().map(|&(m, c)| (m, emb.apply(c)));
        MultiPoly::from_terms(emb.target(), self.nvars, terms)
    }

    /// Same polynomial viewed in a ring with more (trailing) variables.
    pub fn extend_vars(&self, nvars: usize) -> Result<MultiPoly, PolyError> {
        if nvars < self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                found: nvars,
            });
        }
        if nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(nvars));
        }
        Ok(MultiPoly {
            field: self.field.clone(),
            nvars,
            terms: self.terms.clone(),
        })
    }

    /// Drops trailing variables, which must not occur.
    pub fn restrict_vars(&self, nvars: usize) -> Result<MultiPoly, PolyError> {
        if nvars > self.nvars {
            return self.extend_vars(nvars);
        }
        if self
            .terms
            .iter()
            .any(|(m, _)| m.partial_degree(nvars..self.nvars) > 0)
        {
            return Err(PolyError::VariableOutOfRange(nvars));
        }
        Ok(MultiPoly {
            field: self.field.clone(),
            nvars,
            terms: self.terms.clone(),
        })
    }

    /// Renders with the given variable names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, name) in names.iter().enumerate().take(self.nvars) {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            let cs = f.format(*c);
            let coef = if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            if factors.is_empty() {
                parts.push(coef);
            } else if *c == Elem::ONE {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{coef}*{}", factors.join("*")));
            }
        }
        parts.join(" + ")
    }

    /// Names `x1..xn, y` for a germ ring with `n + 1` variables.
    pub fn germ_names(nvars: usize) -> Vec<String> {
        let mut names: Vec<String> = (1..nvars).map(|i| format!("x{i}")).collect();
        names.push("y".into());
        names
    }

    pub fn plain_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }

    /// Stable SHA-256 fingerprint of the field, arity and terms.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        let d = self.field.descriptor();
        h.update(format!("{}:{:?}:{}|", d.p, d.modulus, self.nvars));
        for (m, c) in self.terms.iter().rev() {
            h.update(format!("{:?}={};", m.exps(self.nvars), c.code()));
        }
        hex::encode(h.finalize())
    }

    pub fn to_json(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| PolyTerm {
                exps: m.exps(self.nvars).to_vec(),
                coeff: self.field.digits(*c),
            })
            .collect()
    }

    pub fn from_json(
        field: &FieldTower,
        nvars: usize,
        terms: &[PolyTerm],
    ) -> Result<MultiPoly, PolyError> {
        if nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(nvars));
        }
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exps.len() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    found: t.exps.len(),
                });
            }
            out.push((Monomial::new(&t.exps), field.from_digits(&t.coeff)?));
        }
        Ok(MultiPoly::from_terms(field, nvars, out))
    }
}

/// JSON term: exponents in variable order `x_1..x_n[, y]` and the
/// coefficient's digit vector (low degree first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exps: Vec<u16>,
    pub coeff: Vec<u64>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&Self::plain_names(self.nvars)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&Self::plain_names(self.nvars)))
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs)
            .expect("incompatible polynomials");
        self.sub_scaled(Elem::ONE, &Monomial::ONE, rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Small builder used throughout: `x^exps` with coefficient `c` (an integer).
pub fn term(field: &FieldTower, exps: &[u16], c: i64) -> MultiPoly {
    MultiPoly::monomial(field, exps.len(), Monomial::new(exps), field.from_int(c))
}

/// Sum of integer-coefficient terms over a common arity.
pub fn poly(field: &FieldTower, nvars: usize, terms: &[(&[u16], i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        field,
        nvars,
        terms.iter().map(|(e, c)| {
            assert_eq!(e.len(), nvars, "exponent vector length");
            (Monomial::new(e), field.from_int(*c))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn freshmans_dream_in_char_two() {
        let f = make_field(2, 1).unwrap();
        let s = poly(&f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let sq = &s * &s;
        assert_eq!(sq, poly(&f, 2, &[(&[2, 0], 1), (&[0, 2], 1)]));
    }

    #[test]
    fn char_two_cancellation_and_identity() {
        let f = make_field(2, 1).unwrap();
        let a = poly(&f, 3, &[(&[1, 1, 0], 1), (&[0, 0, 3], 1)]);
        let b = poly(&f, 3, &[(&[1, 1, 0], 1)]);
        assert_eq!(&a + &b, poly(&f, 3, &[(&[0, 0, 3], 1)]));
        assert_eq!(&a + &MultiPoly::zero(&f, 3), a);
    }

    #[test]
    fn arity_and_field_mismatch() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let a = MultiPoly::one(&f2, 2);
        assert!(matches!(
            a.try_add(&MultiPoly::one(&f2, 3)),
            Err(PolyError::ArityMismatch { .. })
        ));
        assert_eq!(
            a.try_mul(&MultiPoly::one(&f3, 2)),
            Err(PolyError::FieldMismatch)
        );
    }

    #[test]
    fn star_examples() {
        let f = make_field(2, 1).unwrap();
        let h = poly(&f, 3, &[(&[1, 1, 0], 1), (&[0, 0, 3], 1)]);
        assert_eq!(h.star(), poly(&f, 3, &[(&[1, 1, 2], 1), (&[0, 0, 3], 1)]));
        let yj = poly(&f, 3, &[(&[0, 0, 5], 1)]);
        assert_eq!(yj.star(), yj);
    }

    #[test]
    fn star_matches_substitution() {
        let f = make_field(3, 1).unwrap();
        let h = poly(&f, 3, &[(&[1, 1, 0], 2), (&[0, 0, 3], 1), (&[2, 0, 1], 1)]);
        let y = MultiPoly::var(&f, 3, 2);
        let images = vec![
            &MultiPoly::var(&f, 3, 0) * &y,
            &MultiPoly::var(&f, 3, 1) * &y,
            y.clone(),
        ];
        assert_eq!(h.substitute(&images).unwrap(), h.star());
    }

    #[test]
    fn y_chart_substitution_example() {
        // f = y^4 + x1^2 + x2 x3 in k[x1,x2,x3,y]
        let f = make_field(2, 1).unwrap();
        let g = poly(
            &f,
            4,
            &[(&[0, 0, 0, 4], 1), (&[2, 0, 0, 0], 1), (&[0, 1, 1, 0], 1)],
        );
        let expected = poly(
            &f,
            4,
            &[(&[0, 0, 0, 4], 1), (&[2, 0, 0, 2], 1), (&[0, 1, 1, 2], 1)],
        );
        assert_eq!(g.star(), expected);
        let ids: Vec<_> = (0..4).map(|i| MultiPoly::var(&f, 4, i)).collect();
        assert_eq!(g.substitute(&ids).unwrap(), g);
    }

    #[test]
    fn derivatives_reduce_mod_p() {
        let f = make_field(2, 1).unwrap();
        let g = poly(&f, 1, &[(&[2], 1), (&[3], 1)]);
        assert_eq!(g.partial_derivative(0), poly(&f, 1, &[(&[2], 1)]));
        let ym = poly(&f, 2, &[(&[0, 4], 1)]);
        assert!(ym.partial_derivative(1).is_zero());
        let q = poly(&f, 4, &[(&[1, 1, 0, 0], 1), (&[0, 0, 1, 1], 1)]);
        assert_eq!(q.partial_derivative(0), poly(&f, 4, &[(&[0, 1, 0, 0], 1)]));
    }

    #[test]
    fn lowest_degree_examples() {
        let f = make_field(2, 1).unwrap();
        let g = poly(&f, 3, &[(&[0, 0, 2], 1), (&[1, 1, 0], 1), (&[3, 0, 0], 1)]);
        let (d, fd, fgt) = g.lowest_degree_part().unwrap();
        assert_eq!(d, 2);
        assert_eq!(fd, poly(&f, 3, &[(&[0, 0, 2], 1), (&[1, 1, 0], 1)]));
        assert_eq!(fgt, poly(&f, 3, &[(&[3, 0, 0], 1)]));
        let yd = poly(&f, 3, &[(&[0, 0, 6], 1)]);
        let (d, fd, fgt) = yd.lowest_degree_part().unwrap();
        assert_eq!((d, fd, fgt.is_zero()), (6, yd.clone(), true));
        let h = poly(
            &f,
            4,
            &[
                (&[0, 0, 0, 4], 1),
                (&[2, 0, 0, 0], 1),
                (&[0, 1, 1, 0], 1),
                (&[3, 0, 0, 0], 1),
            ],
        );
        let (d, fd, _) = h.lowest_degree_part().unwrap();
        assert_eq!(d, 2);
        assert_eq!(fd, poly(&f, 4, &[(&[2, 0, 0, 0], 1), (&[0, 1, 1, 0], 1)]));
        assert_eq!(
            MultiPoly::zero(&f, 2).lowest_degree_part().unwrap_err(),
            PolyError::ZeroPolynomial
        );
    }

    #[test]
    fn type_predicate_examples() {
        let f = make_field(2, 1).unwrap();
        let t = MonomialType { a: 4, b: 6 };
        assert!(poly(&f, 2, &[(&[4, 0], 1), (&[0, 6], 1)]).is_of_type(t));
        assert!(!poly(&f, 2, &[(&[2, 1], 1)]).is_of_type(t));
        assert!(MultiPoly::zero(&f, 2).is_of_type(t));
    }

    #[test]
    fn exact_division() {
        let f = make_field(2, 1).unwrap();
        let g = poly(&f, 3, &[(&[1, 1, 2], 1), (&[0, 0, 3], 1)]);
        let y2 = Monomial::new(&[0, 0, 2]);
        assert_eq!(
            g.divide_exact(&y2).unwrap(),
            poly(&f, 3, &[(&[1, 1, 0], 1), (&[0, 0, 1], 1)])
        );
        let yd = poly(&f, 2, &[(&[0, 5], 1)]);
        assert_eq!(
            yd.divide_exact(&Monomial::new(&[0, 5])).unwrap(),
            MultiPoly::one(&f, 2)
        );
        let bad = poly(&f, 3, &[(&[1, 0, 1], 1), (&[0, 1, 0], 1)]);
        assert_eq!(
            bad.divide_exact(&Monomial::new(&[0, 0, 1])).unwrap_err(),
            PolyError::InexactDivision(vec![0, 1, 0])
        );
    }

    #[test]
    fn json_round_trip() {
        let f = make_field(2, 2).unwrap();
        let g = MultiPoly::from_terms(
            &f,
            2,
            [
                (Monomial::new(&[1, 2]), f.generator()),
                (Monomial::ONE, Elem::ONE),
            ],
        );
        let back = MultiPoly::from_json(&f, 2, &g.to_json()).unwrap();
        assert_eq!(back, g);
    }
}
