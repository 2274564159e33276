//! Exact arithmetic in finite fields `F_{p^k}`.
//!
//! A [`FieldTower`] is `F_p[t]/(m(t))` where `m` is the least monic
//! irreducible of degree `k` in the base-`p` ordering of coefficient
//! vectors (highest non-leading coefficient most significant). Elements are
//! [`Elem`] codes: the coefficient vector read as a base-`p` integer,
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. The same code order is the
//! element order used for deterministic root tie-breaking.

mod unipoly;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field size for which discrete-log tables are built.
pub const TABLE_CAP: u64 = 1 << 20;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside 1..=12")]
    InvalidDegree(usize),
    #[error("modulus is not a monic irreducible polynomial of the declared degree")]
    ReducibleModulus,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no {m}-th root exists in F_{q}")]
    NoRoot { m: u64, q: u64 },
    #[error("field of size {q} exceeds the desk-scale cap {cap}")]
    DeskScaleExceeded { q: u64, cap: u64 },
    #[error("digit vector is not a valid element")]
    InvalidDigits,
    #[error("no extension of degree <= {max_degree} contains the requested root")]
    NoExtensionFound { max_degree: usize },
    #[error("exponent must be positive")]
    InvalidExponent,
}

/// Encoded field element; arithmetic goes through the owning [`FieldTower`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u64);

/// Prints the integer code only, so claims and witnesses stay readable.
impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldData {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    tables: OnceLock<Option<Tables>>,
}

/// The finite field `F_{p^k}` with a fixed modulus.
#[derive(Clone)]
pub struct FieldTower(Arc<FieldData>);

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
    }
}

/// JSON form of a field: `{"p": int, "k": int, "modulus": [int]}` with the
/// modulus listed low degree first (k+1 entries, monic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Inverse of `a` modulo `n` when it exists.
fn inv_mod_u64(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

/// Builds `F_{p^k}` with the least monic irreducible modulus of degree `k`.
pub fn make_field(p: u64, k: usize) -> Result<FieldTower, FieldError> {
    if !is_prime(p) || p >= 1 << 16 {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 || k > MAX_DEGREE {
        return Err(FieldError::InvalidDegree(k));
    }
    let q = p
        .checked_pow(k as u32)
        .ok_or(FieldError::InvalidDegree(k))?;
    for code in 0..q {
        let mut modulus = digits_of(code, p, k);
        modulus.push(1);
        if unipoly::is_irreducible(&modulus, p) {
            return Ok(FieldTower::from_parts(p, k, modulus));
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits_of(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(code % p);
        code /= p;
    }
    out
}

impl FieldTower {
    fn from_parts(p: u64, k: usize, modulus: Vec<u64>) -> Self {
        let q = p.pow(k as u32);
        let pow_p = (0..k).map(|i| p.pow(i as u32)).collect();
        FieldTower(Arc::new(FieldData {
            p,
            k,
            q,
            modulus,
            pow_p,
            tables: OnceLock::new(),
        }))
    }

    /// Field with an explicit modulus; verified monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(FieldError::NotPrime(p));
        }
        let k = modulus.len().saturating_sub(1);
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::InvalidDegree(k));
        }
        if modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::ReducibleModulus);
        }
        if !unipoly::is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(Self::from_parts(p, k, modulus))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self, FieldError> {
        match &desc.modulus {
            Some(m) => {
                let f = Self::with_modulus(desc.p, m.clone())?;
                if f.degree() != desc.k {
                    return Err(FieldError::InvalidDegree(desc.k));
                }
                Ok(f)
            }
            None => make_field(desc.p, desc.k),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            k: self.0.k,
            modulus: Some(self.0.modulus.clone()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn size(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<Elem, FieldError> {
        if digits.len() > self.0.k || digits.iter().any(|&d| d >= self.0.p) {
            return Err(FieldError::InvalidDigits);
        }
        Ok(Elem(
            digits.iter().zip(&self.0.pow_p).map(|(d, w)| d * w).sum(),
        ))
    }

    pub fn digits(&self, a: Elem) -> Vec<u64> {
        digits_of(a.0, self.0.p, self.0.k)
    }

    pub fn element(&self, code: u64) -> Option<Elem> {
        (code < self.0.q).then_some(Elem(code))
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    /// The generator `t` of the extension (equals 0 when k = 1 with modulus x).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            Elem(self.0.p)
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.0.k == 1 {
            return Elem((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for w in &self.0.pow_p {
            out += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return Elem((p - a.0) % p);
        }
        let (mut x, mut out) = (a.0, 0);
        for w in &self.0.pow_p {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| (self.0.q <= TABLE_CAP).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let q = self.0.q;
        let order = q - 1;
        let factors = prime_factors(order);
        let g = (1..q)
            .map(Elem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, order / r) != Elem::ONE)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = Elem::ONE;
        for i in 0..order {
            exp.push(cur.0 as u32);
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, g);
        }
        Tables { exp, log }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return Elem(a.0 * b.0 % p);
        }
        let prod = unipoly::mul(&self.digits(a), &self.digits(b), p);
        let r = unipoly::rem(&prod, &self.0.modulus, p);
        Elem(r.iter().zip(&self.0.pow_p).map(|(d, w)| d * w).sum())
    }

    fn pow_slow(&self, mut a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, a);
            }
            a = self.mul_slow(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.0.k == 1 {
            return Elem(a.0 * b.0 % self.0.p);
        }
        match self.tables() {
            Some(t) => {
                let order = self.0.q - 1;
                let s = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % order;
                Elem(t.exp[s as usize] as u64)
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = (self.0.k > 1).then(|| self.tables()).flatten() {
            let order = (self.0.q - 1) as u128;
            let s = (t.log[a.0 as usize] as u128 * (e % order)) % order;
            return Elem(t.exp[s as usize] as u64);
        }
        let order = (self.0.q - 1) as u128;
        let mut e = e % order;
        if e == 0 {
            return Elem::ONE;
        }
        let (mut base, mut acc) = (a, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        Some(self.pow(a, (self.0.q - 2) as u128))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    /// The unique `b` with `b^p = a`, computed as `a^(p^(k-1))`.
    pub fn frobenius_root(&self, a: Elem) -> Elem {
        let mut b = a;
        for _ in 1..self.0.k {
            b = self.pow(b, self.0.p as u128);
        }
        b
    }

    /// Unique `b` with `b^(p^s) = a`.
    pub fn frobenius_root_iter(&self, a: Elem, s: u32) -> Elem {
        (0..s).fold(a, |acc, _| self.frobenius_root(acc))
    }

    /// Least `b` (in code order) with `b^m = a`.
    pub fn mth_root(&self, a: Elem, m: u64) -> Result<Elem, FieldError> {
        if m == 0 {
            return Err(FieldError::InvalidExponent);
        }
        if a.is_zero() {
            return Ok(Elem::ZERO);
        }
        let p = self.0.p;
        let q = self.0.q;
        let (mut s, mut e) = (0u32, m);
        while e % p == 0 {
            e /= p;
            s += 1;
        }
        let b = self.frobenius_root_iter(a, s);
        let order = q - 1;
        let g = gcd_u64(e % order.max(1), order);
        if order == 1 || g == 1 {
            if order == 1 {
                return Ok(b);
            }
            let inv = inv_mod_u64(e % order, order).expect("coprime");
            return Ok(self.pow(b, inv as u128));
        }
        if q > TABLE_CAP {
            return Err(FieldError::DeskScaleExceeded { q, cap: TABLE_CAP });
        }
        let t = self.tables().expect("tables exist below the cap");
        let l = t.log[b.0 as usize] as u64;
        if !l.is_multiple_of(g) {
            return Err(FieldError::NoRoot { m, q });
        }
        let sub_order = order / g;
        let x0 = (l / g) % sub_order * inv_mod_u64((e / g) % sub_order, sub_order).unwrap_or(0)
            % sub_order;
        let best = (0..g)
            .map(|j| Elem(t.exp[((x0 + j * sub_order) % order) as usize] as u64))
            .min()
            .expect("g >= 1");
        debug_assert_eq!(self.pow(best, m as u128), a);
        Ok(best)
    }

    /// Least root in `self` of a univariate polynomial with coefficients in `self`
    /// (low degree first).
    pub fn find_root(&self, coeffs: &[Elem]) -> Option<Elem> {
        self.elements()
            .find(|&x| self.eval_univariate(coeffs, x).is_zero())
    }

    pub fn eval_univariate(&self, coeffs: &[Elem], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn format(&self, a: Elem) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let digits = self.digits(a);
        let mut parts = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let coef = if d == 1 && i > 0 {
                String::new()
            } else {
                d.to_string()
            };
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            let sep = if !coef.is_empty() && !var.is_empty() {
                "*"
            } else {
                ""
            };
            parts.push(format!("{coef}{sep}{var}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// An element bundled with its field, for callers outside the hot paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub field: FieldTower,
    pub value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(field: &FieldTower, value: Elem) -> Self {
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
            ArithOp::Div => f.div(self.value, other.value)?,
        };
        Ok(FieldElement::new(f, value))
    }

    pub fn frobenius_root(&self) -> FieldElement {
        FieldElement::new(&self.field, self.field.frobenius_root(self.value))
    }

    pub fn mth_root(&self, m: u64) -> Result<FieldElement, FieldError> {
        Ok(FieldElement::new(
            &self.field,
            self.field.mth_root(self.value, m)?,
        ))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// Field homomorphism `F_{p^k} -> F_{p^{kj}}` fixed by the image of the
/// source generator (the least root of the source modulus in the target).
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FieldTower,
    target: FieldTower,
    generator_image: Elem,
}

impl FieldEmbedding {
    pub fn identity(field: &FieldTower) -> Self {
        FieldEmbedding {
            source: field.clone(),
            target: field.clone(),
            generator_image: field.generator(),
        }
    }

    pub fn new(source: &FieldTower, target: &FieldTower) -> Result<Self, FieldError> {
        if source == target {
            return Ok(Self::identity(source));
        }
        if source.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(source.degree())
        {
            return Err(FieldError::FieldMismatch);
        }
        if target.size() > TABLE_CAP {
            return Err(FieldError::DeskScaleExceeded {
                q: target.size(),
                cap: TABLE_CAP,
            });
        }
        let modulus: Vec<Elem> = source
            .modulus()
            .iter()
            .map(|&c| target.from_int(c as i64))
            .collect();
        let generator_image = target
            .find_root(&modulus)
            .ok_or(FieldError::FieldMismatch)?;
        Ok(FieldEmbedding {
            source: source.clone(),
            target: target.clone(),
            generator_image,
        })
    }

    pub fn source(&self) -> &FieldTower {
        &self.source
    }

    pub fn target(&self) -> &FieldTower {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        let digits = self.source.digits(a);
        let coeffs: Vec<Elem> = digits
            .iter()
            .map(|&d| self.target.from_int(d as i64))
            .collect();
        self.target.eval_univariate(&coeffs, self.generator_image)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FieldEmbedding) -> Result<FieldEmbedding, FieldError> {
        if self.target != next.source {
            return Err(FieldError::FieldMismatch);
        }
        Ok(FieldEmbedding {
            source: self.source.clone(),
            target: next.target.clone(),
            generator_image: next.apply(self.generator_image),
        })
    }
}

/// Embeddings `F_{p^k} -> F_{p^{kj}}` for `j = 1..=max_degree`, built
/// lazily and stopping at the desk-scale caps.
pub fn extensions(
    field: &FieldTower,
    max_degree: usize,
) -> impl Iterator<Item = FieldEmbedding> + '_ {
    (1..=max_degree.max(1)).map_while(move |j| {
        if j == 1 {
            return Some(FieldEmbedding::identity(field));
        }
        let k = field.degree() * j;
        if k > MAX_DEGREE {
            return None;
        }
        let q = field.characteristic().checked_pow(k as u32)?;
        if q > TABLE_CAP {
            return None;
        }
        let target = make_field(field.characteristic(), k).ok()?;
        FieldEmbedding::new(field, &target).ok()
    })
}

/// Result of [`extend_until_root`].
#[derive(Clone, Debug)]
pub struct RootExtension {
    pub embedding: FieldEmbedding,
    pub root: Elem,
}

/// Smallest extension `F_{p^{kj}}`, `j <= max_degree`, in which `a` has an
/// m-th root; returns the embedding of the original field and that root.
pub fn extend_until_root(
    field: &FieldTower,
    a: Elem,
    m: u64,
    max_degree: usize,
) -> Result<RootExtension, FieldError> {
    for j in 1..=max_degree.max(1) {
        let embedding = if j == 1 {
            FieldEmbedding::identity(field)
        } else {
            let k = field.degree() * j;
            if k > MAX_DEGREE {
                break;
            }
            let Some(q) = field.characteristic().checked_pow(k as u32) else {
                break;
            };
            if q > TABLE_CAP {
                break;
            }
            let target = make_field(field.characteristic(), k)?;
            FieldEmbedding::new(field, &target)?
        };
        match embedding.target().mth_root(embedding.apply(a), m) {
            Ok(root) => return Ok(RootExtension { embedding, root }),
            Err(FieldError::NoRoot { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FieldError::NoExtensionFound { max_degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_use_modulus_x() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.size(), 7);
        assert_eq!(f7.modulus(), &[0, 1]);
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(make_field(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(make_field(2, 0).unwrap_err(), FieldError::InvalidDegree(0));
        assert_eq!(
            make_field(2, 13).unwrap_err(),
            FieldError::InvalidDegree(13)
        );
    }

    #[test]
    fn f7_products() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(f.mul(f.from_int(3), f.from_int(5)), f.from_int(1));
        assert_eq!(f.add(f.from_int(4), Elem::ZERO), f.from_int(4));
        assert_eq!(f.div(f.one(), Elem::ZERO), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn f8_generator_arithmetic() {
        let f = make_field(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let t = f.generator();
        let t2 = f.mul(t, t);
        let t_plus_1 = f.from_digits(&[1, 1, 0]).unwrap();
        assert_eq!(f.mul(t, t2), t_plus_1);
        let t2_plus_t = f.from_digits(&[0, 1, 1]).unwrap();
        assert_eq!(f.frobenius_root(t), t2_plus_t);
    }

    #[test]
    fn roots_in_f7() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(f.mth_root(f.from_int(2), 2).unwrap(), f.from_int(3));
        assert!(matches!(
            f.mth_root(f.from_int(3), 2),
            Err(FieldError::NoRoot { .. })
        ));
        assert_eq!(f.mth_root(f.one(), 5).unwrap(), f.one());
    }

    #[test]
    fn f9_frobenius_root_is_cube() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius_root(a), f.pow(a, 3));
        }
    }

    #[test]
    fn extension_supplies_square_root_of_minus_one() {
        let f3 = make_field(3, 1).unwrap();
        let ext = extend_until_root(&f3, f3.from_int(-1), 2, 6).unwrap();
        let big = ext.embedding.target();
        assert_eq!(big.degree(), 2);
        assert_eq!(big.mul(ext.root, ext.root), big.from_int(-1));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let emb = FieldEmbedding::new(&f4, &f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.apply(f4.mul(a, b)), f16.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f4.add(a, b)), f16.add(emb.apply(a), emb.apply(b)));
            }
        }
    }

    #[test]
    fn field_element_mismatch() {
        let a = FieldElement::new(&make_field(2, 1).unwrap(), Elem::ONE);
        let b = FieldElement::new(&make_field(3, 1).unwrap(), Elem::ONE);
        assert_eq!(a.arith(&b, ArithOp::Add), Err(FieldError::FieldMismatch));
    }
}
