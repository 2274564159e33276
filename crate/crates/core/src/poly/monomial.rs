use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables a polynomial ring may carry.
pub const MAX_VARS: usize = 12;

/// Exponent vector with cached total degree, ordered by grevlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        degree: 0,
    };

    /// Panics when more than [`MAX_VARS`] exponents are supplied.
    pub fn new(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.degree = e as u32;
        m
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Total degree over the first `nvars_x` variables.
    pub fn partial_degree(&self, vars: std::ops::Range<usize>) -> u32 {
        self.exps[vars].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        out.degree = self.degree + other.degree;
        Some(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out.degree = other.degree - self.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out.degree = out.exps.iter().map(|&e| e as u32).sum();
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    pub(crate) fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut out = *self;
        out.degree = out.degree - out.exps[i] as u32 + e as u32;
        out.exps[i] = e;
        out
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_orders_last_variable_smallest() {
        let x1 = Monomial::new(&[1, 0, 0]);
        let x2 = Monomial::new(&[0, 1, 0]);
        let y = Monomial::new(&[0, 0, 1]);
        assert!(x1 > x2 && x2 > y);
        // x1*x3 < x2^2 in grevlex
        let x1x3 = Monomial::new(&[1, 0, 1]);
        let x2sq = Monomial::new(&[0, 2, 0]);
        assert!(x2sq > x1x3);
        assert!(Monomial::new(&[0, 0, 2]) > x1);
    }

    #[test]
    fn lcm_and_quotient() {
        let a = Monomial::new(&[2, 1]);
        let b = Monomial::new(&[1, 3]);
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::new(&[2, 3]));
        assert_eq!(a.quotient_of(&l), Some(Monomial::new(&[0, 2])));
        assert_eq!(l.quotient_of(&a), None);
    }

    #[test]
    fn overflow_detected() {
        let a = Monomial::new(&[u16::MAX]);
        assert!(a.checked_mul(&Monomial::var(0, 1)).is_none());
    }
}
