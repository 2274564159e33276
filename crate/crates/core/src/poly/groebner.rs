//! Buchberger's algorithm under grevlex.

use sha2::{Digest, Sha256};

use super::{Monomial, MultiPoly};

/// Generators of an ideal; `is_groebner` is set only by [`buchberger`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    generators: Vec<MultiPoly>,
    is_groebner: bool,
}

impl IdealBasis {
    /// Zero generators are dropped.
    pub fn new(generators: impl IntoIterator<Item = MultiPoly>) -> Self {
        IdealBasis {
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            is_groebner: false,
        }
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_groebner(&self) -> bool {
        self.is_groebner
    }

    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for g in &self.generators {
            h.update(g.fingerprint());
            h.update(b";");
        }
        hex::encode(h.finalize())
    }
}

fn lm(p: &MultiPoly) -> Monomial {
    p.leading_term().expect("nonzero polynomial").0
}

/// Full reduction of `f` modulo `basis` (remainder of the division algorithm).
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let field = f.field().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, crate::field::Elem)> = Vec::new();
    while let Some(&(m, c)) = p.leading_term() {
        let divisor = basis.iter().find(|g| lm(g).divides(&m));
        match divisor {
            Some(g) => {
                let (gm, gc) = *g.leading_term().expect("nonzero");
                let q = gm.quotient_of(&m).expect("divides");
                let factor = field.div(c, gc).expect("nonzero lead");
                p = p.sub_scaled(factor, &q, g);
            }
            None => {
                rem.push((m, c));
                p.terms.pop();
            }
        }
    }
    rem.reverse();
    MultiPoly {
        field,
        nvars: f.nvars(),
        terms: rem,
    }
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (mf, cf) = *f.leading_term().expect("nonzero");
    let (mg, cg) = *g.leading_term().expect("nonzero");
    let l = mf.lcm(&mg);
    let field = f.field();
    let a = f
        .mul_monomial(&mf.quotient_of(&l).expect("lcm"))
        .expect("exponent overflow")
        .scale(field.inv(cf).expect("nonzero"));
    a.sub_scaled(
        field.inv(cg).expect("nonzero"),
        &mg.quotient_of(&l).expect("lcm"),
        g,
    )
}

/// Reduced Gröbner basis. Pairs are chosen by least lcm (normal strategy);
/// the product and chain criteria prune pairs. Returns `{1}` as soon as a
/// nonzero constant appears.
pub fn buchberger(ideal: &IdealBasis) -> IdealBasis {
    let Some(first) = ideal.generators.first() else {
        return IdealBasis {
            generators: Vec::new(),
            is_groebner: true,
        };
    };
    let field = first.field().clone();
    let nvars = first.nvars();
    let unit = || IdealBasis {
        generators: vec![MultiPoly::one(&field, nvars)],
        is_groebner: true,
    };

    let mut g: Vec<MultiPoly> = Vec::new();
    for f in &ideal.generators {
        let r = normal_form(f, &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit();
        }
        g.push(r.monic());
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let la = lm(&g[pairs[a].0]).lcm(&lm(&g[pairs[a].1]));
                let lb = lm(&g[pairs[b].0]).lcm(&lm(&g[pairs[b].1]));
                la.cmp(&lb).then(pairs[a].cmp(&pairs[b]))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(idx);
        let (mi, mj) = (lm(&g[i]), lm(&g[j]));
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm(&g[k]).divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return unit();
        }
        let new = g.len();
        g.push(r.monic());
        for k in 0..new {
            pairs.push((k, new));
        }
    }

    // Minimize: drop generators whose leading monomial is divisible by another's.
    let mut keep: Vec<MultiPoly> = Vec::new();
    for (idx, f) in g.iter().enumerate() {
        let m = lm(f);
        let redundant = g
            .iter()
            .enumerate()
            .any(|(k, h)| k != idx && lm(h).divides(&m) && (lm(h) != m || k < idx));
        if !redundant {
            keep.push(f.clone());
        }
    }
    // Inter-reduce.
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<MultiPoly> = keep
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(normal_form(&keep[idx], &others).monic());
    }
    reduced.sort_by_key(lm);
    IdealBasis {
        generators: reduced,
        is_groebner: true,
    }
}

/// True iff the ideal is the unit ideal (its reduced basis is `{1}`).
pub fn contains_one(ideal: &IdealBasis) -> bool {
    let gb = if ideal.is_groebner {
        ideal.clone()
    } else {
        buchberger(ideal)
    };
    gb.generators.len() == 1 && gb.generators[0].is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::poly;

    #[test]
    fn variables_already_a_basis() {
        let f = make_field(2, 1).unwrap();
        let i = IdealBasis::new([poly(&f, 2, &[(&[1, 0], 1)]), poly(&f, 2, &[(&[0, 1], 1)])]);
        let gb = buchberger(&i);
        assert_eq!(gb.generators().len(), 2);
        assert!(!contains_one(&i));
    }

    #[test]
    fn unit_combination_detected() {
        let f = make_field(2, 1).unwrap();
        let i = IdealBasis::new([
            poly(&f, 2, &[(&[0, 0], 1), (&[1, 0], 1)]),
            poly(&f, 2, &[(&[1, 0], 1)]),
        ]);
        assert!(contains_one(&i));
        assert_eq!(buchberger(&i).generators(), &[MultiPoly::one(&f, 2)]);
    }

    #[test]
    fn hand_computed_basis_over_f7() {
        let f = make_field(7, 1).unwrap();
        let a = poly(&f, 2, &[(&[2, 0], 1), (&[0, 1], 6)]);
        let b = poly(&f, 2, &[(&[1, 1], 1)]);
        let gb = buchberger(&IdealBasis::new([a.clone(), b.clone()]));
        let y2 = poly(&f, 2, &[(&[0, 2], 1)]);
        let mut expected = vec![a, b, y2];
        expected.sort_by_key(lm);
        assert_eq!(gb.generators(), expected.as_slice());
    }
}
