//! Hypothesis arithmetic for the non-stable-rationality statements.
//!
//! * `1.1`: cyclic cover of `P^n` branched in degree `d`: `n >= 3`,
//!   `d >= n + 1`; no conic bundle structure when also `d >= n + 2` and
//!   the covering degree `m` is not a power of 2.
//! * `1.2`: the same over a complete intersection of type `(d_1..d_r)` in
//!   `P^{n+r}`, with `d + sum d_i >= n + r + 1`.
//! * `1.3`: weighted hypersurface `X_d` in `P(1^n, a, b)`.

use serde::{Deserialize, Serialize};

use crate::field::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "1.1")]
    T11,
    #[serde(rename = "1.2")]
    T12,
    #[serde(rename = "1.3")]
    T13,
}

impl std::str::FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1.1" => Ok(Theorem::T11),
            "1.2" => Ok(Theorem::T12),
            "1.3" => Ok(Theorem::T13),
            _ => Err(format!("unknown theorem {s} (1.1, 1.2, 1.3)")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamInput {
    pub n: u64,
    pub d: u64,
    /// Covering degree, for the conic-bundle clause.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    /// `d_1..d_r` of the complete intersection.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

fn cond(name: impl Into<String>, holds: bool) -> Condition {
    Condition {
        name: name.into(),
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamCheck {
    pub schema: u32,
    pub tool_version: String,
    pub theorem: Theorem,
    pub params: ParamInput,
    pub conditions: Vec<Condition>,
    pub accepted: bool,
    /// Degree of `M = O_X(index)`; `H^0(M) != 0` iff it is `>= 0`.
    pub index: i64,
    pub h0_nonzero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conic_bundle_clause: Option<Condition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_prime: Option<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least prime dividing `x` but not `y`.
pub fn witness_prime(x: u64, y: u64) -> Option<u64> {
    (2..=x).find(|&p| is_prime(p) && x.is_multiple_of(p) && !y.is_multiple_of(p))
}

fn conic_clause(bound_ok: bool, m: Option<u64>) -> Condition {
    let not_pow2 = m.is_some_and(|m| m > 0 && !m.is_power_of_two());
    let name = match m {
        Some(m) => format!("degree bound one higher and covering degree {m} not a power of 2"),
        None => "degree bound one higher and covering degree not a power of 2 (m not given)".into(),
    };
    cond(name, bound_ok && not_pow2)
}

pub fn check_params(theorem: Theorem, input: &ParamInput) -> ParamCheck {
    let ParamInput { n, d, m, .. } = *input;
    let (n_i, d_i) = (n as i64, d as i64);
    let mut conditions = vec![cond("n >= 3", n >= 3)];
    let mut conic = None;
    let mut witness = None;
    let index;
    match theorem {
        Theorem::T11 => {
            conditions.push(cond("d >= n + 1", d > n));
            index = d_i - n_i - 1;
            conic = Some(conic_clause(d >= n + 2, m));
        }
        Theorem::T12 => {
            let r = input.degrees.len() as i64;
            let total = d_i + input.degrees.iter().sum::<u64>() as i64;
            conditions.push(cond("d >= 2", d >= 2));
            if r > 0 {
                conditions.push(cond(
                    "d_i >= 2 for every i",
                    input.degrees.iter().all(|&x| x >= 2),
                ));
            }
            conditions.push(cond("d + d_1 + ... + d_r >= n + r + 1", total > n_i + r));
            index = total - n_i - r - 1;
            conic = Some(conic_clause(total >= n_i + r + 2, m));
        }
        Theorem::T13 => {
            let a = input.a.unwrap_or(0);
            let b = input.b.unwrap_or(0);
            let pos = a > 0 && b > 0 && d > 0;
            conditions.push(cond("(1) a and b are coprime", pos && gcd(a, b) == 1));
            let div = pos && d % a == 0 && d % b == 0;
            conditions.push(cond(
                "(2) a | d, b | d, d/a >= 2, d/b >= 2",
                div && d / a >= 2 && d / b >= 2,
            ));
            if div {
                witness = witness_prime(d / b, d / a);
            }
            conditions.push(cond(
                "(3) a prime divides d/b but not d/a",
                witness.is_some(),
            ));
            conditions.push(cond(
                "(4) n + a <= d < n + a + b",
                n + a <= d && d < n + a + b,
            ));
            index = d_i - n_i - a as i64;
        }
    }
    ParamCheck {
        schema: super::SCHEMA,
        tool_version: super::TOOL_VERSION.into(),
        theorem,
        params: input.clone(),
        accepted: conditions.iter().all(|c| c.holds),
        conditions,
        index,
        h0_nonzero: index >= 0,
        conic_bundle_clause: conic,
        witness_prime: witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub family: String,
    pub note: String,
    pub check: ParamCheck,
}

/// The four families of index-one Fano 4-fold weighted hypersurfaces.
pub fn fano_fourfolds() -> Vec<FamilyCheck> {
    let t11 = |d, m| ParamInput {
        n: 4,
        d,
        m: Some(m),
        ..Default::default()
    };
    vec![
        FamilyCheck {
            family: "X_5 in P^5".into(),
            note: "a hypersurface, not a cyclic cover: only the degree arithmetic (n, d) = (4, 5) is recorded".into(),
            check: check_params(Theorem::T11, &t11(5, 1)),
        },
        FamilyCheck {
            family: "X_6 in P(1^5, 2)".into(),
            note: "triple cover of P^4 branched in degree 6".into(),
            check: check_params(Theorem::T11, &t11(6, 3)),
        },
        FamilyCheck {
            family: "X_8 in P(1^5, 4)".into(),
            note: "double cover of P^4 branched in degree 8".into(),
            check: check_params(Theorem::T11, &t11(8, 2)),
        },
        FamilyCheck {
            family: "X_10 in P(1^4, 2, 5)".into(),
            note: "weighted hypersurface with (a, b) = (2, 5)".into(),
            check: check_params(
                Theorem::T13,
                &ParamInput {
                    n: 4,
                    d: 10,
                    a: Some(2),
                    b: Some(5),
                    ..Default::default()
                },
            ),
        },
    ]
}
