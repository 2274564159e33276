//! Re-verification of the exceptional configuration from a report alone.

use crate::field::FieldTower;
use crate::germ::{certify_quadric, classify_quadric, QuadricClass};
use crate::poly::MultiPoly;

use super::ResolutionReport;

/// Every reason the exceptional divisors fail to form a chain
/// `E_1 - E_2 - ... - E_N` of smooth rational components meeting along
/// nonsingular quadrics. Empty when the check passes.
pub fn chain_diagnostics(report: &ResolutionReport) -> Vec<String> {
    let mut out = Vec::new();
    let field = match FieldTower::from_descriptor(&report.field) {
        Ok(f) => f,
        Err(e) => return vec![e.to_string()],
    };
    let n = report.n;
    let comps = &report.components;
    if comps.is_empty() {
        out.push("no exceptional components".into());
    }
    for (i, c) in comps.iter().enumerate() {
        if c.index != i + 1 {
            out.push(format!(
                "component {} listed at position {}",
                c.index,
                i + 1
            ));
        }
        if c.kind.is_none() {
            out.push(format!(
                "E_{} is neither a hyperplane nor a quadric",
                c.index
            ));
        }
        let form = match MultiPoly::from_json(&field, n + 1, &c.form) {
            Ok(p) => p,
            Err(e) => {
                out.push(format!("E_{}: {e}", c.index));
                continue;
            }
        };
        match &c.witness {
            Some(w)
                if w.len() == n + 1
                    && w.iter().any(|x| !x.is_zero())
                    && form.evaluate(w).is_zero() => {}
            _ => out.push(format!("E_{} has no rational point witness", c.index)),
        }
    }

    let expected: Vec<(usize, usize)> = (1..comps.len()).map(|i| (i, i + 1)).collect();
    let got: Vec<(usize, usize)> = report.chain.iter().map(|l| (l.from, l.to)).collect();
    if got != expected {
        out.push(format!(
            "intersection graph {got:?} is not the chain {expected:?}"
        ));
    }
    for l in &report.chain {
        let cone = match MultiPoly::from_json(&field, n, &l.tangent_cone) {
            Ok(p) => p,
            Err(e) => {
                out.push(format!("E_{} meet E_{}: {e}", l.from, l.to));
                continue;
            }
        };
        let ok = cone.total_degree() == Some(2)
            && cone.is_homogeneous()
            && classify_quadric(&cone, n).ok() == Some(QuadricClass::Nonsingular)
            && certify_quadric(&cone, &QuadricClass::Nonsingular);
        if !ok {
            out.push(format!(
                "E_{} and E_{} do not meet along a nonsingular quadric",
                l.from, l.to
            ));
        }
        if l.center_on_earlier_transform {
            out.push(format!(
                "center of blowup {} lies on the transform of E_{}",
                l.to,
                l.from.saturating_sub(1)
            ));
        }
    }
    out
}

pub fn chain_check(report: &ResolutionReport) -> bool {
    chain_diagnostics(report).is_empty()
}
