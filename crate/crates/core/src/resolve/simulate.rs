//! Blowup counts from exponent bookkeeping alone, kept independent of the
//! pipeline so the two can be compared.

use crate::germ::Case;

/// Blowups needed for `y^d + q + ...` until the vertex of the last cone is
/// blown up (or the last exceptional divisor is a smooth quadric).
pub fn simulate_blowups(case: Case, d: u32) -> u32 {
    match case {
        Case::A => {
            let mut e = d;
            let mut count = 0;
            while e >= 2 {
                count += 1;
                e -= 2;
            }
            // e = 1: the last cone's vertex is a smooth point still to blow up
            count + u32::from(e == 1)
        }
        Case::B if d == 2 => 2,
        Case::B => d / 2 + typed(d / 2) + 1,
    }
}

/// Blowups turning a type-`k` germ smooth.
fn typed(k: u32) -> u32 {
    match k {
        0 | 1 => 0,
        k if k % 2 == 0 => k / 2 + typed(k / 2),
        k => (k - 1) / 2,
    }
}
