use super::{BoundChoice, Vertex};
use crate::instance::Instance;
use crate::rational::Rational;

/// All `2^n` extreme points, ordered by subset bitmask, then `x_n` lower
/// before upper.
///
/// Requires `n <= 64` for the bitmask; enumeration is exponential anyway.
pub fn vertices(inst: &Instance) -> Vec<Vertex> {
    let n = inst.n();
    assert!(n <= 64, "vertex enumeration supports n <= 64");
    let masks = 1u64 << (n - 1);
    let mut out = Vec::with_capacity(2 * masks as usize);
    for subset in 0..masks {
        for xn in [BoundChoice::Lower, BoundChoice::Upper] {
            out.push(vertex(inst, subset, xn));
        }
    }
    out
}

pub(crate) fn vertex(inst: &Instance, subset: u64, xn: BoundChoice) -> Vertex {
    let n = inst.n();
    let mut x: Vec<Rational> = (1..n)
        .map(|i| {
            if subset >> (i - 1) & 1 == 1 {
                inst.b(i).clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    x.push(match xn {
        BoundChoice::Lower => inst.a_n().clone(),
        BoundChoice::Upper => inst.b_n().clone(),
    });
    let y = x.iter().product();
    Vertex { x, y, subset, xn }
}

/// Bitmask with every variable `1..n-1` at its upper bound.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n - 1 == 64 {
        u64::MAX
    } else {
        (1u64 << (n - 1)) - 1
    }
}
