//! Volumes of the hull and of the bodies used to decompose it.
//!
//! [`volume_cn1`] is the closed form. [`volume_by_decomposition`] rebuilds the
//! same number from the pyramid `Q` over the zero-product prism with apex
//! `v_1 = (b_1, ..., b_{n-1}, a_n, a_n Pi)`, plus the cones from the second
//! nonzero vertex `v_2 = (b, b_n Pi)` over the facets of `Q` that separate it.
//! [`monte_carlo_volume`] is an independent floating-point estimate.

mod lifted;
mod monte_carlo;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{factorial_q, Instance};
use crate::rational::Rational;

pub use lifted::{lifted_q_facets, separation_check_v2, SeparationRow};
pub use monte_carlo::{
    bounding_box_volume, monte_carlo_volume, monte_carlo_volume_sharded, MonteCarloEstimate,
};

/// `prod_{i<n} b_i^2`.
fn pi_squared(inst: &Instance) -> Rational {
    inst.pi().pow(2)
}

/// `((n-1)! - 1) / (n-1)!`, the fraction of the unit box left after cutting
/// off the corner simplex.
fn cut_fraction(n: usize) -> Rational {
    let f = factorial_q(n - 1);
    (&f - Rational::one()) / f
}

pub fn volume_cn1(inst: &Instance) -> Rational {
    let n = inst.n();
    let (a_n, b_n) = (inst.a_n(), inst.b_n());
    let bracket =
        (factorial_q(n) - Rational::one()) * b_n + (factorial_q(n - 1) - Rational::from(n)) * a_n;
    (b_n - a_n) * pi_squared(inst) / factorial_q(n + 1) * bracket
}

/// Volume of the hull with every lower bound zero.
pub fn volume_cn0(n: usize, b: &[Rational]) -> Result<Rational> {
    if n < 2 || b.len() != n {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 upper bounds, got n = {n} with {} bounds",
            b.len()
        )));
    }
    if let Some(bad) = b.iter().find(|x| !x.is_positive()) {
        return Err(Error::InvalidInstance(format!(
            "upper bound {bad} is not positive"
        )));
    }
    let squares: Rational = b.iter().map(|x| x.pow(2)).product();
    Ok(squares * (factorial_q(n) - Rational::one()) / factorial_q(n + 1))
}

/// Volume of the McCormick tetrahedron over `[a_1,b_1] x [a_2,b_2]`.
pub fn volume_mccormick(a: &[Rational; 2], b: &[Rational; 2]) -> Result<Rational> {
    for i in 0..2 {
        if a[i] >= b[i] {
            return Err(Error::InvalidInstance(format!(
                "need a_{0} < b_{0}, got a_{0} = {1}, b_{0} = {2}",
                i + 1,
                a[i],
                b[i]
            )));
        }
    }
    Ok((&b[0] - &a[0]).pow(2) * (&b[1] - &a[1]).pow(2) / Rational::from(6))
}

/// `(n-1)`-volume of the box over variables `1..n-1` with its corner cut off.
pub fn base_volume_b(inst: &Instance) -> Rational {
    cut_fraction(inst.n()) * inst.pi()
}

/// The zero-product prism: base `B` times `[a_n, b_n]`.
pub fn prism_volume(inst: &Instance) -> Rational {
    (inst.b_n() - inst.a_n()) * base_volume_b(inst)
}

/// The pyramid with base the prism and apex `v_1`, of height `a_n Pi`.
pub fn pyramid_q_volume(inst: &Instance) -> Rational {
    let n = inst.n();
    cut_fraction(n) / Rational::from(n + 1)
        * inst.a_n()
        * (inst.b_n() - inst.a_n())
        * pi_squared(inst)
}

/// Volume of the cone from `v_2` over the facet of `Q` lifted from `x_i >= 0`.
/// Independent of `i`.
pub fn cone_volume_fi(inst: &Instance) -> Rational {
    let n = inst.n() as i64;
    (inst.b_n() - inst.a_n()).pow(2) * pi_squared(inst) / Rational::from(n * (n + 1))
}

/// Volume of the cone from `v_2` over the facet of `Q` lifted from `x_n <= b_n`.
pub fn cone_volume_f(inst: &Instance) -> Rational {
    let n = inst.n();
    (factorial_q(n - 1) - Rational::one()) / (factorial_q(n) * Rational::from(n + 1))
        * inst.b_n()
        * (inst.b_n() - inst.a_n())
        * pi_squared(inst)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub vol_b: Rational,
    pub vol_pn: Rational,
    pub vol_q: Rational,
    pub cone_fi_each: Rational,
    pub cone_fi_total: Rational,
    pub cone_f: Rational,
    pub total: Rational,
}

pub fn volume_by_decomposition(inst: &Instance) -> Decomposition {
    let vol_q = pyramid_q_volume(inst);
    let cone_fi_each = cone_volume_fi(inst);
    let cone_fi_total = Rational::from(inst.n() - 1) * &cone_fi_each;
    let cone_f = cone_volume_f(inst);
    let total = &vol_q + &cone_fi_total + &cone_f;
    Decomposition {
        vol_b: base_volume_b(inst),
        vol_pn: prism_volume(inst),
        vol_q,
        cone_fi_each,
        cone_fi_total,
        cone_f,
        total,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub closed_form: Rational,
    pub decomposition: Decomposition,
    pub monte_carlo: Option<MonteCarloEstimate>,
}

impl VolumeReport {
    /// Closed form and decomposition total agree exactly.
    pub fn is_consistent(&self) -> bool {
        self.closed_form == self.decomposition.total
    }
}

/// Closed form and decomposition, plus a single-threaded Monte Carlo estimate
/// when `samples > 0`.
pub fn volume_report(inst: &Instance, samples: u64, seed: u64) -> Result<VolumeReport> {
    let monte_carlo = if samples > 0 {
        Some(monte_carlo_volume(inst, samples, seed)?)
    } else {
        None
    };
    Ok(VolumeReport {
        closed_form: volume_cn1(inst),
        decomposition: volume_by_decomposition(inst),
        monte_carlo,
    })
}

/// Base measure and height of one cone, before their product is reduced to a
/// rational. Floating point, for inspection only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeDiagnostic {
    pub base: f64,
    pub height: f64,
    /// `base * height / (n + 1)`.
    pub volume: f64,
}

fn cone(base: f64, height: f64, n: usize) -> ConeDiagnostic {
    ConeDiagnostic {
        base,
        height,
        volume: base * height / (n + 1) as f64,
    }
}

/// Cone over the lifted `x_i >= 0` facet.
pub fn cone_diagnostic_fi(inst: &Instance, i: usize) -> Result<ConeDiagnostic> {
    let n = inst.n();
    if i == 0 || i >= n {
        return Err(Error::InvalidArgument(format!(
            "index {i} is not in 1..{}",
            n - 1
        )));
    }
    let gap = (inst.b_n() - inst.a_n()).to_f64();
    let pi = inst.pi().to_f64();
    let a_n = inst.a_n().to_f64();
    let b_i = inst.b(i).to_f64();
    let others = (inst.pi() / inst.b(i)).to_f64();
    let slant = (b_i * b_i + a_n * a_n * pi * pi).sqrt();
    let base = gap * others * slant / n as f64;
    let height = gap * b_i * pi / slant;
    Ok(cone(base, height, n))
}

/// Cone over the lifted `x_n <= b_n` facet.
pub fn cone_diagnostic_f(inst: &Instance) -> ConeDiagnostic {
    let n = inst.n();
    let gap = (inst.b_n() - inst.a_n()).to_f64();
    let pi = inst.pi().to_f64();
    let a_n = inst.a_n().to_f64();
    let b_n = inst.b_n().to_f64();
    let fraction = ((factorial_q(n - 1) - Rational::one()) / factorial_q(n)).to_f64();
    let slant = (gap * gap + a_n * a_n * pi * pi).sqrt();
    let base = fraction * pi * slant;
    let height = gap * b_n * pi / slant;
    cone(base, height, n)
}
