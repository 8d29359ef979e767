use serde::{Deserialize, Serialize};

use super::{InequalitySystem, Point};
use crate::error::Result;

/// Per-row slack `coef . (x, y) - rhs`, exact.
pub fn evaluate(sys: &InequalitySystem, point: &Point) -> Result<Vec<crate::Rational>> {
    sys.check_dim(point)?;
    Ok(sys.rows.iter().map(|row| row.slack(point)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub verdict: Verdict,
    /// Positions (0-based) of rows with negative slack; empty unless outside.
    pub violated: Vec<usize>,
    /// Positions of rows with zero slack.
    pub tight: Vec<usize>,
}

pub fn membership(sys: &InequalitySystem, point: &Point) -> Result<Membership> {
    let slacks = evaluate(sys, point)?;
    let violated: Vec<usize> = positions(&slacks, |s| s.is_negative());
    let tight: Vec<usize> = positions(&slacks, |s| s.is_zero());
    let verdict = if !violated.is_empty() {
        Verdict::Outside
    } else if !tight.is_empty() {
        Verdict::Boundary
    } else {
        Verdict::Inside
    };
    Ok(Membership {
        verdict,
        violated,
        tight,
    })
}

fn positions(slacks: &[crate::Rational], pred: impl Fn(&crate::Rational) -> bool) -> Vec<usize> {
    slacks
        .iter()
        .enumerate()
        .filter(|(_, s)| pred(s))
        .map(|(i, _)| i)
        .collect()
}

/// Floating-point copy of a system for high-volume sampling.
///
/// A point is accepted when every slack is at least `-tol * scale`, where
/// `scale` is the sum of the magnitudes of the row's terms at that point.
#[derive(Clone, Debug)]
pub struct FloatSystem {
    coef_y: Vec<f64>,
    coef_x: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    tol: f64,
}

/// `2^-40`.
pub const SAMPLER_REL_TOL: f64 = 1.0 / (1u64 << 40) as f64;

impl FloatSystem {
    pub fn new(sys: &InequalitySystem) -> Self {
        Self::with_tolerance(sys, SAMPLER_REL_TOL)
    }

    pub fn with_tolerance(sys: &InequalitySystem, tol: f64) -> Self {
        FloatSystem {
            coef_y: sys.rows.iter().map(|r| r.coef_y.to_f64()).collect(),
            coef_x: sys
                .rows
                .iter()
                .map(|r| r.coef_x.iter().map(|c| c.to_f64()).collect())
                .collect(),
            rhs: sys.rows.iter().map(|r| r.rhs.to_f64()).collect(),
            tol,
        }
    }

    pub fn contains(&self, x: &[f64], y: f64) -> bool {
        (0..self.rhs.len()).all(|r| {
            let mut lhs = self.coef_y[r] * y;
            let mut scale = lhs.abs() + self.rhs[r].abs();
            for (c, xi) in self.coef_x[r].iter().zip(x) {
                let term = c * xi;
                lhs += term;
                scale += term.abs();
            }
            lhs - self.rhs[r] >= -self.tol * scale
        })
    }
}
