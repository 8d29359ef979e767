use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DualCertificate, Objective, PrimalResult};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Every dual variable is `>= 0`.
    Nonnegativity,
    /// The constraint paired with `y`.
    DualY,
    /// The constraints paired with `x_1..x_{n-1}`.
    DualX,
    /// The constraint paired with `x_n`.
    DualXn,
    /// Dual objective equals the primal value.
    Objective,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Nonnegativity => "nonnegativity",
            CheckKind::DualY => "dual-y",
            CheckKind::DualX => "dual-x",
            CheckKind::DualXn => "dual-xn",
            CheckKind::Objective => "objective",
        })
    }
}

/// One exact check. `residual` is zero iff the check passes.
///
/// For `Nonnegativity` it is the sum of the negative parts of all variables,
/// for `DualX` the sum of absolute residuals over `i < n`, and otherwise the
/// signed difference `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub residual: Rational,
}

impl Check {
    fn new(kind: CheckKind, residual: Rational) -> Self {
        Check {
            kind,
            passed: residual.is_zero(),
            residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check_shape(inst: &Instance, cert: &DualCertificate) -> Result<()> {
    let n = inst.n();
    for (len, expected) in [
        (cert.v.len(), n - 1),
        (cert.w.len(), n - 1),
        (cert.t.len(), n),
    ] {
        if len != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: len,
            });
        }
    }
    Ok(())
}

/// Value of the dual objective at `cert`.
pub fn dual_objective(inst: &Instance, cert: &DualCertificate) -> Result<Rational> {
    check_shape(inst, cert)?;
    let n = inst.n() as i64;
    let (a_n, b_n) = (inst.a_n(), inst.b_n());
    let pi = inst.pi();
    let sum_v: Rational = cert.v.iter().sum();
    let bounds: Rational = cert
        .t
        .iter()
        .zip(inst.upper_bounds())
        .map(|(t, b)| t * b)
        .sum();
    Ok(
        Rational::from(n - 2) * a_n * &pi * &cert.u1 + Rational::from(n - 1) * b_n * &pi * &cert.u2
            - a_n * &pi * sum_v
            - a_n * &cert.s2
            + bounds,
    )
}

/// Checks dual feasibility and strong duality of `cert` against `result` in
/// exact arithmetic.
pub fn verify_certificate(
    inst: &Instance,
    obj: &Objective,
    cert: &DualCertificate,
    result: &PrimalResult,
) -> Result<VerificationReport> {
    obj.check_dim(inst)?;
    check_shape(inst, cert)?;
    let n = inst.n();
    let (a_n, b_n) = (inst.a_n(), inst.b_n());
    let pi = inst.pi();
    let sum_v: Rational = cert.v.iter().sum();
    let sum_w: Rational = cert.w.iter().sum();

    let negative: Rational = cert
        .variables()
        .into_iter()
        .map(|(_, x)| x.negative_part())
        .sum();

    let dual_y = -&cert.u1 - &cert.u2 + &sum_v + &sum_w - &cert.s1 - &obj.c0;

    let dual_x: Rational = (1..n)
        .map(|i| {
            let scale = &pi / inst.b(i);
            let lhs = a_n * &scale * &cert.u1 + b_n * &scale * &cert.u2
                - a_n * &scale * &cert.v[i - 1]
                - b_n * &scale * &cert.w[i - 1]
                + &cert.t[i - 1];
            (lhs - obj.coef(i)).abs()
        })
        .sum();

    let dual_xn = &pi * &cert.u2 - &pi * &sum_v - &cert.s2 + &cert.t[n - 1] - obj.coef(n);

    let objective = dual_objective(inst, cert)? - &result.z_star;

    Ok(VerificationReport {
        checks: vec![
            Check::new(CheckKind::Nonnegativity, negative),
            Check::new(CheckKind::DualY, dual_y),
            Check::new(CheckKind::DualX, dual_x),
            Check::new(CheckKind::DualXn, dual_xn),
            Check::new(CheckKind::Objective, objective),
        ],
    })
}
