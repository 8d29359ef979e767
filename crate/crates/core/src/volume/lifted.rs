use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{Family, InequalitySystem, LinearInequality, Point, SystemKind};
use crate::instance::Instance;
use crate::rational::Rational;

fn unit(n: usize, i: usize, value: Rational) -> Vec<Rational> {
    let mut coefs = vec![Rational::zero(); n];
    coefs[i - 1] = value;
    coefs
}

/// Facets of the pyramid `Q`: the prism's facets lifted through the apex
/// `v_1`, plus `y >= 0`.
///
/// Row order: `LiftedBound(i)` and `UpperBound(i)` for `i < n`, then
/// `LowerBound`, `LiftedXnUpper`, `LiftedCut`, `NonNegative`; `2n + 2` rows.
pub fn lifted_q_facets(inst: &Instance) -> Result<InequalitySystem> {
    if inst.is_degenerate() {
        return Err(Error::Unsupported(
            "lifted pyramid facets divide by a_n and need a_n > 0".to_string(),
        ));
    }
    let n = inst.n();
    let (a_n, b_n) = (inst.a_n(), inst.b_n());
    let apex_height = a_n * inst.pi();
    let mut rows = Vec::with_capacity(2 * n + 2);
    for i in 1..n {
        rows.push(LinearInequality::new(
            Family::LiftedBound(i),
            -(inst.b(i) / &apex_height),
            unit(n, i, Rational::one()),
            Rational::zero(),
        ));
    }
    for i in 1..n {
        rows.push(LinearInequality::new(
            Family::UpperBound(i),
            Rational::zero(),
            unit(n, i, Rational::from(-1)),
            -inst.b(i),
        ));
    }
    rows.push(LinearInequality::new(
        Family::LowerBound,
        Rational::zero(),
        unit(n, n, Rational::one()),
        a_n.clone(),
    ));
    rows.push(LinearInequality::new(
        Family::LiftedXnUpper,
        -((b_n - a_n) / &apex_height),
        unit(n, n, Rational::from(-1)),
        -b_n,
    ));
    let mut cut: Vec<Rational> = (1..n)
        .map(|i| -inst.b(i).recip().expect("b_i > 0"))
        .collect();
    cut.push(Rational::zero());
    rows.push(LinearInequality::new(
        Family::LiftedCut,
        apex_height.recip()?,
        cut,
        -Rational::from(n as i64 - 2),
    ));
    rows.push(LinearInequality::new(
        Family::NonNegative,
        Rational::one(),
        vec![Rational::zero(); n],
        Rational::zero(),
    ));
    Ok(InequalitySystem {
        kind: SystemKind::LiftedPyramid,
        lower: inst.lower_bounds(),
        upper: inst.upper_bounds().to_vec(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationRow {
    /// 0-based position in [`lifted_q_facets`].
    pub row: usize,
    pub family: Family,
    pub slack: Rational,
    pub separates: bool,
}

/// Slack of `v_2 = (b, b_n Pi)` on every facet of `Q`.
pub fn separation_check_v2(inst: &Instance) -> Result<Vec<SeparationRow>> {
    let sys = lifted_q_facets(inst)?;
    let v2 = Point::new(inst.upper_bounds().to_vec(), inst.full_product());
    Ok(sys
        .rows
        .iter()
        .enumerate()
        .map(|(row, ineq)| {
            let slack = ineq.slack(&v2);
            SeparationRow {
                row,
                family: ineq.family,
                separates: slack.is_negative(),
                slack,
            }
        })
        .collect())
}
