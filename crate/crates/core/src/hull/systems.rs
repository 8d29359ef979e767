use super::{Family, InequalitySystem, LinearInequality, SystemKind};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

fn unit(n: usize, i: usize, value: Rational) -> Vec<Rational> {
    let mut coefs = vec![Rational::zero(); n];
    coefs[i - 1] = value;
    coefs
}

fn bound_rows(inst: &Instance) -> impl Iterator<Item = LinearInequality> + '_ {
    let n = inst.n();
    (1..=n).map(move |i| {
        LinearInequality::new(
            Family::UpperBound(i),
            Rational::zero(),
            unit(n, i, Rational::from(-1)),
            -inst.b(i),
        )
    })
}

/// The complete `3n + 2`-row description of the hull when only `x_n` has a
/// positive lower bound.
///
/// Row order: `UnderA`, `UnderB`, `OverA(i)` for `i < n`, `OverB(i)` for
/// `i < n`, `NonNegative`, `UpperBound(i)` for all `i`, `LowerBound`.
/// `a_n = 0` is accepted; the rows stay valid but some become redundant.
pub fn facet_system_cn1(inst: &Instance) -> InequalitySystem {
    let n = inst.n();
    let a_n = inst.a_n();
    let pi = inst.pi();
    let full = inst.full_product();
    let n_minus_2 = Rational::from(n as i64 - 2);
    let n_minus_1 = Rational::from(n as i64 - 1);
    // prod_{j in 1..n-1, j != i} b_j
    let pi_without = |i: usize| &pi / inst.b(i);

    let mut rows = Vec::with_capacity(3 * n + 2);

    let mut coef_x: Vec<Rational> = (1..n).map(|i| -(a_n * pi_without(i))).collect();
    coef_x.push(Rational::zero());
    rows.push(LinearInequality::new(
        Family::UnderA,
        Rational::one(),
        coef_x,
        -(&n_minus_2 * a_n * &pi),
    ));

    let coef_x = (1..=n).map(|i| -inst.pi_product(&[i])).collect();
    rows.push(LinearInequality::new(
        Family::UnderB,
        Rational::one(),
        coef_x,
        -(&n_minus_1 * &full),
    ));

    for i in 1..n {
        let mut coef_x = unit(n, i, a_n * pi_without(i));
        coef_x[n - 1] = pi.clone();
        rows.push(LinearInequality::new(
            Family::OverA(i),
            Rational::from(-1),
            coef_x,
            a_n * &pi,
        ));
    }

    for i in 1..n {
        rows.push(LinearInequality::new(
            Family::OverB(i),
            Rational::from(-1),
            unit(n, i, inst.pi_product(&[i])),
            Rational::zero(),
        ));
    }

    rows.push(LinearInequality::new(
        Family::NonNegative,
        Rational::one(),
        vec![Rational::zero(); n],
        Rational::zero(),
    ));
    rows.extend(bound_rows(inst));
    rows.push(LinearInequality::new(
        Family::LowerBound,
        Rational::zero(),
        unit(n, n, Rational::one()),
        a_n.clone(),
    ));

    debug_assert_eq!(rows.len(), 3 * n + 2);
    InequalitySystem {
        kind: SystemKind::Cn1,
        lower: inst.lower_bounds(),
        upper: inst.upper_bounds().to_vec(),
        rows,
    }
}

/// The `2n + 2`-row pyramid description with every lower bound treated as 0
/// (the instance's `a_n` is ignored).
///
/// Row order: `NonNegative`, `UpperBound(i)`, `PyramidCut`, `LiftedBound(i)`.
/// The cut `-y + sum_i (prod_{j != i} b_j) x_i <= (n-1) prod b` is stored
/// negated into `>=` form.
pub fn facet_system_cn0(inst: &Instance) -> InequalitySystem {
    let n = inst.n();
    let full = inst.full_product();
    let mut rows = Vec::with_capacity(2 * n + 2);
    rows.push(LinearInequality::new(
        Family::NonNegative,
        Rational::one(),
        vec![Rational::zero(); n],
        Rational::zero(),
    ));
    rows.extend(bound_rows(inst));
    rows.push(LinearInequality::new(
        Family::PyramidCut,
        Rational::one(),
        (1..=n).map(|i| -inst.pi_product(&[i])).collect(),
        -(Rational::from(n as i64 - 1) * &full),
    ));
    for i in 1..=n {
        rows.push(LinearInequality::new(
            Family::LiftedBound(i),
            -inst.pi_product(&[i]).recip().expect("bounds are positive"),
            unit(n, i, Rational::one()),
            Rational::zero(),
        ));
    }
    InequalitySystem {
        kind: SystemKind::Cn0,
        lower: vec![Rational::zero(); n],
        upper: inst.upper_bounds().to_vec(),
        rows,
    }
}

/// The four McCormick inequalities for `y = x_1 x_2` on `[a_1,b_1] x [a_2,b_2]`.
pub fn facet_system_mccormick(a: &[Rational; 2], b: &[Rational; 2]) -> Result<InequalitySystem> {
    for i in 0..2 {
        if a[i].is_negative() || a[i] >= b[i] {
            return Err(Error::InvalidInstance(format!(
                "McCormick bounds need 0 <= a_{0} < b_{0}, got a_{0} = {1}, b_{0} = {2}",
                i + 1,
                a[i],
                b[i]
            )));
        }
    }
    let [a1, a2] = a;
    let [b1, b2] = b;
    let row = |k: u8, coef_y: i64, c1: &Rational, c2: &Rational, rhs: Rational| {
        LinearInequality::new(
            Family::McCormick(k),
            Rational::from(coef_y),
            vec![c1.clone(), c2.clone()],
            rhs,
        )
    };
    let rows = vec![
        row(1, 1, &-a2, &-a1, -(a1 * a2)),
        row(2, -1, b2, a1, a1 * b2),
        row(3, -1, a2, b1, b1 * a2),
        row(4, 1, &-b2, &-b1, -(b1 * b2)),
    ];
    Ok(InequalitySystem {
        kind: SystemKind::McCormick,
        lower: a.to_vec(),
        upper: b.to_vec(),
        rows,
    })
}
