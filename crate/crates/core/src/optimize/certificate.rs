//! Dual certificates for the complete inequality system.
//!
//! Dual variables, all nonnegative, pair with the rows of the system:
//! `u1` with `UnderA`, `u2` with `UnderB`, `v_i` with `OverA(i)`, `w_i` with
//! `OverB(i)`, `s1` with `y >= 0`, `s2` with `x_n >= a_n`, and `t_i` with
//! `x_i <= b_i`. The case is chosen by which candidate won, and for a
//! full-product win at `x_n = a_n` with every `c_i >= 0`, by the sign of `c0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{classify, Case, Objective, PrimalResult, Winner};
use crate::error::{Error, Result};
use crate::instance::{IndexSets, Instance};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CertificateCase {
    A1,
    A2a,
    A2b,
    A3,
    A4,
    B1,
    B2,
    B3,
    B4,
}

impl CertificateCase {
    pub const ALL: [CertificateCase; 9] = [
        CertificateCase::A1,
        CertificateCase::A2a,
        CertificateCase::A2b,
        CertificateCase::A3,
        CertificateCase::A4,
        CertificateCase::B1,
        CertificateCase::B2,
        CertificateCase::B3,
        CertificateCase::B4,
    ];

    /// Case selection from the winning candidate.
    pub fn select(case: Case, winner: Winner, c0: &Rational) -> Self {
        match (case, winner) {
            (Case::A, Winner::PiB) => CertificateCase::A1,
            (Case::A, Winner::PiA) if !c0.is_negative() => CertificateCase::A2a,
            (Case::A, Winner::PiA) => CertificateCase::A2b,
            (Case::A, Winner::ZeroB) => CertificateCase::A3,
            (Case::A, Winner::ZeroA) => CertificateCase::A4,
            (Case::B, Winner::PiB) => CertificateCase::B1,
            (Case::B, Winner::PiA) => CertificateCase::B2,
            (Case::B, Winner::ZeroB) => CertificateCase::B3,
            (Case::B, Winner::ZeroA) => CertificateCase::B4,
        }
    }
}

impl fmt::Display for CertificateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A dual-feasible assignment proving optimality of a primal vertex.
///
/// `v` and `w` are indexed by variables `1..n-1` (position `i - 1`); `t` by
/// `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub case: CertificateCase,
    /// The fixed index used by `A1`, `A2a` and `B2`.
    pub ell: Option<usize>,
    pub u1: Rational,
    pub u2: Rational,
    pub s1: Rational,
    pub s2: Rational,
    pub v: Vec<Rational>,
    pub w: Vec<Rational>,
    pub t: Vec<Rational>,
}

impl DualCertificate {
    fn zeros(case: CertificateCase, n: usize) -> Self {
        DualCertificate {
            case,
            ell: None,
            u1: Rational::zero(),
            u2: Rational::zero(),
            s1: Rational::zero(),
            s2: Rational::zero(),
            v: vec![Rational::zero(); n - 1],
            w: vec![Rational::zero(); n - 1],
            t: vec![Rational::zero(); n],
        }
    }

    /// Every dual variable, labelled, in a fixed order.
    pub fn variables(&self) -> Vec<(String, &Rational)> {
        let mut out = vec![
            ("u1".to_string(), &self.u1),
            ("u2".to_string(), &self.u2),
            ("s1".to_string(), &self.s1),
            ("s2".to_string(), &self.s2),
        ];
        out.extend(
            self.v
                .iter()
                .enumerate()
                .map(|(i, x)| (format!("v{}", i + 1), x)),
        );
        out.extend(
            self.w
                .iter()
                .enumerate()
                .map(|(i, x)| (format!("w{}", i + 1), x)),
        );
        out.extend(
            self.t
                .iter()
                .enumerate()
                .map(|(i, x)| (format!("t{}", i + 1), x)),
        );
        out
    }

    pub fn scaled(&self, factor: &Rational) -> DualCertificate {
        let scale = |xs: &[Rational]| xs.iter().map(|x| x * factor).collect();
        DualCertificate {
            case: self.case,
            ell: self.ell,
            u1: &self.u1 * factor,
            u2: &self.u2 * factor,
            s1: &self.s1 * factor,
            s2: &self.s2 * factor,
            v: scale(&self.v),
            w: scale(&self.w),
            t: scale(&self.t),
        }
    }
}

/// Shared quantities for the certificate formulas.
struct Data<'a> {
    inst: &'a Instance,
    obj: &'a Objective,
    sets: IndexSets,
    n: usize,
    c0: &'a Rational,
    c_n: &'a Rational,
    a_n: &'a Rational,
    b_n: &'a Rational,
    pi: Rational,
}

impl<'a> Data<'a> {
    fn c(&self, i: usize) -> &Rational {
        self.obj.coef(i)
    }

    fn b(&self, i: usize) -> &Rational {
        self.inst.b(i)
    }

    /// `c_i b_i`.
    fn weight(&self, i: usize) -> Rational {
        self.c(i) * self.b(i)
    }

    fn k(&self) -> usize {
        self.sets.k.expect("k is defined when every c_i >= 0")
    }
}

fn require(case: CertificateCase, holds: bool, what: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::InternalContradiction(format!(
            "certificate {case}: precondition {what} fails"
        )))
    }
}

/// Builds the dual certificate matching `result`, which must come from
/// [`super::primal_solve`] on the same data.
///
/// Fails with [`Error::Unsupported`] when `a_n = 0`, and with
/// [`Error::InternalContradiction`] if a certificate precondition does not
/// hold (which would mean `result` is not optimal).
pub fn build_certificate(
    inst: &Instance,
    obj: &Objective,
    result: &PrimalResult,
) -> Result<DualCertificate> {
    if inst.is_degenerate() {
        return Err(Error::Unsupported(
            "dual certificates need a positive lower bound a_n".to_string(),
        ));
    }
    let sets = classify(inst, obj)?;
    let n = inst.n();
    let d = Data {
        inst,
        obj,
        n,
        c0: &obj.c0,
        c_n: obj.coef(n),
        a_n: inst.a_n(),
        b_n: inst.b_n(),
        pi: sets.pi.clone(),
        sets,
    };
    let case = if d.sets.neg.is_empty() {
        Case::A
    } else {
        Case::B
    };
    let which = CertificateCase::select(case, result.winner, d.c0);
    let cert = match which {
        CertificateCase::A1 => cert_a1(&d)?,
        CertificateCase::A2a => cert_a2a(&d)?,
        CertificateCase::A2b => cert_a2b(&d)?,
        CertificateCase::A3 => cert_a3(&d)?,
        CertificateCase::A4 => cert_a4(&d)?,
        CertificateCase::B1 => cert_b1(&d)?,
        CertificateCase::B2 => cert_b2(&d)?,
        CertificateCase::B3 => cert_b3(&d)?,
        CertificateCase::B4 => cert_b4(&d)?,
    };
    if let Some((name, value)) = cert.variables().into_iter().find(|(_, x)| x.is_negative()) {
        return Err(Error::InternalContradiction(format!(
            "certificate {which}: {name} = {value} is negative"
        )));
    }
    Ok(cert)
}

/// Full product at `x_n = b_n`, all `c_i >= 0`.
fn cert_a1(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::A1;
    let (c0, pi) = (d.c0, &d.pi);
    let k = d.k();
    require(case, !(d.c_n + c0 * pi).is_negative(), "c_n + c0 Pi >= 0")?;
    require(
        case,
        !(d.weight(k) + c0 * d.b_n * pi).is_negative(),
        "c_k b_k + c0 b_n Pi >= 0",
    )?;

    let (plus, minus) = (c0.positive_part(), c0.negative_part());
    let ell = 1;
    let mut cert = DualCertificate::zeros(case, d.n);
    cert.ell = Some(ell);
    cert.u2 = minus.clone();
    cert.v[ell - 1] = plus.clone();
    for i in 1..d.n {
        let bi = d.b(i);
        let mut t = d.c(i) - d.b_n / bi * pi * &minus;
        if i == ell {
            t += d.a_n / bi * pi * &plus;
        }
        cert.t[i - 1] = t;
    }
    cert.t[d.n - 1] = d.c_n + c0 * pi;
    Ok(cert)
}

/// Full product at `x_n = a_n`, all `c_i >= 0`, `c0 >= 0`.
fn cert_a2a(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::A2a;
    let (c0, pi) = (d.c0, &d.pi);
    require(case, !c0.is_negative(), "c0 >= 0")?;
    require(case, !(d.c_n + c0 * pi).is_positive(), "c_n + c0 Pi <= 0")?;

    let ell = 1;
    let mut cert = DualCertificate::zeros(case, d.n);
    cert.ell = Some(ell);
    cert.v[ell - 1] = c0.clone();
    for i in 1..d.n {
        cert.t[i - 1] = d.c(i).clone();
    }
    cert.t[ell - 1] += c0 * d.a_n / d.b(ell) * pi;
    cert.s2 = -(d.c_n + c0 * pi);
    Ok(cert)
}

/// Full product at `x_n = a_n`, all `c_i >= 0`, `c0 < 0`.
fn cert_a2b(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::A2b;
    let (c0, pi, a_n, b_n) = (d.c0, &d.pi, d.a_n, d.b_n);
    let cn_plus = d.c_n.positive_part();
    require(case, c0.is_negative(), "c0 < 0")?;
    require(case, !(d.c_n + c0 * pi).is_positive(), "c_n + c0 Pi <= 0")?;
    let margin = c0 * a_n * pi - (b_n - a_n) * &cn_plus;
    require(
        case,
        !(d.weight(d.k()) + &margin).is_negative(),
        "c_k b_k + c0 a_n Pi - (b_n - a_n) c_n^+ >= 0",
    )?;

    let mut cert = DualCertificate::zeros(case, d.n);
    cert.u1 = -c0 - &cn_plus / pi;
    cert.u2 = &cn_plus / pi;
    for i in 1..d.n {
        cert.t[i - 1] = (d.weight(i) + &margin) / d.b(i);
    }
    cert.s2 = d.c_n.negative_part();
    Ok(cert)
}

/// Zero product at `x_n = b_n`, all `c_i >= 0`.
fn cert_a3(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::A3;
    let (c0, pi, a_n, b_n, c_n) = (d.c0, &d.pi, d.a_n, d.b_n, d.c_n);
    let k = d.k();
    let ckbk = d.weight(k);
    let cnbn = c_n * b_n;
    require(case, !c_n.is_negative(), "c_n >= 0")?;
    require(
        case,
        !(c0 * b_n * pi + &ckbk).is_positive(),
        "c0 b_n Pi + c_k b_k <= 0",
    )?;
    require(
        case,
        !(-&ckbk - c0 * a_n * pi + c_n * (b_n - a_n)).is_negative(),
        "-c_k b_k - c0 a_n Pi + c_n (b_n - a_n) >= 0",
    )?;

    let mut cert = DualCertificate::zeros(case, d.n);
    cert.u1 = (&ckbk - &cnbn).positive_part() / (a_n * pi);
    cert.u2 = c_n.clone().min(&ckbk / b_n) / pi;
    for i in (1..d.n).filter(|&i| i != k) {
        cert.t[i - 1] = d.c(i) - &ckbk / d.b(i);
    }
    cert.t[d.n - 1] = (&cnbn - &ckbk).positive_part() / b_n;
    cert.s1 = -c0 - &cert.u1 - &cert.u2;
    Ok(cert)
}

/// Zero product at `x_n = a_n`, all `c_i >= 0`.
fn cert_a4(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::A4;
    let (c0, pi, a_n, c_n) = (d.c0, &d.pi, d.a_n, d.c_n);
    let k = d.k();
    let ckbk = d.weight(k);
    let scale = a_n * pi;
    require(case, !c_n.is_positive(), "c_n <= 0")?;
    require(
        case,
        !(&ckbk + c0 * &scale).is_positive(),
        "c_k b_k + c0 a_n Pi <= 0",
    )?;

    let mut cert = DualCertificate::zeros(case, d.n);
    cert.u1 = &ckbk / &scale;
    for i in (1..d.n).filter(|&i| i != k) {
        cert.t[i - 1] = d.c(i) - &ckbk / d.b(i);
    }
    cert.s1 = -(&ckbk + c0 * &scale) / &scale;
    cert.s2 = -c_n;
    Ok(cert)
}

/// Full product at `x_n = b_n`, some `c_i < 0`.
fn cert_b1(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::B1;
    let (c0, pi, a_n, b_n, c_n) = (d.c0, &d.pi, d.a_n, d.b_n, d.c_n);
    let s_minus = &d.sets.s_minus;
    require(case, !(c_n + c0 * pi).is_negative(), "c_n + c0 Pi >= 0")?;
    require(
        case,
        !(c0 * b_n * pi + s_minus).is_negative(),
        "c0 b_n Pi + S- >= 0",
    )?;
    require(
        case,
        !(c0 * b_n * pi + s_minus + c_n * (b_n - a_n)).is_negative(),
        "c0 b_n Pi + S- + c_n (b_n - a_n) >= 0",
    )?;

    let sigma = c_n.negative_part() / pi;
    let mut cert = DualCertificate::zeros(case, d.n);
    for &i in &d.sets.nonneg {
        cert.t[i - 1] = d.c(i).clone();
    }
    for &i in &d.sets.neg {
        let lambda = d.weight(i) / s_minus;
        let v = &sigma * &lambda;
        let w = (c0 - &sigma) * &lambda;
        let bi = d.b(i);
        cert.t[i - 1] = d.c(i) + a_n / bi * pi * &v + b_n / bi * pi * &w;
        cert.v[i - 1] = v;
        cert.w[i - 1] = w;
    }
    cert.t[d.n - 1] = c_n + pi * &sigma;
    Ok(cert)
}

/// Full product at `x_n = a_n`, some `c_i < 0`.
fn cert_b2(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::B2;
    let (c0, pi, a_n, c_n) = (d.c0, &d.pi, d.a_n, d.c_n);
    let s_minus = &d.sets.s_minus;
    let scale = a_n * pi;
    let head = c0 * &scale + s_minus;
    require(case, !(c_n + c0 * pi).is_positive(), "c_n + c0 Pi <= 0")?;
    require(case, !head.is_negative(), "c0 a_n Pi + S- >= 0")?;

    let ell = d.sets.neg[0];
    let mut cert = DualCertificate::zeros(case, d.n);
    cert.ell = Some(ell);
    for &i in &d.sets.nonneg {
        cert.t[i - 1] = d.c(i).clone();
    }
    for &i in d.sets.neg.iter().filter(|&&i| i != ell) {
        cert.v[i - 1] = -d.weight(i) / &scale;
    }
    cert.v[ell - 1] = (&head - d.weight(ell)) / &scale;
    cert.t[ell - 1] = &head / d.b(ell);
    cert.s2 = -(c_n + c0 * pi);
    Ok(cert)
}

/// Zero product at `x_n = b_n`, some `c_i < 0`.
fn cert_b3(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::B3;
    let (c0, pi, b_n, c_n) = (d.c0, &d.pi, d.b_n, d.c_n);
    let s_minus = &d.sets.s_minus;
    let scale = b_n * pi;
    require(case, !c_n.is_negative(), "c_n >= 0")?;
    require(
        case,
        !(c0 * &scale + s_minus).is_positive(),
        "c0 b_n Pi + S- <= 0",
    )?;

    let mut cert = DualCertificate::zeros(case, d.n);
    for &i in &d.sets.neg {
        cert.w[i - 1] = -d.weight(i) / &scale;
    }
    for &i in &d.sets.nonneg {
        cert.t[i - 1] = d.c(i).clone();
    }
    cert.t[d.n - 1] = c_n.clone();
    cert.s1 = -(c0 * &scale + s_minus) / &scale;
    Ok(cert)
}

/// Zero product at `x_n = a_n`, some `c_i < 0`.
fn cert_b4(d: &Data) -> Result<DualCertificate> {
    let case = CertificateCase::B4;
    let (c0, pi, a_n, b_n, c_n) = (d.c0, &d.pi, d.a_n, d.b_n, d.c_n);
    let s_minus = &d.sets.s_minus;
    require(case, !c_n.is_positive(), "c_n <= 0")?;
    require(
        case,
        !(c0 * a_n * pi + s_minus).is_positive(),
        "c0 a_n Pi + S- <= 0",
    )?;
    require(
        case,
        !(c0 * b_n * pi + s_minus + c_n * (b_n - a_n)).is_positive(),
        "c0 b_n Pi + S- + c_n (b_n - a_n) <= 0",
    )?;

    let beta = (a_n * pi).recip()?.min(-c_n / (-s_minus * pi));
    let alpha = (Rational::one() - a_n * pi * &beta) / (b_n * pi);
    let mut cert = DualCertificate::zeros(case, d.n);
    for &i in &d.sets.neg {
        let weight = d.weight(i);
        cert.v[i - 1] = -&beta * &weight;
        cert.w[i - 1] = -&alpha * &weight;
    }
    for &i in &d.sets.nonneg {
        cert.t[i - 1] = d.c(i).clone();
    }
    cert.s2 = -c_n + pi * &beta * s_minus;
    cert.s1 = -(&alpha + &beta) * s_minus - c0;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::{primal_solve, verify_certificate};

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    fn obj(c0: i64, c: &[i64]) -> Objective {
        Objective::new(q(c0), c.iter().map(|&x| q(x)).collect())
    }

    fn certify(inst: &Instance, o: &Objective) -> DualCertificate {
        let result = primal_solve(inst, o).unwrap();
        let cert = build_certificate(inst, o, &result).unwrap();
        let report = verify_certificate(inst, o, &cert, &result).unwrap();
        assert!(report.passed(), "{report:?}");
        cert
    }

    #[test]
    fn maximize_product_uses_a1() {
        let inst = Instance::new(3, Rational::ratio(1, 2), vec![q(2), q(3), q(4)]).unwrap();
        let pi = inst.pi();
        let cert = certify(&inst, &obj(1, &[0, 0, 0]));
        assert_eq!(cert.case, CertificateCase::A1);
        assert_eq!(cert.ell, Some(1));
        assert_eq!(cert.u2, q(0));
        assert_eq!(cert.v[0], q(1));
        assert_eq!(cert.t[0], inst.a_n() * &pi / inst.b(1));
        assert_eq!(cert.t[1], q(0));
        assert_eq!(cert.t[2], pi);
    }

    #[test]
    fn tie_between_full_and_zero_product_uses_a2a() {
        let inst = Instance::from_ints(1, &[2, 3]);
        let cert = certify(&inst, &obj(0, &[0, -1]));
        assert_eq!(cert.case, CertificateCase::A2a);
        assert_eq!(cert.s2, q(1));
        assert_eq!(cert.v, vec![q(0)]);
        assert_eq!(cert.t, vec![q(0), q(0)]);
    }

    #[test]
    fn mixed_signs_zero_product_uses_b3() {
        let inst = Instance::from_ints(1, &[1, 1, 2]);
        let cert = certify(&inst, &obj(-1, &[1, -1, 0]));
        assert_eq!(cert.case, CertificateCase::B3);
        assert_eq!(cert.w, vec![q(0), Rational::ratio(1, 2)]);
        assert_eq!(cert.t, vec![q(1), q(0), q(0)]);
        assert_eq!(cert.s1, Rational::ratio(3, 2));
    }

    #[test]
    fn refuses_zero_lower_bound() {
        let inst = Instance::from_ints(0, &[1, 1, 2]);
        let o = obj(1, &[0, 0, 0]);
        let result = primal_solve(&inst, &o).unwrap();
        assert!(matches!(
            build_certificate(&inst, &o, &result),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn non_optimal_result_is_a_contradiction() {
        let inst = Instance::from_ints(1, &[2, 3]);
        let o = obj(1, &[1, 1]);
        let mut result = primal_solve(&inst, &o).unwrap();
        result.winner = Winner::ZeroA;
        assert!(matches!(
            build_certificate(&inst, &o, &result),
            Err(Error::InternalContradiction(_))
        ));
    }

    #[test]
    fn every_case_reachable_with_small_objectives() {
        let inst = Instance::from_ints(1, &[2, 1, 3]);
        let mut seen = std::collections::BTreeSet::new();
        for c0 in -6..=6 {
            for c1 in -2..=2 {
                for c2 in -2..=2 {
                    for c3 in -4..=4 {
                        seen.insert(certify(&inst, &obj(c0, &[c1, c2, c3])).case);
                    }
                }
            }
        }
        assert_eq!(
            seen.into_iter().collect::<Vec<_>>(),
            CertificateCase::ALL.to_vec()
        );
    }
}
