//! Maximizing a linear function over the hull.
//!
//! [`primal_solve`] picks the best of four candidate extreme points (full or
//! zero product, `x_n` at either bound) without enumerating all `2^n`
//! vertices. [`build_certificate`] then assigns every variable of the dual LP
//! of the complete inequality system so that its objective equals the primal
//! value, and [`verify_certificate`] checks the result in exact arithmetic.
//! [`brute_force_optimize`] is the enumeration oracle.

mod certificate;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{self, BoundChoice, Vertex};
use crate::instance::{IndexSets, Instance};
use crate::rational::Rational;

pub use certificate::{build_certificate, CertificateCase, DualCertificate};
pub use verify::{dual_objective, verify_certificate, Check, CheckKind, VerificationReport};

/// Maximize `c0 * y + sum(c[i] * x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Objective {
    pub c0: Rational,
    pub c: Vec<Rational>,
}

impl Objective {
    pub fn new(c0: Rational, c: Vec<Rational>) -> Self {
        Objective { c0, c }
    }

    /// Coefficient of `x_i` (1-based).
    pub fn coef(&self, i: usize) -> &Rational {
        &self.c[i - 1]
    }

    pub fn value(&self, x: &[Rational], y: &Rational) -> Rational {
        &self.c0 * y + self.c.iter().zip(x).map(|(c, x)| c * x).sum::<Rational>()
    }

    pub fn scaled(&self, factor: &Rational) -> Objective {
        Objective {
            c0: &self.c0 * factor,
            c: self.c.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_dim(&self, inst: &Instance) -> Result<()> {
        if self.c.len() != inst.n() {
            return Err(Error::DimensionMismatch {
                expected: inst.n(),
                found: self.c.len(),
            });
        }
        Ok(())
    }
}

/// `A`: every `c_i >= 0` for `i < n`; `B`: some `c_i < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
}

/// The four candidate extreme points. Declaration order is the tie-break
/// priority.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Winner {
    /// Full product, `x_n = b_n`.
    PiB,
    /// Full product, `x_n = a_n`.
    PiA,
    /// Zero product, `x_n = b_n`.
    ZeroB,
    /// Zero product, `x_n = a_n`.
    ZeroA,
}

impl Winner {
    pub const ALL: [Winner; 4] = [Winner::PiB, Winner::PiA, Winner::ZeroB, Winner::ZeroA];

    pub fn is_full_product(self) -> bool {
        matches!(self, Winner::PiB | Winner::PiA)
    }

    pub fn xn(self) -> BoundChoice {
        match self {
            Winner::PiB | Winner::ZeroB => BoundChoice::Upper,
            Winner::PiA | Winner::ZeroA => BoundChoice::Lower,
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::PiB => "pi-b",
            Winner::PiA => "pi-a",
            Winner::ZeroB => "zero-b",
            Winner::ZeroA => "zero-a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateValues {
    pub z_pi_b: Rational,
    pub z_pi_a: Rational,
    pub z_0_b: Rational,
    pub z_0_a: Rational,
    pub case: Case,
}

impl CandidateValues {
    pub fn get(&self, which: Winner) -> &Rational {
        match which {
            Winner::PiB => &self.z_pi_b,
            Winner::PiA => &self.z_pi_a,
            Winner::ZeroB => &self.z_0_b,
            Winner::ZeroA => &self.z_0_a,
        }
    }

    /// Largest candidate; ties go to the earliest in [`Winner::ALL`].
    pub fn winner(&self) -> Winner {
        let mut best = Winner::PiB;
        for w in Winner::ALL {
            if self.get(w) > self.get(best) {
                best = w;
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalResult {
    pub vertex: Vertex,
    pub z_star: Rational,
    pub winner: Winner,
}

pub fn classify(inst: &Instance, obj: &Objective) -> Result<IndexSets> {
    obj.check_dim(inst)?;
    let n = inst.n();
    let (nonneg, neg): (Vec<usize>, Vec<usize>) = (1..n).partition(|&i| !obj.coef(i).is_negative());
    let weight = |i: &usize| obj.coef(*i) * inst.b(*i);
    let s_plus = nonneg.iter().map(weight).sum();
    let s_minus = neg.iter().map(weight).sum();
    let k = if neg.is_empty() {
        // min_by returns the first of equal minima
        nonneg
            .iter()
            .copied()
            .min_by(|i, j| weight(i).cmp(&weight(j)))
    } else {
        None
    };
    Ok(IndexSets {
        nonneg,
        neg,
        s_plus,
        s_minus,
        pi: inst.pi(),
        k,
    })
}

pub fn candidate_values(inst: &Instance, obj: &Objective, sets: &IndexSets) -> CandidateValues {
    let (a_n, b_n) = (inst.a_n(), inst.b_n());
    let c_n = obj.coef(inst.n());
    let pi = &sets.pi;
    let full_b = &obj.c0 * b_n * pi + c_n * b_n;
    let full_a = &obj.c0 * a_n * pi + c_n * a_n;
    match sets.k {
        Some(k) => {
            let sacrifice = obj.coef(k) * inst.b(k);
            CandidateValues {
                z_pi_b: full_b + &sets.s_plus,
                z_pi_a: full_a + &sets.s_plus,
                z_0_b: c_n * b_n + &sets.s_plus - &sacrifice,
                z_0_a: c_n * a_n + &sets.s_plus - &sacrifice,
                case: Case::A,
            }
        }
        None => {
            let both = &sets.s_plus + &sets.s_minus;
            CandidateValues {
                z_pi_b: full_b + &both,
                z_pi_a: full_a + &both,
                z_0_b: c_n * b_n + &sets.s_plus,
                z_0_a: c_n * a_n + &sets.s_plus,
                case: Case::B,
            }
        }
    }
}

/// Best extreme point by comparing the four candidates.
pub fn primal_solve(inst: &Instance, obj: &Objective) -> Result<PrimalResult> {
    let sets = classify(inst, obj)?;
    let candidates = candidate_values(inst, obj, &sets);
    let winner = candidates.winner();
    let full = hull::full_mask(inst.n());
    let subset = if winner.is_full_product() {
        full
    } else if let Some(k) = sets.k {
        full & !(1u64 << (k - 1))
    } else {
        sets.nonneg.iter().fold(0u64, |m, &i| m | 1u64 << (i - 1))
    };
    let vertex = hull::vertex(inst, subset, winner.xn());
    let z_star = candidates.get(winner).clone();
    debug_assert_eq!(obj.value(&vertex.x, &vertex.y), z_star);
    Ok(PrimalResult {
        vertex,
        z_star,
        winner,
    })
}

/// Enumerates every extreme point. Ties keep the earliest vertex in
/// [`hull::vertices`] order.
pub fn brute_force_optimize(inst: &Instance, obj: &Objective) -> Result<PrimalResult> {
    obj.check_dim(inst)?;
    let mut best: Option<(Vertex, Rational)> = None;
    for v in hull::vertices(inst) {
        let value = obj.value(&v.x, &v.y);
        if best.as_ref().is_none_or(|(_, z)| value > *z) {
            best = Some((v, value));
        }
    }
    let (vertex, z_star) = best.expect("at least four vertices");
    let winner = match (vertex.is_full_product(), vertex.xn) {
        (true, BoundChoice::Upper) => Winner::PiB,
        (true, BoundChoice::Lower) => Winner::PiA,
        (false, BoundChoice::Upper) => Winner::ZeroB,
        (false, BoundChoice::Lower) => Winner::ZeroA,
    };
    Ok(PrimalResult {
        vertex,
        z_star,
        winner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    fn obj(c0: i64, c: &[i64]) -> Objective {
        Objective::new(q(c0), c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn classify_mixed_signs() {
        let inst = Instance::from_ints(1, &[2, 3, 4]);
        let sets = classify(&inst, &obj(7, &[1, -2, 5])).unwrap();
        assert_eq!(sets.nonneg, vec![1]);
        assert_eq!(sets.neg, vec![2]);
        assert_eq!(sets.s_plus, q(2));
        assert_eq!(sets.s_minus, q(-6));
        assert_eq!(sets.k, None);
    }

    #[test]
    fn classify_case_a_and_tie_break() {
        let inst = Instance::from_ints(1, &[2, 3, 4]);
        let sets = classify(&inst, &obj(7, &[1, 2, 5])).unwrap();
        assert_eq!(sets.k, Some(1));
        assert!(sets.neg.is_empty());
        let sets = classify(&inst, &obj(7, &[0, 0, 5])).unwrap();
        assert_eq!(sets.k, Some(1));
        assert_eq!(sets.nonneg, vec![1, 2]);
        let sets = classify(
            &Instance::from_ints(1, &[3, 1, 4, 2]),
            &obj(0, &[1, 3, 1, 0]),
        )
        .unwrap();
        // c_j b_j = 3, 3, 4: first minimum wins
        assert_eq!(sets.k, Some(1));
    }

    #[test]
    fn classify_rejects_wrong_dimension() {
        let inst = Instance::from_ints(1, &[2, 3]);
        assert!(classify(&inst, &obj(1, &[1, 2, 3])).is_err());
        assert!(primal_solve(&inst, &obj(1, &[1])).is_err());
    }

    #[test]
    fn candidates_for_pure_product() {
        let inst = Instance::from_ints(1, &[2, 3, 4]);
        let sets = classify(&inst, &obj(1, &[0, 0, 0])).unwrap();
        let z = candidate_values(&inst, &obj(1, &[0, 0, 0]), &sets);
        assert_eq!(z.case, Case::A);
        assert_eq!(z.z_pi_b, q(24));
        assert_eq!(z.z_pi_a, q(6));
        assert_eq!(z.z_0_b, q(0));
        assert_eq!(z.z_0_a, q(0));

        let z = candidate_values(&inst, &obj(-1, &[0, 0, 0]), &sets);
        assert_eq!(z.z_pi_b, q(-24));
        assert!(matches!(z.winner(), Winner::ZeroB));
    }

    #[test]
    fn candidates_two_variable_example() {
        let inst = Instance::from_ints(1, &[2, 3]);
        let o = obj(1, &[1, 1]);
        let sets = classify(&inst, &o).unwrap();
        assert_eq!(sets.k, Some(1));
        assert_eq!(sets.pi, q(2));
        let z = candidate_values(&inst, &o, &sets);
        assert_eq!(
            (z.z_pi_b, z.z_pi_a, z.z_0_b, z.z_0_a),
            (q(11), q(5), q(3), q(1))
        );
    }

    #[test]
    fn primal_examples() {
        let inst = Instance::from_ints(1, &[2, 3]);
        let r = primal_solve(&inst, &obj(1, &[1, 1])).unwrap();
        assert_eq!(
            (r.vertex.x.clone(), r.vertex.y.clone()),
            (vec![q(2), q(3)], q(6))
        );
        assert_eq!(r.z_star, q(11));
        assert_eq!(
            brute_force_optimize(&inst, &obj(1, &[1, 1]))
                .unwrap()
                .z_star,
            q(11)
        );

        let r = primal_solve(&inst, &obj(1, &[0, 0])).unwrap();
        assert_eq!(r.z_star, q(6));
        assert_eq!(r.winner, Winner::PiB);

        // Case B with a ZeroB/ZeroA tie resolved toward x_n = b_n.
        let inst = Instance::from_ints(1, &[1, 1, 2]);
        let o = obj(-1, &[1, -1, 0]);
        let z = candidate_values(&inst, &o, &classify(&inst, &o).unwrap());
        assert_eq!(
            (
                z.z_pi_b.clone(),
                z.z_pi_a.clone(),
                z.z_0_b.clone(),
                z.z_0_a.clone()
            ),
            (q(-2), q(-1), q(1), q(1))
        );
        let r = primal_solve(&inst, &o).unwrap();
        assert_eq!(r.winner, Winner::ZeroB);
        assert_eq!(r.vertex.x, vec![q(1), q(0), q(2)]);
        assert_eq!(r.vertex.y, q(0));
        assert_eq!(r.z_star, q(1));
        assert_eq!(brute_force_optimize(&inst, &o).unwrap().z_star, q(1));
    }

    #[test]
    fn primal_matches_enumeration_on_sign_patterns() {
        for n in 2..=6usize {
            let b: Vec<i64> = (0..n as i64).map(|i| (i % 3) + 1).collect();
            let mut b = b;
            b[n - 1] = 3;
            let inst = Instance::from_ints(1, &b);
            for code in 0..3usize.pow(n as u32 + 1) {
                let mut digits = code;
                let mut coefs = Vec::with_capacity(n + 1);
                for _ in 0..=n {
                    coefs.push((digits % 3) as i64 - 1);
                    digits /= 3;
                }
                let o = obj(coefs[0], &coefs[1..]);
                let fast = primal_solve(&inst, &o).unwrap();
                let slow = brute_force_optimize(&inst, &o).unwrap();
                assert_eq!(fast.z_star, slow.z_star, "n={n} c={coefs:?}");
                assert_eq!(o.value(&fast.vertex.x, &fast.vertex.y), fast.z_star);
            }
        }
    }

    #[test]
    fn degenerate_lower_bound_still_solves() {
        let inst = Instance::from_ints(0, &[1, 1, 2]);
        let o = obj(1, &[0, 0, 0]);
        assert_eq!(primal_solve(&inst, &o).unwrap().z_star, q(2));
        let o = obj(-1, &[0, 0, 1]);
        assert_eq!(
            primal_solve(&inst, &o).unwrap().z_star,
            brute_force_optimize(&inst, &o).unwrap().z_star
        );
    }
}
