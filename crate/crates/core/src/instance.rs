//! Problem instances and the combinatorial helpers shared by every module.
//!
//! Variable indices are 1-based everywhere in the public API: variable `i`
//! ranges over `1..=n`, and variable `n` is the only one that may carry a
//! positive lower bound. Internally, `b[i - 1]` stores the upper bound of
//! variable `i`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The box `[0,b_1] x ... x [0,b_{n-1}] x [a_n,b_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    n: usize,
    a_n: Rational,
    b: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    n: usize,
    an: Rational,
    b: Vec<Rational>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        Instance::new(raw.n, raw.an, raw.b)
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        RawInstance {
            n: inst.n,
            an: inst.a_n,
            b: inst.b,
        }
    }
}

impl Instance {
    pub fn new(n: usize, a_n: Rational, b: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if b.len() != n {
            return Err(Error::InvalidInstance(format!(
                "expected {n} upper bounds, got {}",
                b.len()
            )));
        }
        if let Some(pos) = b.iter().position(|bi| !bi.is_positive()) {
            return Err(Error::InvalidInstance(format!(
                "upper bound b_{} = {} must be positive",
                pos + 1,
                b[pos]
            )));
        }
        if a_n.is_negative() {
            return Err(Error::InvalidInstance(format!(
                "a_n = {a_n} must be nonnegative"
            )));
        }
        if a_n >= b[n - 1] {
            return Err(Error::InvalidInstance(format!(
                "a_n = {a_n} must be strictly below b_n = {}",
                b[n - 1]
            )));
        }
        Ok(Instance { n, a_n, b })
    }

    /// Convenience constructor from machine integers; panics on invalid data.
    pub fn from_ints(a_n: i64, b: &[i64]) -> Self {
        Instance::new(b.len(), a_n.into(), b.iter().map(|&x| x.into()).collect())
            .expect("invalid instance")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a_n(&self) -> &Rational {
        &self.a_n
    }

    pub fn b_n(&self) -> &Rational {
        &self.b[self.n - 1]
    }

    /// Upper bound of variable `i` (1-based).
    pub fn b(&self, i: usize) -> &Rational {
        &self.b[i - 1]
    }

    pub fn upper_bounds(&self) -> &[Rational] {
        &self.b
    }

    /// Lower bound of variable `i` (1-based): zero except for `i == n`.
    pub fn lower(&self, i: usize) -> Rational {
        if i == self.n {
            self.a_n.clone()
        } else {
            Rational::zero()
        }
    }

    pub fn lower_bounds(&self) -> Vec<Rational> {
        (1..=self.n).map(|i| self.lower(i)).collect()
    }

    /// `a_n = 0`: the hull degenerates to the all-zero-lower-bound pyramid.
    pub fn is_degenerate(&self) -> bool {
        self.a_n.is_zero()
    }

    /// Product of the upper bounds of variables `1..n-1`.
    pub fn pi(&self) -> Rational {
        self.b[..self.n - 1].iter().product()
    }

    /// Product of all `n` upper bounds.
    pub fn full_product(&self) -> Rational {
        self.b.iter().product()
    }

    /// Product of `b_j` over `j` in `1..=n` not listed in `excluded` (1-based).
    pub fn pi_product(&self, excluded: &[usize]) -> Rational {
        (1..=self.n)
            .filter(|j| !excluded.contains(j))
            .map(|j| self.b(j))
            .product()
    }

    /// Replaces the upper bounds, revalidating.
    pub fn with_upper_bounds(&self, b: Vec<Rational>) -> Result<Self> {
        Instance::new(self.n, self.a_n.clone(), b)
    }

    pub fn with_a_n(&self, a_n: Rational) -> Result<Self> {
        Instance::new(self.n, a_n, self.b.clone())
    }
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * k)
}

pub(crate) fn factorial_q(m: usize) -> Rational {
    Rational::from(factorial(m as u32))
}

/// Sign classification of an objective's coefficients on variables `1..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSets {
    /// Indices with `c_i >= 0` (zero coefficients land here).
    pub nonneg: Vec<usize>,
    /// Indices with `c_i < 0`.
    pub neg: Vec<usize>,
    /// Sum of `c_i b_i` over `nonneg`.
    pub s_plus: Rational,
    /// Sum of `c_i b_i` over `neg`.
    pub s_minus: Rational,
    pub pi: Rational,
    /// Smallest index minimizing `c_j b_j` over `nonneg`; present only when `neg` is empty.
    pub k: Option<usize>,
}
