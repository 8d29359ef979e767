//! V- and H-representations of the hull of `y = x_1 x_2 ... x_n` over a box.
//!
//! Three inequality systems are available:
//!
//! * [`facet_system_cn1`]: the complete description when only `x_n` may have a
//!   positive lower bound (`3n + 2` rows in seven families).
//! * [`facet_system_cn0`]: the pyramid description for all-zero lower bounds.
//! * [`facet_system_mccormick`]: the four McCormick inequalities for `n = 2`
//!   with arbitrary nonnegative lower bounds.
//!
//! Rows are kept in `>=` form with exact, unscaled coefficients:
//! `coef_y * y + sum(coef_x[i] * x_i) >= rhs`.

mod diagnostics;
mod membership;
mod systems;
mod validity;
mod vertices;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use diagnostics::{affine_rank, facet_diagnostics, tight_rows, FacetDiagnostic};
pub use membership::{evaluate, membership, FloatSystem, Membership, Verdict};
pub use systems::{facet_system_cn0, facet_system_cn1, facet_system_mccormick};
pub use validity::{table_entry, SlackTable};
pub use vertices::vertices;
pub(crate) use vertices::{full_mask, vertex};

/// Which bound `x_n` sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundChoice {
    Lower,
    Upper,
}

/// A point `(x, y)` of `R^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub x: Vec<Rational>,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Vec<Rational>, y: Rational) -> Self {
        Point { x, y }
    }
}

/// An extreme point of the hull.
///
/// `subset` is a bitmask over variables `1..n-1`: bit `i - 1` is set iff
/// `x_i = b_i`; the remaining `x_i` are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub x: Vec<Rational>,
    pub y: Rational,
    pub subset: u64,
    pub xn: BoundChoice,
}

impl Vertex {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.subset >> (i - 1) & 1 == 1
    }

    /// 1-based indices in the subset.
    pub fn subset_indices(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.contains(i)).collect()
    }

    pub fn subset_len(&self) -> usize {
        self.subset.count_ones() as usize
    }

    /// Every `x_i` with `i < n` at its upper bound.
    pub fn is_full_product(&self) -> bool {
        self.subset_len() == self.n() - 1
    }

    pub fn point(&self) -> Point {
        Point {
            x: self.x.clone(),
            y: self.y.clone(),
        }
    }
}

/// Which inequality of which system a row is. Indices are 1-based variable indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `y >= a_n Pi (sum x_i / b_i - (n - 2))`.
    UnderA,
    /// `y >= sum_i (prod_{j != i} b_j) x_i - (n - 1) prod b`.
    UnderB,
    /// `y <= (a_n Pi / b_i) x_i + Pi x_n - a_n Pi`.
    OverA(usize),
    /// `y <= (prod_{j != i} b_j) x_i`.
    OverB(usize),
    /// `y >= 0`.
    NonNegative,
    /// `x_i <= b_i`.
    UpperBound(usize),
    /// `x_n >= a_n`.
    LowerBound,
    /// Upper envelope cut of the zero-lower-bound pyramid.
    PyramidCut,
    /// A bound `x_i >= 0` lifted through the apex of a pyramid.
    LiftedBound(usize),
    /// `x_n <= b_n` lifted through the apex `v_1`.
    LiftedXnUpper,
    /// The corner-cut of the truncated box lifted through `v_1`.
    LiftedCut,
    /// One of the four McCormick inequalities, numbered 1 to 4.
    McCormick(u8),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::UnderA => write!(f, "under-a"),
            Family::UnderB => write!(f, "under-b"),
            Family::OverA(i) => write!(f, "over-a:{i}"),
            Family::OverB(i) => write!(f, "over-b:{i}"),
            Family::NonNegative => write!(f, "nonneg"),
            Family::UpperBound(i) => write!(f, "upper:{i}"),
            Family::LowerBound => write!(f, "lower"),
            Family::PyramidCut => write!(f, "pyramid-cut"),
            Family::LiftedBound(i) => write!(f, "lifted-bound:{i}"),
            Family::LiftedXnUpper => write!(f, "lifted-xn-upper"),
            Family::LiftedCut => write!(f, "lifted-cut"),
            Family::McCormick(k) => write!(f, "mccormick:{k}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown inequality family {s:?}"));
        let (name, index) = match s.split_once(':') {
            Some((name, idx)) => (name, Some(idx.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let family = match (name, index) {
            ("under-a", None) => Family::UnderA,
            ("under-b", None) => Family::UnderB,
            ("over-a", Some(i)) => Family::OverA(i),
            ("over-b", Some(i)) => Family::OverB(i),
            ("nonneg", None) => Family::NonNegative,
            ("upper", Some(i)) => Family::UpperBound(i),
            ("lower", None) => Family::LowerBound,
            ("pyramid-cut", None) => Family::PyramidCut,
            ("lifted-bound", Some(i)) => Family::LiftedBound(i),
            ("lifted-xn-upper", None) => Family::LiftedXnUpper,
            ("lifted-cut", None) => Family::LiftedCut,
            ("mccormick", Some(k @ 1..=4)) => Family::McCormick(k as u8),
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// One halfspace `coef_y * y + sum(coef_x[i] * x_i) >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInequality {
    pub family: Family,
    pub coef_y: Rational,
    pub coef_x: Vec<Rational>,
    pub rhs: Rational,
}

impl LinearInequality {
    pub fn new(family: Family, coef_y: Rational, coef_x: Vec<Rational>, rhs: Rational) -> Self {
        debug_assert!(
            !coef_y.is_zero() || coef_x.iter().any(|c| !c.is_zero()),
            "all-zero coefficients in {family}"
        );
        LinearInequality {
            family,
            coef_y,
            coef_x,
            rhs,
        }
    }

    /// `coef . (x, y) - rhs`.
    pub fn slack(&self, point: &Point) -> Rational {
        let lhs: Rational = self
            .coef_x
            .iter()
            .zip(&point.x)
            .map(|(c, x)| c * x)
            .sum::<Rational>()
            + &self.coef_y * &point.y;
        lhs - &self.rhs
    }

    /// The same halfspace scaled so the first nonzero coefficient (y first,
    /// then x_1..x_n) has absolute value 1.
    pub fn normalized(&self) -> (Vec<Rational>, Rational) {
        let coefs: Vec<Rational> = std::iter::once(self.coef_y.clone())
            .chain(self.coef_x.iter().cloned())
            .collect();
        let lead = coefs
            .iter()
            .find(|c| !c.is_zero())
            .expect("inequality with all-zero coefficients")
            .abs();
        let coefs = coefs.iter().map(|c| c / &lead).collect();
        (coefs, &self.rhs / &lead)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    /// Complete description with a positive lower bound on `x_n` only.
    Cn1,
    /// Pyramid description with all lower bounds zero.
    Cn0,
    /// The bilinear McCormick envelope.
    McCormick,
    /// Facets of the pyramid over the zero-product prism with apex `v_1`.
    LiftedPyramid,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SystemKind::Cn1 => "cn1",
            SystemKind::Cn0 => "cn0",
            SystemKind::McCormick => "mccormick",
            SystemKind::LiftedPyramid => "lifted-pyramid",
        };
        f.write_str(name)
    }
}

impl FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cn1" => Ok(SystemKind::Cn1),
            "cn0" => Ok(SystemKind::Cn0),
            "mccormick" => Ok(SystemKind::McCormick),
            "lifted-pyramid" => Ok(SystemKind::LiftedPyramid),
            _ => Err(Error::Parse(format!("unknown system kind {s:?}"))),
        }
    }
}

/// An H-representation together with the box it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalitySystem {
    pub kind: SystemKind,
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
    pub rows: Vec<LinearInequality>,
}

impl InequalitySystem {
    /// Number of `x` variables.
    pub fn n(&self) -> usize {
        self.upper.len()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows_of(
        &self,
        pred: impl Fn(&Family) -> bool,
    ) -> impl Iterator<Item = &LinearInequality> {
        self.rows.iter().filter(move |r| pred(&r.family))
    }

    pub(crate) fn check_dim(&self, point: &Point) -> Result<()> {
        if point.x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: point.x.len(),
            });
        }
        Ok(())
    }
}
