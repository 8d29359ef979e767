use super::{BoundChoice, Family, Vertex};
use crate::instance::Instance;
use crate::rational::Rational;

/// Closed-form slack of a complete-description row at an extreme point,
/// written in terms of `Pi`, `|T|` and the bounds only.
///
/// Returns `None` for families that do not belong to the complete description.
pub fn table_entry(inst: &Instance, family: Family, vertex: &Vertex) -> Option<Rational> {
    SlackTable::new(inst).entry(family, vertex)
}

/// [`table_entry`] with the instance-wide products computed once.
#[derive(Clone, Debug)]
pub struct SlackTable<'a> {
    inst: &'a Instance,
    pi: Rational,
    gap: Rational,
}

impl<'a> SlackTable<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        SlackTable {
            inst,
            pi: inst.pi(),
            gap: inst.b_n() - inst.a_n(),
        }
    }

    pub fn entry(&self, family: Family, vertex: &Vertex) -> Option<Rational> {
        let inst = self.inst;
        let n = inst.n() as i64;
        let (pi, gap) = (&self.pi, &self.gap);
        let (a_n, b_n) = (inst.a_n(), inst.b_n());
        let size = vertex.subset_len() as i64;
        let full = vertex.is_full_product();
        let upper = vertex.xn == BoundChoice::Upper;

        let entry = match family {
            Family::UnderA => match (full, upper) {
                (true, true) => gap * pi,
                (true, false) => Rational::zero(),
                (false, _) => Rational::from(n - 2 - size) * a_n * pi,
            },
            Family::UnderB => match (full, upper) {
                (true, _) => Rational::zero(),
                (false, true) => Rational::from(n - 2 - size) * b_n * pi,
                (false, false) => Rational::from(n - 1 - size) * b_n * pi - a_n * pi,
            },
            Family::OverA(i) => match (vertex.contains(i), full, upper) {
                (true, true, _) => Rational::zero(),
                (true, false, true) => b_n * pi,
                (true, false, false) => a_n * pi,
                (false, _, true) => gap * pi,
                (false, _, false) => Rational::zero(),
            },
            Family::OverB(i) => match (vertex.contains(i), full, upper) {
                (true, true, true) => Rational::zero(),
                (true, true, false) => gap * pi,
                (true, false, _) => b_n * pi,
                (false, _, _) => Rational::zero(),
            },
            Family::NonNegative => match (full, upper) {
                (true, true) => b_n * pi,
                (true, false) => a_n * pi,
                (false, _) => Rational::zero(),
            },
            Family::UpperBound(i) if i == inst.n() => {
                if upper {
                    Rational::zero()
                } else {
                    gap.clone()
                }
            }
            Family::UpperBound(i) => {
                if vertex.contains(i) {
                    Rational::zero()
                } else {
                    inst.b(i).clone()
                }
            }
            Family::LowerBound => {
                if upper {
                    gap.clone()
                } else {
                    Rational::zero()
                }
            }
            _ => return None,
        };
        Some(entry)
    }
}
