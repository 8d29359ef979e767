//! Random rational instances and objectives for property tests and the
//! `verify` command.

use rand::Rng;

use crate::instance::Instance;
use crate::optimize::Objective;
use crate::rational::Rational;

/// Largest denominator drawn by the generators below.
pub const MAX_DENOMINATOR: i64 = 8;

/// A rational `p/q` with `1 <= q <= max_denom`, uniform over the grid
/// `{p/q : lo <= p/q <= hi}` for the drawn `q`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, max_denom: i64) -> Rational {
    assert!(lo <= hi && max_denom >= 1);
    let q = rng.random_range(1..=max_denom);
    let p = rng.random_range(lo * q..=hi * q);
    Rational::ratio(p, q)
}

/// Uniform rational in `(0, 1)`.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let q = rng.random_range(2..=4 * MAX_DENOMINATOR);
    Rational::ratio(rng.random_range(1..q), q)
}

/// Bounds `b_i` in `(0, 10]` and `0 < a_n < b_n`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Instance {
    let b: Vec<Rational> = (0..n)
        .map(|_| {
            let q = rng.random_range(1..=MAX_DENOMINATOR);
            Rational::ratio(rng.random_range(1..=10 * q), q)
        })
        .collect();
    let a_n = &b[n - 1] * open_unit(rng);
    Instance::new(n, a_n, b).expect("generated bounds are valid")
}

/// Like [`random_instance`] but with `a_n = 0`.
pub fn random_degenerate_instance<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Instance {
    random_instance(rng, n)
        .with_a_n(Rational::zero())
        .expect("zero lower bound is valid")
}

/// Components uniform rationals in `[-10, 10]`. About one component in six
/// is exactly zero, so ties and sign boundaries are exercised.
pub fn random_objective<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Objective {
    let mut draw = || {
        if rng.random_ratio(1, 6) {
            Rational::zero()
        } else {
            random_rational(rng, -10, 10, MAX_DENOMINATOR)
        }
    };
    let c0 = draw();
    let c = (0..n).map(|_| draw()).collect();
    Objective::new(c0, c)
}

/// Rational in `(0, hi]`, used for scale factors.
pub fn random_positive<R: Rng + ?Sized>(rng: &mut R, hi: i64) -> Rational {
    let q = rng.random_range(1..=MAX_DENOMINATOR);
    Rational::ratio(rng.random_range(1..=hi * q), q)
}
