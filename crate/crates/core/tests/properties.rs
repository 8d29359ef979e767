use monohull::optimize::{
    brute_force_optimize, build_certificate, candidate_values, classify, primal_solve,
    verify_certificate, CertificateCase, Objective, Winner,
};
use monohull::{Instance, Rational};
use proptest::prelude::*;

fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(move |q| (lo * q..=hi * q).prop_map(move |p| Rational::ratio(p, q)))
}

fn positive(hi: i64) -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(move |q| (1..=hi * q).prop_map(move |p| Rational::ratio(p, q)))
}

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(positive(10), n),
                1i64..=15,
                16i64..=17,
            )
        })
        .prop_map(|(b, num, den)| {
            let n = b.len();
            let a_n = &b[n - 1] * Rational::ratio(num, den);
            Instance::new(n, a_n, b).unwrap()
        })
}

fn coefficient() -> impl Strategy<Value = Rational> {
    prop_oneof![1 => Just(Rational::zero()), 5 => rational(-10, 10)]
}

fn instance_and_objective() -> impl Strategy<Value = (Instance, Objective)> {
    instance().prop_flat_map(|inst| {
        let n = inst.n();
        (
            Just(inst),
            coefficient(),
            prop::collection::vec(coefficient(), n),
        )
            .prop_map(|(inst, c0, c)| (inst, Objective::new(c0, c)))
    })
}

/// Case tag predicted from the objective alone, by evaluating the four
/// candidate points directly.
fn expected_case(inst: &Instance, obj: &Objective) -> CertificateCase {
    let n = inst.n();
    let value = |x: &[Rational]| {
        let y: Rational = x.iter().product();
        obj.value(x, &y)
    };
    let all_nonneg = (1..n).all(|i| !obj.coef(i).is_negative());
    let mut full: Vec<Rational> = inst.upper_bounds().to_vec();
    let mut zero = full.clone();
    if all_nonneg {
        let k = (1..n).min_by_key(|&i| obj.coef(i) * inst.b(i)).unwrap();
        zero[k - 1] = Rational::zero();
    } else {
        for i in 1..n {
            if obj.coef(i).is_negative() {
                zero[i - 1] = Rational::zero();
            }
        }
    }
    let mut candidates = Vec::new();
    for point in [&mut full, &mut zero] {
        point[n - 1] = inst.b_n().clone();
        let at_b = value(point);
        point[n - 1] = inst.a_n().clone();
        let at_a = value(point);
        candidates.push(at_b);
        candidates.push(at_a);
    }
    let best = candidates.iter().max().unwrap();
    let position = candidates.iter().position(|z| z == best).unwrap();
    match (all_nonneg, position) {
        (true, 0) => CertificateCase::A1,
        (true, 1) if !obj.c0.is_negative() => CertificateCase::A2a,
        (true, 1) => CertificateCase::A2b,
        (true, 2) => CertificateCase::A3,
        (true, _) => CertificateCase::A4,
        (false, 0) => CertificateCase::B1,
        (false, 1) => CertificateCase::B2,
        (false, 2) => CertificateCase::B3,
        (false, _) => CertificateCase::B4,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn strong_duality_holds((inst, obj) in instance_and_objective()) {
        let result = primal_solve(&inst, &obj).unwrap();
        let brute = brute_force_optimize(&inst, &obj).unwrap();
        prop_assert_eq!(&result.z_star, &brute.z_star);
        prop_assert_eq!(obj.value(&result.vertex.x, &result.vertex.y), result.z_star.clone());
        let cert = build_certificate(&inst, &obj, &result).unwrap();
        let report = verify_certificate(&inst, &obj, &cert, &result).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        for check in &report.checks {
            prop_assert_eq!(check.residual.to_string(), "0");
        }
    }

    #[test]
    fn case_tag_matches_independent_decision_tree((inst, obj) in instance_and_objective()) {
        let result = primal_solve(&inst, &obj).unwrap();
        let cert = build_certificate(&inst, &obj, &result).unwrap();
        prop_assert_eq!(cert.case, expected_case(&inst, &obj));
    }

    #[test]
    fn candidate_comparison_identities((inst, obj) in instance_and_objective()) {
        let sets = classify(&inst, &obj).unwrap();
        let cand = candidate_values(&inst, &obj, &sets);
        let c0 = &obj.c0;
        let c_n = obj.coef(inst.n());
        let pi = inst.pi();
        let b_n = inst.b_n();

        prop_assert_eq!(cand.z_pi_b >= cand.z_pi_a, !(c_n + c0 * &pi).is_negative());
        let top_vs_zero = match sets.k {
            Some(k) => obj.coef(k) * inst.b(k) + c0 * b_n * &pi,
            None => c0 * b_n * &pi + &sets.s_minus,
        };
        prop_assert_eq!(cand.z_pi_b >= cand.z_0_b, !top_vs_zero.is_negative());

        let direct: Rational = (1..inst.n()).map(|i| obj.coef(i) * inst.b(i)).sum();
        prop_assert_eq!(&sets.s_plus + &sets.s_minus, direct);
        prop_assert!(!sets.s_plus.is_negative());
        prop_assert!(!sets.s_minus.is_positive());
    }

    #[test]
    fn positive_scaling_preserves_solution_and_scales_certificate(
        (inst, obj) in instance_and_objective(),
        lambda in positive(7),
    ) {
        let result = primal_solve(&inst, &obj).unwrap();
        let scaled_obj = obj.scaled(&lambda);
        let scaled = primal_solve(&inst, &scaled_obj).unwrap();
        prop_assert_eq!(scaled.winner, result.winner);
        prop_assert_eq!(&scaled.vertex, &result.vertex);
        prop_assert_eq!(&scaled.z_star, &(&result.z_star * &lambda));

        let cert = build_certificate(&inst, &obj, &result).unwrap();
        let stretched = cert.scaled(&lambda);
        prop_assert!(verify_certificate(&inst, &scaled_obj, &stretched, &scaled).unwrap().passed());
        prop_assert_eq!(build_certificate(&inst, &scaled_obj, &scaled).unwrap(), stretched);
    }

    #[test]
    fn degenerate_instances_still_optimize((inst, obj) in instance_and_objective()) {
        let flat = inst.with_a_n(Rational::zero()).unwrap();
        let result = primal_solve(&flat, &obj).unwrap();
        prop_assert_eq!(result.z_star, brute_force_optimize(&flat, &obj).unwrap().z_star);
    }
}

#[test]
fn winner_priority_on_total_tie() {
    let inst = Instance::from_ints(1, &[2, 3]);
    let obj = Objective::new(Rational::zero(), vec![Rational::zero(); 2]);
    assert_eq!(primal_solve(&inst, &obj).unwrap().winner, Winner::PiB);
}
