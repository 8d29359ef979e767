//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use monohull::hull::{facet_system_cn1, vertices, Family, SlackTable};
use monohull::optimize::{
    brute_force_optimize, build_certificate, primal_solve, verify_certificate, CertificateCase,
    Objective,
};
use monohull::random::{random_instance, random_objective, random_positive};
use monohull::volume::{
    monte_carlo_volume_sharded, separation_check_v2, volume_by_decomposition, volume_cn0,
    volume_cn1, volume_mccormick,
};
use monohull::{Instance, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn report(id: u32, name: &str, failures: &[String], elapsed: Duration, limit: Option<Duration>) {
    let slow = limit.is_some_and(|l| elapsed >= l);
    let status = if failures.is_empty() && !slow {
        "PASS"
    } else {
        "FAIL"
    };
    let budget = limit.map_or(String::new(), |l| format!(", limit {:.0?}", l));
    // Written to the stdout handle directly so the line survives output capture.
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "criterion {id} {status}: {name} ({:.2?}{budget})",
        elapsed
    )
    .unwrap();
    for f in failures.iter().take(10) {
        writeln!(out, "    {f}").unwrap();
    }
    drop(out);
    assert!(
        failures.is_empty(),
        "criterion {id}: {} failures, first: {}",
        failures.len(),
        failures[0]
    );
    assert!(!slow, "criterion {id}: took {elapsed:?}");
}

fn q(x: i64) -> Rational {
    Rational::from(x)
}

#[test]
fn criterion_1_vertex_validity() {
    let start = Instant::now();
    let jobs: Vec<(usize, u64)> = (2..=8).flat_map(|n| (0..50).map(move |t| (n, t))).collect();
    let failures: Vec<String> = jobs
        .into_par_iter()
        .flat_map_iter(|(n, trial)| {
            let mut rng = ChaCha8Rng::seed_from_u64(100 * n as u64 + trial);
            let inst = random_instance(&mut rng, n);
            let sys = facet_system_cn1(&inst);
            let table = SlackTable::new(&inst);
            let mut out = Vec::new();
            for v in vertices(&inst) {
                let p = v.point();
                for row in &sys.rows {
                    let slack = row.slack(&p);
                    let expected = table.entry(row.family, &v);
                    if slack.is_negative() || expected.as_ref() != Some(&slack) {
                        out.push(format!(
                            "n={n} trial {trial} {} at T={:b} x_n={:?}: slack {slack}, table {expected:?}",
                            row.family, v.subset, v.xn
                        ));
                    }
                }
            }
            out
        })
        .collect();
    report(
        1,
        "every cn1 row has the tabulated nonnegative slack at all 2^n vertices, n=2..8, 50 instances each",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(10)),
    );
}

const INSTANCES_PER_N: usize = 4;
const OBJECTIVES_PER_INSTANCE: usize = 1000;

/// Random-objective strong-duality driver. Returns failures and case counts.
fn duality_driver() -> (Vec<String>, BTreeMap<CertificateCase, usize>) {
    let jobs: Vec<(usize, usize)> = (2..=6)
        .flat_map(|n| (0..INSTANCES_PER_N).map(move |k| (n, k)))
        .collect();
    let results: Vec<(Vec<String>, BTreeMap<CertificateCase, usize>)> = jobs
        .into_par_iter()
        .map(|(n, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + k as u64);
            let inst = random_instance(&mut rng, n);
            let mut failures = Vec::new();
            let mut cases = BTreeMap::new();
            for j in 0..OBJECTIVES_PER_INSTANCE {
                let obj = random_objective(&mut rng, n);
                if let Err(e) = check_objective(&inst, &obj, &mut cases) {
                    failures.push(format!("n={n} instance {k} objective {j}: {e}"));
                }
            }
            (failures, cases)
        })
        .collect();
    let mut failures = Vec::new();
    let mut cases = BTreeMap::new();
    for (f, c) in results {
        failures.extend(f);
        for (case, count) in c {
            *cases.entry(case).or_insert(0) += count;
        }
    }
    (failures, cases)
}

fn check_objective(
    inst: &Instance,
    obj: &Objective,
    cases: &mut BTreeMap<CertificateCase, usize>,
) -> Result<CertificateCase, String> {
    let result = primal_solve(inst, obj).map_err(|e| e.to_string())?;
    let brute = brute_force_optimize(inst, obj).map_err(|e| e.to_string())?;
    if brute.z_star != result.z_star {
        return Err(format!(
            "primal {} but enumeration {}",
            result.z_star, brute.z_star
        ));
    }
    let cert = build_certificate(inst, obj, &result).map_err(|e| e.to_string())?;
    let report = verify_certificate(inst, obj, &cert, &result).map_err(|e| e.to_string())?;
    if !report.passed() {
        return Err(format!(
            "{} certificate fails: {:?}",
            cert.case,
            report.failed().collect::<Vec<_>>()
        ));
    }
    *cases.entry(cert.case).or_insert(0) += 1;
    Ok(cert.case)
}

#[test]
fn criterion_2_strong_duality() {
    let start = Instant::now();
    let (failures, cases) = duality_driver();
    let total: usize = cases.values().sum();
    report(
        2,
        &format!(
            "primal = enumeration and all five certificate checks zero, n=2..6, {INSTANCES_PER_N} instances x {OBJECTIVES_PER_INSTANCE} objectives ({total} certified)"
        ),
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_3_certificate_coverage() {
    let start = Instant::now();
    let (mut failures, mut cases) = duality_driver();

    let inst = Instance::from_ints(1, &[2, 1, 3]);
    let crafted: [(CertificateCase, i64, [i64; 3]); 9] = [
        (CertificateCase::A1, 1, [0, 0, 0]),
        (CertificateCase::A2a, 0, [0, 0, -4]),
        (CertificateCase::A2b, -1, [1, 2, -4]),
        (CertificateCase::A3, -6, [0, 0, 0]),
        (CertificateCase::A4, -6, [0, 0, -4]),
        (CertificateCase::B1, 1, [-2, -2, 0]),
        (CertificateCase::B2, 1, [-1, 0, -4]),
        (CertificateCase::B3, -6, [-2, -2, 0]),
        (CertificateCase::B4, -6, [-2, -2, -4]),
    ];
    for (want, c0, c) in crafted {
        let obj = Objective::new(q(c0), c.iter().map(|&x| q(x)).collect());
        match check_objective(&inst, &obj, &mut cases) {
            Ok(got) if got == want => {}
            Ok(got) => failures.push(format!("crafted {want} objective produced {got}")),
            Err(e) => failures.push(format!("crafted {want}: {e}")),
        }
    }
    for case in CertificateCase::ALL {
        if !cases.contains_key(&case) {
            failures.push(format!("case {case} never exercised"));
        }
    }
    let counts: Vec<String> = CertificateCase::ALL
        .iter()
        .map(|c| format!("{c}={}", cases.get(c).unwrap_or(&0)))
        .collect();
    report(
        3,
        &format!("all nine certificate cases exercised: {}", counts.join(" ")),
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_4_volume_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=10 {
        for trial in 0..100 {
            let inst = random_instance(&mut rng, n);
            let total = volume_by_decomposition(&inst).total;
            let closed = volume_cn1(&inst);
            if total != closed {
                failures.push(format!(
                    "n={n} trial {trial}: decomposition {total} vs closed form {closed}"
                ));
            }
        }
    }
    report(
        4,
        "decomposition total equals closed form exactly, n=2..10, 100 instances each",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_5_cross_formula_consistency() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=10 {
        for _ in 0..20 {
            let inst = random_instance(&mut rng, n);
            let flat = inst.with_a_n(Rational::zero()).unwrap();
            let cn0 = volume_cn0(n, inst.upper_bounds()).unwrap();
            if volume_cn1(&flat) != cn0 {
                failures.push(format!(
                    "n={n}: a_n=0 gives {} but cn0 is {cn0}",
                    volume_cn1(&flat)
                ));
            }
            if n == 2 {
                let mc = volume_mccormick(
                    &[Rational::zero(), inst.a_n().clone()],
                    &[inst.b(1).clone(), inst.b(2).clone()],
                )
                .unwrap();
                let direct = inst.b(1).pow(2) * (inst.b(2) - inst.a_n()).pow(2) / q(6);
                if volume_cn1(&inst) != mc || mc != direct {
                    failures.push(format!(
                        "n=2 {inst:?}: cn1 {} McCormick {mc}",
                        volume_cn1(&inst)
                    ));
                }
            }
        }
    }
    let spot = volume_cn1(&Instance::from_ints(1, &[2, 3]));
    if spot != Rational::ratio(8, 3) {
        failures.push(format!("spot value {spot} != 8/3"));
    }
    report(
        5,
        "a_n=0 matches the pyramid formula, n=2 matches McCormick, spot value 8/3",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_6_monte_carlo_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for (inst, exact) in [
        (Instance::from_ints(1, &[2, 3]), Rational::ratio(8, 3)),
        (Instance::from_ints(1, &[1, 1, 2]), Rational::ratio(3, 8)),
    ] {
        let est = monte_carlo_volume_sharded(&inst, 1_000_000, 20240601, 8).unwrap();
        let z = est.z_score(&exact);
        details.push(format!(
            "{:.5}+/-{:.5} vs {exact} (z={z:.2})",
            est.estimate, est.std_error
        ));
        if z >= 4.0 {
            failures.push(format!(
                "n={}: estimate {} is {z:.2} standard errors from {exact}",
                inst.n(),
                est.estimate
            ));
        }
    }
    report(
        6,
        &format!(
            "10^6-sample estimates within 4 standard errors: {}",
            details.join("; ")
        ),
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_7_separation_count() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=8 {
        for trial in 0..20 {
            let inst = random_instance(&mut rng, n);
            let rows = separation_check_v2(&inst).unwrap();
            let separating: Vec<Family> = rows
                .iter()
                .filter(|r| r.separates)
                .map(|r| r.family)
                .collect();
            let mut expected: Vec<Family> = (1..n).map(Family::LiftedBound).collect();
            expected.push(Family::LiftedXnUpper);
            if separating != expected {
                failures.push(format!(
                    "n={n} trial {trial}: separating rows {separating:?}"
                ));
            }
        }
    }
    report(
        7,
        "exactly n lifted facets separate v2: lifted-bound:i for i<n and lifted-xn-upper, n=2..8",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_8_homogeneity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=8 {
        for _ in 0..20 {
            let inst = random_instance(&mut rng, n);
            let lambda = random_positive(&mut rng, 5);
            let base = volume_cn1(&inst);

            let mut b = inst.upper_bounds().to_vec();
            for bi in &mut b[..n - 1] {
                *bi = &*bi * &lambda;
            }
            let scaled = volume_cn1(&inst.with_upper_bounds(b).unwrap());
            if scaled != &base * lambda.pow(2 * (n as u32 - 1)) {
                failures.push(format!("n={n} lambda={lambda}: b_i scaling gives {scaled}"));
            }

            let mut b = inst.upper_bounds().to_vec();
            b[n - 1] = &b[n - 1] * &lambda;
            let last = Instance::new(n, inst.a_n() * &lambda, b).unwrap();
            let scaled = volume_cn1(&last);
            if scaled != &base * lambda.pow(2) {
                failures.push(format!(
                    "n={n} lambda={lambda}: (a_n,b_n) scaling gives {scaled}"
                ));
            }
        }
    }
    report(
        8,
        "volume scales by lambda^(2(n-1)) in b_i (i<n) and by lambda^2 in (a_n,b_n)",
        &failures,
        start.elapsed(),
        None,
    );
}
