use std::collections::BTreeMap;
use std::fmt::Write as _;

use monohull::hull::{
    self, facet_system_cn0, facet_system_cn1, facet_system_mccormick, table_entry, BoundChoice,
    Family, InequalitySystem, Point, Vertex,
};
use monohull::io::{write_system_text, Document};
use monohull::optimize::{
    brute_force_optimize, build_certificate, primal_solve, verify_certificate, CertificateCase,
    DualCertificate, Objective, PrimalResult, VerificationReport,
};
use monohull::random::random_objective;
use monohull::volume::{
    monte_carlo_volume, monte_carlo_volume_sharded, separation_check_v2, volume_by_decomposition,
    volume_cn0, volume_cn1, volume_mccormick, VolumeReport,
};
use monohull::{Instance, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::input::InstanceArgs;
use crate::{Failure, Format, Kind, Outcome};

fn tuple(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

fn json<T: Serialize + for<'de> Deserialize<'de>>(kind: &str, data: T) -> String {
    Document::new(kind, data).to_json()
}

fn system_for(kind: Kind, args: &InstanceArgs) -> Result<InequalitySystem, Failure> {
    Ok(match kind {
        Kind::Cn1 => facet_system_cn1(&args.instance()?),
        Kind::Cn0 => facet_system_cn0(&args.instance_with_default(Some(Rational::zero()))?),
        Kind::Mccormick => {
            let (a, b) = args.mccormick_bounds()?;
            facet_system_mccormick(&a, &b)?
        }
    })
}

pub fn facets(fmt: Format, kind: Kind, args: &InstanceArgs) -> Result<Outcome, Failure> {
    let sys = system_for(kind, args)?;
    Ok(Outcome::ok(match fmt {
        Format::Human => write_system_text(&sys),
        Format::Json => json("inequality-system", sys),
    }))
}

pub fn vertices(fmt: Format, args: &InstanceArgs) -> Result<Outcome, Failure> {
    let inst = args.instance()?;
    let vs = hull::vertices(&inst);
    Ok(Outcome::ok(match fmt {
        Format::Human => {
            let mut out = String::new();
            for v in &vs {
                writeln!(out, "{}", describe_vertex(v)).unwrap();
            }
            out
        }
        Format::Json => json("vertices", vs),
    }))
}

fn describe_vertex(v: &Vertex) -> String {
    let subset: Vec<String> = v.subset_indices().iter().map(usize::to_string).collect();
    let xn = match v.xn {
        BoundChoice::Lower => "lower",
        BoundChoice::Upper => "upper",
    };
    format!(
        "T={{{}}} x_n={xn} x={} y={}",
        subset.join(","),
        tuple(&v.x),
        v.y
    )
}

#[derive(Serialize, Deserialize)]
struct MembershipOutput {
    verdict: hull::Verdict,
    /// 1-based row numbers.
    violated_rows: Vec<usize>,
    tight_rows: Vec<usize>,
    slacks: Vec<Rational>,
}

pub fn membership(
    fmt: Format,
    kind: Kind,
    args: &InstanceArgs,
    x: Vec<Rational>,
    y: Rational,
) -> Result<Outcome, Failure> {
    let sys = system_for(kind, args)?;
    let point = Point::new(x, y);
    let m = hull::membership(&sys, &point)?;
    let out = MembershipOutput {
        verdict: m.verdict,
        violated_rows: m.violated.iter().map(|r| r + 1).collect(),
        tight_rows: m.tight.iter().map(|r| r + 1).collect(),
        slacks: hull::evaluate(&sys, &point)?,
    };
    Ok(Outcome::ok(match fmt {
        Format::Human => {
            let mut s = format!("verdict: {:?}\n", out.verdict).to_lowercase();
            for (pos, (row, slack)) in sys.rows.iter().zip(&out.slacks).enumerate() {
                writeln!(
                    s,
                    "row {:>3} {:<18} slack {slack}",
                    pos + 1,
                    row.family.to_string()
                )
                .unwrap();
            }
            s
        }
        Format::Json => json("membership", out),
    }))
}

#[derive(Serialize, Deserialize)]
struct OptimizeOutput {
    instance: Instance,
    objective: Objective,
    result: PrimalResult,
    certificate: Option<DualCertificate>,
    verification: Option<VerificationReport>,
}

pub fn optimize(
    fmt: Format,
    inst: &Instance,
    obj: &Objective,
    certify: bool,
) -> Result<Outcome, Failure> {
    let result = primal_solve(inst, obj)?;
    let (certificate, verification) = if certify {
        let cert = build_certificate(inst, obj, &result)?;
        let report = verify_certificate(inst, obj, &cert, &result)?;
        (Some(cert), Some(report))
    } else {
        (None, None)
    };
    let failed = verification.as_ref().filter(|r| !r.passed()).map(|r| {
        let names: Vec<String> = r.failed().map(|c| c.kind.to_string()).collect();
        Failure::Check(format!("nonzero residual in {}", names.join(", ")))
    });
    let out = OptimizeOutput {
        instance: inst.clone(),
        objective: obj.clone(),
        result,
        certificate,
        verification,
    };
    let stdout = match fmt {
        Format::Human => {
            let r = &out.result;
            let mut point = r.vertex.x.clone();
            point.push(r.vertex.y.clone());
            let mut s = format!(
                "winner: {}\nvertex: {}\nz_star: {}\n",
                r.winner,
                tuple(&point),
                r.z_star
            );
            if let Some(cert) = &out.certificate {
                write!(s, "certificate: {}", cert.case).unwrap();
                if let Some(ell) = cert.ell {
                    write!(s, " (ell = {ell})").unwrap();
                }
                s.push('\n');
                for (name, value) in cert.variables() {
                    writeln!(s, "  {name} = {value}").unwrap();
                }
            }
            if let Some(report) = &out.verification {
                for c in &report.checks {
                    let status = if c.passed { "ok" } else { "FAILED" };
                    writeln!(
                        s,
                        "check {:<14} residual {} {status}",
                        c.kind.to_string(),
                        c.residual
                    )
                    .unwrap();
                }
            }
            s
        }
        Format::Json => json("optimize", out),
    };
    Ok(Outcome { stdout, failed })
}

pub fn volume(
    fmt: Format,
    inst: &Instance,
    samples: u64,
    seed: u64,
    shards: u64,
    check: bool,
) -> Result<Outcome, Failure> {
    let monte_carlo = match (samples, shards) {
        (0, _) => None,
        (_, 1) => Some(monte_carlo_volume(inst, samples, seed)?),
        _ => Some(monte_carlo_volume_sharded(inst, samples, seed, shards)?),
    };
    let report = VolumeReport {
        closed_form: volume_cn1(inst),
        decomposition: volume_by_decomposition(inst),
        monte_carlo,
    };
    let failed = (check && !report.is_consistent()).then(|| {
        Failure::Check(format!(
            "decomposition total {} differs from closed form {}",
            report.decomposition.total, report.closed_form
        ))
    });
    let stdout = match fmt {
        Format::Human => {
            let d = &report.decomposition;
            let mut s = String::new();
            writeln!(s, "closed form:    {}", report.closed_form).unwrap();
            writeln!(s, "vol(B):         {}", d.vol_b).unwrap();
            writeln!(s, "vol(prism):     {}", d.vol_pn).unwrap();
            writeln!(s, "vol(Q):         {}", d.vol_q).unwrap();
            writeln!(s, "cone F_i each:  {}", d.cone_fi_each).unwrap();
            writeln!(s, "cone F_i total: {}", d.cone_fi_total).unwrap();
            writeln!(s, "cone F:         {}", d.cone_f).unwrap();
            writeln!(s, "total:          {}", d.total).unwrap();
            if let Some(mc) = &report.monte_carlo {
                writeln!(
                    s,
                    "monte carlo:    {} +/- {} ({} samples, seed {})",
                    mc.estimate, mc.std_error, mc.samples, mc.seed
                )
                .unwrap();
            }
            s
        }
        Format::Json => json("volume", report),
    };
    Ok(Outcome { stdout, failed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize, Deserialize)]
struct CheckLine {
    name: String,
    status: Status,
    detail: String,
}

#[derive(Serialize, Deserialize)]
struct VerifySummary {
    instance: Instance,
    objectives: usize,
    seed: u64,
    checks: Vec<CheckLine>,
    certificate_cases: BTreeMap<String, usize>,
}

fn line(name: &str, ok: bool, detail: String) -> CheckLine {
    CheckLine {
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn check_vertex_validity(inst: &Instance) -> CheckLine {
    let sys = facet_system_cn1(inst);
    let vs = hull::vertices(inst);
    let mut bad = 0;
    for v in &vs {
        let p = v.point();
        for row in &sys.rows {
            let slack = row.slack(&p);
            if slack.is_negative() || table_entry(inst, row.family, v).as_ref() != Some(&slack) {
                bad += 1;
            }
        }
    }
    line(
        "vertex-validity",
        bad == 0,
        format!(
            "{} vertices x {} rows, {bad} mismatches",
            vs.len(),
            sys.len()
        ),
    )
}

fn check_strong_duality(
    inst: &Instance,
    objectives: usize,
    seed: u64,
    cases: &mut BTreeMap<String, usize>,
) -> Result<CheckLine, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gaps = 0;
    let mut rejected = 0;
    for _ in 0..objectives {
        let obj = random_objective(&mut rng, inst.n());
        let result = primal_solve(inst, &obj)?;
        if brute_force_optimize(inst, &obj)?.z_star != result.z_star {
            gaps += 1;
        }
        if inst.is_degenerate() {
            continue;
        }
        match build_certificate(inst, &obj, &result) {
            Ok(cert) => {
                *cases.entry(cert.case.to_string()).or_default() += 1;
                if !verify_certificate(inst, &obj, &cert, &result)?.passed() {
                    rejected += 1;
                }
            }
            Err(_) => rejected += 1,
        }
    }
    let detail = if inst.is_degenerate() {
        format!("{objectives} objectives, {gaps} primal gaps; certificates need a_n > 0")
    } else {
        format!("{objectives} objectives, {gaps} primal gaps, {rejected} certificates rejected")
    };
    Ok(line("strong-duality", gaps == 0 && rejected == 0, detail))
}

fn check_volumes(inst: &Instance) -> Result<Vec<CheckLine>, Failure> {
    let closed = volume_cn1(inst);
    let total = volume_by_decomposition(inst).total;
    let mut lines = vec![line(
        "decomposition-identity",
        total == closed,
        format!("closed form {closed}, decomposition {total}"),
    )];

    let flat = inst.with_a_n(Rational::zero())?;
    let cn0 = volume_cn0(inst.n(), inst.upper_bounds())?;
    let mut ok = volume_cn1(&flat) == cn0;
    let mut detail = format!("a_n = 0 gives {cn0}");
    if inst.n() == 2 {
        let mc = volume_mccormick(
            &[Rational::zero(), inst.a_n().clone()],
            &[inst.b(1).clone(), inst.b_n().clone()],
        )?;
        ok &= mc == closed;
        write!(detail, ", McCormick {mc}").unwrap();
    }
    lines.push(line("cross-formula", ok, detail));
    Ok(lines)
}

fn check_separation(inst: &Instance) -> Result<CheckLine, Failure> {
    if inst.is_degenerate() {
        return Ok(CheckLine {
            name: "separation-count".to_string(),
            status: Status::Skip,
            detail: "lifted facets need a_n > 0".to_string(),
        });
    }
    let rows = separation_check_v2(inst)?;
    let separating: Vec<Family> = rows
        .iter()
        .filter(|r| r.separates)
        .map(|r| r.family)
        .collect();
    let mut expected: Vec<Family> = (1..inst.n()).map(Family::LiftedBound).collect();
    expected.push(Family::LiftedXnUpper);
    Ok(line(
        "separation-count",
        separating == expected,
        format!(
            "{} of {} rows separate v2 (n = {})",
            separating.len(),
            rows.len(),
            inst.n()
        ),
    ))
}

pub fn verify(
    fmt: Format,
    inst: &Instance,
    objectives: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    let mut checks = vec![check_vertex_validity(inst)];
    checks.push(check_strong_duality(inst, objectives, seed, &mut cases)?);
    checks.extend(check_volumes(inst)?);
    checks.push(check_separation(inst)?);
    let summary = VerifySummary {
        instance: inst.clone(),
        objectives,
        seed,
        checks,
        certificate_cases: cases,
    };
    let failing: Vec<&str> = summary
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.as_str())
        .collect();
    let failed =
        (!failing.is_empty()).then(|| Failure::Check(format!("failed: {}", failing.join(", "))));
    let stdout = match fmt {
        Format::Human => {
            let mut s = String::new();
            for c in &summary.checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                writeln!(s, "{status} {:<22} {}", c.name, c.detail).unwrap();
            }
            if !summary.certificate_cases.is_empty() {
                let tags: Vec<String> = CertificateCase::ALL
                    .iter()
                    .map(|c| {
                        format!(
                            "{c}={}",
                            summary.certificate_cases.get(&c.to_string()).unwrap_or(&0)
                        )
                    })
                    .collect();
                writeln!(s, "certificate cases: {}", tags.join(" ")).unwrap();
            }
            s
        }
        Format::Json => json("verify", summary),
    };
    Ok(Outcome { stdout, failed })
}
