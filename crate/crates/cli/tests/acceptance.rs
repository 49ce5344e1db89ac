//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Set `MAXCLASS_SKIP_BRUTE4=1` to skip the optional full brute-force count at n = 4.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxclass::parallel::{run_theta, Deadline};
use maxclass::verify::{run_verify, Suite, VerifyConfig};
use maxclass_core::involution::sigma_product_closed_form;
use maxclass_core::theta::theta_formula;
use maxclass_core::{
    CensusReport, CyclicContext, Family, Involution, MCContext, Method, OrderSource,
};

use Family::{Dihedral as D, Quaternion as Q, Semidihedral as SD};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Every report produced along the way, for the parity criterion.
#[derive(Default)]
struct Ledger {
    reports: Vec<CensusReport>,
}

impl Ledger {
    fn theta(
        &mut self,
        f: Family,
        n: u32,
        method: Method,
        src: Option<OrderSource>,
    ) -> CensusReport {
        self.theta_budgeted(f, n, method, src, Deadline::none())
    }

    fn theta_budgeted(
        &mut self,
        f: Family,
        n: u32,
        m: Method,
        src: Option<OrderSource>,
        d: Deadline,
    ) -> CensusReport {
        let r = run_theta(f, n, m, src, 1, d).expect("valid family and n");
        if !r.budget_exhausted {
            self.reports.push(r.clone());
        }
        r
    }
}

fn split(r: &CensusReport) -> (u128, u128) {
    let c = r.counts.as_ref().expect("completed run");
    (
        c.type1.to_string().parse().unwrap(),
        c.type2.to_string().parse().unwrap(),
    )
}

fn formula(f: Family, n: u32) -> u128 {
    theta_formula(f, n).unwrap().to_string().parse().unwrap()
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (
        t < limit,
        format!("{:.2}s < {}s", t.as_secs_f64(), limit.as_secs()),
    )
}

/// Brute-force totals and splits against expected values, under a time limit.
fn brute_row(
    ledger: &mut Ledger,
    n: u32,
    expected: &[(Family, u128, u128)],
    limit: Duration,
) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for &(f, total, type2) in expected {
        let (t1, t2) = split(&ledger.theta(f, n, Method::Brute, None));
        ok &= t1 + t2 == total && t2 == type2 && total == formula(f, n);
        parts.push(format!("{f}: {} = {t1}+{t2}", t1 + t2));
    }
    let (fast, time) = within(start, limit);
    outcome(ok && fast, format!("{}; {time}", parts.join(", ")))
}

fn criterion_3(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, expected) in [(D, 589_824u128), (SD, 524_288), (Q, 458_752)] {
        let (t1, t2) = split(&ledger.theta(f, 4, Method::Structural, None));
        ok &= t1 + t2 == expected;
        parts.push(format!("{f}: {}", t1 + t2));
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    let mut detail = format!("structural {}; {time}", parts.join(", "));
    if std::env::var_os("MAXCLASS_SKIP_BRUTE4").is_none() {
        let r = ledger.theta_budgeted(
            D,
            4,
            Method::Brute,
            None,
            Deadline::after(Duration::from_secs(240)),
        );
        if r.budget_exhausted {
            detail.push_str("; brute D n=4 did not finish within its budget");
        } else {
            let (t1, t2) = split(&r);
            ok &= t1 + t2 == 589_824;
            detail.push_str(&format!(
                "; brute D n=4 agrees: {} in {} ms",
                t1 + t2,
                r.elapsed_ms
            ));
        }
    }
    outcome(ok && fast, detail)
}

fn criterion_4(ledger: &mut Ledger) -> Outcome {
    let mut ok = true;
    let mut runs = 0;
    for n in 2..=6 {
        for f in Family::ALL.into_iter().filter(|f| f.supported(n)) {
            let r = ledger.theta(f, n, Method::ProofDecomposition, Some(OrderSource::Formula));
            ok &= r.total() == Some(theta_formula(f, n).unwrap());
            runs += 1;
        }
    }
    outcome(ok, format!("{runs} (family, n) pairs for n = 2..6"))
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [3, 4] {
        for f in Family::ALL {
            let r = ledger.theta(
                f,
                n,
                Method::ProofDecomposition,
                Some(OrderSource::Enumerated),
            );
            ok &= r.total() == Some(theta_formula(f, n).unwrap());
            parts.push(format!("{f}{}={}", 1u32 << (n + 1), r.total().unwrap()));
        }
    }
    let (fast, time) = within(start, Duration::from_secs(30));
    outcome(ok && fast, format!("{}; {time}", parts.join(" ")))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let suites = [
        Suite::Stabilizers,
        Suite::StarUnitaryOrder,
        Suite::CircledastUnitary,
        Suite::HChain,
        Suite::LChain,
        Suite::LowerLayerInvolutions,
    ];
    let mut checks = 0;
    let mut failed = Vec::new();
    for suite in suites {
        let mut cfg = VerifyConfig::new(suite);
        cfg.n_range = Some(3..=4);
        let r = run_verify(&cfg).expect("range within cap");
        checks += r.checks.len();
        failed.extend(
            r.checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{} n={} {}", c.suite, c.n, c.name)),
        );
    }
    let (fast, time) = within(start, Duration::from_secs(60));
    let detail = if failed.is_empty() {
        format!("{checks} subgroup checks at n = 3, 4; {time}")
    } else {
        format!("failed: {}; {time}", failed.join("; "))
    };
    outcome(failed.is_empty() && fast && checks > 0, detail)
}

fn criterion_7() -> Outcome {
    let mut compared = 0u64;
    let mut bad = 0u64;
    for n in [2u32, 3] {
        let c = CyclicContext::new(n).unwrap();
        for s in Involution::ALL.into_iter().filter(|s| s.supported(n)) {
            for x in c.elements() {
                let direct = c.mul(x, s.apply(&c, x).unwrap());
                bad += (sigma_product_closed_form(&c, s, x).unwrap() != direct) as u64;
                compared += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in [4u32, 5] {
        let c = CyclicContext::new(n).unwrap();
        for s in Involution::ALL {
            for _ in 0..10_000 {
                let x = c.elem(rng.gen::<u64>() & c.mask()).unwrap();
                let direct = c.mul(x, s.apply(&c, x).unwrap());
                bad += (sigma_product_closed_form(&c, s, x).unwrap() != direct) as u64;
                compared += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("{compared} elements compared, {bad} mismatches"),
    )
}

fn criterion_8() -> Outcome {
    let mut units = 0u64;
    let mut bad = 0u64;
    for n in [2u32, 3] {
        for f in Family::ALL.into_iter().filter(|f| f.supported(n)) {
            let ctx = MCContext::new(f, n).unwrap();
            let c = ctx.cyclic();
            for x2 in c.elements() {
                for x1 in c
                    .elements()
                    .filter(|x| x.augmentation() != x2.augmentation())
                {
                    let u = ctx.elem(x1, x2).unwrap();
                    let by_square = ctx.mc_square(u).unwrap() == ctx.one();
                    bad += (ctx.order2_conditions(u).unwrap() != by_square) as u64;
                    units += 1;
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!("{units} normalized units, {bad} disagreements"),
    )
}

fn criterion_9(ledger: &Ledger) -> Outcome {
    let find = |f: Family, n: u32, m: Method| {
        ledger
            .reports
            .iter()
            .find(|r| r.family == f && r.n == n && r.method == m)
            .map(split)
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, m) in [
        (2, Method::Brute),
        (3, Method::Brute),
        (4, Method::Structural),
    ] {
        let (d, q) = (find(D, n, m), find(Q, n, m));
        ok &= d.is_some() && d.map(|x| x.0) == q.map(|x| x.0);
        let show = |v: Option<(u128, u128)>| v.map_or("missing".to_string(), |x| x.0.to_string());
        parts.push(format!("n={n} {}: D {} / Q {}", m.name(), show(d), show(q)));
    }
    outcome(ok, parts.join(", "))
}

fn criterion_10(ledger: &Ledger) -> Outcome {
    let odd: Vec<String> = ledger
        .reports
        .iter()
        .filter(|r| r.parity_ok() != Some(true) || !r.involutions().unwrap().bit(0))
        .map(|r| format!("{} n={} {}", r.family, r.n, r.method.name()))
        .collect();
    let detail = if odd.is_empty() {
        format!("{} completed runs, all totals even", ledger.reports.len())
    } else {
        format!("odd totals: {}", odd.join(", "))
    };
    outcome(odd.is_empty() && !ledger.reports.is_empty(), detail)
}

fn main() -> ExitCode {
    let mut ledger = Ledger::default();
    // Evaluated in order: the last two criteria read the runs recorded by the others.
    let results: Vec<(&str, Outcome)> = vec![
        (
            "exhaustive count at n = 2",
            brute_row(
                &mut ledger,
                2,
                &[(D, 48, 32), (Q, 16, 0)],
                Duration::from_secs(1),
            ),
        ),
        (
            "exhaustive count at n = 3",
            brute_row(
                &mut ledger,
                3,
                &[(D, 1280, 512), (SD, 1024, 256), (Q, 768, 0)],
                Duration::from_secs(5),
            ),
        ),
        ("structural count at n = 4", criterion_3(&mut ledger)),
        (
            "proof decomposition with closed-form orders",
            criterion_4(&mut ledger),
        ),
        (
            "proof decomposition with enumerated orders",
            criterion_5(&mut ledger),
        ),
        ("subgroup orders and chains", criterion_6()),
        ("closed-form x x^σ products", criterion_7()),
        ("order-two conditions versus squaring", criterion_8()),
        ("equal type-1 counts for D and Q", criterion_9(&ledger)),
        ("even totals, odd involution counts", criterion_10(&ledger)),
    ];

    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!(
            "{} criterion {:>2}: {name} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
