//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (rational or integer equality), so the only pinned
//! tolerances are the wall-clock budgets below. Run with
//! `cargo test -p tamari-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tamari_core::closedform::check_conjecture_with;
use tamari_core::identities::{verify_h_recurrence, verify_nabla_on_r, NablaRanges};
use tamari_core::report::Check;
use tamari_core::verify::{
    verify_bijections, verify_counts, verify_embedding, verify_greedy_param, verify_labelled, verify_monoid,
    verify_ordinary_param, verify_q_chains, verify_series,
};
use tamari_core::{Flavor, Limits, Report, Result};

const COUNT_BUDGET: Duration = Duration::from_secs(300);
const IDENTITY_BUDGET: Duration = Duration::from_secs(10);
const CONJECTURE_BUDGET: Duration = Duration::from_secs(600);
const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

const COUNT_GRID: [(u32, u32); 3] = [(1, 8), (2, 6), (3, 4)];

struct Outcome {
    id: u32,
    title: &'static str,
    report: Report,
    elapsed: Duration,
    budget: Duration,
    /// Failures the harness expects and documents rather than treats as regressions.
    known_false: fn(&Check) -> bool,
    extra: Vec<(String, bool)>,
}

impl Outcome {
    fn unexpected(&self) -> usize {
        self.report.failures().filter(|c| !(self.known_false)(c)).count()
    }

    fn passed(&self) -> bool {
        self.report.passed() && self.extra.iter().all(|(_, ok)| *ok) && self.elapsed <= self.budget
    }

    fn print(&self) {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} [{:>2}] {} ({}/{} checks, {:.2?} of {:?})",
            self.id,
            self.title,
            self.report.pass_count(),
            self.report.checks.len(),
            self.elapsed,
            self.budget
        );
        for (what, ok) in &self.extra {
            if !ok {
                println!("       spot value failed: {what}");
            }
        }
        let failures: Vec<_> = self.report.failures().collect();
        for c in failures.iter().take(5) {
            let tag = if (self.known_false)(c) { " [documented]" } else { "" };
            println!("       n={} {}: {} != {}{tag}", c.n, c.key, c.lhs, c.rhs);
        }
        if failures.len() > 5 {
            println!("       ... {} more failures", failures.len() - 5);
        }
        if self.elapsed > self.budget {
            println!("       over budget");
        }
    }
}

fn none(_: &Check) -> bool {
    false
}

fn merged(suite: &str, parts: impl IntoIterator<Item = Result<Report>>) -> Result<Report> {
    let mut all = Report::new(suite, 0);
    for p in parts {
        let p = p?;
        let m = p.m;
        let mut tagged = Report::new(format!("{}/m={m}", p.suite), m);
        tagged.checks = p.checks;
        tagged.notes = p.notes;
        all.extend(tagged);
    }
    Ok(all)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn lhs_of(r: &Report, m: u32, n: u32) -> Option<&str> {
    let prefix = format!("/m={m}: ");
    r.checks.iter().find(|c| c.n == n && c.key.contains(&prefix)).map(|c| c.lhs.as_str())
}

fn spot(r: &Report, m: u32, expected: &[u64]) -> (String, bool) {
    let got: Vec<String> = (1..=expected.len() as u32).map(|n| lhs_of(r, m, n).unwrap_or("?").to_string()).collect();
    let want: Vec<String> = expected.iter().map(u64::to_string).collect();
    (format!("m={m}: got {} want {}", got.join(","), want.join(",")), got == want)
}

fn counts(id: u32, flavor: Flavor, limits: &Limits) -> Result<Outcome> {
    let (report, elapsed) =
        timed(|| merged(flavor.name(), COUNT_GRID.iter().map(|&(m, n)| verify_counts(m, n, flavor, limits))));
    let report = report?;
    let extra = match flavor {
        Flavor::Greedy => vec![spot(&report, 1, &[1, 3, 12, 56, 288, 1584]), spot(&report, 2, &[1, 6])],
        Flavor::Ordinary => vec![spot(&report, 1, &[1, 3, 13, 68, 399])],
    };
    let title = match flavor {
        Flavor::Greedy => "greedy interval counts: enumeration = closed formula",
        Flavor::Ordinary => "ordinary interval counts: enumeration = closed formula",
    };
    Ok(Outcome { id, title, report, elapsed, budget: COUNT_BUDGET, known_false: none, extra })
}

/// The second identity for `R^a_ℓ` under `∇_m` is false when `b ≥ 3` and `ℓ ≥ 0`.
fn reversed_b_at_least_3(c: &Check) -> bool {
    let field = |name: &str| -> Option<i64> {
        c.key.split_whitespace().find_map(|w| w.strip_prefix(name)).and_then(|v| v.parse().ok())
    };
    c.key.contains("reversed") && field("b=").is_some_and(|b| b >= 3) && field("l=").is_some_and(|l| l >= 0)
}

fn main() -> ExitCode {
    let limits = Limits::from_env();
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut errors = Vec::new();
    let mut push = |o: Result<Outcome>| match o {
        Ok(o) => {
            o.print();
            outcomes.push(o);
        }
        Err(e) => {
            println!("FAIL [??] error: {e}");
            errors.push(e);
        }
    };

    push(counts(1, Flavor::Greedy, &limits));
    push(counts(2, Flavor::Ordinary, &limits));

    push((|| {
        let (report, elapsed) = timed(|| merged("series", (1..=2).map(|m| verify_series(m, 5, &limits))));
        let report = report?;
        let printed = report.checks.iter().filter(|c| c.key.contains("printed")).count();
        let extra = vec![("four printed snippets compared".to_string(), printed == 4)];
        Ok(Outcome {
            id: 3,
            title: "series solvers = enumeration histograms, printed snippets",
            report,
            elapsed,
            budget: DEFAULT_BUDGET,
            known_false: none,
            extra,
        })
    })());

    push((|| {
        let (report, elapsed) = timed(|| merged("greedy-param", (1..=3).map(|m| Ok(verify_greedy_param(m, 12, 20)))));
        Ok(Outcome {
            id: 4,
            title: "greedy parametrization = solvers to order 12, invariants to order 20",
            report: report?,
            elapsed,
            budget: DEFAULT_BUDGET,
            known_false: none,
            extra: Vec::new(),
        })
    })());

    push((|| {
        let (report, elapsed) =
            timed(|| merged("ordinary-param", (1..=2).map(|m| Ok(verify_ordinary_param(m, 10, 20)))));
        Ok(Outcome {
            id: 5,
            title: "ordinary parametrization = solver system to order 10, closed J_m form",
            report: report?,
            elapsed,
            budget: DEFAULT_BUDGET,
            known_false: none,
            extra: Vec::new(),
        })
    })());

    push((|| {
        let (report, elapsed) = timed(|| {
            let nabla = (1..=4).map(|m| Ok(verify_nabla_on_r(m, NablaRanges { a_max: 4, b_max: 4, l_max: 4 })));
            let rec = (1..=6).map(|m| Ok(verify_h_recurrence(m)));
            merged("identities", nabla.chain(rec))
        });
        let report = report?;
        let documented = report.failures().filter(|c| reversed_b_at_least_3(c)).count();
        let b_le_2_ok = report
            .checks
            .iter()
            .filter(|c| !reversed_b_at_least_3(c))
            .all(|c| c.pass);
        let extra = vec![("every case outside b >= 3, l >= 0 holds".to_string(), b_le_2_ok)];
        println!(
            "       note: {documented} failures are the reversed identity at b >= 3, l >= 0, \
             which is false as stated (e.g. m=1 a=0 b=3 l=0: u^4+u^3 vs u^4+2u^3)"
        );
        Ok(Outcome {
            id: 6,
            title: "operator identities on R and the H_i recurrence, full grid",
            report,
            elapsed,
            budget: IDENTITY_BUDGET,
            known_false: reversed_b_at_least_3,
            extra,
        })
    })());

    push((|| {
        let (report, elapsed) =
            timed(|| merged("conjecture", (1..=7).map(|m| check_conjecture_with(m, 8 - m, &limits))));
        Ok(Outcome {
            id: 7,
            title: "ascent profiles and first ascents = constellation marginals, m + n <= 8",
            report: report?,
            elapsed,
            budget: CONJECTURE_BUDGET,
            known_false: none,
            extra: Vec::new(),
        })
    })());

    push((|| {
        let (report, elapsed) = timed(|| merged("q-chains", (1..=2).map(|m| verify_q_chains(m, 5, &limits))));
        Ok(Outcome {
            id: 8,
            title: "q-analogue = (final descent, longest chain) histogram, q = 1 specialization",
            report: report?,
            elapsed,
            budget: DEFAULT_BUDGET,
            known_false: none,
            extra: Vec::new(),
        })
    })());

    push((|| {
        let (report, elapsed) =
            timed(|| merged("labelled", [(1, 6), (2, 4)].map(|(m, n)| verify_labelled(m, n, &limits))));
        Ok(Outcome {
            id: 9,
            title: "labelled ordinary intervals = (m+1)^n (mn+1)^(n-2)",
            report: report?,
            elapsed,
            budget: DEFAULT_BUDGET,
            known_false: none,
            extra: Vec::new(),
        })
    })());

    push((|| {
        let (report, elapsed) = timed(|| {
            merged(
                "structure",
                (1..=2).flat_map(|m| {
                    [verify_monoid(m, 5, &limits), verify_embedding(m, 5, &limits), verify_bijections(m, 5, &limits)]
                }),
            )
        });
        Ok(Outcome {
            id: 10,
            title: "monoid factorizations, cover compatibility, embedding, bijections",
            report: report?,
            elapsed,
            budget: DEFAULT_BUDGET,
            known_false: none,
            extra: Vec::new(),
        })
    })());

    let passed = outcomes.iter().filter(|o| o.passed()).count();
    let unexpected: usize = outcomes.iter().map(Outcome::unexpected).sum();
    let over_budget = outcomes.iter().filter(|o| o.elapsed > o.budget).count();
    let broken_extras = outcomes.iter().flat_map(|o| &o.extra).filter(|(_, ok)| !ok).count();
    println!("{passed}/{} criteria pass", outcomes.len() + errors.len());
    if errors.is_empty() && unexpected == 0 && over_budget == 0 && broken_extras == 0 {
        println!("no failures beyond the documented false identity");
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected check failures, {over_budget} over budget, {} errors", errors.len());
        ExitCode::FAILURE
    }
}
