//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::time::{Duration, Instant};

use qbundle::verify::{Suite, SuiteReport, VerifyReport, POSITIVITY_V0};
use qbundle_cli::{run_from, Outcome};

/// Wall-clock budget for the relations suite on the full grid.
const RELATIONS_BUDGET: Duration = Duration::from_secs(300);
/// Pseudo-random samples per algebra in the positivity suite.
const POSITIVITY_SAMPLES: usize = 50;
/// Minimum sampled round trips per projectivity case.
const PROJECTIVITY_SAMPLES: usize = 20;

struct Line {
    n: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn verify_json(args: &[&str]) -> (String, Outcome, Duration) {
    let mut argv = vec!["qbundle", "verify", "--format", "json", "--grid", "full"];
    argv.extend_from_slice(args);
    let t = Instant::now();
    let run = run_from(argv);
    assert!(run.stderr.is_empty(), "verify wrote to stderr: {}", run.stderr);
    (run.stdout, run.outcome, t.elapsed())
}

fn suite<'a>(r: &'a VerifyReport, s: Suite) -> &'a SuiteReport {
    r.suites.iter().find(|x| x.suite == s).expect("suite present in report")
}

fn summary(s: &SuiteReport) -> String {
    let failed: Vec<String> = s
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} [{}]", c.name, c.detail.as_deref().unwrap_or("")))
        .collect();
    if failed.is_empty() {
        format!("{} checks", s.checks.len())
    } else {
        format!("{} of {} checks failed: {}", failed.len(), s.checks.len(), failed.join("; "))
    }
}

fn suite_line(n: usize, title: &'static str, r: &VerifyReport, s: Suite) -> Line {
    let sr = suite(r, s);
    Line {
        n,
        title,
        pass: sr.pass && !sr.checks.is_empty(),
        detail: summary(sr),
    }
}

/// `ok/n` from a tally detail.
fn tally_of(detail: Option<&str>) -> Option<(usize, usize)> {
    let d = detail?.split(';').next()?;
    let (a, b) = d.split_once('/')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[test]
fn acceptance_criteria() {
    let (relations_json, _, relations_time) = verify_json(&["--check", "relations"]);
    let relations: VerifyReport = serde_json::from_str(&relations_json).expect("relations report");

    let (first, first_outcome, _) = verify_json(&[]);
    let (second, _, _) = verify_json(&[]);
    let report: VerifyReport = serde_json::from_str(&first).expect("verify report");

    let mut lines = Vec::new();

    let mut l1 = suite_line(1, "relations hold as exact matrix identities on the grid", &relations, Suite::Relations);
    l1.pass &= relations_time <= RELATIONS_BUDGET && suite(&report, Suite::Relations).pass;
    l1.detail = format!("{}; {:.1}s of {}s budget", l1.detail, relations_time.as_secs_f64(), RELATIONS_BUDGET.as_secs());
    lines.push(l1);

    lines.push(suite_line(2, "dimensions match the Weyl formula and Freudenthal multiplicities", &report, Suite::Dimensions));
    lines.push(suite_line(3, "Hopf axioms and duality for words of length at most 3", &report, Suite::Hopf));
    lines.push(suite_line(4, "Schur orthogonality closed forms and S^2 = Ad K_2rho", &report, Suite::Schur));

    let mut l5 = suite_line(5, "Haar inner product positive definite at v = 2", &report, Suite::Positivity);
    let pos = suite(&report, Suite::Positivity);
    let sized = pos.checks.len() == 4
        && pos
            .checks
            .iter()
            .all(|c| tally_of(c.detail.as_deref()) == Some((POSITIVITY_SAMPLES, POSITIVITY_SAMPLES)));
    l5.pass &= sized && POSITIVITY_V0 == 2;
    lines.push(l5);

    lines.push(suite_line(6, "parabolic Hom dimension criterion", &report, Suite::HomCriterion));
    lines.push(suite_line(7, "invariant functions: closure, central count, dimension at gamma", &report, Suite::Invariants));

    let mut l8 = suite_line(8, "eta/kappa isomorphisms and Levi complements", &report, Suite::Projectivity);
    let proj = suite(&report, Suite::Projectivity);
    l8.pass &= proj
        .checks
        .iter()
        .filter(|c| c.name.contains("samples"))
        .all(|c| tally_of(c.detail.as_deref()).is_some_and(|(ok, n)| ok == n && n >= PROJECTIVITY_SAMPLES));
    lines.push(l8);

    lines.push(suite_line(9, "Frobenius reciprocity", &report, Suite::Frobenius));
    lines.push(suite_line(10, "Borel-Weil and its two corollaries", &report, Suite::BorelWeil));

    lines.push(Line {
        n: 11,
        title: "verify twice gives byte-identical JSON",
        pass: first == second && !first.is_empty(),
        detail: format!("{} bytes", first.len()),
    });

    for l in &lines {
        println!("criterion {:>2} {} {}: {}", l.n, if l.pass { "PASS" } else { "FAIL" }, l.title, l.detail);
    }
    assert_eq!(first_outcome, Outcome::from_pass(report.pass));
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
