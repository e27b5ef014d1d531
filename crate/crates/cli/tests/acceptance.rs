//! One line per acceptance criterion. Runs the `reslie` binary and reads
//! its machine reports.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use reslie::catalog::{check_facts, entry};
use reslie::lie::DEFAULT_BUDGET;

fn reslie(args: &[&str]) -> (i32, Value, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_reslie"))
        .args(args)
        .arg("--machine")
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: no report ({e}): {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap_or(-1), report, t.elapsed())
}

#[derive(Default)]
struct LawSummary {
    laws: usize,
    instances: u64,
    skipped: usize,
    /// (law, counterexample count, first counterexample)
    failing: Vec<(String, usize, String)>,
    /// Laws that checked nothing.
    empty: Vec<String>,
}

fn summarize(suites: &Value) -> LawSummary {
    let mut s = LawSummary::default();
    for suite in suites.as_array().expect("suite list") {
        for law in suite["laws"].as_array().expect("law list") {
            let name = law["law"].as_str().unwrap().to_string();
            let ce = law["counterexamples"].as_array().unwrap();
            let n = law["instances"].as_u64().unwrap();
            s.laws += 1;
            s.instances += n;
            s.skipped += law["skipped"].as_array().unwrap().len();
            if n == 0 {
                s.empty.push(name.clone());
            }
            if !ce.is_empty() {
                s.failing.push((name, ce.len(), ce[0].as_str().unwrap_or("").to_string()));
            }
        }
    }
    s
}

struct Line {
    n: u32,
    pass: bool,
    text: String,
    /// A failure explained by the mathematics, not by the code.
    known_gap: bool,
}

fn suites_line(n: u32, names: &[&str], limit: Duration) -> Line {
    let mut reports = Vec::new();
    let mut elapsed = Duration::ZERO;
    let mut codes = Vec::new();
    for name in names {
        let (code, r, t) = reslie(&["check-laws", "--suite", name]);
        elapsed += t;
        codes.push(code);
        reports.extend(r["results"]["suites"].as_array().unwrap().iter().cloned());
    }
    let s = summarize(&Value::Array(reports));
    let ok = s.failing.is_empty() && s.empty.is_empty() && s.skipped == 0 && elapsed < limit;
    let exit_ok = codes.iter().all(|&c| c == if s.failing.is_empty() { 0 } else { 1 });
    let mut text = format!(
        "{} laws, {} instances, {} skipped, {:.1}s",
        s.laws,
        s.instances,
        s.skipped,
        elapsed.as_secs_f64()
    );
    for (law, k, first) in &s.failing {
        text.push_str(&format!("; {law}: {k} counterexamples, first {first}"));
    }
    for law in &s.empty {
        text.push_str(&format!("; {law}: no instances"));
    }
    Line { n, pass: ok && exit_ok, text, known_gap: false }
}

fn criterion_1() -> Line {
    let (code, r, t) = reslie(&["reproduce-paper", "--facts-only"]);
    let facts = r["results"]["facts"].as_array().unwrap();
    let failed: Vec<String> = facts
        .iter()
        .filter(|f| f["passed"] != Value::Bool(true))
        .map(|f| format!("{} p={} {}: {}", f["key"], f["p"], f["fact"], f["detail"]))
        .collect();
    let pass = code == 0 && failed.is_empty() && !facts.is_empty() && t < Duration::from_secs(30);
    let mut text = format!("{} catalog facts, {} failed, {:.1}s", facts.len(), failed.len(), t.as_secs_f64());
    for f in failed {
        text.push_str(&format!("; {f}"));
    }
    Line { n: 1, pass, text, known_gap: false }
}

/// Every class but pA must pass outright. pA is not a Schunck class and
/// has no projector on some algebras; the line fails and names them, and
/// the gap is accepted only when every pA counterexample is such a case.
fn criterion_3() -> Line {
    let (code, r, t) = reslie(&["check-laws", "--suite", "projectors"]);
    let s = summarize(&r["results"]["suites"]);
    let rest: Vec<_> = s.failing.iter().filter(|f| f.0 != "projector-covers[pA]").collect();
    let pa_ce: Vec<String> = r["results"]["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|x| x["laws"].as_array().unwrap().iter())
        .filter(|l| l["law"] == "projector-covers[pA]")
        .flat_map(|l| l["counterexamples"].as_array().unwrap().iter())
        .map(|c| c.as_str().unwrap().to_string())
        .collect();
    let only_missing = pa_ce.iter().all(|c| c.contains("no pA-projector exists; projectors by definition: 0"));
    let base_ok = rest.is_empty()
        && s.empty.is_empty()
        && s.skipped == 0
        && t < Duration::from_secs(600)
        && (code == 0) == s.failing.is_empty();
    let mut text = format!(
        "{} laws, {} instances, {} skipped, {:.1}s; pN, pU, pC, pEv(GF(p)) projectors, socle complements, conjugacy and p-operation independence {}",
        s.laws,
        s.instances,
        s.skipped,
        t.as_secs_f64(),
        if rest.is_empty() { "hold" } else { "FAIL" }
    );
    for (law, k, first) in &rest {
        text.push_str(&format!("; {law}: {k} counterexamples, first {first}"));
    }
    if !pa_ce.is_empty() {
        text.push_str(&format!(
            "; pA projector existence fails on {} algebras with no pA-projector by the definition \
             (pA is a formation, not a Schunck class), e.g. {}; all pA failures are of this kind: {only_missing}",
            pa_ce.len(),
            pa_ce[0]
        ));
    }
    Line { n: 3, pass: base_ok && pa_ce.is_empty(), text, known_gap: base_ok && only_missing }
}

fn criterion_9() -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [3, 2] {
        let e = entry("T", p).expect("T builds");
        let outcomes = check_facts(&e, DEFAULT_BUDGET).expect("facts evaluate");
        let bad: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.detail.clone()).collect();
        let verdicts: Vec<String> = outcomes.iter().map(|o| o.detail.clone()).collect();
        if p == 3 {
            pass &= bad.is_empty();
        }
        parts.push(format!("p = {p}: {}{}", verdicts.join(", "), if bad.is_empty() { "" } else { " (mismatch)" }));
    }
    Line { n: 9, pass, text: parts.join("; "), known_gap: false }
}

fn main() {
    let ten_min = Duration::from_secs(600);
    let mut lines = vec![criterion_1()];
    lines.push(suites_line(2, &["structure", "frattini"], ten_min));
    lines.push(criterion_3());
    lines.push(suites_line(4, &["formations"], ten_min));
    lines.push(suites_line(5, &["cohomology"], ten_min));
    lines.push(suites_line(6, &["modules"], ten_min));
    lines.push(suites_line(7, &["intravariance"], ten_min));
    lines.push(suites_line(8, &["envelopes"], ten_min));
    lines.push(criterion_9());

    for l in &lines {
        println!("criterion {}: {}: {}", l.n, if l.pass { "PASS" } else { "FAIL" }, l.text);
    }
    let broken: Vec<u32> = lines.iter().filter(|l| !l.pass && !l.known_gap).map(|l| l.n).collect();
    if !broken.is_empty() {
        eprintln!("failing criteria: {broken:?}");
        std::process::exit(1);
    }
}
