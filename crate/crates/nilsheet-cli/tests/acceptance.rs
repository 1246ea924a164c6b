use std::process::Command;
use std::time::{Duration, Instant};

use nilsheet::liealg::Realization;
use nilsheet_cli::checks::{family, run_all, Params};
use nilsheet_cli::{CheckResult, Ctx, Mutation, Report, Status, EXIT_FAIL, EXIT_PASS, EXIT_UNKNOWN, EXIT_USAGE};

/// Largest rank touched by the criteria (`sl_8`).
const ACCEPTANCE_MAX_RANK: usize = 7;
const SINGULAR_VECTOR_LIMIT: Duration = Duration::from_secs(10);
const SINGULAR_LEVEL_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(15 * 60);

struct Outcome {
    number: usize,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn ctx() -> Ctx {
    Ctx { max_rank: ACCEPTANCE_MAX_RANK, ..Ctx::default() }
}

fn params(n: Option<usize>, m: Option<usize>, r: Option<usize>, case: Option<&str>) -> Params {
    Params { n, m, r, case: case.map(str::to_string) }
}

/// Runs one case and reports failures and cases over the time limit.
fn timed_cases(ctx: &Ctx, id: &str, cases: Vec<Params>, limit: Duration) -> (bool, String) {
    let f = family(id).expect("known family");
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for p in cases {
        let t = Instant::now();
        let out = (f.run)(ctx, &p);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        if out.is_empty() {
            problems.push(format!("{p:?}: no verdicts"));
        }
        for v in &out {
            count += 1;
            if v.status != Status::Pass {
                problems.push(format!("{} {:?} {}", v.check_id, v.status, v.witness));
            }
        }
        if dt > limit {
            problems.push(format!("{p:?} took {dt:?} > {limit:?}"));
        }
    }
    let detail = if problems.is_empty() {
        format!("{count} verdicts, slowest case {slowest:.2?} (limit {limit:?})")
    } else {
        problems.join("; ")
    };
    (problems.is_empty(), detail)
}

fn select<'a>(all: &'a [CheckResult], prefixes: &[&str]) -> Vec<&'a CheckResult> {
    all.iter().filter(|v| prefixes.iter().any(|p| v.check_id == *p || v.check_id.starts_with(&format!("{p}/")))).collect()
}

fn all_pass(vs: &[&CheckResult]) -> (bool, String) {
    let bad: Vec<String> =
        vs.iter().filter(|v| v.status != Status::Pass).map(|v| format!("{} {:?} {}", v.check_id, v.status, v.witness)).collect();
    if vs.is_empty() {
        return (false, "no verdicts".into());
    }
    if bad.is_empty() {
        (true, format!("{} verdicts pass", vs.len()))
    } else {
        (false, bad.join("; "))
    }
}

fn flag(v: &CheckResult, key: &str) -> bool {
    v.witness.get(key).and_then(|x| x.as_bool()) == Some(true)
}

#[test]
fn acceptance_criteria() {
    let ctx = ctx();
    let mut outcomes = Vec::new();

    let mut c1 = Vec::new();
    c1.extend((4..=8).map(|n| params(Some(n), None, None, None)));
    c1.extend((2..=3).map(|m| params(None, Some(m), None, None)));
    c1.extend((5..=6).map(|r| params(None, None, Some(r), None)));
    let (ok, detail) = timed_cases(&ctx, "singular-vectors", c1, SINGULAR_VECTOR_LIMIT);
    outcomes.push(Outcome { number: 1, title: "singular vectors v1, v0, w1", ok, detail });

    let mut c2 = Vec::new();
    for case in ["v1", "v1sq"] {
        c2.extend((4..=5).map(|n| params(Some(n), None, None, Some(case))));
    }
    c2.extend((2..=3).map(|m| params(None, Some(m), None, Some("v0"))));
    c2.extend((5..=6).map(|r| params(None, None, Some(r), Some("w1"))));
    let (ok, detail) = timed_cases(&ctx, "sing-level", c2, SINGULAR_LEVEL_LIMIT);
    outcomes.push(Outcome { number: 2, title: "singular levels", ok, detail });

    let t = Instant::now();
    let all = run_all(&ctx);
    let suite_time = t.elapsed();

    let (ok, detail) = all_pass(&select(&all, &["lemma-l2", "prop-weight0", "lem-Dss"]));
    let have_d = [5, 6].iter().all(|r| all.iter().any(|v| v.check_id == format!("lem-Dss/r={r}")));
    let grid = select(&all, &["lemma-l2", "prop-weight0", "lem-Dss"])
        .iter()
        .filter(|v| v.witness.get("grid").is_some())
        .all(|v| flag(v, "grid"));
    outcomes.push(Outcome { number: 3, title: "zero loci on the Cartan subalgebra", ok: ok && have_d && grid, detail });

    let classified = select(&all, &["lemma-l2", "lem-A-zero0", "lem-Dss"]);
    let ok = !classified.is_empty()
        && classified.iter().all(|v| flag(v, "classified"))
        && select(&all, &["lem-Dss"]).iter().all(|v| flag(v, "odd_rank_conjugacy"));
    let detail = format!("{} cases classified", classified.len());
    outcomes.push(Outcome { number: 4, title: "conjugacy classification", ok, detail });

    let (ok, detail) = all_pass(&select(&all, &["induction", "thm-r6"]));
    outcomes.push(Outcome { number: 5, title: "dominance, induction and the so12 poset", ok, detail });

    let certs = select(&all, &["lemma-l1", "lem-nil0", "lem-Dnil"]);
    let bad: Vec<String> = certs
        .iter()
        .filter(|v| {
            let want = if v.check_id.ends_with("/min") { Status::Unknown } else { Status::Pass };
            v.status != want
        })
        .map(|v| format!("{} {:?}", v.check_id, v.status))
        .collect();
    let minimal = certs.iter().filter(|v| v.check_id.ends_with("/min")).count();
    outcomes.push(Outcome {
        number: 6,
        title: "slice certificates of degree 2, both Lagrangians",
        ok: bad.is_empty() && minimal == 3 && certs.len() == 10,
        detail: if bad.is_empty() { format!("{} cases, {minimal} unknown on O_min", certs.len()) } else { bad.join("; ") },
    });

    let (ok, detail) = all_pass(&select(&all, &["diagrams"]));
    outcomes.push(Outcome { number: 7, title: "weighted Dynkin diagrams", ok, detail });

    let cc = select(&all, &["central-charges"]);
    let (ok, detail) = all_pass(&cc);
    outcomes.push(Outcome { number: 8, title: "central charges equal 1", ok: ok && cc.len() == 7, detail });

    let (ok, detail) = all_pass(&select(&all, &["thm-G2"]));
    outcomes.push(Outcome { number: 9, title: "G2 lisse levels and admissibility", ok, detail });

    let (ok, detail) = all_pass(&select(&all, &["zhu-psi"]));
    outcomes.push(Outcome { number: 10, title: "differential operator realization", ok, detail });

    let (ok, detail) = all_pass(&select(&all, &["properties"]));
    let no_fail = all.iter().all(|v| v.status != Status::Fail);
    outcomes.push(Outcome {
        number: 11,
        title: "property suites and full run time",
        ok: ok && no_fail && suite_time < SUITE_LIMIT,
        detail: format!("{detail}; full run {suite_time:.2?} (limit {SUITE_LIMIT:?}), {} verdicts", all.len()),
    });

    for o in &outcomes {
        println!("criterion {:>2} {}: {} ({})", o.number, if o.ok { "PASS" } else { "FAIL" }, o.title, o.detail);
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.ok).map(|o| o.number).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn report_round_trips() {
    let ctx = Ctx { seed: Some(101), ..Ctx::default() };
    let r = nilsheet_cli::commands::verify(&ctx, "induction", &Params { n: Some(5), ..Params::default() }).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: Report = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.seed, 101);
    let seeds: Vec<u64> = r.verdicts.iter().filter_map(|v| v.witness.get("seed").and_then(|x| x.as_u64())).collect();
    assert!(!seeds.is_empty() && seeds.iter().all(|s| (101..113).contains(s)));
}

#[test]
fn reports_are_deterministic() {
    let ctx = Ctx::default();
    let p = Params { m: Some(2), ..Params::default() };
    let mut a = nilsheet_cli::commands::verify(&ctx, "lem-nil0", &p).unwrap();
    let mut b = nilsheet_cli::commands::verify(&ctx, "lem-nil0", &p).unwrap();
    a.timing_ms = 0;
    b.timing_ms = 0;
    assert_eq!(a, b);
}

#[test]
fn injected_sign_flips_are_caught() {
    use nilsheet::liealg::LieElement;
    for realization in [Realization::Sl(4), Realization::SoEven(4)] {
        let g = Ctx::default().algebra(realization).unwrap();
        // every nonzero bracket of the first basis vector, plus one e/f pair further along
        let mut pairs: Vec<(usize, usize)> = (0..g.dim())
            .filter(|&j| !g.bracket(&LieElement::basis(0), &LieElement::basis(j)).is_zero())
            .map(|j| (0, j))
            .collect();
        pairs.push((2, g.num_positive_roots() + 2));
        for (i, j) in pairs {
            let ctx = Ctx { mutation: Some(Mutation { realization, i, j }), max_rank: 4, ..Ctx::default() };
            let out = (family("properties").unwrap().run)(&ctx, &Params::default());
            assert!(out.iter().any(|v| v.status == Status::Fail), "{realization:?} [{i},{j}] not caught");
        }
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nilsheet"))
        .args(args)
        .env_remove(nilsheet_cli::NATURAL_LEVELS_ENV)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn cli_exit_codes() {
    let (code, out) = cli(&["verify", "sing-level", "--case", "v0", "--m", "2"]);
    assert_eq!(code, EXIT_PASS);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdicts[0].witness["levels"], serde_json::json!(["-2"]));

    assert_eq!(cli(&["verify", "no-such-check"]).0, EXIT_USAGE);
    assert_eq!(cli(&["orbits", "A", "3", "--partition", "5"]).0, EXIT_USAGE);

    let (code, out) = cli(&["verify", "lemma-l1", "--n", "5"]);
    assert_eq!(code, EXIT_PASS);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert!(r.has_unknown());
    assert_eq!(cli(&["verify", "lemma-l1", "--n", "5", "--strict"]).0, EXIT_UNKNOWN);

    let (code, _) = cli(&["verify", "properties", "--max-rank", "3", "--mutate", "A:3:0:6"]);
    assert_eq!(code, EXIT_FAIL);
}

#[test]
fn cli_verify_all_at_default_bounds() {
    let (code, out) = cli(&["verify", "all", "--compact"]);
    assert_eq!(code, EXIT_PASS);
    let r: Report = serde_json::from_str(&out).unwrap();
    let ids: Vec<&str> = r.verdicts.iter().map(|v| v.check_id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn cli_examples() {
    let (_, out) = cli(&["orbits", "A", "3"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdicts[0].witness["count"], 5);

    let (_, out) = cli(&["orbits", "D", "4", "--partition", "2,2,2,2"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    let labels: Vec<&str> =
        r.verdicts[0].witness["orbits"].as_array().unwrap().iter().map(|o| o["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["I", "II"]);

    let (_, out) = cli(&["orbits", "D", "5", "--partition", "2,2,2,2,1,1"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    let o = &r.verdicts[0].witness["orbits"][0];
    assert_eq!(o["rigid"], false);
    assert_eq!(o["dimension"], 20);

    let (_, out) = cli(&["central-charge", "A", "3", "2,2", "-2"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdicts[0].witness["c"], "1");

    let (_, out) = cli(&["central-charge", "G", "2", "min", "-5/3"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert!(r.verdicts[0].witness["c"].is_string());

    let (_, out) = cli(&["sheets", "A", "3"]);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdicts[0].witness["count"], 5);

    let (code, out) = cli(&["charvar", "typeA-level-minus1", "--n", "4"]);
    assert_eq!(code, EXIT_PASS);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdicts[0].witness["components"].as_array().unwrap().len(), 4);
}
