//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use logcalc::files;
use logcalc::fuzz::fuzz_roundtrip;
use logcalc_core::intertwiner::fixtures::jordan_tables;
use logcalc_core::intertwiner::{Axiom, IntertwinerTable};
use logcalc_core::mobius::ConjIdentity;
use logcalc_core::report::Report;
use logcalc_core::scalars::configure_lattice;
use logcalc_core::suites::{comb_suite, jacobi_suite, lubell_suite, module_suite, ode_suite, solver_tables, table_suite, taylor_suite};

struct Outcome {
    pass: bool,
    detail: String,
}

fn require(rep: &Report, ids: &[&str]) -> Outcome {
    let mut missing = Vec::new();
    let mut failed = Vec::new();
    let mut cases = Vec::new();
    for id in ids {
        match rep.find(id) {
            None => missing.push(id.to_string()),
            Some(c) if !c.pass => failed.push(format!("{id}: {}", c.witness.clone().unwrap_or_else(|| c.detail.clone()))),
            Some(c) => cases.push(format!("{id} {}", c.detail)),
        }
    }
    let pass = missing.is_empty() && failed.is_empty();
    let detail = if pass { cases.join("; ") } else { format!("missing [{}] failed [{}]", missing.join(", "), failed.join("; ")) };
    Outcome { pass, detail }
}

fn within(o: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        o
    } else {
        Outcome { pass: false, detail: format!("{} (took {:.1}s, limit {}s)", o.detail, elapsed.as_secs_f64(), limit.as_secs()) }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn module_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for j in -1..=1 {
        ids.push(ConjIdentity::XL0Lj(j).id());
        ids.push(ConjIdentity::XL0ExpLj(j).id());
    }
    for c in [ConjIdentity::ExpLm1, ConjIdentity::ExpL0, ConjIdentity::ExpL1] {
        ids.push(c.id());
    }
    for r in -2..=1 {
        ids.push(ConjIdentity::InverseRel(r).id());
    }
    ids
}

fn main() {
    configure_lattice(12).expect("default lattice");
    let mut lines: Vec<(u32, &str, Outcome, Duration)> = Vec::new();

    let (taylor, t_taylor) = timed(|| taylor_suite(200, 8, 0).expect("taylor suite runs"));
    let limit = Duration::from_secs(30);
    lines.push((1, "Taylor theorem", within(require(&taylor, &["ck1"]), t_taylor, limit), t_taylor));
    lines.push((2, "scaling theorem", within(require(&taylor, &["ck2"]), t_taylor, limit), t_taylor));

    let (comb, t) = timed(|| comb_suite(10));
    let mut o = require(&comb, &["comb"]);
    if o.pass && !o.detail.contains("66 cases") {
        o = Outcome { pass: false, detail: format!("expected 66 cases: {}", o.detail) };
    }
    lines.push((3, "combinatorial identity", within(o, t, Duration::from_secs(5)), t));

    let (lub, t) = timed(|| lubell_suite(6, 4));
    lines.push((4, "Lubell identity and refinement", within(require(&lub, &["lubell", "lubell-k"]), t, Duration::from_secs(10)), t));

    let (ode, t) = timed(|| ode_suite(100, 0));
    lines.push((5, "ODE structure", require(&ode, &["de", "de-negative", "de-truncated"]), t));

    let (tables, t_solve) = timed(jordan_tables);
    let logs: BTreeSet<u32> = tables.iter().map(IntertwinerTable::max_log).collect();
    let small = tables.iter().all(|t| [t.w1(), t.w2(), t.w3()].iter().all(|m| m.dim() <= 4));
    let pairs: Vec<(IntertwinerTable, &[Axiom])> = tables.iter().cloned().map(|t| (t, &Axiom::L0_TYPE[..])).collect();
    let (tab, t_tab) = timed(|| table_suite(&pairs));
    let t_tab = t_tab + t_solve;

    let mut o = require(&tab, &["axioms", "last"]);
    if !(1..=3).all(|k| logs.contains(&k)) {
        o = Outcome { pass: false, detail: format!("log powers present {logs:?}, need 1, 2 and 3") };
    }
    lines.push((6, "mode recovery", o, t_tab));

    let mut o = require(&tab, &["or", "ar", "or-comp", "ar-comp"]);
    if tables.len() < 3 || !small {
        o = Outcome { pass: false, detail: format!("{} tables, all dimensions <= 4: {small}", tables.len()) };
    } else {
        o.detail = format!("{} tables; {}", tables.len(), o.detail);
    }
    lines.push((7, "Omega and A involutions and compositions", o, t_tab));

    let ids = ["ty", "t00", "gen", "rt", "xt-homs", "bound", "pairing_poly", "mode_weight"];
    lines.push((8, "weight formulas and bounds", require(&tab, &ids), t_tab));
    lines.push((9, "Vandermonde route", require(&tab, &["xt-vandermonde"]), t_tab));

    let (mods, t) = timed(|| module_suite(0, 5, 10).expect("module suite runs"));
    let ids = module_ids();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let mut o = require(&mods, &refs);
    if o.pass && !mods.passed() {
        o = Outcome {
            pass: false,
            detail: format!("other module checks failed: {:?}", mods.failures().map(|c| &c.id).collect::<Vec<_>>()),
        };
    }
    lines.push((10, "sl(2) conjugation identities", o, t));

    let (jac, t) = timed(|| jacobi_suite(&solver_tables()));
    lines.push((11, "windowed Jacobi identity", require(&jac, &["jacobi-vacuum", "jacobi", "jacobi-detects"]), t));

    let (o, t) = timed(|| {
        let mut notes = Vec::new();
        let mut pass = true;
        if let Err(e) = fuzz_roundtrip(10_000, 0) {
            pass = false;
            notes.push(format!("fuzz: {e}"));
        } else {
            notes.push("10000 expressions".into());
        }
        let names = ["jordan_half.json", "trivial.json", "jordan_table.json", "nilpotent_vertex.json"];
        for n in names {
            let text = std::fs::read_to_string(data(n)).expect("data file");
            match files::reencode(&text) {
                Ok(again) if again == text => {}
                Ok(_) => {
                    pass = false;
                    notes.push(format!("{n} re-encodes differently"));
                }
                Err(e) => {
                    pass = false;
                    notes.push(format!("{n}: {e}"));
                }
            }
        }
        notes.push(format!("{} data files", names.len()));
        let start = Instant::now();
        let run = Command::new(env!("CARGO_BIN_EXE_logcalc")).args(["check", "all", "--seed", "0"]).output();
        let took = start.elapsed();
        match run {
            Ok(out) if out.status.code() == Some(0) && took < Duration::from_secs(300) => {
                notes.push(format!("check all exit 0 in {:.1}s", took.as_secs_f64()))
            }
            Ok(out) => {
                pass = false;
                notes.push(format!("check all exit {:?} in {:.1}s", out.status.code(), took.as_secs_f64()));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("check all did not run: {e}"));
            }
        }
        Outcome { pass, detail: notes.join("; ") }
    });
    lines.push((12, "CLI round trips", o, t));

    let mut failed = 0;
    for (n, name, o, t) in &lines {
        let mark = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("criterion {n:>2} {mark}  {name} [{:.2}s]: {}", t.as_secs_f64(), o.detail);
    }
    println!("{}/{} criteria passed", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
