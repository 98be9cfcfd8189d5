//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::path::Path;
use std::time::{Duration, Instant};

use tangentad::model_aux::fincat::{Bounds, FiniteCategory};
use tangentad::report::Report;
use tangentad::suites;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_report(rep: &Report, what: &str) -> Outcome {
    let failures = rep.failures();
    match failures.first() {
        None => Outcome { pass: true, detail: format!("{} diagrams over {what}, 0 failures", rep.len()) },
        Some(f) => Outcome {
            pass: false,
            detail: format!(
                "{} of {} diagrams fail; first {} at {}: {}",
                failures.len(),
                rep.len(),
                f.diagram_id,
                f.sample_id,
                f.witness.clone().unwrap_or_default()
            ),
        },
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn corpus() -> Vec<(String, FiniteCategory)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/categories");
    let mut entries: Vec<_> = std::fs::read_dir(&dir)
        .expect("category corpus directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).expect("readable corpus file");
            let cat: FiniteCategory = serde_json::from_str(&text).expect("valid finite category");
            (p.file_stem().unwrap().to_string_lossy().into_owned(), cat)
        })
        .collect()
}

fn criterion(n: usize, name: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = run();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            out = fail(format!("{}; took {took:.2?}, over the {limit:?} budget", out.detail));
        }
    }
    println!(
        "{} criterion {n:>2}: {name} ({}; {took:.2?})",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail
    );
    out.pass
}

fn main() {
    let secs = Duration::from_secs;
    let mut ok = true;

    ok &= criterion(1, "Weil relations and fundamental pullbacks", Some(secs(5)), || {
        from_report(&suites::weil_suite(3), "the Weil generators at height 3")
    });

    ok &= criterion(2, "polynomial tangent axioms, exact", Some(secs(30)), || {
        match suites::poly_suite(SEED, 50, None) {
            Ok(rep) => from_report(&rep, "50 random maps"),
            Err(e) => fail(e.to_string()),
        }
    });

    ok &= criterion(3, "bracket equals the classical oracle; side condition holds", None, || {
        from_report(&suites::bracket_suite(SEED, 20), "20 field pairs")
    });

    ok &= criterion(4, "Lie algebra laws on random triples", Some(secs(60)), || {
        from_report(&suites::lie_suite(SEED, 20), "20 field triples")
    });

    ok &= criterion(5, "bracket preserves f-relatedness", None, || {
        from_report(&suites::f_related_suite(SEED, 10), "10 conjugate linear examples")
    });

    ok &= criterion(6, "vector-field monad on commuting families", None, || {
        from_report(&suites::vf_monad_suite(SEED, 10), "10 families and 10 non-commuting pairs")
    });

    ok &= criterion(7, "writer monad and its lift to vector fields", None, || {
        from_report(&suites::monad_suite(SEED, 10, None), "the writer monad and 10 random fields")
    });

    ok &= criterion(8, "universality round trips on probe families", None, || {
        let rep = suites::universality_suite(SEED, 6);
        let families: std::collections::BTreeSet<String> = rep
            .entries
            .iter()
            .filter(|r| r.diagram_id == "universal/gamma-lambda")
            .map(|r| r.sample_id.clone())
            .collect();
        let out = from_report(&rep, &format!("{} probe families", families.len()));
        if out.pass && families.len() < 5 {
            fail(format!("only {} probe families", families.len()))
        } else {
            out
        }
    });

    ok &= criterion(9, "vector fields as an equifier of an inserter", Some(secs(60)), || {
        let cats = corpus();
        let bounds = Bounds::default();
        if cats.len() < 6 {
            return fail(format!("corpus has {} categories", cats.len()));
        }
        if let Some((name, _)) = cats.iter().find(|(_, c)| bounds.check(c, "corpus").is_err()) {
            return fail(format!("{name} is over the bound"));
        }
        match suites::pie_suite(&cats, &bounds) {
            Ok(rep) => from_report(&rep, &format!("{} categories", cats.len())),
            Err(e) => fail(e.to_string()),
        }
    });

    ok &= criterion(10, "restriction laws and extended vector fields", None, || {
        from_report(&suites::restriction_suite(SEED, 30), "30 random rational triples")
    });

    ok &= criterion(11, "dual numbers, exact tangents and finite differences agree", None, || {
        from_report(&suites::cross_model_suite(SEED, 20, 32, 1e-9, 1e-7), "20 maps at 32 points")
    });

    ok &= criterion(12, "every shipped mutation is caught", None, || match suites::mutation_suite(SEED) {
        Ok(outs) => {
            let missed: Vec<&str> = outs.iter().filter(|o| o.failed.is_empty()).map(|o| o.name).collect();
            let caught: Vec<String> = outs
                .iter()
                .filter(|o| !o.failed.is_empty())
                .map(|o| format!("{} by {}", o.name, o.failed[0]))
                .collect();
            if outs.len() < 6 {
                fail(format!("only {} mutations shipped", outs.len()))
            } else if missed.is_empty() {
                Outcome { pass: true, detail: format!("{} mutations caught: {}", outs.len(), caught.join(", ")) }
            } else {
                fail(format!("not caught: {}", missed.join(", ")))
            }
        }
        Err(e) => fail(e.to_string()),
    });

    if !ok {
        std::process::exit(1);
    }
}
