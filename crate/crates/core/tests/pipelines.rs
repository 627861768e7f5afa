use std::path::PathBuf;

use nonsplit_core::pipelines::{
    exit_code, min_faithful_degree, parse_group_file, run, run_even, run_odd, verify_certificate, Budgets, Certificate,
    Command, Outcome, RunConfig,
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn even7() -> Certificate {
    run_even(7, &RunConfig::new(Command::Even { k: 7 })).unwrap()
}

#[test]
fn even_k7_matches_golden_file() {
    let golden = std::fs::read_to_string(data("even_k7.json")).unwrap();
    assert_eq!(even7().to_json().unwrap() + "\n", golden);
}

#[test]
fn golden_certificate_replays() {
    let cert = Certificate::read(&data("even_k7.json")).unwrap();
    let report = verify_certificate(&cert, &Budgets::default()).unwrap();
    assert!(report.passed, "{report:?}");
    assert_eq!(
        report.check("order sweep").unwrap().detail,
        "exhaustive over 2^14 elements: orders [4]"
    );
}

#[test]
fn tampered_certificates_are_rejected() {
    let cert = even7();

    let mut swapped = cert.clone();
    swapped.generator_images.lifts.swap(0, 1);
    let r = verify_certificate(&swapped, &Budgets::default()).unwrap();
    assert!(!r.passed);
    assert!(!r.check("conjugation").unwrap().passed);

    let mut tails = cert.clone();
    let t = &mut tails.cocycle.relator_tails[0];
    let flipped = if t.starts_with('0') { "1" } else { "0" };
    t.replace_range(0..1, flipped);
    let r = verify_certificate(&tails, &Budgets::default()).unwrap();
    assert!(!r.check("relator tails").unwrap().passed);

    let mut verdict = cert;
    verdict.verdict.transitive = false;
    let r = verify_certificate(&verdict, &Budgets::default()).unwrap();
    assert!(!r.check("verdict").unwrap().passed);
}

#[test]
fn odd_below_range_is_marked() {
    let mut cfg = RunConfig::new(Command::Odd { k: 9, p: 3 });
    assert_eq!(exit_code(&run(&cfg)), 1);
    cfg.allow_small = true;
    let cert = run_odd(9, 3, &cfg).unwrap();
    assert!(!cert.construction.within_hypotheses);
    assert!(cert
        .construction
        .notes
        .iter()
        .any(|n| n == "outside theorem hypotheses"));
    assert_eq!(cert.degrees.degree, 108);
    assert!(cert.is_positive());
    assert!(verify_certificate(&cert, &cfg.budgets).unwrap().passed);
}

#[test]
fn odd_p5_at_k10() {
    let cfg = RunConfig::new(Command::Odd { k: 10, p: 5 });
    let cert = run_odd(10, 5, &cfg).unwrap();
    assert_eq!(cert.degrees.degree, 225);
    assert_eq!(cert.module.dim, 8 + 28);
    assert!(cert.is_positive());
    assert!(verify_certificate(&cert, &cfg.budgets).unwrap().passed);
}

#[test]
fn usage_errors_map_to_exit_code_one() {
    for cmd in [
        Command::Even { k: 6 },
        Command::Odd { k: 12, p: 5 },
        Command::Odd { k: 12, p: 9 },
        Command::LemmaCocycle { k: 8 },
    ] {
        assert_eq!(exit_code(&run(&RunConfig::new(cmd))), 1);
    }
}

#[test]
fn lemma_at_seven() {
    let outcome = run(&RunConfig::new(Command::LemmaCocycle { k: 7 })).unwrap();
    let Outcome::Lemma(l) = outcome else {
        panic!("expected a lemma report")
    };
    assert!(l.holds);
    assert_eq!(l.inner_products, [1, 0]);
    assert_eq!(l.selection.selected, "spin");
    assert!(l.omega.is_none());
}

#[test]
fn minimal_degrees_of_small_groups() {
    let degree = |f: &str| {
        let (d, g) = parse_group_file(&std::fs::read_to_string(data(f)).unwrap()).unwrap();
        min_faithful_degree(d, &g, 400)
    };
    assert_eq!(degree("a5.perm").unwrap().degree, 5);
    let sl23 = degree("sl2_3.perm").unwrap();
    assert_eq!((sl23.order, sl23.minimal_normal_order, sl23.degree), (24, 2, 8));
    let sl25 = degree("sl2_5.perm").unwrap();
    assert_eq!((sl25.order, sl25.minimal_normal_order, sl25.degree), (120, 2, 24));
    assert!(degree("klein_four.perm").is_err());
    let (d, g) = parse_group_file(&std::fs::read_to_string(data("sl2_5.perm")).unwrap()).unwrap();
    assert!(min_faithful_degree(d, &g, 100).is_err());
}
