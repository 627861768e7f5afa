//! One PASS/FAIL line per acceptance criterion, with wall time against its target.

use std::sync::Arc;
use std::time::{Duration, Instant};

use nonsplit_core::cohom::{
    check_cocycle, coboundary_test, table_coboundary_test, tails_with_section, Cocycle2, ConnectingCocycle, Derivation,
    RandomCoboundary, SharedCocycle, SignCarryCocycle, SpinCocycle, SumCocycle, ZeroCocycle,
};
use nonsplit_core::ext::{nonsplit_certificate, ExtGroup, SweepMethod};
use nonsplit_core::gf::{Field, SubspaceGF, VectorGF};
use nonsplit_core::gmod::{natural_module, pair_permutation_module, GModule};
use nonsplit_core::perm::{todd_coxeter_order, GroupKind, Presentation};
use nonsplit_core::pipelines::even::{decompose_pair_module, select_class};
use nonsplit_core::pipelines::odd::OddStructure;
use nonsplit_core::pipelines::{
    build_even, build_odd, run_even, run_odd, verify_certificate, verify_cocycle_lemma, Command, RunConfig,
    LEMMA_SYSTEM_LIMIT,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lemma_inner_products() -> Outcome {
    let mut parts = Vec::new();
    for (k, limit) in [(7, Duration::from_secs(10)), (11, Duration::from_secs(300))] {
        let t = Instant::now();
        let r = verify_cocycle_lemma(k, LEMMA_SYSTEM_LIMIT, &mut rng(1)).map_err(err)?;
        let chosen = r
            .selection
            .classes
            .iter()
            .find(|c| c.name == r.selection.selected)
            .unwrap();
        let infeasible = chosen.on_reduced.as_ref().is_some_and(|s| !s.feasible);
        ensure(
            infeasible,
            &format!("k={k}: selected class not certified nontrivial on P3"),
        )?;
        ensure(
            r.inner_products == [1, 0],
            &format!("k={k}: inner products {:?}", r.inner_products),
        )?;
        ensure(t.elapsed() < limit, &format!("k={k}: took {:?}", t.elapsed()))?;
        parts.push(format!("k={k} class {} (1,0)", r.selection.selected));
    }
    Ok(parts.join("; "))
}

fn even_seven() -> Outcome {
    let mut cfg = RunConfig::new(Command::Even { k: 7 });
    cfg.budgets.associativity_trials = 10_000;
    let c = run_even(7, &cfg).map_err(err)?;
    ensure(c.degrees.degree == 84, "degree")?;
    ensure(c.transitive, "transitive")?;
    ensure(c.faithful.gcore_dim == 0, "g_core")?;
    let oc = c.faithful.order_check.as_ref().ok_or("no order check")?;
    ensure(oc.matches && oc.computed == "41287680", "Schreier-Sims order")?;
    ensure(!c.nonsplit.system.feasible, "complement system feasible")?;
    let sw = c.nonsplit.order4_sweep.as_ref().ok_or("no sweep")?;
    ensure(
        sw.method == SweepMethod::Exhaustive && sw.elements == "16384" && sw.orders == [4],
        "exhaustive order-4 sweep",
    )?;
    ensure(c.is_positive(), "verdict")?;
    ensure(verify_certificate(&c, &cfg.budgets).map_err(err)?.passed, "replay")?;
    Ok(format!(
        "degree 84, order {}, system {}x{} rank {} infeasible, 2^14 coset elements of order 4",
        oc.computed, c.nonsplit.system.unknowns, c.nonsplit.system.equations, c.nonsplit.system.rank
    ))
}

fn odd_twelve_three() -> Outcome {
    let cfg = RunConfig::new(Command::Odd { k: 12, p: 3 });
    let c = run_odd(12, 3, &cfg).map_err(err)?;
    let s: OddStructure = serde_json::from_value(c.details["structure"].clone()).map_err(err)?;
    ensure(c.degrees.degree == 198, "degree")?;
    ensure((s.dims.m, s.dims.l, s.dims.d) == (55, 10, 45), "dims")?;
    ensure(s.socle_is_l && s.head_is_l, "socle/head")?;
    ensure(s.middle_is_trivial_plus_d, "middle")?;
    ensure(s.hom_m_theta == 1 && s.theta_complement, "M_Y = θ ⊕ M₀")?;
    ensure(s.h1_quotient >= 1, "H¹")?;
    ensure(c.verdict.nonsplit && c.verdict.faithful && c.transitive, "certificates")?;
    ensure(verify_certificate(&c, &cfg.budgets).map_err(err)?.passed, "replay")?;
    Ok(format!(
        "degree 198, dim M/L/D = 55/10/45, socle = head = L, middle F3+D, H¹ = {}",
        s.h1_quotient
    ))
}

fn fixed_points_and_classes() -> Outcome {
    let pm = pair_permutation_module(7, 2).map_err(err)?;
    let d = decompose_pair_module(&pm, &mut rng(1), 200).map_err(err)?;
    ensure(d.fixed_dim == 3 && d.fixed_basis, "C_P(Y)")?;
    let sel = select_class(&pm, false).map_err(err)?;
    ensure(
        sel.classes.iter().all(|c| !c.on_young.feasible),
        "a candidate class is zero on Y",
    )?;
    ensure(sel.h2_lower_bound == 2, "lower bound")?;
    Ok("dim C_P(Y) = 3 = span{u, f, x1+x2}; spin, sign_carry, sum nonzero on S_5".into())
}

fn decomposition() -> Outcome {
    let pm = pair_permutation_module(7, 2).map_err(err)?;
    let d = decompose_pair_module(&pm, &mut rng(1), 200).map_err(err)?;
    ensure(d.factor_dims == [1, 6, 14], &format!("factor dims {:?}", d.factor_dims))?;
    ensure(
        d.direct_sum && d.summand_certificates.iter().all(|c| c.is_some()),
        "summands",
    )?;
    ensure(d.u_orthogonal && d.u_isotropic, "u")?;
    Ok(format!(
        "factors {:?}, summands {:?} irreducible, u isotropic and orthogonal",
        d.factor_dims, d.summand_dims
    ))
}

fn restriction_eight() -> Outcome {
    let cfg = RunConfig::new(Command::Even { k: 8 });
    let c = run_even(8, &cfg).map_err(err)?;
    let r = c.restriction.as_ref().ok_or("no restriction")?;
    let sizes: Vec<usize> = r.orbits.iter().map(|o| o.size).collect();
    ensure(r.j == 11 && sizes.iter().sum::<usize>() == 220, "orbit decomposition")?;
    ensure(
        sizes.iter().all(|s| [2, 16, 112].contains(s)),
        &format!("orbit sizes {sizes:?}"),
    )?;
    ensure(c.degrees.degree == 112 && c.transitive, "degree")?;
    ensure(c.faithful.order_check.as_ref().is_some_and(|o| o.matches), "order")?;
    ensure(c.verdict.nonsplit && c.is_positive(), "nonsplit")?;
    ensure(verify_certificate(&c, &cfg.budgets).map_err(err)?.passed, "replay")?;
    let mut distinct = sizes.clone();
    distinct.dedup();
    Ok(format!(
        "orbit sizes {distinct:?}; image 2^{}.A_8 on 112 points, nonsplit",
        c.module.dim
    ))
}

fn oracles() -> Outcome {
    // (a) complement system against the full cocycle table
    let mut checked = 0;
    for (kind, n) in [
        (GroupKind::SymmetricCoxeter, 3),
        (GroupKind::SymmetricCoxeter, 4),
        (GroupKind::AlternatingCarmichael, 4),
    ] {
        let pres = Arc::new(Presentation::of(kind, n).map_err(err)?);
        for p in [2, 3] {
            let module = GModule::trivial(pres.clone(), Field::new(p).map_err(err)?);
            for seed in 0..4u64 {
                let mut parts: Vec<SharedCocycle> = vec![Arc::new(RandomCoboundary::new(module.clone(), seed))];
                if p == 2 && seed % 2 == 1 {
                    parts.push(Arc::new(SpinCocycle::new(pres.clone(), (0..n).collect()).map_err(err)?));
                }
                if p == 2 && seed >= 2 {
                    parts.push(Arc::new(
                        SignCarryCocycle::new(pres.clone(), (0..n).collect()).map_err(err)?,
                    ));
                }
                let delta = SumCocycle::new(parts).map_err(err)?;
                let a = coboundary_test(&delta).map_err(err)?.is_feasible();
                let b = table_coboundary_test(&delta, 100).map_err(err)?;
                ensure(a == b, &format!("{kind:?} {n} GF({p}) seed {seed}"))?;
                checked += 1;
            }
        }
    }
    // (b) Todd-Coxeter
    for n in 3..=8 {
        for kind in [GroupKind::AlternatingCarmichael, GroupKind::SymmetricCoxeter] {
            let p = Presentation::of(kind, n).map_err(err)?;
            ensure(
                todd_coxeter_order(&p, 200_000).map_err(err)? == p.group().order(),
                "Todd-Coxeter",
            )?;
        }
    }
    // (c) cocycle identity and associativity on the constructions
    let mut cfg = RunConfig::new(Command::Even { k: 7 });
    cfg.budgets.associativity_trials = 10_000;
    let even = build_even(7, &cfg, &mut cfg.rng()).map_err(err)?;
    check_cocycle(even.h.cocycle().as_ref(), &mut rng(5), 10_000).map_err(err)?;
    even.h.check_associativity(&mut rng(6), 10_000).map_err(err)?;
    let mut cfg = RunConfig::new(Command::Odd { k: 12, p: 3 });
    cfg.budgets.associativity_trials = 10_000;
    let odd = build_odd(12, 3, &cfg, &mut cfg.rng()).map_err(err)?;
    check_cocycle(odd.h.cocycle().as_ref(), &mut rng(7), 10_000).map_err(err)?;
    odd.h.check_associativity(&mut rng(8), 10_000).map_err(err)?;
    // (d) induction step at k = 15
    let r = verify_cocycle_lemma(15, LEMMA_SYSTEM_LIMIT, &mut rng(1)).map_err(err)?;
    let omega = r.omega.as_ref().ok_or("no Ω report")?;
    let proj = r.projection.as_ref().ok_or("no projection report")?;
    ensure(omega.covering_holds, "Ω covering")?;
    ensure(proj.matches && proj.k_small == 11, "projection to k = 11")?;
    Ok(format!(
        "{checked} cocycles agree with the table oracle; Todd-Coxeter n <= 8; 10^4 triples on both constructions; k=15 covering and projection ({} coordinates)",
        proj.coordinates_compared
    ))
}

fn split_controls() -> Outcome {
    let n = natural_module(7, 2).map_err(err)?;
    let delta: SharedCocycle = Arc::new(ZeroCocycle::new(n));
    let h = ExtGroup::build(delta.clone(), &mut rng(1), 1000).map_err(err)?;
    let cert = nonsplit_certificate(&h, 1 << 10, &mut rng(2)).map_err(err)?;
    let field = h.module().field();
    let c: Vec<VectorGF> = cert
        .complement
        .as_ref()
        .ok_or("no complement")?
        .iter()
        .map(|s| VectorGF::from_digit_string(field, s).ok_or("bad complement"))
        .collect::<Result<_, _>>()?;
    ensure(!cert.nonsplit, "zero cocycle reported nonsplit")?;
    ensure(
        tails_with_section(delta.as_ref(), &c)
            .map_err(err)?
            .iter()
            .all(|t| t.is_zero()),
        "complement",
    )?;

    let v = natural_module(5, 5).map_err(err)?;
    let f = v.field();
    let q = SubspaceGF::span(f, 5, [VectorGF::from_elems(f, &[1; 5])]).quotient_with_section();
    let m = v.submodule(q.kernel()).map_err(err)?;
    let vm = v.quotient(&q).map_err(err)?;
    let x = q.project(&VectorGF::from_elems(f, &[1, 2, 0, 0, 0]));
    let inner = Derivation::inner(vm, &x).map_err(err)?;
    let conn = ConnectingCocycle::new(inner, v, q, m).map_err(err)?;
    ensure(
        coboundary_test(&conn).map_err(err)?.is_feasible(),
        "inner derivation not a coboundary",
    )?;
    ensure(
        table_coboundary_test(&conn, 100).map_err(err)?,
        "table oracle disagrees",
    )?;
    ensure(conn.module().dim() == 1, "dimension")?;
    Ok("δ = 0 splits with an explicit complement; inner derivation gives a coboundary".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("cocycle lemma at k = 7, 11", lemma_inner_products, 310),
        ("even construction at k = 7", even_seven, 60),
        ("odd construction at (12, 3)", odd_twelve_three, 900),
        ("fixed points and classes at k = 7", fixed_points_and_classes, 30),
        ("pair module decomposition at k = 7", decomposition, 30),
        ("restriction to A_8 from A_11", restriction_eight, 600),
        ("oracle equivalences", oracles, 240),
        ("split controls", split_controls, 10),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        let in_time = secs < *limit as f64;
        let (status, detail) = match &outcome {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d} (over the {limit} s target)")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {}: {status} [{secs:.1} s] {name}: {detail}", i + 1);
    }
    if failed > 0 {
        eprintln!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
