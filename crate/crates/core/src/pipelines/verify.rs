//! Independent replay of a certificate from its recorded data only: nothing
//! from the construction is reused beyond the presentation registry, linear
//! algebra over GF(p) and permutation arithmetic.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, ConstructionKind};
use super::config::Budgets;
use crate::cohom::{concat_cochain, fox_matrix};
use crate::error::{Error, Result};
use crate::ext::SweepMethod;
use crate::gf::{Field, MatrixGF, SubspaceGF, VectorGF};
use crate::gmod::GModule;
use crate::perm::{alternating_presentation, word_to_string, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub checks: Vec<ReplayCheck>,
    /// Every check passed and the recomputed verdict is positive.
    pub passed: bool,
}

impl ReplayReport {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(ReplayCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn check(&self, name: &str) -> Option<&ReplayCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Coordinates of elements of the module subgroup `E` from their action on
/// the `E`-orbits, each of size 1 or `p`.
struct Decoder {
    field: Field,
    degree: usize,
    /// Per nontrivial orbit: base point and the label `c` of each point `b·e^c`.
    orbits: Vec<(usize, Vec<Option<u8>>)>,
    /// Rows: module generators; columns: orbits.
    matrix: MatrixGF,
}

impl Decoder {
    fn new(field: Field, degree: usize, gens: &[Permutation]) -> Result<Self> {
        let p = field.p() as usize;
        let group = PermGroup::new(degree, gens.to_vec())?;
        let mut orbits = Vec::new();
        for orbit in group.orbits() {
            if orbit.len() == 1 {
                continue;
            }
            if orbit.len() != p {
                return Err(Error::check(
                    "module decode",
                    format!("orbit of size {} is not p", orbit.len()),
                ));
            }
            let b = orbit[0];
            let e = gens.iter().find(|g| g.apply(b) != b).expect("nontrivial orbit");
            let mut labels = vec![None; degree];
            let mut x = b;
            for c in 0..p {
                labels[x] = Some(c as u8);
                x = e.apply(x);
            }
            orbits.push((b, labels));
        }
        let mut d = Decoder {
            field,
            degree,
            orbits,
            matrix: MatrixGF::zeros(field, 0, 0),
        };
        let rows = gens
            .iter()
            .map(|g| {
                d.coordinates(g)
                    .ok_or_else(|| Error::check("module decode", "generator is not a translation"))
            })
            .collect::<Result<Vec<_>>>()?;
        d.matrix = MatrixGF::from_rows(field, d.orbits.len(), rows)?;
        Ok(d)
    }

    /// The translation amount of `g` on each orbit, if `g` translates every orbit.
    fn coordinates(&self, g: &Permutation) -> Option<VectorGF> {
        let p = self.field.p();
        let mut fixed = vec![true; self.degree];
        let mut out = Vec::with_capacity(self.orbits.len());
        for (b, labels) in &self.orbits {
            let c = labels[g.apply(*b)]?;
            for (x, l) in labels.iter().enumerate() {
                if let Some(l) = l {
                    fixed[x] = false;
                    if labels[g.apply(x)] != Some(self.field.add(*l, c) % p) {
                        return None;
                    }
                }
            }
            out.push(c);
        }
        if (0..self.degree).any(|x| fixed[x] && g.apply(x) != x) {
            return None;
        }
        Some(VectorGF::from_elems(self.field, &out))
    }

    /// `m` with `g = Π e_i^{m_i}`, if `g ∈ E`.
    fn decode(&self, g: &Permutation) -> Result<Option<VectorGF>> {
        match self.coordinates(g) {
            Some(c) => self.matrix.solve_left(&c),
            None => Ok(None),
        }
    }
}

fn module_element(gens: &[Permutation], v: &VectorGF) -> Permutation {
    let mut out = Permutation::identity(gens[0].degree());
    for (i, g) in gens.iter().enumerate() {
        for _ in 0..v.get(i) {
            out = out.then(g);
        }
    }
    out
}

fn evaluate(word: &[crate::perm::Letter], images: &[Permutation], degree: usize) -> Permutation {
    word.iter().fold(Permutation::identity(degree), |acc, l| {
        if l.inverse {
            acc.then(&images[l.gen].inverse())
        } else {
            acc.then(&images[l.gen])
        }
    })
}

fn closed_form(kind: ConstructionKind, k: usize, p: usize) -> usize {
    match kind {
        ConstructionKind::Even => 2 * k * (k - 1),
        ConstructionKind::Odd => p * k * (k - 1) / 2,
    }
}

/// Replays a certificate. Structural parse errors are returned as `Err`;
/// mathematical discrepancies become failed checks in the report.
pub fn verify_certificate(cert: &Certificate, budgets: &Budgets) -> Result<ReplayReport> {
    let mut r = ReplayReport {
        checks: Vec::new(),
        passed: false,
    };
    let c = &cert.construction;
    let k = cert.presentation.n;
    let pres = Arc::new(alternating_presentation(k)?);
    let same_pres = k == c.k
        && pres
            .realization()
            .iter()
            .map(|g| g.to_cycle_string())
            .eq(cert.presentation.generators.iter().cloned())
        && pres
            .relators()
            .iter()
            .map(|w| word_to_string(w))
            .eq(cert.presentation.relators.iter().cloned());
    r.push(
        "presentation",
        same_pres && pres.relators_hold(),
        format!("A_{k} rebuilt and compared"),
    );

    let field = Field::new(c.p as u32)?;
    let action = cert
        .module
        .action
        .iter()
        .map(|t| MatrixGF::from_text(t))
        .collect::<Result<Vec<_>>>()?;
    let module = GModule::new(pres.clone(), field, cert.module.dim, action)?;
    r.push(
        "module relations",
        module.relations_hold(),
        format!("dimension {} over GF({})", module.dim(), c.p),
    );

    // Degree and images.
    let imgs = &cert.generator_images;
    let n = imgs.degree;
    let parse = |v: &[String]| {
        v.iter()
            .map(|s| Permutation::parse_cycles(n, s))
            .collect::<Result<Vec<_>>>()
    };
    let lifts = parse(&imgs.lifts)?;
    let basis = parse(&imgs.module)?;
    let expected = closed_form(c.kind, c.k, c.p as usize);
    let degree_matches = n == cert.degrees.degree && n == cert.degrees.closed_form && n == expected;
    r.push(
        "degree",
        degree_matches,
        format!("{n} against {} = {expected}", cert.degrees.formula),
    );
    if lifts.len() != pres.generator_count() || basis.len() != module.dim() {
        return Err(Error::Parse(
            "generator image counts do not match the presentation and module".into(),
        ));
    }
    let all: Vec<Permutation> = lifts.iter().chain(&basis).cloned().collect();
    let group = PermGroup::new(n, all)?;
    let transitive = group.is_transitive();
    r.push("transitive", transitive, format!("{} orbit(s)", group.orbits().len()));

    // The module subgroup E.
    let p = field.p() as i64;
    let commute = basis.iter().all(|a| basis.iter().all(|b| a.then(b) == b.then(a)));
    let order_p = basis.iter().all(|e| e.order() == p as u64);
    let decoder = Decoder::new(field, n, &basis);
    let rank = decoder.as_ref().map_or(0, |d| d.matrix.rank());
    let module_ok = commute && order_p && rank == module.dim();
    r.push(
        "module subgroup",
        module_ok,
        format!(
            "commuting: {commute}, order p: {order_p}, decoded rank {rank} of {}",
            module.dim()
        ),
    );
    let Ok(decoder) = decoder else {
        return Ok(finish(r, cert));
    };

    // Conjugation by lifts realizes the module action: e_i^{s} = e_i·A_s.
    let conj_ok = lifts.iter().zip(module.action()).all(|(s, a)| {
        let si = s.inverse();
        basis
            .iter()
            .enumerate()
            .all(|(i, e)| si.then(e).then(s) == module_element(&basis, a.row(i)))
    });
    r.push(
        "conjugation",
        conj_ok,
        "lift conjugates of the module basis match the action matrices",
    );

    // Relator tails, read off the lifted relators.
    let mut tails = Vec::new();
    let mut tails_ok = cert.cocycle.relator_tails.len() == pres.relators().len();
    for (rel, stored) in pres.relators().iter().zip(&cert.cocycle.relator_tails) {
        let v = evaluate(rel, &lifts, n);
        match (decoder.decode(&v)?, VectorGF::from_digit_string(field, stored)) {
            (Some(t), Some(s)) if t == s => tails.push(t),
            _ => {
                tails_ok = false;
                break;
            }
        }
    }
    r.push(
        "relator tails",
        tails_ok,
        "lifted relators lie in the module subgroup with the recorded tails",
    );
    let quotient_nontrivial = lifts.iter().any(|s| decoder.coordinates(s).is_none());
    r.push(
        "quotient",
        quotient_nontrivial,
        "some lift lies outside the module subgroup, so the quotient is all of A_k",
    );

    // Complement system.
    let system_infeasible = if tails_ok {
        let f = fox_matrix(&module);
        let sol = f.solve_left(&concat_cochain(&tails).neg())?;
        let rec = &cert.nonsplit.system;
        let rank = f.rank();
        r.push(
            "complement system",
            sol.is_none() && !rec.feasible && rec.rank == rank && rec.unknowns == f.nrows(),
            format!(
                "{} unknowns, {} equations, rank {rank}, feasible: {}",
                f.nrows(),
                f.ncols(),
                sol.is_some()
            ),
        )
    } else {
        r.push("complement system", false, "skipped: tails did not replay")
    };

    // Order sweep over the coset of the involution x.
    let mut sweep_ok = true;
    if let Some(sw) = &cert.nonsplit.order4_sweep {
        let x = Permutation::parse_cycles(k, &sw.x)?;
        let xt = evaluate(&pres.factor_word(&x)?, &lifts, n);
        let d = module.dim();
        let exhaustive = sw.method == SweepMethod::Exhaustive
            && (2u64)
                .checked_pow(d as u32)
                .is_some_and(|c| c <= budgets.sweep_elements);
        let (ok, detail) = if exhaustive {
            let mut orders = std::collections::BTreeSet::new();
            let mut y = xt.clone();
            // Gray code walk through xE.
            for i in 0..(1u64 << d) {
                orders.insert(y.order());
                if i + 1 < (1u64 << d) {
                    y = y.then(&basis[(i + 1).trailing_zeros() as usize]);
                }
            }
            let orders: Vec<u64> = orders.into_iter().collect();
            (
                orders == [4] && orders == sw.orders,
                format!("exhaustive over 2^{d} elements: orders {orders:?}"),
            )
        } else {
            let sq = decoder.decode(&xt.then(&xt))?;
            let ax = module.element_matrix(&x)?;
            let im = SubspaceGF::span(field, d, ax.add(&MatrixGF::identity(field, d)).into_rows());
            let ok = sq.as_ref().is_some_and(|s| !im.contains(s));
            (ok, "linear: the square of the lift of x is outside im(x+1)".to_string())
        };
        sweep_ok = r.push("order sweep", ok && sw.all_order_four, detail);
    }

    // Faithfulness on the module and the group order.
    let mut faithful = module_ok && quotient_nontrivial && conj_ok && tails_ok;
    if let Some(st) = &cert.stabilizer {
        let phi =
            VectorGF::from_digit_string(field, &st.functional).ok_or_else(|| Error::Parse("functional".into()))?;
        let mut span = SubspaceGF::span(field, module.dim(), [phi.clone()]);
        let mut frontier = vec![phi];
        while let Some(v) = frontier.pop() {
            for a in module.action() {
                let w = a.mul_vec(&v);
                if !span.contains(&w) {
                    span = span.sum(&SubspaceGF::span(field, module.dim(), [w.clone()]))?;
                    frontier.push(w);
                }
            }
        }
        let gcore_zero = span.dim() == module.dim();
        faithful &= r.push(
            "core of the kernel",
            gcore_zero,
            format!("dim g_core(M₀) = {}", module.dim() - span.dim()),
        );
    }
    if let Some(oc) = &cert.faithful.order_check {
        let expected = BigUint::from(field.p()).pow(module.dim() as u32) * pres.expected_order();
        let computed = group.order();
        faithful &= r.push(
            "group order",
            expected == computed && oc.computed == computed.to_string(),
            format!("{computed} against p^dim |A_k| = {expected}"),
        );
    }
    let nonsplit = system_infeasible && sweep_ok;
    let v = &cert.verdict;
    let consistent = v.degree_matches == degree_matches
        && v.transitive == transitive
        && v.faithful == faithful
        && v.nonsplit == nonsplit
        && v.all_positive == (degree_matches && transitive && faithful && nonsplit);
    r.push("verdict", consistent, "recorded verdict agrees with the replay");
    Ok(finish(r, cert))
}

fn finish(mut r: ReplayReport, cert: &Certificate) -> ReplayReport {
    r.passed = r.checks.iter().all(|c| c.passed) && cert.verdict.all_positive;
    r
}
