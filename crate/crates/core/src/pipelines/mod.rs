//! End-to-end constructions: each builds an extension, its permutation
//! representation and a certificate that can be replayed independently.

mod certificate;
mod config;
pub mod even;
pub mod lemma;
pub mod min_degree;
pub mod odd;
pub mod verify;

pub use certificate::{
    Certificate, CocycleRecord, Construction, ConstructionKind, Degrees, GeneratorImages, ModuleRecord,
    PresentationRecord, RestrictionRecord, StabilizerRecord, Verdict,
};
pub use config::{Budgets, Command, RunConfig};
pub use even::{build_even, run_even};
pub use lemma::{verify_cocycle_lemma, LemmaReport};
pub use min_degree::{min_faithful_degree, parse_group_file, MinDegreeReport};
pub use odd::{build_odd, run_odd};
pub use verify::{verify_certificate, ReplayReport};

use crate::error::Result;

/// Largest `k` for which the cocycle lemma solves the `P₃` complement systems.
pub const LEMMA_SYSTEM_LIMIT: usize = 11;

/// What a command produced.
pub enum Outcome {
    Certificate(Box<Certificate>),
    Lemma(Box<LemmaReport>),
    MinDegree(MinDegreeReport),
    Replay(ReplayReport),
}

impl Outcome {
    pub fn is_positive(&self) -> bool {
        match self {
            Outcome::Certificate(c) => c.is_positive(),
            Outcome::Lemma(l) => l.holds,
            Outcome::MinDegree(_) => true,
            Outcome::Replay(r) => r.passed,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(match self {
            Outcome::Certificate(c) => c.to_json()?,
            Outcome::Lemma(l) => serde_json::to_string_pretty(l)?,
            Outcome::MinDegree(m) => serde_json::to_string_pretty(m)?,
            Outcome::Replay(r) => serde_json::to_string_pretty(r)?,
        })
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    Ok(match &cfg.command {
        Command::Even { k } => Outcome::Certificate(Box::new(run_even(*k, cfg)?)),
        Command::Odd { k, p } => Outcome::Certificate(Box::new(run_odd(*k, *p, cfg)?)),
        Command::LemmaCocycle { k } => {
            let mut rng = cfg.rng();
            Outcome::Lemma(Box::new(verify_cocycle_lemma(*k, LEMMA_SYSTEM_LIMIT, &mut rng)?))
        }
        Command::MinDegree { input } => {
            let (degree, gens) = parse_group_file(&std::fs::read_to_string(input)?)?;
            Outcome::MinDegree(min_faithful_degree(degree, &gens, cfg.budgets.min_degree_order)?)
        }
        Command::Verify { input } => {
            let cert = Certificate::read(input)?;
            Outcome::Replay(verify_certificate(&cert, &cfg.budgets)?)
        }
    })
}

/// Process exit code: 0 for a positive outcome, 2 when a mathematical check
/// fails, 1 for usage and resource errors.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.is_positive() => 0,
        Ok(_) => 2,
        Err(e) if e.is_check_failure() => 2,
        Err(_) => 1,
    }
}
