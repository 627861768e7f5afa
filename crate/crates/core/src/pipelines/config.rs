use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits for the randomized and enumerative steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Random attempts per Meataxe split.
    pub meataxe_tries: usize,
    /// Random triples for the associativity spot-check of each extension.
    pub associativity_trials: usize,
    /// Largest coset `xM` swept element by element.
    pub sweep_elements: u64,
    /// Largest permutation degree for the Schreier–Sims order check.
    pub order_check_degree: usize,
    /// Largest group order accepted by the minimal-degree search.
    pub min_degree_order: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            meataxe_tries: 200,
            associativity_trials: 1000,
            sweep_elements: 1 << 16,
            order_check_degree: 128,
            min_degree_order: 400,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Even { k: usize },
    Odd { k: usize, p: u32 },
    LemmaCocycle { k: usize },
    MinDegree { input: PathBuf },
    Verify { input: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub budgets: Budgets,
    /// Runs the odd construction below the theorem's range of `k`.
    pub allow_small: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            seed: 1,
            budgets: Budgets::default(),
            allow_small: false,
            out: None,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn validate(&self) -> Result<()> {
        match self.command {
            Command::Even { k } if k < 7 => {
                Err(Error::InvalidInput(format!("even construction needs k >= 7, got {k}")))
            }
            Command::Odd { k, p } => {
                if p == 2 || !is_prime(p) {
                    return Err(Error::InvalidInput(format!(
                        "odd construction needs an odd prime, got {p}"
                    )));
                }
                if k % p as usize != 0 {
                    return Err(Error::InvalidInput(format!(
                        "odd construction needs p | k, got k = {k}, p = {p}"
                    )));
                }
                if k < 10 && !self.allow_small {
                    return Err(Error::InvalidInput(format!(
                        "odd construction needs k >= 10, got {k}; pass --allow-small to run anyway"
                    )));
                }
                if k < 6 {
                    return Err(Error::InvalidInput(format!("odd construction needs k >= 6, got {k}")));
                }
                Ok(())
            }
            Command::LemmaCocycle { k } if k % 4 != 3 || k < 7 => Err(Error::InvalidInput(format!(
                "cocycle lemma needs k = 3 mod 4 and k >= 7, got {k}"
            ))),
            _ => Ok(()),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
