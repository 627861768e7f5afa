use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nonsplit_core::pipelines::{exit_code, run, Budgets, Command, Outcome, RunConfig};

/// Builds nonsplit extensions of alternating groups as explicit permutation
/// groups and writes replayable certificates.
#[derive(Parser)]
#[command(name = "nonsplit-ext", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(flatten)]
    budgets: BudgetArgs,
}

#[derive(Args)]
struct BudgetArgs {
    /// Random elements tried per irreducibility or splitting attempt.
    #[arg(long = "budget-meataxe-tries", global = true)]
    meataxe_tries: Option<usize>,
    /// Random triples checked for associativity of the extension.
    #[arg(long = "budget-associativity", global = true)]
    associativity_trials: Option<usize>,
    /// Largest coset swept element by element in the order-4 check.
    #[arg(long = "budget-sweep", global = true)]
    sweep_elements: Option<u64>,
    /// Largest degree for the Schreier-Sims order check.
    #[arg(long = "budget-order-check-degree", global = true)]
    order_check_degree: Option<usize>,
    /// Largest group order for min-degree.
    #[arg(long = "budget-group-order", global = true)]
    min_degree_order: Option<usize>,
}

impl BudgetArgs {
    fn apply(&self, b: &mut Budgets) {
        if let Some(x) = self.meataxe_tries {
            b.meataxe_tries = x;
        }
        if let Some(x) = self.associativity_trials {
            b.associativity_trials = x;
        }
        if let Some(x) = self.sweep_elements {
            b.sweep_elements = x;
        }
        if let Some(x) = self.order_check_degree {
            b.order_check_degree = x;
        }
        if let Some(x) = self.min_degree_order {
            b.min_degree_order = x;
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree 2k(k-1) representation over GF(2).
    Even {
        #[arg(long)]
        k: usize,
    },
    /// Degree pk(k-1)/2 representation for an odd prime p dividing k.
    Odd {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        /// Run below k = 10.
        #[arg(long)]
        allow_small: bool,
    },
    /// Inner products of the induced cocycle, for k = 3 mod 4.
    LemmaCocycle {
        #[arg(long)]
        k: usize,
    },
    /// Minimal faithful degree of a small group with a unique minimal normal subgroup.
    MinDegree {
        #[arg(long)]
        input: PathBuf,
    },
    /// Replay a certificate.
    Verify { certificate: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // clap reports usage errors with code 2, which is reserved for failed checks
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut allow_small = false;
    let command = match cli.command {
        Cmd::Even { k } => Command::Even { k },
        Cmd::Odd { k, p, allow_small: a } => {
            allow_small = a;
            Command::Odd { k, p }
        }
        Cmd::LemmaCocycle { k } => Command::LemmaCocycle { k },
        Cmd::MinDegree { input } => Command::MinDegree { input },
        Cmd::Verify { certificate } => Command::Verify { input: certificate },
    };
    let mut cfg = RunConfig::new(command);
    cfg.seed = cli.seed;
    cfg.allow_small = allow_small;
    cfg.out = cli.out;
    cli.budgets.apply(&mut cfg.budgets);

    let result = run(&cfg);
    let code = exit_code(&result);
    match &result {
        Ok(outcome) => {
            if let Err(e) = emit(outcome, &cfg) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            eprintln!("{}", summary(outcome));
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}

fn emit(outcome: &Outcome, cfg: &RunConfig) -> nonsplit_core::Result<()> {
    let json = outcome.to_json()?;
    match &cfg.out {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(())
}

fn summary(outcome: &Outcome) -> String {
    let status = if outcome.is_positive() { "POSITIVE" } else { "NEGATIVE" };
    match outcome {
        Outcome::Certificate(c) => format!(
            "{status}: degree {}, transitive {}, faithful {}, nonsplit {}",
            c.degrees.degree, c.verdict.transitive, c.verdict.faithful, c.verdict.nonsplit
        ),
        Outcome::Lemma(l) => format!(
            "{status}: class {}, inner products {:?}",
            l.selection.selected, l.inner_products
        ),
        Outcome::MinDegree(m) => format!("minimal faithful degree {} (group order {})", m.degree, m.order),
        Outcome::Replay(r) => {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                format!("{status}: {} checks replayed", r.checks.len())
            } else {
                format!("{status}: failed {}", failed.join(", "))
            }
        }
    }
}
