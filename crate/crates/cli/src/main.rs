use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gaussbridge::foxcalc::alexander_matrix;
use gaussbridge::ideals::{elementary_ideal, elementary_ideals};
use gaussbridge::parity::{project, project_iterated};
use gaussbridge::present::{eliminate_conjugation_generators, knot_group, reduced_group, GroupPresentation};
use gaussbridge::report::{compute_report, revalidate, DEFAULT_PROJECTION_DEPTH};
use gaussbridge::search::{explore_towards, SearchBudget, SearchTarget};
use gaussbridge::{GaussDiagram, MoveSet};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "gaussbridge", version, about = "Bridge-number bounds for virtual and welded knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Maximum search depth in moves
    #[arg(long, default_value_t = 8)]
    budget_depth: usize,
    /// Maximum chord count of intermediate diagrams (default: input + 2)
    #[arg(long)]
    budget_chords: Option<usize>,
    /// Maximum number of distinct diagrams visited
    #[arg(long, default_value_t = 1_000_000)]
    budget_states: usize,
}

impl BudgetArgs {
    fn budget(&self, d: &GaussDiagram) -> SearchBudget {
        SearchBudget {
            max_chords: self.budget_chords.unwrap_or(d.n() + 2),
            max_depth: self.budget_depth,
            max_states: self.budget_states,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a Gauss code and print basic data
    Parse { code: String },
    /// Certified bounds on the virtual and welded bridge numbers
    Invariants {
        code: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = DEFAULT_PROJECTION_DEPTH)]
        projection_depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Bounded search over equivalent diagrams, printed as JSON
    Search {
        code: String,
        #[arg(long, value_enum, default_value_t = Moves::Virtual)]
        moves: Moves,
        #[arg(long, value_enum, default_value_t = Target::Trivial)]
        target: Target,
        /// With `--target bridges`, stop once this many bridges are reached
        #[arg(long, default_value_t = 1)]
        floor: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Vertical mirror image
    Mirror { code: String },
    /// Erase odd chords under Gaussian parity
    Project {
        code: String,
        /// Repeat until all chords are even
        #[arg(long)]
        iterated: bool,
    },
    /// Connected sum cut open at the given gaps
    Connect { code1: String, gap1: usize, code2: String, gap2: usize },
    /// Group presentation of the diagram
    Group {
        code: String,
        #[arg(long, value_enum, default_value_t = GroupKind::Knot)]
        kind: GroupKind,
        /// Remove conjugation generators first
        #[arg(long)]
        eliminate: bool,
    },
    /// Elementary ideals of the knot or reduced group
    Ideals {
        code: String,
        #[arg(long, value_enum, default_value_t = IdealKind::Knot)]
        kind: IdealKind,
        /// Single index; all indices when omitted
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Moves {
    Virtual,
    Welded,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Trivial,
    Bridges,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    Knot,
    Reduced,
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    Knot,
    Reduced,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate revalidation failed: {0}")]
    Inconsistent(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Inconsistent(_) => 3,
        }
    }
}

fn diagram(code: &str) -> Result<GaussDiagram, Failure> {
    code.parse().map_err(|e| Failure::Parse(format!("{e}")))
}

fn group_of(d: &GaussDiagram, kind: GroupKind) -> GroupPresentation {
    match kind {
        GroupKind::Knot | GroupKind::Upper => knot_group(d),
        GroupKind::Lower => knot_group(&d.mirror()),
        GroupKind::Reduced => reduced_group(d),
    }
}

fn show(d: &GaussDiagram) -> String {
    if d.is_empty() {
        "(empty)".into()
    } else {
        d.to_code()
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Parse { code } => {
            let d = diagram(&code)?;
            println!("code      {}", show(&d));
            println!("chords    {}", d.n());
            println!("bridges   {}", d.bridge_count());
            println!("genus     {}", d.supporting_genus());
            println!("relabeled {}", show(&d.relabeled()));
        }
        Command::Invariants { code, budget, projection_depth, json } => {
            let d = diagram(&code)?;
            let report = compute_report(&d, budget.budget(&d), projection_depth);
            if json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json values serialize"));
            } else {
                print!("{}", report.render());
            }
            revalidate(&report).map_err(|e| Failure::Inconsistent(e.to_string()))?;
        }
        Command::Search { code, moves, target, floor, budget } => {
            let d = diagram(&code)?;
            let move_set = match moves {
                Moves::Virtual => MoveSet::Virtual,
                Moves::Welded => MoveSet::Welded,
            };
            let target = match target {
                Target::Trivial => SearchTarget::Trivial,
                Target::Bridges => SearchTarget::MinBridges(floor),
            };
            let r = explore_towards(&d, move_set, budget.budget(&d), target);
            println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json values serialize"));
        }
        Command::Mirror { code } => println!("{}", show(&diagram(&code)?.mirror())),
        Command::Project { code, iterated } => {
            let d = diagram(&code)?;
            let p = if iterated { project_iterated(&d) } else { project(&d) };
            println!("{}", show(&p));
        }
        Command::Connect { code1, gap1, code2, gap2 } => {
            let (d1, d2) = (diagram(&code1)?, diagram(&code2)?);
            let sum = GaussDiagram::connected_sum(&d1, gap1, &d2, gap2).map_err(|e| Failure::Parse(format!("{e}")))?;
            println!("{}", show(&sum));
        }
        Command::Group { code, kind, eliminate } => {
            let p = group_of(&diagram(&code)?, kind);
            let p = if eliminate { eliminate_conjugation_generators(&p) } else { p };
            println!("{p}");
        }
        Command::Ideals { code, kind, k } => {
            let d = diagram(&code)?;
            let kind = match kind {
                IdealKind::Knot => GroupKind::Knot,
                IdealKind::Reduced => GroupKind::Reduced,
            };
            let p = eliminate_conjugation_generators(&group_of(&d, kind));
            let mat = alexander_matrix(&p);
            let m = p.meridional_count();
            let ideals = match k {
                Some(k) => vec![elementary_ideal(&mat, k, m)],
                None => elementary_ideals(&mat, m),
            };
            for i in ideals {
                println!("{}", i.render());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gaussbridge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
