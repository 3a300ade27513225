//! `finfix`: every operation of the library behind one executable. Reports
//! are JSON on stdout, a one-line summary goes to stderr, and the exit code
//! is 0 (holds or done), 1 (refuted or refused), 2 (bad input) or
//! 3 (inconclusive).

mod assembly;
mod fixed;
mod homology;
mod input;
mod report;
mod spaces;

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use finfix::SearchBudget;

use input::Inputs;
use report::{Done, Failure, Report};

#[derive(Parser)]
#[command(name = "finfix", version, about = "Finite spaces with the fixed point property")]
struct Cli {
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    budget: u64,
    /// Wall clock limit for one search in seconds; 0 for none.
    #[arg(long, global = true, default_value_t = 600)]
    time_limit: u64,
    /// Subtrees searched concurrently. Reports do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Asserts that no randomness is used. Every run is deterministic, so
    /// this changes nothing.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Checks a complex, poset or map file and prints its canonical form.
    Validate(spaces::ValidateArgs),
    /// Barycentric (or stellar) subdivision of a complex.
    Subdivide(spaces::SubdivideArgs),
    /// The face poset X(K).
    FacePoset(spaces::ConvertArgs),
    /// The order complex K(X).
    OrderComplex(spaces::ConvertArgs),
    /// Simplicial mapping cylinder of a simplicial map.
    Cylinder(spaces::CylinderArgs),
    /// Non-Hausdorff mapping cylinder of a monotone map.
    NhCylinder(spaces::MapArgs),
    /// Core of a finite space.
    Core(spaces::ConvertArgs),
    /// Weak points of a finite space.
    WeakPoints(spaces::FileArgs),
    /// Integer homology of a complex, or of the order complex of a poset.
    Homology(homology::HomologyArgs),
    /// Lefschetz number of a simplicial self-map.
    Lefschetz(homology::LefschetzArgs),
    /// Enumerates cycles up to a norm bound.
    Cycles(homology::CyclesArgs),
    /// The norm-controlled retraction of the subdivision cylinder.
    Retraction(homology::RetractionArgs),
    /// Automorphism group of a complex or poset.
    Aut(spaces::FileArgs),
    /// Subdivides a closed pseudomanifold until it is asymmetric.
    Asymmetrize(fixed::AsymmetrizeArgs),
    /// Fixed simplex property of a complex.
    Fsp(fixed::FspArgs),
    /// Fixed point property of a finite space.
    Fpp(fixed::FppArgs),
    /// The 14-point space with the fixed point property and the homology of
    /// a circle.
    #[command(subcommand)]
    Kun(assembly::KunCommand),
    /// Complexes with the fixed simplex property in a given homotopy type.
    #[command(subcommand)]
    Thm4(assembly::Thm4Command),
    /// Finite spaces with the fixed point property in a given homotopy type.
    #[command(subcommand, name = "main-thm")]
    MainThm(assembly::MainCommand),
}

/// Shared state of one invocation.
pub struct Ctx {
    pub inputs: Inputs,
    pub budget: SearchBudget,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Subdivide(_) => "subdivide",
            Command::FacePoset(_) => "face-poset",
            Command::OrderComplex(_) => "order-complex",
            Command::Cylinder(_) => "cylinder",
            Command::NhCylinder(_) => "nh-cylinder",
            Command::Core(_) => "core",
            Command::WeakPoints(_) => "weak-points",
            Command::Homology(_) => "homology",
            Command::Lefschetz(_) => "lefschetz",
            Command::Cycles(_) => "cycles",
            Command::Retraction(_) => "retraction",
            Command::Aut(_) => "aut",
            Command::Asymmetrize(_) => "asymmetrize",
            Command::Fsp(_) => "fsp",
            Command::Fpp(_) => "fpp",
            Command::Kun(c) => c.name(),
            Command::Thm4(c) => c.name(),
            Command::MainThm(_) => "main-thm build",
        }
    }

    fn run(&self, ctx: &mut Ctx) -> Result<Done, Failure> {
        match self {
            Command::Validate(a) => spaces::validate(ctx, a),
            Command::Subdivide(a) => spaces::subdivide(ctx, a),
            Command::FacePoset(a) => spaces::face_poset(ctx, a),
            Command::OrderComplex(a) => spaces::order_complex(ctx, a),
            Command::Cylinder(a) => spaces::cylinder(ctx, a),
            Command::NhCylinder(a) => spaces::nh_cylinder(ctx, a),
            Command::Core(a) => spaces::core(ctx, a),
            Command::WeakPoints(a) => spaces::weak_points(ctx, a),
            Command::Homology(a) => homology::homology(ctx, a),
            Command::Lefschetz(a) => homology::lefschetz(ctx, a),
            Command::Cycles(a) => homology::cycles(ctx, a),
            Command::Retraction(a) => homology::retraction(ctx, a),
            Command::Aut(a) => fixed::aut(ctx, a),
            Command::Asymmetrize(a) => fixed::asymmetrize(ctx, a),
            Command::Fsp(a) => fixed::fsp(ctx, a),
            Command::Fpp(a) => fixed::fpp(ctx, a),
            Command::Kun(c) => assembly::kun(ctx, c),
            Command::Thm4(c) => assembly::thm4(ctx, c),
            Command::MainThm(c) => assembly::main_thm(ctx, c),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = SearchBudget {
        max_nodes: cli.budget,
        time_limit: (cli.time_limit > 0).then(|| Duration::from_secs(cli.time_limit)),
        parallel_width: cli.jobs.max(1),
    };
    let mut ctx = Ctx { inputs: Inputs::default(), budget };
    let start = Instant::now();
    let command = cli.command.name().to_string();
    let (code, result, witnesses, stats, summary) = match cli.command.run(&mut ctx) {
        Ok(mut d) => {
            if cli.seedless {
                d.stats.insert("seedless".into(), true.into());
            }
            (d.outcome.code(), d.result, d.witnesses, d.stats, d.summary)
        }
        Err(Failure::Input(e)) => {
            eprintln!("finfix {command}: {e}");
            let result = serde_json::json!({"error": e.to_string()});
            (2, result, Vec::new(), Default::default(), "input error".into())
        }
        Err(Failure::Refused { result, message }) => (1, result, Vec::new(), Default::default(), message),
    };
    let report =
        Report { command, inputs: ctx.inputs.hashes, result, witnesses, stats, version: env!("CARGO_PKG_VERSION") };
    // a closed pipe is the reader's choice, not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string(&report).expect("reports serialize"));
    eprintln!("{} [{:.2}s, exit {code}]", summary, start.elapsed().as_secs_f64());
    ExitCode::from(code)
}
