//! Command-line frontend: solvers, Gray codes, Zeckendorf numeration, state
//! graphs, and verification suites, with deterministic scriptable output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validity error,
//! 3 resource cap exceeded.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hanoifib::core_state::{Peg, PegDigraph, RuleSet, State, Style};
use hanoifib::graycode::{gray_block_demirror, gray_list};
use hanoifib::numeration::{zeckendorf, zf_value, ZfWord};
use hanoifib::solver::{solve_iterative, solve_recursive, Solution};
use hanoifib::state_graph::{build_graph_capped, export_dot, DEFAULT_CAP};
use hanoifib::verify::run_suite;
use hanoifib::Error;

#[derive(Parser)]
#[command(name = "hanoifib", version, about = "Tower of Hanoi, Fibonacci style")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a puzzle and print the move list with the state trace.
    Solve(SolveArgs),
    /// Print the Gray-like code on ZF-words of length up to n.
    Gray(GrayArgs),
    /// Zeckendorf expansion of an integer, or the value of a ZF-word.
    Zeckendorf(ZeckendorfArgs),
    /// Export the state graph as DOT.
    Graph(GraphArgs),
    /// Run a verification suite; one report line per check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Classical,
    Fibonacci,
    Pq,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Original,
    Variant,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Style {
        match s {
            StyleArg::Original => Style::Original,
            StyleArg::Variant => Style::Variant,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RestrictArg {
    None,
    Linear,
    Clockwise,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Recursive,
    Iterative,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrayFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrayMethod {
    Mirror,
    Demirror,
}

#[derive(Args)]
struct RuleArgs {
    #[arg(long, value_enum, default_value = "fibonacci")]
    family: FamilyArg,
    #[arg(long, value_enum, default_value = "original")]
    style: StyleArg,
    /// The (p, q) parameters; required when --family pq.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pq: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value = "none")]
    restrict: RestrictArg,
}

impl RuleArgs {
    fn rules(&self) -> Result<RuleSet, Error> {
        let base = match self.family {
            FamilyArg::Classical => RuleSet::classical(),
            FamilyArg::Fibonacci => RuleSet::fibonacci(self.style.into()),
            FamilyArg::Pq => {
                let pq = self.pq.as_ref().ok_or_else(|| {
                    Error::Domain("--family pq requires --pq P Q".into())
                })?;
                RuleSet::pq(pq[0], pq[1])?
            }
        };
        Ok(match self.restrict {
            RestrictArg::None => base,
            RestrictArg::Linear => base.with_digraph(PegDigraph::linear()),
            RestrictArg::Clockwise => base.with_digraph(PegDigraph::clockwise()),
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(short, long)]
    n: u32,
    #[command(flatten)]
    rule: RuleArgs,
    #[arg(long, value_enum, default_value = "recursive")]
    algorithm: AlgorithmArg,
    #[arg(long, value_enum, default_value = "text")]
    format: SolveFormat,
}

#[derive(Args)]
struct GrayArgs {
    #[arg(short, long)]
    n: u32,
    #[arg(long, value_enum, default_value = "mirror")]
    method: GrayMethod,
    #[arg(long, value_enum, default_value = "text")]
    format: GrayFormat,
}

#[derive(Args)]
struct ZeckendorfArgs {
    /// The integer to expand.
    k: Option<u128>,
    /// Evaluate a ZF-word instead.
    #[arg(long, value_name = "WORD", conflicts_with = "k")]
    inverse: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(short, long)]
    n: u32,
    #[command(flatten)]
    rule: RuleArgs,
    /// Attach Sierpinski-drawing positions to the nodes.
    #[arg(long)]
    coords: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    max_n: Option<u32>,
}

fn peg_disks(state: &State, peg: Peg) -> Vec<u32> {
    state.peg(peg).iter().collect()
}

fn print_solution_text(sol: &Solution) {
    println!("{}", sol.states[0]);
    for (mv, state) in sol.moves.iter().zip(sol.states.iter().skip(1)) {
        println!("{mv} -> {state}");
    }
}

fn print_solution_json(sol: &Solution) {
    for (i, (mv, state)) in sol.moves.iter().zip(sol.states.iter().skip(1)).enumerate() {
        let record = serde_json::json!({
            "index": i + 1,
            "kind": mv.kind.name(),
            "k": mv.disk,
            "from": mv.src.to_string(),
            "to": mv.dst.to_string(),
            "state_after": {
                "A": peg_disks(state, Peg::A),
                "B": peg_disks(state, Peg::B),
                "C": peg_disks(state, Peg::C),
            },
        });
        println!("{record}");
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, Error> {
    let rules = args.rule.rules()?;
    let sol = match args.algorithm {
        AlgorithmArg::Recursive => solve_recursive(args.n, &rules)?,
        AlgorithmArg::Iterative => solve_iterative(args.n, &rules)?,
    };
    match args.format {
        SolveFormat::Text => print_solution_text(&sol),
        SolveFormat::Json => print_solution_json(&sol),
    }
    Ok(0)
}

fn gray_words(args: &GrayArgs) -> Result<Vec<String>, Error> {
    match args.method {
        GrayMethod::Mirror => Ok(gray_list(args.n)),
        GrayMethod::Demirror => {
            let width = args.n as usize;
            let mut out = Vec::new();
            if args.n >= 1 {
                out.push(format!("{}1", "0".repeat(width - 1)));
            }
            for m in 2..=args.n {
                for w in gray_block_demirror(m)?.words {
                    out.push(format!("{}{w}", "0".repeat(width - w.len())));
                }
            }
            Ok(out)
        }
    }
}

fn cmd_gray(args: &GrayArgs) -> Result<u8, Error> {
    if args.n < 1 {
        return Err(Error::Domain("gray requires n >= 1".into()));
    }
    let words = gray_words(args)?;
    match args.format {
        GrayFormat::Text => {
            for w in &words {
                println!("{w}");
            }
        }
        GrayFormat::Csv => {
            println!("index,word");
            for (i, w) in words.iter().enumerate() {
                println!("{},{w}", i + 1);
            }
        }
    }
    Ok(0)
}

fn cmd_zeckendorf(args: &ZeckendorfArgs) -> Result<u8, Error> {
    match (&args.k, &args.inverse) {
        (Some(k), None) => {
            println!("{}", zeckendorf(*k));
            Ok(0)
        }
        (None, Some(word)) => {
            println!("{}", zf_value(&ZfWord::parse(word)?)?);
            Ok(0)
        }
        _ => Err(Error::Domain(
            "provide an integer or --inverse WORD".into(),
        )),
    }
}

fn cmd_graph(args: &GraphArgs) -> Result<u8, Error> {
    let rules = args.rule.rules()?;
    let graph = build_graph_capped(args.n, &rules, DEFAULT_CAP)?;
    print!("{}", export_dot(&graph, args.coords));
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let reports = run_suite(&args.suite, args.max_n)?;
    let mut all_passed = true;
    for r in &reports {
        println!("{}", r.line());
        all_passed &= r.passed;
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Gray(args) => cmd_gray(args),
        Command::Zeckendorf(args) => cmd_zeckendorf(args),
        Command::Graph(args) => cmd_graph(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Error::CapExceeded { n, cap }) => {
            eprintln!("error: 3^{n} states exceed the cap of {cap}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
