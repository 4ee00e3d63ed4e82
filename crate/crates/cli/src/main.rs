//! Command-line front end: apply operators to literals, dump operator
//! matrices on the graded monomial basis, evaluate and normalize literals,
//! cut wedges, and run the named verification suites.

mod gen;
mod report;
mod suites;

use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cslim_core::dunkl::{dunkl, hamiltonian_p, hbar_k};
use cslim_core::fermion::{finite_wedge_to_poly, omega_cut, Wedge};
use cslim_core::fock::{hamiltonian_combined, hamiltonian_limit_closed};
use cslim_core::parse::{parse_poly, parse_ppoly, parse_xpoly, Parsed};
use cslim_core::partition::{partitions_up_to_bounded, Partition};
use cslim_core::ppoly::{pmono_string, PMono, PPoly};
use cslim_core::scalar::BetaScalar;

use report::SuiteReport;
use suites::{run_suite, SuiteConfig, CATALOG};

#[derive(Parser)]
#[command(
    name = "cslim",
    about = "Exact calculations for the Calogero-Sutherland system of fermions and its particle-number limit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a polynomial literal and print the normal form.
    Apply(ApplyArgs),
    /// Print an operator's matrix on the graded monomial basis.
    Matrix(MatrixArgs),
    /// Parse a literal and print its canonical normal form.
    Eval(EvalArgs),
    /// Run a named verification suite (or `all`).
    Verify(VerifyArgs),
    /// Wedge-side commands.
    Fermion(FermionArgs),
}

#[derive(Args)]
struct ApplyArgs {
    /// Which model the operator acts in.
    #[arg(long, value_enum)]
    space: Space,
    /// Operator name: dunkl | hbar | hk (finite), H0 | H1 | H2 | H (limit).
    #[arg(long)]
    op: String,
    /// Particle count for the finite model.
    #[arg(long)]
    n: Option<usize>,
    /// Operator order for hbar and hk.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Slot index for the Dunkl operator (1-based).
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Input literal, e.g. "p2 + p1^2" or "x1^2*x2 - x2^2*x1".
    #[arg(long)]
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Finite,
    Limit,
}

#[derive(Args)]
struct MatrixArgs {
    /// Operator: H0 | H1 | H2 | H.
    #[arg(long)]
    op: String,
    /// Largest grade block to emit.
    #[arg(long)]
    grade: u32,
    /// Zero-mode handling: "formal" or an integer count.
    #[arg(long, default_value = "formal")]
    p0: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    /// Literal to normalize.
    input: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name from the catalog, or `all`.
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Particle counts, comma separated (suite defaults otherwise).
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    grade: Option<u32>,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long)]
    trials: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args)]
struct FermionArgs {
    #[command(subcommand)]
    command: FermionCommand,
}

#[derive(Subcommand)]
enum FermionCommand {
    /// Cut a basis wedge to its first n factors and print the alternant.
    Cut {
        /// Partition, comma separated: "3,1".
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        charge: i64,
        #[arg(long)]
        n: usize,
    },
    /// Sweep the cutting square over all partitions up to a weight.
    CheckBf {
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        /// Cut sizes, comma separated.
        #[arg(long, default_value = "2,3,4")]
        n: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Apply(args) => cmd_apply(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Eval(args) => {
            match parse_poly(&args.input).map_err(|e| e.to_string())? {
                Parsed::Coordinates(p) => println!("{}", p),
                Parsed::Generators(p) => println!("{}", p),
                Parsed::Operator(op) => println!("{}", op),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => cmd_verify(args),
        Command::Fermion(args) => cmd_fermion(args),
    }
}

fn cmd_apply(args: ApplyArgs) -> Result<ExitCode, String> {
    match args.space {
        Space::Finite => {
            let n = args.n.ok_or("the finite model needs --n")?;
            match args.op.as_str() {
                "dunkl" => {
                    let f = parse_xpoly(&args.input, n).map_err(|e| e.to_string())?;
                    let out = dunkl(&f, args.i, n).map_err(|e| e.to_string())?;
                    println!("{}", out);
                }
                "hbar" => {
                    let g = parse_xpoly(&args.input, n).map_err(|e| e.to_string())?;
                    let out = hbar_k(&g, args.k, n).map_err(|e| e.to_string())?;
                    println!("{}", out);
                }
                "hk" => {
                    let f = parse_ppoly(&args.input).map_err(|e| e.to_string())?;
                    let out = hamiltonian_p(args.k, n, &f).map_err(|e| e.to_string())?;
                    println!("{}", out);
                }
                other => return Err(format!("unknown finite operator {:?}", other)),
            }
        }
        Space::Limit => {
            let v = parse_ppoly(&args.input).map_err(|e| e.to_string())?;
            let grade = v.max_grade();
            let out = match args.op.as_str() {
                "H0" => hamiltonian_limit_closed(0, grade).apply(&v),
                "H1" => hamiltonian_limit_closed(1, grade).apply(&v),
                "H2" => hamiltonian_limit_closed(2, grade).apply(&v),
                "H" => hamiltonian_combined(grade).apply(&v),
                other => return Err(format!("unknown limit operator {:?}", other)),
            };
            println!("{}", out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_matrix(args: MatrixArgs) -> Result<ExitCode, String> {
    let op = match args.op.as_str() {
        "H0" => hamiltonian_limit_closed(0, args.grade),
        "H1" => hamiltonian_limit_closed(1, args.grade),
        "H2" => hamiltonian_limit_closed(2, args.grade),
        "H" => hamiltonian_combined(args.grade),
        other => return Err(format!("unknown limit operator {:?}", other)),
    };
    let p0: Option<i64> = match args.p0.as_str() {
        "formal" => None,
        s => Some(s.parse().map_err(|_| "p0 must be `formal` or an integer")?),
    };

    // one block per grade; the operators preserve grade
    #[derive(serde::Serialize)]
    struct Block {
        grade: u32,
        basis: Vec<String>,
        /// entries[row][col] = coefficient of basis[row] in op(basis[col])
        entries: Vec<Vec<String>>,
    }
    let mut blocks = Vec::new();
    for d in 0..=args.grade {
        let basis: Vec<PMono> = cslim_core::partition::partitions_of(d)
            .into_iter()
            .map(|l| PMono::from_parts(l.parts()))
            .collect();
        let labels: Vec<String> = basis
            .iter()
            .map(|m| {
                let s = pmono_string(m);
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        let mut entries = vec![vec![String::new(); basis.len()]; basis.len()];
        for (col, m) in basis.iter().enumerate() {
            let image = op.apply(&PPoly::monomial(m.clone(), BetaScalar::one()));
            let image = match p0 {
                Some(v) => image.subst_p0_scalar(&BetaScalar::from_int(v)),
                None => image,
            };
            for (row, m2) in basis.iter().enumerate() {
                // collect the coefficient of the row monomial across all
                // zero-mode powers, folding p0 into the formal count symbol
                let mut acc = BetaScalar::zero();
                for (mm, c) in image.iter() {
                    let (rest, p0pow) = mm.split_p0();
                    if &rest == m2 {
                        acc = &acc + &c.mul_formal_n_pow(p0pow);
                    }
                }
                entries[row][col] = acc.to_string();
            }
        }
        blocks.push(Block {
            grade: d,
            basis: labels,
            entries,
        });
    }

    match args.format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Out {
                op: String,
                p0: String,
                blocks: Vec<Block>,
            }
            let out = Out {
                op: args.op,
                p0: args.p0,
                blocks,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv | Format::Table => {
            println!("grade,row,col,entry");
            for b in &blocks {
                for (r, row) in b.entries.iter().enumerate() {
                    for (c, e) in row.iter().enumerate() {
                        println!("{},{},{},\"{}\"", b.grade, b.basis[r], b.basis[c], e);
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_ns(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid count {:?}", p))
        })
        .collect()
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let cfg = SuiteConfig {
        seed: args.seed,
        ns: match &args.n {
            Some(s) => Some(parse_ns(s)?),
            None => None,
        },
        grade: args.grade,
        kmax: args.kmax,
        trials: args.trials,
        workers: args.workers,
    };
    let names: Vec<&str> = if args.suite == "all" {
        CATALOG.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let mut all_ok = true;
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        let start = Instant::now();
        let report = run_suite(name, &cfg)
            .ok_or_else(|| format!("unknown suite {:?}; catalog: {}", name, CATALOG.join(", ")))?;
        let elapsed = start.elapsed();
        eprintln!(
            "suite {} finished in {:.2}s ({} passed, {} failed)",
            name,
            elapsed.as_secs_f64(),
            report.passed,
            report.failed
        );
        all_ok &= report.all_passed();
        reports.push(report);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        Format::Json => {
            if reports.len() == 1 {
                writeln!(out, "{}", reports[0].to_json()).unwrap();
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports).unwrap()).unwrap();
            }
        }
        Format::Table | Format::Csv => {
            for r in &reports {
                write!(out, "{}", r.to_table()).unwrap();
            }
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_fermion(args: FermionArgs) -> Result<ExitCode, String> {
    match args.command {
        FermionCommand::Cut { lambda, charge, n } => {
            let lambda: Partition = lambda.parse().map_err(|e| format!("{}", e))?;
            let w = Wedge::new(lambda, charge);
            match omega_cut(&w, n).map_err(|e| e.to_string())? {
                None => println!("0"),
                Some(fw) => {
                    println!("exponents: {}", fw);
                    println!("alternant: {}", finite_wedge_to_poly(&fw));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        FermionCommand::CheckBf {
            max_weight,
            n,
            format,
        } => {
            let ns = parse_ns(&n)?;
            let mut rows = Vec::new();
            let mut all_ok = true;
            for n in &ns {
                for lambda in partitions_up_to_bounded(max_weight, *n) {
                    let ok = cslim_core::fermion::cutting_square_commutes(
                        &lambda, *n as i64, *n,
                    )
                    .map_err(|e| e.to_string())?;
                    all_ok &= ok;
                    rows.push((lambda.to_string(), *n, ok));
                }
            }
            match format {
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Row {
                        lambda: String,
                        n: usize,
                        commutes: bool,
                    }
                    let rows: Vec<Row> = rows
                        .into_iter()
                        .map(|(lambda, n, commutes)| Row { lambda, n, commutes })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
                }
                _ => {
                    for (lambda, n, ok) in &rows {
                        println!(
                            "{} lambda={} n={}",
                            if *ok { "pass" } else { "FAIL" },
                            lambda,
                            n
                        );
                    }
                }
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
