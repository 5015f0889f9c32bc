use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use weightlab::admissible::classify_admissible;
use weightlab::classify::{canonical_form, is_isomorphic};
use weightlab::evaluation::tensor_multiplicity;
use weightlab::io::{load_algebra, load_descriptor, multiplicities_json, psi_json, verdict_json};
use weightlab::rational::{format_rational, parse_rational, Rational};
use weightlab::report::{verify_all, CheckStatus, Fault, VerifyConfig};
use weightlab::rootsys::{enumerate_bases, verify_gamma_lemma, CartanType, RootSystem};
use weightlab::shadow::{enumerate_and_verify, sample_and_verify, MAX_ENUMERATED_ROOTS};
use weightlab::ucext::central_space;
use weightlab::weightmod::{casimir_invariant, freudenthal, is_simple_dense, verify_sl2_relations, weyl_dimension};
use weightlab::Error;

/// Exit code for a mathematical counterexample.
const EXIT_COUNTEREXAMPLE: u8 = 2;
/// Exit code for a successful run with a negative answer.
const EXIT_NEGATIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "weightlab", version, about = "Exact computations for admissible weight modules of current algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root systems and the gamma-existence check
    #[command(subcommand)]
    Rootsys(RootsysCmd),
    /// T/N partitions of a root system
    #[command(subcommand)]
    Shadow(ShadowCmd),
    /// Weight multiplicities and the dense sl2 family
    #[command(subcommand)]
    Weightmod(WeightmodCmd),
    /// Evaluation modules
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Admissibility of evaluation modules
    #[command(subcommand)]
    Admissible(AdmissibleCmd),
    /// Isomorphism labels
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Universal central extension of sl2 ⊗ S
    #[command(subcommand)]
    Ucext(UcextCmd),
    /// Run every verification check and emit a JSON-lines report
    VerifyAll(VerifyAllArgs),
}

#[derive(Args)]
struct TypeArg {
    /// Cartan type such as A2, B3, G2
    #[arg(long = "type", short = 't')]
    ty: CartanType,
}

#[derive(Subcommand)]
enum RootsysCmd {
    /// Cartan data, roots and the number of bases
    Info(TypeArg),
    /// Brute-force check over every base, simple root and root
    VerifyGamma(TypeArg),
}

#[derive(Subcommand)]
enum ShadowCmd {
    /// Enumerate convex sets (or sample them for large systems) and check sums
    Verify {
        #[command(flatten)]
        ty: TypeArg,
        /// Sample this many sets instead of enumerating
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum WeightmodCmd {
    /// Weight multiplicities of L(λ)
    Freudenthal {
        #[command(flatten)]
        ty: TypeArg,
        /// Highest weight in fundamental-weight coordinates, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        highest: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Simplicity, Casimir and the sl2 relations of W(μ, τ₀)
    DenseCheck {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        tau0: String,
        #[arg(long, default_value_t = 50)]
        window: i64,
    },
}

#[derive(Subcommand)]
enum EvalCmd {
    /// Dimension of one weight space of the tensor product
    Mult {
        #[arg(long)]
        descriptor: PathBuf,
        /// Weight in fundamental-weight coordinates, comma separated
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        window: Option<i64>,
    },
}

#[derive(Subcommand)]
enum AdmissibleCmd {
    /// Verdict and growth witness (exit 3 when not admissible)
    Classify {
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long, default_value_t = 30)]
        window: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Canonical label as JSON
    Canon {
        #[arg(long)]
        descriptor: PathBuf,
    },
    /// Exit 0 if isomorphic, 3 otherwise
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Subcommand)]
enum UcextCmd {
    /// Dimension of ⟨S,S⟩
    Dim {
        #[arg(long)]
        algebra: PathBuf,
    },
}

#[derive(Args)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = 4)]
    max_rank: usize,
    #[arg(long, default_value_t = 30)]
    window: i64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
    /// Omit wall times so the report is byte-for-byte reproducible
    #[arg(long)]
    no_timing: bool,
    /// Negative control: build A2 from a corrupted Cartan form
    #[arg(long)]
    inject_fault: bool,
}

fn parse_weight(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

fn weight_string(w: &[Rational]) -> String {
    w.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Rootsys(RootsysCmd::Info(TypeArg { ty })) => {
            let rs = RootSystem::of_type(ty)?;
            println!("type {ty}");
            println!("cartan {:?}", rs.cartan());
            println!("symmetrizer {:?}", rs.symmetrizer());
            println!("roots {} (positive {})", rs.len(), rs.num_positive());
            println!("highest root {}", rs.highest_root());
            println!("weyl group order {}", ty.weyl_order());
            if ty.weyl_order() <= 100_000 {
                println!("bases {}", enumerate_bases(&rs)?.len());
            }
            for i in rs.positive_indices() {
                println!("  {}", rs.root(i));
            }
            Ok(0)
        }
        Command::Rootsys(RootsysCmd::VerifyGamma(TypeArg { ty })) => {
            let rep = verify_gamma_lemma(&RootSystem::of_type(ty)?)?;
            println!("{ty}: {} bases, {} cases", rep.bases, rep.cases);
            match rep.counterexample {
                None => {
                    println!("no counterexample");
                    Ok(0)
                }
                Some(ce) => {
                    println!("counterexample: base {:?}, alpha {:?}, beta {:?}", ce.base, ce.alpha, ce.beta);
                    Ok(EXIT_COUNTEREXAMPLE)
                }
            }
        }
        Command::Shadow(ShadowCmd::Verify { ty: TypeArg { ty }, samples, seed }) => {
            let rs = RootSystem::of_type(ty)?;
            let s = match samples {
                Some(n) => sample_and_verify(&rs, n, seed)?,
                None if rs.len() <= MAX_ENUMERATED_ROOTS => enumerate_and_verify(&rs)?,
                None => {
                    return Err(Error::ResourceLimit { what: "roots for exhaustive enumeration (use --samples)", limit: MAX_ENUMERATED_ROOTS })
                }
            };
            println!(
                "{ty}: {} convex sets, {} pass the structural filters, {} counterexamples, {} base-inconsistent",
                s.total,
                s.filtered,
                s.counterexamples(),
                s.base_inconsistent
            );
            if let Some(ce) = &s.counterexample {
                println!("counterexample: T {:?}, alpha {:?}, beta {:?}", ce.t, ce.alpha, ce.beta);
            }
            Ok(if s.passed() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Weightmod(WeightmodCmd::Freudenthal { ty: TypeArg { ty }, highest, json }) => {
            let rs = RootSystem::of_type(ty)?;
            let m = freudenthal(&rs, &highest)?;
            if json {
                println!("{}", multiplicities_json(&m));
            } else {
                println!("dim {} (Weyl {})", m.total(), weyl_dimension(&rs, &highest)?);
                for (w, k) in m.table() {
                    println!("{}\t{k}", weight_string(&w));
                }
            }
            Ok(0)
        }
        Command::Weightmod(WeightmodCmd::DenseCheck { mu, tau0, window }) => {
            let (mu, tau0) = (parse_rational(&mu)?, parse_rational(&tau0)?);
            let simple = is_simple_dense(&mu, &tau0);
            println!("simple {simple}");
            println!("casimir {}", format_rational(&casimir_invariant(&mu, &tau0)));
            match verify_sl2_relations(&mu, &tau0, window) {
                Ok(()) => {
                    println!("relations hold on |i| <= {window}");
                    Ok(0)
                }
                Err(f) => {
                    println!("relation {} fails at index {}", f.relation, f.index);
                    Ok(EXIT_COUNTEREXAMPLE)
                }
            }
        }
        Command::Eval(EvalCmd::Mult { descriptor, weight, window }) => {
            let d = load_descriptor(descriptor)?;
            let w = parse_weight(&weight)?;
            let c = tensor_multiplicity(&d, &w, window)?;
            println!("{c}");
            Ok(0)
        }
        Command::Admissible(AdmissibleCmd::Classify { descriptor, window, json }) => {
            let d = load_descriptor(descriptor)?;
            let v = classify_admissible(&d, window)?;
            if json {
                println!("{}", verdict_json(&v));
            } else {
                println!("{v}");
                if let weightlab::admissible::AdmissibilityVerdict::NotAdmissible { witness, .. } = &v {
                    print!("{}", witness.table());
                }
            }
            Ok(if v.is_admissible() { 0 } else { EXIT_NEGATIVE })
        }
        Command::Classify(ClassifyCmd::Canon { descriptor }) => {
            let d = load_descriptor(descriptor)?;
            let psi = canonical_form(&d)?;
            println!("{}", psi_json(&psi));
            Ok(0)
        }
        Command::Classify(ClassifyCmd::Iso { a, b }) => {
            let iso = is_isomorphic(&load_descriptor(a)?, &load_descriptor(b)?)?;
            println!("{}", if iso { "isomorphic" } else { "not isomorphic" });
            Ok(if iso { 0 } else { EXIT_NEGATIVE })
        }
        Command::Ucext(UcextCmd::Dim { algebra }) => {
            let cs = central_space(&load_algebra(algebra)?)?;
            println!("{}", cs.quotient_dim());
            Ok(0)
        }
        Command::VerifyAll(a) => {
            let mut cfg = VerifyConfig {
                max_rank: a.max_rank,
                window: a.window,
                samples: a.samples,
                fault: a.inject_fault.then_some(Fault::CorruptCartan),
                ..VerifyConfig::default()
            };
            if let Some(s) = a.seed {
                cfg.seed = s;
            }
            if cfg.max_rank == 0 || cfg.window < 0 {
                return Err(Error::Parse("--max-rank must be positive and --window nonnegative".into()));
            }
            let report = verify_all(&cfg);
            let text = report.jsonl(!a.no_timing);
            match a.json {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            for c in &report.checks {
                let status = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skipped => "SKIP",
                };
                eprintln!("{status} {} ({:.2}s)", c.name, c.seconds);
            }
            Ok(if report.failed() { EXIT_COUNTEREXAMPLE } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
