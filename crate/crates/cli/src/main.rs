mod render;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use johnson_core::bounds::verify_theorem_range;
use johnson_core::extremal::{enumerate_capped, DEFAULT_BUDGET, ENUMERATION_CAP};
use johnson_core::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "johnson", version, about = "Exact spectra, Hoffman bounds and extremal families in Johnson graphs")]
struct Cli {
    /// Render the payload as indented text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Print family members with 1-based labels.
    #[arg(long, global = true)]
    one_indexed: bool,
    /// Reserved; every solver is deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Adjacency of J(n, k, t): weight 1 on intersection size t.
    #[arg(long, conflicts_with = "profile", required_unless_present = "profile")]
    forbidden: Option<usize>,
    /// Entry weights f(0),…,f(k) by intersection size, as integers or p/q.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    profile: Option<Vec<String>>,
}

impl MatrixArgs {
    fn spec(&self) -> Result<ProfileMatrixSpec> {
        match (&self.profile, self.forbidden) {
            (Some(f), _) => {
                let f = f.iter().map(|s| ratio::parse(s.trim())).collect::<Result<Vec<_>>>()?;
                ProfileMatrixSpec::new(self.n, self.k, f)
            }
            (None, Some(t)) => ProfileMatrixSpec::delta(self.n, self.k, t),
            (None, None) => unreachable!("clap requires one of --forbidden and --profile"),
        }
    }

    fn parameters(&self) -> Value {
        json!({ "n": self.n, "k": self.k, "forbidden": self.forbidden, "profile": self.profile })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form eigenvalues and multiplicities of a profile matrix.
    Spectrum {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Cross-check against the literal matrix (at most 500 vertices).
        #[arg(long)]
        dense_check: bool,
    },
    /// Hoffman ratio bound for a nonnegative profile with zero diagonal.
    Hoffman {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Check alpha(J(k²−k+1, k, 1)) = C(k²−k−1, k−2) for one k or a range.
    VerifyTheorem {
        #[arg(long, conflicts_with = "k_range", required_unless_present = "k_range")]
        k: Option<usize>,
        /// Inclusive range such as 2..50.
        #[arg(long, value_parser = parse_range)]
        k_range: Option<(usize, usize)>,
    },
    /// Maximum independent set of J(n, k, t), or every independent set of a given size.
    Mis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, requires = "size")]
        enumerate_all: bool,
        #[arg(long, requires = "enumerate_all")]
        size: Option<usize>,
    },
    /// The Desarguesian plane PG(2, q).
    Plane {
        #[arg(long)]
        q: usize,
        /// Emit the lines as a certified clique in J(q²+q+1, q+1, 1).
        #[arg(long)]
        clique: bool,
    },
    /// Whether the Bruck–Ryser theorem rules out a plane of this order.
    BruckRyser {
        #[arg(long)]
        order: u64,
    },
    /// Association-scheme axioms for the distance relations on k-subsets.
    Axioms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// A command's payload, plus whether it stopped on budget before finishing.
struct Output {
    name: &'static str,
    parameters: Value,
    result: Value,
    exhausted: bool,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize")
}

fn family_json(f: &Family, one_indexed: bool) -> Value {
    f.to_json(one_indexed)
}

fn run(cli: &Cli) -> Result<Output> {
    let one = cli.one_indexed;
    let done = |name, parameters, result| Ok(Output { name, parameters, result, exhausted: false });
    match &cli.command {
        Command::Spectrum { matrix, dense_check } => {
            let spec = matrix.spec()?;
            let s = spectrum(&spec)?;
            let mut result = json!({
                "spectrum": to_value(&s),
                "zero_diagonal": spec.has_zero_diagonal(),
                "lambda_max": ratio::to_string(s.max()),
                "lambda_min": ratio::to_string(s.min()),
            });
            if *dense_check {
                result["dense_check"] = match verify_spectrum_dense(&spec) {
                    Ok(r) => json!({ "passed": r.passed(), "report": to_value(&r) }),
                    Err(Error::CapExceeded { size, cap }) => {
                        json!({ "skipped": format!("{size} vertices exceed the dense cap of {cap}") })
                    }
                    Err(e) => return Err(e),
                };
            }
            let mut params = matrix.parameters();
            params["dense_check"] = json!(dense_check);
            done("spectrum", params, result)
        }
        Command::Hoffman { matrix } => {
            let r = hoffman_bound(&matrix.spec()?)?;
            done("hoffman", matrix.parameters(), to_value(&r))
        }
        Command::VerifyTheorem { k, k_range } => {
            let (a, b) = match (k, k_range) {
                (Some(k), _) => (*k, *k),
                (None, Some(r)) => *r,
                (None, None) => unreachable!("clap requires --k or --k-range"),
            };
            let reports = verify_theorem_range(a..=b)?;
            let all = reports.iter().all(|r| r.verdict);
            let result = if k.is_some() {
                to_value(&reports[0])
            } else {
                json!({ "all_verdicts": all, "reports": to_value(&reports) })
            };
            done("verify-theorem", json!({ "k": k, "k_range": k_range.map(|(a, b)| [a, b]) }), result)
        }
        Command::Mis { n, k, t, budget, enumerate_all, size } => {
            let p = JohnsonParams::new(*n, *k, *t)?;
            let mut params = json!({ "n": n, "k": k, "t": t, "budget": budget });
            if *enumerate_all {
                let size = size.expect("clap requires --size");
                params["enumerate_all"] = json!(true);
                params["size"] = json!(size);
                let e = enumerate_capped(p, size, ENUMERATION_CAP)?;
                let families: Vec<Value> = e
                    .families
                    .iter()
                    .zip(&e.kinds)
                    .map(|(f, kind)| json!({ "kind": to_value(kind), "members": family_json(f, one) }))
                    .collect();
                let result = json!({ "census": to_value(&e.census), "families": families });
                return done("mis", params, result);
            }
            let r = max_independent_set(p, *budget)?;
            let mut result = to_value(&r);
            result["witness"] = family_json(&r.witness, one);
            Ok(Output { name: "mis", parameters: params, result, exhausted: r.budget_exhausted })
        }
        Command::Plane { q, clique } => {
            let params = json!({ "q": q, "clique": clique });
            if *clique {
                let (fam, cert) = plane_clique(*q)?;
                let result = json!({ "certificate": to_value(&cert), "family": family_json(&fam, one) });
                return done("plane", params, result);
            }
            let plane = build_plane(*q)?;
            let mut result = plane.to_json();
            if one {
                result["lines"] = plane.lines.iter().map(|l| l.one_indexed()).collect::<Vec<_>>().into();
            }
            result["axioms"] = to_value(&plane.verify_axioms());
            done("plane", params, result)
        }
        Command::BruckRyser { order } => {
            done("bruck-ryser", json!({ "order": order }), to_value(&bruck_ryser_excludes(*order)?))
        }
        Command::Axioms { n, k } => {
            done("axioms", json!({ "n": n, "k": k }), to_value(&verify_scheme_axioms(*n, *k)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let envelope = json!({
        "command": out.name,
        "parameters": out.parameters,
        "result": out.result,
        "elapsed_ms": start.elapsed().as_micros() as f64 / 1e3,
    });
    let text = if cli.pretty { render::pretty(&envelope) } else { format!("{envelope}\n") };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if out.exhausted {
        eprintln!("budget exhausted before optimality was proven");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}
