//! `cat0`: command-line front end for the CAT(0) embeddability engine.
//!
//! Every subcommand prints one JSON document. Exit codes: 0 pass or
//! embeddable, 1 violated or not embeddable, 2 input or usage error,
//! 3 witness search failed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use cat0_core::boxtimes::Verdict;
use cat0_core::quad::{classify_with_pivot, QuadVerdict};
use cat0_core::{
    decide_cat0_embeddable, gen, space_satisfies, ComplexSpace, Error, FiniteMetricSpace, QuadraticMetricInequality,
    SimpleGraph, WitnessConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cat0", version, about = "CAT(0) embeddability for metric spaces on at most five points")]
struct Cli {
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Mesh resolution of the sampled distance oracle.
    #[arg(long, global = true, default_value_t = 64)]
    mesh_n: usize,
    /// Starts of the planar witness search.
    #[arg(long, global = true, default_value_t = 64)]
    multistarts: usize,
    /// Write the JSON result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file holds a valid metric.
    Validate { file: PathBuf },
    /// Decide CAT(0) embeddability (at most five points).
    Decide { file: PathBuf },
    /// Check all ⊠-inequalities of a space of any size.
    CheckBoxtimes { file: PathBuf },
    /// Classify four points relative to a pivot pair.
    ClassifyQuad {
        file: PathBuf,
        /// Four point indices.
        #[arg(long, value_delimiter = ',', required = true)]
        roles: Vec<usize>,
        /// Two of the four indices.
        #[arg(long, value_delimiter = ',', required = true)]
        pivot: Vec<usize>,
    },
    /// Build and verify a witness for a graph pattern.
    Witness {
        file: PathBuf,
        /// Catalogue name (G4_1.., G5_1.., K5, C4, C5, P5) or edge list "0-1,1-2".
        #[arg(long)]
        graph: String,
        /// Point assigned to each vertex; defaults to the identity.
        #[arg(long, value_delimiter = ',')]
        map: Option<Vec<usize>>,
    },
    /// Intrinsic distances between the marks of a complex.
    ComplexDist {
        file: PathBuf,
        /// Also report the sampled upper-bound oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate a quadratic metric inequality, minimised over all tuples
    /// unless a tuple is given.
    QmiEval {
        qmi: PathBuf,
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        tuple: Option<Vec<usize>>,
    },
    /// Generate a random metric space.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Dimension for `euclidean`.
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Run a quick end-to-end self check.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Euclidean,
    Tree,
    Random,
    Snowflake,
    Complex,
    Boxtimes,
}

struct Outcome {
    code: u8,
    body: Value,
}

fn outcome(code: u8, body: Value) -> anyhow::Result<Outcome> {
    Ok(Outcome { code, body })
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path, tol: f64) -> anyhow::Result<FiniteMetricSpace> {
    Ok(FiniteMetricSpace::from_json(&read(path)?, tol)?)
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"verdict": "Holds"}),
        Verdict::Embeddable => json!({"verdict": "Embeddable"}),
        Verdict::Violated(c) => json!({"verdict": "Violated", "certificate": c}),
        Verdict::NotEmbeddable(c) => json!({"verdict": "NotEmbeddable", "certificate": c}),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let tol = cli.tol;
    match &cli.command {
        Command::Validate { file } => match FiniteMetricSpace::from_json(&read(file)?, tol) {
            Ok(x) => outcome(0, json!({"valid": true, "n": x.len(), "scale": x.scale()})),
            Err(e) => outcome(1, json!({"valid": false, "error": e.to_string()})),
        },
        Command::Decide { file } => {
            let x = load(file, tol)?;
            let d = decide_cat0_embeddable(&x, tol)?;
            let mut body = verdict_json(&d.verdict);
            body["minimum"] = json!(d.minimum);
            outcome(if d.is_positive() { 0 } else { 1 }, body)
        }
        Command::CheckBoxtimes { file } => {
            let x = load(file, tol)?;
            let d = space_satisfies(&x, tol);
            let mut body = verdict_json(&d.verdict);
            body["minimum"] = json!(d.minimum);
            outcome(if d.is_positive() { 0 } else { 1 }, body)
        }
        Command::ClassifyQuad { file, roles, pivot } => {
            let x = load(file, tol)?;
            if roles.len() != 4 || pivot.len() != 2 {
                bail!("--roles takes four indices and --pivot two");
            }
            if let Some(&bad) = roles.iter().find(|&&r| r >= x.len()) {
                bail!(Error::BadIndex(bad));
            }
            let c = classify_with_pivot(&x, [roles[0], roles[1], roles[2], roles[3]], [pivot[0], pivot[1]], tol)?;
            let (name, config, code) = match &c.verdict {
                QuadVerdict::Embeddable(cfg) => ("Embeddable", json!(cfg), 0),
                QuadVerdict::UnderDistance => ("UnderDistance", Value::Null, 1),
                QuadVerdict::OverDistance => ("OverDistance", Value::Null, 1),
            };
            outcome(
                code,
                json!({"verdict": name, "pivot": c.pivot, "lower": c.lo, "upper": c.hi, "configuration": config}),
            )
        }
        Command::Witness { file, graph, map } => {
            let x = load(file, tol)?;
            let g = SimpleGraph::parse(graph, x.len().min(5))?;
            let f: Vec<usize> = map.clone().unwrap_or_else(|| (0..g.n()).collect());
            let cfg = WitnessConfig { tol, seed: cli.seed, multistarts: cli.multistarts, ..WitnessConfig::default() };
            match cat0_core::construct(&x, &f, &g, &cfg) {
                Ok(w) => outcome(0, w.to_json()),
                Err(Error::BoxtimesViolated(c)) => {
                    outcome(1, json!({"error": "BoxtimesViolated", "certificate": c}))
                }
                Err(Error::SearchFailed(p)) => outcome(3, json!({"error": "SearchFailed", "penalty": p})),
                Err(e @ Error::CaseDispatchAmbiguous(_)) => {
                    outcome(3, json!({"error": "CaseDispatchAmbiguous", "detail": e.to_string()}))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::ComplexDist { file, oracle } => {
            let c = ComplexSpace::from_json(&read(file)?)?;
            let names: Vec<&str> = c.marks.iter().map(|m| m.name.as_str()).collect();
            let n = names.len();
            let mut pairs = Vec::new();
            let table = oracle.then(|| c.oracle_table(cli.mesh_n));
            for i in 0..n {
                for j in i + 1..n {
                    let r = c.distance_report(i, j);
                    let mut p = json!({
                        "pair": [names[i], names[j]],
                        "distance": r.value,
                        "lower_bound": r.lower_bound,
                        "crossings": r.crossings,
                    });
                    if let Some(t) = &table {
                        p["oracle"] = json!(t[i][j]);
                    }
                    pairs.push(p);
                }
            }
            let cat0 = c.is_cat0_declared() && c.local_cat0_check(tol);
            outcome(0, json!({"marks": names, "pairs": pairs, "locally_cat0": cat0}))
        }
        Command::QmiEval { qmi, file, tuple } => {
            let q = QuadraticMetricInequality::from_json(&read(qmi)?)?;
            let x = load(file, tol)?;
            let floor = -tol * x.scale() * x.scale();
            let (value, tuple) = match tuple {
                Some(t) => (q.evaluate(&x, t)?, t.clone()),
                None => q.min_over_tuples(&x)?,
            };
            let holds = value >= floor;
            outcome(if holds { 0 } else { 1 }, json!({"value": value, "tuple": tuple, "holds": holds}))
        }
        Command::Gen { kind, n, dim } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let x = match kind {
                Kind::Euclidean => gen::euclidean(*n, *dim, &mut rng),
                Kind::Tree => gen::tree(*n, &mut rng),
                Kind::Random => gen::random_metric(*n, &mut rng),
                Kind::Snowflake => gen::snowflaked(&gen::random_metric(*n, &mut rng), 0.5)?,
                Kind::Complex => gen::complex_sample(*n, &mut rng)?.1,
                Kind::Boxtimes => gen::boxtimes_space(*n, &mut rng, tol)?,
            };
            outcome(0, serde_json::to_value(&x)?)
        }
        Command::Selftest => selftest(cli.seed),
    }
}

// A few end-to-end checks on fixed and generated inputs.
fn selftest(seed: u64) -> anyhow::Result<Outcome> {
    let r3 = 3f64.sqrt();
    let example = FiniteMetricSpace::from_distances(
        &[vec![0.0, 1.0, r3, r3], vec![1.0, 0.0, 1.0, r3], vec![r3, 1.0, 0.0, 1.0], vec![r3, r3, 1.0, 0.0]],
        1e-9,
    )?;
    let mut checks = Vec::new();
    let d = decide_cat0_embeddable(&example, 1e-9)?;
    let v = d.certificate().map(|c| c.value);
    checks.push(("square with long diagonals is not embeddable", v.is_some_and(|v| (v + 0.125).abs() < 1e-9)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let euclid = (0..100).all(|_| {
        decide_cat0_embeddable(&gen::euclidean(5, 3, &mut rng), 1e-9).is_ok_and(|d| d.is_positive())
    });
    checks.push(("Euclidean samples are embeddable", euclid));
    let trees = (0..50).all(|_| decide_cat0_embeddable(&gen::tree(5, &mut rng), 1e-9).is_ok_and(|d| d.is_positive()));
    checks.push(("tree samples are embeddable", trees));
    let snow = (0..50).all(|_| {
        gen::snowflaked(&gen::random_metric(5, &mut rng), 0.5).is_ok_and(|x| space_satisfies(&x, 1e-9).is_positive())
    });
    checks.push(("snowflakes satisfy every inequality", snow));

    let cfg = WitnessConfig { tol: 1e-7, seed, ..WitnessConfig::default() };
    let mut witnesses = true;
    for _ in 0..3 {
        let x = gen::boxtimes_space(5, &mut rng, 1e-9)?;
        for g in cat0_core::graph::five_vertex_catalogue() {
            let ok = cat0_core::construct(&x, &[0, 1, 2, 3, 4], &g, &cfg).is_ok_and(|w| w.report.is_some_and(|r| r.pass));
            witnesses &= ok || g.is_isomorphic(&SimpleGraph::cycle(5)?);
        }
    }
    checks.push(("witnesses verify on five-vertex graphs", witnesses));

    let pass = checks.iter().all(|c| c.1);
    let lines: Vec<Value> = checks.iter().map(|(name, ok)| json!({"check": name, "pass": ok})).collect();
    outcome(if pass { 0 } else { 1 }, json!({"pass": pass, "checks": lines}))
}

fn emit(cli: &Cli, body: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(body)? + "\n";
    match &cli.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.tol.is_nan() || cli.tol <= 0.0 || cli.mesh_n < 2 {
        eprintln!("error: --tol must be positive and --mesh-n at least 2");
        return ExitCode::from(2);
    }
    let result = run(&cli).and_then(|o| emit(&cli, &o.body).map(|_| o.code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
