mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use conserva_core::algebra::resolve;
use conserva_core::biderivations::{
    biderivation_space, skew_biderivation_space, symmetric_biderivation_space,
};
use conserva_core::claims::verify_all;
use conserva_core::derivations::{centroid, delta_derivation_space, derivation_space};
use conserva_core::kantor::{
    build_wn, is_closed_under_product, symmetric_subspace, trace_zero_subspace,
};
use conserva_core::{Algebra, Rational};

#[derive(Parser)]
#[command(name = "conserva", version, about = "Exact solvers for conservative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Directory holding `<name>.json` tables that replace the built-ins.
    #[arg(long, global = true, value_name = "PATH")]
    algebra_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the multiplication table of a built-in algebra or a JSON file.
    Show { algebra: String },
    /// Compute a canonical basis of a solution space.
    Solve {
        kind: Kind,
        algebra: String,
        /// δ for `delta-derivations`, as `p/q` or `p`.
        #[arg(long, value_name = "P/Q")]
        delta: Option<String>,
    },
    /// Build W(n) for a distinguished vector e and report its subalgebras.
    Construct {
        #[arg(long)]
        n: usize,
        /// Coordinates of e, comma separated; defaults to the first basis vector.
        #[arg(long, value_name = "CSV")]
        e: Option<String>,
        /// Write the W(n) table as JSON to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the full claim list against the tables.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Derivations,
    DeltaDerivations,
    Centroid,
    Biderivations,
    BiderivationsSym,
    BiderivationsSkew,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Derivations => "derivations",
            Kind::DeltaDerivations => "delta-derivations",
            Kind::Centroid => "centroid",
            Kind::Biderivations => "biderivations",
            Kind::BiderivationsSym => "biderivations-sym",
            Kind::BiderivationsSkew => "biderivations-skew",
        }
    }
}

/// Accepts a built-in name or a path to a JSON table.
fn load_algebra(spec: &str, dir: Option<&Path>) -> Result<Algebra> {
    let path = Path::new(spec);
    if path.is_file() {
        return Algebra::load(path).with_context(|| format!("loading {spec}"));
    }
    Ok(resolve(spec, dir)?)
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse()
        .with_context(|| format!("invalid rational {s:?}"))
}

fn parse_vector(csv: &str) -> Result<Vec<Rational>> {
    csv.split(',').map(parse_rational).collect()
}

fn show(cli: &Cli, name: &str) -> Result<()> {
    let a = load_algebra(name, cli.algebra_dir.as_deref())?;
    if cli.json {
        print!("{}", a.to_json());
    } else {
        print!("{}", render::table(&a));
    }
    Ok(())
}

fn solve(cli: &Cli, kind: Kind, name: &str, delta: Option<&str>) -> Result<()> {
    let a = load_algebra(name, cli.algebra_dir.as_deref())?;
    let delta = match (kind, delta) {
        (Kind::DeltaDerivations, Some(d)) => Some(parse_rational(d)?),
        (Kind::DeltaDerivations, None) => bail!("delta-derivations needs --delta"),
        (_, Some(_)) => bail!("--delta only applies to delta-derivations"),
        (_, None) => None,
    };
    let solution = match kind {
        Kind::Derivations => render::Solution::Maps(derivation_space(&a)),
        Kind::DeltaDerivations => render::Solution::Maps(delta_derivation_space(
            &a,
            delta.as_ref().expect("checked above"),
        )),
        Kind::Centroid => render::Solution::Maps(centroid(&a)),
        Kind::Biderivations => render::Solution::Bilinear(biderivation_space(&a)),
        Kind::BiderivationsSym => render::Solution::Bilinear(symmetric_biderivation_space(&a)),
        Kind::BiderivationsSkew => render::Solution::Bilinear(skew_biderivation_space(&a)),
    };
    let out = if cli.json {
        render::solution_json(&a, kind.name(), delta.as_ref(), &solution)
    } else {
        render::solution_text(&a, kind.name(), delta.as_ref(), &solution)
    };
    print!("{out}");
    Ok(())
}

fn construct(cli: &Cli, n: usize, e: Option<&str>, out: Option<&Path>) -> Result<()> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let e = match e {
        Some(csv) => parse_vector(csv)?,
        None => {
            let mut v = vec![Rational::zero(); n];
            v[0] = Rational::one();
            v
        }
    };
    if e.len() != n {
        bail!("--e has {} coordinates, expected {n}", e.len());
    }
    let w = build_wn(n, &e)?;
    let sym = symmetric_subspace(&w);
    let tz = trace_zero_subspace(&w);
    let report = render::ConstructReport {
        n,
        e: &e,
        dim: w.algebra().dim(),
        symmetric_dim: sym.len(),
        symmetric_closed: is_closed_under_product(&w, &sym)?,
        trace_zero_dim: tz.len(),
        trace_zero_closed: is_closed_under_product(&w, &tz)?,
        written: out,
    };
    if let Some(path) = out {
        std::fs::write(path, w.algebra().to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.json {
        print!("{}", report.json(w.algebra()));
    } else {
        print!("{}", report.text());
    }
    Ok(())
}

fn verify(cli: &Cli) -> Result<bool> {
    let report = verify_all(cli.algebra_dir.as_deref())?;
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render::report_text(&report));
    }
    Ok(!report.has_failures())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Show { algebra } => show(cli, algebra).map(|_| true),
        Command::Solve {
            kind,
            algebra,
            delta,
        } => solve(cli, *kind, algebra, delta.as_deref()).map(|_| true),
        Command::Construct { n, e, out } => {
            construct(cli, *n, e.as_deref(), out.as_deref()).map(|_| true)
        }
        Command::VerifyPaper => verify(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
