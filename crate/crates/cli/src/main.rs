//! `coxlat`: star lattices of Kleinian and Fuchsian singularities, their
//! Coxeter polynomials and Poincaré series.
//!
//! Exit status: 0 on success, 1 when a verification or route comparison
//! fails, 2 on invalid input.

mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxlat::arith::{series_from_rational, PowerSeries};
use coxlat::lattice::Lattice;
use coxlat::poincare::{hilbert_p, hilbert_q, poincare_direct, RootedLattice};
use coxlat::star::{catalog_entries, GramJson, SingularityKind, CENTER_LABEL};
use coxlat::verify::{
    format_table, run_suite, subject_of, suite_inputs, verify_all, verify_lattices, VerificationReport,
    DEFAULT_ORDER, DEFAULT_SEED, RANDOM_TUPLES,
};
use coxlat::{Error, Result};

use input::{Input, InputArgs};

// stdout may be closed early by a pager or `head`; that is not an error
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser, Debug)]
#[command(name = "coxlat", version, about = "Coxeter elements of star lattices and Poincaré series of Kleinian and Fuchsian singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gram matrices of V-, V0 = V-[u] and V+ = V-[u,w]
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Characteristic polynomials of the three Coxeter elements
    Charpoly {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Poincaré series from divisor degrees and from the polynomial quotient
    Poincare {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, value_enum, default_value_t = Route::Both)]
        route: Route,
    },
    /// Hilbert-Poincaré series P or Q of V0 with a basis root
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long = "series", value_enum, default_value_t = Which::P)]
        which: Which,
        /// Label of the root in V0
        #[arg(long, default_value = CENTER_LABEL)]
        root: String,
    },
    /// Check every identity and report the first discrepancy of each
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        series: SeriesArgs,
        /// The whole catalog plus seeded random Fuchsian tuples
        #[arg(long, conflicts_with = "source")]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_SEED, requires = "all")]
        seed: u64,
        #[arg(long, default_value_t = RANDOM_TUPLES, requires = "all")]
        random: usize,
    },
    /// Named singularities
    Catalog {
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// Highest power of t
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Direct,
    Quotient,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Build { input, out } => build(&input.resolve()?, out.format),
        Command::Charpoly { input, out } => charpoly(&input.resolve()?, out.format),
        Command::Poincare { input, series, route } => poincare(&input.resolve()?, &series, route),
        Command::Hilbert { input, series, which, root } => hilbert(&input.resolve()?, &series, which, &root),
        Command::Verify { input, series, all, seed, random } => {
            if all {
                verify_suite(seed, random, &series)
            } else {
                verify(&input, &series)
            }
        }
        Command::Catalog { out } => Ok(list_catalog(out.format)),
    }
}

fn series_text(s: &PowerSeries) -> String {
    let c: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", c.join(", "))
}

fn gram_text(name: &str, l: &Lattice) -> String {
    let w = l.labels().iter().map(String::len).max().unwrap_or(0);
    let mut out = format!("{name} (rank {})\n", l.rank());
    for (i, label) in l.labels().iter().enumerate() {
        let row: Vec<String> = l.gram().row(i).iter().map(|x| format!("{x:>2}")).collect();
        out += &format!("  {label:<w$}  {}\n", row.join(" "));
    }
    out
}

fn build(input: &Input, format: Format) -> Result<ExitCode> {
    let st = &input.lattices;
    let parts = [("V-", &st.minus.lattice), ("V0", &st.zero.lattice), ("V+", &st.plus.lattice)];
    match format {
        Format::Text => {
            out!("{}", input.label);
            for (name, l) in parts {
                out_raw!("{}", gram_text(name, l));
            }
        }
        Format::Json => {
            let gram = |l: &Lattice| serde_json::to_value(GramJson::from_lattice(l)).expect("plain data serializes");
            let doc = json!({
                "invariants": input.invariants.as_ref().map(|(inv, _)| inv.to_json()),
                "kind": input.invariants.as_ref().map(|(_, k)| k.name()),
                "minus": gram(parts[0].1),
                "zero": gram(parts[1].1),
                "plus": gram(parts[2].1),
            });
            out!("{doc}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn charpoly(input: &Input, format: Format) -> Result<ExitCode> {
    let [m, z, p] = input.lattices.char_polys();
    match format {
        Format::Text => {
            out!("Delta- = {m}");
            out!("Delta0 = {z}");
            out!("Delta+ = {p}");
        }
        Format::Json => out!("{}", json!({ "minus": m.to_json(), "zero": z.to_json(), "plus": p.to_json() })),
    }
    Ok(ExitCode::SUCCESS)
}

fn known_kind(input: &Input) -> Result<(&coxlat::star::OrbitInvariants, SingularityKind)> {
    input.invariants.as_ref().map(|(inv, k)| (inv, *k)).ok_or_else(|| {
        Error::InvalidInput("the labels do not describe a star off the boundary, so the kind is unknown".into())
    })
}

fn poincare(input: &Input, args: &SeriesArgs, route: Route) -> Result<ExitCode> {
    let (inv, kind) = known_kind(input)?;
    let order = args.order;
    let direct = match route {
        Route::Quotient => None,
        _ => Some(poincare_direct(inv, kind, order)?),
    };
    let quotient = match route {
        Route::Direct => None,
        _ => {
            let [m, z, p] = input.lattices.char_polys();
            let num = if kind == SingularityKind::Kleinian { m } else { p };
            Some(series_from_rational(&num, &z, order)?)
        }
    };
    let agree = match (&direct, &quotient) {
        (Some(d), Some(q)) => d.first_mismatch(q)?,
        _ => None,
    };
    match args.out.format {
        Format::Text => {
            if let Some(d) = &direct {
                out!("direct   {}", series_text(d));
            }
            if let Some(q) = &quotient {
                out!("quotient {}", series_text(q));
            }
        }
        Format::Json => out!(
            "{}",
            json!({
                "subject": input.label,
                "kind": kind.name(),
                "direct": direct.as_ref().map(PowerSeries::to_json),
                "quotient": quotient.as_ref().map(PowerSeries::to_json),
                "first_mismatch": agree,
            })
        ),
    }
    if let Some(k) = agree {
        eprintln!("routes differ at t^{k}");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn hilbert(input: &Input, args: &SeriesArgs, which: Which, root: &str) -> Result<ExitCode> {
    let v0 = &input.lattices.zero;
    let index = v0
        .lattice
        .index_of(root)
        .ok_or_else(|| Error::InvalidInput(format!("no basis element labelled {root:?} in V0")))?;
    let rl = RootedLattice::basis_root(v0, index)?;
    let (name, s) = match which {
        Which::P => ("P", hilbert_p(&rl, args.order)?),
        Which::Q => ("Q", hilbert_q(&rl, args.order)?),
    };
    match args.out.format {
        Format::Text => out!("{name}(V0,{root}) {}", series_text(&s)),
        Format::Json => {
            let mut v = s.to_json();
            v["series"] = name.into();
            v["root"] = root.into();
            out!("{v}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(reports: &[VerificationReport], format: Format) -> ExitCode {
    match format {
        Format::Text => {
            out_raw!("{}", format_table(reports));
            let failed = reports.iter().filter(|r| !r.passed()).count();
            out!("{} reports, {failed} failed", reports.len());
        }
        Format::Json => {
            for r in reports {
                out!("{}", r.to_json());
            }
        }
    }
    if reports.iter().all(VerificationReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verify(args: &InputArgs, series: &SeriesArgs) -> Result<ExitCode> {
    if !args.is_given() {
        return Err(Error::InvalidInput("give an input or --all".into()));
    }
    let input = args.resolve()?;
    let reports = match (&input.invariants, input.built) {
        (Some((inv, _)), true) => {
            let mut reports = verify_all(inv, series.order)?;
            for r in &mut reports {
                r.subject = input.label.clone();
            }
            reports
        }
        _ => verify_lattices(&input.lattices, series.order, &input.label),
    };
    Ok(emit(&reports, series.out.format))
}

fn verify_suite(seed: u64, random: usize, series: &SeriesArgs) -> Result<ExitCode> {
    let mut reports = Vec::new();
    for (key, res) in run_suite(&suite_inputs(seed, random), series.order) {
        match res {
            Ok(r) => reports.extend(r),
            Err(e) => return Err(Error::InvalidInput(format!("{key}: {e}"))),
        }
    }
    Ok(emit(&reports, series.out.format))
}

fn list_catalog(format: Format) -> ExitCode {
    let entries = catalog_entries();
    match format {
        Format::Text => {
            for (name, inv) in &entries {
                let kind = coxlat::star::validate(inv).expect("catalog entries are valid");
                out!("{name:<4} {:<22} {inv}", subject_of(kind, &inv.alphas()));
            }
        }
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .map(|(name, inv)| {
                    let kind = coxlat::star::validate(inv).expect("catalog entries are valid");
                    json!({ "name": name, "kind": kind.name(), "alpha": inv.alphas(), "invariants": inv.to_json() })
                })
                .collect();
            out!("{}", Value::Array(list));
        }
    }
    ExitCode::SUCCESS
}
