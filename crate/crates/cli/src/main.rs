//! `cubeperm`: degree-3 permutation rational functions from the command line.
//!
//! Exit status: 0 success, 1 domain error, 2 usage error, 3 crosscheck
//! disagreement. Verdicts are printed, never encoded in the exit status.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use cubeperm::acceptance::{self, AcceptanceConfig, Status};
use cubeperm::census::{
    self, complete_census, count_permutations, equivalence_classes, CensusConfig, CountMethod,
};
use cubeperm::cubicperm::{
    extension_permutation, Classifier, ClassReport, CubicError, Evidence, ExtMode, Mode, Verdict,
};
use cubeperm::gf::Field;
use cubeperm::projfunc::{fractional_jump, parse_ratfunc, RatFunc};

#[derive(Parser)]
#[command(name = "cubeperm", version, about = "Degree-3 permutation rational functions over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for census enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest field order visited (census guards, selfcheck skips).
    #[arg(long, global = true)]
    max_q: Option<u32>,
}

#[derive(Args)]
struct FieldArg {
    /// Field: `q`, `p^k` or `p^k:[c0,c1,...]` with an explicit modulus.
    #[arg(long)]
    field: String,
}

#[derive(Args)]
struct FuncArgs {
    #[command(flatten)]
    field: FieldArg,
    /// Rational function in x, e.g. "(x^3+x)/(2*x^2+1)"; `w` is the field generator.
    function: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the function permutes the projective line.
    Test {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long, default_value = "auto", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Canonical representative with Möbius witnesses.
    #[command(alias = "canonical")]
    Classify {
        #[command(flatten)]
        func: FuncArgs,
    },
    /// Count monic-pair permutations and compare with the closed formula.
    Count {
        /// Single field; without it every q in 2..=9 (capped by --max-q).
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value = "brute", value_parser = parse_method)]
        method: CountMethod,
        /// CSV table instead of text.
        #[arg(long)]
        csv: bool,
    },
    /// Equivalence classes under the two-sided Möbius action.
    Classes {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Complete permutations: both phi and phi + x permute.
    Complete {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Fractional-jump permutation of the field.
    Jump {
        #[command(flatten)]
        func: FuncArgs,
    },
    /// Permutation behaviour over the degree-n extension.
    Extend {
        #[command(flatten)]
        func: FuncArgs,
        #[arg(long)]
        n: u32,
        /// Predict from the theory instead of verifying by enumeration.
        #[arg(long)]
        predict: bool,
    },
    /// Run the acceptance suite.
    Selfcheck,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<CountMethod, String> {
    s.parse()
}

/// Error with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure { code: 2, error }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Failure {
        let error = e.into();
        let code = match error.downcast_ref::<CubicError>() {
            Some(CubicError::Disagreement { .. }) => 3,
            _ => 1,
        };
        Failure { code, error }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Test { func, mode } => {
            let (f, phi) = load(func)?;
            let report = Classifier::new(&f)?.is_permutation(&phi, *mode)?;
            print_report(&mut out, cli.json, &phi, &report)
        }
        Command::Classify { func } => {
            let (f, phi) = load(func)?;
            let report = Classifier::new(&f)?.canonicalize(&phi)?;
            print_report(&mut out, cli.json, &phi, &report)
        }
        Command::Count { field, method, csv } => {
            let config = census_config(cli);
            let fields = match field {
                Some(spec) => vec![parse_field(spec)?],
                None => acceptance::CENSUS_QS
                    .iter()
                    .filter(|&&q| cli.max_q.is_none_or(|m| q <= m as u64))
                    .map(|&q| census::field_of_order(q))
                    .collect::<Result<_, _>>()?,
            };
            let mut reports = Vec::new();
            for f in &fields {
                reports.push(count_permutations(f, *method, &config)?);
            }
            if *csv {
                census::write_csv(&reports, &mut out)?;
            } else {
                for r in &reports {
                    if cli.json {
                        r.write_json_lines(&mut out)?;
                        continue;
                    }
                    writeln!(out, "q = {}: N_q = {}, formula = {}", r.q, r.n_q, r.formula)?;
                    for row in &r.rows {
                        writeln!(
                            out,
                            "  shape {:?}: {} of {} pairs permute",
                            row.shape, row.permutations, row.total_pairs
                        )?;
                    }
                }
            }
            match reports.iter().find(|r| !r.matches_formula()) {
                Some(r) => Err(anyhow!("q = {}: census {} differs from formula {}", r.q, r.n_q, r.formula).into()),
                None => Ok(()),
            }
        }
        Command::Classes { field } => {
            let f = parse_field(&field.field)?;
            let table = equivalence_classes(&f, &census_config(cli))?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&table.to_json(&f))?)?;
            } else {
                writeln!(out, "q = {}: {} classes over {} permutations", table.q, table.class_count(), table.population)?;
                for o in &table.orbits {
                    writeln!(
                        out,
                        "  {} (size {}) ~ {} [{}], witnesses {} , {}",
                        o.representative,
                        o.size,
                        o.canon.representative(&f),
                        o.canon.tag(),
                        o.witnesses.0,
                        o.witnesses.1
                    )?;
                }
            }
            Ok(())
        }
        Command::Complete { field } => {
            let f = parse_field(&field.field)?;
            let found = complete_census(&f, &census_config(cli))?;
            let texts: Vec<String> = found.iter().map(ToString::to_string).collect();
            if cli.json {
                writeln!(out, "{}", serde_json::json!({ "field": f.spec_string(), "complete": texts }))?;
            } else {
                writeln!(out, "{} complete permutations over {}", texts.len(), f.describe())?;
                for t in texts {
                    writeln!(out, "  {t}")?;
                }
            }
            Ok(())
        }
        Command::Jump { func } => {
            let (f, phi) = load(func)?;
            let table = fractional_jump(&phi)?;
            if cli.json {
                let values: Vec<u32> = table.iter().map(|e| e.value()).collect();
                let json = serde_json::json!({ "field": f.spec_string(), "function": phi.to_string(), "table": values });
                writeln!(out, "{json}")?;
            } else {
                for (x, y) in f.elements().zip(&table) {
                    writeln!(out, "{} -> {}", f.fmt_elem(x), f.fmt_elem(*y))?;
                }
            }
            Ok(())
        }
        Command::Extend { func, n, predict } => {
            let (f, phi) = load(func)?;
            let mode = if *predict { ExtMode::Predict } else { ExtMode::Verify };
            let permutes = extension_permutation(&phi, *n, mode)?;
            if cli.json {
                let json = serde_json::json!({
                    "field": f.spec_string(),
                    "function": phi.to_string(),
                    "n": n,
                    "mode": if *predict { "predict" } else { "verify" },
                    "permutes": permutes,
                });
                writeln!(out, "{json}")?;
            } else {
                let verb = if permutes { "permutes" } else { "does not permute" };
                writeln!(out, "{phi} {verb} the projective line over F_{}^{n}", f.order())?;
            }
            Ok(())
        }
        Command::Selfcheck => {
            let cfg = AcceptanceConfig {
                max_q: cli.max_q.map(u64::from),
                census: CensusConfig { threads: cli.threads, ..CensusConfig::default() },
                ..AcceptanceConfig::default()
            };
            let results = acceptance::run_all(&cfg);
            for r in &results {
                writeln!(out, "{r}")?;
                if let (Status::Fail, Some(why)) = (r.status, r.known_unattainable()) {
                    writeln!(out, "     known failure, not counted: {why}")?;
                }
            }
            let failed: Vec<String> = results
                .iter()
                .filter(|r| r.status == Status::Fail && r.known_unattainable().is_none())
                .map(|r| format!("{} ({})", r.id, r.name))
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(anyhow!("failing criteria: {}", failed.join(", ")).into())
            }
        }
    }
}

fn census_config(cli: &Cli) -> CensusConfig {
    let mut c = CensusConfig { threads: cli.threads, ..CensusConfig::default() };
    if let Some(m) = cli.max_q {
        c.brute_max_q = m;
        c.criterion_max_q = m;
        c.classes_max_q = m;
        c.complete_max_q = m;
    }
    c
}

fn parse_field(spec: &str) -> Result<Field, Failure> {
    spec.parse::<Field>().with_context(|| format!("bad field spec {spec:?}")).map_err(usage)
}

fn load(args: &FuncArgs) -> Result<(Field, RatFunc), Failure> {
    let f = parse_field(&args.field.field)?;
    let text = &args.function;
    let phi = parse_ratfunc(text, &f).map_err(|e| {
        let caret = format!("{}^", " ".repeat(e.pos));
        usage(anyhow!("{e}\n  {text}\n  {caret}"))
    })?;
    Ok((f, phi))
}

fn print_report(out: &mut impl Write, json: bool, phi: &RatFunc, report: &ClassReport) -> Outcome {
    if json {
        writeln!(out, "{}", serde_json::to_string(&report.to_json(phi))?)?;
        return Ok(());
    }
    let f = phi.field();
    let verdict = match report.verdict {
        Verdict::Permutation => "permutation",
        Verdict::NotPermutation => "not a permutation",
    };
    writeln!(out, "field:     {}", f.describe())?;
    writeln!(out, "function:  {phi}")?;
    writeln!(out, "verdict:   {verdict}")?;
    writeln!(out, "separable: {}", report.separable)?;
    writeln!(out, "method:    {}", format!("{:?}", report.method).to_lowercase())?;
    if let Some(canon) = &report.canon {
        writeln!(out, "canonical: {} [{}]", canon.representative(f), canon.tag())?;
    }
    if let Some((m1, m2)) = &report.witnesses {
        writeln!(out, "witnesses: m1 = {m1}, m2 = {m2}")?;
    }
    match &report.evidence {
        Some(Evidence::Discriminant { delta, decomposition }) => {
            let r = phi.ring();
            write!(out, "evidence:  discriminant {}", r.format(delta, "t"))?;
            match decomposition {
                Some((u, s)) => writeln!(out, " = {} * ({})^2", f.fmt_elem(*u), r.format(s, "t"))?,
                None => writeln!(out, " is not a constant times a square")?,
            }
        }
        Some(Evidence::Resolvent { b, c, base_roots, ext_roots }) => {
            let r = phi.ring();
            writeln!(out, "evidence:  resolvent x^2 + ({})x + ({})", r.format(b, "t"), r.format(c, "t"))?;
            writeln!(out, "           roots over F_q(t): {}, over F_q^2(t): {}", base_roots.len(), ext_roots.len())?;
        }
        Some(Evidence::PoleObstruction { pole }) => {
            writeln!(out, "evidence:  infinity has two preimages (pole at {})", f.fmt_elem(*pole))?;
        }
        Some(Evidence::Inseparable) => writeln!(out, "evidence:  numerator and denominator lie in F_q[x^3]")?,
        None => {}
    }
    Ok(())
}

