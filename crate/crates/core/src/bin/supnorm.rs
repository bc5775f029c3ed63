use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use supnorm::acceptance::run_acceptance;
use supnorm::buildings::{
    buildingcount_check_capped, delta_profile, sphere_size_polynomial, ConfigKind, IntersectionConfig,
};
use supnorm::charring::{char_value, nonvanishing_search, TorusPoint};
use supnorm::error::Error;
use supnorm::ksmall::{build_embedding, verify_ksmall_with_box, EmbeddingFamily, KSmallReport};
use supnorm::padic::DEFAULT_ENUMERATION_CAP;
use supnorm::rational::{parse_q, to_big};
use supnorm::report::{reproduce_section7, RunReport, TableFilter};
use supnorm::rootdata::{build_root_datum, Family, LatticeVector};
use supnorm::satake::{amplifier_select, satake_bruteforce_capped, satake_omega};

#[derive(Parser)]
#[command(name = "supnorm", version, about = "Exact checks for K-smallness, Satake transforms and building counts")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Cap on enumerated cosets.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Ksmall(KsmallCmd),
    #[command(subcommand)]
    Charring(CharringCmd),
    #[command(subcommand)]
    Satake(SatakeCmd),
    #[command(subcommand)]
    Buildings(BuildingsCmd),
    #[command(subcommand)]
    Reproduce(ReproduceCmd),
    /// Run the acceptance criteria.
    Acceptance {
        /// Group name (ksmall, satake, buildings, charring, amplifier) or ids.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum KsmallCmd {
    /// Certify K-smallness of one embedding.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long = "box", default_value_t = 3)]
        radius: i64,
    },
}

#[derive(Args)]
struct DatumArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand)]
enum CharringCmd {
    /// Evaluate an irreducible character at a torus point.
    Eval {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Largest character of bounded weight at a torus point.
    Search {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 4)]
        radius: i64,
    },
}

#[derive(Subcommand)]
enum SatakeCmd {
    /// Expansion of the Satake transform of omega_mu in characters.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i64>,
        /// `sym` or a rational value of q.
        #[arg(long, default_value = "sym")]
        q: String,
    },
    /// Brute-force transform from unipotent coset counts.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i64>,
        #[arg(long)]
        p: u64,
    },
    /// Amplifier term maximizing the transform at a dual torus point.
    Amplifier {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "101")]
        q: String,
        #[arg(long, default_value_t = 3)]
        radius: i64,
    },
}

#[derive(Subcommand)]
enum BuildingsCmd {
    /// Profile delta(mu, k) of root pairings.
    Delta {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i64>,
    },
    /// Sphere-size polynomial of GL_n.
    Sphere {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i64>,
        #[arg(long)]
        at_q: Option<u64>,
    },
    /// Count sphere cosets in L(Q_p) K.
    Intersect {
        #[arg(long)]
        config: String,
        /// For diagonal configurations two entries mean (nu, 0).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Vec<i64>,
        #[arg(long)]
        p: u64,
        /// `identity` or `random` (drawn from --seed).
        #[arg(long, default_value = "identity")]
        twist: String,
    },
}

#[derive(Subcommand)]
enum ReproduceCmd {
    /// The K-smallness verification table.
    Section7 {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
}

/// Result of a command before rendering.
struct Outcome {
    inputs: Value,
    outputs: Value,
    exact: bool,
    text: String,
    verified: bool,
}

impl Outcome {
    fn new(inputs: Value, outputs: impl Serialize, text: String) -> Self {
        Outcome {
            inputs,
            outputs: serde_json::to_value(outputs).expect("outputs serialize"),
            exact: true,
            text,
            verified: true,
        }
    }
}

fn datum(args: &DatumArgs) -> Result<supnorm::rootdata::RootDatum, Error> {
    build_root_datum(args.family.parse::<Family>()?, args.rank)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cap = cli.cap;
    match &cli.command {
        Command::Ksmall(KsmallCmd::Verify { family, k, radius }) => {
            let e = build_embedding(family.parse::<EmbeddingFamily>()?, *k)?;
            let report = KSmallReport::new(&e, &verify_ksmall_with_box(&e, *radius)?);
            let text = format!(
                "{}: kappa2_lower = {}, kappa2_lattice = {}, witness {:?}, {} LPs, {}",
                report.label, report.kappa2_lower, report.kappa2_lattice, report.witness, report.lp_count, report.verdict
            );
            let verified = report.verdict == "positive";
            let mut out = Outcome::new(json!({"family": family, "k": k, "box": radius}), &report, text);
            out.verified = verified;
            Ok(out)
        }
        Command::Charring(CharringCmd::Eval { datum: d, lambda, x }) => {
            let rd = datum(d)?;
            let point = TorusPoint::parse(x)?;
            let v = char_value(&rd, &LatticeVector::weight(lambda), &point)?;
            let mut out = Outcome::new(
                json!({"family": d.family, "rank": d.rank, "lambda": lambda, "x": x}),
                json!({"value": v.to_string(), "abs": v.abs()}),
                format!("chi_{lambda:?}({point}) = {v}"),
            );
            out.exact = v.is_exact();
            Ok(out)
        }
        Command::Charring(CharringCmd::Search { datum: d, x, radius }) => {
            let rd = datum(d)?;
            let point = TorusPoint::parse(x)?;
            let hit = nonvanishing_search(&rd, &point, *radius)?;
            let mu = hit.mu.to_ints().unwrap_or_default();
            let mut out = Outcome::new(
                json!({"family": d.family, "rank": d.rank, "x": x, "radius": radius}),
                json!({"mu": mu, "value": hit.value.to_string(), "abs": hit.abs}),
                format!("mu = {mu:?}, chi_mu({point}) = {} (|.| = {:.6})", hit.value, hit.abs),
            );
            out.exact = hit.value.is_exact();
            Ok(out)
        }
        Command::Satake(SatakeCmd::Table { n, mu, q }) => {
            let t = satake_omega(*n, mu)?;
            let t = if q == "sym" { t } else { t.specialize(&to_big(&parse_q(q)?))? };
            let terms = t.to_json();
            let text = terms
                .iter()
                .map(|term| format!("({}) chi_{:?}", term.coeff, term.lambda))
                .collect::<Vec<_>>()
                .join("\n  + ");
            Ok(Outcome::new(
                json!({"n": n, "mu": mu, "q": q}),
                json!({"mu": mu, "terms": terms}),
                format!("S omega_{mu:?} =\n    {text}"),
            ))
        }
        Command::Satake(SatakeCmd::Oracle { n, mu, p }) => {
            let r = satake_bruteforce_capped(*n, mu, *p, cap)?;
            let terms = r.transform.to_json();
            let text = terms
                .iter()
                .map(|term| format!("{} chi_{:?}", term.coeff, term.lambda))
                .collect::<Vec<_>>()
                .join(" + ");
            Ok(Outcome::new(
                json!({"n": n, "mu": mu, "p": p}),
                json!({"mu": mu, "p": p, "terms": terms, "sphere_size": r.sphere_size, "scanned": r.scanned}),
                format!("S omega_{mu:?} at p = {p}: {text}\nsphere size {}", r.sphere_size),
            ))
        }
        Command::Satake(SatakeCmd::Amplifier { n, x, q, radius }) => {
            let point = TorusPoint::parse(x)?;
            let hit = amplifier_select(*n, &point, &to_big(&parse_q(q)?), *radius)?;
            let mut out = Outcome::new(
                json!({"n": n, "x": x, "q": q, "radius": radius}),
                json!({"mu": hit.mu, "value": hit.value.to_string(), "abs": hit.abs}),
                format!("mu = {:?}, S omega_mu({point}) = {} (|.| = {:.6})", hit.mu, hit.value, hit.abs),
            );
            out.exact = hit.value.is_exact();
            Ok(out)
        }
        Command::Buildings(BuildingsCmd::Delta { datum: d, mu }) => {
            let p = delta_profile(&datum(d)?, &LatticeVector::coweight(mu))?;
            let text = format!("delta = {:?}, total = {}", p.values, p.total);
            Ok(Outcome::new(
                json!({"family": d.family, "rank": d.rank, "mu": mu}),
                json!({"mu": mu, "values": p.values, "total": p.total}),
                text,
            ))
        }
        Command::Buildings(BuildingsCmd::Sphere { n, mu, at_q }) => {
            if *n < 2 || mu.len() != *n {
                return Err(Error::Contract(format!("sphere needs n >= 2 and {n} entries of mu")));
            }
            let poly = sphere_size_polynomial(&build_root_datum(Family::A, n - 1)?, &LatticeVector::coweight(mu))?;
            let value = at_q.map(|q| poly.eval(q).to_string());
            let mut text = format!("|F_mu| = {poly}");
            if let (Some(q), Some(v)) = (at_q, &value) {
                text += &format!(" = {v} at q = {q}");
            }
            Ok(Outcome::new(
                json!({"n": n, "mu": mu, "at_q": at_q}),
                json!({"mu": mu, "polynomial": poly.to_string(), "coefficients": poly.0, "value": value}),
                text,
            ))
        }
        Command::Buildings(BuildingsCmd::Intersect { config, mu, p, twist }) => {
            let kind: ConfigKind = config.parse()?;
            let mut c = IntersectionConfig::new(kind, *p)?;
            match twist.as_str() {
                "identity" => {}
                "random" => c = c.with_random_twist(&mut ChaCha8Rng::seed_from_u64(cli.seed))?,
                other => return Err(Error::Parse(format!("unknown twist {other:?}"))),
            }
            let mut full = mu.clone();
            if kind.factors() == 2 && mu.len() == 2 {
                full.extend([0, 0]);
            }
            let r = buildingcount_check_capped(&c, &full, cap)?;
            let ratio = r.ratio.as_ref().map(supnorm::rational::fmt_big);
            let text = format!(
                "{kind} mu = {full:?} p = {p}: count {}, bound {}, ratio {}",
                r.count,
                r.bound,
                ratio.as_deref().unwrap_or("-")
            );
            Ok(Outcome::new(
                json!({"config": config, "mu": full, "p": p, "twist": c.twist}),
                &r,
                text,
            ))
        }
        Command::Reproduce(ReproduceCmd::Section7 { family, k }) => {
            let filter = TableFilter {
                family: family.as_deref().map(str::parse).transpose()?,
                size: *k,
            };
            let table = reproduce_section7(filter)?;
            let verified = table.all_positive;
            let mut out = Outcome::new(json!({"family": family, "k": k}), &table, table.render());
            out.verified = verified;
            Ok(out)
        }
        Command::Acceptance { only } => {
            let outcomes = run_acceptance(only.as_deref(), cli.seed)?;
            for o in &outcomes {
                eprintln!("criterion {} took {:.2?}", o.id, o.elapsed);
            }
            let text = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n");
            let verified = outcomes.iter().all(|o| o.passed);
            let mut out = Outcome::new(json!({"only": only}), json!({"criteria": outcomes}), text);
            out.verified = verified;
            Ok(out)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 4,
        Error::Internal(_) | Error::Exhaustion(_) => 3,
        Error::Capability(_) | Error::Contract(_) | Error::Parse(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    let start = Instant::now();
    let command: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok(out) => {
            let report = RunReport {
                command,
                inputs: out.inputs,
                outputs: out.outputs,
                exact: out.exact,
                seed: cli.seed,
                wall_time: start.elapsed(),
            };
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!("{}", out.text);
            }
            eprintln!("wall time {:.2?}", report.wall_time);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
