//! `mgb`: batch front end for Gröbner bases and prime classification.

use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use modp_ideals::arith::factorization_string;
use modp_ideals::fan::{enumerate_fan_with_budget, FanBudget};
use modp_ideals::groebner::{buchberger_reduced, ReducedGb};
use modp_ideals::io::{format_basis, parse_input, parse_ordering, parse_polys, CoeffTag, Input, GRAMMAR_HELP};
use modp_ideals::modular::{modular_gb, ModularConfig, VerifyMode};
use modp_ideals::poly::reduce_set_mod_p;
use modp_ideals::primes::{pauer_lucky, IdealAnalysis};
use modp_ideals::strong::{format_leading_monomials, strong_gb};
use modp_ideals::{Error, FieldCoeff, Ideal, Integer, Polynomial, Rational, TermOrdering};

#[derive(Parser, Debug)]
#[command(name = "mgb", version, about = "Groebner bases over QQ, ZZ and ZZ/(p), and prime classification for ideals")]
#[command(after_help = GRAMMAR_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Input file (`-` for standard input).
    file: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of each ideal.
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        order: Option<String>,
    },
    /// Minimal strong Gröbner basis over ZZ (primitive parts of QQ generators).
    StrongGb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        order: Option<String>,
    },
    /// Normal forms with respect to the first ideal.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        order: Option<String>,
        /// Polynomials to reduce; defaults to the generators of the remaining ideals.
        #[arg(long)]
        poly: Option<String>,
    },
    /// σ-good/bad and Pauer-lucky status of primes.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Certify τ-bad primes by comparing leading-term tuples of reductions.
    DetectBad {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        tau: Option<String>,
        #[arg(long)]
        primes: Option<String>,
    },
    /// Compare the radical of the denominator with the radical of the strong lcm.
    RadCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Enumerate the Gröbner fan.
    Fan {
        #[command(flatten)]
        common: Common,
    },
    /// Universal denominator over all term orderings.
    UniversalDenominator {
        #[command(flatten)]
        common: Common,
    },
    /// Reduced basis over QQ via primes, reconstruction and verification.
    ModularGb {
        #[command(flatten)]
        common: Common,
        /// Target ordering τ.
        #[arg(long)]
        order: Option<String>,
        /// Ordering used to reduce the ideal modulo each prime.
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, default_value_t = 31, value_parser = clap::value_parser!(u32).range(8..=62))]
        prime_bits: u32,
        #[arg(long, default_value_t = 64)]
        max_primes: usize,
        #[arg(long, value_enum, default_value_t = Verify::Cheap)]
        verify: Verify,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Verify {
    Cheap,
    Full,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Out = Result<(String, Value), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let _ = e.print();
            eprintln!("\ninput grammar:\n{GRAMMAR_HELP}");
            return ExitCode::from(2);
        }
    };
    let (json_mode, name) = match &cli.command {
        Command::Gb { common, .. } => (common.json, "gb"),
        Command::StrongGb { common, .. } => (common.json, "strong-gb"),
        Command::Nf { common, .. } => (common.json, "nf"),
        Command::Classify { common, .. } => (common.json, "classify"),
        Command::DetectBad { common, .. } => (common.json, "detect-bad"),
        Command::RadCheck { common, .. } => (common.json, "rad-check"),
        Command::Fan { common } => (common.json, "fan"),
        Command::UniversalDenominator { common } => (common.json, "universal-denominator"),
        Command::ModularGb { common, .. } => (common.json, "modular-gb"),
    };
    match run(cli.command) {
        Ok((text, value)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if json_mode {
                let mut obj = Map::new();
                obj.insert("schema".into(), json!(1));
                obj.insert("command".into(), json!(name));
                if let Value::Object(m) = value {
                    obj.extend(m);
                }
                writeln!(stdout, "{}", Value::Object(obj))
            } else {
                write!(stdout, "{text}")
            };
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\ninput grammar:\n{GRAMMAR_HELP}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &str) -> Result<Input, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    parse_input(&text).map_err(|e| Failure::Usage(format!("{path}:{e}")))
}

/// Ordering from a flag, then an `option` directive, then the ring default.
fn ordering(input: &Input, flag: &Option<String>, key: &str) -> Result<TermOrdering, Failure> {
    match flag.as_deref().or_else(|| input.directive(key)) {
        Some(text) => parse_ordering(text, &input.ring.names).map_err(|e| Failure::Usage(format!("--{key}: {e}"))),
        None => Ok(input.ring.ordering.clone()),
    }
}

fn primes(input: &Input, flag: &Option<String>) -> Result<Vec<u64>, Failure> {
    let text = flag.as_deref().or_else(|| input.directive("primes")).ok_or_else(|| Failure::Usage("no primes given".into()))?;
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("invalid prime {s:?}"))))
        .collect()
}

fn first_ideal(input: &Input) -> Result<&[Polynomial<Rational>], Failure> {
    input.ideals.first().map(|v| v.as_slice()).ok_or_else(|| Failure::Usage("no ideal given".into()))
}

fn analysis(input: &Input) -> Result<IdealAnalysis, Failure> {
    if let CoeffTag::PrimeField(_) = input.ring.coeffs {
        return Err(Failure::Usage("this command needs a ring over QQ or ZZ".into()));
    }
    Ok(IdealAnalysis::new(Ideal::new(input.ring.nvars(), first_ideal(input)?.to_vec())?))
}

fn basis_json<C: FieldCoeff>(gb: &ReducedGb<C>, names: &[String]) -> Value {
    json!(gb.elements().iter().map(|g| g.format(names)).collect::<Vec<_>>())
}

fn gb_over<C: FieldCoeff>(gens: &[Polynomial<C>], ord: &TermOrdering, names: &[String]) -> (String, Value) {
    let gb = buchberger_reduced(gens, ord);
    (format_basis(gb.elements(), names), basis_json(&gb, names))
}

fn run(command: Command) -> Out {
    match command {
        Command::Gb { common, order } => {
            let input = load(&common.file)?;
            let ord = ordering(&input, &order, "order")?;
            let names = &input.ring.names;
            let mut text = String::new();
            let mut bases = Vec::new();
            for gens in &input.ideals {
                let (t, v) = match input.ring.coeffs {
                    CoeffTag::PrimeField(p) => gb_over(&reduce_set_mod_p(gens, p)?, &ord, names),
                    _ => gb_over(gens, &ord, names),
                };
                text.push_str(&t);
                text.push('\n');
                bases.push(v);
            }
            Ok((text, json!({ "ordering": ord.describe(names), "bases": bases })))
        }
        Command::StrongGb { common, order } => {
            let input = load(&common.file)?;
            let ord = ordering(&input, &order, "order")?;
            let names = &input.ring.names;
            let gens = first_ideal(&input)?;
            let ints = match input.ring.coeffs {
                CoeffTag::Integers => gens.iter().map(|f| f.map_coeffs(|c| c.to_integer())).collect::<Vec<_>>(),
                CoeffTag::Rationals => gens.iter().map(|f| f.prim()).collect::<Result<Vec<_>, _>>()?,
                CoeffTag::PrimeField(_) => return Err(Failure::Usage("strong-gb needs a ring over ZZ or QQ".into())),
            };
            let gb = strong_gb(&ints, &ord)?;
            let elems: Vec<String> = gb.elements().iter().map(|g| g.format(names)).collect();
            let lms = format_leading_monomials(&gb, names);
            let lcm = gb.lcm_sigma();
            let text = format!("[{}]\nleading monomials: [{}]\nlcm = {lcm}\n", elems.join(", "), lms.join(", "));
            Ok((text, json!({ "basis": elems, "leading_monomials": lms, "lcm": lcm.to_string() })))
        }
        Command::Nf { common, order, poly } => {
            let input = load(&common.file)?;
            let ord = ordering(&input, &order, "order")?;
            let names = &input.ring.names;
            let targets: Vec<Polynomial<Rational>> = match &poly {
                Some(t) => parse_polys(t, names, &ord).map_err(|e| Failure::Usage(format!("--poly: {e}")))?,
                None => input.ideals.iter().skip(1).flatten().cloned().collect(),
            };
            let gens = first_ideal(&input)?;
            let forms: Vec<String> = match input.ring.coeffs {
                CoeffTag::PrimeField(p) => {
                    let gb = buchberger_reduced(&reduce_set_mod_p(gens, p)?, &ord);
                    reduce_set_mod_p(&targets, p)?.iter().map(|f| gb.normal_form(f).format(names)).collect()
                }
                _ => {
                    let gb = buchberger_reduced(gens, &ord);
                    targets.iter().map(|f| gb.normal_form(f).format(names)).collect()
                }
            };
            Ok((forms.iter().map(|f| format!("{f}\n")).collect(), json!({ "normal_forms": forms })))
        }
        Command::Classify { common, sigma, primes: flag } => {
            let input = load(&common.file)?;
            let an = analysis(&input)?;
            let sigma = ordering(&input, &sigma, "sigma")?;
            let names = &input.ring.names;
            let prims = an.ideal().gens().iter().map(|f| f.prim()).collect::<Result<Vec<_>, _>>()?;
            let den = an.den_sigma(&sigma)?;
            let mut text = format!("den = {}\n", factor_display(&den));
            let mut records = Vec::new();
            for p in primes(&input, &flag)? {
                let good = an.classify_prime(&sigma, p)?;
                let lucky = pauer_lucky(&prims, &sigma, p)?;
                text.push_str(&format!("{p}: {} {}\n", good.status.as_str(), lucky.status.as_str()));
                records.push(json!({ "sigma": good.to_json(names), "pauer": lucky.to_json(names) }));
            }
            Ok((text, json!({ "den": den.to_string(), "primes": records })))
        }
        Command::DetectBad { common, sigma, tau, primes: flag } => {
            let input = load(&common.file)?;
            let an = analysis(&input)?;
            let sigma = ordering(&input, &sigma, "sigma")?;
            let tau = ordering(&input, &tau, "tau")?;
            let names = &input.ring.names;
            let verdicts = an.detect_tau_bad(&sigma, &tau, &primes(&input, &flag)?)?;
            let mut text = String::new();
            for v in &verdicts {
                let tuple = match &v.evidence {
                    modp_ideals::primes::Evidence::Tuples { tuple, .. } => tuple.format(names),
                    _ => String::new(),
                };
                text.push_str(&format!("{}: {} {tuple}\n", v.prime, v.status.as_str()));
            }
            Ok((text, json!({ "verdicts": verdicts.iter().map(|v| v.to_json(names)).collect::<Vec<_>>() })))
        }
        Command::RadCheck { common, sigma } => {
            let input = load(&common.file)?;
            let an = analysis(&input)?;
            let sigma = ordering(&input, &sigma, "sigma")?;
            let r = an.check_rad_identity(&sigma)?;
            let text = format!("rad(den) = {}\nrad(lcm) = {}\nequal: {}\n", r.rad_den, r.rad_lcm, r.equal);
            Ok((text, json!({ "rad_den": r.rad_den.to_string(), "rad_lcm": r.rad_lcm.to_string(), "equal": r.equal })))
        }
        Command::Fan { common } => {
            let input = load(&common.file)?;
            let an = analysis(&input)?;
            let fan = enumerate_fan_with_budget(an.ideal(), FanBudget::from_env()?)?;
            let names = &input.ring.names;
            let mut text = String::new();
            let mut cones = Vec::new();
            for (i, cone) in fan.cones.iter().enumerate() {
                let adj: Vec<String> = fan.adjacency[i].iter().map(|j| j.to_string()).collect();
                let basis = format_basis(cone.basis().elements(), names);
                let den = cone.den();
                text.push_str(&format!("cone {i}: {basis} den = {den} flips = [{}]\n", adj.join(", ")));
                cones.push(json!({
                    "index": i.to_string(),
                    "basis": basis_json(cone.basis(), names),
                    "den": den.to_string(),
                    "weight": cone.interior_point().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "flips": adj,
                }));
            }
            let delta = fan.universal_denominator();
            text.push_str(&format!("cones: {}\nuniversal denominator: {}\n", fan.len(), factor_display(&delta)));
            Ok((text, json!({ "cones": cones, "universal_denominator": delta.to_string() })))
        }
        Command::UniversalDenominator { common } => {
            let input = load(&common.file)?;
            let an = analysis(&input)?;
            let fan = enumerate_fan_with_budget(an.ideal(), FanBudget::from_env()?)?;
            let delta = fan.universal_denominator();
            Ok((
                format!("{}\n", factor_display(&delta)),
                json!({ "universal_denominator": delta.to_string(), "factorization": factorization_string(&delta), "cones": fan.len().to_string() }),
            ))
        }
        Command::ModularGb { common, order, sigma, prime_bits, max_primes, verify, seed } => {
            let input = load(&common.file)?;
            let an = analysis(&input)?;
            let tau = ordering(&input, &order, "order")?;
            let sigma = match sigma.as_deref().or_else(|| input.directive("sigma")) {
                Some(_) => ordering(&input, &sigma, "sigma")?,
                None => TermOrdering::degrevlex(input.ring.nvars()),
            };
            let names = &input.ring.names;
            let verify = match verify {
                Verify::Cheap => VerifyMode::Cheap,
                Verify::Full => VerifyMode::Full,
            };
            let config = ModularConfig { prime_bits, max_primes, verify, seed, ..ModularConfig::default() };
            let start = Instant::now();
            let out = modular_gb(&an, &sigma, &tau, &config)?;
            let ms = start.elapsed().as_millis();
            let list = |v: &[u64]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
            let mut text = format!("{}\n", format_basis(out.basis.elements(), names));
            text.push_str(&format!("used primes: {}\n", list(&out.used).join(", ")));
            for r in &out.rejected {
                text.push_str(&format!("rejected {}: {}\n", r.prime, r.status.as_str()));
            }
            if !out.sigma_bad.is_empty() {
                text.push_str(&format!("sigma-bad primes: {}\n", list(&out.sigma_bad).join(", ")));
            }
            text.push_str(&format!("time: {ms} ms\n"));
            Ok((
                text,
                json!({
                    "basis": basis_json(&out.basis, names),
                    "tuple": out.tuple.format(names),
                    "used": list(&out.used),
                    "rejected": out.rejected.iter().map(|r| r.to_json(names)).collect::<Vec<_>>(),
                    "sigma_bad": list(&out.sigma_bad),
                    "reconstructions": out.reconstructions.to_string(),
                    "elapsed_ms": ms.to_string(),
                }),
            ))
        }
    }
}

/// `28 = 2^2 * 7`, or just `n` when `n` is 1 or prime.
fn factor_display(n: &Integer) -> String {
    let f = factorization_string(n);
    if f == n.to_string() {
        f
    } else {
        format!("{n} = {f}")
    }
}
