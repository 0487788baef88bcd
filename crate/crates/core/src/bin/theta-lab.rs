use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use theta_lab::congruence::{des_hom, member, subgroup_index, CongruenceGroup, SL2Matrix};
use theta_lab::cyclo::{format_real, parse_complex};
use theta_lab::heisenberg::{
    enumerate_sym_automorphisms, enumerate_symmetric_splittings, stabilizer_u0, DescentReport, HeisenbergElement,
    StabilizerReading, ThetaType,
};
use theta_lab::metaplectic::{mp_lift_word, mp_mul, MpElement};
use theta_lab::schrodinger::rho;
use theta_lab::suite::{run_suite, seed_from_env, Level};
use theta_lab::symplectic4::{discriminant, Mod4SymplecticElement, Parity};
use theta_lab::thetanum::{theta_constants, verify_transformation, ConventionRegistry};
use theta_lab::weilrep::weil_rep;
use theta_lab::Error;

/// Heisenberg groups, Weil representations and theta transformation laws.
///
/// Square roots use the principal branch, arg in (-pi, pi], so sqrt(-1) = i.
/// Metaplectic elements are written "a,b,c,d:+" or "a,b,c,d:-", the sign
/// selecting eps in phi(tau) = eps * sqrt(c tau + d).
#[derive(Parser)]
#[command(name = "theta-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite Heisenberg groups G(delta)
    #[command(subcommand)]
    Heisenberg(HeisenbergCmd),
    /// Schrodinger representation
    #[command(subcommand)]
    Schrodinger(SchrodingerCmd),
    /// The discriminant character of Sp(2g, Z/4) on a theta group
    Discriminant(DiscriminantArgs),
    /// Congruence subgroups and the descent homomorphism
    #[command(subcommand)]
    Congruence(CongruenceCmd),
    /// The metaplectic group Mp2(Z)
    #[command(subcommand)]
    Mp(MpCmd),
    /// The Weil representation rho_m(gamma, phi)
    Weilrep(WeilrepArgs),
    /// Theta series
    #[command(subcommand)]
    Theta(ThetaCmd),
    /// Transformation-law checks and the verification battery
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum HeisenbergCmd {
    /// Symmetric splittings over H(delta)
    Splittings {
        #[arg(long = "type")]
        theta_type: String,
    },
    /// Symmetric automorphisms, or the stabilizer U0sym of the canonical splitting
    Aut {
        #[arg(long = "type")]
        theta_type: String,
        #[arg(long)]
        stabilizer_u0sym: bool,
        /// How the stabilizer condition is read
        #[arg(long, default_value = "setwise", value_parser = ["setwise", "pointwise"])]
        reading: String,
    },
    /// Orbit and stabilizer counts for maximal symmetric splittings
    Descent {
        #[arg(long = "type")]
        theta_type: String,
    },
}

#[derive(Subcommand)]
enum SchrodingerCmd {
    /// Matrix of an element "q,x..,y.." with q the scalar exponent num/den
    Matrix {
        #[arg(long = "type")]
        theta_type: String,
        #[arg(long)]
        element: String,
    },
}

#[derive(Args)]
struct DiscriminantArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    parity: Parity,
    /// 4g^2 entries mod 4, row-major, comma separated
    #[arg(long)]
    gamma: String,
}

#[derive(Subcommand)]
enum CongruenceCmd {
    /// Membership of gamma in a congruence subgroup
    Member {
        #[arg(long, value_parser = ["gamma", "gamma0", "gamma-m-2m", "theta12"])]
        group: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        gamma: SL2Matrix,
    },
    /// Index in SL2(Z)
    Index {
        #[arg(long, value_parser = ["gamma", "gamma0", "gamma-m-2m", "theta12"])]
        group: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Des(a,b;c,d) = (a, bm; c/m, d) on Gamma0(2m)
    Des {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        gamma: SL2Matrix,
    },
}

#[derive(Subcommand)]
enum MpCmd {
    /// Product of two metaplectic elements
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        left: MpElement,
        #[arg(long, allow_hyphen_values = true)]
        right: MpElement,
    },
    /// A word in (S,+), (T,+) and (I,-) with the given product
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        mp: MpElement,
    },
}

#[derive(Args)]
struct WeilrepArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, allow_hyphen_values = true)]
    mp: MpElement,
}

#[derive(Subcommand)]
enum ThetaCmd {
    /// The theta constants theta_{m,nu}(tau), nu = 0..m-1
    Eval {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// theta(gamma tau) against phi(tau) rho_m(gamma, phi) theta(tau)
    Transform {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        mp: MpElement,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the verification battery; the seed comes from THETA_LAB_SEED
    Suite {
        #[arg(long, default_value = "quick")]
        level: Level,
    },
}

enum Outcome {
    Done(Value),
    Checked(Value, bool),
}

fn theta_type(s: &str) -> Result<ThetaType, Error> {
    ThetaType::parse(s)
}

fn group(name: &str, n: Option<u64>, m: Option<u64>) -> Result<CongruenceGroup, Error> {
    CongruenceGroup::parse(name, n.or(m))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    let out = match cmd {
        Command::Heisenberg(HeisenbergCmd::Splittings { theta_type: t }) => {
            let t = theta_type(&t)?;
            let mut s = enumerate_symmetric_splittings(&t)?;
            s.sort();
            json!({"type": t, "count": s.len(), "splittings": s})
        }
        Command::Heisenberg(HeisenbergCmd::Aut { theta_type: t, stabilizer_u0sym, reading }) => {
            let t = theta_type(&t)?;
            let mut auts = if stabilizer_u0sym {
                let reading =
                    if reading == "pointwise" { StabilizerReading::Pointwise } else { StabilizerReading::Setwise };
                stabilizer_u0(&t, reading)?
            } else {
                enumerate_sym_automorphisms(&t)?
            };
            auts.sort();
            json!({"type": t, "count": auts.len(), "automorphisms": auts})
        }
        Command::Heisenberg(HeisenbergCmd::Descent { theta_type: t }) => {
            let r = DescentReport::compute(&theta_type(&t)?)?;
            let consistent = r.orbit_stabilizer_consistent();
            let mut v = to_value(&r);
            v["orbit_stabilizer_consistent"] = json!(consistent);
            v
        }
        Command::Schrodinger(SchrodingerCmd::Matrix { theta_type: t, element }) => {
            let t = theta_type(&t)?;
            let e = HeisenbergElement::parse(&element, &t)?;
            json!({"type": t, "element": e, "matrix": rho(&e)?})
        }
        Command::Discriminant(a) => {
            let gamma = Mod4SymplecticElement::parse(&a.gamma, a.parity)?;
            if gamma.g != a.g {
                return Err(Error::BadShape(format!("--g {} but gamma has genus {}", a.g, gamma.g)));
            }
            json!({"g": a.g, "parity": a.parity.to_string(), "lambda": discriminant(&gamma)?})
        }
        Command::Congruence(CongruenceCmd::Member { group: name, n, m, gamma }) => {
            let g = group(&name, n, m)?;
            json!({"group": g.to_string(), "gamma": gamma, "member": member(&gamma, g)})
        }
        Command::Congruence(CongruenceCmd::Index { group: name, n, m }) => {
            let g = group(&name, n, m)?;
            json!({"group": g.to_string(), "index": subgroup_index(g)})
        }
        Command::Congruence(CongruenceCmd::Des { m, gamma }) => {
            json!({"m": m, "gamma": gamma, "des": des_hom(&gamma, m)?})
        }
        Command::Mp(MpCmd::Mul { left, right }) => {
            json!({"left": left.to_string(), "right": right.to_string(), "product": mp_mul(&left, &right)?.to_string()})
        }
        Command::Mp(MpCmd::Lift { mp }) => {
            json!({"mp": mp.to_string(), "word": mp_lift_word(&mp)?})
        }
        Command::Weilrep(a) => json!({"m": a.m, "mp": a.mp.to_string(), "matrix": weil_rep(a.m, &a.mp)?}),
        Command::Theta(ThetaCmd::Eval { m, tau, tol }) => to_value(&theta_constants(m, parse_complex(&tau)?, tol)?),
        Command::Verify(VerifyCmd::Transform { m, mp, tau, tol }) => {
            let r = verify_transformation(m, &mp, parse_complex(&tau)?, tol, &ConventionRegistry::new())?;
            eprintln!(
                "residual {} under the {} convention: {}",
                format_real(r.residual),
                r.convention,
                verdict(r.pass)
            );
            return Ok(Outcome::Checked(to_value(&r), r.pass));
        }
        Command::Verify(VerifyCmd::Suite { level }) => {
            let report = run_suite(level, seed_from_env());
            let passed = report.checks.iter().filter(|c| c.pass).count();
            eprintln!("{passed}/{} checks passed in {:.2}s", report.checks.len(), report.wall_time);
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {} {}: expected {}, observed {}", c.check_id, c.parameters, c.expected, c.observed);
            }
            return Ok(Outcome::Checked(to_value(&report), report.all_pass()));
        }
    };
    Ok(Outcome::Done(out))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

/// Rounds every float to 15 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            if let Some(r) = format_real(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::NotUnimodular(_)
            | Error::BadIndex(_)
            | Error::BadShape(_)
            | Error::TypeMismatch(_)
            | Error::OddType(_)
            | Error::NotMember(_)
            | Error::TauTooLow { .. }
            | Error::TooLarge(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut value, pass) = match run(cli.command) {
        Ok(Outcome::Done(v)) => (v, true),
        Ok(Outcome::Checked(v, pass)) => (v, pass),
        Err(e) => {
            eprintln!("theta-lab: {e}");
            return ExitCode::from(if usage_error(&e) { 2 } else { 1 });
        }
    };
    round_floats(&mut value);
    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
