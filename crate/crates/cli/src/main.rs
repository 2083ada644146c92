use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nsym::composition::{epsilon, f_set, g_set, hilbert_dim, Composition};
use nsym::nsym::text::{parse_expr, Expr};
use nsym::nsym::{internal_product_with, Basis, NsymElement, OracleConfig};
use nsym::peak::{PeakBasis, PeakContext, PeakCoords};
use nsym::transforms::{big_theta_q, det_formula, det_theta, theta_matrix, theta_q};
use nsym::verify::Suite;
use nsym::{Error, Scalar};

#[derive(Parser)]
#[command(name = "nsym", version, about = "Noncommutative symmetric functions and higher-order peak algebras")]
struct Cli {
    /// Order N of the peak algebra (also the conductor for `z` in coefficients).
    #[arg(long = "N", id = "N", global = true)]
    big_n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest weight the permutation oracle may tabulate.
    #[arg(long, global = true, default_value_t = nsym::nsym::DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrites an element in another basis.
    Expand {
        expr: String,
        #[arg(long, default_value = "R")]
        to: String,
    },
    /// Converts between the text and JSON forms without changing basis.
    Convert { expr: String },
    /// Dimensions of Sym_n(N) for n = 0..max-n.
    Hilbert {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Runs a verification suite.
    Verify {
        suite: String,
        /// Largest weight (alias of --max-n).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Rational parameter; repeat for several.
        #[arg(long)]
        q: Vec<String>,
        /// Series truncation order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Internal product F * G.
    Internal {
        left: String,
        right: String,
        /// Output basis; defaults to the basis shared by both operands, else R.
        #[arg(long)]
        to: Option<String>,
    },
    /// θ_q(F), or Θ_q(F) with --normalized (Θ_1 = Ψ); q is rational or `zeta`.
    Theta {
        expr: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        normalized: bool,
        #[arg(long, default_value = "S")]
        to: String,
    },
    /// Determinant of θ_q on Sym_n, with the closed form.
    DetTheta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: String,
    },
    /// The series t (or t_ζ) in the Σ basis and its inversion identity.
    Tangent {
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        zeta: bool,
    },
    /// Lists F_n, G_n and the bijection ε.
    Bases {
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    NotMember(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

struct Env {
    order: Option<usize>,
    format: Format,
    oracle: OracleConfig,
}

impl Env {
    fn ctx(&self, order: Option<usize>) -> Result<PeakContext, Failure> {
        let n = order
            .or(self.order)
            .ok_or_else(|| Failure::Usage("this basis needs --N".into()))?;
        Ok(PeakContext::new(n)?)
    }

    fn emit(&self, text: String, value: Value) -> String {
        match self.format {
            Format::Text => text,
            Format::Json => value.to_string(),
        }
    }
}

fn read_expr(s: &str, env: &Env) -> Result<Expr, Failure> {
    if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| Failure::Lib(Error::Parse {
            pos: e.column().saturating_sub(1),
            msg: e.to_string(),
        }))?;
        let e = Expr::from_json(&v)?;
        Ok(e)
    } else {
        Ok(parse_expr(s, env.order)?)
    }
}

/// An input element: plain `S`/`R`, or coordinates in a peak basis.
enum Input {
    Plain(NsymElement),
    Peak(PeakCoords),
}

fn interpret(e: Expr, env: &Env) -> Result<Input, Failure> {
    match e.basis.as_str() {
        "" | "S" | "R" => {
            let basis: Basis = if e.basis.is_empty() { Basis::S } else { e.basis.parse()? };
            Ok(Input::Plain(NsymElement::from_terms(basis, e.terms)))
        }
        name => {
            let basis: PeakBasis = name.parse().map_err(|_| {
                Failure::Lib(Error::Parse {
                    pos: 0,
                    msg: format!("unknown basis {name:?}"),
                })
            })?;
            let order = match basis {
                PeakBasis::Pi => 2,
                _ => e
                    .order
                    .or(env.order)
                    .ok_or_else(|| Failure::Usage(format!("{name} coordinates need --N")))?,
            };
            Ok(Input::Peak(PeakCoords::from_terms(basis, order, e.terms)))
        }
    }
}

fn to_element(input: &Input, env: &Env) -> Result<NsymElement, Failure> {
    match input {
        Input::Plain(e) => Ok(e.clone()),
        Input::Peak(c) => Ok(env.ctx(Some(c.order))?.expand(c)?),
    }
}

/// The element, its input basis name, and the order carried by peak coordinates.
fn parse_element(s: &str, env: &Env) -> Result<(NsymElement, String, Option<usize>), Failure> {
    let input = interpret(read_expr(s, env)?, env)?;
    let (name, order) = match &input {
        Input::Plain(e) => (e.basis().to_string(), None),
        Input::Peak(c) => (c.basis.to_string(), Some(c.order)),
    };
    Ok((to_element(&input, env)?, name, order))
}

fn render(f: &NsymElement, target: &str, env: &Env, order: Option<usize>) -> Out {
    match target {
        "S" | "R" => {
            let e = f.to_basis(target.parse()?);
            Ok(env.emit(e.to_string(), e.to_json()))
        }
        "Sigma" | "rho" | "T" => {
            let basis: PeakBasis = target.parse()?;
            let ctx = env.ctx(env.order.or(order))?;
            match ctx.membership_in(f, basis)? {
                Some(c) => Ok(env.emit(c.to_string(), c.to_json())),
                None => Err(Failure::NotMember(format!(
                    "NOT_MEMBER: element is not in Sym({})",
                    ctx.order()
                ))),
            }
        }
        other => Err(Failure::Usage(format!(
            "unknown target basis {other:?}; expected S, R, Sigma, rho or T"
        ))),
    }
}

fn parse_q(s: &str, env: &Env) -> Result<Scalar, Failure> {
    if s == "zeta" {
        let n = env
            .order
            .ok_or_else(|| Failure::Usage("q = zeta needs --N".into()))?;
        return Ok(Scalar::zeta(n));
    }
    Ok(Scalar::parse(s, env.order)?)
}

fn run(cli: Cli) -> Out {
    let env = Env {
        order: cli.big_n,
        format: cli.format,
        oracle: OracleConfig::with_limit(cli.oracle_limit),
    };
    match cli.command {
        Command::Expand { expr, to } => {
            let (f, _, order) = parse_element(&expr, &env)?;
            render(&f, &to, &env, order)
        }
        Command::Convert { expr } => {
            let json_in = expr.trim_start().starts_with('{');
            let e = read_expr(&expr, &env)?;
            let value = match interpret(e, &env)? {
                Input::Plain(e) if json_in => Value::String(e.to_string()),
                Input::Peak(c) if json_in => Value::String(c.to_string()),
                Input::Plain(e) => e.to_json(),
                Input::Peak(c) => c.to_json(),
            };
            Ok(match value {
                Value::String(s) => s,
                v => v.to_string(),
            })
        }
        Command::Hilbert { max_n } => {
            let order = env.ctx(None)?.order();
            let dims: Vec<u64> = (0..=max_n).map(|n| hilbert_dim(n, order)).collect();
            for (n, &d) in dims.iter().enumerate() {
                let g = g_set(n, order).len() as u64;
                if g != d {
                    return Err(Failure::Usage(format!("n = {n}: series gives {d}, |G| = {g}")));
                }
            }
            let text = dims.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            Ok(env.emit(text, json!({ "N": order, "dims": dims })))
        }
        Command::Verify { suite, n, max_n, q, order } => {
            let suite: Suite = suite
                .parse()
                .map_err(|_| Failure::Usage(format!("unknown suite {suite:?}")))?;
            let mut scale = suite.default_scale();
            if let Some(o) = env.order {
                PeakContext::new(o)?;
                scale.orders = vec![o];
            }
            if let Some(m) = max_n.or(n) {
                scale.max_n = m;
                scale.aux_n = scale.aux_n.min(m);
            }
            if !q.is_empty() {
                scale.q = q.iter().map(|s| parse_q(s, &env)).collect::<Result<_, _>>()?;
            }
            if let Some(o) = order {
                scale.series_order = o;
            }
            let report = suite.run(&scale)?;
            let text = report.to_string();
            let value = json!({
                "suite": suite.name(),
                "passed": report.passed(),
                "checks": report.checks,
                "failure": report.failure,
                "notes": report.notes,
            });
            let out = env.emit(text, value);
            if report.passed() {
                Ok(out)
            } else {
                print_out(&out);
                Err(Failure::Verify)
            }
        }
        Command::Internal { left, right, to } => {
            let (f, name, order) = parse_element(&left, &env)?;
            let (g, right_name, _) = parse_element(&right, &env)?;
            let name = if name == right_name { name } else { "R".to_string() };
            match (f.weight(), g.weight()) {
                (Some(a), Some(b)) if f.is_homogeneous() && g.is_homogeneous() && a != b => {
                    return Err(Error::WeightMismatch { left: a, right: b }.into());
                }
                _ if !f.is_homogeneous() || !g.is_homogeneous() => {
                    return Err(Error::Inhomogeneous.into());
                }
                _ => {}
            }
            let p = internal_product_with(&f, &g, &env.oracle)?;
            render(&p, to.as_deref().unwrap_or(&name), &env, order)
        }
        Command::Theta { expr, q, normalized, to } => {
            let (f, _, order) = parse_element(&expr, &env)?;
            let q = parse_q(&q, &env)?;
            let image = if normalized {
                big_theta_q(&f, &q)
            } else {
                theta_q(&f, &q)
            };
            render(&image, &to, &env, order)
        }
        Command::DetTheta { n, q } => {
            let q = parse_q(&q, &env)?;
            let (det, formula) = (det_theta(n, &q), det_formula(n, &q));
            let text = format!("{det}");
            let value = json!({
                "n": n,
                "q": q.to_json(),
                "det": det.to_json(),
                "formula": formula.to_json(),
                "matrix": theta_matrix(n, &q).to_json(),
            });
            Ok(env.emit(text, value))
        }
        Command::Tangent { order, zeta } => {
            let ctx = env.ctx(None)?;
            let series = if zeta { ctx.tangent_zeta(order) } else { ctx.tangent(order) };
            let check = if zeta { ctx.check_tangent_zeta(order)? } else { ctx.check_tangent(order)? };
            let mut lines = Vec::new();
            let mut coeffs = Vec::new();
            for d in 1..=order {
                let c = ctx
                    .membership(series.coeff(d))?
                    .expect("tangent coefficients are Σ combinations");
                lines.push(format!("{d}: {c}"));
                coeffs.push(c.to_json());
            }
            lines.push(format!(
                "{}: {}",
                check.name,
                if check.passed() { "PASS" } else { "FAIL" }
            ));
            let value = json!({
                "N": ctx.order(),
                "zeta": zeta,
                "coeffs": coeffs,
                "identity": check.name,
                "passed": check.passed(),
            });
            let out = env.emit(lines.join("\n"), value);
            if check.passed() {
                Ok(out)
            } else {
                print_out(&out);
                Err(Failure::Verify)
            }
        }
        Command::Bases { n } => {
            let order = env.ctx(None)?.order();
            let f = f_set(n, order);
            let g = g_set(n, order);
            let pairs: Vec<(Composition, Composition)> = g
                .iter()
                .map(|i| Ok((i.clone(), epsilon(i, order)?)))
                .collect::<Result<_, Error>>()?;
            let mut lines = vec![
                format!("F: {}", f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
                format!("G: {}", g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
            ];
            lines.extend(pairs.iter().map(|(i, k)| format!("epsilon {i} -> {k}")));
            let value = json!({
                "N": order,
                "n": n,
                "F": f.iter().map(|c| c.parts().to_vec()).collect::<Vec<_>>(),
                "G": g.iter().map(|c| c.parts().to_vec()).collect::<Vec<_>>(),
                "epsilon": pairs
                    .iter()
                    .map(|(i, k)| json!({ "G": i.parts(), "F": k.parts() }))
                    .collect::<Vec<_>>(),
            });
            Ok(env.emit(lines.join("\n"), value))
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn print_out(s: &str) {
    let _ = writeln!(std::io::stdout(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print_out(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NotMember(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity { .. } => ExitCode::from(4),
                Error::Cache(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
