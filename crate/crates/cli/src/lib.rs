//! Command-line front end for `wittloc`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wittloc::engine::builders::{build_grassmannian_problem, build_projective_problem};
use wittloc::engine::problem::parse_problem;
use wittloc::engine::{bott_residue, LocalizationProblem};
use wittloc::euler::{euler_rep, GroupKind};
use wittloc::field::{FieldDescriptor, FieldElement};
use wittloc::parse::{parse_field_tag, parse_form, parse_rep, parse_ring, parse_scalar};
use wittloc::quad_ext::QuadExtContext;
use wittloc::rings::{CohRing, PresentationId};
use wittloc::verify::{lam_suite, pushforward_table_suite, ring_laws_suite, witt_fp_suite, SuiteReport};
use wittloc::Error;

pub const EXIT_COMPUTE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "wittloc", version, about = "Witt-ring arithmetic and Bott residues for SL2^n and N actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical class of a form expression such as "<1> + 3*<2>".
    Witt {
        expr: String,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of an element of a presented cohomology ring.
    Ring {
        expr: String,
        #[arg(long, value_enum, default_value_t = Presentation::Bn)]
        presentation: Presentation,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Number of factors for bsl2n and bnn.
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// The square class defining a twisted point.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Euler class of a representation, e.g. "Sym(3)@1" or "2*rho(1) + rho0".
    Euler {
        rep: String,
        #[arg(long, value_enum, default_value_t = Group::Sl2n)]
        group: Group,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        json: bool,
    },
    /// Bott residue of a localization problem.
    Localize(LocalizeArgs),
    /// Runs a verification suite against its oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Presentation {
    Bsl2n,
    Bn,
    Bnn,
    Twisted,
    BnModule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Sl2n,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    P,
    Gr,
}

#[derive(Debug, Args)]
pub struct LocalizeArgs {
    #[arg(long, value_enum, conflicts_with = "problem")]
    pub builder: Option<Builder>,
    /// Dimension of the projective space: a number, `2n` or `2n-1`.
    pub dim: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub ambient: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long)]
    pub problem: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    WittFp,
    Lam,
    RingLaws,
    #[value(name = "paper-table")]
    PushforwardTable,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, required_unless_present = "suite_flag", conflicts_with = "suite_flag")]
    pub suite: Option<Suite>,
    #[arg(long = "suite", value_enum)]
    pub suite_flag: Option<Suite>,
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, default_value_t = 11)]
    pub max_p: u64,
    #[arg(long, default_value_t = 4)]
    pub max_rank: usize,
    #[arg(long, default_value_t = 4)]
    pub max_n: u32,
    #[arg(long, default_value_t = 200)]
    pub triples: usize,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn failed(e: &Error) -> Self {
        Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::UnknownGenerator { .. } => EXIT_USAGE,
        _ => EXIT_COMPUTE,
    }
}

fn render(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    } else {
        text
    }
}

fn twisted_context(field: &FieldDescriptor, a: Option<&str>) -> wittloc::Result<QuadExtContext> {
    if let Some(a) = a {
        let a = field.canonical_element(parse_scalar(a, field)?)?;
        return QuadExtContext::new(field.clone(), a);
    }
    Err(Error::BadParameters("a twisted point needs --a".into()))
}

fn run_witt(expr: &str, field: &str, json: bool) -> wittloc::Result<String> {
    let field = parse_field_tag(field)?;
    let class = parse_form(expr, &field)?;
    let value = json!({"field": field.to_string(), "class": class.to_string()});
    Ok(render(json, value, format!("{class}\n")))
}

fn run_ring(
    expr: &str,
    presentation: Presentation,
    field: &str,
    n: u32,
    a: Option<&str>,
    json: bool,
) -> wittloc::Result<String> {
    let field = parse_field_tag(field)?;
    let id = match presentation {
        Presentation::Bsl2n => PresentationId::Bsl2n(n),
        Presentation::Bn => PresentationId::Bn,
        Presentation::Bnn => PresentationId::Bnn(n),
        Presentation::Twisted => PresentationId::TwistedPoint(twisted_context(&field, a)?),
        Presentation::BnModule => PresentationId::BnTwistedModule,
    };
    let ring = CohRing::new(id, field.clone())?;
    let x = parse_ring(expr, &ring)?;
    let value = json!({
        "presentation": ring.presentation().to_string(),
        "field": field.to_string(),
        "element": x.to_string(),
        "degree": x.degree(),
    });
    Ok(render(json, value, format!("{x}\n")))
}

fn run_euler(rep: &str, group: Group, n: u32, field: &str, json: bool) -> wittloc::Result<String> {
    let field = parse_field_tag(field)?;
    let kind = match group {
        Group::Sl2n => GroupKind::SL2n(n),
        Group::N => GroupKind::N,
    };
    let rep = parse_rep(rep, kind)?;
    let e = euler_rep(&rep, &field)?;
    let value_text = e.value.as_ref().map(ToString::to_string);
    let signs: Vec<u32> = e.unresolved_signs.iter().copied().collect();
    let mut text = String::new();
    match &value_text {
        Some(v) => writeln!(text, "euler: {v}").unwrap(),
        None => writeln!(text, "euler: unknown").unwrap(),
    }
    writeln!(text, "square: {}", e.known_square).unwrap();
    writeln!(text, "determinacy: {}", e.determinacy).unwrap();
    if !signs.is_empty() {
        let list: Vec<String> = signs.iter().map(|m| format!("rho({m})")).collect();
        writeln!(text, "sign ambiguity: {}", list.join(", ")).unwrap();
    }
    let value = json!({
        "rep": rep.to_string(),
        "euler": value_text,
        "square": e.known_square.to_string(),
        "determinacy": e.determinacy.to_string(),
        "unresolved_signs": signs,
    });
    Ok(render(json, value, text))
}

/// A dimension written as a number or as `2n`, `2n-1`, `2n+1`.
fn dimension(text: &str, n: u32) -> wittloc::Result<u32> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let value = match compact.as_str() {
        "2n" => Some(2 * n),
        "2n-1" => (2 * n).checked_sub(1),
        "2n+1" => Some(2 * n + 1),
        other => other.parse().ok(),
    };
    value.ok_or_else(|| Error::Syntax { offset: 0, message: format!("bad dimension `{text}`") })
}

fn build_problem(args: &LocalizeArgs) -> wittloc::Result<LocalizationProblem> {
    if let Some(path) = &args.problem {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::BadParameters(format!("{}: {e}", path.display())))?;
        return parse_problem(&text);
    }
    let field = parse_field_tag(&args.field)?;
    let missing = |what: &str| Error::BadParameters(format!("missing {what}"));
    match args.builder {
        Some(Builder::P) => {
            let dim = dimension(args.dim.as_deref().ok_or_else(|| missing("dimension"))?, args.n)?;
            build_projective_problem(dim, args.n, &field)
        }
        Some(Builder::Gr) => {
            let m = dimension(args.m.as_deref().ok_or_else(|| missing("--m"))?, args.n)?;
            let ambient = dimension(args.ambient.as_deref().ok_or_else(|| missing("--ambient"))?, args.n)?;
            build_grassmannian_problem(m, ambient, args.n, &field)
        }
        None => Err(missing("--builder or --problem")),
    }
}

fn run_localize(args: &LocalizeArgs) -> wittloc::Result<String> {
    let problem = build_problem(args)?;
    let r = bott_residue(&problem)?;
    let components: Vec<Value> = problem
        .components
        .iter()
        .map(|c| json!({"id": c.id, "normal": c.normal.to_string()}))
        .collect();
    let value = json!({
        "group": problem.group.kind.to_string(),
        "field": problem.group.field.to_string(),
        "components": components,
        "localized": r.value.to_string(),
        "cleared": r.cleared.as_ref().map(ToString::to_string),
        "degree_zero": r.degree_zero.as_ref().map(ToString::to_string),
        "determinacy": r.determinacy.to_string(),
        "notes": r.notes,
    });
    Ok(render(args.json, value, r.to_string()))
}

fn suite_reports(args: &VerifyArgs, suite: Suite) -> wittloc::Result<Vec<SuiteReport>> {
    let field = args.field.as_deref().map(parse_field_tag).transpose()?;
    Ok(match suite {
        Suite::WittFp => {
            let primes: Vec<u64> = match &field {
                Some(f) if f.is_finite() && f.as_quad_ext().is_none() => vec![f.characteristic()],
                Some(f) => return Err(Error::UnsupportedField(format!("witt-fp runs over F_p, not {f}"))),
                None => (3..=args.max_p).filter(|&p| FieldDescriptor::finite(p).is_ok()).collect(),
            };
            vec![witt_fp_suite(&primes, args.max_rank)]
        }
        Suite::Lam => {
            let cases: Vec<(FieldDescriptor, FieldElement)> = match (&field, &args.a) {
                (Some(f), Some(a)) => vec![(f.clone(), f.canonical_element(parse_scalar(a, f)?)?)],
                (None, None) => {
                    let q = FieldDescriptor::Rationals;
                    let mut v = Vec::new();
                    for (p, a) in [(3, -1), (5, 2), (7, 3)] {
                        let f = FieldDescriptor::finite(p)?;
                        let a = f.canonical_element(FieldElement::integer(a))?;
                        v.push((f, a));
                    }
                    v.push((q.clone(), FieldElement::integer(2)));
                    v.push((q, FieldElement::integer(-1)));
                    v
                }
                _ => return Err(Error::BadParameters("lam needs both --field and --a, or neither".into())),
            };
            cases.iter().map(|(f, a)| lam_suite(f, a, args.samples, args.seed)).collect()
        }
        Suite::RingLaws => vec![ring_laws_suite(args.triples, args.seed)],
        Suite::PushforwardTable => {
            let f = field.unwrap_or(FieldDescriptor::Rationals);
            vec![pushforward_table_suite(args.max_n, &f)]
        }
    })
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let suite = args.suite.or(args.suite_flag).expect("clap requires a suite");
    let reports = suite_reports(args, suite)?;
    let passed = reports.iter().all(SuiteReport::passed);
    let stdout = if args.json {
        let mut s = serde_json::to_string_pretty(&reports).expect("serializable");
        s.push('\n');
        s
    } else {
        reports.iter().map(|r| format!("{r}\n")).collect()
    };
    let code = if passed { 0 } else { EXIT_VERIFY };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

/// Executes one parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Witt { expr, field, json } => run_witt(expr, field, *json).map(Outcome::ok),
        Command::Ring { expr, presentation, field, n, a, json } => {
            run_ring(expr, *presentation, field, *n, a.as_deref(), *json).map(Outcome::ok)
        }
        Command::Euler { rep, group, n, field, json } => run_euler(rep, *group, *n, field, *json).map(Outcome::ok),
        Command::Localize(args) => run_localize(args).map(Outcome::ok),
        Command::Verify(args) => run_verify(args),
    };
    result.unwrap_or_else(|e| Outcome::failed(&e))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}
