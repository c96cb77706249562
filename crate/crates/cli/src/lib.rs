//! Command-line front end for `rrcalc`.
//!
//! Every command prints one [`CommandResult`], as an aligned table or as
//! JSON. Exit codes: 0 on success, 1 when a verification fails, 2 on a
//! usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use rrcalc::chern::{chern_character, BundleClass};
use rrcalc::models::{
    diagonal_class, k_line_class, metric_check, MorphismDescriptor, TheoryModel,
};
use rrcalc::rational::{binomial, qi};
use rrcalc::rr::{
    canonical_degree_hypersurface, chi_curve, chi_surface, euler_characteristic_pn, grr_sides,
    hypersurface_grr_identity, structure_sheaf_chern, zeuthen_segre, AbstractCurve,
    AbstractSurface, CurveBundle, FormSingularityData, SurfaceBundle,
};
use rrcalc::verify::{run_criterion, CRITERIA, DEFAULT_SEED};
use rrcalc::{make_standard_series, Error, RingElement, RingSpec, ScalarDomain, StandardSeries};

pub mod lists;
pub mod result;

pub use lists::{parse_chern_list, parse_int_list, ChernEntry};
pub use result::CommandResult;
use result::{coefficient_table, element, rational, rationals};

const MAX_ORDER: usize = 64;
const MAX_CH_ORDER: u32 = 8;
const MAX_DIM: u32 = 12;
const MAX_TWIST: i64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "rrcalc", version, about = "Exact characteristic-class and Riemann-Roch calculator")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of t/(1 - e^{-t}).
    Todd {
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Chern character in terms of Chern class symbols.
    Ch {
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        rank: i64,
        /// Comma-separated c_1, c_2, ...: symbol names, or 0.
        #[arg(long, default_value = "c1,c2,c3", allow_hyphen_values = true)]
        chern: String,
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
    /// Euler characteristics.
    #[command(subcommand)]
    Chi(ChiCommand),
    /// Verification reports.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Diagonal class of P^n x P^n and its coefficient matrix.
    Diagonal {
        #[arg(long)]
        dim: u32,
        #[arg(long, value_enum, default_value_t = TheoryArg::Chow)]
        theory: TheoryArg,
    },
    /// Canonical degree of a hypersurface and the degree-2 identity.
    Adjunction {
        #[arg(long, default_value_t = 2)]
        dim: u32,
        #[arg(long, allow_negative_numbers = true)]
        deg: i64,
    },
    /// Chern classes of the structure sheaf of a codimension-d subvariety.
    SheafChern {
        #[arg(long)]
        codim: u32,
    },
    /// deg c_2(T_S) from the divisor and singular points of a 1-form.
    Zeuthen {
        #[arg(long, allow_negative_numbers = true)]
        dk: i64,
        #[arg(long, allow_negative_numbers = true)]
        d2: i64,
        /// Comma-separated lengths of the singular points.
        #[arg(long, default_value = "")]
        lengths: String,
    },
    /// Run every acceptance grid.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    Chow,
    K,
}

#[derive(Subcommand, Debug)]
pub enum ChiCommand {
    /// chi(P^n, O(d)) via K-theory and via Chow with Todd.
    Pn {
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist: i64,
    },
    /// Riemann-Roch on a curve.
    Curve(CurveArgs),
    /// Riemann-Roch on a surface.
    Surface(SurfaceArgs),
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long)]
    pub genus: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub rank: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub deg: i64,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub k2: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub chitop: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub rank: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub c1k: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub c1sq: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub c2: i64,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Riemann-Roch residual for O(d) along P^n -> pt or P^m in P^n.
    Grr {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        immersion: Option<u32>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist: i64,
    },
    /// Group law of Chow twisted by (1 - e^{-t})/t against u + v - uv.
    TwistLaw {
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
}

/// Failure modes of a command.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or values; exit 2.
    Usage(String),
    /// A computation reported an inconsistency; exit 1 with a result.
    Verification(CommandResult),
}

type Outcome = Result<CommandResult, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_le<T: PartialOrd + std::fmt::Display>(name: &str, v: T, max: T) -> Result<(), Failure> {
    if v > max {
        return Err(usage(format!("--{name} must be at most {max}")));
    }
    Ok(())
}

fn check_twist(name: &str, v: i64) -> Result<(), Failure> {
    if v.abs() > MAX_TWIST {
        return Err(usage(format!("--{name} must be within ±{MAX_TWIST}")));
    }
    Ok(())
}

/// Turn a library error into an outcome: inconsistencies become failed
/// results, everything else is a usage error.
fn lift(mut partial: CommandResult) -> impl FnMut(Error) -> Failure {
    move |e| match e {
        Error::GrrMismatch { .. } | Error::SolverInconsistent(_) | Error::NonIntegerChi(_) => {
            partial.output("error", e.to_string());
            partial.pass = Some(false);
            Failure::Verification(std::mem::take(&mut partial))
        }
        other => Failure::Usage(other.to_string()),
    }
}

pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::Todd { order } => todd(*order),
        Command::Ch { rank, chern, order } => ch(*rank, chern, *order),
        Command::Chi(ChiCommand::Pn { dim, twist }) => chi_pn(*dim, *twist),
        Command::Chi(ChiCommand::Curve(a)) => curve(a),
        Command::Chi(ChiCommand::Surface(a)) => surface(a),
        Command::Verify(VerifyCommand::Grr { dim, immersion, twist }) => grr(*dim, *immersion, *twist),
        Command::Verify(VerifyCommand::TwistLaw { order }) => twist_law(*order),
        Command::Diagonal { dim, theory } => diagonal(*dim, *theory),
        Command::Adjunction { dim, deg } => adjunction(*dim, *deg),
        Command::SheafChern { codim } => sheaf_chern(*codim),
        Command::Zeuthen { dk, d2, lengths } => zeuthen(*dk, *d2, lengths),
        Command::Suite { seed } => Ok(suite(*seed)),
    }
}

fn todd(order: usize) -> Outcome {
    check_le("order", order, MAX_ORDER)?;
    let s = make_standard_series(StandardSeries::Todd, order);
    let mut r = CommandResult::new("todd");
    r.input("order", order).output("coefficients", rationals(s.coeffs()));
    Ok(r)
}

fn ch(rank: i64, chern: &str, order: u32) -> Outcome {
    check_le("order", order, MAX_CH_ORDER)?;
    check_twist("rank", rank)?;
    let entries = parse_chern_list(chern).map_err(usage)?;
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        match e {
            ChernEntry::Symbol(s) => {
                names.push(s.clone());
                weights.push(i as u32 + 1);
            }
            ChernEntry::Number(c) if num_is_zero(c) => {}
            ChernEntry::Number(_) => {
                return Err(usage("numeric Chern classes must be 0; use a symbol otherwise"))
            }
        }
    }
    let bounds: Vec<u32> = weights.iter().map(|w| order / w).collect();
    let spec = RingSpec::weighted(&names, &bounds, &weights, Some(order), ScalarDomain::Rationals)
        .map_err(|e| usage(e.to_string()))?;
    let mut next = 0;
    let classes: Vec<RingElement> = entries
        .iter()
        .map(|e| match e {
            ChernEntry::Symbol(_) => {
                next += 1;
                RingElement::var(&spec, next - 1)
            }
            ChernEntry::Number(_) => RingElement::zero(&spec),
        })
        .collect();
    let bundle = BundleClass::from_chern_classes(&spec, rank, &classes).map_err(|e| usage(e.to_string()))?;
    let character = chern_character(&bundle).map_err(|e| usage(e.to_string()))?;
    let components: Vec<Value> = (0..=order).map(|d| element(&character.graded_component(d))).collect();
    let mut r = CommandResult::new("ch");
    r.input("rank", rank)
        .input("chern", chern)
        .input("order", order)
        .output("ch", element(&character))
        .output("components", components);
    Ok(r)
}

fn num_is_zero(c: &rrcalc::BigRational) -> bool {
    *c == qi(0)
}

fn chi_pn(dim: u32, twist: i64) -> Outcome {
    check_le("dim", dim, MAX_DIM)?;
    check_twist("twist", twist)?;
    let mut r = CommandResult::new("chi pn");
    r.input("dim", dim).input("twist", twist);
    let expected = binomial(dim as i64 + twist, dim as usize);
    let chi = euler_characteristic_pn(dim, twist).map_err(lift(r.clone()))?;
    r.output("chi", chi.to_string())
        .output("expected", expected.to_string());
    r.pass = Some(chi == expected);
    Ok(r)
}

fn curve(a: &CurveArgs) -> Outcome {
    let c = AbstractCurve::new(a.genus).map_err(|e| usage(e.to_string()))?;
    let mut r = CommandResult::new("chi curve");
    r.input("genus", a.genus).input("rank", a.rank).input("deg", a.deg);
    let chi = chi_curve(&c, &CurveBundle { rank: a.rank, deg_c1: a.deg }).map_err(lift(r.clone()))?;
    r.output("chi", chi.to_string());
    Ok(r)
}

fn surface(a: &SurfaceArgs) -> Outcome {
    let s = AbstractSurface { k2: a.k2, chi_top: a.chitop };
    let e = SurfaceBundle {
        rank: a.rank,
        c1_dot_k: a.c1k,
        c1_sq: a.c1sq,
        deg_c2: a.c2,
    };
    let mut r = CommandResult::new("chi surface");
    r.input("k2", a.k2)
        .input("chitop", a.chitop)
        .input("rank", a.rank)
        .input("c1k", a.c1k)
        .input("c1sq", a.c1sq)
        .input("c2", a.c2);
    let chi = chi_surface(&s, &e).map_err(lift(r.clone()))?;
    r.output("chi", chi.to_string());
    Ok(r)
}

fn grr(dim: u32, immersion: Option<u32>, twist: i64) -> Outcome {
    check_le("dim", dim, MAX_DIM)?;
    check_twist("twist", twist)?;
    let f = match immersion {
        None => MorphismDescriptor::point_projection(dim),
        Some(m) => MorphismDescriptor::linear_immersion(m, dim).map_err(|e| usage(e.to_string()))?,
    };
    let source_dim = immersion.unwrap_or(dim);
    let mut r = CommandResult::new("verify grr");
    r.input("dim", dim).input("twist", twist);
    if let Some(m) = immersion {
        r.input("immersion", m);
    }
    let sides = grr_sides(&f, &k_line_class(source_dim, twist)).map_err(lift(r.clone()))?;
    let residual = &sides.lhs - &sides.rhs;
    r.output("ch_of_pushforward", element(&sides.lhs))
        .output("todd_corrected_pushforward", element(&sides.rhs))
        .output("residual", element(&residual));
    r.pass = Some(residual.is_zero());
    Ok(r)
}

fn twist_law(order: u32) -> Outcome {
    check_le("order", order, 24)?;
    if order == 0 {
        return Err(usage("--order must be positive"));
    }
    let theory = TheoryModel::exp_twisted_chow(order as usize);
    let mut r = CommandResult::new("verify twist-law");
    r.input("order", order);
    let law = theory.group_law(order).map_err(lift(r.clone()))?;
    let expected = RingElement::parse(law.spec(), "x + y - x*y").map_err(lift(r.clone()))?;
    r.output("group_law", element(&law))
        .output("expected", element(&expected));
    r.pass = Some(law == expected);
    Ok(r)
}

fn diagonal(dim: u32, theory: TheoryArg) -> Outcome {
    check_le("dim", dim, MAX_DIM)?;
    let (model, name) = match theory {
        TheoryArg::Chow => (TheoryModel::chow(), "chow"),
        TheoryArg::K => (TheoryModel::ktheory(), "k"),
    };
    let mut r = CommandResult::new("diagonal");
    r.input("dim", dim).input("theory", name);
    let delta = diagonal_class(&model, dim).map_err(lift(r.clone()))?;
    let metric = metric_check(&model, dim).map_err(lift(r.clone()))?;
    let matrix: Vec<Value> = metric.matrix.iter().map(rationals).collect();
    r.output("diagonal", element(&delta))
        .output("coefficients", coefficient_table(&delta))
        .output("matrix", matrix)
        .output("determinant", rational(&metric.determinant));
    r.pass = Some(metric.unit);
    Ok(r)
}

fn adjunction(dim: u32, deg: i64) -> Outcome {
    check_le("dim", dim, MAX_DIM)?;
    check_twist("deg", deg)?;
    let mut r = CommandResult::new("adjunction");
    r.input("dim", dim).input("deg", deg);
    let k = canonical_degree_hypersurface(dim, deg).map_err(|e| usage(e.to_string()))?;
    let residual = hypersurface_grr_identity(dim, deg).map_err(|e| usage(e.to_string()))?;
    r.output("canonical_degree", k.to_string())
        .output("identity_residual", element(&residual));
    if dim == 2 {
        r.output("genus", (k / 2i32 + 1i32).to_string());
    }
    r.pass = Some(residual.is_zero());
    Ok(r)
}

fn sheaf_chern(codim: u32) -> Outcome {
    if codim == 0 {
        return Err(usage("--codim must be positive"));
    }
    check_le("codim", codim, 16)?;
    let s = structure_sheaf_chern(codim).map_err(|e| usage(e.to_string()))?;
    let mut r = CommandResult::new("sheaf-chern");
    r.input("codim", codim)
        .output("classes", s.classes.iter().map(element).collect::<Vec<_>>())
        .output("top_multiple_of_y", rational(&s.top_multiple))
        .output(
            "sign_note",
            "c_d = (-1)^(d-1) (d-1)! Y by Newton's identity; the variant (-1)^d (d-1)! Y has the opposite sign",
        );
    let lower = s.classes[..codim as usize - 1].iter().all(RingElement::is_zero);
    r.pass = Some(lower);
    Ok(r)
}

fn zeuthen(dk: i64, d2: i64, lengths: &str) -> Outcome {
    let ls = parse_int_list(lengths).map_err(usage)?;
    let data = FormSingularityData::new(dk, d2, &ls).map_err(|e| usage(e.to_string()))?;
    let v = zeuthen_segre(&data).map_err(|e| usage(e.to_string()))?;
    let mut r = CommandResult::new("zeuthen");
    r.input("dk", dk)
        .input("d2", d2)
        .input("lengths", ls)
        .output("c2", v.to_string());
    Ok(r)
}

/// Runs every criterion on its own thread and merges in criterion order.
pub fn suite(seed: u64) -> CommandResult {
    let reports = std::thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, _)| scope.spawn(move || run_criterion(id, seed).expect("known criterion")))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect::<Vec<_>>()
    });
    let mut r = CommandResult::new("suite");
    r.input("seed", seed);
    for rep in &reports {
        let verdict = if rep.pass() { "PASS" } else { "FAIL" };
        r.output(
            &format!("criterion_{:02}", rep.id),
            format!("{verdict} {} ({} cases)", rep.title, rep.cases),
        );
        if !rep.failures.is_empty() {
            r.output(&format!("failures_{:02}", rep.id), rep.failures.clone());
        }
        if !rep.notes.is_empty() {
            r.output(&format!("notes_{:02}", rep.id), rep.notes.clone());
        }
    }
    let passed = reports.iter().filter(|r| r.pass()).count();
    r.output("passed", format!("{passed}/{}", reports.len()));
    r.pass = Some(passed == reports.len());
    r
}

fn emit(out: &mut dyn Write, r: &CommandResult, format: Format) {
    let text = match format {
        Format::Json => r.to_json() + "\n",
        Format::Table => r.to_table(),
    };
    let _ = out.write_all(text.as_bytes());
}

/// Parses `argv` (including the program name), runs the command and writes
/// the result. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            emit(out, &r, cli.format);
            if r.pass == Some(false) {
                1
            } else {
                0
            }
        }
        Err(Failure::Verification(r)) => {
            emit(out, &r, cli.format);
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
