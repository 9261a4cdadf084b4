//! The `mpv` command line: document parsing, command dispatch and output.
//!
//! Exit codes: `0` success, `2` unreadable or malformed input, `3`
//! logarithmic pole (component ids on the error stream), `4` unmet
//! precondition, `5` failed internal check.

pub mod document;
pub mod expr;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};

pub use document::{parse_config, with_hodge_classes, ConfigDocument, DocError, ParsedConfig};
pub use expr::{parse_expr, ExprError, Symbols};

use crate::exactring::{format_rational, parse_rational, rat, scaled, Rational, RingElem, RingError, Style};
use crate::scenarios::{self, random_canonical, Family, Scenario, ScenarioError, ScenarioId};
use crate::stratconfig::{Realization, StratifiedConfig};
use crate::surfblow::{blowup, invariance_report, BlowupCenter, BlowupError, PvStatus};
use crate::zetapv::{
    self, alt_zeta_pv, converging_integral, delete_unit_components, functional_equation_check, hodge_def1, hodge_z_at,
    log_poles, pv, pv_from_resolution, specialize, unit_components, zeta, ZetaError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LOG_POLE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Json,
}

impl Format {
    fn style(self) -> Style {
        match self {
            Format::Pretty => Style::Pretty,
            Format::Json => Style::Machine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RealizationArg {
    Motivic,
    Hodge,
}

/// Renders an exact value.
pub fn emit(x: &RingElem, m: i64, format: Format) -> String {
    x.render(m, format.style())
}

#[derive(Debug, Parser)]
#[command(name = "mpv", version, about = "Exact motivic principal value integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Configuration document (JSON).
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Defaults to motivic when every stratum has an `L` class.
    #[arg(long, value_enum)]
    realization: Option<RealizationArg>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Principal value integral.
    Pv {
        #[command(flatten)]
        input: Input,
        /// Omit the `L^-n` prefactor.
        #[arg(long)]
        unnormalized: bool,
    },
    /// Zeta function in `T`, or its value at `--s`.
    Zeta {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
    },
    /// Hodge-level PV; `--a` uses the shifted zeta function, `--s` the converging integral.
    HodgePv {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "s")]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
    },
    /// Blows up a point of a surface and writes the new document.
    Blowup {
        config: PathBuf,
        /// `free`, `curve:<id>`, `point:<id>,<id>` or a name from `points`.
        #[arg(long)]
        center: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Id of the exceptional curve.
        #[arg(long)]
        id: Option<String>,
    },
    /// Runs the identities that apply to the document.
    Check { config: PathBuf },
    /// Builds a named scenario and prints its PV.
    Scenario {
        /// e.g. `example34b`, `p1points:3/2,1/2,-1`, `random-p1`.
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Writes the configuration document.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Evaluates the PV at `L = q` or `uv = q`.
    Specialize {
        config: PathBuf,
        #[arg(long = "L", conflicts_with = "uv", required_unless_present = "uv")]
        l: Option<String>,
        #[arg(long)]
        uv: Option<String>,
    },
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        let code = match &e {
            ZetaError::LogarithmicPole(_) => EXIT_LOG_POLE,
            ZetaError::Scaling { .. } => EXIT_PARSE,
            ZetaError::Internal(_) => EXIT_INTERNAL,
            ZetaError::Ring(RingError::DenominatorVanishes { .. } | RingError::PoleAtPoint) => EXIT_PRECONDITION,
            ZetaError::Ring(_) => EXIT_INTERNAL,
            _ => EXIT_PRECONDITION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<BlowupError> for Failure {
    fn from(e: BlowupError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Unknown(_) => Failure::new(EXIT_PARSE, e.to_string()),
            ScenarioError::ConstraintViolated(_) => Failure::new(EXIT_PRECONDITION, e.to_string()),
        }
    }
}

fn read_config(path: &Path) -> Result<ParsedConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_config(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))
}

fn fraction_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::new(EXIT_PARSE, format!("--{name}: {text:?} is not a fraction")))
}

fn require_pv_defined(c: &StratifiedConfig) -> Result<(), Failure> {
    let poles = log_poles(c);
    if poles.is_empty() {
        Ok(())
    } else {
        Err(ZetaError::LogarithmicPole(poles).into())
    }
}

fn realization(c: &StratifiedConfig, arg: Option<RealizationArg>) -> Realization {
    match arg {
        Some(RealizationArg::Motivic) => Realization::Motivic,
        Some(RealizationArg::Hodge) => Realization::Hodge,
        None if c.has_realization(Realization::Motivic) => Realization::Motivic,
        None => Realization::Hodge,
    }
}

fn line(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))
}

fn cmd_pv(input: &Input, unnormalized: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_config(&input.config)?;
    require_pv_defined(&p.config)?;
    let r = realization(&p.config, input.realization);
    let v = pv(&p.config, r, !unnormalized)?;
    line(out, &v.render(input.format.style()))
}

fn cmd_zeta(input: &Input, s: Option<i64>, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_config(&input.config)?;
    let r = realization(&p.config, input.realization);
    let z = zeta(&p.config, r)?;
    let value = match s {
        None => z.expr.clone(),
        Some(s) => z.at_s(s).map_err(|e| {
            let poles = log_poles(&p.config);
            if s == 1 && !poles.is_empty() {
                Failure::from(ZetaError::LogarithmicPole(poles))
            } else {
                Failure::from(ZetaError::Ring(e))
            }
        })?,
    };
    line(out, &emit(&value, z.m, input.format))
}

fn cmd_hodge_pv(
    config: &Path,
    format: Format,
    a: Option<&str>,
    s: Option<i64>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let p = read_config(config)?;
    let c = with_hodge_classes(&p.config);
    let (value, m) = match (a, s) {
        (Some(a), _) => {
            require_pv_defined(&c)?;
            let v = alt_zeta_pv(&c, &fraction_arg("a", a)?)?;
            (v.expr, v.m)
        }
        (None, Some(s)) => (converging_integral(&c, s)?, c.m),
        (None, None) => {
            require_pv_defined(&c)?;
            let v = hodge_def1(&c)?;
            (v.expr, v.m)
        }
    };
    line(out, &emit(&value, m, format))
}

fn cmd_blowup(
    config: &Path,
    center: &str,
    out_path: Option<&Path>,
    id: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let p = read_config(config)?;
    let s = p.surface()?;
    let center = s.center(center)?;
    let id = id.map(str::to_string).unwrap_or_else(|| s.fresh_id("E"));
    let next = blowup(&s, &center, &id)?;
    let parsed = ParsedConfig {
        config: next.config,
        points: next.points,
        closed: None,
    };
    let text = ConfigDocument::from_parsed(&parsed).to_json();
    match out_path {
        Some(path) => write_file(path, &format!("{text}\n")),
        None => line(out, &text),
    }
}

/// Shifts `a = k/m` with `a + alpha_i > 0` for every component.
fn admissible_shifts(c: &StratifiedConfig, count: usize) -> Vec<Rational> {
    let floor = c
        .components
        .iter()
        .map(|comp| -comp.mult.alpha())
        .fold(Rational::zero(), |acc, x| if x > acc { x } else { acc });
    let start = scaled(&floor, c.m).unwrap_or(0) + 1;
    (0..count as i64).map(|k| rat(start + k, c.m)).collect()
}

struct Report<'a> {
    out: &'a mut dyn Write,
    failed: bool,
}

impl Report<'_> {
    fn item(&mut self, name: &str, outcome: Result<bool, String>) -> Result<(), Failure> {
        let text = match outcome {
            Ok(true) => format!("PASS {name}"),
            Ok(false) => {
                self.failed = true;
                format!("FAIL {name}")
            }
            Err(reason) => format!("SKIP {name}: {reason}"),
        };
        line(self.out, &text)
    }
}

fn same(a: Result<RingElem, ZetaError>, b: Result<RingElem, ZetaError>) -> Result<bool, String> {
    match (a, b) {
        (Ok(x), Ok(y)) => Ok(x.equals(&y)),
        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
    }
}

fn cmd_check(config: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_config(config)?;
    let c = &p.config;
    let mut report = Report { out, failed: false };
    report.item("document validates", Ok(c.validate().is_valid()))?;
    let poles = log_poles(c);
    if !poles.is_empty() {
        return Err(ZetaError::LogarithmicPole(poles).into());
    }

    if !c.components.is_empty() && c.components.iter().all(|x| x.mult.is_resolution()) {
        let outcome = match pv_from_resolution(c, realization(c, None)) {
            Ok(_) => Ok(true),
            Err(ZetaError::Internal(_)) => Ok(false),
            Err(e) => Err(e.to_string()),
        };
        report.item("zeta at s = 1 equals PV with alpha = nu + N", outcome)?;
    }

    let h = with_hodge_classes(c);
    report.item(
        "hodge: limit T -> 1 of Z(T) equals PV",
        same(
            hodge_def1(&h).map(|v| v.expr),
            pv(&h, Realization::Hodge, true).map(|v| v.expr),
        ),
    )?;
    for a in admissible_shifts(&h, 3) {
        report.item(
            &format!(
                "hodge: shifted zeta with a = {} at s = -1 equals PV",
                format_rational(&a)
            ),
            same(
                alt_zeta_pv(&h, &a).map(|v| v.expr),
                pv(&h, Realization::Hodge, true).map(|v| v.expr),
            ),
        )?;
    }
    if c.components.iter().all(|x| x.mult.alpha().is_positive()) {
        for s in 1..=5 {
            report.item(
                &format!("hodge: converging integral at s = {s} equals Z((uv)^-{s})"),
                same(converging_integral(&h, s), hodge_z_at(&h, s)),
            )?;
        }
    }
    if c.has_realization(Realization::Motivic) && h.has_realization(Realization::Hodge) {
        let motivic = pv(c, Realization::Motivic, true)?;
        let hodge = pv(&h, Realization::Hodge, true)?;
        let outcome = match zetapv::hodge_to_motivic(&hodge) {
            Some(x) => Ok(x.expr.equals(&motivic.expr)),
            None => Err("Hodge value depends on u and v separately".to_string()),
        };
        report.item("motivic and Hodge values agree under uv -> L", outcome)?;
    }

    let units = unit_components(c);
    if !units.is_empty() {
        let r = realization(c, None);
        let deleted = delete_unit_components(c, &units).and_then(|d| pv(&d, r, true).map(|v| v.expr));
        report.item(
            &format!("deleting {} leaves PV unchanged", units.join(", ")),
            same(deleted, pv(c, r, true).map(|v| v.expr)),
        )?;
    }

    if let Some(cs) = &p.closed {
        let alphas = c.components.iter().map(|x| (x.id.clone(), x.mult.alpha())).collect();
        let r = realization(c, None);
        let outcome = functional_equation_check(cs, &alphas, r)
            .map(|d| d.holds)
            .map_err(|e| e.to_string());
        report.item("duality: D(PVu) = L^-n PVu", outcome)?;
    }

    if let Ok(s) = p.surface() {
        let after = blowup(&s, &BlowupCenter::Free, &s.fresh_id("E"))?;
        let r = realization(c, None);
        let outcome = invariance_report(&s, &after, r)
            .equal
            .ok_or_else(|| "PV undefined".to_string());
        report.item("blowing up a free point leaves PV unchanged", outcome)?;
    }

    if report.failed {
        Err(Failure::new(EXIT_INTERNAL, "some checks failed"))
    } else {
        Ok(())
    }
}

fn stage_line(label: &str, status: &PvStatus, format: Format) -> String {
    match status {
        PvStatus::Defined(v) => format!("{label}: {}", v.render(format.style())),
        other => format!("{label}: {other}"),
    }
}

fn cmd_scenario(
    name: &str,
    seed: Option<u64>,
    out_path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let family = match name {
        "random-p1" => Some(Family::P1),
        "random-p2lines" => Some(Family::P2Lines),
        _ => None,
    };
    let scenario = match family {
        Some(f) => Scenario::Config(random_canonical(seed.unwrap_or(0), f, 3, 5)),
        None => {
            if seed.is_some() {
                return Err(Failure::new(
                    EXIT_PRECONDITION,
                    "--seed applies to random-p1 and random-p2lines only",
                ));
            }
            scenarios::build(&name.parse::<ScenarioId>()?)?
        }
    };
    if let (Some(path), Some(c)) = (out_path, scenario.config()) {
        write_file(path, &format!("{}\n", ConfigDocument::from_config(c).to_json()))?;
    }
    match &scenario {
        Scenario::Config(c) => {
            require_pv_defined(c)?;
            let v = pv(c, realization(c, None), true)?;
            line(out, &v.render(format.style()))
        }
        Scenario::Chain(chain) => {
            for (i, (label, s)) in chain.stages.iter().enumerate() {
                let status = PvStatus::of(&s.config, Realization::Motivic);
                let text = match (i, s.config.components.last()) {
                    (0, _) | (_, None) => stage_line(label, &status, format),
                    (_, Some(e)) => stage_line(
                        &format!(
                            "{label} (+{} at {}, alpha = {})",
                            e.id,
                            chain.centers[i - 1],
                            format_rational(&e.mult.alpha())
                        ),
                        &status,
                        format,
                    ),
                };
                line(out, &text)?;
            }
            Ok(())
        }
        Scenario::Multiplicity(x) => line(out, &format!("alpha = {}", format_rational(&x.alpha))),
    }
}

fn cmd_specialize(config: &Path, l: Option<&str>, uv: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    let p = read_config(config)?;
    require_pv_defined(&p.config)?;
    let (value, c, r) = match (l, uv) {
        (Some(l), _) => (fraction_arg("L", l)?, p.config.clone(), Realization::Motivic),
        (None, Some(uv)) => (
            fraction_arg("uv", uv)?,
            with_hodge_classes(&p.config),
            Realization::Hodge,
        ),
        (None, None) => return Err(Failure::new(EXIT_PARSE, "one of --L or --uv is required")),
    };
    if value.is_negative() {
        return Err(Failure::new(
            EXIT_PRECONDITION,
            "the specialization value must be nonnegative",
        ));
    }
    let v = pv(&c, r, true)?;
    let x = specialize(&v, &value)?;
    line(out, &x.to_string())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Pv { input, unnormalized } => cmd_pv(&input, unnormalized, out),
        Command::Zeta { input, s } => cmd_zeta(&input, s, out),
        Command::HodgePv { config, format, a, s } => cmd_hodge_pv(&config, format, a.as_deref(), s, out),
        Command::Blowup {
            config,
            center,
            out: path,
            id,
        } => cmd_blowup(&config, &center, path.as_deref(), id.as_deref(), out),
        Command::Check { config } => cmd_check(&config, out),
        Command::Scenario {
            name,
            seed,
            out: path,
            format,
        } => cmd_scenario(&name, seed, path.as_deref(), format, out),
        Command::Specialize { config, l, uv } => cmd_specialize(&config, l.as_deref(), uv.as_deref(), out),
    }
}

/// Runs `mpv` with `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "mpv: {}", f.message);
            f.code
        }
    }
}
