//! Command-line harness: seed families, run identity suites, print reports.

use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::br::{
    check_cbr, check_nonrect, check_qq_br, check_spinor, check_t_plus_t, check_tsystem, default_order, random_seeded,
    random_w, BrFamily,
};
use crate::characters::{check_dimensions, check_qsystem, CharTable};
use crate::error::Error;
use crate::exactring::{format_rat, rat, ShiftBase};
use crate::qfamily::{random_family, Grading, QFamily};
use crate::report::{Report, Status};
use crate::tableaux::{check_cbr_tableaux, IndexTuple};
use crate::young::Partition;

pub const SCHEMA: &str = "tq-report/1";

#[derive(Parser, Debug)]
#[command(name = "tq", version, about = "Exact checks of T- and Q-function identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Rank of the orthogonal family.
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Bosonic count of the gl(M|N) family.
    #[arg(long = "M", global = true)]
    pub m: Option<usize>,
    /// Fermionic count of the gl(M|N) family.
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    /// Truncation order of every series.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "t-num", global = true, default_value_t = 2)]
    pub t_num: i64,
    #[arg(long = "t-den", global = true, default_value_t = 1)]
    pub t_den: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Load a serialized family instead of seeding one.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Fail on any non-passing check, conjectures included.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run an identity suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Seed a family and print it as JSON.
    Seed,
    /// Print a table of characters at sampled twists.
    Chars {
        /// Largest s in the table (spin labels go to twice this).
        #[arg(long, default_value_t = 3)]
        smax: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Qq,
    Tsystem,
    Cbr,
    Qsystem,
    Tplus,
    Spinor,
    Nonrect,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Qq => "qq",
            Suite::Tsystem => "tsystem",
            Suite::Cbr => "cbr",
            Suite::Qsystem => "qsystem",
            Suite::Tplus => "tplus",
            Suite::Spinor => "spinor",
            Suite::Nonrect => "nonrect",
            Suite::All => "all",
        }
    }
}

/// The JSON document emitted by `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub schema: String,
    pub suite: String,
    pub reports: Vec<Report>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharEntry {
    pub r: usize,
    pub a: i64,
    pub s: i64,
    #[serde(rename = "z-sample")]
    pub z_sample: Vec<String>,
    pub value: String,
}

/// Failure modes of a run, mapped to exit codes 2 and 1.
enum Failure {
    Usage(String),
    Internal(String),
}

type Outcome<T> = std::result::Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut stdout = std::io::stdout();
    run_cli(&cli, &mut stdout)
}

/// Runs a parsed command, writing output to `--out` or `sink`.
pub fn run_cli(cli: &Cli, sink: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok((text, code)) => {
            let written = match &cli.opts.out {
                Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
                None => sink.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Outcome<(String, i32)> {
    let o = &cli.opts;
    let base = ShiftBase::new(rat_checked(o.t_num, o.t_den)?).map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.command {
        Command::Verify { suite } => {
            let mut reports = run_suite(*suite, o, &base)?;
            sort_reports(&mut reports);
            let code = exit_code(&reports, o.strict);
            let set = ReportSet { schema: SCHEMA.to_string(), suite: suite.name().to_string(), reports };
            Ok((render_reports(&set, o.format), code))
        }
        Command::Seed => {
            let json = if o.r.is_some() || (o.m.is_none() && o.n.is_none()) {
                br_family(o, &base)?.to_json()
            } else {
                gl_family(o, &base)?.to_json()
            };
            Ok((json + "\n", 0))
        }
        Command::Chars { smax } => Ok((chars_table(o, *smax)?, 0)),
    }
}

fn rat_checked(num: i64, den: i64) -> Outcome<crate::exactring::Rat> {
    if den == 0 {
        return Err(Failure::Usage("--t-den must be nonzero".into()));
    }
    Ok(rat(num, den))
}

fn read_family_file(path: &str) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn br_family(o: &Opts, base: &ShiftBase) -> Outcome<BrFamily> {
    if let Some(path) = &o.family {
        let f = BrFamily::from_json(&read_family_file(path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        return Ok(match o.order {
            Some(k) if k < f.order() => f.truncated(k),
            _ => f,
        });
    }
    let r = o.r.unwrap_or(2);
    let order = o.order.unwrap_or_else(|| default_order(r));
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    Ok(random_seeded(&mut rng, r, base, order)?)
}

fn gl_family(o: &Opts, base: &ShiftBase) -> Outcome<QFamily> {
    if let Some(path) = &o.family {
        return QFamily::from_json(&read_family_file(path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")));
    }
    let (m, n) = (o.m.unwrap_or(2), o.n.unwrap_or(1));
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    Ok(random_family(&mut rng, Grading::new(m, n), base.clone(), o.order.unwrap_or(6), 2)?)
}

/// Whether `verify qq`/`verify cbr` target a gl(M|N) family rather than the folded one.
fn wants_gl(o: &Opts) -> bool {
    o.r.is_none() && (o.m.is_some() || o.n.is_some())
}

fn run_suite(suite: Suite, o: &Opts, base: &ShiftBase) -> Outcome<Vec<Report>> {
    if suite == Suite::Qsystem {
        return Ok(qsystem_reports(o));
    }
    if wants_gl(o) {
        let fam = gl_family(o, base)?;
        return match suite {
            Suite::Qq => {
                let mut reps = fam.check_qq();
                reps.push(fam.check_sigma_invariance());
                Ok(reps)
            }
            Suite::Cbr => Ok(check_cbr_tableaux(&fam, &IndexTuple::standard(fam.grading()), 4)),
            _ => Err(Failure::Usage(format!("verify {} needs --r, not --M/--N", suite.name()))),
        };
    }
    let f = br_family(o, base)?;
    let r = f.r() as i64;
    let smax = if r <= 2 { 3 } else { 2 };
    let reps = match suite {
        Suite::Qq => check_qq_br(&f),
        Suite::Tsystem => check_tsystem(&f, smax),
        Suite::Cbr => check_cbr(&f, smax),
        Suite::Tplus => check_t_plus_t(&f, 0, 2 * r + 1),
        Suite::Spinor => check_spinor(&f),
        Suite::Nonrect => nonrect_reports(&f),
        Suite::All => {
            let mut all = check_qq_br(&f);
            all.extend(check_tsystem(&f, smax));
            all.extend(check_cbr(&f, smax));
            all.extend(check_t_plus_t(&f, 0, 2 * r + 1));
            all.extend(check_spinor(&f));
            all.extend(nonrect_reports(&f));
            all.extend(qsystem_reports(o));
            all
        }
        Suite::Qsystem => unreachable!("handled above"),
    };
    Ok(reps)
}

fn nonrect_reports(f: &BrFamily) -> Vec<Report> {
    let r = f.r();
    let p = |x: &[usize]| Partition::new(x.to_vec()).expect("valid partition");
    let even = vec![p(&[2, 1]), p(&[2, 2, 1])];
    let mut odd = vec![p(&[1]), p(&[2, 1])];
    if r >= 3 {
        odd.push(p(&[2, 2, 1]));
    }
    let fact: Vec<(Partition, i64)> =
        [p(&[1]), p(&[2, 1])].into_iter().flat_map(|mu| [(mu.clone(), r as i64 + 1), (mu, r as i64 + 2)]).collect();
    check_nonrect(f, &even, &odd, &fact, 2 * r as i64 + 1)
}

fn twist_samples(r: usize, seed: u64, count: usize) -> Vec<Vec<crate::exactring::Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_w(&mut rng, r, &ShiftBase::default(), 1)).collect()
}

fn qsystem_reports(o: &Opts) -> Vec<Report> {
    let r = o.r.unwrap_or(2);
    let mut reps = check_qsystem(r, 6, &twist_samples(r, o.seed, 3));
    reps.extend(check_dimensions(r, if r <= 3 { 1 } else { 0 }));
    reps
}

fn chars_table(o: &Opts, smax: i64) -> Outcome<String> {
    let r = o.r.unwrap_or(2);
    let ri = r as i64;
    let mut rows = Vec::new();
    for w in twist_samples(r, o.seed, 1) {
        let table = CharTable::new(r, &w)?;
        let z: Vec<String> = w.iter().map(|x| format_rat(&(x * x))).collect();
        for a in 0..=ri {
            let top = if a < ri { smax } else { 2 * smax };
            for s in 0..=top {
                let value = format_rat(&table.get(a, s)?);
                rows.push(CharEntry { r, a, s, z_sample: z.clone(), value });
            }
        }
    }
    Ok(match o.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("table serializes") + "\n",
        Format::Text => rows.iter().map(|e| format!("chi[{},{}] = {}\n", e.a, e.s, e.value)).collect(),
    })
}

/// Orders reports by name, then by parameter list.
pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| {
        a.check_name.cmp(&b.check_name).then_with(|| {
            let ka: Vec<_> = a.params.iter().collect();
            let kb: Vec<_> = b.params.iter().collect();
            ka.cmp(&kb)
        })
    });
}

/// 0 when every proven check passes (every check under `strict`), else 1.
pub fn exit_code(reports: &[Report], strict: bool) -> i32 {
    let bad = reports.iter().any(|x| if strict { x.status != Status::Pass } else { x.is_hard_failure() });
    i32::from(bad)
}

pub fn render_reports(set: &ReportSet, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(set).expect("reports serialize") + "\n",
        Format::Text => {
            let mut s: String = set.reports.iter().map(|x| format!("{x}\n")).collect();
            let pass = set.reports.iter().filter(|x| x.passed()).count();
            s.push_str(&format!("# {}: {pass}/{} passed\n", set.suite, set.reports.len()));
            s
        }
    }
}
