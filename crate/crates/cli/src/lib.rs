//! The `addend` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails or a search that
//! requires a hit finds none, 2 on invalid input, 3 on arithmetic overflow.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use addend_core::constructions::{realize_pair_with_two, Realization};
use addend_core::record::{factorization_pairs, CatalogRecord, RealizationRecord};
use addend_core::search::{search_realizations, SearchEvent, SearchPosition};
use addend_core::verify::SweepOutcome;
use addend_core::{
    addendization_set, catalog_length_sets, check_realization, factorizations, length_set_fast,
    minimal_realization, realize, sweep_verify, Construction, Error, GeneratorSet, LengthSet,
    MinimalOrder, NumericalSemigroup, SearchSpace, Verdict, VerificationReport,
};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_OVERFLOW: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "addend", version, about = "Factorization length sets in numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal generators of the semigroup.
    Atoms(GensArgs),
    /// Largest integer outside the semigroup (-1 for N).
    Frobenius(GensArgs),
    /// All gaps, ascending.
    Gaps(GensArgs),
    /// Membership test.
    Contains(ElementArgs),
    /// Every factorization of an element into atoms.
    Factorize(ElementArgs),
    /// Length set of an element.
    As(AsArgs),
    /// Build a semigroup and element with a prescribed length set.
    Realize(RealizeArgs),
    /// Check a realization by brute force.
    Verify(VerifyArgs),
    /// Verify a construction over parameter ranges.
    Sweep(SweepArgs),
    /// Stream realizations of a length set within bounds.
    Search(SearchArgs),
    /// Smallest realization of a length set within bounds.
    Minimal(MinimalArgs),
    /// Length sets of all elements up to a bound.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
struct GensArgs {
    /// Comma-separated generators, e.g. 3,7,8.
    #[arg(long)]
    gens: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ElementArgs {
    #[arg(long)]
    gens: String,
    #[arg(long)]
    x: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct AsArgs {
    #[arg(long)]
    gens: String,
    #[arg(long)]
    x: u64,
    /// Use the length dynamic program instead of full enumeration.
    #[arg(long)]
    fast: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ConstructionArgs {
    /// Target length set, e.g. 3,5,7.
    #[arg(long)]
    sigma: Option<String>,
    /// singleton, pair-with-two, pair-general, triple-with-two or triple-general.
    #[arg(long)]
    construction: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Debug, Args)]
struct RealizeArgs {
    #[command(flatten)]
    params: ConstructionArgs,
    /// Recompute the length set and list the factorizations.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Realization JSON as printed by `realize --json`; `-` reads stdin.
    #[arg(long, conflicts_with_all = ["sigma", "construction"])]
    input: Option<PathBuf>,
    #[command(flatten)]
    params: ConstructionArgs,
    /// Replace the element before checking.
    #[arg(long)]
    x: Option<u64>,
    /// Required number of factorizations; defaults to the construction's.
    #[arg(long)]
    count: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    construction: String,
    /// Inclusive range `lo..hi` or a single value.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    /// Largest atom considered [default: 20].
    #[arg(long)]
    max_gen: Option<u64>,
    /// Largest multiplicity [default: max-gen].
    #[arg(long)]
    max_mult: Option<u64>,
    /// Largest number of atoms [default: max-mult].
    #[arg(long)]
    max_embdim: Option<usize>,
    /// Largest element scanned [default: 2 * max-gen].
    #[arg(long)]
    max_x: Option<u64>,
}

impl SpaceArgs {
    fn space(&self) -> Result<SearchSpace, CliError> {
        let max_gen = self.max_gen.unwrap_or(20);
        let max_mult = self.max_mult.unwrap_or(max_gen);
        let max_embdim = self.max_embdim.unwrap_or(max_mult.min(usize::MAX as u64) as usize);
        let max_x = self.max_x.unwrap_or(max_gen.saturating_mul(2));
        Ok(SearchSpace::new(max_mult, max_gen, max_embdim, max_x)?)
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    sigma: String,
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, default_value_t = 10)]
    limit: usize,
    /// Progress file; an existing one is resumed.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Exit with status 1 when nothing is found.
    #[arg(long)]
    require_hit: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct MinimalArgs {
    #[arg(long)]
    sigma: String,
    #[command(flatten)]
    space: SpaceArgs,
    /// x (element, genus, atoms), genus (genus, element, atoms) or lex (atoms, element).
    #[arg(long, default_value = "x")]
    order: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[arg(long)]
    gens: String,
    /// Largest element listed.
    #[arg(long, alias = "max-x")]
    to: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("malformed JSON: {e}"))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::ArithmeticOverflow(_)) => EXIT_OVERFLOW,
            _ => EXIT_INVALID,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

type Outcome = Result<u8, CliError>;

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Atoms(a) => {
            let s = semigroup(&a.gens)?;
            if a.json {
                json_line(out, &s.atoms())?;
            } else {
                writeln!(out, "{}", s.generator_set())?;
            }
        }
        Command::Frobenius(a) => {
            let s = semigroup(&a.gens)?;
            writeln!(out, "{}", s.frobenius())?;
        }
        Command::Gaps(a) => {
            let s = semigroup(&a.gens)?;
            let gaps = s.gaps();
            if a.json {
                json_line(out, &gaps)?;
            } else {
                writeln!(out, "{}", join(&gaps))?;
            }
        }
        Command::Contains(a) => {
            let s = semigroup(&a.gens)?;
            writeln!(out, "{}", s.contains(a.x))?;
        }
        Command::Factorize(a) => factorize(a, out)?,
        Command::As(a) => {
            let s = semigroup(&a.gens)?;
            let set = if a.fast {
                length_set_fast(&s, a.x)?
            } else {
                addendization_set(&s, a.x)?
            };
            if a.json {
                json_line(out, &set)?;
            } else {
                writeln!(out, "{set}")?;
            }
        }
        Command::Realize(a) => return realize_cmd(a, out),
        Command::Verify(a) => return verify_cmd(a, out),
        Command::Sweep(a) => return sweep_cmd(a, out, err),
        Command::Search(a) => return search_cmd(a, out, err),
        Command::Minimal(a) => return minimal_cmd(a, out),
        Command::Catalog(a) => catalog_cmd(a, out)?,
    }
    Ok(EXIT_OK)
}

fn semigroup(gens: &str) -> Result<NumericalSemigroup, CliError> {
    Ok(NumericalSemigroup::new(&gens.parse::<GeneratorSet>()?)?)
}

fn sigma(s: &str) -> Result<LengthSet, CliError> {
    Ok(s.parse()?)
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn json_line<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn factorize(a: ElementArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let s = semigroup(&a.gens)?;
    let facts = factorizations(&s, a.x)?;
    if a.json {
        json_line(out, &factorization_pairs(s.atoms(), &facts))?;
    } else {
        for f in &facts {
            writeln!(out, "{} = {} (length {})", a.x, f.display_with(s.atoms()), f.length())?;
        }
    }
    Ok(())
}

fn realization_from(p: &ConstructionArgs) -> Result<Realization, CliError> {
    let any_param = p.n.is_some() || p.k.is_some() || p.t.is_some() || p.r.is_some();
    match (&p.sigma, &p.construction) {
        (Some(s), None) => {
            if any_param {
                return Err(CliError::Usage(
                    "--sigma picks the construction itself; drop --n/--k/--t/--r".into(),
                ));
            }
            Ok(realize(&sigma(s)?)?)
        }
        (None, Some(c)) => {
            let c: Construction = c.parse()?;
            let lookup = |name: &str| match name {
                "n" => p.n,
                "k" => p.k,
                "t" => p.t,
                "r" => p.r,
                _ => None,
            };
            for flag in ["n", "k", "t", "r"] {
                if lookup(flag).is_some() && !c.param_names().contains(&flag) {
                    return Err(CliError::Usage(format!("{c} takes no --{flag}")));
                }
            }
            if c == Construction::PairWithTwo {
                let n = p.n.ok_or_else(|| CliError::Usage(format!("{c} needs --n")))?;
                return Ok(realize_pair_with_two(n, p.k)?);
            }
            let values = c
                .param_names()
                .iter()
                .map(|&name| lookup(name).ok_or_else(|| CliError::Usage(format!("{c} needs --{name}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(c.instantiate(&values)?)
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either --sigma or --construction, not both".into())),
        (None, None) => Err(CliError::Usage("give --sigma or --construction".into())),
    }
}

fn params_text(r: &Realization) -> String {
    r.params
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_realization(out: &mut dyn Write, r: &Realization) -> io::Result<()> {
    writeln!(out, "{:<14}{}", "construction", r.construction)?;
    writeln!(out, "{:<14}{}", "params", params_text(r))?;
    writeln!(out, "{:<14}{}", "atoms", r.generators)?;
    writeln!(out, "{:<14}{}", "x", r.element)?;
    writeln!(out, "{:<14}{}", "sigma", r.target)
}

fn write_report(out: &mut dyn Write, report: &VerificationReport) -> io::Result<()> {
    let r = &report.subject;
    write_realization(out, r)?;
    writeln!(out, "factorizations")?;
    for f in &report.factorizations {
        writeln!(
            out,
            "{:<14}{} = {} (length {})",
            "",
            r.element,
            f.display_with(r.semigroup.atoms()),
            f.length()
        )?;
    }
    writeln!(out, "{:<14}{}", "computed", report.computed_as)?;
    writeln!(out, "{:<14}{}", "minimal", report.atoms_minimal)?;
    writeln!(out, "{:<14}{}", "count", report.factorization_count)?;
    for d in &report.details {
        writeln!(out, "{:<14}{d}", "detail")?;
    }
    writeln!(out, "{:<14}{}", "verdict", report.verdict)
}

fn emit_report(out: &mut dyn Write, report: &VerificationReport, json: bool) -> Outcome {
    if json {
        json_line(out, &RealizationRecord::from_report(report))?;
    } else {
        write_report(out, report)?;
    }
    Ok(match report.verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
    })
}

fn realize_cmd(a: RealizeArgs, out: &mut dyn Write) -> Outcome {
    let r = realization_from(&a.params)?;
    if a.verify {
        let report = check_realization(&r, Some(r.construction.expected_factorization_count()))?;
        return emit_report(out, &report, a.json);
    }
    if a.json {
        json_line(out, &RealizationRecord::from_realization(&r))?;
    } else {
        write_realization(out, &r)?;
    }
    Ok(EXIT_OK)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let mut r = match &a.input {
        Some(path) => {
            let any_param = a.params.n.is_some() || a.params.k.is_some() || a.params.t.is_some() || a.params.r.is_some();
            if any_param {
                return Err(CliError::Usage("--input cannot be combined with construction parameters".into()));
            }
            let record: RealizationRecord = serde_json::from_str(&read_input(path)?)?;
            record.into_realization()?
        }
        None => realization_from(&a.params)?,
    };
    if let Some(x) = a.x {
        r.element = x;
    }
    let count = a.count.unwrap_or(r.construction.expected_factorization_count());
    let report = check_realization(&r, Some(count))?;
    emit_report(out, &report, a.json)
}

fn parse_range(flag: &str, s: &str) -> Result<RangeInclusive<u64>, CliError> {
    let bad = || CliError::Usage(format!("--{flag}: expected lo..hi or a number, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

#[derive(Serialize)]
struct SweepLine {
    params: BTreeMap<String, u64>,
    verdict: Verdict,
    #[serde(rename = "as")]
    as_set: LengthSet,
    count: u64,
    atoms: GeneratorSet,
    x: u64,
    details: Vec<String>,
}

fn sweep_cmd(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let c: Construction = a.construction.parse()?;
    let mut ranges = BTreeMap::new();
    for (name, value) in [("n", &a.n), ("k", &a.k), ("t", &a.t), ("r", &a.r)] {
        if let Some(v) = value {
            ranges.insert(name.to_string(), parse_range(name, v)?);
        }
    }
    let outcome: SweepOutcome = sweep_verify(c, &ranges)?;
    if a.json {
        let lines: Vec<SweepLine> = outcome
            .reports
            .iter()
            .map(|rep| SweepLine {
                params: rep.subject.params.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
                verdict: rep.verdict,
                as_set: rep.computed_as.clone(),
                count: rep.factorization_count,
                atoms: rep.subject.generators.clone(),
                x: rep.subject.element,
                details: rep.details.clone(),
            })
            .collect();
        json_line(out, &lines)?;
    } else {
        for rep in &outcome.reports {
            writeln!(
                out,
                "{:<18}{:<6}{:<14}{}",
                params_text(&rep.subject),
                rep.verdict.to_string(),
                rep.computed_as.to_string(),
                rep.factorization_count
            )?;
            for d in &rep.details {
                writeln!(out, "    {d}")?;
            }
        }
    }
    writeln!(
        err,
        "# {c}: {} passed, {} failed, {} skipped",
        outcome.passed(),
        outcome.failed(),
        outcome.skipped.len()
    )?;
    Ok(if outcome.failed() > 0 { EXIT_FAIL } else { EXIT_OK })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    sigma: LengthSet,
    space: SearchSpace,
    found: usize,
    scanned: u64,
    position: Option<SearchPosition>,
    exhausted: bool,
}

fn load_checkpoint(path: &Path) -> Result<Option<Checkpoint>, CliError> {
    match fs::read_to_string(path) {
        Ok(text) if text.trim().is_empty() => Ok(None),
        Ok(text) => Ok(Some(serde_json::from_str(&text)?)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(CliError::Io(format!("{}: {e}", path.display()))),
    }
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, serde_json::to_string(cp)? + "\n")?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn entry_line(out: &mut dyn Write, rec: &CatalogRecord, json: bool) -> Result<(), CliError> {
    if json {
        json_line(out, rec)
    } else {
        writeln!(out, "<{}> {} {} genus {}", rec.atoms, rec.x, rec.as_set, rec.genus)?;
        Ok(())
    }
}

fn search_cmd(a: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let target = sigma(&a.sigma)?;
    let space = a.space.space()?;
    if a.limit < 1 {
        return Err(CliError::Usage("--limit must be at least 1".into()));
    }
    let mut cp = Checkpoint {
        sigma: target.clone(),
        space,
        found: 0,
        scanned: 0,
        position: None,
        exhausted: false,
    };
    if let Some(path) = &a.checkpoint {
        if let Some(prev) = load_checkpoint(path)? {
            if prev.sigma != cp.sigma || prev.space != cp.space {
                return Err(CliError::Usage(format!(
                    "checkpoint {} belongs to a different search",
                    path.display()
                )));
            }
            cp = prev;
        }
    }

    if !cp.exhausted && cp.found < a.limit {
        let remaining = a.limit - cp.found;
        let resume = cp.position.clone();
        let base_scanned = cp.scanned;
        let mut failure: Option<CliError> = None;
        let summary = search_realizations(&target, &space, remaining, resume.as_ref(), |event| {
            if failure.is_some() {
                return;
            }
            let result = match event {
                SearchEvent::Found(entry) => {
                    cp.found += 1;
                    entry_line(out, &CatalogRecord::from(&entry), a.json)
                }
                SearchEvent::Progress { position, scanned } => {
                    cp.scanned = base_scanned + scanned;
                    if !position.atoms.is_empty() {
                        cp.position = Some(position);
                    }
                    match &a.checkpoint {
                        Some(path) => out
                            .flush()
                            .map_err(CliError::from)
                            .and_then(|_| save_checkpoint(path, &cp)),
                        None => Ok(()),
                    }
                }
            };
            if let Err(e) = result {
                failure = Some(e);
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        cp.exhausted = summary.exhausted;
        if let Some(path) = &a.checkpoint {
            save_checkpoint(path, &cp)?;
        }
    }

    writeln!(
        err,
        "# {} semigroups scanned, {} realizations of {} found ({}{})",
        cp.scanned,
        cp.found,
        target,
        space,
        if cp.exhausted { "; space exhausted" } else { "" }
    )?;
    Ok(if a.require_hit && cp.found == 0 { EXIT_FAIL } else { EXIT_OK })
}

fn minimal_cmd(a: MinimalArgs, out: &mut dyn Write) -> Outcome {
    let target = sigma(&a.sigma)?;
    let space = a.space.space()?;
    let order: MinimalOrder = a.order.parse()?;
    match minimal_realization(&target, &space, order)? {
        Some(entry) => {
            entry_line(out, &CatalogRecord::from(&entry), a.json)?;
            Ok(EXIT_OK)
        }
        None => {
            if a.json {
                json_line(out, &serde_json::Value::Null)?;
            } else {
                writeln!(out, "none within bounds ({space})")?;
            }
            Ok(EXIT_FAIL)
        }
    }
}

#[derive(Serialize)]
struct CatalogRow {
    x: u64,
    #[serde(rename = "as")]
    as_set: LengthSet,
}

fn catalog_cmd(a: CatalogArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let s = semigroup(&a.gens)?;
    let table = catalog_length_sets(&s, a.to)?;
    if a.json {
        let rows: Vec<CatalogRow> = table.into_iter().map(|(x, as_set)| CatalogRow { x, as_set }).collect();
        json_line(out, &rows)?;
    } else {
        for (x, set) in table {
            writeln!(out, "AS({x}) = {set}")?;
        }
    }
    Ok(())
}
