//! Command-line front end.
//!
//! ```text
//! flagdeform table    --type B4 --assoc 2,4 [--notation word|window] [--format json|csv]
//! flagdeform classify --type B4 --assoc 2,4 [--convention ordered|unordered]
//! flagdeform product  --type B4 --assoc 2,4 --product star0 1324 1-234
//! flagdeform verify   --type B3 --assoc 1,2,3 divisibility
//! ```
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 internal
//! consistency failure. Data goes to standard output, progress to standard
//! error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::deform::{Convention, Deformation, ProductKind};
use crate::error::Error;
use crate::notation::{format_element, parse_element, Notation};
use crate::rootsys::{CartanType, SimpleSet};
use crate::schubert::FlagVariety;
use crate::tableio::{table_records, write_csv, write_jsonl, TableCache, TableHeader};
use crate::verify::{run_suite, Suite};
use crate::weyl::ParabolicData;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "flagdeform",
    version,
    about = "Schubert structure constants of G/P and their deformations"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for cached cup tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Suppress progress messages.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Cartan type, e.g. B4.
    #[arg(long = "type")]
    pub cartan_type: String,
    /// Associated simple roots (1-based), the complement of the Levi.
    #[arg(long)]
    pub assoc: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NotationArg {
    Word,
    Window,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Self {
        match n {
            NotationArg::Word => Notation::Word,
            NotationArg::Window => Notation::Window,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Ordered,
    Unordered,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Ordered => Convention::Ordered,
            ConventionArg::Unordered => Convention::Unordered,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    Cup,
    Bk,
    Star0,
    Mixed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit every nonzero constant with its bk and star0 values.
    Table {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "word")]
        notation: NotationArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long, value_enum, default_value = "ordered")]
        convention: ConventionArg,
        /// Write to a file instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Count nonzero cup, star0 and bk constants.
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "ordered")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Expand one product sigma_u * sigma_v.
    Product {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "cup")]
        product: ProductArg,
        /// Associated roots taken in the s -> 0 limit (with --product mixed).
        #[arg(long)]
        mixed_set: Option<String>,
        #[arg(long, value_enum, default_value = "word")]
        notation: NotationArg,
        /// JSON output instead of text.
        #[arg(long)]
        json: bool,
        /// Print the exponent ledger of each term.
        #[arg(long)]
        ledger: bool,
        /// Element as a reduced word ("s1 s2", "e") or a window ("1-234").
        u: String,
        v: String,
    },
    /// Run property suites: divisibility, associativity, degree-identity,
    /// region-count, richmond, oracle-equivalence, or all.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(default_value = "all")]
        suites: Vec<String>,
    },
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub cartan_type: CartanType,
    pub assoc: SimpleSet,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub quiet: bool,
}

impl JobConfig {
    pub fn new(cli: &Cli, target: &Target) -> Result<Self, CliError> {
        let cartan_type: CartanType = target.cartan_type.parse().map_err(usage)?;
        let assoc = SimpleSet::parse_one_based(&target.assoc, cartan_type.rank()).map_err(usage)?;
        if assoc.is_empty() {
            return Err(CliError::Usage(
                "--assoc must name at least one simple root".into(),
            ));
        }
        if cli.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        Ok(JobConfig {
            cartan_type,
            assoc,
            jobs: cli.jobs,
            cache_dir: cli.cache_dir.clone(),
            quiet: cli.quiet,
        })
    }

    pub fn parabolic(&self) -> Result<ParabolicData, CliError> {
        ParabolicData::from_assoc(self.cartan_type.rank(), self.assoc).map_err(usage)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Consistency(_) => EXIT_CONSISTENCY,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Consistency(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => CliError::Consistency(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

struct Ctx<'a> {
    cfg: JobConfig,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl Ctx<'_> {
    fn progress(&mut self, msg: &str) {
        if !self.cfg.quiet {
            let _ = writeln!(self.err, "{msg}");
        }
    }

    fn deformation(&mut self) -> Result<Deformation, CliError> {
        let start = Instant::now();
        let fv = FlagVariety::new(self.cfg.cartan_type, self.cfg.parabolic()?)?;
        self.progress(&format!(
            "{} with associated roots {}: |W^P| = {}, dim = {}",
            self.cfg.cartan_type,
            self.cfg.assoc,
            fv.quotient().len(),
            fv.quotient().dim()
        ));
        let table = match self.cfg.cache_dir.clone() {
            Some(dir) => {
                let mut notes = Vec::new();
                let t = TableCache::new(dir).load_or_build(&fv, |m| notes.push(m.to_string()))?;
                for n in notes {
                    self.progress(&n);
                }
                t
            }
            None => Arc::new(fv.full_table()?),
        };
        self.progress(&format!(
            "cup table: {} unordered entries in {:.2?}",
            table.count_unordered(),
            start.elapsed()
        ));
        Ok(Deformation::from_table(fv, table)?)
    }
}

#[derive(Serialize)]
struct ClassifyRow {
    #[serde(rename = "type")]
    cartan_type: String,
    assoc: String,
    convention: String,
    nonzero_cup: usize,
    nonzero_star0: usize,
    levi_movable: usize,
}

#[derive(Serialize)]
struct TermJson {
    w: String,
    c: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ledger: Option<Vec<crate::deform::AlphaLedger>>,
}

fn cmd_table(
    ctx: &mut Ctx,
    notation: Notation,
    format: FormatArg,
    convention: Convention,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let d = ctx.deformation()?;
    let header = TableHeader::new(&d, notation, convention);
    let records = table_records(&d, notation, convention)?;
    ctx.progress(&format!("{} records ({convention})", records.len()));
    match output {
        Some(p) => {
            let mut f = BufWriter::new(File::create(&p)?);
            write_table(&mut f, format, &header, &records)?;
            f.flush()?;
        }
        None => write_table(&mut *ctx.out, format, &header, &records)?,
    }
    Ok(())
}

fn write_table<W: Write + ?Sized>(
    out: &mut W,
    format: FormatArg,
    header: &TableHeader,
    records: &[crate::tableio::TableRecord],
) -> crate::error::Result<()> {
    match format {
        FormatArg::Json => write_jsonl(out, header, records),
        FormatArg::Csv => write_csv(out, header, records),
    }
}

fn cmd_classify(ctx: &mut Ctx, convention: Convention, format: FormatArg) -> Result<(), CliError> {
    let d = ctx.deformation()?;
    let rec = d.classify();
    match format {
        FormatArg::Json => {
            serde_json::to_writer(&mut *ctx.out, &rec.to_json(convention))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(ctx.out)?;
        }
        FormatArg::Csv => {
            let c = rec.counts(convention);
            let row = ClassifyRow {
                cartan_type: rec.cartan_type.to_string(),
                assoc: rec
                    .assoc
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                convention: convention.to_string(),
                nonzero_cup: c.nonzero_cup,
                nonzero_star0: c.nonzero_star0,
                levi_movable: c.levi_movable,
            };
            let mut w = csv::Writer::from_writer(&mut *ctx.out);
            w.serialize(row)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            w.flush()?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_product(
    ctx: &mut Ctx,
    product: ProductArg,
    mixed_set: Option<String>,
    notation: Notation,
    json: bool,
    show_ledger: bool,
    u: &str,
    v: &str,
) -> Result<(), CliError> {
    let rank = ctx.cfg.cartan_type.rank();
    let kind = match (product, mixed_set) {
        (ProductArg::Mixed, Some(s)) => {
            let a = if s.trim().is_empty() {
                SimpleSet::default()
            } else {
                SimpleSet::parse_one_based(&s, rank).map_err(usage)?
            };
            if !a.is_subset(ctx.cfg.assoc) {
                return Err(CliError::Usage(format!(
                    "--mixed-set {a} is not contained in --assoc {}",
                    ctx.cfg.assoc
                )));
            }
            ProductKind::Mixed(a)
        }
        (ProductArg::Mixed, None) => {
            return Err(CliError::Usage(
                "--product mixed requires --mixed-set".into(),
            ))
        }
        (_, Some(_)) => {
            return Err(CliError::Usage(
                "--mixed-set only applies to --product mixed".into(),
            ))
        }
        (ProductArg::Cup, None) => ProductKind::Cup,
        (ProductArg::Bk, None) => ProductKind::Bk,
        (ProductArg::Star0, None) => ProductKind::Star0,
    };
    let d = ctx.deformation()?;
    let q = d.quotient().clone();
    let rs = q.root_system().clone();
    let ui = q.require_index(&parse_element(&rs, u)?)?;
    let vi = q.require_index(&parse_element(&rs, v)?)?;
    let name = |k: usize| format_element(&rs, q.element(k), notation);
    let terms = d.product(kind, ui, vi)?;
    if json {
        let ts = terms
            .iter()
            .map(|&(w, c)| {
                Ok(TermJson {
                    w: name(w)?,
                    c,
                    ledger: if show_ledger {
                        Some(d.coefficient(ui, vi, w)?.ledger)
                    } else {
                        None
                    },
                })
            })
            .collect::<crate::error::Result<Vec<_>>>()?;
        let doc = serde_json::json!({
            "type": ctx.cfg.cartan_type.to_string(),
            "assoc": ctx.cfg.assoc.one_based(),
            "product": kind.name(),
            "u": name(ui)?,
            "v": name(vi)?,
            "terms": ts,
        });
        serde_json::to_writer(&mut *ctx.out, &doc).map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(ctx.out)?;
        return Ok(());
    }
    let mut parts = Vec::new();
    for &(w, c) in &terms {
        let coeff = if c == 1 {
            String::new()
        } else {
            format!("{c} ")
        };
        parts.push(format!("{coeff}[{}]", name(w)?));
    }
    let rhs = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    };
    writeln!(ctx.out, "[{}] * [{}] = {rhs}", name(ui)?, name(vi)?)?;
    if show_ledger {
        for &(w, _) in &terms {
            let dc = d.coefficient(ui, vi, w)?;
            for l in dc.ledger {
                writeln!(
                    ctx.out,
                    "  [{}] c={} s{}: diff={:?} s1_degree={} s0_degree={}",
                    name(w)?,
                    dc.c,
                    l.alpha,
                    l.diff,
                    l.s1_degree,
                    l.s0_degree
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(ctx: &mut Ctx, names: &[String]) -> Result<(), CliError> {
    let suites: Vec<Suite> = if names.iter().any(|n| n == "all") {
        Suite::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|n| n.parse().map_err(usage))
            .collect::<Result<_, _>>()?
    };
    let d = ctx.deformation()?;
    let mut failed = Vec::new();
    for s in suites {
        let start = Instant::now();
        let r = run_suite(&d, s)?;
        ctx.progress(&format!("{s} finished in {:.2?}", start.elapsed()));
        writeln!(ctx.out, "{r}")?;
        if !r.passed() {
            failed.push(s.name());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "verification failed: {}",
            failed.join(", ")
        )))
    }
}

fn dispatch(
    cli: Cli,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<(), CliError> {
    let target = match &cli.command {
        Command::Table { target, .. }
        | Command::Classify { target, .. }
        | Command::Product { target, .. }
        | Command::Verify { target, .. } => target,
    };
    let cfg = JobConfig::new(&cli, target)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cfg.jobs {
            b = b.num_threads(n);
        }
        b.build().map_err(|e| CliError::Usage(e.to_string()))?
    };
    let mut ctx = Ctx { cfg, out, err };
    pool.install(|| match cli.command {
        Command::Table {
            notation,
            format,
            convention,
            output,
            ..
        } => cmd_table(&mut ctx, notation.into(), format, convention.into(), output),
        Command::Classify {
            convention, format, ..
        } => cmd_classify(&mut ctx, convention.into(), format),
        Command::Product {
            product,
            mixed_set,
            notation,
            json,
            ledger,
            u,
            v,
            ..
        } => cmd_product(
            &mut ctx,
            product,
            mixed_set,
            notation.into(),
            json,
            ledger,
            &u,
            &v,
        ),
        Command::Verify { suites, .. } => cmd_verify(&mut ctx, &suites),
    })
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
