//! Command-line front-end: reads JSON documents describing complexes,
//! filtrations, local systems and fibrations, and prints cohomology, page
//! tables and cross-checks.

pub mod doc;
pub mod error;
pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fibseq::complex::CochainComplex;
use fibseq::localsys::{extend_subsystem, BaseGraph, Surjectivity, DEFAULT_SEARCH_DEPTH};
use fibseq::morse::{assemble_fibration, cellular_complex, e2_table, leray_serre_compare, morse_complex};
use fibseq::specseq::SpectralSequence;
use fibseq::{Field, SparseMatrix};

use doc::{Built, Document, FiberDoc, FibrationDoc, GenDoc, Num, PointDoc, TrajectoryDoc};
pub use error::CliError;
use render::Format;

#[derive(Parser, Debug)]
#[command(name = "fibseq", version, about = "Spectral sequences of filtered complexes and fibrations over exact fields")]
pub struct Cli {
    /// Override the field of the input documents ("F2", "F3", ..., "Q").
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Display shift added to p (and to total degrees).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub shift_n: Option<i64>,
    /// Display shift added to q (and to total degrees).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub shift_k: Option<i64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology dimensions of the complex a document describes.
    Homology { file: PathBuf },
    /// Page tables of a filtered, split or fibration document.
    Pages {
        file: PathBuf,
        #[arg(long, conflicts_with = "all")]
        page: Option<usize>,
        /// Every page up to the limit, then the convergence report.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        /// Machine-readable `r p q dim` lines instead of tables.
        #[arg(long)]
        raw: bool,
    },
    /// The E_2 table of a fibration computed from base cohomology with
    /// coefficients in the fiber cohomology.
    E2 { file: PathBuf },
    /// Compares the limit page with directly computed cohomology.
    OracleCheck { file: PathBuf },
    /// Extends a local subsystem to the whole base when its loops generate
    /// the fundamental group.
    Extend {
        subsystem: PathBuf,
        /// Base graph document, if the subsystem does not carry one.
        base: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_DEPTH)]
        max_word_depth: usize,
    },
    /// Page-by-page comparison of a cellular model of the total space
    /// (filtered by cell levels) with an assembled fibration.
    CompareLs { cellular: PathBuf, fibration: PathBuf },
    /// Product fibration document from a base (complex or Morse document)
    /// and a fiber complex.
    Kunneth { base: PathBuf, fiber: PathBuf },
}

/// Standard output and exit code of a completed command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn read_document(path: &Path, field: Option<Field>) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let mut doc = doc::parse_document(&text)?;
    if let Some(f) = field {
        doc.set_field(f);
    }
    doc.canonical()
}

fn complex_of(built: &Built) -> Result<CochainComplex, CliError> {
    Ok(match built {
        Built::Complex(c) => c.clone(),
        Built::Split(s) => s.complex().clone(),
        Built::Filtered(f) => f.complex().clone(),
        Built::Morse(md, ls) => morse_complex(md, ls).map_err(CliError::from_lib)?,
        Built::Cellular(cd, ls) => cellular_complex(cd, ls).map_err(CliError::from_lib)?,
        Built::Fibration(fd) => assemble_fibration(fd).map_err(CliError::from_lib)?.complex().clone(),
        _ => return Err(CliError::precondition("document does not describe a cochain complex")),
    })
}

fn tower(built: &Built) -> Result<(SpectralSequence, (i64, i64)), CliError> {
    Ok(match built {
        Built::Complex(c) => (fibseq::specseq::FilteredComplex::trivial(c.clone()).spectral_sequence(), (0, 0)),
        Built::Split(s) => (s.spectral_sequence(), (0, 0)),
        Built::Filtered(f) => (f.spectral_sequence(), (0, 0)),
        Built::Fibration(fd) => (
            assemble_fibration(fd).map_err(CliError::from_lib)?.spectral_sequence(),
            fd.shifts(),
        ),
        _ => return Err(CliError::precondition("document does not describe a filtered complex")),
    })
}

struct Ctx {
    field: Option<Field>,
    shift_n: Option<i64>,
    shift_k: Option<i64>,
}

impl Ctx {
    fn shift(&self, default: (i64, i64)) -> (i64, i64) {
        (self.shift_n.unwrap_or(default.0), self.shift_k.unwrap_or(default.1))
    }

    fn load(&self, path: &Path) -> Result<Document, CliError> {
        read_document(path, self.field)
    }
}

fn totals_lines(out: &mut String, label: &str, dims: &BTreeMap<i64, usize>, shift: i64) {
    let (Some(lo), Some(hi)) = (dims.keys().min(), dims.keys().max()) else {
        return;
    };
    for k in *lo..=*hi {
        writeln!(out, "{label}H^{} {}", k + shift, dims.get(&k).copied().unwrap_or(0)).unwrap();
    }
}

/// Everything one invocation writes, and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command, as the binary does.
pub fn execute<I, T>(args: I) -> Transcript
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Transcript { stdout, stderr, code };
        }
    };
    match run(cli) {
        Ok(o) => Transcript {
            stdout: o.stdout,
            stderr: String::new(),
            code: o.code,
        },
        Err(e) => Transcript {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.code,
        },
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let field = cli
        .field
        .as_deref()
        .map(|f| f.parse::<Field>().map_err(|e| CliError::parse(e.to_string())))
        .transpose()?;
    let ctx = Ctx {
        field,
        shift_n: cli.shift_n,
        shift_k: cli.shift_k,
    };
    match cli.command {
        Command::Homology { file } => homology(&ctx, &file),
        Command::Pages {
            file,
            page,
            all,
            format,
            raw,
        } => pages(&ctx, &file, page, all, format, raw),
        Command::E2 { file } => e2(&ctx, &file),
        Command::OracleCheck { file } => oracle_check(&ctx, &file),
        Command::Extend {
            subsystem,
            base,
            max_word_depth,
        } => extend(&ctx, &subsystem, base.as_deref(), max_word_depth),
        Command::CompareLs { cellular, fibration } => compare_ls(&ctx, &cellular, &fibration),
        Command::Kunneth { base, fiber } => kunneth(&ctx, &base, &fiber),
    }
}

fn homology(ctx: &Ctx, file: &Path) -> Result<Outcome, CliError> {
    let built = ctx.load(file)?.build()?;
    let shift = match &built {
        Built::Fibration(fd) => ctx.shift(fd.shifts()),
        _ => ctx.shift((0, 0)),
    };
    let c = complex_of(&built)?;
    let mut dims = c.cohomology().dims();
    for k in c.degrees() {
        dims.entry(k).or_insert(0);
    }
    let mut out = String::new();
    totals_lines(&mut out, "", &dims, shift.0 + shift.1);
    Ok(Outcome::ok(out))
}

fn pages(ctx: &Ctx, file: &Path, page: Option<usize>, all: bool, format: FormatArg, raw: bool) -> Result<Outcome, CliError> {
    let built = ctx.load(file)?.build()?;
    let (ss, default_shift) = tower(&built)?;
    let shift = ctx.shift(default_shift);
    let format = match format {
        FormatArg::Table => Format::Table,
        FormatArg::Tsv => Format::Tsv,
    };
    let frame = render::frame(&ss.page(0).map_err(CliError::from_lib)?.dims());
    let range: Vec<usize> = match page {
        Some(r) => vec![r],
        None => (1..=ss.stable_index()).collect(),
    };
    let mut out = String::new();
    for r in range {
        let dims = ss.page(r).map_err(CliError::from_lib)?.dims();
        if raw {
            out.push_str(&render::raw(r, &dims, shift));
        } else {
            out.push_str(&render::grid(&format!("E_{r}"), &dims, frame, shift, format));
        }
    }
    if all || page.is_none() {
        let report = ss.converge().map_err(CliError::from_lib)?;
        writeln!(out, "converges at E_{}", report.r_stop).unwrap();
        totals_lines(&mut out, "E_inf ", &report.e_infinity_totals(), shift.0 + shift.1);
        writeln!(out, "certified: {}", report.certified).unwrap();
    }
    Ok(Outcome::ok(out))
}

fn e2(ctx: &Ctx, file: &Path) -> Result<Outcome, CliError> {
    let Built::Fibration(fd) = ctx.load(file)?.build()? else {
        return Err(CliError::precondition("e2 needs a fibration document"));
    };
    let table = e2_table(&fd).map_err(CliError::from_lib)?;
    let shift = ctx.shift(fd.shifts());
    let mut out = render::grid(
        "E_2 = H^p(base; H^q(fiber))",
        &table.dims,
        render::frame(&table.dims),
        shift,
        Format::Table,
    );
    for (q, ls) in &table.systems {
        let monodromy = match ls.base().vertices().is_empty() {
            true => "n/a",
            false => match ls.monodromy(0) {
                Ok(m) if m.images.iter().all(|a| *a == SparseMatrix::identity(ls.field(), ls.rank())) => "trivial",
                Ok(_) => "nontrivial",
                Err(_) => "n/a",
            },
        };
        writeln!(out, "q {} rank {} monodromy {monodromy}", q + shift.1, ls.rank()).unwrap();
    }
    writeln!(out, "matches page 2: yes").unwrap();
    Ok(Outcome::ok(out))
}

fn oracle_check(ctx: &Ctx, file: &Path) -> Result<Outcome, CliError> {
    let built = ctx.load(file)?.build()?;
    let (ss, default_shift) = tower(&built)?;
    let shift = ctx.shift(default_shift);
    let report = ss.converge().map_err(CliError::from_lib)?;
    let einf = report.e_infinity_totals();
    let mut out = String::new();
    let mut pass = report.certified;
    for (k, d) in &report.cohomology {
        let e = einf.get(k).copied().unwrap_or(0);
        pass &= e == *d;
        writeln!(out, "H^{} direct {d} E_inf {e}", k + shift.0 + shift.1).unwrap();
    }
    pass &= einf.keys().all(|k| report.cohomology.contains_key(k));
    let mut degenerate = true;
    for r in 2..=ss.stable_index() {
        degenerate &= ss.page(r).map_err(CliError::from_lib)?.differential_is_zero();
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "certified: {}", yes(report.certified)).unwrap();
    writeln!(out, "degenerates at E_2: {}", yes(degenerate)).unwrap();
    writeln!(out, "result: {}", if pass { "pass" } else { "fail" }).unwrap();
    Ok(Outcome {
        stdout: out,
        code: if pass { 0 } else { error::EXIT_MISMATCH },
    })
}

fn base_of(doc: &Document) -> Option<&doc::BaseDoc> {
    match doc {
        Document::BaseGraph(b) => Some(b),
        Document::LocalSystem(d) => Some(&d.base),
        Document::LocalSubsystem(d) => d.base.as_ref(),
        Document::Morse(d) => Some(&d.base),
        Document::Cellular(d) => Some(&d.base),
        Document::Fibration(d) => Some(&d.base),
        _ => None,
    }
}

fn extend(ctx: &Ctx, sub_file: &Path, base_file: Option<&Path>, depth: usize) -> Result<Outcome, CliError> {
    let Document::LocalSubsystem(sub) = ctx.load(sub_file)? else {
        return Err(CliError::precondition("extend needs a local_subsystem document"));
    };
    let base_doc = match base_file {
        Some(path) => {
            let d = ctx.load(path)?;
            base_of(&d)
                .cloned()
                .ok_or_else(|| CliError::precondition("second document carries no base graph"))?
        }
        None => sub
            .base
            .clone()
            .ok_or_else(|| CliError::precondition("the subsystem has no base graph; pass one"))?,
    };
    let base: BaseGraph = doc::build_base(&base_doc)?;
    let subsystem = doc::build_subsystem(&sub, &base)?;
    let report = extend_subsystem(&subsystem, depth).map_err(CliError::from_lib)?;
    let verdict = match report.surjective {
        Surjectivity::Surjective => "yes",
        Surjectivity::NotSurjective => "no",
        Surjectivity::Unknown => "unknown",
    };
    let mut out = String::new();
    writeln!(out, "surjective: {verdict}").unwrap();
    writeln!(out, "base point: {}", base.vertices()[report.base_point]).unwrap();
    match &report.extension {
        Some(ls) => {
            writeln!(out, "extension:").unwrap();
            out.push_str(&doc::print_document(&doc::local_system_doc(ls)));
        }
        None => writeln!(out, "extension: none").unwrap(),
    }
    Ok(Outcome::ok(out))
}

fn compare_ls(ctx: &Ctx, cell_file: &Path, fib_file: &Path) -> Result<Outcome, CliError> {
    let Built::Cellular(cd, _) = ctx.load(cell_file)?.build()? else {
        return Err(CliError::precondition("first document must be cellular"));
    };
    let Built::Fibration(fd) = ctx.load(fib_file)?.build()? else {
        return Err(CliError::precondition("second document must be a fibration"));
    };
    let report = leray_serre_compare(&cd, &fd).map_err(CliError::from_lib)?;
    let mut out = String::new();
    totals_lines(&mut out, "", &report.cohomology, 0);
    for p in &report.pages {
        if p.equal {
            writeln!(out, "E_{}: equal", p.r).unwrap();
        } else {
            writeln!(out, "E_{}: differ", p.r).unwrap();
            let both: BTreeMap<(i64, i64), usize> = p.cellular.iter().chain(&p.fibration).map(|(k, _)| (*k, 1)).collect();
            let frame = render::frame(&both);
            out.push_str(&render::grid("cellular", &p.cellular, frame, (0, 0), Format::Table));
            out.push_str(&render::grid("fibration", &p.fibration, frame, (0, 0), Format::Table));
        }
    }
    writeln!(out, "result: {}", if report.equal { "equal" } else { "differ" }).unwrap();
    Ok(Outcome {
        stdout: out,
        code: if report.equal { 0 } else { error::EXIT_MISMATCH },
    })
}

fn integer(n: &Num) -> Option<i64> {
    match n {
        Num::Int(i) => Some(*i),
        Num::Text(t) => t.trim().parse().ok(),
    }
}

fn kunneth(ctx: &Ctx, base_file: &Path, fiber_file: &Path) -> Result<Outcome, CliError> {
    let Document::Complex(fiber) = ctx.load(fiber_file)? else {
        return Err(CliError::precondition("fiber must be a complex document"));
    };
    let base_doc = ctx.load(base_file)?;
    let (base, points, trajectories) = match base_doc {
        Document::Morse(m) => (m.base, m.points, m.trajectories),
        Document::Complex(c) => {
            let base = doc::BaseDoc {
                vertices: vec!["o".into()],
                edges: vec![],
                relations: vec![],
            };
            let mut points = Vec::new();
            for g in &c.generators {
                if g.degree < 0 {
                    return Err(CliError::precondition(format!("base generator {:?} has negative degree", g.id)));
                }
                points.push(PointDoc {
                    id: g.id.clone(),
                    index: g.degree,
                    vertex: "o".into(),
                });
            }
            let mut trajectories = Vec::new();
            for (n, (s, t, a)) in c.differential.iter().enumerate() {
                let a = integer(a)
                    .ok_or_else(|| CliError::precondition("base differential must have integer entries"))?;
                for j in 0..a.unsigned_abs() {
                    trajectories.push(TrajectoryDoc {
                        id: format!("t{n}.{j}"),
                        from: s.clone(),
                        to: t.clone(),
                        sign: a.signum(),
                        word: String::new(),
                    });
                }
            }
            (base, points, trajectories)
        }
        _ => return Err(CliError::precondition("base must be a complex or morse document")),
    };
    let fib = Document::Fibration(FibrationDoc {
        field: fiber.field,
        base,
        points,
        trajectories,
        fiber: FiberDoc {
            generators: fiber
                .generators
                .into_iter()
                .map(|g| GenDoc {
                    id: g.id,
                    degree: g.degree,
                })
                .collect(),
            differential: fiber.differential,
        },
        action: vec![],
        corrections: vec![],
        shift_n: ctx.shift_n.unwrap_or(0),
        shift_k: ctx.shift_k.unwrap_or(0),
    })
    .canonical()?;
    fib.build()?;
    Ok(Outcome::ok(doc::print_document(&fib)))
}
