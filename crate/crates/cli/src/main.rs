use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use ovalsieve::classify::{ClassifyError, ClassificationReport};
use ovalsieve::congruence::{theorem2b_verdict, CongruenceError};
use ovalsieve::enumerate::{bezout_triple_bound, EnumerateError, DEFAULT_OVAL_CAP};
use ovalsieve::hyperboloid::{
    check_b10, check_b4_b7, eval_b11, eval_separation, index_function, euler_integral, netsvetaev_b12, HyperboloidError,
    Representatives, SeparationInput, SeparationMode, TorusArrangement,
};
use ovalsieve::scheme::{euler_parts, x_of_oval, OrientedScheme, PlaneScheme, SchemeError, SphereScheme};
use ovalsieve::singularity::{arf_of_sequence, plane_check, MultiplicitySequence, PlaneCurveClass, SingularityError};
use ovalsieve::verdict::Verdict;
use ovalsieve::z4form::{brown_invariant, FormError, Z4Form};
use ovalsieve::{notation, ClassifyOptions, CurveType, Family};

const CACHE_ENV: &str = "OVALSIEVE_CACHE";

#[derive(Parser)]
#[command(name = "ovalsieve", version, about = "Prohibition engine for real schemes of curves on quadrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, canonicalize and describe sphere schemes.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Enumerate schemes (or sweep a family) and apply filters and congruences.
    Classify(ClassifyArgs),
    /// Validate a JSON classification report.
    Validate {
        report: PathBuf,
    },
    /// Brown invariant of a Z/4 quadratic form file.
    Brown {
        #[arg(long)]
        form: PathBuf,
    },
    /// Arf invariant of a conjugate singular point from its multiplicity sequence.
    Arf {
        #[arg(long)]
        sequence: String,
    },
    /// Curves on the hyperboloid.
    #[command(subcommand)]
    Hyperboloid(HyperboloidCmd),
    /// Singular plane curves of degree 2k.
    #[command(subcommand)]
    Plane(PlaneCmd),
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Print the parsed oval tree.
    Parse { text: String },
    /// Print the canonical notation.
    Canon { text: String },
    /// Oval count, halves, B0 choice, components and x(C).
    Info { text: String },
    /// Even-degree type I check for a complex orientation in signed notation.
    Orient {
        text: String,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claimed {
    I,
    Ii,
    Unknown,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    d: u32,
    /// Oval counts: `17`, `10-12` or `3,5`. Defaults to the Harnack bound.
    #[arg(long)]
    ovals: Option<String>,
    /// Comma-separated: harnack, bezout, depth=N, nests=N, or none.
    #[arg(long, default_value = "harnack,bezout")]
    filters: String,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Restrict to a family template such as `a+1<b>`.
    #[arg(long)]
    family: Option<String>,
    /// Lower bounds for family variables, e.g. `b=1,c=1`.
    #[arg(long, requires = "family")]
    family_min: Option<String>,
    #[arg(long, value_enum, default_value = "unknown")]
    claimed_type: Claimed,
    #[arg(long)]
    workers: Option<usize>,
    /// Enumeration cache; falls back to $OVALSIEVE_CACHE.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_OVAL_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum HyperboloidCmd {
    /// Index function, integral and congruences for an arrangement file.
    Check {
        file: PathBuf,
        /// B+ is color 0 (the part containing a0) or 1.
        #[arg(long)]
        labeling: Option<u8>,
        /// Lift indices to {-1,0,1,2} instead of {0,1,2,3}.
        #[arg(long)]
        symmetric: bool,
    },
    /// Separation congruences from a JSON input file.
    Separation {
        file: PathBuf,
        #[arg(long)]
        mode: SeparationMode,
    },
    /// Complete-intersection congruence from a JSON input file.
    Intersection {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chi_plus: i64,
    },
    /// Residue of the spin complete-intersection invariant for degrees m.
    Spin {
        #[arg(long)]
        degrees: String,
    },
}

#[derive(Subcommand)]
enum PlaneCmd {
    Check {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        class: PlaneCurveClass,
        #[arg(long, default_value_t = 0)]
        ar: u8,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}
input_error!(SchemeError, FormError, HyperboloidError, SingularityError, CongruenceError, notation::ParseError);

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Enumerate(inner) => inner.into(),
            ClassifyError::Pool(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = format!("{}\n", v.status);
    for r in &v.reasons {
        let _ = writeln!(out, "  {r}");
    }
    for n in &v.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

fn scheme_cmd(cmd: SchemeCmd) -> Result<String, CliError> {
    match cmd {
        SchemeCmd::Parse { text } => {
            let forest = notation::parse(&text)?;
            let s = SphereScheme::from_forest(&forest);
            let mut out = format!("notation: {}\nl: {}\nregions: {}\n", notation::render(&forest, false), s.oval_count(), s.region_count());
            for (e, (a, b)) in s.ovals().iter().enumerate() {
                let _ = writeln!(out, "oval {e}: region {a} | region {b}");
            }
            Ok(out)
        }
        SchemeCmd::Canon { text } => Ok(format!("{}\n", SphereScheme::parse(&text)?.canonical())),
        SchemeCmd::Info { text } => scheme_info(&SphereScheme::parse(&text)?),
        SchemeCmd::Orient { text, d } => {
            let o = OrientedScheme::parse_signed(&text)?;
            Ok(verdict_text(&theorem2b_verdict(&o, d)?))
        }
    }
}

fn scheme_info(s: &SphereScheme) -> Result<String, CliError> {
    let p = euler_parts(s);
    let l = s.oval_count();
    let mut out = format!("canonical: {}\nl={l}\n", s.canonical());
    match p.b0 {
        Some(c) => {
            let _ = writeln!(out, "chi0={} chi1={}", p.chi[c as usize], p.chi[1 - c as usize]);
            let _ = writeln!(out, "B0: color {c} (chi ≡ 0 mod 4)");
            let _ = writeln!(out, "B0 components: {:?}", p.b0_components().unwrap());
            let _ = writeln!(out, "B1 components: {:?}", p.b1_components().unwrap());
        }
        None => {
            let _ = writeln!(out, "chi(color 0)={} chi(color 1)={}", p.chi[0], p.chi[1]);
            let _ = writeln!(out, "B0: either color (l odd)");
            let _ = writeln!(out, "color 0 components: {:?}", p.components[0]);
            let _ = writeln!(out, "color 1 components: {:?}", p.components[1]);
        }
    }
    let _ = writeln!(out, "bezout triple bound: {}", bezout_triple_bound(s));
    if l % 2 == 0 && l > 0 {
        out.push_str("oval\tregions\tx\n");
        for (e, (a, b)) in s.ovals().iter().enumerate() {
            let _ = writeln!(out, "{e}\t{a}|{b}\t{}", x_of_oval(s, e)?);
        }
    }
    Ok(out)
}

fn parse_ovals(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("bad --ovals value {spec:?}; use 17, 10-12 or 3,5"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn parse_filters(spec: &str, opts: &mut ClassifyOptions) -> Result<(), CliError> {
    let f = &mut opts.filters;
    f.use_harnack = false;
    f.use_bezout_triple = false;
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let number = |v: &str| v.parse::<usize>().map_err(|_| CliError::Input(format!("bad filter bound in {item:?}")));
        match item.split_once('=') {
            None if item == "harnack" => f.use_harnack = true,
            None if item == "bezout" => f.use_bezout_triple = true,
            None if item == "none" => {}
            Some(("depth", v)) => f.max_depth = Some(number(v)?),
            Some(("nests", v)) => f.max_nests = Some(number(v)?),
            _ => return Err(CliError::Input(format!("unknown filter {item:?} (harnack, bezout, depth=N, nests=N, none)"))),
        }
    }
    Ok(())
}

fn classify_cmd(args: ClassifyArgs) -> Result<String, CliError> {
    if args.d == 0 {
        return Err(CliError::Input("--d must be positive".into()));
    }
    let mut opts = ClassifyOptions::new(args.d);
    if let Some(spec) = &args.ovals {
        opts.ovals = parse_ovals(spec)?;
    }
    parse_filters(&args.filters, &mut opts)?;
    opts.cap = args.cap;
    opts.cache_dir = args.cache_dir.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
    opts.workers = args.workers;
    opts.claimed_type = match args.claimed_type {
        Claimed::I => CurveType::I,
        Claimed::Ii => CurveType::II,
        Claimed::Unknown => CurveType::Unknown,
    };
    if let Some(template) = &args.family {
        let mut family = Family::new(template).map_err(|e| CliError::Input(e.to_string()))?;
        if let Some(min) = &args.family_min {
            family = family.with_minimums(min).map_err(|e| CliError::Input(e.to_string()))?;
        }
        opts.family = Some(family);
    }
    if let Some(&l) = opts.ovals.iter().find(|&&l| l > opts.cap) {
        return Err(EnumerateError::CapExceeded { requested: l, cap: opts.cap }.into());
    }
    let report = ovalsieve::classify(&opts)?;
    report.validate().map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(match args.format {
        Format::Table => report.to_table(),
        Format::Tsv => report.to_tsv(),
        Format::Json => report.to_json() + "\n",
    })
}

fn hyperboloid_cmd(cmd: HyperboloidCmd) -> Result<String, CliError> {
    match cmd {
        HyperboloidCmd::Check { file, labeling, symmetric } => {
            let mut arr = TorusArrangement::from_json(&read(&file)?)?;
            if symmetric {
                arr.representatives = Representatives::Symmetric;
            }
            let ia = index_function(&arr)?;
            let mut out = format!("bidegree ({}, {}), l' = {}\nregion\tchi\tind\n", arr.d, arr.r, ia.l_prime);
            for (r, v) in arr.regions().iter().zip(&ia.ind) {
                let _ = writeln!(out, "{}\t{}\t{}", r.id, r.chi, v);
            }
            let _ = writeln!(out, "integral ind^2 dchi = {}", euler_integral(&arr, &ia));
            let (_, checks) = check_b4_b7(&arr)?;
            for c in checks {
                let _ = writeln!(out, "{c}");
            }
            match check_b10(&arr, labeling) {
                Ok(v) => out.push_str(&format!("B10: {}", verdict_text(&v))),
                Err(e @ (HyperboloidError::OddBidegree { .. } | HyperboloidError::MissingCurveClass)) => {
                    let _ = writeln!(out, "B10: not applicable ({e})");
                }
                Err(e) => return Err(e.into()),
            }
            Ok(out)
        }
        HyperboloidCmd::Separation { file, mode } => {
            let input = separation_input(&file)?;
            Ok(verdict_text(&eval_separation(&input, mode)?))
        }
        HyperboloidCmd::Intersection { file, chi_plus } => {
            let input = separation_input(&file)?;
            Ok(verdict_text(&eval_b11(&input, chi_plus)?))
        }
        HyperboloidCmd::Spin { degrees } => {
            let m = degrees
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Input(format!("bad degree {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(format!("{}\n", netsvetaev_b12(&m)?))
        }
    }
}

fn separation_input(file: &Path) -> Result<SeparationInput, CliError> {
    serde_json::from_str(&read(file)?).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Scheme(cmd) => scheme_cmd(cmd),
        Command::Classify(args) => classify_cmd(args),
        Command::Validate { report } => {
            let r = ClassificationReport::from_json(&read(&report)?).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(format!("ok: {} rows, schema version {}\n", r.rows.len(), r.schema_version))
        }
        Command::Brown { form } => {
            let f: Z4Form = read(&form)?.parse()?;
            Ok(format!("{}\n", brown_invariant(&f)))
        }
        Command::Arf { sequence } => {
            let ms: MultiplicitySequence = sequence.parse()?;
            Ok(format!("{}\n", arf_of_sequence(&ms)?))
        }
        Command::Hyperboloid(cmd) => hyperboloid_cmd(cmd),
        Command::Plane(PlaneCmd::Check { k, scheme, class, ar }) => {
            let p = PlaneScheme::parse(&scheme)?;
            Ok(verdict_text(&plane_check(&p, k, class, ar)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
