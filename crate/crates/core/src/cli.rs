//! The `frc` command-line front end. Every subcommand is a thin adapter over
//! library calls; [`run`] is the whole program minus process exit.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{dual_bound, recursive_bound, BoundProfile, BoundRow, Tightness};
use crate::catalog;
use crate::designs::{check_design_optimality, verify_t_design, OptimalityRow};
use crate::dress::{DressSystem, RepairReport};
use crate::error::Error;
use crate::format::{parse_any, write_text_matrix, BlockList};
use crate::gf256::Gf256;
use crate::hierarchy::{
    direct_hierarchy, full_hierarchy_with, pareto_points_from_chains, Hierarchy, ParetoPoint,
    SearchLimit,
};
use crate::incidence::{FrCode, Params};
use crate::products::{gfr, gfr_hierarchy, ProductSpec};

#[derive(Parser, Debug)]
#[command(name = "frc", version, about = "Fractional repetition code toolkit")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Suppress the elapsed-time footer on stderr.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Code file (text matrix or JSON block list). Falls back to a catalog
    /// name when no such file exists.
    #[arg(long, conflicts_with = "catalog")]
    pub code: Option<String>,
    /// Catalog entry name.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a structure is an FR code and print its parameters.
    Validate(CodeArgs),
    /// Exact supported file size hierarchy.
    Hierarchy {
        #[command(flatten)]
        code: CodeArgs,
        /// Report the transpose code's hierarchy instead.
        #[arg(long)]
        dual: bool,
    },
    /// Print the transpose code.
    Dual(CodeArgs),
    /// Upper bounds on M_k for a parameter tuple or a code.
    Bounds {
        /// n,alpha,theta,rho
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<usize>>,
        #[command(flatten)]
        code: CodeArgs,
        /// Only this reconstruction degree.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Tensor product of codes with equal storage ratio.
    Tensor {
        /// Factor code files, in order.
        #[arg(long = "code")]
        codes: Vec<String>,
        /// Factor catalog names, placed after any --code factors.
        #[arg(long = "catalog")]
        catalogs: Vec<String>,
        /// Repetition of each factor's blocks (default 1 each).
        #[arg(long, value_delimiter = ',')]
        fold: Option<Vec<usize>>,
    },
    /// Generalized grid code: transpose of a product of folded trivial codes.
    Gfr {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        alphas: Vec<usize>,
        /// Also enumerate the hierarchy and compare.
        #[arg(long)]
        brute: bool,
    },
    /// Verify a t-design and check the optimality of its FR code.
    DesignCheck {
        /// Design file (JSON block list with a "t" field).
        #[arg(long, conflicts_with = "catalog")]
        design: Option<String>,
        #[arg(long)]
        catalog: Option<String>,
        /// Strength, overriding the file's "t".
        #[arg(long)]
        t: Option<usize>,
    },
    /// Built-in constructions.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Store a random file on a code, repair a node and reconstruct.
    DressDemo {
        /// Code file or catalog name.
        #[arg(long)]
        code: String,
        #[arg(long)]
        file_size: usize,
        #[arg(long)]
        fail: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        reconstruct: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parameters, hierarchies, bounds and optimality flags for one code.
    Report(CodeArgs),
    /// Recursive versus dual bound on the reference parameter rows.
    Table1,
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Dump { name: String },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// The parameter rows compared in [`table1`].
pub const TABLE1_ROWS: [((usize, usize, usize, usize), usize); 19] = [
    ((10, 2, 5, 4), 3),
    ((10, 4, 10, 4), 4),
    ((10, 4, 8, 5), 3),
    ((11, 3, 11, 3), 6),
    ((11, 4, 11, 4), 5),
    ((12, 2, 8, 3), 5),
    ((12, 2, 8, 3), 7),
    ((12, 2, 6, 4), 3),
    ((12, 2, 6, 4), 5),
    ((12, 3, 12, 3), 7),
    ((12, 4, 12, 4), 6),
    ((12, 5, 15, 4), 6),
    ((12, 6, 18, 4), 6),
    ((12, 7, 21, 4), 6),
    ((12, 8, 24, 4), 6),
    ((13, 3, 13, 3), 8),
    ((13, 8, 26, 4), 7),
    ((14, 8, 28, 4), 8),
    ((14, 12, 42, 4), 8),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub params: Params,
    pub k: usize,
    pub recursive: i64,
    pub dual: usize,
}

pub fn table1() -> Vec<Table1Row> {
    TABLE1_ROWS
        .iter()
        .map(|&((n, a, t, r), k)| {
            let params = Params::new(n, a, t, r).expect("table rows are valid");
            Table1Row {
                params,
                k,
                recursive: recursive_bound(params, k).expect("k in range"),
                dual: dual_bound(params, k).expect("k in range"),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: String,
    pub params: Params,
    pub simple: bool,
    pub hierarchy: Hierarchy,
    pub dual_hierarchy: Hierarchy,
    pub pareto: Vec<ParetoPoint>,
    pub bounds: Vec<BoundRow>,
    pub optimality: Vec<Tightness>,
}

pub fn build_report(input: &str, code: &FrCode, limit: SearchLimit) -> crate::Result<Report> {
    let hierarchy = full_hierarchy_with(code, limit)?;
    let dual_hierarchy = hierarchy.transposed();
    let profile = BoundProfile::new(code.params())?;
    Ok(Report {
        input: input.to_string(),
        params: code.params(),
        simple: code.is_simple(),
        pareto: pareto_points_from_chains(&hierarchy.n_values, &dual_hierarchy.n_values),
        optimality: profile.tightness(&hierarchy),
        bounds: profile.rows,
        hierarchy,
        dual_hierarchy,
    })
}

fn load_code_file(path: &str) -> CliResult<FrCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(Error::Parse(format!("{path}: {e}"))))?;
    let list = parse_any(&text)?;
    Ok(FrCode::new(list.to_structure()?)?)
}

/// A code from a file path, falling back to a catalog name.
fn code_or_catalog(r: &str) -> CliResult<(String, FrCode)> {
    if Path::new(r).exists() {
        Ok((r.to_string(), load_code_file(r)?))
    } else {
        Ok((format!("catalog:{r}"), catalog::lookup(r)?.code))
    }
}

fn resolve(args: &CodeArgs) -> CliResult<(String, FrCode)> {
    match (&args.code, &args.catalog) {
        (Some(c), None) => code_or_catalog(c),
        (None, Some(name)) => Ok((format!("catalog:{name}"), catalog::lookup(name)?.code)),
        _ => Err(CliError::Usage(
            "exactly one of --code or --catalog is required".into(),
        )),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn no_csv(cmd: &str) -> CliError {
    CliError::Usage(format!("--format csv is not available for `{cmd}`"))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn hierarchy_table(h: &Hierarchy) -> String {
    let mut s = format!("n = {}, theta = {}\n{:>4} {:>6} {:>6}\n", h.n, h.theta, "k", "M_k", "N_k");
    for k in 0..=h.n {
        let _ = writeln!(s, "{:>4} {:>6} {:>6}", k, h.m[k], h.n_values[k]);
    }
    s
}

fn bounds_csv(rows: &[BoundRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

fn bounds_table(rows: &[BoundRow]) -> String {
    let mut s = format!(
        "{:>4} {:>10} {:>6} {:>6} {:>9}\n",
        "k", "recursive", "dual", "floor", "tightest"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>4} {:>10} {:>6} {:>6} {:>9}",
            r.k, r.recursive, r.dual, r.floor, r.tightest
        );
    }
    s
}

#[derive(Serialize)]
struct CodeOutput {
    params: Params,
    code: BlockList,
    hierarchy: Hierarchy,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force_agrees: Option<bool>,
}

fn code_output(out: &CodeOutput, format: Format) -> String {
    match format {
        Format::Table => {
            let s = crate::incidence::IncidenceStructure::from_blocks(
                out.code.theta,
                out.code.blocks.iter().cloned(),
            )
            .expect("valid blocks");
            let mut text = format!("params {}\n", out.params);
            text.push_str(&write_text_matrix(&s));
            text.push_str(&hierarchy_table(&out.hierarchy));
            if let Some(b) = out.brute_force_agrees {
                let _ = writeln!(text, "brute force agrees: {b}");
            }
            text
        }
        _ => json(out),
    }
}

#[derive(Serialize)]
struct DressTranscript {
    code: String,
    params: Params,
    file_size: usize,
    reconstruction_degree: usize,
    seed: u64,
    stored_symbols: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    repair: Option<RepairTranscript>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reconstruct: Option<ReconstructTranscript>,
}

#[derive(Serialize)]
struct RepairTranscript {
    #[serde(flatten)]
    report: RepairReport,
    symbols_transferred: usize,
    bytes_transferred: usize,
    helpers: Vec<usize>,
    restored_exact: bool,
}

#[derive(Serialize)]
struct ReconstructTranscript {
    nodes: Vec<usize>,
    distinct_symbols: usize,
    bytes_downloaded: usize,
    success: bool,
    deficit: usize,
    matches_file: bool,
}

fn dress_demo(
    code_ref: &str,
    file_size: usize,
    fail: Option<usize>,
    reconstruct: Option<Vec<usize>>,
    seed: u64,
) -> CliResult<DressTranscript> {
    let (desc, code) = code_or_catalog(code_ref)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let file: Vec<Gf256> = (0..file_size).map(|_| Gf256(rng.gen())).collect();
    let mut sys = DressSystem::store(&code, &file)?;
    let reconstruction_degree = sys.reconstruction_degree()?;
    let repair = match fail {
        Some(node) => {
            let before = sys.clone();
            let report = sys.repair(node)?;
            Some(RepairTranscript {
                symbols_transferred: report.symbols_transferred(),
                bytes_transferred: report.symbols_transferred(),
                helpers: report.helpers(),
                restored_exact: sys == before,
                report,
            })
        }
        None => None,
    };
    let reconstruct = match reconstruct {
        Some(nodes) => {
            let distinct = sys.distinct_points(&nodes)?.len();
            let bytes: usize = nodes.iter().filter_map(|&i| sys.node(i)).map(<[_]>::len).sum();
            let (success, deficit, matches_file) = match sys.reconstruct(&nodes) {
                Ok(f) => (true, 0, f == file),
                Err(Error::InsufficientSymbols { deficit, .. }) => (false, deficit, false),
                Err(e) => return Err(e.into()),
            };
            Some(ReconstructTranscript {
                nodes,
                distinct_symbols: distinct,
                bytes_downloaded: bytes,
                success,
                deficit,
                matches_file,
            })
        }
        None => None,
    };
    Ok(DressTranscript {
        code: desc,
        params: code.params(),
        file_size,
        reconstruction_degree,
        seed,
        stored_symbols: code.n() * code.alpha(),
        repair,
        reconstruct,
    })
}

#[derive(Serialize)]
struct DesignCheckOutput {
    v: usize,
    m: usize,
    t: usize,
    lambda: u64,
    b: u64,
    lambda_triangle: Vec<Vec<u64>>,
    predicted: Vec<Option<usize>>,
    optimality: Vec<OptimalityRow>,
    all_attained: bool,
}

#[derive(Serialize)]
struct CatalogListing {
    name: String,
    params: Params,
    provenance: &'static str,
}

fn execute(cli: &Cli) -> CliResult<String> {
    let limit = SearchLimit::from_env()?;
    let fmt = cli.format;
    Ok(match &cli.command {
        Command::Validate(args) => {
            let (_, code) = resolve(args)?;
            #[derive(Serialize)]
            struct V {
                #[serde(flatten)]
                params: Params,
                simple: bool,
            }
            match fmt {
                Format::Json => json(&V {
                    params: code.params(),
                    simple: code.is_simple(),
                }),
                Format::Table => format!(
                    "valid FR code {} (simple: {})\n",
                    code.params(),
                    code.is_simple()
                ),
                Format::Csv => return Err(no_csv("validate")),
            }
        }
        Command::Hierarchy { code, dual } => {
            let (_, code) = resolve(code)?;
            let mut h = full_hierarchy_with(&code, limit)?;
            if *dual {
                h = h.transposed();
            }
            match fmt {
                Format::Json => json(&h),
                Format::Table => hierarchy_table(&h),
                Format::Csv => h.staircase_csv(),
            }
        }
        Command::Dual(args) => {
            let (_, code) = resolve(args)?;
            let d = code.dual();
            match fmt {
                Format::Json => json(&BlockList::from_structure(d.structure())),
                Format::Table => write_text_matrix(d.structure()),
                Format::Csv => return Err(no_csv("dual")),
            }
        }
        Command::Bounds { params, code, k } => {
            let p = match (params, code.code.is_some() || code.catalog.is_some()) {
                (Some(v), false) => match v[..] {
                    [n, a, t, r] => Params::new(n, a, t, r)?,
                    _ => return Err(CliError::Usage("--params takes n,alpha,theta,rho".into())),
                },
                (None, true) => resolve(code)?.1.params(),
                _ => {
                    return Err(CliError::Usage(
                        "give either --params or a code (--code/--catalog)".into(),
                    ))
                }
            };
            let profile = BoundProfile::new(p)?;
            let rows: Vec<BoundRow> = match k {
                Some(k) => {
                    if *k == 0 || *k > p.n {
                        return Err(Error::OutOfRange {
                            what: "k",
                            value: *k,
                            lo: 1,
                            hi: p.n,
                        }
                        .into());
                    }
                    vec![profile.row(*k).clone()]
                }
                None => profile.rows.clone(),
            };
            match fmt {
                Format::Json => json(&rows),
                Format::Table => bounds_table(&rows),
                Format::Csv => bounds_csv(&rows),
            }
        }
        Command::Tensor {
            codes,
            catalogs,
            fold,
        } => {
            let mut factors = Vec::new();
            for c in codes {
                factors.push(load_code_file(c)?);
            }
            for c in catalogs {
                factors.push(catalog::lookup(c)?.code);
            }
            if factors.len() < 2 {
                return Err(CliError::Usage("tensor needs at least two factors".into()));
            }
            let folds = fold.clone().unwrap_or_else(|| vec![1; factors.len()]);
            if folds.len() != factors.len() {
                return Err(CliError::Usage(format!(
                    "--fold has {} entries for {} factors",
                    folds.len(),
                    factors.len()
                )));
            }
            let spec = ProductSpec::new(factors.into_iter().zip(folds).collect())?;
            let product = spec.build()?;
            let chain = spec.n_chain()?;
            let theta = product.theta();
            let m: Vec<usize> = chain[1..].iter().map(|&x| theta - x).collect();
            let out = CodeOutput {
                params: product.params(),
                code: BlockList::from_structure(product.structure()),
                hierarchy: Hierarchy::from_m(theta, &m),
                brute_force_agrees: None,
            };
            if fmt == Format::Csv {
                return Err(no_csv("tensor"));
            }
            code_output(&out, fmt)
        }
        Command::Gfr { g, alphas, brute } => {
            let code = gfr(*g, alphas)?;
            let h = gfr_hierarchy(*g, alphas)?;
            let brute_force_agrees = if *brute {
                Some(direct_hierarchy(&code, limit)? == h)
            } else {
                None
            };
            if fmt == Format::Csv {
                return Err(no_csv("gfr"));
            }
            code_output(
                &CodeOutput {
                    params: code.params(),
                    code: BlockList::from_structure(code.structure()),
                    hierarchy: h,
                    brute_force_agrees,
                },
                fmt,
            )
        }
        Command::DesignCheck { design, catalog: cat, t } => {
            let d = match (design, cat) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Domain(Error::Parse(format!("{path}: {e}"))))?;
                    let list = parse_any(&text)?;
                    let t = t.or(list.t).ok_or_else(|| {
                        CliError::Usage("design strength unknown: pass --t or a \"t\" field".into())
                    })?;
                    verify_t_design(&list.to_structure()?, t)?
                }
                (None, Some(name)) => {
                    let d = catalog::lookup_design(name)?;
                    match t {
                        Some(t) => verify_t_design(d.structure(), *t)?,
                        None => d,
                    }
                }
                _ => {
                    return Err(CliError::Usage(
                        "exactly one of --design or --catalog is required".into(),
                    ))
                }
            };
            let report = check_design_optimality(&d, limit)?;
            let out = DesignCheckOutput {
                v: d.v(),
                m: d.m(),
                t: d.t(),
                lambda: d.lambda(),
                b: d.b(),
                lambda_triangle: d.lambda_triangle(),
                predicted: d.predicted_hierarchy(),
                all_attained: report.all_attained(),
                optimality: report.rows,
            };
            match fmt {
                Format::Json => json(&out),
                Format::Table => {
                    let mut s = format!(
                        "{}-({},{},{}) design, b = {}\nlambda^j_i (row i, column j):\n",
                        out.t, out.v, out.m, out.lambda, out.b
                    );
                    for row in &out.lambda_triangle {
                        let _ = writeln!(s, "  {}", join(row));
                    }
                    let _ = writeln!(s, "{:>4} {:>10} {:>11} {:>9} {:>8}", "M", "smallest_k", "lower_bound", "predicted", "attained");
                    for r in &out.optimality {
                        let _ = writeln!(
                            s,
                            "{:>4} {:>10} {:>11} {:>9} {:>8}",
                            r.file_size, r.smallest_k, r.lower_bound, r.predicted, r.attained
                        );
                    }
                    s
                }
                Format::Csv => return Err(no_csv("design-check")),
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let list: Vec<CatalogListing> = catalog::entries()
                    .into_iter()
                    .map(|e| CatalogListing {
                        name: e.name,
                        params: e.code.params(),
                        provenance: e.provenance,
                    })
                    .collect();
                match fmt {
                    Format::Json => json(&list),
                    Format::Table => list
                        .iter()
                        .map(|e| format!("{:<18} {:<18} {}\n", e.name, e.params.to_string(), e.provenance))
                        .collect(),
                    Format::Csv => return Err(no_csv("catalog list")),
                }
            }
            CatalogAction::Dump { name } => {
                let e = catalog::lookup(name)?;
                match fmt {
                    Format::Json => json(&BlockList::from_structure(e.code.structure())),
                    Format::Table => write_text_matrix(e.code.structure()),
                    Format::Csv => return Err(no_csv("catalog dump")),
                }
            }
        },
        Command::DressDemo {
            code,
            file_size,
            fail,
            reconstruct,
            seed,
        } => {
            let t = dress_demo(code, *file_size, *fail, reconstruct.clone(), *seed)?;
            match fmt {
                Format::Json => json(&t),
                Format::Table => {
                    let mut s = format!(
                        "{} {}: file of {} symbols, any {} nodes decode\n",
                        t.code, t.params, t.file_size, t.reconstruction_degree
                    );
                    if let Some(r) = &t.repair {
                        let _ = writeln!(
                            s,
                            "repair node {}: {} symbols from helpers {:?}, uncoded {}, exact {}",
                            r.report.failed, r.symbols_transferred, r.helpers, r.report.uncoded, r.restored_exact
                        );
                        for tr in &r.report.transfers {
                            let _ = writeln!(s, "  helper {} -> point {}", tr.helper, tr.point);
                        }
                    }
                    if let Some(r) = &t.reconstruct {
                        let _ = writeln!(
                            s,
                            "reconstruct from {:?}: {} distinct symbols, success {}, deficit {}",
                            r.nodes, r.distinct_symbols, r.success, r.deficit
                        );
                    }
                    s
                }
                Format::Csv => return Err(no_csv("dress-demo")),
            }
        }
        Command::Report(args) => {
            let (desc, code) = resolve(args)?;
            let r = build_report(&desc, &code, limit)?;
            match fmt {
                Format::Json => json(&r),
                Format::Table => {
                    let mut s = format!("{}: {} (simple: {})\n", r.input, r.params, r.simple);
                    s.push_str(&hierarchy_table(&r.hierarchy));
                    s.push_str(&bounds_table(&r.bounds));
                    let opt: Vec<usize> = r.optimality.iter().filter(|t| t.optimal()).map(|t| t.k).collect();
                    let _ = writeln!(s, "meets a bound with equality at k = {}", join(&opt));
                    let pts: Vec<String> = r.pareto.iter().map(|p| format!("({},{})", p.k0, p.l0)).collect();
                    let _ = writeln!(s, "pareto points: {}", pts.join(" "));
                    s
                }
                Format::Csv => return Err(no_csv("report")),
            }
        }
        Command::Table1 => {
            let rows = table1();
            match fmt {
                Format::Json => json(&rows),
                Format::Table => {
                    let mut s = format!("{:<18} {:>3} {:>10} {:>5}\n", "params", "k", "recursive", "dual");
                    for r in &rows {
                        let _ = writeln!(s, "{:<18} {:>3} {:>10} {:>5}", r.params.to_string(), r.k, r.recursive, r.dual);
                    }
                    s
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "alpha", "theta", "rho", "k", "recursive", "dual"])
                        .expect("in-memory write");
                    for r in &rows {
                        let p = r.params;
                        w.write_record(
                            [p.n, p.alpha, p.theta, p.rho, r.k]
                                .iter()
                                .map(ToString::to_string)
                                .chain([r.recursive.to_string(), r.dual.to_string()]),
                        )
                        .expect("in-memory write");
                    }
                    String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
                }
            }
        }
    })
}

/// Runs the CLI on `args` (including the program name). Returns the exit
/// status: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let status = match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    };
    if !cli.no_timing {
        let _ = writeln!(err, "# elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    status
}
