//! Subcommand dispatch.
//!
//! Exit codes: 0 success (flat where applicable), 1 negative check result,
//! 2 input parse failure, 3 disconnected input, 64 unknown subcommand,
//! 70 internal error.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use ricciflat_core::catalog::{self, FamilyOutput, FamilySpec};
use ricciflat_core::curvature::{self, CurvatureError};
use ricciflat_core::search::SearchConfig;
use ricciflat_core::structure;
use ricciflat_core::{codec, EdgeRef, Graph, Rational};

use crate::parallel;
use crate::report::{self, ReportDocument};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DISCONNECTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser)]
#[command(name = "ricciflat", version, about = "Exact Lin-Lu-Yau curvature engine")]
struct TopLevel {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-edge curvature report with transport certificates.
    Curvature(CurvatureArgs),
    /// Check that curvature vanishes on every edge.
    CheckFlat(InputArgs),
    /// Idleness profile of one edge.
    Idleness(IdlenessArgs),
    /// List or emit catalog graphs and family members.
    Catalog(CatalogArgs),
    /// Enumerate connected bounded-degree graphs up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Enumerate and keep the Ricci-flat graphs.
    FindFlat(FindFlatArgs),
    /// Classify every edge and audit the structural rules.
    Classify(InputArgs),
    /// Re-validate a report document without the solver.
    VerifyReport(VerifyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file (edge-list or graph6, see --format).
    path: Option<PathBuf>,
    /// Read a named catalog graph instead of a file.
    #[arg(long)]
    catalog: Option<String>,
    /// Build a family member from a spec string instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// Input file format.
    #[arg(long, default_value = "edge-list", value_parser = ["edge-list", "graph6"])]
    format: String,
    /// Add decimal renderings next to exact rationals.
    #[arg(long)]
    decimal: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurvatureArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also evaluate k_alpha at this idleness (e.g. 1/5).
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Args)]
struct IdlenessArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Edge endpoints.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    edge: Vec<usize>,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List named graphs and family identifiers.
    List,
    /// Emit a named graph or family member.
    Emit {
        /// A catalog name, or a family spec like
        /// "family=lattice4 length=6 width=6 glue=torus mode=quotient".
        what: String,
        #[arg(long, default_value = "edge-list", value_parser = ["edge-list", "graph6"])]
        format: String,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 2)]
    min_deg: usize,
    #[arg(long, default_value_t = 4)]
    max_deg: usize,
    /// Keep only graphs containing a C3 or C4.
    #[arg(long)]
    class_g: bool,
    /// Lift the default vertex cap (still bounded at 16).
    #[arg(long = "i-know")]
    override_cap: bool,
}

#[derive(Args)]
struct FindFlatArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 2)]
    min_deg: usize,
    #[arg(long, default_value_t = 4)]
    max_deg: usize,
    #[arg(long)]
    class_g: bool,
    /// Disable the structural pre-filters.
    #[arg(long)]
    no_prune: bool,
    /// Re-check a sample of pruned graphs with the full engine.
    #[arg(long)]
    audit_prunes: bool,
    #[arg(long = "i-know")]
    override_cap: bool,
    /// Worker threads (0 = autodetect).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let parsed = TopLevel::try_parse();
    let top = match parsed {
        Ok(t) => t,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument => EXIT_USAGE,
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return EXIT_OK;
                }
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            return code;
        }
    };
    match top.command {
        Command::Curvature(args) => cmd_curvature(args),
        Command::CheckFlat(args) => cmd_check_flat(args),
        Command::Idleness(args) => cmd_idleness(args),
        Command::Catalog(args) => cmd_catalog(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::FindFlat(args) => cmd_find_flat(args),
        Command::Classify(args) => cmd_classify(args),
        Command::VerifyReport(args) => cmd_verify_report(args),
    }
}

enum LoadedInput {
    Graph(Graph, String),
    Patch(catalog::Patch, #[allow(dead_code)] String),
}

fn load_input(args: &InputArgs) -> Result<LoadedInput, i32> {
    let fail = |msg: String, code: i32| -> i32 {
        eprintln!("error: {}", msg);
        code
    };
    if let Some(name) = &args.catalog {
        let g = catalog::named(name).map_err(|e| fail(e.to_string(), EXIT_PARSE))?;
        return Ok(LoadedInput::Graph(g, format!("catalog:{}", name)));
    }
    if let Some(spec_text) = &args.family {
        let spec = FamilySpec::parse(spec_text).map_err(|e| fail(e.to_string(), EXIT_PARSE))?;
        let out = catalog::family(&spec).map_err(|e| fail(e.to_string(), EXIT_PARSE))?;
        let descr = format!("family:{}", spec_text);
        return Ok(match out {
            FamilyOutput::Quotient(g) => LoadedInput::Graph(g, descr),
            FamilyOutput::Patch(p) => LoadedInput::Patch(p, descr),
        });
    }
    let Some(path) = &args.path else {
        return Err(fail("no input: give a path, --catalog or --family".into(), EXIT_PARSE));
    };
    let text = fs::read_to_string(path)
        .map_err(|e| fail(format!("{}: {}", path.display(), e), EXIT_PARSE))?;
    let g = match args.format.as_str() {
        "graph6" => codec::parse_graph6(text.trim()),
        _ => codec::parse_edge_list(&text),
    }
    .map_err(|e| fail(e.to_string(), EXIT_PARSE))?;
    Ok(LoadedInput::Graph(g, format!("file:{}", path.display())))
}

fn load_connected_graph(args: &InputArgs) -> Result<(Graph, String), i32> {
    match load_input(args)? {
        LoadedInput::Graph(g, d) => {
            if !g.is_connected() || g.n() == 0 {
                eprintln!("error: input graph is not connected");
                return Err(EXIT_DISCONNECTED);
            }
            Ok((g, d))
        }
        LoadedInput::Patch(..) => {
            eprintln!("error: this command expects a closed graph, not a patch");
            Err(EXIT_PARSE)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> i32 {
    match out {
        Some(path) => match fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {}: {}", path.display(), e);
                EXIT_INTERNAL
            }
        },
        None => {
            print!("{}", text);
            EXIT_OK
        }
    }
}

fn curvature_exit(e: CurvatureError) -> i32 {
    eprintln!("error: {}", e);
    match e {
        CurvatureError::Disconnected => EXIT_DISCONNECTED,
        _ => EXIT_INTERNAL,
    }
}

fn build_report(
    g: &Graph,
    input: String,
    alpha: Option<&Rational>,
    decimal: bool,
) -> Result<ReportDocument, CurvatureError> {
    let mut edges = Vec::new();
    let mut all_flat = true;
    for (u, v) in g.edges() {
        let e = EdgeRef::new(u, v);
        let r = curvature::lly_curvature(g, e)?;
        all_flat &= r.flat;
        let mut doc = report::EdgeReportDoc::of(&r, decimal);
        if let Some(a) = alpha {
            let (k, _) = curvature::k_alpha(g, e, a)?;
            doc = doc.with_k_alpha(&k);
        }
        edges.push(doc);
    }
    Ok(ReportDocument {
        tool: report::tool_version(),
        input,
        graph: report::GraphDoc::of(g),
        alpha: alpha.map(|a| a.to_string()),
        edges,
        structure: None,
        flat: all_flat,
    })
}

fn cmd_curvature(args: CurvatureArgs) -> i32 {
    let (g, input) = match load_connected_graph(&args.input) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let alpha = match &args.alpha {
        None => None,
        Some(text) => match Rational::from_str(text) {
            Ok(a) => Some(a),
            Err(e) => {
                eprintln!("error: {}", e);
                return EXIT_PARSE;
            }
        },
    };
    match build_report(&g, input, alpha.as_ref(), args.input.decimal) {
        Ok(doc) => emit(&args.input.out, &report::render(&doc)),
        Err(e) => curvature_exit(e),
    }
}

fn cmd_check_flat(args: InputArgs) -> i32 {
    let (g, _) = match load_connected_graph(&args) {
        Ok(x) => x,
        Err(code) => return code,
    };
    match curvature::is_ricci_flat(&g) {
        Ok(r) if r.flat => {
            println!("flat: every edge has k = 0");
            EXIT_OK
        }
        Ok(r) => {
            let (e, k) = r.witness.expect("non-flat scan carries a witness");
            println!("not flat: edge {} has k = {}", e, k);
            EXIT_NEGATIVE
        }
        Err(e) => curvature_exit(e),
    }
}

fn cmd_idleness(args: IdlenessArgs) -> i32 {
    let (g, _) = match load_connected_graph(&args.input) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let [u, v] = args.edge[..] else {
        eprintln!("error: --edge expects two endpoints");
        return EXIT_PARSE;
    };
    if !g.has_edge(u, v) {
        eprintln!("error: ({}, {}) is not an edge", u, v);
        return EXIT_PARSE;
    }
    match curvature::idleness_profile(&g, EdgeRef::new(u, v)) {
        Ok(p) => {
            println!("edge ({}, {})  degrees ({}, {})", u, v, g.degree(u), g.degree(v));
            println!("breakpoints:");
            for (a, k) in &p.breakpoints {
                println!("  alpha = {:<8} k_alpha = {}", a.to_string(), k);
            }
            println!("pieces: {}", p.piece_count());
            for piece in &p.pieces {
                println!(
                    "  [{}, {}]  slope {}",
                    piece.from.0, piece.to.0, piece.slope
                );
            }
            println!("k = {}", p.k_from_final_slope());
            EXIT_OK
        }
        Err(e) => curvature_exit(e),
    }
}

fn cmd_catalog(args: CatalogArgs) -> i32 {
    match args.action {
        CatalogAction::List => {
            println!("named graphs:");
            for name in catalog::NAMED {
                match catalog::named(name) {
                    Ok(g) => println!("  {:<22} n = {:>2}, edges = {}", name, g.n(), g.edge_count()),
                    Err(e) => println!("  {:<22} error: {}", name, e),
                }
            }
            println!("families (use --family / catalog emit with a spec):");
            for fam in catalog::FAMILIES {
                println!("  {}", fam);
            }
            println!("local configurations:");
            for name in catalog::LOCAL_CONFIGURATIONS {
                println!("  {}", name);
            }
            println!("excluded configurations:");
            for name in catalog::EXCLUDED_CONFIGURATIONS {
                println!("  {}", name);
            }
            EXIT_OK
        }
        CatalogAction::Emit { what, format } => {
            let loaded = if what.contains('=') {
                FamilySpec::parse(&what).and_then(|s| catalog::family(&s)).map(|out| match out {
                    FamilyOutput::Quotient(g) => LoadedInput::Graph(g, String::new()),
                    FamilyOutput::Patch(p) => LoadedInput::Patch(p, String::new()),
                })
            } else {
                catalog::named(&what)
                    .or_else(|_| catalog::excluded_configuration(&what))
                    .or_else(|_| catalog::local_configuration(&what).map(|(g, _, _)| g))
                    .map(|g| LoadedInput::Graph(g, String::new()))
            };
            match loaded {
                Ok(LoadedInput::Graph(g, _)) => {
                    match format.as_str() {
                        "graph6" => println!("{}", codec::emit_graph6(&g)),
                        _ => print!("{}", codec::emit_edge_list(&g)),
                    }
                    EXIT_OK
                }
                Ok(LoadedInput::Patch(p, _)) => {
                    match format.as_str() {
                        "graph6" => println!("{}", codec::emit_graph6(&p.graph)),
                        _ => {
                            let mut boundary = p.boundary.clone();
                            boundary.sort_unstable();
                            print!(
                                "# patch; boundary vertices: {:?}\n{}",
                                boundary,
                                codec::emit_edge_list(&p.graph)
                            );
                        }
                    }
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    EXIT_PARSE
                }
            }
        }
    }
}

fn search_config(
    max_n: usize,
    min_deg: usize,
    max_deg: usize,
    class_g: bool,
    prune: bool,
    audit: bool,
    override_cap: bool,
) -> SearchConfig {
    SearchConfig {
        max_n,
        min_degree: min_deg,
        max_degree: max_deg,
        require_short_cycle: class_g,
        prune_rules: prune,
        audit_prunes: audit,
        override_cap,
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> i32 {
    let config = search_config(
        args.max_n,
        args.min_deg,
        args.max_deg,
        args.class_g,
        true,
        false,
        args.override_cap,
    );
    match ricciflat_core::search::enumerate(&config) {
        Ok(iter) => {
            let mut out = String::new();
            for g in iter {
                out.push_str(&codec::emit_graph6(&g));
                out.push('\n');
            }
            print!("{}", out);
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {}", e);
            EXIT_PARSE
        }
    }
}

#[derive(serde::Serialize)]
struct FindFlatDoc {
    tool: String,
    max_n: usize,
    min_degree: usize,
    max_degree: usize,
    class_g: bool,
    enumerated: usize,
    pruned: usize,
    audited: usize,
    audit_failures: Vec<String>,
    hits: Vec<FlatHitDoc>,
}

#[derive(serde::Serialize)]
struct FlatHitDoc {
    n: usize,
    certificate: String,
    graph6: String,
    edge_count: usize,
    types: Vec<String>,
    violations: usize,
}

fn cmd_find_flat(args: FindFlatArgs) -> i32 {
    let workers = if args.workers == 0 {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    } else {
        args.workers
    };
    let config = search_config(
        args.max_n,
        args.min_deg,
        args.max_deg,
        args.class_g,
        !args.no_prune,
        args.audit_prunes,
        args.override_cap,
    );
    match parallel::find_ricci_flat_parallel(&config, workers) {
        Ok(outcome) => {
            let hits = outcome
                .hits
                .iter()
                .map(|h| {
                    let mut types: Vec<String> =
                        h.classifications.iter().map(|c| c.tag.id().to_owned()).collect();
                    types.sort();
                    types.dedup();
                    FlatHitDoc {
                        n: h.graph.n(),
                        certificate: h.certificate.to_hex(),
                        graph6: codec::emit_graph6(&h.graph),
                        edge_count: h.graph.edge_count(),
                        types,
                        violations: h.violations.len(),
                    }
                })
                .collect();
            let doc = FindFlatDoc {
                tool: report::tool_version(),
                max_n: config.max_n,
                min_degree: config.min_degree,
                max_degree: config.max_degree,
                class_g: config.require_short_cycle,
                enumerated: outcome.enumerated,
                pruned: outcome.pruned,
                audited: outcome.audited,
                audit_failures: outcome.audit_failures.iter().map(|c| c.to_hex()).collect(),
                hits,
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
            text.push('\n');
            emit(&args.out, &text)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            EXIT_PARSE
        }
    }
}

fn cmd_classify(args: InputArgs) -> i32 {
    let (g, input) = match load_connected_graph(&args) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let mut doc = match build_report(&g, input, None, args.decimal) {
        Ok(d) => d,
        Err(e) => return curvature_exit(e),
    };
    let mut classifications = Vec::new();
    for (u, v) in g.edges() {
        let e = EdgeRef::new(u, v);
        match structure::classify_flat_edge(&g, e) {
            Ok(c) => classifications.push(report::ClassificationDoc::of(&c)),
            Err(err) => {
                eprintln!("error: {}", err);
                return EXIT_NEGATIVE;
            }
        }
    }
    let violations =
        structure::check_exclusion_lemmas(&g).iter().map(report::ViolationDoc::of).collect();
    let type5b = match structure::type5b_excluded(&g) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_INTERNAL;
        }
    };
    doc.structure = Some(report::StructureDoc {
        classifications,
        violations,
        type5b_excluded: type5b,
    });
    emit(&args.out, &report::render(&doc))
}

fn cmd_verify_report(args: VerifyArgs) -> i32 {
    let text = match fs::read_to_string(&args.path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {}", args.path.display(), e);
            return EXIT_PARSE;
        }
    };
    let doc: ReportDocument = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: invalid report: {}", e);
            return EXIT_PARSE;
        }
    };
    match verify::verify_report(&doc) {
        Ok(()) => {
            println!("report verified: {} edge entries re-checked", doc.edges.len());
            EXIT_OK
        }
        Err(failures) => {
            for f in &failures {
                println!("edge ({}, {}): {}", f.edge.0, f.edge.1, f.what);
            }
            println!("report verification failed: {} problem(s)", failures.len());
            EXIT_NEGATIVE
        }
    }
}
