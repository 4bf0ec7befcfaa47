//! Command-line surface for the pattern-structure toolkit.
//!
//! Exit codes: 0 success / all checks pass, 1 a verified property fails,
//! 2 input or parse error, 3 space/kernel/lattice validation failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pslat::cbo::{close_by_one, close_by_one_par, to_dot, to_json, ConceptSet};
use pslat::descriptions::{DescriptionSpace, ExplicitSpace, SetSpace};
use pslat::oracle::{run_property, OracleError, PropertyBudget};
use pslat::pattern::{parse_interval_csv, PatternStructure};
use pslat::projections::{
    aggregated_length_kernel, kernel_from_fixed_point, parse_kernel_json, proj_meet, KernelFile,
    TableKernel,
};
use pslat::representation::{
    context_to_json, interordinal_context, is_closed_relation, minimal_representation_context,
    parse_context_json, parse_cxt, reduce_attributes, representation_context, simpler_than,
    verify_representation, write_cxt, FormalContext, RepContext, SimplerOutcome,
};
use pslat::{Elt, FiniteLattice, IntervalSpace, IntervalVector};

#[derive(Parser)]
#[command(
    name = "pslat",
    about = "Pattern-structure lattices, projections, and representation contexts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all pattern concepts of a data file.
    Lattice(LatticeArgs),
    /// Project a pattern structure through one or more kernels, then
    /// compute the concepts.
    Project(ProjectArgs),
    /// Build a representation context.
    Repctx(RepctxArgs),
    /// Remove reducible attributes from a context.
    Reduce(ReduceArgs),
    /// Verify theorems and registered properties.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Numeric CSV read as an interval pattern structure.
    #[arg(long, conflicts_with = "cxt")]
    csv: Option<PathBuf>,
    /// Burmeister context read as an attribute-set pattern structure.
    #[arg(long)]
    cxt: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = ConceptFormat::Json)]
    format: ConceptFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the enumeration; output is identical for any
    /// thread count.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct ProjectArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Kernel files; several are folded with the projection meet.
    #[arg(long = "kernel", required = true)]
    kernels: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = ConceptFormat::Json)]
    format: ConceptFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct RepctxArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    builder: Builder,
    /// JSON list of attribute descriptions for the explicit builder.
    #[arg(long)]
    attrs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ContextFormat::Cxt)]
    format: ContextFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Context file (.cxt or .json).
    #[arg(long)]
    cxt: PathBuf,
    #[arg(long, value_enum, default_value_t = ContextFormat::Cxt)]
    format: ContextFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    check: Check,
}

#[derive(Subcommand)]
enum Check {
    /// Build a representation context and verify the concept bijection.
    Representation {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        builder: Builder,
        #[arg(long)]
        attrs: Option<PathBuf>,
    },
    /// Check whether context A is simpler than context B.
    Simpler {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Check whether one incidence is a closed relation of another.
    ClosedRelation {
        #[arg(long)]
        sub: PathBuf,
        #[arg(long)]
        full: PathBuf,
    },
    /// Run a registered oracle property.
    Property {
        name: String,
        /// Number of seeded random instances.
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        /// Base seed for the random instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exhaustive phase covers all lattices up to this size.
        #[arg(long, default_value_t = 5)]
        max_lattice: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConceptFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextFormat {
    Cxt,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    Interordinal,
    Minimal,
    Explicit,
}

enum CliError {
    /// Exit 2: unreadable or malformed input.
    Input(String),
    /// Exit 3: inputs parsed but failed validation.
    Validation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Validation(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Validation(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn validation_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum LoadedStructure {
    Intervals(PatternStructure<IntervalSpace>),
    Sets(PatternStructure<SetSpace>),
}

fn load_structure(input: &InputArgs) -> Result<LoadedStructure, CliError> {
    match (&input.csv, &input.cxt) {
        (Some(path), None) => {
            let ps = parse_interval_csv(&read(path)?).map_err(input_err)?;
            Ok(LoadedStructure::Intervals(ps))
        }
        (None, Some(path)) => {
            let ctx = load_context(path)?;
            Ok(LoadedStructure::Sets(ctx.as_pattern_structure()))
        }
        _ => Err(CliError::Input(
            "exactly one of --csv or --cxt is required".into(),
        )),
    }
}

fn load_context(path: &Path) -> Result<FormalContext, CliError> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_context_json(&text).map_err(input_err)
    } else {
        parse_cxt(&text).map_err(input_err)
    }
}

fn concepts_of<S>(ps: &PatternStructure<S>, threads: usize) -> Result<ConceptSet<S::D>, CliError>
where
    S: DescriptionSpace + Sync,
    S::D: Send + Sync,
{
    if threads <= 1 {
        close_by_one(ps).map_err(validation_err)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(validation_err)?;
        pool.install(|| close_by_one_par(ps))
            .map_err(validation_err)
    }
}

fn render_concepts<S>(
    ps: &PatternStructure<S>,
    cs: &ConceptSet<S::D>,
    format: ConceptFormat,
) -> String
where
    S: DescriptionSpace,
{
    match format {
        ConceptFormat::Json => format!("{}\n", to_json(ps, cs)),
        ConceptFormat::Dot => to_dot(ps, cs),
    }
}

fn cmd_lattice(args: &LatticeArgs) -> Result<(), CliError> {
    let text = match load_structure(&args.input)? {
        LoadedStructure::Intervals(ps) => {
            let cs = concepts_of(&ps, args.threads)?;
            render_concepts(&ps, &cs, args.format)
        }
        LoadedStructure::Sets(ps) => {
            let cs = concepts_of(&ps, args.threads)?;
            render_concepts(&ps, &cs, args.format)
        }
    };
    emit(&args.out, &text)
}

enum ParsedKernel {
    AggregatedLength(f64),
    Identity,
    FixedPoint {
        lattice: FiniteLattice,
        fixed: Vec<Elt>,
    },
}

fn load_kernels(paths: &[PathBuf]) -> Result<Vec<ParsedKernel>, CliError> {
    paths
        .iter()
        .map(|path| {
            let spec = parse_kernel_json(&read(path)?).map_err(input_err)?;
            match spec {
                KernelFile::AggregatedLength { threshold } => {
                    if threshold <= 0.0 {
                        return Err(CliError::Validation(
                            "aggregated-length threshold must be positive".into(),
                        ));
                    }
                    Ok(ParsedKernel::AggregatedLength(threshold))
                }
                KernelFile::Identity => Ok(ParsedKernel::Identity),
                KernelFile::FixedPoint {
                    lattice,
                    fixed_point,
                } => {
                    let lattice_path = path
                        .parent()
                        .unwrap_or_else(|| Path::new("."))
                        .join(lattice);
                    let spec = pslat::order::parse_lattice_json(&read(&lattice_path)?)
                        .map_err(input_err)?;
                    let lattice = pslat::order::validate_lattice(&spec).map_err(validation_err)?;
                    let fixed = fixed_point
                        .iter()
                        .map(|n| lattice.elt(n))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(validation_err)?;
                    Ok(ParsedKernel::FixedPoint { lattice, fixed })
                }
            }
        })
        .collect()
}

fn same_lattice(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.names() == b.names()
        && a.elements()
            .all(|x| a.elements().all(|y| a.meet(x, y) == b.meet(x, y)))
}

/// Rehosts a pattern structure onto an explicit lattice by matching the
/// rendered descriptions against the element names.
fn rehost<S: DescriptionSpace>(
    ps: &PatternStructure<S>,
    lattice: &FiniteLattice,
) -> Result<PatternStructure<ExplicitSpace>, CliError> {
    let delta = ps
        .deltas()
        .iter()
        .map(|d| {
            lattice.elt(&ps.space().render(d)).map_err(|_| {
                CliError::Validation(format!(
                    "kernel lattice has no element named `{}`",
                    ps.space().render(d)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    PatternStructure::new(
        ps.objects().to_vec(),
        ExplicitSpace::new(lattice.clone()),
        delta,
    )
    .map_err(validation_err)
}

fn fold_extensional(kernels: &[ParsedKernel]) -> Result<(FiniteLattice, TableKernel), CliError> {
    let mut lattice: Option<FiniteLattice> = None;
    let mut folded: Option<TableKernel> = None;
    for k in kernels {
        match k {
            ParsedKernel::Identity => {}
            ParsedKernel::AggregatedLength(_) => {
                return Err(CliError::Validation(
                    "cannot mix aggregated-length and fixed-point kernels".into(),
                ))
            }
            ParsedKernel::FixedPoint {
                lattice: lat,
                fixed,
            } => {
                match &lattice {
                    None => lattice = Some(lat.clone()),
                    Some(prev) if same_lattice(prev, lat) => {}
                    Some(_) => {
                        return Err(CliError::Validation(
                            "fixed-point kernels reference different lattices".into(),
                        ))
                    }
                }
                let k = kernel_from_fixed_point(lattice.as_ref().unwrap(), fixed)
                    .map_err(validation_err)?;
                folded = Some(match folded {
                    None => k,
                    Some(prev) => {
                        proj_meet(&prev, &k, lattice.as_ref().unwrap()).map_err(validation_err)?
                    }
                });
            }
        }
    }
    let lattice = lattice
        .ok_or_else(|| CliError::Validation("no fixed-point kernel among the inputs".into()))?;
    let folded = folded.unwrap_or_else(|| TableKernel::identity(&lattice));
    Ok((lattice, folded))
}

fn cmd_project(args: &ProjectArgs) -> Result<(), CliError> {
    let kernels = load_kernels(&args.kernels)?;
    let any_extensional = kernels
        .iter()
        .any(|k| matches!(k, ParsedKernel::FixedPoint { .. }));
    let structure = load_structure(&args.input)?;

    let text = if any_extensional {
        let (lattice, kernel) = fold_extensional(&kernels)?;
        let hosted = match &structure {
            LoadedStructure::Intervals(ps) => rehost(ps, &lattice)?,
            LoadedStructure::Sets(ps) => rehost(ps, &lattice)?,
        };
        let projected = pslat::projections::o_project(&hosted, kernel);
        let cs = concepts_of(&projected, args.threads)?;
        render_concepts(&projected, &cs, args.format)
    } else {
        // intensional kernels: the fold of comparable thresholds is the
        // smallest one
        let threshold = kernels
            .iter()
            .filter_map(|k| match k {
                ParsedKernel::AggregatedLength(t) => Some(*t),
                _ => None,
            })
            .fold(f64::INFINITY, f64::min);
        match &structure {
            LoadedStructure::Intervals(ps) => {
                if threshold.is_finite() {
                    let projected =
                        pslat::projections::o_project(ps, aggregated_length_kernel(threshold));
                    let cs = concepts_of(&projected, args.threads)?;
                    render_concepts(&projected, &cs, args.format)
                } else {
                    let cs = concepts_of(ps, args.threads)?;
                    render_concepts(ps, &cs, args.format)
                }
            }
            LoadedStructure::Sets(ps) => {
                if threshold.is_finite() {
                    return Err(CliError::Validation(
                        "aggregated-length kernels require interval data".into(),
                    ));
                }
                let cs = concepts_of(ps, args.threads)?;
                render_concepts(ps, &cs, args.format)
            }
        }
    };
    emit(&args.out, &text)
}

fn parse_attrs_intervals(text: &str, arity: usize) -> Result<Vec<IntervalVector>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(input_err)?;
    let entries = value
        .as_array()
        .ok_or_else(|| CliError::Input("attribute file must be a JSON array".into()))?;
    let endpoint = |v: &serde_json::Value| -> Result<f64, CliError> {
        if let Some(x) = v.as_f64() {
            return Ok(x);
        }
        if let Some(s) = v.as_str() {
            return pslat::descriptions::parse_endpoint(s).map_err(input_err);
        }
        Err(CliError::Input(format!("bad interval endpoint: {v}")))
    };
    entries
        .iter()
        .map(|entry| {
            if entry.as_str() == Some("TOP") {
                return Ok(IntervalVector::Top);
            }
            let comps = entry
                .as_array()
                .ok_or_else(|| CliError::Input(format!("bad attribute entry: {entry}")))?;
            if comps.len() != arity {
                return Err(CliError::Input(format!(
                    "attribute has {} components, expected {arity}",
                    comps.len()
                )));
            }
            let pairs = comps
                .iter()
                .map(|c| {
                    let pair = c
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| CliError::Input(format!("bad interval: {c}")))?;
                    Ok((endpoint(&pair[0])?, endpoint(&pair[1])?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            IntervalVector::from_pairs(&pairs).map_err(input_err)
        })
        .collect()
}

fn parse_attrs_sets(text: &str, space: &SetSpace) -> Result<Vec<pslat::BitSet>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(input_err)?;
    let entries = value
        .as_array()
        .ok_or_else(|| CliError::Input("attribute file must be a JSON array".into()))?;
    entries
        .iter()
        .map(|entry| {
            let names = entry
                .as_array()
                .ok_or_else(|| CliError::Input(format!("bad attribute entry: {entry}")))?;
            let mut set = pslat::BitSet::new(space.universe_size());
            for n in names {
                let name = n
                    .as_str()
                    .ok_or_else(|| CliError::Input(format!("bad attribute name: {n}")))?;
                let i = space
                    .attribute_names()
                    .iter()
                    .position(|a| a == name)
                    .ok_or_else(|| CliError::Input(format!("unknown attribute `{name}`")))?;
                set.insert(i);
            }
            Ok(set)
        })
        .collect()
}

fn build_repctx(
    structure: &LoadedStructure,
    builder: Builder,
    attrs: &Option<PathBuf>,
) -> Result<FormalContext, CliError> {
    match (structure, builder) {
        (LoadedStructure::Intervals(ps), Builder::Interordinal) => {
            Ok(interordinal_context(ps).map_err(validation_err)?.context)
        }
        (LoadedStructure::Sets(_), Builder::Interordinal) => Err(CliError::Input(
            "the interordinal builder requires interval data".into(),
        )),
        (LoadedStructure::Intervals(ps), Builder::Minimal) => {
            Ok(minimal_representation_context(ps)
                .map_err(validation_err)?
                .context)
        }
        (LoadedStructure::Sets(ps), Builder::Minimal) => Ok(minimal_representation_context(ps)
            .map_err(validation_err)?
            .context),
        (structure, Builder::Explicit) => {
            let path = attrs.as_ref().ok_or_else(|| {
                CliError::Input("--attrs is required for the explicit builder".into())
            })?;
            let text = read(path)?;
            match structure {
                LoadedStructure::Intervals(ps) => {
                    let m = parse_attrs_intervals(&text, ps.space().arity())?;
                    Ok(representation_context(ps, &m)
                        .map_err(validation_err)?
                        .context)
                }
                LoadedStructure::Sets(ps) => {
                    let m = parse_attrs_sets(&text, ps.space())?;
                    Ok(representation_context(ps, &m)
                        .map_err(validation_err)?
                        .context)
                }
            }
        }
    }
}

fn render_context(ctx: &FormalContext, format: ContextFormat) -> String {
    match format {
        ContextFormat::Cxt => write_cxt(ctx),
        ContextFormat::Json => format!("{}\n", context_to_json(ctx)),
    }
}

fn cmd_repctx(args: &RepctxArgs) -> Result<(), CliError> {
    let structure = load_structure(&args.input)?;
    let ctx = build_repctx(&structure, args.builder, &args.attrs)?;
    emit(&args.out, &render_context(&ctx, args.format))
}

fn cmd_reduce(args: &ReduceArgs) -> Result<(), CliError> {
    let ctx = load_context(&args.cxt)?;
    let reduced = reduce_attributes(&ctx);
    emit(&args.out, &render_context(&reduced, args.format))
}

fn report_line(check: &str, instance: &str, pass: bool, detail: serde_json::Value) {
    println!(
        "{}",
        serde_json::json!({
            "property": check,
            "instance": instance,
            "pass": pass,
            "detail": detail,
        })
    );
}

fn verify_representation_cmd(
    input: &InputArgs,
    builder: Builder,
    attrs: &Option<PathBuf>,
) -> Result<bool, CliError> {
    fn check<S: DescriptionSpace>(
        ps: &PatternStructure<S>,
        rep: &RepContext<S::D>,
    ) -> Result<bool, CliError> {
        let report = verify_representation(ps, rep).map_err(validation_err)?;
        report_line(
            "representation-bijection",
            "built context",
            report.ok(),
            serde_json::json!({
                "pattern_concepts": report.pattern_concepts,
                "context_concepts": report.context_concepts,
                "failures": report.failures,
            }),
        );
        Ok(report.ok())
    }
    let structure = load_structure(input)?;
    match (&structure, builder) {
        (LoadedStructure::Intervals(ps), Builder::Interordinal) => {
            let rep = interordinal_context(ps).map_err(validation_err)?;
            check(ps, &rep)
        }
        (LoadedStructure::Intervals(ps), Builder::Minimal) => {
            let rep = minimal_representation_context(ps).map_err(validation_err)?;
            check(ps, &rep)
        }
        (LoadedStructure::Sets(ps), Builder::Minimal) => {
            let rep = minimal_representation_context(ps).map_err(validation_err)?;
            check(ps, &rep)
        }
        (LoadedStructure::Sets(_), Builder::Interordinal) => Err(CliError::Input(
            "the interordinal builder requires interval data".into(),
        )),
        (structure, Builder::Explicit) => {
            let path = attrs.as_ref().ok_or_else(|| {
                CliError::Input("--attrs is required for the explicit builder".into())
            })?;
            let text = read(path)?;
            match structure {
                LoadedStructure::Intervals(ps) => {
                    let m = parse_attrs_intervals(&text, ps.space().arity())?;
                    let rep = representation_context(ps, &m).map_err(validation_err)?;
                    check(ps, &rep)
                }
                LoadedStructure::Sets(ps) => {
                    let m = parse_attrs_sets(&text, ps.space())?;
                    let rep = representation_context(ps, &m).map_err(validation_err)?;
                    check(ps, &rep)
                }
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    match &args.check {
        Check::Representation {
            input,
            builder,
            attrs,
        } => verify_representation_cmd(input, *builder, attrs),
        Check::Simpler { a, b } => {
            let ka = load_context(a)?;
            let kb = load_context(b)?;
            match simpler_than(&ka, &kb).map_err(input_err)? {
                SimplerOutcome::Simpler(w) => {
                    let witness: serde_json::Map<String, serde_json::Value> = w
                        .map
                        .into_iter()
                        .map(|(m, b)| (m, serde_json::json!(b)))
                        .collect();
                    report_line(
                        "simpler",
                        "A vs B",
                        true,
                        serde_json::json!({ "witness": witness }),
                    );
                    Ok(true)
                }
                SimplerOutcome::NotSimpler { attribute } => {
                    report_line(
                        "simpler",
                        "A vs B",
                        false,
                        serde_json::json!({ "failing_attribute": attribute }),
                    );
                    Ok(false)
                }
            }
        }
        Check::ClosedRelation { sub, full } => {
            let j = load_context(sub)?;
            let i = load_context(full)?;
            let closed = is_closed_relation(&j, &i).map_err(input_err)?;
            report_line(
                "closed-relation",
                "sub vs full",
                closed,
                serde_json::json!({}),
            );
            Ok(closed)
        }
        Check::Property {
            name,
            seeds,
            seed,
            max_lattice,
        } => {
            let budget = PropertyBudget {
                max_lattice_size: *max_lattice,
                random_instances: *seeds,
                base_seed: *seed,
            };
            let reports = run_property(name, &budget).map_err(|e| match e {
                OracleError::UnknownProperty(_) => input_err(e),
                other => validation_err(other),
            })?;
            let mut all_pass = true;
            for r in &reports {
                println!("{}", r.to_json_line());
                all_pass &= r.pass;
            }
            Ok(all_pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Lattice(args) => cmd_lattice(args).map(|()| true),
        Command::Project(args) => cmd_project(args).map(|()| true),
        Command::Repctx(args) => cmd_repctx(args).map(|()| true),
        Command::Reduce(args) => cmd_reduce(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
