//! `fpl`: run the fixed-point and chief-factor checkers from the command line.
//!
//! Exit status: 0 when every check passed, 1 on input errors, 2 when a
//! check failed or was inconclusive, 3 when only hypotheses were violated,
//! 4 when a resource cap was hit.

mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fpl_core::catalog::{self, CatalogEntry, VerifyOptions};
use fpl_core::io::{export_json, GroupFile, ModuleFile};
use fpl_core::metrics::{self, CheckResult, SCOTT_SEED, SCOTT_TRIALS};
use fpl_core::module::meataxe::{MEATAXE_BUDGET, MEATAXE_SEED};
use fpl_core::module::MeataxeConfig;
use fpl_core::perm::DEFAULT_ENUM_CAP;
use fpl_core::{chief, Coset, Error, PermGroup, Permutation};
use rayon::prelude::*;
use serde_json::json;

use report::{emit, Format, Report, RunSettings};

#[derive(Parser)]
#[command(name = "fpl", version, about = "Fixed-point dimension and chief-factor verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or export the built-in witness groups and modules.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Run checks and write a report.
    Verify(VerifyArgs),
    /// Print a single quantity for one group or module.
    Compute(ComputeArgs),
    /// Re-render a saved JSON report.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: ListFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write `{"group": ..., "module": ...}` for an entry.
    Export {
        id: String,
        /// Family parameter, e.g. `--param p=5`.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, u64)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Target {
    /// Catalog entry id or family name (repeatable).
    #[arg(long = "entry")]
    entries: Vec<String>,
    /// Family parameter for `--entry`, e.g. `--param q=9`.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, u64)>,
    /// Group JSON file.
    #[arg(long, conflicts_with = "entries")]
    group: Option<PathBuf>,
    /// Module JSON file, one matrix per group generator.
    #[arg(long, requires = "group")]
    module: Option<PathBuf>,
    /// Generator of N in cycle notation (repeatable).
    #[arg(long)]
    normal: Vec<String>,
    /// Coset representative in cycle notation.
    #[arg(long = "coset-rep")]
    coset_rep: Option<String>,
}

#[derive(Args)]
struct Caps {
    /// Seed for the Meataxe and the Scott harness.
    #[arg(long, env = "FPL_SEED", value_parser = parse_u64)]
    seed: Option<u64>,
    /// Largest group order that may be enumerated element by element.
    #[arg(long = "enum-cap", default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: usize,
    /// Random algebra elements tried per Meataxe call.
    #[arg(long = "meataxe-budget", default_value_t = MEATAXE_BUDGET)]
    meataxe_budget: usize,
    #[arg(long = "scott-trials", default_value_t = SCOTT_TRIALS)]
    scott_trials: usize,
}

impl Caps {
    fn meataxe(&self) -> MeataxeConfig {
        MeataxeConfig {
            seed: self.seed.unwrap_or(MEATAXE_SEED),
            budget: self.meataxe_budget,
            ..MeataxeConfig::default()
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the timestamp out of the report.
    #[arg(long = "no-timestamp")]
    no_timestamp: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Every stock catalog entry and every check.
    #[arg(long)]
    all: bool,
    /// Check id or family (t1, cor1, t2, t3, cor2, bfc, gen, scott, spectrum); repeatable.
    #[arg(long = "check")]
    checks: Vec<String>,
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    caps: Caps,
    #[command(flatten)]
    output: Output,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    /// Mean fixed-space dimension over the coset N*g.
    Avgdim,
    /// Chief series with central and abelian flags.
    Chief,
    /// n, ncf, |G'|, m and k(F(G)).
    Bfc,
    /// Class sizes and centralizer orders.
    Classes,
    /// Composition factors of the module restricted to N.
    Composition,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    quantity: Quantity,
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    caps: Caps,
    #[arg(long, value_enum, default_value = "text")]
    format: ListFormat,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON report written by `verify --format json`.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_u64(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("`{s}`: {e}"))
}

fn parse_param(s: &str) -> std::result::Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), parse_u64(v)?))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_perm(s: &str, g: &PermGroup, what: &str) -> Result<Permutation> {
    let p = Permutation::from_cycles(s, g.degree()).with_context(|| format!("{what} `{s}`"))?;
    g.require_member(&p).with_context(|| format!("{what} `{s}`"))?;
    Ok(p)
}

fn check_cap(entry: &CatalogEntry, cap: usize) -> Result<()> {
    let order = entry.group.order();
    if order > cap as u128 {
        return Err(Error::Cap(format!("enum-cap {cap} is below |G| = {order} for {}", entry.id)).into());
    }
    Ok(())
}

/// The entries named on the command line, or an ad hoc entry built from
/// `--group`/`--module`.
fn resolve(target: &Target, caps: &Caps, all: bool) -> Result<Vec<CatalogEntry>> {
    let mut entries = if let Some(path) = &target.group {
        vec![input_entry(target, path, caps)?]
    } else if !target.entries.is_empty() {
        let params: BTreeMap<String, u64> = target.params.iter().cloned().collect();
        target
            .entries
            .iter()
            .map(|id| catalog::build_entry(id, &params).with_context(|| format!("catalog entry `{id}`")))
            .collect::<Result<_>>()?
    } else if all {
        catalog::catalog_sweep()?
    } else {
        bail!("no target: pass --all, --entry or --group");
    };
    for e in &mut entries {
        check_cap(e, caps.enum_cap)?;
        if target.group.is_none() && (!target.normal.is_empty() || target.coset_rep.is_some()) {
            apply_overrides(e, target)?;
        }
    }
    Ok(entries)
}

fn apply_overrides(e: &mut CatalogEntry, target: &Target) -> Result<()> {
    if !target.normal.is_empty() {
        let gens = target
            .normal
            .iter()
            .map(|s| parse_perm(s, &e.group, "--normal"))
            .collect::<Result<Vec<_>>>()?;
        e.designated_normal = Some(e.group.subgroup(gens)?);
        e.expected.clear();
    }
    if let Some(s) = &target.coset_rep {
        e.generation = Some(parse_perm(s, &e.group, "--coset-rep")?);
    }
    Ok(())
}

fn input_entry(target: &Target, path: &Path, caps: &Caps) -> Result<CatalogEntry> {
    let file = GroupFile::parse(&read(path)?).with_context(|| path.display().to_string())?;
    let group = file
        .to_group()
        .with_context(|| path.display().to_string())?
        .set_enum_cap(caps.enum_cap);
    let rep = match &target.module {
        Some(mpath) => Some(Arc::new(
            ModuleFile::parse(&read(mpath)?)
                .and_then(|m| m.to_rep(&group))
                .with_context(|| mpath.display().to_string())?,
        )),
        None => None,
    };
    let mut entry = CatalogEntry {
        id: file.name.clone().unwrap_or_else(|| "input".into()),
        family: "input".into(),
        params: BTreeMap::new(),
        group,
        rep,
        designated_normal: None,
        expected: Vec::new(),
        generation: None,
    };
    apply_overrides(&mut entry, target)?;
    Ok(entry)
}

fn known_check_ids() -> BTreeSet<&'static str> {
    catalog::CHECK_FAMILIES.iter().flat_map(|(_, ids)| ids.iter().copied()).collect()
}

fn verify(args: &VerifyArgs) -> Result<i32> {
    let checks = if args.checks.is_empty() {
        None
    } else {
        let set = catalog::expand_checks(&args.checks);
        let known = known_check_ids();
        if let Some(bad) = set.iter().find(|c| !known.contains(c.as_str())) {
            bail!("unknown check `{bad}`");
        }
        Some(set)
    };
    let entries = resolve(&args.target, &args.caps, args.all)?;
    let opts = VerifyOptions {
        meataxe: args.caps.meataxe(),
        scott_trials: args.caps.scott_trials,
        scott_seed: args.caps.seed.unwrap_or(SCOTT_SEED),
        checks: checks.clone(),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build()?;
    let per_entry: Vec<(Vec<CheckResult>, Vec<String>)> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| verify_one(e, &opts).with_context(|| format!("entry {}", e.id)))
            .collect::<Result<_>>()
    })?;
    let mut results = Vec::new();
    let mut mismatches = Vec::new();
    for (r, m) in per_entry {
        results.extend(r);
        mismatches.extend(m);
    }
    metrics::sort_results(&mut results);
    mismatches.sort();

    let settings = RunSettings {
        meataxe_seed: opts.meataxe.seed,
        meataxe_budget: opts.meataxe.budget,
        scott_seed: opts.scott_seed,
        scott_trials: opts.scott_trials,
        enum_cap: args.caps.enum_cap,
        checks: checks.map_or_else(|| vec!["all".into()], |c| c.into_iter().collect()),
        targets: entries.iter().map(|e| e.id.clone()).collect(),
    };
    let report = Report::new("verify", settings, results, mismatches, !args.output.no_timestamp);
    emit(&report.render(args.output.format)?, args.output.out.as_deref())?;
    Ok(report.exit_code())
}

fn verify_one(entry: &CatalogEntry, opts: &VerifyOptions) -> Result<(Vec<CheckResult>, Vec<String>)> {
    let mut entry = entry.clone();
    let mut extra = Vec::new();
    if let Some(n) = &entry.designated_normal {
        if !n.is_normal_in(&entry.group) {
            let wanted = opts.checks.as_ref().map_or(true, |c| c.contains("t1") || c.contains("cor1") || c.contains("gen"));
            if wanted {
                extra.push(
                    CheckResult::hypothesis_failed("t1", format!("|N|={}", n.order()), "N is not normal in G")
                        .prefixed(&entry.id),
                );
            }
            entry.designated_normal = None;
            entry.generation = None;
        }
    }
    let mut results = catalog::verify_entry(&entry, opts)?;
    results.extend(extra);
    if let Some(c) = &opts.checks {
        entry.expected.retain(|e| c.contains(&e.check_id));
    }
    let mismatches = catalog::expected_mismatches(&entry, &results);
    Ok((results, mismatches))
}

fn single(target: &Target, caps: &Caps) -> Result<CatalogEntry> {
    let mut entries = resolve(target, caps, false)?;
    if entries.len() != 1 {
        bail!("compute takes exactly one --entry or --group");
    }
    Ok(entries.remove(0))
}

fn compute(args: &ComputeArgs) -> Result<i32> {
    let entry = single(&args.target, &args.caps)?;
    let g = &entry.group;
    let n = entry.designated_normal.clone().unwrap_or_else(|| g.clone());
    let need_rep = || entry.rep.clone().ok_or_else(|| anyhow!("{} has no module; pass --module", entry.id));
    let (text, value) = match args.quantity {
        Quantity::Avgdim => {
            let rep = need_rep()?;
            let x = entry.generation.clone().unwrap_or_else(|| g.identity());
            let avg = rep.avgdim(&Coset::new(n.clone(), x))?;
            let ratio = avg.ratio();
            (
                format!("{ratio} ({avg})\n"),
                json!({"avgdim": ratio.to_string(), "total": avg.total, "count": avg.count}),
            )
        }
        Quantity::Chief => {
            let series = chief::chief_series(g)?;
            let (ccf, ncf) = series.ccf_ncf();
            let factors: Vec<_> = series
                .factors
                .iter()
                .map(|f| json!({"order": f.order, "abelian": f.is_abelian, "central": f.is_central}))
                .collect();
            (
                format!("{}ccf {ccf}\nncf {ncf}\n", series.table()),
                json!({"factors": factors, "ccf": ccf, "ncf": ncf}),
            )
        }
        Quantity::Bfc => {
            let series = chief::chief_series(g)?;
            let d = metrics::bfc_data(g, &series)?;
            (
                format!(
                    "n {}\nncf {}\nderived_order {}\nm {}\nfitting_classes {}\n",
                    d.n, d.ncf, d.derived_order, d.m, d.fitting_classes
                ),
                json!({"n": d.n, "ncf": d.ncf, "derived_order": d.derived_order, "m": d.m, "fitting_classes": d.fitting_classes}),
            )
        }
        Quantity::Classes => {
            let cd = g.conjugacy_classes()?;
            let mut text = format!("order {}\nclasses {}\n", g.order(), cd.len());
            let mut rows = Vec::new();
            for ((r, size), c) in cd.class_reps.iter().zip(&cd.class_sizes).zip(&cd.centralizer_orders) {
                text.push_str(&format!("{r}  size {size}  centralizer {c}\n"));
                rows.push(json!({"rep": r.to_string(), "size": size, "centralizer": c}));
            }
            (text, json!({"order": g.order(), "classes": rows}))
        }
        Quantity::Composition => {
            let rep = need_rep()?;
            let cs = rep.composition_series(&n, &args.caps.meataxe())?;
            let text = format!(
                "dims {:?}\ntrivial {:?}\ntrivial_count {}\n",
                cs.factor_dims,
                cs.factor_trivial,
                cs.trivial_count()
            );
            (
                text,
                json!({"dims": cs.factor_dims, "trivial": cs.factor_trivial, "trivial_count": cs.trivial_count()}),
            )
        }
    };
    match args.format {
        ListFormat::Text => emit(text.as_bytes(), None)?,
        ListFormat::Json => emit(format!("{}\n", serde_json::to_string_pretty(&value)?).as_bytes(), None)?,
    }
    Ok(0)
}

fn catalog_cmd(action: &CatalogCmd) -> Result<i32> {
    match action {
        CatalogCmd::List { format, out } => {
            let entries = catalog::catalog_sweep()?;
            let bytes = match format {
                ListFormat::Text => {
                    let mut s = String::new();
                    for e in &entries {
                        s.push_str(&format!(
                            "{:<18} |G|={:<6} degree={:<4} {}\n",
                            e.id,
                            e.group.order(),
                            e.group.degree(),
                            describe_module(e)
                        ));
                    }
                    s.into_bytes()
                }
                ListFormat::Json => {
                    let rows: Vec<_> = entries
                        .iter()
                        .map(|e| {
                            json!({
                                "id": e.id,
                                "family": e.family,
                                "order": e.group.order(),
                                "degree": e.group.degree(),
                                "field_order": e.rep.as_ref().map(|r| r.field().order()),
                                "dim": e.rep.as_ref().map(|r| r.dim()),
                                "normal_order": e.designated_normal.as_ref().map(|n| n.order()),
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&rows)?).into_bytes()
                }
            };
            emit(&bytes, out.as_deref())?;
        }
        CatalogCmd::Export { id, params, out } => {
            let params: BTreeMap<String, u64> = params.iter().cloned().collect();
            let e = catalog::build_entry(id, &params).with_context(|| format!("catalog entry `{id}`"))?;
            let value = export_json(&e.id, &e.group, e.rep.as_deref());
            emit(format!("{}\n", serde_json::to_string_pretty(&value)?).as_bytes(), out.as_deref())?;
        }
    }
    Ok(0)
}

fn describe_module(e: &CatalogEntry) -> String {
    let module = match &e.rep {
        Some(r) => format!("dim {} over GF({})", r.dim(), r.field().order()),
        None => "no module".into(),
    };
    match &e.designated_normal {
        Some(n) => format!("{module}, |N|={}", n.order()),
        None => module,
    }
}

fn rerender(args: &ReportArgs) -> Result<i32> {
    let report = Report::parse(&read(&args.input)?).with_context(|| args.input.display().to_string())?;
    emit(&report.render(args.format)?, args.out.as_deref())?;
    Ok(report.exit_code())
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::EnumerationCap { .. } | Error::Cap(_) | Error::MeataxeBudget(_) | Error::DimensionCap(_) => 4,
                Error::Hypothesis(_) | Error::NotNormal(_) => 3,
                _ => 1,
            };
        }
    }
    1
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = match &cli.command {
        Command::Catalog { action } => catalog_cmd(action),
        Command::Verify(args) => verify(args),
        Command::Compute(args) => compute(args),
        Command::Report(args) => rerender(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
