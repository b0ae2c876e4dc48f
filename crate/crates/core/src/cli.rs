//! Command-line front end: `fit`, `generate`, `measure`, `compare`.
//!
//! Every run first prints its resolved configuration as `key = value`
//! lines. Saving that block to a file and passing it back with
//! `--config FILE` reproduces the run; flags given after `--config`
//! override the file. Report values follow as `# key = value` comments.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::assembly::{compact, dedup_with, DedupStrategy, Graph};
use crate::edgegen::{generate_with, GenerationPlan, PhaseMode};
use crate::error::{BterError, Result};
use crate::idealized::{
    fit_dgln, fit_dpl, fit_xi, noisy_ccd, pmf, realize_degree_distribution, target_gcc, CcdProfile,
    ClusteringDecay, DegreeFamily, Realization,
};
use crate::io;
use crate::metrics::{
    ccd_exact_binned, ccd_sampled, compare_profiles, degree_distribution, DegreeBinning, WedgeSampling,
};
use crate::model::{validate_inputs, ClusteringProfile};
use crate::setup::{bter_setup, SetupTables};

#[derive(Debug, Parser)]
#[command(name = "bter", version, about = "BTER graph generation and measurement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit an idealized degree distribution and clustering profile.
    Fit(FitArgs),
    /// Generate a graph from degree and clustering files.
    Generate(GenerateArgs),
    /// Measure degree distribution and clustering of an edge list.
    Measure(MeasureArgs),
    /// Compare two degree/clustering file pairs.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Dpl,
    Dgln,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecayArg {
    Power,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RealizeArg {
    Sample,
    Expected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DedupArg {
    Sort,
    Hash,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct FitArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Target average degree.
    #[arg(long)]
    pub dbar: f64,
    /// Maximum degree.
    #[arg(long)]
    pub dstar: usize,
    /// Number of nodes to realize.
    #[arg(long)]
    pub n: u64,
    /// Tail bound P(D = dstar) for the generalized log-normal; default 0.1/n.
    #[arg(long)]
    pub eps_tol: Option<f64>,
    #[arg(long, value_enum, default_value = "sample")]
    pub realize: RealizeArg,
    /// Clustering at degree 2 scale; needs --gcc or --xi.
    #[arg(long)]
    pub cmax: Option<f64>,
    /// Target global clustering; xi is fitted to reach it.
    #[arg(long, conflicts_with = "xi")]
    pub gcc: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long, value_enum, default_value = "power")]
    pub decay: DecayArg,
    /// Perturb each c_d with clamped Gaussian noise.
    #[arg(long)]
    pub noise: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Also write degree.csv.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct GenerateArgs {
    #[arg(long)]
    pub dd: PathBuf,
    /// Required unless --cl-mode.
    #[arg(long)]
    pub ccd: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Defaults to the available hardware parallelism.
    #[arg(long)]
    pub partitions: Option<usize>,
    /// Skip Phase 1 (Chung-Lu baseline).
    #[arg(long)]
    pub cl_mode: bool,
    /// Fix each partition's Phase-1 count up front.
    #[arg(long)]
    pub split_phases: bool,
    /// Drop isolated nodes and relabel densely.
    #[arg(long)]
    pub compact: bool,
    #[arg(long)]
    pub one_based: bool,
    #[arg(long, value_enum, default_value = "sort")]
    pub dedup: DedupArg,
    #[arg(long, default_value = "edges.txt")]
    pub out: PathBuf,
    /// Write the setup tables here.
    #[arg(long)]
    pub tables: Option<PathBuf>,
    /// Skip triangle counting in the report.
    #[arg(long)]
    pub skip_gcc: bool,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct MeasureArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub one_based: bool,
    /// Estimate clustering from this many wedges per bin.
    #[arg(long)]
    pub sampled: Option<u64>,
    #[arg(long, default_value_t = 0.999)]
    pub confidence: f64,
    #[arg(long)]
    pub log_bins: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Also write degree.csv and ccd.csv.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct CompareArgs {
    #[arg(long)]
    pub dd_a: PathBuf,
    #[arg(long)]
    pub ccd_a: PathBuf,
    #[arg(long)]
    pub dd_b: PathBuf,
    #[arg(long)]
    pub ccd_b: PathBuf,
    /// Degrees with fewer nodes on either side are left out of the gap.
    #[arg(long, default_value_t = 100)]
    pub min_nodes: u64,
    /// Per-degree CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Resolved parameters of one run as ordered `key = value` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub entries: Vec<(String, String)>,
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: impl fmt::Display) {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut config = RunConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| BterError::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                msg: "expected key = value".into(),
            })?;
            config.set(k.trim(), v.trim());
        }
        Ok(config)
    }

    /// Flags equivalent to this config. `command` is skipped, `true` becomes
    /// a bare switch and `false` is dropped.
    pub fn to_args(&self) -> Vec<OsString> {
        let mut args = Vec::new();
        for (k, v) in &self.entries {
            if k == "command" || v == "false" {
                continue;
            }
            args.push(format!("--{}", k.replace('_', "-")).into());
            if v != "true" {
                args.push(v.into());
            }
        }
        args
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

/// Replaces `--config FILE` (or `--config=FILE`) with the file's flags,
/// placed right after the subcommand so explicit flags win.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut files = Vec::new();
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let path = it
                .next()
                .ok_or_else(|| BterError::validation("--config needs a file"))?;
            files.push(PathBuf::from(path));
        } else if let Some(p) = s.strip_prefix("--config=") {
            files.push(PathBuf::from(p));
        } else {
            rest.push(a);
        }
    }
    if files.is_empty() {
        return Ok(rest);
    }
    let mut injected = Vec::new();
    for path in files {
        let text = fs::read_to_string(&path).map_err(|e| BterError::io(&path, e))?;
        injected.extend(RunConfig::parse(&text, &path)?.to_args());
    }
    let at = rest.len().min(2);
    rest.splice(at..at, injected);
    Ok(rest)
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| BterError::io(dir, e))
}

fn out_err(e: std::io::Error) -> BterError {
    BterError::io("<stdout>", e)
}

/// Report lines are commented out so a whole run log can be passed back
/// as `--config`.
fn write_report(out: &mut dyn Write, report: &RunConfig) -> Result<()> {
    for (k, v) in &report.entries {
        writeln!(out, "# {k} = {v}").map_err(out_err)?;
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing the config echo and report to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = expand_config(args.into_iter().map(Into::into).collect())?;
    let cli = Cli::try_parse_from(args).map_err(|e| BterError::Validation(e.to_string()))?;
    execute(cli.command, out)
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Fit(a) => cmd_fit(&a, out),
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Measure(a) => cmd_measure(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

pub fn cmd_fit(a: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let seed = resolve_seed(a.seed);
    let eps_tol = a.eps_tol.unwrap_or(0.1 / a.n as f64);
    let mut cfg = RunConfig::default();
    cfg.set("command", "fit");
    cfg.set("family", value_name(a.family));
    cfg.set("dbar", a.dbar);
    cfg.set("dstar", a.dstar);
    cfg.set("n", a.n);
    cfg.set("eps_tol", eps_tol);
    cfg.set("realize", value_name(a.realize));
    if let Some(c) = a.cmax {
        cfg.set("cmax", c);
    }
    if let Some(g) = a.gcc {
        cfg.set("gcc", g);
    }
    if let Some(x) = a.xi {
        cfg.set("xi", x);
    }
    cfg.set("decay", value_name(a.decay));
    cfg.set("noise", a.noise);
    cfg.set("seed", seed);
    cfg.set("out_dir", a.out_dir.display());
    cfg.set("csv", a.csv);
    write!(out, "{cfg}").map_err(out_err)?;

    if a.n == 0 {
        return Err(BterError::validation("--n must be at least 1"));
    }
    let family = match a.family {
        FamilyArg::Dpl => DegreeFamily::PowerLaw {
            gamma: fit_dpl(a.dbar, a.dstar)?,
        },
        FamilyArg::Dgln => {
            let fit = fit_dgln(a.dbar, a.dstar, eps_tol)?;
            DegreeFamily::GenLogNormal {
                alpha: fit.alpha,
                beta: fit.beta,
            }
        }
    };
    let p = pmf(family, a.dstar)?;
    let mode = match a.realize {
        RealizeArg::Sample => Realization::Sample,
        RealizeArg::Expected => Realization::Expected,
    };
    let dd = realize_degree_distribution(&p, a.n, mode, seed)?;

    let mut report = RunConfig::default();
    match family {
        DegreeFamily::PowerLaw { gamma } => report.set("gamma", gamma),
        DegreeFamily::GenLogNormal { alpha, beta } => {
            report.set("alpha", alpha);
            report.set("beta", beta);
        }
    }
    report.set("pmf_mean", p.mean());
    report.set("pmf_tail", p.tail());
    report.set("realized_nodes", dd.num_nodes());
    report.set("realized_mean", dd.mean_degree());
    report.set("realized_d_max", dd.d_max());

    ensure_dir(&a.out_dir)?;
    io::write_file(&a.out_dir.join("dd.txt"), |w| io::write_degree_distribution(w, &dd))?;
    if a.csv {
        io::write_file(&a.out_dir.join("degree.csv"), |w| io::write_degree_csv(w, &dd, false))?;
    }

    let decay = match a.decay {
        DecayArg::Power => ClusteringDecay::Power,
        DecayArg::Linear => ClusteringDecay::Linear,
    };
    match (a.cmax, a.gcc, a.xi) {
        (Some(cmax), gcc, xi) if gcc.is_some() || xi.is_some() => {
            let xi = match xi {
                Some(x) => x,
                None => fit_xi(cmax, gcc.unwrap_or_default(), &dd, decay)?,
            };
            let profile = CcdProfile {
                cmax,
                xi,
                decay,
                max_degree: dd.d_max(),
                noise: a.noise,
            };
            let ccd = noisy_ccd(&profile, seed.wrapping_add(1));
            report.set("xi", xi);
            report.set("target_gcc", target_gcc(&dd, &profile)?);
            io::write_file(&a.out_dir.join("ccd.txt"), |w| io::write_clustering_profile(w, &ccd))?;
        }
        (None, None, None) => {}
        _ => {
            return Err(BterError::validation(
                "a clustering profile needs --cmax together with --gcc or --xi",
            ))
        }
    }
    write_report(out, &report)
}

/// Statistics of one generation run; the two timings are excluded from
/// the determinism contract.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationReport {
    pub raw_draws: u64,
    pub nodes: u64,
    pub edges: u64,
    pub isolated: u64,
    pub d_max: usize,
    pub d_avg: f64,
    pub gcc: Option<f64>,
    pub generation_seconds: f64,
    pub dedup_seconds: f64,
}

/// Setup, generation and deduplication as performed by `generate`.
/// Isolated ids are kept (`num_nodes` matches the tables) unless
/// `compact` is set.
pub fn run_generation(
    tables: &SetupTables,
    seed: u64,
    partitions: usize,
    mode: PhaseMode,
    strategy: DedupStrategy,
    compact_ids: bool,
) -> Result<(Graph, f64, f64, u64)> {
    let plan = GenerationPlan::for_tables(tables, partitions)?;
    let t0 = Instant::now();
    let raw = generate_with(tables, &plan, seed, mode);
    let gen_s = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let mut graph = dedup_with(raw, strategy).with_num_nodes(tables.num_nodes())?;
    if compact_ids {
        graph = compact(&graph);
    }
    let dedup_s = t1.elapsed().as_secs_f64();
    Ok((graph, gen_s, dedup_s, plan.total_draws()))
}

pub fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let seed = resolve_seed(a.seed);
    let partitions = a.partitions.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    });
    let mut cfg = RunConfig::default();
    cfg.set("command", "generate");
    cfg.set("dd", a.dd.display());
    if let Some(c) = &a.ccd {
        cfg.set("ccd", c.display());
    }
    cfg.set("beta", a.beta);
    cfg.set("seed", seed);
    cfg.set("partitions", partitions);
    cfg.set("cl_mode", a.cl_mode);
    cfg.set("split_phases", a.split_phases);
    cfg.set("compact", a.compact);
    cfg.set("one_based", a.one_based);
    cfg.set("dedup", value_name(a.dedup));
    cfg.set("out", a.out.display());
    if let Some(t) = &a.tables {
        cfg.set("tables", t.display());
    }
    cfg.set("skip_gcc", a.skip_gcc);
    write!(out, "{cfg}").map_err(out_err)?;

    let dd = io::read_degree_distribution(&a.dd)?;
    let ccd = match (&a.ccd, a.cl_mode) {
        (Some(path), _) => io::read_clustering_profile(path)?,
        (None, true) => ClusteringProfile::constant(0.0, dd.d_max()),
        (None, false) => return Err(BterError::validation("--ccd is required unless --cl-mode is set")),
    };
    let inputs = validate_inputs(dd, ccd, a.beta)?;
    let tables = if a.cl_mode {
        SetupTables::chung_lu(&inputs)?
    } else {
        bter_setup(&inputs)?
    };
    if let Some(path) = &a.tables {
        io::write_file(path, |w| io::write_tables(w, &tables))?;
    }
    let mode = if a.split_phases { PhaseMode::Split } else { PhaseMode::Mixed };
    let strategy = match a.dedup {
        DedupArg::Sort => DedupStrategy::Sort,
        DedupArg::Hash => DedupStrategy::Hash,
    };
    let (graph, gen_s, dedup_s, draws) = run_generation(&tables, seed, partitions, mode, strategy, a.compact)?;
    io::write_file(&a.out, |w| io::write_graph(w, &graph, a.one_based))?;

    let observed = degree_distribution(&graph);
    let nodes = observed.distribution.num_nodes();
    let report = GenerationReport {
        raw_draws: draws,
        nodes,
        edges: graph.num_edges() as u64,
        isolated: observed.isolated,
        d_max: observed.distribution.d_max(),
        d_avg: if nodes > 0 { 2.0 * graph.num_edges() as f64 / nodes as f64 } else { 0.0 },
        gcc: (!a.skip_gcc).then(|| crate::metrics::ccd_exact(&graph).gcc),
        generation_seconds: gen_s,
        dedup_seconds: dedup_s,
    };
    let mut r = RunConfig::default();
    r.set("raw_draws", report.raw_draws);
    r.set("nodes", report.nodes);
    r.set("edges", report.edges);
    r.set("isolated", report.isolated);
    r.set("d_max", report.d_max);
    r.set("d_avg", report.d_avg);
    if let Some(g) = report.gcc {
        r.set("gcc", g);
    }
    r.set("generation_seconds", report.generation_seconds);
    r.set("dedup_seconds", report.dedup_seconds);
    write_report(out, &r)
}

pub fn cmd_measure(a: &MeasureArgs, out: &mut dyn Write) -> Result<()> {
    let seed = resolve_seed(a.seed);
    let mut cfg = RunConfig::default();
    cfg.set("command", "measure");
    cfg.set("edges", a.edges.display());
    cfg.set("one_based", a.one_based);
    if let Some(k) = a.sampled {
        cfg.set("sampled", k);
        cfg.set("confidence", a.confidence);
    }
    cfg.set("log_bins", a.log_bins);
    cfg.set("seed", seed);
    cfg.set("out_dir", a.out_dir.display());
    cfg.set("csv", a.csv);
    write!(out, "{cfg}").map_err(out_err)?;

    let graph = crate::assembly::dedup(io::read_edges(&a.edges, a.one_based)?);
    let binning = if a.log_bins { DegreeBinning::Log2 } else { DegreeBinning::Exact };
    let report = match a.sampled {
        Some(k) => ccd_sampled(
            &graph,
            &WedgeSampling {
                samples_per_bin: k,
                confidence: a.confidence,
                binning,
            },
            seed,
        )?,
        None => ccd_exact_binned(&graph, binning),
    };
    let observed = degree_distribution(&graph);
    let dd = &observed.distribution;

    ensure_dir(&a.out_dir)?;
    io::write_file(&a.out_dir.join("dd.txt"), |w| io::write_degree_distribution(w, dd))?;
    io::write_file(&a.out_dir.join("ccd.txt"), |w| {
        io::write_clustering_profile(w, &report.to_profile())
    })?;
    io::write_file(&a.out_dir.join("ccd_report.txt"), |w| io::write_ccd_report(w, &report))?;
    if a.csv {
        io::write_file(&a.out_dir.join("degree.csv"), |w| io::write_degree_csv(w, dd, a.log_bins))?;
        io::write_file(&a.out_dir.join("ccd.csv"), |w| io::write_ccd_csv(w, &report))?;
    }

    let mut r = RunConfig::default();
    r.set("nodes", dd.num_nodes());
    r.set("edges", graph.num_edges());
    r.set("d_max", dd.d_max());
    r.set("d_avg", dd.mean_degree());
    r.set("gcc", report.gcc);
    write_report(out, &r)
}

pub fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let mut cfg = RunConfig::default();
    cfg.set("command", "compare");
    cfg.set("dd_a", a.dd_a.display());
    cfg.set("ccd_a", a.ccd_a.display());
    cfg.set("dd_b", a.dd_b.display());
    cfg.set("ccd_b", a.ccd_b.display());
    cfg.set("min_nodes", a.min_nodes);
    if let Some(o) = &a.out {
        cfg.set("out", o.display());
    }
    write!(out, "{cfg}").map_err(out_err)?;

    let cmp = compare_profiles(
        &io::read_degree_distribution(&a.dd_a)?,
        &io::read_clustering_profile(&a.ccd_a)?,
        &io::read_degree_distribution(&a.dd_b)?,
        &io::read_clustering_profile(&a.ccd_b)?,
        a.min_nodes,
    );
    if let Some(path) = &a.out {
        io::write_file(path, |w| {
            writeln!(w, "degree,count_a,count_b,c_a,c_b")?;
            let mut c = cmp.clustering.iter().peekable();
            for &(d, na, nb) in &cmp.degree_counts {
                while c.next_if(|x| x.0 < d).is_some() {}
                match c.next_if(|x| x.0 == d) {
                    Some(&(_, ca, cb)) => writeln!(w, "{d},{na},{nb},{ca},{cb}")?,
                    None => writeln!(w, "{d},{na},{nb},,")?,
                }
            }
            Ok(())
        })?;
    }
    let mut r = RunConfig::default();
    r.set("mean_degree_a", cmp.mean_degree.0);
    r.set("mean_degree_b", cmp.mean_degree.1);
    r.set("gcc_a", cmp.gcc.0);
    r.set("gcc_b", cmp.gcc.1);
    r.set("degree_tv_distance", cmp.degree_tv_distance);
    r.set("max_clustering_gap", cmp.max_clustering_gap);
    write_report(out, &r)
}
