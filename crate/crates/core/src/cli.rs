//! Command-line front end. `dispatch` parses arguments, runs one subcommand
//! and maps the outcome to an exit code: 0 on success, 1 on usage errors and
//! 2 on data or file errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgAction, Args, Parser, Subcommand};

use crate::dataset::{
    generate_synthetic, load_manifest, save_manifest, write_heatmap, ContactDataset,
    SyntheticConfig,
};
use crate::error::Error;
use crate::io_util::write_atomic;
use crate::labeling::{label_contacts, ThresholdProfile};
use crate::losses::{ContactLoss, LossWeights, DEFAULT_FOCAL_GAMMA, DEFAULT_LOSS_BETA};
use crate::mesh::{
    make_proxy_mesh, read_obj_file, subdivisions_for_vertex_count, MeshTopology, ProxyMesh,
};
use crate::sampling::{build_plan, read_plan_csv, PlanConfig, DEFAULT_BINS, DEFAULT_CURVATURE};
use crate::train::{
    default_variants, evaluate_head, run_ablation, train_new, write_ablation_csv, AblationConfig,
    Averaging, ContactHead, EvalReport, InitMode, TrainConfig, Variant,
};

// Report text goes to stdout; a reader that closes the pipe early is not an error.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

/// Environment variable capping the worker thread count (0 = automatic).
pub const THREADS_ENV: &str = "CONTACTFORGE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "contactforge",
    version,
    about = "Imbalance-aware dense contact labeling, sampling, training and evaluation",
    arg_required_else_help = true
)]
struct Cli {
    /// Seed for every stochastic step
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Report progress on stderr
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the synthetic imbalanced contact benchmark as a manifest
    Generate {
        #[command(flatten)]
        synthetic: SyntheticArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Label hand vertices in contact with an object mesh
    Label {
        /// Hand mesh (OBJ); its vertices are labeled
        #[arg(long)]
        hand: PathBuf,
        /// Interacting surface (OBJ): an object or the other hand
        #[arg(long, visible_alias = "object")]
        other: PathBuf,
        /// Threshold profile: default (1 cm), coarse (3.5 cm) or fine (0.5 cm)
        #[arg(long, default_value = "default")]
        profile: String,
        /// Custom threshold in meters, overriding the profile
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print dataset statistics
    Stats {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        mesh: Option<PathBuf>,
    },
    /// Build a balanced contact sampling plan
    Sample {
        #[arg(long)]
        manifest: PathBuf,
        #[command(flatten)]
        plan: PlanArgs,
        /// Stream length (default: the dataset size)
        #[arg(long)]
        total: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the contact head
    Train {
        #[arg(long)]
        manifest: PathBuf,
        /// Plan CSV; built from the training samples when omitted
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        mesh: Option<PathBuf>,
        #[arg(long, default_value = "vcb", value_parser = ["bce", "focal", "cb", "vcb"])]
        loss: String,
        #[arg(long, default_value = "learned", value_parser = parse_init)]
        init: InitMode,
        /// Which samples to train on
        #[arg(long, default_value = "all", value_parser = ["all", "train", "test"])]
        split: String,
        #[command(flatten)]
        plan_args: PlanArgs,
        #[command(flatten)]
        opt: OptimArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a trained head
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value = "all", value_parser = ["all", "train", "test"])]
        split: String,
        #[arg(long, default_value = "per_sample", value_parser = parse_averaging)]
        averaging: Averaging,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sampling, loss and initialization ablation on a held-out split
    Ablate {
        /// Manifest; the bundled synthetic benchmark is used when omitted
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        mesh: Option<PathBuf>,
        #[command(flatten)]
        synthetic: SyntheticArgs,
        #[command(flatten)]
        plan: PlanArgs,
        #[command(flatten)]
        opt: OptimArgs,
        #[arg(long, default_value = "per_sample", value_parser = parse_averaging)]
        averaging: Averaging,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-vertex mean contact CSV, from labels or from model predictions
    ExportHeatmap {
        #[arg(long)]
        manifest: PathBuf,
        /// Average this model's predicted probabilities instead of labels
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train once per contact loss and tabulate precision, recall and F1
    CompareLosses {
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        mesh: Option<PathBuf>,
        /// Comma-separated subset of bce, focal, cb, vcb
        #[arg(long, default_value = "bce,focal,cb,vcb")]
        losses: String,
        #[command(flatten)]
        synthetic: SyntheticArgs,
        #[command(flatten)]
        plan: PlanArgs,
        #[command(flatten)]
        opt: OptimArgs,
        #[arg(long, default_value = "per_sample", value_parser = parse_averaging)]
        averaging: Averaging,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SyntheticArgs {
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 16)]
    feature_dim: usize,
    #[arg(long, default_value_t = 0.7)]
    empty_fraction: f64,
    #[arg(long, default_value_t = 10.0)]
    tip_boost: f64,
    /// Proxy mesh subdivision level (2 gives 162 vertices)
    #[arg(long, default_value_t = 2)]
    subdivisions: u32,
}

#[derive(Debug, Args)]
struct PlanArgs {
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long, default_value_t = DEFAULT_CURVATURE)]
    curvature: f64,
}

#[derive(Debug, Args)]
struct OptimArgs {
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    /// Class-balance β of the CB and VCB losses
    #[arg(long, default_value_t = DEFAULT_LOSS_BETA)]
    beta: f64,
    /// Focal loss γ
    #[arg(long, default_value_t = DEFAULT_FOCAL_GAMMA)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    w_contact: f64,
    #[arg(long, default_value_t = 0.1)]
    w_reg: f64,
    #[arg(long, default_value_t = 1.0)]
    w_smooth: f64,
    /// Use the raw class-balanced weights instead of normalizing each
    /// vertex's pair to sum to 2
    #[arg(long)]
    raw_weights: bool,
}

fn parse_init(s: &str) -> Result<InitMode, String> {
    InitMode::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = InitMode::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_averaging(s: &str) -> Result<Averaging, String> {
    Averaging::from_name(s).ok_or_else(|| "expected per_sample or micro".to_string())
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

impl OptimArgs {
    fn validate(&self) -> Outcome {
        if self.steps == 0 {
            return usage("--steps must be >= 1");
        }
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return usage("--lr must be > 0");
        }
        if !(0.0..1.0).contains(&self.beta) {
            return usage("--beta must be in [0, 1)");
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return usage("--gamma must be >= 0");
        }
        if self.weights().validate().is_err() {
            return usage("loss weights must be >= 0");
        }
        Ok(())
    }

    fn weights(&self) -> LossWeights {
        LossWeights {
            contact: self.w_contact,
            regularization: self.w_reg,
            smoothness: self.w_smooth,
        }
    }

    fn loss(&self, name: &str) -> Outcome<ContactLoss> {
        match ContactLoss::from_name(name, self.beta, self.gamma) {
            Some(l) => Ok(l),
            None => usage(format!(
                "unknown loss `{name}` (expected bce, focal, cb or vcb)"
            )),
        }
    }

    fn ablation(&self, seed: u64, plan: &PlanArgs, averaging: Averaging) -> AblationConfig {
        AblationConfig {
            steps: self.steps,
            step_size: self.lr,
            seed,
            weights: self.weights(),
            bins: plan.bins,
            curvature: plan.curvature,
            averaging,
            normalize_weights: !self.raw_weights,
        }
    }
}

impl PlanArgs {
    fn validate(&self) -> Outcome {
        if self.bins < 1 {
            return usage("--bins must be >= 1");
        }
        if !(self.curvature > 0.0 && self.curvature.is_finite()) {
            return usage("--curvature must be > 0");
        }
        Ok(())
    }
}

impl SyntheticArgs {
    fn config(&self, seed: u64) -> SyntheticConfig {
        SyntheticConfig {
            subdivisions: self.subdivisions,
            samples: self.samples,
            feature_dim: self.feature_dim,
            empty_fraction: self.empty_fraction,
            tip_boost: self.tip_boost,
            seed,
        }
    }
}

fn check_input(path: &Path) -> Outcome {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::Data(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "input file not found"),
        )))
    }
}

fn check_output(path: &Path) -> Outcome {
    let parent = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let problem = if path.is_dir() {
        Some("output path is a directory")
    } else if !parent.is_dir() {
        Some("output directory does not exist")
    } else {
        None
    };
    match problem {
        Some(msg) => Err(Failure::Data(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, msg),
        ))),
        None => Ok(()),
    }
}

struct Ctx {
    seed: u64,
    verbose: u8,
}

impl Ctx {
    fn note(&self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn write(
        &self,
        path: &Path,
        body: impl FnOnce(&mut dyn std::io::Write) -> std::io::Result<()>,
    ) -> Outcome {
        write_atomic(path, body)?;
        self.note(format!("wrote {}", path.display()));
        Ok(())
    }
}

/// Mesh topology for a dataset: the given OBJ, or the proxy mesh whose
/// vertex count matches.
fn resolve_mesh(
    vertex_count: usize,
    mesh: Option<&Path>,
) -> Outcome<(MeshTopology, Option<ProxyMesh>)> {
    if let Some(path) = mesh {
        let topology = read_obj_file(path)?.into_topology()?;
        if topology.vertex_count() != vertex_count {
            return Err(Failure::Data(Error::LengthMismatch {
                what: "mesh vertices",
                expected: vertex_count,
                actual: topology.vertex_count(),
            }));
        }
        return Ok((topology, None));
    }
    match subdivisions_for_vertex_count(vertex_count) {
        Some(k) => {
            let proxy = make_proxy_mesh(k)?;
            Ok((proxy.topology.clone(), Some(proxy)))
        }
        None => Err(Failure::Data(Error::InvalidParameter(format!(
            "no proxy mesh has {vertex_count} vertices; pass --mesh"
        )))),
    }
}

fn select_split(dataset: ContactDataset, split: &str) -> Outcome<ContactDataset> {
    let (train, test) = dataset.holdout_split();
    Ok(match split {
        "train" => dataset.subset(&train)?,
        "test" => dataset.subset(&test)?,
        _ => dataset,
    })
}

fn load_dataset(
    manifest: Option<&Path>,
    synthetic: &SyntheticArgs,
    seed: u64,
) -> Outcome<(ContactDataset, MeshTopology)> {
    match manifest {
        Some(path) => {
            let dataset = load_manifest(path)?;
            let v = dataset.vertex_count();
            Ok((dataset, resolve_mesh(v, None)?.0))
        }
        None => {
            let bench = generate_synthetic(&synthetic.config(seed))?;
            Ok((bench.dataset, bench.mesh.topology))
        }
    }
}

fn load_dataset_with_mesh(
    manifest: Option<&Path>,
    mesh: Option<&Path>,
    synthetic: &SyntheticArgs,
    seed: u64,
) -> Outcome<(ContactDataset, MeshTopology)> {
    match (manifest, mesh) {
        (Some(path), Some(mesh)) => {
            let dataset = load_manifest(path)?;
            let topology = resolve_mesh(dataset.vertex_count(), Some(mesh))?.0;
            Ok((dataset, topology))
        }
        _ => load_dataset(manifest, synthetic, seed),
    }
}

fn report_csv(report: &EvalReport) -> String {
    format!(
        "precision,recall,f1,evaluated,skipped,defined,averaging\n{:.6},{:.6},{:.6},{},{},{},{}\n",
        report.precision,
        report.recall,
        report.f1,
        report.evaluated_count,
        report.skipped_count,
        report.defined,
        report.averaging.name()
    )
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        seed: cli.seed,
        verbose: cli.verbose,
    };
    match cli.command {
        Command::Generate { synthetic, out } => {
            check_output(&out)?;
            let bench = generate_synthetic(&synthetic.config(ctx.seed))?;
            save_manifest(&bench.dataset, &out)?;
            ctx.note(format!("wrote {}", out.display()));
            let mut summary = bench.dataset.summary();
            summary.regions.push((
                "tip".into(),
                bench.dataset.region_mean(&bench.mesh.tip_region),
            ));
            summary.regions.push((
                "dorsal".into(),
                bench.dataset.region_mean(&bench.mesh.dorsal_region),
            ));
            out!("{summary}");
        }
        Command::Label {
            hand,
            other,
            profile,
            threshold,
            out,
        } => {
            let profile = match threshold {
                Some(t) => ThresholdProfile::custom(t).or_else(|e| usage(e.to_string()))?,
                None => match ThresholdProfile::by_name(&profile) {
                    Some(p) => p,
                    None => {
                        return usage(format!(
                            "unknown profile `{profile}` (expected default, coarse or fine)"
                        ))
                    }
                },
            };
            check_input(&hand)?;
            check_input(&other)?;
            check_output(&out)?;
            let hand_mesh = read_obj_file(&hand)?;
            let object_mesh = read_obj_file(&other)?;
            let labels = label_contacts(&hand_mesh.vertices, &object_mesh, &profile)?;
            ctx.write(&out, |w| labels.write_csv(w))?;
            outln!(
                "contact_vertices={}/{}",
                labels.contact_count(),
                labels.labels.len()
            );
            if labels.empty_mesh {
                outln!(
                    "warning: interacting mesh has no triangles; every vertex labeled non-contact"
                );
            }
        }
        Command::Stats { manifest, mesh } => {
            check_input(&manifest)?;
            if let Some(m) = &mesh {
                check_input(m)?;
            }
            let dataset = load_manifest(&manifest)?;
            let mut summary = dataset.summary();
            if let (_, Some(proxy)) = resolve_mesh(dataset.vertex_count(), mesh.as_deref())? {
                summary
                    .regions
                    .push(("tip".into(), dataset.region_mean(&proxy.tip_region)));
                summary
                    .regions
                    .push(("dorsal".into(), dataset.region_mean(&proxy.dorsal_region)));
            }
            out!("{summary}");
        }
        Command::Sample {
            manifest,
            plan,
            total,
            out,
        } => {
            plan.validate()?;
            if total == Some(0) {
                return usage("--total must be >= 1");
            }
            check_input(&manifest)?;
            check_output(&out)?;
            let dataset = load_manifest(&manifest)?;
            let built = build_plan(
                &dataset,
                &PlanConfig {
                    bins: plan.bins,
                    curvature: plan.curvature,
                    total,
                    seed: ctx.seed,
                },
            )?;
            if built.edges.is_degenerate() {
                eprintln!("warning: all balance scores are equal; using a single bin");
            }
            ctx.write(&out, |w| built.write_csv(w))?;
            let per_bin: Vec<String> = built
                .resampled_per_bin()
                .iter()
                .map(usize::to_string)
                .collect();
            outln!("resampled_per_bin={}", per_bin.join(","));
        }
        Command::Train {
            manifest,
            plan,
            mesh,
            loss,
            init,
            split,
            plan_args,
            opt,
            out,
        } => {
            opt.validate()?;
            plan_args.validate()?;
            let loss = opt.loss(&loss)?;
            check_input(&manifest)?;
            for p in plan.iter().chain(&mesh) {
                check_input(p)?;
            }
            check_output(&out)?;
            let dataset = select_split(load_manifest(&manifest)?, &split)?;
            let (topology, _) = resolve_mesh(dataset.vertex_count(), mesh.as_deref())?;
            let sequence = match &plan {
                Some(p) => {
                    let file = File::open(p).map_err(|e| Error::io(p, e))?;
                    read_plan_csv(
                        BufReader::new(file),
                        &p.display().to_string(),
                        dataset.len(),
                    )?
                }
                None => {
                    build_plan(
                        &dataset,
                        &PlanConfig {
                            bins: plan_args.bins,
                            curvature: plan_args.curvature,
                            total: Some(opt.steps),
                            seed: ctx.seed,
                        },
                    )?
                    .resampled
                }
            };
            if sequence.is_empty() {
                return Err(Failure::Data(Error::InvalidParameter(
                    "plan is empty".into(),
                )));
            }
            let config = TrainConfig {
                steps: opt.steps,
                step_size: opt.lr,
                seed: ctx.seed,
                loss,
                weights: opt.weights(),
                init_mode: init,
                level_sizes: None,
                normalize_weights: !opt.raw_weights,
            };
            let outcome = train_new(&dataset, &sequence, &topology, &config)?;
            outcome.head.save(&out)?;
            ctx.note(format!("wrote {}", out.display()));
            outln!("initial_loss={:.6}", outcome.initial_loss);
            outln!("final_loss={:.6}", outcome.final_loss);
        }
        Command::Eval {
            model,
            manifest,
            split,
            averaging,
            out,
        } => {
            check_input(&model)?;
            check_input(&manifest)?;
            check_output(&out)?;
            let head = ContactHead::load(&model)?;
            let dataset = select_split(load_manifest(&manifest)?, &split)?;
            if head.feature_dim() != dataset.feature_dim() {
                return Err(Failure::Data(Error::LengthMismatch {
                    what: "model feature dimension",
                    expected: dataset.feature_dim(),
                    actual: head.feature_dim(),
                }));
            }
            let report = evaluate_head(&head, &dataset, averaging)?;
            let csv = report_csv(&report);
            ctx.write(&out, |w| w.write_all(csv.as_bytes()))?;
            out!("{csv}");
            if !report.defined {
                eprintln!("warning: every sample has empty ground truth; metrics undefined");
            }
        }
        Command::Ablate {
            manifest,
            mesh,
            synthetic,
            plan,
            opt,
            averaging,
            out,
        } => {
            opt.validate()?;
            plan.validate()?;
            for p in manifest.iter().chain(&mesh) {
                check_input(p)?;
            }
            check_output(&out)?;
            let (dataset, topology) =
                load_dataset_with_mesh(manifest.as_deref(), mesh.as_deref(), &synthetic, ctx.seed)?;
            let variants = default_variants(opt.beta, opt.gamma);
            let rows = run_ablation(
                &dataset,
                &topology,
                &variants,
                &opt.ablation(ctx.seed, &plan, averaging),
            )?;
            ctx.write(&out, |w| write_ablation_csv(&rows, ctx.seed, w))?;
        }
        Command::ExportHeatmap {
            manifest,
            model,
            out,
        } => {
            check_input(&manifest)?;
            if let Some(m) = &model {
                check_input(m)?;
            }
            check_output(&out)?;
            let dataset = load_manifest(&manifest)?;
            let values = match &model {
                None => dataset.contact_mean().to_vec(),
                Some(m) => {
                    let head = ContactHead::load(m)?;
                    let mut sum = vec![0.0; head.vertex_count()];
                    for s in dataset.samples() {
                        for (acc, p) in sum.iter_mut().zip(head.predict(&s.features)?) {
                            *acc += p;
                        }
                    }
                    sum.iter().map(|s| s / dataset.len() as f64).collect()
                }
            };
            ctx.write(&out, |w| write_heatmap(&values, w))?;
        }
        Command::CompareLosses {
            manifest,
            mesh,
            losses,
            synthetic,
            plan,
            opt,
            averaging,
            out,
        } => {
            opt.validate()?;
            plan.validate()?;
            let losses = losses
                .split(',')
                .map(|name| opt.loss(name.trim()))
                .collect::<Outcome<Vec<_>>>()?;
            for p in manifest.iter().chain(&mesh) {
                check_input(p)?;
            }
            check_output(&out)?;
            let (dataset, topology) =
                load_dataset_with_mesh(manifest.as_deref(), mesh.as_deref(), &synthetic, ctx.seed)?;
            let variants: Vec<Variant> = losses
                .into_iter()
                .map(|loss| Variant {
                    sampling: true,
                    loss,
                    init: InitMode::Learned,
                })
                .collect();
            let rows = run_ablation(
                &dataset,
                &topology,
                &variants,
                &opt.ablation(ctx.seed, &plan, averaging),
            )?;
            ctx.write(&out, |w| write_ablation_csv(&rows, ctx.seed, w))?;
            let mut table = String::from("loss      precision  recall  f1\n");
            for row in &rows {
                let r = &row.report;
                let _ = writeln!(
                    table,
                    "{:<9} {:.4}     {:.4}  {:.4}",
                    row.variant.loss, r.precision, r.recall, r.f1
                );
            }
            out!("{table}");
        }
    }
    Ok(())
}

fn thread_count() -> Outcome<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => match v.trim().parse() {
            Ok(n) => Ok(n),
            Err(_) => usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got `{v}`"
            )),
        },
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let outcome = thread_count().and_then(|threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start {threads} worker threads: {e}")))?;
        pool.install(|| run(cli))
    });
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `contactforge --help` for usage.");
            1
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}
