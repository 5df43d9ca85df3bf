//! `antiface`: embed, verify, enumerate, generate, inspect and draw.
//! `batch` embeds many instance files on a pool of threads.
//!
//! Exit codes: 0 success, 1 invalid input or failed verification,
//! 2 hypothesis failure or no progress, 3 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use antiface::io::{self, IoError};
use antiface::oracle::{self, OracleError};
use antiface::{
    euler_circuit, gen_kn_minus_pm, gen_random_dense_eulerian, gen_rotational_tournament, gen_sts,
    reduce_to_upper_embedding, relative_upper_from_partial, render_svg, undirected_upper_embedding, verify_embedding,
    CircuitDecomposition, Digraph, Embedding, GenError, Mode, ReduceError, ReduceOptions, Reduction, RotationSystem,
    TouchGraph,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "antiface", version, about = "Directed embeddings with few antifaces")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Input digraph JSON (`{"n", "arcs"}`), or `{"n", "edges"}` with --undirected.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Circuit decomposition JSON (`{"circuits": [[arc, ...], ...]}`).
    #[arg(long, global = true, value_name = "FILE")]
    circuits: Option<PathBuf>,
    /// Output file; stdout if absent.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Require the density hypothesis (default).
    #[arg(long, global = true, conflicts_with = "best_effort")]
    strict: bool,
    /// Run on any eulerian digraph, possibly stalling.
    #[arg(long, global = true)]
    best_effort: bool,
    /// Write the reduction trace as JSON lines.
    #[arg(long, global = true, value_name = "FILE")]
    trace: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of embeddings the oracle may enumerate.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_LIMIT)]
    limit: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Embed with the given circuits as profaces and one or two antifaces.
    Embed {
        /// Treat --in as an undirected graph and the circuits as edge walks.
        #[arg(long)]
        undirected: bool,
        /// Arc-disjoint circuits to complete, instead of a full decomposition.
        #[arg(long, value_name = "FILE", conflicts_with = "undirected")]
        partial: Option<PathBuf>,
    },
    /// Check an embedding against a digraph and decomposition.
    Verify {
        #[arg(long, value_name = "FILE")]
        embedding: PathBuf,
    },
    /// Enumerate every embedding with the given profaces.
    Oracle {
        /// Also certify this embedding as maximal.
        #[arg(long, value_name = "FILE")]
        embedding: Option<PathBuf>,
    },
    /// Generate an instance.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Print the face walks of an embedding.
    Faces {
        #[arg(long, value_name = "FILE")]
        embedding: PathBuf,
        /// Print the weighted touch graph in DOT instead.
        #[arg(long)]
        touch_graph: bool,
    },
    /// Draw an embedding as SVG.
    Render {
        #[arg(long, value_name = "FILE")]
        embedding: PathBuf,
    },
    /// Embed every instance file (`{"n", "arcs", "circuits"?}`) and print
    /// one JSON line per file. Exits with the worst per-file code.
    Batch {
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tournament,
    KnMinusPm,
    Sts,
    Random,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }
    fn hypothesis(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
    fn io(message: impl ToString) -> Self {
        Failure { code: 3, message: message.to_string() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::invalid(e)
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::NotDense(_) | ReduceError::NoProgress { .. } | ReduceError::StepLimit { .. } => {
                Failure::hypothesis(e)
            }
            _ => Failure::invalid(e),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooManyStates { .. } => Failure::hypothesis(e),
            OracleError::Mismatch => Failure::invalid(e),
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        Failure::invalid(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    path.as_deref().ok_or_else(|| Failure::invalid(format!("{flag} is required")))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_digraph(g: &Global) -> Result<Arc<Digraph>> {
    Ok(Arc::new(io::digraph_from_json(&read(required(&g.input, "--in")?)?)?))
}

/// The circuits from --circuits, or else from the --in file, or else one
/// euler circuit.
fn load_circuits(g: &Global, d: &Digraph) -> Result<CircuitDecomposition> {
    if let Some(path) = &g.circuits {
        return Ok(io::circuits_from_json(d, &read(path)?)?);
    }
    let text = read(required(&g.input, "--in")?)?;
    if let Ok(c) = io::circuits_from_json(d, &text) {
        return Ok(c);
    }
    let t = euler_circuit(d).map_err(Failure::invalid)?;
    CircuitDecomposition::new(d, vec![t.arcs().to_vec()]).map_err(Failure::invalid)
}

fn options(g: &Global) -> ReduceOptions {
    let mode = if g.best_effort { Mode::BestEffort } else { Mode::Strict };
    ReduceOptions { mode, verify_steps: true }
}

fn summary(e: &Embedding) -> serde_json::Value {
    json!({
        "profaces": e.proface_count(),
        "antifaces": e.antiface_count(),
        "genus": e.genus().ok(),
    })
}

fn embed(g: &Global, undirected: bool, partial: &Option<PathBuf>) -> Result<()> {
    let reduction: Reduction = if undirected {
        let graph = io::undirected_from_json(&read(required(&g.input, "--in")?)?)?;
        let walks = io::circuit_lists_from_json(&read(required(&g.circuits, "--circuits")?)?)?;
        undirected_upper_embedding(&graph, &walks, options(g))?
    } else if let Some(path) = partial {
        let d = load_digraph(g)?;
        let lists = io::circuit_lists_from_json(&read(path)?)?;
        relative_upper_from_partial(d, &lists, options(g))?
    } else {
        let d = load_digraph(g)?;
        let c = load_circuits(g, &d)?;
        reduce_to_upper_embedding(d, &c, options(g))?
    };
    if let Some(path) = &g.trace {
        fs::write(path, reduction.trace.to_json_lines())
            .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    }
    let e = &reduction.embedding;
    let d = e.digraph();
    let circuits: Vec<Vec<usize>> = e.profaces().iter().map(|f| f.arcs().to_vec()).collect();
    let mut doc = json!({
        "n": d.vertex_count(),
        "arcs": d.arcs().iter().map(|&(t, h)| [t, h]).collect::<Vec<_>>(),
        "circuits": circuits,
        "rotations": e.rotations(),
        "status": reduction.status,
        "steps": reduction.trace.len(),
    });
    let info = summary(e);
    for (k, v) in info.as_object().expect("summary is an object") {
        doc[k] = v.clone();
    }
    eprintln!("antifaces: {}, profaces: {}, status: {:?}", e.antiface_count(), e.proface_count(), reduction.status);
    emit(&g.out, &(doc.to_string() + "\n"))
}

fn verify(g: &Global, embedding: &Path) -> Result<()> {
    let d = load_digraph(g)?;
    let c = load_circuits(g, &d)?;
    let rotations = io::rotations_from_json(&read(embedding)?)?;
    let rs = RotationSystem::new(d, rotations).map_err(Failure::invalid)?;
    let report = verify_embedding(&rs, &c);
    let mut text = String::new();
    for v in &report.violations {
        text.push_str(&format!("FAIL {v}\n"));
    }
    if report.is_ok() {
        text.push_str(&format!(
            "ok: {} profaces, {} antifaces, genus {}\n",
            report.profaces,
            report.antifaces,
            report.genus.unwrap_or(0)
        ));
        emit(&g.out, &text)
    } else {
        emit(&g.out, &text)?;
        Err(Failure::invalid(format!("{} violation(s)", report.violations.len())))
    }
}

fn run_oracle(g: &Global, embedding: &Option<PathBuf>) -> Result<()> {
    let d = load_digraph(g)?;
    let c = load_circuits(g, &d)?;
    let report = oracle::enumerate_relative_embeddings(&d, &c, g.limit)?;
    let mut doc = json!({
        "states": report.states,
        "min": report.min,
        "max": report.max,
        "distribution": report.distribution,
        "argmin": report.argmin,
    });
    let mut failed = false;
    if let Some(path) = embedding {
        let e = io::embedding_from_json(d.clone(), &read(path)?)?;
        let cert = oracle::certify_maximal(&e, g.limit)?;
        failed = !cert.pass;
        doc["certification"] = serde_json::to_value(cert).expect("certificates serialize");
    }
    emit(&g.out, &(doc.to_string() + "\n"))?;
    if failed {
        return Err(Failure::invalid("embedding has more antifaces than the minimum"));
    }
    Ok(())
}

fn generate(g: &Global, family: Family, n: usize, k: usize) -> Result<()> {
    let text = match family {
        Family::Tournament => io::digraph_to_json(&gen_rotational_tournament(n)?),
        Family::KnMinusPm => io::digraph_to_json(&gen_kn_minus_pm(n)?),
        Family::Sts => {
            let (d, c) = gen_sts(n)?;
            io::instance_to_json(&d, &c)
        }
        Family::Random => io::digraph_to_json(&gen_random_dense_eulerian(n, k, g.seed)?),
    };
    emit(&g.out, &(text + "\n"))
}

fn faces(g: &Global, embedding: &Path, touch_graph: bool) -> Result<()> {
    let d = load_digraph(g)?;
    let e = io::embedding_from_json(d, &read(embedding)?)?;
    if touch_graph {
        let k = TouchGraph::build(&e).map_err(Failure::invalid)?;
        return emit(&g.out, &k.to_dot());
    }
    emit(&g.out, &(io::faces_to_json(&e) + "\n"))
}

fn render(g: &Global, embedding: &Path) -> Result<()> {
    let d = load_digraph(g)?;
    let e = io::embedding_from_json(d, &read(embedding)?)?;
    emit(&g.out, &render_svg(&e))
}

fn embed_instance(path: &Path, opts: ReduceOptions) -> Result<Reduction> {
    let text = read(path)?;
    let d = Arc::new(io::digraph_from_json(&text)?);
    let c = match io::circuits_from_json(&d, &text) {
        Ok(c) => c,
        Err(IoError::Json(_)) => {
            let t = euler_circuit(&d).map_err(Failure::invalid)?;
            CircuitDecomposition::new(&d, vec![t.arcs().to_vec()]).map_err(Failure::invalid)?
        }
        Err(e) => return Err(e.into()),
    };
    Ok(reduce_to_upper_embedding(d, &c, opts)?)
}

fn batch(g: &Global, files: &[PathBuf], jobs: Option<usize>) -> Result<()> {
    let workers = jobs.unwrap_or_else(|| thread::available_parallelism().map_or(1, |p| p.get())).clamp(1, files.len());
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<serde_json::Value>>> = Mutex::new(vec![None; files.len()]);
    let opts = options(g);
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let mut line = json!({ "file": path.display().to_string() });
                match embed_instance(path, opts) {
                    Ok(r) => {
                        line["code"] = json!(0);
                        line["status"] = json!(r.status);
                        line["steps"] = json!(r.trace.len());
                        for (k, v) in summary(&r.embedding).as_object().expect("summary is an object") {
                            line[k] = v.clone();
                        }
                    }
                    Err(f) => {
                        line["code"] = json!(f.code);
                        line["error"] = json!(f.message);
                    }
                }
                results.lock().expect("no worker panics")[i] = Some(line);
            });
        }
    });
    let lines: Vec<serde_json::Value> = results.into_inner().expect("no worker panics").into_iter().flatten().collect();
    let worst = lines.iter().filter_map(|l| l["code"].as_u64()).max().unwrap_or(0) as u8;
    let text: String = lines.iter().map(|l| l.to_string() + "\n").collect();
    emit(&g.out, &text)?;
    match worst {
        0 => Ok(()),
        code => Err(Failure { code, message: "some instances failed".into() }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Embed { undirected, partial } => embed(g, *undirected, partial),
        Command::Verify { embedding } => verify(g, embedding),
        Command::Oracle { embedding } => run_oracle(g, embedding),
        Command::Gen { family, n, k } => generate(g, *family, *n, *k),
        Command::Faces { embedding, touch_graph } => faces(g, embedding, *touch_graph),
        Command::Render { embedding } => render(g, embedding),
        Command::Batch { files, jobs } => batch(g, files, *jobs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
