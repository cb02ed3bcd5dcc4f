//! `gkt`: solve, reduce, generate and verify knapsack-type and graph word
//! problem instances stored as JSON files.
//!
//! Exit codes: 0 = YES / valid, 1 = NO / invalid, 2 = error, 3 = resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gkt::generate::{generate, named_spec, GenParams};
use gkt::knapsack::BoundConfig;
use gkt::oracle::oracle;
use gkt::par::Exec;
use gkt::reductions::{self, verify_certificate, CombineMode};
use gkt::{solve, Certificate, Error, GroupSpec, Instance, ProblemKind, Word};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "gkt", version, about = "Knapsack and graph word problems in groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance with the polynomial-time solvers.
    Solve {
        problem: ProblemKind,
        /// Instance file; repeat for a batch.
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        /// Print the certificate JSON after the answer line.
        #[arg(long)]
        cert: bool,
        /// Knapsack factor polynomials, `{"p_G": [...], "p_H": [...]}`.
        #[arg(long)]
        bounds: Option<PathBuf>,
        /// Worker threads for batches (single instances run sequentially).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print rounds, oracle calls and wall time to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Transform an instance: ssp-to-agp, bkp-to-ssp, bsmp-to-agp,
    /// agp-to-ssp, bsmp-to-ssp-z or embed.
    Reduce {
        name: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// agp-to-ssp: pair with F₂ freely or directly.
        #[arg(long, default_value = "free")]
        mode: String,
        /// embed: `{"spec": ..., "images": [...]}`.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Ground truth by exhaustive search.
    Oracle {
        problem: ProblemKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Exponent cap (kp) or path length cap (cyclic agp, rational).
        #[arg(long, default_value_t = 10)]
        bound: usize,
        #[arg(long)]
        cert: bool,
    },
    /// Generate a random instance over a named group.
    Gen(GenArgs),
    /// Check a certificate; exit 0 iff it is valid.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    problem: ProblemKind,
    spec: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long = "len", default_value_t = 3)]
    max_len: usize,
    #[arg(long, default_value_t = 6)]
    vertices: usize,
    #[arg(long, default_value_t = 9)]
    edges: usize,
    #[arg(long, default_value_t = 2)]
    bound: usize,
    #[arg(long, default_value_t = 3)]
    max_exp: u64,
    /// Plant a positive certificate (written next to --out).
    #[arg(long)]
    planted: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Certificate file for --planted; defaults to `<out>.cert.json`.
    #[arg(long)]
    cert_out: Option<PathBuf>,
}

#[derive(Deserialize)]
struct EmbedMap {
    spec: GroupSpec,
    images: Vec<Word>,
}

/// Full record of one solve, printed to stderr with `--stats`.
#[derive(Serialize)]
struct ResultRecord<'a> {
    file: &'a Path,
    answer: &'static str,
    certificate: Option<&'a Certificate>,
    rounds: usize,
    oracle_calls: usize,
    added_edges: usize,
    wall_ms: f64,
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::ResourceLimit(_)) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(s) => f.write_str(s),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Res<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Core(Error::Malformed(format!("{}: {e}", path.display()))))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Res<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_instance(path: &Path, expect: Option<ProblemKind>) -> Res<Instance> {
    let inst: Instance = read_json(path)?;
    if let Some(k) = expect {
        if inst.kind() != k {
            return Err(Failure::Core(Error::Malformed(format!(
                "{} holds a {} instance, not {}",
                path.display(),
                inst.kind().name(),
                k.name()
            ))));
        }
    }
    inst.validate()?;
    Ok(inst)
}

fn print_answer(answer: bool, cert: Option<&Certificate>, with_cert: bool) {
    println!("{}", if answer { "YES" } else { "NO" });
    if let (true, Some(c)) = (with_cert, cert) {
        println!("{}", serde_json::to_string(c).expect("serializable"));
    }
}

fn cmd_solve(
    problem: ProblemKind,
    inputs: &[PathBuf],
    cert: bool,
    bounds: Option<&Path>,
    jobs: usize,
    stats: bool,
) -> Res<u8> {
    let bounds: Option<BoundConfig> = bounds.map(read_json).transpose()?;
    let instances = inputs
        .iter()
        .map(|p| read_instance(p, Some(problem)))
        .collect::<Res<Vec<_>>>()?;
    let run = |inst: &Instance| {
        let start = Instant::now();
        let out = solve(inst, bounds.as_ref(), Exec::Sequential);
        (out, start.elapsed().as_secs_f64() * 1e3)
    };
    let results: Vec<_> = if jobs > 1 && instances.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Io(e.to_string()))?;
        pool.install(|| gkt::par::map_slice(Exec::Parallel, &instances, run))
    } else {
        instances.iter().map(run).collect()
    };
    let mut all_yes = true;
    for (path, (out, ms)) in inputs.iter().zip(results) {
        let sol = out?;
        print_answer(sol.answer, sol.certificate.as_ref(), cert);
        all_yes &= sol.answer;
        if stats {
            let rec = ResultRecord {
                file: path,
                answer: if sol.answer { "YES" } else { "NO" },
                certificate: sol.certificate.as_ref(),
                rounds: sol.stats.rounds,
                oracle_calls: sol.stats.oracle_calls,
                added_edges: sol.stats.added_edges,
                wall_ms: ms,
            };
            eprintln!("{}", serde_json::to_string(&rec).expect("serializable"));
        }
    }
    Ok(if all_yes { 0 } else { 1 })
}

/// `dir/stem.json` → `dir/stem_m{m}.json`.
fn member_path(out: &Path, m: usize) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    out.with_file_name(format!("{stem}_m{m}.json"))
}

fn cmd_reduce(name: &str, input: &Path, out: &Path, mode: &str, map: Option<&Path>) -> Res<u8> {
    let tag = |k| Some(k);
    let single = |inst: Instance| write_json(out, &inst);
    match name {
        "ssp-to-agp" => {
            let Instance::Ssp(i) = read_instance(input, tag(ProblemKind::Ssp))? else { unreachable!() };
            single(Instance::Agp(reductions::ssp_to_agp(&i)))?;
        }
        "bkp-to-ssp" => {
            let Instance::Bkp(i) = read_instance(input, tag(ProblemKind::Bkp))? else { unreachable!() };
            single(Instance::Ssp(reductions::bkp_to_ssp(&i)))?;
        }
        "bsmp-to-agp" => {
            let Instance::Bsmp(i) = read_instance(input, tag(ProblemKind::Bsmp))? else { unreachable!() };
            single(Instance::Agp(reductions::bsmp_to_agp(&i)))?;
        }
        "agp-to-ssp" => {
            let Instance::Agp(i) = read_instance(input, tag(ProblemKind::Agp))? else { unreachable!() };
            let mode = match mode {
                "free" => CombineMode::Free,
                "direct" => CombineMode::Direct,
                m => return Err(Failure::Core(Error::Malformed(format!("unknown mode `{m}`")))),
            };
            single(Instance::Ssp(reductions::agp_to_ssp(&i, mode)?.instance))?;
        }
        "bsmp-to-ssp-z" => {
            let Instance::Bsmp(i) = read_instance(input, tag(ProblemKind::Bsmp))? else { unreachable!() };
            for (m, member) in reductions::bsmp_to_ssp_direct_z(&i).into_iter().enumerate() {
                let path = member_path(out, m);
                write_json(&path, &Instance::Ssp(member))?;
                println!("{}", path.display());
            }
        }
        "embed" => {
            let map: EmbedMap = read_json(map.ok_or_else(|| {
                Failure::Core(Error::Malformed("embed needs --map".into()))
            })?)?;
            let inst = read_instance(input, None)?;
            single(reductions::embed_instance(&inst, &map.spec, &map.images)?)?;
        }
        other => {
            return Err(Failure::Core(Error::Malformed(format!(
                "unknown reduction `{other}`"
            ))))
        }
    }
    Ok(0)
}

fn cmd_oracle(problem: ProblemKind, input: &Path, bound: usize, cert: bool) -> Res<u8> {
    let inst = read_instance(input, Some(problem))?;
    let found = oracle(&inst, bound, Exec::Parallel)?;
    print_answer(found.is_some(), found.as_ref(), cert);
    Ok(if found.is_some() { 0 } else { 1 })
}

fn cmd_gen(a: &GenArgs) -> Res<u8> {
    let spec = named_spec(&a.spec)?;
    let params = GenParams {
        k: a.k,
        max_len: a.max_len,
        vertices: a.vertices,
        edges: a.edges,
        bound: a.bound,
        max_exp: a.max_exp,
        planted: a.planted,
    };
    let g = generate(a.problem, &spec, a.seed, &params);
    match &a.out {
        Some(out) => {
            write_json(out, &g.instance)?;
            if let Some(c) = &g.certificate {
                let path = a.cert_out.clone().unwrap_or_else(|| {
                    let mut s = out.as_os_str().to_owned();
                    s.push(".cert.json");
                    PathBuf::from(s)
                });
                write_json(&path, c)?;
            }
        }
        None => println!(
            "{}",
            serde_json::to_string_pretty(&g.instance).expect("serializable")
        ),
    }
    Ok(0)
}

fn cmd_verify(input: &Path, cert: &Path) -> Res<u8> {
    let inst = read_instance(input, None)?;
    let c: Certificate = read_json(cert)?;
    let ok = verify_certificate(&inst, &c)?;
    println!("{}", if ok { "VALID" } else { "INVALID" });
    Ok(if ok { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve {
            problem,
            input,
            cert,
            bounds,
            jobs,
            stats,
        } => cmd_solve(*problem, input, *cert, bounds.as_deref(), *jobs, *stats),
        Command::Reduce {
            name,
            input,
            out,
            mode,
            map,
        } => cmd_reduce(name, input, out, mode, map.as_deref()),
        Command::Oracle {
            problem,
            input,
            bound,
            cert,
        } => cmd_oracle(*problem, input, *bound, *cert),
        Command::Gen(a) => cmd_gen(a),
        Command::Verify { input, cert } => cmd_verify(input, cert),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
