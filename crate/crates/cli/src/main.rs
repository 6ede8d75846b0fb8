//! `ldpc-edge` command-line tool.
//!
//! Exit status: 0 on success, 1 when a decode fails (or the benchmark sees a
//! serial/parallel mismatch), 2 for usage and I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ldpc_edge::bench::{run_bench, BenchConfig};
use ldpc_edge::channel::{ber_sweep, ebno_to_sigma2, write_csv, BerConfig, SweepDecoder};
use ldpc_edge::code::{self, EdgeTables, ParityCheckMatrix, TannerTables};
use ldpc_edge::{decode_awgn, ParallelDecoder, WorkerPool};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Alist,
    Dense,
}

#[derive(Debug, Parser)]
#[command(name = "ldpc-edge", version, about = "Edge-parallel sum-product LDPC decoding and BER simulation")]
struct RunConfig {
    #[command(subcommand)]
    command: Command,

    /// Parity-check matrix file.
    #[arg(long, global = true)]
    code: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "alist")]
    format: Format,

    /// Comma-separated Eb/N0 values in dB.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    ebno: Vec<f64>,

    #[arg(long, global = true, default_value_t = 10_000)]
    frames: usize,

    #[arg(long = "max-iter", global = true, default_value_t = ldpc_edge::DEFAULT_MAX_ITERATIONS)]
    max_iter: usize,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Logical workers per page.
    #[arg(long = "group-size", global = true, default_value_t = ldpc_edge::DEFAULT_GROUP_SIZE)]
    group_size: usize,

    /// Frames decoded concurrently.
    #[arg(long, global = true, default_value_t = ldpc_edge::DEFAULT_DECODERS_IN_FLIGHT)]
    decoders: usize,

    /// Physical threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print both orientations of the edge address tables.
    Tables,
    /// Decode one received vector (one value per line).
    Decode {
        #[arg(long)]
        obs: PathBuf,
        /// Noise variance; defaults to the first --ebno value at the code rate.
        #[arg(long)]
        sigma2: Option<f64>,
        /// Use the serial reference decoder instead of the parallel engine.
        #[arg(long)]
        reference: bool,
    },
    /// Bit-error-rate sweep, written as CSV.
    Ber,
    /// Time the serial and parallel decoders on the same frames.
    Bench,
    /// Generate a pseudo-random regular code.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        wc: usize,
        #[arg(long)]
        wr: usize,
    },
}

fn load_code(cfg: &RunConfig) -> Result<ParityCheckMatrix> {
    let path = cfg.code.as_deref().context("--code is required")?;
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let h = match cfg.format {
        Format::Alist => code::parse_alist(&text),
        Format::Dense => code::parse_dense(&text),
    }
    .with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(h)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("cannot write to stdout"),
    }
}

fn table_rows(t: &EdgeTables, suffix: &str) -> String {
    let width = t.len().max(1).to_string().len() + 1;
    let rows = [("e", &t.e), ("v", &t.v), ("c", &t.c), ("t", &t.t), ("s", &t.s), ("u", &t.u)];
    let mut text = String::new();
    for (name, values) in rows {
        text.push_str(&format!("{:<6}", format!("{name}{suffix}")));
        for x in values.iter() {
            text.push_str(&format!("{x:>width$}"));
        }
        text.push('\n');
    }
    text
}

fn cmd_tables(cfg: &RunConfig) -> Result<ExitCode> {
    let h = load_code(cfg)?;
    let tables = TannerTables::new(&h);
    let text = format!(
        "# variable-node address iterators ({} edges)\n{}\n# check-node address iterators\n{}",
        tables.total_edges(),
        table_rows(&tables.variable, ""),
        table_rows(&tables.check, "_bar"),
    );
    emit(cfg.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn read_observations(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.trim()
                .parse::<f64>()
                .with_context(|| format!("{}:{}: not a number: {l:?}", path.display(), i + 1))
        })
        .collect()
}

fn cmd_decode(cfg: &RunConfig, obs: &Path, sigma2: Option<f64>, reference: bool) -> Result<ExitCode> {
    let h = load_code(cfg)?;
    let y = read_observations(obs)?;
    if y.len() != h.n() {
        bail!("{} holds {} observations, the code has n = {}", obs.display(), y.len(), h.n());
    }
    let sigma2 = match (sigma2, cfg.ebno.first()) {
        (Some(s), _) => s,
        (None, Some(&db)) => ebno_to_sigma2(db, h.rate())?,
        (None, None) => bail!("decode needs --sigma2 or --ebno"),
    };
    let tables = TannerTables::new(&h);
    let res = if reference {
        decode_awgn(&y, sigma2, cfg.max_iter, &tables, &h)?
    } else {
        let pool = WorkerPool::new(cfg.threads)?;
        let dec = ParallelDecoder::new(&tables, cfg.group_size)?;
        pool.install(|| dec.decode(&y, sigma2, cfg.max_iter))?
    };
    let bits: String = res.estimate.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
    let text = format!(
        "estimate {bits}\nsuccess {}\niterations {}\n",
        res.success, res.iterations_used
    );
    emit(cfg.out.as_deref(), &text)?;
    Ok(if res.success { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_ber(cfg: &RunConfig) -> Result<ExitCode> {
    let h = load_code(cfg)?;
    if cfg.ebno.is_empty() {
        bail!("ber needs at least one --ebno value");
    }
    let ber_cfg = BerConfig {
        ebno_db: cfg.ebno.clone(),
        frames: cfg.frames,
        max_iterations: cfg.max_iter,
        seed: cfg.seed,
        group_size: cfg.group_size,
        decoders_in_flight: cfg.decoders,
        threads: cfg.threads,
        decoder: SweepDecoder::Parallel,
    };
    let start = Instant::now();
    let points = ber_sweep(&h, &ber_cfg)?;
    let elapsed = start.elapsed();

    let mut csv = Vec::new();
    write_csv(&mut csv, &points)?;
    emit(cfg.out.as_deref(), std::str::from_utf8(&csv)?)?;

    let mut summary = format!(
        "code ({}, {})  edges {}  frames/point {}  time {:.3} s\n{:>8} {:>10} {:>12} {:>12} {:>10} {:>9}\n",
        h.n(),
        h.n() - h.m(),
        h.total_edges(),
        cfg.frames,
        elapsed.as_secs_f64(),
        "Eb/N0",
        "sigma2",
        "bit_errors",
        "BER",
        "mean_iter",
        "failures"
    );
    for p in &points {
        summary.push_str(&format!(
            "{:>8.2} {:>10.6} {:>12} {:>12.4e} {:>10.3} {:>9}\n",
            p.ebno_db, p.sigma2, p.bit_errors, p.ber, p.mean_iterations, p.failures
        ));
    }
    // keep stdout clean when the CSV goes there
    if cfg.out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(cfg: &RunConfig) -> Result<ExitCode> {
    let h = load_code(cfg)?;
    let bench_cfg = BenchConfig {
        ebno_db: cfg.ebno.first().copied().unwrap_or(2.0),
        frames: cfg.frames,
        max_iterations: cfg.max_iter,
        seed: cfg.seed,
        group_size: cfg.group_size,
        decoders_in_flight: cfg.decoders,
        threads: cfg.threads,
    };
    let r = run_bench(&h, &bench_cfg)?;
    let text = format!(
        "code        ({}, {})\nedges       {}\nframes      {}\nEb/N0       {} dB\n\
         group_size  {}\nthreads     {}\ndecoders    {}\n\
         serial      {:.3} s  {:.1} frames/s\nparallel    {:.3} s  {:.1} frames/s\n\
         speedup     {:.2}\nidentical   {}\n",
        r.n,
        r.n - r.m,
        r.edges,
        r.frames,
        bench_cfg.ebno_db,
        r.group_size,
        r.threads,
        r.decoders_in_flight,
        r.serial_time.as_secs_f64(),
        r.serial_fps(),
        r.parallel_time.as_secs_f64(),
        r.parallel_fps(),
        r.speedup(),
        r.identical,
    );
    emit(cfg.out.as_deref(), &text)?;
    if !r.identical {
        eprintln!("error: parallel output differs from the serial decoder");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(cfg: &RunConfig, n: usize, wc: usize, wr: usize) -> Result<ExitCode> {
    let h = code::generate_gallager_code(n, wc, wr, cfg.seed)?;
    let text = match cfg.format {
        Format::Alist => code::to_alist(&h),
        Format::Dense => code::to_dense(&h),
    };
    emit(cfg.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cfg: &RunConfig) -> Result<ExitCode> {
    match &cfg.command {
        Command::Tables => cmd_tables(cfg),
        Command::Decode { obs, sigma2, reference } => cmd_decode(cfg, obs, *sigma2, *reference),
        Command::Ber => cmd_ber(cfg),
        Command::Bench => cmd_bench(cfg),
        Command::Gen { n, wc, wr } => cmd_gen(cfg, *n, *wc, *wr),
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match run(&cfg) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
