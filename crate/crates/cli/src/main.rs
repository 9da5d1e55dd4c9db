use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use eaq_turbo::spectrum::SpectrumOptions;
use eaq_turbo::ResourceSignature;
use eaq_turbo_cli::analyze::{analyze, write_report, DEFAULT_DEGREE};
use eaq_turbo_cli::bounds::write_bounds;
use eaq_turbo_cli::search::{search, Filter};
use eaq_turbo_cli::simulate::{
    run_campaign, write_csv, SimulationConfig, DEFAULT_MAX_TRIALS, DEFAULT_MIN_FAILURES,
};
use eaq_turbo_cli::{load_encoder, VERSION};

#[derive(Parser)]
#[command(name = "eaqturbo", version = VERSION, about = "Entanglement-assisted quantum convolutional and turbo codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Property flags, free distance and distance spectrum of an encoder.
    Analyze {
        /// Encoder file, or `@name` for a bundled encoder.
        #[arg(long)]
        encoder: String,
        /// Truncation degree of the spectrum.
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        spectrum: usize,
        /// Sum only the first L powers of the adjacency matrix.
        #[arg(long)]
        max_powers: Option<usize>,
        /// Drop paths that carry no logical weight.
        #[arg(long)]
        positive_logical_only: bool,
    },
    /// Sample random encoders and keep those with the requested properties.
    Search {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        k_q: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long, default_value_t = 0)]
        k_c: usize,
        #[arg(long, default_value_t = 0)]
        g: usize,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Comma-separated: recursive, non-recursive, quasi-recursive,
        /// non-catastrophic, catastrophic.
        #[arg(long, value_delimiter = ',')]
        require: Vec<Filter>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write each candidate as an encoder file here.
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Print at most this many candidates.
        #[arg(long, default_value_t = 10)]
        show: usize,
    },
    /// Hashing-bound noise limits for target rates.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        rate: Vec<f64>,
        #[arg(long)]
        assisted: bool,
    },
    /// Monte Carlo word error rate of a serial turbo code.
    Simulate {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        /// Outer frames per block.
        #[arg(long)]
        frames: usize,
        /// Comma-separated depolarizing probabilities.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        p_ebit: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MIN_FAILURES)]
        min_failures: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_TRIALS)]
        max_trials: u64,
        /// Worker threads (defaults to available cores).
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = eaq_turbo::decoder::DEFAULT_MAX_ITERATIONS)]
        max_iterations: usize,
        #[arg(long, default_value_t = 64)]
        batch: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write 0 in the seconds column so reruns compare byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            encoder,
            spectrum,
            max_powers,
            positive_logical_only,
        } => {
            let enc = load_encoder(&encoder)?;
            let opts = SpectrumOptions {
                max_powers,
                positive_logical_only,
            };
            let a = analyze(&enc, Some(spectrum), opts)?;
            write_report(&mut io::stdout().lock(), &a)?;
        }
        Command::Search {
            m,
            k_q,
            a,
            c,
            k_c,
            g,
            count,
            require,
            seed,
            output_dir,
            show,
        } => {
            let sig = ResourceSignature::new(m, k_q, a, c, k_c, g)?;
            let found = search(sig, count, &require, seed)?;
            let mut out = io::stdout().lock();
            writeln!(out, "signature: {sig}")?;
            writeln!(out, "samples: {}", found.samples)?;
            writeln!(out, "hits: {}", found.candidates.len())?;
            if found.samples > 0 {
                writeln!(
                    out,
                    "hit rate: {:.6}",
                    found.candidates.len() as f64 / found.samples as f64
                )?;
            }
            if let Some(dir) = &output_dir {
                std::fs::create_dir_all(dir)?;
            }
            for (i, cand) in found.candidates.iter().enumerate() {
                let r = &cand.report;
                let text = format!(
                    "# sample {} seed {}\n# non-catastrophic: {} quasi-recursive: {} recursive: {}\n{}",
                    cand.sample,
                    seed,
                    r.non_catastrophic,
                    r.quasi_recursive,
                    r.recursive,
                    cand.encoder.to_text()
                );
                if let Some(dir) = &output_dir {
                    std::fs::write(dir.join(format!("candidate-{:06}.txt", cand.sample)), &text)?;
                }
                if i < show {
                    write!(out, "{text}")?;
                }
            }
        }
        Command::Bounds { rate, assisted } => {
            write_bounds(&mut io::stdout().lock(), &rate, assisted)?;
        }
        Command::Simulate {
            outer,
            inner,
            frames,
            p,
            p_ebit,
            seed,
            min_failures,
            max_trials,
            workers,
            max_iterations,
            batch,
            output: path,
            no_timing,
        } => {
            let cfg = SimulationConfig {
                outer: load_encoder(&outer)?,
                inner: load_encoder(&inner)?,
                outer_name: outer,
                inner_name: inner,
                frames_outer: frames,
                ps: p,
                p_ebit,
                seed,
                min_failures,
                max_trials,
                max_iterations,
                batch: batch.max(1),
            };
            let workers = workers.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let results = run_campaign(&cfg, workers.max(1))?;
            let mut out = output(path.as_ref())?;
            write_csv(&mut out, &cfg, &results, !no_timing)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn is_invalid_encoder(e: &anyhow::Error) -> bool {
    use eaq_turbo::Error as E;
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<E>(),
            Some(
                E::NotSymplectic { .. }
                    | E::RowCount { .. }
                    | E::Parse { .. }
                    | E::DecimalRange { .. }
                    | E::TooManyQubits { .. }
                    | E::Signature(_)
            )
        )
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_invalid_encoder(&e) { 2 } else { 1 })
        }
    }
}
