use clap::Parser;
use lrpc_harness::{
    config::{Algorithm, ConfigDraft, OutputFormat},
    experiment::{run_experiment, sweep, SweepParam},
    output,
};

/// Monte-Carlo success-rate experiments for LRPC error-support recovery.
///
/// The decoding regime is n - k = rd - c: give either --n or --c and the
/// other is derived (with k defaulting to 1, so n = rd - c + k as in the
/// benchmark setup). Negative --c selects the overdetermined regime the
/// basic decoder targets.
#[derive(Debug, Parser)]
#[command(name = "lrpc-harness", version)]
struct Cli {
    /// Base field order (prime).
    #[arg(long, default_value_t = 2)]
    q: u16,

    /// Extension degree of F_{q^m}.
    #[arg(long)]
    m: usize,

    /// Code length; derived from rd - c + k when omitted.
    #[arg(long)]
    n: Option<usize>,

    /// Code dimension.
    #[arg(long, default_value_t = 1)]
    k: usize,

    /// Error rank weight.
    #[arg(long)]
    r: usize,

    /// Dual rank weight (parity-check support dimension).
    #[arg(long)]
    d: usize,

    /// Target syndrome codimension rd - (n - k); may be negative.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<i64>,

    /// Intersection arity override for the accumulating decoder.
    #[arg(long)]
    t: Option<u64>,

    /// Support recovery algorithm to benchmark.
    #[arg(long, value_enum, default_value_t = Algorithm::Intersect)]
    algorithm: Algorithm,

    /// Trials per experiment.
    #[arg(long, default_value_t = 1000)]
    trials: u64,

    /// Experiment seed; trial i uses the substream (seed, i).
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Round budget for the accumulating decoder.
    #[arg(long, default_value_t = 64)]
    max_rounds: u32,

    /// Bound on the multiset size the thresholding decoder may enumerate.
    #[arg(long, default_value_t = 1 << 24)]
    candidate_cap: u64,

    /// Also run the coordinate solve on every recovered support.
    #[arg(long)]
    full_decode: bool,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,

    /// Worker threads; 0 uses all cores. Results do not depend on this.
    #[arg(long, default_value_t = 0)]
    parallelism: usize,

    /// Parameter to sweep; runs one experiment per --values entry.
    #[arg(long, value_enum)]
    sweep: Option<SweepParam>,

    /// Comma-separated values for the swept parameter.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    values: Vec<i64>,

    /// Apply the strict thresholding guard c < d - 2 instead of c <= d - 2.
    #[arg(long)]
    faithful_guard: bool,

    /// Include per-trial reports in JSON output.
    #[arg(long)]
    verbose: bool,
}

fn main() {
    let cli = Cli::parse();
    let draft = ConfigDraft {
        q: cli.q,
        m: cli.m,
        r: cli.r,
        d: cli.d,
        n: cli.n,
        k: cli.k,
        c: cli.c,
        t: cli.t,
        algorithm: cli.algorithm,
        trials: cli.trials,
        seed: cli.seed,
        max_rounds: cli.max_rounds,
        candidate_cap: cli.candidate_cap,
        full_decode: cli.full_decode,
        faithful_guard: cli.faithful_guard,
        parallelism: cli.parallelism,
        verbose: cli.verbose,
    };
    let result = (|| {
        let cfg = draft.resolve()?;
        let summaries = match cli.sweep {
            Some(param) => sweep(&cfg, param, &cli.values)?,
            None => vec![run_experiment(&cfg)?],
        };
        match cli.output {
            OutputFormat::Json => println!("{}", output::to_json(&summaries)?),
            OutputFormat::Csv => {
                println!("{}", output::csv_header());
                for summary in &summaries {
                    println!("{}", output::csv_row(summary));
                }
            }
        }
        Ok::<(), lrpc_harness::HarnessError>(())
    })();
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
