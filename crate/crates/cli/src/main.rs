//! `boolsig`: key generation, signing, verification, benchmarks and size
//! analysis from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use boolsig::analysis::{
    measure_private_key, measure_public_key, measure_signature, AttackDimensionReport, SizeReport,
};
use boolsig::{
    keygen, sign, verify_with_threads, McConfig, PrivateKey64, PublicKey64, SchemeParams,
    Signature64, Trials,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Parser)]
#[command(name = "boolsig", version, about = "Signatures from automorphisms of Boolean polynomial algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair, writing `<out>.pub` and `<out>.key`.
    Keygen {
        /// Parameters as `key=value` pairs, e.g. "n=31 t=3 b=3 d=2 r=1".
        #[arg(long, default_value = "default")]
        params: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path prefix.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Sign a message with a private key.
    Sign {
        #[arg(long)]
        key: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
        #[arg(long)]
        seed: Option<u64>,
        /// Signature file; stdout if omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify a signature. Exit status: 0 accept, 1 reject, 2 error.
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
        #[arg(long)]
        sig: PathBuf,
        /// Override the trial count stored in the key (`exhaustive` allowed).
        #[arg(long)]
        trials: Option<Trials>,
        /// Override the acceptance threshold stored in the key.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Time keygen/sign/verify and report sizes for a table of parameters.
    Bench {
        /// Repetitions per row; medians are reported.
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Size accounting and attack-cost figures.
    Analyze {
        #[command(subcommand)]
        what: Analysis,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MessageArgs {
    /// Read the message from a file.
    #[arg(long)]
    message: Option<PathBuf>,
    /// Use this string as the message.
    #[arg(long)]
    text: Option<String>,
}

impl MessageArgs {
    fn bytes(&self) -> Result<Vec<u8>> {
        match (&self.message, &self.text) {
            (Some(path), _) => fs::read(path).with_context(|| format!("reading {}", path.display())),
            (None, Some(text)) => Ok(text.as_bytes().to_vec()),
            (None, None) => bail!("a message is required"),
        }
    }
}

#[derive(Subcommand)]
enum Analysis {
    /// Bit counts of key and signature files.
    Size {
        #[arg(long = "pub")]
        public: Option<PathBuf>,
        #[arg(long)]
        key: Option<PathBuf>,
        #[arg(long)]
        sig: Option<PathBuf>,
        /// Print `key=value` records instead of aligned text.
        #[arg(long)]
        record: bool,
    },
    /// Monomial counts a linearization attack must handle.
    Dimension {
        #[arg(long, default_value_t = 31)]
        n: u64,
        #[arg(long, default_value_t = 27)]
        degree: u64,
        #[arg(long)]
        record: bool,
    },
    /// Trial count needed for a given accuracy and failure probability.
    Trials {
        #[arg(long, default_value_t = 0.03)]
        epsilon: f64,
        /// Failure probability; the default is 2^-33.
        #[arg(long, default_value_t = 2f64.powi(-33))]
        delta: f64,
        #[arg(long = "c", default_value_t = 0.02)]
        c_const: f64,
    },
}

fn rng_for(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Keygen { params, seed, out } => {
            let params: SchemeParams = params.parse()?;
            let (sk, pk) = keygen::<i64, _>(&params, &mut rng_for(seed))?;
            let (pub_path, key_path) = (with_suffix(&out, ".pub"), with_suffix(&out, ".key"));
            write(&pub_path, &pk.to_text())?;
            write(&key_path, &sk.to_text())?;
            println!("public key  : {}", pub_path.display());
            println!("private key : {}", key_path.display());
        }
        Command::Sign { key, message, seed, out } => {
            let sk = PrivateKey64::from_text(&read(&key)?).context("parsing private key")?;
            let sig = sign(&sk, &message.bytes()?, &mut rng_for(seed))?;
            match out {
                Some(path) => write(&path, &sig.to_text())?,
                None => print!("{}", sig.to_text()),
            }
        }
        Command::Verify { public, message, sig, trials, threshold, threads, seed } => {
            let mut pk = PublicKey64::from_text(&read(&public)?).context("parsing public key")?;
            if let Some(t) = trials {
                pk.params.trials = t;
            }
            if let Some(e) = threshold {
                pk.params.threshold = e;
            }
            pk.params.validate()?;
            let sig = Signature64::from_text(&read(&sig)?).context("parsing signature")?;
            let report = verify_with_threads(&pk, &message.bytes()?, &sig, &mut rng_for(seed), threads)?;
            println!("challenge   : {}", report.challenge.u);
            println!("trials      : {}", report.trials);
            println!("p_R         : {:.4} ({} positive)", report.p_r(), report.positives_r);
            println!("p_S         : {:.4} ({} positive)", report.p_s(), report.positives_s);
            println!("difference  : {} (allowed {})", report.difference(), report.allowed_difference);
            println!("decision    : {}", report.decision);
            return Ok(if report.accepted() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Bench { runs, seed, threads } => bench(runs.max(1), seed, threads)?,
        Command::Analyze { what } => analyze(what)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(what: Analysis) -> Result<()> {
    match what {
        Analysis::Size { public, key, sig, record } => {
            if public.is_none() && key.is_none() && sig.is_none() {
                bail!("give at least one of --pub, --key, --sig");
            }
            let show = |label: &str, r: SizeReport| {
                if record {
                    println!("kind={label} {}", r.render_record());
                } else {
                    println!("[{label}]\n{}", r.render_text());
                }
            };
            if let Some(p) = public {
                show("public", measure_public_key(&PublicKey64::from_text(&read(&p)?)?));
            }
            if let Some(p) = key {
                show("private", measure_private_key(&PrivateKey64::from_text(&read(&p)?)?));
            }
            if let Some(p) = sig {
                show("signature", measure_signature(&Signature64::from_text(&read(&p)?)?));
            }
        }
        Analysis::Dimension { n, degree, record } => {
            let r = AttackDimensionReport::new(n, degree);
            if record {
                println!("{}", r.render_record());
            } else {
                print!("{}", r.render_text());
            }
        }
        Analysis::Trials { epsilon, delta, c_const } => {
            let cfg = McConfig { epsilon, delta, c_const, ..McConfig::default() };
            println!("required trials : {}", cfg.required_trials()?);
        }
    }
    Ok(())
}

struct Timings {
    keygen: Vec<Duration>,
    sign: Vec<Duration>,
    verify: Vec<Duration>,
    sig_kb: f64,
    pub_kb: f64,
    key_kb: f64,
    accepted: usize,
}

fn median(v: &mut [Duration]) -> Duration {
    v.sort_unstable();
    v[v.len() / 2]
}

fn bench_row(params: &SchemeParams, runs: usize, seed: u64, threads: usize) -> Result<Timings> {
    let mut t = Timings {
        keygen: vec![],
        sign: vec![],
        verify: vec![],
        sig_kb: 0.0,
        pub_kb: 0.0,
        key_kb: 0.0,
        accepted: 0,
    };
    for i in 0..runs {
        let mut rng = ChaCha20Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let start = Instant::now();
        let (sk, pk) = keygen::<i64, _>(params, &mut rng)?;
        t.keygen.push(start.elapsed());
        let start = Instant::now();
        let sig = sign(&sk, b"benchmark message", &mut rng)?;
        t.sign.push(start.elapsed());
        let start = Instant::now();
        let report = verify_with_threads(&pk, b"benchmark message", &sig, &mut rng, threads)?;
        t.verify.push(start.elapsed());
        t.accepted += usize::from(report.accepted());
        t.sig_kb += measure_signature(&sig).kilobytes / runs as f64;
        t.pub_kb += measure_public_key(&pk).kilobytes / runs as f64;
        t.key_kb += measure_private_key(&sk).kilobytes / runs as f64;
    }
    Ok(t)
}

/// Peak resident set size in kB, from `/proc/self/status` (Linux only).
fn peak_rss_kb() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn bench(runs: usize, seed: u64, threads: usize) -> Result<()> {
    let mut rows: Vec<(String, SchemeParams)> = [(3, 3, 1, 1), (3, 3, 2, 1), (3, 4, 1, 1), (4, 3, 1, 1), (5, 3, 1, 1), (3, 3, 1, 2)]
        .into_iter()
        .map(|(t, b, d, r)| {
            let p = SchemeParams { t, b, d, r, ..SchemeParams::default() };
            (format!("n=31 t={t} b={b} d={d} r={r}"), p)
        })
        .collect();
    rows.push(("test profile n=10".into(), SchemeParams::test_profile(10)));

    println!("runs per row: {runs}; times are medians, sizes are means");
    println!(
        "{:<24} {:>10} {:>10} {:>10} {:>9} {:>9} {:>9} {:>8}",
        "parameters", "keygen", "sign", "verify", "sig KB", "pub KB", "key KB", "accept"
    );
    for (label, params) in &rows {
        params.validate()?;
        let mut t = bench_row(params, runs, seed, threads)?;
        println!(
            "{:<24} {:>10.2?} {:>10.2?} {:>10.2?} {:>9.2} {:>9.2} {:>9.2} {:>5}/{}",
            label,
            median(&mut t.keygen),
            median(&mut t.sign),
            median(&mut t.verify),
            t.sig_kb,
            t.pub_kb,
            t.key_kb,
            t.accepted,
            runs
        );
    }
    match peak_rss_kb() {
        Some(kb) => println!("peak memory (approximate, process high-water mark): {:.1} MB", kb as f64 / 1024.0),
        None => println!("peak memory: unavailable on this platform"),
    }
    Ok(())
}
