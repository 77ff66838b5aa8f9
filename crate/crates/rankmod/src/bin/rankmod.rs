//! Command-line front end: encode and decode streams of permutations,
//! run seeded channel simulations, verify small codebooks by brute
//! force, and print parameter tables.
//!
//! Exit codes: 0 success, 1 usage, 2 bad configuration, 3 bad data
//! (malformed input lines, values outside the code, or a failed
//! verification).

use clap::{Args, Parser, Subcommand, ValueEnum};
use rankmod::analysis::{self, TableSpec};
use rankmod::codec::{
    build_codec, default_gray_seed, default_threshold_seed, CodecConfig, Message, RankModCodec,
    SeedSpec,
};
use rankmod::perm::{bfs_kendall_distance, kendall_distance, InversionVector, Permutation};
use rankmod::sim;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

// --- Argument grammar ---

#[derive(Parser)]
#[command(
    name = "rankmod",
    version,
    about = "Rank modulation codes: permutations as error-correcting codewords",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode messages (one JSON value per line) into permutations.
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode permutations (one JSON object per line) back to messages.
    ///
    /// Words beyond the decoder's radius come out as `null` lines.
    Decode {
        #[command(flatten)]
        codec: CodecArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run a seeded Monte-Carlo adjacent-transposition channel and
    /// report failure counts.
    Simulate {
        #[command(flatten)]
        codec: CodecArgs,
        /// Number of independent trials.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Adjacent transpositions injected per trial (defaults to the
        /// codec's guaranteed radius; larger values over-drive the
        /// decoder and report the resulting failures).
        #[arg(long)]
        errors: Option<usize>,
        /// Seed for the trial generator; identical seeds replay
        /// identical noise.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (defaults to stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Measure a small codebook's minimum Kendall distance by brute
    /// force and compare it against the design distance.
    Verify {
        #[command(flatten)]
        codec: CodecArgs,
        /// exhaustive-distance: pairwise distances over the whole
        /// codebook (at most 2^16 messages). oracle-distance: the same,
        /// with every distance re-derived by breadth-first search
        /// (n <= 7).
        #[arg(long, value_enum, default_value_t = VerifyMode::ExhaustiveDistance)]
        mode: VerifyMode,
        /// Output file (defaults to stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print parameter tables (n, log2 M, d) for family sweeps.
    Table {
        /// JSON sweep description: one spec object or an array of them.
        /// Without it, a built-in reference sweep of all four families
        /// is printed.
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Output file (defaults to stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// How to pick the code: a JSON config file, inline flags, or a file
/// with flag overrides on top.
#[derive(Args, Clone)]
struct CodecArgs {
    /// JSON codec recipe (see `CodecConfig` in the library docs).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Code family.
    #[arg(long, value_enum)]
    construction: Option<Family>,
    /// Permutation length n.
    #[arg(long)]
    n: Option<usize>,
    /// Field or alphabet size q (for I this fixes n = q - 1).
    #[arg(long)]
    q: Option<u32>,
    /// Seed correction radius (families I, II, IIIA).
    #[arg(long)]
    t: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
#[allow(clippy::upper_case_acronyms)] // family names are the public CLI values
enum Family {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "IIIA")]
    IIIA,
    #[value(name = "IIIB")]
    IIIB,
}

#[derive(ValueEnum, Clone, Copy)]
enum VerifyMode {
    ExhaustiveDistance,
    OracleDistance,
}

#[derive(ValueEnum, Clone, Copy)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Input file (defaults to stdin).
    input: Option<PathBuf>,
    /// Output file (defaults to stdout).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

// --- Failure plumbing ---

enum Failure {
    Usage(String),
    Config(String),
    Data(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Config(_) => 2,
            Failure::Data(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Config(m) | Failure::Data(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("rankmod: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode { codec, io } => cmd_encode(&*build(&codec)?, &io),
        Command::Decode { codec, io } => cmd_decode(&*build(&codec)?, &io),
        Command::Simulate { codec, trials, errors, seed, out } => {
            cmd_simulate(&*build(&codec)?, trials, errors, seed, &out)
        }
        Command::Verify { codec, mode, out } => cmd_verify(&*build(&codec)?, mode, &out),
        Command::Table { config, format, out } => cmd_table(&config, format, &out),
    }
}

// --- Config resolution ---

fn build(args: &CodecArgs) -> Result<Box<dyn RankModCodec>, Failure> {
    let config = resolve_config(args)?;
    build_codec(&config).map_err(|e| Failure::Config(e.to_string()))
}

fn resolve_config(args: &CodecArgs) -> Result<CodecConfig, Failure> {
    let base: Option<CodecConfig> = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    match base {
        None => config_from_flags(args),
        // A different --construction discards the file entirely.
        Some(cfg) if args.construction.is_some_and(|f| f != family_of(&cfg)) => {
            config_from_flags(args)
        }
        Some(cfg) => apply_overrides(cfg, args),
    }
}

fn family_of(cfg: &CodecConfig) -> Family {
    match cfg {
        CodecConfig::I { .. } => Family::I,
        CodecConfig::II { .. } => Family::II,
        CodecConfig::IIIA { .. } => Family::IIIA,
        CodecConfig::IIIB { .. } => Family::IIIB,
    }
}

/// Writes q as p^m for prime p, or rejects.
fn factor_prime_power(q: u32) -> Result<(u32, u32), Failure> {
    if q < 2 {
        return Err(Failure::Config(format!("q must be at least 2, got {q}")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let (mut rest, mut m) = (q, 0);
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            if rest != 1 {
                return Err(Failure::Config(format!("q = {q} is not a prime power")));
            }
            return Ok((p, m));
        }
        p += 1;
    }
    Ok((q, 1))
}

fn need<T: Copy>(value: Option<T>, what: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing {what} (pass the flag or use --config)")))
}

fn config_from_flags(args: &CodecArgs) -> Result<CodecConfig, Failure> {
    let family = args.construction.ok_or_else(|| {
        Failure::Usage("pass --config PATH or --construction {I,II,IIIA,IIIB}".into())
    })?;
    let t = args.t;
    match family {
        Family::I => {
            // n = q - 1 for this family, so either flag determines q.
            let q = match (args.q, args.n) {
                (Some(q), _) => q,
                (None, Some(n)) => n as u32 + 1,
                (None, None) => need(None, "--q (or --n)")?,
            };
            let (p, m) = factor_prime_power(q)?;
            Ok(CodecConfig::I { p, m, t: need(t, "--t")? })
        }
        Family::II => {
            let n = need(args.n, "--n")?;
            let t = need(t, "--t")?;
            let seed = default_gray_seed(n, t).map_err(|e| Failure::Config(e.to_string()))?;
            Ok(CodecConfig::II { n, seed })
        }
        Family::IIIA => {
            let n = need(args.n, "--n")?;
            let t = need(t, "--t")?;
            let seed = default_threshold_seed(n, t).map_err(|e| Failure::Config(e.to_string()))?;
            Ok(CodecConfig::IIIA { n, seed })
        }
        Family::IIIB => Err(Failure::Config(
            "construction IIIB needs a --config file carrying its seed spec \
             (a q-ary code of length 2(l-1)(q-1))"
                .into(),
        )),
    }
}

/// Radius of a seed spec when it is a plain BCH recipe; product and GRS
/// seeds don't reduce to one knob.
fn bch_radius(seed: &SeedSpec) -> Option<usize> {
    match seed {
        SeedSpec::Bch { t, .. } => Some(*t),
        _ => None,
    }
}

fn apply_overrides(cfg: CodecConfig, args: &CodecArgs) -> Result<CodecConfig, Failure> {
    match cfg {
        CodecConfig::I { p, m, t } => {
            let (p, m) = match (args.q, args.n) {
                (Some(q), _) => factor_prime_power(q)?,
                (None, Some(n)) => factor_prime_power(n as u32 + 1)?,
                (None, None) => (p, m),
            };
            Ok(CodecConfig::I { p, m, t: args.t.unwrap_or(t) })
        }
        CodecConfig::II { n, seed } => {
            let new_n = args.n.unwrap_or(n);
            let seed = reseed(new_n != n, args.t, seed, default_gray_seed)?;
            Ok(CodecConfig::II { n: new_n, seed: seed_for(new_n, seed)? })
        }
        CodecConfig::IIIA { n, seed } => {
            let new_n = args.n.unwrap_or(n);
            let seed = reseed(new_n != n, args.t, seed, default_threshold_seed)?;
            Ok(CodecConfig::IIIA { n: new_n, seed: seed_for(new_n, seed)? })
        }
        CodecConfig::IIIB { q, l, seed } => {
            if args.t.is_some() {
                return Err(Failure::Usage(
                    "--t does not apply to IIIB; set the seed spec in the config".into(),
                ));
            }
            let q = args.q.unwrap_or(q);
            let l = match args.n {
                None => l,
                Some(n) => {
                    let q1 = q as usize - 1;
                    // n = (2l + 1)(q - 1) must come out an odd multiple.
                    if q1 == 0 || n % q1 != 0 || (n / q1).is_multiple_of(2) || n / q1 < 5 {
                        return Err(Failure::Config(format!(
                            "n = {n} is not (2l+1)(q-1) for q = {q} and l >= 2"
                        )));
                    }
                    (n / q1 - 1) / 2
                }
            };
            Ok(CodecConfig::IIIB { q, l, seed })
        }
    }
}

/// Carries a seed spec through --n/--t overrides: an explicit --t always
/// rebuilds, a changed --n rebuilds when the old radius is recoverable.
enum Reseed {
    Keep(SeedSpec),
    Rebuild(usize),
}

fn reseed(
    n_changed: bool,
    t_flag: Option<usize>,
    seed: SeedSpec,
    _builder: fn(usize, usize) -> Result<SeedSpec, rankmod::Error>,
) -> Result<Reseed, Failure> {
    match (t_flag, n_changed) {
        (Some(t), _) => Ok(Reseed::Rebuild(t)),
        (None, false) => Ok(Reseed::Keep(seed)),
        (None, true) => match bch_radius(&seed) {
            Some(t) => Ok(Reseed::Rebuild(t)),
            None => Err(Failure::Usage(
                "overriding --n with a non-BCH seed needs an explicit --t".into(),
            )),
        },
    }
}

fn seed_for(n: usize, plan: Reseed) -> Result<SeedSpec, Failure> {
    match plan {
        Reseed::Keep(seed) => Ok(seed),
        Reseed::Rebuild(t) => {
            default_gray_seed(n, t).map_err(|e| Failure::Config(e.to_string()))
        }
    }
}

// --- Line-oriented I/O ---

#[derive(Serialize)]
struct PermOut<'a> {
    n: usize,
    perm: &'a [u32],
}

#[derive(Deserialize)]
struct PermIn {
    n: usize,
    #[serde(default)]
    perm: Option<Vec<u32>>,
    #[serde(default)]
    invvec: Option<Vec<u32>>,
}

fn read_input(io: &IoArgs) -> Result<String, Failure> {
    match &io.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Data(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => Ok(Box::new(
            fs::File::create(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?,
        )),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| Failure::Data(format!("write: {e}")))
}

// --- Subcommands ---

fn cmd_encode(codec: &dyn RankModCodec, io: &IoArgs) -> Result<(), Failure> {
    let text = read_input(io)?;
    let mut out = open_output(&io.out)?;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let message: Message = serde_json::from_str(line)
            .map_err(|e| Failure::Data(format!("line {}: {e}", idx + 1)))?;
        let word = codec
            .encode(&message)
            .map_err(|e| Failure::Data(format!("line {}: {e}", idx + 1)))?;
        let rendered = serde_json::to_string(&PermOut { n: word.n(), perm: word.entries() })
            .expect("permutation serializes");
        emit(out.as_mut(), &rendered)?;
    }
    Ok(())
}

fn parse_word(line: &str, expect_n: usize) -> Result<Permutation, String> {
    let parsed: PermIn = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let word = match (parsed.perm, parsed.invvec) {
        (Some(p), None) => Permutation::from_one_line(p).map_err(|e| e.to_string())?,
        (None, Some(x)) => {
            let iv = InversionVector::new(x).map_err(|e| e.to_string())?;
            Permutation::from_inversion_vector(&iv)
        }
        _ => return Err("expected exactly one of \"perm\" or \"invvec\"".into()),
    };
    if word.n() != parsed.n {
        return Err(format!("\"n\" says {} but the vector gives n = {}", parsed.n, word.n()));
    }
    if word.n() != expect_n {
        return Err(format!("codec expects n = {expect_n}, word has n = {}", word.n()));
    }
    Ok(word)
}

fn cmd_decode(codec: &dyn RankModCodec, io: &IoArgs) -> Result<(), Failure> {
    let text = read_input(io)?;
    let mut out = open_output(&io.out)?;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let word = parse_word(line, codec.n())
            .map_err(|e| Failure::Data(format!("line {}: {e}", idx + 1)))?;
        match codec
            .decode(&word)
            .map_err(|e| Failure::Data(format!("line {}: {e}", idx + 1)))?
        {
            Some((message, _)) => {
                let rendered = serde_json::to_string(&message).expect("message serializes");
                emit(out.as_mut(), &rendered)?;
            }
            None => emit(out.as_mut(), "null")?,
        }
    }
    Ok(())
}

fn cmd_simulate(
    codec: &dyn RankModCodec,
    trials: u64,
    errors: Option<usize>,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let errors = errors.unwrap_or_else(|| codec.kendall_radius());
    let report = sim::simulate(codec, trials, errors, seed)
        .map_err(|e| Failure::Data(e.to_string()))?;
    let mut out = open_output(out)?;
    emit(
        out.as_mut(),
        &serde_json::to_string_pretty(&report).expect("report serializes"),
    )
}

#[derive(Serialize)]
struct VerifyReport {
    mode: &'static str,
    codebook: u128,
    design_distance: usize,
    min_distance: u64,
    ok: bool,
}

const VERIFY_CODEBOOK_CAP: u128 = 1 << 16;

fn cmd_verify(
    codec: &dyn RankModCodec,
    mode: VerifyMode,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let count = codec.message_count().ok_or_else(|| {
        Failure::Config("codebook too large to enumerate for verification".into())
    })?;
    if count > VERIFY_CODEBOOK_CAP {
        return Err(Failure::Config(format!(
            "codebook has {count} messages, verification cap is {VERIFY_CODEBOOK_CAP}"
        )));
    }
    let oracle = matches!(mode, VerifyMode::OracleDistance);
    if oracle && codec.n() > 7 {
        return Err(Failure::Config(format!(
            "oracle-distance uses breadth-first search and needs n <= 7, got n = {}",
            codec.n()
        )));
    }
    let mut words = Vec::with_capacity(count as usize);
    for index in 0..count {
        let message = codec
            .message_by_index(index)
            .map_err(|e| Failure::Config(e.to_string()))?;
        words.push(
            codec
                .encode(&message)
                .map_err(|e| Failure::Config(e.to_string()))?,
        );
    }
    let mut min = u64::MAX;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = kendall_distance(&words[i], &words[j])
                .map_err(|e| Failure::Data(e.to_string()))?;
            if oracle {
                let via_bfs = bfs_kendall_distance(&words[i], &words[j])
                    .map_err(|e| Failure::Data(e.to_string()))?;
                if via_bfs != d {
                    return Err(Failure::Data(format!(
                        "metric disagrees with its search oracle: {d} vs {via_bfs}"
                    )));
                }
            }
            min = min.min(d);
        }
    }
    let design = codec.design_kendall_distance();
    let report = VerifyReport {
        mode: if oracle { "oracle-distance" } else { "exhaustive-distance" },
        codebook: count,
        design_distance: design,
        min_distance: min,
        ok: words.len() < 2 || min >= design as u64,
    };
    let mut out = open_output(out)?;
    emit(
        out.as_mut(),
        &serde_json::to_string_pretty(&report).expect("report serializes"),
    )?;
    if !report.ok {
        return Err(Failure::Data(format!(
            "measured minimum distance {min} is below the design distance {design}"
        )));
    }
    Ok(())
}

/// The sweep printed when `table` is given no config: the headline rows
/// of each family.
fn reference_specs() -> Vec<TableSpec> {
    vec![
        TableSpec::I { p: 2, m: 6, ts: vec![15, 23] },
        TableSpec::I { p: 2, m: 8, ts: vec![63, 95] },
        TableSpec::II { n: 62, t_max: 10 },
        TableSpec::IIIA { ext_degree: 6, ts: vec![5, 6, 7] },
        TableSpec::IIIA { ext_degree: 8, ts: vec![5, 6, 7, 8] },
        TableSpec::IIIB {
            p: 2,
            m: 4,
            l: 8,
            row_n: 15,
            row_k: 9,
            col_n: 14,
            col_ks: vec![3, 4, 5, 6, 7, 8],
        },
    ]
}

fn cmd_table(
    config: &Option<PathBuf>,
    format: OutputFormat,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let specs: Vec<TableSpec> = match config {
        None => reference_specs(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            let parsed = if value.is_array() {
                serde_json::from_value::<Vec<TableSpec>>(value)
            } else {
                serde_json::from_value::<TableSpec>(value).map(|s| vec![s])
            };
            parsed.map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
        }
    };
    let mut rows = Vec::new();
    for spec in &specs {
        rows.extend(
            analysis::parameter_table(spec).map_err(|e| Failure::Config(e.to_string()))?,
        );
    }
    let rendered = match format {
        OutputFormat::Csv => analysis::table_to_csv(&rows),
        OutputFormat::Json => analysis::table_to_json(&rows) + "\n",
    };
    let mut out = open_output(out)?;
    out.write_all(rendered.as_bytes())
        .map_err(|e| Failure::Data(format!("write: {e}")))
}
