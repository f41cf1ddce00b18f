//! `spirale` — encrypt, decrypt and analyze with the Spirale hand cipher.
//!
//! Exit codes: 0 on success, 1 for domain errors (printed as
//! `ERROR <code>: <message>` on stderr), 2 for usage errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spirale::analysis;
use spirale::keygen;
use spirale::{Alphabet, AlphabetFormat, CipheringTable, KeySet, PermutationKey, Rank};

#[derive(Parser)]
#[command(name = "spirale", version, about = "Spirale hand cipher toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphabetOpt {
    /// Alphabet file; single-line (one glyph per symbol) or one token per
    /// line. Defaults to the built-in 26-letter alphabet.
    #[arg(long, env = "SPIRALE_ALPHABET", value_name = "PATH")]
    alphabet: Option<PathBuf>,
}

impl AlphabetOpt {
    fn load(&self) -> Result<Alphabet, CliError> {
        match &self.alphabet {
            None => Ok(Alphabet::latin()),
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::usage(format!("cannot read alphabet file {}: {e}", path.display()))
                })?;
                let body = text.trim_end_matches(['\n', '\r']);
                let format = if body.contains('\n') {
                    AlphabetFormat::TokenPerLine
                } else {
                    AlphabetFormat::SingleLine
                };
                Ok(Alphabet::parse(&text, format)?)
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt a text file (input is normalized onto the alphabet)
    Encrypt(CryptArgs),
    /// Decrypt a file of ciphertext symbols
    Decrypt(CryptArgs),
    /// Print the keystream for a key set
    Keystream(KeystreamArgs),
    /// Permute the alphabet under a key
    Permute(PermuteArgs),
    /// Dump the ciphering table for keys K1,K2
    Table(TableArgs),
    /// Derive four keys from book extracts
    DeriveKeys(DeriveKeysArgs),
    /// Statistics over a symbol sequence
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct CryptArgs {
    /// Four comma-separated keys K1,K2,K3,K4
    #[arg(long, value_name = "K1,K2,K3,K4")]
    keys: String,
    /// Input file (UTF-8 text)
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// Output file
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Insert a space every N symbols of output (0 = continuous line)
    #[arg(long, default_value_t = 0, value_name = "N")]
    group: usize,
    #[command(flatten)]
    alphabet: AlphabetOpt,
}

#[derive(Args)]
struct KeystreamArgs {
    /// Four comma-separated keys K1,K2,K3,K4
    #[arg(long, value_name = "K1,K2,K3,K4")]
    keys: String,
    /// Number of symbols to print
    #[arg(long, value_name = "N")]
    length: usize,
    /// Print only the long key (the first k symbols)
    #[arg(long)]
    dump_longkey: bool,
    #[command(flatten)]
    alphabet: AlphabetOpt,
}

#[derive(Args)]
struct PermuteArgs {
    /// Permutation key
    #[arg(long, value_name = "K")]
    key: String,
    #[command(flatten)]
    alphabet: AlphabetOpt,
}

#[derive(Args)]
struct TableArgs {
    /// Two comma-separated keys K1,K2
    #[arg(long, value_name = "K1,K2")]
    keys: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
    format: TableFormat,
    #[command(flatten)]
    alphabet: AlphabetOpt,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Tsv,
}

#[derive(Args)]
struct DeriveKeysArgs {
    /// File with exactly four extract lines
    #[arg(long, value_name = "FILE")]
    extracts: PathBuf,
    /// Apply the frequency-correction pass
    #[arg(long)]
    correct: bool,
    #[command(flatten)]
    alphabet: AlphabetOpt,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AnalyzeMode {
    Freq,
    Ic,
    Chi2,
    Autocorr,
    Ngrams,
    Errprop,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Which statistic to compute
    #[arg(long, value_enum)]
    mode: AnalyzeMode,
    /// Input file of symbols (whitespace is ignored); unused for errprop
    #[arg(long, value_name = "FILE")]
    r#in: Option<PathBuf>,
    /// Lag for autocorr
    #[arg(long, value_name = "N")]
    lag: Option<usize>,
    /// Four comma-separated keys (errprop only)
    #[arg(long, value_name = "K1,K2,K3,K4")]
    keys: Option<String>,
    /// 1-based long-key position to flip (errprop)
    #[arg(long, default_value_t = 1, value_name = "POS")]
    flip: usize,
    /// How many positions to compare (errprop; default 2k)
    #[arg(long, value_name = "N")]
    horizon: Option<usize>,
    #[command(flatten)]
    alphabet: AlphabetOpt,
}

/// Domain errors exit with 1, usage errors with 2.
struct CliError {
    code: String,
    message: String,
    exit: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: "UsageError".into(), message: message.into(), exit: 2 }
    }
}

impl From<spirale::Error> for CliError {
    fn from(e: spirale::Error) -> Self {
        CliError { code: e.code().into(), message: e.to_string(), exit: 1 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ERROR {}: {}", e.code, e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Encrypt(args) => crypt(args, true),
        Command::Decrypt(args) => crypt(args, false),
        Command::Keystream(args) => keystream(args),
        Command::Permute(args) => permute(args),
        Command::Table(args) => table(args),
        Command::DeriveKeys(args) => derive_keys(args),
        Command::Analyze(args) => analyze(args),
    }
}

fn split_keys<const N: usize>(list: &str) -> Result<[&str; N], CliError> {
    let parts: Vec<&str> = list.split(',').map(str::trim).collect();
    parts
        .try_into()
        .map_err(|_| CliError::usage(format!("--keys expects {N} comma-separated keys")))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

/// Renders symbols, grouped every `group` symbols when requested.
fn render_grouped(a: &Alphabet, ranks: &[Rank], group: usize) -> String {
    let sep = if a.is_single_char() { "" } else { " " };
    if group == 0 {
        return a.render_joined(ranks, sep);
    }
    ranks.chunks(group).map(|c| a.render_joined(c, sep)).collect::<Vec<_>>().join(" ")
}

fn crypt(args: CryptArgs, encrypting: bool) -> Result<(), CliError> {
    let a = args.alphabet.load()?;
    let keys = split_keys::<4>(&args.keys)?;
    let ks = KeySet::new(&a, keys)?;
    let raw = read_input(&args.r#in)?;
    let output = if encrypting {
        let msg = spirale::normalize_text(&a, &raw)?;
        spirale::encrypt(&ks, &a, &msg)?
    } else {
        let stripped: String = raw.split_whitespace().collect();
        let ct = a.tokenize(&stripped)?;
        spirale::decrypt(&ks, &a, &ct)?
    };
    let text = render_grouped(&a, &output, args.group);
    fs::write(&args.out, text + "\n")
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", args.out.display())))?;
    Ok(())
}

fn keystream(args: KeystreamArgs) -> Result<(), CliError> {
    let a = args.alphabet.load()?;
    let keys = split_keys::<4>(&args.keys)?;
    let ks = KeySet::new(&a, keys)?;
    let sep = if a.is_single_char() { "" } else { " " };
    if args.dump_longkey {
        println!("{}", a.render_joined(&spirale::cipher::long_key(&ks, &a)?, sep));
        return Ok(());
    }
    let stream = spirale::cipher::keystream_for(&ks, &a, args.length)?;
    println!("{}", a.render_joined(&stream, sep));
    Ok(())
}

fn permute(args: PermuteArgs) -> Result<(), CliError> {
    let a = args.alphabet.load()?;
    let key = PermutationKey::new(&a, &args.key)?;
    let permuted = spirale::permutation::permute_alphabet(&a, &key);
    println!("{permuted}");
    // new-rank row: 1-based rank of each original symbol in the permuted order
    let ranks: Vec<String> =
        a.tokens().map(|t| (permuted.rank(t).expect("bijection") + 1).to_string()).collect();
    println!("{}", ranks.join(" "));
    Ok(())
}

fn table(args: TableArgs) -> Result<(), CliError> {
    let a = args.alphabet.load()?;
    let keys = split_keys::<2>(&args.keys)?;
    let k1 = PermutationKey::new(&a, keys[0])?;
    let k2 = PermutationKey::new(&a, keys[1])?;
    let t = CipheringTable::new(&a, &k1, &k2);
    let TableFormat::Tsv = args.format;

    let mut lines = Vec::new();
    let row_alphabet: Vec<&str> = t.row_order().iter().map(|&r| a.symbol_at(r)).collect();
    let col_alphabet: Vec<&str> = t.col_order().iter().map(|&r| a.symbol_at(r)).collect();
    lines.push(format!("rows\t{}", row_alphabet.join("\t")));
    lines.push(format!("cols\t{}", col_alphabet.join("\t")));
    let header: Vec<&str> = a.tokens().collect();
    lines.push(format!("\u{25a1}\t\t{}", header.join("\t")));
    let col_ranks: Vec<String> = (0..a.size()).map(|r| (t.col_rank(r) + 1).to_string()).collect();
    lines.push(format!("\t\t{}", col_ranks.join("\t")));
    for row in 0..a.size() {
        let cells: Vec<&str> =
            (0..a.size()).map(|col| a.symbol_at(t.combine_ranks(row, col))).collect();
        lines.push(format!("{}\t{}\t{}", a.symbol_at(row), t.row_rank(row) + 1, cells.join("\t")));
    }
    println!("{}", lines.join("\n"));
    Ok(())
}

fn derive_keys(args: DeriveKeysArgs) -> Result<(), CliError> {
    let a = args.alphabet.load()?;
    let text = read_input(&args.extracts)?;
    let rows: Vec<&str> = text.lines().map(|l| l.trim()).filter(|l| !l.is_empty()).collect();
    let rows: [&str; 4] = rows
        .try_into()
        .map_err(|_| CliError::usage("--extracts file must contain exactly 4 lines"))?;
    let extracts = keygen::BookExtracts::parse(&a, rows)?;
    let keys = keygen::derive_keys(&extracts);
    if args.correct {
        let corrected = keygen::frequency_correct_default(&a, &keys)?;
        println!("{}", corrected.join(" "));
    } else {
        println!("{}", keys.join(" "));
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let a = args.alphabet.load()?;
    if args.mode == AnalyzeMode::Errprop {
        return errprop(&a, &args);
    }
    let path =
        args.r#in.as_deref().ok_or_else(|| CliError::usage("--in is required for this mode"))?;
    let raw = read_input(path)?;
    let stripped: String = raw.split_whitespace().collect();
    let text = a.tokenize(&stripped)?;
    match args.mode {
        AnalyzeMode::Freq => {
            let hist = analysis::frequency_histogram(&a, &text)?;
            for (rank, count) in hist.iter().enumerate() {
                println!("{}\t{}", a.symbol_at(rank), count);
            }
        }
        AnalyzeMode::Ic => {
            println!("{:.6}", analysis::index_of_coincidence(&text)?);
        }
        AnalyzeMode::Chi2 => {
            let hist = analysis::frequency_histogram(&a, &text)?;
            println!("{:.6}", analysis::chi_square_uniform(&hist));
        }
        AnalyzeMode::Autocorr => {
            let lag = args.lag.ok_or_else(|| CliError::usage("--lag is required for autocorr"))?;
            println!("{:.6}", analysis::autocorrelation_coincidence(&text, lag)?);
        }
        AnalyzeMode::Ngrams => {
            let sep = if a.is_single_char() { "" } else { " " };
            for site in analysis::repeated_ngrams(&text, 3) {
                let positions: Vec<String> = site.positions.iter().map(|p| p.to_string()).collect();
                let gaps: Vec<String> = site.gaps().iter().map(|g| g.to_string()).collect();
                println!(
                    "{}\t{}\t{}",
                    a.render_joined(&site.gram, sep),
                    positions.join(","),
                    gaps.join(",")
                );
            }
        }
        AnalyzeMode::Errprop => unreachable!(),
    }
    Ok(())
}

fn errprop(a: &Alphabet, args: &AnalyzeArgs) -> Result<(), CliError> {
    let list =
        args.keys.as_deref().ok_or_else(|| CliError::usage("--keys is required for errprop"))?;
    let keys = split_keys::<4>(list)?;
    let ks = KeySet::new(a, keys)?;
    let generator = spirale::cipher::generator(&ks, a)?;
    let horizon = args.horizon.unwrap_or(2 * generator.lags().k);
    let affected: BTreeSet<usize> =
        analysis::error_propagation_profile(&generator, args.flip, horizon)?;
    let positions: Vec<String> = affected.iter().map(|p| p.to_string()).collect();
    println!("{}", positions.join(" "));
    Ok(())
}
