use clap::{Parser, Subcommand};
use slpseq::ingest::{ingest_bytes, ingest_text, GrammarRecipe};
use slpseq::slp::{parse_slp, write_slp, SlpHeavyForest};
use slpseq::{Error, Flavor, LsIndex, Slp};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod bench;

const DEFAULT_MAX_LEN: u64 = 1 << 30;

#[derive(Parser, Debug)]
#[command(name = "slpseq", version, about = "Subsequence queries on grammar-compressed strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compress a text file into an SLP file.
    Compress {
        input: PathBuf,
        output: PathBuf,
        /// Treat the input as raw bytes instead of UTF-8.
        #[arg(long)]
        bytes: bool,
    },
    /// Print the string derived by an SLP.
    Decompress {
        slp: PathBuf,
        /// Refuse to expand strings longer than this.
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: u64,
        /// Write each symbol as one byte.
        #[arg(long)]
        bytes: bool,
    },
    /// Print grammar statistics.
    Stats { slp: PathBuf },
    /// Print the character at a 1-based position.
    Access { slp: PathBuf, i: u64 },
    /// Next occurrence of a character strictly after position I.
    Ls {
        slp: PathBuf,
        i: u64,
        c: String,
        #[arg(long, default_value_t = Flavor::LogQuery)]
        flavor: Flavor,
    },
    /// Previous occurrence of a character strictly before position I.
    Lp {
        slp: PathBuf,
        i: u64,
        c: String,
        #[arg(long, default_value_t = Flavor::LogQuery)]
        flavor: Flavor,
    },
    /// Minimal windows containing PATTERN as a subsequence.
    Match {
        slp: PathBuf,
        pattern: String,
        /// Print only the number of occurrences.
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = Flavor::LogQuery)]
        flavor: Flavor,
    },
    /// Run the oracle-equivalence suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Time queries on a generated grammar and print CSV.
    Bench {
        /// e.g. fibonacci:40, power:30, balanced:100000:4, repair:50000:26:1, random:500:4:7
        recipe: GrammarRecipe,
        #[arg(long, default_value_t = 2000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Lib(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::NotAnSlp(_) | Error::StringTooLong => 2,
        Error::OutOfRange { .. } | Error::ExpansionRefused { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load(path: &Path) -> Result<Slp, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_slp(&text)?)
}

fn one_char(s: &str) -> Result<char, Failure> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Failure::Usage(format!("expected a single character, got {s:?}"))),
    }
}

fn position(p: Option<u64>) -> String {
    p.map_or_else(|| "none".to_string(), |j| j.to_string())
}

fn run(cmd: Command) -> Result<u8, Failure> {
    let out = io::stdout();
    let mut out = BufWriter::new(out.lock());
    match cmd {
        Command::Compress { input, output, bytes } => {
            let raw = std::fs::read(&input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let slp = if bytes {
                ingest_bytes(&raw)?
            } else {
                let text = String::from_utf8(raw)
                    .map_err(|_| Failure::Usage(format!("{} is not UTF-8; use --bytes", input.display())))?;
                ingest_text(&text)?
            };
            std::fs::write(&output, write_slp(&slp))?;
            writeln!(out, "n={} N={} sigma={} h={}", slp.num_rules(), slp.len(), slp.sigma(), slp.height())?;
        }
        Command::Decompress { slp, max_len, bytes } => {
            let slp = load(&slp)?;
            if bytes {
                let syms = slp.expand(max_len)?;
                let mut buf = Vec::with_capacity(syms.len());
                for s in syms {
                    let ch = slp.alphabet().symbol(s as usize) as u32;
                    let b = u8::try_from(ch)
                        .map_err(|_| Failure::Usage(format!("symbol U+{ch:04X} does not fit in a byte")))?;
                    buf.push(b);
                }
                out.write_all(&buf)?;
            } else {
                out.write_all(slp.expand_string(max_len)?.as_bytes())?;
            }
        }
        Command::Stats { slp } => {
            let slp = load(&slp)?;
            let forest = SlpHeavyForest::build(&slp);
            writeln!(out, "n={}", slp.num_rules())?;
            writeln!(out, "N={}", slp.len())?;
            writeln!(out, "sigma={}", slp.sigma())?;
            writeln!(out, "h={}", slp.height())?;
            writeln!(out, "light_max={}", forest.max_light_depth(&slp))?;
        }
        Command::Access { slp, i } => {
            let slp = load(&slp)?;
            let s = slp.symbol_at(i)?;
            writeln!(out, "{}", slp.alphabet().symbol(s as usize))?;
        }
        Command::Ls { slp, i, c, flavor } => {
            let ch = one_char(&c)?;
            let idx = LsIndex::new(load(&slp)?, flavor);
            writeln!(out, "{}", position(idx.ls_char(i, ch)?))?;
        }
        Command::Lp { slp, i, c, flavor } => {
            let ch = one_char(&c)?;
            let idx = LsIndex::new(load(&slp)?, flavor);
            writeln!(out, "{}", position(idx.lp_char(i, ch)?))?;
        }
        Command::Match {
            slp,
            pattern,
            count_only,
            flavor,
        } => {
            if pattern.is_empty() {
                return Err(Failure::Usage("the pattern must not be empty".into()));
            }
            let idx = LsIndex::new(load(&slp)?, flavor);
            let mut occ = 0u64;
            for o in slpseq::match_minimal(&idx, &pattern)? {
                occ += 1;
                if !count_only {
                    writeln!(out, "{} {}", o.start, o.end)?;
                }
            }
            writeln!(out, "occ={occ}")?;
        }
        Command::Selftest { seed, cases } => {
            let report = slpseq::selftest::run(seed, cases)?;
            writeln!(out, "files={} checks={} failures={}", report.files, report.checks, report.failures.len())?;
            for f in &report.failures {
                writeln!(out, "FAIL {f}")?;
            }
            out.flush()?;
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Bench { recipe, queries, seed } => {
            bench::run(&recipe, queries, seed, &mut out)?;
        }
    }
    out.flush()?;
    Ok(0)
}
