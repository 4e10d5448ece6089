//! `ssa` — construct, encode, decode, count, and verify DNA codes that
//! avoid secondary structure.

mod bytes;
mod errors;
mod io;
mod scheme;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ssa_core::block::{build_block_set, SetMethod};
use ssa_core::composition::{self, brute_count, char_root, rate_convergence};
use ssa_core::oracle::find_rc_pair;
use ssa_core::DnaSeq;

use errors::CliError;
use io::{read_input, write_output};
use scheme::SchemeOptions;

#[derive(Parser)]
#[command(
    name = "ssa",
    version,
    about = "DNA codes avoiding secondary structure: check, encode, decode, count, search"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check whether a DNA sequence is m-SSA (exit 0 yes, 1 no)
    Check {
        /// Stem length threshold
        #[arg(long)]
        m: usize,
        /// Print the violating window pair, if any
        #[arg(long)]
        witness: bool,
        /// Input path or '-' for stdin
        input: Option<PathBuf>,
    },
    /// Encode a payload with the selected scheme
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
    },
    /// Decode codewords with the selected scheme
    Decode {
        #[command(flatten)]
        codec: CodecArgs,
    },
    /// |C_n(m)| by recurrence, or exhaustively with --brute
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Count by full enumeration over the 4-letter alphabet (n <= 12)
        #[arg(long)]
        brute: bool,
        /// Per-window A quota (T budget k-1); only with --brute
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Lexicographic rank of a word in C_n(m)
    Rank {
        #[arg(long)]
        m: usize,
        input: Option<PathBuf>,
    },
    /// The index-th word of C_n(m)
    Unrank {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Decimal index; read from input when omitted
        #[arg(long)]
        index: Option<String>,
        input: Option<PathBuf>,
    },
    /// Characteristic root and asymptotic rate for window length m
    Rate {
        #[arg(long)]
        m: usize,
        /// Also print count(n+1)/count(n) at this n
        #[arg(long)]
        ratio_n: Option<usize>,
    },
    /// Search for a block set (exact maximum or greedy maximal)
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        method: String,
        /// Output path or '-' for stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rate or count tables
    Table {
        #[command(subcommand)]
        kind: TableCmd,
    },
    /// Pack raw bytes into DNA text (4 symbols per byte)
    Pack {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Unpack DNA text into raw bytes
    Unpack {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct CodecArgs {
    /// Scheme name: replacement, composition, or block
    #[arg(long)]
    scheme: String,
    /// Codeword length (replacement: n = 4^p > 16; composition: word length)
    #[arg(long)]
    n: Option<usize>,
    /// Window length for the composition constraint
    #[arg(long)]
    m: Option<usize>,
    /// Block-set file produced by `ssa search` (block scheme)
    #[arg(long)]
    set_file: Option<PathBuf>,
    /// Treat the payload as DNA text lines instead of raw bytes
    #[arg(long)]
    text: bool,
    /// Input path or '-' for stdin
    input: Option<PathBuf>,
    /// Output path or '-' for stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Rows,
}

impl From<FormatArg> for table::Format {
    fn from(f: FormatArg) -> table::Format {
        match f {
            FormatArg::Text => table::Format::Text,
            FormatArg::Rows => table::Format::Rows,
        }
    }
}

#[derive(Subcommand)]
enum TableCmd {
    /// Characteristic roots, rates, and capacity bounds per window length
    Rates {
        #[arg(long, default_value_t = 2)]
        m_min: usize,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// |C_n(m)| over a range of n
    Counts {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Check { m, witness, input } => {
            if m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            let seq = DnaSeq::from_text(&read_input(input.as_deref())?)?;
            match find_rc_pair(&seq, m) {
                None => {
                    println!("ok");
                    Ok(0)
                }
                Some(w) => {
                    if witness {
                        println!("violation p={} q={} len={}", w.p, w.q, w.len);
                    } else {
                        println!("violation");
                    }
                    Ok(1)
                }
            }
        }
        Cmd::Encode { codec } => run_codec(codec, true),
        Cmd::Decode { codec } => run_codec(codec, false),
        Cmd::Count { m, n, brute, k } => {
            if m == 0 || k == 0 || k > m {
                return Err(CliError::Usage("need 1 <= k <= m".into()));
            }
            if brute {
                let hits = brute_count(n, m, k).map_err(|e| CliError::Usage(e.to_string()))?;
                println!("{hits}");
            } else {
                if k != 1 {
                    return Err(CliError::Usage(
                        "closed-form counting is k = 1 only; use --brute for general k".into(),
                    ));
                }
                println!("{}", composition::count(n, m));
            }
            Ok(0)
        }
        Cmd::Rank { m, input } => {
            if m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            let word = DnaSeq::from_text(&read_input(input.as_deref())?)?;
            let value =
                composition::rank(&word, m).map_err(|e| CliError::NotACodeword(e.to_string()))?;
            println!("{value}");
            Ok(0)
        }
        Cmd::Unrank { m, n, index, input } => {
            if m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            let digits = match index {
                Some(s) => s,
                None => String::from_utf8(read_input(input.as_deref())?)
                    .map_err(|_| CliError::Usage("index must be decimal text".into()))?,
            };
            let value: BigUint = digits
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad index '{}'", digits.trim())))?;
            let word =
                composition::unrank(&value, n, m).map_err(|e| CliError::Usage(e.to_string()))?;
            println!("{word}");
            Ok(0)
        }
        Cmd::Rate { m, ratio_n } => {
            if m < 2 {
                return Err(CliError::Usage("--m must be at least 2".into()));
            }
            let root = char_root(m);
            println!("lambda={:.6}", root.lambda);
            println!("rate={:.6}", root.rate);
            if let Some(n) = ratio_n {
                if n < m {
                    return Err(CliError::Usage("--ratio-n must be at least m".into()));
                }
                println!("ratio={:.6}", rate_convergence(m, n));
            }
            Ok(0)
        }
        Cmd::Search { m, method, output } => {
            let method: SetMethod = method
                .parse()
                .map_err(|_| CliError::Usage(format!("unknown method '{method}'")))?;
            if method == SetMethod::Fixed {
                return Err(CliError::Usage("method must be 'exact' or 'greedy'".into()));
            }
            let set = build_block_set(m, method).map_err(|e| CliError::Usage(e.to_string()))?;
            write_output(output.as_deref(), set.to_text().as_bytes())?;
            Ok(0)
        }
        Cmd::Table { kind } => {
            let rendered = match kind {
                TableCmd::Rates {
                    m_min,
                    m_max,
                    format,
                } => table::rates(m_min, m_max, format.into())?,
                TableCmd::Counts {
                    m,
                    n_min,
                    n_max,
                    format,
                } => table::counts(m, n_min, n_max, format.into())?,
            };
            print!("{rendered}");
            Ok(0)
        }
        Cmd::Pack { input, output } => {
            let bytes = read_input(input.as_deref())?;
            let mut text = bytes::pack_bytes(&bytes).to_string().into_bytes();
            text.push(b'\n');
            write_output(output.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Unpack { input, output } => {
            let seq = DnaSeq::from_text(&read_input(input.as_deref())?)?;
            let bytes = bytes::unpack_bytes(&seq)?;
            write_output(output.as_deref(), &bytes)?;
            Ok(0)
        }
    }
}

fn run_codec(args: CodecArgs, encoding: bool) -> Result<u8, CliError> {
    let opts = SchemeOptions {
        n: args.n,
        m: args.m,
        set_file: args.set_file.clone(),
        text: args.text,
    };
    let scheme = scheme::build_scheme(&args.scheme, &opts)?;
    let input = read_input(args.input.as_deref())?;
    let output = if encoding {
        scheme.encode(&input)?
    } else {
        scheme.decode(&input)?
    };
    write_output(args.output.as_deref(), &output)?;
    Ok(0)
}
