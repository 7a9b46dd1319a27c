use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use sadic_core::coding::{clopen_coding_on, recognizability_radius, special_coding_on, ClopenSet, Coding};
use sadic_core::constructions::{
    cfpz_cover, first_difference_bound, negative_family_verify, power_cover_px_bound, sample_p_minus_k,
    NegativeFamilyParams,
};
use sadic_core::format::{parse_dirseq, serialize_dirseq};
use sadic_core::language::{
    complexity, contract, pcom_estimate, right_special, ContractMode, LanguageProvider, SAdicLanguage,
};
use sadic_core::suites::Suite;
use sadic_core::{Alphabet, DirectiveSequence, Error, Report, Word};

#[derive(Parser)]
#[command(name = "sadic", version, about = "Words, substitutions and S-adic subshift languages")]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Directive-sequence file.
    #[arg(long)]
    dirseq: PathBuf,
    /// Level `n` of the subshift `X^(n)`.
    #[arg(long, default_value_t = 0)]
    level: usize,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// CSV `n,p,delta` of the factor complexity.
    Complexity {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Legal words of one length, one per line.
    Language {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Right-special words of one length.
    Special {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Lower bound for the power complexity over short bases.
    Pcom {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_base: usize,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Return-word codings.
    #[command(subcommand)]
    Coding(CodingCommand),
    /// Least recognizability radius of `(X^(n+1), τ_n)`.
    Recognizability {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 64)]
        dmax: usize,
    },
    /// Telescopes the sequence and prints it in canonical form.
    Contract {
        #[arg(long)]
        dirseq: PathBuf,
        /// Cut once every image reaches this length.
        #[arg(long, conflicts_with = "blocks", required_unless_present = "blocks")]
        growth: Option<usize>,
        /// Fixed number of levels per block.
        #[arg(long)]
        blocks: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Builds and checks the linear-complexity family with one block per level.
    NegativeFamily {
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long, default_value_t = 512)]
        kmax: usize,
        /// Deepest level checked; defaults to the number of levels.
        #[arg(long)]
        depth: Option<usize>,
        /// Exit with status 1 when an item fails.
        #[arg(long)]
        verify: bool,
    },
    /// First tuple of P(n, n0, ell) outside K(n, d, ell).
    PkSample {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        n0: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 1)]
        ell: usize,
    },
    /// Factor cover of a word: given, read from a file, or random.
    Cover {
        #[arg(long, conflicts_with_all = ["input", "random"])]
        word: Option<String>,
        /// One word per line.
        #[arg(long, conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Length of a random binary word drawn from the seed.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        ell: usize,
        /// Also print the cover words.
        #[arg(long)]
        list: bool,
    },
    /// Complexity bounds from the image set of `τ_[0,depth)`.
    PxBounds {
        #[arg(long)]
        dirseq: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Runs a verification suite: words, morphisms, language, coding,
    /// constructions or all.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum CodingCommand {
    /// Return words to a cylinder and the coding they induce.
    ReturnWords {
        #[command(flatten)]
        source: Source,
        /// Central word of the cylinder, read at position 0.
        #[arg(long)]
        cylinder: String,
        #[arg(long, default_value_t = 32)]
        scan: usize,
    },
    /// Coding by return words to right-special words of length `n`.
    Special {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: usize,
    },
}

/// Failures split by exit status.
enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed { .. } | Error::Internal(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<DirectiveSequence, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_dirseq(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn language(source: &Source) -> Result<Arc<SAdicLanguage>, Failure> {
    Ok(SAdicLanguage::shared(load(&source.dirseq)?, source.level)?)
}

fn emit(output: &Output, text: &str) -> Outcome {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print(text: &str) -> Outcome {
    emit(&Output { out: None }, text)
}

/// Reads a word in the alphabet's glyphs when it has them, else as ids.
fn parse_word(alphabet: &Alphabet, s: &str) -> Result<Word, Failure> {
    let word = match alphabet.glyphs() {
        None => Word::parse(s)?,
        Some(glyphs) => {
            let tokens: Vec<String> = if s.contains(char::is_whitespace) {
                s.split_whitespace().map(str::to_string).collect()
            } else {
                s.chars().map(String::from).collect()
            };
            tokens
                .iter()
                .map(|t| {
                    glyphs
                        .iter()
                        .position(|g| g == t)
                        .map(|i| alphabet.symbols()[i])
                        .ok_or_else(|| Failure::Input(format!("unknown letter {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
                .into()
        }
    };
    alphabet.check_word(&word)?;
    Ok(word)
}

fn lines(alphabet: &Alphabet, words: &[Word]) -> String {
    words.iter().map(|w| alphabet.render(w) + "\n").collect()
}

/// Prints the report; with `strict`, a failed item is a verification failure.
fn finish(report: &Report, strict: bool) -> Outcome {
    print(&report.to_string())?;
    match report.failures().next() {
        Some(f) if strict => Err(Failure::Verification(format!("{} failed", f.name))),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Complexity { source, max, output } => {
            let lang = language(&source)?;
            emit(&output, &complexity(lang.as_ref(), max)?.to_csv())
        }
        Command::Language { source, len, output } => {
            let lang = language(&source)?;
            emit(&output, &lines(lang.alphabet(), &lang.words(len)?))
        }
        Command::Special { source, len, output } => {
            let lang = language(&source)?;
            emit(&output, &lines(lang.alphabet(), &right_special(lang.as_ref(), len)?))
        }
        Command::Pcom { source, max_base, kmax } => {
            let lang = language(&source)?;
            let (count, base) = pcom_estimate(lang.as_ref(), max_base, kmax)?;
            let base = base.map_or_else(|| "-".to_string(), |b| lang.alphabet().render(&b));
            print(&format!("pcom >= {count} (base {base}, |v| <= {max_base}, k <= {kmax})\n"))
        }
        Command::Coding(CodingCommand::ReturnWords { source, cylinder, scan }) => {
            let lang = language(&source)?;
            let alphabet = lang.alphabet().clone();
            let set = ClopenSet::cylinder(parse_word(&alphabet, &cylinder)?);
            let coding = clopen_coding_on(lang, &set, scan)?;
            let mut text = String::new();
            for (i, w) in coding.returns.words.iter().enumerate() {
                text.push_str(&format!("{i} -> {}\n", alphabet.render(w)));
            }
            print(&text)?;
            finish(&coding.report, true)
        }
        Command::Coding(CodingCommand::Special { source, n }) => {
            let lang = language(&source)?;
            let alphabet = lang.alphabet().clone();
            let coding = special_coding_on(lang, n)?;
            let mut text = String::new();
            for w in &coding.special {
                text.push_str(&format!("special {}\n", alphabet.render(w)));
            }
            for (i, w) in coding.coding.returns.words.iter().enumerate() {
                text.push_str(&format!("{i} -> {}\n", alphabet.render(w)));
            }
            print(&text)?;
            let mut report = coding.report;
            report.merge(coding.coding.report);
            finish(&report, true)
        }
        Command::Recognizability { source, dmax } => {
            let dirseq = load(&source.dirseq)?;
            let tau = dirseq
                .level(source.level)
                .ok_or_else(|| Failure::Input(format!("no level {}", source.level)))?
                .clone();
            let upper: Arc<dyn LanguageProvider> = SAdicLanguage::shared(dirseq, source.level + 1)?;
            let coding = Coding::new(tau, upper)?;
            match recognizability_radius(&coding, dmax)? {
                Some(d) => print(&format!("radius {d}\n")),
                None => print(&format!("not recognizable with radius <= {dmax}\n")),
            }
        }
        Command::Contract { dirseq, growth, blocks, output } => {
            let mode = match (growth, blocks) {
                (Some(d), _) => ContractMode::Growth(d),
                (None, Some(k)) => ContractMode::Blocks(k),
                (None, None) => unreachable!("clap requires one of them"),
            };
            emit(&output, &serialize_dirseq(&contract(&load(&dirseq)?, mode)?))
        }
        Command::NegativeFamily { levels, kmax, depth, verify } => {
            if levels == 0 {
                return Err(Failure::Input("--levels must be at least 1".into()));
            }
            let params = NegativeFamilyParams::minimal(&vec![1; levels], &vec![1; levels])?;
            let report = negative_family_verify(&params, depth.unwrap_or(levels), kmax)?;
            finish(&report, verify)
        }
        Command::PkSample { n, n0, d, ell } => match sample_p_minus_k(n, n0, d, ell)? {
            Some(t) => print(&format!("{}\n", t.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))),
            None => print("none\n"),
        },
        Command::Cover { word, input, random, ell, list } => {
            let words: Vec<Word> = match (word, input, random) {
                (Some(w), _, _) => vec![Word::parse(&w)?],
                (_, Some(path), _) => fs::read_to_string(&path)?
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(Word::parse)
                    .collect::<Result<_, _>>()?,
                (_, _, Some(len)) => vec![random_word(cli.seed, len)],
                _ => return Err(Failure::Input("give --word, --input or --random".into())),
            };
            let mut text = String::new();
            for w in &words {
                let cover = cfpz_cover(w, ell)?;
                text.push_str(&format!("|w| = {} ell = {ell} cover words = {}\n", w.len(), cover.len()));
                if list {
                    for v in cover.words() {
                        text.push_str(&format!("  {v}\n"));
                    }
                }
            }
            print(&text)
        }
        Command::PxBounds { dirseq, depth } => {
            if depth == 0 {
                return Err(Failure::Input("--depth must be at least 1".into()));
            }
            let dirseq = load(&dirseq)?;
            let blocks = dirseq.compose_range(0, depth)?.images().to_vec();
            let lang = SAdicLanguage::new(dirseq, 0)?;
            let mut report = Report::new("px-bounds");
            let b = power_cover_px_bound(&lang, &blocks)?;
            report.check("power-cover", b.pass, format!("p = {} <= {}", b.actual, b.bound));
            let shortest = blocks.iter().map(Word::len).min().unwrap_or(0);
            for ell in 1..shortest {
                let d = first_difference_bound(&lang, &blocks, ell)?;
                report.check(
                    format!("first-difference/{ell}"),
                    d.pass,
                    format!("{} <= {:.1}", d.actual, d.bound()),
                );
            }
            finish(&report, true)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut all = Report::new("");
            for s in suites {
                let report = s.run(cli.seed)?;
                print(&report.to_string())?;
                all.merge(Report { title: String::new(), ..report });
            }
            let failed = all.failures().count();
            if failed > 0 {
                Err(Failure::Verification(format!("{failed} of {} items failed", all.items.len())))
            } else {
                Ok(())
            }
        }
    }
}

/// Binary word from a seeded generator, the same one the suites use.
fn random_word(seed: u64, len: usize) -> Word {
    // splitmix64, enough for reproducible test inputs
    let mut state = seed;
    (0..len)
        .map(|_| {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            ((z ^ (z >> 31)) & 1) as u8
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
