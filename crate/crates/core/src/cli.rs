//! The `preventkit` command line.
//!
//! Subcommands follow the study workflow: `probe` → `sample` → `filter` →
//! (coding by hand) → `agree` → `assoc` → `induce` → `predict` / `generate`,
//! with `report` running the corpus stages end to end.
//!
//! Exit status is 0 on success, 1 on validation or data errors (one-line
//! diagnostic on stderr) and 2 on usage errors.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::annotation::{
    agreement_subset, build_contingency, load_codings, Awareness, Feature, FormClass,
    Intentionality,
};
use crate::corpus::{
    self, extract, judge, load_matches, load_overrides, read_corpus, run_pipeline,
    sample_per_pattern, write_matches, Filter, Judged, Overrides, PatternSet, PipelineConfig,
};
use crate::error::{Error, Result};
use crate::induction::{induce, instances_from_subset, DecisionTree};
use crate::realizer::{realize, RealizationRequest, Trailing, Variant, VariantPreference};
use crate::stats::{agreement, chi_square_yates};

/// Environment variable that takes precedence over `--seed`.
pub const SEED_ENV: &str = "PREVENTKIT_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "preventkit", version, about = "Corpus toolkit for preventative expressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment a corpus directory and list segments containing a probe pattern.
    Probe {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        patterns: Option<PathBuf>,
        /// Matches CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a reproducible per-pattern sample from a matches CSV.
    Sample {
        #[arg(long)]
        matches: PathBuf,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reject hits that are not negative imperatives and classify the rest.
    Filter {
        #[arg(long)]
        matches: PathBuf,
        #[arg(long)]
        overrides: Option<PathBuf>,
        #[arg(long)]
        patterns: Option<PathBuf>,
        /// Verdicts CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the kept utterances as a matches CSV.
        #[arg(long)]
        kept: Option<PathBuf>,
        /// Ask for a decision on every utterance (y = keep, n = reject, empty = automatic).
        #[arg(long)]
        prompt: bool,
    },
    /// Percent agreement, P(E), K and reliability band per feature.
    Agree {
        #[arg(long)]
        codings: PathBuf,
        #[arg(long)]
        feature: Option<Feature>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// χ² association between form and each function feature on the agreed subset.
    Assoc {
        #[arg(long)]
        codings: PathBuf,
        #[arg(long)]
        feature: Option<Feature>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Induce a decision tree from the agreed subset of a coding file.
    Induce {
        #[arg(long)]
        codings: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predict the form for one feature combination.
    Predict {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        intentionality: Intentionality,
        #[arg(long)]
        awareness: Awareness,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Realize a preventative expression from a form or from a tree and features.
    Generate(GenerateArgs),
    /// Run probe, sample and filter over a corpus and print per-stage counts.
    Report {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
        /// Append a generation timestamp to the report.
        #[arg(long)]
        stamp: bool,
    },
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, conflicts_with = "tree")]
    form: Option<FormClass>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    action: String,
    #[arg(long)]
    trailing: Option<String>,
    #[arg(long, requires_all = ["intentionality", "awareness"])]
    tree: Option<PathBuf>,
    #[arg(long, requires = "tree")]
    intentionality: Option<Intentionality>,
    #[arg(long, requires = "tree")]
    awareness: Option<Awareness>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    patterns: Option<PathBuf>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    overrides: Option<PathBuf>,
    /// Directory for the intermediate CSV files and the report.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

/// Settings of a full corpus run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub patterns: Option<PathBuf>,
    pub cap: usize,
    pub seed: u64,
    pub overrides: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub format: ReportFormat,
}

impl RunConfig {
    /// Checks every path before any stage runs.
    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 {
            return Err(Error::Argument("sample cap must be at least 1".into()));
        }
        if !self.corpus.is_dir() {
            return Err(not_found(&self.corpus, "corpus directory not found"));
        }
        for file in [&self.patterns, &self.overrides].into_iter().flatten() {
            if !file.is_file() {
                return Err(not_found(file, "file not found"));
            }
        }
        if let Some(dir) = &self.out_dir {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        Ok(())
    }

    pub fn pipeline_config(&self) -> Result<PipelineConfig> {
        Ok(PipelineConfig {
            patterns: load_patterns(self.patterns.as_deref())?,
            cap: self.cap,
            seed: self.seed,
            overrides: match &self.overrides {
                Some(p) => load_overrides(p)?,
                None => Overrides::new(),
            },
        })
    }
}

fn not_found(path: &Path, message: &str) -> Error {
    Error::io(path, std::io::Error::new(std::io::ErrorKind::NotFound, message.to_owned()))
}

fn load_patterns(path: Option<&Path>) -> Result<PatternSet> {
    path.map_or_else(|| Ok(PatternSet::builtin()), PatternSet::load)
}

fn effective_seed(flag: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("{SEED_ENV}=`{value}` is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    stdin: &'a mut dyn BufRead,
}

impl Io<'_> {
    fn emit(&mut self, dest: Option<&Path>, bytes: &[u8]) -> Result<()> {
        match dest {
            Some(path) => std::fs::write(path, bytes).map_err(|e| Error::io(path, e)),
            None => self
                .stdout
                .write_all(bytes)
                .map_err(|e| Error::io("<stdout>", e)),
        }
    }

    fn note(&mut self, line: &str) {
        let _ = writeln!(self.stderr, "{line}");
    }
}

fn matches_bytes(utterances: &[corpus::Utterance]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_matches(&mut buf, utterances)?;
    Ok(buf)
}

fn verdicts_bytes(judged: &[Judged]) -> Result<Vec<u8>> {
    let mut csv = csv::Writer::from_writer(Vec::new());
    let wrap = |e| Error::csv("<verdicts>", e);
    csv.write_record(["id", "keep", "reject_reason", "overridden", "form"])
        .map_err(wrap)?;
    for j in judged {
        csv.write_record([
            j.verdict.utterance_id.as_str(),
            if j.verdict.keep { "true" } else { "false" },
            j.verdict.reject_reason.map_or("", |r| r.token()),
            if j.verdict.overridden { "true" } else { "false" },
            j.form.map_or("", |f| f.token()),
        ])
        .map_err(wrap)?;
    }
    csv.into_inner()
        .map_err(|e| Error::io("<verdicts>", e.into_error()))
}

fn features_or_default(feature: Option<Feature>, default: &[Feature]) -> Vec<Feature> {
    feature.map_or_else(|| default.to_vec(), |f| vec![f])
}

fn prompt_overrides(io: &mut Io<'_>, filter: &Filter, hits: &[corpus::Utterance]) -> Result<Overrides> {
    let mut overrides = Overrides::new();
    for u in hits {
        let auto = filter.verdict(u, &Overrides::new())?;
        let shown = auto.reject_reason.map_or("keep".to_string(), |r| format!("reject {r}"));
        io.note(&format!("{}: {}\n  automatic: {shown}  [y/n/Enter]", u.id, u.text));
        let mut answer = String::new();
        io.stdin
            .read_line(&mut answer)
            .map_err(|e| Error::io("<stdin>", e))?;
        match answer.trim() {
            "y" | "Y" => {
                overrides.insert(u.id.clone(), true);
            }
            "n" | "N" => {
                overrides.insert(u.id.clone(), false);
            }
            _ => {}
        }
    }
    Ok(overrides)
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<()> {
    match command {
        Command::Probe { corpus, patterns, out } => {
            let patterns = load_patterns(patterns.as_deref())?;
            let documents = read_corpus(&corpus)?;
            let (segments, hits) = extract(&documents, &patterns);
            io.emit(out.as_deref(), &matches_bytes(&hits)?)?;
            io.note(&format!(
                "documents={} segments={segments} hits={}",
                documents.len(),
                hits.len()
            ));
        }
        Command::Sample { matches, cap, seed, out } => {
            let hits = load_matches(&matches)?;
            let sampled = sample_per_pattern(&hits, cap as usize, effective_seed(seed)?)?;
            io.emit(out.as_deref(), &matches_bytes(&sampled)?)?;
        }
        Command::Filter {
            matches,
            overrides,
            patterns,
            out,
            kept,
            prompt,
        } => {
            let hits = load_matches(&matches)?;
            let filter = Filter::new(load_patterns(patterns.as_deref())?);
            let mut table = match &overrides {
                Some(p) => load_overrides(p)?,
                None => Overrides::new(),
            };
            if prompt {
                table.extend(prompt_overrides(io, &filter, &hits)?);
            }
            let judged = judge(&filter, &hits, &table)?;
            io.emit(out.as_deref(), &verdicts_bytes(&judged)?)?;
            if let Some(path) = kept {
                let survivors: Vec<_> = judged
                    .iter()
                    .filter(|j| j.verdict.keep)
                    .map(|j| j.utterance.clone())
                    .collect();
                io.emit(Some(&path), &matches_bytes(&survivors)?)?;
            }
        }
        Command::Agree { codings, feature, format } => {
            let set = load_codings(&codings)?;
            let mut out = String::new();
            if format == ReportFormat::Csv {
                out.push_str("feature,n_items,p_a,p_e,kappa,band\n");
            }
            for f in features_or_default(feature, &Feature::ALL) {
                let r = agreement(&set, f)?;
                let _ = match format {
                    ReportFormat::Text => writeln!(
                        out,
                        "{}: n={} P(A)={:.4} P(E)={:.4} K={:.4} band={}",
                        r.feature, r.n_items, r.p_a, r.p_e, r.kappa, r.band
                    ),
                    ReportFormat::Csv => writeln!(
                        out,
                        "{},{},{:.6},{:.6},{:.6},{}",
                        r.feature, r.n_items, r.p_a, r.p_e, r.kappa, r.band
                    ),
                };
            }
            io.emit(None, out.as_bytes())?;
        }
        Command::Assoc { codings, feature, format } => {
            let subset = agreement_subset(&load_codings(&codings)?)?;
            let mut out = String::new();
            if format == ReportFormat::Csv {
                out.push_str("feature,a,b,c,d,n,chi2,sig,n_warning\n");
            }
            for f in features_or_default(feature, &Feature::FUNCTION) {
                let t = build_contingency(&subset, f)?;
                let r = chi_square_yates(&t)?;
                let _ = match format {
                    ReportFormat::Text => writeln!(
                        out,
                        "{f}: chi2={:.1} sig={} A={} B={} C={} D={} N={}{}",
                        r.statistic,
                        r.significance,
                        t.a(),
                        t.b(),
                        t.c(),
                        t.d(),
                        t.n(),
                        if r.n_warning { " warning=small-sample" } else { "" }
                    ),
                    ReportFormat::Csv => writeln!(
                        out,
                        "{f},{},{},{},{},{},{:.6},{},{}",
                        t.a(),
                        t.b(),
                        t.c(),
                        t.d(),
                        t.n(),
                        r.statistic,
                        r.significance,
                        r.n_warning
                    ),
                };
            }
            io.emit(None, out.as_bytes())?;
        }
        Command::Induce { codings, out } => {
            let subset = agreement_subset(&load_codings(&codings)?)?;
            let tree = induce(&instances_from_subset(&subset))?;
            io.emit(out.as_deref(), tree.serialize().as_bytes())?;
        }
        Command::Predict {
            tree,
            intentionality,
            awareness,
            format,
        } => {
            let tree = load_tree(&tree)?;
            let p = tree.predict(intentionality, awareness);
            let line = match format {
                ReportFormat::Text => format!("form={} confidence={:.4}\n", p.form, p.confidence),
                ReportFormat::Csv => format!(
                    "intentionality,awareness,form,confidence\n{intentionality},{awareness},{},{:.6}\n",
                    p.form, p.confidence
                ),
            };
            io.emit(None, line.as_bytes())?;
        }
        Command::Generate(args) => {
            let text = generate(&args)?;
            io.emit(None, format!("{text}\n").as_bytes())?;
        }
        Command::Report { run, format, stamp } => {
            let config = RunConfig {
                corpus: run.corpus,
                patterns: run.patterns,
                cap: run.cap as usize,
                seed: effective_seed(run.seed)?,
                overrides: run.overrides,
                out_dir: run.out_dir,
                format,
            };
            config.validate()?;
            let documents = read_corpus(&config.corpus)?;
            let result = run_pipeline(&documents, &config.pipeline_config()?)?;
            let mut report = match format {
                ReportFormat::Text => result.report().to_text(),
                ReportFormat::Csv => result.report().to_csv(),
            };
            if stamp {
                let secs = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map_or(0, |d| d.as_secs());
                let _ = writeln!(report, "generated={secs}");
            }
            if let Some(dir) = &config.out_dir {
                io.emit(Some(&dir.join("matches.csv")), &matches_bytes(&result.hits)?)?;
                io.emit(Some(&dir.join("sample.csv")), &matches_bytes(&result.sampled)?)?;
                io.emit(Some(&dir.join("verdicts.csv")), &verdicts_bytes(&result.judged)?)?;
                let survivors: Vec<_> = result.kept().into_iter().cloned().collect();
                io.emit(Some(&dir.join("kept.csv")), &matches_bytes(&survivors)?)?;
                let name = match format {
                    ReportFormat::Text => "report.txt",
                    ReportFormat::Csv => "report.csv",
                };
                io.emit(Some(&dir.join(name)), report.as_bytes())?;
            }
            io.emit(None, report.as_bytes())?;
        }
    }
    Ok(())
}

fn load_tree(path: &Path) -> Result<DecisionTree> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    DecisionTree::deserialize(&text).map_err(|e| Error::InFile {
        file: path.to_path_buf(),
        source: Box::new(e),
    })
}

fn generate(args: &GenerateArgs) -> Result<String> {
    let form = match (&args.tree, args.form) {
        (Some(tree), _) => {
            let (Some(i), Some(a)) = (args.intentionality, args.awareness) else {
                return Err(Error::Argument(
                    "--tree needs --intentionality and --awareness".into(),
                ));
            };
            load_tree(tree)?.predict(i, a).form
        }
        (None, Some(form)) => form,
        (None, None) => {
            return Err(Error::Argument("give either --form or --tree with features".into()))
        }
    };
    let variant = match (args.variant, &args.tree) {
        (Some(v), Some(_)) if v.form() != form => VariantPreference::default().for_form(form),
        (Some(v), _) => v,
        (None, _) => VariantPreference::default().for_form(form),
    };
    let mut request = RealizationRequest::new(form, variant, args.action.clone());
    if let Some(t) = &args.trailing {
        request = request.with_trailing(Trailing::infer(t.clone()));
    }
    realize(&request)
}

/// Runs one command line with explicit streams and returns the exit status.
pub fn run_with<I, T>(
    argv: I,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    stdin: &mut dyn BufRead,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let mut io = Io {
        stdout,
        stderr,
        stdin,
    };
    match execute(cli.command, &mut io) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            1
        }
    }
}

/// Runs with the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let stdin = std::io::stdin();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock(), &mut stdin.lock())
}
