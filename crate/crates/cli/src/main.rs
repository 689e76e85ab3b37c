//! `lexcov`: compile DELAF dictionaries, apply them to a corpus, and report
//! coverage and unknown-word categories.
//!
//! Exit codes: 0 success, 1 environment or I/O failure, 2 invalid input.

mod manifest;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use lexcov::classify::{self, ClassifierConfig, ConfigError};
use lexcov::coverage::{
    compare_versions, coverage, diff_dictionaries, mean_deltas, CoverageError, CoverageReport, FoldMode, Locale,
    PointDelta, Recognition, VersionDelta, WordList,
};
use lexcov::delaf::{load_dict_file, DelafError, DictFile, RoleTag};
use lexcov::dico::{self, apply_dictionaries, merge_results, DicoError, DicoResult};
use lexcov::lexicon::{compile, CaseFoldPolicy, Lexicon, LexiconError};
use lexcov::preprocess::{preprocess, AbbreviationList, PreprocessConfig, PreprocessError, ReplacementTable};

use manifest::{output_digests, FileDigest, Inputs, RunCounts, RunManifest};

/// A failed command: message plus exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<DelafError> for Failure {
    fn from(e: DelafError) -> Self {
        match e {
            DelafError::Io { .. } => Failure::io(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<LexiconError> for Failure {
    fn from(e: LexiconError) -> Self {
        match e {
            LexiconError::Io { .. } => Failure::io(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<DicoError> for Failure {
    fn from(e: DicoError) -> Self {
        match e {
            DicoError::Io { .. } => Failure::io(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<CoverageError> for Failure {
    fn from(e: CoverageError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => Failure::io(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<PreprocessError> for Failure {
    fn from(e: PreprocessError) -> Self {
        Failure::input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn io_fail(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::io(format!("{}: {e}", path.display()))
}

#[derive(Parser)]
#[command(
    name = "lexcov",
    version,
    about = "Lexical coverage of corpora against DELAF dictionaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile DELAF files into a binary lexicon.
    Compile(CompileArgs),
    /// Apply lexicons to a corpus and write dlf, dlc, err, annotations and run.json.
    Apply(ApplyArgs),
    /// Coverage report for a run, a pair of runs, or a counts file.
    Coverage(CoverageArgs),
    /// Sort the unknown forms of a run into categories.
    Classify(ClassifyArgs),
    /// Compare the unique forms of two sets of DELAF files.
    Diff(DiffArgs),
    /// Word list (form and frequency) of a corpus.
    Wordlist(WordlistArgs),
    /// Measure lookup throughput.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    General,
    AbbreviationsAcronyms,
    User,
}

impl From<Role> for RoleTag {
    fn from(r: Role) -> Self {
        match r {
            Role::General => RoleTag::General,
            Role::AbbreviationsAcronyms => RoleTag::AbbreviationsAcronyms,
            Role::User => RoleTag::User,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Exact,
    UnitexLike,
    FullFold,
}

impl From<Policy> for CaseFoldPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Exact => CaseFoldPolicy::Exact,
            Policy::UnitexLike => CaseFoldPolicy::UnitexLike,
            Policy::FullFold => CaseFoldPolicy::FullFold,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum LocaleArg {
    #[default]
    Plain,
    #[value(name = "pt-BR", alias = "pt_BR", alias = "pt-br")]
    PtBr,
}

impl From<LocaleArg> for Locale {
    fn from(l: LocaleArg) -> Self {
        match l {
            LocaleArg::Plain => Locale::Plain,
            LocaleArg::PtBr => Locale::PtBr,
        }
    }
}

#[derive(Args)]
struct CompileArgs {
    /// DELAF files.
    #[arg(required = true)]
    dicts: Vec<PathBuf>,
    /// Role tag given to every entry.
    #[arg(long, value_enum, default_value = "general")]
    role: Role,
    /// Output lexicon file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct PreprocessArgs {
    /// Abbreviation list, one per line; a period after them does not end a sentence.
    #[arg(long)]
    abbreviations: Option<PathBuf>,
    /// Two-column TSV of token sequences to rewrite before segmentation.
    #[arg(long)]
    replacements: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus files or glob patterns.
    #[arg(long = "corpus", required = true)]
    corpus: Vec<String>,
    /// Name of the corpus in reports.
    #[arg(long, default_value = "corpus")]
    corpus_id: String,
    #[command(flatten)]
    preprocess: PreprocessArgs,
    /// Worker threads (0 picks one per core). Outputs do not depend on it.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct ApplyArgs {
    /// Compiled lexicons; their union is applied.
    #[arg(long = "lexicon", required = true)]
    lexicons: Vec<PathBuf>,
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_enum, default_value = "unitex-like")]
    case_policy: Policy,
    /// Dictionary name in reports; defaults to the lexicon file stems.
    #[arg(long)]
    dict_id: Option<String>,
    /// Output directory.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct CoverageArgs {
    /// One run directory, or two (old then new) for a version delta.
    runs: Vec<PathBuf>,
    /// Replay published counts: `corpus dict types unknown_types tokens unknown_tokens` per line.
    #[arg(long, conflicts_with_all = ["runs", "lexicons"])]
    counts: Option<PathBuf>,
    /// Run inline instead of reading a run directory.
    #[arg(long = "lexicon", requires = "corpus")]
    lexicons: Vec<PathBuf>,
    #[arg(long = "corpus")]
    corpus: Vec<String>,
    #[arg(long, default_value = "corpus")]
    corpus_id: String,
    #[arg(long, value_enum, default_value = "unitex-like")]
    case_policy: Policy,
    /// Count word types case-sensitively.
    #[arg(long)]
    cased: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_enum, default_value = "plain")]
    locale: LocaleArg,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Run directory with err and annotations.tsv.
    run: PathBuf,
    /// Current lexicons (looked up by the old-spelling, typo and split rules).
    #[arg(long = "lexicon", required = true)]
    lexicons: Vec<PathBuf>,
    /// Older lexicons, used only as evidence.
    #[arg(long = "old-lexicon")]
    old_lexicons: Vec<PathBuf>,
    /// Classifier config (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; defaults to the run directory.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct DiffArgs {
    /// First dictionary set.
    #[arg(short = 'a', long = "a", required = true, num_args = 1..)]
    a: Vec<PathBuf>,
    /// Second dictionary set.
    #[arg(short = 'b', long = "b", required = true, num_args = 1..)]
    b: Vec<PathBuf>,
    /// Compare forms ignoring case.
    #[arg(long)]
    fold: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_enum, default_value = "plain")]
    locale: LocaleArg,
}

#[derive(Args)]
struct WordlistArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    cased: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "lexicon", required = true)]
    lexicons: Vec<PathBuf>,
    /// Corpus to look up; without it, lexicon forms and altered copies are used.
    #[arg(long = "corpus")]
    corpus: Vec<String>,
    /// Number of lookups to time.
    #[arg(long, default_value_t = 1_000_000)]
    tokens: usize,
    #[arg(long, value_enum, default_value = "unitex-like")]
    case_policy: Policy,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compile(a) => cmd_compile(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Coverage(a) => cmd_coverage(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Diff(a) => cmd_diff(a),
        Command::Wordlist(a) => cmd_wordlist(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lexcov: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn cmd_compile(args: CompileArgs) -> CmdResult {
    let role = RoleTag::from(args.role);
    let files = args
        .dicts
        .iter()
        .map(|p| load_dict_file(p, role))
        .collect::<Result<Vec<DictFile>, _>>()?;
    let lex = compile(&files)?;
    lex.save(&args.output)?;
    let stats = lex.stats();
    eprintln!(
        "compiled {} entries, {} unique forms, {} states",
        stats.entry_count, stats.unique_form_count, stats.state_count
    );
    print_json(stats);
    Ok(())
}

fn load_lexicons(paths: &[PathBuf]) -> Result<Lexicon, Failure> {
    let lexicons = paths.iter().map(Lexicon::load).collect::<Result<Vec<_>, _>>()?;
    if lexicons.len() == 1 {
        return Ok(lexicons.into_iter().next().expect("one lexicon"));
    }
    let refs: Vec<&Lexicon> = lexicons.iter().collect();
    Ok(Lexicon::union(&refs)?)
}

/// Expands patterns into a sorted, deduplicated file list. A pattern that
/// is not a valid glob is taken as a literal path.
fn expand_corpus(patterns: &[String]) -> Result<Vec<PathBuf>, Failure> {
    let mut files = BTreeSet::new();
    for p in patterns {
        match glob::glob(p) {
            Ok(paths) => {
                for entry in paths {
                    let path = entry.map_err(|e| Failure::io(e.to_string()))?;
                    if path.is_file() {
                        files.insert(path);
                    }
                }
            }
            Err(_) => {
                files.insert(PathBuf::from(p));
            }
        }
    }
    Ok(files.into_iter().collect())
}

fn preprocess_config(args: &PreprocessArgs) -> Result<PreprocessConfig, Failure> {
    let mut config = PreprocessConfig::default();
    if let Some(p) = &args.abbreviations {
        config.abbreviations = AbbreviationList::parse(&fs::read_to_string(p).map_err(io_fail(p))?);
    }
    if let Some(p) = &args.replacements {
        config.replacements = ReplacementTable::parse_tsv(&fs::read_to_string(p).map_err(io_fail(p))?)?;
    }
    Ok(config)
}

fn read_utf8(path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(io_fail(path))?;
    String::from_utf8(bytes).map_err(|e| {
        Failure::input(format!(
            "{}: not valid UTF-8 (first bad byte at offset {})",
            path.display(),
            e.utf8_error().valid_up_to()
        ))
    })
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::io(e.to_string()))
}

/// Applies the lexicon to every file in parallel and merges in path order.
fn run_dico(
    lex: &Lexicon,
    files: &[PathBuf],
    config: &PreprocessConfig,
    policy: CaseFoldPolicy,
    corpus_id: &str,
    jobs: usize,
) -> Result<DicoResult, Failure> {
    let per_file: Vec<Result<DicoResult, Failure>> = thread_pool(jobs)?.install(|| {
        files
            .par_iter()
            .map(|p| {
                let text = read_utf8(p)?;
                let stream = preprocess(&text, &p.display().to_string(), config);
                Ok(apply_dictionaries(lex, &stream, policy))
            })
            .collect()
    });
    let mut merged = DicoResult::empty(corpus_id, policy);
    for r in per_file {
        merged = merge_results(merged, r?)?;
    }
    merged.corpus_id = corpus_id.to_string();
    Ok(merged)
}

fn digest(path: &Path) -> Result<FileDigest, Failure> {
    FileDigest::of(path).map_err(io_fail(path))
}

fn default_dict_id(paths: &[PathBuf]) -> String {
    paths
        .iter()
        .map(|p| {
            p.file_stem()
                .map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn cmd_apply(args: ApplyArgs) -> CmdResult {
    let lex = load_lexicons(&args.lexicons)?;
    let files = expand_corpus(&args.corpus.corpus)?;
    let config = preprocess_config(&args.corpus.preprocess)?;
    let policy = CaseFoldPolicy::from(args.case_policy);
    let result = run_dico(&lex, &files, &config, policy, &args.corpus.corpus_id, args.corpus.jobs)?;
    dico::write_outputs(&result, &lex, &args.output)?;

    let dict_id = args.dict_id.clone().unwrap_or_else(|| default_dict_id(&args.lexicons));
    let mut arguments = vec![
        format!("--case-policy={}", policy.as_str()),
        format!("--corpus-id={}", args.corpus.corpus_id),
        format!("--dict-id={dict_id}"),
    ];
    arguments.extend(args.lexicons.iter().map(|p| format!("--lexicon={}", p.display())));
    arguments.extend(args.corpus.corpus.iter().map(|p| format!("--corpus={p}")));
    let pre = &args.corpus.preprocess;
    arguments.extend(
        pre.abbreviations
            .iter()
            .map(|p| format!("--abbreviations={}", p.display())),
    );
    arguments.extend(
        pre.replacements
            .iter()
            .map(|p| format!("--replacements={}", p.display())),
    );

    let manifest = RunManifest {
        schema: manifest::SCHEMA_VERSION,
        tool: "lexcov".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: "apply".into(),
        arguments,
        corpus_id: args.corpus.corpus_id.clone(),
        dict_id,
        case_policy: policy.as_str().into(),
        inputs: Inputs {
            lexicons: args.lexicons.iter().map(|p| digest(p)).collect::<Result<_, _>>()?,
            corpus: files.iter().map(|p| digest(p)).collect::<Result<_, _>>()?,
            abbreviations: pre.abbreviations.as_deref().map(digest).transpose()?,
            replacements: pre.replacements.as_deref().map(digest).transpose()?,
        },
        counts: RunCounts {
            word_tokens: result.counts.total(),
            known_simple: result.counts.known_simple,
            in_compound_only: result.counts.in_compound_only,
            unknown: result.counts.unknown,
            err_forms: result.err.len() as u64,
        },
        outputs: output_digests(&args.output, &["dlf", "dlc", "err", "annotations.tsv"])
            .map_err(io_fail(&args.output))?,
    };
    manifest.write(&args.output).map_err(io_fail(&args.output))?;
    eprintln!(
        "{} word tokens: {} known, {} in compounds only, {} unknown ({} forms)",
        manifest.counts.word_tokens,
        manifest.counts.known_simple,
        manifest.counts.in_compound_only,
        manifest.counts.unknown,
        manifest.counts.err_forms
    );
    Ok(())
}

fn fold_mode(cased: bool) -> FoldMode {
    if cased {
        FoldMode::Cased
    } else {
        FoldMode::Folded
    }
}

/// Coverage of a finished run, from its annotations, err list and manifest.
fn run_report(dir: &Path, fold: FoldMode) -> Result<CoverageReport, Failure> {
    let manifest = RunManifest::read(dir).map_err(io_fail(&dir.join(manifest::MANIFEST_FILE)))?;
    let err = dico::read_err(dir)?;
    let (_, rows) = dico::read_annotations(dir)?;
    let word_list = WordList::from_words(rows.iter().map(|r| r.text.as_str()), fold, &manifest.corpus_id);
    let recognition = Recognition::Unknown {
        corpus_id: &manifest.corpus_id,
        err: &err,
    };
    Ok(coverage(&word_list, &recognition, &manifest.dict_id)?)
}

#[derive(Serialize)]
struct CoverageOutput {
    reports: Vec<CoverageReport>,
    deltas: Vec<VersionDelta>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean: Option<MeanDelta>,
}

#[derive(Serialize)]
struct MeanDelta {
    types_pp: PointDelta,
    tokens_pp: PointDelta,
}

/// Rows of `corpus dict types unknown_types tokens unknown_tokens`.
fn read_counts(path: &Path) -> Result<Vec<CoverageReport>, Failure> {
    let text = fs::read_to_string(path).map_err(io_fail(path))?;
    let mut reports = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| Failure::input(format!("{}:{}: {what}", path.display(), i + 1));
        if cols.len() != 6 {
            return Err(bad("expected 6 columns"));
        }
        let mut n = [0u64; 4];
        for (slot, col) in n.iter_mut().zip(&cols[2..]) {
            *slot = col.parse().map_err(|_| bad("counts must be plain integers"))?;
        }
        reports.push(CoverageReport::from_counts(cols[0], cols[1], n[0], n[1], n[2], n[3])?);
    }
    Ok(reports)
}

/// Deltas between consecutive reports for the same corpus.
fn consecutive_deltas(reports: &[CoverageReport]) -> Result<Vec<VersionDelta>, Failure> {
    let mut deltas = Vec::new();
    let mut corpora: Vec<&str> = Vec::new();
    for r in reports {
        if !corpora.contains(&r.corpus_id.as_str()) {
            corpora.push(&r.corpus_id);
        }
    }
    for c in corpora {
        let same: Vec<&CoverageReport> = reports.iter().filter(|r| r.corpus_id == c).collect();
        for pair in same.windows(2) {
            deltas.push(compare_versions(pair[0], pair[1])?);
        }
    }
    Ok(deltas)
}

fn cmd_coverage(args: CoverageArgs) -> CmdResult {
    let fold = fold_mode(args.cased);
    let locale = Locale::from(args.locale);
    let (reports, deltas) = if let Some(counts) = &args.counts {
        let reports = read_counts(counts)?;
        let deltas = consecutive_deltas(&reports)?;
        (reports, deltas)
    } else if !args.lexicons.is_empty() {
        let lex = load_lexicons(&args.lexicons)?;
        let files = expand_corpus(&args.corpus)?;
        let result = run_dico(
            &lex,
            &files,
            &PreprocessConfig::default(),
            args.case_policy.into(),
            &args.corpus_id,
            0,
        )?;
        let word_list = WordList::from_words(
            result.annotations.iter().map(|a| a.text.as_str()),
            fold,
            &args.corpus_id,
        );
        let report = coverage(
            &word_list,
            &Recognition::Dico(&result),
            &default_dict_id(&args.lexicons),
        )?;
        (vec![report], Vec::new())
    } else {
        match args.runs.as_slice() {
            [one] => (vec![run_report(one, fold)?], Vec::new()),
            [old, new] => {
                let (a, b) = (run_report(old, fold)?, run_report(new, fold)?);
                let d = compare_versions(&a, &b)?;
                (vec![a, b], vec![d])
            }
            _ => {
                return Err(Failure::input(
                    "give one or two run directories, --counts, or --lexicon with --corpus",
                ))
            }
        }
    };
    let mean = (deltas.len() > 1).then(|| {
        let (types_pp, tokens_pp) = mean_deltas(&deltas);
        MeanDelta { types_pp, tokens_pp }
    });
    let out = CoverageOutput { reports, deltas, mean };
    match args.format {
        Format::Json => print_json(&out),
        Format::Text => {
            let mut text = String::new();
            for r in &out.reports {
                text.push_str(&r.render_text(locale));
                text.push('\n');
            }
            for d in &out.deltas {
                text.push_str(&d.render_text(locale));
                text.push('\n');
            }
            if let Some(m) = &out.mean {
                let _ = writeln!(text, "mean types gain   {}", m.types_pp.render(locale));
                let _ = writeln!(text, "mean tokens gain  {}", m.tokens_pp.render(locale));
            }
            print!("{}", text.trim_end_matches('\n'));
            println!();
        }
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> CmdResult {
    let config = match &args.config {
        Some(p) => ClassifierConfig::load(p)?,
        None => ClassifierConfig::default(),
    };
    let lex_new = load_lexicons(&args.lexicons)?;
    let lex_old = if args.old_lexicons.is_empty() {
        None
    } else {
        Some(load_lexicons(&args.old_lexicons)?)
    };
    let err = dico::read_err(&args.run)?;
    let (_, rows) = dico::read_annotations(&args.run)?;
    let records = classify::build_records(&err, &rows);

    let chunk = records.len().div_ceil(64).max(1);
    let classified: Vec<_> = thread_pool(args.jobs)?.install(|| {
        records
            .par_chunks(chunk)
            .flat_map_iter(|c| classify::classify(c.to_vec(), &lex_new, lex_old.as_ref(), &config))
            .collect()
    });

    let out_dir = args.output.as_deref().unwrap_or(&args.run);
    fs::create_dir_all(out_dir).map_err(io_fail(out_dir))?;
    let tsv_path = out_dir.join("classification.tsv");
    fs::write(&tsv_path, classify::to_tsv(&classified)).map_err(io_fail(&tsv_path))?;
    let hist = classify::render_histogram(&classify::histogram(&classified));
    let hist_path = out_dir.join("histogram.txt");
    fs::write(&hist_path, &hist).map_err(io_fail(&hist_path))?;
    print!("{hist}");
    Ok(())
}

fn cmd_diff(args: DiffArgs) -> CmdResult {
    let load = |paths: &[PathBuf]| -> Result<Vec<DictFile>, Failure> {
        Ok(paths
            .iter()
            .map(|p| load_dict_file(p, RoleTag::General))
            .collect::<Result<Vec<_>, _>>()?)
    };
    let diff = diff_dictionaries(&load(&args.a)?, &load(&args.b)?, fold_mode(!args.fold));
    match args.format {
        Format::Json => print_json(&diff),
        Format::Text => print!("{}", diff.render_text(args.locale.into())),
    }
    Ok(())
}

fn cmd_wordlist(args: WordlistArgs) -> CmdResult {
    let files = expand_corpus(&args.corpus.corpus)?;
    let config = preprocess_config(&args.corpus.preprocess)?;
    let streams: Vec<Result<_, Failure>> = thread_pool(args.corpus.jobs)?.install(|| {
        files
            .par_iter()
            .map(|p| Ok(preprocess(&read_utf8(p)?, &p.display().to_string(), &config)))
            .collect()
    });
    let streams = streams.into_iter().collect::<Result<Vec<_>, _>>()?;
    let wl = lexcov::coverage::build_word_list(&streams, fold_mode(args.cased), &args.corpus.corpus_id);
    match &args.output {
        Some(p) => fs::write(p, wl.to_tsv()).map_err(io_fail(p))?,
        None => print!("{}", wl.to_tsv()),
    }
    Ok(())
}

#[derive(Serialize)]
struct BenchReport {
    lookups: usize,
    hits: usize,
    seconds: f64,
    tokens_per_second: f64,
    target_tokens_per_second: f64,
    meets_target: bool,
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let lex = load_lexicons(&args.lexicons)?;
    let policy = CaseFoldPolicy::from(args.case_policy);
    let probes: Vec<String> = if args.corpus.is_empty() {
        // lexicon forms and the same forms with a letter appended, half hits and half misses
        let forms = lex.forms();
        forms.iter().flat_map(|f| [f.clone(), format!("{f}q")]).collect()
    } else {
        let files = expand_corpus(&args.corpus)?;
        let mut words = Vec::new();
        for p in &files {
            let s = preprocess(&read_utf8(p)?, "", &PreprocessConfig::default());
            words.extend(s.words().map(|t| t.text.clone()));
        }
        words
    };
    if probes.is_empty() {
        return Err(Failure::input("nothing to look up"));
    }
    let start = Instant::now();
    let mut hits = 0;
    for i in 0..args.tokens {
        if lex.contains(&probes[i % probes.len()], policy) {
            hits += 1;
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    let rate = args.tokens as f64 / seconds.max(1e-9);
    print_json(&BenchReport {
        lookups: args.tokens,
        hits,
        seconds,
        tokens_per_second: rate,
        target_tokens_per_second: 100_000.0,
        meets_target: rate >= 100_000.0,
    });
    Ok(())
}
