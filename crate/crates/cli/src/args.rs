use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_CODES: &str = "Exit codes: 0 success, 1 output could not be written, 2 unreadable or \
malformed input, 3 validation failure, 4 bad parameter or usage.";

#[derive(Debug, Parser)]
#[command(name = "ismkit", version, about = "Interpretive structural modeling, MICMAC and Likert survey toolkit", after_help = EXIT_CODES)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Directory for written artifacts; created if missing.
    #[arg(
        long,
        global = true,
        env = "ISMKIT_OUT",
        default_value = "ismkit-out",
        value_name = "DIR"
    )]
    pub out: PathBuf,

    /// Also print this artifact to stdout instead of the text summary.
    #[arg(long, global = true, value_enum, value_name = "FORMAT")]
    pub format: Option<Format>,

    /// Factor catalog JSON; SSIM factor ids are checked against it.
    #[arg(long, global = true, value_name = "FILE")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the ISM pipeline: reachability, closure, powers, levels, digraph.
    #[command(after_help = "Writes report.json, digraph.dot, levels.txt and reachability.csv. --format: json, dot.")]
    Ism(SsimInput),

    /// Classify factors into MICMAC clusters by driving and dependence power.
    #[command(after_help = "Writes micmac.json and micmac.svg. --format: json, svg.")]
    Micmac(MicmacArgs),

    /// Compare a computed run with reference tables; differences are findings, not failures.
    #[command(after_help = "Writes audit.json. --format: json.")]
    Audit(AuditArgs),

    /// Interactively answer every factor pair and save an SSIM file.
    #[command(
        after_help = "Answers are read line by line from stdin. Progress is saved after every \
answer, so end of input leaves a resumable partial file and exits 0."
    )]
    Elicit(ElicitArgs),

    /// Agree/neutral/disagree frequencies of Likert responses.
    #[command(after_help = "Writes survey.json. --format: json.")]
    Survey(SurveyArgs),

    /// Summarize the factor catalog and validate a motivator/demotivator mapping.
    #[command(after_help = "With --dot writes taxonomy.dot. --format: json, dot.")]
    Taxonomy(TaxonomyArgs),
}

#[derive(Debug, Args)]
pub struct SsimInput {
    /// SSIM CSV file.
    #[arg(
        value_name = "SSIM",
        required_unless_present = "paper_corpus",
        conflicts_with = "paper_corpus"
    )]
    pub ssim: Option<PathBuf>,

    /// Use the bundled 17-principle SSIM and catalog.
    #[arg(long)]
    pub paper_corpus: bool,
}

#[derive(Debug, Args)]
pub struct MicmacArgs {
    #[command(flatten)]
    pub input: SsimInput,

    /// Driving power above this value is strong [default: n/2].
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    pub driving_cutoff: Option<f64>,

    /// Dependence power above this value is strong [default: n/2].
    #[arg(long, value_name = "X", allow_negative_numbers = true)]
    pub dependence_cutoff: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Bundled corpus: SSIM, printed reachability matrix, level claims and cluster lists.
    /// Explicit files below replace the matching bundled piece.
    #[arg(long)]
    pub paper_corpus: bool,

    /// SSIM to run through the pipeline as the computed side.
    #[arg(long, value_name = "FILE", conflicts_with = "computed")]
    pub ssim: Option<PathBuf>,

    /// Final reachability matrix CSV (as written by `ism`) used as the computed side.
    #[arg(long, value_name = "FILE")]
    pub computed: Option<PathBuf>,

    /// Reference reachability matrix CSV, optionally with DIV/RANK margins.
    #[arg(long, value_name = "FILE")]
    pub reference: Option<PathBuf>,

    /// Level claims JSON.
    #[arg(long, value_name = "FILE")]
    pub levels: Option<PathBuf>,

    /// Reference MICMAC cluster lists JSON.
    #[arg(long, value_name = "FILE")]
    pub clusters: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ElicitArgs {
    /// Comma-separated factor ids, in matrix order.
    #[arg(long, value_delimiter = ',', value_name = "IDS", conflicts_with = "resume")]
    pub factors: Vec<String>,

    /// Take the factors of this kind from the catalog when --factors is absent.
    #[arg(long, value_enum, default_value = "principles")]
    pub kind: KindArg,

    /// SSIM file to write [default: OUT/ssim.csv].
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Continue the partial SSIM already in the output file.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Motivators,
    Demotivators,
    Principles,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// Response CSV: respondent_id,item_id,score plus optional demographic columns.
    #[arg(value_name = "RESPONSES")]
    pub responses: PathBuf,

    /// Average a group: motivators, demotivators, principles, or comma-separated ids. Repeatable.
    #[arg(long, value_name = "GROUP")]
    pub group: Vec<String>,

    /// Respondent breakdown by a demographic column. Repeatable.
    #[arg(long, value_name = "COLUMN")]
    pub by: Vec<String>,

    /// Report catalog items that received no responses.
    #[arg(long)]
    pub coverage: bool,
}

#[derive(Debug, Args)]
pub struct TaxonomyArgs {
    /// Mapping JSON of motivator/demotivator to principle edges.
    #[arg(long, value_name = "FILE")]
    pub mapping: Option<PathBuf>,

    /// Write the bipartite mapping as taxonomy.dot.
    #[arg(long)]
    pub dot: bool,
}
