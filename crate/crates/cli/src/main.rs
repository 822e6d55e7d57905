use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypersemi::convolution::DEFAULT_GRID_DENOMINATOR;
use hypersemi::embedding::DEFAULT_MAX_PRODUCT_ORDER;
use hypersemi::hyper::DEFAULT_MAX_EXP_ORDER;
use hypersemi::verify::DEFAULT_SEED;

mod commands;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_OBSTRUCTION: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 64;

/// Power, convolution and superextension semigroups over finite groups.
#[derive(Debug, Parser)]
#[command(name = "hypersemi", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest group (or semigroup) accepted as input.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GROUP_ORDER, value_parser = positive)]
    pub max_group_order: usize,
    /// Largest group whose power semigroup is enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EXP_ORDER, value_parser = positive)]
    pub max_exp_order: usize,
    /// Denominator bound for the measure grid scanned by `conv support-iso`.
    #[arg(long, global = true, default_value_t = DEFAULT_GRID_DENOMINATOR, value_parser = positive)]
    pub grid_denominator: usize,
    /// Largest product group built by `embed` and `verify-paper`.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PRODUCT_ORDER, value_parser = positive)]
    pub max_product_order: usize,
    /// Run a reduced `verify-paper` sample.
    #[arg(long, global = true)]
    pub quick: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural report for a Cayley table.
    Analyze { file: PathBuf },
    /// Subsets of a group under the setwise product.
    Exp {
        file: PathBuf,
        /// List the regular elements (cosets `Hx`).
        #[arg(long, conflicts_with_all = ["idempotents", "product"])]
        regular: bool,
        /// List the idempotents (subgroups).
        #[arg(long, conflicts_with = "product")]
        idempotents: bool,
        /// Multiply two subsets, written as `{0,2}` or `0,2`.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        product: Option<Vec<String>>,
    },
    /// Probability measures on a group under convolution.
    Conv {
        #[command(subcommand)]
        op: ConvOp,
    },
    /// Superextension of a small semigroup.
    Superext { file: PathBuf },
    /// Embed a semigroup into exp(G) or P(G), or certify that it cannot be.
    Embed {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Exp)]
        target: Target,
    },
    /// Run the numbered acceptance claims.
    VerifyPaper,
}

#[derive(Debug, Subcommand)]
enum ConvOp {
    /// Convolve two measure files.
    Mul { group: PathBuf, left: PathBuf, right: PathBuf },
    /// Idempotent and regular classification of a measure.
    Classify { group: PathBuf, measure: PathBuf },
    /// Check that supp maps regular measures onto regular subsets.
    SupportIso { group: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    Exp,
    Conv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Analyze { file } => commands::analyze(g, file),
        Command::Exp {
            file,
            regular,
            idempotents,
            product,
        } => commands::exp(g, file, *regular, *idempotents, product.as_deref()),
        Command::Conv { op } => match op {
            ConvOp::Mul { group, left, right } => commands::conv_mul(g, group, left, right),
            ConvOp::Classify { group, measure } => commands::conv_classify(g, group, measure),
            ConvOp::SupportIso { group } => commands::conv_support_iso(g, group),
        },
        Command::Superext { file } => commands::superext(g, file),
        Command::Embed { file, target } => commands::embed(g, file, *target),
        Command::VerifyPaper => commands::verify_paper(g),
    };
    match result {
        Ok(out) => {
            let body = if g.json {
                serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n"
            } else {
                out.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
