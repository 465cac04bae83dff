use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Catalan-Stieltjes matrices, their planar networks, immanant positivity
/// sweeps and Hankel inequalities, all in exact arithmetic over Z[q].
///
/// Exit codes: 0 ok, 2 configuration error, 3 family error, 4 network check
/// failure, 5 positivity violation. The immanant size cap is read from
/// STIELTJES_SIZE_CAP (default 9).
#[derive(Parser, Debug)]
#[command(name = "stieltjes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Catalan-Stieltjes matrix C_n, or a submatrix of it.
    Matrix(MatrixArgs),
    /// Print the Hankel matrix H_n of the Catalan-like sequence.
    Hankel(HankelArgs),
    /// Build a planar network; --check compares its path matrix with the recurrence.
    Network(NetworkArgs),
    /// Check every immanant of every square submatrix for q-nonnegativity.
    Verify(VerifyArgs),
    /// Tabulate the cubic Hankel inequalities over index triples.
    Inequality(InequalityArgs),
    /// Print the character table of the symmetric group S_n.
    Chars(CharsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixChoice {
    /// The Catalan-Stieltjes matrix C_n.
    #[value(name = "C", alias = "c")]
    C,
    /// The Hankel matrix H_n.
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Args, Debug)]
pub struct FamilyArg {
    /// Built-in family (eulerian, schroder, narayana) or path to a JSON family file.
    #[arg(long)]
    pub family: String,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Row indices of a submatrix, comma separated.
    #[arg(long, value_delimiter = ',', requires = "cols")]
    pub rows: Option<Vec<usize>>,
    /// Column indices of a submatrix, comma separated.
    #[arg(long, value_delimiter = ',', requires = "rows")]
    pub cols: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HankelArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct NetworkArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Weight case (1-5) per layer; a single value applies to every layer.
    /// Defaults to the first case whose positivity condition holds.
    #[arg(long = "case")]
    pub cases: Vec<u8>,
    /// Network for H_n cut out of the network for C_{2n+k}.
    #[arg(long, conflicts_with = "hankel_factored")]
    pub hankel: bool,
    /// Offset of the Hankel sub-network.
    #[arg(long, default_value_t = 0, requires = "hankel")]
    pub k: usize,
    /// Network for H_n = C_n T_n C_n^T (needs r_k = 1).
    #[arg(long)]
    pub hankel_factored: bool,
    /// Verify that the path generating function matrix equals the matrix.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value_t = MatrixChoice::C)]
    pub matrix: MatrixChoice,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    /// Seed for sampling when there are too many submatrices to enumerate.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct InequalityArgs {
    #[command(flatten)]
    pub family: FamilyArg,
    /// Largest index in the triples.
    #[arg(long, default_value_t = 5)]
    pub max_index: usize,
    /// A single triple i < j < k instead of the full range.
    #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
    pub triple: Option<Vec<usize>>,
    /// Print every difference polynomial.
    #[arg(long)]
    pub show: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CharsArgs {
    #[arg(long)]
    pub n: usize,
    /// Verify the orthogonality relations of the table.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Matrix(a) => commands::matrix(&a),
        Command::Hankel(a) => commands::hankel(&a),
        Command::Network(a) => commands::network(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Inequality(a) => commands::inequality(&a),
        Command::Chars(a) => commands::chars(&a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(out) = e.output() {
                print!("{out}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
