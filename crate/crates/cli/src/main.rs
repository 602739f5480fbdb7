use std::path::PathBuf;
use std::process::ExitCode;

use biperron_cli::{
    cmd_certify, cmd_charpoly, cmd_construct, cmd_density, cmd_exceptional, cmd_random,
    cmd_verify, resolve_max_refinement, CommandResult, ConstructSpec, FormVariant, ModeArg,
    OutputFormat,
};
use clap::{Parser, Subcommand};

/// Exact construction and certification of integer symplectic matrices whose
/// leading eigenvalue is bi-Perron but not simple.
///
/// Exit codes: 0 = decisive answer, 1 = error, 2 = certification undecided.
#[derive(Parser)]
#[command(name = "biperron", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check AᵀJA = J and report determinant, charpoly, palindromicity
    VerifySymplectic {
        /// Matrix file: text (dimension line, then rows) or JSON array of rows
        matrix: PathBuf,
        /// Antisymmetric form to test against
        #[arg(long, value_enum, default_value_t = FormVariant::Standard)]
        form: FormVariant,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// Print the characteristic polynomial det(xI − A) of an integer matrix
    Charpoly {
        /// Matrix file: text (dimension line, then rows) or JSON array of rows
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// Build a matrix family member (with certification for the Y family)
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Certify whether the leading root of a polynomial is bi-Perron
    CertifyBiperron {
        /// Polynomial file: ascending coefficients, whitespace-separated or a JSON array
        poly: PathBuf,
        /// Whether to bound every root or only the leading root's conjugates
        #[arg(long, value_enum, default_value_t = ModeArg::FullSpectrum)]
        mode: ModeArg,
        /// Bracket-refinement budget (default: BPS_MAX_REFINEMENT or 64)
        #[arg(long)]
        max_refinement: Option<u32>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// Census of real-root-free palindromic quartics x⁴+nx³+mx²+nx+1
    ScanDensity {
        /// Window bounds K (scans |n| ≤ K, |m| ≤ K); one report row each
        #[arg(value_name = "K", required = true)]
        ks: Vec<i64>,
        /// Worker threads for the scan; 0 = one per core. Output is
        /// identical regardless.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// List the real-root-free quartics with positive discriminant
    ExceptionalSet {
        /// How far to scan when confirming the set has stabilized
        #[arg(long, default_value_t = 50)]
        scan_bound: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// Generate a seeded pseudorandom integer symplectic matrix
    RandomSymplectic {
        /// Genus g; the matrix is 2g × 2g
        #[arg(long)]
        g: usize,
        /// Number of generator multiplications
        #[arg(long, default_value_t = 12)]
        steps: usize,
        /// Seed for the generator stream; equal seeds give equal matrices
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Symmetric-block family [[I+Y², Y], [Y, I]] with the full
    /// build–verify–certify pipeline
    Y {
        /// Genus g ≥ 2; the matrix is 2g × 2g
        #[arg(long)]
        g: usize,
        /// Corner parameter a of Y
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Corner parameter b of Y
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Optional symmetric trailing block Z of dimension g − 2 (matrix file)
        #[arg(long)]
        z: Option<PathBuf>,
        /// Bracket-refinement budget (default: BPS_MAX_REFINEMENT or 64)
        #[arg(long)]
        max_refinement: Option<u32>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// Direct sum of 2×2 symplectic blocks, checked under the pairwise form
    Block {
        /// File with the blocks: JSON array of matrices, or text records
        /// back to back
        blocks: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
}

fn finish(result: CommandResult) -> ExitCode {
    use std::io::Write;
    let text = match &result.rendered {
        Some(text) => text.clone(),
        None => format!("{:#}", result.to_json()),
    };
    // A closed pipe downstream (`biperron ... | head`) must not turn a
    // finished command into a panic; keep the command's own exit status.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(result.status.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifySymplectic { matrix, form, out } => cmd_verify(&matrix, form, out),
        Command::Charpoly { matrix, out } => cmd_charpoly(&matrix, out),
        Command::Construct { family } => match family {
            Family::Y {
                g,
                a,
                b,
                z,
                max_refinement,
                out,
            } => match resolve_max_refinement(max_refinement) {
                Ok(budget) => cmd_construct(
                    &ConstructSpec::Y {
                        g,
                        a,
                        b,
                        z_file: z,
                        max_refinement: budget,
                    },
                    out,
                ),
                Err(r) => r,
            },
            Family::Block { blocks, out } => {
                cmd_construct(&ConstructSpec::Block { blocks_file: blocks }, out)
            }
        },
        Command::CertifyBiperron {
            poly,
            mode,
            max_refinement,
            out,
        } => match resolve_max_refinement(max_refinement) {
            Ok(budget) => cmd_certify(&poly, mode, budget, out),
            Err(r) => r,
        },
        Command::ScanDensity { ks, jobs, out } => cmd_density(&ks, jobs, out),
        Command::ExceptionalSet { scan_bound, out } => cmd_exceptional(scan_bound, out),
        Command::RandomSymplectic { g, steps, seed, out } => cmd_random(g, steps, seed, out),
    };
    finish(result)
}
