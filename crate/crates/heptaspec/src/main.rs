//! Command-line surface.
//!
//! Exit codes: 0 on success (for `verify`: every non-erratum audit
//! matched), 1 when `verify` finds an unexpected mismatch, 2 for usage
//! errors, invalid ranges, and method/size incompatibilities.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};

use heptaspec::arith::decimal_string;
use heptaspec::charpoly::{charpoly_int, charpoly_tridiagonal, tridiagonal_parts, CharPoly};
use heptaspec::decompose::{decompose, integerized_la, symmetric_block_model};
use heptaspec::error::Error;
use heptaspec::formulas::{lemma31_kf, lemma34_tau};
use heptaspec::graph::build_chain;
use heptaspec::oracle::{
    kirchhoff_resistance, kirchhoff_spectral, spanning_trees_enumerate, spanning_trees_matrix_tree,
};
use heptaspec::report::{
    render_table, table_rows, verify, TableFormat, TableKind, VerifyOptions, DEFAULT_MAX_EXACT_N,
};

/// Dense matrices are refused above this order; the closed forms stay
/// available at any size.
const DENSE_LIMIT: usize = 200;
/// Full-Laplacian characteristic polynomials (quartic cost) stop here.
const CHARPOLY_FULL_LIMIT: usize = 8;
/// Bar-coupled-block characteristic polynomials stop here.
const CHARPOLY_BLOCK_LIMIT: usize = 12;
/// Tridiagonal characteristic polynomials (quadratic cost) stop here.
const CHARPOLY_TRIDIAG_LIMIT: usize = 500;
/// Exact resistance solves (cubic cost, big integers) stop here.
const RESISTANCE_LIMIT: usize = 50;
/// Dense floating-point eigensolves stop here.
const EIGEN_LIMIT: usize = 150;
/// Exact cofactor determinants stop here.
const MATRIX_TREE_LIMIT: usize = 50;

#[derive(Parser)]
#[command(
    name = "heptaspec",
    version,
    about = "Exact spectral analysis of linear heptagonal networks"
)]
struct Cli {
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    /// Comma-separated rows.
    Csv,
    /// `i j value` coordinate lines for the nonzero entries.
    Coord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BlockChoice {
    A,
    S,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyTarget {
    /// Laplacian of the whole chain.
    L,
    /// Bar-coupled block (computed through its integer-similar form).
    A,
    /// Integer tridiagonal block from the decomposition.
    S,
    /// The printed alternating-diagonal model of that block.
    Model,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KirchhoffMethod {
    /// Published closed form, exact.
    Closed,
    /// Floating-point Laplacian spectrum.
    Eigen,
    /// Exact effective resistances (the ground-truth oracle).
    Resistance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComplexityMethod {
    /// Published closed form, exact.
    Closed,
    /// Exact Laplacian cofactor.
    MatrixTree,
    /// Brute-force enumeration (tiny chains only).
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the chain and print its vertices and edges.
    Build {
        n: usize,
        #[arg(long, value_enum, default_value_t = BuildFormat::Text)]
        format: BuildFormat,
    },
    /// Print the graph Laplacian.
    Laplacian {
        n: usize,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Print the symmetry-adapted blocks of the Laplacian.
    Decompose {
        n: usize,
        #[arg(long, value_enum, default_value_t = BlockChoice::Both)]
        block: BlockChoice,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Characteristic polynomial of the Laplacian or one of its blocks.
    Charpoly {
        #[arg(value_enum, ignore_case = true)]
        target: PolyTarget,
        n: usize,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Kirchhoff index of the chain.
    Kirchhoff {
        n: usize,
        #[arg(long, value_enum, default_value_t = KirchhoffMethod::Closed)]
        method: KirchhoffMethod,
    },
    /// Spanning-tree count of the chain.
    Complexity {
        n: usize,
        #[arg(long, value_enum, default_value_t = ComplexityMethod::Closed)]
        method: ComplexityMethod,
    },
    /// Reproduce a published table over a range of orders.
    Table {
        /// kirchhoff or complexity.
        #[arg(value_parser = parse_table_kind)]
        kind: TableKind,
        from: usize,
        to: usize,
        /// csv, json, or md.
        #[arg(long, value_parser = parse_table_format, default_value = "csv")]
        format: TableFormat,
        /// Ceiling for the exact oracle columns.
        #[arg(long, env = "HEPTASPEC_MAX_EXACT_N", default_value_t = DEFAULT_MAX_EXACT_N)]
        max_exact_n: usize,
    },
    /// Audit every closed form against the independent oracles.
    Verify {
        n: usize,
        /// Run the expensive exact audits up to the ceiling.
        #[arg(long)]
        deep: bool,
        /// Ceiling for the expensive exact audits.
        #[arg(long, env = "HEPTASPEC_MAX_EXACT_N", default_value_t = DEFAULT_MAX_EXACT_N)]
        max_exact_n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

fn parse_table_kind(s: &str) -> Result<TableKind, String> {
    s.parse::<TableKind>().map_err(|e| e.to_string())
}

fn parse_table_format(s: &str) -> Result<TableFormat, String> {
    s.parse::<TableFormat>().map_err(|e| e.to_string())
}

fn require(n: usize, limit: usize, what: &str) -> Result<(), Error> {
    if n > limit {
        return Err(Error::InvalidRange(format!(
            "{what} is capped at n = {limit} (got n = {n}); the closed-form methods work at any order"
        )));
    }
    Ok(())
}

/// Human polynomial rendering, descending powers, exact coefficients.
fn poly_text(cp: &CharPoly) -> String {
    let deg = cp.degree();
    let mut out = String::new();
    for (i, c) in cp.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = deg - i;
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let var = match power {
            0 => String::new(),
            1 => "x".into(),
            p => format!("x^{p}"),
        };
        if var.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push('\n');
    out
}

struct Outcome {
    output: String,
    verification_failed: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let mut verification_failed = false;
    let output = match &cli.command {
        Command::Build { n, format } => {
            let chain = build_chain(*n)?;
            match format {
                BuildFormat::Json => chain.to_json(),
                BuildFormat::Text => format!(
                    "n = {}\nvertices = {}\nedges = {}\n\n{}",
                    chain.n(),
                    chain.vertex_count(),
                    chain.edge_count(),
                    chain.to_edge_list_text()
                ),
            }
        }
        Command::Laplacian { n, format } => {
            require(*n, DENSE_LIMIT, "dense Laplacian output")?;
            let l = build_chain(*n)?.laplacian();
            match format {
                MatrixFormat::Csv => l.to_csv(),
                MatrixFormat::Coord => l.to_coordinate_text(),
            }
        }
        Command::Decompose { n, block, format } => {
            require(*n, DENSE_LIMIT, "dense block output")?;
            let pair = decompose(&build_chain(*n)?)?;
            let render_a = || match format {
                MatrixFormat::Csv => pair.l_a.to_csv(),
                MatrixFormat::Coord => pair.l_a.to_coordinate_text(),
            };
            let render_s = || match format {
                MatrixFormat::Csv => pair.l_s.to_csv(),
                MatrixFormat::Coord => pair.l_s.to_coordinate_text(),
            };
            match block {
                BlockChoice::A => render_a(),
                BlockChoice::S => render_s(),
                BlockChoice::Both => format!("block A\n{}\nblock S\n{}", render_a(), render_s()),
            }
        }
        Command::Charpoly { target, n, format } => {
            let cp = match target {
                PolyTarget::L => {
                    require(
                        *n,
                        CHARPOLY_FULL_LIMIT,
                        "the full-Laplacian characteristic polynomial",
                    )?;
                    charpoly_int(&build_chain(*n)?.laplacian())?
                }
                PolyTarget::A => {
                    require(
                        *n,
                        CHARPOLY_BLOCK_LIMIT,
                        "the bar-coupled-block characteristic polynomial",
                    )?;
                    charpoly_int(&integerized_la(&decompose(&build_chain(*n)?)?))?
                }
                PolyTarget::S => {
                    require(*n, CHARPOLY_TRIDIAG_LIMIT, "the block characteristic polynomial")?;
                    let pair = decompose(&build_chain(*n)?)?;
                    let (diag, off) = tridiagonal_parts(&pair.l_s)?;
                    charpoly_tridiagonal(&diag, &off)?
                }
                PolyTarget::Model => {
                    require(*n, CHARPOLY_TRIDIAG_LIMIT, "the model characteristic polynomial")?;
                    let (diag, off) = tridiagonal_parts(&symmetric_block_model(*n))?;
                    charpoly_tridiagonal(&diag, &off)?
                }
            };
            match format {
                PolyFormat::Text => poly_text(&cp),
                PolyFormat::Json => cp.to_json(),
            }
        }
        Command::Kirchhoff { n, method } => match method {
            KirchhoffMethod::Closed => {
                let v = lemma31_kf(*n);
                format!("closed form = {v}\ndecimal = {}\n", decimal_string(&v, 2))
            }
            KirchhoffMethod::Eigen => {
                require(*n, EIGEN_LIMIT, "the spectral Kirchhoff oracle")?;
                format!("spectral = {:.9}\n", kirchhoff_spectral(&build_chain(*n)?)?)
            }
            KirchhoffMethod::Resistance => {
                require(*n, RESISTANCE_LIMIT, "the exact resistance oracle")?;
                let v = kirchhoff_resistance(&build_chain(*n)?)?;
                format!("exact = {v}\ndecimal = {}\n", decimal_string(&v, 2))
            }
        },
        Command::Complexity { n, method } => match method {
            ComplexityMethod::Closed => format!("{}\n", lemma34_tau(*n)?),
            ComplexityMethod::MatrixTree => {
                require(*n, MATRIX_TREE_LIMIT, "the matrix-tree oracle")?;
                format!("{}\n", spanning_trees_matrix_tree(&build_chain(*n)?)?)
            }
            ComplexityMethod::Enumerate => {
                format!("{}\n", spanning_trees_enumerate(&build_chain(*n)?)?)
            }
        },
        Command::Table { kind, from, to, format, max_exact_n } => {
            let rows = table_rows(*kind, *from, *to, *max_exact_n)?;
            render_table(*kind, &rows, *format)
        }
        Command::Verify { n, deep, max_exact_n, format } => {
            let report = verify(*n, &VerifyOptions { deep: *deep, max_exact_n: *max_exact_n })?;
            verification_failed = !report.passed;
            match format {
                ReportFormat::Text => report.human_summary(),
                ReportFormat::Json => report.to_json(),
            }
        }
    };
    Ok(Outcome { output, verification_failed })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &outcome.output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.output);
            }
            if outcome.verification_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use heptaspec::arith::{rat, ratio};

    #[test]
    fn polynomial_text_rendering() {
        let cp = CharPoly::from_coeffs(vec![rat(1), rat(-13), rat(0), rat(5), rat(-45)]);
        assert_eq!(poly_text(&cp), "x^4 - 13*x^3 + 5*x - 45\n");
        let linear = CharPoly::from_coeffs(vec![rat(1), ratio(-1, 2)]);
        assert_eq!(poly_text(&linear), "x - 1/2\n");
        let constant = CharPoly::from_coeffs(vec![rat(7)]);
        assert_eq!(poly_text(&constant), "7\n");
        let negative_lead = CharPoly::from_coeffs(vec![rat(-1), rat(1)]);
        assert_eq!(poly_text(&negative_lead), "-x + 1\n");
    }

    #[test]
    fn guards_reject_oversized_requests() {
        assert!(require(9, CHARPOLY_FULL_LIMIT, "x").is_err());
        assert!(require(8, CHARPOLY_FULL_LIMIT, "x").is_ok());
    }
}
