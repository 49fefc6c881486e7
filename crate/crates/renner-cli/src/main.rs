//! Batch front end: validation, enumeration, products, Hecke products,
//! verification suites, and the convolution-oracle comparison.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use renner_core::catalog::{from_file, rook_data};
use renner_core::format::emit_data;
use renner_core::hecke::HeckeAlgebra;
use renner_core::oracle;
use renner_core::renner::{validate_data, RennerData, RennerMonoid};

/// Exit status 1 signals a mathematical failure (violated axiom or
/// mismatching table), 2 a usage or parse error.
#[derive(Parser)]
#[command(name = "renner", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn load_data(rook: Option<usize>, data: &Option<PathBuf>) -> Result<RennerData, String> {
    match (rook, data) {
        (Some(0), _) => Err("rook size must be at least 1".to_string()),
        (Some(n), _) => Ok(rook_data(n)),
        (None, Some(path)) => from_file(path).map_err(|e| format!("{}: {e}", path.display())),
        (None, None) => Err("expected --rook N or a data file".to_string()),
    }
}

/// Data source with a positional file (validate, elements).
#[derive(Args)]
struct SourceArgs {
    /// Use the built-in rook monoid data of the given size.
    #[arg(long, value_name = "N", conflicts_with = "data")]
    rook: Option<usize>,
    /// Read presentation data from a file.
    #[arg(value_name = "FILE", required_unless_present = "rook")]
    data: Option<PathBuf>,
    /// Cap on Coxeter group and element enumeration.
    #[arg(long, default_value_t = 20_000)]
    cap: usize,
}

/// Data source given by flags (mul, hecke-mul, verify), leaving the
/// positional slots to the operands.
#[derive(Args)]
struct SourceFlags {
    /// Use the built-in rook monoid data of the given size.
    #[arg(long, value_name = "N", conflicts_with = "data")]
    rook: Option<usize>,
    /// Read presentation data from a file.
    #[arg(long, value_name = "FILE", required_unless_present = "rook")]
    data: Option<PathBuf>,
    /// Cap on Coxeter group and element enumeration.
    #[arg(long, default_value_t = 20_000)]
    cap: usize,
}

impl SourceArgs {
    fn data(&self) -> Result<RennerData, String> {
        load_data(self.rook, &self.data)
    }

    fn monoid(&self) -> Result<RennerMonoid, String> {
        RennerMonoid::build(self.data()?, self.cap).map_err(|e| e.to_string())
    }
}

impl SourceFlags {
    fn data(&self) -> Result<RennerData, String> {
        load_data(self.rook, &self.data)
    }

    fn monoid(&self) -> Result<RennerMonoid, String> {
        RennerMonoid::build(self.data()?, self.cap).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in data set in the presentation-data format.
    Catalog {
        /// Rook monoid size.
        #[arg(long, value_name = "N")]
        rook: usize,
    },
    /// Validate presentation data; exit 0 iff every axiom holds.
    Validate {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// List all elements in normal form with their lengths.
    Elements {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Multiply two elements given in normal-form notation.
    Mul {
        #[command(flatten)]
        source: SourceFlags,
        /// Left operand, e.g. "s1 . e1 ." or "s1 s2".
        left: String,
        /// Right operand.
        right: String,
    },
    /// Multiply two Hecke basis elements over `Z[q]`.
    HeckeMul {
        #[command(flatten)]
        source: SourceFlags,
        left: String,
        right: String,
    },
    /// Run the presentation, Hecke-relation and normal-form suites.
    Verify {
        #[command(flatten)]
        source: SourceFlags,
    },
    /// Compare the convolution oracle of M_n(F_p) with the generic
    /// Hecke table of the rook monoid at q = p.
    OracleCompare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Cap on the matrix monoid size p^(n^2).
        #[arg(long, default_value_t = 2_000_000)]
        cap: u64,
        /// Write the oracle table in the shared text format.
        #[arg(long, value_name = "PATH")]
        emit_table: Option<PathBuf>,
    },
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn math_failure(message: &str) -> ExitCode {
    println!("{message}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Catalog { rook } => {
            if rook == 0 {
                return usage_error("rook size must be at least 1");
            }
            print!("{}", emit_data(&rook_data(rook)));
            ExitCode::SUCCESS
        }
        Command::Validate { source } => {
            let data = match source.data() {
                Ok(data) => data,
                Err(e) => return usage_error(&e),
            };
            match validate_data(&data, source.cap) {
                Ok(report) if report.is_valid() => {
                    println!("valid");
                    ExitCode::SUCCESS
                }
                Ok(report) => math_failure(&report.to_string()),
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Elements { source } => {
            let monoid = match source.monoid() {
                Ok(m) => m,
                Err(e) => return usage_error(&e),
            };
            let table = match monoid.enumerate(source.cap) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            println!("{} elements", table.len());
            for r in table.elements() {
                println!("{}\tlength {}", monoid.display(r), monoid.length(r));
            }
            ExitCode::SUCCESS
        }
        Command::Mul { source, left, right } => {
            let monoid = match source.monoid() {
                Ok(m) => m,
                Err(e) => return usage_error(&e),
            };
            let (a, b) = match (monoid.parse_element(&left), monoid.parse_element(&right)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return usage_error(&e.to_string()),
            };
            println!("{}", monoid.display(&monoid.mul(&a, &b)));
            ExitCode::SUCCESS
        }
        Command::HeckeMul { source, left, right } => {
            let monoid = match source.monoid() {
                Ok(m) => m,
                Err(e) => return usage_error(&e),
            };
            let algebra = match HeckeAlgebra::new(&monoid, source.cap) {
                Ok(h) => h,
                Err(e) => return usage_error(&e.to_string()),
            };
            let parse = |text: &str| {
                monoid
                    .parse_element(text)
                    .map_err(|e| e.to_string())
                    .and_then(|r| {
                        algebra
                            .basis(&r)
                            .ok_or_else(|| format!("element `{text}` not enumerated"))
                    })
            };
            let (a, b) = match (parse(&left), parse(&right)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return usage_error(&e),
            };
            println!("{}", algebra.display_element(&algebra.mul(&a, &b)));
            ExitCode::SUCCESS
        }
        Command::Verify { source } => {
            let data = match source.data() {
                Ok(data) => data,
                Err(e) => return usage_error(&e),
            };
            let report = match validate_data(&data, source.cap) {
                Ok(report) => report,
                Err(e) => return usage_error(&e.to_string()),
            };
            if !report.is_valid() {
                return math_failure(&report.to_string());
            }
            println!("data axioms: valid");
            let monoid = match RennerMonoid::build(data, source.cap) {
                Ok(m) => m,
                Err(e) => return usage_error(&e.to_string()),
            };
            let table = match monoid.enumerate(source.cap) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            println!("elements: {}", table.len());
            let mut ok = true;

            let presentation = monoid.verify_presentation();
            ok &= presentation.is_ok();
            println!("monoid presentation: {presentation}");

            let algebra = HeckeAlgebra::over_table(&monoid, table.clone());
            let hecke = algebra.verify_presentation();
            ok &= hecke.is_ok();
            println!("Hecke presentation: {hecke}");

            let at_one = algebra.specialize(1);
            let mut delta_ok = true;
            for (&(a, b, c), value) in &at_one.entries {
                let product = monoid.mul(&table.get(a), &table.get(b));
                delta_ok &= table.index_of(&product) == Some(c)
                    && *value == 1.into();
            }
            delta_ok &=
                at_one.entries.len() == table.len() * table.len();
            ok &= delta_ok;
            println!(
                "q = 1 specialisation equals the monoid ring: {}",
                if delta_ok { "yes" } else { "NO" }
            );

            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::OracleCompare { n, p, cap, emit_table } => {
            if n == 0 {
                return usage_error("n must be at least 1");
            }
            let report = match oracle::compare_with_generic(n, p, cap) {
                Ok(report) => report,
                Err(e) => return usage_error(&e.to_string()),
            };
            if let Some(path) = emit_table {
                let monoid = match RennerMonoid::build(rook_data(n), 1_000_000) {
                    Ok(m) => m,
                    Err(e) => return usage_error(&e.to_string()),
                };
                let table = match monoid.enumerate(1_000_000) {
                    Ok(t) => t,
                    Err(e) => return usage_error(&e.to_string()),
                };
                let mm = match oracle::build_monoid(n, p, cap) {
                    Ok(mm) => mm,
                    Err(e) => return usage_error(&e.to_string()),
                };
                let bd = match oracle::bruhat_decompose(&mm, &monoid, &table) {
                    Ok(bd) => bd,
                    Err(e) => return usage_error(&e.to_string()),
                };
                let constants =
                    oracle::iwahori_structure_constants(&mm, &monoid, &table, &bd);
                if let Err(e) = std::fs::write(&path, constants.emit()) {
                    return usage_error(&format!("{}: {e}", path.display()));
                }
            }
            println!("{}", report.summary());
            if report.is_match() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
