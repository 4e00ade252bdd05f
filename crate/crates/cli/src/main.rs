//! Command-line frontend: assembly, spectra, wavefunction samples, exponent
//! sweeps, reference comparisons, and the invariant selftest.
//!
//! Exit status contract: 0 on success, 2 on configuration errors, 3 on
//! numeric failures. Every command writes byte-identical output for
//! identical configuration; CSV values carry 17 significant digits.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ptspec_core::eigen::SpectrumClass;
use ptspec_core::hamiltonian::{assemble_with_nodes, BasisSpec, PotentialSpec};
use ptspec_core::laguerre::ExpansionMode;
use ptspec_core::matrix::ComplexMatrix;
use ptspec_core::reference::{
    compare_energy_table, compare_matrix, sweep_reality, ReferenceDataset, DATASET_DIGEST,
    ENERGY_TABLE_BIG_N, ENERGY_TABLE_LAMBDA, ENERGY_TABLE_SIZE,
};
use ptspec_core::selftest::{all_passed, run_all};
use ptspec_core::wavefunction::{coefficients_from_spectrum, default_grid, reconstruct};
use ptspec_core::{solve, Error, Result};

#[derive(Parser)]
#[command(
    name = "ptspec",
    version,
    about = "Spectral toolkit for p^2 - (ix)^(2N) in a generalized-Laguerre oscillator basis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the Hamiltonian matrix and write it as a JSON document
    Assemble(AssembleArgs),
    /// Diagonalize the assembled matrix and write the spectrum
    Spectrum(SpectrumArgs),
    /// Reconstruct one eigenstate on a grid and write the samples as CSV
    Wavefunction(WavefunctionArgs),
    /// Scan a list of exponents and classify spectrum reality per row
    Sweep(SweepArgs),
    /// Write delta reports against the transcribed published values
    Compare(CompareArgs),
    /// Run every module's invariant suite and report per-suite timing
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// identity-checked expansion coefficients
    Corrected,
    /// coefficients exactly as printed in the source (integer N only)
    #[value(alias = "paper_faithful")]
    Paper,
}

impl From<ModeArg> for ExpansionMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Corrected => ExpansionMode::Corrected,
            ModeArg::Paper => ExpansionMode::PaperFaithful,
        }
    }
}

#[derive(Args)]
struct ProblemArgs {
    /// Potential exponent N of p^2 - (ix)^(2N)
    #[arg(long = "bigN", value_name = "N")]
    big_n: f64,

    /// Basis length scale
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,

    /// Basis truncation M (matrix size)
    #[arg(long, default_value_t = 16)]
    size: usize,

    /// Expansion mode for the potential integrals
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    mode: ModeArg,

    /// Override the Gauss-Laguerre node count (corrected mode only)
    #[arg(long = "quad-nodes")]
    quad_nodes: Option<usize>,
}

impl ProblemArgs {
    fn build(&self) -> Result<(BasisSpec, PotentialSpec)> {
        let basis = BasisSpec::new(self.lambda, self.size)?;
        let potential = PotentialSpec::new(self.big_n, self.mode.into())?;
        Ok((basis, potential))
    }

    fn stamp(&self) -> String {
        format!(
            "N{}_lambda{}_M{}_{}",
            self.big_n,
            self.lambda,
            self.size,
            ExpansionMode::from(self.mode)
        )
    }
}

#[derive(Args)]
struct AssembleArgs {
    #[command(flatten)]
    problem: ProblemArgs,

    /// Output file (default: matrix_<params>.json in the output directory)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    problem: ProblemArgs,

    /// Relative tolerance for tagging an eigenvalue as real
    #[arg(long = "tol-real", default_value_t = 1e-8)]
    tol_real: f64,

    /// Print the four lowest eigenvalues next to the published table
    #[arg(long)]
    compare: bool,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Output file (default: spectrum_<params>.<ext> in the output directory)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    problem: ProblemArgs,

    /// Eigenstate index, ordered by ascending real part
    #[arg(long, default_value_t = 0)]
    level: usize,

    /// Half-width of the sampling interval (default max(4, 6/lambda))
    #[arg(long = "x-max")]
    x_max: Option<f64>,

    /// Number of grid points
    #[arg(long, default_value_t = 401)]
    points: usize,

    /// Output file (default: wavefunction_<params>_level<k>.csv)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated exponent list, e.g. 0.5,1,1.5,2
    #[arg(long = "bigN-list", value_name = "LIST", value_delimiter = ',', required = true)]
    big_n_list: Vec<f64>,

    /// Basis length scale
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,

    /// Basis truncation M (matrix size)
    #[arg(long, default_value_t = 16)]
    size: usize,

    /// Expansion mode for the potential integrals
    #[arg(long, value_enum, default_value_t = ModeArg::Corrected)]
    mode: ModeArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Output file (default: sweep_<params>.<ext> in the output directory)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Output file (default: compare.json in the output directory)
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_configuration() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Assemble(args) => cmd_assemble(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Wavefunction(args) => cmd_wavefunction(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Selftest => cmd_selftest(),
    }
}

fn resolve_output(explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    match explicit {
        Some(path) => path,
        None => {
            let dir = std::env::var_os("PTSPEC_OUTPUT_DIR")
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("."));
            dir.join(default_name)
        }
    }
}

fn write_output(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display())))
}

fn emit_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_assemble(args: AssembleArgs) -> Result<()> {
    let (basis, potential) = args.problem.build()?;
    let h = assemble_with_nodes(&basis, &potential, args.problem.quad_nodes)?;
    emit_warnings(h.warnings());
    let doc = h.document()?;
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    text.push('\n');
    let path = resolve_output(args.output, &format!("matrix_{}.json", args.problem.stamp()));
    write_output(&path, &text)?;
    println!(
        "wrote {}x{} matrix to {}",
        basis.size(),
        basis.size(),
        path.display()
    );
    Ok(())
}

fn class_label(class: SpectrumClass) -> &'static str {
    match class {
        SpectrumClass::Real => "real",
        SpectrumClass::Complex => "complex",
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<()> {
    let (basis, potential) = args.problem.build()?;
    let h = assemble_with_nodes(&basis, &potential, args.problem.quad_nodes)?;
    emit_warnings(h.warnings());
    let spectrum = solve(h.matrix())?.with_tol_real(args.tol_real);

    let (text, ext) = match args.format {
        FormatArg::Csv => {
            let mut out = String::new();
            for w in h.warnings() {
                out.push_str(&format!("# warning: {w}\n"));
            }
            out.push_str("index,re,im,class\n");
            for (i, (value, class)) in spectrum
                .values()
                .iter()
                .zip(spectrum.classes())
                .enumerate()
            {
                out.push_str(&format!(
                    "{i},{},{},{}\n",
                    fmt(value.re),
                    fmt(value.im),
                    class_label(*class)
                ));
            }
            (out, "csv")
        }
        FormatArg::Json => {
            let mut text = serde_json::to_string_pretty(&spectrum.document())
                .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
            text.push('\n');
            (text, "json")
        }
    };

    let path = resolve_output(
        args.output,
        &format!("spectrum_{}.{ext}", args.problem.stamp()),
    );
    write_output(&path, &text)?;
    let summary = spectrum.summary();
    println!(
        "wrote {} eigenvalues ({} real, {} complex) to {}",
        spectrum.values().len(),
        summary.n_real,
        summary.n_complex,
        path.display()
    );

    if args.compare {
        if spectrum.values().len() < 4 {
            return Err(Error::Parameter(
                "comparison needs at least four eigenvalues; increase --size".into(),
            ));
        }
        let dataset = ReferenceDataset::load();
        println!("level  ours (re)               printed       comparison");
        for row in dataset.energy_table() {
            let ours = spectrum.values()[row.level];
            println!(
                "{:>5}  {:<22}  {:<12}  {:<12}",
                row.level,
                format!("{:.10}", ours.re),
                row.our_case,
                row.reference_one
            );
        }
        if args.problem.big_n != ENERGY_TABLE_BIG_N
            || args.problem.lambda != ENERGY_TABLE_LAMBDA
            || args.problem.size != ENERGY_TABLE_SIZE
        {
            println!(
                "note: printed table declares N = {ENERGY_TABLE_BIG_N}, lambda = \
                 {ENERGY_TABLE_LAMBDA}, size = {ENERGY_TABLE_SIZE}"
            );
        }
    }
    Ok(())
}

fn cmd_wavefunction(args: WavefunctionArgs) -> Result<()> {
    if args.points < 2 {
        return Err(Error::Parameter(format!(
            "grid needs at least 2 points, got {}",
            args.points
        )));
    }
    if let Some(x_max) = args.x_max {
        if !(x_max > 0.0) {
            return Err(Error::Parameter(format!(
                "x-max must be positive, got {x_max}"
            )));
        }
    }
    let (basis, potential) = args.problem.build()?;
    let h = assemble_with_nodes(&basis, &potential, args.problem.quad_nodes)?;
    emit_warnings(h.warnings());
    let spectrum = solve(h.matrix())?;
    let coeffs = coefficients_from_spectrum(&spectrum, args.level)?;

    let grid = match args.x_max {
        None if args.points == 401 => default_grid(&basis),
        _ => {
            let x_max = args.x_max.unwrap_or((6.0 / basis.lambda()).max(4.0));
            let count = args.points;
            (0..count)
                .map(|i| -x_max + 2.0 * x_max * i as f64 / (count - 1) as f64)
                .collect()
        }
    };

    let mut samples = reconstruct(&coeffs, &basis, &grid)?;
    samples.meta.big_n = Some(potential.big_n());
    samples.meta.level = Some(args.level);
    samples.meta.energy = Some(spectrum.values()[args.level]);

    let path = resolve_output(
        args.output,
        &format!("wavefunction_{}_level{}.csv", args.problem.stamp(), args.level),
    );
    write_output(&path, &samples.to_csv())?;
    println!(
        "wrote {} samples for level {} to {}",
        grid.len(),
        args.level,
        path.display()
    );
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    if args.big_n_list.is_empty() {
        return Err(Error::Parameter("exponent list is empty".into()));
    }
    let basis = BasisSpec::new(args.lambda, args.size)?;
    let table = sweep_reality(&args.big_n_list, &basis, args.mode.into());
    for row in &table.rows {
        if let Some(note) = &row.note {
            eprintln!("note (N = {}): {note}", row.big_n);
        }
    }

    let (text, ext) = match args.format {
        FormatArg::Csv => (table.to_csv(), "csv"),
        FormatArg::Json => {
            let mut text = serde_json::to_string_pretty(&table)
                .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
            text.push('\n');
            (text, "json")
        }
    };

    let path = resolve_output(
        args.output,
        &format!(
            "sweep_lambda{}_M{}_{}.{ext}",
            args.lambda,
            args.size,
            ExpansionMode::from(args.mode)
        ),
    );
    write_output(&path, &text)?;
    println!("wrote {} sweep rows to {}", table.rows.len(), path.display());
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let dataset = ReferenceDataset::load();
    let basis = BasisSpec::new(1.0, 5)?;
    let real_print = ComplexMatrix::from_real(dataset.hermitian_print());

    let corrected = PotentialSpec::new(1.0, ExpansionMode::Corrected)?;
    let h = ptspec_core::assemble(&basis, &corrected)?;
    let real_corrected = compare_matrix(&h, &real_print, "corrected assembly vs real print")?;

    let paper = PotentialSpec::new(1.0, ExpansionMode::PaperFaithful)?;
    let h = ptspec_core::assemble(&basis, &paper)?;
    let real_paper = compare_matrix(&h, &real_print, "paper-faithful assembly vs real print")?;

    let complex_pot = PotentialSpec::new(1.1, ExpansionMode::Corrected)?;
    let h = ptspec_core::assemble(&basis, &complex_pot)?;
    let complex_corrected =
        compare_matrix(&h, dataset.complex_print(), "corrected assembly vs complex print")?;

    let table_corrected = compare_energy_table(ExpansionMode::Corrected)?;
    let table_paper = compare_energy_table(ExpansionMode::PaperFaithful)?;

    let document = serde_json::json!({
        "dataset_digest": format!("{DATASET_DIGEST:#018x}"),
        "real_print_corrected": real_corrected,
        "real_print_paper_faithful": real_paper,
        "complex_print_corrected": complex_corrected,
        "energy_table_corrected": table_corrected,
        "energy_table_paper_faithful": table_paper,
    });
    let mut text = serde_json::to_string_pretty(&document)
        .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    text.push('\n');

    let path = resolve_output(args.output, "compare.json");
    write_output(&path, &text)?;
    println!(
        "wrote delta reports to {} (real print corner deltas: corrected {:.3}, \
         paper-faithful {:.3})",
        path.display(),
        real_corrected.entry(0, 0).map(|e| e.abs_delta).unwrap_or(f64::NAN),
        real_paper.entry(0, 0).map(|e| e.abs_delta).unwrap_or(f64::NAN),
    );
    Ok(())
}

fn cmd_selftest() -> Result<()> {
    let started = Instant::now();
    let results = run_all();
    for suite in &results {
        println!(
            "suite {:<14} {:>4} checks  {}  {:?}",
            suite.name,
            suite.checks,
            if suite.passed() { "PASS" } else { "FAIL" },
            suite.duration
        );
        for failure in &suite.failures {
            println!("    failed: {failure}");
        }
    }
    println!("total {:?}", started.elapsed());
    if all_passed(&results) {
        Ok(())
    } else {
        Err(Error::Numeric("invariant suite reported failures".into()))
    }
}
