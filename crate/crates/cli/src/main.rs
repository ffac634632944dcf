use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lindisc_core::numeric::parse_vector;
use lindisc_core::solver::{certify_upper_with, grid_oracle_with, lindisc_at_with, lindisc_global_with};
use lindisc_core::{
    build_np_matrix, build_pi2_matrix, parse_formula, round_gadget, solve_forall_exists, verify_gap, ForallExists,
    GapConfig, Mode, QuantifiedNaeFormula, RMatrix, Rational, SearchConfig, Sign, UpperVerdict,
};

#[derive(Parser)]
#[command(name = "lindisc-lab", version, about = "Exact linear discrepancy experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the reduced matrix of a (quantified) NAE3SAT instance.
    Reduce {
        formula: PathBuf,
        #[arg(long, default_value = "np")]
        mode: Mode,
        /// Write the matrix here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact min over binary x of ‖A(w − x)‖∞.
    LindiscAt { matrix: PathBuf, vector: PathBuf },
    /// Branch-and-bound enclosure of max over w of lindisc(A, w).
    Lindisc {
        matrix: PathBuf,
        #[arg(long, default_value = "1/20", value_parser = rational)]
        eps: Rational,
        /// Decide lindisc(A) ≤ threshold + eps instead of bracketing.
        #[arg(long, value_parser = rational)]
        threshold: Option<Rational>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Bound boxes by f(center) + L·radius only.
        #[arg(long)]
        no_interval: bool,
    },
    /// Round one gadget point u ∈ [0,1]³.
    RoundGadget {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        u1: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        u2: Rational,
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        u3: Rational,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
    },
    /// Decide NAE satisfiability, or ∀∃ for quantified files.
    SolveNae { formula: PathBuf },
    /// Max of lindisc(A, w) over the grid {0, 1/r, …, 1}^n.
    GridOracle {
        matrix: PathBuf,
        #[arg(long, default_value_t = 4)]
        resolution: u32,
    },
    /// Check both sides of the discrepancy gap on one instance.
    VerifyGap {
        formula: PathBuf,
        #[arg(long, default_value = "np")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "1/20", value_parser = rational)]
        eps: Rational,
        /// Also certify lindisc(A) ≤ 4/3 + eps by branch and bound (slow).
        #[arg(long)]
        certify: bool,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// Reads a file, or stdin for `-`.
fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_matrix(path: &Path) -> Result<RMatrix> {
    RMatrix::parse(&read_input(path)?).with_context(|| format!("parsing matrix {}", path.display()))
}

fn read_formula(path: &Path) -> Result<QuantifiedNaeFormula> {
    parse_formula(&read_input(path)?).with_context(|| format!("parsing formula {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Reduce { formula, mode, output } => {
            let qf = read_formula(&formula)?;
            let inst = match mode {
                Mode::Np => {
                    if qf.n_universal() > 0 {
                        eprintln!("note: ignoring the universal block for the NP reduction");
                    }
                    build_np_matrix(qf.formula())
                }
                Mode::Pi2 => build_pi2_matrix(&qf),
            };
            let text = inst.to_text();
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("wrote {}x{} matrix to {}", inst.matrix.rows(), inst.matrix.cols(), path.display());
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::LindiscAt { matrix, vector } => {
            let a = read_matrix(&matrix)?;
            let w = parse_vector(&read_input(&vector)?).with_context(|| format!("parsing vector {}", vector.display()))?;
            let res = lindisc_at_with(&a, &w, &SearchConfig::default())?;
            let x: Vec<String> = res.argmin.iter().map(u8::to_string).collect();
            writeln!(out, "value={} argmin={} nodes={}", res.value, x.join(","), res.nodes_explored)?;
        }
        Command::Lindisc { matrix, eps, threshold, budget, no_interval } => {
            let a = read_matrix(&matrix)?;
            let cfg = SearchConfig { node_budget: budget, interval_bounds: !no_interval, ..SearchConfig::default() };
            match threshold {
                None => {
                    let cert = lindisc_global_with(&a, &eps, &cfg)?;
                    writeln!(out, "{cert}")?;
                    if !cert.complete {
                        eprintln!("node budget exhausted; certificate is partial");
                        return Ok(ExitCode::from(2));
                    }
                }
                Some(t) => {
                    let check = certify_upper_with(&a, &t, &eps, &cfg)?;
                    let verdict = format!("{:?}", check.verdict).to_ascii_lowercase();
                    writeln!(out, "verdict={verdict} threshold={t} {}", check.certificate)?;
                    return Ok(match check.verdict {
                        UpperVerdict::Holds => ExitCode::SUCCESS,
                        UpperVerdict::Exceeds => ExitCode::from(1),
                        UpperVerdict::Indeterminate => ExitCode::from(2),
                    });
                }
            }
        }
        Command::RoundGadget { u1, u2, u3, sign } => {
            let g = round_gadget(&[u1, u2, u3], Sign::from_i64(sign)?)?;
            let z: Vec<String> = g.z.iter().map(u8::to_string).collect();
            writeln!(out, "z={}", z.join(","))?;
            writeln!(out, "case={}", g.case)?;
            writeln!(out, "residual={}", g.residual.to_compact())?;
            writeln!(out, "norm={}", g.g_norm)?;
            writeln!(out, "sum_dev={}", g.sum_dev)?;
        }
        Command::SolveNae { formula } => {
            let qf = read_formula(&formula)?;
            match solve_forall_exists(&qf)? {
                ForallExists::Yes { table } if qf.n_universal() == 0 => {
                    writeln!(out, "YES psi={}", table[0].1)?;
                }
                ForallExists::No { .. } if qf.n_universal() == 0 => writeln!(out, "NO")?,
                ForallExists::Yes { table } => {
                    writeln!(out, "YES")?;
                    for (a, e) in table {
                        writeln!(out, "{a} -> {e}")?;
                    }
                }
                ForallExists::No { counterexample } => writeln!(out, "NO counterexample={counterexample}")?,
            }
        }
        Command::GridOracle { matrix, resolution } => {
            if resolution == 0 {
                bail!("resolution must be at least 1");
            }
            let a = read_matrix(&matrix)?;
            let (value, w) = grid_oracle_with(&a, resolution, &SearchConfig::default())?;
            writeln!(out, "value={value} resolution={resolution} w={}", w.to_compact())?;
        }
        Command::VerifyGap { formula, mode, samples, seed, eps, certify } => {
            let qf = read_formula(&formula)?;
            let cfg = GapConfig { mode, samples, seed, eps, certify, search: SearchConfig::default() };
            let report = verify_gap(&formula.display().to_string(), &qf, &cfg)?;
            out.write_all(report.render().as_bytes())?;
            if !report.pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
