//! End-to-end gap check: decide the formula, reduce it, then confirm the
//! YES-side bound (witness roundings, optional certificate) or the NO-side
//! bound (exact inner discrepancy at the adversary point).

use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::nae::{solve_forall_exists, solve_nae, Assignment, ForallExists, QuantifiedNaeFormula};
use crate::numeric::{RVector, Rational};
use crate::reduction::{adversary_point, build_np_matrix, build_pi2_matrix, BlockView, ReducedInstance};
use crate::solver::{certify_upper_with, lindisc_at_with, SearchConfig, UpperCheck, UpperVerdict};
use crate::{completeness_bound, soundness_bound};

/// Denominator of the sampling grid; prime, so samples avoid thirds and halves.
pub const SAMPLE_DENOMINATOR: i64 = 997;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Np,
    Pi2,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Np => "np",
            Mode::Pi2 => "pi2",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "np" => Ok(Mode::Np),
            "pi2" => Ok(Mode::Pi2),
            other => Err(format!("unknown mode `{other}` (expected np or pi2)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GapConfig {
    pub mode: Mode,
    pub samples: usize,
    pub seed: u64,
    pub eps: Rational,
    pub certify: bool,
    pub search: SearchConfig,
}

impl Default for GapConfig {
    fn default() -> Self {
        GapConfig {
            mode: Mode::Np,
            samples: 1000,
            seed: 42,
            eps: Rational::frac(1, 20),
            certify: false,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SatVerdict {
    Yes(Assignment),
    No,
    ForallYes(Vec<(Assignment, Assignment)>),
    ForallNo(Assignment),
}

impl SatVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, SatVerdict::Yes(_) | SatVerdict::ForallYes(_))
    }
}

impl fmt::Display for SatVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatVerdict::Yes(psi) => write!(f, "YES psi={psi}"),
            SatVerdict::No => write!(f, "NO"),
            SatVerdict::ForallYes(table) => {
                write!(f, "YES")?;
                for (a, e) in table {
                    write!(f, " {a}->{e}")?;
                }
                Ok(())
            }
            SatVerdict::ForallNo(psi_a) => write!(f, "NO counterexample={psi_a}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GapReport {
    pub instance: String,
    pub mode: Mode,
    pub verdict: SatVerdict,
    pub rows: usize,
    pub cols: usize,
    /// `lindisc(A, ·)` at the half point (NP) or the counterexample's
    /// adversary point (Π₂); NO instances only.
    pub soundness_value: Option<Rational>,
    /// Largest witness norm seen; YES instances only.
    pub completeness_max: Option<Rational>,
    pub witnesses: usize,
    pub certificate: Option<UpperCheck>,
    pub pass: bool,
}

impl GapReport {
    /// Human-readable block followed by one `key=value` line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let opt = |v: &Option<Rational>| v.as_ref().map_or("-".to_string(), |r| r.to_string());
        writeln!(out, "instance:         {}", self.instance).unwrap();
        writeln!(out, "mode:             {}", self.mode).unwrap();
        writeln!(out, "verdict:          {}", self.verdict).unwrap();
        writeln!(out, "matrix:           {}x{}", self.rows, self.cols).unwrap();
        if let Some(c) = &self.completeness_max {
            writeln!(out, "completeness max: {c} over {} witnesses (bound 4/3)", self.witnesses).unwrap();
        }
        if let Some(s) = &self.soundness_value {
            writeln!(out, "soundness value:  {s} (bound 3/2)").unwrap();
        }
        if let Some(check) = &self.certificate {
            writeln!(out, "certificate:      {:?} {}", check.verdict, check.certificate).unwrap();
        }
        writeln!(out, "result:           {}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        let certified = match &self.certificate {
            None => "-".to_string(),
            Some(c) => format!("{:?}", c.verdict).to_ascii_lowercase(),
        };
        writeln!(
            out,
            "instance={} mode={} verdict={} rows={} cols={} completeness_max={} witnesses={} soundness_value={} certified={} pass={}",
            self.instance,
            self.mode,
            if self.verdict.is_yes() { "YES" } else { "NO" },
            self.rows,
            self.cols,
            opt(&self.completeness_max),
            self.witnesses,
            opt(&self.soundness_value),
            certified,
            self.pass
        )
        .unwrap();
        out
    }
}

/// Sample `index` of the seeded stream: each coordinate uniform on
/// `{0, 1/997, …, 1}`. Independent of evaluation order.
pub fn sample_point(dim: usize, seed: u64, index: u64) -> RVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    RVector::new(
        (0..dim)
            .map(|_| Rational::frac(rng.gen_range(0..=SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR))
            .collect(),
    )
}

pub fn verify_gap(instance: &str, qf: &QuantifiedNaeFormula, cfg: &GapConfig) -> Result<GapReport> {
    match cfg.mode {
        Mode::Np => verify_np(instance, qf, cfg),
        Mode::Pi2 => verify_pi2(instance, qf, cfg),
    }
}

fn verify_np(instance: &str, qf: &QuantifiedNaeFormula, cfg: &GapConfig) -> Result<GapReport> {
    let f = qf.formula();
    let inst = build_np_matrix(f);
    let mut report = empty_report(instance, cfg.mode, &inst);
    match solve_nae(f)? {
        Some(psi) => {
            let norms = (0..cfg.samples as u64)
                .into_par_iter()
                .map(|k| {
                    let w = BlockView::from_flat(&sample_point(inst.cols(), cfg.seed, k), inst.n, 0)?;
                    inst.witness(&psi, &w).map(|r| r.achieved_norm)
                })
                .collect::<Result<Vec<_>>>()?;
            report.witnesses = norms.len();
            report.completeness_max = norms.into_iter().max();
            report.verdict = SatVerdict::Yes(psi);
            finish_yes(&mut report, &inst, cfg)?;
        }
        None => {
            let half = RVector::filled(inst.cols(), Rational::half());
            let value = lindisc_at_with(&inst.matrix, &half, &cfg.search)?.value;
            report.pass = value >= soundness_bound();
            report.soundness_value = Some(value);
            report.verdict = SatVerdict::No;
        }
    }
    Ok(report)
}

fn verify_pi2(instance: &str, qf: &QuantifiedNaeFormula, cfg: &GapConfig) -> Result<GapReport> {
    let inst = build_pi2_matrix(qf);
    let mut report = empty_report(instance, cfg.mode, &inst);
    match solve_forall_exists(qf)? {
        ForallExists::Yes { table } => {
            let verdict = ForallExists::Yes { table: table.clone() };
            let oracle = |psi_a: &Assignment| verdict.witness_for(psi_a).cloned();
            let mut points = table
                .iter()
                .map(|(psi_a, _)| adversary_point(qf, psi_a))
                .collect::<Result<Vec<_>>>()?;
            for k in 0..cfg.samples as u64 {
                points.push(BlockView::from_flat(&sample_point(inst.cols(), cfg.seed, k), inst.n, inst.n_prime)?);
            }
            let norms = points
                .par_iter()
                .map(|w| inst.pi2_witness(w, oracle).map(|r| r.achieved_norm))
                .collect::<Result<Vec<_>>>()?;
            report.witnesses = norms.len();
            report.completeness_max = norms.into_iter().max();
            report.verdict = SatVerdict::ForallYes(table);
            finish_yes(&mut report, &inst, cfg)?;
        }
        ForallExists::No { counterexample } => {
            let w = adversary_point(qf, &counterexample)?;
            let value = lindisc_at_with(&inst.matrix, &w.to_flat(), &cfg.search)?.value;
            report.pass = value >= soundness_bound();
            report.soundness_value = Some(value);
            report.verdict = SatVerdict::ForallNo(counterexample);
        }
    }
    Ok(report)
}

fn empty_report(instance: &str, mode: Mode, inst: &ReducedInstance) -> GapReport {
    GapReport {
        instance: instance.to_string(),
        mode,
        verdict: SatVerdict::No,
        rows: inst.matrix.rows(),
        cols: inst.matrix.cols(),
        soundness_value: None,
        completeness_max: None,
        witnesses: 0,
        certificate: None,
        pass: false,
    }
}

fn finish_yes(report: &mut GapReport, inst: &ReducedInstance, cfg: &GapConfig) -> Result<()> {
    let within = report.completeness_max.as_ref().is_none_or(|c| *c <= completeness_bound());
    let certified = if cfg.certify {
        let check = certify_upper_with(&inst.matrix, &completeness_bound(), &cfg.eps, &cfg.search)?;
        let ok = check.verdict == UpperVerdict::Holds && check.certificate.hi <= completeness_bound() + &cfg.eps;
        report.certificate = Some(check);
        ok
    } else {
        true
    };
    report.pass = within && certified;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nae::parse_formula;

    #[test]
    fn samples_are_reproducible_and_on_the_grid() {
        let a = sample_point(9, 42, 7);
        assert_eq!(a, sample_point(9, 42, 7));
        assert_ne!(a, sample_point(9, 42, 8));
        assert!(a.in_unit_cube());
        assert!(a.iter().all(|x| (x * Rational::int(SAMPLE_DENOMINATOR)).is_integer()));
    }

    #[test]
    fn yes_instance_passes() {
        let qf = parse_formula("p cnf 3 1\n1 -2 3 0").unwrap();
        let cfg = GapConfig { samples: 200, ..GapConfig::default() };
        let report = verify_gap("single", &qf, &cfg).unwrap();
        assert!(report.pass);
        assert!(report.verdict.is_yes());
        assert!(report.completeness_max.unwrap() <= Rational::frac(4, 3));
        assert_eq!(report.soundness_value, None);
    }

    #[test]
    fn no_instance_passes_via_soundness() {
        let qf = parse_formula("p cnf 1 1\n1 1 1 0").unwrap();
        let report = verify_gap("triple", &qf, &GapConfig::default()).unwrap();
        assert!(report.pass);
        assert!(report.soundness_value.unwrap() >= Rational::frac(3, 2));
    }

    #[test]
    fn pi2_no_instance_uses_counterexample() {
        let qf = parse_formula("p cnf 1 1\na 1 0\n1 1 1 0").unwrap();
        let cfg = GapConfig { mode: Mode::Pi2, ..GapConfig::default() };
        let report = verify_gap("pi2-no", &qf, &cfg).unwrap();
        assert!(report.pass);
        assert!(matches!(report.verdict, SatVerdict::ForallNo(_)));
    }

    #[test]
    fn report_is_deterministic() {
        let qf = parse_formula("p cnf 2 1\na 1 0\ne 2 0\n1 1 2 0").unwrap();
        let cfg = GapConfig { mode: Mode::Pi2, samples: 50, seed: 9, ..GapConfig::default() };
        let a = verify_gap("x", &qf, &cfg).unwrap().render();
        let b = verify_gap("x", &qf, &cfg).unwrap().render();
        assert_eq!(a, b);
        assert!(a.contains("pass=true"), "{a}");
    }
}
