//! Formula-to-matrix reductions and the constructive witnesses behind them.
//!
//! The NP matrix triples every variable column and ties the copies together
//! with gadget rows:
//!
//! ```text
//!     [ B/3  B/3  B/3 ]
//! A = [  I    I   -I  ]
//!     [  I   -I    I  ]
//!     [ -I    I    I  ]
//! ```
//!
//! The Π₂ matrix appends one anchor column per universal variable, a
//! coupling row `(2/3)(x¹ᵢ + x²ᵢ + x³ᵢ) − 2x*ᵢ`, and a pin row `(8/3)x*ᵢ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gadget::{gadget_matrix, round_gadget, GadgetRounding, Sign};
use crate::nae::{eval_nae, Assignment, NaeFormula, QuantifiedNaeFormula};
use crate::numeric::{inf_norm, mat_vec_mul, residual_norm, RMatrix, RVector, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ReductionKind {
    Np,
    Pi2,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Np => "NP",
            ReductionKind::Pi2 => "PI2",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedInstance {
    pub kind: ReductionKind,
    pub matrix: RMatrix,
    pub n: usize,
    pub m: usize,
    pub n_prime: usize,
    pub source: QuantifiedNaeFormula,
}

/// A vector over the reduced columns split as `(w¹, w², w³, w*)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockView {
    pub w1: RVector,
    pub w2: RVector,
    pub w3: RVector,
    pub w_star: RVector,
}

impl BlockView {
    pub fn new(w1: RVector, w2: RVector, w3: RVector, w_star: RVector) -> Result<Self> {
        let n = w1.dim();
        for part in [&w2, &w3] {
            if part.dim() != n {
                return Err(Error::DimensionMismatch { context: "block copies", left: n, right: part.dim() });
            }
        }
        Ok(BlockView { w1, w2, w3, w_star })
    }

    pub fn from_flat(v: &RVector, n: usize, n_prime: usize) -> Result<Self> {
        if v.dim() != 3 * n + n_prime {
            return Err(Error::DimensionMismatch { context: "block view", left: 3 * n + n_prime, right: v.dim() });
        }
        let e = v.entries();
        let part = |a: usize, b: usize| RVector::new(e[a..b].to_vec());
        Ok(BlockView {
            w1: part(0, n),
            w2: part(n, 2 * n),
            w3: part(2 * n, 3 * n),
            w_star: part(3 * n, 3 * n + n_prime),
        })
    }

    /// `c·1` on all `3n + n'` coordinates.
    pub fn constant(n: usize, n_prime: usize, c: Rational) -> Self {
        let copy = RVector::filled(n, c.clone());
        BlockView { w1: copy.clone(), w2: copy.clone(), w3: copy, w_star: RVector::filled(n_prime, c) }
    }

    pub fn n(&self) -> usize {
        self.w1.dim()
    }

    pub fn n_prime(&self) -> usize {
        self.w_star.dim()
    }

    pub fn to_flat(&self) -> RVector {
        RVector::concat(&[&self.w1, &self.w2, &self.w3, &self.w_star])
    }

    /// `w¹ + w² + w³`.
    pub fn sum(&self) -> RVector {
        let s = self.w1.checked_add(&self.w2).expect("copies share a dimension");
        s.checked_add(&self.w3).expect("copies share a dimension")
    }

    /// `(w¹ᵢ, w²ᵢ, w³ᵢ)` for a zero-based variable index.
    pub fn copies_at(&self, i: usize) -> [Rational; 3] {
        [self.w1[i].clone(), self.w2[i].clone(), self.w3[i].clone()]
    }

    fn check_shape(&self, n: usize, n_prime: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch { context: "block copy length", left: n, right: self.n() });
        }
        if self.n_prime() != n_prime {
            return Err(Error::DimensionMismatch { context: "anchor block length", left: n_prime, right: self.n_prime() });
        }
        Ok(())
    }
}

/// Row `j` is `Σ_k b_k e^(i_k)` over the literals of clause `j`.
pub fn build_clause_matrix(f: &NaeFormula) -> RMatrix {
    let mut b = RMatrix::zeros(f.num_clauses(), f.num_vars());
    for (j, clause) in f.clauses().iter().enumerate() {
        for lit in clause.literals() {
            let col = lit.var - 1;
            let updated = b.get(j, col) + Rational::int(lit.sign());
            b.set(j, col, updated);
        }
    }
    b
}

pub fn build_np_matrix(f: &NaeFormula) -> ReducedInstance {
    ReducedInstance {
        kind: ReductionKind::Np,
        matrix: np_block_matrix(f),
        n: f.num_vars(),
        m: f.num_clauses(),
        n_prime: 0,
        source: QuantifiedNaeFormula::unquantified(f.clone()),
    }
}

fn np_block_matrix(f: &NaeFormula) -> RMatrix {
    let n = f.num_vars();
    let m = f.num_clauses();
    let third_b = build_clause_matrix(f).scale(&Rational::frac(1, 3));
    let g = gadget_matrix();
    let mut a = RMatrix::zeros(m + 3 * n, 3 * n);
    for copy in 0..3 {
        a.set_block(0, copy * n, &third_b);
    }
    for gadget_row in 0..3 {
        for copy in 0..3 {
            let block = RMatrix::identity(n).scale(g.get(gadget_row, copy));
            a.set_block(m + gadget_row * n, copy * n, &block);
        }
    }
    a
}

pub fn build_pi2_matrix(qf: &QuantifiedNaeFormula) -> ReducedInstance {
    let f = qf.formula();
    let n = f.num_vars();
    let m = f.num_clauses();
    let np = qf.n_universal();
    let top = np_block_matrix(f);
    let mut a = RMatrix::zeros(m + 3 * n + 2 * np, 3 * n + np);
    a.set_block(0, 0, &top);
    let coupling = m + 3 * n;
    let pin = coupling + np;
    for i in 0..np {
        for copy in 0..3 {
            a.set(coupling + i, copy * n + i, Rational::frac(2, 3));
        }
        a.set(coupling + i, 3 * n + i, Rational::int(-2));
        a.set(pin + i, 3 * n + i, Rational::frac(8, 3));
    }
    ReducedInstance { kind: ReductionKind::Pi2, matrix: a, n, m, n_prime: np, source: qf.clone() }
}

/// The terms whose maximum is `‖A(w − x)‖∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    /// `(1/3)‖B(w^sum − x^sum)‖∞`; absent without clauses.
    pub clause_term: Option<Rational>,
    /// `‖G((w¹ᵢ, w²ᵢ, w³ᵢ) − (x¹ᵢ, x²ᵢ, x³ᵢ))‖∞` per variable.
    pub gadget_terms: Vec<Rational>,
    /// `|(2/3)(w^sumᵢ − x^sumᵢ) − 2(w*ᵢ − x*ᵢ)|` per universal variable.
    pub coupling_terms: Vec<Rational>,
    /// `(8/3)|w*ᵢ − x*ᵢ|` per universal variable.
    pub pin_terms: Vec<Rational>,
    /// The norm computed from the full matrix.
    pub direct: Rational,
}

impl Decomposition {
    pub fn max_term(&self) -> Rational {
        self.clause_term
            .iter()
            .chain(&self.gadget_terms)
            .chain(&self.coupling_terms)
            .chain(&self.pin_terms)
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Splits `‖A(w − x)‖∞` into block terms and checks that their maximum
/// equals the directly computed norm.
pub fn decompose_norm(inst: &ReducedInstance, w: &BlockView, x: &BlockView) -> Result<Decomposition> {
    w.check_shape(inst.n, inst.n_prime)?;
    x.check_shape(inst.n, inst.n_prime)?;
    let f = inst.source.formula();
    let dev_sum = w.sum().checked_sub(&x.sum())?;

    let clause_term = if inst.m > 0 {
        let b = build_clause_matrix(f);
        Some(inf_norm(&mat_vec_mul(&b, &dev_sum)?)? * Rational::frac(1, 3))
    } else {
        None
    };
    let g = gadget_matrix();
    let gadget_terms = (0..inst.n)
        .map(|i| {
            let d = RVector::new(w.copies_at(i).to_vec()).checked_sub(&RVector::new(x.copies_at(i).to_vec()))?;
            inf_norm(&mat_vec_mul(&g, &d)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let dev_star = w.w_star.checked_sub(&x.w_star)?;
    let coupling_terms = (0..inst.n_prime)
        .map(|i| (Rational::frac(2, 3) * &dev_sum[i] - Rational::int(2) * &dev_star[i]).abs())
        .collect();
    let pin_terms = (0..inst.n_prime).map(|i| Rational::frac(8, 3) * dev_star[i].abs()).collect();

    let direct = residual_norm(&inst.matrix, &w.to_flat(), &x.to_flat())?;
    let out = Decomposition { clause_term, gadget_terms, coupling_terms, pin_terms, direct };
    if out.max_term() != out.direct {
        return Err(Error::Identity(format!(
            "max of block terms {} differs from direct norm {}",
            out.max_term(),
            out.direct
        )));
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessResult {
    /// Binary rounding in block form.
    pub x: BlockView,
    /// `‖A(w − x)‖∞`, at most 4/3.
    pub achieved_norm: Rational,
    /// Gadget rounding used for each variable's three copies.
    pub per_coordinate: Vec<GadgetRounding>,
}

impl WitnessResult {
    pub fn x_bits(&self) -> Vec<u8> {
        self.x.to_flat().as_bits().expect("witness roundings are binary")
    }
}

impl ReducedInstance {
    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Rounds each variable's copies with sign `1 − 2ψ(vᵢ)`; the anchor
    /// coordinates (if any) round to `ψ` on the universal variables.
    fn round_with(&self, psi: &Assignment, w: &BlockView) -> Result<WitnessResult> {
        w.check_shape(self.n, self.n_prime)?;
        if !w.to_flat().in_unit_cube() {
            return Err(Error::Domain("w must lie in the unit cube".into()));
        }
        let per_coordinate = (0..self.n)
            .map(|i| round_gadget(&w.copies_at(i), Sign::from_bit(psi.value(i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let copy = |k: usize| RVector::from_bits(&per_coordinate.iter().map(|g| g.z[k]).collect::<Vec<_>>());
        let anchors = RVector::from_bits(&psi.bits()[..self.n_prime]);
        let x = BlockView::new(copy(0), copy(1), copy(2), anchors)?;
        let achieved_norm = residual_norm(&self.matrix, &w.to_flat(), &x.to_flat())?;
        if achieved_norm > Rational::frac(4, 3) {
            return Err(Error::Identity(format!("witness norm {achieved_norm} exceeds 4/3")));
        }
        Ok(WitnessResult { x, achieved_norm, per_coordinate })
    }

    /// NP completeness rounding for a NAE-satisfying `ψ`.
    pub fn witness(&self, psi: &Assignment, w: &BlockView) -> Result<WitnessResult> {
        if self.n_prime != 0 {
            return Err(Error::Precondition("use the Π₂ witness for instances with anchor columns".into()));
        }
        check_satisfying(self.source.formula(), psi)?;
        self.round_with(psi, w)
    }

    /// Π₂ completeness rounding: `ψ_A` is read off the anchors
    /// (`w*ᵢ ≤ 1/2 ↦ 0`), `ψ_E` comes from `oracle`, and `x* = ψ_A`.
    pub fn pi2_witness(
        &self,
        w: &BlockView,
        oracle: impl Fn(&Assignment) -> Option<Assignment>,
    ) -> Result<WitnessResult> {
        w.check_shape(self.n, self.n_prime)?;
        let psi_a = threshold_anchors(&w.w_star);
        let psi_e = oracle(&psi_a).ok_or_else(|| Error::NoExistentialWitness(psi_a.to_string()))?;
        let psi = psi_a.concat(&psi_e);
        if psi.len() != self.n {
            return Err(Error::PartialAssignment { expected: self.n, got: psi.len() });
        }
        check_satisfying(self.source.formula(), &psi)?;
        self.round_with(&psi, w)
    }

    /// `# kind=.. n=.. m=.. nprime=..` followed by the matrix text.
    pub fn to_text(&self) -> String {
        format!(
            "# kind={} n={} m={} nprime={}\n{}",
            self.kind,
            self.n,
            self.m,
            self.n_prime,
            self.matrix.to_text()
        )
    }
}

/// Header fields of a serialized reduced matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReducedHeader {
    pub kind: ReductionKind,
    pub n: usize,
    pub m: usize,
    pub n_prime: usize,
}

/// Reads the `# kind=...` sidecar line, if present.
pub fn parse_reduced_header(text: &str) -> Option<ReducedHeader> {
    let line = text.lines().find(|l| l.trim_start().starts_with("# kind="))?;
    let mut kind = None;
    let (mut n, mut m, mut np) = (None, None, None);
    for field in line.trim_start_matches('#').split_whitespace() {
        let (k, v) = field.split_once('=')?;
        match k {
            "kind" => {
                kind = match v {
                    "NP" => Some(ReductionKind::Np),
                    "PI2" => Some(ReductionKind::Pi2),
                    _ => return None,
                }
            }
            "n" => n = v.parse().ok(),
            "m" => m = v.parse().ok(),
            "nprime" => np = v.parse().ok(),
            _ => {}
        }
    }
    Some(ReducedHeader { kind: kind?, n: n?, m: m?, n_prime: np? })
}

fn check_satisfying(f: &NaeFormula, psi: &Assignment) -> Result<()> {
    if !eval_nae(f, psi)? {
        return Err(Error::Precondition(format!("assignment {psi} does not NAE-satisfy the formula")));
    }
    Ok(())
}

fn threshold_anchors(w_star: &RVector) -> Assignment {
    let half = Rational::half();
    Assignment::from_bits(w_star.iter().map(|w| (w > &half) as u8).collect())
}

pub fn completeness_witness(f: &NaeFormula, psi: &Assignment, w: &BlockView) -> Result<WitnessResult> {
    build_np_matrix(f).witness(psi, w)
}

pub fn pi2_completeness_witness(
    qf: &QuantifiedNaeFormula,
    w: &BlockView,
    oracle: impl Fn(&Assignment) -> Option<Assignment>,
) -> Result<WitnessResult> {
    build_pi2_matrix(qf).pi2_witness(w, oracle)
}

/// `ψ(vᵢ) = x¹ᵢ`.
pub fn extract_assignment(x: &BlockView) -> Result<Assignment> {
    let bits = x.w1.as_bits().ok_or_else(|| Error::Domain("x¹ must be binary".into()))?;
    Ok(Assignment::from_bits(bits))
}

/// `w = (½·1_{3n}, w*)` with `w*ᵢ = 1/3` when `ψ_A(vᵢ) = 0` and `2/3` otherwise.
pub fn adversary_point(qf: &QuantifiedNaeFormula, psi_a: &Assignment) -> Result<BlockView> {
    if psi_a.len() != qf.n_universal() {
        return Err(Error::PartialAssignment { expected: qf.n_universal(), got: psi_a.len() });
    }
    let half = RVector::filled(qf.num_vars(), Rational::half());
    let w_star = RVector::new(psi_a.bits().iter().map(|&b| Rational::frac(1 + b as i64, 3)).collect());
    BlockView::new(half.clone(), half.clone(), half, w_star)
}

/// `|1/3 + (4/3)ψ_A(vᵢ) − 2ψ(vᵢ)|`: the coupling row at the adversary point
/// once the copies agree and the anchor matches `ψ_A`.
pub fn consistency_chain_value(psi_a: u8, psi: u8) -> Rational {
    (Rational::frac(1, 3) + Rational::frac(4 * psi_a as i64, 3) - Rational::int(2 * psi as i64)).abs()
}

/// Given a rounding `x` of the adversary point for `ψ_A` with norm below
/// 3/2, recovers the existential completion `ψ_E` of `ψ_A`.
///
/// Each step re-derives a forced consequence (anchors equal `ψ_A`, copies
/// agree, `x¹` agrees with `ψ_A`, `x¹` NAE-satisfies the formula) and fails
/// with a precondition error if it does not hold.
pub fn pi2_soundness_check(qf: &QuantifiedNaeFormula, x: &BlockView, psi_a: &Assignment) -> Result<Assignment> {
    let np = qf.n_universal();
    let w = adversary_point(qf, psi_a)?;
    x.check_shape(qf.num_vars(), np)?;
    let anchors = x.w_star.as_bits().ok_or_else(|| Error::Domain("x* must be binary".into()))?;
    for i in 0..np {
        if anchors[i] != psi_a.bits()[i] {
            let pin = Rational::frac(8, 3) * (&w.w_star[i] - Rational::int(anchors[i] as i64)).abs();
            return Err(Error::Precondition(format!(
                "x*_{} = {} disagrees with ψ_A; pin row alone gives {pin} ≥ 16/9 > 3/2",
                i + 1,
                anchors[i]
            )));
        }
    }
    if x.w1 != x.w2 || x.w2 != x.w3 {
        return Err(Error::Precondition("copies disagree, so some gadget term is at least 3/2".into()));
    }
    let psi = extract_assignment(x)?;
    for i in 0..np {
        let chain = consistency_chain_value(psi_a.bits()[i], psi.bits()[i]);
        if chain >= Rational::frac(3, 2) {
            return Err(Error::Precondition(format!(
                "ψ(v{}) disagrees with ψ_A; coupling row gives {chain} ≥ 3/2",
                i + 1
            )));
        }
    }
    check_satisfying(qf.formula(), &psi)?;
    Ok(psi.suffix_from(np))
}
