//! Exact `lindisc(A, w)` and a certified branch-and-bound for `lindisc(A)`.
//!
//! The inner problem `min_x max_i |(A(w − x))_i|` is solved by depth-first
//! search over the binary `x`, on integer data obtained by clearing every
//! denominator. The same search handles a box of targets: each row then
//! carries an interval `[lo_i, hi_i]` for `(Aw)_i` and its cost is
//! `max(|lo_i − (Ax)_i|, |hi_i − (Ax)_i|)`, which gives the exact
//! `min_x max_{w ∈ box} ‖A(w − x)‖∞` upper bound used to prune boxes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{common_denominator, RMatrix, RVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Column limit for the exhaustive inner search.
    pub inner_limit: usize,
    /// Column limit for the outer branch-and-bound.
    pub box_limit: usize,
    /// Maximum number of boxes the outer search may evaluate.
    pub node_budget: u64,
    /// Bound boxes by exact per-`x` interval evaluation instead of the
    /// plain `f(center) + L·radius` bound.
    pub interval_bounds: bool,
    /// Largest number of points `grid_oracle` will visit.
    pub grid_limit: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            inner_limit: 24,
            box_limit: 12,
            node_budget: 10_000_000,
            interval_bounds: true,
            grid_limit: 5_000_000,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InnerResult {
    pub value: Rational,
    /// Lowest-code minimizer, `x₁` least significant.
    pub argmin: Vec<u8>,
    pub nodes_explored: u64,
}

pub fn lindisc_at(a: &RMatrix, w: &RVector) -> Result<InnerResult> {
    lindisc_at_with(a, w, &SearchConfig::default())
}

/// `min_{x ∈ {0,1}^n} ‖A(w − x)‖∞`, exactly.
pub fn lindisc_at_with(a: &RMatrix, w: &RVector, cfg: &SearchConfig) -> Result<InnerResult> {
    check_columns(a, w.dim(), cfg.inner_limit)?;
    if !w.in_unit_cube() {
        return Err(Error::Domain("w must lie in [0, 1]^n".into()));
    }
    let targets = a.mat_vec_mul(w)?;
    Ok(min_over_binary(a, targets.entries(), targets.entries()))
}

/// `min_x max_{w ∈ box} ‖A(w − x)‖∞` for the box `[lo, hi]`.
pub fn box_upper_bound(a: &RMatrix, lo: &RVector, hi: &RVector, cfg: &SearchConfig) -> Result<InnerResult> {
    check_columns(a, lo.dim(), cfg.inner_limit)?;
    check_columns(a, hi.dim(), cfg.inner_limit)?;
    let (row_lo, row_hi) = row_ranges(a, lo, hi);
    Ok(min_over_binary(a, &row_lo, &row_hi))
}

fn check_columns(a: &RMatrix, dim: usize, limit: usize) -> Result<()> {
    if a.cols() != dim {
        return Err(Error::DimensionMismatch { context: "matrix columns vs point", left: a.cols(), right: dim });
    }
    if dim > limit {
        return Err(Error::Capacity { what: "column count", size: dim, limit });
    }
    Ok(())
}

/// Range of `(Aw)_i` over the box.
fn row_ranges(a: &RMatrix, lo: &RVector, hi: &RVector) -> (Vec<Rational>, Vec<Rational>) {
    (0..a.rows())
        .map(|i| {
            let mut low = Rational::zero();
            let mut high = Rational::zero();
            for (j, aij) in a.row(i).iter().enumerate() {
                if aij.is_zero() {
                    continue;
                }
                let (p, q) = (aij * &lo[j], aij * &hi[j]);
                if p <= q {
                    low += &p;
                    high += &q;
                } else {
                    low += &q;
                    high += &p;
                }
            }
            (low, high)
        })
        .unzip()
}

fn min_over_binary(a: &RMatrix, lo: &[Rational], hi: &[Rational]) -> InnerResult {
    let denom = common_denominator(a.entries().iter().chain(lo).chain(hi));
    let scale = |r: &Rational| -> BigInt { r.numer() * (&denom / r.denom()) * 2 };
    let n = a.cols();
    let m = a.rows();
    let cols: Vec<Vec<BigInt>> = (0..n).map(|j| (0..m).map(|i| scale(a.get(i, j))).collect()).collect();
    let lo2: Vec<BigInt> = lo.iter().map(scale).collect();
    let hi2: Vec<BigInt> = hi.iter().map(scale).collect();

    let magnitude = (0..m)
        .map(|i| lo2[i].abs() + hi2[i].abs() + cols.iter().map(|c| c[i].abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default();
    let to_real = |v: BigInt| Rational::new(v, &denom * 2).expect("denominator is positive");

    let fits = magnitude < BigInt::from(i64::MAX / 4);
    let (value, argmin, nodes) = if fits {
        let narrow = |v: &Vec<BigInt>| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<i64>>();
        let cols: Vec<Vec<i64>> = cols.iter().map(narrow).collect();
        let (v, x, nodes) = Dfs::run(cols, narrow(&lo2), narrow(&hi2));
        (BigInt::from(v), x, nodes)
    } else {
        Dfs::run(cols, lo2, hi2)
    };
    InnerResult { value: to_real(value), argmin, nodes_explored: nodes }
}

/// Integer branch-and-bound over `x`, in units where every target and
/// column entry is an even integer (so half-widths stay integral).
struct Dfs<T> {
    cols: Vec<Vec<T>>,
    lo: Vec<T>,
    hi: Vec<T>,
    half_width: Vec<T>,
    /// `reach_pos[t][i]`: sum of positive entries of columns `0..t` in row `i`.
    reach_pos: Vec<Vec<T>>,
    reach_neg: Vec<Vec<T>>,
    x: Vec<u8>,
    best: Option<T>,
    best_x: Vec<u8>,
    nodes: u64,
}

impl<T> Dfs<T>
where
    T: Clone + Ord + Zero + Integer + Add<Output = T> + Sub<Output = T> + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
{
    fn run(cols: Vec<Vec<T>>, lo: Vec<T>, hi: Vec<T>) -> (T, Vec<u8>, u64) {
        let n = cols.len();
        let m = lo.len();
        let two = T::one() + T::one();
        let half_width = lo.iter().zip(&hi).map(|(l, h)| (h.clone() - l.clone()).div_floor(&two)).collect();
        let mut reach_pos = vec![vec![T::zero(); m]];
        let mut reach_neg = vec![vec![T::zero(); m]];
        for col in &cols {
            let (mut p, mut q) = (reach_pos.last().unwrap().clone(), reach_neg.last().unwrap().clone());
            for i in 0..m {
                if col[i] > T::zero() {
                    p[i] += &col[i];
                } else {
                    q[i] += &col[i];
                }
            }
            reach_pos.push(p);
            reach_neg.push(q);
        }
        let mut dfs = Dfs {
            cols,
            lo,
            hi,
            half_width,
            reach_pos,
            reach_neg,
            x: vec![0; n],
            best: None,
            best_x: vec![0; n],
            nodes: 0,
        };
        let mut acc = vec![T::zero(); m];
        dfs.search(n, &mut acc);
        (dfs.best.expect("some x is always reached"), dfs.best_x, dfs.nodes)
    }

    /// Lower bound on the final cost when columns `0..t` are still free.
    fn bound(&self, t: usize, acc: &[T]) -> T {
        let mut worst = T::zero();
        for i in 0..acc.len() {
            let high = acc[i].clone() + self.reach_pos[t][i].clone();
            let low = acc[i].clone() + self.reach_neg[t][i].clone();
            let over = self.hi[i].clone() - high;
            let under = low - self.lo[i].clone();
            let row = over.max(under).max(self.half_width[i].clone());
            if row > worst {
                worst = row;
                if let Some(best) = &self.best {
                    if worst >= *best {
                        return worst;
                    }
                }
            }
        }
        worst
    }

    /// Columns are fixed from the highest index down, 0 before 1, so leaves
    /// arrive in increasing code order and the first minimizer is kept.
    fn search(&mut self, t: usize, acc: &mut Vec<T>) {
        self.nodes += 1;
        let lb = self.bound(t, acc);
        if let Some(best) = &self.best {
            if lb >= *best {
                return;
            }
        }
        if t == 0 {
            self.best = Some(lb);
            self.best_x.clone_from(&self.x);
            return;
        }
        let j = t - 1;
        self.search(j, acc);
        for (a, c) in acc.iter_mut().zip(&self.cols[j]) {
            *a += c;
        }
        self.x[j] = 1;
        self.search(j, acc);
        self.x[j] = 0;
        for (a, c) in acc.iter_mut().zip(&self.cols[j]) {
            *a -= c;
        }
    }
}

/// Largest row ℓ1 norm; `lindisc(A, ·)` is `L`-Lipschitz in the ∞-norm.
pub fn lipschitz_constant(a: &RMatrix) -> Rational {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(Rational::abs).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Bracket on `lindisc(A)` produced by the box search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    /// Best value witnessed, `lindisc(A, witness_w)`.
    pub lo: Rational,
    /// Certified upper bound on `lindisc(A)`.
    pub hi: Rational,
    pub witness_w: RVector,
    pub eps: Rational,
    /// Boxes evaluated.
    pub nodes: u64,
    pub lipschitz_l: Rational,
    /// False when the node budget stopped the search.
    pub complete: bool,
}

impl Certificate {
    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    pub fn gap(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Parses the single-line `lo=.. hi=.. eps=.. nodes=.. w=..` form.
    pub fn parse_line(line: &str) -> Result<Certificate> {
        let mut lo = None;
        let mut hi = None;
        let mut eps = None;
        let mut nodes = None;
        let mut w = None;
        let mut lipschitz_l = Rational::zero();
        let mut complete = true;
        let bad = |msg: String| Error::Format { line: 1, msg };
        for field in line.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad(format!("expected key=value, got `{field}`")))?;
            match k {
                "lo" => lo = Some(v.parse()?),
                "hi" => hi = Some(v.parse()?),
                "eps" => eps = Some(v.parse()?),
                "nodes" => nodes = Some(v.parse().map_err(|_| bad(format!("bad node count `{v}`")))?),
                "w" => w = Some(RVector::from_compact(v)?),
                "L" => lipschitz_l = v.parse()?,
                "complete" => complete = v == "true",
                _ => {}
            }
        }
        let missing = |k: &str| bad(format!("missing `{k}`"));
        Ok(Certificate {
            lo: lo.ok_or_else(|| missing("lo"))?,
            hi: hi.ok_or_else(|| missing("hi"))?,
            witness_w: w.ok_or_else(|| missing("w"))?,
            eps: eps.ok_or_else(|| missing("eps"))?,
            nodes: nodes.ok_or_else(|| missing("nodes"))?,
            lipschitz_l,
            complete,
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lo={} hi={} eps={} nodes={} w={}",
            self.lo,
            self.hi,
            self.eps,
            self.nodes,
            self.witness_w.to_compact()
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Cell {
    lo: RVector,
    hi: RVector,
}

impl Cell {
    fn unit(n: usize) -> Cell {
        Cell { lo: RVector::zeros(n), hi: RVector::filled(n, Rational::one()) }
    }

    fn center(&self) -> RVector {
        RVector::new(self.lo.iter().zip(self.hi.iter()).map(|(l, h)| (l + h) * Rational::half()).collect())
    }

    fn radius(&self) -> Rational {
        self.lo
            .iter()
            .zip(self.hi.iter())
            .map(|(l, h)| (h - l) * Rational::half())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Halves the longest side; ties go to the lowest axis.
    fn split(&self) -> (Cell, Cell) {
        let mut axis = 0;
        let mut widest = Rational::zero();
        for (j, (l, h)) in self.lo.iter().zip(self.hi.iter()).enumerate() {
            let width = h - l;
            if width > widest {
                widest = width;
                axis = j;
            }
        }
        let mid = (&self.lo[axis] + &self.hi[axis]) * Rational::half();
        let mut left_hi = self.hi.clone().into_entries();
        left_hi[axis] = mid.clone();
        let mut right_lo = self.lo.clone().into_entries();
        right_lo[axis] = mid;
        (
            Cell { lo: self.lo.clone(), hi: RVector::new(left_hi) },
            Cell { lo: RVector::new(right_lo), hi: self.hi.clone() },
        )
    }
}

/// A box waiting in the queue, ordered by upper bound then age.
struct Pending {
    upper: Rational,
    seq: u64,
    cell: Cell,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.cmp(&other.upper).then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Evaluated {
    center: RVector,
    value: Rational,
    upper: Rational,
}

struct BoxSearch<'a> {
    a: &'a RMatrix,
    cfg: &'a SearchConfig,
    lipschitz: Rational,
    nodes: u64,
}

impl<'a> BoxSearch<'a> {
    fn new(a: &'a RMatrix, cfg: &'a SearchConfig, eps: &Rational) -> Result<Self> {
        if eps.is_zero() || eps.is_negative() {
            return Err(Error::Domain(format!("eps must be positive, got {eps}")));
        }
        if a.cols() == 0 {
            return Err(Error::Domain("matrix has no columns".into()));
        }
        if a.cols() > cfg.box_limit {
            return Err(Error::Capacity { what: "column count", size: a.cols(), limit: cfg.box_limit });
        }
        Ok(BoxSearch { a, cfg, lipschitz: lipschitz_constant(a), nodes: 0 })
    }

    fn evaluate(&mut self, cell: &Cell, parent_upper: Option<&Rational>) -> Result<Evaluated> {
        self.nodes += 1;
        let center = cell.center();
        let value = lindisc_at_with(self.a, &center, self.cfg)?.value;
        let mut upper = if self.cfg.interval_bounds {
            box_upper_bound(self.a, &cell.lo, &cell.hi, self.cfg)?.value
        } else {
            &value + &self.lipschitz * cell.radius()
        };
        if let Some(p) = parent_upper {
            if p < &upper {
                upper = p.clone();
            }
        }
        Ok(Evaluated { center, value, upper })
    }
}

pub fn lindisc_global(a: &RMatrix, eps: &Rational) -> Result<Certificate> {
    lindisc_global_with(a, eps, &SearchConfig::default())
}

/// Brackets `lindisc(A)` within `eps` by best-first box subdivision.
///
/// Deterministic: boxes with equal bounds leave the queue in creation order
/// and the witness only moves on a strict improvement.
pub fn lindisc_global_with(a: &RMatrix, eps: &Rational, cfg: &SearchConfig) -> Result<Certificate> {
    let mut search = BoxSearch::new(a, cfg, eps)?;
    let root = Cell::unit(a.cols());
    let first = search.evaluate(&root, None)?;
    let mut lo = first.value;
    let mut witness = first.center;
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Pending { upper: first.upper, seq, cell: root });

    let (hi, complete) = loop {
        let top_upper = match heap.peek() {
            None => break (lo.clone(), true),
            Some(top) => top.upper.clone(),
        };
        let hi = if top_upper > lo { top_upper } else { lo.clone() };
        if &(&hi - &lo) <= eps {
            break (hi, true);
        }
        if search.nodes >= cfg.node_budget {
            break (hi, false);
        }
        let Pending { upper, cell, .. } = heap.pop().unwrap();
        if upper <= lo {
            continue;
        }
        let (left, right) = cell.split();
        for child in [left, right] {
            let ev = search.evaluate(&child, Some(&upper))?;
            if ev.value > lo {
                lo = ev.value;
                witness = ev.center;
            }
            if ev.upper > lo {
                seq += 1;
                heap.push(Pending { upper: ev.upper, seq, cell: child });
            }
        }
    };
    Ok(Certificate {
        lo,
        hi,
        witness_w: witness,
        eps: eps.clone(),
        nodes: search.nodes,
        lipschitz_l: search.lipschitz,
        complete,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UpperVerdict {
    /// Every box was bounded by `threshold + eps`.
    Holds,
    /// The witness point has `lindisc(A, w) > threshold`.
    Exceeds,
    /// Node budget ran out first.
    Indeterminate,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UpperCheck {
    pub verdict: UpperVerdict,
    pub certificate: Certificate,
}

impl UpperCheck {
    pub fn holds(&self) -> bool {
        self.verdict == UpperVerdict::Holds
    }
}

pub fn certify_upper(a: &RMatrix, threshold: &Rational, eps: &Rational) -> Result<UpperCheck> {
    certify_upper_with(a, threshold, eps, &SearchConfig::default())
}

/// Decides `lindisc(A) ≤ threshold + eps` (on `Holds`) or
/// `lindisc(A) > threshold` (on `Exceeds`).
pub fn certify_upper_with(a: &RMatrix, threshold: &Rational, eps: &Rational, cfg: &SearchConfig) -> Result<UpperCheck> {
    let mut search = BoxSearch::new(a, cfg, eps)?;
    let target = threshold + eps;
    let root = Cell::unit(a.cols());
    let first = search.evaluate(&root, None)?;
    let mut lo = first.value.clone();
    let mut witness = first.center.clone();
    let mut pruned_hi = first.value.clone();
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    let mut verdict = None;
    if first.value > *threshold {
        verdict = Some(UpperVerdict::Exceeds);
    } else if first.upper <= target {
        pruned_hi = pruned_hi.max(first.upper);
    } else {
        heap.push(Pending { upper: first.upper, seq, cell: root });
    }

    while verdict.is_none() {
        if heap.is_empty() {
            verdict = Some(UpperVerdict::Holds);
            break;
        }
        if search.nodes >= cfg.node_budget {
            verdict = Some(UpperVerdict::Indeterminate);
            break;
        }
        let Pending { upper, cell, .. } = heap.pop().unwrap();
        let (left, right) = cell.split();
        for child in [left, right] {
            let ev = search.evaluate(&child, Some(&upper))?;
            if ev.value > lo {
                lo = ev.value.clone();
                witness = ev.center.clone();
            }
            if ev.value > *threshold {
                verdict = Some(UpperVerdict::Exceeds);
                break;
            }
            if ev.upper <= target {
                if ev.upper > pruned_hi {
                    pruned_hi = ev.upper;
                }
            } else {
                seq += 1;
                heap.push(Pending { upper: ev.upper, seq, cell: child });
            }
        }
    }
    let verdict = verdict.unwrap();
    let open_hi = heap.peek().map(|p| p.upper.clone());
    let hi = match open_hi {
        Some(h) if h > pruned_hi => h,
        _ => pruned_hi,
    };
    let hi = if hi < lo { lo.clone() } else { hi };
    Ok(UpperCheck {
        verdict,
        certificate: Certificate {
            lo,
            hi,
            witness_w: witness,
            eps: eps.clone(),
            nodes: search.nodes,
            lipschitz_l: search.lipschitz,
            complete: verdict != UpperVerdict::Indeterminate,
        },
    })
}

pub fn grid_oracle(a: &RMatrix, resolution: u32) -> Result<Rational> {
    grid_oracle_with(a, resolution, &SearchConfig::default()).map(|(v, _)| v)
}

/// Maximum of `lindisc(A, ·)` over `{0, 1/r, …, 1}^n`, with the first
/// maximizing grid point (first coordinate varying fastest).
pub fn grid_oracle_with(a: &RMatrix, resolution: u32, cfg: &SearchConfig) -> Result<(Rational, RVector)> {
    if resolution == 0 {
        return Err(Error::Domain("grid resolution must be at least 1".into()));
    }
    let n = a.cols();
    let per_axis = resolution as u64 + 1;
    let points = per_axis.checked_pow(n as u32).filter(|&p| p <= cfg.grid_limit).ok_or(Error::Capacity {
        what: "grid point count",
        size: per_axis.saturating_pow(n as u32).min(usize::MAX as u64) as usize,
        limit: cfg.grid_limit as usize,
    })?;
    let ticks: Vec<Rational> = (0..per_axis).map(|k| Rational::frac(k as i64, resolution as i64)).collect();
    let mut best: Option<(Rational, RVector)> = None;
    for code in 0..points {
        let mut rest = code;
        let w = RVector::new(
            (0..n)
                .map(|_| {
                    let k = rest % per_axis;
                    rest /= per_axis;
                    ticks[k as usize].clone()
                })
                .collect(),
        );
        let v = lindisc_at_with(a, &w, cfg)?.value;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, w));
        }
    }
    Ok(best.expect("grid has at least one point"))
}
