#![allow(dead_code)]

use lindisc_core::{Clause, Literal, NaeFormula, RMatrix, RVector, Rational};
use rand::Rng;

/// Every 3-literal clause over `v1..vn` as a sorted multiset.
pub fn all_clauses(n: usize) -> Vec<Clause> {
    let lits: Vec<Literal> = (1..=n).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect();
    let mut out = Vec::new();
    for i in 0..lits.len() {
        for j in i..lits.len() {
            for k in j..lits.len() {
                out.push(Clause::new(lits[i], lits[j], lits[k]));
            }
        }
    }
    out
}

fn canonical(clauses: &[Clause]) -> Vec<Clause> {
    let mut cs: Vec<Clause> = clauses
        .iter()
        .map(|c| {
            let mut l = c.0;
            l.sort();
            Clause(l)
        })
        .collect();
    cs.sort();
    cs
}

fn flip(clauses: &[Clause], mask: u32) -> Vec<Clause> {
    clauses
        .iter()
        .map(|c| {
            Clause(c.0.map(|l| Literal { var: l.var, negated: l.negated ^ ((mask >> (l.var - 1)) & 1 == 1) }))
        })
        .collect()
}

/// All formulas over exactly `n` variables with at most `max_m` clauses
/// (clause multisets), one representative per orbit of per-variable sign
/// flips.
pub fn formulas_up_to_sign(n: usize, max_m: usize) -> Vec<NaeFormula> {
    let clauses = all_clauses(n);
    let mut combos: Vec<Vec<Clause>> = vec![vec![]];
    let mut frontier: Vec<(Vec<Clause>, usize)> = vec![(vec![], 0)];
    for _ in 0..max_m {
        let mut next = Vec::new();
        for (combo, start) in &frontier {
            for (idx, c) in clauses.iter().enumerate().skip(*start) {
                let mut grown = combo.clone();
                grown.push(*c);
                combos.push(grown.clone());
                next.push((grown, idx));
            }
        }
        frontier = next;
    }
    combos
        .into_iter()
        .filter(|cs| {
            let own = canonical(cs);
            (0..1u32 << n).all(|mask| canonical(&flip(cs, mask)) >= own)
        })
        .map(|cs| NaeFormula::new(n, cs).unwrap())
        .collect()
}

/// Brute-force `min_x ‖A(w − x)‖∞` over all 2^n binary `x`, lowest code first.
pub fn naive_lindisc_at(a: &RMatrix, w: &RVector) -> (Rational, Vec<u8>) {
    let n = a.cols();
    let mut best: Option<(Rational, Vec<u8>)> = None;
    for code in 0u32..(1 << n) {
        let bits: Vec<u8> = (0..n).map(|i| ((code >> i) & 1) as u8).collect();
        let x = RVector::from_bits(&bits);
        let mut worst = Rational::zero();
        for i in 0..a.rows() {
            let mut s = Rational::zero();
            for j in 0..n {
                s = s + a.get(i, j) * &(&w[j] - &x[j]);
            }
            if s.abs() > worst {
                worst = s.abs();
            }
        }
        if best.as_ref().is_none_or(|(b, _)| worst < *b) {
            best = Some((worst, bits));
        }
    }
    best.unwrap()
}

/// Random rational in [0, 1] with a small random denominator.
pub fn random_unit_rational(rng: &mut impl Rng) -> Rational {
    let d = rng.gen_range(1..=12i64);
    Rational::frac(rng.gen_range(0..=d), d)
}

pub fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> RVector {
    RVector::new((0..dim).map(|_| random_unit_rational(rng)).collect())
}

pub fn random_bits(rng: &mut impl Rng, dim: usize) -> Vec<u8> {
    (0..dim).map(|_| rng.gen_range(0..=1u8)).collect()
}

/// Assembles the NP block matrix entry by entry from the block display.
pub fn assemble_np(f: &NaeFormula) -> RMatrix {
    let n = f.num_vars();
    let m = f.num_clauses();
    let signs = [[1, 1, -1], [1, -1, 1], [-1, 1, 1]];
    RMatrix::from_fn(m + 3 * n, 3 * n, |row, col| {
        let (copy, var) = (col / n, col % n);
        if row < m {
            let coeff: i64 = f.clauses()[row].0.iter().filter(|l| l.var == var + 1).map(|l| l.sign()).sum();
            Rational::frac(coeff, 3)
        } else {
            let (block, i) = ((row - m) / n, (row - m) % n);
            if i == var {
                Rational::int(signs[block][copy])
            } else {
                Rational::zero()
            }
        }
    })
}

/// Assembles the Π₂ block matrix entry by entry.
pub fn assemble_pi2(f: &NaeFormula, n_prime: usize) -> RMatrix {
    let n = f.num_vars();
    let m = f.num_clauses();
    let top = assemble_np(f);
    RMatrix::from_fn(m + 3 * n + 2 * n_prime, 3 * n + n_prime, |row, col| {
        if row < m + 3 * n {
            if col < 3 * n {
                top.get(row, col).clone()
            } else {
                Rational::zero()
            }
        } else if row < m + 3 * n + n_prime {
            let i = row - m - 3 * n;
            if col < 3 * n && col % n == i {
                Rational::frac(2, 3)
            } else if col == 3 * n + i {
                Rational::int(-2)
            } else {
                Rational::zero()
            }
        } else {
            let i = row - m - 3 * n - n_prime;
            if col == 3 * n + i {
                Rational::frac(8, 3)
            } else {
                Rational::zero()
            }
        }
    })
}
