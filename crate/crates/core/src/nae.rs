//! NAE3SAT and NAE∀∃3SAT: formulas, DIMACS/QDIMACS parsing, exhaustive solving.
//!
//! Assignments enumerate as binary counters with `v1` as the least
//! significant bit, so "first satisfying assignment" always means the one
//! with the lowest code.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest variable count the exhaustive solvers accept by default.
pub const EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// `+1` for `v`, `-1` for `¬v`.
    pub fn sign(&self) -> i64 {
        if self.negated {
            -1
        } else {
            1
        }
    }

    pub fn from_dimacs(value: i64) -> Option<Self> {
        match value {
            0 => None,
            v if v > 0 => Some(Literal::pos(v as usize)),
            v => Some(Literal::neg(v.unsigned_abs() as usize)),
        }
    }

    pub fn to_dimacs(self) -> i64 {
        self.sign() * self.var as i64
    }

    pub fn eval(&self, psi: &Assignment) -> u8 {
        psi.value(self.var) ^ self.negated as u8
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬v{}", self.var)
        } else {
            write!(f, "v{}", self.var)
        }
    }
}

/// Exactly three literals; repeats allowed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Clause(pub [Literal; 3]);

impl Clause {
    pub fn new(a: Literal, b: Literal, c: Literal) -> Self {
        Clause([a, b, c])
    }

    /// Pads a 1- or 2-literal clause by repeating its first literal.
    pub fn normalized(lits: &[Literal]) -> Option<Self> {
        match *lits {
            [a] => Some(Clause([a, a, a])),
            [a, b] => Some(Clause([a, a, b])),
            [a, b, c] => Some(Clause([a, b, c])),
            _ => None,
        }
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.0
    }

    pub fn is_nae(&self, psi: &Assignment) -> bool {
        let [a, b, c] = self.0.map(|l| l.eval(psi));
        !(a == b && b == c)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a}, {b}, {c})")
    }
}

/// `n=3 {(v1, ¬v2, v3) (v2, v2, v3)}`; the empty formula prints `n=3 {}`.
impl fmt::Display for NaeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// A 3CNF formula over `v1..vn` read with not-all-equal semantics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NaeFormula {
    n: usize,
    clauses: Vec<Clause>,
}

impl NaeFormula {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            for l in c.literals() {
                if l.var == 0 || l.var > n {
                    return Err(Error::Domain(format!("literal {l} out of range for {n} variables")));
                }
            }
        }
        Ok(NaeFormula { n, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    fn packed(&self) -> Vec<[(u32, u64); 3]> {
        self.clauses
            .iter()
            .map(|c| c.0.map(|l| ((l.var - 1) as u32, l.negated as u64)))
            .collect()
    }
}

/// Bit-packed evaluator over assignment codes.
struct PackedFormula(Vec<[(u32, u64); 3]>);

impl PackedFormula {
    fn new(f: &NaeFormula) -> Self {
        PackedFormula(f.packed())
    }

    #[inline]
    fn is_nae(&self, code: u64) -> bool {
        self.0.iter().all(|c| {
            let a = ((code >> c[0].0) & 1) ^ c[0].1;
            let b = ((code >> c[1].0) & 1) ^ c[1].1;
            let d = ((code >> c[2].0) & 1) ^ c[2].1;
            !(a == b && b == d)
        })
    }
}

/// A formula whose first `n_universal` variables are universally quantified
/// and the rest existentially.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuantifiedNaeFormula {
    n_universal: usize,
    formula: NaeFormula,
}

impl QuantifiedNaeFormula {
    pub fn new(n_universal: usize, formula: NaeFormula) -> Result<Self> {
        if n_universal > formula.num_vars() {
            return Err(Error::Domain(format!(
                "{n_universal} universal variables but only {} in total",
                formula.num_vars()
            )));
        }
        Ok(QuantifiedNaeFormula { n_universal, formula })
    }

    pub fn unquantified(formula: NaeFormula) -> Self {
        QuantifiedNaeFormula { n_universal: 0, formula }
    }

    pub fn n_universal(&self) -> usize {
        self.n_universal
    }

    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn formula(&self) -> &NaeFormula {
        &self.formula
    }

    /// DIMACS text with QDIMACS-style quantifier lines when `n' > 0`.
    pub fn to_dimacs(&self) -> String {
        let n = self.num_vars();
        let mut out = format!("p cnf {} {}\n", n, self.formula.num_clauses());
        if self.n_universal > 0 {
            let vars: Vec<String> = (1..=self.n_universal).map(|v| v.to_string()).collect();
            out.push_str(&format!("a {} 0\n", vars.join(" ")));
            if n > self.n_universal {
                let vars: Vec<String> = (self.n_universal + 1..=n).map(|v| v.to_string()).collect();
                out.push_str(&format!("e {} 0\n", vars.join(" ")));
            }
        }
        for c in self.formula.clauses() {
            let lits: Vec<String> = c.0.iter().map(|l| l.to_dimacs().to_string()).collect();
            out.push_str(&format!("{} 0\n", lits.join(" ")));
        }
        out
    }
}

/// Total map from `v1..vn` to {0, 1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<u8>);

impl Assignment {
    /// Panics if a value is not 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "assignment values must be 0 or 1");
        Assignment(bits)
    }

    /// `v1` takes bit 0 of `code`.
    pub fn from_code(code: u64, n: usize) -> Self {
        Assignment((0..n).map(|i| ((code >> i) & 1) as u8).collect())
    }

    pub fn code(&self) -> u64 {
        self.0.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> u8 {
        self.0[var - 1]
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn complement(&self) -> Self {
        Assignment(self.0.iter().map(|b| 1 - b).collect())
    }

    /// `self` on the first variables followed by `rest`.
    pub fn concat(&self, rest: &Assignment) -> Self {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&rest.0);
        Assignment(bits)
    }

    pub fn prefix(&self, k: usize) -> Self {
        Assignment(self.0[..k].to_vec())
    }

    pub fn suffix_from(&self, k: usize) -> Self {
        Assignment(self.0[k..].to_vec())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn eval_nae(f: &NaeFormula, psi: &Assignment) -> Result<bool> {
    if psi.len() < f.num_vars() {
        return Err(Error::PartialAssignment { expected: f.num_vars(), got: psi.len() });
    }
    Ok(f.clauses().iter().all(|c| c.is_nae(psi)))
}

pub fn solve_nae(f: &NaeFormula) -> Result<Option<Assignment>> {
    solve_nae_with_limit(f, EXHAUSTIVE_LIMIT)
}

/// Lowest-code NAE-satisfying assignment, if any.
pub fn solve_nae_with_limit(f: &NaeFormula, limit: usize) -> Result<Option<Assignment>> {
    let n = f.num_vars();
    if n > limit || n >= 64 {
        return Err(Error::Capacity { what: "variable count", size: n, limit });
    }
    let packed = PackedFormula::new(f);
    Ok(first_satisfying(&packed, 0, 0, n).map(|code| Assignment::from_code(code, n)))
}

/// First code `c < 2^free_bits` (in increasing order) such that
/// `fixed | (c << shift)` satisfies the formula; returns the full code.
fn first_satisfying(packed: &PackedFormula, fixed: u64, shift: usize, free_bits: usize) -> Option<u64> {
    let total = 1u64 << free_bits;
    let full = |c: u64| fixed | (c << shift);
    if free_bits < 14 {
        (0..total).map(full).find(|&code| packed.is_nae(code))
    } else {
        (0..total).into_par_iter().map(full).find_first(|&code| packed.is_nae(code))
    }
}

/// Outcome of deciding `∀ V_A ∃ V_E φ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ForallExists {
    /// `table[k]` pairs the universal assignment with code `k` with its
    /// lowest-code existential witness.
    Yes { table: Vec<(Assignment, Assignment)> },
    /// A universal assignment with no existential completion.
    No { counterexample: Assignment },
}

impl ForallExists {
    pub fn is_yes(&self) -> bool {
        matches!(self, ForallExists::Yes { .. })
    }

    pub fn witness_for(&self, psi_a: &Assignment) -> Option<&Assignment> {
        match self {
            ForallExists::Yes { table } => table.get(psi_a.code() as usize).map(|(_, e)| e),
            ForallExists::No { .. } => None,
        }
    }
}

pub fn solve_forall_exists(qf: &QuantifiedNaeFormula) -> Result<ForallExists> {
    solve_forall_exists_with_limit(qf, EXHAUSTIVE_LIMIT)
}

/// Universal assignments are scanned in increasing code order; the first
/// without an existential completion is the counterexample.
pub fn solve_forall_exists_with_limit(qf: &QuantifiedNaeFormula, limit: usize) -> Result<ForallExists> {
    let n = qf.num_vars();
    let nu = qf.n_universal();
    if n > limit || n >= 64 {
        return Err(Error::Capacity { what: "variable count", size: n, limit });
    }
    let packed = PackedFormula::new(qf.formula());
    let mut table = Vec::with_capacity(1 << nu);
    for a in 0..(1u64 << nu) {
        let psi_a = Assignment::from_code(a, nu);
        match first_satisfying(&packed, a, nu, n - nu) {
            Some(code) => table.push((psi_a, Assignment::from_code(code >> nu, n - nu))),
            None => return Ok(ForallExists::No { counterexample: psi_a }),
        }
    }
    Ok(ForallExists::Yes { table })
}

/// Parses DIMACS CNF with optional `a ... 0` / `e ... 0` quantifier lines.
///
/// Clauses shorter than three literals are padded by repeating the first
/// literal. The universal block, when present, must be exactly `1..=n'` and
/// must precede any `e` line.
pub fn parse_formula(text: &str) -> Result<QuantifiedNaeFormula> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut n_universal = 0usize;
    let mut seen_a = false;
    let mut seen_e = false;
    let mut existential: Vec<usize> = Vec::new();
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let first = toks.next().unwrap();
        if first == "p" {
            if header.is_some() {
                return Err(err(line_no, "duplicate header".into()));
            }
            let rest: Vec<&str> = toks.collect();
            if rest.len() != 3 || rest[0] != "cnf" {
                return Err(err(line_no, "malformed header, expected `p cnf <vars> <clauses>`".into()));
            }
            let n = rest[1].parse().map_err(|_| err(line_no, format!("bad variable count `{}`", rest[1])))?;
            let m = rest[2].parse().map_err(|_| err(line_no, format!("bad clause count `{}`", rest[2])))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| err(line_no, "content before `p cnf` header".into()))?;
        if first == "a" || first == "e" {
            if !clauses.is_empty() || !current.is_empty() {
                return Err(err(line_no, "quantifier line after clauses".into()));
            }
            let vars = parse_var_list(toks, line_no, n)?;
            if first == "a" {
                if seen_a {
                    return Err(err(line_no, "more than one universal block".into()));
                }
                if seen_e {
                    return Err(err(line_no, "universal block must come before existential block".into()));
                }
                if vars.iter().enumerate().any(|(i, &v)| v != i + 1) {
                    return Err(err(line_no, "universal variables must be exactly v1..vn' in order".into()));
                }
                seen_a = true;
                n_universal = vars.len();
            } else {
                if vars.iter().any(|&v| v <= n_universal || existential.contains(&v)) {
                    return Err(err(line_no, "existential variable repeated or universal".into()));
                }
                seen_e = true;
                existential.extend(vars);
            }
            continue;
        }
        for tok in line.split_whitespace() {
            let value: i64 = tok.parse().map_err(|_| err(line_no, format!("bad literal `{tok}`")))?;
            if current.is_empty() {
                clause_line = line_no;
            }
            match Literal::from_dimacs(value) {
                None => {
                    let clause = Clause::normalized(&current).ok_or_else(|| {
                        if current.is_empty() {
                            err(line_no, "empty clause".into())
                        } else {
                            err(clause_line, format!("clause has {} literals, at most 3 allowed", current.len()))
                        }
                    })?;
                    clauses.push(clause);
                    current.clear();
                }
                Some(lit) => {
                    if lit.var > n {
                        return Err(err(line_no, format!("variable {} out of range 1..={n}", lit.var)));
                    }
                    current.push(lit);
                }
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(1, "missing `p cnf` header".into()))?;
    if !current.is_empty() {
        return Err(err(clause_line, "clause not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(err(0, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    let formula = NaeFormula::new(n, clauses)?;
    QuantifiedNaeFormula::new(n_universal, formula)
}

fn parse_var_list<'a>(toks: impl Iterator<Item = &'a str>, line: usize, n: usize) -> Result<Vec<usize>> {
    let mut vars = Vec::new();
    let mut terminated = false;
    for tok in toks {
        if terminated {
            return Err(Error::Parse { line, msg: "tokens after terminating 0".into() });
        }
        let v: usize = tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad variable `{tok}`") })?;
        if v == 0 {
            terminated = true;
        } else if v > n {
            return Err(Error::Parse { line, msg: format!("variable {v} out of range 1..={n}") });
        } else {
            vars.push(v);
        }
    }
    if !terminated {
        return Err(Error::Parse { line, msg: "quantifier line not terminated by 0".into() });
    }
    Ok(vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn formula(n: usize, clauses: &[[i64; 3]]) -> NaeFormula {
        let cs = clauses
            .iter()
            .map(|c| Clause(c.map(|v| Literal::from_dimacs(v).unwrap())))
            .collect();
        NaeFormula::new(n, cs).unwrap()
    }

    fn bits(b: &[u8]) -> Assignment {
        Assignment::from_bits(b.to_vec())
    }

    #[test]
    fn parses_plain_dimacs() {
        let qf = parse_formula("p cnf 3 1\n1 -2 3 0").unwrap();
        assert_eq!(qf.num_vars(), 3);
        assert_eq!(qf.n_universal(), 0);
        assert_eq!(qf.formula().clauses(), &[Clause::new(Literal::pos(1), Literal::neg(2), Literal::pos(3))]);
    }

    #[test]
    fn parses_quantifier_lines() {
        let qf = parse_formula("p cnf 2 1\na 1 0\ne 2 0\n1 1 2 0").unwrap();
        assert_eq!(qf.n_universal(), 1);
        assert_eq!(qf.formula().clauses()[0], Clause::new(Literal::pos(1), Literal::pos(1), Literal::pos(2)));
    }

    #[test]
    fn short_clause_replicates_first_literal() {
        let qf = parse_formula("p cnf 2 1\n1 2 0").unwrap();
        let c = qf.formula().clauses()[0];
        assert_eq!(c, Clause::new(Literal::pos(1), Literal::pos(1), Literal::pos(2)));
        // Re-serialized, the clause carries exactly three literals.
        let text = qf.to_dimacs();
        let clause_line = text.lines().last().unwrap();
        assert_eq!(clause_line.split_whitespace().filter(|t| *t != "0").count(), 3);
        let single = parse_formula("p cnf 1 1\n-1 0").unwrap();
        assert_eq!(single.formula().clauses()[0], Clause([Literal::neg(1); 3]));
    }

    #[test]
    fn clauses_may_span_lines_and_share_lines() {
        let qf = parse_formula("c comment\np cnf 3 2\n1 -2\n3 0 2 3 0\n").unwrap();
        assert_eq!(qf.formula().num_clauses(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_formula("p cnf 2 1\n1 5 0").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "variable 5 out of range 1..=2".into() });
        assert!(matches!(parse_formula("p cnf 2 1\n0"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_formula("p dnf 2 1\n1 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_formula("p cnf x 1\n1 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_formula("1 2 3 0"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_formula("p cnf 4 1\n1 2 3 4 0").is_err());
        assert!(parse_formula("p cnf 2 2\n1 2 0").is_err());
        assert!(parse_formula("p cnf 2 1\n1 2").is_err());
    }

    #[test]
    fn rejects_interleaved_quantifiers() {
        assert!(parse_formula("p cnf 3 1\ne 3 0\na 1 2 0\n1 2 3 0").is_err());
        assert!(parse_formula("p cnf 3 1\na 2 0\n1 2 3 0").is_err());
        assert!(parse_formula("p cnf 3 1\na 1 0\na 2 0\n1 2 3 0").is_err());
        assert!(parse_formula("p cnf 3 1\na 1 0\ne 1 0\n1 2 3 0").is_err());
        assert!(parse_formula("p cnf 3 1\na 1 2 0\ne 3 0\n1 2 3 0").is_ok());
    }

    #[test]
    fn eval_examples() {
        assert!(!eval_nae(&formula(3, &[[1, 2, 3]]), &bits(&[1, 1, 1])).unwrap());
        assert!(eval_nae(&formula(3, &[[1, -2, 3]]), &bits(&[1, 1, 0])).unwrap());
        for code in 0..2 {
            assert!(!eval_nae(&formula(1, &[[1, 1, 1]]), &Assignment::from_code(code, 1)).unwrap());
        }
        // x and ¬x in one clause: always not-all-equal.
        for code in 0..4 {
            assert!(eval_nae(&formula(2, &[[1, -1, 2]]), &Assignment::from_code(code, 2)).unwrap());
        }
    }

    #[test]
    fn eval_rejects_partial_assignment() {
        let f = formula(3, &[[1, 2, 3]]);
        assert_eq!(eval_nae(&f, &bits(&[1, 0])), Err(Error::PartialAssignment { expected: 3, got: 2 }));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_nae(&formula(3, &[[1, 2, 3]])).unwrap(), Some(bits(&[1, 0, 0])));
        assert_eq!(solve_nae(&formula(1, &[[1, 1, 1]])).unwrap(), None);
        // Code 0 already satisfies (v1, ¬v2, v3): literal values (0, 1, 0).
        assert_eq!(solve_nae(&formula(3, &[[1, -2, 3]])).unwrap(), Some(bits(&[0, 0, 0])));
    }

    #[test]
    fn solve_capacity_error() {
        let f = formula(25, &[[1, 2, 25]]);
        assert!(matches!(solve_nae(&f), Err(Error::Capacity { size: 25, limit: 24, .. })));
        assert!(solve_nae_with_limit(&f, 30).unwrap().is_some());
    }

    #[test]
    fn parallel_and_sequential_enumeration_agree() {
        // 16 variables takes the parallel path; chain clauses force alternation.
        let clauses: Vec<[i64; 3]> = (1..16).map(|i| [i, i, i + 1]).collect();
        let f = formula(16, &clauses);
        let got = solve_nae(&f).unwrap().unwrap();
        let expect = (0u64..1 << 16)
            .map(|c| Assignment::from_code(c, 16))
            .find(|a| eval_nae(&f, a).unwrap())
            .unwrap();
        assert_eq!(got, expect);
        assert_eq!(got.bits()[..4], [1, 0, 1, 0]);
    }

    #[test]
    fn forall_exists_yes_table() {
        let qf = QuantifiedNaeFormula::new(1, formula(2, &[[1, 1, 2]])).unwrap();
        let verdict = solve_forall_exists(&qf).unwrap();
        assert_eq!(
            verdict,
            ForallExists::Yes { table: vec![(bits(&[0]), bits(&[1])), (bits(&[1]), bits(&[0]))] }
        );
        assert_eq!(verdict.witness_for(&bits(&[1])), Some(&bits(&[0])));
    }

    #[test]
    fn forall_exists_no() {
        let qf = QuantifiedNaeFormula::new(1, formula(1, &[[1, 1, 1]])).unwrap();
        assert_eq!(solve_forall_exists(&qf).unwrap(), ForallExists::No { counterexample: bits(&[0]) });
    }

    #[test]
    fn forall_exists_without_universals_matches_solve_nae() {
        for clauses in [vec![[1, 2, 3]], vec![[1, 1, 1]], vec![[1, -2, 3], [2, 2, 3]]] {
            let f = formula(3, &clauses);
            let qf = QuantifiedNaeFormula::unquantified(f.clone());
            match (solve_forall_exists(&qf).unwrap(), solve_nae(&f).unwrap()) {
                (ForallExists::Yes { table }, Some(psi)) => {
                    assert_eq!(table.len(), 1);
                    assert_eq!(table[0].1, psi);
                }
                (ForallExists::No { counterexample }, None) => assert!(counterexample.is_empty()),
                other => panic!("verdicts disagree: {other:?}"),
            }
        }
    }

    #[test]
    fn universal_dependency_detected() {
        // ∀v1 ∃v2: (v1, v1, ¬v2) ∧ (v1, v1, v2) forces v2 = ¬v1 and v2 = v1.
        let qf = QuantifiedNaeFormula::new(1, formula(2, &[[1, 1, -2], [1, 1, 2]])).unwrap();
        assert!(!solve_forall_exists(&qf).unwrap().is_yes());
    }

    #[test]
    fn assignment_codes() {
        let a = Assignment::from_code(0b101, 3);
        assert_eq!(a.bits(), &[1, 0, 1]);
        assert_eq!(a.code(), 5);
        assert_eq!(a.value(3), 1);
        assert_eq!(a.complement().bits(), &[0, 1, 0]);
        assert_eq!(a.prefix(1).concat(&a.suffix_from(1)), a);
    }
}
