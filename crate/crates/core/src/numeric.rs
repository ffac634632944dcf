//! Exact rational scalars, dense vectors and matrices, and their text formats.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for small literals; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn int(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational::frac(1, 2)
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True when `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q`, or a finite decimal such as `-0.125` without loss.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadRational(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            return Ok(Rational(BigRational::new(p, q)));
        }
        let (negative, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |x: &str| x.bytes().all(|c| c.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
        let numer = if negative { -numer } else { numer };
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Sum<Rational> for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }
}

/// Dense vector of rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RVector(vec![Rational::zero(); dim])
    }

    pub fn filled(dim: usize, value: Rational) -> Self {
        RVector(vec![value; dim])
    }

    /// `e^(i)` with a zero-based index.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = RVector::zeros(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        RVector(bits.iter().map(|&b| Rational::int(b as i64)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn inf_norm(&self) -> Result<Rational> {
        inf_norm(self)
    }

    pub fn checked_sub(&self, other: &RVector) -> Result<RVector> {
        self.check_same_dim(other)?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn checked_add(&self, other: &RVector) -> Result<RVector> {
        self.check_same_dim(other)?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, c: &Rational) -> RVector {
        RVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Entrywise `1 - v`.
    pub fn complement(&self) -> RVector {
        let one = Rational::one();
        RVector(self.0.iter().map(|a| &one - a).collect())
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0.iter().all(Rational::in_unit_interval)
    }

    pub fn concat(parts: &[&RVector]) -> RVector {
        RVector(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }

    /// Binary entries as bits, or `None` if some entry is not 0 or 1.
    pub fn as_bits(&self) -> Option<Vec<u8>> {
        self.0
            .iter()
            .map(|a| {
                if a.is_zero() {
                    Some(0)
                } else if *a == Rational::one() {
                    Some(1)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Comma-separated entries with no spaces, e.g. `1/2,0,1`.
    pub fn to_compact(&self) -> String {
        self.0.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn from_compact(s: &str) -> Result<RVector> {
        if s.trim().is_empty() {
            return Ok(RVector::default());
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(RVector)
    }

    fn check_same_dim(&self, other: &RVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "vector operands",
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_compact())
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "))
    }
}

impl From<Vec<Rational>> for RVector {
    fn from(v: Vec<Rational>) -> Self {
        RVector(v)
    }
}

impl std::ops::Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// Maximum absolute entry.
pub fn inf_norm(v: &RVector) -> Result<Rational> {
    v.0.iter()
        .map(Rational::abs)
        .max()
        .ok_or(Error::EmptyVector)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        RMatrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let m = rows.len();
        let mut entries = Vec::with_capacity(m * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "ragged matrix rows",
                    left: cols,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RMatrix { rows: m, cols, entries })
    }

    /// Convenience for tests and fixed gadgets: integer numerators over a common denominator.
    pub fn from_ints(rows: &[&[i64]], denom: i64) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        RMatrix::from_fn(rows.len(), cols, |i, j| Rational::frac(rows[i][j], denom))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "matrix index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> RMatrix {
        RMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn mat_vec_mul(&self, v: &RVector) -> Result<RVector> {
        mat_vec_mul(self, v)
    }

    /// Writes `block` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &RMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    /// `m n` header followed by one row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<RMatrix> {
        let mut tokens = tokens(text);
        let (rows, cols) = match tokens.next() {
            Some((line, t)) => {
                let m = parse_count(line, t)?;
                let (line2, t2) = tokens.next().ok_or(Error::Format { line, msg: "missing column count".into() })?;
                (m, parse_count(line2, t2)?)
            }
            None => return Err(Error::Format { line: 1, msg: "empty matrix file".into() }),
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let (line, t) = tokens.next().ok_or(Error::Format {
                line: 0,
                msg: format!("expected {} entries, found {}", rows * cols, entries.len()),
            })?;
            entries.push(t.parse::<Rational>().map_err(|e| Error::Format { line, msg: e.to_string() })?);
        }
        if let Some((line, t)) = tokens.next() {
            return Err(Error::Format { line, msg: format!("unexpected trailing token `{t}`") });
        }
        Ok(RMatrix { rows, cols, entries })
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", RVector::new(self.row(i).to_vec()).to_compact())?;
        }
        Ok(())
    }
}

pub fn mat_vec_mul(a: &RMatrix, v: &RVector) -> Result<RVector> {
    if a.cols != v.dim() {
        return Err(Error::DimensionMismatch { context: "matrix columns vs vector", left: a.cols, right: v.dim() });
    }
    let out = (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v.iter())
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect();
    Ok(RVector(out))
}

/// `‖A(w − x)‖∞`.
pub fn residual_norm(a: &RMatrix, w: &RVector, x: &RVector) -> Result<Rational> {
    inf_norm(&mat_vec_mul(a, &w.checked_sub(x)?)?)
}

/// Vector text format: `n` then n rationals.
pub fn parse_vector(text: &str) -> Result<RVector> {
    let mut tokens = tokens(text);
    let n = match tokens.next() {
        Some((line, t)) => parse_count(line, t)?,
        None => return Err(Error::Format { line: 1, msg: "empty vector file".into() }),
    };
    let mut entries = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, t) = tokens.next().ok_or(Error::Format {
            line: 0,
            msg: format!("expected {n} entries, found {}", entries.len()),
        })?;
        entries.push(t.parse::<Rational>().map_err(|e| Error::Format { line, msg: e.to_string() })?);
    }
    if let Some((line, t)) = tokens.next() {
        return Err(Error::Format { line, msg: format!("unexpected trailing token `{t}`") });
    }
    Ok(RVector(entries))
}

pub fn vector_to_text(v: &RVector) -> String {
    let body: Vec<String> = v.iter().map(|a| a.to_string()).collect();
    format!("{}\n{}\n", v.dim(), body.join(" "))
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)))
}

fn parse_count(line: usize, t: &str) -> Result<usize> {
    t.parse::<usize>().map_err(|_| Error::Format { line, msg: format!("expected a count, found `{t}`") })
}

/// Least common multiple of the denominators, as used to clear fractions.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn v(items: &[&str]) -> RVector {
        RVector::new(items.iter().map(|s| r(s)).collect())
    }

    #[test]
    fn parses_decimals_and_fractions_losslessly() {
        assert_eq!(r("1.5"), Rational::frac(3, 2));
        assert_eq!(r("0.5"), Rational::half());
        assert_eq!(r("4/3"), Rational::frac(4, 3));
        assert_eq!(r("-2/-4"), Rational::half());
        assert_eq!(r("-.25"), Rational::frac(-1, 4));
        assert_eq!(r("7"), Rational::int(7));
        assert_eq!(r("6/4").to_string(), "3/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
    }

    #[test]
    fn canonical_form_on_construction() {
        let a = Rational::new(6, -4).unwrap();
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn identity_times_half_vector() {
        let h = v(&["1/2", "1/2", "1/2"]);
        assert_eq!(mat_vec_mul(&RMatrix::identity(3), &h).unwrap(), h);
    }

    #[test]
    fn gadget_first_column() {
        let g = RMatrix::from_ints(&[&[1, 1, -1], &[1, -1, 1], &[-1, 1, 1]], 1);
        let out = mat_vec_mul(&g, &v(&["1", "0", "0"])).unwrap();
        assert_eq!(out, v(&["1", "1", "-1"]));
    }

    #[test]
    fn zero_matrix_product() {
        let out = mat_vec_mul(&RMatrix::zeros(2, 3), &v(&["5", "-1/7", "2"])).unwrap();
        assert_eq!(out, v(&["0", "0"]));
    }

    #[test]
    fn dimension_mismatch_names_both_dims() {
        let err = mat_vec_mul(&RMatrix::zeros(2, 3), &RVector::zeros(4)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('3') && msg.contains('4'), "{msg}");
    }

    #[test]
    fn inf_norm_examples() {
        assert_eq!(inf_norm(&v(&["-3/2", "1/2", "1/2"])).unwrap(), Rational::frac(3, 2));
        assert_eq!(inf_norm(&v(&["0", "0", "0"])).unwrap(), Rational::zero());
        assert_eq!(inf_norm(&v(&["1/3", "-4/3"])).unwrap(), Rational::frac(4, 3));
        assert!(matches!(inf_norm(&RVector::default()), Err(Error::EmptyVector)));
    }

    #[test]
    fn matrix_text_round_trip_with_comments() {
        let text = "# kind=NP\n2 3\n1 -1/3 0.5\n# interior comment\n0 2 -4/6\n";
        let m = RMatrix::parse(text).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.get(0, 2), &Rational::half());
        assert_eq!(m.get(1, 2), &Rational::frac(-2, 3));
        assert_eq!(RMatrix::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn matrix_parse_errors() {
        assert!(RMatrix::parse("").is_err());
        assert!(RMatrix::parse("2 2\n1 2\n3").is_err());
        assert!(RMatrix::parse("1 1\n1 2").is_err());
        let err = RMatrix::parse("1 2\n1 x").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn vector_text_round_trip() {
        let w = v(&["1/2", "0.25", "1"]);
        assert_eq!(parse_vector(&vector_to_text(&w)).unwrap(), w);
        assert_eq!(parse_vector("2\n1\n0.5\n").unwrap(), v(&["1", "1/2"]));
        assert!(parse_vector("3\n1 2").is_err());
    }

    #[test]
    fn compact_vector_format() {
        let w = v(&["1/2", "-3", "0"]);
        assert_eq!(w.to_compact(), "1/2,-3,0");
        assert_eq!(RVector::from_compact("1/2,-3,0").unwrap(), w);
    }
}
