//! The 3×3 gadget `G` that ties three column copies of a variable together.
//!
//! At `u = ½·1` only the constant roundings `z ∈ {0, 1}` keep
//! `‖G(u − z)‖∞` below 3/2. Everywhere else in the cube a rounding with norm
//! at most 4/3 exists whose coordinate-sum deviation has a prescribed sign.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{inf_norm, mat_vec_mul, RMatrix, RVector, Rational};

pub fn gadget_matrix() -> RMatrix {
    RMatrix::from_ints(&[&[1, 1, -1], &[1, -1, 1], &[-1, 1, 1]], 1)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(b: i64) -> Result<Self> {
        match b {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Domain(format!("sign must be +1 or -1, got {b}"))),
        }
    }

    /// The sign `1 − 2ψ(v)` steering a variable's copies.
    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Which rule fired on the sorted, sign-normalized input.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GadgetCase {
    /// `Σu ≥ 2`: round the two largest up.
    I,
    /// `Σu < 2` and `−u₁ + u₂ + u₃ ≤ 4/3`: round everything down.
    II,
    /// `Σu < 2` and `−u₁ + u₂ + u₃ > 4/3`: round the largest up.
    III,
}

impl fmt::Display for GadgetCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetCase::I => "I",
            GadgetCase::II => "II",
            GadgetCase::III => "III",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetRounding {
    pub u: [Rational; 3],
    pub sign: Sign,
    pub z: [u8; 3],
    pub case: GadgetCase,
    /// `sorted[k] = u'[permutation[k]]`, where `u'` is `u` for `+1` and
    /// `1 − u` for `−1`.
    pub permutation: [usize; 3],
    /// `G(u − z)`.
    pub residual: RVector,
    /// `‖G(u − z)‖∞`, at most 4/3.
    pub g_norm: Rational,
    /// `1ᵀ(u − z)`; agrees in sign with `b` and has magnitude at most 2.
    pub sum_dev: Rational,
}

impl GadgetRounding {
    pub fn z_vector(&self) -> RVector {
        RVector::from_bits(&self.z)
    }

    /// Checks all three completeness bullets exactly.
    pub fn satisfies_bounds(&self) -> bool {
        let signed = Rational::int(self.sign.as_i64()) * &self.sum_dev;
        self.g_norm <= Rational::frac(4, 3) && !signed.is_negative() && self.sum_dev.abs() <= Rational::int(2)
    }
}

/// Rounds `u ∈ [0,1]³` to `z ∈ {0,1}³` with `‖G(u − z)‖∞ ≤ 4/3`,
/// `b·1ᵀ(u − z) ≥ 0` and `|1ᵀ(u − z)| ≤ 2`.
///
/// `b = −1` reduces to `b = +1` through `(u, −1) ↦ (1 − u, +1)`, `z ↦ 1 − z`.
/// Ties in the sort keep the original coordinate order.
pub fn round_gadget(u: &[Rational; 3], sign: Sign) -> Result<GadgetRounding> {
    if let Some(bad) = u.iter().find(|x| !x.in_unit_interval()) {
        return Err(Error::Domain(format!("gadget input {bad} outside [0, 1]")));
    }
    let one = Rational::one();
    let normalized: [Rational; 3] = match sign {
        Sign::Plus => u.clone(),
        Sign::Minus => u.clone().map(|x| &one - &x),
    };
    let (case, z_plus, permutation) = round_positive(&normalized);
    let z = match sign {
        Sign::Plus => z_plus,
        Sign::Minus => z_plus.map(|b| 1 - b),
    };

    let u_vec = RVector::new(u.to_vec());
    let diff = u_vec.checked_sub(&RVector::from_bits(&z))?;
    let residual = mat_vec_mul(&gadget_matrix(), &diff)?;
    let g_norm = inf_norm(&residual)?;
    let sum_dev: Rational = diff.iter().sum();
    let out = GadgetRounding { u: u.clone(), sign, z, case, permutation, residual, g_norm, sum_dev };
    debug_assert!(out.satisfies_bounds(), "gadget bounds violated: {out:?}");
    Ok(out)
}

fn round_positive(u: &[Rational; 3]) -> (GadgetCase, [u8; 3], [usize; 3]) {
    let mut permutation = [0, 1, 2];
    permutation.sort_by(|&a, &b| u[a].cmp(&u[b]));
    let [s1, s2, s3] = permutation.map(|i| &u[i]);

    let total = s1 + s2 + s3;
    let skew = &(s2 + s3) - s1;
    let (case, sorted_z) = if total >= Rational::int(2) {
        (GadgetCase::I, [0, 1, 1])
    } else if skew <= Rational::frac(4, 3) {
        (GadgetCase::II, [0, 0, 0])
    } else {
        (GadgetCase::III, [0, 0, 1])
    };
    let mut z = [0u8; 3];
    for (k, &i) in permutation.iter().enumerate() {
        z[i] = sorted_z[k];
    }
    (case, z, permutation)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoundnessEntry {
    pub z: [u8; 3],
    /// `G(½·1 − z)`.
    pub residual: RVector,
    pub norm: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoundnessReport {
    /// All eight binary `z`, in code order with `z₁` least significant.
    pub entries: Vec<SoundnessEntry>,
    pub min_nonconstant: Rational,
    pub holds: bool,
}

/// Evaluates `‖G(½·1 − z)‖∞` for every binary `z`.
pub fn check_gadget_soundness() -> SoundnessReport {
    let g = gadget_matrix();
    let half = RVector::filled(3, Rational::half());
    let entries: Vec<SoundnessEntry> = (0u8..8)
        .map(|code| {
            let z = [code & 1, (code >> 1) & 1, (code >> 2) & 1];
            let residual = mat_vec_mul(&g, &half.checked_sub(&RVector::from_bits(&z)).unwrap()).unwrap();
            let norm = inf_norm(&residual).unwrap();
            SoundnessEntry { z, residual, norm }
        })
        .collect();
    let is_constant = |z: &[u8; 3]| z[0] == z[1] && z[1] == z[2];
    let min_nonconstant = entries
        .iter()
        .filter(|e| !is_constant(&e.z))
        .map(|e| e.norm.clone())
        .min()
        .unwrap();
    let holds = entries.iter().all(|e| {
        if is_constant(&e.z) {
            e.norm == Rational::half()
        } else {
            e.norm >= Rational::frac(3, 2)
        }
    });
    SoundnessReport { entries, min_nonconstant, holds }
}
