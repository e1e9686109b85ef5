//! 4×4 complex matrices on ℂ²⊗ℂ², the braid equation, the Yang–Baxter
//! correspondence C = RΣ, and the four-entry catalog of unitary solutions.
//!
//! Basis order of ℂ²⊗ℂ² is fixed as (00, 01, 10, 11): e₀⊗e₀ first, matching
//! the convention that e₀₀ ↦ q·e₀₀ under the third catalog entry. The phase
//! parameter is supplied as an angle θ with q = exp(iθ), so |q| = 1 by
//! construction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::CMatrix;
use crate::{tol, Error, Result};

/// The four catalog entries of unitary braid-equation solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogTag {
    /// Anti-diagonal/diagonal involution: C² = 1, the representation factors
    /// through S_N; invariant dimension 2^N.
    Ex1,
    /// Off-diagonal q pair: C² ≠ 1; invariant dimension 2 for every N.
    Ex2,
    /// Phase-deformed swap: C² ≠ 1; invariant dimension N+1.
    Ex3,
    /// Diagonal-q anti-diagonal: C² ≠ 1; invariant dimension 0 for N ≥ 3.
    Ex4,
}

impl CatalogTag {
    pub const ALL: [CatalogTag; 4] = [
        CatalogTag::Ex1,
        CatalogTag::Ex2,
        CatalogTag::Ex3,
        CatalogTag::Ex4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogTag::Ex1 => "ex1",
            CatalogTag::Ex2 => "ex2",
            CatalogTag::Ex3 => "ex3",
            CatalogTag::Ex4 => "ex4",
        }
    }

    /// Whether q² = 1 must be excluded for this entry.
    pub fn requires_nondegenerate_phase(self) -> bool {
        !matches!(self, CatalogTag::Ex1)
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ex1" => Some(CatalogTag::Ex1),
            "ex2" => Some(CatalogTag::Ex2),
            "ex3" => Some(CatalogTag::Ex3),
            "ex4" => Some(CatalogTag::Ex4),
            _ => None,
        }
    }
}

/// Sign parameter ε = ±1 used by the first catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Epsilon {
    #[default]
    Plus,
    Minus,
}

impl Epsilon {
    pub fn value(self) -> f64 {
        match self {
            Epsilon::Plus => 1.0,
            Epsilon::Minus => -1.0,
        }
    }

    pub fn from_i8(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Epsilon::Plus),
            -1 => Ok(Epsilon::Minus),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

/// Catalog provenance attached to constructed matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Provenance {
    pub tag: CatalogTag,
    pub theta: f64,
    pub epsilon: Epsilon,
}

/// A 4×4 complex matrix acting on ℂ²⊗ℂ², with optional catalog provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireMatrix", into = "WireMatrix")]
pub struct RMatrix {
    entries: [[Complex64; 4]; 4],
    provenance: Option<Provenance>,
}

#[derive(Serialize, Deserialize)]
struct WireMatrix {
    entries: [[(f64, f64); 4]; 4],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tag: Option<CatalogTag>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    epsilon: Option<i8>,
}

impl TryFrom<WireMatrix> for RMatrix {
    type Error = Error;
    fn try_from(w: WireMatrix) -> Result<Self> {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (row, wrow) in entries.iter_mut().zip(&w.entries) {
            for (e, &(re, im)) in row.iter_mut().zip(wrow) {
                *e = Complex64::new(re, im);
            }
        }
        let provenance = match w.tag {
            Some(tag) => Some(Provenance {
                tag,
                theta: w.theta.unwrap_or(0.0),
                epsilon: Epsilon::from_i8(w.epsilon.unwrap_or(1))?,
            }),
            None => None,
        };
        Ok(RMatrix {
            entries,
            provenance,
        })
    }
}

impl From<RMatrix> for WireMatrix {
    fn from(m: RMatrix) -> Self {
        let mut entries = [[(0.0, 0.0); 4]; 4];
        for (row, mrow) in entries.iter_mut().zip(&m.entries) {
            for (e, v) in row.iter_mut().zip(mrow) {
                *e = (v.re, v.im);
            }
        }
        WireMatrix {
            entries,
            tag: m.provenance.map(|p| p.tag),
            theta: m.provenance.map(|p| p.theta),
            epsilon: m.provenance.map(|p| p.epsilon.as_i8()),
        }
    }
}

/// Report from a residual check.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub frobenius_residual: f64,
    pub tolerance: f64,
    pub passes: bool,
}

impl ResidualReport {
    pub fn new(frobenius_residual: f64, tolerance: f64) -> Self {
        Self {
            frobenius_residual,
            tolerance,
            passes: frobenius_residual <= tolerance,
        }
    }
}

impl RMatrix {
    pub fn from_entries(entries: [[Complex64; 4]; 4]) -> Self {
        Self {
            entries,
            provenance: None,
        }
    }

    pub fn identity() -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Complex64::new(1.0, 0.0);
        }
        Self::from_entries(entries)
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r][c]
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(4, 4, |r, c| self.entries[r][c])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = (0..4)
                    .map(|k| self.entries[r][k] * other.entries[k][c])
                    .sum();
            }
        }
        Self::from_entries(entries)
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = self.entries[c][r].conj();
            }
        }
        Self::from_entries(entries)
    }

    /// Frobenius norm of (C⊗1)(1⊗C)(C⊗1) − (1⊗C)(C⊗1)(1⊗C) on the 8×8
    /// lifts, with 1 the 2×2 identity.
    pub fn braid_residual(&self) -> ResidualReport {
        self.braid_residual_with(tol::RESIDUAL)
    }

    pub fn braid_residual_with(&self, tolerance: f64) -> ResidualReport {
        let c = self.to_cmatrix();
        let id2 = CMatrix::identity(2);
        let c1 = c.kron(&id2);
        let c2 = id2.kron(&c);
        let lhs = c1.mul(&c2).mul(&c1);
        let rhs = c2.mul(&c1).mul(&c2);
        ResidualReport::new(lhs.frobenius_distance(&rhs), tolerance)
    }

    /// Frobenius norm of C*C − I.
    pub fn unitarity_residual(&self) -> ResidualReport {
        self.unitarity_residual_with(tol::RESIDUAL)
    }

    pub fn unitarity_residual_with(&self, tolerance: f64) -> ResidualReport {
        let c = self.to_cmatrix();
        ResidualReport::new(c.adjoint().mul(&c).distance_from_identity(), tolerance)
    }

    /// True iff ‖C² − I‖_F is within tolerance, i.e. the generated
    /// representation factors through the symmetric group.
    pub fn is_involutive(&self) -> bool {
        self.is_involutive_with(tol::RESIDUAL)
    }

    pub fn is_involutive_with(&self, tolerance: f64) -> bool {
        self.mul(self).to_cmatrix().distance_from_identity() <= tolerance
    }

    /// True iff every row and every column carries exactly one entry of
    /// non-negligible modulus.
    pub fn is_generalized_permutation(&self) -> bool {
        self.generalized_permutation_form().is_some()
    }

    /// For a generalized permutation matrix, the column map: column c holds
    /// its single non-negligible entry at row `target[c]` with value
    /// `phase[c]`. Returns `None` when the pattern does not hold.
    pub fn generalized_permutation_form(&self) -> Option<([usize; 4], [Complex64; 4])> {
        let mut target = [0usize; 4];
        let mut phase = [Complex64::new(0.0, 0.0); 4];
        let mut row_used = [false; 4];
        for c in 0..4 {
            let mut found = None;
            for r in 0..4 {
                if self.entries[r][c].norm() > tol::GENERALIZED_PERMUTATION_ENTRY {
                    if found.is_some() {
                        return None; // two nonzeros in one column
                    }
                    found = Some(r);
                }
            }
            let r = found?;
            if row_used[r] {
                return None; // two nonzeros in one row
            }
            row_used[r] = true;
            target[c] = r;
            phase[c] = self.entries[r][c];
        }
        Some((target, phase))
    }
}

/// The flip Σ: e_i⊗e_j ↦ e_j⊗e_i. Satisfies Σ² = I and solves the braid
/// equation (it generates the plain permutation action).
pub fn swap_sigma() -> RMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    RMatrix::from_entries([[l, o, o, o], [o, o, l, o], [o, l, o, o], [o, o, o, l]])
}

/// Residual of the constant Yang–Baxter equation
/// R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂ on the 8×8 lifts, where R₁₃ conjugates the
/// leading-factor lift by the flip on the last two factors.
pub fn ybe_residual(r: &RMatrix) -> ResidualReport {
    ybe_residual_with(r, tol::RESIDUAL)
}

pub fn ybe_residual_with(r: &RMatrix, tolerance: f64) -> ResidualReport {
    let rm = r.to_cmatrix();
    let id2 = CMatrix::identity(2);
    let sigma = swap_sigma().to_cmatrix();
    let r12 = rm.kron(&id2);
    let r23 = id2.kron(&rm);
    let flip23 = id2.kron(&sigma);
    let r13 = flip23.mul(&r12).mul(&flip23);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    ResidualReport::new(lhs.frobenius_distance(&rhs), tolerance)
}

/// Builds a catalog matrix with q = exp(iθ). Entries other than the first
/// reject θ where q² = 1 (|sin θ| below [`tol::DEGENERATE_PHASE`]); ε is
/// used only by the first entry.
pub fn catalog(tag: CatalogTag, theta: f64, epsilon: Epsilon) -> Result<RMatrix> {
    if tag.requires_nondegenerate_phase() && theta.sin().abs() < tol::DEGENERATE_PHASE {
        return Err(Error::DegeneratePhase { theta });
    }
    let q = Complex64::from_polar(1.0, theta);
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let e = Complex64::new(epsilon.value(), 0.0);
    let entries = match tag {
        CatalogTag::Ex1 => [
            [o, o, o, q],
            [o, e, o, o],
            [o, o, e, o],
            [q.conj(), o, o, o],
        ],
        CatalogTag::Ex2 => [[o, o, o, q], [o, l, o, o], [o, o, l, o], [q, o, o, o]],
        CatalogTag::Ex3 => [[q, o, o, o], [o, o, l, o], [o, l, o, o], [o, o, o, l]],
        CatalogTag::Ex4 => [[o, o, o, l], [o, q, o, o], [o, o, q, o], [l, o, o, o]],
    };
    Ok(RMatrix {
        entries,
        provenance: Some(Provenance {
            tag,
            theta,
            epsilon,
        }),
    })
}
