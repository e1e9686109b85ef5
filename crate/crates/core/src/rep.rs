//! Matrix-free application of the braid representation on (ℂ²)^⊗N.
//!
//! π(b_i) applies the 4×4 matrix C to the i-th and (i+1)-th tensor factors.
//! A word w = g₁…g_k acts as the operator product π(g₁)⋯π(g_k), so the
//! rightmost letter reaches the vector first; this is what makes
//! `materialize(a·b) = materialize(a)·materialize(b)` hold.
//!
//! Basis indexing: bitstring i₁…i_N with site 1 as the most significant bit,
//! so the lexicographic basis order matches e_{i₁}⊗…⊗e_{i_N}.

use num_complex::Complex64;

use crate::braid::BraidWord;
use crate::linalg::CMatrix;
use crate::rmatrix::RMatrix;
use crate::{Error, Result};

/// Largest N for which dense 2^N × 2^N materialization is permitted.
pub const MATERIALIZE_MAX_SITES: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A vector in (ℂ²)^⊗N with 2^N complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    sites: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(sites: usize) -> Self {
        Self {
            sites,
            amplitudes: vec![ZERO; 1usize << sites],
        }
    }

    /// The basis vector e_{i₁…i_N} for the given (zero-based) index.
    pub fn basis_state(sites: usize, index: usize) -> Result<Self> {
        let dim = 1usize << sites;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {sites} sites"
            )));
        }
        let mut v = Self::zero(sites);
        v.amplitudes[index] = ONE;
        Ok(v)
    }

    pub fn from_amplitudes(sites: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1usize << sites {
            return Err(Error::InvalidArgument(format!(
                "expected 2^{sites} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        Ok(Self { sites, amplitudes })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ⟨self, other⟩ with conjugation on self.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn check_generator_index(i: usize, sites: usize) -> Result<()> {
    if i == 0 || i >= sites {
        return Err(Error::GeneratorIndex {
            index: i,
            strands: sites,
        });
    }
    Ok(())
}

/// 4×4 coefficient table for C (or C* when applying an inverse letter).
fn local_matrix(c: &RMatrix, inverse: bool) -> [[Complex64; 4]; 4] {
    if inverse {
        *c.adjoint().entries()
    } else {
        *c.entries()
    }
}

fn apply_local_in_place(v: &mut [Complex64], sites: usize, i: usize, m: &[[Complex64; 4]; 4]) {
    // Sites i, i+1 live at bit positions (sites−i, sites−i−1) counted from
    // the least significant bit; `shift` is the position of the lower bit.
    let shift = sites - i - 1;
    let low_mask = (1usize << shift) - 1;
    let contexts = 1usize << (sites - 2);
    for ctx in 0..contexts {
        let hi = (ctx & !low_mask) << 2;
        let lo = ctx & low_mask;
        let base = hi | lo;
        let idx = [
            base,
            base | (1 << shift),
            base | (2 << shift),
            base | (3 << shift),
        ];
        let a = [v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]];
        for (r, &slot) in idx.iter().enumerate() {
            let mut acc = ZERO;
            for (k, &ak) in a.iter().enumerate() {
                let coeff = m[r][k];
                // Catalog matrices have one nonzero per row; skipping zeros
                // keeps the hot loop proportional to actual entries.
                if coeff.re != 0.0 || coeff.im != 0.0 {
                    acc += coeff * ak;
                }
            }
            v[slot] = acc;
        }
    }
}

/// (1⊗…⊗C^{±1}⊗…⊗1)v with C on sites i, i+1, applied over all 2^{N−2}
/// bit-contexts without forming the 2^N × 2^N matrix. The inverse uses C*,
/// so C must be unitary for it to be an actual inverse.
pub fn apply_generator(
    v: &StateVector,
    i: usize,
    c: &RMatrix,
    inverse: bool,
) -> Result<StateVector> {
    check_generator_index(i, v.sites())?;
    let mut out = v.clone();
    let m = local_matrix(c, inverse);
    apply_local_in_place(&mut out.amplitudes, out.sites, i, &m);
    Ok(out)
}

/// π(w)v for a braid word w: letters act right-to-left so that words compose
/// homomorphically.
pub fn apply_word(v: &StateVector, w: &BraidWord, c: &RMatrix) -> Result<StateVector> {
    if w.strands() != v.sites() {
        return Err(Error::StrandMismatch {
            left: w.strands(),
            right: v.sites(),
        });
    }
    let mut out = v.clone();
    for &(i, sign) in w.letters().iter().rev() {
        let m = local_matrix(c, sign < 0);
        apply_local_in_place(&mut out.amplitudes, out.sites, i, &m);
    }
    Ok(out)
}

/// Dense 2^N × 2^N matrix of π(w): column j is π(w)e_j.
///
/// Columns evolve in lockstep, one letter at a time, on the transposed
/// layout so each column is a contiguous row during the hot loop.
pub fn materialize(w: &BraidWord, c: &RMatrix) -> Result<CMatrix> {
    let sites = w.strands();
    if sites > MATERIALIZE_MAX_SITES {
        return Err(Error::SizeGuard {
            what: "materialize",
            requested: sites,
            max: MATERIALIZE_MAX_SITES,
        });
    }
    let dim = 1usize << sites;
    let mut transposed = CMatrix::identity(dim);
    for &(i, sign) in w.letters().iter().rev() {
        let m = local_matrix(c, sign < 0);
        for j in 0..dim {
            apply_local_in_place(transposed.row_mut(j), sites, i, &m);
        }
    }
    Ok(CMatrix::from_fn(dim, dim, |r, col| transposed.get(col, r)))
}

/// An operator T with T e_k = phase[k] · e_{target[k]}: the exact form of
/// π(w) when C is a generalized permutation matrix.
#[derive(Clone, Debug)]
pub struct PhasedPermutation {
    target: Vec<usize>,
    phase: Vec<Complex64>,
}

impl PhasedPermutation {
    pub fn identity(size: usize) -> Self {
        Self {
            target: (0..size).collect(),
            phase: vec![ONE; size],
        }
    }

    pub fn size(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn phase(&self) -> &[Complex64] {
        &self.phase
    }

    pub fn is_identity_map(&self) -> bool {
        self.target.iter().enumerate().all(|(k, &t)| t == k)
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        let mut out = StateVector::zero(v.sites());
        for (k, &a) in v.amplitudes().iter().enumerate() {
            if a != ZERO {
                out.amplitudes[self.target[k]] = self.phase[k] * a;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.size();
        let mut m = CMatrix::zeros(n, n);
        for k in 0..n {
            m.set(self.target[k], k, self.phase[k]);
        }
        m
    }
}

/// Symbolic composition of π(w) as a phased permutation; exact index
/// tracking with unit-modulus phase accumulation (phases are renormalized
/// after every letter to stop drift over long words).
pub fn as_phased_permutation(w: &BraidWord, c: &RMatrix) -> Result<PhasedPermutation> {
    let Some((col_target, col_phase)) = c.generalized_permutation_form() else {
        return Err(Error::NotGeneralizedPermutation);
    };
    // Inverse local map: C* sends e_r back to conj(phase) e_c.
    let mut inv_target = [0usize; 4];
    let mut inv_phase = [ZERO; 4];
    for (col, &row) in col_target.iter().enumerate() {
        inv_target[row] = col;
        inv_phase[row] = col_phase[col].conj();
    }

    let sites = w.strands();
    let dim = 1usize << sites;
    let mut t = PhasedPermutation::identity(dim);
    for &(i, sign) in w.letters().iter().rev() {
        let (lt, lp) = if sign < 0 {
            (&inv_target, &inv_phase)
        } else {
            (&col_target, &col_phase)
        };
        let shift = sites - i - 1;
        let pair_mask = 3usize << shift;
        for k in 0..dim {
            let cur = t.target[k];
            let pair = (cur & pair_mask) >> shift;
            let next = (cur & !pair_mask) | (lt[pair] << shift);
            t.target[k] = next;
            let ph = t.phase[k] * lp[pair];
            t.phase[k] = ph / ph.norm();
        }
    }
    Ok(t)
}
