//! The pure-braid invariant subspace A_N^π: the joint fixed space of
//! π(x_{i,j}) over all pure-braid generators, with its dimension, an
//! orthonormal basis, the projector p_π, and the induced symmetric-group
//! representation.
//!
//! Two independent routes compute the same space:
//!
//! * **dense**: accumulate the positive semidefinite Gram operator
//!   G = Σ (M_{ij} − I)*(M_{ij} − I) (written as Σ (2I − M − M†), which is
//!   identical for unitary M) and take the eigenvalue-below-threshold null
//!   space. Works for any unitary braid-equation solution, N ≤ 10.
//! * **phased**: when C is a generalized permutation matrix every π(x_{i,j})
//!   is a phased permutation; a union-find over basis indices with
//!   multiplicative edge phases keeps exactly the index classes whose cycle
//!   products all equal 1. Exact supports, N ≤ 22.
//!
//! Both routes end with the same fixed-space certificate: the maximum of
//! ‖π(x_{i,j})v − v‖₂ over the returned basis is checked against tolerance.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::braid::{pure_braid_generator, BraidWord, Permutation};
use crate::linalg::{hermitian_nullspace, CMatrix};
use crate::rep::{
    apply_generator, apply_word, as_phased_permutation, PhasedPermutation, StateVector,
};
use crate::rmatrix::RMatrix;
use crate::{tol, Error, Result};

pub use crate::linalg::NullspaceGap as SpectralGap;

/// Dense-route guard: 2^N × 2^N Gram matrices and eigenproblems.
pub const DENSE_MAX_SITES: usize = 10;
/// Phased-route guard: index arrays of length 2^N.
pub const PHASED_MAX_SITES: usize = 22;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which route produced a subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMethod {
    Dense,
    Phased,
}

impl SolverMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolverMethod::Dense => "dense",
            SolverMethod::Phased => "phased",
        }
    }
}

/// Route selection for [`invariant_subspace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MethodChoice {
    Dense,
    Phased,
    #[default]
    Auto,
}

/// A vector in (ℂ²)^⊗N stored as sorted (index, amplitude) pairs. Basis
/// vectors of phased-route subspaces are supported on one index class each,
/// so sparse storage keeps the total footprint at 2^N entries even when the
/// dimension is exponential.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector {
    sites: usize,
    entries: Vec<(usize, Complex64)>,
}

impl SparseVector {
    pub fn new(sites: usize, mut entries: Vec<(usize, Complex64)>) -> Self {
        entries.sort_unstable_by_key(|&(k, _)| k);
        Self { sites, entries }
    }

    pub fn from_state_vector(v: &StateVector) -> Self {
        Self {
            sites: v.sites(),
            entries: v
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != ZERO)
                .map(|(k, &a)| (k, a))
                .collect(),
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn entries(&self) -> &[(usize, Complex64)] {
        &self.entries
    }

    /// Zero-based indices carrying nonzero amplitude.
    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|&(k, _)| k).collect()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        match self.entries.binary_search_by_key(&index, |&(k, _)| k) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => ZERO,
        }
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ⟨self, other⟩ with conjugation on self, by sorted-merge.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let (mut i, mut j) = (0usize, 0usize);
        let mut acc = ZERO;
        while i < self.entries.len() && j < other.entries.len() {
            let (ka, a) = self.entries[i];
            let (kb, b) = other.entries[j];
            match ka.cmp(&kb) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a.conj() * b;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn to_state_vector(&self) -> StateVector {
        let mut amps = vec![ZERO; 1usize << self.sites];
        for &(k, a) in &self.entries {
            amps[k] = a;
        }
        StateVector::from_amplitudes(self.sites, amps).expect("length matches")
    }
}

/// Orthonormal basis of A_N^π with solver metadata.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    sites: usize,
    basis: Vec<SparseVector>,
    method: SolverMethod,
    tolerance: f64,
    residual_max: f64,
    gap: Option<SpectralGap>,
}

impl InvariantSubspace {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.basis
    }

    pub fn method(&self) -> SolverMethod {
        self.method
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Fixed-space certificate: max over basis vectors and pure generators of
    /// ‖π(x_{i,j})v − v‖₂.
    pub fn residual_max(&self) -> f64 {
        self.residual_max
    }

    /// Eigenvalue gap bookkeeping (dense route only).
    pub fn gap(&self) -> Option<&SpectralGap> {
        self.gap.as_ref()
    }

    /// Basis as dense state vectors.
    pub fn basis_state_vectors(&self) -> Vec<StateVector> {
        self.basis
            .iter()
            .map(SparseVector::to_state_vector)
            .collect()
    }

    /// 2^N × dim matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> CMatrix {
        let dim = 1usize << self.sites;
        let mut b = CMatrix::zeros(dim, self.basis.len());
        for (j, v) in self.basis.iter().enumerate() {
            for &(k, a) in v.entries() {
                b.set(k, j, a);
            }
        }
        b
    }

    /// The projector p_π = Σ v v* onto the subspace, as a dense matrix.
    pub fn projector(&self) -> Result<CMatrix> {
        if self.sites > crate::rep::MATERIALIZE_MAX_SITES {
            return Err(Error::SizeGuard {
                what: "projector",
                requested: self.sites,
                max: crate::rep::MATERIALIZE_MAX_SITES,
            });
        }
        let dim = 1usize << self.sites;
        let mut p = CMatrix::zeros(dim, dim);
        for v in &self.basis {
            for &(r, a) in v.entries() {
                for &(c, b) in v.entries() {
                    p.add_to(r, c, a * b.conj());
                }
            }
        }
        Ok(p)
    }
}

/// One pure generator together with a fast applier for it.
struct GeneratorOp {
    word: BraidWord,
    phased: Option<PhasedPermutation>,
}

impl GeneratorOp {
    fn apply(&self, v: &StateVector, c: &RMatrix) -> Result<StateVector> {
        match &self.phased {
            Some(t) => Ok(t.apply(v)),
            None => apply_word(v, &self.word, c),
        }
    }

    /// ‖Tv − v‖ for a sparse vector, exact even when the support is not
    /// closed under the index map (a non-closed support must show up as a
    /// residual, not be silently certified).
    fn sparse_residual(&self, v: &SparseVector, c: &RMatrix) -> Result<f64> {
        match &self.phased {
            Some(t) => {
                let mut acc = 0.0;
                let mut hit: Vec<usize> = Vec::with_capacity(v.entries().len());
                for &(k, a) in v.entries() {
                    let j = t.target()[k];
                    hit.push(j);
                    acc += (t.phase()[k] * a - v.amplitude(j)).norm_sqr();
                }
                hit.sort_unstable();
                for &(j, a) in v.entries() {
                    if hit.binary_search(&j).is_err() {
                        acc += a.norm_sqr();
                    }
                }
                Ok(acc.sqrt())
            }
            None => {
                let dense = v.to_state_vector();
                Ok(self.apply(&dense, c)?.distance(&dense))
            }
        }
    }
}

/// Pure generators as words, in lexicographic (i, j) order; empty for N = 1
/// (the one-strand braid group has a trivial pure part).
fn generator_words(sites: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for i in 1..sites {
        for j in i..sites {
            out.push(pure_braid_generator(i, j, sites).expect("indices in range"));
        }
    }
    out
}

fn generator_ops(c: &RMatrix, sites: usize) -> Result<Vec<GeneratorOp>> {
    let phased_ok = c.is_generalized_permutation();
    generator_words(sites)
        .into_iter()
        .map(|word| {
            let phased = if phased_ok {
                Some(as_phased_permutation(&word, c)?)
            } else {
                None
            };
            Ok(GeneratorOp { word, phased })
        })
        .collect()
}

fn validate_representation(c: &RMatrix) -> Result<()> {
    let u = c.unitarity_residual();
    if !u.passes {
        return Err(Error::ResidualCheck {
            check: "unitarity",
            residual: u.frobenius_residual,
            tolerance: u.tolerance,
        });
    }
    let b = c.braid_residual();
    if !b.passes {
        return Err(Error::ResidualCheck {
            check: "braid-equation",
            residual: b.frobenius_residual,
            tolerance: b.tolerance,
        });
    }
    Ok(())
}

fn certify(
    sites: usize,
    basis: Vec<SparseVector>,
    method: SolverMethod,
    gap: Option<SpectralGap>,
    ops: &[GeneratorOp],
    c: &RMatrix,
) -> Result<InvariantSubspace> {
    let tolerance = tol::FIXED_SPACE;
    let mut residual_max = 0.0f64;
    for v in &basis {
        for op in ops {
            residual_max = residual_max.max(op.sparse_residual(v, c)?);
        }
    }
    if residual_max > tolerance {
        return Err(Error::ResidualCheck {
            check: "fixed-space certificate",
            residual: residual_max,
            tolerance,
        });
    }
    Ok(InvariantSubspace {
        sites,
        basis,
        method,
        tolerance,
        residual_max,
        gap,
    })
}

/// Joint fixed space via the Gram operator G = Σ (M−I)*(M−I) and a Hermitian
/// eigendecomposition thresholded at [`tol::NULLSPACE_EIGENVALUE`].
pub fn invariant_subspace_dense(c: &RMatrix, sites: usize) -> Result<InvariantSubspace> {
    if sites == 0 {
        return Err(Error::NoStrands);
    }
    if sites > DENSE_MAX_SITES {
        return Err(Error::SizeGuard {
            what: "invariant_subspace_dense",
            requested: sites,
            max: DENSE_MAX_SITES,
        });
    }
    validate_representation(c)?;

    let dim = 1usize << sites;
    let ops = generator_ops(c, sites)?;
    // For unitary M: (M−I)*(M−I) = 2I − M − M†.
    let mut sum = CMatrix::zeros(dim, dim);
    for op in &ops {
        let m = match &op.phased {
            Some(t) => t.to_matrix(),
            None => crate::rep::materialize(&op.word, c)?,
        };
        sum.add_assign(&m);
    }
    let gens = ops.len() as f64;
    let gram = CMatrix::from_fn(dim, dim, |r, col| {
        let mut v = -(sum.get(r, col) + sum.get(col, r).conj());
        if r == col {
            v += Complex64::new(2.0 * gens, 0.0);
        }
        v
    });

    let ns = hermitian_nullspace(&gram, tol::NULLSPACE_EIGENVALUE)?;
    let basis: Vec<SparseVector> = (0..ns.basis.cols())
        .map(|j| {
            SparseVector::new(
                sites,
                (0..dim)
                    .filter_map(|r| {
                        let a = ns.basis.get(r, j);
                        (a != ZERO).then_some((r, a))
                    })
                    .collect(),
            )
        })
        .collect();
    certify(sites, basis, SolverMethod::Dense, Some(ns.gap), &ops, c)
}

/// Union-find over basis indices with multiplicative phases.
///
/// `phase[k]` always satisfies v[k] = phase[k] · v[root(k)] for members of a
/// live class; a class dies when two constraint paths disagree.
struct PhasedUnionFind {
    parent: Vec<usize>,
    phase: Vec<Complex64>,
    dead: Vec<bool>,
}

impl PhasedUnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            phase: vec![Complex64::new(1.0, 0.0); n],
            dead: vec![false; n],
        }
    }

    /// Root and accumulated phase-to-root, with full path compression.
    fn find(&mut self, k: usize) -> (usize, Complex64) {
        // First pass: locate the root.
        let mut root = k;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        // Second pass: rewrite the path, accumulating phases from the top.
        let mut node = k;
        let mut to_root = Complex64::new(1.0, 0.0);
        let mut stack = Vec::new();
        while self.parent[node] != node {
            stack.push(node);
            node = self.parent[node];
        }
        for &n in stack.iter().rev() {
            to_root = self.phase[n] * to_root;
        }
        // Re-walk to set each node's phase directly to the root.
        let mut acc = to_root;
        for &n in stack.iter() {
            let own = self.phase[n];
            self.parent[n] = root;
            self.phase[n] = acc;
            acc /= own;
        }
        (root, to_root)
    }

    /// Constraint v[b] = w · v[a]; returns false when it killed the class.
    fn merge(&mut self, a: usize, b: usize, w: Complex64, tolerance: f64) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if (pb - w * pa).norm() > tolerance {
                self.dead[ra] = true;
            }
            return;
        }
        // Attach the larger root below the smaller for determinism.
        let (keep, drop, drop_phase) = if ra < rb {
            // v[rb] = (w·pa/pb) v[ra]
            (ra, rb, w * pa / pb)
        } else {
            // v[ra] = (pb/(w·pa)) v[rb]
            (rb, ra, pb / (w * pa))
        };
        self.parent[drop] = keep;
        // All phases are unit modulus; renormalize to stop drift.
        self.phase[drop] = drop_phase / drop_phase.norm();
        self.dead[keep] = self.dead[keep] || self.dead[drop];
    }
}

/// Joint fixed space via phase-consistency union-find; requires C to be a
/// generalized permutation matrix. Dimension equals the number of index
/// classes whose phase constraints are all consistent, and the basis vectors
/// are the normalized phase-weighted indicators of those classes.
pub fn invariant_subspace_phased(c: &RMatrix, sites: usize) -> Result<InvariantSubspace> {
    if sites == 0 {
        return Err(Error::NoStrands);
    }
    if sites > PHASED_MAX_SITES {
        return Err(Error::SizeGuard {
            what: "invariant_subspace_phased",
            requested: sites,
            max: PHASED_MAX_SITES,
        });
    }
    if !c.is_generalized_permutation() {
        return Err(Error::NotGeneralizedPermutation);
    }
    validate_representation(c)?;

    let dim = 1usize << sites;
    let ops = generator_ops(c, sites)?;
    let mut uf = PhasedUnionFind::new(dim);
    for op in &ops {
        let t = op.phased.as_ref().expect("phased ops by construction");
        // Invariance of v under T e_k = ph[k] e_{t[k]} means
        // v[t[k]] = ph[k] · v[k] for every index k.
        for k in 0..dim {
            uf.merge(k, t.target()[k], t.phase()[k], tol::PHASE_CONSISTENCY);
        }
    }

    // Gather surviving classes in ascending root order.
    let mut classes: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for k in 0..dim {
        let (root, phase) = uf.find(k);
        if !uf.dead[root] {
            classes.entry(root).or_default().push((k, phase));
        }
    }
    let basis: Vec<SparseVector> = classes
        .into_values()
        .map(|members| {
            let scale = 1.0 / (members.len() as f64).sqrt();
            SparseVector::new(
                sites,
                members.into_iter().map(|(k, p)| (k, p * scale)).collect(),
            )
        })
        .collect();
    certify(sites, basis, SolverMethod::Phased, None, &ops, c)
}

/// Route dispatcher: `Auto` prefers the phased route whenever C is a
/// generalized permutation matrix and N fits its guard.
pub fn invariant_subspace(
    c: &RMatrix,
    sites: usize,
    method: MethodChoice,
) -> Result<InvariantSubspace> {
    match method {
        MethodChoice::Dense => invariant_subspace_dense(c, sites),
        MethodChoice::Phased => invariant_subspace_phased(c, sites),
        MethodChoice::Auto => {
            if c.is_generalized_permutation() && sites <= PHASED_MAX_SITES {
                invariant_subspace_phased(c, sites)
            } else {
                invariant_subspace_dense(c, sites)
            }
        }
    }
}

/// One-based basis indices (a_{N−1}, a_N) of the two-point support of the
/// second catalog entry's invariant vectors: a₁ = 2, a_N = 2^N − a_{N−1} + 1.
pub fn example2_support_indices(sites: usize) -> Result<(usize, usize)> {
    if sites < 2 {
        return Err(Error::TooFewStrands {
            strands: sites,
            min: 2,
        });
    }
    let mut prev = 2usize; // a_1
    let mut cur = prev;
    for n in 2..=sites {
        cur = (1usize << n) - prev + 1;
        if n < sites {
            prev = cur;
        }
    }
    Ok((prev, cur))
}

/// The induced symmetric-group representation on A_N^π: generator matrices
/// π̃(φ(b_i)) expressed in the subspace basis.
#[derive(Clone, Debug)]
pub struct InducedSymRep {
    sites: usize,
    matrices: Vec<CMatrix>,
    max_compression_error: f64,
}

impl InducedSymRep {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dimension(&self) -> usize {
        self.matrices.first().map_or(0, CMatrix::rows)
    }

    /// π̃(φ(b_i)), one-based i.
    pub fn generator_matrix(&self, i: usize) -> &CMatrix {
        &self.matrices[i - 1]
    }

    pub fn generator_matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// ‖(I − p_π) π(b_i) p_π‖ maximized over generators; small values verify
    /// that the subspace really is π-invariant.
    pub fn max_compression_error(&self) -> f64 {
        self.max_compression_error
    }

    /// π̃(σ) for an arbitrary permutation, built by factoring σ into adjacent
    /// transpositions and multiplying the generator compressions.
    pub fn permutation_matrix(&self, sigma: &Permutation) -> CMatrix {
        self.product_over(&sigma.adjacent_factorization())
    }

    /// Same, from the alternative factorization; used to check that the
    /// construction is independent of the chosen factorization.
    pub fn permutation_matrix_alt(&self, sigma: &Permutation) -> CMatrix {
        self.product_over(&sigma.adjacent_factorization_alt())
    }

    fn product_over(&self, swaps: &[usize]) -> CMatrix {
        let dim = self.dimension();
        let mut acc = CMatrix::identity(dim);
        for &p in swaps {
            acc = acc.mul(&self.matrices[p - 1]);
        }
        acc
    }
}

/// Compress π(b_i) to the subspace basis for every generator. Errors when the
/// compression leaks outside the subspace, which would signal a solver
/// failure rather than a user mistake.
pub fn induced_sym_rep(c: &RMatrix, subspace: &InvariantSubspace) -> Result<InducedSymRep> {
    let sites = subspace.sites();
    let dim = subspace.dimension();
    let b = subspace.basis_matrix();
    let mut matrices = Vec::with_capacity(sites.saturating_sub(1));
    let mut max_err = 0.0f64;
    for i in 1..sites {
        // W = π(b_i) B, one state-vector application per basis column.
        let full = 1usize << sites;
        let mut w = CMatrix::zeros(full, dim);
        for (j, v) in subspace.basis().iter().enumerate() {
            let applied = apply_generator(&v.to_state_vector(), i, c, false)?;
            for (r, &a) in applied.amplitudes().iter().enumerate() {
                if a != ZERO {
                    w.set(r, j, a);
                }
            }
        }
        let compressed = b.adjoint().mul(&w);
        let err = w.frobenius_distance(&b.mul(&compressed));
        max_err = max_err.max(err);
        matrices.push(compressed);
    }
    if max_err > tol::FIXED_SPACE {
        return Err(Error::Compression {
            error: max_err,
            tolerance: tol::FIXED_SPACE,
        });
    }
    Ok(InducedSymRep {
        sites,
        matrices,
        max_compression_error: max_err,
    })
}

/// Checks that the subspace is closed under the coordinatewise product of
/// the standard basis (the algebra structure of A_N): for every basis pair,
/// u⊙v must lie in the span within the subspace tolerance.
pub fn subalgebra_check(subspace: &InvariantSubspace) -> bool {
    let tolerance = subspace.tolerance();
    let basis = subspace.basis();
    for (bi, u) in basis.iter().enumerate() {
        for v in &basis[bi..] {
            // w = u ⊙ v on the intersected supports.
            let mut entries = Vec::new();
            let (mut i, mut j) = (0usize, 0usize);
            let (ue, ve) = (u.entries(), v.entries());
            while i < ue.len() && j < ve.len() {
                match ue[i].0.cmp(&ve[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        entries.push((ue[i].0, ue[i].1 * ve[j].1));
                        i += 1;
                        j += 1;
                    }
                }
            }
            let w = SparseVector::new(subspace.sites(), entries);
            // Residual of w against its projection onto the span.
            let mut remainder: BTreeMap<usize, Complex64> = w.entries().iter().copied().collect();
            for b in basis {
                let coeff = b.inner(&w);
                if coeff != ZERO {
                    for &(k, a) in b.entries() {
                        *remainder.entry(k).or_insert(ZERO) -= coeff * a;
                    }
                }
            }
            let residual: f64 = remainder.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if residual > tolerance {
                return false;
            }
        }
    }
    true
}
