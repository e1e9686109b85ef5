//! The braid representation U on a finite-dimensional product space
//! H₀^⊗N ⊗ (ℂ²)^⊗N, the averaged projection formula
//!
//! ```text
//! P_U = (1 ⊗ p_π)/N! · Σ_σ 𝔖(σ) ⊗ π̃(σ)
//! ```
//!
//! and a brute-force oracle that recovers the same projector as the null
//! space of Σ_i (U(b_i) − I)*(U(b_i) − I).
//!
//! H₀ stands in for an infinite-dimensional form space: the projection
//! identity is purely representation-theoretic, so any finite h0_dim
//! exercises it. Product-space indices are h·2^N + v with the H factor major.

use num_complex::Complex64;

use crate::braid::{BraidWord, Permutation};
use crate::invariant::{induced_sym_rep, invariant_subspace, MethodChoice};
use crate::linalg::{hermitian_nullspace, CMatrix};
use crate::rep::materialize;
use crate::rmatrix::RMatrix;
use crate::{tol, Error, Result};

/// Guard on h0_dim^N · 2^N for dense product-space constructions. Sizes near
/// the guard allocate multi-GB matrices; typical use stays in the hundreds.
pub const PRODUCT_DIM_GUARD: usize = 20736;

/// Guard on N for the N!-term permutation average.
pub const PERMUTATION_ENUM_MAX: usize = 6;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A finite-dimensional product space H₀^⊗N ⊗ (ℂ²)^⊗N with its local braid
/// matrix.
#[derive(Clone, Debug)]
pub struct ProductSpaceSpec {
    h0_dim: usize,
    sites: usize,
    local_matrix: RMatrix,
}

impl ProductSpaceSpec {
    /// Validates dimensions, the size guard, and that the local matrix is a
    /// unitary braid-equation solution.
    pub fn new(h0_dim: usize, sites: usize, local_matrix: RMatrix) -> Result<Self> {
        if h0_dim == 0 {
            return Err(Error::InvalidArgument("h0_dim must be at least 1".into()));
        }
        if sites == 0 {
            return Err(Error::NoStrands);
        }
        let guard_err = Error::SizeGuard {
            what: "product space",
            requested: usize::MAX,
            max: PRODUCT_DIM_GUARD,
        };
        let h_dim = h0_dim.checked_pow(sites as u32).ok_or(guard_err)?;
        let v_dim = if sites < usize::BITS as usize {
            1usize << sites
        } else {
            return Err(Error::SizeGuard {
                what: "product space",
                requested: usize::MAX,
                max: PRODUCT_DIM_GUARD,
            });
        };
        match h_dim.checked_mul(v_dim) {
            Some(total) if total <= PRODUCT_DIM_GUARD => {}
            other => {
                return Err(Error::SizeGuard {
                    what: "product space",
                    requested: other.unwrap_or(usize::MAX),
                    max: PRODUCT_DIM_GUARD,
                })
            }
        }
        let u = local_matrix.unitarity_residual();
        if !u.passes {
            return Err(Error::ResidualCheck {
                check: "unitarity",
                residual: u.frobenius_residual,
                tolerance: u.tolerance,
            });
        }
        let b = local_matrix.braid_residual();
        if !b.passes {
            return Err(Error::ResidualCheck {
                check: "braid-equation",
                residual: b.frobenius_residual,
                tolerance: b.tolerance,
            });
        }
        Ok(Self {
            h0_dim,
            sites,
            local_matrix,
        })
    }

    pub fn h0_dim(&self) -> usize {
        self.h0_dim
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn local_matrix(&self) -> &RMatrix {
        &self.local_matrix
    }

    pub fn h_dim(&self) -> usize {
        self.h0_dim.pow(self.sites as u32)
    }

    pub fn v_dim(&self) -> usize {
        1 << self.sites
    }

    pub fn total_dim(&self) -> usize {
        self.h_dim() * self.v_dim()
    }

    /// The permutation action 𝔖(σ) on H₀^⊗N: the factor at place m moves to
    /// place σ(m). Digits are site-major (site 1 most significant).
    pub fn h_perm_matrix(&self, sigma: &Permutation) -> CMatrix {
        let n = self.sites;
        let d = self.h0_dim;
        let h_dim = self.h_dim();
        let mut m = CMatrix::zeros(h_dim, h_dim);
        let mut digits = vec![0usize; n];
        for col in 0..h_dim {
            let mut rest = col;
            for site in (0..n).rev() {
                digits[site] = rest % d;
                rest /= d;
            }
            let mut row = 0usize;
            // target digit at place σ(m) is the source digit at place m
            for (m_idx, &dig) in digits.iter().enumerate() {
                let place = sigma.image_of(m_idx + 1) - 1;
                row += dig * d.pow((n - 1 - place) as u32);
            }
            m.set(row, col, ONE);
        }
        m
    }
}

/// U(b_i) = 𝔖(φ(b_i)) ⊗ π(b_i) as a dense total_dim × total_dim matrix.
pub fn build_u_generator(spec: &ProductSpaceSpec, i: usize) -> Result<CMatrix> {
    if i == 0 || i >= spec.sites() {
        return Err(Error::GeneratorIndex {
            index: i,
            strands: spec.sites(),
        });
    }
    let swap = Permutation::adjacent_transposition(spec.sites(), i)?;
    let h = spec.h_perm_matrix(&swap);
    let word = BraidWord::generator(spec.sites(), i)?;
    let v = materialize(&word, spec.local_matrix())?;
    Ok(h.kron(&v))
}

/// The averaged projection formula: invariant subspace and induced
/// symmetric-group representation are computed first, π̃(σ) is lifted back to
/// (ℂ²)^⊗N through the basis, and the N!-term sum runs in lexicographic
/// order for determinism.
pub fn p_u_formula(spec: &ProductSpaceSpec) -> Result<CMatrix> {
    let n = spec.sites();
    if n > PERMUTATION_ENUM_MAX {
        return Err(Error::SizeGuard {
            what: "p_u_formula permutation enumeration",
            requested: n,
            max: PERMUTATION_ENUM_MAX,
        });
    }
    let subspace = invariant_subspace(spec.local_matrix(), n, MethodChoice::Auto)?;
    let total = spec.total_dim();
    if subspace.dimension() == 0 {
        return Ok(CMatrix::zeros(total, total));
    }
    let basis = subspace.basis_matrix();
    let basis_adj = basis.adjoint();
    let p_pi = subspace.projector()?;

    let lift = |small: &CMatrix| -> CMatrix { basis.mul(small).mul(&basis_adj) };

    let rep = if n >= 2 {
        Some(induced_sym_rep(spec.local_matrix(), &subspace)?)
    } else {
        None
    };

    let mut sum = CMatrix::zeros(total, total);
    for sigma in Permutation::enumerate_all(n) {
        let h = spec.h_perm_matrix(&sigma);
        let small = match &rep {
            Some(r) => r.permutation_matrix(&sigma),
            None => CMatrix::identity(subspace.dimension()),
        };
        sum.add_assign(&h.kron(&lift(&small)));
    }
    let factorial: usize = (1..=n).product();
    let averaged = sum.scale(Complex64::new(1.0 / factorial as f64, 0.0));
    // Left-multiply by 1 ⊗ p_π (a no-op in exact arithmetic since the lifts
    // already live inside the subspace, kept for fidelity to the formula).
    let one_p = CMatrix::identity(spec.h_dim()).kron(&p_pi);
    Ok(one_p.mul(&averaged))
}

/// Brute-force oracle: orthogonal projector onto the joint fixed space of
/// the U(b_i), via the null space of Σ_i (U(b_i) − I)*(U(b_i) − I).
pub fn p_u_bruteforce(spec: &ProductSpaceSpec) -> Result<CMatrix> {
    Ok(bruteforce_internal(spec)?.0)
}

fn bruteforce_internal(spec: &ProductSpaceSpec) -> Result<(CMatrix, usize)> {
    let total = spec.total_dim();
    let n = spec.sites();
    if n == 1 {
        // No generators: everything is invariant.
        return Ok((CMatrix::identity(total), total));
    }
    // For unitary U: (U−I)*(U−I) = 2I − U − U†.
    let mut sum = CMatrix::zeros(total, total);
    for i in 1..n {
        sum.add_assign(&build_u_generator(spec, i)?);
    }
    let gens = (n - 1) as f64;
    let gram = CMatrix::from_fn(total, total, |r, c| {
        let mut v = -(sum.get(r, c) + sum.get(c, r).conj());
        if r == c {
            v += Complex64::new(2.0 * gens, 0.0);
        }
        v
    });
    let ns = hermitian_nullspace(&gram, tol::NULLSPACE_EIGENVALUE)?;
    let rank = ns.basis.cols();
    let projector = ns.basis.mul(&ns.basis.adjoint());
    Ok((projector, rank))
}

/// Side-by-side report of the formula projector against the oracle.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct ProjectionComparison {
    pub formula_rank: usize,
    pub bruteforce_rank: usize,
    pub frobenius_distance: f64,
    pub idempotency_residual: f64,
    pub hermiticity_residual: f64,
}

/// Builds both projectors and reports ranks, their Frobenius distance, and
/// the idempotency/hermiticity residuals of the formula output.
pub fn compare_projections(spec: &ProductSpaceSpec) -> Result<ProjectionComparison> {
    let formula = p_u_formula(spec)?;
    let (oracle, oracle_rank) = bruteforce_internal(spec)?;
    let trace = formula.trace();
    let formula_rank = trace.re.round() as usize;
    Ok(ProjectionComparison {
        formula_rank,
        bruteforce_rank: oracle_rank,
        frobenius_distance: formula.frobenius_distance(&oracle),
        idempotency_residual: formula.mul(&formula).frobenius_distance(&formula),
        hermiticity_residual: formula.adjoint().frobenius_distance(&formula),
    })
}
