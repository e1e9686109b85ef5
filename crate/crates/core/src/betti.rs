//! Braided Betti numbers via Künneth convolution, the exact-rational
//! coefficient C_N^π = dim A_N^π / (N!·dim A_N), Euler characteristics, and
//! supertrace partial-sum series compared against closed forms.
//!
//! Coefficients stay exact rationals (dimension counts over factorials) and
//! convert to floats only when a series is evaluated.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::rmatrix::CatalogTag;
use crate::{Error, Result};

/// User-supplied Betti numbers β₀..β_d; nonnegative finite reals, not
/// necessarily integers.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiVector {
    values: Vec<f64>,
    source: String,
}

impl BettiVector {
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "betti vector must be nonempty".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidArgument(
                "betti entries must be finite and nonnegative".into(),
            ));
        }
        Ok(Self {
            values,
            source: source.into(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Top form degree d = dim X.
    pub fn top_degree(&self) -> usize {
        self.values.len() - 1
    }
}

/// Alternating sum Σ (−1)^m β_m.
pub fn euler_characteristic(beta: &BettiVector) -> f64 {
    beta.values()
        .iter()
        .enumerate()
        .map(|(m, &b)| if m % 2 == 0 { b } else { -b })
        .sum()
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64)
        .map(BigUint::from)
        .fold(BigUint::one(), |a, b| a * b)
}

/// C_N^π = inv_dim / (N! · alg_dim) as an exact rational; at most 1/N!.
pub fn c_n_pi(inv_dim: usize, n: usize, alg_dim: usize) -> Result<BigRational> {
    if inv_dim > alg_dim {
        return Err(Error::DimensionExceedsAlgebra { inv_dim, alg_dim });
    }
    if alg_dim == 0 {
        return Err(Error::InvalidArgument(
            "algebra dimension must be positive".into(),
        ));
    }
    let value = BigRational::new(
        BigUint::from(inv_dim as u64).into(),
        (factorial(n) * BigUint::from(alg_dim as u64)).into(),
    );
    debug_assert!(value <= BigRational::new(1.into(), factorial(n).into()));
    Ok(value)
}

/// Coefficients of (Σ_k β_k t^k)^N: the N-fold Künneth convolution
/// β_m(X^N) = Σ_{m₁+⋯+m_N=m} β_{m₁}…β_{m_N}.
pub fn kunneth_convolve(beta: &BettiVector, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "convolution power must be at least 1".into(),
        ));
    }
    let base = beta.values();
    let mut acc = base.to_vec();
    for _ in 1..n {
        let mut next = vec![0.0; acc.len() + base.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Braided Betti numbers of X^N for a given invariant dimension.
#[derive(Clone, Debug)]
pub struct BraidedBettiResult {
    pub n: usize,
    /// Exact C_N^π.
    pub c_n_pi: BigRational,
    /// Float image of the coefficient.
    pub c_n_pi_float: f64,
    /// b_m(X^N) for m = 0..=N·d.
    pub values: Vec<f64>,
}

impl BraidedBettiResult {
    /// Σ (−1)^m b_m, which must equal C_N^π · χ^N.
    pub fn alternating_sum(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(m, &b)| if m % 2 == 0 { b } else { -b })
            .sum()
    }
}

/// b_m(X^N) = C_N^π · (N-fold convolution of β)_m, with
/// C_N^π = inv_dim / (N!·2^N).
pub fn braided_betti(beta: &BettiVector, n: usize, inv_dim: usize) -> Result<BraidedBettiResult> {
    if n >= usize::BITS as usize {
        return Err(Error::SizeGuard {
            what: "braided_betti",
            requested: n,
            max: usize::BITS as usize - 1,
        });
    }
    let alg_dim = 1usize << n;
    let coeff = c_n_pi(inv_dim, n, alg_dim)?;
    let coeff_float = coeff.to_f64().unwrap_or(0.0);
    let conv = kunneth_convolve(beta, n)?;
    Ok(BraidedBettiResult {
        n,
        c_n_pi: coeff,
        c_n_pi_float: coeff_float,
        values: conv.into_iter().map(|v| coeff_float * v).collect(),
    })
}

/// Sign convention for the supertrace series Σ s^N C_N^π χ^N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    Plain,
    Alternating,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Plain => "plain",
            SignConvention::Alternating => "alternating",
        }
    }
}

/// Choice of the series constant term: the fixed convention value 1, or the
/// N = 0 extrapolation of the coefficient formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantTerm {
    One,
    Extrapolated,
}

impl ConstantTerm {
    pub fn name(self) -> &'static str {
        match self {
            ConstantTerm::One => "one",
            ConstantTerm::Extrapolated => "extrapolated",
        }
    }
}

/// Exact coefficients C_N^π for N = 0..=n_max; index 0 holds the
/// extrapolated constant term.
#[derive(Clone, Debug)]
pub struct CoefficientSequence {
    label: String,
    coeffs: Vec<BigRational>,
}

impl CoefficientSequence {
    pub fn new(label: impl Into<String>, coeffs: Vec<BigRational>) -> Self {
        Self {
            label: label.into(),
            coeffs,
        }
    }

    /// Closed-form dimension sequences of the four catalog entries:
    /// 2^N, 2, N+1, 0 over algebra dimension 2^N. Evaluating the same
    /// formula at N = 0 supplies the extrapolated constant (1, 2, 1, 0).
    pub fn catalog(tag: CatalogTag, n_max: usize) -> Self {
        let two = BigUint::from(2u64);
        let coeffs = (0..=n_max)
            .map(|n| {
                let denom = factorial(n) * two.pow(n as u32);
                let numer: BigUint = match tag {
                    CatalogTag::Ex1 => two.pow(n as u32),
                    CatalogTag::Ex2 => two.clone(),
                    CatalogTag::Ex3 => BigUint::from(n as u64 + 1),
                    CatalogTag::Ex4 => BigUint::zero(),
                };
                BigRational::new(numer.into(), denom.into())
            })
            .collect();
        Self {
            label: tag.name().to_string(),
            coeffs,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn max_n(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficient(&self, n: usize) -> Result<&BigRational> {
        self.coeffs
            .get(n)
            .ok_or(Error::CoefficientSequenceTooShort {
                have: self.max_n(),
                need: n,
            })
    }
}

/// Closed-form reference values for a catalog supertrace: the displayed
/// expression traditionally attached to the entry, the term-by-term
/// resummation of its series, and whether the two agree.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClosedFormComparison {
    pub displayed_expression: &'static str,
    pub displayed_value: f64,
    pub derived_expression: &'static str,
    pub derived_value: f64,
    /// False exactly when the displayed expression does not match the
    /// resummed series.
    pub values_agree: bool,
}

/// Reference closed forms for the first three catalog entries. For the
/// third entry the displayed expression and the term-by-term resummation
/// disagree by exactly 1 (the displayed form double-counts the constant
/// term of one subseries); both are returned, labelled. The fourth entry
/// has no closed form: its coefficients vanish.
pub fn closed_form_reference(tag: CatalogTag, chi: f64) -> Result<ClosedFormComparison> {
    let half = chi / 2.0;
    let (displayed_expression, displayed_value, derived_expression, derived_value) = match tag {
        CatalogTag::Ex1 => ("exp(-chi)", (-chi).exp(), "exp(-chi)", (-chi).exp()),
        CatalogTag::Ex2 => (
            "2*exp(-chi/2)",
            2.0 * (-half).exp(),
            "2*exp(-chi/2)",
            2.0 * (-half).exp(),
        ),
        CatalogTag::Ex3 => (
            "1 - (chi/2)*exp(-chi/2) + exp(-chi/2)",
            1.0 - half * (-half).exp() + (-half).exp(),
            "(1 - chi/2)*exp(-chi/2)",
            (1.0 - half) * (-half).exp(),
        ),
        CatalogTag::Ex4 => return Err(Error::NoClosedForm(tag.name())),
    };
    Ok(ClosedFormComparison {
        displayed_expression,
        displayed_value,
        derived_expression,
        derived_value,
        values_agree: (displayed_value - derived_value).abs()
            <= 1e-12 * displayed_value.abs().max(1.0),
    })
}

/// Supertrace partial sums and their limit estimate.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SupertraceReport {
    pub chi: f64,
    pub n_max: usize,
    pub sign_convention: SignConvention,
    pub constant_term: ConstantTerm,
    /// Value actually used for the constant term.
    pub constant_value: f64,
    /// s_n for n = 1..=n_max, each c₀ + Σ_{N=1}^{n} s^N C_N^π χ^N.
    pub partial_sums: Vec<f64>,
    pub limit_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_reference: Option<ClosedFormComparison>,
}

/// Partial sums of Σ s^N C_N^π χ^N for N = 1..n_max plus the chosen constant
/// term. Coefficients convert to floats here, at evaluation time.
pub fn supertrace_partial(
    chi: f64,
    coefficients: &CoefficientSequence,
    n_max: usize,
    sign: SignConvention,
    constant_term: ConstantTerm,
) -> Result<SupertraceReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    coefficients.coefficient(n_max)?;
    let constant_value = match constant_term {
        ConstantTerm::One => 1.0,
        ConstantTerm::Extrapolated => coefficients.coefficient(0)?.to_f64().unwrap_or(0.0),
    };
    let mut partial_sums = Vec::with_capacity(n_max);
    let mut acc = constant_value;
    let mut chi_pow = 1.0f64;
    for n in 1..=n_max {
        chi_pow *= chi;
        let sign_factor = match sign {
            SignConvention::Plain => 1.0,
            SignConvention::Alternating => {
                if n % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        };
        let coeff = coefficients.coefficient(n)?.to_f64().unwrap_or(0.0);
        acc += sign_factor * coeff * chi_pow;
        partial_sums.push(acc);
    }
    Ok(SupertraceReport {
        chi,
        n_max,
        sign_convention: sign,
        constant_term,
        constant_value,
        limit_estimate: *partial_sums.last().expect("n_max >= 1"),
        partial_sums,
        closed_form_reference: None,
    })
}

/// Catalog convenience: builds the coefficient sequence from the closed-form
/// dimensions and attaches the closed-form reference where one exists.
pub fn supertrace_catalog(
    tag: CatalogTag,
    chi: f64,
    n_max: usize,
    sign: SignConvention,
    constant_term: ConstantTerm,
) -> Result<SupertraceReport> {
    let coeffs = CoefficientSequence::catalog(tag, n_max);
    let mut report = supertrace_partial(chi, &coeffs, n_max, sign, constant_term)?;
    report.closed_form_reference = closed_form_reference(tag, chi).ok();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn beta(values: &[f64]) -> BettiVector {
        BettiVector::new(values.to_vec(), "test").unwrap()
    }

    fn rational(n: u64, d: u64) -> BigRational {
        BigRational::new(BigUint::from(n).into(), BigUint::from(d).into())
    }

    #[test]
    fn coefficient_examples() {
        // inv 2 over 3!·8 = 1/24.
        assert_eq!(c_n_pi(2, 3, 8).unwrap(), rational(1, 24));
        // inv 16 over 4!·16 = 1/24.
        assert_eq!(c_n_pi(16, 4, 16).unwrap(), rational(1, 24));
        assert!(c_n_pi(0, 5, 32).unwrap().is_zero());
        assert!(c_n_pi(9, 2, 8).is_err());
    }

    #[test]
    fn coefficient_bounded_by_inverse_factorial() {
        for n in 1..=12 {
            for inv in [0usize, 1, 2, 1 << n] {
                let c = c_n_pi(inv, n, 1 << n).unwrap();
                assert!(c <= BigRational::new(1.into(), factorial(n).into()));
            }
        }
    }

    #[test]
    fn kunneth_examples() {
        assert_eq!(kunneth_convolve(&beta(&[1.0]), 3).unwrap(), vec![1.0]);
        assert_eq!(
            kunneth_convolve(&beta(&[0.0, 2.0, 0.0]), 2).unwrap(),
            vec![0.0, 0.0, 4.0, 0.0, 0.0]
        );
        assert_eq!(
            kunneth_convolve(&beta(&[1.0, 1.0]), 3).unwrap(),
            vec![1.0, 3.0, 3.0, 1.0]
        );
        assert!(kunneth_convolve(&beta(&[1.0]), 0).is_err());
    }

    /// Brute-force oracle: enumerate all compositions (m₁..m_N) with entries
    /// in 0..=d and accumulate products.
    fn convolve_by_enumeration(values: &[f64], n: usize) -> Vec<f64> {
        let d = values.len() - 1;
        let mut out = vec![0.0; n * d + 1];
        let mut idx = vec![0usize; n];
        loop {
            let m: usize = idx.iter().sum();
            out[m] += idx.iter().map(|&k| values[k]).product::<f64>();
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == n {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] <= d {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn kunneth_matches_composition_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let d = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=4);
            let values: Vec<f64> = (0..=d).map(|_| rng.gen_range(0.0..2.5)).collect();
            let b = beta(&values);
            let fast = kunneth_convolve(&b, n).unwrap();
            let slow = convolve_by_enumeration(&values, n);
            assert_eq!(fast.len(), slow.len());
            for (f, s) in fast.iter().zip(&slow) {
                assert!((f - s).abs() < 1e-9, "{f} vs {s}");
            }
        }
    }

    #[test]
    fn braided_betti_surface_like() {
        // β = (0, 2, 0), N = 2, full invariant space (inv 4 of 4): C = 1/2,
        // so b₂ = (1/2)·4 = 2 and everything else vanishes.
        let r = braided_betti(&beta(&[0.0, 2.0, 0.0]), 2, 4).unwrap();
        assert_eq!(r.c_n_pi, rational(1, 2));
        assert_eq!(r.values, vec![0.0, 0.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn braided_betti_middle_degree_only() {
        // dim X = 2 with only β₁ ≠ 0: the only nonzero output is at m = N.
        let b = beta(&[0.0, 1.7, 0.0]);
        for n in 1..=5 {
            let inv = 2;
            let r = braided_betti(&b, n, inv).unwrap();
            for (m, &v) in r.values.iter().enumerate() {
                if m == n {
                    let expected = r.c_n_pi_float * 1.7f64.powi(n as i32);
                    assert!((v - expected).abs() < 1e-12);
                } else {
                    assert_eq!(v, 0.0, "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn braided_betti_zero_invariant_dimension() {
        let r = braided_betti(&beta(&[1.0, 2.0, 1.0]), 4, 0).unwrap();
        assert!(r.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&beta(&[1.0, 2.0, 1.0])), 0.0);
        assert_eq!(euler_characteristic(&beta(&[0.0, 2.0, 0.0])), -2.0);
        assert_eq!(euler_characteristic(&beta(&[1.0, 0.0])), 1.0);
    }

    #[test]
    fn index_identity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let d = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=8);
            let values: Vec<f64> = (0..=d).map(|_| rng.gen_range(0.0..2.5)).collect();
            let b = beta(&values);
            let inv = rng.gen_range(0..=(1usize << n));
            let r = braided_betti(&b, n, inv).unwrap();
            let chi = euler_characteristic(&b);
            let expected = r.c_n_pi_float * chi.powi(n as i32);
            assert!(
                (r.alternating_sum() - expected).abs() < 1e-9,
                "n={n} inv={inv}"
            );
        }
    }

    #[test]
    fn supertrace_closed_forms_at_chi_two() {
        // e^{−2}, 2e^{−1}, and the resummed third form which vanishes at χ=2.
        let r1 = supertrace_catalog(
            CatalogTag::Ex1,
            2.0,
            30,
            SignConvention::Alternating,
            ConstantTerm::Extrapolated,
        )
        .unwrap();
        assert!((r1.limit_estimate - (-2.0f64).exp()).abs() < 1e-9);
        assert_eq!(r1.constant_value, 1.0);

        let r2 = supertrace_catalog(
            CatalogTag::Ex2,
            2.0,
            30,
            SignConvention::Alternating,
            ConstantTerm::Extrapolated,
        )
        .unwrap();
        assert!((r2.limit_estimate - 2.0 * (-1.0f64).exp()).abs() < 1e-9);
        assert_eq!(r2.constant_value, 2.0);

        let r3 = supertrace_catalog(
            CatalogTag::Ex3,
            2.0,
            30,
            SignConvention::Alternating,
            ConstantTerm::Extrapolated,
        )
        .unwrap();
        assert!(r3.limit_estimate.abs() < 1e-9);
        let reference = r3.closed_form_reference.unwrap();
        assert!(!reference.values_agree);
        assert!((reference.derived_value - 0.0).abs() < 1e-12);
        assert!((reference.displayed_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn supertrace_zero_chi_keeps_constant_term() {
        let r = supertrace_catalog(
            CatalogTag::Ex1,
            0.0,
            10,
            SignConvention::Alternating,
            ConstantTerm::Extrapolated,
        )
        .unwrap();
        assert_eq!(r.limit_estimate, 1.0);
        assert!(r.partial_sums.iter().all(|&s| s == 1.0));
    }

    #[test]
    fn supertrace_convention_constant_differs_for_ex2() {
        let conv = supertrace_catalog(
            CatalogTag::Ex2,
            2.0,
            30,
            SignConvention::Alternating,
            ConstantTerm::One,
        )
        .unwrap();
        // With c₀ = 1 the limit is 2e^{−1} − 1.
        assert!((conv.limit_estimate - (2.0 * (-1.0f64).exp() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn supertrace_partial_sums_converge() {
        for tag in CatalogTag::ALL {
            let r = supertrace_catalog(
                tag,
                4.0,
                30,
                SignConvention::Alternating,
                ConstantTerm::Extrapolated,
            )
            .unwrap();
            assert_eq!(r.partial_sums.len(), 30);
            let last_step = (r.partial_sums[29] - r.partial_sums[28]).abs();
            // |Δs_30| ≤ |χ|^30/30! · max_N N!·C_N ≤ 4^30/30! · 2.
            let bound = 2.0 * 4.0f64.powi(30) / (1..=30).map(|k| k as f64).product::<f64>();
            assert!(last_step <= bound);
        }
    }

    #[test]
    fn plain_sign_series_for_ex1_gives_exp_chi() {
        let r = supertrace_catalog(
            CatalogTag::Ex1,
            1.5,
            30,
            SignConvention::Plain,
            ConstantTerm::Extrapolated,
        )
        .unwrap();
        assert!((r.limit_estimate - 1.5f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn closed_form_reference_agreement_flags() {
        for chi in [-2.0, 0.0, 2.0, 4.0] {
            assert!(
                closed_form_reference(CatalogTag::Ex1, chi)
                    .unwrap()
                    .values_agree
            );
            assert!(
                closed_form_reference(CatalogTag::Ex2, chi)
                    .unwrap()
                    .values_agree
            );
            let ex3 = closed_form_reference(CatalogTag::Ex3, chi).unwrap();
            assert!(!ex3.values_agree);
            // The two forms differ by exactly 1 for every χ.
            assert!((ex3.displayed_value - ex3.derived_value - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            closed_form_reference(CatalogTag::Ex4, 1.0),
            Err(Error::NoClosedForm(_))
        ));
    }

    #[test]
    fn dominance_bound_on_unsigned_sums() {
        // Σ_m b_m(X^N) summed over N is bounded by exp(Σ_k β_k) when every
        // C_N is at most 1/N!.
        let b = beta(&[1.0, 2.0, 1.0]);
        let total: f64 = b.values().iter().sum();
        let mut acc = 1.0; // N = 0 term
        for n in 1..=12 {
            let conv = kunneth_convolve(&b, n).unwrap();
            let c = c_n_pi(1 << n, n, 1 << n).unwrap().to_f64().unwrap();
            acc += c * conv.iter().sum::<f64>();
        }
        assert!(acc <= total.exp() + 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BettiVector::new(vec![], "x").is_err());
        assert!(BettiVector::new(vec![1.0, -0.5], "x").is_err());
        assert!(BettiVector::new(vec![f64::NAN], "x").is_err());
        let coeffs = CoefficientSequence::catalog(CatalogTag::Ex1, 5);
        assert!(matches!(
            supertrace_partial(1.0, &coeffs, 9, SignConvention::Plain, ConstantTerm::One),
            Err(Error::CoefficientSequenceTooShort { .. })
        ));
    }
}
