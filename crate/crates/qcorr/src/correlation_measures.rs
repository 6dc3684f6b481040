//! Entropic correlation measures and the analytic closest classical state.
//!
//! The closest classical state of a Bell-diagonal state keeps exactly the
//! tensor coefficients supported on one abelian subgroup and zeroes the
//! rest; its eigenvalues are `2^n`-fold degenerate. Quantum discord is the
//! minimum of `S(ρ‖χ_G)` over the subgroup family, which reduces to
//! `min_G S(χ_G) - S(ρ)` because every candidate is diagonal in the same
//! projector basis as `ρ`.

use crate::bell_state::{marginal_product, BellDiagonalState, BlochSphereState, Spectrum};
use crate::error::{Error, Result};
use crate::pauli_algebra::{enumerate_abelian_subgroups, AbelianSubgroup, ExponentVector};
use crate::scalar::Scalar;

fn xlog2x<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        x * x.log2()
    } else {
        T::zero()
    }
}

/// Von Neumann entropy of a diagonal state, in bits: `-Σ p log2 p` with
/// `0 log 0 = 0`.
pub fn entropy<T: Scalar>(p: &Spectrum<T>) -> T {
    -p.probabilities().iter().map(|&x| xlog2x(x)).sum::<T>()
}

/// Relative entropy `S(p‖q) = Σ p log2(p/q)` of commuting (diagonal)
/// inputs, in bits. Nonnegative, zero iff `p = q`.
pub fn relative_entropy<T: Scalar>(p: &Spectrum<T>, q: &Spectrum<T>) -> Result<T> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let mut acc = T::zero();
    for (i, (&pi, &qi)) in p
        .probabilities()
        .iter()
        .zip(q.probabilities())
        .enumerate()
    {
        if pi > T::zero() {
            if qi <= T::zero() {
                let index = ExponentVector::from_index(i, 2 * p.n())
                    .expect("in-range")
                    .to_string();
                return Err(Error::InfiniteDivergence { index });
            }
            acc += pi * (pi.log2() - qi.log2());
        }
    }
    Ok(acc)
}

/// A classical state: the projection of a Bell-diagonal state onto the
/// span of one abelian subgroup.
#[derive(Debug, Clone)]
pub struct ClassicalState<T: Scalar> {
    subgroup: AbelianSubgroup,
    q: Vec<T>,
    state: BellDiagonalState<T>,
}

impl<T: Scalar> ClassicalState<T> {
    pub fn subgroup(&self) -> &AbelianSubgroup {
        &self.subgroup
    }

    /// The `2^n` distinct eigenvalues, indexed by syndrome; each occurs
    /// with multiplicity `2^n` in the full spectrum.
    pub fn distinct_eigenvalues(&self) -> &[T] {
        &self.q
    }

    pub fn state(&self) -> &BellDiagonalState<T> {
        &self.state
    }

    pub fn full_spectrum(&self) -> &Spectrum<T> {
        self.state.spectrum()
    }

    pub fn entropy(&self) -> T {
        entropy(self.state.spectrum())
    }
}

/// Syndrome of a full index against the subgroup generators: bit `k` is
/// `a_k · i (mod 2)`, selecting the coset the index belongs to.
fn syndrome(sub: &AbelianSubgroup, index: usize, width: usize) -> usize {
    let i = ExponentVector::from_index(index, width).expect("in-range");
    let mut m = 0usize;
    for g in sub.canonical_form() {
        m = (m << 1) | usize::from(g.dot(i));
    }
    m
}

/// Classical state for one subgroup: keeps `t_a` for `a` in the span,
/// zero elsewhere.
///
/// The distinct eigenvalues come from the n-bit syndrome transform
/// `q_m = (1/4^n) Σ_s (-1)^{m·s} t[Σ_k s_k a_k]`, and the full spectrum is
/// the coset-wise block average of the parent spectrum, which is asserted.
pub fn ccs_for_subgroup<T: Scalar>(
    state: &BellDiagonalState<T>,
    subgroup: &AbelianSubgroup,
) -> Result<ClassicalState<T>> {
    let n = state.n();
    let width = 2 * n;
    if subgroup.width() != width {
        return Err(Error::DimensionMismatch {
            expected: width,
            got: subgroup.width(),
        });
    }
    if subgroup.rank() != n {
        return Err(Error::InvalidArgument(format!(
            "subgroup rank {} does not match n = {n}",
            subgroup.rank()
        )));
    }

    let span = subgroup.span();
    let classes = 1usize << n;
    let scale = T::one() / T::from_usize(1 << width).expect("small");
    let mut q = vec![T::zero(); classes];
    for (m, qm) in q.iter_mut().enumerate() {
        let mut acc = T::zero();
        for (s, member) in span.iter().enumerate() {
            let sign_bit = (m & s).count_ones() & 1;
            let t = state.tensor().get(*member);
            acc = if sign_bit == 0 { acc + t } else { acc - t };
        }
        *qm = acc * scale;
    }

    // Coset averages of the parent spectrum must reproduce q.
    let mult = T::from_usize(classes).expect("small");
    let consistency = T::positivity_tolerance() * T::from_f64_lossy(100.0);
    let mut sums = vec![T::zero(); classes];
    for (i, &p) in state.spectrum().probabilities().iter().enumerate() {
        sums[syndrome(subgroup, i, width)] += p;
    }
    for (m, &s) in sums.iter().enumerate() {
        let avg = s / mult;
        assert!(
            (avg - q[m]).abs() <= consistency,
            "coset average {avg} disagrees with syndrome transform {} at m={m}",
            q[m],
        );
    }

    let mut full = vec![T::zero(); 1 << width];
    for (i, slot) in full.iter_mut().enumerate() {
        *slot = q[syndrome(subgroup, i, width)];
    }
    let spectrum = Spectrum::from_probabilities(n, full)?;
    let state = BellDiagonalState::from_spectrum(spectrum)?;
    Ok(ClassicalState {
        subgroup: subgroup.clone(),
        q,
        state,
    })
}

/// Quantum discord in bits together with the minimizing classical state.
///
/// `D = min_G S(χ_G) - S(ρ)` over all abelian subgroups; ties resolve to
/// the first subgroup in canonical order.
///
/// ```
/// use qcorr::bell_state::{BellDiagonalState, CorrelationTensor};
/// use qcorr::correlation_measures::discord;
/// use qcorr::pauli_algebra::ExponentVector;
///
/// let ev = |s| ExponentVector::from_bitstring(s).unwrap();
/// let tensor = CorrelationTensor::from_entries(
///     1,
///     &[(ev("10"), 0.3f64), (ev("01"), 0.2), (ev("11"), 0.1)],
/// )?;
/// let state = BellDiagonalState::from_tensor(tensor)?;
/// let (bits, ccs) = discord(&state)?;
/// assert!((bits - 0.030366).abs() < 1e-6);
/// assert_eq!(ccs.subgroup().to_string(), "10");
/// # Ok::<(), qcorr::Error>(())
/// ```
pub fn discord<T: Scalar>(state: &BellDiagonalState<T>) -> Result<(T, ClassicalState<T>)> {
    let subgroups = enumerate_abelian_subgroups(state.n())?;
    let s_rho = entropy(state.spectrum());
    let mut best: Option<(T, ClassicalState<T>)> = None;
    for g in &subgroups {
        let chi = ccs_for_subgroup(state, g)?;
        let s_chi = chi.entropy();
        match &best {
            Some((s, _)) if *s <= s_chi => {}
            _ => best = Some((s_chi, chi)),
        }
    }
    let (s_chi, chi) = best.expect("subgroup family is never empty");
    let d = s_chi - s_rho;
    debug_assert!(d > -T::from_f64_lossy(1e-9), "negative discord {d}");
    Ok((d.max(T::zero()), chi))
}

/// Closed-form discord of a Bloch-sphere state, in bits:
///
/// ```text
/// D = Σ p log2 p - (1-t)/2 log2(1-t) - (1+t)/2 log2(1+t) + 2 log2 N
/// ```
///
/// with `t` the largest coefficient magnitude among the axis entries and
/// `t_all`. Equals [`discord`] on these states.
pub fn bloch_discord_closed_form<T: Scalar>(state: &BlochSphereState<T>) -> T {
    let t_max = state
        .axis()
        .iter()
        .map(|v| v.abs())
        .fold(state.t_all().abs(), T::max);
    let half = T::from_f64_lossy(0.5);
    let n_bits = T::from_usize(2 * state.n()).expect("small");
    let sum_plogp: T = state
        .state()
        .spectrum()
        .probabilities()
        .iter()
        .map(|&p| xlog2x(p))
        .sum();
    sum_plogp - half * xlog2x(T::one() - t_max) - half * xlog2x(T::one() + t_max) + n_bits
}

/// Total mutual information `T_ρ = S(ρ‖π_ρ)` in bits. The product of
/// marginals is uniform here, so this is `2 log2 N - S(ρ)`.
pub fn total_mutual_information<T: Scalar>(state: &BellDiagonalState<T>) -> T {
    let uniform = marginal_product(state);
    debug_assert_eq!(uniform.len(), state.spectrum().len());
    T::from_usize(2 * state.n()).expect("small") - entropy(state.spectrum())
}

/// Classical correlation `C = min_π S(χ‖π)` over product states, in bits.
/// The minimizer is the product of marginals, uniform for this family,
/// giving `2 log2 N - S(χ)`.
pub fn classical_correlation<T: Scalar>(chi: &ClassicalState<T>) -> T {
    T::from_usize(2 * chi.state.n()).expect("small") - chi.entropy()
}

/// Permutation maximizing `Σ_i λ_i log2 μ_{perm(i)}`, with its value.
///
/// Sorting both vectors and pairing largest with largest is optimal by the
/// rearrangement inequality; the Birkhoff sampling certificate in the
/// oracle module checks this against random doubly stochastic matrices.
pub fn best_permutation_alignment<T: Scalar>(
    lambda: &[T],
    mu: &[T],
) -> Result<(Vec<usize>, T)> {
    if lambda.len() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            got: mu.len(),
        });
    }
    let mut lam_order: Vec<usize> = (0..lambda.len()).collect();
    lam_order.sort_by(|&a, &b| lambda[b].partial_cmp(&lambda[a]).expect("finite"));
    let mut mu_order: Vec<usize> = (0..mu.len()).collect();
    mu_order.sort_by(|&a, &b| mu[b].partial_cmp(&mu[a]).expect("finite"));

    let mut perm = vec![0usize; lambda.len()];
    for (li, mi) in lam_order.iter().zip(&mu_order) {
        perm[*li] = *mi;
    }
    let mut value = T::zero();
    for (i, &target) in perm.iter().enumerate() {
        if lambda[i] != T::zero() {
            if mu[target] <= T::zero() {
                return Err(Error::InfiniteDivergence {
                    index: target.to_string(),
                });
            }
            value += lambda[i] * mu[target].log2();
        }
    }
    Ok((perm, value))
}

/// Full correlation report for one state.
#[derive(Debug, Clone)]
pub struct CorrelationReport<T: Scalar> {
    pub discord: T,
    pub entropy: T,
    pub total_mutual_information: T,
    pub classical_correlation: T,
    /// `S(π_{χ_ρ}) - S(π_ρ)`; zero for Bell-diagonal states, which makes
    /// the distance-based and original discord coincide.
    pub l_rho_check: T,
    pub ccs: ClassicalState<T>,
}

/// Computes every measure of the report from the state's spectra.
pub fn correlation_report<T: Scalar>(
    state: &BellDiagonalState<T>,
) -> Result<CorrelationReport<T>> {
    let (d, ccs) = discord(state)?;
    let s_rho = entropy(state.spectrum());
    let l_rho_check = entropy(&marginal_product(ccs.state())) - entropy(&marginal_product(state));
    Ok(CorrelationReport {
        discord: d,
        entropy: s_rho,
        total_mutual_information: total_mutual_information(state),
        classical_correlation: classical_correlation(&ccs),
        l_rho_check,
        ccs,
    })
}
