//! Bell-diagonal states of two `2^n`-dimensional subsystems.
//!
//! A state is `ρ = (1/N²) Σ_a t_a Γ_a ⊗ Γ_a` with `N = 2^n` and real
//! coefficients `t` indexed by 2n-bit exponent vectors; equivalently
//! `ρ = Σ_i p_i π_i` over the common projectors of the commuting
//! involutions `g_k = γ_k ⊗ γ_k`. The coefficient and spectral pictures
//! are linked by the ±1 character transform
//!
//! ```text
//! p_i = (1/4^n) Σ_j (-1)^{i·j} t_j,     t_j = Σ_i (-1)^{i·j} p_i,
//! ```
//!
//! implemented as a fast Walsh-Hadamard transform. Indices pack bit `i_1`
//! most significant.

mod dense;

use crate::error::{Error, Result};
use crate::pauli_algebra::ExponentVector;
use crate::scalar::Scalar;

pub use dense::{
    materialize, partial_trace_left, partial_trace_right, projector, projector_eigenvectors,
};

const MAX_TENSOR_N: usize = 8;

/// Real coefficients `t` of a state in the `Γ_a ⊗ Γ_a` operator basis,
/// of length `4^n` with `t[0] = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor<T: Scalar> {
    n: usize,
    t: Vec<T>,
}

impl<T: Scalar> CorrelationTensor<T> {
    /// The zero tensor apart from the identity entry: the maximally mixed
    /// state.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_n(n)?;
        let mut t = vec![T::zero(); 1 << (2 * n)];
        t[0] = T::one();
        Ok(Self { n, t })
    }

    /// Builds from the full coefficient vector in index order.
    pub fn from_coefficients(n: usize, t: Vec<T>) -> Result<Self> {
        check_n(n)?;
        if t.len() != 1 << (2 * n) {
            return Err(Error::DimensionMismatch {
                expected: 1 << (2 * n),
                got: t.len(),
            });
        }
        Ok(Self { n, t })
    }

    /// Builds from sparse `(exponent vector, coefficient)` entries; missing
    /// entries are zero and the identity entry defaults to 1.
    pub fn from_entries(n: usize, entries: &[(ExponentVector, T)]) -> Result<Self> {
        let mut out = Self::maximally_mixed(n)?;
        for (a, v) in entries {
            if a.width() != 2 * n {
                return Err(Error::DimensionMismatch {
                    expected: 2 * n,
                    got: a.width(),
                });
            }
            out.t[a.index()] = *v;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[allow(clippy::len_without_is_empty)] // length is 4^n, never zero
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.t
    }

    pub fn get(&self, a: ExponentVector) -> T {
        self.t[a.index()]
    }

    /// Exponent vectors with nonzero coefficient, the identity excluded.
    pub fn support(&self) -> Vec<ExponentVector> {
        (1..self.len())
            .filter(|&i| self.t[i] != T::zero())
            .map(|i| ExponentVector::from_index(i, 2 * self.n).expect("in-range"))
            .collect()
    }
}

/// Probability vector of length `4^n`: the eigenvalue of the projector
/// `π_i` in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Scalar> {
    n: usize,
    p: Vec<T>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn uniform(n: usize) -> Result<Self> {
        check_n(n)?;
        let len = 1usize << (2 * n);
        let v = T::one() / T::from_usize(len).expect("small");
        Ok(Self {
            n,
            p: vec![v; len],
        })
    }

    pub fn from_probabilities(n: usize, p: Vec<T>) -> Result<Self> {
        check_n(n)?;
        if p.len() != 1 << (2 * n) {
            return Err(Error::DimensionMismatch {
                expected: 1 << (2 * n),
                got: p.len(),
            });
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[allow(clippy::len_without_is_empty)] // length is 4^n, never zero
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn probabilities(&self) -> &[T] {
        &self.p
    }

    pub fn get(&self, i: ExponentVector) -> T {
        self.p[i.index()]
    }

    pub fn sum(&self) -> T {
        self.p.iter().copied().sum()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > MAX_TENSOR_N {
        return Err(Error::ResourceLimit(format!(
            "n = {n} exceeds the supported cap of {MAX_TENSOR_N}"
        )));
    }
    Ok(())
}

/// In-place unnormalized Walsh-Hadamard transform:
/// `y_i = Σ_j (-1)^{i·j} x_j`. Applying it twice multiplies by the length.
fn fwht_in_place<T: Scalar>(data: &mut [T]) {
    debug_assert!(data.len().is_power_of_two());
    let mut h = 1;
    while h < data.len() {
        for block in (0..data.len()).step_by(2 * h) {
            for i in block..block + h {
                let a = data[i];
                let b = data[i + h];
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Spectral probabilities from tensor coefficients:
/// `p_i = (1/4^n) Σ_j (-1)^{i·j} t_j`.
pub fn spectrum_from_tensor<T: Scalar>(tensor: &CorrelationTensor<T>) -> Spectrum<T> {
    let mut p = tensor.t.clone();
    fwht_in_place(&mut p);
    let scale = T::one() / T::from_usize(p.len()).expect("small");
    for v in p.iter_mut() {
        *v *= scale;
    }
    Spectrum { n: tensor.n, p }
}

/// Tensor coefficients from spectral probabilities:
/// `t_j = Σ_i (-1)^{i·j} p_i`. Exact inverse of [`spectrum_from_tensor`].
pub fn tensor_from_spectrum<T: Scalar>(spectrum: &Spectrum<T>) -> CorrelationTensor<T> {
    let mut t = spectrum.p.clone();
    fwht_in_place(&mut t);
    CorrelationTensor { n: spectrum.n, t }
}

/// A validated Bell-diagonal state carrying both pictures, kept
/// consistent: `spectrum = WHT(tensor)/4^n` up to the positivity clamp.
#[derive(Debug, Clone)]
pub struct BellDiagonalState<T: Scalar> {
    tensor: CorrelationTensor<T>,
    spectrum: Spectrum<T>,
}

impl<T: Scalar> BellDiagonalState<T> {
    /// Positivity gate: accepts the tensor if `t[0] = 1` within tolerance
    /// and every spectral value is at least `-positivity_tolerance()`;
    /// tiny negatives are clamped to zero.
    pub fn from_tensor(tensor: CorrelationTensor<T>) -> Result<Self> {
        let t0 = tensor.t[0];
        if (t0 - T::one()).abs() > T::unit_sum_tolerance() {
            return Err(Error::Normalization {
                got: t0.to_f64_lossy(),
            });
        }
        let mut spectrum = spectrum_from_tensor(&tensor);
        for (i, v) in spectrum.p.iter_mut().enumerate() {
            if *v < T::zero() {
                if *v < -T::positivity_tolerance() {
                    let index = ExponentVector::from_index(i, 2 * tensor.n)
                        .expect("in-range")
                        .to_string();
                    return Err(Error::NotAState {
                        index,
                        value: v.to_f64_lossy(),
                    });
                }
                *v = T::zero();
            }
        }
        Ok(Self { tensor, spectrum })
    }

    /// Builds from a spectrum, checking nonnegativity and unit sum.
    pub fn from_spectrum(spectrum: Spectrum<T>) -> Result<Self> {
        let sum = spectrum.sum();
        if (sum - T::one()).abs() > T::unit_sum_tolerance() {
            return Err(Error::Normalization {
                got: sum.to_f64_lossy(),
            });
        }
        let mut spectrum = spectrum;
        for (i, v) in spectrum.p.iter_mut().enumerate() {
            if *v < T::zero() {
                if *v < -T::positivity_tolerance() {
                    let index = ExponentVector::from_index(i, 2 * spectrum.n)
                        .expect("in-range")
                        .to_string();
                    return Err(Error::NotAState {
                        index,
                        value: v.to_f64_lossy(),
                    });
                }
                *v = T::zero();
            }
        }
        let mut tensor = tensor_from_spectrum(&spectrum);
        tensor.t[0] = T::one();
        Ok(Self { tensor, spectrum })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        Self::from_tensor(CorrelationTensor::maximally_mixed(n)?)
    }

    pub fn n(&self) -> usize {
        self.tensor.n
    }

    pub fn tensor(&self) -> &CorrelationTensor<T> {
        &self.tensor
    }

    pub fn spectrum(&self) -> &Spectrum<T> {
        &self.spectrum
    }
}

/// Spectrum of the product of marginals `π_ρ`.
///
/// Every `Γ_a` with `a ≠ 0` is traceless, so both marginals of any state
/// in this family are maximally mixed and `π_ρ` is uniform.
pub fn marginal_product<T: Scalar>(state: &BellDiagonalState<T>) -> Spectrum<T> {
    Spectrum::uniform(state.n()).expect("state n already validated")
}

/// State with only the single-`g_k` coefficients (the axis) and the
/// coefficient of the product of all generators.
///
/// `t_all` multiplies the hermitian involution `γ_{2n+1} ⊗ γ_{2n+1}`,
/// whose projector eigenvalue is `(-1)^n (-1)^{i_1+...+i_{2n}}`; the raw
/// tensor entry at the all-ones index is therefore `(-1)^n t_all`.
#[derive(Debug, Clone)]
pub struct BlochSphereState<T: Scalar> {
    axis: Vec<T>,
    t_all: T,
    state: BellDiagonalState<T>,
}

/// Builds a Bloch-sphere state from its 2n axis coefficients and `t_all`.
pub fn bloch_state<T: Scalar>(axis: &[T], t_all: T) -> Result<BlochSphereState<T>> {
    if axis.len() % 2 != 0 || axis.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "axis length must be even and positive, got {}",
            axis.len()
        )));
    }
    let n = axis.len() / 2;
    check_n(n)?;
    let width = 2 * n;
    let mut t = vec![T::zero(); 1 << width];
    t[0] = T::one();
    for (k, &v) in axis.iter().enumerate() {
        t[1 << (width - 1 - k)] = v;
    }
    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
    t[(1 << width) - 1] = sign * t_all;
    let state = BellDiagonalState::from_tensor(CorrelationTensor { n, t })?;
    Ok(BlochSphereState {
        axis: axis.to_vec(),
        t_all,
        state,
    })
}

impl<T: Scalar> BlochSphereState<T> {
    pub fn n(&self) -> usize {
        self.state.n()
    }

    pub fn axis(&self) -> &[T] {
        &self.axis
    }

    pub fn t_all(&self) -> T {
        self.t_all
    }

    pub fn state(&self) -> &BellDiagonalState<T> {
        &self.state
    }

    /// Separability: coefficient bound `Σ|axis| + |t_all| <= 1`,
    /// equivalently every spectral value at most `2/N²`. Both checks are
    /// computed and must agree.
    pub fn is_separable(&self) -> bool {
        let tol = T::positivity_tolerance();
        let sum: T = self.axis.iter().map(|v| v.abs()).sum::<T>() + self.t_all.abs();
        let by_coefficients = sum <= T::one() + tol;

        let cap = T::from_f64_lossy(2.0) / T::from_usize(self.state.spectrum.len()).expect("small");
        let max_p = self
            .state
            .spectrum
            .probabilities()
            .iter()
            .copied()
            .fold(T::zero(), T::max);
        let by_spectrum = max_p <= cap + tol;

        assert_eq!(
            by_coefficients, by_spectrum,
            "separability checks disagree: sum = {sum}, max p = {max_p}"
        );
        by_coefficients
    }
}
