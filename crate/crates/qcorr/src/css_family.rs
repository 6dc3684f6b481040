//! Entangled families with a known closest separable state.
//!
//! Starting from a separable Bloch-sphere state `σ` on the boundary face
//! (`ṕ` at the all-ones index equal to `2/N²`) and an entanglement witness
//! `w` of the hermitian-involution family, the curve
//! `ρ(x) = σ - x L_σ^{-1}(w)` stays a valid state for `0 < x <= x_max`
//! and has `σ` as its closest separable state by construction. In the
//! common projector basis the map is diagonal:
//! `p_j = ṕ_j (1 - x λ^w_j)`.
//!
//! The subadditivity gap `E + Q + C_σ - T_ρ` telescopes to the closed form
//! `x Σ_j λ^w_j ṕ_j log2 ṕ_j`, which this module evaluates both ways.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::Ratio;
use rand::Rng;

use crate::bell_state::{bloch_state, BellDiagonalState, BlochSphereState, Spectrum};
use crate::correlation_measures::{
    classical_correlation, discord, relative_entropy, total_mutual_information,
};
use crate::error::{Error, Result};
use crate::pauli_algebra::{ExponentVector, GammaSet};
use crate::scalar::Scalar;

/// Entanglement witness of the family
/// `w = c [I + Σ_k (-1)^{i_k} γ_k⊗γ_k - (-i)^{2n} (-1)^{Σi} γ_{2n+1}⊗γ_{2n+1}]`
/// with `c = 1/(N sqrt(2(n+1)))`, diagonal in the common projector basis.
#[derive(Debug, Clone)]
pub struct WitnessSpec<T: Scalar> {
    n: usize,
    sign_bits: ExponentVector,
    eigenvalues: Vec<T>,
    scale: T,
}

/// Integer bracket of the eigenvalue formula:
/// `m_j = 1 + Σ_k (-1)^{i_k + j_k} - (-1)^{Σi + Σj}`, so `λ_j = c m_j`.
fn witness_bracket(n: usize, sign_bits: usize, j: usize) -> i64 {
    let width = 2 * n;
    let mut m = 1i64;
    for k in 0..width {
        let ik = (sign_bits >> (width - 1 - k)) & 1;
        let jk = (j >> (width - 1 - k)) & 1;
        m += if (ik + jk) % 2 == 0 { 1 } else { -1 };
    }
    let parity = (sign_bits.count_ones() + j.count_ones()) % 2;
    m -= if parity == 0 { 1 } else { -1 };
    m
}

/// Builds the witness for the given sign bits `i_1 ... i_{2n}`.
pub fn witness<T: Scalar>(n: usize, sign_bits: ExponentVector) -> Result<WitnessSpec<T>> {
    if n == 0 || n > 4 {
        return Err(Error::ResourceLimit(format!(
            "witness family supports 1 <= n <= 4, got {n}"
        )));
    }
    if sign_bits.width() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: sign_bits.width(),
        });
    }
    let len = 1usize << (2 * n);
    let norm = T::from_usize(1 << n).expect("small")
        * (T::from_f64_lossy(2.0) * T::from_usize(n + 1).expect("small")).sqrt();
    let scale = T::one() / norm;
    let eigenvalues = (0..len)
        .map(|j| scale * T::from_i64(witness_bracket(n, sign_bits.index(), j)).expect("small"))
        .collect();
    Ok(WitnessSpec {
        n,
        sign_bits,
        eigenvalues,
        scale,
    })
}

impl<T: Scalar> WitnessSpec<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign_bits(&self) -> ExponentVector {
        self.sign_bits
    }

    /// Eigenvalue vector `λ^w`, indexed like a spectrum.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// The normalization constant `c`.
    pub fn scale(&self) -> T {
        self.scale
    }

    /// Exact check of `Σ_j (λ^w_j)² = 1` in rational arithmetic:
    /// `Σ m_j²` over the integer brackets must equal `N² · 2(n+1)`.
    pub fn normalization_is_exact(&self) -> bool {
        let n = self.n;
        let len = 1usize << (2 * n);
        let sum_sq: i128 = (0..len)
            .map(|j| {
                let m = witness_bracket(n, self.sign_bits.index(), j) as i128;
                m * m
            })
            .sum();
        let denom = (len as i128) * 2 * (n as i128 + 1);
        Ratio::new(sum_sq, denom) == Ratio::from_integer(1)
    }

    /// Dense matrix of the witness for `n <= 2`.
    pub fn materialize(&self, set: &GammaSet<T>) -> Result<DMatrix<Complex<T>>> {
        if set.dimension() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: set.dimension(),
            });
        }
        if self.n > 2 {
            return Err(Error::ResourceLimit(format!(
                "dense witness supports n <= 2, got {}",
                self.n
            )));
        }
        let dim = 1usize << (2 * self.n);
        let c = Complex::new(self.scale, T::zero());
        let mut out = DMatrix::<Complex<T>>::identity(dim, dim).map(|z| z * c);
        for k in 1..=2 * self.n {
            let g = set.gamma(k);
            let term = g.kronecker(g);
            let sign = if self.sign_bits.bit(k) == 0 {
                self.scale
            } else {
                -self.scale
            };
            let w = Complex::new(sign, T::zero());
            out.zip_apply(&term, |o, v| *o += v * w);
        }
        // -(-i)^{2n} (-1)^{Σi} on the γ_{2n+1} ⊗ γ_{2n+1} term.
        let gs = set.gamma_s();
        let term = gs.kronecker(gs);
        let mut sign = -self.scale;
        if self.n % 2 == 1 {
            sign = -sign;
        }
        if self.sign_bits.weight() % 2 == 1 {
            sign = -sign;
        }
        let w = Complex::new(sign, T::zero());
        out.zip_apply(&term, |o, v| *o += v * w);
        Ok(out)
    }
}

fn check_matching<T: Scalar>(sigma: &BlochSphereState<T>, w: &WitnessSpec<T>) -> Result<()> {
    if sigma.n() != w.n {
        return Err(Error::DimensionMismatch {
            expected: w.n,
            got: sigma.n(),
        });
    }
    Ok(())
}

/// Residual of `Tr(L_σ^{-1}(w)) = 0`, computed as `Σ_j λ^w_j ṕ_j`.
///
/// For the all-zero sign bits this equals
/// `c [1 + Σ_k t́_k - (-1)^n t́_all]`, which vanishes exactly when `σ` lies
/// on the boundary face `ṕ_{1...1} = 2/N²`.
pub fn trace_condition<T: Scalar>(sigma: &BlochSphereState<T>, w: &WitnessSpec<T>) -> Result<T> {
    check_matching(sigma, w)?;
    let residual: T = w
        .eigenvalues
        .iter()
        .zip(sigma.state().spectrum().probabilities())
        .map(|(&l, &p)| l * p)
        .sum();
    if w.sign_bits.index() == 0 {
        let sign = if sigma.n() % 2 == 0 {
            T::one()
        } else {
            -T::one()
        };
        let axis_sum: T = sigma.axis().iter().copied().sum();
        let algebraic = w.scale * (T::one() + axis_sum - sign * sigma.t_all());
        debug_assert!(
            (residual - algebraic).abs() <= T::from_f64_lossy(1e-12),
            "trace-condition routes disagree: {residual} vs {algebraic}"
        );
    }
    Ok(residual)
}

fn require_trace_condition<T: Scalar>(
    sigma: &BlochSphereState<T>,
    w: &WitnessSpec<T>,
) -> Result<()> {
    let residual = trace_condition(sigma, w)?;
    if residual.abs() > T::positivity_tolerance() {
        return Err(Error::PreconditionViolated(format!(
            "trace condition violated: residual {residual}"
        )));
    }
    Ok(())
}

fn require_strictly_positive<T: Scalar>(sigma: &BlochSphereState<T>) -> Result<()> {
    for (i, &p) in sigma.state().spectrum().probabilities().iter().enumerate() {
        if p <= T::zero() {
            let index = ExponentVector::from_index(i, 2 * sigma.n())
                .expect("in-range")
                .to_string();
            return Err(Error::SingularMap { index });
        }
    }
    Ok(())
}

/// Diagonal of `L_σ^{-1}(w)` in the common projector basis: `λ^w_j ṕ_j`.
///
/// `σ` must be strictly positive because the log-mean defining the map is
/// undefined at zero eigenvalues.
pub fn l_inverse_apply<T: Scalar>(
    sigma: &BlochSphereState<T>,
    w: &WitnessSpec<T>,
) -> Result<Vec<T>> {
    check_matching(sigma, w)?;
    require_strictly_positive(sigma)?;
    Ok(w
        .eigenvalues
        .iter()
        .zip(sigma.state().spectrum().probabilities())
        .map(|(&l, &p)| l * p)
        .collect())
}

fn log_mean<T: Scalar>(a: T, b: T) -> T {
    if (a - b).abs() <= T::from_f64_lossy(1e-12) * a.max(b) {
        (a + b) / T::from_f64_lossy(2.0)
    } else {
        (a - b) / (a.ln() - b.ln())
    }
}

/// Full entrywise-product route for `L_σ^{-1}(w)`: conjugates the dense
/// witness into the projector eigenbasis, multiplies entrywise with the
/// log-mean matrix `S(σ)`, and returns the diagonal. Off-diagonal entries
/// must vanish since `w` is diagonal in that basis. `n <= 2`.
pub fn l_inverse_apply_dense<T: Scalar>(
    sigma: &BlochSphereState<T>,
    w: &WitnessSpec<T>,
    set: &GammaSet<T>,
) -> Result<Vec<T>> {
    check_matching(sigma, w)?;
    require_strictly_positive(sigma)?;
    let vectors = crate::bell_state::projector_eigenvectors(set)?;
    let dense = w.materialize(set)?;
    let applied: Vec<_> = vectors.iter().map(|v| &dense * v).collect();
    let conj_dot = |a: &nalgebra::DVector<Complex<T>>, b: &nalgebra::DVector<Complex<T>>| {
        a.iter()
            .zip(b.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
                acc + x.conj() * y
            })
    };
    let p = sigma.state().spectrum().probabilities();
    let dim = p.len();
    let tol = T::from_f64_lossy(1e-10);
    let mut diagonal = Vec::with_capacity(dim);
    for k in 0..dim {
        for l in 0..dim {
            let wkl = conj_dot(&vectors[k], &applied[l]);
            let entry = wkl * Complex::new(log_mean(p[k], p[l]), T::zero());
            if k == l {
                debug_assert!(entry.im.abs() <= tol);
                diagonal.push(entry.re);
            } else {
                let magnitude = entry.norm_sqr().sqrt();
                debug_assert!(magnitude <= tol, "off-diagonal entry {entry} at ({k}, {l})");
                let _ = magnitude;
            }
        }
    }
    Ok(diagonal)
}

/// One member of the entangled family, with `σ` its closest separable
/// state by construction.
#[derive(Debug, Clone)]
pub struct CssFamilyPoint<T: Scalar> {
    sigma: BlochSphereState<T>,
    witness: WitnessSpec<T>,
    x: T,
    rho: BellDiagonalState<T>,
}

impl<T: Scalar> CssFamilyPoint<T> {
    pub fn sigma(&self) -> &BlochSphereState<T> {
        &self.sigma
    }

    pub fn witness(&self) -> &WitnessSpec<T> {
        &self.witness
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn rho(&self) -> &BellDiagonalState<T> {
        &self.rho
    }

    pub fn rho_spectrum(&self) -> &Spectrum<T> {
        self.rho.spectrum()
    }
}

fn x_max_of_eigenvalues<T: Scalar>(lambdas: &[T]) -> Result<T> {
    lambdas
        .iter()
        .filter(|&&l| l > T::zero())
        .map(|&l| T::one() / l)
        .min_by(|a, b| a.partial_cmp(b).expect("finite"))
        .ok_or(Error::UnboundedFamily)
}

/// Largest `x` keeping `ρ(x, σ)` a state: `min over λ^w_j > 0 of 1/λ^w_j`.
/// The spectrum of `ρ(x_max)` touches zero there.
pub fn x_max<T: Scalar>(sigma: &BlochSphereState<T>, w: &WitnessSpec<T>) -> Result<T> {
    check_matching(sigma, w)?;
    require_trace_condition(sigma, w)?;
    x_max_of_eigenvalues(&w.eigenvalues)
}

/// The family member `ρ(x, σ)` with spectrum `ṕ_j (1 - x λ^w_j)`.
pub fn rho_of_x<T: Scalar>(
    sigma: &BlochSphereState<T>,
    w: &WitnessSpec<T>,
    x: T,
) -> Result<CssFamilyPoint<T>> {
    check_matching(sigma, w)?;
    require_trace_condition(sigma, w)?;
    let xm = x_max_of_eigenvalues(&w.eigenvalues)?;
    let slack = T::from_f64_lossy(1e-12);
    if x <= T::zero() || x > xm + slack {
        return Err(Error::DomainError(format!(
            "x = {x} outside the family range (0, {xm}]"
        )));
    }
    let p: Vec<T> = w
        .eigenvalues
        .iter()
        .zip(sigma.state().spectrum().probabilities())
        .map(|(&l, &pp)| pp * (T::one() - x * l))
        .collect();
    let spectrum = Spectrum::from_probabilities(sigma.n(), p)?;
    let rho = BellDiagonalState::from_spectrum(spectrum)?;
    Ok(CssFamilyPoint {
        sigma: sigma.clone(),
        witness: w.clone(),
        x,
        rho,
    })
}

/// Closed-form subadditivity gap `x Σ_j λ^w_j ṕ_j log2 ṕ_j`, in bits.
/// Requires a strictly positive `σ` spectrum.
pub fn gap_analytic<T: Scalar>(
    sigma: &BlochSphereState<T>,
    w: &WitnessSpec<T>,
    x: T,
) -> Result<T> {
    check_matching(sigma, w)?;
    require_trace_condition(sigma, w)?;
    require_strictly_positive(sigma)?;
    let sum: T = w
        .eigenvalues
        .iter()
        .zip(sigma.state().spectrum().probabilities())
        .map(|(&l, &p)| l * p * p.log2())
        .sum();
    Ok(x * sum)
}

/// The four correlation terms of one family point and the gap computed
/// both directly and in closed form.
#[derive(Debug, Clone)]
pub struct GapReport<T: Scalar> {
    pub x: T,
    /// `E = S(ρ‖σ)`.
    pub entanglement: T,
    /// `Q = S(σ‖χ_σ)` with `χ_σ` the discord argmin of `σ`.
    pub dissonance: T,
    /// `C_σ = 2 log2 N - S(χ_σ)`.
    pub classical_correlation: T,
    /// `T_ρ = 2 log2 N - S(ρ)`.
    pub total_mutual_information: T,
    pub gap_direct: T,
    pub gap_analytic: T,
}

/// Computes every term of the gap report independently from spectra.
/// `gap_direct = E + Q + C_σ - T_ρ` must match the closed form within
/// 1e-9, which is asserted.
pub fn gap_direct<T: Scalar>(
    sigma: &BlochSphereState<T>,
    w: &WitnessSpec<T>,
    x: T,
) -> Result<GapReport<T>> {
    let point = rho_of_x(sigma, w, x)?;
    require_strictly_positive(sigma)?;
    let entanglement = relative_entropy(point.rho().spectrum(), sigma.state().spectrum())?;
    let (_, chi) = discord(sigma.state())?;
    let dissonance = relative_entropy(sigma.state().spectrum(), chi.full_spectrum())?;
    let c_sigma = classical_correlation(&chi);
    let t_rho = total_mutual_information(point.rho());
    let direct = entanglement + dissonance + c_sigma - t_rho;
    let analytic = gap_analytic(sigma, w, x)?;
    assert!(
        (direct - analytic).abs() <= T::cross_route_tolerance(),
        "gap routes disagree: direct {direct}, analytic {analytic}"
    );
    Ok(GapReport {
        x,
        entanglement,
        dissonance,
        classical_correlation: c_sigma,
        total_mutual_information: t_rho,
        gap_direct: direct,
        gap_analytic: analytic,
    })
}

/// Extreme points of the feasible region for the all-zero witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexChoice {
    /// All axis coefficients zero, `t_all = (-1)^n` (the sign that
    /// satisfies the trace condition).
    AllOnes,
    /// `t́_k = -1` on the 1-based axis `k`, everything else zero.
    Axis(usize),
}

/// Gap factor `Σ_j λ^w_j ṕ_j log2 ṕ_j` at a vertex of the feasible
/// region, with `0 log 0 = 0` on the vertex's zero eigenvalues.
/// Cancels to exactly zero for every vertex.
pub fn vertex_gap<T: Scalar>(n: usize, choice: VertexChoice) -> Result<T> {
    let sigma = vertex_state(n, choice)?;
    let w = witness::<T>(n, ExponentVector::from_index(0, 2 * n)?)?;
    let sum: T = w
        .eigenvalues
        .iter()
        .zip(sigma.state().spectrum().probabilities())
        .map(|(&l, &p)| if p > T::zero() { l * p * p.log2() } else { T::zero() })
        .sum();
    Ok(sum)
}

fn vertex_state<T: Scalar>(n: usize, choice: VertexChoice) -> Result<BlochSphereState<T>> {
    let mut axis = vec![T::zero(); 2 * n];
    let t_all;
    match choice {
        VertexChoice::AllOnes => {
            t_all = if n % 2 == 0 { T::one() } else { -T::one() };
        }
        VertexChoice::Axis(k) => {
            if k == 0 || k > 2 * n {
                return Err(Error::DomainError(format!(
                    "axis vertex {k} out of range 1..={}",
                    2 * n
                )));
            }
            axis[k - 1] = -T::one();
            t_all = T::zero();
        }
    }
    bloch_state(&axis, t_all)
}

/// Gap along the edge where all 2n axis coefficients are equal to
/// `t_axis` and `t_all` is fixed by the trace condition, evaluated at
/// family parameter `x`. Zero at `t_axis = 0`, convex and nonpositive on
/// the feasible interval `[-1/(2n), 0]`.
pub fn edge_gap<T: Scalar>(n: usize, t_axis: T, x: T) -> Result<T> {
    if n == 0 || n > 4 {
        return Err(Error::ResourceLimit(format!(
            "edge family supports 1 <= n <= 4, got {n}"
        )));
    }
    let two_n = T::from_usize(2 * n).expect("small");
    let lower = -(T::one() / two_n);
    let slack = T::from_f64_lossy(1e-12);
    if t_axis < lower - slack || t_axis > slack {
        return Err(Error::DomainError(format!(
            "edge coefficient {t_axis} outside the feasible interval [{lower}, 0]"
        )));
    }
    let t_axis = t_axis.min(T::zero()).max(lower);
    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
    let t_all = sign * (two_n * t_axis + T::one());
    let axis = vec![t_axis; 2 * n];
    let sigma = bloch_state(&axis, t_all)?;
    let w = witness::<T>(n, ExponentVector::from_index(0, 2 * n)?)?;
    let sum: T = w
        .eigenvalues
        .iter()
        .zip(sigma.state().spectrum().probabilities())
        .map(|(&l, &p)| if p > T::zero() { l * p * p.log2() } else { T::zero() })
        .sum();
    Ok(x * sum)
}

/// Random strictly-positive separable state on the boundary face of the
/// all-zero witness: negative axis coefficients with total magnitude
/// below one, `t_all` fixed by the trace condition.
pub fn random_boundary_sigma<T: Scalar, R: Rng>(n: usize, rng: &mut R) -> Result<BlochSphereState<T>> {
    let mut magnitudes: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(0.02..1.0)).collect();
    let total_target: f64 = rng.gen_range(0.05..0.9);
    let total: f64 = magnitudes.iter().sum();
    for m in magnitudes.iter_mut() {
        *m *= total_target / total;
    }
    let axis: Vec<T> = magnitudes
        .iter()
        .map(|&m| -T::from_f64_lossy(m))
        .collect();
    let sign = if n % 2 == 0 { T::one() } else { -T::one() };
    let t_all = sign * (T::one() - T::from_f64_lossy(total_target));
    bloch_state(&axis, t_all)
}
