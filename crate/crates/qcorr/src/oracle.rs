//! Independent brute-force verifiers for the analytic formulas.
//!
//! These are desk-scale certificates, not production paths: a measurement
//! grid that upper-bounds discord at n = 1, doubly stochastic sampling for
//! the permutation-alignment optimum, and a partial-transpose test for
//! entanglement. All randomness is seeded and the seed is reported.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell_state::{materialize, BellDiagonalState};
use crate::correlation_measures::best_permutation_alignment;
use crate::error::{Error, Result};
use crate::pauli_algebra::build_gamma_set;
use crate::scalar::Scalar;

/// Uniform grid over two local measurement bases, each parameterized by
/// sphere angles `(θ, φ)`; the weight optimization over the classical
/// probabilities is performed exactly per basis (it is a cross-entropy
/// minimum), which dominates any simplex grid.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementGrid {
    resolution: usize,
}

impl MeasurementGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution < 16 {
            return Err(Error::InvalidArgument(format!(
                "grid resolution must be at least 16, got {resolution}"
            )));
        }
        Ok(Self { resolution })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    fn directions(&self) -> Vec<[f64; 3]> {
        let r = self.resolution;
        let mut out = Vec::with_capacity((r + 1) * r);
        for it in 0..=r {
            let theta = std::f64::consts::PI * it as f64 / r as f64;
            for ip in 0..r {
                let phi = 2.0 * std::f64::consts::PI * ip as f64 / r as f64;
                out.push([
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                ]);
            }
        }
        out
    }
}

/// Minimum of `S(ρ‖χ)` over locally distinguishable states built from two
/// grid bases, at n = 1. Upper-bounds the true discord and converges to it
/// as the resolution grows.
///
/// All inputs are taken from the dense matrix: the von Neumann entropy
/// from its eigenvalues and the measurement probabilities from the Bloch
/// data `r_A, r_B, C` read off by traces. For Bell-diagonal inputs the
/// local Bloch vectors vanish (this is checked, not assumed), so the four
/// probabilities per basis pair are `(1 ± û·C·v̂)/4` and the inner
/// cross-entropy minimum depends only on `|û·C·v̂|`.
pub fn brute_force_closest_classical_two_qubit<T: Scalar + RealField>(
    state: &BellDiagonalState<T>,
    grid: &MeasurementGrid,
) -> Result<T> {
    if state.n() != 1 {
        return Err(Error::ResourceLimit(format!(
            "measurement-grid oracle supports n = 1 only, got {}",
            state.n()
        )));
    }
    let set = build_gamma_set::<T>(2)?;
    let rho = materialize(state, &set)?;

    let entropy_rho: f64 = rho
        .symmetric_eigenvalues()
        .iter()
        .map(|l| {
            let x = l.to_f64_lossy();
            if x > 0.0 {
                -x * x.log2()
            } else {
                0.0
            }
        })
        .sum();

    let paulis = pauli_basis_f64();
    let rho64 = rho.map(|z| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy()));
    let mut r_a = [0.0f64; 3];
    let mut r_b = [0.0f64; 3];
    let mut c = [[0.0f64; 3]; 3];
    let id = DMatrix::<Complex<f64>>::identity(2, 2);
    for a in 0..3 {
        r_a[a] = (&rho64 * paulis[a].kronecker(&id)).trace().re;
        r_b[a] = (&rho64 * id.kronecker(&paulis[a])).trace().re;
        for b in 0..3 {
            c[a][b] = (&rho64 * paulis[a].kronecker(&paulis[b])).trace().re;
        }
    }
    let local_bloch = r_a
        .iter()
        .chain(r_b.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if local_bloch > 1e-10 {
        return Err(Error::PreconditionViolated(format!(
            "input has nonvanishing local Bloch vectors ({local_bloch}); not Bell-diagonal"
        )));
    }

    let dirs = grid.directions();
    let best_overlap = dirs
        .par_iter()
        .map(|u| {
            let w = [
                c[0][0] * u[0] + c[1][0] * u[1] + c[2][0] * u[2],
                c[0][1] * u[0] + c[1][1] * u[1] + c[2][1] * u[2],
                c[0][2] * u[0] + c[1][2] * u[1] + c[2][2] * u[2],
            ];
            dirs.iter()
                .map(|v| (w[0] * v[0] + w[1] * v[1] + w[2] * v[2]).abs())
                .fold(0.0f64, f64::max)
        })
        .reduce(|| 0.0f64, f64::max)
        .min(1.0);

    let h = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    let diag_entropy = 2.0 - (h(1.0 + best_overlap) + h(1.0 - best_overlap)) / 2.0;
    let value = diag_entropy - entropy_rho;
    Ok(T::from_f64_lossy(value.max(0.0)))
}

fn pauli_basis_f64() -> [DMatrix<Complex<f64>>; 3] {
    let z = Complex::new(0.0, 0.0);
    let o = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    [
        DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// Outcome of the doubly-stochastic sampling certificate.
#[derive(Debug, Clone)]
pub struct BirkhoffReport<T> {
    /// Value of the sorted permutation optimum.
    pub optimum: T,
    /// Largest objective value over the sampled matrices.
    pub max_sampled: T,
    pub samples: usize,
    pub seed: u64,
    /// Samples exceeding the optimum beyond 1e-12; must be zero.
    pub violations: usize,
}

/// Sinkhorn normalization of a strictly positive matrix to a doubly
/// stochastic one, to 1e-10 in the row and column sums.
pub fn sinkhorn_doubly_stochastic(mut m: DMatrix<f64>, max_iters: usize) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    for _ in 0..max_iters {
        for r in 0..n {
            let s: f64 = m.row(r).iter().sum();
            for x in m.row_mut(r).iter_mut() {
                *x /= s;
            }
        }
        for c in 0..n {
            let s: f64 = m.column(c).iter().sum();
            for x in m.column_mut(c).iter_mut() {
                *x /= s;
            }
        }
        let worst = (0..n)
            .map(|k| {
                let rs: f64 = m.row(k).iter().sum();
                let cs: f64 = m.column(k).iter().sum();
                (rs - 1.0).abs().max((cs - 1.0).abs())
            })
            .fold(0.0f64, f64::max);
        if worst <= 1e-10 {
            return Ok(m);
        }
    }
    Err(Error::SinkhornNonConvergence {
        iterations: max_iters,
    })
}

/// Samples random doubly stochastic matrices and certifies that the
/// objective `Σ_{ij} λ_i Q_ij log2 μ_j` never exceeds the permutation
/// optimum of [`best_permutation_alignment`].
pub fn birkhoff_certificate<T: Scalar>(
    lambda: &[T],
    mu: &[T],
    samples: usize,
    seed: u64,
) -> Result<BirkhoffReport<T>> {
    if mu.iter().any(|&v| v <= T::zero()) {
        return Err(Error::InvalidArgument(
            "mu must be strictly positive".into(),
        ));
    }
    let (_, optimum) = best_permutation_alignment(lambda, mu)?;
    let n = lambda.len();
    let lam64: Vec<f64> = lambda.iter().map(|v| v.to_f64_lossy()).collect();
    let logmu: Vec<f64> = mu.iter().map(|v| v.to_f64_lossy().log2()).collect();
    let opt64 = optimum.to_f64_lossy();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_sampled = f64::NEG_INFINITY;
    let mut violations = 0usize;
    for _ in 0..samples {
        let raw = DMatrix::<f64>::from_fn(n, n, |_, _| rng.gen_range(0.1..1.1));
        let q = sinkhorn_doubly_stochastic(raw, 1000)?;
        let mut value = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                value += lam64[i] * q[(i, j)] * logmu[j];
            }
        }
        if value > max_sampled {
            max_sampled = value;
        }
        if value > opt64 + 1e-12 {
            violations += 1;
        }
    }
    Ok(BirkhoffReport {
        optimum,
        max_sampled: T::from_f64_lossy(max_sampled),
        samples,
        seed,
        violations,
    })
}

/// Partial transpose over the second tensor factor of a
/// `(da*db) x (da*db)` matrix.
pub fn partial_transpose<T: Scalar>(
    m: &DMatrix<Complex<T>>,
    da: usize,
    db: usize,
) -> DMatrix<Complex<T>> {
    let dim = da * db;
    debug_assert_eq!(m.nrows(), dim);
    let mut out = DMatrix::zeros(dim, dim);
    for i1 in 0..da {
        for i2 in 0..db {
            for j1 in 0..da {
                for j2 in 0..db {
                    out[(i1 * db + i2, j1 * db + j2)] = m[(i1 * db + j2, j1 * db + i2)];
                }
            }
        }
    }
    out
}

/// Minimum eigenvalue of the partial transpose over the second factor.
/// A negative value certifies entanglement.
pub fn ppt_check<T: Scalar + RealField>(m: &DMatrix<Complex<T>>) -> Result<T> {
    let dim = m.nrows();
    if m.ncols() != dim {
        return Err(Error::InvalidArgument("matrix must be square".into()));
    }
    let local = match dim {
        4 => 2usize,
        16 => 4usize,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "partial transpose supports sizes 4 and 16, got {dim}"
            )))
        }
    };
    let herm_violation = (m - m.adjoint())
        .iter()
        .map(|z| Float::max(Float::abs(z.re), Float::abs(z.im)))
        .fold(T::zero(), Float::max);
    if herm_violation > T::from_f64_lossy(1e-10) {
        return Err(Error::InvalidArgument(format!(
            "matrix is not hermitian (violation {herm_violation})"
        )));
    }
    let pt = partial_transpose(m, local, local);
    Ok(pt
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(T::infinity(), Float::min))
}
