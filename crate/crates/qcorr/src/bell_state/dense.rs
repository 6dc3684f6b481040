//! Dense materialization of small states; verification surface only.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pauli_algebra::{ExponentVector, GammaSet};
use crate::scalar::Scalar;

use super::BellDiagonalState;

type CMatrix<T> = DMatrix<Complex<T>>;

const MAX_DENSE_N: usize = 2;

fn check_dense<T: Scalar>(n: usize, set: &GammaSet<T>) -> Result<()> {
    if n > MAX_DENSE_N {
        return Err(Error::ResourceLimit(format!(
            "dense materialization supports n <= {MAX_DENSE_N}, got {n}"
        )));
    }
    if set.dimension() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: set.dimension(),
        });
    }
    Ok(())
}

/// Dense matrix `(1/N²) Σ_a t_a Γ_a ⊗ Γ_a` of a state, for `n <= 2`.
///
/// Any fixed gamma basis yields the same spectrum; the set passed in is
/// expected to be `build_gamma_set(2n)`.
pub fn materialize<T: Scalar>(
    state: &BellDiagonalState<T>,
    set: &GammaSet<T>,
) -> Result<CMatrix<T>> {
    let n = state.n();
    check_dense(n, set)?;
    let dim = 1usize << (2 * n);
    let scale = T::one() / T::from_usize(dim).expect("small");
    let mut out = CMatrix::<T>::zeros(dim, dim);
    for (idx, &t) in state.tensor().coefficients().iter().enumerate() {
        if t == T::zero() {
            continue;
        }
        let a = ExponentVector::from_index(idx, 2 * n).expect("in-range");
        let ga = set.group_element(a)?;
        let term = ga.kronecker(&ga);
        let w = Complex::new(t * scale, T::zero());
        out.zip_apply(&term, |o, v| *o += v * w);
    }
    Ok(out)
}

/// Common projector `π_i = (1/4^n) Σ_a (-1)^{i·a} Γ_a ⊗ Γ_a`, for `n <= 2`.
pub fn projector<T: Scalar>(set: &GammaSet<T>, i: ExponentVector) -> Result<CMatrix<T>> {
    let width = set.dimension();
    check_dense(width / 2, set)?;
    if i.width() != width {
        return Err(Error::DimensionMismatch {
            expected: width,
            got: i.width(),
        });
    }
    let dim = 1usize << width;
    let scale = T::one() / T::from_usize(dim).expect("small");
    let mut out = CMatrix::<T>::zeros(dim, dim);
    for idx in 0..dim {
        let a = ExponentVector::from_index(idx, width).expect("in-range");
        let sign = if i.dot(a) == 0 { scale } else { -scale };
        let ga = set.group_element(a)?;
        let term = ga.kronecker(&ga);
        let w = Complex::new(sign, T::zero());
        out.zip_apply(&term, |o, v| *o += v * w);
    }
    Ok(out)
}

/// Traces out the right factor of a `(da*db) x (da*db)` matrix.
pub fn partial_trace_right<T: Scalar>(m: &CMatrix<T>, da: usize, db: usize) -> CMatrix<T> {
    let mut out = CMatrix::<T>::zeros(da, da);
    for i in 0..da {
        for j in 0..da {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..db {
                acc += m[(i * db + k, j * db + k)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Traces out the left factor of a `(da*db) x (da*db)` matrix.
pub fn partial_trace_left<T: Scalar>(m: &CMatrix<T>, da: usize, db: usize) -> CMatrix<T> {
    let mut out = CMatrix::<T>::zeros(db, db);
    for i in 0..db {
        for j in 0..db {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..da {
                acc += m[(k * db + i, k * db + j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Unit eigenvector of each rank-one projector `π_i`, in index order.
///
/// Computed by projecting a fixed generic vector, so the `j`-th vector is
/// deterministic and spans exactly `range(π_j)`.
pub fn projector_eigenvectors<T: Scalar>(
    set: &GammaSet<T>,
) -> Result<Vec<nalgebra::DVector<Complex<T>>>> {
    let width = set.dimension();
    check_dense(width / 2, set)?;
    let dim = 1usize << width;
    let generic = nalgebra::DVector::from_fn(dim, |k, _| {
        let x = 0.37 + 0.61 * (k as f64) + 0.13 * ((k * k % 17) as f64);
        Complex::new(
            T::from_f64_lossy(x.cos()),
            T::from_f64_lossy((1.7 * x).sin()),
        )
    });
    // One pass of G_a * u for every a, then signed averages per index.
    let mut applied = Vec::with_capacity(dim);
    for idx in 0..dim {
        let a = ExponentVector::from_index(idx, width).expect("in-range");
        let ga = set.group_element(a)?;
        let g2 = ga.kronecker(&ga);
        applied.push(&g2 * &generic);
    }
    let scale = T::one() / T::from_usize(dim).expect("small");
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim {
        let jv = ExponentVector::from_index(j, width).expect("in-range");
        let mut v = nalgebra::DVector::from_element(dim, Complex::new(T::zero(), T::zero()));
        for (idx, ga_u) in applied.iter().enumerate() {
            let a = ExponentVector::from_index(idx, width).expect("in-range");
            let sign = if jv.dot(a) == 0 { scale } else { -scale };
            let w = Complex::new(sign, T::zero());
            v.zip_apply(ga_u, |o, x| *o += x * w);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::from_f64_lossy(1e-9) {
            return Err(Error::SingularMap {
                index: jv.to_string(),
            });
        }
        out.push(v.map(|z| z / Complex::new(norm, T::zero())));
    }
    Ok(out)
}
