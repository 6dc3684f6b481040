//! Recursive construction of hermitian anticommuting gamma matrices.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::ExponentVector;

pub(crate) type CMatrix<T> = DMatrix<Complex<T>>;

/// The `d+1` hermitian matrices of size `2^{d/2}` realizing
/// `γ_i γ_j + γ_j γ_i = 2 δ_ij I` for `i, j = 1..d+1`.
///
/// Entry `d+1` is `γ_s = i^{-d/2} γ_1 ... γ_d`, which anticommutes with the
/// rest because `d` is even. Entries are exact (0, ±1, ±i), so algebraic
/// checks use equality rather than tolerances.
#[derive(Debug, Clone)]
pub struct GammaSet<T: Scalar> {
    d: usize,
    matrices: Vec<CMatrix<T>>,
}

impl<T: Scalar> GammaSet<T> {
    /// Algebra dimension `d` (always even).
    pub fn dimension(&self) -> usize {
        self.d
    }

    /// Matrix size `2^{d/2}`.
    pub fn matrix_size(&self) -> usize {
        1 << (self.d / 2)
    }

    /// `γ_i` for 1-based `i` in `1..=d+1`.
    pub fn gamma(&self, i: usize) -> &CMatrix<T> {
        &self.matrices[i - 1]
    }

    /// `γ_s`, stored as entry `d+1`.
    pub fn gamma_s(&self) -> &CMatrix<T> {
        &self.matrices[self.d]
    }

    /// All `d+1` matrices in index order.
    pub fn matrices(&self) -> &[CMatrix<T>] {
        &self.matrices
    }

    /// Matrix product `Γ_a = γ_1^{a_1} ... γ_{2n}^{a_{2n}}`.
    pub fn group_element(&self, a: ExponentVector) -> Result<CMatrix<T>> {
        if a.width() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: a.width(),
            });
        }
        let size = self.matrix_size();
        let mut out = CMatrix::<T>::identity(size, size);
        for k in 1..=self.d {
            if a.bit(k) == 1 {
                out = &out * self.gamma(k);
            }
        }
        Ok(out)
    }

    /// Flips one entry of `γ_1`; used by the self-test corruption hook and
    /// the unit tests to confirm that verification catches broken sets.
    pub(crate) fn corrupt_entry(&mut self) {
        let e = &mut self.matrices[0][(0, 0)];
        *e += Complex::new(T::one(), T::zero());
    }
}

fn pauli_matrices<T: Scalar>() -> [CMatrix<T>; 3] {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    [
        CMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
        CMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
        CMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
    ]
}

fn kron<T: Scalar>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

/// Builds the gamma set for even `d`, by induction on `d -> d+2`:
/// `γ_i^{(d+2)} = σ_1 ⊗ γ_i^{(d)}` for `i = 1..d+1` and
/// `γ_{d+2} = σ_2 ⊗ I`, with `γ_s^{(d+2)} = σ_3 ⊗ I`.
pub fn build_gamma_set<T: Scalar>(d: usize) -> Result<GammaSet<T>> {
    if d == 0 || d % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma algebra dimension must be even and positive, got {d}"
        )));
    }
    if d > 8 {
        return Err(Error::ResourceLimit(format!(
            "gamma algebra dimension {d} exceeds the supported cap of 8"
        )));
    }
    let [s1, s2, s3] = pauli_matrices::<T>();
    let mut matrices: Vec<CMatrix<T>> = vec![s1.clone(), s2.clone(), s3.clone()];
    let mut dim = 2;
    while dim < d {
        let size = 1 << (dim / 2);
        let id = CMatrix::<T>::identity(size, size);
        let mut next: Vec<CMatrix<T>> = matrices.iter().map(|g| kron(&s1, g)).collect();
        next.push(kron(&s2, &id));
        next.push(kron(&s3, &id));
        matrices = next;
        dim += 2;
    }
    Ok(GammaSet { d, matrices })
}

/// Maximal absolute violations of the gamma-set identities.
///
/// All three must be exactly zero for a well-formed set.
#[derive(Debug, Clone, Copy)]
pub struct CliffordReport<T> {
    /// `max |γ_i γ_j + γ_j γ_i - 2 δ_ij I|` over `i, j = 1..d+1`.
    pub anticommutation: T,
    /// `max |γ_i - γ_i^†|`.
    pub hermiticity: T,
    /// `max |γ_i^t - (-1)^{i+1} γ_i|`: odd index symmetric, even antisymmetric.
    pub transpose_pattern: T,
}

impl<T: Scalar> CliffordReport<T> {
    pub fn is_exact(&self) -> bool {
        self.anticommutation == T::zero()
            && self.hermiticity == T::zero()
            && self.transpose_pattern == T::zero()
    }
}

fn max_abs<T: Scalar>(m: &CMatrix<T>) -> T {
    m.iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(T::zero(), T::max)
}

/// Conjugate transpose without the `RealField` machinery, so the generic
/// core stays on plain float bounds.
pub(crate) fn conjugate_transpose<T: Scalar>(m: &CMatrix<T>) -> CMatrix<T> {
    m.map(|z| z.conj()).transpose()
}

/// Checks anticommutation, hermiticity and the transpose pattern of a set.
pub fn verify_clifford<T: Scalar>(set: &GammaSet<T>) -> CliffordReport<T> {
    let size = set.matrix_size();
    let two = T::one() + T::one();

    let mut anticommutation = T::zero();
    let mut hermiticity = T::zero();
    let mut transpose_pattern = T::zero();

    for i in 1..=set.dimension() + 1 {
        let gi = set.gamma(i);
        hermiticity = hermiticity.max(max_abs(&(gi - conjugate_transpose(gi))));
        let expected_t = if i % 2 == 1 {
            gi.clone()
        } else {
            -gi.clone()
        };
        transpose_pattern = transpose_pattern.max(max_abs(&(gi.transpose() - expected_t)));
        for j in 1..=set.dimension() + 1 {
            let gj = set.gamma(j);
            let mut anti = gi * gj + gj * gi;
            if i == j {
                for k in 0..size {
                    anti[(k, k)] -= Complex::new(two, T::zero());
                }
            }
            anticommutation = anticommutation.max(max_abs(&anti));
        }
    }

    CliffordReport {
        anticommutation,
        hermiticity,
        transpose_pattern,
    }
}
