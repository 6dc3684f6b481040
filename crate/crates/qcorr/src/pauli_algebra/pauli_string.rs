//! Pauli strings in x/z row-vector form, with phase tracking.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::gamma::CMatrix;
use super::{ExponentVector, GammaSet};

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinglePauli {
    I,
    X,
    Y,
    Z,
}

/// Power of `i`: `+1, +i, -1, -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn as_complex<T: Scalar>(self) -> Complex<T> {
        match self.0 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        };
        write!(f, "{s}")
    }
}

/// Tensor product of single-qubit Paulis times a phase, encoded as x/z bit
/// rows: x-bit for `σ_x`, z-bit for `σ_z`, both for `σ_y`.
///
/// The row-vector form is `r(P) = [xbits | zbits]` with qubit 1 leftmost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    xbits: u32,
    zbits: u32,
    qubits: u8,
    phase: Phase,
}

impl PauliString {
    pub fn identity(qubits: usize) -> Self {
        Self {
            xbits: 0,
            zbits: 0,
            qubits: qubits as u8,
            phase: Phase::ONE,
        }
    }

    /// Builds from per-qubit factors (qubit 1 first) and a phase.
    pub fn from_factors(factors: &[SinglePauli], phase: Phase) -> Self {
        let mut xbits = 0u32;
        let mut zbits = 0u32;
        for p in factors {
            xbits <<= 1;
            zbits <<= 1;
            match p {
                SinglePauli::I => {}
                SinglePauli::X => xbits |= 1,
                SinglePauli::Z => zbits |= 1,
                SinglePauli::Y => {
                    xbits |= 1;
                    zbits |= 1;
                }
            }
        }
        Self {
            xbits,
            zbits,
            qubits: factors.len() as u8,
            phase,
        }
    }

    pub fn qubits(self) -> usize {
        self.qubits as usize
    }

    pub fn phase(self) -> Phase {
        self.phase
    }

    pub fn xbits(self) -> u32 {
        self.xbits
    }

    pub fn zbits(self) -> u32 {
        self.zbits
    }

    /// Factor on 1-based qubit `q`.
    pub fn factor(self, q: usize) -> SinglePauli {
        let shift = self.qubits() - q;
        let x = (self.xbits >> shift) & 1;
        let z = (self.zbits >> shift) & 1;
        match (x, z) {
            (0, 0) => SinglePauli::I,
            (1, 0) => SinglePauli::X,
            (0, 1) => SinglePauli::Z,
            _ => SinglePauli::Y,
        }
    }

    /// Literal operator product `self · rhs`, accumulating phases qubit-wise.
    #[allow(clippy::should_implement_trait)] // fallible: widths must match
    pub fn mul(self, rhs: PauliString) -> Result<PauliString> {
        if self.qubits != rhs.qubits {
            return Err(Error::DimensionMismatch {
                expected: self.qubits(),
                got: rhs.qubits(),
            });
        }
        let mut phase = self.phase.mul(rhs.phase);
        for q in 1..=self.qubits() {
            phase = phase.mul(single_product_phase(self.factor(q), rhs.factor(q)));
        }
        Ok(PauliString {
            xbits: self.xbits ^ rhs.xbits,
            zbits: self.zbits ^ rhs.zbits,
            qubits: self.qubits,
            phase,
        })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.phase)?;
        for q in 1..=self.qubits() {
            let c = match self.factor(q) {
                SinglePauli::I => 'I',
                SinglePauli::X => 'X',
                SinglePauli::Y => 'Y',
                SinglePauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Phase of the single-qubit product, e.g. `XY = iZ`.
fn single_product_phase(a: SinglePauli, b: SinglePauli) -> Phase {
    use SinglePauli::*;
    match (a, b) {
        (X, Y) | (Y, Z) | (Z, X) => Phase::I,
        (Y, X) | (Z, Y) | (X, Z) => Phase::MINUS_I,
        _ => Phase::ONE,
    }
}

/// Whether two Pauli strings commute: `r(p) Λ r(q) = 0 (mod 2)` with
/// `Λ` the off-diagonal block form, i.e. `x_p·z_q + z_p·x_q = 0`.
pub fn symplectic_commutes(p: PauliString, q: PauliString) -> Result<bool> {
    if p.qubits != q.qubits {
        return Err(Error::DimensionMismatch {
            expected: p.qubits(),
            got: q.qubits(),
        });
    }
    let s = (p.xbits & q.zbits).count_ones() + (p.zbits & q.xbits).count_ones();
    Ok(s % 2 == 0)
}

/// Symbolic form of `γ_i^{(d)}` as a Pauli string on `d/2` qubits,
/// following the same `d -> d+2` recursion as the matrix construction.
pub fn gamma_pauli_string(d: usize, i: usize) -> Result<PauliString> {
    if d == 0 || d % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma algebra dimension must be even and positive, got {d}"
        )));
    }
    if i == 0 || i > d + 1 {
        return Err(Error::InvalidArgument(format!(
            "gamma index {i} out of range 1..={}",
            d + 1
        )));
    }
    let mut factors: Vec<SinglePauli> = match i {
        1 => vec![SinglePauli::X],
        2 => vec![SinglePauli::Y],
        _ => vec![SinglePauli::Z],
    };
    // At dimension `dim`, indices 1..=dim-1 came from below and get σ_1
    // prepended; index dim is σ_2 ⊗ I and dim+1 is σ_3 ⊗ I.
    let mut dim = 2;
    while dim < d {
        dim += 2;
        if i < dim {
            factors.insert(0, SinglePauli::X);
        } else if i == dim {
            factors = vec![SinglePauli::I; dim / 2];
            factors[0] = SinglePauli::Y;
        } else {
            factors = vec![SinglePauli::I; dim / 2];
            factors[0] = SinglePauli::Z;
        }
    }
    Ok(PauliString::from_factors(&factors, Phase::ONE))
}

/// The Pauli string equal (with phase) to the matrix product
/// `γ_1^{a_1} ... γ_{2n}^{a_{2n}}` over the given gamma set.
pub fn exponent_to_pauli<T: Scalar>(set: &GammaSet<T>, a: ExponentVector) -> Result<PauliString> {
    if a.width() != set.dimension() {
        return Err(Error::DimensionMismatch {
            expected: set.dimension(),
            got: a.width(),
        });
    }
    let d = set.dimension();
    let mut out = PauliString::identity(d / 2);
    for k in 1..=d {
        if a.bit(k) == 1 {
            out = out.mul(gamma_pauli_string(d, k)?)?;
        }
    }
    Ok(out)
}

/// Dense matrix of a Pauli string: phase times the Kronecker product of
/// its single-qubit factors.
pub fn materialize_pauli<T: Scalar>(p: PauliString) -> CMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let single = |s: SinglePauli| -> CMatrix<T> {
        match s {
            SinglePauli::I => DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
            SinglePauli::X => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
            SinglePauli::Y => DMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
            SinglePauli::Z => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
        }
    };
    let mut out = single(p.factor(1));
    for q in 2..=p.qubits() {
        out = out.kronecker(&single(p.factor(q)));
    }
    out.map(|z| z * p.phase.as_complex::<T>())
}
