//! Enumeration of the abelian subgroups that parameterize classical states.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

use super::{exponent_commutes, ExponentVector};

/// An n-dimensional subspace of nonzero 2n-bit exponent vectors whose
/// members pairwise commute.
///
/// The commutation predicate is bilinear over the two-element field and
/// vanishes on the diagonal, so pairwise commutation of a generating set
/// extends to the whole span. Subgroups are identified with their span;
/// the canonical form is the reduced-row-echelon basis, which makes
/// deduplication and ordering deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbelianSubgroup {
    width: usize,
    canonical: Vec<ExponentVector>,
}

impl AbelianSubgroup {
    /// Builds from generators, checking independence and pairwise
    /// commutation. The stored basis is the reduced row echelon form.
    pub fn from_generators(generators: &[ExponentVector]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument(
                "subgroup needs at least one generator".into(),
            ));
        }
        let width = generators[0].width();
        for g in generators {
            if g.width() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    got: g.width(),
                });
            }
            if g.is_zero() {
                return Err(Error::InvalidArgument(
                    "subgroup generators must be nonzero".into(),
                ));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !exponent_commutes(*a, *b)? {
                    return Err(Error::InvalidArgument(format!(
                        "generators {a} and {b} do not commute"
                    )));
                }
            }
        }
        let rows: Vec<u32> = generators.iter().map(|g| g.index() as u32).collect();
        let canonical_bits = rref(&rows, width);
        if canonical_bits.len() != generators.len() {
            return Err(Error::InvalidArgument(
                "subgroup generators are linearly dependent".into(),
            ));
        }
        let canonical = canonical_bits
            .into_iter()
            .map(|b| ExponentVector::from_index(b as usize, width).expect("in-range"))
            .collect();
        Ok(Self { width, canonical })
    }

    /// Reduced-row-echelon basis, rows ordered by leading bit.
    pub fn canonical_form(&self) -> &[ExponentVector] {
        &self.canonical
    }

    /// Number of generators (the subspace dimension n).
    pub fn rank(&self) -> usize {
        self.canonical.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// All `2^n` span elements, the zero vector included, ordered by the
    /// binary coordinates over the canonical basis.
    pub fn span(&self) -> Vec<ExponentVector> {
        let n = self.rank();
        (0..(1usize << n))
            .map(|coords| self.member(coords))
            .collect()
    }

    /// Span element with the given coordinate bits over the canonical
    /// basis: bit `k` (1-based, MSB first) selects generator `k`.
    pub fn member(&self, coords: usize) -> ExponentVector {
        let n = self.rank();
        let mut acc = ExponentVector::from_index(0, self.width).expect("in-range");
        for (k, g) in self.canonical.iter().enumerate() {
            if (coords >> (n - 1 - k)) & 1 == 1 {
                acc = acc.xor(*g);
            }
        }
        acc
    }

    pub fn contains(&self, v: ExponentVector) -> bool {
        span_contains(
            &self
                .canonical
                .iter()
                .map(|g| g.index() as u32)
                .collect::<Vec<_>>(),
            v.index() as u32,
        )
    }
}

impl fmt::Display for AbelianSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.canonical.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", gens.join(","))
    }
}

/// Reduced row echelon form over the two-element field; rows as bit masks
/// with the leftmost bit (highest value) first. Returns the nonzero rows.
fn rref(rows: &[u32], width: usize) -> Vec<u32> {
    let mut basis = rows.to_vec();
    let mut out: Vec<u32> = Vec::new();
    for bit in (0..width).rev() {
        let mask = 1u32 << bit;
        if let Some(pos) = basis.iter().position(|r| r & mask != 0) {
            let pivot = basis.swap_remove(pos);
            for r in basis.iter_mut() {
                if *r & mask != 0 {
                    *r ^= pivot;
                }
            }
            for r in out.iter_mut() {
                if *r & mask != 0 {
                    *r ^= pivot;
                }
            }
            out.push(pivot);
        }
    }
    out.retain(|&r| r != 0);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn span_contains(basis: &[u32], v: u32) -> bool {
    let mut v = v;
    for &b in basis {
        let lead = 31 - b.leading_zeros();
        if v & (1 << lead) != 0 {
            v ^= b;
        }
    }
    v == 0
}

/// Known generator-pair table for n = 2; each pair generates one of the
/// fifteen commuting subspaces. The tenth entry's second generator had
/// mismatched indices in its source (1001 vs 1011) and is read as 1001.
pub(crate) const N2_GENERATOR_PAIRS: [(&str, &str); 15] = [
    ("1000", "0101"),
    ("0001", "0110"),
    ("1000", "0110"),
    ("0100", "0011"),
    ("1111", "1100"),
    ("1111", "1010"),
    ("1000", "0011"),
    ("0010", "0101"),
    ("1111", "1001"),
    ("0010", "1001"),
    ("0100", "1010"),
    ("0001", "1100"),
    ("0010", "1100"),
    ("0100", "1001"),
    ("0001", "1010"),
];

/// All distinct n-dimensional commuting subspaces of the 2n-bit exponent
/// vectors, deduplicated by canonical form and sorted lexicographically
/// on it.
///
/// Grown dimension by dimension: a subspace extends by any vector outside
/// it that commutes with its basis. The search is exhaustive over the
/// `4^n` vectors, hence the cap `n <= 4`.
pub fn enumerate_abelian_subgroups(n: usize) -> Result<Vec<AbelianSubgroup>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > 4 {
        return Err(Error::ResourceLimit(format!(
            "subgroup enumeration supports n <= 4, got {n}"
        )));
    }
    let width = 2 * n;
    let total = 1u32 << width;

    let commutes = |a: u32, b: u32| -> bool {
        let wt = a.count_ones() * b.count_ones();
        (wt + (a & b).count_ones()) % 2 == 0
    };

    let mut level: BTreeSet<Vec<u32>> = BTreeSet::new();
    level.insert(Vec::new());
    for _ in 0..n {
        let mut next: BTreeSet<Vec<u32>> = BTreeSet::new();
        for basis in &level {
            for v in 1..total {
                if span_contains(basis, v) {
                    continue;
                }
                if basis.iter().all(|&b| commutes(b, v)) {
                    let mut rows = basis.clone();
                    rows.push(v);
                    next.insert(rref(&rows, width));
                }
            }
        }
        level = next;
    }

    let mut out: Vec<AbelianSubgroup> = level
        .into_iter()
        .map(|rows| AbelianSubgroup {
            width,
            canonical: rows
                .into_iter()
                .map(|b| ExponentVector::from_index(b as usize, width).expect("in-range"))
                .collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}
