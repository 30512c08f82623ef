//! Dense linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words. Matrices are square and stored
//! as rows, so `M·x` is one parity computation per row. The intersection
//! form is kept as an explicit Gram matrix; the default surface model uses
//! the identity on the crosscap block and zero on the puncture block.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot twist along one-sided curve")]
    OneSided,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    InvalidBit(char),
}

const WORD: usize = 64;

fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

/// A vector in `GF(2)^dim`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    dim: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            words: vec![0; words_for(dim)],
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.set(index, true);
        v
    }

    /// Vector with ones exactly at `indices` (each index toggled, so repeats cancel).
    pub fn from_indices<I: IntoIterator<Item = usize>>(dim: usize, indices: I) -> Self {
        let mut v = Self::zeros(dim);
        for i in indices {
            v.flip(i);
        }
        v
    }

    /// Parses a bit-string such as `"1100"`; the leftmost character is coordinate 0.
    pub fn parse_bits(s: &str) -> Result<Self, Gf2Error> {
        let dim = s.chars().count();
        let mut v = Self::zeros(dim);
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Gf2Error::InvalidBit(other)),
            }
        }
        Ok(v)
    }

    pub fn to_bits(&self) -> String {
        (0..self.dim)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |&i| self.get(i))
    }

    fn check_dim(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Gf2Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    /// Standard dot product `Σ uᵢvᵢ` (not the intersection form).
    pub fn dot(&self, other: &Self) -> Result<bool, Gf2Error> {
        self.check_dim(other)?;
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<(), Gf2Error> {
        self.check_dim(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({})", self.to_bits())
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}

/// A square matrix over `GF(2)`, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn identity(dim: usize) -> Self {
        Self {
            rows: (0..dim).map(|i| Gf2Vector::unit(dim, i)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            rows: (0..dim).map(|_| Gf2Vector::zeros(dim)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        let dim = rows.len();
        for row in &rows {
            if row.dim() != dim {
                return Err(Gf2Error::DimensionMismatch {
                    expected: dim,
                    found: row.dim(),
                });
            }
        }
        Ok(Self { rows })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Gf2Vector]) -> Result<Self, Gf2Error> {
        Ok(Self::from_rows(columns.to_vec())?.transpose())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        let mut col = Gf2Vector::zeros(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                col.set(i, true);
            }
        }
        col
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: (0..self.dim()).map(|j| self.column(j)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if x.dim() != self.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        let mut out = Gf2Vector::zeros(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x)? {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// The product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self, Gf2Error> {
        if other.dim() != self.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        // Row i of A·B is the sum of the rows of B selected by row i of A.
        let rows = self
            .rows
            .iter()
            .map(|a_row| {
                let mut acc = Gf2Vector::zeros(self.dim());
                for k in a_row.support() {
                    acc.add_assign(&other.rows[k])?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>, Gf2Error>>()?;
        Ok(Self { rows })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, Gf2Error> {
        let n = self.dim();
        let mut left = self.rows.clone();
        let mut right = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| left[r].get(col)).ok_or(Gf2Error::Singular)?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for r in 0..n {
                if r != col && left[r].get(col) {
                    let (l, rr) = (left[col].clone(), right[col].clone());
                    left[r].add_assign(&l)?;
                    right[r].add_assign(&rr)?;
                }
            }
        }
        Ok(Self { rows: right })
    }

    /// Prints the matrix as a grid of bit-strings, one row per line.
    pub fn to_bit_rows(&self) -> Vec<String> {
        self.rows.iter().map(Gf2Vector::to_bits).collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(|r| r.to_bits())).finish()
    }
}

/// Solves the system `rowᵢ · x = rhsᵢ` (standard dot product).
///
/// Returns the solution with every free variable set to zero, or `None`
/// when the system is inconsistent. The pivot order is fixed, so the
/// answer is deterministic.
pub fn solve_linear(dim: usize, equations: &[(Gf2Vector, bool)]) -> Result<Option<Gf2Vector>, Gf2Error> {
    let mut rows: Vec<(Gf2Vector, bool)> = Vec::with_capacity(equations.len());
    for (row, rhs) in equations {
        if row.dim() != dim {
            return Err(Gf2Error::DimensionMismatch {
                expected: dim,
                found: row.dim(),
            });
        }
        rows.push((row.clone(), *rhs));
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..dim {
        let Some(p) = (next..rows.len()).find(|&r| rows[r].0.get(col)) else {
            continue;
        };
        rows.swap(next, p);
        let (prow, prhs) = rows[next].clone();
        for (r, (row, rhs)) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.add_assign(&prow)?;
                *rhs ^= prhs;
            }
        }
        pivots.push(col);
        next += 1;
    }
    if rows[next..].iter().any(|(_, rhs)| *rhs) {
        return Ok(None);
    }
    let mut x = Gf2Vector::zeros(dim);
    for (r, &col) in pivots.iter().enumerate() {
        if rows[r].1 {
            x.set(col, true);
        }
    }
    Ok(Some(x))
}

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionForm {
    gram: Gf2Matrix,
    crosscaps: usize,
}

impl IntersectionForm {
    /// The mod-2 intersection form of a genus-`crosscaps` non-orientable
    /// surface with `punctures` punctures: identity on the crosscap classes,
    /// zero on the `punctures - 1` boundary classes.
    pub fn standard(crosscaps: usize, punctures: usize) -> Self {
        let dim = crosscaps + punctures.saturating_sub(1);
        let mut gram = Gf2Matrix::zeros(dim);
        for i in 0..crosscaps {
            gram.set(i, i, true);
        }
        Self { gram, crosscaps }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn crosscaps(&self) -> usize {
        self.crosscaps
    }

    pub fn gram(&self) -> &Gf2Matrix {
        &self.gram
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    /// `uᵀ·G·v`.
    pub fn pairing(&self, u: &Gf2Vector, v: &Gf2Vector) -> Result<bool, Gf2Error> {
        let gv = self.gram.mul_vec(v)?;
        u.dot(&gv)
    }

    /// The linear functional `x ↦ ⟨x, c⟩` as a coefficient vector.
    pub fn functional(&self, c: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        self.gram.mul_vec(c)
    }

    pub fn is_radical(&self, v: &Gf2Vector) -> Result<bool, Gf2Error> {
        Ok(self.functional(v)?.is_zero())
    }

    /// The map `x ↦ x + ⟨x,c⟩·c`, the mod-2 action of a Dehn twist about a
    /// two-sided curve of class `c`.
    pub fn transvection(&self, c: &Gf2Vector) -> Result<Gf2Matrix, Gf2Error> {
        if self.pairing(c, c)? {
            return Err(Gf2Error::OneSided);
        }
        self.shear(c, c)
    }

    /// The map `x ↦ x + ⟨x,along⟩·target`. Preserves the form whenever
    /// `target` lies in the radical or equals a two-sided `along`.
    pub fn shear(&self, along: &Gf2Vector, target: &Gf2Vector) -> Result<Gf2Matrix, Gf2Error> {
        let functional = self.functional(along)?;
        if target.dim() != self.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim(),
                found: target.dim(),
            });
        }
        let mut m = Gf2Matrix::identity(self.dim());
        for i in target.support() {
            m.rows[i].add_assign(&functional)?;
        }
        Ok(m)
    }

    /// True iff `⟨Mu, Mv⟩ = ⟨u, v⟩` on all basis pairs, i.e. `MᵀGM = G`.
    pub fn preserves(&self, m: &Gf2Matrix) -> Result<bool, Gf2Error> {
        if m.dim() != self.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        let pulled = m.transpose().compose(&self.gram)?.compose(m)?;
        Ok(pulled == self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn form() -> IntersectionForm {
        IntersectionForm::standard(5, 3)
    }

    fn v(idx: &[usize]) -> Gf2Vector {
        Gf2Vector::from_indices(7, idx.iter().copied())
    }

    #[test]
    fn pairing_examples() {
        let f = form();
        assert!(f.pairing(&v(&[0]), &v(&[0])).unwrap());
        // mu_1 against delta_1
        assert!(!f.pairing(&v(&[0]), &v(&[5])).unwrap());
        assert!(f.pairing(&v(&[0, 1]), &v(&[1, 2])).unwrap());
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let f = form();
        let err = f.pairing(&Gf2Vector::zeros(3), &v(&[0])).unwrap_err();
        assert!(matches!(err, Gf2Error::DimensionMismatch { .. }));
    }

    #[test]
    fn transvection_examples() {
        let f = form();
        let c = v(&[0, 1]);
        let m = f.transvection(&c).unwrap();
        assert_eq!(m.mul_vec(&v(&[0])).unwrap(), v(&[1]));
        assert_eq!(m.mul_vec(&c).unwrap(), c);
        assert_eq!(m.mul_vec(&v(&[5])).unwrap(), v(&[5]));
        assert!(m.compose(&m).unwrap().is_identity());
        assert!(f.preserves(&m).unwrap());
    }

    #[test]
    fn one_sided_twist_is_rejected() {
        let err = form().transvection(&v(&[0, 1, 2])).unwrap_err();
        assert_eq!(err, Gf2Error::OneSided);
        assert_eq!(err.to_string(), "cannot twist along one-sided curve");
    }

    #[test]
    fn preserves_form_examples() {
        let f = form();
        assert!(f.preserves(&Gf2Matrix::identity(7)).unwrap());
        // Swap mu_1 and delta_1.
        let mut cols: Vec<_> = (0..7).map(|i| Gf2Vector::unit(7, i)).collect();
        cols.swap(0, 5);
        let m = Gf2Matrix::from_columns(&cols).unwrap();
        assert!(!f.preserves(&m).unwrap());
    }

    #[test]
    fn inverse_of_identity_and_singular() {
        let id = Gf2Matrix::identity(4);
        assert_eq!(id.inverse().unwrap(), id);
        assert_eq!(Gf2Matrix::zeros(4).inverse().unwrap_err(), Gf2Error::Singular);
    }

    #[test]
    fn bit_string_round_trip() {
        let x = Gf2Vector::parse_bits("1100101").unwrap();
        assert_eq!(x.to_bits(), "1100101");
        assert!(x.get(0) && x.get(1) && !x.get(2));
        assert_eq!(Gf2Vector::parse_bits("10x").unwrap_err(), Gf2Error::InvalidBit('x'));
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let x = Gf2Vector::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(x.weight(), 4);
        assert_eq!(x.support().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        let f = IntersectionForm::standard(128, 3);
        let c = Gf2Vector::from_indices(130, [63, 64]);
        let t = f.transvection(&c).unwrap();
        assert_eq!(t.mul_vec(&Gf2Vector::unit(130, 63)).unwrap(), Gf2Vector::unit(130, 64));
    }

    #[test]
    fn solve_linear_finds_solution_or_reports_inconsistency() {
        let eqs = [
            (Gf2Vector::parse_bits("110").unwrap(), true),
            (Gf2Vector::parse_bits("011").unwrap(), false),
        ];
        let x = solve_linear(3, &eqs).unwrap().unwrap();
        for (row, rhs) in &eqs {
            assert_eq!(row.dot(&x).unwrap(), *rhs);
        }
        let bad = [
            (Gf2Vector::parse_bits("110").unwrap(), true),
            (Gf2Vector::parse_bits("110").unwrap(), false),
        ];
        assert!(solve_linear(3, &bad).unwrap().is_none());
    }
}
