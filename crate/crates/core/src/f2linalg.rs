//! Dense linear algebra over GF(2).
//!
//! Rows are packed little-endian into `u64` words: entry `(r, c)` is bit `c % 64` of word
//! `r * stride + c / 64`. Elimination works a word at a time with XOR.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from the low `len` bits of `word`.
    pub fn from_word(word: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_word supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word & low_mask(len);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let m = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    /// The first word, i.e. bits `0..64`.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= WORD {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A dense `rows × cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

/// Solutions of `m · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub consistent: bool,
    /// One solution, present iff the system is consistent.
    pub particular: Option<BitVec>,
    /// `cols - rank`. A consistent system has exactly `2^kernel_dim` solutions.
    pub kernel_dim: usize,
}

impl SolutionSet {
    /// Number of solutions, `0` or `2^kernel_dim`.
    pub fn count(&self) -> u128 {
        if self.consistent {
            1u128 << self.kernel_dim
        } else {
            0
        }
    }
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        Self {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` bytes, e.g. `b"110"`.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b == b'1' || b == 1);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose column `c` is the low `rows` bits of `columns[c]`.
    pub fn from_column_words(rows: usize, columns: &[u64]) -> Self {
        assert!(rows <= WORD, "column words hold at most 64 rows");
        let mut m = Self::zeros(rows, columns.len());
        for (c, &col) in columns.iter().enumerate() {
            let mut bits = col & low_mask(rows);
            while bits != 0 {
                let r = bits.trailing_zeros() as usize;
                m.set(r, c, true);
                bits &= bits - 1;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        (self.bits[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        let m = 1u64 << (c % WORD);
        let w = &mut self.bits[r * self.stride + c / WORD];
        if value {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols);
        let src = &self.bits[r * self.stride..(r + 1) * self.stride];
        let len = v.words.len();
        v.words.copy_from_slice(&src[..len]);
        v
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Ok(F2Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            bits,
        })
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let row = &self.bits[r * self.stride..(r + 1) * self.stride];
            let parity = row
                .iter()
                .zip(&x.words)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            out.set(r, parity & 1 == 1);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.bits.clone();
        echelon(&mut work, self.rows, self.cols, self.stride).len()
    }

    /// Solves `self · x = rhs`.
    pub fn solve_affine(&self, rhs: &BitVec) -> Result<SolutionSet> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        // Augment with rhs in column `cols`.
        let stride = words_for(self.cols + 1);
        let mut work = vec![0u64; self.rows * stride];
        for r in 0..self.rows {
            let dst = &mut work[r * stride..(r + 1) * stride];
            dst[..self.stride.min(stride)].copy_from_slice(
                &self.bits[r * self.stride..r * self.stride + self.stride.min(stride)],
            );
            if rhs.get(r) {
                dst[self.cols / WORD] |= 1u64 << (self.cols % WORD);
            }
        }
        let pivots = echelon(&mut work, self.rows, self.cols, stride);
        let rank = pivots.len();
        let aug = |r: usize| (work[r * stride + self.cols / WORD] >> (self.cols % WORD)) & 1 == 1;
        // Rows below the rank are zero on the coefficient part.
        let consistent = (rank..self.rows).all(|r| !aug(r));
        let particular = consistent.then(|| {
            let mut p = BitVec::zeros(self.cols);
            for (r, &c) in pivots.iter().enumerate() {
                p.set(c, aug(r));
            }
            p
        });
        Ok(SolutionSet {
            consistent,
            particular,
            kernel_dim: self.cols - rank,
        })
    }

    /// A basis of the null space `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.bits.clone();
        let pivots = echelon(&mut work, self.rows, self.cols, self.stride);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let entry = |r: usize, c: usize| (work[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1;
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.cols);
                v.set(f, true);
                for (r, &c) in pivots.iter().enumerate() {
                    if entry(r, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduces `work` to reduced row echelon form over the first `cols` columns and returns
/// the pivot column of each of the leading rows.
fn echelon(work: &mut [u64], rows: usize, cols: usize, stride: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows {
            break;
        }
        let (w, m) = (c / WORD, 1u64 << (c % WORD));
        let Some(p) = (next..rows).find(|&r| work[r * stride + w] & m != 0) else {
            continue;
        };
        if p != next {
            for k in 0..stride {
                work.swap(p * stride + k, next * stride + k);
            }
        }
        for r in 0..rows {
            if r != next && work[r * stride + w] & m != 0 {
                for k in 0..stride {
                    let v = work[next * stride + k];
                    work[r * stride + k] ^= v;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        assert_eq!(F2Matrix::zeros(3, 5).rank(), 0);
        let m = F2Matrix::from_rows(&[b"110", b"011", b"101"]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_identity() {
        let v = BitVec::from_bools(&[true, false, true, true]);
        let s = F2Matrix::identity(4).solve_affine(&v).unwrap();
        assert!(s.consistent);
        assert_eq!(s.particular.as_ref(), Some(&v));
        assert_eq!(s.kernel_dim, 0);
    }

    #[test]
    fn solve_zero_matrix() {
        let m = F2Matrix::zeros(3, 7);
        let s = m.solve_affine(&BitVec::zeros(3)).unwrap();
        assert!(s.consistent);
        assert_eq!(s.kernel_dim, 7);
        let s = m
            .solve_affine(&BitVec::from_bools(&[false, true, false]))
            .unwrap();
        assert!(!s.consistent);
        assert!(s.particular.is_none());
        assert_eq!(s.count(), 0);
    }

    #[test]
    fn solve_rejects_wrong_rhs_length() {
        let m = F2Matrix::zeros(3, 2);
        assert_eq!(
            m.solve_affine(&BitVec::zeros(2)),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn wide_matrix_spans_words() {
        // 2 x 130: x_0 + x_129 = 1, x_64 = 1.
        let mut m = F2Matrix::zeros(2, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        let rhs = BitVec::from_bools(&[true, true]);
        let s = m.solve_affine(&rhs).unwrap();
        assert!(s.consistent);
        assert_eq!(s.kernel_dim, 128);
        assert_eq!(m.mul_vec(s.particular.as_ref().unwrap()).unwrap(), rhs);
        for k in m.kernel_basis() {
            assert!(m.mul_vec(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn stack_and_column_words() {
        let a = F2Matrix::from_column_words(2, &[0b01, 0b10]);
        assert_eq!(a, F2Matrix::identity(2));
        let s = a.stack(&F2Matrix::from_rows(&[b"11"]).unwrap()).unwrap();
        assert_eq!(s.rows(), 3);
        assert_eq!(s.rank(), 2);
        assert!(a.stack(&F2Matrix::zeros(1, 3)).is_err());
    }
}
