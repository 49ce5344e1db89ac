//! The group algebra `F2[C]` of the cyclic group `C = <a | a^(2^n) = 1>`.
//!
//! An element is stored as one `u64` whose bit `i` is the coefficient of `a^i`, so
//! `n <= 6` is supported. Addition is XOR, multiplication is cyclic convolution mod 2.
//!
//! Besides the group basis, `F2[C]` has the filtration basis `1, (1+a), (1+a)^2, ...`;
//! an element's leading filtration coordinate tells which power of the augmentation
//! ideal it lies in.

use core::ops::{Add, AddAssign};

use crate::f2linalg::F2Matrix;
use crate::involution::{Involution, PermTable};
use crate::{Error, Result};

pub const MIN_N: u32 = 2;
pub const MAX_N: u32 = 6;

/// An element of `F2[C_{2^n}]`.
///
/// Ordering compares the coefficient bit pattern first, which is what the subgroup
/// enumerations sort by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgElem {
    bits: u64,
    n: u8,
}

impl AlgElem {
    /// Coefficient bits, bit `i` belonging to `a^i`.
    #[inline]
    pub const fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub const fn n(self) -> u32 {
        self.n as u32
    }

    #[inline]
    pub const fn dim(self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn coeff(self, i: usize) -> bool {
        assert!(i < self.dim(), "exponent {i} out of range");
        (self.bits >> i) & 1 == 1
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// The augmentation `χ(x)`, the sum of all coefficients.
    #[inline]
    pub const fn augmentation(self) -> bool {
        self.bits.count_ones() & 1 == 1
    }

    #[inline]
    pub const fn is_unit(self) -> bool {
        self.augmentation()
    }

    #[inline]
    pub(crate) const fn from_raw(bits: u64, n: u32) -> Self {
        Self { bits, n: n as u8 }
    }

    #[inline]
    fn check_same(self, other: AlgElem) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    pub fn checked_add(self, other: AlgElem) -> Result<AlgElem> {
        self.check_same(other)?;
        Ok(AlgElem {
            bits: self.bits ^ other.bits,
            n: self.n,
        })
    }
}

impl Add for AlgElem {
    type Output = AlgElem;

    /// Panics when the operands belong to different algebras.
    fn add(self, rhs: AlgElem) -> AlgElem {
        assert_eq!(self.n, rhs.n, "adding elements of different algebras");
        AlgElem {
            bits: self.bits ^ rhs.bits,
            n: self.n,
        }
    }
}

impl AddAssign for AlgElem {
    fn add_assign(&mut self, rhs: AlgElem) {
        *self = *self + rhs;
    }
}

/// Coordinates of an element in the basis `(1+a)^i`, bit `i` multiplying `(1+a)^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiltrationCoords {
    coords: u64,
    n: u8,
}

impl FiltrationCoords {
    pub const fn bits(self) -> u64 {
        self.coords
    }

    pub const fn n(self) -> u32 {
        self.n as u32
    }

    pub fn coord(self, i: usize) -> bool {
        assert!(i < 1 << self.n, "coordinate {i} out of range");
        (self.coords >> i) & 1 == 1
    }
}

/// Tables for one cyclic group `C_{2^n}`.
#[derive(Clone, Debug)]
pub struct CyclicContext {
    n: u32,
    dim: usize,
    mask: u64,
    /// `from_filtration[i] = (1+a)^i` in the group basis.
    from_filtration: [u64; 64],
    /// `to_filtration[j]` = filtration coordinates of `a^j`.
    to_filtration: [u64; 64],
    star: PermTable,
    circledast: Option<PermTable>,
}

impl PartialEq for CyclicContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CyclicContext {}

impl CyclicContext {
    pub fn new(n: u32) -> Result<Self> {
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(Error::InvalidExponent {
                n,
                min: MIN_N,
                max: MAX_N,
            });
        }
        let dim = 1usize << n;
        let mask = if dim == 64 {
            u64::MAX
        } else {
            (1u64 << dim) - 1
        };
        let mut ctx = CyclicContext {
            n,
            dim,
            mask,
            from_filtration: [0; 64],
            to_filtration: [0; 64],
            star: PermTable::new(n, Involution::Star),
            circledast: (n >= 3).then(|| PermTable::new(n, Involution::Circledast)),
        };
        // (1+a)^i by repeated multiplication with 1+a.
        let mut p = 1u64;
        for i in 0..dim {
            ctx.from_filtration[i] = p;
            p = ctx.mul_raw(p, 0b11);
        }
        // a^j = (1+t)^j with t = 1+a, and t^dim = 0: multiplying by a maps
        // filtration coordinates c to c + c*t.
        let mut c = 1u64;
        for j in 0..dim {
            ctx.to_filtration[j] = c;
            c = (c ^ (c << 1)) & mask;
        }
        Ok(ctx)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `|C| = 2^n`, the dimension of `F2[C]`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Mask of the valid coefficient bits.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// `2^(n-1)`, the exponent of the central involution `a^(2^(n-1))`.
    #[inline]
    pub fn half(&self) -> usize {
        self.dim / 2
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem::from_raw(0, self.n)
    }

    pub fn one(&self) -> AlgElem {
        AlgElem::from_raw(1, self.n)
    }

    /// The element with the given coefficient bits.
    pub fn elem(&self, bits: u64) -> Result<AlgElem> {
        if bits & !self.mask != 0 {
            let index = 63 - (bits & !self.mask).leading_zeros() as usize;
            return Err(Error::IndexOutOfRange {
                index,
                bound: self.dim,
            });
        }
        Ok(AlgElem::from_raw(bits, self.n))
    }

    /// `a^k`, with `k` reduced modulo `2^n`.
    pub fn monomial(&self, k: u64) -> AlgElem {
        AlgElem::from_raw(1u64 << (k % self.dim as u64), self.n)
    }

    /// `(1+a)^i`, zero once `i >= 2^n`.
    pub fn one_plus_a_pow(&self, i: usize) -> AlgElem {
        AlgElem::from_raw(self.from_filtration.get(i).copied().unwrap_or(0), self.n)
    }

    /// `D̂`, the sum of the group elements `a^k` for `k` in `exponents`. Repeated
    /// exponents cancel.
    pub fn hat_sum<I: IntoIterator<Item = usize>>(&self, exponents: I) -> Result<AlgElem> {
        let mut bits = 0u64;
        for k in exponents {
            if k >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    bound: self.dim,
                });
            }
            bits ^= 1 << k;
        }
        Ok(AlgElem::from_raw(bits, self.n))
    }

    /// `Ĉ`, the sum of all group elements.
    pub fn group_sum(&self) -> AlgElem {
        AlgElem::from_raw(self.mask, self.n)
    }

    pub(crate) fn check(&self, x: AlgElem) -> Result<()> {
        if x.n() == self.n {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.n,
                right: x.n(),
            })
        }
    }

    #[inline]
    pub(crate) fn wrap(&self, bits: u64) -> AlgElem {
        AlgElem::from_raw(bits, self.n)
    }

    /// Cyclic rotation of the coefficient vector: multiplication by `a^i`.
    #[inline]
    pub(crate) fn rot(&self, y: u64, i: u32) -> u64 {
        if i == 0 {
            y
        } else if self.dim == 64 {
            y.rotate_left(i)
        } else {
            ((y << i) | (y >> (self.dim as u32 - i))) & self.mask
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, mut x: u64, y: u64) -> u64 {
        let mut acc = 0;
        while x != 0 {
            acc ^= self.rot(y, x.trailing_zeros());
            x &= x - 1;
        }
        acc
    }

    /// Frobenius: `(Σ α_i a^i)^2 = Σ_{i < 2^(n-1)} (α_i + α_{i+2^(n-1)}) a^(2i)`.
    #[inline]
    pub(crate) fn square_raw(&self, x: u64) -> u64 {
        let h = self.half();
        let low = if h == 64 { u64::MAX } else { (1u64 << h) - 1 };
        spread_even((x ^ (x >> h)) & low)
    }

    pub(crate) fn apply_raw(&self, sigma: Involution, x: u64) -> Result<u64> {
        Ok(self.table(sigma)?.apply(x))
    }

    pub(crate) fn table(&self, sigma: Involution) -> Result<&PermTable> {
        match sigma {
            Involution::Star => Ok(&self.star),
            Involution::Circledast => self
                .circledast
                .as_ref()
                .ok_or(Error::UnsupportedInvolution { n: self.n }),
        }
    }

    /// Product in `F2[C]`. Panics if either operand belongs to another algebra.
    pub fn mul(&self, x: AlgElem, y: AlgElem) -> AlgElem {
        self.try_mul(x, y)
            .expect("operands must belong to this algebra")
    }

    pub fn try_mul(&self, x: AlgElem, y: AlgElem) -> Result<AlgElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_raw(x.bits, y.bits)))
    }

    pub fn square(&self, x: AlgElem) -> AlgElem {
        assert_eq!(x.n(), self.n, "operand must belong to this algebra");
        self.wrap(self.square_raw(x.bits))
    }

    pub fn pow(&self, x: AlgElem, mut e: u64) -> AlgElem {
        assert_eq!(x.n(), self.n, "operand must belong to this algebra");
        let (mut base, mut acc) = (x.bits, 1u64);
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.square_raw(base);
            e >>= 1;
        }
        self.wrap(acc)
    }

    /// `x^{-1} = x^(2^n - 1) = x · x^2 · x^4 ··· x^(2^(n-1))`, valid because `x^(2^n) = 1`
    /// for every unit of `F2[C]`.
    pub fn inverse(&self, x: AlgElem) -> Result<AlgElem> {
        self.check(x)?;
        if !x.augmentation() {
            return Err(Error::NotAUnit);
        }
        let (mut acc, mut p) = (x.bits, x.bits);
        for _ in 1..self.n {
            p = self.square_raw(p);
            acc = self.mul_raw(acc, p);
        }
        Ok(self.wrap(acc))
    }

    pub fn to_filtration(&self, x: AlgElem) -> FiltrationCoords {
        assert_eq!(x.n(), self.n, "operand must belong to this algebra");
        FiltrationCoords {
            coords: gather(&self.to_filtration, x.bits),
            n: self.n as u8,
        }
    }

    pub fn from_filtration(&self, c: FiltrationCoords) -> AlgElem {
        assert_eq!(c.n(), self.n, "coordinates must belong to this algebra");
        self.wrap(gather(&self.from_filtration, c.coords))
    }

    pub fn filtration_coords(&self, coords: u64) -> Result<FiltrationCoords> {
        self.elem(coords).map(|e| FiltrationCoords {
            coords: e.bits,
            n: self.n as u8,
        })
    }

    /// The largest `i` with `x ∈ A^i`, where `A` is the augmentation ideal; `0` exactly
    /// for units.
    pub fn filtration_degree(&self, x: AlgElem) -> Result<usize> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroHasNoDegree);
        }
        Ok(self.to_filtration(x).coords.trailing_zeros() as usize)
    }

    /// The matrix, in the group basis, of a GF(2)-linear map given on coefficient words.
    pub fn matrix_of(&self, f: impl Fn(u64) -> u64) -> F2Matrix {
        let cols: alloc::vec::Vec<u64> = (0..self.dim).map(|j| f(1u64 << j)).collect();
        F2Matrix::from_column_words(self.dim, &cols)
    }

    /// The matrix of `y ↦ y·z` in the group basis.
    pub fn multiplication_matrix(&self, z: AlgElem) -> F2Matrix {
        let cols: alloc::vec::Vec<u64> =
            (0..self.dim as u32).map(|j| self.rot(z.bits, j)).collect();
        F2Matrix::from_column_words(self.dim, &cols)
    }

    /// `|Ann((1+a)^i)|`, computed as the size of the kernel of multiplication by
    /// `(1+a)^i`.
    pub fn annihilator_order(&self, i: usize) -> Result<u128> {
        if i > self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.dim + 1,
            });
        }
        let m = self.multiplication_matrix(self.one_plus_a_pow(i));
        Ok(1u128 << (self.dim - m.rank()))
    }

    /// All `2^dim` elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = AlgElem> + '_ {
        (0..=self.mask).map(move |b| self.wrap(b))
    }

    /// All normalized units (augmentation 1), `2^(dim-1)` of them.
    pub fn units(&self) -> impl Iterator<Item = AlgElem> + '_ {
        (0..=(self.mask >> 1)).map(move |t| self.unit_from_free(t))
    }

    /// The normalized unit whose coefficients of `a^1 .. a^(dim-1)` are the bits of `t`;
    /// the coefficient of `1` is fixed by the augmentation.
    #[inline]
    pub fn unit_from_free(&self, t: u64) -> AlgElem {
        let high = (t << 1) & self.mask;
        self.wrap(high | (!high.count_ones() as u64 & 1))
    }
}

fn gather(table: &[u64; 64], mut bits: u64) -> u64 {
    let mut acc = 0;
    while bits != 0 {
        acc ^= table[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    acc
}

/// Moves bit `i` of a 32-bit value to bit `2i`.
#[inline]
fn spread_even(x: u64) -> u64 {
    let mut x = x & 0xFFFF_FFFF;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> CyclicContext {
        CyclicContext::new(2).unwrap()
    }

    fn e(ctx: &CyclicContext, exps: &[usize]) -> AlgElem {
        ctx.hat_sum(exps.iter().copied()).unwrap()
    }

    #[test]
    fn context_bounds() {
        assert_eq!(CyclicContext::new(2).unwrap().dim(), 4);
        assert_eq!(CyclicContext::new(3).unwrap().dim(), 8);
        assert_eq!(CyclicContext::new(6).unwrap().dim(), 64);
        assert!(matches!(
            CyclicContext::new(1),
            Err(Error::InvalidExponent { n: 1, .. })
        ));
        assert!(CyclicContext::new(7).is_err());
    }

    #[test]
    fn products_in_c4() {
        let ctx = c4();
        assert_eq!(
            ctx.mul(e(&ctx, &[0, 1]), e(&ctx, &[0, 3])),
            e(&ctx, &[1, 3])
        );
        let x = e(&ctx, &[0, 2, 3]);
        assert_eq!(ctx.mul(x, ctx.one()), x);
        assert_eq!(ctx.mul(e(&ctx, &[0, 1]), ctx.group_sum()), ctx.zero());
    }

    #[test]
    fn squares_in_c4() {
        let ctx = c4();
        assert_eq!(ctx.square(e(&ctx, &[0, 1, 2])), e(&ctx, &[2]));
        assert_eq!(ctx.square(ctx.one()), ctx.one());
        assert_eq!(ctx.square(e(&ctx, &[0, 1])), e(&ctx, &[0, 2]));
    }

    #[test]
    fn augmentation_examples() {
        let ctx = CyclicContext::new(3).unwrap();
        for k in 0..8 {
            assert!(ctx.monomial(k).augmentation());
        }
        assert!(!e(&ctx, &[0, 1]).augmentation());
        assert!(!ctx.group_sum().augmentation());
    }

    #[test]
    fn inverse_examples() {
        let ctx = c4();
        assert_eq!(
            ctx.inverse(e(&ctx, &[0, 1, 2])).unwrap(),
            e(&ctx, &[0, 2, 3])
        );
        assert_eq!(ctx.inverse(ctx.one()).unwrap(), ctx.one());
        assert_eq!(ctx.inverse(ctx.group_sum()), Err(Error::NotAUnit));
    }

    #[test]
    fn filtration_examples() {
        let ctx = CyclicContext::new(3).unwrap();
        assert_eq!(ctx.to_filtration(ctx.monomial(1)).bits(), 0b11);
        assert_eq!(ctx.to_filtration(ctx.one_plus_a_pow(2)).bits(), 0b100);
        assert_eq!(ctx.filtration_degree(ctx.one_plus_a_pow(3)), Ok(3));
        assert_eq!(ctx.filtration_degree(e(&ctx, &[0, 1, 2])), Ok(0));
        assert_eq!(
            ctx.filtration_degree(ctx.zero()),
            Err(Error::ZeroHasNoDegree)
        );
        let c4 = c4();
        assert_eq!(c4.filtration_degree(e(&c4, &[1, 3])), Ok(2));
    }

    #[test]
    fn annihilator_examples() {
        let ctx = CyclicContext::new(3).unwrap();
        assert_eq!(ctx.annihilator_order(3), Ok(8));
        assert_eq!(ctx.annihilator_order(0), Ok(1));
        assert_eq!(ctx.annihilator_order(8), Ok(1 << 8));
        assert!(ctx.annihilator_order(9).is_err());
        let big = CyclicContext::new(6).unwrap();
        assert_eq!(big.annihilator_order(64), Ok(1u128 << 64));
    }

    #[test]
    fn hat_sums() {
        let ctx = c4();
        assert_eq!(e(&ctx, &[0, 1, 2, 3]).bits(), 0b1111);
        let c8 = CyclicContext::new(3).unwrap();
        assert_eq!(c8.hat_sum((0..8).step_by(2)).unwrap().bits(), 0b0101_0101);
        assert_eq!(ctx.hat_sum([]).unwrap(), ctx.zero());
        assert!(ctx.hat_sum([4]).is_err());
    }

    #[test]
    fn mismatched_contexts() {
        let (a, b) = (c4(), CyclicContext::new(3).unwrap());
        assert_eq!(
            a.try_mul(a.one(), b.one()),
            Err(Error::ContextMismatch { left: 2, right: 3 })
        );
        assert!(a.one().checked_add(b.one()).is_err());
        assert!(a.elem(0x10).is_err());
    }

    #[test]
    fn units_have_augmentation_one() {
        let ctx = CyclicContext::new(3).unwrap();
        let units: alloc::vec::Vec<_> = ctx.units().collect();
        assert_eq!(units.len(), 128);
        assert!(units.iter().all(|u| u.augmentation()));
    }
}
