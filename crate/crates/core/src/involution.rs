//! The involutions `x ↦ x*` (induced by `a ↦ a^{-1}`) and `x ↦ x^⊛` (induced by
//! `a ↦ a^(2^(n-1) - 1)`, only for `n >= 3`) of `F2[C]`, and the norm maps built on them.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cyclic::{AlgElem, CyclicContext};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Involution {
    /// `a ↦ a^{-1}`.
    Star,
    /// `a ↦ a^(2^(n-1) - 1)`.
    Circledast,
}

impl Involution {
    pub const ALL: [Involution; 2] = [Involution::Star, Involution::Circledast];

    pub fn name(self) -> &'static str {
        match self {
            Involution::Star => "star",
            Involution::Circledast => "circledast",
        }
    }

    /// Whether the involution exists on `C_{2^n}`.
    pub fn supported(self, n: u32) -> bool {
        self == Involution::Star || n >= 3
    }

    /// The exponent `k` with `(a^i)^σ = a^k`.
    pub fn exponent_map(self, n: u32, i: usize) -> usize {
        let dim = 1usize << n;
        let factor = match self {
            Involution::Star => dim - 1,
            Involution::Circledast => dim / 2 - 1,
        };
        (i * factor) % dim
    }

    pub fn apply(self, ctx: &CyclicContext, x: AlgElem) -> Result<AlgElem> {
        ctx.check(x)?;
        Ok(ctx.wrap(ctx.apply_raw(self, x.bits())?))
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Involution {
    type Err = crate::notation::ParseError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "star" | "*" => Ok(Involution::Star),
            "circledast" | "⊛" => Ok(Involution::Circledast),
            _ => Err(crate::notation::ParseError::UnknownName),
        }
    }
}

/// A coefficient permutation, applied a byte at a time through lookup tables.
#[derive(Clone, Debug)]
pub(crate) struct PermTable {
    lut: Vec<[u64; 256]>,
}

impl PermTable {
    pub(crate) fn new(n: u32, sigma: Involution) -> Self {
        let dim = 1usize << n;
        let mut perm = [0u8; 64];
        for (i, p) in perm.iter_mut().enumerate().take(dim) {
            *p = sigma.exponent_map(n, i) as u8;
        }
        let chunks = dim.div_ceil(8);
        let lut = (0..chunks)
            .map(|c| {
                let mut t = [0u64; 256];
                for (byte, slot) in t.iter_mut().enumerate() {
                    for b in 0..8 {
                        let i = c * 8 + b;
                        if i < dim && (byte >> b) & 1 == 1 {
                            *slot |= 1u64 << perm[i];
                        }
                    }
                }
                t
            })
            .collect();
        Self { lut }
    }

    #[inline]
    pub(crate) fn apply(&self, x: u64) -> u64 {
        self.lut
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc ^ t[((x >> (8 * c)) & 0xFF) as usize])
    }

    #[cfg(test)]
    pub(crate) fn image(&self, i: usize) -> usize {
        self.apply(1 << i).trailing_zeros() as usize
    }
}

/// The exponent sets used by the `⊛` norm formula:
/// `P` = even residues mod `2^n`, `R` = evens below `2^(n-1)`, and
/// `Q = {0, 2, ..., 2^(n-2) - 2} ∪ {2^(n-1), 2^(n-1) + 2, ..., 2^(n-1) + 2^(n-2) - 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

impl IndexSets {
    pub fn new(n: u32) -> Self {
        let dim = 1usize << n;
        let (half, quarter) = (dim / 2, dim / 4);
        let p = (0..dim).step_by(2).collect();
        let r = (0..half).step_by(2).collect();
        // Both runs end at `2^(n-2) - 2`, so they are empty for n = 2.
        let run = quarter.saturating_sub(1);
        let q = (0..run)
            .step_by(2)
            .chain((half..half + run).step_by(2))
            .collect();
        Self { p, q, r }
    }
}

/// `ρ(i) = i` for even `i`, `i + 2^(n-1) mod 2^n` for odd `i`. With it,
/// `x^⊛ = Σ α_{ρ(i)} a^{-i}`.
pub fn rho(n: u32) -> Vec<usize> {
    let dim = 1usize << n;
    (0..dim)
        .map(|i| if i % 2 == 0 { i } else { (i + dim / 2) % dim })
        .collect()
}

/// The coefficient of `1`.
pub fn trace(x: AlgElem) -> bool {
    x.bits() & 1 == 1
}

/// `x · x^σ` evaluated from the coefficient formulas for the norm, without using the
/// algebra product.
pub fn sigma_product_closed_form(
    ctx: &CyclicContext,
    sigma: Involution,
    x: AlgElem,
) -> Result<AlgElem> {
    ctx.check(x)?;
    if !sigma.supported(ctx.n()) {
        return Err(Error::UnsupportedInvolution { n: ctx.n() });
    }
    let dim = ctx.dim();
    let h = dim / 2;
    let alpha = |i: usize| ((x.bits() >> (i % dim)) & 1) as u8;
    let sub = |a: usize, b: usize| (a + dim - b % dim) % dim;
    let mut out = 0u64;
    let pair = |gamma: u8, e1: usize, e2: usize| {
        if gamma & 1 == 1 {
            (1u64 << e1) ^ (1u64 << e2)
        } else {
            0
        }
    };
    match sigma {
        Involution::Star => {
            // γ_0 = χ(x); γ_j = Σ_i α_i α_{i-j} pairs a^j with a^{-j}.
            for j in 1..h {
                let gamma = (0..dim).fold(0u8, |acc, i| acc ^ (alpha(i) & alpha(sub(i, j))));
                out ^= pair(gamma, j, dim - j);
            }
            if x.augmentation() {
                out ^= 1;
            }
        }
        Involution::Circledast => {
            let sets = IndexSets::new(ctx.n());
            let odd: Vec<usize> = sets.p.iter().map(|r| r + 1).collect();
            let gamma_even = |k: usize| {
                sets.p
                    .iter()
                    .fold(0u8, |acc, &r| acc ^ (alpha(r) & alpha(sub(r, k))))
                    ^ odd
                        .iter()
                        .fold(0u8, |acc, &r| acc ^ (alpha(r) & alpha(sub(r + h, k))))
            };
            let gamma_odd = |k: usize| {
                sets.p
                    .iter()
                    .fold(0u8, |acc, &r| acc ^ (alpha(r) & alpha(sub(r + h, k))))
                    ^ odd
                        .iter()
                        .fold(0u8, |acc, &r| acc ^ (alpha(r) & alpha(sub(r, k))))
            };
            let gamma_0 = sets.p.iter().fold(0u8, |acc, &r| acc ^ alpha(r));
            let gamma_h = odd.iter().fold(0u8, |acc, &r| acc ^ alpha(r));
            if gamma_0 == 1 {
                out ^= 1;
            }
            if gamma_h == 1 {
                out ^= 1 << h;
            }
            for &k in sets.r.iter().filter(|&&k| k != 0) {
                out ^= pair(gamma_even(k), k, dim - k);
            }
            for k in sets.q.iter().map(|q| q + 1) {
                out ^= pair(gamma_odd(k), k, sub(h, k));
            }
        }
    }
    Ok(ctx.wrap(out))
}

pub fn is_symmetric(ctx: &CyclicContext, sigma: Involution, x: AlgElem) -> Result<bool> {
    Ok(sigma.apply(ctx, x)? == x)
}

/// `x^σ = x^{-1}`; only defined for units.
pub fn is_unitary(ctx: &CyclicContext, sigma: Involution, x: AlgElem) -> Result<bool> {
    let xs = sigma.apply(ctx, x)?;
    if !x.augmentation() {
        return Err(Error::NotAUnit);
    }
    Ok(ctx.mul(x, xs) == ctx.one())
}

/// `φ_σ(x) = x^σ x^{-1}`.
pub fn phi_sigma(ctx: &CyclicContext, sigma: Involution, x: AlgElem) -> Result<AlgElem> {
    let xs = sigma.apply(ctx, x)?;
    Ok(ctx.mul(xs, ctx.inverse(x)?))
}

/// `ψ_σ(x) = x x^σ`.
pub fn psi_sigma(ctx: &CyclicContext, sigma: Involution, x: AlgElem) -> Result<AlgElem> {
    let xs = sigma.apply(ctx, x)?;
    if !x.augmentation() {
        return Err(Error::NotAUnit);
    }
    Ok(ctx.mul(x, xs))
}
