//! Counting the solutions of `x^2 = 1` in `V(F2 G)` for `G` of maximal class.
//!
//! Four independent routes are provided:
//!
//! - [`theta_formula`]: the closed formulas
//!   `D: 2^(2^n+n-1) + 2^(2^n)`, `SD: 2^(2^n+n-1)`, `Q: 2^(2^n+n-1) - 2^(2^n)`;
//! - [`count_brute`]: squares every normalized unit `x1 + x2 b`;
//! - [`count_structural`]: for each `x2`, the conditions on `x1` are an affine system over
//!   GF(2) (squaring is linear in characteristic 2), solved by elimination;
//! - [`count_proof_decomposition`]: assembles the count from the orders of the subgroups
//!   `V[2]`, `S_i`, `H_i`, `L_i` of `V(F2 C)`.
//!
//! All counts include the identity. The number of elements of order exactly two is
//! `total - 1`.

use core::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::budget::{Budget, POLL_INTERVAL};
use crate::census::{enumerate, order_formula, SubgroupSpec, MAX_ENUM_N};
use crate::cyclic::{CyclicContext, MIN_N};
use crate::f2linalg::{BitVec, F2Matrix};
use crate::involution::{Involution, PermTable};
use crate::maxclass::{Family, MCContext};
use crate::{Error, Result};

/// Largest `n` accepted by any counting method.
pub const MAX_THETA_N: u32 = 6;
/// Largest `n` for [`count_brute`] (`2^31` candidates at `n = 4`).
pub const MAX_BRUTE_N: u32 = 4;
/// Largest `n` for [`count_structural`] (`2^32` values of `x2` at `n = 5`).
pub const MAX_STRUCTURAL_N: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    Brute,
    Structural,
    ProofDecomposition,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Brute => "brute",
            Method::Structural => "structural",
            Method::ProofDecomposition => "proof",
        }
    }
}

/// Where [`count_proof_decomposition`] takes subgroup orders from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderSource {
    Formula,
    Enumerated,
}

impl OrderSource {
    pub fn name(self) -> &'static str {
        match self {
            OrderSource::Formula => "formula",
            OrderSource::Enumerated => "enumerated",
        }
    }
}

/// Solutions of `x^2 = 1` split by unit type. The identity is counted in `type1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TypeCounts {
    pub type1: BigUint,
    pub type2: BigUint,
}

impl TypeCounts {
    pub fn total(&self) -> BigUint {
        &self.type1 + &self.type2
    }
}

/// Raw per-range tallies, merged by addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PartialCounts {
    pub type1: u128,
    pub type2: u128,
}

impl PartialCounts {
    pub fn merge(self, other: PartialCounts) -> PartialCounts {
        PartialCounts {
            type1: self.type1 + other.type1,
            type2: self.type2 + other.type2,
        }
    }
}

impl From<PartialCounts> for TypeCounts {
    fn from(p: PartialCounts) -> Self {
        TypeCounts {
            type1: p.type1.into(),
            type2: p.type2.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub family: Family,
    pub n: u32,
    pub method: Method,
    /// Only set for [`Method::ProofDecomposition`].
    pub order_source: Option<OrderSource>,
    /// `None` when the budget ran out; partial counts are never reported.
    pub counts: Option<TypeCounts>,
    /// Filled in by callers that keep time.
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
}

impl CensusReport {
    fn new(family: Family, n: u32, method: Method, counts: Option<TypeCounts>) -> Self {
        Self {
            family,
            n,
            method,
            order_source: None,
            budget_exhausted: counts.is_none(),
            counts,
            elapsed_ms: 0,
        }
    }

    pub fn total(&self) -> Option<BigUint> {
        self.counts.as_ref().map(TypeCounts::total)
    }

    /// Elements of order exactly two: the total minus the identity.
    pub fn involutions(&self) -> Option<BigUint> {
        self.total().map(|t| t - 1u8)
    }

    /// The total is even, i.e. the number of involutions is odd.
    pub fn parity_ok(&self) -> Option<bool> {
        self.total().map(|t| !t.bit(0) && !t.is_zero())
    }
}

fn check_family(family: Family, n: u32, max: u32) -> Result<()> {
    if !(MIN_N..=MAX_THETA_N).contains(&n) {
        return Err(Error::InvalidExponent {
            n,
            min: MIN_N,
            max: MAX_THETA_N,
        });
    }
    if n < family.min_n() {
        return Err(Error::UnsupportedFamily { n });
    }
    if n > max {
        return Err(Error::EnumerationCap { n, max });
    }
    Ok(())
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e
}

/// The closed formula for the number of solutions of `x^2 = 1` in `V(F2 G)`.
pub fn theta_formula(family: Family, n: u32) -> Result<BigUint> {
    check_family(family, n, MAX_THETA_N)?;
    let d = 1u32 << n;
    let main = pow2(d + n - 1);
    Ok(match family {
        Family::Dihedral => main + pow2(d),
        Family::Semidihedral => main,
        Family::Quaternion => main - pow2(d),
    })
}

/// The formula count together with the closed-form type split
/// `type1 = 2^(2^n) (2^(n-1) - 1)` and `type2 = 2^(2^n+1)`, `2^(2^n)`, `0` for D, SD, Q.
pub fn formula_report(family: Family, n: u32) -> Result<CensusReport> {
    let total = theta_formula(family, n)?;
    let d = 1u32 << n;
    let type1 = pow2(d) * (pow2(n - 1) - 1u8);
    let type2 = match family {
        Family::Dihedral => pow2(d + 1),
        Family::Semidihedral => pow2(d),
        Family::Quaternion => BigUint::zero(),
    };
    debug_assert_eq!(&type1 + &type2, total);
    Ok(CensusReport::new(
        family,
        n,
        Method::Formula,
        Some(TypeCounts { type1, type2 }),
    ))
}

/// Number of values of `x2`, the outer loop of both counters.
pub fn x2_space(ctx: &MCContext) -> u64 {
    1u64 << ctx.cyclic().dim()
}

/// Checks that `ctx` can be handled by [`count_brute`].
pub fn brute_supported(ctx: &MCContext) -> Result<()> {
    check_family(ctx.family(), ctx.n(), MAX_BRUTE_N)
}

/// Counts `u = x1 + x2 b` with `u^2 = 1` for `x2` in `x2_range`, squaring each unit with
/// the group algebra product. Returns `None` if the budget ran out.
pub fn count_brute_range<B: Budget + ?Sized>(
    ctx: &MCContext,
    x2_range: Range<u64>,
    budget: &mut B,
) -> Result<Option<PartialCounts>> {
    brute_supported(ctx)?;
    let c = ctx.cyclic();
    let half_space = 1u64 << (c.dim() - 1);
    let mut counts = PartialCounts::default();
    let mut since_poll = 0u64;
    for x2 in x2_range {
        let x2_aug = x2.count_ones() & 1 == 1;
        // The `1` component of u·u is x1·x1 plus a term depending on x2 alone, so the
        // full product is only finished for candidates whose first component is right.
        let x2_part = ctx.mul_raw(0, x2, 0, x2).0;
        for t in 0..half_space {
            since_poll += 1;
            if since_poll == POLL_INTERVAL {
                since_poll = 0;
                if budget.exhausted() {
                    return Ok(None);
                }
            }
            let x1 = with_augmentation(c, t, !x2_aug);
            if c.mul_raw(x1, x1) ^ x2_part != 1 {
                continue;
            }
            let (s1, s2) = ctx.mul_raw(x1, x2, x1, x2);
            if s1 == 1 && s2 == 0 {
                if x2_aug {
                    counts.type2 += 1;
                } else {
                    counts.type1 += 1;
                }
            }
        }
    }
    Ok(Some(counts))
}

/// The element whose coefficients of `a^1..` are the bits of `t` and whose augmentation
/// is `aug`.
#[inline]
fn with_augmentation(c: &CyclicContext, t: u64, aug: bool) -> u64 {
    let high = (t << 1) & c.mask();
    high | ((high.count_ones() & 1 == 1) != aug) as u64
}

/// Exhaustive count over all `2^(2^(n+1) - 1)` normalized units.
pub fn count_brute<B: Budget + ?Sized>(ctx: &MCContext, budget: &mut B) -> Result<CensusReport> {
    let counts = count_brute_range(ctx, 0..x2_space(ctx), budget)?;
    Ok(CensusReport::new(
        ctx.family(),
        ctx.n(),
        Method::Brute,
        counts.map(Into::into),
    ))
}

/// The per-context data of the structural counter: for fixed `x2`, `x1 + x2 b` squares to
/// 1 iff
///
/// ```text
/// x1^2            = x2 x2^σ b^2 + 1   (affine in x1)
/// (x1 + x1^σ) x2  = 0                 (linear in x1)
/// χ(x1)           = 1 + χ(x2)         (affine in x1)
/// ```
pub struct StructuralSystem<'a> {
    ctx: &'a MCContext,
    twist: &'a PermTable,
    square: F2Matrix,
    ones: F2Matrix,
}

impl<'a> StructuralSystem<'a> {
    pub fn new(ctx: &'a MCContext) -> Result<Self> {
        let c = ctx.cyclic();
        if ctx.n() > MAX_STRUCTURAL_N {
            return Err(Error::EnumerationCap {
                n: ctx.n(),
                max: MAX_STRUCTURAL_N,
            });
        }
        let twist = c.table(ctx.twist())?;
        let square = c.matrix_of(|x| c.square_raw(x));
        let ones = F2Matrix::from_column_words(1, &alloc::vec![1; c.dim()]);
        Ok(Self {
            ctx,
            twist,
            square,
            ones,
        })
    }

    /// Number of `x1` completing `x2` to a solution of `u^2 = 1`.
    pub fn solutions(&self, x2: u64) -> u128 {
        let c = self.ctx.cyclic();
        let dim = c.dim();
        let norm = c.mul_raw(
            c.mul_raw(x2, self.twist.apply(x2)),
            self.ctx.b_square().bits(),
        );
        let target = norm ^ 1;
        let annihilate = c.matrix_of(|x| c.mul_raw(x ^ self.twist.apply(x), x2));
        let m = self
            .square
            .stack(&annihilate)
            .and_then(|m| m.stack(&self.ones))
            .expect("blocks share the column count");
        let mut rhs = BitVec::zeros(2 * dim + 1);
        for r in 0..dim {
            rhs.set(r, (target >> r) & 1 == 1);
        }
        rhs.set(2 * dim, x2.count_ones() & 1 == 0);
        m.solve_affine(&rhs)
            .expect("right-hand side matches row count")
            .count()
    }
}

pub fn count_structural_range<B: Budget + ?Sized>(
    ctx: &MCContext,
    x2_range: Range<u64>,
    budget: &mut B,
) -> Result<Option<PartialCounts>> {
    check_family(ctx.family(), ctx.n(), MAX_STRUCTURAL_N)?;
    let system = StructuralSystem::new(ctx)?;
    let mut counts = PartialCounts::default();
    // Elimination is ~dim^2 word operations, so poll more often than the brute counter.
    let poll = (POLL_INTERVAL >> 6).max(1);
    for (k, x2) in x2_range.enumerate() {
        if (k as u64 + 1).is_multiple_of(poll) && budget.exhausted() {
            return Ok(None);
        }
        let s = system.solutions(x2);
        if x2.count_ones() & 1 == 1 {
            counts.type2 += s;
        } else {
            counts.type1 += s;
        }
    }
    Ok(Some(counts))
}

pub fn count_structural<B: Budget + ?Sized>(
    ctx: &MCContext,
    budget: &mut B,
) -> Result<CensusReport> {
    let counts = count_structural_range(ctx, 0..x2_space(ctx), budget)?;
    Ok(CensusReport::new(
        ctx.family(),
        ctx.n(),
        Method::Structural,
        counts.map(Into::into),
    ))
}

/// Assembles the count from subgroup orders of `V(F2 C)`, `σ` the family's twist:
///
/// ```text
/// type1 = |V[2]| + Σ_{l=1}^{2^(n-2)-1} |H_2l^σ| / |S_2l| · |L_2l^σ|
///                + Σ_{j=2^(n-1)}^{2^n-1} |V| / |S_j| · |V[2]|
/// type2 = |H_0^*| · |L_0^*|            (D)
///       = |H_0^⊛| / 2 · |L_0^⊛|        (SD)
///       = 0                            (Q)
/// ```
pub fn count_proof_decomposition(
    family: Family,
    n: u32,
    source: OrderSource,
) -> Result<CensusReport> {
    check_family(family, n, MAX_THETA_N)?;
    let enumerated_ctx = match source {
        OrderSource::Enumerated => {
            if n > MAX_ENUM_N {
                return Err(Error::EnumerationCap { n, max: MAX_ENUM_N });
            }
            Some(CyclicContext::new(n)?)
        }
        OrderSource::Formula => None,
    };
    let order = |spec: SubgroupSpec| -> Result<BigUint> {
        match &enumerated_ctx {
            Some(ctx) => Ok(BigUint::from(enumerate(ctx, &spec)?.order())),
            None => order_formula(&spec, n),
        }
    };
    let sigma = family.twist();
    let d = 1usize << n;
    let (half, quarter) = (d / 2, d / 4);
    let v = order(SubgroupSpec::FullV)?;
    let v2 = order(SubgroupSpec::LowerLayer)?;
    let exact_div = |a: BigUint, b: BigUint| -> BigUint {
        debug_assert!((&a % &b).is_zero(), "{a} is not divisible by {b}");
        a / b
    };

    let mut type1 = v2.clone();
    for l in 1..quarter {
        let k = exact_div(
            order(SubgroupSpec::H(sigma, 2 * l))?,
            order(SubgroupSpec::S(2 * l))?,
        );
        type1 += k * order(SubgroupSpec::L(sigma, 2 * l))?;
    }
    for j in half..d {
        type1 += exact_div(v.clone(), order(SubgroupSpec::S(j))?) * &v2;
    }

    let type2 = match family {
        Family::Dihedral => {
            order(SubgroupSpec::H(Involution::Star, 0))?
                * order(SubgroupSpec::L(Involution::Star, 0))?
        }
        Family::Semidihedral => {
            let h0 = order(SubgroupSpec::H(Involution::Circledast, 0))?;
            exact_div(h0, BigUint::from(2u8)) * order(SubgroupSpec::L(Involution::Circledast, 0))?
        }
        Family::Quaternion => BigUint::zero(),
    };
    let mut report = CensusReport::new(
        family,
        n,
        Method::ProofDecomposition,
        Some(TypeCounts { type1, type2 }),
    );
    report.order_source = Some(source);
    Ok(report)
}

/// Whether the formula gives pairwise different counts for the families that exist at
/// this `n` (all three for `n >= 3`, D and Q for `n = 2`).
pub fn families_distinct(n: u32) -> Result<bool> {
    let values: alloc::vec::Vec<BigUint> = Family::ALL
        .iter()
        .filter(|f| n >= f.min_n())
        .map(|&f| theta_formula(f, n))
        .collect::<Result<_>>()?;
    Ok(values
        .iter()
        .enumerate()
        .all(|(i, a)| values[i + 1..].iter().all(|b| a != b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Unlimited;
    use Family::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn formula_values() {
        assert_eq!(theta_formula(Dihedral, 2).unwrap(), big(48));
        assert_eq!(theta_formula(Quaternion, 2).unwrap(), big(16));
        assert_eq!(theta_formula(Dihedral, 3).unwrap(), big(1280));
        assert_eq!(theta_formula(Semidihedral, 3).unwrap(), big(1024));
        assert_eq!(theta_formula(Quaternion, 3).unwrap(), big(768));
        assert_eq!(theta_formula(Dihedral, 4).unwrap(), big(589_824));
        assert_eq!(theta_formula(Semidihedral, 4).unwrap(), big(524_288));
        assert_eq!(theta_formula(Quaternion, 4).unwrap(), big(458_752));
        assert_eq!(
            theta_formula(Semidihedral, 2),
            Err(Error::UnsupportedFamily { n: 2 })
        );
        assert!(theta_formula(Dihedral, 7).is_err());
        // 2^69 + 2^64 does not fit in 64 bits.
        assert_eq!(
            theta_formula(Dihedral, 6).unwrap(),
            (BigUint::one() << 69u32) + (BigUint::one() << 64u32)
        );
    }

    #[test]
    fn formula_split_sums() {
        for n in 2..=6 {
            for f in Family::ALL.into_iter().filter(|f| f.supported(n)) {
                let r = formula_report(f, n).unwrap();
                assert_eq!(r.total().unwrap(), theta_formula(f, n).unwrap());
                assert_eq!(r.parity_ok(), Some(true));
            }
        }
    }

    #[test]
    fn brute_small() {
        let d8 = MCContext::new(Dihedral, 2).unwrap();
        let r = count_brute(&d8, &mut Unlimited).unwrap();
        let c = r.counts.unwrap();
        assert_eq!((c.type1, c.type2), (big(16), big(32)));
        let q8 = MCContext::new(Quaternion, 2).unwrap();
        let c = count_brute(&q8, &mut Unlimited).unwrap().counts.unwrap();
        assert_eq!((c.type1, c.type2), (big(16), big(0)));
    }

    #[test]
    fn brute_budget_flags_report() {
        let ctx = MCContext::new(Dihedral, 3).unwrap();
        let r = count_brute(&ctx, &mut || true).unwrap();
        assert!(r.budget_exhausted);
        assert!(r.counts.is_none());
        assert!(r.total().is_none());
        let big_ctx = MCContext::new(Dihedral, 5).unwrap();
        assert_eq!(
            count_brute(&big_ctx, &mut Unlimited),
            Err(Error::EnumerationCap { n: 5, max: 4 })
        );
    }

    #[test]
    fn structural_d8() {
        let d8 = MCContext::new(Dihedral, 2).unwrap();
        let r = count_structural(&d8, &mut Unlimited).unwrap();
        assert_eq!(r.total(), Some(big(48)));
    }

    #[test]
    fn proof_decomposition_n3() {
        let r = count_proof_decomposition(Dihedral, 3, OrderSource::Formula).unwrap();
        let c = r.counts.unwrap();
        assert_eq!((c.type1, c.type2), (big(768), big(512)));
        let c = count_proof_decomposition(Quaternion, 3, OrderSource::Formula)
            .unwrap()
            .counts
            .unwrap();
        assert_eq!((c.type1, c.type2), (big(768), big(0)));
        let c = count_proof_decomposition(Semidihedral, 3, OrderSource::Formula)
            .unwrap()
            .counts
            .unwrap();
        assert_eq!((c.type1, c.type2), (big(768), big(256)));
        assert_eq!(
            count_proof_decomposition(Dihedral, 5, OrderSource::Enumerated),
            Err(Error::EnumerationCap { n: 5, max: 4 })
        );
    }

    #[test]
    fn formula_separates_families() {
        assert_eq!(families_distinct(2), Ok(true));
        assert_eq!(families_distinct(3), Ok(true));
        assert_eq!(families_distinct(4), Ok(true));
    }
}
