//! Subgroups of the normalized unit group `V = V(F2 C)`.
//!
//! Every kind in [`SubgroupSpec`] can be enumerated exhaustively for `n <= 4`
//! (`|V| <= 2^15`). Kinds cut out by affine-linear conditions also have their order
//! computed through GF(2) elimination at any supported `n`, and kinds with a known
//! closed form report it through [`order_formula`].

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::cyclic::{AlgElem, CyclicContext, MAX_N, MIN_N};
use crate::f2linalg::{BitVec, F2Matrix};
use crate::involution::{phi_sigma, Involution};
use crate::{Error, Result};

/// Largest `n` for which [`enumerate`] runs.
pub const MAX_ENUM_N: u32 = 4;

/// Odd exponents of `a`: `F2[C^2]` is the span of the even powers.
const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupSpec {
    /// `V` itself.
    FullV,
    /// `V[2] = {x : x^2 = 1}`.
    LowerLayer,
    /// `S_i = {γ : γ(1+a)^i = (1+a)^i}`.
    S(usize),
    /// `S_σ(C) = {x : x^σ = x}`.
    Symmetric(Involution),
    /// `V_σ = {x : x^σ = x^{-1}}`.
    Unitary(Involution),
    /// `W_σ(C)`, the image of `x ↦ x^σ x^{-1}`.
    W(Involution),
    /// `J^σ = {z z^σ : z z^σ ∈ F2[C^2]}`.
    J(Involution),
    /// `H_i^σ = {h : h h^σ (1+a)^i (1+a^σ)^i ∈ F2[C^2]}`.
    H(Involution, usize),
    /// `L_i^σ = {h ∈ V[2] : (h + h^σ)(1+a)^i = 0}`.
    L(Involution, usize),
    /// `M_z^σ = {y : (y + y^σ) z = 0}`.
    M(Involution, AlgElem),
    Squares(Box<SubgroupSpec>),
    Frattini(Box<SubgroupSpec>),
}

impl SubgroupSpec {
    /// Checks the parameters against `C_{2^n}`.
    pub fn validate(&self, n: u32) -> Result<()> {
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(Error::InvalidExponent {
                n,
                min: MIN_N,
                max: MAX_N,
            });
        }
        let dim = 1usize << n;
        let sigma_ok = |s: Involution| {
            if s.supported(n) {
                Ok(())
            } else {
                Err(Error::UnsupportedInvolution { n })
            }
        };
        let index_ok = |i: usize| {
            if i < dim {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange {
                    index: i,
                    bound: dim,
                })
            }
        };
        match self {
            SubgroupSpec::FullV | SubgroupSpec::LowerLayer => Ok(()),
            SubgroupSpec::S(i) => index_ok(*i),
            SubgroupSpec::Symmetric(s)
            | SubgroupSpec::Unitary(s)
            | SubgroupSpec::W(s)
            | SubgroupSpec::J(s) => sigma_ok(*s),
            SubgroupSpec::H(s, i) | SubgroupSpec::L(s, i) => sigma_ok(*s).and(index_ok(*i)),
            SubgroupSpec::M(s, z) => {
                sigma_ok(*s)?;
                if z.n() == n {
                    Ok(())
                } else {
                    Err(Error::ContextMismatch {
                        left: n,
                        right: z.n(),
                    })
                }
            }
            SubgroupSpec::Squares(of) | SubgroupSpec::Frattini(of) => of.validate(n),
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::FullV => f.write_str("v"),
            SubgroupSpec::LowerLayer => f.write_str("v2"),
            SubgroupSpec::S(i) => write!(f, "si({i})"),
            SubgroupSpec::Symmetric(s) => write!(f, "ssym({s})"),
            SubgroupSpec::Unitary(s) => write!(f, "vuni({s})"),
            SubgroupSpec::W(s) => write!(f, "w({s})"),
            SubgroupSpec::J(s) => write!(f, "j({s})"),
            SubgroupSpec::H(s, i) => write!(f, "h({s},{i})"),
            SubgroupSpec::L(s, i) => write!(f, "l({s},{i})"),
            SubgroupSpec::M(s, z) => write!(f, "m({s},{z})"),
            SubgroupSpec::Squares(of) => write!(f, "squares({of})"),
            SubgroupSpec::Frattini(of) => write!(f, "frattini({of})"),
        }
    }
}

/// An explicitly listed subset of `V(F2 C)`, sorted by coefficient bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSubgroup {
    n: u32,
    spec: SubgroupSpec,
    elements: Vec<AlgElem>,
}

impl EnumeratedSubgroup {
    fn new(n: u32, spec: SubgroupSpec, mut elements: Vec<AlgElem>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { n, spec, elements }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn spec(&self) -> &SubgroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[AlgElem] {
        &self.elements
    }

    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: AlgElem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &EnumeratedSubgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Same element set, regardless of how either side was specified.
    pub fn same_elements(&self, other: &EnumeratedSubgroup) -> bool {
        self.elements == other.elements
    }

    /// Contains 1 and is closed under multiplication (hence a subgroup, being finite).
    pub fn is_subgroup(&self, ctx: &CyclicContext) -> bool {
        self.contains(ctx.one()) && NormalForm::build(ctx, &self.elements).is_some()
    }

    /// `N[2] = {h ∈ N : h^2 = 1}`.
    pub fn lower_layer(&self, ctx: &CyclicContext) -> EnumeratedSubgroup {
        let one = ctx.one();
        let spec = SubgroupSpec::LowerLayer;
        let els = self
            .elements
            .iter()
            .copied()
            .filter(|&h| ctx.square(h) == one)
            .collect();
        EnumeratedSubgroup::new(self.n, spec, els)
    }

    /// `N^2 = {h^2 : h ∈ N}`.
    pub fn squares(&self, ctx: &CyclicContext) -> EnumeratedSubgroup {
        let els = self.elements.iter().map(|&h| ctx.square(h)).collect();
        EnumeratedSubgroup::new(
            self.n,
            SubgroupSpec::Squares(Box::new(self.spec.clone())),
            els,
        )
    }

    /// `Φ(N)`, the intersection of the maximal subgroups, computed as the common kernel
    /// of all homomorphisms `N → Z/2`. Returns `None` when the set is not a subgroup.
    pub fn frattini(&self, ctx: &CyclicContext) -> Option<EnumeratedSubgroup> {
        if !self.contains(ctx.one()) {
            return None;
        }
        let nf = NormalForm::build(ctx, &self.elements)?;
        let spec = SubgroupSpec::Frattini(Box::new(self.spec.clone()));
        Some(EnumeratedSubgroup::new(self.n, spec, nf.frattini()))
    }

    /// `{h ∈ N : h^2 = g}`, which is empty or a coset of `N[2]`.
    pub fn square_roots_in(&self, ctx: &CyclicContext, g: AlgElem) -> Result<Vec<AlgElem>> {
        ctx.check(g)?;
        if !self.contains(g) {
            return Err(Error::NotInSubgroup);
        }
        Ok(self
            .elements
            .iter()
            .copied()
            .filter(|&h| ctx.square(h) == g)
            .collect())
    }

    /// `{xy : x ∈ self, y ∈ other}`, sorted.
    pub fn product_set(&self, ctx: &CyclicContext, other: &EnumeratedSubgroup) -> Vec<AlgElem> {
        let mut out: Vec<AlgElem> = self
            .elements
            .iter()
            .flat_map(|&x| other.elements.iter().map(move |&y| ctx.mul(x, y)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Builds the subgroup generated by a set one generator at a time, recording for every
/// element the parity of each generator's exponent in its normal form
/// `g_1^{k_1} ··· g_m^{k_m}`, `0 <= k_i < r_i`.
struct NormalForm {
    n: u32,
    /// Indexed by coefficient bits; `u32::MAX` marks non-members.
    parity: Vec<u32>,
    members: Vec<u64>,
    /// For each generator: `r_i mod 2` and the parity mask of `g_i^{r_i}`.
    relations: Vec<(bool, u32)>,
}

impl NormalForm {
    /// `None` if the generated subgroup leaves the given set.
    fn build(ctx: &CyclicContext, set: &[AlgElem]) -> Option<Self> {
        assert!(ctx.dim() <= 16, "normal forms are only built for n <= 4");
        const ABSENT: u32 = u32::MAX;
        let size = 1usize << ctx.dim();
        let mut in_set = vec![false; size];
        for x in set {
            in_set[x.bits() as usize] = true;
        }
        let mut parity = vec![ABSENT; size];
        parity[1] = 0;
        let mut members = vec![1u64];
        let mut relations = Vec::new();
        for x in set {
            let g = x.bits();
            if parity[g as usize] != ABSENT {
                continue;
            }
            let bit = 1u32 << relations.len();
            let base = members.clone();
            let mut coset: Vec<u64> = base.clone();
            let mut k = 0u32;
            loop {
                coset.iter_mut().for_each(|h| *h = ctx.mul_raw(*h, g));
                k += 1;
                let rep = coset[0];
                if parity[rep as usize] != ABSENT {
                    // coset[0] = g^k, which lies in the previous subgroup.
                    relations.push((k % 2 == 1, parity[rep as usize]));
                    break;
                }
                for (h, &b) in coset.iter().zip(&base) {
                    if !in_set[*h as usize] {
                        return None;
                    }
                    parity[*h as usize] = parity[b as usize] ^ if k % 2 == 1 { bit } else { 0 };
                    members.push(*h);
                }
            }
        }
        Some(Self {
            n: ctx.n(),
            parity,
            members,
            relations,
        })
    }

    fn frattini(&self) -> Vec<AlgElem> {
        // A homomorphism f: N -> Z/2 is a choice c_i = f(g_i) with
        // r_i c_i = f(g_i^{r_i}) for every generator.
        let m = self.relations.len();
        let mut sys = F2Matrix::zeros(m, m);
        for (i, &(odd, mask)) in self.relations.iter().enumerate() {
            let mut row = mask;
            if odd {
                row ^= 1 << i;
            }
            for j in 0..m {
                if (row >> j) & 1 == 1 {
                    sys.set(i, j, true);
                }
            }
        }
        let homs: Vec<BitVec> = if m == 0 {
            Vec::new()
        } else {
            sys.kernel_basis()
        };
        self.members
            .iter()
            .filter(|&&h| {
                let p = self.parity[h as usize];
                homs.iter()
                    .all(|c| (c.low_word() as u32 & p).count_ones().is_multiple_of(2))
            })
            .map(|&h| AlgElem::from_raw(h, self.n))
            .collect()
    }
}

/// Enumerates the elements of `spec` inside `V(F2 C)`. `n` must be at most
/// [`MAX_ENUM_N`].
pub fn enumerate(ctx: &CyclicContext, spec: &SubgroupSpec) -> Result<EnumeratedSubgroup> {
    let n = ctx.n();
    spec.validate(n)?;
    if n > MAX_ENUM_N {
        return Err(Error::EnumerationCap { n, max: MAX_ENUM_N });
    }
    let one = ctx.one().bits();
    let units = || ctx.units();
    let sigma_of = |s: Involution| ctx.table(s);
    let elements: Vec<AlgElem> = match spec {
        SubgroupSpec::FullV => units().collect(),
        SubgroupSpec::LowerLayer => units()
            .filter(|u| ctx.square_raw(u.bits()) == one)
            .collect(),
        SubgroupSpec::S(i) => {
            let t = ctx.one_plus_a_pow(*i).bits();
            units().filter(|u| ctx.mul_raw(u.bits(), t) == t).collect()
        }
        SubgroupSpec::Symmetric(s) => {
            let tab = sigma_of(*s)?;
            units()
                .filter(|u| tab.apply(u.bits()) == u.bits())
                .collect()
        }
        SubgroupSpec::Unitary(s) => {
            let tab = sigma_of(*s)?;
            units()
                .filter(|u| ctx.mul_raw(u.bits(), tab.apply(u.bits())) == one)
                .collect()
        }
        SubgroupSpec::W(s) => units()
            .map(|u| phi_sigma(ctx, *s, u))
            .collect::<Result<Vec<_>>>()?,
        SubgroupSpec::J(s) => {
            let tab = sigma_of(*s)?;
            units()
                .map(|u| ctx.mul_raw(u.bits(), tab.apply(u.bits())))
                .filter(|&p| p & ODD_BITS == 0)
                .map(|p| ctx.wrap(p))
                .collect()
        }
        SubgroupSpec::H(s, i) => {
            let tab = sigma_of(*s)?;
            let t = ctx.one_plus_a_pow(1).bits();
            let ts = tab.apply(t);
            let factor = ctx.pow(ctx.wrap(ctx.mul_raw(t, ts)), *i as u64).bits();
            units()
                .filter(|u| {
                    let norm = ctx.mul_raw(u.bits(), tab.apply(u.bits()));
                    ctx.mul_raw(norm, factor) & ODD_BITS == 0
                })
                .collect()
        }
        SubgroupSpec::L(s, i) => {
            let tab = sigma_of(*s)?;
            let t = ctx.one_plus_a_pow(*i).bits();
            units()
                .filter(|u| ctx.square_raw(u.bits()) == one)
                .filter(|u| ctx.mul_raw(u.bits() ^ tab.apply(u.bits()), t) == 0)
                .collect()
        }
        SubgroupSpec::M(s, z) => {
            let tab = sigma_of(*s)?;
            units()
                .filter(|u| ctx.mul_raw(u.bits() ^ tab.apply(u.bits()), z.bits()) == 0)
                .collect()
        }
        SubgroupSpec::Squares(of) => return Ok(enumerate(ctx, of)?.squares(ctx)),
        SubgroupSpec::Frattini(of) => {
            let base = enumerate(ctx, of)?;
            return match base.frattini(ctx) {
                Some(f) => Ok(f),
                None => Ok(EnumeratedSubgroup::new(n, spec.clone(), Vec::new())),
            };
        }
    };
    Ok(EnumeratedSubgroup::new(n, spec.clone(), elements))
}

/// The order of `spec` computed as the number of solutions of its defining affine
/// system over GF(2), or `None` for kinds that are not cut out linearly.
pub fn affine_order(ctx: &CyclicContext, spec: &SubgroupSpec) -> Result<Option<u128>> {
    spec.validate(ctx.n())?;
    let dim = ctx.dim();
    let mut system = Vec::new();
    let ones = F2Matrix::from_column_words(1, &vec![1; dim]);
    system.push((ones, BitVec::from_word(1, 1)));
    let square = || ctx.matrix_of(|x| ctx.square_raw(x));
    let one_vec = BitVec::from_word(1, dim);
    let zero_vec = BitVec::zeros(dim);
    match spec {
        SubgroupSpec::FullV => {}
        SubgroupSpec::LowerLayer => system.push((square(), one_vec)),
        SubgroupSpec::S(i) => {
            let t = ctx.one_plus_a_pow(*i);
            system.push((
                ctx.multiplication_matrix(t),
                BitVec::from_word(t.bits(), dim),
            ));
        }
        SubgroupSpec::Symmetric(s) => {
            let tab = ctx.table(*s)?;
            system.push((ctx.matrix_of(|x| x ^ tab.apply(x)), zero_vec));
        }
        SubgroupSpec::L(s, i) => {
            let tab = ctx.table(*s)?;
            let t = ctx.one_plus_a_pow(*i).bits();
            system.push((square(), one_vec));
            system.push((
                ctx.matrix_of(|x| ctx.mul_raw(x ^ tab.apply(x), t)),
                zero_vec,
            ));
        }
        SubgroupSpec::M(s, z) => {
            let tab = ctx.table(*s)?;
            system.push((
                ctx.matrix_of(|x| ctx.mul_raw(x ^ tab.apply(x), z.bits())),
                zero_vec,
            ));
        }
        _ => return Ok(None),
    }
    let (mut m, mut rhs_bits) = (system[0].0.clone(), vec![true]);
    for (block, rhs) in &system[1..] {
        m = m.stack(block)?;
        rhs_bits.extend((0..rhs.len()).map(|r| rhs.get(r)));
    }
    Ok(Some(
        m.solve_affine(&BitVec::from_bools(&rhs_bits))?.count(),
    ))
}

/// The closed-form order of `spec` in `V(F2 C_{2^n})`, `0` for the empty odd-index `H`.
pub fn order_formula(spec: &SubgroupSpec, n: u32) -> Result<BigUint> {
    spec.validate(n)?;
    let dim = 1u32 << n;
    let half = dim / 2;
    let quarter = dim / 4;
    let pow2 = |e: u32| BigUint::from(1u8) << e;
    let e = match spec {
        SubgroupSpec::FullV => dim - 1,
        SubgroupSpec::LowerLayer => half,
        SubgroupSpec::S(i) => *i as u32,
        SubgroupSpec::Symmetric(_) => half,
        SubgroupSpec::Unitary(Involution::Star) => half + 1,
        SubgroupSpec::Unitary(Involution::Circledast) => half,
        SubgroupSpec::W(_) => half - 1,
        SubgroupSpec::J(Involution::Star) => quarter - 1,
        SubgroupSpec::J(Involution::Circledast) => quarter,
        SubgroupSpec::H(_, i) => {
            let i = *i as u32;
            if i >= half {
                dim - 1
            } else if i % 2 == 1 {
                return Ok(BigUint::from(0u8));
            } else {
                3 * quarter + i / 2
            }
        }
        SubgroupSpec::L(_, i) => {
            let i = *i as u32;
            if i >= half {
                half
            } else {
                quarter + 1 + i / 2
            }
        }
        SubgroupSpec::Squares(of) if matches!(**of, SubgroupSpec::Symmetric(_)) => quarter - 1,
        _ => return Err(Error::NoClosedForm),
    };
    Ok(pow2(e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainFamily {
    H,
    L,
}

/// Orders along the `H_i^σ` or `L_i^σ` family and the inclusion facts between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub family: ChainFamily,
    pub sigma: Involution,
    pub n: u32,
    /// `(i, |X_i|)` for every `0 <= i < 2^(n-1)`.
    pub orders: Vec<(usize, u128)>,
    /// `X_{2l} ⊂ X_{2l+2}` is a proper inclusion of index 2 for every step.
    pub index_two_steps: bool,
    /// `X_{2^(n-1)-2}` is `V` (for H) or `V[2]` (for L), and so is `X_i` for
    /// `i >= 2^(n-1)`.
    pub terminal_equal: bool,
    /// Odd-index members: empty for H, equal to the preceding even member for L.
    pub odd_ok: bool,
    /// Every non-empty member is a subgroup.
    pub all_subgroups: bool,
}

impl ChainReport {
    pub fn pass(&self) -> bool {
        self.index_two_steps && self.terminal_equal && self.odd_ok && self.all_subgroups
    }

    /// Orders at even indices.
    pub fn even_orders(&self) -> Vec<u128> {
        self.orders
            .iter()
            .filter(|(i, _)| i % 2 == 0)
            .map(|&(_, o)| o)
            .collect()
    }
}

pub fn verify_chain(
    ctx: &CyclicContext,
    sigma: Involution,
    family: ChainFamily,
) -> Result<ChainReport> {
    let n = ctx.n();
    let half = ctx.half();
    let make = |i: usize| match family {
        ChainFamily::H => SubgroupSpec::H(sigma, i),
        ChainFamily::L => SubgroupSpec::L(sigma, i),
    };
    let members: Vec<EnumeratedSubgroup> = (0..half)
        .map(|i| enumerate(ctx, &make(i)))
        .collect::<Result<_>>()?;
    let terminal = match family {
        ChainFamily::H => enumerate(ctx, &SubgroupSpec::FullV)?,
        ChainFamily::L => enumerate(ctx, &SubgroupSpec::LowerLayer)?,
    };
    let index_two_steps = (0..half.saturating_sub(2)).step_by(2).all(|i| {
        let (lo, hi) = (&members[i], &members[i + 2]);
        lo.is_subset_of(hi) && hi.order() == 2 * lo.order()
    });
    let terminal_equal = members[half - 2].same_elements(&terminal)
        && [half, ctx.dim() - 1]
            .iter()
            .all(|&i| enumerate(ctx, &make(i)).is_ok_and(|m| m.same_elements(&terminal)));
    let odd_ok = (1..half).step_by(2).all(|i| match family {
        ChainFamily::H => members[i].is_empty(),
        ChainFamily::L => members[i].same_elements(&members[i - 1]),
    });
    let all_subgroups = members
        .iter()
        .filter(|m| !m.is_empty())
        .all(|m| m.is_subgroup(ctx));
    Ok(ChainReport {
        family,
        sigma,
        n,
        orders: members
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.order()))
            .collect(),
        index_two_steps,
        terminal_equal,
        odd_ok,
        all_subgroups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use Involution::*;

    fn c(n: u32) -> CyclicContext {
        CyclicContext::new(n).unwrap()
    }

    fn order(ctx: &CyclicContext, spec: SubgroupSpec) -> u128 {
        enumerate(ctx, &spec).unwrap().order()
    }

    #[test]
    fn c8_examples() {
        let ctx = c(3);
        assert_eq!(order(&ctx, SubgroupSpec::S(3)), 8);
        assert_eq!(order(&ctx, SubgroupSpec::Unitary(Star)), 32);
        assert_eq!(order(&ctx, SubgroupSpec::Unitary(Circledast)), 16);
        assert_eq!(order(&ctx, SubgroupSpec::H(Star, 0)), 64);
        assert!(enumerate(&ctx, &SubgroupSpec::H(Star, 1))
            .unwrap()
            .is_empty());
        assert_eq!(order(&ctx, SubgroupSpec::L(Star, 0)), 8);
    }

    #[test]
    fn j_circledast_structure() {
        let ctx = c(3);
        let j = enumerate(&ctx, &SubgroupSpec::J(Circledast)).unwrap();
        assert_eq!(j.order(), 4);
        let sq = enumerate(
            &ctx,
            &SubgroupSpec::Squares(Box::new(SubgroupSpec::Symmetric(Circledast))),
        )
        .unwrap();
        assert_eq!(sq.order(), 2);
        let central =
            EnumeratedSubgroup::new(3, SubgroupSpec::FullV, vec![ctx.one(), ctx.monomial(4)]);
        assert_eq!(central.product_set(&ctx, &sq), j.elements());
    }

    #[test]
    fn formula_examples() {
        let n = 3;
        assert_eq!(
            order_formula(&SubgroupSpec::H(Star, 2), n).unwrap(),
            BigUint::from(128u32)
        );
        assert_eq!(
            order_formula(&SubgroupSpec::L(Star, 2), n).unwrap(),
            BigUint::from(16u32)
        );
        assert_eq!(
            order_formula(&SubgroupSpec::S(5), n).unwrap(),
            BigUint::from(32u32)
        );
        assert_eq!(
            order_formula(&SubgroupSpec::M(Star, c(3).one()), n),
            Err(Error::NoClosedForm)
        );
        assert_eq!(
            order_formula(&SubgroupSpec::FullV, 6).unwrap(),
            BigUint::from(1u64 << 63)
        );
    }

    #[test]
    fn guards() {
        assert_eq!(
            enumerate(&c(2), &SubgroupSpec::Unitary(Circledast)),
            Err(Error::UnsupportedInvolution { n: 2 })
        );
        assert_eq!(
            enumerate(&c(5), &SubgroupSpec::FullV),
            Err(Error::EnumerationCap { n: 5, max: 4 })
        );
        assert!(enumerate(&c(3), &SubgroupSpec::S(8)).is_err());
    }

    #[test]
    fn square_roots_in_v_c4() {
        let ctx = c(2);
        let v = enumerate(&ctx, &SubgroupSpec::FullV).unwrap();
        let roots = v.square_roots_in(&ctx, ctx.one()).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots, v.lower_layer(&ctx).elements());
        let a2 = ctx.monomial(2);
        let roots = v.square_roots_in(&ctx, a2).unwrap();
        assert_eq!(roots.len(), 4);
        assert!(roots
            .iter()
            .all(|r| r.coeff(0) == r.coeff(2) && r.coeff(1) != r.coeff(3)));
        assert!(v.square_roots_in(&ctx, ctx.monomial(1)).unwrap().is_empty());
        assert_eq!(
            v.square_roots_in(&ctx, ctx.zero()),
            Err(Error::NotInSubgroup)
        );
    }

    #[test]
    fn chains_at_n3() {
        let ctx = c(3);
        let h = verify_chain(&ctx, Star, ChainFamily::H).unwrap();
        assert!(h.pass(), "{h:?}");
        assert_eq!(h.even_orders(), [64, 128]);
        let l = verify_chain(&ctx, Star, ChainFamily::L).unwrap();
        assert!(l.pass(), "{l:?}");
        assert_eq!(l.even_orders(), [8, 16]);
    }

    #[test]
    fn frattini_of_cyclic_and_elementary() {
        let ctx = c(3);
        // V[2] is elementary abelian: trivial Frattini subgroup.
        let v2 = enumerate(&ctx, &SubgroupSpec::LowerLayer).unwrap();
        assert_eq!(v2.frattini(&ctx).unwrap().elements(), [ctx.one()]);
        // <a> is cyclic of order 8: Frattini = <a^2>.
        let cyc = EnumeratedSubgroup::new(
            3,
            SubgroupSpec::FullV,
            (0..8).map(|k| ctx.monomial(k)).collect(),
        );
        let phi = cyc.frattini(&ctx).unwrap();
        assert_eq!(phi.order(), 4);
        assert!(phi.contains(ctx.monomial(2)) && !phi.contains(ctx.monomial(1)));
        // not a subgroup
        let bad = EnumeratedSubgroup::new(3, SubgroupSpec::FullV, vec![ctx.one(), ctx.monomial(1)]);
        assert!(bad.frattini(&ctx).is_none());
        assert!(!bad.is_subgroup(&ctx));
    }

    #[test]
    fn spec_labels() {
        let ctx = c(2);
        let z = ctx.one_plus_a_pow(1);
        assert_eq!(SubgroupSpec::M(Star, z).to_string(), "m(star,1+a)");
        assert_eq!(
            SubgroupSpec::H(Circledast, 2).to_string(),
            "h(circledast,2)"
        );
        assert_eq!(
            SubgroupSpec::Squares(Box::new(SubgroupSpec::FullV)).to_string(),
            "squares(v)"
        );
    }
}
