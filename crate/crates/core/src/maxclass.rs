//! `F2[G]` for the 2-groups of maximal class of order `2^(n+1)`:
//!
//! ```text
//! Q  = <a, b | a^(2^n) = 1, b^2 = a^(2^(n-1)), b^-1 a b = a^-1>            n >= 2
//! D  = <a, b | a^(2^n) = 1, b^2 = 1,           b^-1 a b = a^-1>            n >= 2
//! SD = <a, b | a^(2^n) = 1, b^2 = 1,           b^-1 a b = a^(2^(n-1) - 1)> n >= 3
//! ```
//!
//! Every element is `x1 + x2·b` with `x1, x2 ∈ F2[<a>]`. Conjugation by `b` acts on
//! `F2[<a>]` as the involution `σ` (`*` for D and Q, `⊛` for SD), so `b·y = y^σ·b` and
//!
//! ```text
//! (x1 + x2 b)(y1 + y2 b) = (x1 y1 + x2 y2^σ b^2) + (x1 y2 + x2 y1^σ) b.
//! ```

use core::fmt;
use core::str::FromStr;

use crate::cyclic::{AlgElem, CyclicContext};
use crate::involution::Involution;
use crate::notation::ParseError;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Dihedral,
    Semidihedral,
    Quaternion,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Dihedral, Family::Semidihedral, Family::Quaternion];

    /// Short label used on the command line: `D`, `SD` or `Q`.
    pub fn label(self) -> &'static str {
        match self {
            Family::Dihedral => "D",
            Family::Semidihedral => "SD",
            Family::Quaternion => "Q",
        }
    }

    pub fn min_n(self) -> u32 {
        match self {
            Family::Semidihedral => 3,
            _ => 2,
        }
    }

    /// The involution induced by conjugation with `b`.
    pub fn twist(self) -> Involution {
        match self {
            Family::Semidihedral => Involution::Circledast,
            _ => Involution::Star,
        }
    }

    pub fn supported(self, n: u32) -> bool {
        n >= self.min_n() && n <= crate::cyclic::MAX_N
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = ParseError;

    fn from_str(s: &str) -> core::result::Result<Self, ParseError> {
        match s {
            "D" | "d" | "dihedral" => Ok(Family::Dihedral),
            "SD" | "sd" | "semidihedral" => Ok(Family::Semidihedral),
            "Q" | "q" | "quaternion" => Ok(Family::Quaternion),
            _ => Err(ParseError::UnknownName),
        }
    }
}

/// The element `x1 + x2·b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MCElem {
    pub x1: AlgElem,
    pub x2: AlgElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitType {
    /// `χ(x1) = 1, χ(x2) = 0`.
    Type1,
    /// `χ(x1) = 0, χ(x2) = 1`.
    Type2,
    NotUnit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCContext {
    family: Family,
    cyclic: CyclicContext,
    twist: Involution,
    b_square: AlgElem,
}

impl MCContext {
    pub fn new(family: Family, n: u32) -> Result<Self> {
        let cyclic = CyclicContext::new(n)?;
        if n < family.min_n() {
            return Err(Error::UnsupportedFamily { n });
        }
        let b_square = match family {
            Family::Quaternion => cyclic.monomial(cyclic.half() as u64),
            _ => cyclic.one(),
        };
        Ok(Self {
            family,
            twist: family.twist(),
            b_square,
            cyclic,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.cyclic.n()
    }

    pub fn cyclic(&self) -> &CyclicContext {
        &self.cyclic
    }

    pub fn twist(&self) -> Involution {
        self.twist
    }

    pub fn b_square(&self) -> AlgElem {
        self.b_square
    }

    /// `|G| = 2^(n+1)`.
    pub fn group_order(&self) -> usize {
        2 * self.cyclic.dim()
    }

    pub fn one(&self) -> MCElem {
        MCElem {
            x1: self.cyclic.one(),
            x2: self.cyclic.zero(),
        }
    }

    pub fn b(&self) -> MCElem {
        MCElem {
            x1: self.cyclic.zero(),
            x2: self.cyclic.one(),
        }
    }

    pub fn elem(&self, x1: AlgElem, x2: AlgElem) -> Result<MCElem> {
        self.cyclic.check(x1)?;
        self.cyclic.check(x2)?;
        Ok(MCElem { x1, x2 })
    }

    /// The image of `y ∈ F2[<a>]` in `F2[G]`.
    pub fn embed(&self, y: AlgElem) -> MCElem {
        MCElem {
            x1: y,
            x2: self.cyclic.zero(),
        }
    }

    fn check(&self, u: MCElem) -> Result<()> {
        self.cyclic.check(u.x1)?;
        self.cyclic.check(u.x2)
    }

    #[inline]
    pub(crate) fn mul_raw(&self, x1: u64, x2: u64, y1: u64, y2: u64) -> (u64, u64) {
        let c = &self.cyclic;
        let sigma = c.table(self.twist).expect("twist exists for this family");
        let y1s = sigma.apply(y1);
        let y2s = sigma.apply(y2);
        let b2 = c.mul_raw(c.mul_raw(x2, y2s), self.b_square.bits());
        (
            c.mul_raw(x1, y1) ^ b2,
            c.mul_raw(x1, y2) ^ c.mul_raw(x2, y1s),
        )
    }

    pub fn mc_mul(&self, u: MCElem, v: MCElem) -> Result<MCElem> {
        self.check(u)?;
        self.check(v)?;
        let (z1, z2) = self.mul_raw(u.x1.bits(), u.x2.bits(), v.x1.bits(), v.x2.bits());
        Ok(MCElem {
            x1: self.cyclic.wrap(z1),
            x2: self.cyclic.wrap(z2),
        })
    }

    pub fn mc_square(&self, u: MCElem) -> Result<MCElem> {
        self.mc_mul(u, u)
    }

    /// `χ(x1) + χ(x2) = 1`.
    pub fn is_normalized_unit(&self, u: MCElem) -> bool {
        u.x1.augmentation() ^ u.x2.augmentation()
    }

    pub fn unit_type(&self, u: MCElem) -> UnitType {
        match (u.x1.augmentation(), u.x2.augmentation()) {
            (true, false) => UnitType::Type1,
            (false, true) => UnitType::Type2,
            _ => UnitType::NotUnit,
        }
    }

    /// The least `2^k` with `u^(2^k) = 1`.
    pub fn element_order(&self, u: MCElem) -> Result<u64> {
        self.check(u)?;
        if !self.is_normalized_unit(u) {
            return Err(Error::NotAUnit);
        }
        let one = self.one();
        let (mut p, mut order) = (u, 1u64);
        while p != one {
            p = self.mc_square(p)?;
            order *= 2;
            // |V| = 2^(|G| - 1) bounds the order of every element.
            assert!(
                order.trailing_zeros() < self.group_order() as u32,
                "unit of non-2-power order"
            );
        }
        Ok(order)
    }

    /// The pair of conditions on `(x1, x2)` that is equivalent to `u^2 = 1`:
    ///
    /// ```text
    /// D:  x1^2 = x2 x2^*           + 1,   (x1 + x1^*) x2 = 0
    /// Q:  x1^2 = x2 x2^* a^(2^(n-1)) + 1, (x1 + x1^*) x2 = 0
    /// SD: x1^2 = x2 x2^⊛           + 1,   (x1 + x1^⊛) x2 = 0
    /// ```
    pub fn order2_conditions(&self, u: MCElem) -> Result<bool> {
        self.check(u)?;
        if !self.is_normalized_unit(u) {
            return Err(Error::NotAUnit);
        }
        let c = &self.cyclic;
        let (x1, x2) = (u.x1, u.x2);
        let norm = match self.family {
            Family::Dihedral => c.mul(x2, Involution::Star.apply(c, x2)?),
            Family::Quaternion => {
                let n2 = c.mul(x2, Involution::Star.apply(c, x2)?);
                c.mul(n2, c.monomial(c.half() as u64))
            }
            Family::Semidihedral => c.mul(x2, Involution::Circledast.apply(c, x2)?),
        };
        let first = c.square(x1) == norm + c.one();
        let x1s = self.twist.apply(c, x1)?;
        let second = c.mul(x1 + x1s, x2).is_zero();
        Ok(first && second)
    }
}
