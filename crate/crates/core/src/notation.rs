//! Text forms of group algebra elements.
//!
//! - monomial form: `1+a+a^3`, `0` for zero, terms in increasing exponent order;
//! - hex form: `0x0B@n=2`, uppercase, padded to whole bytes of the coefficient vector;
//! - elements of `F2[G]` print as `x1 + (x2)b`.
//!
//! Parsing accepts surrounding whitespace, repeated monomials (which cancel) and the
//! spellings `a^0` and `a^1`. Output is always canonical.

use alloc::string::String;
use core::fmt::{self, Write};

use crate::cyclic::{AlgElem, CyclicContext};
use crate::maxclass::{MCContext, MCElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    UnexpectedChar {
        pos: usize,
        ch: char,
    },
    ExponentOutOfRange {
        exponent: u64,
        dim: usize,
    },
    BadHex,
    /// The `@n=` suffix is missing or names an unsupported `n`.
    BadWidth,
    UnknownName,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => f.write_str("empty element"),
            ParseError::UnexpectedChar { pos, ch } => write!(f, "unexpected {ch:?} at byte {pos}"),
            ParseError::ExponentOutOfRange { exponent, dim } => {
                write!(f, "exponent {exponent} is not below the group order {dim}")
            }
            ParseError::BadHex => f.write_str("malformed hex element"),
            ParseError::BadWidth => f.write_str("missing or invalid @n= suffix"),
            ParseError::UnknownName => f.write_str("unknown name"),
        }
    }
}

impl core::error::Error for ParseError {}

/// Monomial form.
impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut bits = self.bits();
        let mut first = true;
        while bits != 0 {
            let k = bits.trailing_zeros();
            if !first {
                f.write_char('+')?;
            }
            match k {
                0 => f.write_char('1')?,
                1 => f.write_char('a')?,
                _ => write!(f, "a^{k}")?,
            }
            first = false;
            bits &= bits - 1;
        }
        Ok(())
    }
}

/// Hex form, see [`AlgElem::hex`].
pub struct Hex(AlgElem);

impl AlgElem {
    pub fn hex(self) -> Hex {
        Hex(self)
    }
}

impl fmt::Display for Hex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.0.dim().div_ceil(8) * 2;
        write!(
            f,
            "0x{:0width$X}@n={}",
            self.0.bits(),
            self.0.n(),
            width = digits
        )
    }
}

/// Parses either form. A hex string must carry an `@n=` suffix matching `ctx`.
pub fn parse_elem(ctx: &CyclicContext, s: &str) -> Result<AlgElem, ParseError> {
    let t = s.trim();
    if t.starts_with("0x") || t.starts_with("0X") {
        let (e, n) = parse_hex(t)?;
        if n != ctx.n() {
            return Err(ParseError::BadWidth);
        }
        return Ok(e);
    }
    parse_monomials(ctx, s)
}

/// Parses `0x..@n=N`, returning the element and `N`.
pub fn parse_hex(s: &str) -> Result<(AlgElem, u32), ParseError> {
    let t = s.trim();
    let body = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .ok_or(ParseError::BadHex)?;
    let (digits, width) = body.split_once('@').ok_or(ParseError::BadWidth)?;
    let n: u32 = width
        .strip_prefix("n=")
        .and_then(|w| w.parse().ok())
        .ok_or(ParseError::BadWidth)?;
    let ctx_dim = |n: u32| {
        (crate::cyclic::MIN_N..=crate::cyclic::MAX_N)
            .contains(&n)
            .then(|| 1usize << n)
    };
    let dim = ctx_dim(n).ok_or(ParseError::BadWidth)?;
    if digits.is_empty() {
        return Err(ParseError::BadHex);
    }
    let bits = u64::from_str_radix(digits, 16).map_err(|_| ParseError::BadHex)?;
    if dim < 64 && bits >> dim != 0 {
        let exponent = 63 - bits.leading_zeros() as u64;
        return Err(ParseError::ExponentOutOfRange { exponent, dim });
    }
    Ok((AlgElem::from_raw(bits, n), n))
}

fn parse_monomials(ctx: &CyclicContext, s: &str) -> Result<AlgElem, ParseError> {
    if s.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut bits = 0u64;
    let mut offset = 0;
    for term in s.split('+') {
        let lead = term.len() - term.trim_start().len();
        let pos = offset + lead;
        let word = term.trim();
        offset += term.len() + 1;
        let exponent = match word {
            "" => {
                return Err(ParseError::UnexpectedChar {
                    pos: pos.saturating_sub(1),
                    ch: '+',
                });
            }
            "0" => continue,
            "1" => 0,
            "a" => 1,
            _ => {
                let digits = word.strip_prefix("a^").ok_or_else(|| bad_char(word, pos))?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    let bad = digits.find(|c: char| !c.is_ascii_digit()).unwrap_or(0);
                    return Err(ParseError::UnexpectedChar {
                        pos: pos + 2 + bad,
                        ch: digits[bad..].chars().next().unwrap_or('^'),
                    });
                }
                digits
                    .parse::<u64>()
                    .map_err(|_| ParseError::ExponentOutOfRange {
                        exponent: u64::MAX,
                        dim: ctx.dim(),
                    })?
            }
        };
        if exponent >= ctx.dim() as u64 {
            return Err(ParseError::ExponentOutOfRange {
                exponent,
                dim: ctx.dim(),
            });
        }
        bits ^= 1 << exponent;
    }
    Ok(AlgElem::from_raw(bits, ctx.n()))
}

fn bad_char(word: &str, pos: usize) -> ParseError {
    let ch = word.chars().find(|&c| c != 'a').unwrap_or('a');
    let at = word.find(ch).unwrap_or(0);
    ParseError::UnexpectedChar { pos: pos + at, ch }
}

impl fmt::Display for MCElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})b", self.x1, self.x2)
    }
}

/// Parses `x1 + (x2)b`, `(x2)b` or a plain `x1`.
pub fn parse_mc_elem(ctx: &MCContext, s: &str) -> Result<MCElem, ParseError> {
    let cyc = ctx.cyclic();
    let t = s.trim();
    let Some(open) = t.find('(') else {
        return Ok(MCElem {
            x1: parse_elem(cyc, t)?,
            x2: cyc.zero(),
        });
    };
    let close = t
        .rfind(")b")
        .ok_or(ParseError::UnexpectedChar { pos: open, ch: '(' })?;
    if close + 2 != t.len() || close < open {
        return Err(ParseError::UnexpectedChar {
            pos: close,
            ch: ')',
        });
    }
    let x2 = parse_elem(cyc, &t[open + 1..close])?;
    let head = t[..open].trim_end();
    let x1 = if head.is_empty() {
        cyc.zero()
    } else {
        let head = head
            .strip_suffix('+')
            .ok_or(ParseError::UnexpectedChar { pos: open, ch: '(' })?;
        parse_elem(cyc, head)?
    };
    Ok(MCElem { x1, x2 })
}

/// Monomial form as an owned string.
pub fn to_monomial_string(x: AlgElem) -> String {
    let mut s = String::new();
    let _ = write!(s, "{x}");
    s
}
