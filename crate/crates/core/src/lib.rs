//! Arithmetic in the modular group algebras `F2[C]` (cyclic `C` of order `2^n`) and
//! `F2[G]` for the 2-groups of maximal class `G` (dihedral, semidihedral and generalized
//! quaternion), with exhaustive and structural counters for the solutions of `x^2 = 1`
//! in the normalized unit group `V(F2 G)`.
//!
//! The crate is `no_std` and only needs `alloc`. Timing, threads and file output live in
//! the companion `maxclass` crate.
//!
//! ## Modules
//!
//! - [`f2linalg`]: dense bit-packed GF(2) matrices, rank and affine solving.
//! - [`cyclic`]: `F2[C_{2^n}]` elements, products, filtration basis, annihilators.
//! - [`involution`]: the two involutions `*` and `⊛` of `F2[C]` and their norm formulas.
//! - [`census`]: enumeration of the subgroups of `V(F2 C)` used by the involution count.
//! - [`maxclass`]: `F2[G]` for `G` of maximal class, elements written `x1 + x2*b`.
//! - [`theta`]: the number of solutions of `x^2 = 1` in `V(F2 G)`, computed four ways.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod budget;
pub mod census;
pub mod cyclic;
mod error;
pub mod f2linalg;
pub mod involution;
pub mod maxclass;
pub mod notation;
pub mod theta;

pub use budget::{Budget, Unlimited};
pub use census::{EnumeratedSubgroup, SubgroupSpec};
pub use cyclic::{AlgElem, CyclicContext, FiltrationCoords};
pub use error::Error;
pub use f2linalg::{BitVec, F2Matrix, SolutionSet};
pub use involution::Involution;
pub use maxclass::{Family, MCContext, MCElem, UnitType};
pub use theta::{CensusReport, Method, OrderSource, TypeCounts};

pub type Result<T, E = Error> = core::result::Result<T, E>;
