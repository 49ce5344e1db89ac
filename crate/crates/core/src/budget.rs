//! Cooperative cancellation for long enumerations.
//!
//! The counters poll their budget every [`POLL_INTERVAL`] inner iterations. The core
//! crate has no clock, so deadlines are implemented by callers.

/// Inner iterations between two polls of a [`Budget`].
pub const POLL_INTERVAL: u64 = 1 << 12;

pub trait Budget {
    /// Returns `true` once the computation should stop.
    fn exhausted(&mut self) -> bool;
}

/// A budget that never runs out.
#[derive(Debug, Default, Clone, Copy)]
pub struct Unlimited;

impl Budget for Unlimited {
    #[inline]
    fn exhausted(&mut self) -> bool {
        false
    }
}

impl<F: FnMut() -> bool> Budget for F {
    fn exhausted(&mut self) -> bool {
        self()
    }
}
