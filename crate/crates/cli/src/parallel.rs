//! Wall-clock budgets and multi-threaded order-two counts.
//!
//! The outer `x2` loop is cut into chunks handed out through an atomic cursor. Each
//! worker keeps its own tallies and the results are summed, so counts do not depend on
//! the number of workers or on scheduling.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use maxclass_core::budget::Budget;
use maxclass_core::theta::{
    count_brute_range, count_proof_decomposition, count_structural_range, formula_report, x2_space,
    PartialCounts,
};
use maxclass_core::{CensusReport, Error, Family, MCContext, Method, OrderSource};

/// An optional point in time after which work stops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(budget: Duration) -> Self {
        Deadline(Instant::now().checked_add(budget))
    }

    /// `None` or a non-positive number of seconds means no deadline.
    pub fn from_secs(secs: Option<f64>) -> Self {
        match secs {
            Some(s) if s > 0.0 && s.is_finite() => Self::after(Duration::from_secs_f64(s)),
            _ => Self::none(),
        }
    }

    pub fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

/// A worker's view of the shared stop flag.
struct Stop<'a> {
    deadline: Deadline,
    flag: &'a AtomicBool,
}

impl Budget for Stop<'_> {
    fn exhausted(&mut self) -> bool {
        if self.flag.load(Ordering::Relaxed) {
            return true;
        }
        let expired = self.deadline.expired();
        if expired {
            self.flag.store(true, Ordering::Relaxed);
        }
        expired
    }
}

type RangeCounter =
    fn(&MCContext, Range<u64>, &mut Stop<'_>) -> Result<Option<PartialCounts>, Error>;

fn split_count(
    ctx: &MCContext,
    workers: usize,
    deadline: Deadline,
    counter: RangeCounter,
) -> Result<Option<PartialCounts>, Error> {
    let total = x2_space(ctx);
    let workers = workers.clamp(1, total as usize);
    let chunks = (workers as u64 * 16).min(total);
    let chunk_len = total.div_ceil(chunks);
    let cursor = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let merged = Mutex::new(Ok(PartialCounts::default()));

    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                let mut local = PartialCounts::default();
                let mut budget = Stop {
                    deadline,
                    flag: &stop,
                };
                loop {
                    let start = cursor.fetch_add(chunk_len, Ordering::Relaxed);
                    if start >= total || stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let end = (start + chunk_len).min(total);
                    match counter(ctx, start..end, &mut budget) {
                        Ok(Some(c)) => local = local.merge(c),
                        Ok(None) => break,
                        Err(e) => {
                            stop.store(true, Ordering::Relaxed);
                            *merged.lock().unwrap() = Err(e);
                            return;
                        }
                    }
                }
                let mut m = merged.lock().unwrap();
                if let Ok(acc) = m.as_mut() {
                    *acc = acc.merge(local);
                }
            });
        }
    });
    let merged = merged.into_inner().unwrap()?;
    Ok((!stop.load(Ordering::Relaxed)).then_some(merged))
}

fn brute(ctx: &MCContext, r: Range<u64>, b: &mut Stop<'_>) -> Result<Option<PartialCounts>, Error> {
    count_brute_range(ctx, r, b)
}

fn structural(
    ctx: &MCContext,
    r: Range<u64>,
    b: &mut Stop<'_>,
) -> Result<Option<PartialCounts>, Error> {
    count_structural_range(ctx, r, b)
}

/// Runs one counting method and records the elapsed wall-clock time.
///
/// `order_source` only matters for [`Method::ProofDecomposition`] and defaults to
/// [`OrderSource::Formula`].
pub fn run_theta(
    family: Family,
    n: u32,
    method: Method,
    order_source: Option<OrderSource>,
    workers: usize,
    deadline: Deadline,
) -> Result<CensusReport, Error> {
    let started = Instant::now();
    let mut report = match method {
        Method::Formula => formula_report(family, n)?,
        Method::ProofDecomposition => {
            count_proof_decomposition(family, n, order_source.unwrap_or(OrderSource::Formula))?
        }
        Method::Brute | Method::Structural => {
            let ctx = MCContext::new(family, n)?;
            let counter: RangeCounter = if method == Method::Brute {
                brute
            } else {
                structural
            };
            let counts = split_count(&ctx, workers, deadline, counter)?;
            CensusReport {
                family,
                n,
                method,
                order_source: None,
                budget_exhausted: counts.is_none(),
                counts: counts.map(Into::into),
                elapsed_ms: 0,
            }
        }
    };
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}
