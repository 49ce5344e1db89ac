//! Verification suites: each one recomputes a family of structural facts about
//! `V(F2 C_{2^n})` and `V(F2 G)` and compares them with their predicted values.

use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maxclass_core::census::{affine_order, enumerate, verify_chain, ChainFamily};
use maxclass_core::involution::{sigma_product_closed_form, IndexSets};
use maxclass_core::theta::{families_distinct, formula_report, theta_formula};
use maxclass_core::{
    AlgElem, CensusReport, CyclicContext, Error, Family, Involution, MCContext, Method,
    OrderSource, SubgroupSpec,
};

use crate::parallel::{run_theta, Deadline};

use Involution::{Circledast, Star};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    /// Orders of the stabilizers `S_i`.
    #[value(name = "lemma1")]
    Stabilizers,
    /// Closed forms for `x^2` and `x x^*`.
    #[value(name = "lemma3")]
    StarProducts,
    /// Closed form for `x x^⊛`.
    #[value(name = "lemma4")]
    CircledastProducts,
    /// `1 + Ĉ` outside `W_⊛`, `1 + Ĉ^2` not a square in `V_⊛`.
    #[value(name = "lemma5")]
    NormElement,
    /// `V_⊛ = <1 + Ĉ> × W_⊛` and its order.
    #[value(name = "lemma6")]
    CircledastUnitary,
    /// Equal type-1 counts for D and Q.
    #[value(name = "lemma7")]
    TypeOneCounts,
    /// The `H_i^σ` chain.
    #[value(name = "lemma8")]
    HChain,
    /// The `L_i^σ` chain.
    #[value(name = "lemma10")]
    LChain,
    /// Order of `V_*`.
    #[value(name = "eq2")]
    StarUnitaryOrder,
    /// The involutions agree on `V[2]`.
    #[value(name = "eq13")]
    LowerLayerInvolutions,
    /// All order-two counting methods against the formula.
    #[value(name = "theorem")]
    Theta,
    /// The formula separates the three families.
    #[value(name = "corollary")]
    Distinct,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::Stabilizers,
        Suite::StarProducts,
        Suite::CircledastProducts,
        Suite::NormElement,
        Suite::CircledastUnitary,
        Suite::TypeOneCounts,
        Suite::HChain,
        Suite::LChain,
        Suite::StarUnitaryOrder,
        Suite::LowerLayerInvolutions,
        Suite::Theta,
        Suite::Distinct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stabilizers => "lemma1",
            Suite::StarProducts => "lemma3",
            Suite::CircledastProducts => "lemma4",
            Suite::NormElement => "lemma5",
            Suite::CircledastUnitary => "lemma6",
            Suite::TypeOneCounts => "lemma7",
            Suite::HChain => "lemma8",
            Suite::LChain => "lemma10",
            Suite::StarUnitaryOrder => "eq2",
            Suite::LowerLayerInvolutions => "eq13",
            Suite::Theta => "theorem",
            Suite::Distinct => "corollary",
            Suite::All => "all",
        }
    }

    /// The values of `n` a suite accepts. Enumeration-based suites stop at 4.
    pub fn cap(self) -> RangeInclusive<u32> {
        match self {
            Suite::Stabilizers | Suite::StarProducts | Suite::Distinct | Suite::All => 2..=6,
            Suite::CircledastProducts => 3..=6,
            Suite::NormElement | Suite::CircledastUnitary | Suite::LowerLayerInvolutions => 3..=4,
            Suite::TypeOneCounts
            | Suite::HChain
            | Suite::LChain
            | Suite::StarUnitaryOrder
            | Suite::Theta => 2..=4,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    /// Defaults to the suite's cap.
    pub n_range: Option<RangeInclusive<u32>>,
    /// Random elements per randomized check.
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub deadline: Deadline,
}

impl VerifyConfig {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            n_range: None,
            samples: 10_000,
            seed: 0,
            workers: 1,
            deadline: Deadline::none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub n: u32,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n_range: RangeInclusive<u32>,
    pub seed: u64,
    pub samples: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
}

impl VerifyReport {
    /// Every check passed and the budget held.
    pub fn pass(&self) -> bool {
        !self.budget_exhausted && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    OutOfCap {
        suite: Suite,
        requested: RangeInclusive<u32>,
        cap: RangeInclusive<u32>,
    },
    Core(Error),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::OutOfCap {
                suite,
                requested,
                cap,
            } => write!(
                f,
                "suite {suite} supports n in {}..{}, got {}..{}",
                cap.start(),
                cap.end(),
                requested.start(),
                requested.end()
            ),
            VerifyError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<Error> for VerifyError {
    fn from(e: Error) -> Self {
        VerifyError::Core(e)
    }
}

/// Runs a suite. Ranges outside a named suite's cap are rejected; `all` runs every suite
/// on the part of the range it supports.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let started = Instant::now();
    let range = cfg.n_range.clone().unwrap_or_else(|| cfg.suite.cap());
    let cap = cfg.suite.cap();
    if range.is_empty() || range.start() < cap.start() || range.end() > cap.end() {
        return Err(VerifyError::OutOfCap {
            suite: cfg.suite,
            requested: range,
            cap,
        });
    }
    let mut run = Runner {
        cfg,
        checks: Vec::new(),
        exhausted: false,
    };
    let suites: Vec<Suite> = if cfg.suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![cfg.suite]
    };
    'suites: for suite in suites {
        let cap = suite.cap();
        let lo = (*range.start()).max(*cap.start());
        let hi = (*range.end()).min(*cap.end());
        for n in lo..=hi {
            if run.exhausted || cfg.deadline.expired() {
                run.exhausted = true;
                break 'suites;
            }
            run.suite(suite, n)?;
        }
    }
    Ok(VerifyReport {
        suite: cfg.suite,
        n_range: range,
        seed: cfg.seed,
        samples: cfg.samples,
        checks: run.checks,
        elapsed_ms: started.elapsed().as_millis() as u64,
        budget_exhausted: run.exhausted,
    })
}

struct Runner<'a> {
    cfg: &'a VerifyConfig,
    checks: Vec<Check>,
    exhausted: bool,
}

fn pow2(e: usize) -> u128 {
    1u128 << e
}

impl Runner<'_> {
    fn record(
        &mut self,
        suite: Suite,
        n: u32,
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.checks.push(Check {
            suite,
            name: name.into(),
            n,
            expected,
            actual,
            pass,
        });
    }

    fn rng(&self, suite: Suite, n: u32) -> ChaCha8Rng {
        let salt = (suite as u64) << 8 | n as u64;
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// All elements for `n <= 3`, otherwise `samples` seeded random ones.
    fn elements(&self, suite: Suite, c: &CyclicContext) -> Vec<AlgElem> {
        if c.n() <= 3 {
            return c.elements().collect();
        }
        let mut rng = self.rng(suite, c.n());
        (0..self.cfg.samples)
            .map(|_| c.elem(rng.gen::<u64>() & c.mask()).unwrap())
            .collect()
    }

    fn theta(
        &mut self,
        f: Family,
        n: u32,
        method: Method,
        src: Option<OrderSource>,
    ) -> Result<Option<CensusReport>, Error> {
        let r = run_theta(f, n, method, src, self.cfg.workers, self.cfg.deadline)?;
        if r.budget_exhausted {
            self.exhausted = true;
            return Ok(None);
        }
        Ok(Some(r))
    }

    fn suite(&mut self, suite: Suite, n: u32) -> Result<(), Error> {
        let c = CyclicContext::new(n)?;
        let dim = c.dim();
        let (half, quarter) = (dim / 2, dim / 4);
        match suite {
            Suite::Stabilizers => {
                for i in 0..dim {
                    let spec = SubgroupSpec::S(i);
                    let order = if n <= 4 {
                        enumerate(&c, &spec)?.order()
                    } else {
                        affine_order(&c, &spec)?.expect("stabilizers are cut out linearly")
                    };
                    self.record(suite, n, format!("|{spec}|"), pow2(i), order);
                }
            }
            Suite::StarProducts => {
                let xs = self.elements(suite, &c);
                let mut bad = [0usize; 3];
                for &x in &xs {
                    let doubled = (0..dim)
                        .filter(|&i| x.coeff(i))
                        .fold(c.zero(), |acc, i| acc + c.monomial((2 * i % dim) as u64));
                    bad[0] += (c.square(x) != doubled) as usize;
                    let direct = c.mul(x, Star.apply(&c, x)?);
                    bad[1] += (sigma_product_closed_form(&c, Star, x)? != direct) as usize;
                    bad[2] += (direct.coeff(0) != x.augmentation() || direct.coeff(half)) as usize;
                }
                let k = xs.len();
                self.record(
                    suite,
                    n,
                    format!("square closed form mismatches of {k}"),
                    0,
                    bad[0],
                );
                self.record(
                    suite,
                    n,
                    format!("x x^* closed form mismatches of {k}"),
                    0,
                    bad[1],
                );
                self.record(
                    suite,
                    n,
                    format!("x x^* end coefficients mismatches of {k}"),
                    0,
                    bad[2],
                );
            }
            Suite::CircledastProducts => {
                let xs = self.elements(suite, &c);
                let sets = IndexSets::new(n);
                let mut bad = [0usize; 2];
                for &x in &xs {
                    let direct = c.mul(x, Circledast.apply(&c, x)?);
                    bad[0] += (sigma_product_closed_form(&c, Circledast, x)? != direct) as usize;
                    let even = sets.p.iter().filter(|&&r| x.coeff(r)).count() % 2 == 1;
                    let odd = sets.p.iter().filter(|&&r| x.coeff(r + 1)).count() % 2 == 1;
                    bad[1] += (direct.coeff(0) != even || direct.coeff(half) != odd) as usize;
                }
                let k = xs.len();
                self.record(
                    suite,
                    n,
                    format!("x x^⊛ closed form mismatches of {k}"),
                    0,
                    bad[0],
                );
                self.record(
                    suite,
                    n,
                    format!("x x^⊛ end coefficients mismatches of {k}"),
                    0,
                    bad[1],
                );
            }
            Suite::NormElement => {
                let norm = c.one() + c.group_sum();
                let norm2 = c.one() + c.hat_sum((0..dim).step_by(2))?;
                let w = enumerate(&c, &SubgroupSpec::W(Circledast))?;
                let v = enumerate(&c, &SubgroupSpec::Unitary(Circledast))?;
                self.record(suite, n, "1+Ĉ in w(circledast)", false, w.contains(norm));
                self.record(
                    suite,
                    n,
                    "1+Ĉ² in squares(vuni(circledast))",
                    false,
                    v.squares(&c).contains(norm2),
                );
            }
            Suite::CircledastUnitary => {
                let norm = c.one() + c.group_sum();
                let w = enumerate(&c, &SubgroupSpec::W(Circledast))?;
                let v = enumerate(&c, &SubgroupSpec::Unitary(Circledast))?;
                let s = enumerate(&c, &SubgroupSpec::Symmetric(Circledast))?;
                self.record(suite, n, "|vuni(circledast)|", pow2(half), v.order());
                self.record(suite, n, "|w(circledast)|", pow2(half - 1), w.order());
                self.record(suite, n, "|ssym(circledast)|", pow2(half), s.order());
                let mut product: Vec<AlgElem> = w
                    .elements()
                    .iter()
                    .flat_map(|&x| [x, c.mul(x, norm)])
                    .collect();
                product.sort();
                product.dedup();
                self.record(
                    suite,
                    n,
                    "vuni(circledast) = <1+Ĉ> x w(circledast)",
                    true,
                    product == v.elements(),
                );
            }
            Suite::TypeOneCounts => {
                let method = if n <= 3 {
                    Method::Brute
                } else {
                    Method::Structural
                };
                let d = self.theta(Family::Dihedral, n, method, None)?;
                let q = self.theta(Family::Quaternion, n, method, None)?;
                if let (Some(d), Some(q)) = (d, q) {
                    let t1 = |r: &CensusReport| {
                        r.counts
                            .as_ref()
                            .map(|c| c.type1.to_string())
                            .unwrap_or_default()
                    };
                    let predicted = formula_report(Family::Dihedral, n)?.counts.unwrap().type1;
                    self.record(
                        suite,
                        n,
                        format!("type1 D = type1 Q ({})", method.name()),
                        t1(&d),
                        t1(&q),
                    );
                    self.record(
                        suite,
                        n,
                        format!("type1 D ({})", method.name()),
                        predicted,
                        t1(&d),
                    );
                }
            }
            Suite::HChain => {
                for sigma in Involution::ALL.into_iter().filter(|s| s.supported(n)) {
                    let h0 = SubgroupSpec::H(sigma, 0);
                    self.record(
                        suite,
                        n,
                        format!("|{h0}|"),
                        pow2(3 * quarter),
                        enumerate(&c, &h0)?.order(),
                    );
                    let chain = verify_chain(&c, sigma, ChainFamily::H)?;
                    self.record(
                        suite,
                        n,
                        format!("h({sigma},*) chain with index-2 steps ending at v"),
                        true,
                        chain.pass(),
                    );
                    for i in (1..half).step_by(2) {
                        let hi = SubgroupSpec::H(sigma, i);
                        self.record(
                            suite,
                            n,
                            format!("{hi} empty"),
                            true,
                            enumerate(&c, &hi)?.is_empty(),
                        );
                    }
                }
                let sq = |s| SubgroupSpec::Squares(Box::new(SubgroupSpec::Symmetric(s)));
                let j = enumerate(&c, &SubgroupSpec::J(Star))?;
                self.record(
                    suite,
                    n,
                    "j(star) = squares(ssym(star))",
                    true,
                    j.same_elements(&enumerate(&c, &sq(Star))?),
                );
                self.record(suite, n, "|j(star)|", pow2(quarter - 1), j.order());
                if n >= 3 {
                    let j = enumerate(&c, &SubgroupSpec::J(Circledast))?;
                    let a_half = c.monomial(half as u64);
                    let mut product: Vec<AlgElem> = enumerate(&c, &sq(Circledast))?
                        .elements()
                        .iter()
                        .flat_map(|&x| [x, c.mul(x, a_half)])
                        .collect();
                    product.sort();
                    product.dedup();
                    self.record(
                        suite,
                        n,
                        "j(circledast) = <a^h> x squares(ssym(circledast))",
                        true,
                        product == j.elements(),
                    );
                    self.record(suite, n, "|j(circledast)|", pow2(quarter), j.order());
                }
            }
            Suite::LChain => {
                for l in 0..quarter {
                    let spec = SubgroupSpec::L(Star, 2 * l);
                    self.record(
                        suite,
                        n,
                        format!("|{spec}|"),
                        pow2(quarter + 1 + l),
                        enumerate(&c, &spec)?.order(),
                    );
                }
                for sigma in Involution::ALL.into_iter().filter(|s| s.supported(n)) {
                    let chain = verify_chain(&c, sigma, ChainFamily::L)?;
                    self.record(
                        suite,
                        n,
                        format!("l({sigma},*) chain, l(2k) = l(2k+1), ending at v2"),
                        true,
                        chain.pass(),
                    );
                }
            }
            Suite::StarUnitaryOrder => {
                let v = enumerate(&c, &SubgroupSpec::Unitary(Star))?;
                self.record(suite, n, "|vuni(star)|", pow2(half + 1), v.order());
            }
            Suite::LowerLayerInvolutions => {
                let mut differing = 0;
                for i in 0..dim {
                    let a = enumerate(&c, &SubgroupSpec::L(Star, i))?;
                    let b = enumerate(&c, &SubgroupSpec::L(Circledast, i))?;
                    differing += !a.same_elements(&b) as usize;
                }
                self.record(
                    suite,
                    n,
                    "indices i with l(circledast,i) != l(star,i)",
                    0,
                    differing,
                );
                let layer = enumerate(&c, &SubgroupSpec::LowerLayer)?;
                let mut bad = 0;
                for &h in layer.elements() {
                    bad += (Star.apply(&c, h)? != Circledast.apply(&c, h)?) as usize;
                }
                self.record(
                    suite,
                    n,
                    format!("h^* != h^⊛ on v2 ({} elements)", layer.order()),
                    0,
                    bad,
                );
            }
            Suite::Theta => {
                for f in Family::ALL.into_iter().filter(|f| f.supported(n)) {
                    self.theta_family(f, n)?;
                }
            }
            Suite::Distinct => {
                let values: Vec<String> = Family::ALL
                    .into_iter()
                    .filter(|f| f.supported(n))
                    .map(|f| Ok(format!("{f}={}", theta_formula(f, n)?)))
                    .collect::<Result<_, Error>>()?;
                self.record(
                    suite,
                    n,
                    format!("pairwise distinct: {}", values.join(" ")),
                    true,
                    families_distinct(n)?,
                );
            }
            Suite::All => unreachable!("expanded by run_verify"),
        }
        Ok(())
    }

    fn theta_family(&mut self, f: Family, n: u32) -> Result<(), Error> {
        let suite = Suite::Theta;
        let expected = formula_report(f, n)?;
        let split = |r: &CensusReport| {
            r.counts
                .as_ref()
                .map(|c| format!("{}+{}", c.type1, c.type2))
                .unwrap_or_default()
        };
        let mut runs = vec![
            (Method::Structural, None),
            (Method::ProofDecomposition, Some(OrderSource::Formula)),
        ];
        if n <= 3 {
            runs.insert(0, (Method::Brute, None));
        }
        runs.push((Method::ProofDecomposition, Some(OrderSource::Enumerated)));
        for (method, src) in runs {
            let Some(r) = self.theta(f, n, method, src)? else {
                return Ok(());
            };
            let label = match src {
                Some(s) => format!("{f} {}:{}", method.name(), s.name()),
                None => format!("{f} {}", method.name()),
            };
            self.record(
                suite,
                n,
                format!("{label} type1+type2"),
                split(&expected),
                split(&r),
            );
            self.record(
                suite,
                n,
                format!("{label} total even"),
                true,
                r.parity_ok() == Some(true),
            );
        }
        if n <= 3 {
            let ctx = MCContext::new(f, n)?;
            let cyc = ctx.cyclic();
            let mut disagree = 0;
            let mut units = 0u64;
            for x2 in cyc.elements() {
                for x1 in cyc
                    .elements()
                    .filter(|x| x.augmentation() != x2.augmentation())
                {
                    let u = ctx.elem(x1, x2)?;
                    units += 1;
                    disagree +=
                        (ctx.order2_conditions(u)? != (ctx.mc_square(u)? == ctx.one())) as usize;
                }
            }
            self.record(
                suite,
                n,
                format!("{f} order-two conditions vs squaring over {units} units"),
                0,
                disagree,
            );
        }
        Ok(())
    }
}
