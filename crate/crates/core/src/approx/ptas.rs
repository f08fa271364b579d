use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use super::lp::lp_relax_2constraint;
use crate::error::{Error, Result};
use crate::exact::Combinations;
use crate::model::{Assignment, Cost, Instance, SearchStats, SolveReport};

pub const MAX_EPSILON_DENOMINATOR: u32 = 64;

/// Accuracy parameter in `(0, 1)`, a fraction with denominator at most 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Epsilon(Ratio<u32>);

impl Epsilon {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("epsilon denominator is zero".into()));
        }
        let r = Ratio::new(num, den);
        if *r.numer() == 0 || r.numer() >= r.denom() {
            return Err(Error::InvalidInput(format!("epsilon {r} is not strictly between 0 and 1")));
        }
        if *r.denom() > MAX_EPSILON_DENOMINATOR {
            return Err(Error::InvalidInput(format!("epsilon {r} has denominator above {MAX_EPSILON_DENOMINATOR}")));
        }
        Ok(Self(r))
    }

    pub fn numer(self) -> u32 {
        *self.0.numer()
    }

    pub fn denom(self) -> u32 {
        *self.0.denom()
    }

    /// `ceil(2 / eps)`.
    pub fn subset_limit(self) -> usize {
        (2 * self.denom()).div_ceil(self.numer()) as usize
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `a/b` or a decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot read epsilon from {s:?}"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            return Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 9 || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let num = format!("{whole}{frac}").parse::<u64>().map_err(|_| bad())?;
        let r = Ratio::new(num, den);
        let (n, d) = (u32::try_from(*r.numer()).map_err(|_| bad())?, u32::try_from(*r.denom()).map_err(|_| bad())?);
        Self::new(n, d)
    }
}

fn hand_out(inst: &Instance, tasks: &[usize]) -> Assignment {
    let mut a = Assignment::idle(inst.robot_count());
    let mut next = 0;
    for &j in tasks {
        for _ in 0..inst.requirement(j) {
            a.set(next, Some(j));
            next += 1;
        }
    }
    a
}

/// Symmetric costs under a total budget, within a factor `1 - eps` of optimal.
///
/// Returns the better of an exhaustive search over small task sets and the
/// integral part of a basic LP optimum.
pub fn ptas_symmetric_total(inst: &Instance, w: Cost, eps: Epsilon) -> Result<SolveReport> {
    let c = inst
        .symmetric_costs()
        .ok_or_else(|| Error::PreconditionViolated("costs are not symmetric across robots".into()))?
        .to_vec();
    let n = inst.robot_count();
    let m = inst.task_count();
    let weight = |j: usize| c[j].saturating_mul(inst.requirement(j) as Cost);
    let mut stats = SearchStats::default();

    let mut small: Vec<usize> = Vec::new();
    let mut by_q: Vec<usize> = (0..m).map(|j| inst.requirement(j)).collect();
    let mut by_w: Vec<Cost> = (0..m).map(weight).collect();
    by_q.sort_unstable();
    by_w.sort_unstable();
    'sizes: for k in (1..=eps.subset_limit().min(m)).rev() {
        if by_q[..k].iter().sum::<usize>() > n || by_w[..k].iter().fold(0, |a: Cost, &b| a.saturating_add(b)) > w {
            stats.prunes += 1;
            continue;
        }
        for subset in Combinations::new(m, k) {
            stats.subsets_examined += 1;
            let robots: usize = subset.iter().map(|&j| inst.requirement(j)).sum();
            let spend = subset.iter().fold(0, |a: Cost, &j| a.saturating_add(weight(j)));
            if robots <= n && spend <= w {
                small = subset;
                break 'sizes;
            }
        }
    }

    let lp = lp_relax_2constraint(&inst.requirements, &c, n, w)?;
    let rounded = lp.integral_tasks();
    let chosen = if rounded.len() > small.len() { rounded } else { small };
    Ok(SolveReport::from_assignment(inst, hand_out(inst, &chosen), "ptas", false, stats))
}
