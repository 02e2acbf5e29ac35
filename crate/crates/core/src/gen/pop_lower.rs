//! Path instances on which non-preemptive schedules lose a logarithmic factor.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceBuilder, Preemption};
use crate::rational::Rational;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `lcm(1, ..., levels)`.
pub fn lcm_up_to(levels: u64) -> Option<u64> {
    (1..=levels).try_fold(1u64, |acc, i| (acc / gcd(acc, i)).checked_mul(i))
}

/// `ℓ` levels of jobs on a path; level `i` splits `[0, P]` into `i` tight
/// jobs of length `P/i`.
///
/// Every time point where one job ends and another starts is then stretched
/// by inserting a gap of length `P`: later points move right by `P` and so do
/// releases at the point, while deadlines at the point stay. Windows grow, so
/// a preemptive schedule can still stack every level onto `P` units of busy
/// time, whereas a non-preemptive one needs about `P·(1 + 1/2 + … + 1/ℓ)`.
///
/// The path has `ℓ(ℓ+1)/2` edges, ordered by level and then position.
pub fn gen_pop_lower(levels: u64, scale: u64, preemption: Preemption) -> Result<Instance> {
    if levels == 0 {
        return Err(Error::Generator(String::from("need at least one level")));
    }
    let lcm = lcm_up_to(levels).ok_or_else(|| Error::Generator(String::from("too many levels")))?;
    if scale == 0 || !scale.is_multiple_of(lcm) {
        return Err(Error::Generator(format!(
            "scale {scale} must be a positive multiple of lcm(1..={levels}) = {lcm}"
        )));
    }
    let p = i64::try_from(scale).map_err(|_| Error::Generator(String::from("scale too large")))?;
    // (level, release, deadline) before stretching.
    let mut jobs = Vec::new();
    for i in 1..=levels as i64 {
        for j in 1..=i {
            jobs.push((i, (j - 1) * p / i, j * p / i));
        }
    }
    let releases: BTreeSet<i64> = jobs.iter().map(|j| j.1).collect();
    let deadlines: BTreeSet<i64> = jobs.iter().map(|j| j.2).collect();
    let stretch: Vec<i64> = releases.intersection(&deadlines).copied().collect();
    let shift = |t: i64, inclusive: bool| -> Option<i64> {
        let before = stretch.iter().filter(|&&s| s < t || (inclusive && s == t)).count() as i64;
        before.checked_mul(p)?.checked_add(t)
    };
    let too_large = || Error::Generator(String::from("stretched times overflow"));
    let edge_count = jobs.len();
    let int = Rational::from_integer;
    let mut b = InstanceBuilder::new();
    for (k, &(level, r, d)) in jobs.iter().enumerate() {
        let u = if k == 0 { String::from("s+") } else { format!("v{k}") };
        let v = if k + 1 == edge_count { String::from("s-") } else { format!("v{}", k + 1) };
        let position = k as i64 - level * (level - 1) / 2 + 1;
        b.named_edge(
            format!("l{level}j{position}"),
            u,
            v,
            int(shift(r, true).ok_or_else(too_large)?),
            int(shift(d, false).ok_or_else(too_large)?),
            int(p / level),
            preemption,
        );
    }
    let horizon = shift(p, false).ok_or_else(too_large)?;
    b.horizon(int(horizon))
        .meta("family", "pop-lower")
        .meta("levels", levels.to_string())
        .meta("scale", scale.to_string());
    Ok(b.build("s+", "s-"))
}
