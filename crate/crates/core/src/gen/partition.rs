//! Path instances encoding PARTITION, mixing preemptable and rigid jobs.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceBuilder, Preemption};
use crate::rational::Rational;

/// Positive integers `a_1, ..., a_n` with an even sum `2B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInput {
    numbers: Vec<u64>,
    half_sum: u64,
}

impl PartitionInput {
    pub fn new(numbers: Vec<u64>) -> Result<Self> {
        if numbers.is_empty() {
            return Err(Error::Generator(String::from("partition input needs at least one number")));
        }
        if numbers.contains(&0) {
            return Err(Error::Generator(String::from("partition numbers must be positive")));
        }
        let sum = numbers
            .iter()
            .try_fold(0u64, |acc, &a| acc.checked_add(a))
            .ok_or_else(overflow)?;
        if sum % 2 != 0 {
            return Err(Error::Generator(format!("sum {sum} is odd, so no half-sum exists")));
        }
        Ok(PartitionInput {
            numbers,
            half_sum: sum / 2,
        })
    }

    pub fn numbers(&self) -> &[u64] {
        &self.numbers
    }

    /// `B = Σ a_i / 2`.
    pub fn half_sum(&self) -> u64 {
        self.half_sum
    }

    /// Whether some subset sums to `B`, by a subset-sum table.
    pub fn has_partition(&self) -> bool {
        let b = self.half_sum as usize;
        let mut reachable = alloc::vec![false; b + 1];
        reachable[0] = true;
        for &a in &self.numbers {
            let a = a as usize;
            for s in (a..=b).rev() {
                reachable[s] |= reachable[s - a];
            }
        }
        reachable[b]
    }
}

fn overflow() -> Error {
    Error::Generator(String::from("partition numbers too large for 64-bit times"))
}

/// Derived quantities of [`gen_partition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionLayout {
    /// `x_i = 4^{n-i} B`.
    pub x: Vec<i64>,
    /// Release dates of the first `n` rigid blockers.
    pub release: Vec<i64>,
    /// `τ = Σ (2x_k + a_k)`; the horizon is `2τ`.
    pub tau: i64,
    /// `W = B + Σ x_i`, the processing time of each preemptable job.
    pub w: i64,
}

impl PartitionLayout {
    pub fn new(input: &PartitionInput) -> Result<Self> {
        let n = input.numbers.len();
        let b = i64::try_from(input.half_sum).map_err(|_| overflow())?;
        let mut x = Vec::with_capacity(n);
        for i in 1..=n {
            let power = 4i64.checked_pow((n - i) as u32).ok_or_else(overflow)?;
            x.push(power.checked_mul(b).ok_or_else(overflow)?);
        }
        let mut release = Vec::with_capacity(n);
        let mut acc = 0i64;
        for (xi, &a) in x.iter().zip(&input.numbers) {
            release.push(acc);
            let a = i64::try_from(a).map_err(|_| overflow())?;
            acc = xi
                .checked_mul(2)
                .and_then(|v| v.checked_add(a))
                .and_then(|v| v.checked_add(acc))
                .ok_or_else(overflow)?;
        }
        let tau = acc;
        tau.checked_mul(2).ok_or_else(overflow)?;
        let w = x.iter().try_fold(b, |s, &xi| s.checked_add(xi)).ok_or_else(overflow)?;
        Ok(PartitionLayout { x, release, tau, w })
    }

    /// `2W`: the optimal disconnected time exactly when a partition exists.
    pub fn target(&self) -> i64 {
        2 * self.w
    }
}

/// A path of `3n + 2` edges whose optimal disconnected time is `2W` if the
/// numbers can be split into two halves of equal sum, and larger otherwise.
///
/// * `2n` tight rigid blockers of length `x_i`: blocker `i` starts at
///   `r_i = Σ_{k<i} (2x_k + a_k)`, and blocker `2n-(i-1)` is its mirror image
///   around `τ`.
/// * `n` rigid choice jobs of length `x_i + a_i` with window `[r_i, 2τ - r_i]`;
///   starting at `r_i` puts `a_i` into the first half, ending at `2τ - r_i`
///   puts it into the second.
/// * Two preemptable jobs of length `W` with windows `[0, τ]` and `[τ, 2τ]`.
pub fn gen_partition(input: &PartitionInput) -> Result<Instance> {
    let layout = PartitionLayout::new(input)?;
    let n = input.numbers.len();
    let tau = layout.tau;
    let int = Rational::from_integer;
    let mut b = InstanceBuilder::new();
    let node = |k: usize, total: usize| -> String {
        match k {
            0 => String::from("s+"),
            k if k == total => String::from("s-"),
            k => format!("v{k}"),
        }
    };
    let total = 3 * n + 2;
    let mut k = 0;
    let mut push = |b: &mut InstanceBuilder, id: String, r: i64, d: i64, p: i64, mode: Preemption| {
        b.named_edge(id, node(k, total), node(k + 1, total), int(r), int(d), int(p), mode);
        k += 1;
    };
    for i in 0..n {
        let r = layout.release[i];
        push(&mut b, format!("block{}", i + 1), r, r + layout.x[i], layout.x[i], Preemption::None);
    }
    for i in (0..n).rev() {
        let d = 2 * tau - layout.release[i];
        let j = 2 * n - i;
        push(&mut b, format!("block{j}"), d - layout.x[i], d, layout.x[i], Preemption::None);
    }
    for (i, &a) in input.numbers.iter().enumerate() {
        let r = layout.release[i];
        push(
            &mut b,
            format!("choice{}", i + 1),
            r,
            2 * tau - r,
            layout.x[i] + a as i64,
            Preemption::None,
        );
    }
    push(&mut b, String::from("fill1"), 0, tau, layout.w, Preemption::Arbitrary);
    push(&mut b, String::from("fill2"), tau, 2 * tau, layout.w, Preemption::Arbitrary);
    let numbers: Vec<String> = input.numbers.iter().map(|a| a.to_string()).collect();
    b.horizon(int(2 * tau))
        .meta("family", "partition")
        .meta("numbers", numbers.join(","))
        .meta("half_sum", input.half_sum.to_string())
        .meta("w", layout.w.to_string());
    Ok(b.build("s+", "s-"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_edges;
    use crate::instance::validate;

    fn input(numbers: &[u64]) -> PartitionInput {
        PartitionInput::new(numbers.to_vec()).unwrap()
    }

    #[test]
    fn rejects_odd_sums_and_zeros() {
        assert!(PartitionInput::new(alloc::vec![1, 1, 1]).is_err());
        assert!(PartitionInput::new(alloc::vec![0, 2]).is_err());
        assert!(PartitionInput::new(alloc::vec![]).is_err());
    }

    #[test]
    fn subset_sum_check() {
        assert!(input(&[1, 1]).has_partition());
        assert!(input(&[2, 2]).has_partition());
        assert!(!input(&[1, 3]).has_partition());
        assert!(input(&[3, 1, 1, 2, 2, 1]).has_partition());
    }

    #[test]
    fn layout_of_two_ones() {
        let l = PartitionLayout::new(&input(&[1, 1])).unwrap();
        assert_eq!(l.x, [4, 1]);
        assert_eq!(l.release, [0, 9]);
        assert_eq!(l.tau, 12);
        assert_eq!(l.w, 6);
        assert_eq!(l.target(), 12);
    }

    #[test]
    fn structure_of_the_path() {
        let inst = gen_partition(&input(&[1, 3])).unwrap();
        assert!(validate(&inst).is_valid());
        assert_eq!(inst.edges.len(), 8);
        assert_eq!(path_edges(&inst).unwrap().len(), 8);
        assert_eq!(inst.horizon, Rational::from_integer(48));
        let e = |id: &str| inst.edge(id).unwrap();
        // x = (8, 2), r = (0, 17), τ = 24.
        assert_eq!((e("block1").release.clone(), e("block1").deadline.clone()), (Rational::from_integer(0), Rational::from_integer(8)));
        assert_eq!((e("block4").release.clone(), e("block4").deadline.clone()), (Rational::from_integer(40), Rational::from_integer(48)));
        assert_eq!((e("block3").release.clone(), e("block3").deadline.clone()), (Rational::from_integer(29), Rational::from_integer(31)));
        assert_eq!(e("choice2").window_len(), Rational::from_integer(14));
        assert_eq!(e("choice2").processing, Rational::from_integer(5));
        assert_eq!(e("fill2").processing, Rational::from_integer(12));
        for id in ["block1", "block2", "block3", "block4"] {
            assert!(e(id).is_tight());
        }
        assert_eq!(inst.meta.get("w").map(String::as_str), Some("12"));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(gen_partition(&input(&[2; 40])).is_err());
    }
}
