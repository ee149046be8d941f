//! The pricing-promotion model.
//!
//! A customer's history is an odd-length list alternating a tariff from `A`
//! with an adjustment from `B`; the invoice is its sum. `M(A,B)` is the set
//! of all invoices together with 0, and coincides with the smallest
//! `(B∖{0})`-incentive containing `A`.

use std::collections::VecDeque;

use crate::error::{check_magnitude, Error, Result};
use crate::incentive::{closure_msg, IncentiveSpec};
use crate::monoid::join;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceModel {
    a_set: Vec<i64>,
    b_set: Vec<i64>,
}

impl SequenceModel {
    /// Requires `A` non-empty and positive, `0 ∈ B`, and `min A + min B ≥ 0`.
    pub fn new(a: impl IntoIterator<Item = i64>, b: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut a_set = a
            .into_iter()
            .map(check_magnitude)
            .collect::<Result<Vec<_>>>()?;
        let mut b_set = b
            .into_iter()
            .map(check_magnitude)
            .collect::<Result<Vec<_>>>()?;
        a_set.sort_unstable();
        a_set.dedup();
        b_set.sort_unstable();
        b_set.dedup();
        if a_set.is_empty() {
            return Err(Error::Domain("A must be non-empty".into()));
        }
        if a_set[0] < 1 {
            return Err(Error::Domain(format!(
                "A must contain positive integers only, got {}",
                a_set[0]
            )));
        }
        if b_set.binary_search(&0).is_err() {
            return Err(Error::Domain("B must contain 0".into()));
        }
        if a_set[0] + b_set[0] < 0 {
            return Err(Error::Domain(format!(
                "min(A) + min(B) = {} is negative",
                a_set[0] + b_set[0]
            )));
        }
        Ok(SequenceModel { a_set, b_set })
    }

    pub fn a_set(&self) -> &[i64] {
        &self.a_set
    }

    pub fn b_set(&self) -> &[i64] {
        &self.b_set
    }

    /// Checks `xs` against the alternating shape, reporting the first bad
    /// position (1-indexed).
    pub fn validate(&self, xs: &[i64]) -> Result<()> {
        if xs.len().is_multiple_of(2) {
            return Err(Error::InvalidSequence(format!(
                "length {} is not odd",
                xs.len()
            )));
        }
        for (i, &v) in xs.iter().enumerate() {
            let (set, name) = if i % 2 == 0 {
                (&self.a_set, "A")
            } else {
                (&self.b_set, "B")
            };
            if set.binary_search(&v).is_err() {
                return Err(Error::InvalidSequence(format!(
                    "x_{} = {v} is not in {name} = {{{}}}",
                    i + 1,
                    join(set)
                )));
            }
        }
        Ok(())
    }

    pub fn is_ab_sequence(&self, xs: &[i64]) -> bool {
        self.validate(xs).is_ok()
    }

    /// Total of a valid sequence; always positive.
    pub fn invoice(&self, xs: &[i64]) -> Result<i64> {
        self.validate(xs)?;
        Ok(xs.iter().sum())
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && self.members_up_to(n).last() == Some(&n)
    }

    /// All invoice totals (plus 0) in `[0, bound]`.
    ///
    /// Searches states `(value, balance)` with balance = #A picks − #B
    /// picks, accepting balance exactly 1.
    pub fn members_up_to(&self, bound: i64) -> Vec<i64> {
        let bound = bound.max(0);
        let theta = -self.b_set[0].min(0);
        let step = theta.max(self.a_set[0]);
        let balance_bound = (bound + step - 1) / step + 1;
        let max_value = bound + balance_bound * theta;
        let width = (max_value + 1) as usize;
        let index = |v: i64, k: i64| k as usize * width + v as usize;
        let mut seen = vec![false; width * (balance_bound as usize + 1)];
        let mut queue = VecDeque::new();
        seen[index(0, 0)] = true;
        queue.push_back((0i64, 0i64));
        while let Some((v, k)) = queue.pop_front() {
            let mut visit = |nv: i64, nk: i64| {
                if nv < 0 || nv > max_value || nk < 0 || nk > balance_bound {
                    return;
                }
                let i = index(nv, nk);
                if !seen[i] {
                    seen[i] = true;
                    queue.push_back((nv, nk));
                }
            };
            for &a in &self.a_set {
                visit(v + a, k + 1);
            }
            for &b in &self.b_set {
                visit(v + b, k - 1);
            }
        }
        (0..=bound)
            .filter(|&v| v == 0 || seen[index(v, 1)])
            .collect()
    }

    /// Compares `M(A,B)` with the smallest `(B∖{0})`-incentive containing
    /// `A` on `[0, bound]`.
    pub fn verify_closure_identity(&self, bound: i64) -> Result<bool> {
        let c = IncentiveSpec::new(self.b_set.iter().copied())?;
        let closure = closure_msg(&self.a_set, &c)?;
        let expected: Vec<i64> = (0..=bound.max(0))
            .filter(|&n| closure.contains(n))
            .collect();
        Ok(self.members_up_to(bound) == expected)
    }
}
