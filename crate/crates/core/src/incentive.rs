//! Incentive constraints and the smallest incentive containing a set.
//!
//! A submonoid `M` of ℕ is a C-incentive when `s + t + c ∈ M` for all
//! non-zero `s, t ∈ M` and all `c ∈ C`. This module decides admissibility
//! and computes `L_C(X)` two ways: by the generator fixpoint in
//! [`closure_msg`] and by the bounded state search in [`closure_membership`].

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{check_magnitude, Error, Result};
use crate::monoid::{gcd, gcd_all, join, GenSet, Monoid, NumericalSemigroup};

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// A finite, non-empty set of integer offsets `C` with its threshold `θ(C)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncentiveSpec {
    c_set: Vec<i64>,
    theta: i64,
}

/// Result of dropping `0` from an offset set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `C = {0}`: every submonoid qualifies.
    Unconstrained,
    Offsets(IncentiveSpec),
}

impl IncentiveSpec {
    pub fn new(c: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut c_set = c
            .into_iter()
            .map(check_magnitude)
            .collect::<Result<Vec<_>>>()?;
        if c_set.is_empty() {
            return Err(Error::Domain("offset set C must be non-empty".into()));
        }
        c_set.sort_unstable();
        c_set.dedup();
        let theta = -c_set[0].min(0);
        Ok(IncentiveSpec { c_set, theta })
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.c_set
    }

    /// `θ(C) = −min(C ∪ {0})`.
    pub fn theta(&self) -> i64 {
        self.theta
    }

    pub fn gcd(&self) -> i64 {
        gcd_all(&self.c_set)
    }

    pub fn strip_zero(&self) -> Constraint {
        let rest: Vec<i64> = self.c_set.iter().copied().filter(|&c| c != 0).collect();
        if rest.is_empty() {
            Constraint::Unconstrained
        } else {
            Constraint::Offsets(IncentiveSpec {
                c_set: rest,
                theta: self.theta,
            })
        }
    }

    /// `C/d`; `d` must divide every element.
    pub fn divide(&self, d: i64) -> IncentiveSpec {
        assert!(d >= 1 && self.c_set.iter().all(|c| c % d == 0));
        IncentiveSpec {
            c_set: self.c_set.iter().map(|c| c / d).collect(),
            theta: self.theta / d,
        }
    }

    pub fn scale(&self, d: i64) -> IncentiveSpec {
        assert!(d >= 1);
        IncentiveSpec {
            c_set: self.c_set.iter().map(|c| c * d).collect(),
            theta: self.theta * d,
        }
    }

    /// Whether `⟨θ(C)/2⟩` is itself a C-incentive, i.e. `θ(C)` is even and
    /// positive and every `c = k·θ(C)/2` with `k ∈ {−2,−1} ∪ ℕ`.
    pub fn half_theta_is_incentive(&self) -> bool {
        if self.theta == 0 || self.theta % 2 != 0 {
            return false;
        }
        let half = self.theta / 2;
        self.c_set.iter().all(|&c| c % half == 0 && c / half >= -2)
    }
}

impl fmt::Display for IncentiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.c_set))
    }
}

/// Whether the monoid generated by `gens` is a C-incentive, checked on
/// every pair sum of generators.
pub fn is_incentive(gens: &GenSet, c: &IncentiveSpec) -> bool {
    let d = gens.gcd();
    let reduced = NumericalSemigroup::new(&gens.divide(d)).expect("reduced gcd is 1");
    let member = |v: i64| v >= 0 && v % d == 0 && reduced.contains(v / d);
    let g = gens.as_slice();
    g.iter().enumerate().all(|(i, &a)| {
        g[i..]
            .iter()
            .all(|&b| c.as_slice().iter().all(|&off| member(a + b + off)))
    })
}

/// [`is_incentive`] for a monoid that may be `{0}` (vacuously an incentive).
pub fn monoid_is_incentive(m: &Monoid, c: &IncentiveSpec) -> bool {
    match m {
        Monoid::Trivial => true,
        Monoid::Generated(g) => is_incentive(g, c),
    }
}

/// Whether some C-incentive contains `x`. Zeros in `x` are ignored.
pub fn is_admissible(x: &[i64], c: &IncentiveSpec) -> bool {
    if x.iter().any(|&v| v < 0) {
        return false;
    }
    let theta = c.theta();
    let nonzero = || x.iter().copied().filter(|&v| v != 0);
    if nonzero().all(|v| v >= theta) {
        return true;
    }
    c.half_theta_is_incentive() && nonzero().all(|v| v % (theta / 2) == 0)
}

/// Positive part of `x`, sorted. Negative entries are a domain error.
fn positive_part(x: &[i64]) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(x.len());
    for &v in x {
        check_magnitude(v)?;
        if v < 0 {
            return Err(Error::Domain(format!("X must be a subset of ℕ, got {v}")));
        }
        if v > 0 {
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureKind {
    /// `gcd(X ∪ C) = 1`: the closure is a numerical semigroup.
    Numerical,
    /// The closure is `d·S` for the numerical semigroup `S` in `semigroup`.
    MultipleOf(i64),
    /// `X = ∅`, closure `{0}`.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub kind: ClosureKind,
    /// Minimal generators of `L_C(X)`, at full scale.
    pub generators: Monoid,
    /// `L_C(X)/d` as a numerical semigroup, absent only when trivial.
    pub semigroup: Option<NumericalSemigroup>,
}

impl ClosureResult {
    pub fn contains(&self, n: i64) -> bool {
        match (&self.kind, &self.semigroup) {
            (ClosureKind::Trivial, _) => n == 0,
            (ClosureKind::Numerical, Some(s)) => s.contains(n),
            (ClosureKind::MultipleOf(d), Some(s)) => n >= 0 && n % d == 0 && s.contains(n / d),
            _ => self.generators.contains(n),
        }
    }

    pub fn divisor(&self) -> i64 {
        match self.kind {
            ClosureKind::MultipleOf(d) => d,
            _ => 1,
        }
    }

    fn scaled(self, d: i64) -> ClosureResult {
        let kind = match self.kind {
            ClosureKind::Trivial => ClosureKind::Trivial,
            ClosureKind::Numerical if d == 1 => ClosureKind::Numerical,
            ClosureKind::Numerical => ClosureKind::MultipleOf(d),
            ClosureKind::MultipleOf(e) => ClosureKind::MultipleOf(e * d),
        };
        ClosureResult {
            kind,
            generators: self.generators.scale(d),
            semigroup: self.semigroup,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClosureOptions {
    pub max_iterations: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// Minimal generators of `L_C(X)`, the smallest C-incentive containing `x`.
pub fn closure_msg(x: &[i64], c: &IncentiveSpec) -> Result<ClosureResult> {
    closure_msg_with(x, c, &ClosureOptions::default())
}

pub fn closure_msg_with(
    x: &[i64],
    c: &IncentiveSpec,
    opts: &ClosureOptions,
) -> Result<ClosureResult> {
    let xs = positive_part(x)?;
    if !is_admissible(&xs, c) {
        return Err(Error::NotAdmissible {
            x: xs,
            c: c.as_slice().to_vec(),
        });
    }
    if xs.is_empty() {
        return Ok(ClosureResult {
            kind: ClosureKind::Trivial,
            generators: Monoid::Trivial,
            semigroup: None,
        });
    }
    match c.strip_zero() {
        Constraint::Unconstrained => {
            let gens = GenSet::new(xs)?.minimal();
            let d = gens.gcd();
            let reduced = NumericalSemigroup::new(&gens.divide(d))?;
            Ok(ClosureResult {
                kind: ClosureKind::Numerical,
                generators: Monoid::Generated(reduced.msg().clone()),
                semigroup: Some(reduced),
            }
            .scaled(d))
        }
        Constraint::Offsets(c) => closure_offsets(&xs, &c, opts),
    }
}

fn closure_offsets(xs: &[i64], c: &IncentiveSpec, opts: &ClosureOptions) -> Result<ClosureResult> {
    let theta = c.theta();
    if xs.iter().any(|&v| v < theta) {
        // only ⟨θ/2⟩ contains an element below θ
        let half = theta / 2;
        return Ok(ClosureResult {
            kind: ClosureKind::Numerical,
            generators: Monoid::Generated(GenSet::from_sorted(vec![1])),
            semigroup: Some(NumericalSemigroup::naturals()),
        }
        .scaled(half));
    }
    let d = gcd(gcd_all(xs), c.gcd());
    if d > 1 {
        let reduced: Vec<i64> = xs.iter().map(|v| v / d).collect();
        return Ok(closure_offsets(&reduced, &c.divide(d), opts)?.scaled(d));
    }
    let msg = generator_fixpoint(xs, c, opts.max_iterations)?;
    Ok(ClosureResult {
        kind: ClosureKind::Numerical,
        generators: Monoid::Generated(msg.clone()),
        semigroup: Some(NumericalSemigroup::from_minimal(msg)),
    })
}

/// Adds `{s + t} + C` for every new pair sum of the current generators and
/// re-minimizes until the generating set is stable. Requires `X ⊆ {θ,→}`.
fn generator_fixpoint(xs: &[i64], c: &IncentiveSpec, max_iterations: usize) -> Result<GenSet> {
    let mut done: BTreeSet<i64> = BTreeSet::new();
    let mut current = GenSet::new(xs.iter().copied())?.minimal();
    for _ in 0..max_iterations {
        let y = current.as_slice();
        let fresh: BTreeSet<i64> = y
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| y[i..].iter().map(move |&t| s + t))
            .filter(|e| !done.contains(e))
            .collect();
        let mut z = y.to_vec();
        for &e in &fresh {
            for &off in c.as_slice() {
                let v = e + off;
                match v {
                    v if v < 0 => {
                        return Err(Error::Internal(format!(
                            "negative candidate {e}{off:+} while closing"
                        )))
                    }
                    0 => {}
                    v => z.push(v),
                }
            }
        }
        let next = GenSet::new(z)?.minimal();
        if next == current {
            return Ok(current);
        }
        current = next;
        done.extend(fresh);
    }
    Err(Error::IterationLimit(max_iterations))
}

/// Whether `n ∈ L_C(X)`, decided by searching sums `Σa·x + Σb·c` with more
/// `X`-terms than `C`-terms.
pub fn closure_membership(x: &[i64], c: &IncentiveSpec, n: i64) -> Result<bool> {
    if n < 0 {
        // still validate the inputs
        closure_members(x, c, 0)?;
        return Ok(false);
    }
    Ok(closure_members(x, c, n)?.binary_search(&n).is_ok())
}

/// All members of `L_C(X)` in `[0, bound]`, by the same search as
/// [`closure_membership`].
pub fn closure_members(x: &[i64], c: &IncentiveSpec, bound: i64) -> Result<Vec<i64>> {
    let xs = positive_part(x)?;
    if !is_admissible(&xs, c) {
        return Err(Error::NotAdmissible {
            x: xs,
            c: c.as_slice().to_vec(),
        });
    }
    let bound = bound.max(0);
    if xs.is_empty() {
        return Ok(vec![0]);
    }
    let (offsets, theta) = match c.strip_zero() {
        Constraint::Unconstrained => (Vec::new(), 0),
        Constraint::Offsets(c) => (c.as_slice().to_vec(), c.theta()),
    };
    if xs.iter().any(|&v| v < theta) {
        let half = theta / 2;
        return Ok((0..=bound).filter(|n| n % half == 0).collect());
    }
    let d = gcd(gcd_all(&xs), gcd_all(&offsets));
    let reduced_x: Vec<i64> = xs.iter().map(|v| v / d).collect();
    let reduced_c: Vec<i64> = offsets.iter().map(|v| v / d).collect();
    let table = reachable_totals(&reduced_x, &reduced_c, theta / d, bound / d);
    Ok(table
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(v, _)| v as i64 * d)
        .collect())
}

/// Breadth-first search over `(value, slack)` where slack counts `X`-terms
/// minus `C`-terms. A value is reachable when some state `(v, k ≥ 1)` is.
///
/// Any valid multiset can be ordered as `x c x c … x x`, which keeps the
/// slack in `[0, n / max(θ, min X)]` and the value in `[0, n + θ]`, so the
/// pruned search is complete.
pub(crate) fn reachable_totals(xs: &[i64], cs: &[i64], theta: i64, bound: i64) -> Vec<bool> {
    let step = theta.max(xs[0]);
    let slack_bound = (bound + step - 1) / step + 1;
    let max_value = bound + slack_bound * theta;
    let width = (max_value + 1) as usize;
    let index = |v: i64, k: i64| k as usize * width + v as usize;
    let mut seen = vec![false; width * (slack_bound as usize + 1)];
    let mut queue = VecDeque::new();
    seen[index(0, 0)] = true;
    queue.push_back((0i64, 0i64));
    while let Some((v, k)) = queue.pop_front() {
        let mut visit = |nv: i64, nk: i64| {
            if nv < 0 || nv > max_value || nk < 0 || nk > slack_bound {
                return;
            }
            let i = index(nv, nk);
            if !seen[i] {
                seen[i] = true;
                queue.push_back((nv, nk));
            }
        };
        for &a in xs {
            visit(v + a, k + 1);
        }
        for &b in cs {
            visit(v + b, k - 1);
        }
    }
    (0..=bound)
        .map(|v| v == 0 || (1..=slack_bound).any(|k| seen[index(v, k)]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(c: &[i64]) -> IncentiveSpec {
        IncentiveSpec::new(c.iter().copied()).unwrap()
    }

    fn gs(v: &[i64]) -> GenSet {
        GenSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(spec(&[-3, 2]).theta(), 3);
        assert_eq!(spec(&[-4, 6]).theta(), 4);
        assert_eq!(spec(&[1, 5]).theta(), 0);
        assert!(IncentiveSpec::new([]).is_err());
    }

    #[test]
    fn strip_zero_examples() {
        assert_eq!(
            spec(&[-3, 0, 2]).strip_zero(),
            Constraint::Offsets(spec(&[-3, 2]))
        );
        assert_eq!(
            spec(&[-3, 2]).strip_zero(),
            Constraint::Offsets(spec(&[-3, 2]))
        );
        assert_eq!(spec(&[0]).strip_zero(), Constraint::Unconstrained);
    }

    #[test]
    fn incentive_examples() {
        assert!(is_incentive(&gs(&[3, 7, 8]), &spec(&[-3, 2])));
        assert!(is_incentive(&gs(&[2, 3]), &spec(&[-1, 1])));
        assert!(!is_incentive(&gs(&[3]), &spec(&[-4])));
        assert!(is_incentive(&gs(&[4, 6]), &spec(&[-2, 2])));
        assert!(monoid_is_incentive(&Monoid::Trivial, &spec(&[-7])));
    }

    #[test]
    fn half_theta_examples() {
        assert!(spec(&[-4, 6]).half_theta_is_incentive());
        assert!(!spec(&[-4, 7]).half_theta_is_incentive());
        assert!(!spec(&[-3, 2]).half_theta_is_incentive());
        assert!(!spec(&[1, 2]).half_theta_is_incentive());
        // k = −1 is allowed, k = −2 is the minimum itself
        assert!(spec(&[-4, -2, 0]).half_theta_is_incentive());
    }

    #[test]
    fn admissibility_examples() {
        assert!(!is_admissible(&[3], &spec(&[-4])));
        assert!(is_admissible(&[2, 8], &spec(&[-4, 6])));
        assert!(!is_admissible(&[3], &spec(&[-4, 6])));
        assert!(!is_admissible(&[2], &spec(&[-4, 7])));
        assert!(is_admissible(&[], &spec(&[-4])));
        assert!(is_admissible(&[0, 4], &spec(&[-4])));
        assert!(!is_admissible(&[-1], &spec(&[1])));
    }

    #[test]
    fn closure_examples() {
        let r = closure_msg(&[5, 7, 9, 11], &spec(&[-3, 2])).unwrap();
        assert_eq!(r.kind, ClosureKind::Numerical);
        assert_eq!(r.generators.generators(), &[5, 7, 9, 11, 13]);

        let r = closure_msg(&[2, 8], &spec(&[-4, 6])).unwrap();
        assert_eq!(r.generators.generators(), &[2]);
        assert_eq!(r.kind, ClosureKind::MultipleOf(2));

        let r = closure_msg(&[4, 6], &spec(&[-2, 2])).unwrap();
        assert_eq!(r.generators.generators(), &[4, 6]);
        assert_eq!(r.kind, ClosureKind::MultipleOf(2));
        assert_eq!(r.semigroup.unwrap().msg().as_slice(), &[2, 3]);
    }

    #[test]
    fn closure_edge_cases() {
        let r = closure_msg(&[], &spec(&[-3, 2])).unwrap();
        assert_eq!(r.kind, ClosureKind::Trivial);
        assert_eq!(r.generators, Monoid::Trivial);
        let r = closure_msg(&[0], &spec(&[-3, 2])).unwrap();
        assert_eq!(r.kind, ClosureKind::Trivial);

        assert!(matches!(
            closure_msg(&[3], &spec(&[-4])),
            Err(Error::NotAdmissible { .. })
        ));
        assert!(matches!(
            closure_msg(&[-3], &spec(&[1])),
            Err(Error::Domain(_))
        ));

        let r = closure_msg(&[6, 9], &spec(&[0])).unwrap();
        assert_eq!(r.generators.generators(), &[6, 9]);
        assert_eq!(r.kind, ClosureKind::MultipleOf(3));
    }

    #[test]
    fn fixpoint_iteration_cap() {
        let opts = ClosureOptions { max_iterations: 1 };
        assert_eq!(
            closure_msg_with(&[5, 7, 9, 11], &spec(&[-3, 2]), &opts),
            Err(Error::IterationLimit(1))
        );
    }

    #[test]
    fn closure_membership_examples() {
        let c = spec(&[-3, 2]);
        let x = [5, 7, 9, 11];
        assert!(closure_membership(&x, &c, 13).unwrap());
        assert!(!closure_membership(&x, &c, 8).unwrap());
        assert!(closure_membership(&x, &c, 0).unwrap());
        assert!(closure_membership(&[], &c, 0).unwrap());
        assert!(!closure_membership(&[], &c, 5).unwrap());
        let closure = closure_msg(&x, &c).unwrap();
        let members = closure_members(&x, &c, 200).unwrap();
        let expected: Vec<i64> = (0..=200).filter(|&n| closure.contains(n)).collect();
        assert_eq!(members, expected);
        assert!(matches!(
            closure_membership(&[3], &spec(&[-4]), 3),
            Err(Error::NotAdmissible { .. })
        ));
    }

    #[test]
    fn membership_by_half_theta_branch() {
        let c = spec(&[-4, 6]);
        assert_eq!(
            closure_members(&[2, 8], &c, 10).unwrap(),
            vec![0, 2, 4, 6, 8, 10]
        );
    }
}
