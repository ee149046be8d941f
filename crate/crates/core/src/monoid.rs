//! Finitely generated submonoids of (ℕ,+).
//!
//! A [`GenSet`] is a non-empty sorted set of positive generators. The trivial
//! monoid `{0}` has no generators and is only representable through
//! [`Monoid::Trivial`]. A [`NumericalSemigroup`] is a cofinite submonoid with
//! its Frobenius number, gaps and a membership table precomputed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_magnitude, Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Gcd of all values, ignoring signs. Returns 0 for an empty or all-zero input.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a i64>) -> i64 {
    values.into_iter().fold(0, |acc, &v| gcd(acc, v))
}

/// Renders a slice as `1,2,3`.
pub(crate) fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// A sorted, deduplicated, non-empty set of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GenSet(Vec<i64>);

impl GenSet {
    pub fn new(gens: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut elements = Vec::new();
        for g in gens {
            check_magnitude(g)?;
            if g < 1 {
                return Err(Error::Domain(format!(
                    "generators must be positive, got {g}"
                )));
            }
            elements.push(g);
        }
        if elements.is_empty() {
            return Err(Error::Domain(
                "empty generator list; use Monoid::Trivial for {0}".into(),
            ));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(GenSet(elements))
    }

    /// Wraps a vector already known to be sorted, deduplicated and positive.
    pub(crate) fn from_sorted(elements: Vec<i64>) -> Self {
        debug_assert!(!elements.is_empty());
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements[0] >= 1);
        GenSet(elements)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn smallest(&self) -> i64 {
        self.0[0]
    }

    pub fn largest(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    pub fn gcd(&self) -> i64 {
        gcd_all(&self.0)
    }

    pub fn scale(&self, d: i64) -> GenSet {
        assert!(d >= 1);
        GenSet(self.0.iter().map(|g| g * d).collect())
    }

    /// Divides every generator by `d`, which must divide all of them.
    pub fn divide(&self, d: i64) -> GenSet {
        assert!(d >= 1 && self.0.iter().all(|g| g % d == 0));
        GenSet(self.0.iter().map(|g| g / d).collect())
    }

    /// Whether `n` is a non-negative integer combination of the generators.
    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        if n == 0 {
            return true;
        }
        let d = self.gcd();
        if n % d != 0 {
            return false;
        }
        let reduced = self.divide(d);
        // gcd 1 after reduction, so this cannot fail.
        NumericalSemigroup::new(&reduced)
            .map(|s| s.contains(n / d))
            .unwrap_or(false)
    }

    /// The minimal system of generators of the monoid generated by `self`.
    pub fn minimal(&self) -> GenSet {
        let d = self.gcd();
        let reduced: Vec<usize> = self.0.iter().map(|&g| (g / d) as usize).collect();
        let max = reduced[reduced.len() - 1];
        let mut reach = vec![false; max + 1];
        reach[0] = true;
        let mut kept = Vec::new();
        for &g in &reduced {
            if reach[g] {
                continue;
            }
            kept.push(g as i64 * d);
            for v in g..=max {
                if reach[v - g] {
                    reach[v] = true;
                }
            }
        }
        GenSet(kept)
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal() == *self
    }
}

impl TryFrom<Vec<i64>> for GenSet {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        GenSet::new(v)
    }
}

impl From<GenSet> for Vec<i64> {
    fn from(g: GenSet) -> Self {
        g.0
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", join(&self.0))
    }
}

/// A submonoid of (ℕ,+) given by generators, or the trivial monoid `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Monoid {
    Trivial,
    Generated(GenSet),
}

impl Monoid {
    /// Builds `⟨gens⟩`. Zeros are dropped; an empty remainder gives `{0}`.
    pub fn from_generators(gens: impl IntoIterator<Item = i64>) -> Result<Self> {
        let nonzero: Vec<i64> = gens.into_iter().filter(|&g| g != 0).collect();
        if nonzero.is_empty() {
            Ok(Monoid::Trivial)
        } else {
            GenSet::new(nonzero).map(Monoid::Generated)
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        match self {
            Monoid::Trivial => n == 0,
            Monoid::Generated(g) => g.contains(n),
        }
    }

    pub fn minimal(&self) -> Monoid {
        match self {
            Monoid::Trivial => Monoid::Trivial,
            Monoid::Generated(g) => Monoid::Generated(g.minimal()),
        }
    }

    /// Minimal generators as a plain slice; empty for `{0}`.
    pub fn generators(&self) -> &[i64] {
        match self {
            Monoid::Trivial => &[],
            Monoid::Generated(g) => g.as_slice(),
        }
    }

    /// Gcd of the monoid; 0 for `{0}`.
    pub fn gcd(&self) -> i64 {
        gcd_all(self.generators())
    }

    pub fn scale(&self, d: i64) -> Monoid {
        match self {
            Monoid::Trivial => Monoid::Trivial,
            Monoid::Generated(g) => Monoid::Generated(g.scale(d)),
        }
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::Trivial => write!(f, "{{0}}"),
            Monoid::Generated(g) => g.fmt(f),
        }
    }
}

/// A submonoid of ℕ with finite complement.
///
/// `table[n]` records membership for `n ∈ [0, F(S)+1]`; everything above
/// the Frobenius number is a member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumericalSemigroup {
    msg: GenSet,
    frobenius: i64,
    gaps: Vec<i64>,
    table: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, which must have gcd 1.
    pub fn new(gens: &GenSet) -> Result<Self> {
        let d = gens.gcd();
        if d != 1 {
            return Err(Error::GcdNotOne(d));
        }
        let (frobenius, table) = membership_table(gens.as_slice());
        let gaps = gaps_of(&table);
        Ok(NumericalSemigroup {
            msg: gens.minimal(),
            frobenius,
            gaps,
            table,
        })
    }

    /// Builds the semigroup from a generating set already known to be minimal.
    pub(crate) fn from_minimal(msg: GenSet) -> Self {
        debug_assert_eq!(msg.gcd(), 1);
        let (frobenius, table) = membership_table(msg.as_slice());
        let gaps = gaps_of(&table);
        NumericalSemigroup {
            msg,
            frobenius,
            gaps,
            table,
        }
    }

    /// The semigroup `ℕ ∖ gaps`, or `None` when that set is not closed
    /// under addition. Gaps must be positive.
    pub fn from_gaps(gaps: &[i64]) -> Option<Self> {
        let mut gaps: Vec<i64> = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first().is_some_and(|&g| g < 1) {
            return None;
        }
        let frobenius = gaps.last().copied().unwrap_or(-1);
        let mut table = vec![true; (frobenius + 2) as usize];
        for &g in &gaps {
            table[g as usize] = false;
        }
        let members: Vec<usize> = (1..=frobenius.max(0) as usize)
            .filter(|&n| table[n])
            .collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                if a + b < table.len() && !table[a + b] {
                    return None;
                }
            }
        }
        let member = |n: i64| n > frobenius || (n >= 0 && table[n as usize]);
        let multiplicity = (1..).find(|&n| member(n)).unwrap();
        // all minimal generators lie in [m, F + m]
        let msg: Vec<i64> = (multiplicity..=(frobenius + multiplicity).max(multiplicity))
            .filter(|&g| member(g))
            .filter(|&g| !(multiplicity..=g / 2).any(|a| member(a) && member(g - a)))
            .collect();
        Some(NumericalSemigroup {
            msg: GenSet::from_sorted(msg),
            frobenius,
            gaps,
            table,
        })
    }

    /// The semigroup `ℕ = ⟨1⟩`.
    pub fn naturals() -> Self {
        NumericalSemigroup::from_minimal(GenSet::from_sorted(vec![1]))
    }

    /// The semigroup `{0, m, →} = ⟨m, …, 2m−1⟩`.
    pub fn half_line(m: i64) -> Self {
        assert!(m >= 1);
        NumericalSemigroup::from_minimal(GenSet::from_sorted((m..2 * m).collect()))
    }

    pub fn msg(&self) -> &GenSet {
        &self.msg
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn multiplicity(&self) -> i64 {
        self.msg.smallest()
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n > self.frobenius {
            true
        } else {
            self.table[n as usize]
        }
    }

    /// Whether `self = {0, m, →}` for its multiplicity `m`.
    pub fn is_half_line(&self) -> bool {
        self.genus() as i64 == self.multiplicity() - 1
    }

    /// Members in `[0, bound]`.
    pub fn members_up_to(&self, bound: i64) -> Vec<i64> {
        (0..=bound).filter(|&n| self.contains(n)).collect()
    }

    /// `self ∖ {x}` recomputed from its gap set.
    pub fn without(&self, x: i64) -> Option<Self> {
        if !self.contains(x) || x == 0 {
            return None;
        }
        let mut gaps = self.gaps.clone();
        gaps.push(x);
        NumericalSemigroup::from_gaps(&gaps)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut gaps = self.gaps.clone();
        gaps.extend_from_slice(&other.gaps);
        NumericalSemigroup::from_gaps(&gaps).expect("intersection of semigroups is a semigroup")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.msg.fmt(f)
    }
}

/// Grows the table until `min(gens)` consecutive members appear. Requires gcd 1.
fn membership_table(gens: &[i64]) -> (i64, Vec<bool>) {
    let run_needed = gens[0] as usize;
    let mut table: Vec<bool> = Vec::new();
    let mut run = 0usize;
    let mut n = 0usize;
    loop {
        let member = n == 0
            || gens
                .iter()
                .take_while(|&&g| g as usize <= n)
                .any(|&g| table[n - g as usize]);
        table.push(member);
        if member {
            run += 1;
            if run == run_needed {
                break;
            }
        } else {
            run = 0;
        }
        n += 1;
    }
    let frobenius = n as i64 - run_needed as i64;
    table.truncate((frobenius + 2) as usize);
    (frobenius, table)
}

fn gaps_of(table: &[bool]) -> Vec<i64> {
    table
        .iter()
        .enumerate()
        .filter(|(_, &m)| !m)
        .map(|(n, _)| n as i64)
        .collect()
}
