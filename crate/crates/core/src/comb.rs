//! The three combinatorial spaces behind an occupancy model and the maps
//! between them.
//!
//! * [`Composition`]: occupancy vectors, `n` cells holding `r` particles.
//! * [`OrderedLabels`]: nondecreasing label sequences of length `r` over `1..=n`.
//! * [`LabelVector`]: arbitrary label sequences of length `r` over `1..=n`.
//!
//! [`phi`] and [`psi`] are mutually inverse bijections between ordered labels
//! and compositions; [`tilde_phi`] counts label occurrences and is many-to-one.
//! Cell labels are 1-based throughout.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial};

/// Largest number of elements any enumeration in this crate will produce.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// An occupancy vector: `counts[j]` particles in cell `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    counts: Vec<usize>,
    total: usize,
}

impl Composition {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidArgument("a composition needs at least one cell".into()));
        }
        let total = counts.iter().sum();
        Ok(Self { counts, total })
    }

    pub fn zeros(n: usize) -> Self {
        Self { counts: vec![0; n], total: 0 }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn cells(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Occupancy counts sorted in decreasing order; equal for all members of
    /// a permutation orbit.
    pub fn canonical(&self) -> Vec<usize> {
        let mut key = self.counts.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        key
    }

    /// Copy with one extra particle in cell `index` (0-based).
    pub fn incremented(&self, index: usize) -> Self {
        let mut counts = self.counts.clone();
        counts[index] += 1;
        Self { counts, total: self.total + 1 }
    }

    pub fn into_counts(self) -> Vec<usize> {
        self.counts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.counts)
    }
}

/// A nondecreasing sequence of `r` labels in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedLabels {
    n: usize,
    labels: Vec<usize>,
}

impl OrderedLabels {
    pub fn new(n: usize, labels: Vec<usize>) -> Result<Self> {
        check_labels(n, &labels)?;
        if labels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!("labels {labels:?} are not sorted")));
        }
        Ok(Self { n, labels })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl fmt::Display for OrderedLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.labels)
    }
}

/// A sequence of `r` labels in `1..=n`, in any order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelVector {
    n: usize,
    labels: Vec<usize>,
}

impl LabelVector {
    pub fn new(n: usize, labels: Vec<usize>) -> Result<Self> {
        check_labels(n, &labels)?;
        Ok(Self { n, labels })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn sorted(&self) -> OrderedLabels {
        let mut labels = self.labels.clone();
        labels.sort_unstable();
        OrderedLabels { n: self.n, labels }
    }
}

impl From<OrderedLabels> for LabelVector {
    fn from(u: OrderedLabels) -> Self {
        Self { n: u.n, labels: u.labels }
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.labels)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

fn check_labels(n: usize, labels: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("label space needs n >= 1".into()));
    }
    if let Some(bad) = labels.iter().find(|&&l| l == 0 || l > n) {
        return Err(Error::InvalidArgument(format!("label {bad} outside 1..={n}")));
    }
    Ok(())
}

fn check_budget(count: &BigUint) -> Result<()> {
    if *count > BigUint::from(ENUMERATION_BUDGET) {
        return Err(Error::EnumerationTooLarge { count: count.to_string(), budget: ENUMERATION_BUDGET });
    }
    Ok(())
}

fn check_cells(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("number of cells must be at least 1".into()));
    }
    Ok(())
}

/// `|A_{n,r}| = binom(n + r - 1, n - 1)`.
pub fn composition_count(n: usize, r: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(u8::from(r == 0));
    }
    binomial(n + r - 1, n - 1)
}

/// Every occupancy vector of `r` particles in `n` cells, in lexicographic
/// order of the counts.
pub fn enumerate_compositions(n: usize, r: usize) -> Result<Vec<Composition>> {
    check_cells(n)?;
    let count = composition_count(n, r);
    check_budget(&count)?;
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut counts = vec![0; n];
    fill_compositions(&mut counts, 0, r, usize::MAX, &mut out);
    Ok(out)
}

/// Compositions whose counts are all 0 or 1; `binom(n, r)` of them.
pub fn enumerate_binary_compositions(n: usize, r: usize) -> Result<Vec<Composition>> {
    check_cells(n)?;
    if r > n {
        return Err(Error::EmptySupport(format!("{r} particles cannot fit in {n} cells at most once each")));
    }
    check_budget(&binomial(n, r))?;
    let mut out = Vec::new();
    let mut counts = vec![0; n];
    fill_compositions(&mut counts, 0, r, 1, &mut out);
    Ok(out)
}

fn fill_compositions(counts: &mut [usize], pos: usize, remaining: usize, cap: usize, out: &mut Vec<Composition>) {
    let n = counts.len();
    if pos == n - 1 {
        if remaining <= cap {
            counts[pos] = remaining;
            out.push(Composition { counts: counts.to_vec(), total: counts.iter().sum() });
        }
        return;
    }
    let cells_after = n - pos - 1;
    for x in 0..=remaining.min(cap) {
        // Skip prefixes the remaining cells cannot absorb under the cap.
        if cap != usize::MAX && remaining - x > cap * cells_after {
            continue;
        }
        counts[pos] = x;
        fill_compositions(counts, pos + 1, remaining - x, cap, out);
    }
    counts[pos] = 0;
}

/// Occupancy counts of a sorted label sequence.
pub fn phi(u: &OrderedLabels) -> Composition {
    count_labels(u.n, &u.labels)
}

/// Inverse of [`phi`]: `psi_i(x) = min { s : x_1 + ... + x_s >= i }`.
pub fn psi(x: &Composition) -> OrderedLabels {
    let mut labels = Vec::with_capacity(x.total);
    for (cell, &count) in x.counts.iter().enumerate() {
        labels.extend(std::iter::repeat_n(cell + 1, count));
    }
    OrderedLabels { n: x.cells(), labels }
}

/// Occupancy counts of an arbitrary label vector.
pub fn tilde_phi(y: &LabelVector) -> Composition {
    count_labels(y.n, &y.labels)
}

fn count_labels(n: usize, labels: &[usize]) -> Composition {
    let mut counts = vec![0; n];
    for &l in labels {
        counts[l - 1] += 1;
    }
    Composition { counts, total: labels.len() }
}

/// `r! / (x_1! ... x_n!)`.
pub fn multinomial(r: usize, x: &Composition) -> Result<BigUint> {
    if x.total != r {
        return Err(Error::InvalidArgument(format!("composition {x} sums to {} not {r}", x.total)));
    }
    Ok(x.counts.iter().fold(factorial(r), |acc, &c| acc / factorial(c)))
}

/// All `n^r` label vectors in odometer order (last coordinate fastest).
pub fn enumerate_labels(r: usize, n: usize) -> Result<Vec<LabelVector>> {
    check_cells(n)?;
    let count = num_traits::pow(BigUint::from(n), r);
    check_budget(&count)?;
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut labels = vec![1; r];
    loop {
        out.push(LabelVector { n, labels: labels.clone() });
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if labels[pos] < n {
                labels[pos] += 1;
                break;
            }
            labels[pos] = 1;
        }
    }
}

/// All sorted label sequences, in the order induced by [`psi`] on
/// [`enumerate_compositions`].
pub fn enumerate_ordered_labels(r: usize, n: usize) -> Result<Vec<OrderedLabels>> {
    Ok(enumerate_compositions(n, r)?.iter().map(psi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(counts: &[usize]) -> Composition {
        Composition::new(counts.to_vec()).unwrap()
    }

    #[test]
    fn single_cell_holds_everything() {
        assert_eq!(enumerate_compositions(1, 5).unwrap(), vec![comp(&[5])]);
        assert_eq!(composition_count(1, 7), BigUint::from(1u32));
    }

    #[test]
    fn lexicographic_order() {
        let got = enumerate_compositions(2, 2).unwrap();
        assert_eq!(got, vec![comp(&[0, 2]), comp(&[1, 1]), comp(&[2, 0])]);
        assert_eq!(enumerate_compositions(3, 2).unwrap().len(), 6);
        assert_eq!(composition_count(3, 2), BigUint::from(6u32));
        assert_eq!(composition_count(4, 3), BigUint::from(20u32));
    }

    #[test]
    fn zero_particles() {
        assert_eq!(enumerate_compositions(3, 0).unwrap(), vec![Composition::zeros(3)]);
        assert_eq!(enumerate_binary_compositions(4, 0).unwrap(), vec![Composition::zeros(4)]);
        assert_eq!(psi(&comp(&[0, 0])).labels(), &[] as &[usize]);
    }

    #[test]
    fn budget_guard() {
        match enumerate_compositions(30, 30) {
            Err(Error::EnumerationTooLarge { count, .. }) => assert_eq!(count, binomial(59, 29).to_string()),
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(matches!(enumerate_labels(30, 10), Err(Error::EnumerationTooLarge { .. })));
        assert!(enumerate_compositions(0, 1).is_err());
    }

    #[test]
    fn binary_compositions() {
        let got = enumerate_binary_compositions(3, 2).unwrap();
        assert_eq!(got, vec![comp(&[0, 1, 1]), comp(&[1, 0, 1]), comp(&[1, 1, 0])]);
        assert!(matches!(enumerate_binary_compositions(2, 3), Err(Error::EmptySupport(_))));
    }

    #[test]
    fn phi_psi_examples() {
        let u = OrderedLabels::new(3, vec![1, 1, 3]).unwrap();
        assert_eq!(phi(&u), comp(&[2, 0, 1]));
        assert_eq!(psi(&comp(&[2, 0, 1])), u);
        assert_eq!(phi(&OrderedLabels::new(2, vec![]).unwrap()), comp(&[0, 0]));
        assert_eq!(phi(&OrderedLabels::new(2, vec![2, 2, 2]).unwrap()), comp(&[0, 3]));
        assert_eq!(psi(&comp(&[0, 3])).labels(), &[2, 2, 2]);
        assert!(OrderedLabels::new(3, vec![2, 1]).is_err());
        assert!(OrderedLabels::new(3, vec![4]).is_err());
    }

    #[test]
    fn tilde_phi_examples() {
        let y = LabelVector::new(3, vec![3, 1, 1]).unwrap();
        assert_eq!(tilde_phi(&y), comp(&[2, 0, 1]));
        assert_eq!(tilde_phi(&LabelVector::new(2, vec![1, 2]).unwrap()), comp(&[1, 1]));
        let u = OrderedLabels::new(3, vec![1, 2, 2]).unwrap();
        assert_eq!(tilde_phi(&u.clone().into()), phi(&u));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &comp(&[1, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(multinomial(2, &comp(&[2, 0])).unwrap(), BigUint::from(1u32));
        assert!(multinomial(3, &comp(&[1, 1])).is_err());
    }

    #[test]
    fn multinomial_counts_distinct_orderings() {
        // Oracle: enumerate permutations of the multiset {1,1,2,3} and count distinct ones.
        let items = [1usize, 1, 2, 3];
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let idx = [a, b, c, d];
                        let mut sorted = idx;
                        sorted.sort_unstable();
                        if sorted == [0, 1, 2, 3] {
                            seen.insert(idx.map(|i| items[i]));
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 12);
        assert_eq!(multinomial(4, &comp(&[2, 1, 1])).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn label_enumeration() {
        let got = enumerate_labels(1, 2).unwrap();
        assert_eq!(got.iter().map(|y| y.labels().to_vec()).collect::<Vec<_>>(), vec![vec![1], vec![2]]);
        assert_eq!(enumerate_labels(2, 2).unwrap().len(), 4);
        assert_eq!(enumerate_labels(3, 3).unwrap().len(), 27);
        assert_eq!(enumerate_labels(0, 3).unwrap().len(), 1);
        let two = enumerate_labels(2, 2).unwrap();
        assert_eq!(two[1].labels(), &[1, 2]);
    }
}
