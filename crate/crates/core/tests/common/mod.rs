//! Brute-force oracles shared by the integration tests. Each one recomputes a
//! quantity from first principles without going through the library routine
//! it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use occupancy::comb::Composition;
use occupancy::eom::{OccupancyDistribution, WeightFunction};
use occupancy::Rational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn fact(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Every vector in `{0..=r}^n` summing to `r`, lexicographically.
pub fn brute_compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; n];
    loop {
        if current.iter().sum::<usize>() == r {
            out.push(current.clone());
        }
        // Odometer over {0..=r}^n, last digit fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < r {
                current[i] += 1;
                current[i + 1..].iter_mut().for_each(|c| *c = 0);
                break;
            }
        }
    }
}

/// Every vector in `{1..=n}^r`, last coordinate fastest.
pub fn brute_labels(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out.into_iter().flat_map(|y: Vec<usize>| (1..=n).map(move |l| [y.clone(), vec![l]].concat())).collect();
    }
    out
}

pub fn occupancy_counts(y: &[usize], n: usize) -> Vec<usize> {
    let mut counts = vec![0; n];
    for &l in y {
        counts[l - 1] += 1;
    }
    counts
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut next = p.clone();
            next.insert(pos, n - 1);
            out.push(next);
        }
    }
    out
}

pub fn comp(counts: &[usize]) -> Composition {
    Composition::new(counts.to_vec()).unwrap()
}

/// Invariance under every permutation of the cells.
pub fn exchangeable_by_permutation(d: &OccupancyDistribution) -> bool {
    let perms = permutations(d.cells());
    d.iter().all(|(x, p)| {
        perms.iter().all(|perm| {
            let permuted: Vec<usize> = perm.iter().map(|&i| x.counts()[i]).collect();
            d.prob(&comp(&permuted)) == *p
        })
    })
}

/// `prod a(x_j) / sum_y prod a(y_j)` with the normalizer summed directly.
pub fn product_form_oracle(a: &[Rational], n: usize, r: usize) -> Option<BTreeMap<Vec<usize>, Rational>> {
    let all = brute_compositions(n, r);
    let weight = |x: &Vec<usize>| x.iter().map(|&c| a[c].clone()).product::<Rational>();
    let total: Rational = all.iter().map(weight).sum();
    if total.is_zero() {
        return None;
    }
    Some(all.iter().map(|x| (x.clone(), weight(x) / &total)).collect())
}

pub fn table(d: &OccupancyDistribution) -> BTreeMap<Vec<usize>, Rational> {
    d.iter().map(|(x, p)| (x.counts().to_vec(), p.clone())).collect()
}

/// Particle drop straight from its definition: pick one of the `r` particles
/// uniformly and remove it.
pub fn drop_oracle(d: &OccupancyDistribution) -> BTreeMap<Vec<usize>, Rational> {
    let (n, r) = (d.cells(), d.particles());
    let mut out: BTreeMap<Vec<usize>, Rational> =
        brute_compositions(n, r - 1).into_iter().map(|x| (x, Rational::zero())).collect();
    for (x, p) in d.iter() {
        for h in 0..n {
            if x.counts()[h] > 0 {
                let mut smaller = x.counts().to_vec();
                smaller[h] -= 1;
                *out.get_mut(&smaller).unwrap() += p * q(x.counts()[h] as i64, r as i64);
            }
        }
    }
    out
}

/// Cell erasure from its definition: the last cell's particles are thrown
/// independently and uniformly into the remaining cells.
pub fn erase_oracle(d: &OccupancyDistribution) -> BTreeMap<Vec<usize>, Rational> {
    let (n, r) = (d.cells(), d.particles());
    let mut out: BTreeMap<Vec<usize>, Rational> =
        brute_compositions(n - 1, r).into_iter().map(|x| (x, Rational::zero())).collect();
    for (x, p) in d.iter() {
        let moved = x.counts()[n - 1];
        // Each of the (n-1)^moved placements is equally likely.
        for placement in brute_labels(moved, n - 1) {
            let mut target = x.counts()[..n - 1].to_vec();
            for l in placement {
                target[l - 1] += 1;
            }
            let share = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(n - 1), moved));
            *out.get_mut(&target).unwrap() += p * share;
        }
    }
    out
}

/// Conditional law of the first `m` cells given that they hold `s` particles.
pub fn condition_oracle(d: &OccupancyDistribution, m: usize, s: usize) -> Option<BTreeMap<Vec<usize>, Rational>> {
    let mut out: BTreeMap<Vec<usize>, Rational> =
        brute_compositions(m, s).into_iter().map(|x| (x, Rational::zero())).collect();
    let mut event = Rational::zero();
    for (x, p) in d.iter() {
        let head = &x.counts()[..m];
        if head.iter().sum::<usize>() == s {
            *out.get_mut(head).unwrap() += p;
            event += p;
        }
    }
    if event.is_zero() {
        return None;
    }
    Some(out.into_iter().map(|(x, p)| (x, p / &event)).collect())
}

/// A pair identity `P(x) P(y) = P(x') P(y')` that every product-form law must
/// satisfy when `x, y` and `x', y'` use the same multiset of cell values, but
/// that `d` violates. Its existence rules out product form for any weight.
pub fn product_form_obstruction(d: &OccupancyDistribution) -> Option<[Vec<usize>; 4]> {
    let support: Vec<(Vec<usize>, Rational)> = d.iter().map(|(x, p)| (x.counts().to_vec(), p.clone())).collect();
    let mut by_levels: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..support.len() {
        for j in i..support.len() {
            let mut levels = [support[i].0.clone(), support[j].0.clone()].concat();
            levels.sort_unstable();
            by_levels.entry(levels).or_default().push((i, j));
        }
    }
    for pairs in by_levels.values() {
        let (i0, j0) = pairs[0];
        let reference = &support[i0].1 * &support[j0].1;
        for &(i, j) in &pairs[1..] {
            if &support[i].1 * &support[j].1 != reference {
                return Some([support[i0].0.clone(), support[j0].0.clone(), support[i].0.clone(), support[j].0.clone()]);
            }
        }
    }
    None
}

pub fn weight_values(a: &WeightFunction) -> Vec<Rational> {
    a.values().to_vec()
}
