//! Transformations between occupancy models.
//!
//! * [`k1_drop_particle`]: remove one of the `r` particles uniformly at random.
//! * [`k2_erase_cell`]: delete the last cell and scatter its particles
//!   independently and uniformly over the remaining `n - 1` cells.
//! * [`condition_on_partial_sum`]: keep the first `n` cells, conditioned on
//!   them holding exactly `s` particles.
//!
//! All three map exchangeable models to exchangeable models. Product-form
//! models survive conditioning unchanged, and survive a particle drop when
//! [`check_cond_eom`] holds.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::comb::{enumerate_compositions, multinomial, Composition};
use crate::eom::{m_model, normalization_constants, OccupancyDistribution, WeightFunction};
use crate::error::{Error, Result};
use crate::rational::{exact_root, int, Rational};

/// `P{X' = x'} = sum_h (x'_h + 1) / r * P{X = x' + e_h}` on `A_{n,r-1}`.
pub fn k1_drop_particle(d: &OccupancyDistribution) -> Result<OccupancyDistribution> {
    let (n, r) = (d.cells(), d.particles());
    if r == 0 {
        return Err(Error::NothingToDrop);
    }
    let entries = enumerate_compositions(n, r - 1)?.into_iter().map(|xp| {
        let p: Rational = (0..n)
            .map(|h| int(xp.counts()[h] as u64 + 1) * d.prob(&xp.incremented(h)))
            .sum::<Rational>()
            / int(r as u64);
        (xp, p)
    });
    OccupancyDistribution::new(n, r - 1, entries)
}

/// Erases cell `n`; each of its particles moves to one of cells `1..n-1`
/// independently and uniformly.
pub fn k2_erase_cell(d: &OccupancyDistribution) -> Result<OccupancyDistribution> {
    let (n, r) = (d.cells(), d.particles());
    if n < 2 {
        return Err(Error::NoRemainingCells);
    }
    let kept = n - 1;
    let mut scatter: Vec<Vec<(Composition, Rational)>> = Vec::with_capacity(r + 1);
    for moved in 0..=r {
        let spread = num_traits::pow(BigInt::from(kept), moved);
        let ways = enumerate_compositions(kept, moved)?
            .into_iter()
            .map(|xi| {
                let w = Rational::new(multinomial(moved, &xi)?.into(), spread.clone());
                Ok((xi, w))
            })
            .collect::<Result<Vec<_>>>()?;
        scatter.push(ways);
    }

    let mut out: BTreeMap<Composition, Rational> = BTreeMap::new();
    for (x, p) in d.support() {
        let moved = x.counts()[kept];
        for (xi, w) in &scatter[moved] {
            let target: Vec<usize> = x.counts()[..kept].iter().zip(xi.counts()).map(|(a, b)| a + b).collect();
            *out.entry(Composition::new(target)?).or_insert_with(Rational::zero) += p * w;
        }
    }
    OccupancyDistribution::new(kept, r, out)
}

/// Law of `(X_1..X_n)` given `X_1 + ... + X_n = s`.
pub fn condition_on_partial_sum(d: &OccupancyDistribution, n: usize, s: usize) -> Result<OccupancyDistribution> {
    let (big_n, r) = (d.cells(), d.particles());
    if n == 0 || n >= big_n {
        return Err(Error::InvalidArgument(format!("need 1 <= n < {big_n}, got n = {n}")));
    }
    if s > r {
        return Err(Error::InvalidArgument(format!("need s <= {r}, got s = {s}")));
    }
    let mut marginal: BTreeMap<Composition, Rational> = BTreeMap::new();
    for (x, p) in d.support() {
        let head = &x.counts()[..n];
        if head.iter().sum::<usize>() == s {
            *marginal.entry(Composition::new(head.to_vec())?).or_insert_with(Rational::zero) += p;
        }
    }
    let event: Rational = marginal.values().sum();
    if event.is_zero() {
        return Err(Error::ZeroProbabilityCondition { n, s });
    }
    OccupancyDistribution::new(n, s, marginal.into_iter().map(|(x, p)| (x, p / &event)))
}

/// Outcome of [`check_cond_eom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondEomCheck {
    pub holds: bool,
    /// First `x'` in `A_{n,r-1}` where the left side differs from 1, with its value.
    pub witness: Option<(Composition, Rational)>,
}

/// Checks, for every `x'` in the support of the model on `A_{n,r-1}`,
///
/// `C(a; n, r-1) / C(a; n, r) * sum_h (x'_h + 1) / r * a(x'_h + 1) / a(x'_h) == 1`.
///
/// Compositions outside the support are skipped. Terms with `a(x'_h + 1) = 0`
/// are zero-probability in the particle-drop formula and contribute nothing.
pub fn check_cond_eom(a: &WeightFunction, n: usize, r: usize) -> Result<CondEomCheck> {
    if r == 0 {
        return Err(Error::NothingToDrop);
    }
    let c = normalization_constants(a, n, r)?;
    if c[r].is_zero() || c[r - 1].is_zero() {
        return Err(Error::EmptySupport(format!("C vanishes at n = {n}, r = {} or {r}", r - 1)));
    }
    let scale = &c[r - 1] / &c[r];
    let r_q = int(r as u64);
    for xp in enumerate_compositions(n, r - 1)? {
        if a.product(&xp)?.is_zero() {
            continue;
        }
        let mut sum = Rational::zero();
        for &x in xp.counts() {
            let up = a.get(x + 1)?;
            if up.is_zero() {
                continue;
            }
            sum += int(x as u64 + 1) / &r_q * up / a.get(x)?;
        }
        let lhs = &scale * sum;
        if !lhs.is_one() {
            return Ok(CondEomCheck { holds: false, witness: Some((xp, lhs)) });
        }
    }
    Ok(CondEomCheck { holds: true, witness: None })
}

/// Finds a weight function reproducing `d` exactly as a product-form model.
///
/// Weights are only identified up to `a(x) -> c * lambda^x`. The result is
/// returned in the gauge `a(0) = 1` (when level 0 is occupied anywhere in the
/// support) and `a(m) = 1` at the smallest positive occupied level `m`.
/// Levels never seen in the support get weight 0.
///
/// The product equations `sum_l count_l(x) log a(l) - log C = log P(x)` are
/// solved exactly by fraction-free elimination carried out multiplicatively
/// on the rational right-hand sides. Returns `None` when the system is
/// inconsistent, when the candidate disagrees with `d` off the support, or
/// when the canonical gauge would need an irrational weight.
pub fn is_m_model(d: &OccupancyDistribution) -> Option<WeightFunction> {
    let (n, r) = (d.cells(), d.particles());
    let (rows, column) = product_form_system(d);
    let width = column.len() + 1;
    let (rows, pivots) = eliminate(rows, width)?;
    let solution = back_substitute(&rows, &pivots, width)?;
    let mut values = vec![Rational::zero(); r + 1];
    for (&level, &col) in &column {
        values[level] = solution[col].clone();
    }
    let a = WeightFunction::from_values(values).ok()?;
    (m_model(&a, n, r).ok()? == *d).then_some(a)
}

/// Whether `d` is product-form for some real, possibly irrational, weight
/// function: the log-linear system behind [`is_m_model`] is consistent and
/// the support contains every composition built from occupied levels only.
/// A `false` here is a proof that no weight function of any kind fits `d`.
pub fn has_real_product_form(d: &OccupancyDistribution) -> bool {
    let (rows, column) = product_form_system(d);
    let closed = enumerate_compositions(d.cells(), d.particles())
        .expect("d is already stored densely")
        .iter()
        .all(|x| x.counts().iter().any(|c| !column.contains_key(c)) || !d.prob(x).is_zero());
    closed && eliminate(rows, column.len() + 1).is_some()
}

/// Rows `(exponents, rhs)` of a multiplicative system `prod_k v_k^{e_k} = rhs`.
type System = Vec<(Vec<i64>, Rational)>;

/// One multiplicative equation per support point, `prod_j a(x_j) / C = P(x)`,
/// over the occupied levels plus `C`, with gauge rows `a(0) = 1` and
/// `a(m) = 1` for the smallest positive occupied level `m`.
fn product_form_system(d: &OccupancyDistribution) -> (System, BTreeMap<usize, usize>) {
    let levels: BTreeSet<usize> = d.support().flat_map(|(x, _)| x.counts().iter().copied()).collect();
    let column: BTreeMap<usize, usize> = levels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let c_col = levels.len();
    let width = levels.len() + 1;

    let mut rows: System = Vec::new();
    let gauge = |level: usize, rows: &mut System| {
        let mut coef = vec![0; width];
        coef[column[&level]] = 1;
        rows.push((coef, Rational::one()));
    };
    if column.contains_key(&0) {
        gauge(0, &mut rows);
    }
    if let Some(&m) = levels.iter().find(|&&l| l > 0) {
        gauge(m, &mut rows);
    }
    for (x, p) in d.support() {
        let mut coef = vec![0; width];
        for c in x.counts() {
            coef[column[c]] += 1;
        }
        coef[c_col] = -1;
        rows.push((coef, p.clone()));
    }
    (rows, column)
}

/// Fraction-free elimination of `prod_k v_k^{coef_k} = rhs`. Returns the
/// echelon rows and pivot positions, or `None` if the system is inconsistent.
fn eliminate(mut rows: System, width: usize) -> Option<(System, Vec<(usize, usize)>)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(best) = (next..rows.len())
            .filter(|&i| rows[i].0[col] != 0)
            .min_by_key(|&i| rows[i].0[col].abs())
        else {
            continue;
        };
        rows.swap(next, best);
        let (pivot, pivot_rhs) = rows[next].clone();
        for row in rows.iter_mut().skip(next + 1) {
            let q = row.0[col];
            if q == 0 {
                continue;
            }
            let g = pivot[col].gcd(&q);
            let (m1, m2) = (pivot[col] / g, q / g);
            for (e, &pe) in row.0.iter_mut().zip(&pivot) {
                *e = m1 * *e - m2 * pe;
            }
            row.1 = powi(&row.1, m1) * powi(&pivot_rhs, -m2);
        }
        pivots.push((next, col));
        next += 1;
    }
    if rows[next..].iter().any(|(_, rhs)| !rhs.is_one()) {
        return None;
    }
    Some((rows, pivots))
}

/// Positive rational solution of an echelon system, free unknowns set to 1;
/// `None` if a pivot needs an irrational root.
fn back_substitute(rows: &[(Vec<i64>, Rational)], pivots: &[(usize, usize)], width: usize) -> Option<Vec<Rational>> {
    let mut values = vec![Rational::one(); width];
    for &(row, col) in pivots.iter().rev() {
        let (coef, rhs) = &rows[row];
        let mut t = rhs.clone();
        for k in (col + 1)..width {
            if coef[k] != 0 {
                t *= powi(&values[k], -coef[k]);
            }
        }
        let p = coef[col];
        values[col] = if p > 0 { exact_root(&t, p as u32)? } else { exact_root(&t.recip(), (-p) as u32)? };
    }
    Some(values)
}

fn powi(q: &Rational, e: i64) -> Rational {
    let base = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        base.recip()
    } else {
        base
    }
}
