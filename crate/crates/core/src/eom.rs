//! Exact occupancy distributions.
//!
//! An [`OccupancyDistribution`] is a probability table on the compositions of
//! `r` particles into `n` cells. It is stored densely: every composition is a
//! key, zero-probability ones included, so two distributions over the same
//! space compare equal exactly when their laws agree.
//!
//! The product-form family `P{X = x} = prod_j a(x_j) / C(a; n, r)` is built by
//! [`m_model`] from a [`WeightFunction`]; the classical Maxwell-Boltzmann,
//! Bose-Einstein and Fermi-Dirac models and the pseudo-contagious model are
//! available as [`BuiltinWeight`]s.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::comb::{
    enumerate_compositions, enumerate_labels, multinomial, psi, tilde_phi, Composition, LabelVector, OrderedLabels,
};
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, from_biguint, int, ratio, Rational};
use crate::sampling::ExactSampler;

/// Named weight functions with closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinWeight {
    /// `a(x) = 1 / x!`
    MaxwellBoltzmann,
    /// `a(x) = 1`
    BoseEinstein,
    /// `a(0) = a(1) = 1`, zero above.
    FermiDirac,
    /// `a(x) = binom(s + x - 1, x)` for integer `s >= 1`.
    PseudoContagious(u32),
}

impl BuiltinWeight {
    pub const CLASSICAL: [BuiltinWeight; 3] =
        [BuiltinWeight::MaxwellBoltzmann, BuiltinWeight::BoseEinstein, BuiltinWeight::FermiDirac];

    pub fn value(self, x: usize) -> Rational {
        match self {
            BuiltinWeight::MaxwellBoltzmann => Rational::new(BigInt::one(), factorial(x).into()),
            BuiltinWeight::BoseEinstein => Rational::one(),
            BuiltinWeight::FermiDirac => int(u64::from(x <= 1)),
            BuiltinWeight::PseudoContagious(s) => from_biguint(binomial(s as usize + x - 1, x)),
        }
    }
}

impl fmt::Display for BuiltinWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinWeight::MaxwellBoltzmann => write!(f, "mb"),
            BuiltinWeight::BoseEinstein => write!(f, "be"),
            BuiltinWeight::FermiDirac => write!(f, "fd"),
            BuiltinWeight::PseudoContagious(s) => write!(f, "pc:{s}"),
        }
    }
}

impl FromStr for BuiltinWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mb" | "maxwell-boltzmann" => Ok(BuiltinWeight::MaxwellBoltzmann),
            "be" | "bose-einstein" => Ok(BuiltinWeight::BoseEinstein),
            "fd" | "fermi-dirac" => Ok(BuiltinWeight::FermiDirac),
            other => {
                let param = other
                    .strip_prefix("pc:")
                    .or_else(|| other.strip_prefix("pseudo-contagious:"))
                    .ok_or_else(|| Error::UnknownWeightKind(s.to_string()))?;
                match param.parse::<u32>() {
                    Ok(v) if v >= 1 => Ok(BuiltinWeight::PseudoContagious(v)),
                    _ => Err(Error::UnknownWeightKind(s.to_string())),
                }
            }
        }
    }
}

/// Nonnegative weights `a(0), ..., a(x_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    values: Vec<Rational>,
    kind: Option<BuiltinWeight>,
}

impl WeightFunction {
    pub fn from_values(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("weight table is empty".into()));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::InvalidArgument("weights must be nonnegative".into()));
        }
        if values.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("weights must have a positive value".into()));
        }
        Ok(Self { values, kind: None })
    }

    pub fn builtin(kind: BuiltinWeight, x_max: usize) -> Self {
        Self { values: (0..=x_max).map(|x| kind.value(x)).collect(), kind: Some(kind) }
    }

    pub fn x_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn kind(&self) -> Option<BuiltinWeight> {
        self.kind
    }

    pub fn get(&self, x: usize) -> Result<&Rational> {
        self.values.get(x).ok_or(Error::WeightDomain { x_max: self.x_max(), needed: x })
    }

    /// Fails unless `a` is defined on `0..=x`.
    pub fn require(&self, x: usize) -> Result<()> {
        self.get(x).map(|_| ())
    }

    /// Same function on `0..=x_max`. Builtins are regenerated; tables can only shrink.
    pub fn resized(&self, x_max: usize) -> Result<Self> {
        match self.kind {
            Some(kind) => Ok(Self::builtin(kind, x_max)),
            None => {
                self.require(x_max)?;
                Self::from_values(self.values[..=x_max].to_vec())
            }
        }
    }

    /// `prod_j a(x_j)`.
    pub fn product(&self, x: &Composition) -> Result<Rational> {
        let mut acc = Rational::one();
        for &c in x.counts() {
            let w = self.get(c)?;
            if w.is_zero() {
                return Ok(Rational::zero());
            }
            acc *= w;
        }
        Ok(acc)
    }
}

/// Builtin weight table on `0..=x_max`.
pub fn builtin_weight(kind: BuiltinWeight, x_max: usize) -> WeightFunction {
    WeightFunction::builtin(kind, x_max)
}

/// A probability table over all compositions of `r` particles into `n` cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancyDistribution {
    n: usize,
    r: usize,
    table: BTreeMap<Composition, Rational>,
}

impl OccupancyDistribution {
    /// Builds a distribution from explicit masses; missing compositions get 0.
    pub fn new(n: usize, r: usize, entries: impl IntoIterator<Item = (Composition, Rational)>) -> Result<Self> {
        let d = Self::from_masses(n, r, entries)?;
        let total: Rational = d.table.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("probabilities sum to {total}, not 1")));
        }
        Ok(d)
    }

    /// Normalizes nonnegative masses into a distribution.
    pub fn from_weights(n: usize, r: usize, entries: impl IntoIterator<Item = (Composition, Rational)>) -> Result<Self> {
        let mut d = Self::from_masses(n, r, entries)?;
        let total: Rational = d.table.values().sum();
        if total.is_zero() {
            return Err(Error::EmptySupport(format!("all masses on A_{{{n},{r}}} are zero")));
        }
        for p in d.table.values_mut() {
            *p /= &total;
        }
        Ok(d)
    }

    fn from_masses(n: usize, r: usize, entries: impl IntoIterator<Item = (Composition, Rational)>) -> Result<Self> {
        let mut table: BTreeMap<Composition, Rational> =
            enumerate_compositions(n, r)?.into_iter().map(|x| (x, Rational::zero())).collect();
        let mut seen = std::collections::BTreeSet::new();
        for (x, p) in entries {
            if x.cells() != n || x.total() != r {
                return Err(Error::InvalidArgument(format!("{x} is not in A_{{{n},{r}}}")));
            }
            if p.is_negative() {
                return Err(Error::InvalidArgument(format!("negative mass at {x}")));
            }
            if !seen.insert(x.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate entry for {x}")));
            }
            table.insert(x, p);
        }
        Ok(Self { n, r, table })
    }

    pub fn point_mass(x: Composition) -> Result<Self> {
        let (n, r) = (x.cells(), x.total());
        Self::new(n, r, [(x, Rational::one())])
    }

    /// The Bose-Einstein model.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        Self::from_weights(n, r, enumerate_compositions(n, r)?.into_iter().map(|x| (x, Rational::one())))
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    pub fn particles(&self) -> usize {
        self.r
    }

    pub fn prob(&self, x: &Composition) -> Rational {
        self.table.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries in lexicographic order, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.table.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.table.iter().filter(|(_, p)| !p.is_zero())
    }

    pub fn total_mass(&self) -> Rational {
        self.table.values().sum()
    }

    /// Exact sampler by cumulative inversion over the lexicographic order.
    pub fn sampler(&self, seed: u64) -> Result<ExactSampler<Composition>> {
        ExactSampler::new(self.support().map(|(x, p)| (x.clone(), p.clone())), seed)
    }
}

/// A probability table over all label vectors in `{1..n}^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelDistribution {
    n: usize,
    r: usize,
    table: BTreeMap<LabelVector, Rational>,
}

impl LabelDistribution {
    pub fn new(n: usize, r: usize, entries: impl IntoIterator<Item = (LabelVector, Rational)>) -> Result<Self> {
        let mut table: BTreeMap<LabelVector, Rational> =
            enumerate_labels(r, n)?.into_iter().map(|y| (y, Rational::zero())).collect();
        for (y, p) in entries {
            if y.cells() != n || y.len() != r {
                return Err(Error::InvalidArgument(format!("{y} is not in D_{{{r},{n}}}")));
            }
            if p.is_negative() {
                return Err(Error::InvalidArgument(format!("negative mass at {y}")));
            }
            table.insert(y, p);
        }
        let total: Rational = table.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { n, r, table })
    }

    /// Independent uniform labels.
    pub fn iid_uniform(n: usize, r: usize) -> Result<Self> {
        let p = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(n), r));
        Self::new(n, r, enumerate_labels(r, n)?.into_iter().map(|y| (y, p.clone())))
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.r == 0
    }

    pub fn prob(&self, y: &LabelVector) -> Rational {
        self.table.get(y).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LabelVector, &Rational)> {
        self.table.iter()
    }

    pub fn total_mass(&self) -> Rational {
        self.table.values().sum()
    }

    /// Invariance under permutations of the `r` coordinates.
    pub fn is_exchangeable(&self) -> bool {
        self.table.iter().all(|(y, p)| *p == self.prob(&y.sorted().into()))
    }
}

/// Law of the sorted label vector, keyed by every element of `B_{r,n}`.
pub type OrderStatisticsDistribution = BTreeMap<OrderedLabels, Rational>;

/// A finite mixture over `rho = exp(-theta)`: `(rho, weight)` atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingSpec {
    atoms: Vec<(Rational, Rational)>,
}

impl MixingSpec {
    pub fn new(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidArgument("mixing spec needs at least one atom".into()));
        }
        for (rho, w) in &atoms {
            if !rho.is_positive() || *rho >= Rational::one() {
                return Err(Error::InvalidArgument(format!("rho = {rho} outside (0, 1)")));
            }
            if w.is_negative() {
                return Err(Error::InvalidArgument(format!("negative mixing weight {w}")));
            }
        }
        let total: Rational = atoms.iter().map(|(_, w)| w).sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("mixing weights sum to {total}, not 1")));
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    /// `sum_m w_m rho_m^s`, the mixture's contribution to any point with total `s`.
    pub fn factor(&self, s: usize) -> Rational {
        self.atoms.iter().map(|(rho, w)| w * num_traits::pow(rho.clone(), s)).sum()
    }
}

/// `C(a; n, k)` for `k = 0..=r_max`, as the coefficients of `(sum_x a(x) z^x)^n`.
/// Entries may be zero.
pub fn normalization_constants(a: &WeightFunction, n: usize, r_max: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("number of cells must be at least 1".into()));
    }
    a.require(r_max)?;
    let base = &a.values()[..=r_max];
    let mut acc = base.to_vec();
    for _ in 1..n {
        let mut next = vec![Rational::zero(); r_max + 1];
        for (i, ci) in acc.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in base.iter().enumerate().take(r_max + 1 - i) {
                if !bj.is_zero() {
                    next[i + j] += ci * bj;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `C(a; n, r) = sum over A_{n,r} of prod_j a(x_j)`; an error when zero.
pub fn normalization_constant(a: &WeightFunction, n: usize, r: usize) -> Result<Rational> {
    let c = normalization_constants(a, n, r)?.swap_remove(r);
    if c.is_zero() {
        return Err(Error::EmptySupport(format!("C = 0 for n = {n}, r = {r}")));
    }
    Ok(c)
}

/// The product-form model `P{X = x} = prod_j a(x_j) / C(a; n, r)`.
pub fn m_model(a: &WeightFunction, n: usize, r: usize) -> Result<OccupancyDistribution> {
    a.require(r)?;
    let weighted = enumerate_compositions(n, r)?
        .into_iter()
        .map(|x| {
            let w = a.product(&x)?;
            Ok((x, w))
        })
        .collect::<Result<Vec<_>>>()?;
    OccupancyDistribution::from_weights(n, r, weighted).map_err(|e| match e {
        Error::EmptySupport(_) => Error::EmptySupport(format!("C = 0 for n = {n}, r = {r}")),
        other => other,
    })
}

/// True iff `P` is invariant under every permutation of the cells.
///
/// Permutation orbits are exactly the sets of compositions sharing a sorted
/// representative, so it is enough to compare masses within each such group.
pub fn is_exchangeable(d: &OccupancyDistribution) -> bool {
    let mut orbit_mass: BTreeMap<Vec<usize>, &Rational> = BTreeMap::new();
    d.iter().all(|(x, p)| *orbit_mass.entry(x.canonical()).or_insert(p) == p)
}

/// `P{Y = y} = P{X = tilde_phi(y)} / multinomial(r, tilde_phi(y))`.
pub fn label_distribution(d: &OccupancyDistribution) -> Result<LabelDistribution> {
    if !is_exchangeable(d) {
        return Err(Error::NotExchangeable);
    }
    let (n, r) = (d.cells(), d.particles());
    let entries = enumerate_labels(r, n)?
        .into_iter()
        .map(|y| {
            let x = tilde_phi(&y);
            let p = d.prob(&x) / from_biguint(multinomial(r, &x)?);
            Ok((y, p))
        })
        .collect::<Result<Vec<_>>>()?;
    LabelDistribution::new(n, r, entries)
}

/// `P{X = x} = multinomial(r, x) * P{Y = psi(x)}`.
pub fn occupancy_from_labels(ld: &LabelDistribution) -> Result<OccupancyDistribution> {
    if !ld.is_exchangeable() {
        return Err(Error::NotExchangeable);
    }
    let (n, r) = (ld.cells(), ld.len());
    let entries = enumerate_compositions(n, r)?
        .into_iter()
        .map(|x| {
            let p = from_biguint(multinomial(r, &x)?) * ld.prob(&psi(&x).into());
            Ok((x, p))
        })
        .collect::<Result<Vec<_>>>()?;
    OccupancyDistribution::new(n, r, entries)
}

/// Law of `U = psi(X)`.
pub fn order_statistics_distribution(d: &OccupancyDistribution) -> OrderStatisticsDistribution {
    d.iter().map(|(x, p)| (psi(x), p.clone())).collect()
}

/// Marginal of the coordinates listed in `index_set` (1-based, in that order).
pub fn label_marginal(ld: &LabelDistribution, index_set: &[usize]) -> Result<LabelDistribution> {
    if index_set.is_empty() {
        return Err(Error::InvalidArgument("index set is empty".into()));
    }
    let r = ld.len();
    let mut seen = vec![false; r + 1];
    for &i in index_set {
        if i == 0 || i > r {
            return Err(Error::InvalidArgument(format!("index {i} outside 1..={r}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidArgument(format!("index {i} repeated")));
        }
    }
    let n = ld.cells();
    let mut acc: BTreeMap<LabelVector, Rational> = BTreeMap::new();
    for (y, p) in ld.iter() {
        let labels = index_set.iter().map(|&i| y.labels()[i - 1]).collect();
        *acc.entry(LabelVector::new(n, labels)?).or_insert_with(Rational::zero) += p;
    }
    LabelDistribution::new(n, index_set.len(), acc)
}

/// `prod_l a(c_l) c_l! / (r! C(a; n, r))` with `c = tilde_phi(y)`.
pub fn m_model_label_density(a: &WeightFunction, n: usize, r: usize, y: &LabelVector) -> Result<Rational> {
    if y.cells() != n || y.len() != r {
        return Err(Error::InvalidArgument(format!("{y} is not in D_{{{r},{n}}}")));
    }
    let c = normalization_constant(a, n, r)?;
    let counts = tilde_phi(y);
    let mut numer = Rational::one();
    for &k in counts.counts() {
        numer *= a.get(k)? * from_biguint(factorial(k));
    }
    Ok(numer / (from_biguint(factorial(r)) * c))
}

/// Law of `(Z_1..Z_n)` given `Z_1 + ... + Z_n = r`, for `Z_j` i.i.d. with mass
/// proportional to `q`, optionally tilted by the finite mixture
/// `sum_m w_m rho_m^z`.
///
/// The mixture only ever contributes the common factor `sum_m w_m rho_m^r` on
/// the conditioning event, so the output does not depend on it.
pub fn conditional_from_iid(
    q: &WeightFunction,
    mix: Option<&MixingSpec>,
    n: usize,
    r: usize,
) -> Result<OccupancyDistribution> {
    q.require(r)?;
    let tilt = mix.map_or_else(Rational::one, |m| m.factor(r));
    let mut joint = Vec::new();
    let mut event_mass = Rational::zero();
    for x in enumerate_compositions(n, r)? {
        let p = q.product(&x)? * &tilt;
        event_mass += &p;
        joint.push((x, p));
    }
    if event_mass.is_zero() {
        return Err(Error::EmptySupport(format!("P{{S_{n} = {r}}} = 0")));
    }
    OccupancyDistribution::new(n, r, joint.into_iter().map(|(x, p)| (x, p / &event_mass)))
}

/// Poisson masses `theta^x / x!` (unnormalized by `e^-theta`).
pub fn poisson_weights(theta: &Rational, x_max: usize) -> Result<WeightFunction> {
    WeightFunction::from_values(
        (0..=x_max).map(|x| num_traits::pow(theta.clone(), x) / from_biguint(factorial(x))).collect(),
    )
}

/// Geometric masses `(1 - p) p^x`.
pub fn geometric_weights(p: &Rational, x_max: usize) -> Result<WeightFunction> {
    check_unit_interval(p)?;
    let q = Rational::one() - p;
    WeightFunction::from_values((0..=x_max).map(|x| &q * num_traits::pow(p.clone(), x)).collect())
}

/// Bernoulli masses `1 - p, p, 0, 0, ...`.
pub fn bernoulli_weights(p: &Rational, x_max: usize) -> Result<WeightFunction> {
    check_unit_interval(p)?;
    let mut values = vec![Rational::zero(); x_max + 1];
    values[0] = Rational::one() - p;
    if x_max >= 1 {
        values[1] = p.clone();
    }
    WeightFunction::from_values(values)
}

/// Negative binomial masses `binom(s + x - 1, x) p^x (1 - p)^s`.
pub fn negative_binomial_weights(s: u32, p: &Rational, x_max: usize) -> Result<WeightFunction> {
    check_unit_interval(p)?;
    if s == 0 {
        return Err(Error::InvalidArgument("negative binomial needs s >= 1".into()));
    }
    let base = num_traits::pow(Rational::one() - p, s as usize);
    WeightFunction::from_values(
        (0..=x_max)
            .map(|x| from_biguint(binomial(s as usize + x - 1, x)) * num_traits::pow(p.clone(), x) * &base)
            .collect(),
    )
}

fn check_unit_interval(p: &Rational) -> Result<()> {
    if !p.is_positive() || *p >= Rational::one() {
        return Err(Error::InvalidArgument(format!("parameter {p} outside (0, 1)")));
    }
    Ok(())
}

/// Random exchangeable model: a positive mass per permutation orbit, spread
/// evenly over the orbit and normalized.
pub fn random_eom<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Result<OccupancyDistribution> {
    let compositions = enumerate_compositions(n, r)?;
    let mut orbit_size: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for x in &compositions {
        *orbit_size.entry(x.canonical()).or_default() += 1;
    }
    let orbit_mass: BTreeMap<Vec<usize>, Rational> = orbit_size
        .into_iter()
        .map(|(key, size)| (key, ratio(rng.gen_range(1..=20), size as i64)))
        .collect();
    OccupancyDistribution::from_weights(
        n,
        r,
        compositions.into_iter().map(|x| {
            let m = orbit_mass[&x.canonical()].clone();
            (x, m)
        }),
    )
}

/// Random strictly positive weight table on `0..=x_max`.
pub fn random_weight<R: Rng + ?Sized>(x_max: usize, rng: &mut R) -> WeightFunction {
    let values = (0..=x_max).map(|_| ratio(rng.gen_range(1..=9), rng.gen_range(1..=4))).collect();
    WeightFunction::from_values(values).expect("positive weights")
}
