//! Exhaustive verification suites.
//!
//! Each suite sweeps a small parameter grid, evaluates every identity exactly
//! and returns a [`Report`] with one [`Check`] per named result. Checks carry
//! the number of equalities evaluated and the first failing case.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::comb::{
    composition_count, enumerate_compositions, enumerate_labels, enumerate_ordered_labels, multinomial, phi, psi,
    tilde_phi, Composition,
};
use crate::eom::{
    bernoulli_weights, builtin_weight, conditional_from_iid, geometric_weights, is_exchangeable, label_distribution,
    label_marginal, m_model, m_model_label_density, negative_binomial_weights, normalization_constants,
    occupancy_from_labels, order_statistics_distribution, poisson_weights, random_eom, random_weight, BuiltinWeight,
    LabelDistribution, MixingSpec, OccupancyDistribution, WeightFunction,
};
use crate::error::{Error, Result};
use crate::process::{build_process, truncated_geometric_law, uniform_law, FiniteProcess, Verdict};
use crate::rational::{factorial, from_biguint, int, ratio, Rational};
use crate::transform::{check_cond_eom, condition_on_partial_sum, has_real_product_form, k1_drop_particle, k2_erase_cell};

/// The builtins every suite sweeps.
pub const BUILTINS: [BuiltinWeight; 5] = [
    BuiltinWeight::MaxwellBoltzmann,
    BuiltinWeight::BoseEinstein,
    BuiltinWeight::FermiDirac,
    BuiltinWeight::PseudoContagious(2),
    BuiltinWeight::PseudoContagious(3),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Eom,
    Transforms,
    Theorem,
    Classic,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Eom, Suite::Transforms, Suite::Theorem, Suite::Classic];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Eom => "eom",
            Suite::Transforms => "transforms",
            Suite::Theorem => "theorem",
            Suite::Classic => "classic",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}; expected eom, transforms, theorem or classic")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_n: usize,
    pub max_r: usize,
    /// Largest process horizon `M`; the count cap is `max_r`.
    pub horizon: usize,
    /// Random models and weight functions drawn per grid point.
    pub random_models: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 0, max_n: 4, max_r: 4, horizon: 3, random_models: 20 }
    }
}

/// One named result within a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    pub cases: u64,
    pub witness: Option<String>,
    /// An instance the check exhibits on success (counterexamples, search hits).
    pub example: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, holds: true, cases: 0, witness: None, example: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
    }

    fn absorb(&mut self, context: impl fmt::Display, v: &Verdict) {
        self.cases += v.cases;
        if !v.holds && self.holds {
            self.holds = false;
            self.witness = Some(format!("{context}: {}", v.witness.as_deref().unwrap_or("failed")));
        }
    }

    fn fail(&mut self, witness: String) {
        self.record(false, || witness);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": if c.holds { "pass" } else { "fail" },
                    "cases": c.cases,
                    "witness": c.witness,
                    "example": c.example,
                })
            })
            .collect();
        let doc = json!({
            "suite": self.suite.to_string(),
            "seed": self.config.seed,
            "max_n": self.config.max_n,
            "max_r": self.config.max_r,
            "horizon": self.config.horizon,
            "passed": self.passed(),
            "checks": checks,
        });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let checks = match suite {
        Suite::Eom => eom_suite(config)?,
        Suite::Transforms => transforms_suite(config)?,
        Suite::Theorem => theorem_suite(config)?,
        Suite::Classic => classic_suite(config)?,
    };
    Ok(Report { suite, config: config.clone(), checks })
}

/// A named occupancy model in a test matrix.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub model: OccupancyDistribution,
}

/// Builtin models plus `count` random exchangeable models on `A_{n,r}`;
/// builtins with an empty support are skipped.
pub fn exchangeable_models(n: usize, r: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for kind in BUILTINS {
        match m_model(&builtin_weight(kind, r), n, r) {
            Ok(model) => out.push(Instance { label: format!("{kind} n={n} r={r}"), model }),
            Err(Error::EmptySupport(_)) => {}
            Err(e) => return Err(e),
        }
    }
    for i in 0..count {
        out.push(Instance { label: format!("random eom #{i} n={n} r={r}"), model: random_eom(n, r, rng)? });
    }
    Ok(out)
}

/// Builtins plus `count` random positive weight tables, all on `0..=x_max`.
pub fn weight_matrix(x_max: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<(String, WeightFunction)> {
    let mut out: Vec<_> = BUILTINS.iter().map(|&k| (k.to_string(), builtin_weight(k, x_max))).collect();
    for i in 0..count {
        let a = random_weight(x_max, rng);
        out.push((format!("random weight #{i} {:?}", rational_list(a.values())), a));
    }
    out
}

fn rational_list(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn grid(config: &VerifyConfig, min_n: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    (min_n..=config.max_n).flat_map(move |n| (0..=config.max_r).map(move |r| (n, r)))
}

fn eom_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cardinality = Check::new("composition_cardinality");
    let mut bijection = Check::new("order_statistics_bijection");
    let mut fibers = Check::new("label_fiber_sizes");
    let mut constants = Check::new("normalizer_convolution");
    let mut normalized = Check::new("total_mass_one");
    let mut exchangeable = Check::new("product_form_exchangeable");
    let mut correspondence = Check::new("label_occupancy_correspondence");
    let mut density = Check::new("product_form_label_density");
    let mut order_stats = Check::new("order_statistics_law");
    let mut transfer = Check::new("uniform_occupancy_iff_uniform_order_statistics");
    let mut marginals = Check::new("uniform_label_marginals");
    let mut closed_forms = Check::new("label_law_closed_forms");
    let mut sufficiency = Check::new("iid_conditioning_sufficiency");

    for (n, r) in grid(config, 1) {
        // Combinatorial core.
        let comps = enumerate_compositions(n, r)?;
        cardinality.record(comps.len() as u64 == u64::try_from(composition_count(n, r)).unwrap_or(u64::MAX), || {
            format!("|A_{{{n},{r}}}| = {}", comps.len())
        });
        for x in &comps {
            bijection.record(phi(&psi(x)) == *x, || format!("phi(psi({x})) != {x}"));
        }
        for u in enumerate_ordered_labels(r, n)? {
            bijection.record(psi(&phi(&u)) == u, || format!("psi(phi({u})) != {u}"));
        }
        let mut fiber: BTreeMap<Composition, u64> = BTreeMap::new();
        let labels = enumerate_labels(r, n)?;
        for y in &labels {
            *fiber.entry(tilde_phi(y)).or_default() += 1;
        }
        for x in &comps {
            let size = fiber.get(x).copied().unwrap_or(0);
            let expected = multinomial(r, x)?;
            fibers.record(expected == size.into(), || format!("fiber of {x} has {size} label vectors, not {expected}"));
        }
        fibers.record(labels.len() as u64 == (n as u64).pow(r as u32), || format!("|D_{{{r},{n}}}| != {n}^{r}"));

        // Product-form models.
        for (name, a) in weight_matrix(r, config.random_models, &mut rng) {
            let conv = normalization_constants(&a, n, r)?;
            let brute: Rational = comps.iter().map(|x| a.product(x).expect("covered")).sum();
            constants.record(conv[r] == brute, || format!("{name}: C({n},{r}) = {} by convolution, {brute} by sum", conv[r]));
            let Ok(model) = m_model(&a, n, r) else { continue };
            exchangeable.record(is_exchangeable(&model), || format!("{name} n={n} r={r}"));
            let ld = label_distribution(&model)?;
            for (y, p) in ld.iter() {
                let expected = m_model_label_density(&a, n, r, y)?;
                density.record(*p == expected, || format!("{name} n={n} r={r}: P(Y = {y}) = {p}, formula {expected}"));
            }
        }

        let models = exchangeable_models(n, r, config.random_models, &mut rng)?;
        for Instance { label, model } in &models {
            normalized.record(model.total_mass().is_one(), || label.clone());
            let ld = label_distribution(model)?;
            normalized.record(ld.total_mass().is_one(), || format!("{label} (labels)"));
            correspondence.record(occupancy_from_labels(&ld)? == *model, || label.clone());

            let mut sorted: BTreeMap<_, Rational> = BTreeMap::new();
            for (y, p) in ld.iter() {
                *sorted.entry(y.sorted()).or_default() += p;
            }
            let os = order_statistics_distribution(model);
            let same = os.iter().all(|(u, p)| sorted.get(u).cloned().unwrap_or_default() == *p)
                && sorted.iter().all(|(u, p)| os.get(u).cloned().unwrap_or_default() == *p);
            order_stats.record(same, || label.clone());

            let uniform_a = model.iter().all(|(_, p)| *p == model.iter().next().expect("nonempty").1.clone());
            let uniform_b = {
                let first = os.values().next().expect("nonempty").clone();
                os.len() == comps.len() && os.values().all(|p| *p == first)
            };
            transfer.record(uniform_a == uniform_b, || format!("{label}: uniform on A {uniform_a}, on B {uniform_b}"));

            for i in 1..=r {
                let m = label_marginal(&ld, &[i])?;
                let expected = ratio(1, n as i64);
                let ok = m.iter().all(|(_, p)| *p == expected);
                marginals.record(ok, || format!("{label}: Y_{i} is not uniform"));
            }
        }
        let uniform = OccupancyDistribution::uniform(n, r)?;
        let os = order_statistics_distribution(&uniform);
        transfer.record(os.values().all(|p| *p == from_biguint(composition_count(n, r)).recip()), || {
            format!("uniform on A_{{{n},{r}}} does not give uniform order statistics")
        });

        closed_form_checks(n, r, &mut closed_forms)?;
        sufficiency_checks(n, r, &mut sufficiency)?;
    }
    Ok(vec![
        cardinality,
        bijection,
        fibers,
        constants,
        normalized,
        exchangeable,
        correspondence,
        density,
        order_stats,
        transfer,
        marginals,
        closed_forms,
        sufficiency,
    ])
}

/// Ascending `n (n+1) ... (n+r-1)` and falling `n (n-1) ... (n-r+1)` factorials.
fn ascending(n: usize, r: usize) -> Rational {
    (0..r).map(|i| int((n + i) as u64)).product()
}

fn falling(n: usize, r: usize) -> Rational {
    (0..r).map(|i| Rational::from_integer(((n as i64) - (i as i64)).into())).product()
}

fn closed_form_checks(n: usize, r: usize, check: &mut Check) -> Result<()> {
    for kind in [BuiltinWeight::MaxwellBoltzmann, BuiltinWeight::BoseEinstein, BuiltinWeight::FermiDirac] {
        let Ok(model) = m_model(&builtin_weight(kind, r), n, r) else { continue };
        let ld = label_distribution(&model)?;
        for (y, p) in ld.iter() {
            let counts = tilde_phi(y);
            let fact: Rational = counts.counts().iter().map(|&c| from_biguint(factorial(c))).product();
            let expected = match kind {
                BuiltinWeight::MaxwellBoltzmann => int(n as u64).pow(r as i32).recip(),
                BuiltinWeight::BoseEinstein => fact / ascending(n, r),
                _ if counts.counts().iter().all(|&c| c <= 1) => fact / falling(n, r),
                _ => Rational::zero(),
            };
            check.record(*p == expected, || format!("{kind} n={n} r={r}: P(Y = {y}) = {p}, closed form {expected}"));
        }
    }
    Ok(())
}

fn mixing_specs() -> Vec<MixingSpec> {
    vec![
        MixingSpec::new(vec![(ratio(1, 2), int(1))]).expect("valid"),
        MixingSpec::new(vec![(ratio(1, 3), ratio(1, 2)), (ratio(2, 3), ratio(1, 2))]).expect("valid"),
        MixingSpec::new(vec![(ratio(1, 5), ratio(1, 4)), (ratio(1, 2), ratio(1, 4)), (ratio(3, 4), ratio(1, 2))])
            .expect("valid"),
    ]
}

fn sufficiency_checks(n: usize, r: usize, check: &mut Check) -> Result<()> {
    let families: Vec<(BuiltinWeight, &str, WeightFunction)> = vec![
        (BuiltinWeight::MaxwellBoltzmann, "poisson(1/2)", poisson_weights(&ratio(1, 2), r)?),
        (BuiltinWeight::BoseEinstein, "geometric(2/3)", geometric_weights(&ratio(2, 3), r)?),
        (BuiltinWeight::FermiDirac, "bernoulli(1/3)", bernoulli_weights(&ratio(1, 3), r)?),
        (BuiltinWeight::PseudoContagious(2), "negative-binomial(2, 1/4)", negative_binomial_weights(2, &ratio(1, 4), r)?),
        (BuiltinWeight::PseudoContagious(3), "negative-binomial(3, 3/5)", negative_binomial_weights(3, &ratio(3, 5), r)?),
    ];
    for (kind, name, q) in families {
        let Ok(target) = m_model(&builtin_weight(kind, r), n, r) else { continue };
        let plain = conditional_from_iid(&q, None, n, r)?;
        check.record(plain == target, || format!("{name} n={n} r={r} does not condition to {kind}"));
        for (i, mix) in mixing_specs().iter().enumerate() {
            let mixed = conditional_from_iid(&q, Some(mix), n, r)?;
            check.record(mixed == plain, || format!("{name} n={n} r={r} depends on mixing spec #{i}"));
        }
    }
    Ok(())
}

/// A weight that violates the particle-drop condition: at `n = 2, r = 3` the
/// condition fails at `x' = (0, 2)` with left side `22/45`.
pub fn cond_eom_counterexample() -> WeightFunction {
    WeightFunction::from_values(vec![int(1), int(1), int(5), int(1)]).expect("positive")
}

fn transforms_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut k1_eom = Check::new("particle_drop_preserves_exchangeability");
    let mut k2_eom = Check::new("cell_erasure_preserves_exchangeability");
    let mut cond_eom = Check::new("conditioning_preserves_exchangeability");
    let mut cond_model = Check::new("product_form_closed_under_conditioning");
    let mut builtin_cond = Check::new("drop_condition_holds_for_builtins");
    let mut k1_model = Check::new("product_form_closed_under_drop_given_condition");
    let mut counter = Check::new("drop_condition_counterexample");
    let mut marginal = Check::new("drop_equals_label_marginal");
    let mut mass = Check::new("transforms_conserve_mass");
    let mut containment = Check::new("product_form_strictly_contained");

    for (n, r) in grid(config, 1) {
        for Instance { label, model } in exchangeable_models(n, r, config.random_models, &mut rng)? {
            if r >= 1 {
                let out = k1_drop_particle(&model)?;
                k1_eom.record(is_exchangeable(&out), || label.clone());
                mass.record(out.total_mass().is_one(), || format!("K1 on {label}"));
                if n <= 3 {
                    let before = label_distribution(&model)?;
                    let after = label_distribution(&out)?;
                    let indices: Vec<usize> = (1..r).collect();
                    let expected = if r == 1 { LabelDistribution::iid_uniform(n, 0)? } else { label_marginal(&before, &indices)? };
                    marginal.record(after == expected, || label.clone());
                }
            }
            if n >= 2 {
                let out = k2_erase_cell(&model)?;
                k2_eom.record(is_exchangeable(&out), || label.clone());
                mass.record(out.total_mass().is_one(), || format!("K2 on {label}"));
                for sub in 1..n {
                    for s in 0..=r {
                        match condition_on_partial_sum(&model, sub, s) {
                            Ok(out) => {
                                cond_eom.record(is_exchangeable(&out), || format!("{label} given S_{sub} = {s}"));
                                mass.record(out.total_mass().is_one(), || format!("{label} given S_{sub} = {s}"));
                            }
                            Err(Error::ZeroProbabilityCondition { .. }) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }

        for (name, a) in weight_matrix(r, config.random_models, &mut rng) {
            let Ok(model) = m_model(&a, n, r) else { continue };
            for sub in 1..n {
                for s in 0..=r {
                    let Ok(conditioned) = condition_on_partial_sum(&model, sub, s) else { continue };
                    let target = m_model(&a, sub, s)?;
                    cond_model.record(conditioned == target, || format!("{name} N={n} r={r} given S_{sub} = {s}"));
                }
            }
            if r == 0 || m_model(&a, n, r - 1).is_err() {
                continue;
            }
            let verdict = check_cond_eom(&a, n, r)?;
            if a.kind().is_some() {
                builtin_cond.record(verdict.holds, || format!("{name} n={n} r={r}: {:?}", verdict.witness));
            }
            if verdict.holds {
                let dropped = k1_drop_particle(&model)?;
                k1_model.record(dropped == m_model(&a, n, r - 1)?, || format!("{name} n={n} r={r}"));
            }
        }
    }

    let a = cond_eom_counterexample();
    let verdict = check_cond_eom(&a, 2, 3)?;
    match &verdict.witness {
        Some((x, lhs)) if !verdict.holds => {
            let dropped = k1_drop_particle(&m_model(&a, 2, 3)?)?;
            counter.record(dropped != m_model(&a, 2, 2)?, || "drop output is still product-form".into());
            counter.example = Some(format!("a = [1, 1, 5, 1], n = 2, r = 3: left side {lhs} at x' = {x}"));
        }
        _ => counter.fail("a = [1, 1, 5, 1], n = 2, r = 3 satisfies the condition".into()),
    }

    let hits = non_product_form_search(config.max_n, config.max_r)?;
    containment.cases = hits.searched;
    match hits.first {
        Some(hit) => containment.example = Some(hit.to_string()),
        None => containment.fail(format!(
            "no transformed product-form model on n <= {}, r <= {} fails the detector",
            config.max_n, config.max_r
        )),
    }

    Ok(vec![k1_eom, k2_eom, cond_eom, cond_model, builtin_cond, k1_model, counter, marginal, mass, containment])
}

/// A transformed product-form model that is not itself product-form.
#[derive(Debug, Clone)]
pub struct ContainmentWitness {
    pub weight: String,
    pub operation: &'static str,
    /// Shape of the input model.
    pub n: usize,
    pub r: usize,
    pub output: OccupancyDistribution,
}

impl fmt::Display for ContainmentWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} applied to the {} model on A_{{{},{}}} gives an exchangeable model on A_{{{},{}}} with no product form",
            self.operation,
            self.weight,
            self.n,
            self.r,
            self.output.cells(),
            self.output.particles()
        )
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub searched: u64,
    pub first: Option<ContainmentWitness>,
}

/// Weights searched for non-product-form transforms: the builtins and the
/// drop-condition counterexample.
pub fn search_weights(x_max: usize) -> Vec<(String, WeightFunction)> {
    let mut out: Vec<_> = BUILTINS.iter().map(|&k| (k.to_string(), builtin_weight(k, x_max))).collect();
    let mut values = vec![int(1), int(1), int(5)];
    values.resize(x_max.max(2) + 1, int(1));
    out.push(("[1, 1, 5, 1, ...]".into(), WeightFunction::from_values(values).expect("positive")));
    out
}

/// Exhaustive search, in increasing output size, for a product-form model whose
/// particle drop or cell erasure has output on `A_{n,r}` (`n <= max_n`,
/// `r <= max_r`) that is not product-form for any real weight function.
pub fn non_product_form_search(max_n: usize, max_r: usize) -> Result<SearchResult> {
    let mut searched = 0;
    for n in 1..=max_n {
        for r in 0..=max_r {
            for (name, a) in search_weights(r + 1) {
                let inputs: [(&'static str, usize, usize); 2] = [("particle drop", n, r + 1), ("cell erasure", n + 1, r)];
                for (operation, in_n, in_r) in inputs {
                    let Ok(model) = m_model(&a.resized(in_r)?, in_n, in_r) else { continue };
                    let output = if operation == "particle drop" { k1_drop_particle(&model)? } else { k2_erase_cell(&model)? };
                    searched += 1;
                    if !has_real_product_form(&output) {
                        let first = ContainmentWitness { weight: name, operation, n: in_n, r: in_r, output };
                        return Ok(SearchResult { searched, first: Some(first) });
                    }
                }
            }
        }
    }
    Ok(SearchResult { searched, first: None })
}

/// Terminal laws swept by the process suites: uniform, truncated geometric
/// with ratio 1/2, and one random law.
pub fn terminal_laws(cap: usize, rng: &mut ChaCha8Rng) -> Vec<(String, Vec<Rational>)> {
    let masses: Vec<u64> = (0..=cap).map(|k| if k == cap { rng.gen_range(1..=6) } else { rng.gen_range(0..=6) }).collect();
    let total: u64 = masses.iter().sum();
    vec![
        (format!("uniform on 0..={cap}"), uniform_law(cap)),
        (format!("geometric(1/2) on 0..={cap}"), truncated_geometric_law(&ratio(1, 2), cap)),
        (format!("random {masses:?}"), masses.iter().map(|&m| int(m) / int(total)).collect()),
    ]
}

/// Moves half the smaller mass between the first two positive paths with the
/// same total; the result is no longer a mixed geometric process.
pub fn perturbed(p: &FiniteProcess) -> Result<Option<FiniteProcess>> {
    let mut joint: Vec<(Composition, Rational)> = p.joint().map(|(x, q)| (x.clone(), q.clone())).collect();
    let mut first_by_total: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..joint.len() {
        if joint[i].1.is_zero() {
            continue;
        }
        let k = joint[i].0.total();
        if let Some(&j) = first_by_total.get(&k) {
            let eps = joint[i].1.clone().min(joint[j].1.clone()) / int(2);
            joint[j].1 -= &eps;
            joint[i].1 += eps;
            return FiniteProcess::from_joint(p.weight(), p.horizon(), joint).map(Some);
        }
        first_by_total.insert(k, i);
    }
    Ok(None)
}

fn theorem_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let names = [
        "m_uosp",
        "mixed_geometric_form",
        "structure_function_tables_agree",
        "interarrival_closed_form",
        "arrival_closed_form",
        "event_identity",
    ];
    let mut theorem: Vec<Check> = names.iter().map(|&n| Check::new(n)).collect();
    let mut marginal = Check::new("marginal_consistency");
    let mut markov = Check::new("markov_transitions");
    let mut recursion = Check::new("structure_function_recursion");
    let mut zero = Check::new("zero_count_probability");
    let mut mutation = Check::new("perturbed_joint_detected");

    let cap = config.max_r;
    let mut weights = weight_matrix(cap, 5, &mut rng);
    weights.retain(|(_, a)| a.kind() != Some(BuiltinWeight::PseudoContagious(3)));
    for (name, a) in &weights {
        for horizon in 1..=config.horizon {
            for (law_name, law) in terminal_laws(cap, &mut rng) {
                let context = format!("{name}, M = {horizon}, {law_name}");
                let p = match build_process(a, horizon, law) {
                    Ok(p) => p,
                    // Fermi-Dirac cannot carry more than M + 1 arrivals.
                    Err(Error::SupportMismatch { .. }) if a.kind() == Some(BuiltinWeight::FermiDirac) => {
                        build_process(a, horizon, uniform_law(cap.min(horizon + 1)))?
                    }
                    Err(e) => return Err(e),
                };
                let report = p.check_theorem_equivalences()?;
                for (check, (_, verdict)) in theorem.iter_mut().zip(report.verdicts()) {
                    check.absorb(&context, verdict);
                }
                marginal.absorb(&context, &marginal_consistency(&p)?);
                markov.absorb(&context, &p.check_markov()?);
                recursion.absorb(&context, &p.r_recursion_check()?);
                zero.absorb(&context, &p.check_zero_count()?);
                if let Some(bad) = perturbed(&p)? {
                    let r = bad.check_theorem_equivalences()?;
                    mutation.record(!r.holds(), || format!("{context}: perturbation passed every check"));
                }
            }
        }
    }
    theorem.extend([marginal, markov, recursion, zero, mutation]);
    Ok(theorem)
}

/// `P{J_0..J_{t-1} = j} = sum_l P{J_0..J_t = (j, l)}` for every prefix.
pub fn marginal_consistency(p: &FiniteProcess) -> Result<Verdict> {
    let mut v = Verdict { holds: true, cases: 0, witness: None };
    let cap = p.count_cap();
    for t in 1..=p.horizon() {
        for k in 0..=cap {
            for x in enumerate_compositions(t, k)? {
                let lhs = p.joint_jump_density(x.counts())?;
                let mut rhs = Rational::zero();
                for l in 0..=cap - k {
                    let mut longer = x.counts().to_vec();
                    longer.push(l);
                    rhs += p.joint_jump_density(&longer)?;
                }
                v.cases += 1;
                if lhs != rhs && v.holds {
                    v.holds = false;
                    v.witness = Some(format!("prefix {x}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    Ok(v)
}

fn classic_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    for (kind, name) in [
        (BuiltinWeight::FermiDirac, "strict_unit_jump_recovery"),
        (BuiltinWeight::MaxwellBoltzmann, "multinomial_recovery"),
        (BuiltinWeight::BoseEinstein, "uniform_recovery"),
    ] {
        let mut check = Check::new(name);
        for horizon in 0..=config.horizon {
            let cap = if kind == BuiltinWeight::FermiDirac { config.max_r.min(horizon + 1) } else { config.max_r };
            for (law_name, law) in terminal_laws(cap, &mut rng) {
                let p = build_process(&builtin_weight(kind, cap), horizon, law)?;
                check.absorb(format!("{kind}, M = {horizon}, {law_name}"), &p.check_classic_recovery()?);
            }
        }
        checks.push(check);
    }
    Ok(checks)
}
