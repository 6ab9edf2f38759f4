//! Finite-horizon a-mixed geometric counting processes.
//!
//! A process on times `0..=M` is described by the joint law of its jump
//! amounts `(J_0, ..., J_M)`; `N_t = J_0 + ... + J_t`, arrival times are
//! `T_i = min { t : N_t >= i }` and inter-arrival times are
//! `Z_i = T_i - T_{i-1}` with `T_0 = 0`.
//!
//! [`build_process`] constructs the unique process whose jumps, given
//! `N_M = k`, follow the product-form model on `M + 1` cells with `k`
//! particles, and whose terminal count has a prescribed law. Its joint density
//! factors as `R_M(sum j) * prod_h a(j_h)` with `R_M(k) = P{N_M = k} / C(a; M+1, k)`.
//!
//! [`FiniteProcess::from_joint`] accepts an arbitrary jump law, so every
//! check here can also be pointed at processes that are *not* of this form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::comb::{enumerate_compositions, multinomial, psi, Composition, ENUMERATION_BUDGET};
use crate::eom::{m_model, normalization_constants, BuiltinWeight, OccupancyDistribution, WeightFunction};
use crate::error::{Error, Result};
use crate::rational::{binomial, from_biguint, Rational};
use crate::sampling::ExactSampler;

/// `r_table[t][k]` is `R_t(k)`, or `None` where `C(a; t+1, k) = 0`.
pub type RTable = Vec<Vec<Option<Rational>>>;

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Number of individual equalities evaluated.
    pub cases: u64,
    /// Description of the first failing case.
    pub witness: Option<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { holds: true, cases: 0, witness: None }
    }

    /// Records one case; returns `false` once a failure has been recorded.
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
        self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProcess {
    horizon: usize,
    weight: WeightFunction,
    terminal_law: Vec<Rational>,
    /// `constants[t][k] = C(a; t+1, k)`.
    constants: Vec<Vec<Rational>>,
    /// `prefix_laws[t]` is the law of `(J_0..J_t)` over every prefix with sum `<= K`.
    prefix_laws: Vec<BTreeMap<Composition, Rational>>,
}

/// Builds the process with weight `a`, horizon `M` and terminal count law
/// `terminal_law[k] = P{N_M = k}`.
pub fn build_process(a: &WeightFunction, horizon: usize, terminal_law: Vec<Rational>) -> Result<FiniteProcess> {
    validate_law(&terminal_law)?;
    let cap = last_positive(&terminal_law);
    let terminal_law = terminal_law[..=cap].to_vec();
    let weight = process_weight(a, cap)?;
    check_path_budget(horizon, cap)?;
    let top = normalization_constants(&weight, horizon + 1, cap)?;

    let mut joint = BTreeMap::new();
    for (k, pi) in terminal_law.iter().enumerate() {
        let c = &top[k];
        if c.is_zero() && !pi.is_zero() {
            return Err(Error::SupportMismatch { k });
        }
        for x in enumerate_compositions(horizon + 1, k)? {
            let p = if c.is_zero() { Rational::zero() } else { pi * weight.product(&x)? / c };
            joint.insert(x, p);
        }
    }
    FiniteProcess::assemble(weight, horizon, cap, joint)
}

impl FiniteProcess {
    /// A process given directly by the joint law of `(J_0..J_M)`; `a` is the
    /// weight the checks compare against.
    pub fn from_joint(
        a: &WeightFunction,
        horizon: usize,
        entries: impl IntoIterator<Item = (Composition, Rational)>,
    ) -> Result<Self> {
        let mut given = BTreeMap::new();
        for (path, p) in entries {
            if path.cells() != horizon + 1 {
                return Err(Error::InvalidArgument(format!("path {path} does not cover times 0..={horizon}")));
            }
            if p.is_negative() {
                return Err(Error::InvalidArgument(format!("negative mass at {path}")));
            }
            if given.insert(path.clone(), p).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate path {path}")));
            }
        }
        let total: Rational = given.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("path probabilities sum to {total}, not 1")));
        }
        let cap = given.iter().filter(|(_, p)| !p.is_zero()).map(|(x, _)| x.total()).max().unwrap_or(0);
        check_path_budget(horizon, cap)?;
        let weight = process_weight(a, cap)?;
        let mut joint = BTreeMap::new();
        for k in 0..=cap {
            for x in enumerate_compositions(horizon + 1, k)? {
                let p = given.remove(&x).unwrap_or_else(Rational::zero);
                joint.insert(x, p);
            }
        }
        Self::assemble(weight, horizon, cap, joint)
    }

    fn assemble(
        weight: WeightFunction,
        horizon: usize,
        cap: usize,
        joint: BTreeMap<Composition, Rational>,
    ) -> Result<Self> {
        let mut prefix_laws = vec![joint];
        for t in (0..horizon).rev() {
            let mut law: BTreeMap<Composition, Rational> = BTreeMap::new();
            for (x, p) in &prefix_laws[0] {
                let prefix = Composition::new(x.counts()[..=t].to_vec())?;
                *law.entry(prefix).or_insert_with(Rational::zero) += p;
            }
            prefix_laws.insert(0, law);
        }
        let constants =
            (0..=horizon).map(|t| normalization_constants(&weight, t + 1, cap)).collect::<Result<Vec<_>>>()?;
        let terminal_law = (0..=cap)
            .map(|k| prefix_laws[horizon].iter().filter(|(x, _)| x.total() == k).map(|(_, p)| p).sum())
            .collect();
        Ok(Self { horizon, weight, terminal_law, constants, prefix_laws })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Largest count `K` with positive terminal probability.
    pub fn count_cap(&self) -> usize {
        self.terminal_law.len() - 1
    }

    pub fn weight(&self) -> &WeightFunction {
        &self.weight
    }

    pub fn terminal_law(&self) -> &[Rational] {
        &self.terminal_law
    }

    /// Law of the full jump vector, every path with total `<= K` included.
    pub fn joint(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.prefix_laws[self.horizon].iter()
    }

    /// `C(a; t+1, k)`.
    pub fn normalizer(&self, t: usize, k: usize) -> Result<&Rational> {
        self.check_time(t)?;
        self.check_count(k)?;
        Ok(&self.constants[t][k])
    }

    fn check_time(&self, t: usize) -> Result<()> {
        if t > self.horizon {
            return Err(Error::HorizonExceeded { time: t, horizon: self.horizon });
        }
        Ok(())
    }

    fn check_count(&self, k: usize) -> Result<()> {
        if k > self.count_cap() {
            return Err(Error::CountCapExceeded { k, cap: self.count_cap() });
        }
        Ok(())
    }

    /// `P{J_0 = j_0, ..., J_t = j_t}` with `t = prefix.len() - 1`.
    pub fn joint_jump_density(&self, prefix: &[usize]) -> Result<Rational> {
        let Some(t) = prefix.len().checked_sub(1) else {
            return Err(Error::InvalidArgument("empty jump prefix".into()));
        };
        self.check_time(t)?;
        let key = Composition::new(prefix.to_vec())?;
        Ok(self.prefix_laws[t].get(&key).cloned().unwrap_or_else(Rational::zero))
    }

    /// `P{N_t = k}` for `k = 0..=K`.
    pub fn count_distribution(&self, t: usize) -> Result<Vec<Rational>> {
        self.check_time(t)?;
        let mut law = vec![Rational::zero(); self.count_cap() + 1];
        for (x, p) in &self.prefix_laws[t] {
            law[x.total()] += p;
        }
        Ok(law)
    }

    /// `R_t(k) = P{N_t = k} / C(a; t+1, k)`; `None` where the normalizer vanishes.
    pub fn r_function(&self, t: usize, k: usize) -> Result<Option<Rational>> {
        let c = self.normalizer(t, k)?;
        if c.is_zero() {
            return Ok(None);
        }
        Ok(Some(&self.count_distribution(t)?[k] / c))
    }

    /// The table of [`FiniteProcess::r_function`] for all `t <= M`, `k <= K`.
    pub fn r_table(&self) -> RTable {
        (0..=self.horizon)
            .map(|t| (0..=self.count_cap()).map(|k| self.r_function(t, k).expect("in range")).collect())
            .collect()
    }

    /// Law of `(J_0..J_t)` given `N_t = k`.
    pub fn conditional_jumps_given_count(&self, t: usize, k: usize) -> Result<OccupancyDistribution> {
        self.check_time(t)?;
        let event = self.count_distribution(t)?.get(k).cloned().unwrap_or_else(Rational::zero);
        if event.is_zero() {
            return Err(Error::ZeroProbabilityCount { t, k });
        }
        let entries = self.prefix_laws[t].iter().filter(|(x, _)| x.total() == k).map(|(x, p)| (x.clone(), p / &event));
        OccupancyDistribution::new(t + 1, k, entries)
    }

    /// Reachable `(t, k)`: those with `P{N_t = k} > 0`.
    pub fn reachable(&self) -> Vec<(usize, usize)> {
        (0..=self.horizon)
            .flat_map(|t| {
                let law = self.count_distribution(t).expect("in range");
                law.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).map(move |(k, _)| (t, k))
            })
            .collect()
    }

    /// Given `N_t = k`, the jumps follow the product-form model on `t + 1`
    /// cells, for every reachable `(t, k)`.
    pub fn check_m_uosp(&self) -> Result<Verdict> {
        let mut verdict = Verdict::new();
        for (t, k) in self.reachable() {
            let cond = self.conditional_jumps_given_count(t, k)?;
            let model = m_model(&self.weight, t + 1, k);
            let ok = model.as_ref().is_ok_and(|m| *m == cond);
            if !verdict.record(ok, || format!("conditional law of J_0..J_{t} given N_{t} = {k} is not product-form")) {
                break;
            }
        }
        Ok(verdict)
    }

    /// Recovers `R_t(k)` from the first path with total `k` and positive
    /// weight product, then checks `P{J_0..J_t = j} = R_t(sum j) prod a(j_h)`
    /// on every prefix.
    pub fn check_mixed_geometric_form(&self) -> Result<(Verdict, RTable)> {
        let cap = self.count_cap();
        let mut verdict = Verdict::new();
        let mut table: RTable = vec![vec![None; cap + 1]; self.horizon + 1];
        for (t, law) in self.prefix_laws.iter().enumerate() {
            for (x, p) in law {
                let w = self.weight.product(x)?;
                let k = x.total();
                if w.is_zero() {
                    verdict.record(p.is_zero(), || format!("P{{J = {x}}} = {p} but the weight product is 0"));
                    continue;
                }
                let r = table[t][k].get_or_insert_with(|| p / &w).clone();
                verdict.record(*p == r * w, || format!("P{{J = {x}}} = {p} breaks the factorization at t = {t}"));
            }
        }
        Ok((verdict, table))
    }

    /// `P{T_i = times[i] for all i, T_{len+1} > after}` by summing path probabilities.
    fn arrival_event_by_paths(&self, times: &[usize], after: usize) -> Rational {
        let mut total = Rational::zero();
        for (path, p) in self.joint() {
            if p.is_zero() {
                continue;
            }
            let arrivals = arrival_times(path);
            let matches = arrivals.len() >= times.len() && arrivals[..times.len()] == *times;
            let next_later = arrivals.get(times.len()).is_none_or(|&t| t > after);
            if matches && next_later {
                total += p;
            }
        }
        total
    }

    /// `P{Z_1 = z_1, ..., Z_k = z_k, Z_{k+1} > 0}` by path enumeration. On a
    /// finite horizon `Z_{k+1} > 0` includes "no further arrival by time M".
    pub fn interarrival_event_probability(&self, z: &[usize]) -> Result<Rational> {
        let times = partial_sums(z);
        let after = times.last().copied().unwrap_or(0);
        self.check_time(after)?;
        Ok(self.arrival_event_by_paths(&times, after))
    }

    /// `P{T_1 = t_1, ..., T_chi = t_chi, T_{chi+1} > t_chi}` by path enumeration.
    pub fn arrival_event_probability(&self, times: &[usize]) -> Result<Rational> {
        let last = check_arrival_times(times)?;
        self.check_time(last)?;
        Ok(self.arrival_event_by_paths(times, last))
    }

    /// The same arrival event through the jump identity: the jumps up to
    /// `t_chi` are the arrival multiplicities.
    pub fn arrival_event_via_jumps(&self, times: &[usize]) -> Result<Rational> {
        let last = check_arrival_times(times)?;
        self.check_time(last)?;
        self.joint_jump_density(&multiplicities(times, last))
    }

    /// `R_t(k) * prod_{h <= t} a(#{i : t_i = h})` with `t = t_chi`.
    pub fn arrival_closed_form(&self, times: &[usize], r: &RTable) -> Result<Rational> {
        let last = check_arrival_times(times)?;
        self.check_time(last)?;
        self.closed_form(&multiplicities(times, last), r)
    }

    /// `R_s(k) * prod_{h <= s} a(#{i : z_1 + ... + z_i = h})` with `s = sum z`.
    pub fn interarrival_closed_form(&self, z: &[usize], r: &RTable) -> Result<Rational> {
        let times = partial_sums(z);
        let last = times.last().copied().unwrap_or(0);
        self.check_time(last)?;
        self.closed_form(&multiplicities(&times, last), r)
    }

    fn closed_form(&self, jumps: &[usize], r: &RTable) -> Result<Rational> {
        let t = jumps.len() - 1;
        let k: usize = jumps.iter().sum();
        if k > self.count_cap() {
            return Ok(Rational::zero());
        }
        let w = self.weight.product(&Composition::new(jumps.to_vec())?)?;
        if w.is_zero() {
            return Ok(Rational::zero());
        }
        match &r[t][k] {
            Some(rv) => Ok(rv * w),
            None => Err(Error::InvalidArgument(format!("R_{t}({k}) undefined for a positive weight product"))),
        }
    }

    /// `P{N_{t+1} = k + i | N_t = k} = a(i) R_{t+1}(k + i) / R_t(k)`.
    pub fn transition_probability(&self, t: usize, k: usize, i: usize) -> Result<Rational> {
        if t >= self.horizon {
            return Err(Error::HorizonExceeded { time: t + 1, horizon: self.horizon });
        }
        let event = self.count_distribution(t)?.get(k).cloned().unwrap_or_else(Rational::zero);
        if event.is_zero() {
            return Err(Error::ZeroProbabilityCount { t, k });
        }
        if k + i > self.count_cap() {
            return Ok(Rational::zero());
        }
        let a = self.weight.get(i)?;
        if a.is_zero() {
            return Ok(Rational::zero());
        }
        let from = self.r_function(t, k)?.expect("reachable count has a positive normalizer");
        let to = self.r_function(t + 1, k + i)?.expect("a(i) > 0 keeps the normalizer positive");
        Ok(a * to / from)
    }

    /// `P{N_{t+1} = k + i | N_t = k}` straight from the prefix law at `t + 1`.
    pub fn direct_transition_probability(&self, t: usize, k: usize, i: usize) -> Result<Rational> {
        if t >= self.horizon {
            return Err(Error::HorizonExceeded { time: t + 1, horizon: self.horizon });
        }
        let mut joint = Rational::zero();
        let mut event = Rational::zero();
        for (x, p) in &self.prefix_laws[t + 1] {
            let before: usize = x.counts()[..=t].iter().sum();
            if before == k {
                event += p;
                if x.counts()[t + 1] == i {
                    joint += p;
                }
            }
        }
        if event.is_zero() {
            return Err(Error::ZeroProbabilityCount { t, k });
        }
        Ok(joint / event)
    }

    /// Transition formula against direct conditioning, and rows summing to 1.
    pub fn check_markov(&self) -> Result<Verdict> {
        let mut verdict = Verdict::new();
        let cap = self.count_cap();
        for (t, k) in self.reachable().into_iter().filter(|&(t, _)| t < self.horizon) {
            let mut row = Rational::zero();
            for i in 0..=cap + 1 {
                let formula = self.transition_probability(t, k, i)?;
                let direct = self.direct_transition_probability(t, k, i)?;
                verdict.record(formula == direct, || {
                    format!("P{{N_{} = {} | N_{t} = {k}}}: formula {formula}, direct {direct}", t + 1, k + i)
                });
                row += formula;
            }
            verdict.record(row.is_one(), || format!("transition row from N_{t} = {k} sums to {row}"));
        }
        Ok(verdict)
    }

    /// `R_{t-1}(k) = sum_l a(l) R_t(k + l)` wherever `R_{t-1}(k)` is defined;
    /// terms past the count cap are zero.
    pub fn r_recursion_check(&self) -> Result<Verdict> {
        let mut verdict = Verdict::new();
        let r = self.r_table();
        let cap = self.count_cap();
        for t in 1..=self.horizon {
            for k in 0..=cap {
                let Some(lhs) = &r[t - 1][k] else { continue };
                let mut rhs = Rational::zero();
                for l in 0..=cap - k {
                    let a = self.weight.get(l)?;
                    if a.is_zero() {
                        continue;
                    }
                    rhs += a * r[t][k + l].as_ref().expect("a(l) > 0 keeps the normalizer positive");
                }
                verdict.record(*lhs == rhs, || format!("R_{}({k}) = {lhs} but the recursion gives {rhs}", t - 1));
            }
        }
        Ok(verdict)
    }

    /// `P{N_t = 0} = R_t(0)` for every `t`.
    pub fn check_zero_count(&self) -> Result<Verdict> {
        let mut verdict = Verdict::new();
        for t in 0..=self.horizon {
            let p0 = self.count_distribution(t)?[0].clone();
            let r0 = self.r_function(t, 0)?;
            verdict.record(r0.as_ref() == Some(&p0), || format!("P{{N_{t} = 0}} = {p0} but R_{t}(0) = {r0:?}"));
        }
        Ok(verdict)
    }

    /// Exhaustive check of the four equivalent characterizations, plus the
    /// supporting identities, against a single recovered `R` table.
    pub fn check_theorem_equivalences(&self) -> Result<TheoremReport> {
        let m_uosp = self.check_m_uosp()?;
        let (mixed_geometric, recovered) = self.check_mixed_geometric_form()?;
        let from_counts = self.r_table();

        let mut r_tables_agree = Verdict::new();
        for (t, (rec_row, cnt_row)) in recovered.iter().zip(&from_counts).enumerate() {
            for (k, (rec, cnt)) in rec_row.iter().zip(cnt_row).enumerate() {
                if let Some(rec) = rec {
                    r_tables_agree.record(cnt.as_ref() == Some(rec), || {
                        format!("recovered R_{t}({k}) = {rec}, count-based R_{t}({k}) = {cnt:?}")
                    });
                }
            }
        }

        let cap = self.count_cap();
        let mut interarrival = Verdict::new();
        let mut arrival = Verdict::new();
        let mut event_identity = Verdict::new();
        let closed = |value: Result<Rational>| value.unwrap_or_else(|_| -Rational::one());
        for k in 0..=cap {
            for total in 0..=self.horizon {
                for z in gaps(k, total) {
                    let lhs = self.interarrival_event_probability(&z)?;
                    let rhs = closed(self.interarrival_closed_form(&z, &recovered));
                    interarrival.record(lhs == rhs, || format!("Z = {z:?}: enumerated {lhs}, closed form {rhs}"));
                    if k == 0 {
                        continue;
                    }
                    let times = partial_sums(&z);
                    let lhs_t = self.arrival_event_probability(&times)?;
                    let rhs_t = closed(self.arrival_closed_form(&times, &recovered));
                    arrival.record(lhs_t == rhs_t, || format!("T = {times:?}: enumerated {lhs_t}, closed form {rhs_t}"));
                    let via_jumps = self.arrival_event_via_jumps(&times)?;
                    event_identity.record(lhs_t == via_jumps && lhs_t == lhs, || {
                        format!("T = {times:?}: arrival {lhs_t}, jumps {via_jumps}, inter-arrival {lhs}")
                    });
                }
            }
        }
        Ok(TheoremReport { m_uosp, mixed_geometric, r_tables_agree, interarrival, arrival, event_identity })
    }

    /// Compares each conditional jump law against the classical closed form
    /// selected by the builtin weight: Fermi-Dirac with unit jumps,
    /// Maxwell-Boltzmann with the multinomial form, Bose-Einstein with the
    /// uniform form.
    pub fn check_classic_recovery(&self) -> Result<Verdict> {
        let kind = match self.weight.kind() {
            Some(BuiltinWeight::FermiDirac) => ClassicUosp::Strict,
            Some(BuiltinWeight::MaxwellBoltzmann) => ClassicUosp::Leq1,
            Some(BuiltinWeight::BoseEinstein) => ClassicUosp::Leq2,
            _ => return Err(Error::InvalidArgument("classic recovery needs the mb, be or fd weight".into())),
        };
        let mut verdict = Verdict::new();
        for (t, k) in self.reachable() {
            let cond = self.conditional_jumps_given_count(t, k)?;
            for (x, p) in cond.iter() {
                let times: Vec<usize> = psi(x).labels().iter().map(|l| l - 1).collect();
                let expected = match kind {
                    // Unit-jump arrivals live in 1..=c with c = t + 1 cells.
                    ClassicUosp::Strict if x.counts().iter().all(|&c| c <= 1) => {
                        let shifted: Vec<usize> = times.iter().map(|h| h + 1).collect();
                        classic_uosp_value(kind, t + 1, k, &shifted)?
                    }
                    ClassicUosp::Strict => Rational::zero(),
                    _ => classic_uosp_value(kind, t, k, &times)?,
                };
                if !verdict.record(*p == expected, || format!("t = {t}, k = {k}, jumps {x}: {p} vs {expected}")) {
                    return Ok(verdict);
                }
            }
        }
        Ok(verdict)
    }

    /// Exact path sampler over the stored joint law.
    pub fn path_sampler(&self, seed: u64) -> Result<ExactSampler<Composition>> {
        ExactSampler::new(self.joint().map(|(x, p)| (x.clone(), p.clone())), seed)
    }
}

/// Results of [`FiniteProcess::check_theorem_equivalences`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    /// Conditional jump laws are product-form.
    pub m_uosp: Verdict,
    /// Joint densities factor as `R_t(total) * prod a(j_h)`.
    pub mixed_geometric: Verdict,
    /// Recovered `R` equals `P{N_t = k} / C(a; t+1, k)` wherever defined.
    pub r_tables_agree: Verdict,
    /// Inter-arrival events match their closed form.
    pub interarrival: Verdict,
    /// Arrival-time events match their closed form.
    pub arrival: Verdict,
    /// Arrival events computed from arrival times, jumps and gaps coincide.
    pub event_identity: Verdict,
}

impl TheoremReport {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("m_uosp", &self.m_uosp),
            ("mixed_geometric", &self.mixed_geometric),
            ("r_tables_agree", &self.r_tables_agree),
            ("interarrival", &self.interarrival),
            ("arrival", &self.arrival),
            ("event_identity", &self.event_identity),
        ]
    }

    pub fn holds(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.holds)
    }

    pub fn first_discrepancy(&self) -> Option<(&'static str, &str)> {
        self.verdicts().into_iter().find_map(|(name, v)| v.witness.as_deref().map(|w| (name, w)))
    }
}

/// The classical discrete uniform order statistics closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicUosp {
    /// Unit jumps, strictly increasing arrival times in `1..=t`: `1 / binom(t, k)`.
    Strict,
    /// Nondecreasing times in `0..=t`: `k! / (j_0! ... j_t!) (t + 1)^-k`.
    Leq1,
    /// Nondecreasing times in `0..=t`: `1 / binom(t + k, k)`.
    Leq2,
}

impl fmt::Display for ClassicUosp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicUosp::Strict => "strict",
            ClassicUosp::Leq1 => "leq1",
            ClassicUosp::Leq2 => "leq2",
        })
    }
}

/// `P{T_1 = t_1, ..., T_k = t_k | N_t = k}` under the classical property `kind`.
pub fn classic_uosp_value(kind: ClassicUosp, t: usize, k: usize, times: &[usize]) -> Result<Rational> {
    if times.len() != k {
        return Err(Error::InvalidArgument(format!("expected {k} arrival times, got {}", times.len())));
    }
    match kind {
        ClassicUosp::Strict => {
            if times.iter().any(|&s| s == 0 || s > t) || times.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!("{times:?} is not strictly increasing in 1..={t}")));
            }
            Ok(from_biguint(binomial(t, k)).recip())
        }
        ClassicUosp::Leq1 | ClassicUosp::Leq2 => {
            if times.iter().any(|&s| s > t) || times.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidArgument(format!("{times:?} is not nondecreasing in 0..={t}")));
            }
            if kind == ClassicUosp::Leq2 {
                return Ok(from_biguint(binomial(t + k, k)).recip());
            }
            let jumps = Composition::new(multiplicities(times, t))?;
            let spread = num_traits::pow(BigUint::from(t + 1), k);
            Ok(from_biguint(multinomial(k, &jumps)?) / from_biguint(spread))
        }
    }
}

/// Arrival times of a jump path: arrival `i` happens at the first `t` with `N_t >= i`.
pub fn arrival_times(path: &Composition) -> Vec<usize> {
    path.counts().iter().enumerate().flat_map(|(t, &j)| std::iter::repeat_n(t, j)).collect()
}

fn multiplicities(times: &[usize], last: usize) -> Vec<usize> {
    let mut jumps = vec![0; last + 1];
    for &t in times {
        jumps[t] += 1;
    }
    jumps
}

fn partial_sums(z: &[usize]) -> Vec<usize> {
    z.iter()
        .scan(0, |acc, &g| {
            *acc += g;
            Some(*acc)
        })
        .collect()
}

fn check_arrival_times(times: &[usize]) -> Result<usize> {
    if times.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::UnorderedTimes);
    }
    times.last().copied().ok_or_else(|| Error::InvalidArgument("no arrival times given".into()))
}

/// All gap vectors of length `k` with the given sum.
fn gaps(k: usize, total: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    enumerate_compositions(k, total).expect("small").into_iter().map(Composition::into_counts).collect()
}

fn validate_law(law: &[Rational]) -> Result<()> {
    if law.is_empty() || law.iter().any(Signed::is_negative) {
        return Err(Error::InvalidArgument("terminal law must be a nonempty nonnegative table".into()));
    }
    let total: Rational = law.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidArgument(format!("terminal law sums to {total}, not 1")));
    }
    Ok(())
}

fn last_positive(law: &[Rational]) -> usize {
    law.iter().rposition(|p| !p.is_zero()).expect("validated law has mass")
}

/// Weight on `0..=cap`, rescaled so that `a(0) = 1`; the rescaling leaves
/// every conditional law unchanged.
fn process_weight(a: &WeightFunction, cap: usize) -> Result<WeightFunction> {
    let a = a.resized(cap)?;
    let a0 = a.get(0)?.clone();
    if a0.is_zero() {
        return Err(Error::InvalidArgument("a(0) must be positive for a counting process".into()));
    }
    if a0.is_one() {
        return Ok(a);
    }
    WeightFunction::from_values(a.values().iter().map(|v| v / &a0).collect())
}

fn check_path_budget(horizon: usize, cap: usize) -> Result<()> {
    // Paths of M + 1 jumps with total <= K number binom(M + 1 + K, K).
    let count = binomial(horizon + 1 + cap, cap);
    if count > BigUint::from(ENUMERATION_BUDGET) {
        return Err(Error::EnumerationTooLarge { count: count.to_string(), budget: ENUMERATION_BUDGET });
    }
    Ok(())
}

/// Truncated geometric terminal law `P{N_M = k} ∝ rho^k` on `0..=cap`.
pub fn truncated_geometric_law(rho: &Rational, cap: usize) -> Vec<Rational> {
    let masses: Vec<Rational> = (0..=cap).map(|k| num_traits::pow(rho.clone(), k)).collect();
    let total: Rational = masses.iter().sum();
    masses.into_iter().map(|m| m / &total).collect()
}

pub fn uniform_law(cap: usize) -> Vec<Rational> {
    vec![Rational::new(1.into(), (cap as u64 + 1).into()); cap + 1]
}
