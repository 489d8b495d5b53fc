//! Realized elasticity spectra and the experiments built on them: full
//! elasticity, asymptotic full elasticity, finiteness below r, and the
//! unbounded witness chains of T-block monoids.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::engine::lengths::{generic_length_set, length_set, LengthTable};
use crate::engine::{AtomSystem, Budget};
use crate::error::{Error, Result};
use crate::invariants::{asymptotic_invariants, elasticity_of_element, elasticity_of_monoid, inf_asymptotic_elasticity, AsymptoticReport};
use crate::model::group::GroupElement;
use crate::model::lengths::LengthSet;
use crate::model::presentation::{box_points, ExplicitPresentation, ImplicitMonoid, Presentation};
use crate::nice::{additive_base, interpolation_preimage, monomial, nice_pair_with_ratio, threshold_set, ThresholdSet, DEFAULT_M_CAP};
use crate::rational::{ratio, rationals_in, Rational};
use crate::zoo::tblock::{TBlockMonoid, TBlockSpec};
use crate::zoo::tblock_monoid;

pub const DEFAULT_GRADING_BOUND: u64 = 60;
pub const DEFAULT_DENOM_BOUND: u64 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: Rational,
    /// First element in sweep order with this elasticity.
    pub witness: GroupElement,
    pub min_len: u64,
    pub max_len: u64,
}

/// Realized values strictly below r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BelowR {
    pub r: Rational,
    pub count: usize,
    /// Largest max L over the witnesses of those values.
    pub max_witness_len: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub monoid: String,
    pub bound: u64,
    pub elements: usize,
    /// Ascending by value.
    pub realized: Vec<SpectrumEntry>,
    pub gap_denom_bound: u64,
    /// Rationals in [1, max realized] with denominator ≤ `gap_denom_bound` lacking a witness.
    pub gaps: Vec<Rational>,
    pub below_r: Option<BelowR>,
}

impl SpectrumReport {
    pub fn values(&self) -> Vec<Rational> {
        self.realized.iter().map(|e| e.value.clone()).collect()
    }

    pub fn witness_for(&self, q: &Rational) -> Option<&SpectrumEntry> {
        self.realized.binary_search_by(|e| e.value.cmp(q)).ok().map(|i| &self.realized[i])
    }
}

fn sort_key(g: &GroupElement, weight: i64) -> (i64, Vec<i64>) {
    (weight, g.flatten())
}

/// Non-identity elements of weight ≤ bound, in (weight, coordinates) order.
pub fn elements_up_to(p: &ExplicitPresentation, bound: u64) -> Result<Vec<GroupElement>> {
    let bound = i64::try_from(bound).map_err(|_| Error::Overflow("grading bound"))?;
    let g = p.group();
    let start = g.identity();
    let mut seen: HashSet<GroupElement> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    let weights: Vec<i64> = p.atoms().iter().map(|u| p.weight(u)).collect();
    while let Some(e) = queue.pop_front() {
        let w = p.weight(&e);
        for (u, &wu) in p.atoms().iter().zip(&weights) {
            if w + wu > bound {
                continue;
            }
            let f = g.add(&e, u)?;
            if seen.insert(f.clone()) {
                out.push(f.clone());
                queue.push_back(f);
            }
        }
    }
    out.sort_by_cached_key(|e| sort_key(e, p.weight(e)));
    Ok(out)
}

fn collect(sets: impl IntoIterator<Item = (GroupElement, LengthSet)>) -> Vec<SpectrumEntry> {
    let mut by_value: BTreeMap<Rational, SpectrumEntry> = BTreeMap::new();
    for (g, l) in sets {
        let value = l.elasticity();
        by_value.entry(value.clone()).or_insert(SpectrumEntry { value, witness: g, min_len: l.min(), max_len: l.max() });
    }
    by_value.into_values().collect()
}

/// All distinct ρ(g) over the sweep: elements of grading value ≤ bound for
/// explicit presentations, nonzero points of [0, bound]^d for implicit ones.
pub fn realized_spectrum(p: &Presentation, bound: u64, budget: Budget) -> Result<SpectrumReport> {
    let (realized, elements, below_r) = match p {
        Presentation::Explicit(ep) => {
            let elems = elements_up_to(ep, bound)?;
            let sys = AtomSystem::from_explicit(ep)?;
            let mut table = LengthTable::new(&sys, budget);
            let mut sets = Vec::with_capacity(elems.len());
            for g in &elems {
                let l = table.lengths(&g.flatten())?.ok_or_else(|| Error::Internal(format!("{g} lost its factorization")))?;
                sets.push((g.clone(), l));
            }
            let n = sets.len();
            let realized = collect(sets);
            let below = if ep.atoms().is_empty() {
                None
            } else {
                let (r, _) = inf_asymptotic_elasticity(ep, budget)?;
                let under: Vec<&SpectrumEntry> = realized.iter().filter(|e| e.value < r).collect();
                Some(BelowR {
                    count: under.len(),
                    max_witness_len: under.iter().map(|e| e.max_len).max().unwrap_or(0),
                    r,
                })
            };
            (realized, n, below)
        }
        Presentation::Implicit(m) => {
            let corner = vec![bound; m.ambient_dim()];
            let mut pts: Vec<Vec<u64>> =
                box_points(&corner).into_iter().filter(|v| v.iter().any(|&c| c > 0) && m.contains(v)).collect();
            pts.sort_by_cached_key(|v| (v.iter().sum::<u64>(), v.clone()));
            let mut sets = Vec::with_capacity(pts.len());
            for v in &pts {
                let g = GroupElement::nat(v)?;
                let l = match m.closed_form_lengths(v) {
                    Some(l) => l,
                    None => generic_length_set(p, &g, budget)?,
                };
                sets.push((g, l));
            }
            let n = sets.len();
            (collect(sets), n, None)
        }
    };
    let top = realized.last().map_or_else(Rational::one, |e| e.value.clone());
    let have: HashSet<&Rational> = realized.iter().map(|e| &e.value).collect();
    let gaps = rationals_in(&Rational::one(), &top, DEFAULT_DENOM_BOUND).into_iter().filter(|q| !have.contains(q)).collect();
    Ok(SpectrumReport {
        monoid: p.name(),
        bound,
        elements,
        realized,
        gap_denom_bound: DEFAULT_DENOM_BOUND,
        gaps,
        below_r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// An atom, the accepted-elasticity witness or the r-minimizing atom.
    Endpoint,
    /// a·b^t for a threshold element t.
    ThresholdElement,
    /// a^{k′} b^{ℓ′} for the nice pair with ℓ′/k′ solving the interpolation formula.
    Interpolation,
    /// Direct search over a^k b^ℓ.
    PowerGrid,
    /// Spectrum sweep.
    Sweep,
}

impl WitnessSource {
    pub fn label(self) -> &'static str {
        match self {
            WitnessSource::Endpoint => "endpoint",
            WitnessSource::ThresholdElement => "threshold",
            WitnessSource::Interpolation => "interpolation",
            WitnessSource::PowerGrid => "power_grid",
            WitnessSource::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub element: GroupElement,
    pub source: WitnessSource,
    pub min_len: u64,
    pub max_len: u64,
    /// Present when the witness certifies an asymptotic elasticity.
    pub asymptotic: Option<AsymptoticReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Witness(Witness),
    /// Nothing found within budget; never a refutation.
    Unresolved(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCheck {
    pub q: Rational,
    pub resolution: Resolution,
}

impl QCheck {
    pub fn is_witnessed(&self) -> bool {
        matches!(self.resolution, Resolution::Witness(_))
    }

    pub fn status(&self) -> &'static str {
        match self.resolution {
            Resolution::Witness(_) => "witness",
            Resolution::Unresolved(_) => "unresolved",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullElasticityReport {
    pub rho: Rational,
    pub r: Rational,
    pub accepted_witness: Option<GroupElement>,
    pub minimizing_atom: GroupElement,
    pub denom_bound: u64,
    /// One check per q ∈ [r, ρ(H)] with denominator ≤ `denom_bound`.
    pub checks: Vec<QCheck>,
}

impl FullElasticityReport {
    /// Every rational of the interval [r, ρ(H)] in range has a witness.
    pub fn interval_realized(&self) -> bool {
        self.checks.iter().all(QCheck::is_witnessed)
    }

    /// The fully elastic criterion r = 1.
    pub fn r_is_one(&self) -> bool {
        self.r.is_one()
    }

    pub fn unresolved(&self) -> Vec<&Rational> {
        self.checks.iter().filter(|c| !c.is_witnessed()).map(|c| &c.q).collect()
    }
}

/// Base pair for the constructions: b is an atom minimizing ρ̄, c an
/// element with ρ(c) = ρ(H), a = c^M is normalized so that nice pairs
/// split additively.
struct Construction {
    p: ExplicitPresentation,
    rho: Rational,
    r: Rational,
    c: Option<GroupElement>,
    b: GroupElement,
    a: Option<GroupElement>,
    threshold: Option<ThresholdSet>,
    budget: Budget,
}

fn lengths_of(p: &ExplicitPresentation, g: &GroupElement, budget: Budget) -> Result<LengthSet> {
    length_set(&Presentation::Explicit(p.clone()), g, budget)
}

fn tolerate<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) if e.is_budget() => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

impl Construction {
    fn new(p: &ExplicitPresentation, t_bound: u64, budget: Budget) -> Result<Self> {
        let rep = elasticity_of_monoid(p, budget)?;
        let (r, bi) = inf_asymptotic_elasticity(p, budget)?;
        let b = p.atoms()[bi].clone();
        let c = rep.witness.map(|(w, _)| w);
        let mut a = None;
        let mut threshold = None;
        if let Some(c) = &c {
            if let Ok(base) = tolerate(additive_base(p, c, &b, DEFAULT_M_CAP, budget))? {
                if let Ok(ts) = tolerate(threshold_set(p, &base.a, &b, t_bound, budget))? {
                    threshold = Some(ts);
                }
                a = Some(base.a);
            }
        }
        Ok(Construction { p: p.clone(), rho: rep.value, r, c, b, a, threshold, budget })
    }

    /// Candidate a^k b^ℓ (or endpoint element) intended to have ρ = ρ̄ = q.
    fn candidate(&self, q: &Rational) -> Result<std::result::Result<(GroupElement, WitnessSource), String>> {
        if *q == self.rho {
            if let Some(c) = &self.c {
                return Ok(Ok((c.clone(), WitnessSource::Endpoint)));
            }
        }
        let (Some(a), Some(ts)) = (&self.a, &self.threshold) else {
            return Ok(Err("no normalized base pair".into()));
        };
        if let Some(e) = ts.elements.iter().find(|e| e.elasticity == *q) {
            return Ok(Ok((monomial(&self.p, a, &self.b, 1, e.t as i64)?, WitnessSource::ThresholdElement)));
        }
        for w in ts.elements.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            if !(hi.elasticity < *q && *q < lo.elasticity) {
                continue;
            }
            let Some(x) = interpolation_preimage(lo, hi, q) else { continue };
            return match tolerate(nice_pair_with_ratio(&self.p, a, &self.b, &x, self.budget))? {
                Ok(cert) => Ok(Ok((cert.element, WitnessSource::Interpolation))),
                Err(reason) => Ok(Err(reason)),
            };
        }
        Ok(Err("q outside the threshold range".into()))
    }

    fn grid(&self, q: &Rational, k_max: u64, l_max: u64) -> Result<Option<GroupElement>> {
        let bases: Vec<&GroupElement> = self.a.iter().chain(self.c.iter()).collect();
        for base in bases {
            for k in 1..=k_max as i64 {
                for l in 0..=l_max as i64 {
                    let g = monomial(&self.p, base, &self.b, k, l)?;
                    if elasticity_of_element(&Presentation::Explicit(self.p.clone()), &g, self.budget)? == *q {
                        return Ok(Some(g));
                    }
                }
            }
        }
        Ok(None)
    }

    fn witness(&self, g: GroupElement, source: WitnessSource) -> Result<Witness> {
        let l = lengths_of(&self.p, &g, self.budget)?;
        Ok(Witness { element: g, source, min_len: l.min(), max_len: l.max(), asymptotic: None })
    }

    fn elasticity_check(&self, q: &Rational, denom_bound: u64) -> Result<QCheck> {
        let done = |w: Witness| Ok(QCheck { q: q.clone(), resolution: Resolution::Witness(w) });
        if q.is_one() {
            return done(self.witness(self.b.clone(), WitnessSource::Endpoint)?);
        }
        let reason = match self.candidate(q)? {
            Ok((g, source)) => {
                let w = self.witness(g, source)?;
                if ratio(w.max_len as i64, w.min_len as i64) == *q {
                    return done(w);
                }
                format!("{} candidate missed", source.label())
            }
            Err(reason) => reason,
        };
        match tolerate(self.grid(q, denom_bound, 3 * denom_bound))? {
            Ok(Some(g)) => done(self.witness(g, WitnessSource::PowerGrid)?),
            Ok(None) => Ok(QCheck { q: q.clone(), resolution: Resolution::Unresolved(reason) }),
            Err(budget) => Ok(QCheck { q: q.clone(), resolution: Resolution::Unresolved(budget) }),
        }
    }

    fn asymptotic_check(&self, q: &Rational) -> Result<QCheck> {
        let mut tried: Vec<(GroupElement, WitnessSource)> = Vec::new();
        if *q == self.r {
            tried.push((self.b.clone(), WitnessSource::Endpoint));
        }
        let mut reason = String::from("no candidate");
        match self.candidate(q)? {
            Ok(c) => tried.push(c),
            Err(r) => reason = r,
        }
        for (g, source) in tried {
            match tolerate(asymptotic_invariants(&self.p, &g, self.budget))? {
                Ok(rep) if rep.rho_bar == *q => {
                    let mut w = self.witness(g, source)?;
                    w.asymptotic = Some(rep);
                    return Ok(QCheck { q: q.clone(), resolution: Resolution::Witness(w) });
                }
                Ok(rep) => reason = format!("{} candidate has asymptotic elasticity {}", source.label(), rep.rho_bar),
                Err(b) => reason = b,
            }
        }
        Ok(QCheck { q: q.clone(), resolution: Resolution::Unresolved(reason) })
    }
}

fn threshold_bound(denom_bound: u64) -> u64 {
    2 * denom_bound.max(1)
}

/// For each q ∈ [r, ρ(H)] with denominator ≤ denom_bound, a witness with
/// ρ(witness) = q: endpoints, threshold elements, the interpolation nice
/// pair, a grid of a^k b^ℓ and finally a spectrum sweep.
pub fn check_fully_elastic(p: &ExplicitPresentation, denom_bound: u64, budget: Budget) -> Result<FullElasticityReport> {
    if denom_bound == 0 {
        return Err(Error::Precondition("denominator bound must be positive".into()));
    }
    let cons = Construction::new(p, threshold_bound(denom_bound), budget)?;
    let qs = rationals_in(&cons.r, &cons.rho, denom_bound);
    let mut checks: Vec<QCheck> =
        qs.par_iter().map(|q| cons.elasticity_check(q, denom_bound)).collect::<Result<Vec<_>>>()?;
    if checks.iter().any(|c| !c.is_witnessed()) {
        let sweep = realized_spectrum(&Presentation::Explicit(p.clone()), DEFAULT_GRADING_BOUND, budget)?;
        for c in checks.iter_mut().filter(|c| !c.is_witnessed()) {
            if let Some(e) = sweep.witness_for(&c.q) {
                c.resolution = Resolution::Witness(cons.witness(e.witness.clone(), WitnessSource::Sweep)?);
            }
        }
    }
    for c in &checks {
        if let Resolution::Witness(w) = &c.resolution {
            let again = lengths_of(p, &w.element, budget)?.elasticity();
            if again != c.q {
                return Err(Error::Internal(format!("witness {} recomputes to {again}, not {}", w.element, c.q)));
            }
        }
    }
    Ok(FullElasticityReport {
        rho: cons.rho,
        r: cons.r,
        accepted_witness: cons.c,
        minimizing_atom: cons.b,
        denom_bound,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticFullReport {
    pub rho: Rational,
    pub r: Rational,
    pub denom_bound: u64,
    /// r = ρ(H): the value set of ρ̄ is the single point ρ(H) and nothing is searched.
    pub degenerate: bool,
    pub checks: Vec<QCheck>,
}

impl AsymptoticFullReport {
    pub fn interval_realized(&self) -> bool {
        self.checks.iter().all(QCheck::is_witnessed)
    }
}

/// For each q ∈ [r, ρ(H)] with denominator ≤ denom_bound, an element with
/// ρ̄ = q certified by its power-fiber basis.
pub fn check_asymptotic_full_elasticity(
    p: &ExplicitPresentation,
    denom_bound: u64,
    budget: Budget,
) -> Result<AsymptoticFullReport> {
    if denom_bound == 0 {
        return Err(Error::Precondition("denominator bound must be positive".into()));
    }
    let rho = elasticity_of_monoid(p, budget)?.value;
    let (r, _) = inf_asymptotic_elasticity(p, budget)?;
    if r >= rho {
        return Ok(AsymptoticFullReport { rho, r, denom_bound, degenerate: true, checks: Vec::new() });
    }
    let cons = Construction::new(p, threshold_bound(denom_bound), budget)?;
    let qs = rationals_in(&cons.r, &cons.rho, denom_bound);
    let checks = qs.par_iter().map(|q| cons.asymptotic_check(q)).collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticFullReport { rho, r, denom_bound, degenerate: false, checks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitPointReport {
    pub r: Rational,
    pub epsilon: Rational,
    /// r − ε.
    pub cutoff: Rational,
    pub bound: u64,
    /// Realized values ≤ cutoff at `bound`.
    pub below: Vec<SpectrumEntry>,
    /// Realized values ≤ cutoff at 2·`bound`.
    pub below_doubled: Vec<SpectrumEntry>,
    /// Values present at 2·bound but not at bound.
    pub new_values: Vec<Rational>,
    /// Largest max L over the witnesses in `below_doubled`.
    pub max_len_threshold: u64,
}

impl LimitPointReport {
    /// No new value at or below the cutoff after doubling the bound once.
    pub fn stabilized(&self) -> bool {
        self.new_values.is_empty()
    }
}

/// Realized values in [1, r − ε] at the bound and at twice the bound.
/// Only a heuristic for finiteness: stabilization under one doubling.
pub fn check_limit_point_structure(
    p: &ExplicitPresentation,
    epsilon: &Rational,
    bound: u64,
    budget: Budget,
) -> Result<LimitPointReport> {
    if !epsilon.is_positive() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    let doubled_bound = bound.checked_mul(2).ok_or(Error::Overflow("doubled bound"))?;
    let pp = Presentation::Explicit(p.clone());
    let (r, _) = inf_asymptotic_elasticity(p, budget)?;
    let cutoff = &r - epsilon;
    let small = realized_spectrum(&pp, bound, budget)?;
    let large = realized_spectrum(&pp, doubled_bound, budget)?;
    let keep = |rep: SpectrumReport| -> Vec<SpectrumEntry> { rep.realized.into_iter().filter(|e| e.value <= cutoff).collect() };
    let below = keep(small);
    let below_doubled = keep(large);
    let old: HashSet<&Rational> = below.iter().map(|e| &e.value).collect();
    let new_values = below_doubled.iter().map(|e| e.value.clone()).filter(|v| !old.contains(v)).collect();
    let max_len_threshold = below_doubled.iter().map(|e| e.max_len).max().unwrap_or(0);
    Ok(LimitPointReport {
        r,
        epsilon: epsilon.clone(),
        cutoff,
        bound,
        below,
        below_doubled,
        new_values,
        max_len_threshold,
    })
}

/// ρ̄(g) for every non-identity element of grading value ≤ bound.
pub fn asymptotic_values(p: &ExplicitPresentation, bound: u64, budget: Budget) -> Result<Vec<(GroupElement, Rational)>> {
    elements_up_to(p, bound)?
        .into_iter()
        .map(|g| asymptotic_invariants(p, &g, budget).map(|rep| (g, rep.rho_bar)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    pub k: u64,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
    pub product: Vec<u64>,
    pub lengths: LengthSet,
    pub rho: Rational,
    pub gap: u64,
    /// ρ = (kn+2)/2 and max − min = kn.
    pub formula_holds: bool,
}

#[derive(Debug, Clone)]
pub struct WitnessChain {
    pub monoid: TBlockMonoid,
    /// |G|.
    pub n: u64,
    pub component: usize,
    pub entries: Vec<ChainEntry>,
}

impl WitnessChain {
    /// ρ(c_k d_k) strictly increases along the chain.
    pub fn increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].rho < w[1].rho)
    }
}

fn scaled_plus_one(k: u64, alpha: u64, n: u64) -> Result<u64> {
    k.checked_mul(alpha)
        .and_then(|v| v.checked_mul(n))
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("chain exponent"))
}

/// Atoms c_k, d_k of a T-block monoid with a component of rank ≥ 2 whose
/// product has ρ = (kn+2)/2 and max L − min L = kn, n = |G|. With
/// g = Σ ι(pᵢ) over that component: if g = 0 the atoms live in the
/// component alone; otherwise −g ∈ G₀ is attached to both and the
/// exponents come from the smallest atom α of the component.
pub fn weakly_krull_witness_chain(spec: TBlockSpec, k_max: u64, budget: Budget) -> Result<WitnessChain> {
    if k_max == 0 {
        return Err(Error::Precondition("k ranges over 1..=k_max; k_max must be positive".into()));
    }
    let comp = spec
        .components
        .iter()
        .position(|&s| s >= 2)
        .ok_or_else(|| Error::Precondition("no seminormal component of rank at least 2".into()))?;
    let group = spec.group.clone();
    let n = group.order().ok_or_else(|| Error::Precondition("class group is infinite".into()))?;
    let mut g = group.identity();
    for x in &spec.iota[comp] {
        g = group.add(&g, x)?;
    }
    let monoid = tblock_monoid(spec)?;
    let s = monoid.spec().components[comp];
    let ranks = monoid.spec().components.clone();
    let g0_len = monoid.spec().g0.len();
    let (s_part, alpha) = if g.is_identity() {
        (vec![0u64; g0_len], vec![1u64; s])
    } else {
        let neg = group.neg(&g)?;
        let slot = monoid.slot(&neg).ok_or_else(|| Error::Precondition(format!("−{g} = {neg} is not in G0")))?;
        let mut sp = vec![0u64; g0_len];
        sp[slot] = 1;
        (sp, monoid.minimal_component_atom(comp)?)
    };
    let pres = Presentation::implicit(monoid.clone());
    let mut entries = Vec::new();
    for k in 1..=k_max {
        let mut tc: Vec<Vec<u64>> = ranks.iter().map(|&r| vec![0u64; r]).collect();
        let mut td = tc.clone();
        tc[comp][0] = 1;
        td[comp][0] = scaled_plus_one(k, alpha[0], n)?;
        for j in 1..s {
            tc[comp][j] = scaled_plus_one(k, alpha[j], n)?;
            td[comp][j] = 1;
        }
        let c = monoid.point(&s_part, &tc)?;
        let d = monoid.point(&s_part, &td)?;
        for (name, v) in [("c", &c), ("d", &d)] {
            if !monoid.is_atom(v) {
                return Err(Error::Internal(format!("{name}_{k} = {v:?} is not an atom")));
            }
        }
        let product: Vec<u64> = c.iter().zip(&d).map(|(x, y)| x + y).collect();
        let lengths = generic_length_set(&pres, &GroupElement::nat(&product)?, budget)?;
        let rho = lengths.elasticity();
        let gap = lengths.max() - lengths.min();
        let kn = k.checked_mul(n).ok_or(Error::Overflow("kn"))?;
        let formula_holds = rho == ratio(kn as i64 + 2, 2) && gap == kn;
        entries.push(ChainEntry { k, c, d, product, lengths, rho, gap, formula_holds });
    }
    Ok(WitnessChain { monoid, n, component: comp, entries })
}

/// {A/B in lowest terms : 1 ≤ A/B ≤ rho, (A − B) | gap, B ≤ denom_bound}.
/// Without a denominator bound the set is infinite whenever gap > 0.
pub fn chain_rationals(rho: &Rational, gap: u64, denom_bound: u64) -> Vec<Rational> {
    if gap == 0 {
        return vec![Rational::one()];
    }
    rationals_in(&Rational::one(), rho, denom_bound)
        .into_iter()
        .filter(|q| {
            let d = (q.numer() - q.denom()).to_u64().unwrap_or(u64::MAX);
            d == 0 || gap % d == 0
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRationalCheck {
    pub k: u64,
    pub q: Rational,
    /// c_k·d_k·0^x, or c_k for q = 1.
    pub element: Vec<u64>,
    pub lengths: LengthSet,
}

impl ChainRationalCheck {
    pub fn realized(&self) -> bool {
        self.lengths.elasticity() == self.q
    }
}

/// Builds c_k·d_k·0^x with ρ = q for every q in the chain set of each entry
/// with k ≤ k_verify, and recomputes its set of lengths. The prime 0 ∈ G₀
/// adds x to every length.
pub fn verify_chain_rationals(
    chain: &WitnessChain,
    k_verify: u64,
    denom_bound: u64,
    budget: Budget,
) -> Result<Vec<ChainRationalCheck>> {
    let zero = chain.monoid.zero_slot().ok_or_else(|| Error::Precondition("0 is not in G0; no prime element".into()))?;
    let pres = Presentation::implicit(chain.monoid.clone());
    let mut out = Vec::new();
    for e in chain.entries.iter().filter(|e| e.k <= k_verify) {
        let (lo, hi) = (e.lengths.min() as i64, e.lengths.max() as i64);
        for q in chain_rationals(&e.rho, e.gap, denom_bound) {
            let element = if q.is_one() {
                e.c.clone()
            } else {
                let (a, b) = (q.numer().to_i64().unwrap(), q.denom().to_i64().unwrap());
                let num = b * hi - a * lo;
                if num < 0 || num % (a - b) != 0 {
                    return Err(Error::Internal(format!("{q} has no padding exponent for L = {}", e.lengths)));
                }
                let mut v = e.product.clone();
                v[zero] += (num / (a - b)) as u64;
                v
            };
            let lengths = generic_length_set(&pres, &GroupElement::nat(&element)?, budget)?;
            out.push(ChainRationalCheck { k: e.k, q, element, lengths });
        }
    }
    Ok(out)
}

