//! Nice pairs (k, ℓ) with respect to (a, b): max and min lengths of
//! (a^k b^ℓ)^t are additive in t. Certificates, additive splittings of
//! c^{kM} b^ℓ, threshold sets and the interpolation formula.

pub mod lemma32;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::engine::factor::{longest_factorization, max_length, min_length, shortest_factorization};
use crate::engine::{hilbert_basis, AtomSystem, Budget, LinearSystem};
use crate::error::{Error, Result};
use crate::invariants::{asymptotic_invariants, AsymptoticReport};
use crate::model::group::GroupElement;
use crate::model::presentation::{ExplicitPresentation, Presentation};
use crate::rational::{from_int, ratio, Rational};

pub use lemma32::{lemma32_decompose, Lemma32Output};

/// k·a + ℓ·b (written multiplicatively a^k b^ℓ).
pub fn monomial(p: &ExplicitPresentation, a: &GroupElement, b: &GroupElement, k: i64, l: i64) -> Result<GroupElement> {
    p.group().combine(&[(k, a), (l, b)])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePairCertificate {
    pub k: u64,
    pub l: u64,
    pub element: GroupElement,
    pub max_len: u64,
    pub min_len: u64,
    /// ρ*(a^k b^ℓ) = max L and ρ_*(a^k b^ℓ) = min L, from the power-fiber basis.
    pub asymptotic: AsymptoticReport,
}

impl NicePairCertificate {
    pub fn elasticity(&self) -> Rational {
        ratio(self.max_len as i64, self.min_len as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub k: u64,
    pub l: u64,
    pub element: GroupElement,
    /// Smallest t where max L(c^t) ≠ t·max L(c) or min L(c^t) ≠ t·min L(c).
    pub t: u64,
    pub max_len: u64,
    pub min_len: u64,
    pub max_len_t: u64,
    pub min_len_t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceOutcome {
    Nice(NicePairCertificate),
    NotNice(Refutation),
}

impl NiceOutcome {
    pub fn is_nice(&self) -> bool {
        matches!(self, NiceOutcome::Nice(_))
    }

    pub fn certificate(&self) -> Option<&NicePairCertificate> {
        match self {
            NiceOutcome::Nice(c) => Some(c),
            NiceOutcome::NotNice(_) => None,
        }
    }
}

fn is_int(q: &Rational, v: u64) -> bool {
    *q == from_int(v as i64)
}

/// Decides niceness exactly: (k, ℓ) is nice iff ρ*(c) = max L(c) and
/// ρ_*(c) = min L(c) for c = a^k b^ℓ, since max L is superadditive and
/// min L subadditive along powers.
pub fn is_nice(
    p: &ExplicitPresentation,
    a: &GroupElement,
    b: &GroupElement,
    k: u64,
    l: u64,
    budget: Budget,
) -> Result<NiceOutcome> {
    if k == 0 && l == 0 {
        return Err(Error::Precondition("(k, l) = (0, 0)".into()));
    }
    let ki = i64::try_from(k).map_err(|_| Error::Overflow("k"))?;
    let li = i64::try_from(l).map_err(|_| Error::Overflow("l"))?;
    let c = monomial(p, a, b, ki, li)?;
    let pp = Presentation::Explicit(p.clone());
    let rep = asymptotic_invariants(p, &c, budget)?;
    let mx = max_length(&pp, &c, budget)?;
    let mn = min_length(&pp, &c, budget)?;
    if is_int(&rep.rho_star, mx) && is_int(&rep.rho_lower_star, mn) {
        return Ok(NiceOutcome::Nice(NicePairCertificate { k, l, element: c, max_len: mx, min_len: mn, asymptotic: rep }));
    }
    for t in 2..=rep.stabilization_n {
        let ct = p.group().scale(&c, t as i64)?;
        let mxt = max_length(&pp, &ct, budget)?;
        let mnt = min_length(&pp, &ct, budget)?;
        if mxt != t * mx || mnt != t * mn {
            return Ok(NiceOutcome::NotNice(Refutation {
                k,
                l,
                element: c,
                t,
                max_len: mx,
                min_len: mn,
                max_len_t: mxt,
                min_len_t: mnt,
            }));
        }
    }
    Err(Error::Internal(format!("{c} fails the certificate but no power up to N refutes it")))
}

/// Direct check of the definition for t = 1..=t_max.
pub fn additive_up_to(p: &Presentation, c: &GroupElement, t_max: u64, budget: Budget) -> Result<bool> {
    let mx = max_length(p, c, budget)?;
    let mn = min_length(p, c, budget)?;
    for t in 2..=t_max {
        let ct = p.group().scale(c, t as i64)?;
        if max_length(p, &ct, budget)? != t * mx || min_length(p, &ct, budget)? != t * mn {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nice pair (k′, ℓ′) with ℓ′/k′ = x: for x = m/n the element a^n b^m
/// has a stabilization exponent N, and the smallest N′ ≤ N with
/// max L(c^{N′}) = N′ρ*(c) and min L(c^{N′}) = N′ρ_*(c) gives (N′n, N′m).
pub fn nice_pair_with_ratio(
    p: &ExplicitPresentation,
    a: &GroupElement,
    b: &GroupElement,
    x: &Rational,
    budget: Budget,
) -> Result<NicePairCertificate> {
    if x.is_negative() {
        return Err(Error::Precondition("ratio must be nonnegative".into()));
    }
    let m = x.numer().to_u64().ok_or(Error::Overflow("ratio numerator"))?;
    let n = x.denom().to_u64().ok_or(Error::Overflow("ratio denominator"))?;
    let c = monomial(p, a, b, n as i64, m as i64)?;
    let rep = asymptotic_invariants(p, &c, budget)?;
    let pp = Presentation::Explicit(p.clone());
    for s in 1..=rep.stabilization_n {
        let cs = p.group().scale(&c, s as i64)?;
        let mx = max_length(&pp, &cs, budget)?;
        let mn = min_length(&pp, &cs, budget)?;
        let sr = from_int(s as i64);
        if from_int(mx as i64) == &rep.rho_star * &sr && from_int(mn as i64) == &rep.rho_lower_star * &sr {
            let k = s * n;
            let l = s * m;
            return match is_nice(p, a, b, k, l, budget)? {
                NiceOutcome::Nice(cert) => Ok(cert),
                NiceOutcome::NotNice(r) => Err(Error::Internal(format!("({k}, {l}) refuted at t = {}", r.t))),
            };
        }
    }
    Err(Error::Internal("stabilization exponent did not certify".into()))
}

/// A generator (x, y) of the kernel-pair monoid over powers c^k b^ℓ:
/// π(x) = π(y) = c^k b^ℓ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairGenerator {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub k: u64,
    pub l: i64,
}

/// Normalized base a = c^M with the generators used to split c^{kM} b^ℓ
/// into k pieces a·b^{ℓⱼ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveBase {
    pub c: GroupElement,
    pub b: GroupElement,
    /// Product of the distinct positive k-values among the generators.
    pub m: u64,
    pub a: GroupElement,
    pub generators: Vec<PairGenerator>,
}

fn dominated(small: &PairGenerator, big: &PairGenerator) -> bool {
    small != big
        && small.k <= big.k
        && small.x.iter().zip(&big.x).all(|(u, v)| u <= v)
        && small.y.iter().zip(&big.y).all(|(u, v)| u <= v)
}

pub const DEFAULT_M_CAP: u64 = 1 << 20;

/// Generators of {(x, y) : π(x) = π(y) = c^k b^ℓ, k ≥ 0, ℓ ∈ Z} from the
/// Hilbert basis of the lifted system with ℓ = ℓ⁺ − ℓ⁻, and M from their
/// k-values (capped).
pub fn additive_base(
    p: &ExplicitPresentation,
    c: &GroupElement,
    b: &GroupElement,
    m_cap: u64,
    budget: Budget,
) -> Result<AdditiveBase> {
    let g = p.group();
    let m = p.atoms().len();
    let atoms: Vec<Vec<i64>> = p.atoms().iter().map(|u| u.flatten()).collect();
    let zero = vec![0i64; atoms.first().map_or(0, |v| v.len())];
    let neg = |v: &Vec<i64>| v.iter().map(|&x| -x).collect::<Vec<i64>>();
    let cf = c.flatten();
    let bf = b.flatten();
    // variables: x (m), y (m), k, ℓ⁺, ℓ⁻
    let mut block_x: Vec<Vec<i64>> = atoms.clone();
    block_x.extend(std::iter::repeat(zero.clone()).take(m));
    block_x.extend([neg(&cf), neg(&bf), bf.clone()]);
    let mut block_y: Vec<Vec<i64>> = std::iter::repeat(zero.clone()).take(m).collect();
    block_y.extend(atoms.iter().cloned());
    block_y.extend([neg(&cf), neg(&bf), bf.clone()]);
    let sys = LinearSystem::from_group_blocks(g, &[block_x, block_y])?;
    let basis = hilbert_basis(&sys, budget)?;
    let mut gens: Vec<PairGenerator> = basis
        .solutions
        .iter()
        .filter(|s| s[..2 * m].iter().any(|&v| v > 0))
        .map(|s| PairGenerator {
            x: s[..m].to_vec(),
            y: s[m..2 * m].to_vec(),
            k: s[2 * m],
            l: s[2 * m + 1] as i64 - s[2 * m + 2] as i64,
        })
        .collect();
    gens.sort();
    gens.dedup();
    let minimal: Vec<PairGenerator> =
        gens.iter().filter(|g| !gens.iter().any(|h| dominated(h, g))).cloned().collect();
    let mut ks: Vec<u64> = minimal.iter().map(|g| g.k).filter(|&k| k > 0).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut mm = 1u64;
    for k in ks {
        mm = mm.checked_mul(k).filter(|&v| v <= m_cap).ok_or_else(|| Error::Budget {
            limit: m_cap,
            context: "normalizing exponent M".into(),
        })?;
    }
    let a = g.scale(c, mm as i64)?;
    Ok(AdditiveBase { c: c.clone(), b: b.clone(), m: mm, a, generators: minimal })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    /// ℓ₁, …, ℓ_k with Σ ℓⱼ = ℓ.
    pub parts: Vec<i64>,
    pub part_max: Vec<u64>,
    pub part_min: Vec<u64>,
    pub max_len: u64,
    pub min_len: u64,
}

/// Writes a generator multiset for (x, y, k, ℓ) by depth-first search.
fn decompose_pair(
    gens: &[PairGenerator],
    x: &mut Vec<u64>,
    y: &mut Vec<u64>,
    k: u64,
    l: i64,
    from: usize,
    used: &mut Vec<usize>,
    nodes: &mut u64,
    limit: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > limit {
        return Err(Error::Budget { limit, context: "kernel-pair decomposition".into() });
    }
    if x.iter().all(|&v| v == 0) && y.iter().all(|&v| v == 0) {
        return Ok(k == 0 && l == 0);
    }
    for (i, g) in gens.iter().enumerate().skip(from) {
        if g.k > k
            || g.x.iter().zip(x.iter()).any(|(u, v)| u > v)
            || g.y.iter().zip(y.iter()).any(|(u, v)| u > v)
        {
            continue;
        }
        for (v, u) in x.iter_mut().zip(&g.x) {
            *v -= u;
        }
        for (v, u) in y.iter_mut().zip(&g.y) {
            *v -= u;
        }
        used.push(i);
        if decompose_pair(gens, x, y, k - g.k, l - g.l, i, used, nodes, limit)? {
            return Ok(true);
        }
        used.pop();
        for (v, u) in x.iter_mut().zip(&g.x) {
            *v += u;
        }
        for (v, u) in y.iter_mut().zip(&g.y) {
            *v += u;
        }
    }
    Ok(false)
}

/// ℓ₁, …, ℓ_k with Σ ℓⱼ = ℓ and max/min L(a^k b^ℓ) = Σ max/min L(a b^{ℓⱼ})
/// for the normalized base a = c^M: take a shortest and a longest
/// factorization of c^{kM} b^ℓ, split the pair into generators and group
/// the generators into k blocks of total k-weight M.
pub fn decompose_nice(
    p: &ExplicitPresentation,
    base: &AdditiveBase,
    k: u64,
    l: u64,
    budget: Budget,
) -> Result<NiceDecomposition> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let ki = i64::try_from(k).map_err(|_| Error::Overflow("k"))?;
    let li = i64::try_from(l).map_err(|_| Error::Overflow("l"))?;
    let target = monomial(p, &base.a, &base.b, ki, li)?;
    let sys = AtomSystem::from_explicit(p)?;
    let not_member = || Error::NotMember(target.to_string());
    let x = shortest_factorization(&sys, &target.flatten(), budget)?.ok_or_else(not_member)?;
    let y = longest_factorization(&sys, &target.flatten(), budget)?.ok_or_else(not_member)?;
    let min_len: u64 = x.iter().sum();
    let max_len: u64 = y.iter().sum();
    if k == 1 {
        return Ok(NiceDecomposition {
            parts: vec![li],
            part_max: vec![max_len],
            part_min: vec![min_len],
            max_len,
            min_len,
        });
    }
    let km = k.checked_mul(base.m).ok_or(Error::Overflow("kM"))?;
    let mut used = Vec::new();
    let mut nodes = 0u64;
    let (mut xr, mut yr) = (x.clone(), y.clone());
    if !decompose_pair(&base.generators, &mut xr, &mut yr, km, li, 0, &mut used, &mut nodes, budget.nodes)? {
        return Err(Error::Internal(format!("extremal pair of {target} is not a sum of generators")));
    }
    // group generator multiplicities by their positive k-value
    let mut kvals: Vec<u64> = base.generators.iter().map(|g| g.k).filter(|&v| v > 0).collect();
    kvals.sort_unstable();
    kvals.dedup();
    let mut per_value: Vec<Vec<usize>> = vec![Vec::new(); kvals.len()];
    let mut zero_k: Vec<usize> = Vec::new();
    for &i in &used {
        let kv = base.generators[i].k;
        if kv == 0 {
            zero_k.push(i);
        } else {
            per_value[kvals.binary_search(&kv).unwrap()].push(i);
        }
    }
    let counts: Vec<u64> = per_value.iter().map(|v| v.len() as u64).collect();
    let pieces = if kvals.is_empty() {
        return Err(Error::Internal("no generator carries a power of c".into()));
    } else {
        lemma32_decompose(&kvals, &counts, k)?.to_vecs()
    };
    let mut parts = Vec::with_capacity(k as usize);
    let mut cursor = vec![0usize; kvals.len()];
    for (j, piece) in pieces.iter().enumerate() {
        let mut lj: i64 = 0;
        for (v, &cnt) in piece.iter().enumerate() {
            for _ in 0..cnt {
                lj += base.generators[per_value[v][cursor[v]]].l;
                cursor[v] += 1;
            }
        }
        if j == 0 {
            lj += zero_k.iter().map(|&i| base.generators[i].l).sum::<i64>();
        }
        parts.push(lj);
    }
    let pp = Presentation::Explicit(p.clone());
    let mut part_max = Vec::new();
    let mut part_min = Vec::new();
    for &lj in &parts {
        let e = monomial(p, &base.a, &base.b, 1, lj)?;
        part_max.push(max_length(&pp, &e, budget)?);
        part_min.push(min_length(&pp, &e, budget)?);
    }
    if parts.iter().sum::<i64>() != li
        || part_max.iter().sum::<u64>() != max_len
        || part_min.iter().sum::<u64>() != min_len
    {
        return Err(Error::Internal(format!("splitting of {target} is not additive")));
    }
    Ok(NiceDecomposition { parts, part_max, part_min, max_len, min_len })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdEntry {
    pub t: u64,
    pub max_len: u64,
    pub min_len: u64,
    pub elasticity: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSet {
    pub a: GroupElement,
    pub b: GroupElement,
    /// Largest ℓ ≤ `tau_horizon` with ρ(a b^ℓ) = ρ(a).
    pub tau: u64,
    pub tau_horizon: u64,
    pub t_bound: u64,
    /// Every t ∈ [τ, t_bound] with (1, t) nice, ascending.
    pub elements: Vec<ThresholdEntry>,
}

impl ThresholdSet {
    pub fn is_monotone(&self) -> bool {
        self.elements.windows(2).all(|w| w[0].elasticity >= w[1].elasticity)
    }
}

/// Horizon scanned for τ when the threshold set is built up to `t_bound`.
pub fn tau_horizon(t_bound: u64) -> u64 {
    2 * t_bound + 10
}

pub fn threshold_set(
    p: &ExplicitPresentation,
    a: &GroupElement,
    b: &GroupElement,
    t_bound: u64,
    budget: Budget,
) -> Result<ThresholdSet> {
    let pp = Presentation::Explicit(p.clone());
    let rho_a = {
        let mx = max_length(&pp, a, budget)?;
        let mn = min_length(&pp, a, budget)?;
        ratio(mx as i64, mn as i64)
    };
    let horizon = tau_horizon(t_bound);
    let mut tau = 0;
    for l in 0..=horizon {
        let e = monomial(p, a, b, 1, l as i64)?;
        let q = ratio(max_length(&pp, &e, budget)? as i64, min_length(&pp, &e, budget)? as i64);
        if q == rho_a {
            tau = l;
        }
    }
    let mut elements = Vec::new();
    for t in tau..=t_bound {
        if let NiceOutcome::Nice(cert) = is_nice(p, a, b, 1, t, budget)? {
            elements.push(ThresholdEntry {
                t,
                max_len: cert.max_len,
                min_len: cert.min_len,
                elasticity: cert.elasticity(),
            });
        }
    }
    Ok(ThresholdSet { a: a.clone(), b: b.clone(), tau, tau_horizon: horizon, t_bound, elements })
}

/// For tᵢ < x < tᵢ₊₁ consecutive threshold elements:
/// ((tᵢ₊₁−x)·maxL(abᵗⁱ) + (x−tᵢ)·maxL(abᵗⁱ⁺¹)) / (same with min L).
/// At x = tᵢ itself the value is ρ(abᵗⁱ).
pub fn interpolated_elasticity(ts: &ThresholdSet, x: &Rational) -> Result<Rational> {
    if let Some(e) = ts.elements.iter().find(|e| from_int(e.t as i64) == *x) {
        return Ok(e.elasticity.clone());
    }
    for w in ts.elements.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let tl = from_int(lo.t as i64);
        let th = from_int(hi.t as i64);
        if tl < *x && *x < th {
            let u = &th - x;
            let v = x - &tl;
            let num = &u * from_int(lo.max_len as i64) + &v * from_int(hi.max_len as i64);
            let den = &u * from_int(lo.min_len as i64) + &v * from_int(hi.min_len as i64);
            return Ok(num / den);
        }
    }
    Err(Error::Precondition(format!("{x} is not within the threshold range")))
}

/// The x with interpolated elasticity q on (tᵢ, tᵢ₊₁), if it lies strictly inside.
pub fn interpolation_preimage(lo: &ThresholdEntry, hi: &ThresholdEntry, q: &Rational) -> Option<Rational> {
    let (t1, t2) = (from_int(lo.t as i64), from_int(hi.t as i64));
    let (mx1, mx2) = (from_int(lo.max_len as i64), from_int(hi.max_len as i64));
    let (mn1, mn2) = (from_int(lo.min_len as i64), from_int(hi.min_len as i64));
    // q = (A + Bx) / (C + Dx)
    let aa = &t2 * &mx1 - &t1 * &mx2;
    let bb = &mx2 - &mx1;
    let cc = &t2 * &mn1 - &t1 * &mn2;
    let dd = &mn2 - &mn1;
    let den = &bb - q * &dd;
    if den.is_zero() {
        return None;
    }
    let x = (q * &cc - &aa) / den;
    (t1 < x && x < t2).then_some(x)
}

/// gcd-free helper used by reports: the reduced ratio ℓ/k.
pub fn reduced_ratio(k: u64, l: u64) -> Rational {
    let g = k.gcd(&l).max(1);
    ratio((l / g) as i64, (k / g) as i64)
}

