//! Elasticity, accepted elasticity, asymptotic elasticities and the
//! stabilization exponent.

use num_integer::Integer;
use num_traits::One;

use crate::engine::factor::{closed_form, find_factorization, max_length, min_length};
use crate::engine::lengths::length_set;
use crate::engine::{kernel_pairs_basis, power_fiber_basis, AtomSystem, Budget};
use crate::error::{Error, Result};
use crate::model::group::GroupElement;
use crate::model::lengths::LengthSet;
use crate::model::presentation::{ExplicitPresentation, Presentation};
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumeration,
    HilbertBasis,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElasticityReport {
    pub value: Rational,
    pub witness: Option<(GroupElement, LengthSet)>,
    pub method: Method,
}

/// ρ(g) = max L(g) / min L(g); 1 for the identity.
pub fn elasticity_of_element(p: &Presentation, g: &GroupElement, budget: Budget) -> Result<Rational> {
    if g.is_identity() {
        if !p.group().contains(g) {
            return Err(Error::SignatureMismatch(g.to_string()));
        }
        return Ok(Rational::one());
    }
    if let Some(l) = closed_form(p, g)? {
        return Ok(l.elasticity());
    }
    let lo = min_length(p, g, budget)?;
    let hi = max_length(p, g, budget)?;
    Ok(ratio(hi as i64, lo as i64))
}

/// ρ(H) as the largest |y|/|x| over the kernel-pair Hilbert basis; the
/// witness is the element factored by the extremal x.
pub fn elasticity_of_monoid(p: &ExplicitPresentation, budget: Budget) -> Result<ElasticityReport> {
    let basis = kernel_pairs_basis(p, budget)?;
    let m = p.atoms().len();
    let mut best: Option<(Rational, Vec<u64>)> = None;
    for s in &basis.solutions {
        let (x, y) = s.split_at(m);
        let lx: u64 = x.iter().sum();
        let ly: u64 = y.iter().sum();
        if lx == 0 || ly == 0 {
            return Err(Error::Precondition("kernel pair with an empty side; grading is not positive".into()));
        }
        let (short, lo, hi) = if lx <= ly { (x, lx, ly) } else { (y, ly, lx) };
        let q = ratio(hi as i64, lo as i64);
        if best.as_ref().map_or(true, |(b, _)| q > *b) {
            best = Some((q, short.to_vec()));
        }
    }
    let Some((value, x)) = best else {
        return Ok(ElasticityReport { value: Rational::one(), witness: None, method: Method::HilbertBasis });
    };
    let w = p.evaluate(&x)?;
    let l = length_set(&Presentation::Explicit(p.clone()), &w, budget)?;
    if l.elasticity() != value {
        return Err(Error::Internal(format!("witness {w} has elasticity {} not {}", l.elasticity(), value)));
    }
    Ok(ElasticityReport { value, witness: Some((w, l)), method: Method::HilbertBasis })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub element: GroupElement,
    pub rho_star: Rational,
    pub rho_lower_star: Rational,
    pub rho_bar: Rational,
    pub stabilization_n: u64,
    /// Power-fiber basis element (x, t) with the largest |x|/t.
    pub max_certificate: Vec<u64>,
    /// Power-fiber basis element (x, t) with the smallest |x|/t.
    pub min_certificate: Vec<u64>,
}

pub fn power(p: &Presentation, a: &GroupElement, k: u64) -> Result<GroupElement> {
    let k = i64::try_from(k).map_err(|_| Error::Overflow("power"))?;
    p.group().scale(a, k)
}

/// ρ*(a), ρ_*(a) and ρ̄(a) from the power-fiber basis, with a certified
/// stabilization exponent N: max L(a^N) = N·ρ*(a) and min L(a^N) = N·ρ_*(a).
pub fn asymptotic_invariants(p: &ExplicitPresentation, a: &GroupElement, budget: Budget) -> Result<AsymptoticReport> {
    if a.is_identity() {
        return Err(Error::Precondition("asymptotic invariants of the identity".into()));
    }
    let sys = AtomSystem::from_explicit(p)?;
    if find_factorization(&sys, &a.flatten(), budget)?.is_none() {
        return Err(Error::NotMember(a.to_string()));
    }
    let basis = power_fiber_basis(p, a, budget)?;
    let m = p.atoms().len();
    let mut hi: Option<(Rational, &Vec<u64>)> = None;
    let mut lo: Option<(Rational, &Vec<u64>)> = None;
    for s in &basis.solutions {
        let t = s[m];
        if t == 0 {
            return Err(Error::Precondition("power fiber element with t = 0; grading is not positive".into()));
        }
        let q = ratio(s[..m].iter().sum::<u64>() as i64, t as i64);
        // ties keep the earliest basis element with the smallest t
        let better_hi = hi.as_ref().map_or(true, |(b, c)| q > *b || (q == *b && t < c[m]));
        if better_hi {
            hi = Some((q.clone(), s));
        }
        let better_lo = lo.as_ref().map_or(true, |(b, c)| q < *b || (q == *b && t < c[m]));
        if better_lo {
            lo = Some((q, s));
        }
    }
    let ((rho_star, max_c), (rho_lower_star, min_c)) = match (hi, lo) {
        (Some(h), Some(l)) => (h, l),
        _ => return Err(Error::Internal("empty power-fiber basis for a member".into())),
    };
    let pp = Presentation::Explicit(p.clone());
    let mut n = max_c[m].lcm(&min_c[m]);
    let mut doublings = 0;
    loop {
        let an = power(&pp, a, n)?;
        let target_hi = &rho_star * Rational::from_integer(n.into());
        let target_lo = &rho_lower_star * Rational::from_integer(n.into());
        let mx = max_length(&pp, &an, budget)?;
        let mn = min_length(&pp, &an, budget)?;
        if Rational::from_integer(mx.into()) == target_hi && Rational::from_integer(mn.into()) == target_lo {
            break;
        }
        doublings += 1;
        if doublings > 8 {
            return Err(Error::Internal(format!("stabilization of {a} not certified up to N = {n}")));
        }
        n *= 2;
    }
    let rho_bar = &rho_star / &rho_lower_star;
    Ok(AsymptoticReport {
        element: a.clone(),
        rho_star,
        rho_lower_star,
        rho_bar,
        stabilization_n: n,
        max_certificate: max_c.clone(),
        min_certificate: min_c.clone(),
    })
}

/// r = min over atoms u of ρ̄(u), with the index of the first minimizing atom.
pub fn inf_asymptotic_elasticity(p: &ExplicitPresentation, budget: Budget) -> Result<(Rational, usize)> {
    let mut best: Option<(Rational, usize)> = None;
    for (i, u) in p.atoms().iter().enumerate() {
        let r = asymptotic_invariants(p, u, budget)?.rho_bar;
        if best.as_ref().map_or(true, |(b, _)| r < *b) {
            best = Some((r, i));
        }
    }
    best.ok_or_else(|| Error::Precondition("monoid without atoms".into()))
}

/// ρ(a^{tN}) = ρ(a^N) for t = 1..=t_max with the reported N.
pub fn verify_stabilization(
    p: &Presentation,
    a: &GroupElement,
    report: &AsymptoticReport,
    t_max: u64,
    budget: Budget,
) -> Result<bool> {
    verify_stabilization_at(p, a, report.stabilization_n, t_max, budget)
}

/// Same check for an arbitrary exponent n, using full sets of lengths.
pub fn verify_stabilization_at(p: &Presentation, a: &GroupElement, n: u64, t_max: u64, budget: Budget) -> Result<bool> {
    let base = length_set(p, &power(p, a, n)?, budget)?.elasticity();
    for t in 2..=t_max {
        let q = length_set(p, &power(p, a, t * n)?, budget)?.elasticity();
        if q != base {
            return Ok(false);
        }
    }
    Ok(true)
}
