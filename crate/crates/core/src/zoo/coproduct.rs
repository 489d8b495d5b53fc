use std::sync::Arc;

use num_traits::{One, ToPrimitive};

use crate::description::Description;
use crate::engine::Budget;
use crate::error::{Error, Result};
use crate::invariants::elasticity_of_monoid;
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::lengths::LengthSet;
use crate::model::presentation::{ExplicitPresentation, ImplicitMonoid, Presentation};
use crate::rational::Rational;

/// Finite coproduct of monoids; either all parts are explicit (direct sum of
/// the ambient groups) or all are implicit (concatenated ambient N^d).
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub presentation: Presentation,
    pub parts: Vec<Presentation>,
    free_offsets: Vec<usize>,
    torsion_offsets: Vec<usize>,
}

#[derive(Debug)]
struct ImplicitCoproduct {
    parts: Vec<Arc<dyn ImplicitMonoid>>,
    offsets: Vec<usize>,
    dim: usize,
}

impl ImplicitCoproduct {
    fn slices<'a>(&'a self, v: &'a [u64]) -> Vec<(&'a Arc<dyn ImplicitMonoid>, &'a [u64])> {
        self.parts.iter().zip(&self.offsets).map(|(p, &o)| (p, &v[o..o + p.ambient_dim()])).collect()
    }
}

impl ImplicitMonoid for ImplicitCoproduct {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.dim && self.slices(v).into_iter().all(|(p, s)| p.contains(s))
    }

    fn is_atom(&self, v: &[u64]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut support = self.slices(v).into_iter().filter(|(_, s)| s.iter().any(|&c| c > 0));
        match (support.next(), support.next()) {
            (Some((p, s)), None) => p.is_atom(s),
            _ => false,
        }
    }

    fn atoms_below(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for (i, (p, s)) in self.slices(v).into_iter().enumerate() {
            for a in p.atoms_below(s) {
                let mut w = vec![0u64; self.dim];
                w[self.offsets[i]..self.offsets[i] + a.len()].copy_from_slice(&a);
                out.push(w);
            }
        }
        out.sort();
        out
    }

    fn closed_form_lengths(&self, v: &[u64]) -> Option<LengthSet> {
        let mut acc = LengthSet::identity();
        for (p, s) in self.slices(v) {
            acc = acc.sumset(&p.closed_form_lengths(s)?);
        }
        Some(acc)
    }

    fn description(&self) -> Option<Description> {
        let parts = self.parts.iter().map(|p| p.description()).collect::<Option<Vec<_>>>()?;
        Some(Description::Coproduct { parts })
    }

    fn name(&self) -> String {
        format!("coproduct of {} monoids", self.parts.len())
    }
}

pub fn coproduct(parts: Vec<Presentation>) -> Result<Coproduct> {
    if parts.is_empty() {
        return Err(Error::Invalid("coproduct of no monoids".into()));
    }
    let all_explicit = parts.iter().all(|p| p.as_explicit().is_some());
    let all_implicit = parts.iter().all(|p| p.as_explicit().is_none());
    let mut free_offsets = Vec::new();
    let mut torsion_offsets = Vec::new();
    let (mut fr, mut tr) = (0usize, 0usize);
    for p in &parts {
        free_offsets.push(fr);
        torsion_offsets.push(tr);
        let g = p.group();
        fr += g.free_rank();
        tr += g.torsion_orders().len();
    }
    let presentation = if parts.len() == 1 {
        parts[0].clone()
    } else if all_explicit {
        let mut torsion = Vec::new();
        let mut grading = Vec::new();
        for p in &parts {
            torsion.extend_from_slice(p.group().torsion_orders());
            grading.extend_from_slice(p.as_explicit().unwrap().grading());
        }
        let group = FGAbelianGroup::new(fr, torsion)?;
        let mut atoms = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            for a in p.as_explicit().unwrap().atoms() {
                atoms.push(embed_raw(&group, &parts, &free_offsets, &torsion_offsets, i, a));
            }
        }
        Presentation::Explicit(ExplicitPresentation::new(group, atoms, grading)?)
    } else if all_implicit {
        let ms: Vec<Arc<dyn ImplicitMonoid>> = parts
            .iter()
            .map(|p| match p {
                Presentation::Implicit(m) => m.clone(),
                Presentation::Explicit(_) => unreachable!(),
            })
            .collect();
        Presentation::Implicit(Arc::new(ImplicitCoproduct { parts: ms, offsets: free_offsets.clone(), dim: fr }))
    } else {
        return Err(Error::Invalid("coproduct mixes explicit and implicit parts".into()));
    };
    Ok(Coproduct { presentation, parts, free_offsets, torsion_offsets })
}

fn embed_raw(
    group: &FGAbelianGroup,
    parts: &[Presentation],
    free_offsets: &[usize],
    torsion_offsets: &[usize],
    i: usize,
    g: &GroupElement,
) -> GroupElement {
    let mut e = group.identity();
    let pg = parts[i].group();
    e.free[free_offsets[i]..free_offsets[i] + pg.free_rank()].copy_from_slice(&g.free);
    e.torsion[torsion_offsets[i]..torsion_offsets[i] + pg.torsion_orders().len()].copy_from_slice(&g.torsion);
    e
}

impl Coproduct {
    /// The element g of part i, viewed in the coproduct.
    pub fn embed(&self, i: usize, g: &GroupElement) -> Result<GroupElement> {
        if i >= self.parts.len() || !self.parts[i].group().contains(g) {
            return Err(Error::SignatureMismatch(format!("{g} is not in part {i}")));
        }
        Ok(embed_raw(&self.presentation.group(), &self.parts, &self.free_offsets, &self.torsion_offsets, i, g))
    }

    /// Σ of the given component elements.
    pub fn combine(&self, comps: &[GroupElement]) -> Result<GroupElement> {
        if comps.len() != self.parts.len() {
            return Err(Error::SignatureMismatch("one component per part".into()));
        }
        let group = self.presentation.group();
        let mut acc = group.identity();
        for (i, c) in comps.iter().enumerate() {
            acc = group.add(&acc, &self.embed(i, c)?)?;
        }
        Ok(acc)
    }

    /// Components of an element of the coproduct.
    pub fn split(&self, g: &GroupElement) -> Result<Vec<GroupElement>> {
        if !self.presentation.group().contains(g) {
            return Err(Error::SignatureMismatch(g.to_string()));
        }
        Ok(self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let pg = p.group();
                GroupElement {
                    free: g.free[self.free_offsets[i]..self.free_offsets[i] + pg.free_rank()].to_vec(),
                    torsion: g.torsion[self.torsion_offsets[i]..self.torsion_offsets[i] + pg.torsion_orders().len()]
                        .to_vec(),
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone)]
pub struct CoproductWitness {
    pub coproduct: Coproduct,
    pub element: GroupElement,
    /// Sum of the component sets of lengths.
    pub lengths: LengthSet,
    /// Parts carrying an elastic element.
    pub selected: Vec<usize>,
    /// Parts contributing a single atom.
    pub padded: Vec<usize>,
    /// Number of parts the construction needs.
    pub required: usize,
}

struct PartWitness {
    rho: Rational,
    element: GroupElement,
    lengths: LengthSet,
}

fn part_witness(p: &ExplicitPresentation, budget: Budget) -> Result<PartWitness> {
    let r = elasticity_of_monoid(p, budget)?;
    let (element, lengths) = match r.witness {
        Some(w) => w,
        None => return Err(Error::Precondition("part without atoms".into())),
    };
    Ok(PartWitness { rho: r.value, element, lengths })
}

fn split_q(q: &Rational) -> Result<(u64, u64)> {
    let m = q.numer().to_u64().ok_or(Error::Overflow("numerator"))?;
    let n = q.denom().to_u64().ok_or(Error::Overflow("denominator"))?;
    Ok((m, n))
}

/// Parts needed when every part is a copy of `part`.
pub fn required_components(part: &ExplicitPresentation, q: &Rational, budget: Budget) -> Result<usize> {
    let w = part_witness(part, budget)?;
    if q.is_one() || *q == w.rho {
        return Ok(1);
    }
    if *q < Rational::one() || *q > w.rho {
        return Err(Error::Precondition(format!("q outside [1, {}]", w.rho)));
    }
    let (m, n) = split_q(q)?;
    let (mj, nj) = (w.lengths.max(), w.lengths.min());
    Ok((m - n + n * mj - m * nj) as usize)
}

/// An element of the coproduct of `parts` with elasticity exactly q: m − n
/// elastic components whose gaps max − min agree mod m − n, padded by x
/// single atoms from further components.
pub fn coproduct_full_elasticity_witness(
    parts: &[ExplicitPresentation],
    q: &Rational,
    budget: Budget,
) -> Result<CoproductWitness> {
    if parts.is_empty() {
        return Err(Error::Invalid("no parts".into()));
    }
    let witnesses = parts.iter().map(|p| part_witness(p, budget)).collect::<Result<Vec<_>>>()?;
    let top = witnesses.iter().map(|w| w.rho.clone()).max().unwrap();
    if *q < Rational::one() || *q > top {
        return Err(Error::Precondition(format!("q outside [1, {top}]")));
    }
    let cp = coproduct(parts.iter().cloned().map(Presentation::Explicit).collect())?;
    let mut comps: Vec<GroupElement> = parts.iter().map(|p| p.group().identity()).collect();
    let finish = |comps: Vec<GroupElement>, lengths: LengthSet, selected, padded, required| {
        let element = cp.combine(&comps)?;
        if lengths.elasticity() != *q {
            return Err(Error::Internal(format!("constructed elasticity {} instead of {q}", lengths.elasticity())));
        }
        Ok(CoproductWitness { coproduct: cp.clone(), element, lengths, selected, padded, required })
    };
    if q.is_one() {
        comps[0] = parts[0].atoms()[0].clone();
        return finish(comps, LengthSet::interval(1, 1), vec![], vec![0], 1);
    }
    if let Some(i) = witnesses.iter().position(|w| w.rho == *q) {
        comps[i] = witnesses[i].element.clone();
        let l = witnesses[i].lengths.clone();
        return finish(comps, l, vec![i], vec![], 1);
    }
    let (m, n) = split_q(q)?;
    let k = m - n;
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k as usize];
    for (i, w) in witnesses.iter().enumerate() {
        if w.rho >= *q {
            let gap = w.lengths.max() - w.lengths.min();
            classes[(gap % k) as usize].push(i);
        }
    }
    let Some(class) = classes.iter().find(|c| c.len() as u64 >= k) else {
        let available = classes.iter().map(|c| c.len()).max().unwrap_or(0);
        return Err(Error::InsufficientComponents { required: k as usize, available });
    };
    let selected: Vec<usize> = class[..k as usize].to_vec();
    let sum_m: u64 = selected.iter().map(|&j| witnesses[j].lengths.max()).sum();
    let sum_n: u64 = selected.iter().map(|&j| witnesses[j].lengths.min()).sum();
    let num = n as i128 * sum_m as i128 - m as i128 * sum_n as i128;
    if num < 0 || num % k as i128 != 0 {
        return Err(Error::Internal(format!("padding count {num}/{k} is not a natural number")));
    }
    let x = (num / k as i128) as usize;
    let required = k as usize + x;
    let padded: Vec<usize> = (0..parts.len()).filter(|i| !selected.contains(i)).take(x).collect();
    if padded.len() < x {
        return Err(Error::InsufficientComponents { required, available: parts.len() });
    }
    let mut lengths = LengthSet::identity();
    for &j in &selected {
        comps[j] = witnesses[j].element.clone();
        lengths = lengths.sumset(&witnesses[j].lengths);
    }
    for &i in &padded {
        comps[i] = parts[i].atoms()[0].clone();
        lengths = lengths.sumset(&LengthSet::interval(1, 1));
    }
    finish(comps, lengths, selected, padded, required)
}
