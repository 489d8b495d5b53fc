use crate::description::Description;
use crate::error::{Error, Result};
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::presentation::ImplicitMonoid;

/// Data of B(G₀, T, ι) with T a product of reduced seminormal finitely
/// primary monoids; `iota[i][j]` is the class of the j-th prime of the i-th
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TBlockSpec {
    pub group: FGAbelianGroup,
    pub g0: Vec<GroupElement>,
    pub components: Vec<usize>,
    pub iota: Vec<Vec<GroupElement>>,
}

/// Elements S·t ∈ F(G₀) × T with σ(S) + ι(t) = 0, as points of
/// N^{|G₀|} × N^{Σ sᵢ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TBlockMonoid {
    spec: TBlockSpec,
    offsets: Vec<usize>,
    dim: usize,
    /// positions of G₀ elements equal to 0; those coordinates are primes
    zero_slots: Vec<usize>,
}

pub fn tblock_monoid(spec: TBlockSpec) -> Result<TBlockMonoid> {
    let g = &spec.group;
    if !g.is_finite() {
        return Err(Error::Invalid(format!("class group {g} is not finite")));
    }
    for x in &spec.g0 {
        if !g.contains(x) {
            return Err(Error::SignatureMismatch(format!("{x} is not in {g}")));
        }
    }
    let mut sorted = spec.g0.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != spec.g0.len() {
        return Err(Error::Invalid("G0 lists an element twice".into()));
    }
    if spec.iota.len() != spec.components.len() {
        return Err(Error::Invalid(format!(
            "iota has {} entries for {} components",
            spec.iota.len(),
            spec.components.len()
        )));
    }
    for (i, (&s, classes)) in spec.components.iter().zip(&spec.iota).enumerate() {
        if s == 0 {
            return Err(Error::Invalid(format!("component {i} has rank 0")));
        }
        if classes.len() != s {
            return Err(Error::Invalid(format!("component {i} has rank {s} but {} classes", classes.len())));
        }
        if let Some(x) = classes.iter().find(|x| !g.contains(x)) {
            return Err(Error::SignatureMismatch(format!("class {x} is not in {g}")));
        }
    }
    let mut offsets = Vec::new();
    let mut at = spec.g0.len();
    for &s in &spec.components {
        offsets.push(at);
        at += s;
    }
    let zero_slots = spec.g0.iter().enumerate().filter(|(_, x)| x.is_identity()).map(|(i, _)| i).collect();
    Ok(TBlockMonoid { spec, offsets, dim: at, zero_slots })
}

/// Calls `f` on every u with 0 ≤ u ≤ v (lexicographic), stopping when `f`
/// returns true. Returns whether it stopped.
fn any_in_box(v: &[u64], mut f: impl FnMut(&[u64]) -> bool) -> bool {
    let mut u = vec![0u64; v.len()];
    loop {
        if f(&u) {
            return true;
        }
        let mut k = v.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            if u[k] < v[k] {
                u[k] += 1;
                break;
            }
            u[k] = 0;
        }
    }
}

impl TBlockMonoid {
    pub fn spec(&self) -> &TBlockSpec {
        &self.spec
    }

    pub fn component_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.spec.components[i]
    }

    /// Coordinate of g ∈ G₀.
    pub fn slot(&self, g: &GroupElement) -> Option<usize> {
        self.spec.g0.iter().position(|x| x == g)
    }

    /// Coordinate of the prime 0 ∈ G₀, if present.
    pub fn zero_slot(&self) -> Option<usize> {
        self.zero_slots.first().copied()
    }

    fn class(&self, v: &[u64]) -> GroupElement {
        let g = &self.spec.group;
        let mut acc = g.identity();
        for (x, &c) in self.spec.g0.iter().zip(v) {
            if c > 0 {
                acc = g.add(&acc, &g.scale(x, c as i64).unwrap()).unwrap();
            }
        }
        for (i, classes) in self.spec.iota.iter().enumerate() {
            for (j, x) in classes.iter().enumerate() {
                let c = v[self.offsets[i] + j];
                if c > 0 {
                    acc = g.add(&acc, &g.scale(x, c as i64).unwrap()).unwrap();
                }
            }
        }
        acc
    }

    fn components_ok(&self, v: &[u64]) -> bool {
        (0..self.spec.components.len()).all(|i| {
            let block = &v[self.component_range(i)];
            block.iter().all(|&c| c == 0) || block.iter().all(|&c| c >= 1)
        })
    }

    /// Point with multiplicities `s` over G₀ and exponent vectors `t` per component.
    pub fn point(&self, s: &[u64], t: &[Vec<u64>]) -> Result<Vec<u64>> {
        if s.len() != self.spec.g0.len() || t.len() != self.spec.components.len() {
            return Err(Error::SignatureMismatch("T-block point shape".into()));
        }
        let mut v = s.to_vec();
        for (i, part) in t.iter().enumerate() {
            if part.len() != self.spec.components[i] {
                return Err(Error::SignatureMismatch(format!("component {i} exponent length")));
            }
            v.extend_from_slice(part);
        }
        Ok(v)
    }

    /// Exponents α of an atom of B living in component `comp` alone, with
    /// |α| minimal (ties: lexicographically first).
    pub fn minimal_component_atom(&self, comp: usize) -> Result<Vec<u64>> {
        let s = self.spec.components[comp];
        let g = &self.spec.group;
        let mut total = g.identity();
        for x in &self.spec.iota[comp] {
            total = g.add(&total, x)?;
        }
        let ord = g.order_of(&total).unwrap_or(1) as usize;
        let range = self.component_range(comp);
        for size in s..=s * ord {
            let mut found: Option<Vec<u64>> = None;
            compositions(size, s, &mut |t| {
                let mut v = vec![0u64; self.dim];
                v[range.clone()].copy_from_slice(t);
                if self.is_atom(&v) {
                    found = Some(t.to_vec());
                    true
                } else {
                    false
                }
            });
            if let Some(t) = found {
                return Ok(t);
            }
        }
        Err(Error::Internal("no atom inside the component".into()))
    }
}

/// Compositions of n into `parts` positive parts, lexicographic.
fn compositions(n: usize, parts: usize, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(rem: usize, left: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if left == 1 {
            cur.push(rem as u64);
            let stop = f(cur);
            cur.pop();
            return stop;
        }
        for first in 1..=rem.saturating_sub(left - 1) {
            cur.push(first as u64);
            let stop = rec(rem - first, left - 1, cur, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    if parts == 0 || n < parts {
        return false;
    }
    rec(n, parts, &mut Vec::with_capacity(parts), f)
}

impl ImplicitMonoid for TBlockMonoid {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.dim && self.components_ok(v) && self.class(v).is_identity()
    }

    fn is_atom(&self, v: &[u64]) -> bool {
        if !self.contains(v) || v.iter().all(|&c| c == 0) {
            return false;
        }
        let total: u64 = v.iter().sum();
        for &z in &self.zero_slots {
            if v[z] > 0 {
                return total == 1;
            }
        }
        let mut w = vec![0u64; v.len()];
        let split = any_in_box(v, |u| {
            let nonzero = u.iter().any(|&c| c > 0);
            if !nonzero || u == v {
                return false;
            }
            for k in 0..v.len() {
                w[k] = v[k] - u[k];
            }
            self.contains(u) && self.contains(&w)
        });
        !split
    }

    fn atoms_below(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let mut bound = v.to_vec();
        let mut out = Vec::new();
        for &z in &self.zero_slots {
            if v[z] > 0 {
                let mut e = vec![0u64; v.len()];
                e[z] = 1;
                out.push(e);
            }
            bound[z] = 0;
        }
        any_in_box(&bound, |u| {
            if self.is_atom(u) {
                out.push(u.to_vec());
            }
            false
        });
        out.sort();
        out
    }

    fn description(&self) -> Option<Description> {
        Some(Description::Tblock {
            group: self.spec.group.clone().into(),
            g0: self.spec.g0.iter().map(|x| x.clone().into()).collect(),
            components: self.spec.components.iter().map(|&rank| crate::description::ComponentDesc { rank }).collect(),
            iota: self.spec.iota.iter().map(|c| c.iter().map(|x| x.clone().into()).collect()).collect(),
        })
    }

    fn name(&self) -> String {
        format!(
            "T-block monoid over {} elements of {} with component ranks {:?}",
            self.spec.g0.len(),
            self.spec.group,
            self.spec.components
        )
    }
}
