use std::collections::HashMap;
use std::rc::Rc;

use crate::engine::factor::closed_form;
use crate::engine::{AtomSystem, Budget, Meter};
use crate::error::{Error, Result};
use crate::model::group::GroupElement;
use crate::model::lengths::LengthSet;
use crate::model::presentation::Presentation;

type Bits = Rc<Vec<u64>>;

/// Memoized sets of lengths over one atom system:
/// L(g) = ⋃ᵢ (1 + L(g − uᵢ)). The table can be reused across many targets.
pub struct LengthTable<'a> {
    sys: &'a AtomSystem,
    memo: HashMap<Vec<i64>, Option<Bits>>,
    meter: Meter,
}

fn shift_or(dst: &mut Vec<u64>, src: &[u64]) {
    // dst |= src << 1
    let need = src.len() + 1;
    if dst.len() < need {
        dst.resize(need, 0);
    }
    let mut carry = 0u64;
    for (i, &w) in src.iter().enumerate() {
        dst[i] |= (w << 1) | carry;
        carry = w >> 63;
    }
    dst[src.len()] |= carry;
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn to_set(bits: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for (i, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as u64;
            out.push(i as u64 * 64 + b);
            w &= w - 1;
        }
    }
    out
}

impl<'a> LengthTable<'a> {
    pub fn new(sys: &'a AtomSystem, budget: Budget) -> Self {
        LengthTable { sys, memo: HashMap::new(), meter: Meter::new(budget, "length table") }
    }

    pub fn states(&self) -> usize {
        self.memo.len()
    }

    /// L(target), or `None` if target has no factorization.
    pub fn lengths(&mut self, target: &[i64]) -> Result<Option<LengthSet>> {
        if target.len() != self.sys.dim() {
            return Err(Error::SignatureMismatch("target length".into()));
        }
        let t = self.sys.reduce(target);
        let bits = self.compute(t)?;
        Ok(bits.map(|b| LengthSet::new(to_set(&b)).unwrap()))
    }

    fn infeasible(&self, v: &[i64]) -> bool {
        self.sys.obviously_infeasible(v, self.sys.weight(v))
    }

    fn compute(&mut self, root: Vec<i64>) -> Result<Option<Bits>> {
        if let Some(r) = self.memo.get(&root) {
            return Ok(r.clone());
        }
        if self.infeasible(&root) {
            return Ok(None);
        }
        let m = self.sys.len();
        let dim = self.sys.dim();
        let mut stack: Vec<(Vec<i64>, usize)> = vec![(root.clone(), 0)];
        let mut child = vec![0i64; dim];
        while let Some((v, next)) = stack.last_mut() {
            if *next < m {
                let i = *next;
                *next += 1;
                self.sys.sub_scaled(v, i, 1, &mut child);
                if !self.infeasible(&child) && !self.memo.contains_key(&child) {
                    stack.push((child.clone(), 0));
                }
                continue;
            }
            let (v, _) = stack.pop().unwrap();
            self.meter.tick()?;
            let value = if AtomSystem::is_zero(&v) {
                Some(Rc::new(vec![1u64]))
            } else {
                let mut acc: Vec<u64> = Vec::new();
                for i in 0..m {
                    self.sys.sub_scaled(&v, i, 1, &mut child);
                    if self.infeasible(&child) {
                        continue;
                    }
                    if let Some(Some(b)) = self.memo.get(&child) {
                        shift_or(&mut acc, b);
                    }
                }
                trim(&mut acc);
                if acc.is_empty() {
                    None
                } else {
                    Some(Rc::new(acc))
                }
            };
            self.memo.insert(v, value);
        }
        Ok(self.memo.get(&root).cloned().flatten())
    }
}

/// Set of lengths of g; closed forms are used when the presentation has one.
pub fn length_set(p: &Presentation, g: &GroupElement, budget: Budget) -> Result<LengthSet> {
    if let Some(l) = closed_form(p, g)? {
        return Ok(l);
    }
    generic_length_set(p, g, budget)
}

/// Set of lengths of g from the generic search, ignoring closed forms.
pub fn generic_length_set(p: &Presentation, g: &GroupElement, budget: Budget) -> Result<LengthSet> {
    if g.is_identity() {
        return Ok(LengthSet::identity());
    }
    let (sys, _) = p.local_system(g)?;
    let mut table = LengthTable::new(&sys, budget);
    table.lengths(&g.flatten())?.ok_or_else(|| Error::NotMember(g.to_string()))
}
