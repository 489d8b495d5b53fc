use crate::engine::{AtomSystem, Budget, Meter};
use crate::error::{Error, Result};
use crate::model::group::GroupElement;
use crate::model::presentation::Presentation;

/// All factorizations of one element, as exponent vectors over `atoms`,
/// in ascending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    pub atoms: Vec<GroupElement>,
    pub vectors: Vec<Vec<u64>>,
}

impl FactorizationSet {
    pub fn lengths(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.vectors.iter().map(|x| x.iter().sum()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

struct Search<'a> {
    sys: &'a AtomSystem,
    order: Vec<usize>,
    meter: Meter,
}

impl<'a> Search<'a> {
    fn new(sys: &'a AtomSystem, order: Vec<usize>, budget: Budget, context: &'static str) -> Self {
        Search { sys, order, meter: Meter::new(budget, context) }
    }

    /// Largest multiple of the atom at `pos` that still fits under `rem`.
    fn cap(&self, pos: usize, rem: &[i64], rem_w: i64) -> i64 {
        let i = self.order[pos];
        let mut c = rem_w / self.sys.weights[i];
        if self.sys.nonneg {
            for (k, &a) in self.sys.atoms[i].iter().enumerate() {
                if a > 0 && self.sys.moduli[k] == 0 {
                    c = c.min(rem[k] / a);
                }
            }
        }
        c.max(0)
    }

    /// Multiplicity of the last atom closing the factorization, if any.
    fn close(&self, pos: usize, rem: &[i64], rem_w: i64) -> Option<i64> {
        let i = self.order[pos];
        let w = self.sys.weights[i];
        if rem_w % w != 0 {
            return None;
        }
        let c = rem_w / w;
        let a = &self.sys.atoms[i];
        let ok = rem.iter().enumerate().all(|(k, &r)| {
            let n = self.sys.moduli[k];
            let x = c * a[k];
            if n == 0 {
                r == x
            } else {
                r == x.rem_euclid(n)
            }
        });
        ok.then_some(c)
    }

    /// Visits every factorization; `visit` returns false to stop early.
    fn walk<F>(&mut self, pos: usize, rem: &[i64], rem_w: i64, x: &mut Vec<u64>, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[u64]) -> bool,
    {
        self.meter.tick()?;
        let m = self.order.len();
        if m == 0 {
            return Ok(if AtomSystem::is_zero(rem) { visit(x) } else { true });
        }
        if pos == m - 1 {
            if let Some(c) = self.close(pos, rem, rem_w) {
                x[self.order[pos]] = c as u64;
                let go = visit(x);
                x[self.order[pos]] = 0;
                return Ok(go);
            }
            return Ok(true);
        }
        let i = self.order[pos];
        let w = self.sys.weights[i];
        let cap = self.cap(pos, rem, rem_w);
        let mut next = vec![0i64; rem.len()];
        for c in 0..=cap {
            self.sys.sub_scaled(rem, i, c, &mut next);
            x[i] = c as u64;
            let go = self.walk(pos + 1, &next, rem_w - c * w, x, visit)?;
            if !go {
                x[i] = 0;
                return Ok(false);
            }
        }
        x[i] = 0;
        Ok(true)
    }
}

fn prepare(sys: &AtomSystem, target: &[i64]) -> Result<(Vec<i64>, i64)> {
    if target.len() != sys.dim() {
        return Err(Error::SignatureMismatch("target length".into()));
    }
    let t = sys.reduce(target);
    let w = sys.weight(&t);
    Ok((t, w))
}

/// Every factorization of `target` over `sys`, lexicographically ascending.
pub fn enumerate_in(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<Vec<Vec<u64>>> {
    let (t, w) = prepare(sys, target)?;
    let mut out = Vec::new();
    if sys.obviously_infeasible(&t, w) {
        return Ok(out);
    }
    let mut s = Search::new(sys, (0..sys.len()).collect(), budget, "factorization enumeration");
    let mut x = vec![0u64; sys.len()];
    s.walk(0, &t, w, &mut x, &mut |f| {
        out.push(f.to_vec());
        true
    })?;
    out.sort();
    Ok(out)
}

pub fn find_factorization(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<Option<Vec<u64>>> {
    let (t, w) = prepare(sys, target)?;
    if sys.obviously_infeasible(&t, w) {
        return Ok(None);
    }
    // heavy atoms first reach a leaf quickly
    let mut order: Vec<usize> = (0..sys.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(sys.weights[i]));
    let mut s = Search::new(sys, order, budget, "membership search");
    let mut x = vec![0u64; sys.len()];
    let mut found = None;
    s.walk(0, &t, w, &mut x, &mut |f| {
        found = Some(f.to_vec());
        false
    })?;
    Ok(found)
}

pub fn has_factorization(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<bool> {
    Ok(find_factorization(sys, target, budget)?.is_some())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Min,
    Max,
}

struct Bnb<'a> {
    base: Search<'a>,
    goal: Goal,
    /// best possible weight per atom over each suffix of `order`
    suffix_w: Vec<i64>,
    best: Option<u64>,
    x: Vec<u64>,
    best_x: Vec<u64>,
}

impl<'a> Bnb<'a> {
    fn run(&mut self, pos: usize, rem: &[i64], rem_w: i64, len: u64) -> Result<()> {
        self.base.meter.tick()?;
        let m = self.base.order.len();
        if m == 0 {
            if AtomSystem::is_zero(rem) {
                self.best = Some(0);
                self.best_x.clear();
            }
            return Ok(());
        }
        if let Some(b) = self.best {
            let sw = self.suffix_w[pos];
            match self.goal {
                Goal::Max => {
                    if len + (rem_w / sw) as u64 <= b {
                        return Ok(());
                    }
                }
                Goal::Min => {
                    let lower = len + ((rem_w + sw - 1) / sw) as u64;
                    if lower >= b {
                        return Ok(());
                    }
                }
            }
        }
        if pos == m - 1 {
            if let Some(c) = self.base.close(pos, rem, rem_w) {
                let l = len + c as u64;
                let better = match (self.best, self.goal) {
                    (None, _) => true,
                    (Some(b), Goal::Max) => l > b,
                    (Some(b), Goal::Min) => l < b,
                };
                if better {
                    self.best = Some(l);
                    let i = self.base.order[pos];
                    self.x[i] = c as u64;
                    self.best_x = self.x.clone();
                    self.x[i] = 0;
                }
            }
            return Ok(());
        }
        let i = self.base.order[pos];
        let w = self.base.sys.weights[i];
        let cap = self.base.cap(pos, rem, rem_w);
        let mut next = vec![0i64; rem.len()];
        for c in (0..=cap).rev() {
            self.base.sys.sub_scaled(rem, i, c, &mut next);
            self.x[i] = c as u64;
            self.run(pos + 1, &next, rem_w - c * w, len + c as u64)?;
        }
        self.x[i] = 0;
        Ok(())
    }
}

fn extreme(sys: &AtomSystem, target: &[i64], budget: Budget, goal: Goal) -> Result<Option<(u64, Vec<u64>)>> {
    let (t, w) = prepare(sys, target)?;
    if sys.obviously_infeasible(&t, w) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..sys.len()).collect();
    match goal {
        Goal::Max => order.sort_by_key(|&i| sys.weights[i]),
        Goal::Min => order.sort_by_key(|&i| std::cmp::Reverse(sys.weights[i])),
    }
    let mut suffix_w = vec![0i64; order.len()];
    for pos in (0..order.len()).rev() {
        let wi = sys.weights[order[pos]];
        suffix_w[pos] = if pos + 1 == order.len() {
            wi
        } else {
            match goal {
                Goal::Max => wi.min(suffix_w[pos + 1]),
                Goal::Min => wi.max(suffix_w[pos + 1]),
            }
        };
    }
    let context = match goal {
        Goal::Min => "minimum length search",
        Goal::Max => "maximum length search",
    };
    let m = sys.len();
    let mut b = Bnb {
        base: Search::new(sys, order, budget, context),
        goal,
        suffix_w,
        best: None,
        x: vec![0; m],
        best_x: vec![0; m],
    };
    b.run(0, &t, w, 0)?;
    if b.best == Some(0) {
        b.best_x = vec![0; m];
    }
    Ok(b.best.map(|l| (l, b.best_x)))
}

pub fn min_length_in(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<Option<u64>> {
    Ok(extreme(sys, target, budget, Goal::Min)?.map(|(l, _)| l))
}

pub fn max_length_in(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<Option<u64>> {
    Ok(extreme(sys, target, budget, Goal::Max)?.map(|(l, _)| l))
}

/// A factorization of minimal length.
pub fn shortest_factorization(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<Option<Vec<u64>>> {
    Ok(extreme(sys, target, budget, Goal::Min)?.map(|(_, x)| x))
}

/// A factorization of maximal length.
pub fn longest_factorization(sys: &AtomSystem, target: &[i64], budget: Budget) -> Result<Option<Vec<u64>>> {
    Ok(extreme(sys, target, budget, Goal::Max)?.map(|(_, x)| x))
}

/// All factorizations of g. Implicit presentations first materialize the
/// atoms dividing g.
pub fn enumerate_factorizations(p: &Presentation, g: &GroupElement, budget: Budget) -> Result<FactorizationSet> {
    let (sys, atoms) = p.local_system(g)?;
    let vectors = enumerate_in(&sys, &g.flatten(), budget)?;
    if vectors.is_empty() {
        return Err(Error::NotMember(g.to_string()));
    }
    Ok(FactorizationSet { atoms, vectors })
}

pub fn min_length(p: &Presentation, g: &GroupElement, budget: Budget) -> Result<u64> {
    if let Some(l) = closed_form(p, g)? {
        return Ok(l.min());
    }
    let (sys, _) = p.local_system(g)?;
    min_length_in(&sys, &g.flatten(), budget)?.ok_or_else(|| Error::NotMember(g.to_string()))
}

pub fn max_length(p: &Presentation, g: &GroupElement, budget: Budget) -> Result<u64> {
    if let Some(l) = closed_form(p, g)? {
        return Ok(l.max());
    }
    let (sys, _) = p.local_system(g)?;
    max_length_in(&sys, &g.flatten(), budget)?.ok_or_else(|| Error::NotMember(g.to_string()))
}

pub(crate) fn closed_form(p: &Presentation, g: &GroupElement) -> Result<Option<crate::model::lengths::LengthSet>> {
    match p {
        Presentation::Explicit(_) => Ok(None),
        Presentation::Implicit(m) => {
            let v = p.nat_coords(g)?;
            if !m.contains(&v) {
                return Err(Error::NotMember(g.to_string()));
            }
            Ok(m.closed_form_lengths(&v))
        }
    }
}
