use std::collections::{HashMap, HashSet};

use crate::engine::{Budget, Meter};
use crate::error::{Error, Result};
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::presentation::ExplicitPresentation;

/// Homogeneous system A·x = 0 together with rows c·x ≡ 0 (mod n), x ∈ N^vars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub vars: usize,
    pub equations: Vec<Vec<i64>>,
    pub congruences: Vec<(Vec<i64>, i64)>,
}

impl LinearSystem {
    pub fn new(vars: usize, equations: Vec<Vec<i64>>, congruences: Vec<(Vec<i64>, i64)>) -> Result<Self> {
        if equations.iter().any(|r| r.len() != vars) || congruences.iter().any(|(r, _)| r.len() != vars) {
            return Err(Error::SignatureMismatch("row length differs from variable count".into()));
        }
        if congruences.iter().any(|&(_, n)| n < 2) {
            return Err(Error::Invalid("congruence modulus below 2".into()));
        }
        let congruences = congruences
            .into_iter()
            .map(|(r, n)| (r.into_iter().map(|c| c.rem_euclid(n)).collect(), n))
            .collect();
        Ok(LinearSystem { vars, equations, congruences })
    }

    /// One block per group equation Σⱼ xⱼ·colⱼ = 0; each column is a
    /// flattened group vector (free coordinates, then torsion coordinates).
    pub fn from_group_blocks(group: &FGAbelianGroup, blocks: &[Vec<Vec<i64>>]) -> Result<Self> {
        let vars = blocks.first().map_or(0, |b| b.len());
        let r = group.free_rank();
        let mut equations = Vec::new();
        let mut congruences = Vec::new();
        for block in blocks {
            if block.len() != vars {
                return Err(Error::SignatureMismatch("blocks differ in variable count".into()));
            }
            for k in 0..r {
                let row: Vec<i64> = block.iter().map(|c| c[k]).collect();
                if row.iter().any(|&c| c != 0) {
                    equations.push(row);
                }
            }
            for (t, &n) in group.torsion_orders().iter().enumerate() {
                let n = n as i64;
                let row: Vec<i64> = block.iter().map(|c| c[r + t].rem_euclid(n)).collect();
                if row.iter().any(|&c| c != 0) {
                    congruences.push((row, n));
                }
            }
        }
        Self::new(vars, equations, congruences)
    }

    pub fn is_solution(&self, x: &[u64]) -> bool {
        x.len() == self.vars
            && self.equations.iter().all(|r| dot(r, x) == 0)
            && self.congruences.iter().all(|(r, n)| dot(r, x).rem_euclid(*n) == 0)
    }
}

/// Rows of the equality system with one slack column −n per congruence.
fn lifted_rows(sys: &LinearSystem) -> Vec<Vec<i128>> {
    let k = sys.congruences.len();
    let width = sys.vars + k;
    let mut rows = Vec::new();
    for r in &sys.equations {
        let mut row: Vec<i128> = r.iter().map(|&c| c as i128).collect();
        row.resize(width, 0);
        rows.push(row);
    }
    for (i, (r, n)) in sys.congruences.iter().enumerate() {
        let mut row: Vec<i128> = r.iter().map(|&c| c as i128).collect();
        row.resize(width, 0);
        row[sys.vars + i] = -(*n as i128);
        rows.push(row);
    }
    rows
}

/// Bareiss elimination; `None` on overflow.
fn det(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else { return Some(0) };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let width = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let g = num_integer::Integer::gcd(&a, &b);
                for j in 0..width {
                    m[i][j] = m[i][j] * (a / g) - m[r][j] * (b / g);
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if rec(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f)
}

const MINOR_LIMIT: u64 = 200_000;

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

impl LinearSystem {
    /// Upper bound on |x|₁ for every minimal solution. Minimal solutions
    /// lie in the half-open parallelepiped of at most d = vars − rank
    /// extreme rays, and an extreme ray has support ≤ rank + 1 with entries
    /// bounded by the largest minor of the (slack-lifted) matrix.
    pub fn degree_bound(&self) -> u64 {
        let rows = lifted_rows(self);
        let width = self.vars + self.congruences.len();
        if rows.is_empty() {
            return 1;
        }
        let r = rank(&rows);
        let d = (width - r).max(1) as u128;
        let work: u64 = (1..=r).map(|k| binom(rows.len(), k).saturating_mul(binom(width, k))).fold(0, u64::saturating_add);
        let mut minor: Option<u128> = Some(1);
        if work <= MINOR_LIMIT {
            'sizes: for k in 1..=r {
                let mut overflow = false;
                subsets(rows.len(), k, &mut |ri| {
                    subsets(width, k, &mut |ci| {
                        let m: Vec<Vec<i128>> = ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j]).collect()).collect();
                        match det(m) {
                            Some(v) => {
                                minor = minor.map(|b| b.max(v.unsigned_abs()));
                                false
                            }
                            None => {
                                overflow = true;
                                true
                            }
                        }
                    })
                });
                if overflow {
                    minor = None;
                    break 'sizes;
                }
            }
        } else {
            minor = None;
        }
        let minor = minor.unwrap_or_else(|| {
            // Hadamard-type bound with column 1-norms
            let mut norms: Vec<u128> = (0..width).map(|j| rows.iter().map(|row| row[j].unsigned_abs()).sum()).collect();
            norms.sort_unstable_by(|a, b| b.cmp(a));
            norms.iter().take(r).fold(1u128, |acc, &v| acc.saturating_mul(v.max(1)))
        });
        let b = d.saturating_mul(r as u128 + 1).saturating_mul(minor);
        u64::try_from(b).unwrap_or(u64::MAX)
    }
}

fn dot(r: &[i64], x: &[u64]) -> i64 {
    r.iter().zip(x).map(|(&a, &b)| a * b as i64).sum()
}

fn dominates(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a >= b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    pub system: LinearSystem,
    /// Minimal nonzero solutions, lexicographically ascending.
    pub solutions: Vec<Vec<u64>>,
}

impl HilbertBasis {
    /// Writes v as a nonnegative combination of basis vectors (multiplicity
    /// per basis vector), or `None` if v is not a solution.
    pub fn decompose(&self, v: &[u64], budget: Budget) -> Result<Option<Vec<u64>>> {
        if !self.system.is_solution(v) {
            return Ok(None);
        }
        let mut meter = Meter::new(budget, "basis decomposition");
        let mut dead = HashSet::new();
        let mut coeffs = vec![0u64; self.solutions.len()];
        let found = self.decompose_rec(v.to_vec(), 0, &mut coeffs, &mut dead, &mut meter)?;
        Ok(found.then_some(coeffs))
    }

    fn decompose_rec(
        &self,
        v: Vec<u64>,
        from: usize,
        coeffs: &mut Vec<u64>,
        dead: &mut HashSet<(Vec<u64>, usize)>,
        meter: &mut Meter,
    ) -> Result<bool> {
        meter.tick()?;
        if v.iter().all(|&c| c == 0) {
            return Ok(true);
        }
        if dead.contains(&(v.clone(), from)) {
            return Ok(false);
        }
        for (i, s) in self.solutions.iter().enumerate().skip(from) {
            if dominates(&v, s) {
                let rest: Vec<u64> = v.iter().zip(s).map(|(a, b)| a - b).collect();
                coeffs[i] += 1;
                if self.decompose_rec(rest, i, coeffs, dead, meter)? {
                    return Ok(true);
                }
                coeffs[i] -= 1;
            }
        }
        dead.insert((v, from));
        Ok(false)
    }
}

struct State {
    x: Vec<u64>,
    defect: Vec<i64>,
    residue: Vec<i64>,
}

/// Minimal nonzero solutions by the Contejean–Devie completion: a vector
/// with nonzero defect Ax may only grow along eⱼ with ⟨Ax, Aeⱼ⟩ < 0;
/// congruence residues ride along as state and must vanish at acceptance.
/// The search stops at the degree bound, since the cone condition alone
/// admits unbounded branches that never dominate a solution.
pub fn hilbert_basis(system: &LinearSystem, budget: Budget) -> Result<HilbertBasis> {
    let n = system.vars;
    let mut meter = Meter::new(budget, "Hilbert basis");
    let col_eq: Vec<Vec<i64>> = (0..n).map(|j| system.equations.iter().map(|r| r[j]).collect()).collect();
    let col_cg: Vec<Vec<i64>> = (0..n).map(|j| system.congruences.iter().map(|(r, _)| r[j]).collect()).collect();
    let moduli: Vec<i64> = system.congruences.iter().map(|&(_, m)| m).collect();

    let max_size = system.degree_bound();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut level: Vec<State> = (0..n)
        .map(|j| {
            let mut x = vec![0u64; n];
            x[j] = 1;
            State { x, defect: col_eq[j].clone(), residue: col_cg[j].clone() }
        })
        .collect();

    let mut size = 1u64;
    while !level.is_empty() {
        let mut open = Vec::with_capacity(level.len());
        for s in level {
            meter.tick()?;
            if s.defect.iter().all(|&d| d == 0) && s.residue.iter().all(|&r| r == 0) {
                basis.push(s.x);
            } else {
                open.push(s);
            }
        }
        if size >= max_size {
            break;
        }
        size += 1;
        let mut seen: HashMap<Vec<u64>, ()> = HashMap::new();
        let mut next = Vec::new();
        for s in &open {
            let balanced = s.defect.iter().all(|&d| d == 0);
            for j in 0..n {
                if !balanced {
                    let d: i64 = s.defect.iter().zip(&col_eq[j]).map(|(a, b)| a * b).sum();
                    if d >= 0 {
                        continue;
                    }
                }
                let mut x = s.x.clone();
                x[j] += 1;
                if seen.contains_key(&x) || basis.iter().any(|b| dominates(&x, b)) {
                    continue;
                }
                meter.tick()?;
                let defect = s.defect.iter().zip(&col_eq[j]).map(|(a, b)| a + b).collect();
                let residue = s
                    .residue
                    .iter()
                    .zip(&col_cg[j])
                    .zip(&moduli)
                    .map(|((a, b), m)| (a + b).rem_euclid(*m))
                    .collect();
                seen.insert(x.clone(), ());
                next.push(State { x, defect, residue });
            }
        }
        level = next;
    }
    basis.sort();
    Ok(HilbertBasis { system: system.clone(), solutions: basis })
}

fn signed_columns(p: &ExplicitPresentation, sign: i64) -> Vec<Vec<i64>> {
    p.atoms().iter().map(|a| a.flatten().into_iter().map(|c| sign * c).collect()).collect()
}

/// Basis of {(x, y) ∈ N^m × N^m : Σ xᵢuᵢ = Σ yᵢuᵢ}.
pub fn kernel_pairs_basis(p: &ExplicitPresentation, budget: Budget) -> Result<HilbertBasis> {
    let mut cols = signed_columns(p, 1);
    cols.extend(signed_columns(p, -1));
    let sys = LinearSystem::from_group_blocks(p.group(), &[cols])?;
    hilbert_basis(&sys, budget)
}

/// Basis of {(x, t) ∈ N^m × N : Σ xᵢuᵢ = t·a}; t is the last coordinate.
pub fn power_fiber_basis(p: &ExplicitPresentation, a: &GroupElement, budget: Budget) -> Result<HilbertBasis> {
    if a.is_identity() {
        return Err(Error::Precondition("power fiber of the identity".into()));
    }
    if !p.group().contains(a) {
        return Err(Error::SignatureMismatch(format!("{a} is not in {}", p.group())));
    }
    let mut cols = signed_columns(p, 1);
    cols.push(a.flatten().into_iter().map(|c| -c).collect());
    let sys = LinearSystem::from_group_blocks(p.group(), &[cols])?;
    hilbert_basis(&sys, budget)
}
