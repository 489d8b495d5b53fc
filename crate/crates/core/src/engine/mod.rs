//! Factorization search, sets of lengths and Hilbert bases.

pub mod factor;
pub mod hilbert;
pub mod lengths;

use crate::error::{Error, Result};
use crate::model::presentation::ExplicitPresentation;

pub use factor::{enumerate_factorizations, max_length, min_length, FactorizationSet};
pub use hilbert::{hilbert_basis, kernel_pairs_basis, power_fiber_basis, HilbertBasis, LinearSystem};
pub use lengths::{length_set, LengthTable};

/// Node limit for a single search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: 10_000_000 }
    }
}

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { nodes }
    }
}

pub(crate) struct Meter {
    used: u64,
    limit: u64,
    context: &'static str,
}

impl Meter {
    pub(crate) fn new(budget: Budget, context: &'static str) -> Self {
        Meter { used: 0, limit: budget.nodes, context }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget { limit: self.limit, context: self.context.to_string() })
        } else {
            Ok(())
        }
    }
}

/// Atoms as flattened integer vectors (free coordinates, then torsion
/// residues) with the moduli needed to reduce torsion and a positive weight
/// per atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSystem {
    pub(crate) moduli: Vec<i64>,
    pub(crate) atoms: Vec<Vec<i64>>,
    pub(crate) weights: Vec<i64>,
    pub(crate) grading: Vec<i64>,
    /// Atoms have nonnegative free coordinates, so partial sums can only grow.
    pub(crate) nonneg: bool,
}

impl AtomSystem {
    pub fn new(moduli: Vec<i64>, grading: Vec<i64>, atoms: Vec<Vec<i64>>) -> Result<Self> {
        let dim = moduli.len();
        if grading.len() != dim {
            return Err(Error::SignatureMismatch("grading length".into()));
        }
        let mut weights = Vec::with_capacity(atoms.len());
        for a in &atoms {
            if a.len() != dim {
                return Err(Error::SignatureMismatch("atom length".into()));
            }
            let w: i64 = a.iter().zip(&grading).map(|(x, g)| x * g).sum();
            if w < 1 {
                return Err(Error::Precondition(format!("atom {a:?} has non-positive weight {w}")));
            }
            weights.push(w);
        }
        let nonneg = atoms
            .iter()
            .all(|a| a.iter().zip(&moduli).all(|(&x, &n)| n != 0 || x >= 0));
        Ok(AtomSystem { moduli, atoms, weights, grading, nonneg })
    }

    pub fn from_explicit(p: &ExplicitPresentation) -> Result<Self> {
        let all: Vec<usize> = (0..p.atoms().len()).collect();
        Self::from_explicit_subset(p, &all)
    }

    pub fn from_explicit_subset(p: &ExplicitPresentation, idx: &[usize]) -> Result<Self> {
        let g = p.group();
        let mut moduli = vec![0i64; g.free_rank()];
        moduli.extend(g.torsion_orders().iter().map(|&n| n as i64));
        let mut grading = p.grading().to_vec();
        grading.extend(std::iter::repeat(0).take(g.torsion_orders().len()));
        let atoms = idx.iter().map(|&i| p.atoms()[i].flatten()).collect();
        Self::new(moduli, grading, atoms)
    }

    /// Atoms in N^d graded by coordinate sum.
    pub fn from_nat_atoms(dim: usize, atoms: &[Vec<u64>]) -> Result<Self> {
        let atoms = atoms
            .iter()
            .map(|a| a.iter().map(|&c| i64::try_from(c).map_err(|_| Error::Overflow("atom"))).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Self::new(vec![0; dim], vec![1; dim], atoms)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn weight(&self, v: &[i64]) -> i64 {
        v.iter().zip(&self.grading).map(|(x, g)| x * g).sum()
    }

    /// v − c·atom, torsion reduced.
    #[inline]
    pub(crate) fn sub_scaled(&self, v: &[i64], i: usize, c: i64, out: &mut [i64]) {
        for (k, o) in out.iter_mut().enumerate() {
            let x = v[k] - c * self.atoms[i][k];
            let n = self.moduli[k];
            *o = if n == 0 { x } else { x.rem_euclid(n) };
        }
    }

    #[inline]
    pub(crate) fn is_zero(v: &[i64]) -> bool {
        v.iter().all(|&x| x == 0)
    }

    /// Cheap test that v cannot be a nonempty-or-empty sum of atoms.
    #[inline]
    pub(crate) fn obviously_infeasible(&self, v: &[i64], w: i64) -> bool {
        if w < 0 || (w == 0 && !Self::is_zero(v)) {
            return true;
        }
        self.nonneg && v.iter().zip(&self.moduli).any(|(&x, &n)| n == 0 && x < 0)
    }

    /// Σ xᵢ·atomᵢ, torsion reduced.
    pub fn evaluate(&self, x: &[u64]) -> Vec<i64> {
        let mut v = vec![0i64; self.dim()];
        for (i, &c) in x.iter().enumerate() {
            for k in 0..v.len() {
                v[k] += c as i64 * self.atoms[i][k];
            }
        }
        for (k, n) in self.moduli.iter().enumerate() {
            if *n != 0 {
                v[k] = v[k].rem_euclid(*n);
            }
        }
        v
    }

    /// Reduces torsion coordinates of a target vector.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.moduli).map(|(&x, &n)| if n == 0 { x } else { x.rem_euclid(n) }).collect()
    }
}
