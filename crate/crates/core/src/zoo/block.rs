use crate::error::{Error, Result};
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::presentation::ExplicitPresentation;

/// Zero-sum sequences over G₀, one free coordinate per element of G₀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMonoid {
    pub group: FGAbelianGroup,
    pub g0: Vec<GroupElement>,
    pub presentation: ExplicitPresentation,
}

struct Indexer {
    orders: Vec<u64>,
}

impl Indexer {
    fn index(&self, g: &GroupElement) -> usize {
        g.torsion.iter().zip(&self.orders).fold(0usize, |acc, (&r, &n)| acc * n as usize + r as usize)
    }

    fn size(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }
}

struct Enumerator<'a> {
    group: &'a FGAbelianGroup,
    ix: Indexer,
    g0: &'a [GroupElement],
    g0_index: Vec<usize>,
    atoms: Vec<Vec<u64>>,
    nodes: u64,
}

impl<'a> Enumerator<'a> {
    /// `sums[h]`: h is the sum of a nonempty subsequence of the current
    /// zero-sum free sequence `counts` whose total is `sigma`.
    fn dfs(&mut self, from: usize, counts: &mut Vec<u64>, sigma: &GroupElement, sums: &[bool]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > 50_000_000 {
            return Err(Error::Budget { limit: 50_000_000, context: "minimal zero-sum enumeration".into() });
        }
        for j in from..self.g0.len() {
            let g = &self.g0[j];
            let total = self.group.add(sigma, g)?;
            counts[j] += 1;
            if total.is_identity() {
                self.atoms.push(counts.clone());
            } else {
                // T·g stays zero-sum free iff g ≠ 0 and -g is not a
                // subsequence sum of T
                let neg = self.group.neg(g)?;
                if !g.is_identity() && !sums[self.ix.index(&neg)] {
                    let mut next = sums.to_vec();
                    next[self.g0_index[j]] = true;
                    for (h, &on) in sums.iter().enumerate() {
                        if on {
                            let hg = self.add_index(h, self.g0_index[j]);
                            next[hg] = true;
                        }
                    }
                    self.dfs(j, counts, &total, &next)?;
                }
            }
            counts[j] -= 1;
        }
        Ok(())
    }

    fn add_index(&self, a: usize, b: usize) -> usize {
        // mixed-radix addition of two flat indices
        let mut out = 0usize;
        let mut a = a;
        let mut b = b;
        let mut place = 1usize;
        for &n in self.ix.orders.iter().rev() {
            let n = n as usize;
            let d = (a % n + b % n) % n;
            out += d * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    }
}

/// B(G₀) for a finite group G and G₀ ⊆ G (all of G when `subset` is `None`).
/// Atoms are the minimal zero-sum sequences, found by a depth-first search
/// over zero-sum free sequences in nondecreasing index order.
pub fn block_monoid(group: &FGAbelianGroup, subset: Option<Vec<GroupElement>>) -> Result<BlockMonoid> {
    if !group.is_finite() {
        return Err(Error::Invalid(format!("{group} is not finite")));
    }
    let mut g0 = match subset {
        Some(s) => s,
        None => group.elements()?,
    };
    if let Some(g) = g0.iter().find(|g| !group.contains(g)) {
        return Err(Error::SignatureMismatch(format!("{g} is not in {group}")));
    }
    g0.sort();
    g0.dedup();
    if g0.is_empty() {
        return Err(Error::Invalid("G0 is empty".into()));
    }
    let ix = Indexer { orders: group.torsion_orders().to_vec() };
    if ix.size() > 64 {
        return Err(Error::Invalid(format!("{group} is too large for atom enumeration")));
    }
    let g0_index = g0.iter().map(|g| ix.index(g)).collect();
    let size = ix.size();
    let mut e = Enumerator { group, ix, g0: &g0, g0_index, atoms: Vec::new(), nodes: 0 };
    let mut counts = vec![0u64; g0.len()];
    e.dfs(0, &mut counts, &group.identity(), &vec![false; size])?;
    let mut atoms = e.atoms;
    atoms.sort_by(|a, b| {
        let la: u64 = a.iter().sum();
        let lb: u64 = b.iter().sum();
        la.cmp(&lb).then_with(|| b.cmp(a))
    });
    let atoms = atoms.iter().map(|a| GroupElement::nat(a)).collect::<Result<Vec<_>>>()?;
    let presentation = ExplicitPresentation::with_coordinate_sum(FGAbelianGroup::free(g0.len()), atoms)?;
    Ok(BlockMonoid { group: group.clone(), g0, presentation })
}

impl BlockMonoid {
    /// The sequence with the given multiplicity of each element of G₀.
    pub fn sequence(&self, counts: &[u64]) -> Result<GroupElement> {
        if counts.len() != self.g0.len() {
            return Err(Error::SignatureMismatch("sequence length".into()));
        }
        GroupElement::nat(counts)
    }

    /// σ(S) for a sequence given by multiplicities.
    pub fn sum(&self, counts: &[u64]) -> Result<GroupElement> {
        let mut acc = self.group.identity();
        for (c, g) in counts.iter().zip(&self.g0) {
            acc = self.group.add(&acc, &self.group.scale(g, *c as i64)?)?;
        }
        Ok(acc)
    }
}
