use num_integer::Integer;

use crate::error::{Error, Result};
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::presentation::ExplicitPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalMonoid {
    pub presentation: ExplicitPresentation,
    /// Minimal generators, ascending.
    pub generators: Vec<u64>,
    /// Input generators that are sums of smaller ones.
    pub dropped: Vec<u64>,
}

/// The submonoid of (N, +) generated by `gens`, presented in Z by its
/// minimal generators.
pub fn numerical_monoid(gens: &[u64]) -> Result<NumericalMonoid> {
    if gens.is_empty() {
        return Err(Error::Invalid("empty generator list".into()));
    }
    if gens.contains(&0) {
        return Err(Error::Invalid("0 is not a generator".into()));
    }
    if gens.iter().fold(0u64, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::Invalid(format!("generators {gens:?} have gcd above 1")));
    }
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let top = *sorted.last().unwrap() as usize;
    if top > 1 << 24 {
        return Err(Error::Invalid("generator too large".into()));
    }
    // reachable[v]: v is a sum of kept generators
    let mut reachable = vec![false; top + 1];
    reachable[0] = true;
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for &g in &sorted {
        if reachable[g as usize] {
            dropped.push(g);
            continue;
        }
        kept.push(g);
        for v in g as usize..=top {
            if reachable[v - g as usize] {
                reachable[v] = true;
            }
        }
    }
    let group = FGAbelianGroup::free(1);
    let atoms = kept.iter().map(|&g| GroupElement { free: vec![g as i64], torsion: vec![] }).collect();
    let presentation = ExplicitPresentation::with_coordinate_sum(group, atoms)?;
    Ok(NumericalMonoid { presentation, generators: kept, dropped })
}

/// Element n of a numerical monoid.
pub fn numerical_element(n: i64) -> GroupElement {
    GroupElement { free: vec![n], torsion: vec![] }
}
