use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The group Z^r × Z/n₁ × … × Z/n_k.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Element of an [`FGAbelianGroup`]; torsion components are kept reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(n) = torsion.iter().find(|&&n| n < 2) {
            return Err(Error::Invalid(format!("torsion order {n} is below 2")));
        }
        if torsion.iter().any(|&n| n > i64::MAX as u64) {
            return Err(Error::Invalid("torsion order exceeds i64".into()));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(0, vec![n])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    /// Smallest e with e·g = 0 for all g; `None` for infinite groups.
    pub fn exponent(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion.iter().fold(1u64, |acc, &n| num_integer::lcm(acc, n)))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { free: vec![0; self.free_rank], torsion: vec![0; self.torsion.len()] }
    }

    /// Builds an element, reducing torsion components.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::SignatureMismatch(format!(
                "expected {} free and {} torsion coordinates, got {} and {}",
                self.free_rank,
                self.torsion.len(),
                free.len(),
                torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(&t, &n)| t.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(&t, &n)| t < n)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("{g} is not an element of {self}")))
        }
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let free = g
            .free
            .iter()
            .zip(&h.free)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("group addition")))
            .collect::<Result<Vec<_>>>()?;
        let torsion = g
            .torsion
            .iter()
            .zip(&h.torsion)
            .zip(&self.torsion)
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let free = g
            .free
            .iter()
            .map(|&a| a.checked_neg().ok_or(Error::Overflow("group negation")))
            .collect::<Result<Vec<_>>>()?;
        let torsion = g.torsion.iter().zip(&self.torsion).map(|(&a, &n)| (n - a) % n).collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.add(g, &self.neg(h)?)
    }

    /// k·g for an integer k.
    pub fn scale(&self, g: &GroupElement, k: i64) -> Result<GroupElement> {
        self.check(g)?;
        let free = g
            .free
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::Overflow("group scaling")))
            .collect::<Result<Vec<_>>>()?;
        let torsion = g
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(&a, &n)| ((a as i128 * k as i128).rem_euclid(n as i128)) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Σ cᵢ·gᵢ.
    pub fn combine(&self, terms: &[(i64, &GroupElement)]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &(c, g) in terms {
            if c != 0 {
                acc = self.add(&acc, &self.scale(g, c)?)?;
            }
        }
        Ok(acc)
    }

    /// All elements of a finite group in lexicographic order of residues.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self.order().ok_or_else(|| Error::Invalid(format!("{self} is not finite")))?;
        if order > 1 << 20 {
            return Err(Error::Invalid(format!("{self} is too large to enumerate")));
        }
        let mut out = vec![Vec::new()];
        for &n in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..n).map(move |r| {
                        let mut w = v.clone();
                        w.push(r);
                        w
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(|torsion| GroupElement { free: Vec::new(), torsion }).collect())
    }

    /// Order of g; `None` if g has infinite order.
    pub fn order_of(&self, g: &GroupElement) -> Option<u64> {
        if g.free.iter().any(|&a| a != 0) {
            return None;
        }
        Some(
            g.torsion
                .iter()
                .zip(&self.torsion)
                .fold(1u64, |acc, (&a, &n)| num_integer::lcm(acc, n / num_integer::gcd(a, n))),
        )
    }
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.free.iter().all(|&a| a == 0) && self.torsion.iter().all(|&a| a == 0)
    }

    /// Free coordinates followed by torsion residues.
    pub fn flatten(&self) -> Vec<i64> {
        let mut v = self.free.clone();
        v.extend(self.torsion.iter().map(|&t| t as i64));
        v
    }

    pub fn nat(coords: &[u64]) -> Result<GroupElement> {
        let free = coords
            .iter()
            .map(|&c| i64::try_from(c).map_err(|_| Error::Overflow("coordinate conversion")))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { free, torsion: Vec::new() })
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|a| a.to_string()).collect();
        if self.torsion.is_empty() {
            write!(f, "({})", free.join(","))
        } else {
            let tor: Vec<String> = self.torsion.iter().map(|a| a.to_string()).collect();
            write!(f, "({}|{})", free.join(","), tor.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_addition() {
        let g = FGAbelianGroup::free(1);
        let a = g.element(vec![1], vec![]).unwrap();
        let b = g.element(vec![2], vec![]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap().free, vec![3]);
    }

    #[test]
    fn cyclic_addition_wraps() {
        let g = FGAbelianGroup::cyclic(3).unwrap();
        let two = g.element(vec![], vec![2]).unwrap();
        assert_eq!(g.add(&two, &two).unwrap().torsion, vec![1]);
        assert_eq!(g.add(&two, &g.identity()).unwrap(), two);
    }

    #[test]
    fn mismatched_signature_is_rejected() {
        let g = FGAbelianGroup::free(2);
        let h = FGAbelianGroup::free(1);
        let a = g.identity();
        let b = h.identity();
        assert!(matches!(g.add(&a, &b), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn torsion_order_must_be_at_least_two() {
        assert!(FGAbelianGroup::new(0, vec![1]).is_err());
        assert!(FGAbelianGroup::new(0, vec![0]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = FGAbelianGroup::new(0, vec![2, 4]).unwrap();
        assert_eq!(g.order(), Some(8));
        assert_eq!(g.exponent(), Some(4));
        assert_eq!(g.order_of(&g.element(vec![], vec![1, 2]).unwrap()), Some(2));
        assert_eq!(g.order_of(&g.element(vec![], vec![0, 1]).unwrap()), Some(4));
        assert_eq!(g.elements().unwrap().len(), 8);
    }
}
