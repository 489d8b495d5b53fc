use crate::description::Description;
use crate::error::{Error, Result};
use crate::model::lengths::LengthSet;
use crate::model::presentation::{box_points, ImplicitMonoid};

/// Reduced seminormal finitely primary monoid of rank s: the zero vector and
/// every vector of N^s with all coordinates at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeminormalFP {
    rank: usize,
}

pub fn seminormal_fp(s: usize) -> Result<SeminormalFP> {
    if s == 0 {
        return Err(Error::Invalid("rank must be at least 1".into()));
    }
    Ok(SeminormalFP { rank: s })
}

impl SeminormalFP {
    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl ImplicitMonoid for SeminormalFP {
    fn ambient_dim(&self) -> usize {
        self.rank
    }

    fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.rank && (v.iter().all(|&c| c == 0) || v.iter().all(|&c| c >= 1))
    }

    fn is_atom(&self, v: &[u64]) -> bool {
        v.len() == self.rank && v.iter().all(|&c| c >= 1) && v.iter().any(|&c| c == 1)
    }

    fn atoms_below(&self, v: &[u64]) -> Vec<Vec<u64>> {
        if v.iter().any(|&c| c == 0) {
            return Vec::new();
        }
        // shift the box to start at 1
        let reduced: Vec<u64> = v.iter().map(|&c| c - 1).collect();
        box_points(&reduced)
            .into_iter()
            .map(|u| u.into_iter().map(|c| c + 1).collect::<Vec<u64>>())
            .filter(|u| u.iter().any(|&c| c == 1))
            .collect()
    }

    /// {1} for atoms and [2, min aᵢ] otherwise; rank 1 is (N, +).
    fn closed_form_lengths(&self, v: &[u64]) -> Option<LengthSet> {
        if !self.contains(v) {
            return None;
        }
        let m = *v.iter().min().unwrap();
        Some(if m == 0 {
            LengthSet::identity()
        } else if self.rank == 1 {
            LengthSet::interval(m, m)
        } else if m == 1 {
            LengthSet::interval(1, 1)
        } else {
            LengthSet::interval(2, m)
        })
    }

    fn description(&self) -> Option<Description> {
        Some(Description::SeminormalFp { rank: self.rank })
    }

    fn name(&self) -> String {
        format!("seminormal finitely primary monoid of rank {}", self.rank)
    }
}
