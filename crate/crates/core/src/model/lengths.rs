use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// A finite nonempty set of factorization lengths; `{0}` for the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LengthSet {
    values: Vec<u64>,
}

impl LengthSet {
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut values: Vec<u64> = values.into_iter().collect();
        values.sort_unstable();
        values.dedup();
        if values.is_empty() {
            return Err(Error::Invalid("empty set of lengths".into()));
        }
        Ok(LengthSet { values })
    }

    pub fn identity() -> Self {
        LengthSet { values: vec![0] }
    }

    pub fn interval(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi);
        LengthSet { values: (lo..=hi).collect() }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn min(&self) -> u64 {
        self.values[0]
    }

    pub fn max(&self) -> u64 {
        *self.values.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: u64) -> bool {
        self.values.binary_search(&k).is_ok()
    }

    /// max/min; 1 for `{0}`.
    pub fn elasticity(&self) -> Rational {
        if self.min() == 0 {
            return ratio(1, 1);
        }
        ratio(self.max() as i64, self.min() as i64)
    }

    /// { x + y : x ∈ self, y ∈ other }.
    pub fn sumset(&self, other: &LengthSet) -> LengthSet {
        let mut v = Vec::with_capacity(self.len() * other.len());
        for &x in &self.values {
            for &y in &other.values {
                v.push(x + y);
            }
        }
        LengthSet::new(v).unwrap()
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_elasticity_one() {
        assert_eq!(LengthSet::identity().elasticity(), ratio(1, 1));
    }

    #[test]
    fn sumset_of_intervals() {
        let a = LengthSet::new([4, 5, 6]).unwrap();
        let b = LengthSet::new([1]).unwrap();
        assert_eq!(a.sumset(&b).values(), &[5, 6, 7]);
        assert_eq!(LengthSet::new([2, 3]).unwrap().sumset(&LengthSet::new([2, 3]).unwrap()).values(), &[4, 5, 6]);
    }

    #[test]
    fn empty_rejected() {
        assert!(LengthSet::new(Vec::new()).is_err());
    }
}
