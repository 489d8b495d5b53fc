//! Brute-force reference computations used to cross-check the search
//! engine. Everything here is deliberately naive: Cartesian products over
//! explicit boxes, no pruning and no memoization.

use crate::engine::{AtomSystem, LinearSystem};

/// All x with 0 ≤ xᵢ ≤ bound(i) and Σ xᵢuᵢ = target, lexicographically ascending.
/// The box bound is weight(target)/weight(uᵢ).
pub fn factorizations(sys: &AtomSystem, target: &[i64]) -> Vec<Vec<u64>> {
    let t = sys.reduce(target);
    let w = sys.weight(&t);
    if w < 0 {
        return Vec::new();
    }
    let bounds: Vec<u64> = sys.weights.iter().map(|&wi| (w / wi) as u64).collect();
    let mut out = Vec::new();
    odometer(&bounds, |x| {
        if sys.evaluate(x) == t {
            out.push(x.to_vec());
        }
    });
    out
}

/// Sorted distinct lengths of the factorizations found by [`factorizations`].
pub fn lengths(sys: &AtomSystem, target: &[i64]) -> Vec<u64> {
    let mut v: Vec<u64> = factorizations(sys, target).iter().map(|x| x.iter().sum()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Every point of Π [0, bounds(i)], lexicographically ascending.
pub fn odometer(bounds: &[u64], mut f: impl FnMut(&[u64])) {
    let mut x = vec![0u64; bounds.len()];
    loop {
        f(&x);
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = 0;
        }
    }
}

fn solves(sys: &LinearSystem, x: &[u64]) -> bool {
    let dot = |r: &[i64]| r.iter().zip(x).map(|(&a, &b)| a * b as i64).sum::<i64>();
    sys.equations.iter().all(|r| dot(r) == 0) && sys.congruences.iter().all(|(r, n)| dot(r).rem_euclid(*n) == 0)
}

/// Nonzero solutions in [0, bound]^vars.
pub fn box_solutions(sys: &LinearSystem, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    odometer(&vec![bound; sys.vars], |x| {
        if x.iter().any(|&c| c > 0) && solves(sys, x) {
            out.push(x.to_vec());
        }
    });
    out
}

/// Solutions in the box not dominating any other nonzero solution; these
/// are exactly the Hilbert basis elements inside the box.
pub fn box_minimal_solutions(sys: &LinearSystem, bound: u64) -> Vec<Vec<u64>> {
    let all = box_solutions(sys, bound);
    let mut out: Vec<Vec<u64>> = all
        .iter()
        .filter(|x| !all.iter().any(|y| y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Whether v is a sum of elements of `gens` (repetition allowed).
pub fn is_sum_of(v: &[u64], gens: &[Vec<u64>]) -> bool {
    fn rec(v: &mut Vec<u64>, gens: &[Vec<u64>], from: usize) -> bool {
        if v.iter().all(|&c| c == 0) {
            return true;
        }
        for i in from..gens.len() {
            if gens[i].iter().zip(v.iter()).all(|(a, b)| a <= b) {
                for (c, a) in v.iter_mut().zip(&gens[i]) {
                    *c -= a;
                }
                let ok = rec(v, gens, i);
                for (c, a) in v.iter_mut().zip(&gens[i]) {
                    *c += a;
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(&mut v.to_vec(), gens, 0)
}

/// Some x′ ≤ x with Σ aᵢx′ᵢ = target, by exhaustive depth-first scan.
pub fn sub_vector_with_sum(a: &[u64], x: &[u64], target: u64) -> Option<Vec<u64>> {
    fn rec(a: &[u64], x: &[u64], i: usize, rem: u64, y: &mut Vec<u64>) -> bool {
        if i == a.len() {
            return rem == 0;
        }
        let top = x[i].min(rem / a[i]);
        for c in (0..=top).rev() {
            y[i] = c;
            if rec(a, x, i + 1, rem - c * a[i], y) {
                return true;
            }
        }
        y[i] = 0;
        false
    }
    let mut y = vec![0u64; a.len()];
    rec(a, x, 0, target, &mut y).then_some(y)
}
