//! Given Σ aᵢxᵢ = t·Πaᵢ with t ≥ 2, find x′ ≤ x with Σ aᵢx′ᵢ = Πaᵢ, and
//! by induction split x into t such pieces. The construction follows the
//! case analysis on min aᵢ and on the block of coefficients equal to 1.

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Idx = SmallVec<[usize; 8]>;
type Row = SmallVec<[u64; 8]>;

/// t vectors summing to x, each with Σ aᵢxᵢ⁽ʲ⁾ = Πaᵢ, stored row by row.
/// The first row is x′.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma32Output {
    n: usize,
    rows: Vec<u64>,
}

impl Lemma32Output {
    pub fn x_prime(&self) -> &[u64] {
        &self.rows[..self.n]
    }

    pub fn parts(&self) -> std::slice::ChunksExact<'_, u64> {
        self.rows.chunks_exact(self.n)
    }

    pub fn part_count(&self) -> usize {
        self.rows.len() / self.n
    }

    pub fn to_vecs(&self) -> Vec<Vec<u64>> {
        self.parts().map(<[u64]>::to_vec).collect()
    }
}

fn dot(a: &[u64], x: &[u64]) -> Result<u64> {
    a.iter().zip(x).try_fold(0u64, |acc, (&p, &q)| {
        p.checked_mul(q).and_then(|v| acc.checked_add(v)).ok_or(Error::Overflow("lemma premise"))
    })
}

/// Multiplicities cᵢ ≤ counts[i] with lo ≤ Σ cᵢ·weights[i] ≤ hi: the
/// largest reachable sum from a bounded-knapsack table over [0, hi], where
/// `took[i][s]` is how many copies of item i the first path to s uses.
fn bounded_subset(weights: &[u64], counts: &[u64], lo: u64, hi: u64) -> Result<Option<Row>> {
    if hi > 50_000_000 {
        return Err(Error::Budget { limit: 50_000_000, context: "bounded subset sum".into() });
    }
    let width = hi as usize + 1;
    let n = weights.len();
    let mut reach = vec![false; width];
    reach[0] = true;
    let mut took = vec![0u64; n * width];
    for (i, (&w, &c)) in weights.iter().zip(counts).enumerate() {
        if w == 0 || c == 0 || w > hi {
            continue;
        }
        let w = w as usize;
        let row = &mut took[i * width..(i + 1) * width];
        for s in w..width {
            if !reach[s] && reach[s - w] && row[s - w] < c {
                reach[s] = true;
                row[s] = row[s - w] + 1;
            }
        }
    }
    let Some(best) = (lo as usize..width).rev().find(|&s| reach[s]) else {
        return Ok(None);
    };
    let mut out: Row = SmallVec::from_elem(0, n);
    let mut s = best;
    for i in (0..n).rev() {
        let c = took[i * width + s];
        out[i] = c;
        s -= c as usize * weights[i] as usize;
    }
    debug_assert_eq!(s, 0);
    Ok(Some(out))
}

/// On entry pick[i] holds the count for each i in `items` (sorted by
/// decreasing aᵢ, `skip` excluded); on success it holds cᵢ ≤ count with
/// lo ≤ Σ cᵢaᵢ ≤ hi, and the sum is returned. Greedy first, then the
/// knapsack table, which rereads the counts from `count`.
fn choose(
    a: &[u64],
    items: &[usize],
    skip: Option<usize>,
    count: impl Fn(usize) -> u64,
    lo: u64,
    hi: u64,
    pick: &mut [u64],
) -> Result<Option<u64>> {
    let mut room = hi;
    for &i in items.iter().filter(|&&i| Some(i) != skip) {
        let c = pick[i].min(room / a[i]);
        pick[i] = c;
        room -= c * a[i];
    }
    if hi - room >= lo {
        return Ok(Some(hi - room));
    }
    let idx: Idx = items.iter().copied().filter(|&i| Some(i) != skip).collect();
    let wts: Row = idx.iter().map(|&i| a[i]).collect();
    let cnt: Row = idx.iter().map(|&i| count(i)).collect();
    let Some(c) = bounded_subset(&wts, &cnt, lo, hi)? else {
        return Ok(None);
    };
    for (k, &i) in idx.iter().enumerate() {
        pick[i] = c[k];
    }
    Ok(Some(dot(&wts, &c)?))
}

/// Take from the coordinates `idx` (coefficient 1) a total of `need`.
fn fill_ones(x: &[u64], idx: &[usize], need: u64, out: &mut [u64]) -> Result<()> {
    let mut need = need;
    for &i in idx {
        let take = x[i].min(need);
        out[i] += take;
        need -= take;
    }
    if need > 0 {
        return Err(Error::Internal("coefficient-one block too small".into()));
    }
    Ok(())
}

/// The reduction shared by Case 1 and Case 2.2: with j the dominant index,
/// write xᵢ = yᵢ·aⱼ + rᵢ over the other non-one indices and balance
/// against Q = P/aⱼ, the product of their coefficients.
fn dominant_split(a: &[u64], x: &[u64], j: usize, desc: &[usize], p: u64, out: &mut [u64]) -> Result<()> {
    let aj = a[j];
    let q = p / aj;
    let mut big_y = 0u64;
    for &i in desc.iter().filter(|&&i| i != j) {
        out[i] = x[i] / aj;
        big_y = big_y.checked_add(a[i] * out[i]).ok_or(Error::Overflow("lemma premise"))?;
    }
    let used = if big_y <= q {
        big_y
    } else {
        // some y′ ≤ y with Q − x_j ≤ Σ y′ᵢaᵢ ≤ Q
        choose(a, desc, Some(j), |i| x[i] / aj, q.saturating_sub(x[j]), q, out)?
            .ok_or_else(|| Error::Internal("no balancing sub-multiset in the dominant split".into()))?
    };
    if used > q || q - used > x[j] {
        return Err(Error::Internal("dominant split left an unfillable remainder".into()));
    }
    for &i in desc.iter().filter(|&&i| i != j) {
        out[i] *= aj;
    }
    out[j] = q - used;
    Ok(())
}

/// The non-one index with the largest share aⱼxⱼ, first on ties.
fn dominant(a: &[u64], x: &[u64], desc: &[usize]) -> usize {
    let mut j = desc[0];
    for &i in &desc[1..] {
        let (s, b) = (a[i] * x[i], a[j] * x[j]);
        if s > b || (s == b && i < j) {
            j = i;
        }
    }
    j
}

/// One x′ ≤ x with Σ aᵢx′ᵢ = Πaᵢ written into the zeroed `out`, assuming
/// Σ aᵢxᵢ = t·Πaᵢ, t ≥ 2. `desc` lists the coefficients ≥ 2 by decreasing
/// value.
fn single(a: &[u64], ones: &[usize], desc: &[usize], x: &[u64], t: u64, p: u64, out: &mut [u64]) -> Result<()> {
    let n = a.len();
    if n == 1 {
        out[0] = 1;
        return Ok(());
    }
    if n == 2 {
        if a[0] * x[0] >= p {
            out[0] = a[1];
        } else {
            out[1] = a[0];
        }
        return Ok(());
    }
    if ones.is_empty() {
        // Case 1: the index carrying the largest share aⱼxⱼ ≥ tP/n
        let j = dominant(a, x, desc);
        return dominant_split(a, x, j, desc, p, out);
    }
    // Case 2: ones occupy positions tau..n after renumbering
    let x1: u64 = ones.iter().map(|&i| x[i]).sum();
    if x1 >= p {
        return fill_ones(x, ones, p, out);
    }
    match desc.len() {
        0 => unreachable!("all-ones coefficients give P = 1 ≤ Σxᵢ"),
        1 => {
            // x_big > t − 1, so one copy already equals P
            out[desc[0]] = 1;
            return Ok(());
        }
        2 => {
            let (i1, i2) = (desc[0], desc[1]);
            if a[i1] * x[i1] >= p {
                out[i1] = a[i2];
            } else if a[i2] * x[i2] >= p {
                out[i2] = a[i1];
            } else {
                // a₁x₁ < P and a₂x₂ < P, so a₁x₁ + Σ ones > P
                out[i1] = x[i1];
                fill_ones(x, ones, p - a[i1] * x[i1], out)?;
            }
            return Ok(());
        }
        _ => {}
    }
    let tau = desc.len() as u64 + 1;
    if x1 * tau >= t * p {
        // Case 2.1: the ones can absorb any remainder up to min aᵢ
        for &i in desc {
            out[i] = x[i];
        }
        let used = choose(a, desc, None, |i| x[i], p.saturating_sub(x1), p, out)?
            .ok_or_else(|| Error::Internal("case 2.1 found no sub-multiset".into()))?;
        return fill_ones(x, ones, p - used, out);
    }
    // Case 2.2: some aⱼxⱼ ≥ tP/τ among the non-one coefficients
    let j = dominant(a, x, desc);
    if a[j] * x[j] * tau < t * p {
        return Err(Error::Internal("case 2.2 without a dominant coefficient".into()));
    }
    let mut z = x[j];
    for &i in desc.iter().filter(|&&i| i != j) {
        z += (x[i] / a[j]) * a[i];
    }
    let z = a[j] * z;
    if z < p {
        out[j] = x[j];
        for &i in desc.iter().filter(|&&i| i != j) {
            out[i] = a[j] * (x[i] / a[j]);
        }
        fill_ones(x, ones, p - z, out)
    } else {
        dominant_split(a, x, j, desc, p, out)
    }
}

pub fn lemma32_decompose(a: &[u64], x: &[u64], t: u64) -> Result<Lemma32Output> {
    if a.is_empty() || a.len() != x.len() {
        return Err(Error::Precondition("coefficient and multiplicity lists must be nonempty and equal in length".into()));
    }
    if a.contains(&0) {
        return Err(Error::Precondition("coefficients must be positive".into()));
    }
    if t < 2 {
        return Err(Error::Precondition("t must be at least 2".into()));
    }
    let p = a.iter().try_fold(1u64, |acc, &v| acc.checked_mul(v)).ok_or(Error::Overflow("coefficient product"))?;
    let total = dot(a, x)?;
    if Some(total) != p.checked_mul(t) {
        return Err(Error::Precondition(format!("Σ aᵢxᵢ = {total} is not {t}·{p}")));
    }
    let n = a.len();
    let (mut ones, mut desc) = (Idx::new(), Idx::new());
    for (i, &v) in a.iter().enumerate() {
        if v == 1 {
            ones.push(i);
        } else {
            desc.push(i);
        }
    }
    desc.sort_by_key(|&i| std::cmp::Reverse(a[i]));
    let mut rows = vec![0u64; n * t as usize];
    let mut left = Row::from_slice(x);
    for (k, s) in (2..=t).rev().enumerate() {
        let piece = &mut rows[k * n..(k + 1) * n];
        single(a, &ones, &desc, &left, s, p, piece)?;
        if piece.iter().zip(&left).any(|(u, v)| u > v) || dot(a, piece)? != p {
            return Err(Error::Internal(format!("piece {piece:?} violates the bound for a = {a:?}, x = {left:?}")));
        }
        for (l, u) in left.iter_mut().zip(piece.iter()) {
            *l -= u;
        }
    }
    let last = (t as usize - 1) * n;
    rows[last..].copy_from_slice(&left);
    Ok(Lemma32Output { n, rows })
}
