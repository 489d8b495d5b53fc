#![allow(dead_code)]

use elastika_core::engine::factor::{enumerate_in, max_length_in, min_length_in};
use elastika_core::engine::{hilbert_basis, kernel_pairs_basis, power_fiber_basis, AtomSystem, Budget, LengthTable, LinearSystem};
use elastika_core::oracle;
use elastika_core::{ExplicitPresentation, FGAbelianGroup, GroupElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn desk() -> ExplicitPresentation {
    let g = FGAbelianGroup::free(2);
    let atoms = vec![g.element(vec![2, 0], vec![]).unwrap(), g.element(vec![3, 0], vec![]).unwrap(), g.element(vec![0, 1], vec![]).unwrap()];
    ExplicitPresentation::with_coordinate_sum(g, atoms).unwrap()
}

pub fn el(g: &FGAbelianGroup, free: &[i64], torsion: &[i64]) -> GroupElement {
    g.element(free.to_vec(), torsion.to_vec()).unwrap()
}

/// Up to 4 distinct generators with free coordinates in [0, 6] (not all
/// zero) in Z^d ⊕ (Z/n)^{≤1}, n ≤ 5.
pub fn random_instance(rng: &mut ChaCha8Rng) -> ExplicitPresentation {
    let d = rng.gen_range(1..=2usize);
    let torsion: Vec<u64> = if rng.gen_bool(0.5) { vec![rng.gen_range(2..=5)] } else { vec![] };
    let g = FGAbelianGroup::new(d, torsion.clone()).unwrap();
    let m = rng.gen_range(1..=4usize);
    let mut atoms: Vec<GroupElement> = Vec::new();
    while atoms.len() < m {
        let free: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=6)).collect();
        if free.iter().all(|&c| c == 0) {
            continue;
        }
        let t: Vec<i64> = torsion.iter().map(|&n| rng.gen_range(0..n as i64)).collect();
        let a = g.element(free, t).unwrap();
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    ExplicitPresentation::with_coordinate_sum(g, atoms).unwrap()
}

pub fn random_target(p: &ExplicitPresentation, rng: &mut ChaCha8Rng) -> GroupElement {
    let g = p.group();
    if rng.gen_bool(0.25) {
        let free: Vec<i64> = (0..g.free_rank()).map(|_| rng.gen_range(0..=12)).collect();
        let t: Vec<i64> = g.torsion_orders().iter().map(|&n| rng.gen_range(0..n as i64)).collect();
        return g.element(free, t).unwrap();
    }
    let mut acc = g.identity();
    for u in p.atoms() {
        let c = rng.gen_range(0..=3);
        acc = g.add(&acc, &g.scale(u, c).unwrap()).unwrap();
    }
    acc
}

fn check_basis(sys: &LinearSystem, basis: &[Vec<u64>], bound: u64, what: &str) -> Result<(), String> {
    let cap = sys.degree_bound();
    for s in basis {
        if s.iter().sum::<u64>() > cap {
            return Err(format!("{what}: {s:?} exceeds the degree bound {cap}"));
        }
        if !sys.is_solution(s) {
            return Err(format!("{what}: {s:?} is not a solution"));
        }
    }
    let inside: Vec<Vec<u64>> = basis.iter().filter(|s| s.iter().all(|&c| c <= bound)).cloned().collect();
    let minimal = oracle::box_minimal_solutions(sys, bound);
    if inside != minimal {
        return Err(format!("{what}: basis in box {inside:?} vs brute force {minimal:?}"));
    }
    for v in oracle::box_solutions(sys, bound) {
        if !oracle::is_sum_of(&v, basis) {
            return Err(format!("{what}: solution {v:?} is not a sum of basis elements"));
        }
    }
    Ok(())
}

/// Compares factorizations, length sets, extremes and Hilbert bases of one
/// instance against the brute-force oracle.
pub fn check_instance(p: &ExplicitPresentation, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let budget = Budget::default();
    let sys = AtomSystem::from_explicit(p).map_err(|e| e.to_string())?;
    let mut table = LengthTable::new(&sys, budget);
    for _ in 0..4 {
        let g = random_target(p, rng);
        let t = g.flatten();
        let want = oracle::factorizations(&sys, &t);
        let got = enumerate_in(&sys, &t, budget).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("factorizations of {g}: {got:?} vs {want:?}"));
        }
        let lens = oracle::lengths(&sys, &t);
        let table_lens = table.lengths(&t).map_err(|e| e.to_string())?.map(|l| l.values().to_vec()).unwrap_or_default();
        if table_lens != lens {
            return Err(format!("lengths of {g}: {table_lens:?} vs {lens:?}"));
        }
        let lo = min_length_in(&sys, &t, budget).map_err(|e| e.to_string())?;
        let hi = max_length_in(&sys, &t, budget).map_err(|e| e.to_string())?;
        if lo != lens.first().copied() || hi != lens.last().copied() {
            return Err(format!("extremes of {g}: {lo:?}, {hi:?} vs {lens:?}"));
        }
        if !want.is_empty() && !g.is_identity() {
            // four atoms in rank 2 can need ~5·10^7 nodes for targets near (30, 45)
            let pf = power_fiber_basis(p, &g, Budget::new(100_000_000)).map_err(|e| format!("power fiber of {g}: {e}"))?;
            check_basis(&pf.system, &pf.solutions, 4, "power fiber")?;
        }
    }
    if p.atoms().len() <= 3 {
        let kp = kernel_pairs_basis(p, budget).map_err(|e| format!("kernel pairs: {e}"))?;
        let bound = if p.atoms().len() <= 2 { 6 } else { 3 };
        check_basis(&kp.system, &kp.solutions, bound, "kernel pairs")?;
    }
    let vars = rng.gen_range(2..=4usize);
    let eq: Vec<i64> = (0..vars).map(|_| rng.gen_range(-3..=3)).collect();
    let congruences = if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=5);
        vec![((0..vars).map(|_| rng.gen_range(0..n)).collect(), n)]
    } else {
        vec![]
    };
    let ls = LinearSystem::new(vars, vec![eq], congruences).map_err(|e| e.to_string())?;
    let hb = hilbert_basis(&ls, budget).map_err(|e| format!("system {ls:?}: {e}"))?;
    check_basis(&ls, &hb.solutions, 5, "random system")
}
