use std::path::Path;

use elastika_core::description::Description;
use elastika_core::engine::factor::enumerate_factorizations;
use elastika_core::engine::length_set;
use elastika_core::invariants::{asymptotic_invariants, elasticity_of_element, elasticity_of_monoid, inf_asymptotic_elasticity};
use elastika_core::model::presentation::{validate_explicit_with, validate_implicit};
use elastika_core::oracle;
use elastika_core::rational::fmt_rational;
use elastika_core::spectrum::realized_spectrum;
use elastika_core::{GroupElement, Presentation};

use crate::config::RunConfig;
use crate::output::write_csv;
use crate::Failure;

pub struct Loaded {
    pub description: Description,
    pub presentation: Presentation,
}

pub fn load(cfg: &RunConfig) -> Result<Loaded, Failure> {
    let path = cfg.input.as_deref().ok_or_else(|| Failure::Validation(format!("{} needs a monoid file", cfg.command)))?;
    load_path(path)
}

pub fn load_path(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let description = Description::from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let presentation = description.build()?;
    Ok(Loaded { description, presentation })
}

/// Coordinates as `3`, `6,1`, `(6,1)` or `0,1|1` (free part, then torsion
/// residues after the bar).
pub fn parse_element(p: &Presentation, s: &str) -> Result<GroupElement, Failure> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (free, tor) = s.split_once('|').unwrap_or((s, ""));
    let nums = |part: &str| -> Result<Vec<i64>, Failure> {
        part.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<i64>().map_err(|e| Failure::Validation(format!("element coordinate {x:?}: {e}"))))
            .collect()
    };
    let g = p.group();
    let mut free = nums(free)?;
    if free == [0] && g.free_rank() > 1 {
        free = vec![0; g.free_rank()];
    }
    let tor = nums(tor)?;
    let tor = if tor.is_empty() { vec![0; g.torsion_orders().len()] } else { tor };
    Ok(g.element(free, tor)?)
}

pub fn cmd_invariants(cfg: &RunConfig) -> Result<(), Failure> {
    let loaded = load(cfg)?;
    let budget = cfg.budget();
    let p = match &loaded.presentation {
        Presentation::Explicit(p) => p,
        Presentation::Implicit(m) => {
            validate_implicit(m.as_ref(), 3)?.into_result()?;
            return Err(Failure::Validation(format!(
                "{}: ρ(H) and r need an explicit presentation; use `element` or `spectrum`",
                m.name()
            )));
        }
    };
    validate_explicit_with(p, budget).into_result()?;
    println!("monoid {}", loaded.presentation.name());
    println!("group {}", p.group());
    let mut atom_rows = Vec::new();
    for (i, a) in p.atoms().iter().enumerate() {
        println!("  atom {i}: {a} weight {}", p.weight(a));
        atom_rows.push(vec![i.to_string(), a.to_string(), p.weight(a).to_string()]);
    }
    let rho = elasticity_of_monoid(p, budget)?;
    let witness = match &rho.witness {
        Some((w, l)) => {
            println!("ρ(H) = {} accepted by {w}, L = {l}", fmt_rational(&rho.value));
            w.to_string()
        }
        None => {
            println!("ρ(H) = {} (half-factorial)", fmt_rational(&rho.value));
            String::new()
        }
    };
    let (r, i) = inf_asymptotic_elasticity(p, budget)?;
    let atom = &p.atoms()[i];
    println!("r = {} at atom {atom}", fmt_rational(&r));
    if let Some(dir) = &cfg.out {
        write_csv(dir, "atoms.csv", &["index", "atom", "weight"], &atom_rows)?;
        let rows = vec![
            vec!["rho".into(), rho.value.numer().to_string(), rho.value.denom().to_string(), witness],
            vec!["r".into(), r.numer().to_string(), r.denom().to_string(), atom.to_string()],
        ];
        write_csv(dir, "invariants.csv", &["invariant", "num", "den", "witness"], &rows)?;
    }
    Ok(())
}

pub fn cmd_element(cfg: &RunConfig, element: &str) -> Result<(), Failure> {
    let loaded = load(cfg)?;
    let p = &loaded.presentation;
    let g = parse_element(p, element)?;
    let budget = cfg.budget();
    let l = length_set(p, &g, budget)?;
    println!("element {g}");
    println!("L = {l}");
    println!("ρ = {}", fmt_rational(&elasticity_of_element(p, &g, budget)?));
    match (p, g.is_identity()) {
        (_, true) => println!("asymptotic invariants are not defined at the identity"),
        (Presentation::Explicit(e), false) => {
            let rep = asymptotic_invariants(e, &g, budget)?;
            println!("ρ* = {}", fmt_rational(&rep.rho_star));
            println!("ρ_* = {}", fmt_rational(&rep.rho_lower_star));
            println!("ρ̄ = {}", fmt_rational(&rep.rho_bar));
            println!("N = {}", rep.stabilization_n);
        }
        (Presentation::Implicit(_), false) => println!("asymptotic invariants need an explicit presentation"),
    }
    Ok(())
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<(), Failure> {
    let loaded = load(cfg)?;
    let rep = realized_spectrum(&loaded.presentation, cfg.bound, cfg.budget())?;
    println!("{}: {} elements up to {}, {} values", rep.monoid, rep.elements, rep.bound, rep.realized.len());
    for e in &rep.realized {
        println!("  {:>8}  {}  L ⊆ [{}, {}]", fmt_rational(&e.value), e.witness, e.min_len, e.max_len);
    }
    if !rep.gaps.is_empty() {
        let gaps: Vec<String> = rep.gaps.iter().map(fmt_rational).collect();
        println!("no witness (denominator ≤ {}): {}", rep.gap_denom_bound, gaps.join(" "));
    }
    if let Some(b) = &rep.below_r {
        println!("{} values below r = {}, max length {}", b.count, fmt_rational(&b.r), b.max_witness_len);
    }
    if let Some(dir) = &cfg.out {
        crate::verify::write_spectrum(dir, &rep)?;
    }
    Ok(())
}

/// Factorizations of one element by the engine and by the brute-force
/// oracle, side by side.
pub fn cmd_oracle(cfg: &RunConfig, element: &str) -> Result<(), Failure> {
    let loaded = load(cfg)?;
    let p = &loaded.presentation;
    let g = parse_element(p, element)?;
    let (sys, atoms) = p.local_system(&g)?;
    let brute = oracle::factorizations(&sys, &g.flatten());
    let engine = enumerate_factorizations(p, &g, cfg.budget())?;
    let brute_lengths = oracle::lengths(&sys, &g.flatten());
    println!("element {g} over {} atoms", atoms.len());
    println!("oracle: {} factorizations, lengths {:?}", brute.len(), brute_lengths);
    println!("engine: {} factorizations, lengths {:?}", engine.vectors.len(), engine.lengths());
    if brute.len() != engine.vectors.len() || brute_lengths != engine.lengths() {
        return Err(Failure::Check("engine and oracle disagree".into()));
    }
    println!("PASS");
    Ok(())
}
