use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::description::Description;
use crate::engine::{factor, AtomSystem, Budget};
use crate::error::{Error, Result};
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::lengths::LengthSet;

/// A reduced monoid given by a finite list of atoms inside an abelian group,
/// together with a grading that is positive on every atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitPresentation {
    group: FGAbelianGroup,
    atoms: Vec<GroupElement>,
    grading: Vec<i64>,
}

impl ExplicitPresentation {
    /// Checks only that the atoms live in `group` and the grading has one
    /// weight per free coordinate. Use [`validate_explicit`] for the rest.
    pub fn new(group: FGAbelianGroup, atoms: Vec<GroupElement>, grading: Vec<i64>) -> Result<Self> {
        if grading.len() != group.free_rank() {
            return Err(Error::SignatureMismatch(format!(
                "grading has {} weights for free rank {}",
                grading.len(),
                group.free_rank()
            )));
        }
        if let Some(a) = atoms.iter().find(|a| !group.contains(a)) {
            return Err(Error::SignatureMismatch(format!("atom {a} is not in {group}")));
        }
        Ok(ExplicitPresentation { group, atoms, grading })
    }

    /// Grading by coordinate sum.
    pub fn with_coordinate_sum(group: FGAbelianGroup, atoms: Vec<GroupElement>) -> Result<Self> {
        let grading = vec![1; group.free_rank()];
        Self::new(group, atoms, grading)
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn atoms(&self) -> &[GroupElement] {
        &self.atoms
    }

    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    pub fn weight(&self, g: &GroupElement) -> i64 {
        g.free.iter().zip(&self.grading).map(|(&a, &w)| a * w).sum()
    }

    pub fn atom_index(&self, g: &GroupElement) -> Option<usize> {
        self.atoms.iter().position(|a| a == g)
    }

    /// Σ xᵢ·atomᵢ.
    pub fn evaluate(&self, x: &[u64]) -> Result<GroupElement> {
        if x.len() != self.atoms.len() {
            return Err(Error::SignatureMismatch(format!(
                "exponent vector of length {} over {} atoms",
                x.len(),
                self.atoms.len()
            )));
        }
        let mut acc = self.group.identity();
        for (&c, a) in x.iter().zip(&self.atoms) {
            if c > 0 {
                let c = i64::try_from(c).map_err(|_| Error::Overflow("evaluation"))?;
                acc = self.group.add(&acc, &self.group.scale(a, c)?)?;
            }
        }
        Ok(acc)
    }
}

/// A monoid inside N^d described by predicates; only the atoms below a
/// given point are ever materialized.
pub trait ImplicitMonoid: Send + Sync + fmt::Debug {
    fn ambient_dim(&self) -> usize;

    fn contains(&self, v: &[u64]) -> bool;

    fn is_atom(&self, v: &[u64]) -> bool;

    /// All atoms u with u ≤ v componentwise, in lexicographic order.
    fn atoms_below(&self, v: &[u64]) -> Vec<Vec<u64>> {
        box_points(v).into_iter().filter(|u| self.is_atom(u)).collect()
    }

    fn closed_form_lengths(&self, _v: &[u64]) -> Option<LengthSet> {
        None
    }

    fn description(&self) -> Option<Description> {
        None
    }

    fn name(&self) -> String;
}

/// Lattice points 0 ≤ u ≤ v in lexicographic order.
pub fn box_points(v: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::with_capacity(v.len())];
    for &hi in v {
        out = out
            .into_iter()
            .flat_map(|u: Vec<u64>| {
                (0..=hi).map(move |c| {
                    let mut w = u.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone)]
pub enum Presentation {
    Explicit(ExplicitPresentation),
    Implicit(Arc<dyn ImplicitMonoid>),
}

impl From<ExplicitPresentation> for Presentation {
    fn from(p: ExplicitPresentation) -> Self {
        Presentation::Explicit(p)
    }
}

impl Presentation {
    pub fn implicit<M: ImplicitMonoid + 'static>(m: M) -> Self {
        Presentation::Implicit(Arc::new(m))
    }

    /// Ambient group of the elements; Z^d for implicit presentations.
    pub fn group(&self) -> FGAbelianGroup {
        match self {
            Presentation::Explicit(p) => p.group().clone(),
            Presentation::Implicit(m) => FGAbelianGroup::free(m.ambient_dim()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.group().identity()
    }

    pub fn as_explicit(&self) -> Option<&ExplicitPresentation> {
        match self {
            Presentation::Explicit(p) => Some(p),
            Presentation::Implicit(_) => None,
        }
    }

    pub fn explicit(&self) -> Result<&ExplicitPresentation> {
        self.as_explicit()
            .ok_or_else(|| Error::Precondition("operation needs an explicit presentation".into()))
    }

    pub fn grading_value(&self, g: &GroupElement) -> i64 {
        match self {
            Presentation::Explicit(p) => p.weight(g),
            Presentation::Implicit(_) => g.free.iter().sum(),
        }
    }

    /// Nonnegative coordinates of an element of an implicit presentation.
    pub fn nat_coords(&self, g: &GroupElement) -> Result<Vec<u64>> {
        if !self.group().contains(g) {
            return Err(Error::SignatureMismatch(format!("{g} has the wrong shape")));
        }
        g.free
            .iter()
            .map(|&c| u64::try_from(c).map_err(|_| Error::NotMember(g.to_string())))
            .collect()
    }

    /// Atom system for factoring g: every atom for explicit presentations,
    /// the atoms dividing g for implicit ones.
    pub fn local_system(&self, g: &GroupElement) -> Result<(AtomSystem, Vec<GroupElement>)> {
        match self {
            Presentation::Explicit(p) => {
                if !p.group().contains(g) {
                    return Err(Error::SignatureMismatch(format!("{g} is not in {}", p.group())));
                }
                Ok((AtomSystem::from_explicit(p)?, p.atoms().to_vec()))
            }
            Presentation::Implicit(m) => {
                let v = self.nat_coords(g)?;
                let atoms = m.atoms_below(&v);
                let sys = AtomSystem::from_nat_atoms(m.ambient_dim(), &atoms)?;
                let atoms = atoms.iter().map(|a| GroupElement::nat(a)).collect::<Result<_>>()?;
                Ok((sys, atoms))
            }
        }
    }

    pub fn is_member(&self, g: &GroupElement, budget: Budget) -> Result<bool> {
        match self {
            Presentation::Explicit(_) => {
                let (sys, _) = self.local_system(g)?;
                factor::has_factorization(&sys, &g.flatten(), budget)
            }
            Presentation::Implicit(m) => match self.nat_coords(g) {
                Ok(v) => Ok(v.len() == m.ambient_dim() && m.contains(&v)),
                Err(Error::NotMember(_)) => Ok(false),
                Err(e) => Err(e),
            },
        }
    }

    pub fn is_atom(&self, g: &GroupElement, budget: Budget) -> Result<bool> {
        match self {
            Presentation::Explicit(p) => {
                let _ = budget;
                Ok(p.atom_index(g).is_some())
            }
            Presentation::Implicit(m) => match self.nat_coords(g) {
                Ok(v) => Ok(m.is_atom(&v)),
                Err(Error::NotMember(_)) => Ok(false),
                Err(e) => Err(e),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            Presentation::Explicit(p) => format!("explicit monoid with {} atoms in {}", p.atoms().len(), p.group()),
            Presentation::Implicit(m) => m.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroAtom { index: usize },
    TorsionOnlyAtom { index: usize },
    DuplicateAtom { first: usize, second: usize },
    NonPositiveWeight { index: usize, weight: i64 },
    /// The atom equals Σ cⱼ·atomⱼ over the other atoms.
    NotMinimal { index: usize, combination: Vec<u64> },
    MinimalityUndecided { index: usize, reason: String },
    AtomIsZero { point: Vec<u64> },
    AtomNotMember { point: Vec<u64> },
    EnumeratorMissing { point: Vec<u64>, atom: Vec<u64> },
    EnumeratorExtra { point: Vec<u64>, atom: Vec<u64> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroAtom { index } => write!(f, "atom {index} is the identity"),
            Violation::TorsionOnlyAtom { index } => write!(f, "atom {index} has finite order"),
            Violation::DuplicateAtom { first, second } => write!(f, "atoms {first} and {second} coincide"),
            Violation::NonPositiveWeight { index, weight } => {
                write!(f, "grading gives atom {index} weight {weight}")
            }
            Violation::NotMinimal { index, combination } => {
                write!(f, "atom {index} is the combination {combination:?} of other atoms")
            }
            Violation::MinimalityUndecided { index, reason } => {
                write!(f, "minimality of atom {index} undecided: {reason}")
            }
            Violation::AtomIsZero { point } => write!(f, "atom predicate holds at zero {point:?}"),
            Violation::AtomNotMember { point } => write!(f, "atom {point:?} is not a member"),
            Violation::EnumeratorMissing { point, atom } => {
                write!(f, "enumerator below {point:?} omits atom {atom:?}")
            }
            Violation::EnumeratorExtra { point, atom } => {
                write!(f, "enumerator below {point:?} yields non-atom {atom:?}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::Invalid(msgs.join("; ")))
        }
    }
}

pub fn validate_explicit(p: &ExplicitPresentation) -> ValidationReport {
    validate_explicit_with(p, Budget::default())
}

pub fn validate_explicit_with(p: &ExplicitPresentation, budget: Budget) -> ValidationReport {
    let mut violations = Vec::new();
    let mut positive = true;
    for (i, a) in p.atoms().iter().enumerate() {
        if a.is_identity() {
            violations.push(Violation::ZeroAtom { index: i });
            positive = false;
            continue;
        }
        if a.free.iter().all(|&c| c == 0) {
            violations.push(Violation::TorsionOnlyAtom { index: i });
        }
        let w = p.weight(a);
        if w < 1 {
            violations.push(Violation::NonPositiveWeight { index: i, weight: w });
            positive = false;
        }
    }
    let mut seen = std::collections::HashMap::new();
    for (i, a) in p.atoms().iter().enumerate() {
        if let Some(&j) = seen.get(a) {
            violations.push(Violation::DuplicateAtom { first: j, second: i });
        } else {
            seen.insert(a.clone(), i);
        }
    }
    // minimality needs a positive grading for the search to terminate
    if positive {
        let flat: Vec<Vec<i64>> = p.atoms().iter().map(|a| a.flatten()).collect();
        for i in 0..p.atoms().len() {
            let others: Vec<usize> = (0..flat.len()).filter(|&j| j != i && flat[j] != flat[i]).collect();
            let sys = match AtomSystem::from_explicit_subset(p, &others) {
                Ok(s) => s,
                Err(e) => {
                    violations.push(Violation::MinimalityUndecided { index: i, reason: e.to_string() });
                    continue;
                }
            };
            match factor::find_factorization(&sys, &flat[i], budget) {
                Ok(Some(x)) => {
                    let mut combination = vec![0; flat.len()];
                    for (k, &j) in others.iter().enumerate() {
                        combination[j] = x[k];
                    }
                    violations.push(Violation::NotMinimal { index: i, combination });
                }
                Ok(None) => {}
                Err(e) => violations.push(Violation::MinimalityUndecided { index: i, reason: e.to_string() }),
            }
        }
    }
    ValidationReport { violations }
}

/// Spot-checks an implicit presentation on the box [0, probe_bound]^d.
pub fn validate_implicit(m: &dyn ImplicitMonoid, probe_bound: u64) -> Result<ValidationReport> {
    if probe_bound == 0 {
        return Err(Error::Precondition("probe bound must be at least 1".into()));
    }
    let d = m.ambient_dim();
    let points = box_points(&vec![probe_bound; d]);
    let atoms: Vec<&Vec<u64>> = points.iter().filter(|u| m.is_atom(u)).collect();
    let mut violations = Vec::new();
    for a in &atoms {
        if a.iter().all(|&c| c == 0) {
            violations.push(Violation::AtomIsZero { point: (*a).clone() });
        }
        if !m.contains(a) {
            violations.push(Violation::AtomNotMember { point: (*a).clone() });
        }
    }
    for v in &points {
        let expected: HashSet<&Vec<u64>> =
            atoms.iter().copied().filter(|a| a.iter().zip(v).all(|(x, y)| x <= y)).collect();
        let got = m.atoms_below(v);
        let got_set: HashSet<&Vec<u64>> = got.iter().collect();
        let mut missing: Vec<&Vec<u64>> = expected.difference(&got_set).copied().collect();
        missing.sort();
        for a in missing {
            violations.push(Violation::EnumeratorMissing { point: v.clone(), atom: a.clone() });
        }
        let mut extra: Vec<&Vec<u64>> = got_set.difference(&expected).copied().collect();
        extra.sort();
        for a in extra {
            violations.push(Violation::EnumeratorExtra { point: v.clone(), atom: a.clone() });
        }
    }
    Ok(ValidationReport { violations })
}
