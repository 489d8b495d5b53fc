//! JSON description files for monoids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::group::{FGAbelianGroup, GroupElement};
use crate::model::presentation::{ExplicitPresentation, Presentation};
use crate::zoo;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDesc {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDesc {
    #[serde(default)]
    pub free: Vec<i64>,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDesc {
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Description {
    Explicit {
        group: GroupDesc,
        atoms: Vec<ElementDesc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<Vec<i64>>,
    },
    Numerical {
        gens: Vec<u64>,
    },
    Block {
        group: GroupDesc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subset: Option<Vec<ElementDesc>>,
    },
    SeminormalFp {
        rank: usize,
    },
    Tblock {
        group: GroupDesc,
        g0: Vec<ElementDesc>,
        components: Vec<ComponentDesc>,
        iota: Vec<Vec<ElementDesc>>,
    },
    Coproduct {
        parts: Vec<Description>,
    },
}

impl From<FGAbelianGroup> for GroupDesc {
    fn from(g: FGAbelianGroup) -> Self {
        GroupDesc { free_rank: g.free_rank(), torsion: g.torsion_orders().to_vec() }
    }
}

impl From<GroupElement> for ElementDesc {
    fn from(g: GroupElement) -> Self {
        ElementDesc { free: g.free, torsion: g.torsion.iter().map(|&t| t as i64).collect() }
    }
}

impl GroupDesc {
    pub fn build(&self) -> Result<FGAbelianGroup> {
        FGAbelianGroup::new(self.free_rank, self.torsion.clone())
    }
}

impl ElementDesc {
    pub fn build(&self, g: &FGAbelianGroup) -> Result<GroupElement> {
        g.element(self.free.clone(), self.torsion.clone())
    }
}

impl Description {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("description: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptions serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Description::Explicit { .. } => "explicit",
            Description::Numerical { .. } => "numerical",
            Description::Block { .. } => "block",
            Description::SeminormalFp { .. } => "seminormal_fp",
            Description::Tblock { .. } => "tblock",
            Description::Coproduct { .. } => "coproduct",
        }
    }

    pub fn build(&self) -> Result<Presentation> {
        Ok(match self {
            Description::Explicit { group, atoms, grading } => {
                let g = group.build()?;
                let atoms = atoms.iter().map(|a| a.build(&g)).collect::<Result<Vec<_>>>()?;
                let grading = grading.clone().unwrap_or_else(|| vec![1; g.free_rank()]);
                Presentation::Explicit(ExplicitPresentation::new(g, atoms, grading)?)
            }
            Description::Numerical { gens } => Presentation::Explicit(zoo::numerical_monoid(gens)?.presentation),
            Description::Block { group, subset } => {
                let g = group.build()?;
                let subset = match subset {
                    Some(s) => Some(s.iter().map(|x| x.build(&g)).collect::<Result<Vec<_>>>()?),
                    None => None,
                };
                Presentation::Explicit(zoo::block_monoid(&g, subset)?.presentation)
            }
            Description::SeminormalFp { rank } => Presentation::implicit(zoo::seminormal_fp(*rank)?),
            Description::Tblock { .. } => Presentation::implicit(zoo::tblock_monoid(self.tblock_spec()?)?),
            Description::Coproduct { parts } => {
                let parts = parts.iter().map(|p| p.build()).collect::<Result<Vec<_>>>()?;
                zoo::coproduct(parts)?.presentation
            }
        })
    }

    pub fn tblock_spec(&self) -> Result<zoo::TBlockSpec> {
        let Description::Tblock { group, g0, components, iota } = self else {
            return Err(Error::Precondition(format!("expected a tblock description, got {}", self.kind())));
        };
        let g = group.build()?;
        Ok(zoo::TBlockSpec {
            g0: g0.iter().map(|x| x.build(&g)).collect::<Result<_>>()?,
            components: components.iter().map(|c| c.rank).collect(),
            iota: iota
                .iter()
                .map(|c| c.iter().map(|x| x.build(&g)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
            group: g,
        })
    }

    /// Description that rebuilds `p`: explicit presentations are written
    /// atom by atom, implicit ones by their constructor data.
    pub fn of(p: &Presentation) -> Result<Self> {
        match p {
            Presentation::Explicit(e) => Ok(Description::Explicit {
                group: e.group().clone().into(),
                atoms: e.atoms().iter().map(|a| a.clone().into()).collect(),
                grading: Some(e.grading().to_vec()),
            }),
            Presentation::Implicit(m) => m
                .description()
                .ok_or_else(|| Error::Precondition(format!("{} has no description", m.name()))),
        }
    }
}
