//! The JSON input format: a group, ray generators, 1-based maximal cones
//! and an optional subdivision block.

use serde::{Deserialize, Serialize};
use stacky_core::crepant::SubdivisionPair;
use stacky_core::fan::StackyFan;
use stacky_core::lattice::{FgAbelianGroup, GroupElement, GroupHomomorphism};
use stacky_core::num::Int;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySpec {
    pub free: Vec<i64>,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionSpec {
    /// Rays appended after the coarse rays.
    pub rays: Vec<RaySpec>,
    /// Maximal cones of the fine fan, 1-based over coarse rays then new rays.
    pub cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSpec,
    pub rays: Vec<RaySpec>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision: Option<SubdivisionSpec>,
}

fn zero_based(cones: &[Vec<usize>], rays: usize) -> Result<Vec<Vec<usize>>, CliError> {
    cones
        .iter()
        .map(|c| {
            c.iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or(CliError::Invalid(stacky_core::Error::IndexOutOfRange { index: 0, rays }))
                })
                .collect()
        })
        .collect()
}

fn small(x: &Int) -> i64 {
    i64::try_from(x).expect("coordinates of a parsed document fit in i64")
}

fn ray_spec(e: &GroupElement) -> RaySpec {
    RaySpec { free: e.free.iter().map(small).collect(), torsion: e.torsion.iter().map(small).collect() }
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn group(&self) -> Result<FgAbelianGroup, CliError> {
        Ok(FgAbelianGroup::from_i64(self.group.rank, &self.group.torsion)?)
    }

    fn elements(&self, group: &FgAbelianGroup, rays: &[RaySpec]) -> Result<Vec<GroupElement>, CliError> {
        Ok(rays.iter().map(|r| group.element_i64(&r.free, &r.torsion)).collect::<Result<Vec<_>, _>>()?)
    }

    /// `β` alone; the cones are not consulted.
    pub fn homomorphism(&self) -> Result<GroupHomomorphism, CliError> {
        let g = self.group()?;
        let rays = self.elements(&g, &self.rays)?;
        Ok(GroupHomomorphism::new(g, rays)?)
    }

    pub fn stacky_fan(&self) -> Result<StackyFan, CliError> {
        let g = self.group()?;
        let rays = self.elements(&g, &self.rays)?;
        let cones = zero_based(&self.cones, rays.len())?;
        Ok(StackyFan::new(g, rays, cones)?)
    }

    /// The fine fan of the subdivision block, over the coarse rays followed by the new ones.
    pub fn fine_fan(&self) -> Result<Option<StackyFan>, CliError> {
        let Some(sub) = &self.subdivision else { return Ok(None) };
        let g = self.group()?;
        let mut rays = self.elements(&g, &self.rays)?;
        rays.extend(self.elements(&g, &sub.rays)?);
        let cones = zero_based(&sub.cones, rays.len())?;
        Ok(Some(StackyFan::new(g, rays, cones)?))
    }

    pub fn subdivision_pair(&self) -> Result<SubdivisionPair, CliError> {
        let fine = self.fine_fan()?.ok_or_else(|| CliError::Precondition("the document has no subdivision block".into()))?;
        Ok(SubdivisionPair::new(self.stacky_fan()?, fine)?)
    }

    /// Canonical form: residues reduced, cones sorted, only maximal cones.
    pub fn normalized(&self) -> Result<Self, CliError> {
        let fan = self.stacky_fan()?;
        let one_based = |f: &StackyFan| f.fan().max_cones().iter().map(|c| c.iter().map(|i| i + 1).collect()).collect();
        let subdivision = self.fine_fan()?.map(|fine| SubdivisionSpec {
            rays: fine.rays()[fan.ray_count()..].iter().map(ray_spec).collect(),
            cones: one_based(&fine),
        });
        Ok(InputDocument {
            name: self.name.clone(),
            group: self.group.clone(),
            rays: fan.rays().iter().map(ray_spec).collect(),
            cones: one_based(&fan),
            subdivision,
        })
    }
}
