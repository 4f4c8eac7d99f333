use alloc::format;
use alloc::vec::Vec;

use super::{one_based, Cone, SimplicialFan, StackyFan};
use crate::error::{Error, Result};
use crate::lattice::{Cokernel, ExactDiagram, FgAbelianGroup, GroupHomomorphism, GroupMap, IntegerMatrix};
use crate::linalg;

/// `Σ/σ` over `N(σ)`, remembering where it came from.
#[derive(Clone, Debug)]
pub struct QuotientStackyFan {
    pub fan: StackyFan,
    pub cone: Cone,
    /// Parent index of each quotient ray (the link of `σ`, ascending).
    pub rays: Vec<usize>,
    /// `N → N(σ)`.
    pub projection: Cokernel,
}

impl StackyFan {
    /// Quotient stacky fan `Σ/σ`. The empty cone yields the fan itself.
    pub fn link_and_quotient(&self, sigma: &[usize]) -> Result<QuotientStackyFan> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.fan().is_cone(&sigma) {
            return Err(Error::NotACone { cone: one_based(&sigma) });
        }
        let ck = self.local_cokernel(&sigma);
        if sigma.is_empty() {
            let d = self.group().ambient_dim();
            let identity = Cokernel {
                group: self.group().clone(),
                projection: IntegerMatrix::identity(d),
                section: IntegerMatrix::identity(d),
            };
            return Ok(QuotientStackyFan {
                fan: self.clone(),
                cone: sigma,
                rays: (0..self.ray_count()).collect(),
                projection: identity,
            });
        }
        let link = self.fan().link(&sigma);
        let images = link.iter().map(|&i| ck.project(&self.ray(i).to_vec())).collect::<Result<Vec<_>>>()?;
        let local = |i: &usize| link.iter().position(|j| j == i).expect("link ray");
        let cones: Vec<Vec<usize>> = self
            .fan()
            .star(&sigma)
            .into_iter()
            .map(|tau| tau.iter().filter(|i| !sigma.contains(i)).map(local).collect())
            .collect();
        let fan = SimplicialFan::new(ck.group.rank(), link.len(), cones)?;
        let beta = GroupHomomorphism::new(ck.group.clone(), images)?;
        let quotient = StackyFan::assemble(fan, beta);
        let all: Vec<usize> = (0..link.len()).collect();
        if linalg::rank(&quotient.cone_matrix(&all)) < quotient.dim() {
            return Err(Error::ConditionSpanQuotFails { cone: one_based(&sigma) });
        }
        Ok(QuotientStackyFan { fan: quotient, cone: sigma, rays: link, projection: ck })
    }
}

fn selection(rows: usize, picks: &[usize]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows, picks.len());
    for (c, &r) in picks.iter().enumerate() {
        m.set(r, c, 1.into());
    }
    m
}

/// The diagram `0 → Z^σ → Z^n → Z^link → 0` over `0 → N_σ → N → N(σ) → 0`.
/// Only defined when every ray lies in `σ` or its link.
pub fn quotient_diagram(stacky: &StackyFan, sigma: &[usize]) -> Result<ExactDiagram> {
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    if !stacky.fan().is_cone(&sigma) {
        return Err(Error::NotACone { cone: one_based(&sigma) });
    }
    let link = stacky.fan().link(&sigma);
    let n = stacky.ray_count();
    if sigma.len() + link.len() != n {
        return Err(Error::BadDiagram(format!(
            "rays outside the star of {:?} have no place in the sequence",
            one_based(&sigma)
        )));
    }
    let m = sigma.len();
    let ck = stacky.local_cokernel(&sigma);
    let n_sigma = FgAbelianGroup::free(m);
    let beta1 = GroupHomomorphism::from_lift(n_sigma.clone(), IntegerMatrix::identity(m))?;
    let images = link.iter().map(|&i| ck.project(&stacky.ray(i).to_vec())).collect::<Result<Vec<_>>>()?;
    let beta3 = GroupHomomorphism::new(ck.group.clone(), images)?;
    let f = GroupMap::new(n_sigma, stacky.group().clone(), stacky.beta().lift().select_cols(&sigma))?;
    let g = GroupMap::new(stacky.group().clone(), ck.group.clone(), ck.projection.clone())?;
    Ok(ExactDiagram {
        beta: [beta1, stacky.beta().clone(), beta3],
        iota: selection(n, &sigma),
        pi: selection(n, &link).transpose(),
        f,
        g,
    })
}

/// The diagram `0 → Z^σ → Z^n → Z^{n−d} → 0` over `0 → N → N → 0 → 0`
/// attached to a `d`-dimensional cone.
pub fn open_diagram(stacky: &StackyFan, sigma: &[usize]) -> Result<ExactDiagram> {
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    if sigma.len() != stacky.dim() || !stacky.fan().is_cone(&sigma) {
        return Err(Error::NotMaximalCone { cone: one_based(&sigma) });
    }
    let n = stacky.ray_count();
    let rest: Vec<usize> = (0..n).filter(|i| !sigma.contains(i)).collect();
    let group = stacky.group().clone();
    let beta1 = GroupHomomorphism::from_lift(group.clone(), stacky.beta().lift().select_cols(&sigma))?;
    let beta3 = GroupHomomorphism::from_lift(FgAbelianGroup::trivial(), IntegerMatrix::zeros(0, rest.len()))?;
    let g = GroupMap::new(group.clone(), FgAbelianGroup::trivial(), IntegerMatrix::zeros(0, group.ambient_dim()))?;
    Ok(ExactDiagram {
        beta: [beta1, stacky.beta().clone(), beta3],
        iota: selection(n, &sigma),
        pi: selection(n, &rest).transpose(),
        f: GroupMap::identity(&group),
        g,
    })
}
