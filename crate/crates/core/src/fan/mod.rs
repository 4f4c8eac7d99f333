//! Simplicial fans and stacky fans `(N, Σ, β)`.

mod boxes;
mod quotient;

pub use boxes::BoxElement;
pub use quotient::{open_diagram, quotient_diagram, QuotientStackyFan};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{cokernel, solve_integer, FgAbelianGroup, GroupElement, GroupHomomorphism, GroupMap, IntegerMatrix};
use crate::linalg::{self, RatMatrix};
use crate::lp::{LinearSystem, Relation};
use crate::num::{rat_from_int, Int, Rat};

/// Sorted ray indices (0-based).
pub type Cone = Vec<usize>;

pub(crate) fn one_based(cone: &[usize]) -> Vec<usize> {
    cone.iter().map(|i| i + 1).collect()
}

/// Combinatorial part of a simplicial fan: maximal cones as index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialFan {
    dim: usize,
    rays: usize,
    max_cones: Vec<Cone>,
    faces: BTreeSet<Cone>,
}

fn subsets(cone: &[usize]) -> impl Iterator<Item = Cone> + '_ {
    (0u64..1 << cone.len()).map(move |mask| {
        cone.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect()
    })
}

impl SimplicialFan {
    /// Sorts and deduplicates cones and keeps only the inclusion-maximal ones.
    pub fn new(dim: usize, rays: usize, cones: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted: BTreeSet<Cone> = BTreeSet::new();
        for mut c in cones {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays) {
                return Err(Error::IndexOutOfRange { index: bad + 1, rays });
            }
            c.sort_unstable();
            c.dedup();
            sorted.insert(c);
        }
        let all: Vec<Cone> = sorted.into_iter().collect();
        let mut max_cones: Vec<Cone> = all
            .iter()
            .filter(|c| !all.iter().any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i))))
            .cloned()
            .collect();
        if max_cones.is_empty() {
            max_cones.push(Vec::new());
        }
        let faces = max_cones.iter().flat_map(|c| subsets(c)).collect();
        Ok(SimplicialFan { dim, rays, max_cones, faces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ray_count(&self) -> usize {
        self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Every cone, faces included, the empty cone first.
    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.faces.iter()
    }

    /// `cone` must be sorted.
    pub fn is_cone(&self, cone: &[usize]) -> bool {
        self.faces.contains(cone)
    }

    /// Sorted-or-not variant of [`Self::is_cone`].
    pub fn is_cone_unsorted(&self, cone: &[usize]) -> bool {
        let mut c = cone.to_vec();
        c.sort_unstable();
        c.dedup();
        self.faces.contains(&c)
    }

    /// `f_{-1}, f_0, ..., f_{d-1}`: number of cones with `k` rays, `k = 0..=d`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for c in &self.faces {
            if c.len() <= self.dim {
                f[c.len()] += 1;
            }
        }
        f
    }

    /// All maximal cones are `d`-dimensional and each facet lies in exactly two of them.
    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if self.max_cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        let mut walls: BTreeMap<Cone, usize> = BTreeMap::new();
        for c in &self.max_cones {
            for skip in 0..c.len() {
                let facet: Cone = c.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &i)| i).collect();
                *walls.entry(facet).or_default() += 1;
            }
        }
        walls.values().all(|&n| n == 2)
    }

    /// Rays `i ∉ σ` with `σ ∪ {i}` a cone.
    pub fn link(&self, sigma: &[usize]) -> Vec<usize> {
        (0..self.rays)
            .filter(|i| !sigma.contains(i))
            .filter(|&i| {
                let mut c = sigma.to_vec();
                c.push(i);
                self.is_cone_unsorted(&c)
            })
            .collect()
    }

    /// Maximal cones containing `σ`.
    pub fn star(&self, sigma: &[usize]) -> Vec<&Cone> {
        self.max_cones.iter().filter(|c| sigma.iter().all(|i| c.contains(i))).collect()
    }
}

/// A validated stacky fan.
#[derive(Clone, Debug)]
pub struct StackyFan {
    fan: SimplicialFan,
    beta: GroupHomomorphism,
    bars: Vec<Vec<Rat>>,
    // Inverse of [b̄_i : i ∈ σ] for each full-dimensional maximal cone.
    inverses: Vec<Option<RatMatrix>>,
}

impl PartialEq for StackyFan {
    fn eq(&self, other: &Self) -> bool {
        self.fan == other.fan && self.beta == other.beta
    }
}

impl Eq for StackyFan {}

impl StackyFan {
    /// Checks every stacky-fan invariant. Errors report 1-based ray numbers.
    pub fn new(group: FgAbelianGroup, rays: Vec<GroupElement>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let n = rays.len();
        let d = group.rank();
        let fan = SimplicialFan::new(d, n, cones)?;
        let beta = GroupHomomorphism::new(group, rays)?;
        let sf = Self::assemble(fan, beta);
        sf.check_rays()?;
        sf.check_independent()?;
        sf.check_span()?;
        sf.check_fan_condition()?;
        Ok(sf)
    }

    // No checks; callers guarantee the invariants.
    pub(crate) fn assemble(fan: SimplicialFan, beta: GroupHomomorphism) -> Self {
        let bars: Vec<Vec<Rat>> = beta.images().iter().map(|b| b.free.iter().map(rat_from_int).collect()).collect();
        let d = beta.target().rank();
        let inverses = fan
            .max_cones()
            .iter()
            .map(|c| {
                (c.len() == d).then(|| {
                    let cols: RatMatrix = (0..d).map(|r| c.iter().map(|&i| bars[i][r].clone()).collect()).collect();
                    linalg::inverse(&cols)
                })?
            })
            .collect();
        StackyFan { fan, beta, bars, inverses }
    }

    fn check_rays(&self) -> Result<()> {
        let used: BTreeSet<usize> = self.fan.max_cones().iter().flatten().copied().collect();
        for (i, b) in self.bars.iter().enumerate() {
            if b.iter().all(Zero::is_zero) || !used.contains(&i) {
                return Err(Error::NotOnRay { ray: i + 1 });
            }
        }
        Ok(())
    }

    pub(crate) fn cone_matrix(&self, cone: &[usize]) -> RatMatrix {
        (0..self.dim()).map(|r| cone.iter().map(|&i| self.bars[i][r].clone()).collect()).collect()
    }

    fn check_independent(&self) -> Result<()> {
        for c in self.fan.max_cones() {
            if linalg::rank(&self.cone_matrix(c)) < c.len() {
                return Err(Error::DependentGenerators { cone: one_based(c) });
            }
        }
        Ok(())
    }

    fn check_span(&self) -> Result<()> {
        let all: Vec<usize> = (0..self.ray_count()).collect();
        let rank = linalg::rank(&self.cone_matrix(&all));
        if rank < self.dim() {
            return Err(Error::RaysDoNotSpan { rank, dim: self.dim() });
        }
        Ok(())
    }

    // Feasibility of Σ λ_i b̄_i = Σ μ_j b̄_j, λ, μ ≥ 0, Σ_{σ∖τ} λ = 1 means the
    // cones meet outside their common face.
    fn meet_badly(&self, sigma: &[usize], tau: &[usize]) -> bool {
        let d = self.dim();
        let vars = sigma.len() + tau.len();
        let mut sys = LinearSystem::new(vec![true; vars]);
        for r in 0..d {
            let mut row = Vec::with_capacity(vars);
            row.extend(sigma.iter().map(|&i| self.bars[i][r].clone()));
            row.extend(tau.iter().map(|&j| -self.bars[j][r].clone()));
            sys.add(row, Relation::Eq, Rat::zero());
        }
        let mut norm = vec![Rat::zero(); vars];
        for (k, i) in sigma.iter().enumerate() {
            if !tau.contains(i) {
                norm[k] = Rat::from_integer(1.into());
            }
        }
        if norm.iter().all(Zero::is_zero) {
            return false;
        }
        sys.add(norm, Relation::Eq, Rat::from_integer(1.into()));
        sys.feasible_point().is_some()
    }

    fn check_fan_condition(&self) -> Result<()> {
        let cones = self.fan.max_cones();
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                if self.meet_badly(&cones[a], &cones[b]) || self.meet_badly(&cones[b], &cones[a]) {
                    return Err(Error::NotAFan { first: one_based(&cones[a]), second: one_based(&cones[b]) });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FgAbelianGroup {
        self.beta.target()
    }

    pub fn fan(&self) -> &SimplicialFan {
        &self.fan
    }

    pub fn beta(&self) -> &GroupHomomorphism {
        &self.beta
    }

    pub fn rays(&self) -> &[GroupElement] {
        self.beta.images()
    }

    pub fn ray(&self, i: usize) -> &GroupElement {
        &self.beta.images()[i]
    }

    pub fn ray_count(&self) -> usize {
        self.fan.ray_count()
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn is_complete(&self) -> bool {
        self.fan.is_complete()
    }

    pub(crate) fn bar_rat(&self, i: usize) -> &[Rat] {
        &self.bars[i]
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }

    /// Coordinates of `c̄` in a maximal cone, if it lies in that cone.
    fn coords_in(&self, k: usize, v: &[Rat]) -> Option<Vec<Rat>> {
        let cone = &self.fan.max_cones()[k];
        let m = match &self.inverses[k] {
            Some(inv) => linalg::mat_vec(inv, v),
            None => {
                let m = linalg::solve(&self.cone_matrix(cone), v)?;
                if linalg::mat_vec(&self.cone_matrix(cone), &m) != v {
                    return None;
                }
                m
            }
        };
        m.iter().all(|x| !x.is_negative()).then_some(m)
    }

    /// Minimal cone containing a rational point and its positive coordinates there.
    pub fn minimal_cone_rat(&self, v: &[Rat]) -> Result<(Cone, BTreeMap<usize, Rat>)> {
        for k in 0..self.fan.max_cones().len() {
            if let Some(m) = self.coords_in(k, v) {
                let coords: BTreeMap<usize, Rat> = self.fan.max_cones()[k]
                    .iter()
                    .zip(m)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(&i, x)| (i, x))
                    .collect();
                return Ok((coords.keys().copied().collect(), coords));
            }
        }
        Err(Error::OutsideSupport)
    }

    /// `σ(c̄)` and the coordinates `m_i > 0` with `c̄ = Σ m_i b̄_i`.
    pub fn minimal_cone(&self, c: &GroupElement) -> Result<(Cone, BTreeMap<usize, Rat>)> {
        let v: Vec<Rat> = c.free.iter().map(rat_from_int).collect();
        self.minimal_cone_rat(&v)
    }

    /// `deg(y^c)`, the sum of the minimal-cone coordinates.
    pub fn degree(&self, c: &GroupElement) -> Result<Rat> {
        Ok(self.minimal_cone(c)?.1.values().sum())
    }

    /// `N(σ) = N / ⟨b_i : i ∈ σ⟩`.
    pub fn local_group(&self, sigma: &[usize]) -> FgAbelianGroup {
        self.local_cokernel(sigma).group
    }

    pub(crate) fn local_cokernel(&self, sigma: &[usize]) -> crate::lattice::Cokernel {
        let b = self.beta.lift().select_cols(sigma);
        cokernel(&b.hstack(&self.group().presentation()).expect("rows agree"))
    }

    /// Supports of the minimal generators of the irrelevant ideal.
    pub fn irrelevant_ideal(&self) -> Vec<Vec<usize>> {
        let comps: BTreeSet<Vec<usize>> = self
            .fan
            .max_cones()
            .iter()
            .map(|c| (0..self.ray_count()).filter(|i| !c.contains(i)).collect())
            .collect();
        comps
            .iter()
            .filter(|c| !comps.iter().any(|d| d.len() < c.len() && d.iter().all(|i| c.contains(i))))
            .cloned()
            .collect()
    }

    /// Is `phi: source.N → self.N` (given on lifts) a morphism of stacky fans?
    pub fn morphism_from(&self, phi: &IntegerMatrix, source: &StackyFan) -> Result<bool> {
        let map = GroupMap::new(source.group().clone(), self.group().clone(), phi.clone())?;
        let relations = self.group().presentation();
        for cone in source.fan.max_cones() {
            let mut union: BTreeSet<usize> = BTreeSet::new();
            let mut images = Vec::new();
            for &i in cone {
                let img = map.apply(source.ray(i))?;
                let Ok((mc, _)) = self.minimal_cone(&img) else {
                    return Ok(false);
                };
                union.extend(mc.iter().copied());
                images.push((img, mc));
            }
            let union: Vec<usize> = union.into_iter().collect();
            if !self.fan.is_cone(&union) {
                return Ok(false);
            }
            for (img, mc) in images {
                let gens = self.beta.lift().select_cols(&mc).hstack(&relations)?;
                if solve_integer(&gens, &img.to_vec()).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `v` with `c = v + Σ floors[i]·b_i`, `v` in the box.
    pub fn box_representative(&self, c: &GroupElement) -> Result<(BoxElement, BTreeMap<usize, Int>)> {
        let (_, coords) = self.minimal_cone(c)?;
        let mut v = c.clone();
        let mut floors = BTreeMap::new();
        let mut frac = BTreeMap::new();
        for (&i, m) in &coords {
            let f = m.floor().to_integer();
            let shift = self.group().scalar_mul(&f, self.ray(i))?;
            v = self.group().sub(&v, &shift)?;
            let rest = m - Rat::from_integer(f.clone());
            if !rest.is_zero() {
                frac.insert(i, rest);
            }
            floors.insert(i, f);
        }
        let age = frac.values().sum();
        let minimal_cone = frac.keys().copied().collect();
        Ok((BoxElement { element: v, minimal_cone, frac_coords: frac, age }, floors))
    }

    /// `v̌`: the box element over the same cone with fractional coordinates
    /// `1 − q_i`, so that `v + v̌ = Σ_{i ∈ σ(v̄)} b_i`.
    pub fn inverse_box(&self, v: &BoxElement) -> Result<BoxElement> {
        let mut e = self.group().negate(&v.element)?;
        for &i in &v.minimal_cone {
            e = self.group().add(&e, self.ray(i))?;
        }
        let frac: BTreeMap<usize, Rat> =
            v.frac_coords.iter().map(|(&i, q)| (i, Rat::from_integer(1.into()) - q)).collect();
        let age = frac.values().sum();
        Ok(BoxElement { element: e, minimal_cone: v.minimal_cone.clone(), frac_coords: frac, age })
    }

    /// Sum of lattice elements `Σ k_i b_i`.
    pub fn combination(&self, coeffs: &BTreeMap<usize, Int>) -> Result<GroupElement> {
        let mut acc = self.group().zero();
        for (&i, k) in coeffs {
            let t = self.group().scalar_mul(k, self.ray(i))?;
            acc = self.group().add(&acc, &t)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn stacky(rank: usize, torsion: &[i64], rays: &[(&[i64], &[i64])], cones: &[&[usize]]) -> StackyFan {
        try_stacky(rank, torsion, rays, cones).unwrap()
    }

    pub fn try_stacky(rank: usize, torsion: &[i64], rays: &[(&[i64], &[i64])], cones: &[&[usize]]) -> Result<StackyFan> {
        let g = FgAbelianGroup::from_i64(rank, torsion).unwrap();
        let rays = rays.iter().map(|(f, t)| GroupElement::from_i64(f, t)).collect();
        // fixtures use 1-based cones
        let cones = cones.iter().map(|c| c.iter().map(|i| i - 1).collect()).collect();
        StackyFan::new(g, rays, cones)
    }

    pub fn p121() -> StackyFan {
        stacky(2, &[], &[(&[1, 0], &[]), (&[0, -1], &[]), (&[-1, 2], &[])], &[&[1, 2], &[2, 3], &[1, 3]])
    }

    pub fn f2() -> StackyFan {
        stacky(
            2,
            &[],
            &[(&[1, 0], &[]), (&[0, -1], &[]), (&[-1, 2], &[]), (&[0, 1], &[])],
            &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]],
        )
    }

    pub fn m11() -> StackyFan {
        stacky(1, &[2], &[(&[2], &[1]), (&[-3], &[0])], &[&[1], &[2]])
    }

    pub fn p1() -> StackyFan {
        stacky(1, &[], &[(&[1], &[]), (&[-1], &[])], &[&[1], &[2]])
    }

    pub fn el(free: &[i64], torsion: &[i64]) -> GroupElement {
        GroupElement::from_i64(free, torsion)
    }
}
