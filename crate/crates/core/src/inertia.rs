//! Twisted sectors, degree-zero 3-pointed moduli components and the
//! obstruction-bundle form of the orbifold product.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{BoxElement, Cone, QuotientStackyFan, StackyFan};
use crate::lattice::{solve_integer, GroupElement};
use crate::num::{Int, Rat};
use crate::ring::RingElement;

#[derive(Clone, Debug)]
pub struct SectorReport {
    pub box_element: BoxElement,
    pub sector_fan: QuotientStackyFan,
    pub age: Rat,
}

/// One component per box element; `v = 0` is the untwisted sector.
pub fn inertia_components(stacky: &StackyFan) -> Result<Vec<SectorReport>> {
    stacky.require_complete()?;
    stacky
        .box_elements()?
        .into_iter()
        .map(|v| {
            let sector_fan = stacky.link_and_quotient(&v.minimal_cone)?;
            Ok(SectorReport { age: v.age.clone(), box_element: v, sector_fan })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ModuliComponent {
    pub triple: [BoxElement; 3],
    /// `σ(v̄₁, v̄₂, v̄₃)`.
    pub cone: Cone,
    pub component_fan: QuotientStackyFan,
    pub exponents: BTreeMap<usize, Int>,
}

/// Smallest cone containing every `v̄`, if any.
pub fn common_cone(stacky: &StackyFan, vs: &[&BoxElement]) -> Option<Cone> {
    let mut u: Cone = vs.iter().flat_map(|v| v.minimal_cone.iter().copied()).collect();
    u.sort_unstable();
    u.dedup();
    stacky.fan().is_cone(&u).then_some(u)
}

fn sum3(stacky: &StackyFan, vs: [&BoxElement; 3]) -> Result<GroupElement> {
    let g = stacky.group();
    g.add(&g.add(&vs[0].element, &vs[1].element)?, &vs[2].element)
}

// Integer coefficients of `c` over the generators of `cone`, if `c ∈ N_cone`.
fn solve_on_cone(stacky: &StackyFan, cone: &[usize], c: &GroupElement) -> Option<Vec<Int>> {
    let gens = stacky.beta().lift().select_cols(cone).hstack(&stacky.group().presentation()).ok()?;
    let x = solve_integer(&gens, &c.to_vec())?;
    Some(x[..cone.len()].to_vec())
}

/// `m_k` with `v₁ + v₂ + v₃ = Σ_{k ∈ σ(v̄₁, v̄₂, v̄₃)} m_k b_k`, each in `{1, 2}`.
pub fn virtual_exponents(stacky: &StackyFan, v1: &BoxElement, v2: &BoxElement, v3: &BoxElement) -> Result<BTreeMap<usize, Int>> {
    let cone = common_cone(stacky, &[v1, v2, v3]).ok_or(Error::NotAComponent)?;
    let sum = sum3(stacky, [v1, v2, v3])?;
    let m = solve_on_cone(stacky, &cone, &sum).ok_or(Error::NotAComponent)?;
    let mut out = BTreeMap::new();
    for (&k, mk) in cone.iter().zip(m) {
        if mk != Int::one() && mk != Int::from(2) {
            return Err(Error::ExponentOutOfRange { ray: k + 1, value: format!("{mk}") });
        }
        out.insert(k, mk);
    }
    Ok(out)
}

/// The same exponents read off as `a_{1,k} + a_{2,k} + a_{3,k}`.
pub fn exponents_by_fractions(v1: &BoxElement, v2: &BoxElement, v3: &BoxElement) -> BTreeMap<usize, Rat> {
    let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
    for v in [v1, v2, v3] {
        for (&k, a) in &v.frac_coords {
            *out.entry(k).or_insert_with(Rat::zero) += a;
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// All ordered triples in `Box(Σ)³` with `v₁ + v₂ + v₃ ≡ 0`.
pub fn moduli_components(stacky: &StackyFan) -> Result<Vec<ModuliComponent>> {
    stacky.require_complete()?;
    let boxes = stacky.box_elements()?;
    let mut fans: BTreeMap<Cone, QuotientStackyFan> = BTreeMap::new();
    let mut out = Vec::new();
    for a in &boxes {
        for b in &boxes {
            for c in &boxes {
                let Some(cone) = common_cone(stacky, &[a, b, c]) else { continue };
                let exponents = match virtual_exponents(stacky, a, b, c) {
                    Ok(e) => e,
                    Err(Error::NotAComponent) => continue,
                    Err(e) => return Err(e),
                };
                if !fans.contains_key(&cone) {
                    fans.insert(cone.clone(), stacky.link_and_quotient(&cone)?);
                }
                out.push(ModuliComponent {
                    triple: [a.clone(), b.clone(), c.clone()],
                    component_fan: fans[&cone].clone(),
                    cone,
                    exponents,
                });
            }
        }
    }
    Ok(out)
}

/// Data behind `y^{v₁} ∗ y^{v₂} = y^{v̌₃} Π_I y^{b_i} Π_J y^{b_j}`.
#[derive(Clone, Debug)]
pub struct ObstructionData {
    pub v3: BoxElement,
    pub v3_check: BoxElement,
    pub exponents: BTreeMap<usize, Int>,
    /// Rays with `m_i = 2`.
    pub doubled: Vec<usize>,
    /// Rays of `σ(v̄₁, v̄₂)` outside `σ(v̄₃)`.
    pub excess: Vec<usize>,
}

/// `None` when no cone contains both `v̄₁` and `v̄₂`.
pub fn obstruction_data(stacky: &StackyFan, v1: &BoxElement, v2: &BoxElement) -> Result<Option<ObstructionData>> {
    let Some(cone) = common_cone(stacky, &[v1, v2]) else { return Ok(None) };
    let sum = stacky.group().add(&v1.element, &v2.element)?;
    let (w, _) = stacky.box_representative(&sum)?;
    let v3 = stacky.inverse_box(&w)?;
    let exponents = virtual_exponents(stacky, v1, v2, &v3)?;
    let doubled = exponents.iter().filter(|(_, m)| **m == Int::from(2)).map(|(&k, _)| k).collect();
    let excess = cone.iter().filter(|k| !v3.minimal_cone.contains(k)).copied().collect();
    Ok(Some(ObstructionData { v3_check: w, v3, exponents, doubled, excess }))
}

/// The product of two box monomials through the obstruction-bundle formula.
pub fn obstruction_product(stacky: &StackyFan, v1: &BoxElement, v2: &BoxElement) -> Result<RingElement> {
    let Some(data) = obstruction_data(stacky, v1, v2)? else { return Ok(RingElement::zero()) };
    let mut acc = RingElement::monomial(data.v3_check.element.clone());
    for &i in data.doubled.iter().chain(&data.excess) {
        acc = stacky.multiply(&acc, &RingElement::monomial(stacky.ray(i).clone()))?;
    }
    Ok(acc)
}
