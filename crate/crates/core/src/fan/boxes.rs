use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{one_based, Cone, StackyFan};
use crate::error::{Error, Result};
use crate::lattice::GroupElement;
use crate::linalg;
use crate::num::{rat_from_int, Int, Rat};

/// `v ∈ N` whose image has coordinates in `[0, 1)` over some maximal cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxElement {
    pub element: GroupElement,
    /// `σ(v̄)`: the rays with nonzero fractional coordinate.
    pub minimal_cone: Cone,
    pub frac_coords: BTreeMap<usize, Rat>,
    pub age: Rat,
}

impl BoxElement {
    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }
}

impl StackyFan {
    /// Box of a `d`-dimensional cone: one element per element of `N(σ)`.
    pub fn box_of_cone(&self, sigma: &[usize]) -> Result<Vec<BoxElement>> {
        let d = self.dim();
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if sigma.len() != d || !self.fan().is_cone(&sigma) {
            return Err(Error::NotMaximalCone { cone: one_based(&sigma) });
        }
        let cols: Vec<Vec<Rat>> = (0..d).map(|r| sigma.iter().map(|&i| self.bar_rat(i)[r].clone()).collect()).collect();
        let inv = linalg::inverse(&cols).ok_or(Error::DependentGenerators { cone: one_based(&sigma) })?;
        // Bounding box of the half-open parallelepiped.
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for r in 0..d {
            let mut l = Int::zero();
            let mut h = Int::zero();
            for &i in &sigma {
                let x = &self.ray(i).free[r];
                if x.is_negative() {
                    l += x;
                } else {
                    h += x;
                }
            }
            lo.push(l);
            hi.push(h);
        }
        let mut points = Vec::new();
        let mut p = lo.clone();
        loop {
            let pr: Vec<Rat> = p.iter().map(rat_from_int).collect();
            let q = linalg::mat_vec(&inv, &pr);
            if q.iter().all(|x| !x.is_negative() && x < &Rat::one()) {
                points.push((p.clone(), q));
            }
            // odometer over the bounding box
            let mut k = 0;
            loop {
                if k == d {
                    return Ok(self.attach_torsion(&sigma, points));
                }
                p[k] += 1;
                if p[k] <= hi[k] {
                    break;
                }
                p[k] = lo[k].clone();
                k += 1;
            }
        }
    }

    fn attach_torsion(&self, sigma: &[usize], points: Vec<(Vec<Int>, Vec<Rat>)>) -> Vec<BoxElement> {
        let torsion = self.group().torsion_elements();
        let mut out = Vec::with_capacity(points.len() * torsion.len());
        for (p, q) in points {
            let frac: BTreeMap<usize, Rat> =
                sigma.iter().zip(q).filter(|(_, x)| !x.is_zero()).map(|(&i, x)| (i, x)).collect();
            let age: Rat = frac.values().sum();
            let minimal_cone: Cone = frac.keys().copied().collect();
            for t in &torsion {
                out.push(BoxElement {
                    element: GroupElement { free: p.clone(), torsion: t.torsion.clone() },
                    minimal_cone: minimal_cone.clone(),
                    frac_coords: frac.clone(),
                    age: age.clone(),
                });
            }
        }
        out
    }

    /// `Box(Σ)`: union over the `d`-dimensional cones, sorted by age then element.
    pub fn box_elements(&self) -> Result<Vec<BoxElement>> {
        let mut all: BTreeMap<GroupElement, BoxElement> = BTreeMap::new();
        for cone in self.fan().max_cones() {
            if cone.len() != self.dim() {
                continue;
            }
            for b in self.box_of_cone(cone)? {
                all.entry(b.element.clone()).or_insert(b);
            }
        }
        let mut out: Vec<BoxElement> = all.into_values().collect();
        out.sort_by(|a, b| a.age.cmp(&b.age).then_with(|| a.element.cmp(&b.element)));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use crate::error::Error;
    use crate::num::{rat, Int};

    #[test]
    fn p121_boxes() {
        let p = p121();
        assert_eq!(p.box_of_cone(&[0, 1]).unwrap().len(), 1);
        let b = p.box_of_cone(&[0, 2]).unwrap();
        assert_eq!(b.len(), 2);
        let v = b.iter().find(|x| !x.is_zero()).unwrap();
        assert_eq!(v.element, el(&[0, 1], &[]));
        assert_eq!(v.frac_coords[&0], rat(1, 2));
        assert_eq!(v.frac_coords[&2], rat(1, 2));
        assert_eq!(v.age, rat(1, 1));
        let all = p.box_elements().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(p.box_of_cone(&[0]).unwrap_err(), Error::NotMaximalCone { cone: alloc::vec![1] });
    }

    #[test]
    fn m11_boxes() {
        let m = m11();
        let b2 = m.box_of_cone(&[1]).unwrap();
        assert_eq!(b2.len(), 6);
        for v in &b2 {
            assert!(v.element.free[0] <= Int::from(0) && v.element.free[0] >= Int::from(-2));
        }
        let all = m.box_elements().unwrap();
        assert_eq!(all.len(), 8);
        let ages: alloc::vec::Vec<_> = all.iter().map(|v| v.age.clone()).collect();
        assert_eq!(ages, [rat(0, 1), rat(0, 1), rat(1, 3), rat(1, 3), rat(1, 2), rat(1, 2), rat(2, 3), rat(2, 3)]);
    }

    #[test]
    fn smooth_box_is_trivial() {
        let b = f2().box_elements().unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_zero());
    }
}
