use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use super::smith::{kernel_basis, smith_normal_form};
use crate::error::{Error, Result};
use crate::num::{modulo, Int};

/// `Z^rank ⊕ Z/q_1 ⊕ ... ⊕ Z/q_r` with `q_1 | q_2 | ... | q_r`, every `q_j ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<Int>,
}

/// Element of an [`FgAbelianGroup`]; torsion residues are kept in `[0, q_j)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    pub free: Vec<Int>,
    pub torsion: Vec<Int>,
}

impl GroupElement {
    /// Image in the free quotient.
    pub fn bar(&self) -> &[Int] {
        &self.free
    }

    /// Coordinates in `Z^{d+r}` (free part followed by residues).
    pub fn to_vec(&self) -> Vec<Int> {
        self.free.iter().chain(self.torsion.iter()).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(self.torsion.iter()).all(Zero::is_zero)
    }

    pub fn from_i64(free: &[i64], torsion: &[i64]) -> Self {
        GroupElement {
            free: free.iter().map(|&x| Int::from(x)).collect(),
            torsion: torsion.iter().map(|&x| Int::from(x)).collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.free.iter().chain(self.torsion.iter()).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<Int>) -> Result<Self> {
        for (j, q) in torsion.iter().enumerate() {
            if q < &Int::from(2) {
                return Err(Error::InvalidGroup(format!("torsion factor {} is below 2", q)));
            }
            if j > 0 && !q.is_multiple_of(&torsion[j - 1]) {
                return Err(Error::InvalidGroup(format!(
                    "torsion factors {} and {} break the divisibility chain",
                    torsion[j - 1], q
                )));
            }
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn from_i64(rank: usize, torsion: &[i64]) -> Result<Self> {
        Self::new(rank, torsion.iter().map(|&q| Int::from(q)).collect())
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// `d + r`, the length of a lift to the presentation.
    pub fn ambient_dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion.iter().fold(Int::one(), |a, q| a * q))
    }

    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().fold(Int::one(), |a, q| a * q)
    }

    /// `Q = [0; diag(q)]`, the `(d+r) × r` relation matrix.
    pub fn presentation(&self) -> IntegerMatrix {
        let r = self.torsion.len();
        let mut q = IntegerMatrix::zeros(self.rank + r, r);
        for (j, qj) in self.torsion.iter().enumerate() {
            q.set(self.rank + j, j, qj.clone());
        }
        q
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { free: vec![Int::zero(); self.rank], torsion: vec![Int::zero(); self.torsion.len()] }
    }

    /// Builds an element, reducing residues.
    pub fn element(&self, free: Vec<Int>, torsion: Vec<Int>) -> Result<GroupElement> {
        if free.len() != self.rank || torsion.len() != self.torsion.len() {
            return Err(Error::MismatchedGroup(format!(
                "element with {} free and {} torsion coordinates in {}",
                free.len(),
                torsion.len(),
                self
            )));
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(t, q)| modulo(t, q)).collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn element_i64(&self, free: &[i64], torsion: &[i64]) -> Result<GroupElement> {
        self.element(
            free.iter().map(|&x| Int::from(x)).collect(),
            torsion.iter().map(|&x| Int::from(x)).collect(),
        )
    }

    /// Reads `Z^{d+r}` coordinates as an element.
    pub fn reduce(&self, v: &[Int]) -> Result<GroupElement> {
        if v.len() != self.ambient_dim() {
            return Err(Error::MismatchedGroup(format!("vector of length {} for {}", v.len(), self)));
        }
        self.element(v[..self.rank].to_vec(), v[self.rank..].to_vec())
    }

    /// `true` if the element's shape matches and residues are reduced.
    pub fn contains(&self, a: &GroupElement) -> bool {
        a.free.len() == self.rank
            && a.torsion.len() == self.torsion.len()
            && a.torsion.iter().zip(&self.torsion).all(|(t, q)| !t.is_negative() && t < q)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MismatchedGroup(format!("{} is not an element of {}", a, self)))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        self.element(
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.element(a.free.iter().map(|x| -x).collect(), a.torsion.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.negate(b)?;
        self.add(a, &nb)
    }

    pub fn scalar_mul(&self, k: &Int, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.element(a.free.iter().map(|x| k * x).collect(), a.torsion.iter().map(|x| k * x).collect())
    }

    /// All elements of the torsion subgroup, in lexicographic order.
    pub fn torsion_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (j, q) in self.torsion.iter().enumerate() {
            let mut next = Vec::new();
            for e in &out {
                let mut k = Int::zero();
                while &k < q {
                    let mut f = e.clone();
                    f.torsion[j] = k.clone();
                    next.push(f);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    /// `true` if `v ∈ Z^{d+r}` maps to zero, i.e. lies in the image of `Q`.
    pub fn is_relation(&self, v: &[Int]) -> bool {
        v.len() == self.ambient_dim()
            && v[..self.rank].iter().all(Zero::is_zero)
            && v[self.rank..].iter().zip(&self.torsion).all(|(x, q)| x.is_multiple_of(q))
    }
}

/// `Z^2 + Z/2 + Z/6`; the trivial group prints as `0`.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(alloc::string::String::from("Z")),
            d => parts.push(format!("Z^{}", d)),
        }
        for q in &self.torsion {
            parts.push(format!("Z/{}", q));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `coker(M)` in canonical form, with a projection from the ambient
/// lattice and a section back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: FgAbelianGroup,
    /// `(d'+r') × m`; residues of the torsion rows are taken mod `q_j`.
    pub projection: IntegerMatrix,
    /// `m × (d'+r')`; column `k` lifts the `k`-th canonical generator.
    pub section: IntegerMatrix,
}

impl Cokernel {
    pub fn project(&self, v: &[Int]) -> Result<GroupElement> {
        let w = self.projection.apply(v)?;
        self.group.reduce(&w)
    }

    pub fn lift(&self, a: &GroupElement) -> Result<Vec<Int>> {
        self.section.apply(&a.to_vec())
    }
}

/// Cokernel of `M: Z^k → Z^m`. Free coordinates come first, then the
/// nontrivial invariant factors in ascending order.
pub fn cokernel(m: &IntegerMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let rows = m.rows();
    let mut order: Vec<usize> = (snf.rank..rows).collect();
    let mut torsion = Vec::new();
    for i in 0..snf.rank {
        let d = snf.s.get(i, i);
        if !d.is_one() {
            order.push(i);
            torsion.push(d.clone());
        }
    }
    let group = FgAbelianGroup { rank: rows - snf.rank, torsion };
    let projection = snf.u.select_rows(&order);
    let section = snf.u_inv.select_cols(&order);
    Cokernel { group, projection, section }
}

/// Equality of the lattices spanned by the columns.
pub fn same_lattice(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    a.rows() == b.rows() && a.col_lattice_basis() == b.col_lattice_basis()
}

/// `β: Z^n → N` given by images `b_1..b_n` and a lift `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomomorphism {
    target: FgAbelianGroup,
    images: Vec<GroupElement>,
    lift: IntegerMatrix,
}

impl GroupHomomorphism {
    /// Lift is the free part stacked over residues in `[0, q_j)`.
    pub fn new(target: FgAbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        let mut cols = Vec::with_capacity(images.len());
        let mut reduced = Vec::with_capacity(images.len());
        for b in images {
            let b = target.element(b.free, b.torsion)?;
            cols.push(b.to_vec());
            reduced.push(b);
        }
        let lift = IntegerMatrix::from_cols(&cols, target.ambient_dim())?;
        Ok(GroupHomomorphism { target, images: reduced, lift })
    }

    /// Uses the given lift verbatim; images are its reductions.
    pub fn from_lift(target: FgAbelianGroup, lift: IntegerMatrix) -> Result<Self> {
        if lift.rows() != target.ambient_dim() {
            return Err(Error::MatrixShape(format!(
                "lift with {} rows into {} coordinates",
                lift.rows(),
                target.ambient_dim()
            )));
        }
        let images = (0..lift.cols()).map(|c| target.reduce(&lift.col(c))).collect::<Result<Vec<_>>>()?;
        Ok(GroupHomomorphism { target, images, lift })
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn lift(&self) -> &IntegerMatrix {
        &self.lift
    }

    /// `B̄`, the `d × n` free rows of the lift.
    pub fn free_matrix(&self) -> IntegerMatrix {
        let rows: Vec<usize> = (0..self.target.rank()).collect();
        self.lift.select_rows(&rows)
    }

    pub fn apply(&self, x: &[Int]) -> Result<GroupElement> {
        let v = self.lift.apply(x)?;
        self.target.reduce(&v)
    }
}

/// Homomorphism between finitely generated groups, given on lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    lift: IntegerMatrix,
}

impl GroupMap {
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, lift: IntegerMatrix) -> Result<Self> {
        if lift.rows() != target.ambient_dim() || lift.cols() != source.ambient_dim() {
            return Err(Error::MatrixShape(format!(
                "{}x{} lift for a map {} -> {}",
                lift.rows(),
                lift.cols(),
                source,
                target
            )));
        }
        let rel = lift.mul(&source.presentation())?;
        for c in 0..rel.cols() {
            if !target.is_relation(&rel.col(c)) {
                return Err(Error::IllDefinedHomomorphism(format!(
                    "torsion generator {} of {} has nonzero image of infinite order or wrong order",
                    c + 1,
                    source
                )));
            }
        }
        Ok(GroupMap { source, target, lift })
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        GroupMap { source: g.clone(), target: g.clone(), lift: IntegerMatrix::identity(g.ambient_dim()) }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn lift(&self) -> &IntegerMatrix {
        &self.lift
    }

    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        let v = self.lift.apply(&a.to_vec())?;
        self.target.reduce(&v)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupMap) -> Result<GroupMap> {
        if first.target != self.source {
            return Err(Error::MismatchedGroup(format!("cannot compose through {} and {}", first.target, self.source)));
        }
        GroupMap::new(first.source.clone(), self.target.clone(), self.lift.mul(&first.lift)?)
    }

    /// Kernel as a lattice in the source's `Z^{d+r}` (contains the relations).
    pub fn kernel_lattice(&self) -> IntegerMatrix {
        let big = self.lift.hstack(&self.target.presentation()).expect("row counts agree");
        let k = kernel_basis(&big);
        let rows: Vec<usize> = (0..self.source.ambient_dim()).collect();
        k.select_rows(&rows)
    }

    /// Image as a lattice in the target's `Z^{d+r}` (contains the relations).
    pub fn image_lattice(&self) -> IntegerMatrix {
        self.lift.hstack(&self.target.presentation()).expect("row counts agree")
    }

    pub fn is_injective(&self) -> bool {
        same_lattice(&self.kernel_lattice(), &self.source.presentation())
    }

    pub fn is_surjective(&self) -> bool {
        same_lattice(&self.image_lattice(), &IntegerMatrix::identity(self.target.ambient_dim()))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.lift.cols()).all(|c| self.target.is_relation(&self.lift.col(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_ops() {
        let g = FgAbelianGroup::from_i64(1, &[2]).unwrap();
        let a = g.element_i64(&[2], &[1]).unwrap();
        let b = g.element_i64(&[-3], &[0]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap(), GroupElement::from_i64(&[-1], &[1]));
        assert!(g.element_i64(&[0], &[1]).unwrap().bar().iter().all(Zero::is_zero));
        let h = FgAbelianGroup::from_i64(1, &[3]).unwrap();
        let c = h.element_i64(&[0], &[1]).unwrap();
        assert_eq!(h.negate(&c).unwrap(), GroupElement::from_i64(&[0], &[2]));
        assert!(matches!(h.add(&c, &GroupElement::from_i64(&[0], &[])), Err(Error::MismatchedGroup(_))));
        assert_eq!(h.scalar_mul(&Int::from(4), &c).unwrap(), c);
    }

    #[test]
    fn invalid_groups() {
        assert!(FgAbelianGroup::from_i64(0, &[1]).is_err());
        assert!(FgAbelianGroup::from_i64(0, &[2, 3]).is_err());
        assert!(FgAbelianGroup::from_i64(0, &[2, 6]).is_ok());
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&IntegerMatrix::from_i64(&[&[2]]));
        assert_eq!(c.group, FgAbelianGroup::from_i64(0, &[2]).unwrap());
        assert_eq!(c.project(&[Int::from(5)]).unwrap(), GroupElement::from_i64(&[], &[1]));

        let c = cokernel(&IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(c.group, FgAbelianGroup::from_i64(0, &[6]).unwrap());

        let m = IntegerMatrix::from_i64(&[&[2, 1], &[-3, 0], &[0, 2]]);
        let c = cokernel(&m);
        assert_eq!(c.group, FgAbelianGroup::free(1));
        for col in m.col_vecs() {
            assert!(c.project(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn section_splits_projection() {
        let m = IntegerMatrix::from_i64(&[&[4, 6], &[2, 0], &[0, 0]]);
        let c = cokernel(&m);
        assert_eq!(alloc::format!("{}", c.group), "Z + Z/2 + Z/6");
        for e in [
            c.group.element_i64(&[1], &[0, 0]).unwrap(),
            c.group.element_i64(&[0], &[1, 5]).unwrap(),
            c.group.element_i64(&[-2], &[1, 3]).unwrap(),
        ] {
            assert_eq!(c.project(&c.lift(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn maps_between_groups() {
        let z2 = FgAbelianGroup::from_i64(0, &[2]).unwrap();
        let z4 = FgAbelianGroup::from_i64(0, &[4]).unwrap();
        let double = GroupMap::new(z2.clone(), z4.clone(), IntegerMatrix::from_i64(&[&[2]])).unwrap();
        assert!(double.is_injective());
        assert!(!double.is_surjective());
        assert!(GroupMap::new(z2.clone(), z4.clone(), IntegerMatrix::from_i64(&[&[1]])).is_err());
        let reduce = GroupMap::new(z4, z2, IntegerMatrix::from_i64(&[&[1]])).unwrap();
        assert!(reduce.is_surjective());
        assert!(reduce.compose(&double).unwrap().is_zero());
    }
}
