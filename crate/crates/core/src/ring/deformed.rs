//! The deformed group ring `Q[N]^Σ`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Result;
use crate::fan::StackyFan;
use crate::lattice::GroupElement;
use crate::num::Rat;

/// Finite rational combination of monomials `y^c`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct RingElement {
    terms: BTreeMap<GroupElement, Rat>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: GroupElement) -> Self {
        Self::term(c, Rat::from_integer(1.into()))
    }

    pub fn term(c: GroupElement, coeff: Rat) -> Self {
        let mut r = Self::zero();
        r.add_term(c, coeff);
        r
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: GroupElement, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(c.clone()).or_insert_with(Rat::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(c.clone(), k.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> RingElement {
        let mut out = RingElement::zero();
        for (c, x) in &self.terms {
            out.add_term(c.clone(), x * k);
        }
        out
    }
}

impl StackyFan {
    /// `y^{c1} · y^{c2}`: `Some(c1 + c2)` when `c̄1`, `c̄2` share a cone.
    pub fn monomial_product(&self, c1: &GroupElement, c2: &GroupElement) -> Result<Option<GroupElement>> {
        let (s1, _) = self.minimal_cone(c1)?;
        let (s2, _) = self.minimal_cone(c2)?;
        let mut union: Vec<usize> = s1.into_iter().chain(s2).collect();
        union.sort_unstable();
        union.dedup();
        if self.fan().is_cone(&union) {
            Ok(Some(self.group().add(c1, c2)?))
        } else {
            Ok(None)
        }
    }

    /// Product in the deformed group ring.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (c1, k1) in a.terms() {
            for (c2, k2) in b.terms() {
                if let Some(c) = self.monomial_product(c1, c2)? {
                    out.add_term(c, k1 * k2);
                }
            }
        }
        Ok(out)
    }
}
