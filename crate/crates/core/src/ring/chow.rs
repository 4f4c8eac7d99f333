//! Chow rings: the Stanley–Reisner presentation and the orbifold ring
//! `Q[N]^Σ / ⟨Σ_i θ(b_i) y^{b_i}⟩`, both by degreewise linear algebra.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{BoxElement, Cone, SimplicialFan, StackyFan};
use crate::lattice::GroupElement;
use crate::linalg::{self, RatMatrix};
use crate::num::{rat_from_int, Int, Rat};

/// `h_0, ..., h_d` from `Σ_k h_k t^{d−k} = Σ_j f_{j−1} (t − 1)^{d−j}`.
pub fn h_vector(fan: &SimplicialFan) -> Result<Vec<usize>> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let d = fan.dim();
    let f = fan.f_vector();
    // coeffs[p] is the coefficient of t^p
    let mut coeffs = vec![Int::zero(); d + 1];
    for (j, &fj) in f.iter().enumerate() {
        let e = d - j;
        // (t - 1)^e = Σ_p C(e, p) t^p (-1)^{e-p}
        let mut binom = Int::one();
        for (p, c) in coeffs.iter_mut().enumerate().take(e + 1) {
            let sign = if (e - p).is_multiple_of(2) { Int::one() } else { -Int::one() };
            *c += Int::from(fj) * &binom * sign;
            binom = binom * Int::from(e - p) / Int::from(p + 1);
        }
    }
    Ok((0..=d)
        .map(|k| {
            let h = &coeffs[d - k];
            usize::try_from(h).expect("h-vector entries of a complete fan are nonnegative")
        })
        .collect())
}

fn theta(stacky: &StackyFan, j: usize, i: usize) -> Rat {
    rat_from_int(&stacky.ray(i).free[j])
}

fn union_is_cone(fan: &SimplicialFan, a: &[usize], b: &[usize]) -> bool {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    fan.is_cone(&u)
}

// Compositions of at most `budget` into `parts` nonnegative pieces.
fn bounded_compositions(parts: usize, budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[k] = x;
            rec(k + 1, left - x, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, budget, &mut cur, &mut out);
    out
}

/// Graded dimensions of `S_Σ / ⟨Σ_i θ_j(b̄_i) x_i⟩`, indexed by degree `0..=d`.
pub fn chow_graded_dims(stacky: &StackyFan) -> Result<Vec<usize>> {
    stacky.require_complete()?;
    let d = stacky.dim();
    let n = stacky.ray_count();
    // Monomials supported on cones, by degree.
    let mut by_degree: Vec<Vec<(Vec<usize>, Cone)>> = vec![Vec::new(); d + 1];
    for tau in stacky.fan().cones() {
        if tau.len() > d {
            continue;
        }
        for extra in bounded_compositions(tau.len(), d - tau.len()) {
            let mut a = vec![0; n];
            for (k, &i) in tau.iter().enumerate() {
                a[i] = 1 + extra[k];
            }
            let deg: usize = a.iter().sum();
            by_degree[deg].push((a, tau.clone()));
        }
    }
    let mut dims = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let index: BTreeMap<&Vec<usize>, usize> = by_degree[k].iter().enumerate().map(|(p, (a, _))| (a, p)).collect();
        let mut rows: RatMatrix = Vec::new();
        if k > 0 {
            for (a, tau) in &by_degree[k - 1] {
                for j in 0..d {
                    let mut row = vec![Rat::zero(); index.len()];
                    for i in 0..n {
                        let t = theta(stacky, j, i);
                        if t.is_zero() || !union_is_cone(stacky.fan(), tau, &[i]) {
                            continue;
                        }
                        let mut b = a.clone();
                        b[i] += 1;
                        row[index[&b]] += t;
                    }
                    rows.push(row);
                }
            }
        }
        dims.push(index.len() - linalg::rank(&rows));
    }
    Ok(dims)
}

/// One basis monomial of the orbifold Chow ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMonomial {
    pub element: GroupElement,
    pub degree: Rat,
    pub sector: BoxElement,
}

/// Graded basis, reduction tables and structure constants.
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    pub basis: Vec<BasisMonomial>,
    pub dims: BTreeMap<Rat, usize>,
    /// Coordinates over `basis` of every monomial of degree `≤ d`.
    pub reduction: BTreeMap<GroupElement, BTreeMap<usize, Rat>>,
    /// `e_a · e_b` over `basis`; absent pairs multiply to zero.
    pub structure_constants: BTreeMap<(usize, usize), BTreeMap<usize, Rat>>,
    pub dim: usize,
}

/// Which monomials survive as basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    /// Prefer lexicographically smaller (age, free part, torsion part).
    #[default]
    Preferred,
    /// The opposite preference; used to cross-check basis independence.
    Reversed,
}

struct Monomial {
    element: GroupElement,
    degree: Rat,
    cone: Cone,
    sector: usize,
}

fn enumerate_monomials(stacky: &StackyFan, boxes: &[BoxElement], bound: &Rat) -> Result<Vec<Monomial>> {
    let g = stacky.group();
    let mut out = Vec::new();
    for (s, v) in boxes.iter().enumerate() {
        for tau in stacky.fan().cones() {
            if !v.minimal_cone.iter().all(|i| tau.contains(i)) {
                continue;
            }
            let fresh: Vec<usize> = tau.iter().filter(|i| !v.minimal_cone.contains(i)).copied().collect();
            let base = &v.age + Rat::from_integer(Int::from(fresh.len()));
            if &base > bound {
                continue;
            }
            let budget = (bound - &base).floor().to_integer();
            let budget = usize::try_from(&budget).unwrap_or(0);
            for extra in bounded_compositions(tau.len(), budget) {
                let mut c = v.element.clone();
                let mut total = 0usize;
                for (k, &i) in tau.iter().enumerate() {
                    let mult = extra[k] + usize::from(fresh.contains(&i));
                    total += mult;
                    if mult > 0 {
                        let step = g.scalar_mul(&Int::from(mult), stacky.ray(i))?;
                        c = g.add(&c, &step)?;
                    }
                }
                out.push(Monomial {
                    element: c,
                    degree: &v.age + Rat::from_integer(Int::from(total)),
                    cone: tau.clone(),
                    sector: s,
                });
            }
        }
    }
    Ok(out)
}

type Key<'a> = (&'a Rat, &'a [Int], &'a [Int]);

fn preference<'a>(m: &'a Monomial, boxes: &'a [BoxElement]) -> Key<'a> {
    (&boxes[m.sector].age, &m.element.free, &m.element.torsion)
}

pub fn orbifold_chow(stacky: &StackyFan) -> Result<GradedPresentation> {
    orbifold_chow_with(stacky, PivotOrder::Preferred)
}

pub fn orbifold_chow_with(stacky: &StackyFan, order: PivotOrder) -> Result<GradedPresentation> {
    stacky.require_complete()?;
    let d = stacky.dim();
    let n = stacky.ray_count();
    let top = Rat::from_integer(Int::from(d));
    let boxes = stacky.box_elements()?;
    let monomials = enumerate_monomials(stacky, &boxes, &top)?;
    let lookup: BTreeMap<&GroupElement, usize> = monomials.iter().enumerate().map(|(k, m)| (&m.element, k)).collect();
    let mut by_degree: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    for (k, m) in monomials.iter().enumerate() {
        by_degree.entry(m.degree.clone()).or_default().push(k);
    }
    let mut basis = Vec::new();
    let mut dims = BTreeMap::new();
    // Reduction in terms of monomial indices first; basis indices are assigned afterwards.
    let mut reduced: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
    let one = Rat::one();
    for (q, members) in &by_degree {
        let mut cols = members.clone();
        // Least preferred first: rref pivots on the left, survivors on the right.
        cols.sort_by(|&a, &b| {
            let o = preference(&monomials[a], &boxes).cmp(&preference(&monomials[b], &boxes));
            match order {
                PivotOrder::Preferred => o.reverse(),
                PivotOrder::Reversed => o,
            }
        });
        let col_of: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &m)| (m, p)).collect();
        let mut rows: RatMatrix = Vec::new();
        let prev = q - &one;
        if let Some(lower) = by_degree.get(&prev) {
            for &c in lower {
                for j in 0..d {
                    let mut row = vec![Rat::zero(); cols.len()];
                    for i in 0..n {
                        let t = theta(stacky, j, i);
                        if t.is_zero() || !union_is_cone(stacky.fan(), &monomials[c].cone, &[i]) {
                            continue;
                        }
                        let prod = stacky.group().add(&monomials[c].element, stacky.ray(i))?;
                        row[col_of[&lookup[&prod]]] += t;
                    }
                    rows.push(row);
                }
            }
        }
        let pivots = if rows.is_empty() { Vec::new() } else { linalg::rref(&mut rows) };
        let free_cols: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
        for &c in &free_cols {
            reduced.insert(cols[c], vec![(cols[c], one.clone())]);
        }
        for (r, &p) in pivots.iter().enumerate() {
            let combo = free_cols
                .iter()
                .filter(|&&f| !rows[r][f].is_zero())
                .map(|&f| (cols[f], -rows[r][f].clone()))
                .collect();
            reduced.insert(cols[p], combo);
        }
        let mut survivors: Vec<usize> = free_cols.iter().map(|&c| cols[c]).collect();
        survivors.sort_by(|&a, &b| preference(&monomials[a], &boxes).cmp(&preference(&monomials[b], &boxes)));
        dims.insert(q.clone(), survivors.len());
        basis.extend(survivors);
    }
    dims.retain(|_, v| *v > 0);
    let position: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(p, &m)| (m, p)).collect();
    let reduction: BTreeMap<GroupElement, BTreeMap<usize, Rat>> = reduced
        .into_iter()
        .map(|(m, combo)| (monomials[m].element.clone(), combo.into_iter().map(|(b, k)| (position[&b], k)).collect()))
        .collect();
    let mut structure_constants = BTreeMap::new();
    for (a, &ma) in basis.iter().enumerate() {
        for (b, &mb) in basis.iter().enumerate() {
            let (x, y) = (&monomials[ma], &monomials[mb]);
            if &x.degree + &y.degree > top || !union_is_cone(stacky.fan(), &x.cone, &y.cone) {
                continue;
            }
            let prod = stacky.group().add(&x.element, &y.element)?;
            if let Some(coords) = reduction.get(&prod) {
                if !coords.is_empty() {
                    structure_constants.insert((a, b), coords.clone());
                }
            }
        }
    }
    let basis = basis
        .into_iter()
        .map(|m| BasisMonomial {
            element: monomials[m].element.clone(),
            degree: monomials[m].degree.clone(),
            sector: boxes[monomials[m].sector].clone(),
        })
        .collect();
    Ok(GradedPresentation { basis, dims, reduction, structure_constants, dim: d })
}

pub type Coords = BTreeMap<usize, Rat>;

fn add_into(acc: &mut Coords, k: &Rat, v: &Coords) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Rat::zero);
        *e += k * x;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

impl GradedPresentation {
    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    /// `e_a · e_b` in basis coordinates.
    pub fn product(&self, a: usize, b: usize) -> Coords {
        self.structure_constants.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &Coords, y: &Coords) -> Coords {
        let mut out = Coords::new();
        for (a, ka) in x {
            for (b, kb) in y {
                add_into(&mut out, &(ka * kb), &self.product(*a, *b));
            }
        }
        out
    }

    /// Coordinates of `y^c`; monomials above the top degree reduce to zero.
    pub fn reduce(&self, c: &GroupElement) -> Coords {
        self.reduction.get(c).cloned().unwrap_or_default()
    }

    pub fn unit(&self, a: usize) -> Coords {
        let mut c = Coords::new();
        c.insert(a, Rat::one());
        c
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.basis.len();
        (0..n).all(|a| (0..n).all(|b| self.product(a, b) == self.product(b, a)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.basis.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    let left = self.multiply(&ab, &self.unit(c));
                    let right = self.multiply(&self.unit(a), &self.product(b, c));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `dim_q = dim_{d−q}` for every degree.
    pub fn is_poincare_symmetric(&self) -> bool {
        let top = Rat::from_integer(Int::from(self.dim));
        self.dims.iter().all(|(q, n)| self.dims.get(&(&top - q)) == Some(n))
    }

    /// Graded dimensions as integers when all degrees are integral.
    pub fn integral_dims(&self) -> Option<Vec<usize>> {
        let mut out = vec![0; self.dim + 1];
        for (q, n) in &self.dims {
            if !q.is_integer() || q.is_negative() {
                return None;
            }
            let k = usize::try_from(&q.to_integer()).ok()?;
            *out.get_mut(k)? = *n;
        }
        Some(out)
    }

    /// Is the linear map sending each basis monomial of `other` to its class
    /// here a degree-preserving ring isomorphism?
    pub fn isomorphic_via_monomials(&self, other: &GradedPresentation) -> bool {
        if self.dims != other.dims {
            return false;
        }
        let images: Vec<Coords> = other.basis.iter().map(|m| self.reduce(&m.element)).collect();
        let n = self.basis.len();
        let matrix: RatMatrix = (0..n).map(|r| images.iter().map(|c| c.get(&r).cloned().unwrap_or_default()).collect()).collect();
        if linalg::rank(&matrix) < n {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                let mut mapped = Coords::new();
                for (k, x) in other.product(a, b) {
                    add_into(&mut mapped, &x, &images[k]);
                }
                if self.multiply(&images[a], &images[b]) != mapped {
                    return false;
                }
            }
        }
        true
    }
}

/// Shifted `h`-vector of one twisted sector.
#[derive(Clone, Debug)]
pub struct SectorDims {
    pub sector: BoxElement,
    pub dims: BTreeMap<Rat, usize>,
}

/// `⊕_{v ∈ Box} A*(Σ/σ(v̄))[age(v)]`.
pub fn sector_decomposition(stacky: &StackyFan) -> Result<Vec<SectorDims>> {
    stacky.require_complete()?;
    let mut out = Vec::new();
    for v in stacky.box_elements()? {
        let q = stacky.link_and_quotient(&v.minimal_cone)?;
        let h = h_vector(q.fan.fan())?;
        let dims = h
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(k, &x)| (&v.age + Rat::from_integer(Int::from(k)), x))
            .collect();
        out.push(SectorDims { sector: v, dims });
    }
    Ok(out)
}

/// Degreewise sum of sector dimensions.
pub fn sector_sum(sectors: &[SectorDims]) -> BTreeMap<Rat, usize> {
    let mut total = BTreeMap::new();
    for s in sectors {
        for (q, n) in &s.dims {
            *total.entry(q.clone()).or_insert(0) += n;
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareZero {
    /// Coordinates over the degree-one basis of a nonzero `x` with `x² = 0`.
    Exists(Vec<Rat>),
    NotExists,
    Undecided,
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (p, q) = (r.numer(), r.denom());
    let (sp, sq) = (p.sqrt(), q.sqrt());
    (&sp * &sp == *p && &sq * &sq == *q).then(|| Rat::new(sp, sq))
}

/// Is there a nonzero degree-one `x` with `x · x = 0`?
pub fn square_zero_degree_one(pres: &GradedPresentation) -> SquareZero {
    let one = Rat::one();
    let deg1: Vec<usize> = (0..pres.basis.len()).filter(|&i| pres.basis[i].degree == one).collect();
    let square = |a: &[Rat]| -> Coords {
        let x: Coords = deg1.iter().zip(a).filter(|(_, k)| !k.is_zero()).map(|(&i, k)| (i, k.clone())).collect();
        pres.multiply(&x, &x)
    };
    match deg1.len() {
        0 => SquareZero::NotExists,
        1 => {
            let w = vec![one.clone()];
            if square(&w).is_empty() {
                SquareZero::Exists(w)
            } else {
                SquareZero::NotExists
            }
        }
        2 => {
            // x² = a² e00 + ab (e01 + e10) + b² e11, one binary form per target coordinate.
            let (e00, e01, e10, e11) = (
                pres.product(deg1[0], deg1[0]),
                pres.product(deg1[0], deg1[1]),
                pres.product(deg1[1], deg1[0]),
                pres.product(deg1[1], deg1[1]),
            );
            let mut targets: Vec<usize> = e00.keys().chain(e01.keys()).chain(e10.keys()).chain(e11.keys()).copied().collect();
            targets.sort_unstable();
            targets.dedup();
            let get = |m: &Coords, t: usize| m.get(&t).cloned().unwrap_or_default();
            let Some(&t) = targets.first() else {
                return SquareZero::Exists(vec![one.clone(), Rat::zero()]);
            };
            let (a, b, c) = (get(&e00, t), get(&e01, t) + get(&e10, t), get(&e11, t));
            let mut candidates = Vec::new();
            if a.is_zero() {
                candidates.push(vec![one.clone(), Rat::zero()]);
                if !(b.is_zero() && c.is_zero()) {
                    candidates.push(vec![-c.clone(), b.clone()]);
                }
            } else if let Some(s) = rational_sqrt(&(&b * &b - Rat::from_integer(4.into()) * &a * &c)) {
                let two_a = Rat::from_integer(2.into()) * &a;
                candidates.push(vec![(-&b + &s) / &two_a, one.clone()]);
                candidates.push(vec![(-&b - &s) / &two_a, one.clone()]);
            }
            candidates
                .into_iter()
                .find(|w| w.iter().any(|x| !x.is_zero()) && square(w).is_empty())
                .map_or(SquareZero::NotExists, SquareZero::Exists)
        }
        k => {
            // Bounded search over small integer vectors.
            let range: Vec<i64> = (-3..=3).collect();
            let mut idx = vec![0usize; k];
            loop {
                let w: Vec<Rat> = idx.iter().map(|&i| Rat::from_integer(range[i].into())).collect();
                if w.iter().any(|x| !x.is_zero()) && square(&w).is_empty() {
                    return SquareZero::Exists(w);
                }
                let mut p = 0;
                loop {
                    if p == k {
                        return SquareZero::Undecided;
                    }
                    idx[p] += 1;
                    if idx[p] < range.len() {
                        break;
                    }
                    idx[p] = 0;
                    p += 1;
                }
            }
        }
    }
}
