//! Crepant subdivisions and the comparison of the two endpoint rings of
//! the degeneration from the orbifold Chow ring to the resolution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, StackyFan};
use crate::linalg;
use crate::lp::{LinearSystem, Relation};
use crate::num::{rat_from_int, Int, Rat};
use crate::ring::{chow_graded_dims, orbifold_chow};

/// A fan and a refinement of it over the same `N`.
#[derive(Clone, Debug)]
pub struct SubdivisionPair {
    pub coarse: StackyFan,
    pub fine: StackyFan,
    /// Fine index of each coarse ray.
    pub ray_embedding: Vec<usize>,
}

impl SubdivisionPair {
    pub fn new(coarse: StackyFan, fine: StackyFan) -> Result<Self> {
        if coarse.group() != fine.group() {
            return Err(Error::MismatchedGroup(format!("coarse over {}, fine over {}", coarse.group(), fine.group())));
        }
        let ray_embedding = coarse
            .rays()
            .iter()
            .enumerate()
            .map(|(i, b)| {
                fine.rays()
                    .iter()
                    .position(|c| c == b)
                    .ok_or_else(|| Error::NotASubdivision(format!("coarse ray {} is not a fine ray", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubdivisionPair { coarse, fine, ray_embedding })
    }

    /// Fine rays that are not coarse rays.
    pub fn new_rays(&self) -> Vec<usize> {
        (0..self.fine.ray_count()).filter(|j| !self.ray_embedding.contains(j)).collect()
    }
}

// Smallest coarse cone containing the given fine rays.
fn carrier(fine: &StackyFan, coarse: &StackyFan, rays: &[usize]) -> Option<Cone> {
    let mut u = Vec::new();
    for &j in rays {
        let (c, _) = coarse.minimal_cone_rat(fine.bar_rat(j)).ok()?;
        u.extend(c);
    }
    u.sort_unstable();
    u.dedup();
    coarse.fan().is_cone(&u).then_some(u)
}

/// Does every fine cone sit in a coarse cone, with the fine cones inside
/// each coarse maximal cone covering it?
pub fn is_subdivision(fine: &StackyFan, coarse: &StackyFan) -> bool {
    if fine.group() != coarse.group() {
        return false;
    }
    let mut inside: BTreeMap<&Cone, Vec<&Cone>> = coarse.fan().max_cones().iter().map(|s| (s, Vec::new())).collect();
    for tau in fine.fan().max_cones() {
        let Some(sigma) = carrier(fine, coarse, tau) else { return false };
        match inside.get_mut(&sigma) {
            Some(list) if sigma.len() == tau.len() => list.push(tau),
            _ => return false,
        }
    }
    for (sigma, cells) in &inside {
        if cells.is_empty() {
            return false;
        }
        // Interior walls must be shared by two cells.
        let mut walls: BTreeMap<Cone, usize> = BTreeMap::new();
        for tau in cells {
            for skip in 0..tau.len() {
                let facet: Cone = tau.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &i)| i).collect();
                *walls.entry(facet).or_insert(0) += 1;
            }
        }
        for (facet, count) in walls {
            if count == 1 && carrier(fine, coarse, &facet).as_ref() == Some(*sigma) {
                return false;
            }
        }
    }
    true
}

/// `N` free and every maximal cone part of a basis of `N`.
pub fn is_smooth(stacky: &StackyFan) -> bool {
    stacky.group().torsion().is_empty()
        && stacky.fan().max_cones().iter().all(|sigma| {
            let q = stacky.local_group(sigma);
            q.torsion().is_empty() && q.rank() + sigma.len() == stacky.dim()
        })
}

// A functional with value −1 on every generator of the cone.
fn minus_one_functional(stacky: &StackyFan, sigma: &[usize]) -> Option<Vec<Rat>> {
    let rows: linalg::RatMatrix = sigma.iter().map(|&i| stacky.bar_rat(i).to_vec()).collect();
    linalg::solve(&rows, &vec![-Rat::one(); sigma.len()])
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `θ_σ(b_j) = −1` for every fine generator over every coarse maximal cone `σ`.
pub fn is_crepant(pair: &SubdivisionPair) -> bool {
    for sigma in pair.coarse.fan().max_cones() {
        let Some(theta) = minus_one_functional(&pair.coarse, sigma) else { return false };
        for j in 0..pair.fine.ray_count() {
            let Ok((c, _)) = pair.coarse.minimal_cone_rat(pair.fine.bar_rat(j)) else { return false };
            if c.iter().all(|i| sigma.contains(i)) && dot(&theta, pair.fine.bar_rat(j)) != -Rat::one() {
                return false;
            }
        }
    }
    true
}

/// Crepancy read off from coarse coordinates: each fine generator has coordinates summing to 1.
pub fn is_crepant_by_coordinates(pair: &SubdivisionPair) -> bool {
    (0..pair.fine.ray_count()).all(|j| {
        pair.coarse
            .minimal_cone_rat(pair.fine.bar_rat(j))
            .is_ok_and(|(_, coords)| coords.values().sum::<Rat>() == Rat::one())
    })
}

/// An interior wall `τ` between fine cells `τ ∪ {a}` and `τ ∪ {b}`, with the
/// relation `λ_a b̄_a + λ_b b̄_b = Σ_{i∈τ} μ_i b̄_i`, `λ > 0`.
#[derive(Clone, Debug)]
pub struct Wall {
    pub wall: Cone,
    pub sides: [usize; 2],
    pub lambda: [Rat; 2],
    pub mu: BTreeMap<usize, Rat>,
}

/// Walls interior to coarse maximal cones.
pub fn interior_walls(pair: &SubdivisionPair) -> Vec<Wall> {
    let (fine, coarse) = (&pair.fine, &pair.coarse);
    let mut sides: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
    for tau in fine.fan().max_cones() {
        for &skip in tau {
            let facet: Cone = tau.iter().copied().filter(|&i| i != skip).collect();
            sides.entry(facet).or_default().push(skip);
        }
    }
    let mut out = Vec::new();
    for (facet, opp) in sides {
        if opp.len() != 2 {
            continue;
        }
        let (a, b) = (opp[0], opp[1]);
        let mut cell_a = facet.clone();
        cell_a.push(a);
        cell_a.sort_unstable();
        let mut cell_b = facet.clone();
        cell_b.push(b);
        cell_b.sort_unstable();
        let (ca, cb) = (carrier(fine, coarse, &cell_a), carrier(fine, coarse, &cell_b));
        if ca.is_none() || ca != cb {
            continue;
        }
        let cols: Vec<usize> = [a, b].into_iter().chain(facet.iter().copied()).collect();
        let m = fine.cone_matrix(&cols);
        let ns = linalg::null_space(&m, cols.len());
        let Some(mut x) = ns.into_iter().next() else { continue };
        if x[0].is_negative() {
            x.iter_mut().for_each(|v| *v = -v.clone());
        }
        let mu = facet.iter().zip(&x[2..]).map(|(&i, v)| (i, -v.clone())).collect();
        out.push(Wall { wall: facet, sides: [a, b], lambda: [x[0].clone(), x[1].clone()], mu });
    }
    out
}

fn wall_gap(w: &Wall, h: &[Rat]) -> Rat {
    let lhs: Rat = w.mu.iter().map(|(&i, m)| m * &h[i]).sum();
    lhs - &w.lambda[0] * &h[w.sides[0]] - &w.lambda[1] * &h[w.sides[1]]
}

/// Integer `h(b_j)`: zero on coarse rays, positive on new rays, strictly
/// concave across every interior wall. `None` if the subdivision is not regular.
pub fn support_function(pair: &SubdivisionPair) -> Option<Vec<Int>> {
    let m = pair.fine.ray_count();
    let mut sys = LinearSystem::new(vec![true; m]);
    let unit = |j: usize| {
        let mut row = vec![Rat::zero(); m];
        row[j] = Rat::one();
        row
    };
    for &j in &pair.ray_embedding {
        sys.add(unit(j), Relation::Eq, Rat::zero());
    }
    for j in pair.new_rays() {
        sys.add(unit(j), Relation::Ge, Rat::one());
    }
    for w in interior_walls(pair) {
        let mut row = vec![Rat::zero(); m];
        for (&i, mu) in &w.mu {
            row[i] += mu;
        }
        row[w.sides[0]] -= &w.lambda[0];
        row[w.sides[1]] -= &w.lambda[1];
        sys.add(row, Relation::Ge, Rat::one());
    }
    let x = sys.feasible_point()?;
    let den = x.iter().fold(Int::one(), |acc, v| acc.lcm(v.denom()));
    Some(x.iter().map(|v| (v * Rat::from_integer(den.clone())).to_integer()).collect())
}

/// Re-checks a support function exactly.
pub fn verify_support_function(pair: &SubdivisionPair, h: &[Int]) -> bool {
    if h.len() != pair.fine.ray_count() {
        return false;
    }
    let new = pair.new_rays();
    let hr: Vec<Rat> = h.iter().map(rat_from_int).collect();
    pair.ray_embedding.iter().all(|&j| h[j].is_zero())
        && new.iter().all(|&j| h[j].is_positive())
        && interior_walls(pair).iter().all(|w| wall_gap(w, &hr).is_positive())
}

/// Generator lists of the ideals in the degeneration, as strings over
/// `y1..ym` (fine rays) and the parameters `t1`, `t2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealGenerators {
    pub linear: Vec<String>,
    pub product: Vec<String>,
    pub linear_weighted: Vec<String>,
    pub product_weighted: Vec<String>,
    pub stanley_reisner: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub orbifold_dims: BTreeMap<Rat, usize>,
    pub resolution_dims: BTreeMap<Rat, usize>,
    pub equal: bool,
    pub ideal_generators: IdealGenerators,
    pub support: Option<Vec<Int>>,
    /// Failed preconditions, by name.
    pub warnings: Vec<String>,
}

fn power(var: &str, e: &Int) -> String {
    if e.is_one() {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

fn monomial(exps: &BTreeMap<usize, Int>) -> String {
    if exps.is_empty() {
        return "1".into();
    }
    exps.iter().map(|(&i, e)| power(&format!("y{}", i + 1), e)).collect::<Vec<_>>().join("*")
}

fn linear_form(terms: &[(Rat, String)]) -> String {
    let mut s = String::new();
    for (k, var) in terms.iter().filter(|(k, _)| !k.is_zero()) {
        let mag = k.abs();
        let body = if mag.is_one() { var.clone() } else { format!("{mag}*{var}") };
        if s.is_empty() {
            s = if k.is_negative() { format!("-{body}") } else { body };
        } else {
            s += if k.is_negative() { " - " } else { " + " };
            s += &body;
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

// Exponents of `b_i + b_k` over a fine cone; the fine fan is smooth so they are integers.
fn fine_exponents(fine: &StackyFan, i: usize, k: usize) -> Option<BTreeMap<usize, Int>> {
    let g = fine.group();
    let c = g.add(fine.ray(i), fine.ray(k)).ok()?;
    let (_, coords) = fine.minimal_cone(&c).ok()?;
    coords.into_iter().map(|(j, x)| x.is_integer().then(|| (j, x.to_integer()))).collect()
}

fn minimal_non_faces(stacky: &StackyFan) -> Vec<Cone> {
    let n = stacky.ray_count();
    let mut out: Vec<Cone> = Vec::new();
    let mut level: Vec<Cone> = (0..n).map(|i| vec![i]).collect();
    for _ in 1..=stacky.dim() {
        let mut next = Vec::new();
        for s in &level {
            let start = s.last().map_or(0, |&l| l + 1);
            for j in start..n {
                let mut t = s.clone();
                t.push(j);
                let all_faces = (0..t.len()).all(|skip| {
                    let f: Cone = t.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &x)| x).collect();
                    stacky.fan().is_cone(&f)
                });
                if !all_faces {
                    continue;
                }
                if stacky.fan().is_cone(&t) {
                    next.push(t);
                } else {
                    out.push(t);
                }
            }
        }
        level = next;
    }
    out
}

fn ideal_generators(pair: &SubdivisionPair, h: Option<&[Int]>) -> IdealGenerators {
    let (fine, coarse) = (&pair.fine, &pair.coarse);
    let m = fine.ray_count();
    let var = |i: usize| format!("y{}", i + 1);
    let mut gens = IdealGenerators::default();
    for j in 0..fine.dim() {
        let plain: Vec<(Rat, String)> = (0..m).map(|i| (rat_from_int(&fine.ray(i).free[j]), var(i))).collect();
        gens.linear.push(linear_form(&plain));
        if let Some(h) = h {
            let weighted: Vec<(Rat, String)> = plain
                .iter()
                .enumerate()
                .map(|(i, (k, v))| (k.clone(), if h[i].is_zero() { v.clone() } else { format!("{v}*{}", power("t1", &h[i])) }))
                .collect();
            gens.linear_weighted.push(linear_form(&weighted));
        }
    }
    for i in 0..m {
        for k in i + 1..m {
            let lhs = format!("{}*{}", var(i), var(k));
            if carrier(fine, coarse, &[i, k]).is_none() {
                gens.product.push(lhs.clone());
                gens.product_weighted.push(lhs);
                continue;
            }
            let Some(exps) = fine_exponents(fine, i, k) else { continue };
            let trivial = BTreeMap::from([(i, Int::one()), (k, Int::one())]);
            if exps == trivial {
                continue;
            }
            let rhs = monomial(&exps);
            gens.product.push(format!("{lhs} - {rhs}"));
            if let Some(h) = h {
                let gap: Int = exps.iter().map(|(&j, e)| e * &h[j]).sum::<Int>() - &h[i] - &h[k];
                let rhs_t = if gap.is_zero() { rhs } else { format!("{rhs}*{}", power("t2", &gap)) };
                gens.product_weighted.push(format!("{lhs} - {rhs_t}"));
            }
        }
    }
    if h.is_none() {
        gens.product_weighted.clear();
    }
    gens.stanley_reisner = minimal_non_faces(fine)
        .iter()
        .map(|s| s.iter().map(|&i| var(i)).collect::<Vec<_>>().join("*"))
        .collect();
    gens
}

/// Graded dimensions of the orbifold Chow ring of the coarse fan and of
/// the Chow ring of the fine fan, with the ideal generators of the family.
pub fn hilbert_compare(pair: &SubdivisionPair) -> Result<FamilyReport> {
    let mut warnings = Vec::new();
    if !is_subdivision(&pair.fine, &pair.coarse) {
        warnings.push("NotASubdivision".to_string());
    }
    if !is_smooth(&pair.fine) {
        warnings.push("NotSmooth".to_string());
    }
    if !is_crepant(pair) {
        warnings.push("NotCrepant".to_string());
    }
    let support = support_function(pair);
    if support.is_none() {
        warnings.push("NotRegular".to_string());
    }
    let orbifold_dims = orbifold_chow(&pair.coarse)?.dims;
    let resolution_dims: BTreeMap<Rat, usize> = chow_graded_dims(&pair.fine)?
        .into_iter()
        .enumerate()
        .filter(|(_, n)| *n > 0)
        .map(|(k, n)| (Rat::from_integer(Int::from(k)), n))
        .collect();
    let ideal_generators = ideal_generators(pair, support.as_deref());
    Ok(FamilyReport {
        equal: orbifold_dims == resolution_dims,
        orbifold_dims,
        resolution_dims,
        ideal_generators,
        support,
        warnings,
    })
}

#[cfg(test)]
pub(crate) mod pairs {
    use super::*;
    use crate::fan::fixtures::*;

    pub fn p121_f2() -> SubdivisionPair {
        SubdivisionPair::new(p121(), f2()).unwrap()
    }

    pub fn p112() -> SubdivisionPair {
        let coarse = stacky(2, &[], &[(&[1, 0], &[]), (&[0, 1], &[]), (&[-1, -2], &[])], &[&[1, 2], &[2, 3], &[1, 3]]);
        let fine = stacky(
            2,
            &[],
            &[(&[1, 0], &[]), (&[0, 1], &[]), (&[-1, -2], &[]), (&[0, -1], &[])],
            &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]],
        );
        SubdivisionPair::new(coarse, fine).unwrap()
    }

    pub fn p1113() -> SubdivisionPair {
        let rays: [(&[i64], &[i64]); 4] = [(&[1, 0, 0], &[]), (&[0, 1, 0], &[]), (&[-1, -1, -3], &[]), (&[0, 0, 1], &[])];
        let coarse = stacky(3, &[], &rays, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let mut fine_rays = rays.to_vec();
        fine_rays.push((&[0, 0, -1], &[]));
        let fine = stacky(3, &[], &fine_rays, &[&[1, 2, 5], &[1, 3, 5], &[2, 3, 5], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        SubdivisionPair::new(coarse, fine).unwrap()
    }

    pub fn cone_pair() -> SubdivisionPair {
        let coarse = stacky(2, &[], &[(&[1, 0], &[]), (&[1, 2], &[])], &[&[1, 2]]);
        let fine = stacky(2, &[], &[(&[1, 0], &[]), (&[1, 2], &[]), (&[1, 1], &[])], &[&[1, 3], &[2, 3]]);
        SubdivisionPair::new(coarse, fine).unwrap()
    }

    /// A twisted triangulation of the positive octant; not regular.
    pub fn twisted() -> SubdivisionPair {
        let rays: [(&[i64], &[i64]); 6] = [
            (&[1, 0, 0], &[]),
            (&[0, 1, 0], &[]),
            (&[0, 0, 1], &[]),
            (&[2, 1, 1], &[]),
            (&[1, 2, 1], &[]),
            (&[1, 1, 2], &[]),
        ];
        let coarse = stacky(3, &[], &rays[..3], &[&[1, 2, 3]]);
        let fine = stacky(
            3,
            &[],
            &rays,
            &[&[4, 5, 6], &[1, 2, 4], &[2, 4, 5], &[2, 3, 5], &[3, 5, 6], &[1, 3, 6], &[1, 4, 6]],
        );
        SubdivisionPair::new(coarse, fine).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::pairs::*;
    use super::*;
    use crate::fan::fixtures::*;
    use crate::num::rat;

    fn dims(v: &[(i64, i64, usize)]) -> BTreeMap<Rat, usize> {
        v.iter().map(|&(p, q, n)| (rat(p, q), n)).collect()
    }

    #[test]
    fn p121_f2_pair() {
        let pair = p121_f2();
        assert_eq!(pair.new_rays(), [3]);
        assert_eq!(interior_walls(&pair).len(), 1);
        assert!(is_subdivision(&pair.fine, &pair.coarse));
        assert!(is_smooth(&pair.fine) && !is_smooth(&pair.coarse));
        assert!(is_crepant(&pair) && is_crepant_by_coordinates(&pair));
        let h = support_function(&pair).unwrap();
        assert!(h[..3].iter().all(Zero::is_zero) && h[3].is_positive());
        assert!(verify_support_function(&pair, &h));
        let r = hilbert_compare(&pair).unwrap();
        assert!(r.equal && r.warnings.is_empty());
        assert_eq!(r.orbifold_dims, dims(&[(0, 1, 1), (1, 1, 2), (2, 1, 1)]));
        assert_eq!(r.ideal_generators.product, ["y1*y3 - y4^2", "y2*y4"]);
        assert_eq!(r.ideal_generators.stanley_reisner, ["y1*y3", "y2*y4"]);
        assert_eq!(r.ideal_generators.linear, ["y1 - y3", "-y2 + 2*y3 + y4"]);
    }

    #[test]
    fn trivial_and_mismatched() {
        let same = SubdivisionPair::new(f2(), f2()).unwrap();
        assert!(is_subdivision(&same.fine, &same.coarse) && is_crepant(&same));
        assert_eq!(support_function(&same), Some(vec![Int::zero(); 4]));
        assert!(hilbert_compare(&same).unwrap().equal);
        // different supports
        let half = stacky(2, &[], &[(&[1, 0], &[]), (&[0, 1], &[])], &[&[1, 2]]);
        let quarter = stacky(2, &[], &[(&[1, 0], &[]), (&[0, 1], &[]), (&[-1, 0], &[])], &[&[1, 2], &[2, 3]]);
        assert!(!is_subdivision(&quarter, &half));
        assert!(!is_subdivision(&half, &quarter));
        assert!(!is_smooth(&m11()));
        assert!(matches!(SubdivisionPair::new(f2(), p121()), Err(Error::NotASubdivision(_))));
    }

    #[test]
    fn derived_pairs() {
        for (pair, expect) in [
            (p112(), dims(&[(0, 1, 1), (1, 1, 2), (2, 1, 1)])),
            (p1113(), dims(&[(0, 1, 1), (1, 1, 2), (2, 1, 2), (3, 1, 1)])),
        ] {
            assert!(is_subdivision(&pair.fine, &pair.coarse));
            assert!(is_smooth(&pair.fine) && is_crepant(&pair) && is_crepant_by_coordinates(&pair));
            let r = hilbert_compare(&pair).unwrap();
            assert!(r.equal, "{:?}", r);
            assert_eq!(r.orbifold_dims, expect);
            assert!(verify_support_function(&pair, r.support.as_ref().unwrap()));
        }
    }

    #[test]
    fn incomplete_cone_pair() {
        let pair = cone_pair();
        assert!(is_subdivision(&pair.fine, &pair.coarse));
        assert!(is_crepant(&pair) && is_smooth(&pair.fine));
        let h = support_function(&pair).unwrap();
        assert!(verify_support_function(&pair, &h));
    }

    #[test]
    fn twisted_triangulation_is_not_regular() {
        let pair = twisted();
        assert!(is_subdivision(&pair.fine, &pair.coarse));
        assert_eq!(interior_walls(&pair).len(), 9);
        assert_eq!(support_function(&pair), None);
        assert!(!verify_support_function(&pair, &[0, 0, 0, 1, 1, 1].map(Int::from)));
    }

    #[test]
    fn non_crepant_pair() {
        // inserting (1,1) into the cone over (1,0),(0,1) is the ordinary blow-up
        let coarse = stacky(2, &[], &[(&[1, 0], &[]), (&[0, 1], &[])], &[&[1, 2]]);
        let fine = stacky(2, &[], &[(&[1, 0], &[]), (&[0, 1], &[]), (&[1, 1], &[])], &[&[1, 3], &[2, 3]]);
        let pair = SubdivisionPair::new(coarse, fine).unwrap();
        assert!(is_subdivision(&pair.fine, &pair.coarse));
        assert!(!is_crepant(&pair) && !is_crepant_by_coordinates(&pair));
    }
}
