//! Gale duality for maps `β: Z^n → N` where `N` may have torsion.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::group::{cokernel, same_lattice, Cokernel, FgAbelianGroup, GroupHomomorphism, GroupMap};
use super::matrix::{reduce_mod_hermite, IntegerMatrix};
use super::smith::{kernel_basis, rank, smith_normal_form, solve_integer};
use crate::error::{Error, Result};
use crate::num::{gcd, modulo, Int};

/// `DG(β)` and `β^∨` in the canonical coordinates of `DG(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleDualData {
    pub dual_group: FgAbelianGroup,
    /// Column `i` is `β^∨(e_i^⋆)`.
    pub dual_map: IntegerMatrix,
    /// Identification of `(Z^{n+r})^⋆ / image([B Q]^⋆)` with `dual_group`.
    pub change_of_basis: Cokernel,
}

impl GaleDualData {
    /// `β^∨` as a map `Z^n → DG(β)`.
    pub fn as_homomorphism(&self) -> GroupHomomorphism {
        GroupHomomorphism::from_lift(self.dual_group.clone(), self.dual_map.clone())
            .expect("dual map rows match the dual group")
    }
}

pub fn gale_dual(beta: &GroupHomomorphism) -> GaleDualData {
    let n = beta.source_rank();
    let bq = beta.lift().hstack(&beta.target().presentation()).expect("lift rows match the presentation");
    let mut ck = cokernel(&bq.transpose());
    if ck.group.rank() == 1 {
        let lead = (0..n).map(|c| ck.projection.get(0, c)).find(|x| !x.is_zero());
        if lead.is_some_and(|x| x.is_negative()) {
            ck.projection.negate_row(0);
            ck.section.negate_col(0);
        }
    }
    let mut dual_map = ck.projection.select_cols(&(0..n).collect::<Vec<_>>());
    let d = ck.group.rank();
    for (j, q) in ck.group.torsion().iter().enumerate() {
        for c in 0..n {
            let v = modulo(dual_map.get(d + j, c), q);
            dual_map.set(d + j, c, v);
        }
    }
    GaleDualData { dual_group: ck.group.clone(), dual_map, change_of_basis: ck }
}

/// `true` iff the `b̄_i` span `N ⊗ Q`.
pub fn cokernel_is_finite(beta: &GroupHomomorphism) -> bool {
    rank(&beta.free_matrix()) == beta.target().rank()
}

// Entries of an automorphism of `⊕ Z/q_k` in torsion coordinates: `D_jk` runs over
// multiples of `q_j / gcd(q_j, q_k)` modulo `q_j`, i.e. `gcd(q_j, q_k)` choices.
fn entry_steps(torsion: &[Int]) -> Vec<Vec<(Int, Int)>> {
    torsion
        .iter()
        .map(|qj| {
            torsion
                .iter()
                .map(|qk| {
                    let g = gcd(qj, qk);
                    (qj / &g, g)
                })
                .collect()
        })
        .collect()
}

// Every admissible row `j`, in lexicographic order of the multipliers.
fn admissible_rows(steps: &[(Int, Int)]) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    let mut idx = vec![Int::zero(); steps.len()];
    loop {
        out.push(idx.iter().zip(steps).map(|(i, (s, _))| i * s).collect());
        let mut pos = 0;
        loop {
            if pos == steps.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < steps[pos].1 {
                break;
            }
            idx[pos] = Int::zero();
            pos += 1;
        }
    }
}

// `x ↦ (Σ_k D_jk x_k)_j` from `⊕ Z/q_k` onto `⊕_{j < rows} Z/q_j`.
fn rows_surject(rows: &[Vec<Int>], torsion: &[Int]) -> bool {
    let r = rows.len();
    let mut m = IntegerMatrix::zeros(r, torsion.len() + r);
    for (j, row) in rows.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            m.set(j, k, x.clone());
        }
        m.set(j, torsion.len() + j, torsion[j].clone());
    }
    cokernel(&m).group.is_trivial()
}

fn automorphisms_of_torsion(torsion: &[Int]) -> Vec<IntegerMatrix> {
    let r = torsion.len();
    let rows: Vec<Vec<Vec<Int>>> = entry_steps(torsion).iter().map(|s| admissible_rows(s)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(j: usize, rows: &[Vec<Vec<Int>>], torsion: &[Int], chosen: &mut Vec<Vec<Int>>, out: &mut Vec<IntegerMatrix>) {
        if j == rows.len() {
            let r = rows.len();
            out.push(IntegerMatrix::new(r, r, chosen.concat()).expect("square"));
            return;
        }
        for row in &rows[j] {
            chosen.push(row.clone());
            if rows_surject(chosen, torsion) {
                go(j + 1, rows, torsion, chosen, out);
            }
            chosen.pop();
        }
    }
    if r == 0 {
        return vec![IntegerMatrix::zeros(0, 0)];
    }
    go(0, &rows, torsion, &mut chosen, &mut out);
    out
}

// Hermite form of the free rows, and per torsion factor `q_j` a basis of the
// lattice spanned by those rows and `q_j Z^n`.
fn free_part(beta: &GroupHomomorphism) -> (IntegerMatrix, Vec<IntegerMatrix>) {
    let n = beta.source_rank();
    let (h, _) = beta.free_matrix().hermite_rows();
    let reducers = beta
        .target()
        .torsion()
        .iter()
        .map(|q| {
            let mut qi = IntegerMatrix::identity(n);
            for i in 0..n {
                qi.set(i, i, q.clone());
            }
            h.vstack(&qi).expect("same cols").row_lattice_basis()
        })
        .collect();
    (h, reducers)
}

fn torsion_rows(beta: &GroupHomomorphism) -> Vec<Vec<Int>> {
    let g = beta.target();
    (g.rank()..g.ambient_dim()).map(|r| beta.lift().row(r)).collect()
}

fn combine(coeffs: &[Int], rows: &[Vec<Int>], n: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); n];
    for (c, t) in coeffs.iter().zip(rows) {
        for (x, y) in out.iter_mut().zip(t) {
            *x += c * y;
        }
    }
    out
}

/// Normal form of `β` under automorphisms of its target. Two maps into
/// the same group are equivalent iff their normal forms agree.
///
/// The free rows go to Hermite form; each torsion row is reduced modulo
/// the free rows and `q_j`, minimised over the automorphisms of the torsion part.
/// Enumerates `Aut(T)`, so only practical for small torsion; see [`equivalent_maps`].
pub fn canonical_map_form(beta: &GroupHomomorphism) -> IntegerMatrix {
    let n = beta.source_rank();
    let (h, reducers) = free_part(beta);
    let rows = torsion_rows(beta);
    let mut best: Option<Vec<Vec<Int>>> = None;
    for aut in automorphisms_of_torsion(beta.target().torsion()) {
        let image: Vec<Vec<Int>> =
            reducers.iter().enumerate().map(|(j, red)| reduce_mod_hermite(&combine(&aut.row(j), &rows, n), red)).collect();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    let mut all = h.row_vecs();
    all.extend(best.unwrap_or_default());
    IntegerMatrix::from_rows(all, n).expect("uniform rows")
}

/// `true` iff some automorphism of the common target carries one map to the other.
///
/// Searches row by row for an automorphism of the torsion part: row `j` must send
/// the torsion rows of `a` to row `j` of `b` modulo the free rows and `q_j`, and
/// the rows chosen so far must map onto their factors.
pub fn equivalent_maps(a: &GroupHomomorphism, b: &GroupHomomorphism) -> bool {
    if a.target() != b.target() || a.source_rank() != b.source_rank() {
        return false;
    }
    let n = a.source_rank();
    let (ha, reducers) = free_part(a);
    if ha != free_part(b).0 {
        return false;
    }
    let torsion = a.target().torsion();
    let (rows_a, rows_b) = (torsion_rows(a), torsion_rows(b));
    let candidates: Vec<Vec<Vec<Int>>> = entry_steps(torsion)
        .iter()
        .enumerate()
        .map(|(j, steps)| {
            let goal = reduce_mod_hermite(&rows_b[j], &reducers[j]);
            admissible_rows(steps)
                .into_iter()
                .filter(|d| reduce_mod_hermite(&combine(d, &rows_a, n), &reducers[j]) == goal)
                .collect()
        })
        .collect();
    fn search(j: usize, candidates: &[Vec<Vec<Int>>], torsion: &[Int], chosen: &mut Vec<Vec<Int>>) -> bool {
        if j == candidates.len() {
            return true;
        }
        for row in &candidates[j] {
            chosen.push(row.clone());
            if rows_surject(chosen, torsion) && search(j + 1, candidates, torsion, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    search(0, &candidates, torsion, &mut Vec::new())
}

/// `β^∨∨ ≅ β` (up to an automorphism of `N`); requires a finite cokernel.
pub fn double_dual_check(beta: &GroupHomomorphism) -> Result<bool> {
    if !cokernel_is_finite(beta) {
        return Err(Error::InfiniteCokernel);
    }
    let dual = gale_dual(beta).as_homomorphism();
    let double = gale_dual(&dual).as_homomorphism();
    Ok(equivalent_maps(&double, beta))
}

/// `ker β^∨` equals the lattice `{(θ(b_1), ..., θ(b_n)) : θ ∈ N^⋆}`.
pub fn dual_kernel_check(beta: &GroupHomomorphism) -> Result<bool> {
    if !cokernel_is_finite(beta) {
        return Err(Error::InfiniteCokernel);
    }
    let dual = gale_dual(beta);
    let n = beta.source_rank();
    let big = dual.dual_map.hstack(&dual.dual_group.presentation())?;
    let k = kernel_basis(&big).select_rows(&(0..n).collect::<Vec<_>>());
    Ok(same_lattice(&k, &beta.free_matrix().transpose()))
}

/// A diagram of short exact sequences
/// `0 → Z^{n1} → Z^{n2} → Z^{n3} → 0` over `0 → N1 → N2 → N3 → 0`.
#[derive(Clone, Debug)]
pub struct ExactDiagram {
    pub beta: [GroupHomomorphism; 3],
    /// `n2 × n1`.
    pub iota: IntegerMatrix,
    /// `n3 × n2`.
    pub pi: IntegerMatrix,
    pub f: GroupMap,
    pub g: GroupMap,
}

fn bad(msg: &str) -> Error {
    Error::BadDiagram(msg.into())
}

fn free_map(m: &IntegerMatrix) -> Result<GroupMap> {
    GroupMap::new(FgAbelianGroup::free(m.cols()), FgAbelianGroup::free(m.rows()), m.clone())
}

fn row_is_exact(f: &GroupMap, g: &GroupMap) -> bool {
    f.is_injective()
        && g.is_surjective()
        && g.compose(f).is_ok_and(|c| c.is_zero())
        && same_lattice(&g.kernel_lattice(), &f.image_lattice())
}

fn commutes_mod(target: &FgAbelianGroup, a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    a.rows() == b.rows()
        && a.cols() == b.cols()
        && (0..a.cols()).all(|c| {
            let diff: Vec<Int> = a.col(c).iter().zip(b.col(c)).map(|(x, y)| x - y).collect();
            target.is_relation(&diff)
        })
}

fn solve_cols(q: &IntegerMatrix, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
    let cols = (0..rhs.cols())
        .map(|c| solve_integer(q, &rhs.col(c)).ok_or_else(|| bad("square does not commute modulo torsion")))
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_cols(&cols, q.cols())
}

// The chain map [[top, 0], [S, R]] between the two mapping cones.
fn cone_map(top: &IntegerMatrix, f: &GroupMap, b_src: &GroupHomomorphism, b_tgt: &GroupHomomorphism) -> Result<IntegerMatrix> {
    let q_tgt = b_tgt.target().presentation();
    let lhs = f.lift().mul(b_src.lift())?;
    let rhs = b_tgt.lift().mul(top)?;
    let diff = IntegerMatrix::new(
        lhs.rows(),
        lhs.cols(),
        lhs.entries().iter().zip(rhs.entries()).map(|(x, y)| x - y).collect(),
    )?;
    let s = solve_cols(&q_tgt, &diff)?;
    let r = solve_cols(&q_tgt, &f.lift().mul(&b_src.target().presentation())?)?;
    let upper = top.hstack(&IntegerMatrix::zeros(top.rows(), r.cols()))?;
    let lower = s.hstack(&r)?;
    upper.vstack(&lower)
}

fn induced(to: &Cokernel, chain: &IntegerMatrix, from: &Cokernel) -> Result<GroupMap> {
    let lift = to.projection.mul(&chain.transpose())?.mul(&from.section)?;
    GroupMap::new(from.group.clone(), to.group.clone(), lift)
}

fn validate_diagram(dg: &ExactDiagram) -> Result<()> {
    let [b1, b2, b3] = &dg.beta;
    let (n1, n2, n3) = (b1.source_rank(), b2.source_rank(), b3.source_rank());
    if (dg.iota.rows(), dg.iota.cols()) != (n2, n1) || (dg.pi.rows(), dg.pi.cols()) != (n3, n2) {
        return Err(bad("top row matrices have the wrong shape"));
    }
    if dg.f.source() != b1.target() || dg.f.target() != b2.target() || dg.g.source() != b2.target() || dg.g.target() != b3.target() {
        return Err(bad("bottom row maps do not match the column targets"));
    }
    if !row_is_exact(&free_map(&dg.iota)?, &free_map(&dg.pi)?) {
        return Err(bad("top row is not exact"));
    }
    if !row_is_exact(&dg.f, &dg.g) {
        return Err(bad("bottom row is not exact"));
    }
    if !dg.beta.iter().all(cokernel_is_finite) {
        return Err(bad("a column has infinite cokernel"));
    }
    if !commutes_mod(b2.target(), &dg.f.lift().mul(b1.lift())?, &b2.lift().mul(&dg.iota)?) {
        return Err(bad("left square does not commute"));
    }
    if !commutes_mod(b3.target(), &dg.g.lift().mul(b2.lift())?, &b3.lift().mul(&dg.pi)?) {
        return Err(bad("right square does not commute"));
    }
    Ok(())
}

/// Builds the dual diagram `0 → DG(β3) → DG(β2) → DG(β1) → 0` and checks
/// that its row is exact and that both squares with the `β_i^∨` commute.
pub fn dual_sequence_check(dg: &ExactDiagram) -> Result<bool> {
    validate_diagram(dg)?;
    let [b1, b2, b3] = &dg.beta;
    let duals = [gale_dual(b1), gale_dual(b2), gale_dual(b3)];
    let phi = cone_map(&dg.iota, &dg.f, b1, b2)?;
    let psi = cone_map(&dg.pi, &dg.g, b2, b3)?;
    let h21 = induced(&duals[0].change_of_basis, &phi, &duals[1].change_of_basis)
        .map_err(|e| Error::BadDiagram(format!("induced map DG2 -> DG1: {}", e)))?;
    let h32 = induced(&duals[1].change_of_basis, &psi, &duals[2].change_of_basis)
        .map_err(|e| Error::BadDiagram(format!("induced map DG3 -> DG2: {}", e)))?;
    let exact = row_is_exact(&h32, &h21);
    let left = commutes_mod(
        &duals[0].dual_group,
        &h21.lift().mul(&duals[1].dual_map)?,
        &duals[0].dual_map.mul(&dg.iota.transpose())?,
    );
    let right = commutes_mod(
        &duals[1].dual_group,
        &duals[1].dual_map.mul(&dg.pi.transpose())?,
        &h32.lift().mul(&duals[2].dual_map)?,
    );
    Ok(exact && left && right)
}

/// Rank of the integer kernel plus the rank of the row space equals the column count.
pub fn rank_nullity_holds(m: &IntegerMatrix) -> bool {
    kernel_basis(m).cols() + smith_normal_form(m).rank == m.cols()
}

/// Order of `coker(M)` when finite.
pub fn cokernel_order(m: &IntegerMatrix) -> Option<Int> {
    cokernel(m).group.order()
}
