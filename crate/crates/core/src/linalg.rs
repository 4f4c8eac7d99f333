//! Dense linear algebra over Q.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::num::{rat_from_int, Int, Rat};

pub type RatMatrix = Vec<Vec<Rat>>;

pub fn to_rat_rows(rows: &[Vec<Int>]) -> RatMatrix {
    rows.iter().map(|r| r.iter().map(rat_from_int).collect()).collect()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c].clone();
                for j in 0..cols {
                    let delta = &k * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Some solution of `a x = b`, if consistent. Free variables are set to zero.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut aug: RatMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &RatMatrix, x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

pub fn transpose(a: &RatMatrix, cols: usize) -> RatMatrix {
    (0..cols).map(|c| a.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Basis of the null space `{x : a x = 0}`.
pub fn null_space(a: &RatMatrix, cols: usize) -> RatMatrix {
    let mut w = a.clone();
    let pivots = rref(&mut w);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -w[i][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat};

    #[test]
    fn solves_and_inverts() {
        let a = to_rat_rows(&[vec![int(1), int(-1)], vec![int(0), int(2)]]);
        let x = solve(&a, &[rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, [rat(3, 2), rat(1, 2)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &[rat(1, 1), rat(1, 1)]), x);
        let singular = to_rat_rows(&[vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(inverse(&singular).is_none());
        assert!(solve(&singular, &[rat(1, 1), rat(0, 1)]).is_none());
        assert_eq!(rank(&singular), 1);
        let ns = null_space(&singular, 2);
        assert_eq!(ns, [vec![rat(-2, 1), rat(1, 1)]]);
    }
}
