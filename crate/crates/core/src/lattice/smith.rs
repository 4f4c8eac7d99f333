//! Smith normal form with full transform bookkeeping.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::num::Int;

/// `u * m * v = s`, with inverses of both transforms kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Work {
    s: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Work {
    // row[i] += k * row[t]
    fn row_add(&mut self, i: usize, t: usize, k: &Int) {
        self.s.add_row_multiple(i, t, k);
        self.u.add_row_multiple(i, t, k);
        let neg = -k;
        self.u_inv.add_col_multiple(t, i, &neg);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn row_negate(&mut self, a: usize) {
        self.s.negate_row(a);
        self.u.negate_row(a);
        self.u_inv.negate_col(a);
    }

    // col[j] += k * col[t]
    fn col_add(&mut self, j: usize, t: usize, k: &Int) {
        self.s.add_col_multiple(j, t, k);
        self.v.add_col_multiple(j, t, k);
        let neg = -k;
        self.v_inv.add_row_multiple(t, j, &neg);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // Row-major scan for the smallest nonzero |entry| in the trailing block.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.s.rows() {
            for c in t..self.s.cols() {
                let x = self.s.get(r, c);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if self.s.get(br, bc).abs() <= x.abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn place_pivot(&mut self, t: usize) -> bool {
        match self.pivot(t) {
            Some((r, c)) => {
                self.row_swap(t, r);
                self.col_swap(t, c);
                true
            }
            None => false,
        }
    }

    // Clears row t and column t; returns false if a remainder was left behind.
    fn clear(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.s.rows() {
            if self.s.get(i, t).is_zero() {
                continue;
            }
            let q = -(self.s.get(i, t) / self.s.get(t, t));
            self.row_add(i, t, &q);
            clean &= self.s.get(i, t).is_zero();
        }
        for j in t + 1..self.s.cols() {
            if self.s.get(t, j).is_zero() {
                continue;
            }
            let q = -(self.s.get(t, j) / self.s.get(t, t));
            self.col_add(j, t, &q);
            clean &= self.s.get(t, j).is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = self.s.get(t, t);
        for r in t + 1..self.s.rows() {
            for c in t + 1..self.s.cols() {
                if !self.s.get(r, c).is_multiple_of(p) {
                    return Some(r);
                }
            }
        }
        None
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut w = Work {
        s: m.clone(),
        u: IntegerMatrix::identity(m.rows()),
        u_inv: IntegerMatrix::identity(m.rows()),
        v: IntegerMatrix::identity(m.cols()),
        v_inv: IntegerMatrix::identity(m.cols()),
    };
    let limit = m.rows().min(m.cols());
    let mut rank = 0;
    for t in 0..limit {
        if !w.place_pivot(t) {
            break;
        }
        loop {
            if !w.clear(t) {
                w.place_pivot(t);
                continue;
            }
            match w.non_divisible_row(t) {
                Some(r) => w.row_add(t, r, &Int::one()),
                None => break,
            }
        }
        if w.s.get(t, t).is_negative() {
            w.row_negate(t);
        }
        rank = t + 1;
    }
    SmithForm { u: w.u, s: w.s, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv, rank }
}

/// Basis of the integer kernel: the columns of `V` past the rank.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.v.select_cols(&idx)
}

/// Some integer `x` with `m * x = rhs`, if one exists.
pub fn solve_integer(m: &IntegerMatrix, rhs: &[Int]) -> Option<Vec<Int>> {
    if rhs.len() != m.rows() {
        return None;
    }
    let snf = smith_normal_form(m);
    let c = snf.u.apply(rhs).ok()?;
    let mut y = alloc::vec![Int::zero(); m.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = ci.div_rem(snf.s.get(i, i));
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    snf.v.apply(&y).ok()
}

/// Rank over Q.
pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_contract(m: &IntegerMatrix) {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).unwrap().mul(&f.v).unwrap(), f.s);
        assert_eq!(f.u.mul(&f.u_inv).unwrap(), IntegerMatrix::identity(m.rows()));
        assert_eq!(f.v.mul(&f.v_inv).unwrap(), IntegerMatrix::identity(m.cols()));
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if r != c {
                    assert!(f.s.get(r, c).is_zero());
                }
            }
        }
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(d.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn example_kernel() {
        let m = IntegerMatrix::from_i64(&[&[2, -3, 0], &[1, 0, 2]]);
        check_contract(&m);
        let f = smith_normal_form(&m);
        assert_eq!(f.diagonal(), [Int::one(), Int::one()]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let col = k.col(0);
        let sign = if col[0].is_negative() { Int::from(-1) } else { Int::one() };
        let col: Vec<Int> = col.iter().map(|x| x * &sign).collect();
        assert_eq!(col, [Int::from(6), Int::from(4), Int::from(-3)]);
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntegerMatrix::identity(3);
        let f = smith_normal_form(&m);
        assert_eq!(f.u, m);
        assert_eq!(f.v, m);
        assert_eq!(f.s, m);
        assert_eq!(kernel_basis(&IntegerMatrix::identity(2)).cols(), 0);
    }

    #[test]
    fn primitive_kernel_of_a_row() {
        let k = kernel_basis(&IntegerMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        let c = k.col(0);
        assert_eq!(&c[0] + &c[1], Int::zero());
        assert_eq!(c[0].abs(), Int::one());
    }

    #[test]
    fn divisibility_repair() {
        let m = IntegerMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        check_contract(&m);
        assert_eq!(smith_normal_form(&m).diagonal(), [Int::one(), Int::from(6)]);
        let m = IntegerMatrix::from_i64(&[&[4, 6, 0], &[6, 9, 15], &[0, 0, 10]]);
        check_contract(&m);
    }

    #[test]
    fn degenerate_shapes() {
        check_contract(&IntegerMatrix::zeros(0, 3));
        check_contract(&IntegerMatrix::zeros(2, 0));
        check_contract(&IntegerMatrix::zeros(2, 2));
    }

    #[test]
    fn integer_solutions() {
        let m = IntegerMatrix::from_i64(&[&[1, -1], &[0, 2]]);
        let x = solve_integer(&m, &[Int::from(0), Int::from(2)]).unwrap();
        assert_eq!(m.apply(&x).unwrap(), [Int::from(0), Int::from(2)]);
        assert!(solve_integer(&m, &[Int::from(0), Int::from(1)]).is_none());
    }
}
