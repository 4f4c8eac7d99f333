//! Exact feasibility for small linear systems (phase-one simplex, Bland's rule).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::num::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

/// Linear constraints over variables that are either free or nonnegative.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    nonneg: Vec<bool>,
    rows: Vec<(Vec<Rat>, Relation, Rat)>,
}

impl LinearSystem {
    pub fn new(nonneg: Vec<bool>) -> Self {
        LinearSystem { nonneg, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.nonneg.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, rel: Relation, rhs: Rat) {
        assert_eq!(coeffs.len(), self.vars(), "constraint width");
        self.rows.push((coeffs, rel, rhs));
    }

    /// A feasible point, or `None` if the system is infeasible.
    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        // Column layout: one column per nonnegative variable, two per free
        // variable (positive and negative parts), then one slack per inequality.
        let mut col_of = Vec::with_capacity(self.vars());
        let mut width = 0;
        for &nn in &self.nonneg {
            col_of.push(width);
            width += if nn { 1 } else { 2 };
        }
        let slacks = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let total = width + slacks;
        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut slack = width;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![Rat::zero(); total];
            for (v, c) in coeffs.iter().enumerate() {
                row[col_of[v]] = c.clone();
                if !self.nonneg[v] {
                    row[col_of[v] + 1] = -c.clone();
                }
            }
            match rel {
                Relation::Eq => {}
                Relation::Ge => {
                    row[slack] = -Rat::one();
                    slack += 1;
                }
                Relation::Le => {
                    row[slack] = Rat::one();
                    slack += 1;
                }
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let y = feasible_standard(&a, &b, total)?;
        Some(
            (0..self.vars())
                .map(|v| {
                    if self.nonneg[v] {
                        y[col_of[v]].clone()
                    } else {
                        &y[col_of[v]] - &y[col_of[v] + 1]
                    }
                })
                .collect(),
        )
    }
}

/// Some `x ≥ 0` with `a x = b`.
pub fn feasible_standard(a: &[Vec<Rat>], b: &[Rat], n: usize) -> Option<Vec<Rat>> {
    let m = a.len();
    // Tableau rows: [x (n) | artificials (m) | rhs].
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Rat::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rat::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut cost = vec![Rat::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &t[l][width - 1] / &t[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let Some(l) = leave else {
            // Unbounded direction cannot occur for a phase-one objective bounded below by 0.
            break;
        };
        let p = t[l][enter].clone();
        for x in t[l].iter_mut() {
            *x /= &p;
        }
        for i in 0..m {
            if i != l && !t[i][enter].is_zero() {
                let k = t[i][enter].clone();
                for j in 0..width {
                    let d = &k * &t[l][j];
                    t[i][j] -= d;
                }
            }
        }
        if !cost[enter].is_zero() {
            let k = cost[enter].clone();
            for j in 0..width {
                let d = &k * &t[l][j];
                cost[j] -= d;
            }
        }
        basis[l] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}
