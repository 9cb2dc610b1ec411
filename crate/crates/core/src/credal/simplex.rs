//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Problem sizes here are
//! small (a few hundred rows at most), so a dense tableau is adequate.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    /// `y` with `Aᵀy ≤ 0` componentwise and `b·y > 0`.
    Infeasible { farkas: Vec<Q> },
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    z: Vec<Q>,
    z_rhs: Q,
    basis: Vec<usize>,
    active: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                *v /= &p;
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || !self.active[i] || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.z[col].is_zero() {
            let f = self.z[col].clone();
            for (v, pv) in self.z.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.z_rhs -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over columns `0..allowed`. Returns false when
    /// unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| self.z[j].is_negative());
            let Some(col) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if !self.active[i] || !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let m = self.b.len();
        let n = self.c.len();
        assert_eq!(self.a.len(), m, "row count");
        assert!(self.a.iter().all(|r| r.len() == n), "column count");

        let signs: Vec<Q> = self
            .b
            .iter()
            .map(|v| if v.is_negative() { -Q::one() } else { Q::one() })
            .collect();
        let width = n + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, (sign, (a_row, b))) in signs.iter().zip(self.a.iter().zip(&self.b)).enumerate() {
            let mut row: Vec<Q> = a_row.iter().map(|v| v * sign).collect();
            row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
            rows.push(row);
            rhs.push(b * sign);
        }
        // Phase-one costs: 1 on each artificial, priced out against the basis.
        let mut z = vec![Q::zero(); width];
        let mut z_rhs = Q::zero();
        for i in 0..m {
            for j in 0..n {
                z[j] -= &rows[i][j];
            }
            z_rhs -= &rhs[i];
        }
        let mut t = Tableau {
            rows,
            rhs,
            z,
            z_rhs,
            basis: (n..n + m).collect(),
            active: vec![true; m],
        };
        let bounded = t.optimize(width);
        debug_assert!(bounded, "phase one is bounded below by zero");

        let infeasibility = -t.z_rhs.clone();
        if infeasibility.is_positive() {
            let farkas = (0..m).map(|i| (Q::one() - &t.z[n + i]) * &signs[i]).collect();
            return LpOutcome::Infeasible { farkas };
        }

        // Drive remaining artificials out of the basis, dropping redundant rows.
        for r in 0..m {
            if t.basis[r] < n {
                continue;
            }
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(col) => t.pivot(r, col),
                None => t.active[r] = false,
            }
        }

        t.z = vec![Q::zero(); width];
        t.z[..n].clone_from_slice(&self.c);
        t.z_rhs = Q::zero();
        for r in 0..m {
            if !t.active[r] {
                continue;
            }
            let cb = self.c[t.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !t.rows[r][j].is_zero() {
                    let d = &cb * &t.rows[r][j];
                    t.z[j] -= d;
                }
            }
            t.z_rhs -= &cb * &t.rhs[r];
        }
        if !t.optimize(n) {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![Q::zero(); n];
        for r in 0..m {
            if t.active[r] && t.basis[r] < n {
                x[t.basis[r]] = t.rhs[r].clone();
            }
        }
        let value = -t.z_rhs;
        LpOutcome::Optimal { x, value }
    }
}
