use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{cokernel_invariants, CokernelInvariants, IntMatrix};

/// Sublattice of `Z^dim`, stored as a row-style Hermite normal form: rows
/// sorted by pivot column, positive pivots, and every entry sitting above a
/// pivot reduced into `0..pivot`. The HNF is unique, so two lattices are
/// equal iff their bases are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntLattice {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut l = Self::new(dim);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_value(&self, col: usize) -> Option<&BigInt> {
        self.pivots
            .binary_search(&col)
            .ok()
            .map(|r| &self.rows[r][col])
    }

    /// Canonical coset representative of `v` modulo the lattice: every pivot
    /// coordinate lands in `0..pivot`.
    pub fn reduce(&self, v: &mut [BigInt]) {
        assert_eq!(v.len(), self.dim);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let q = v[pc].div_floor(&row[pc]);
            if q.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row).skip(pc) {
                if !r.is_zero() {
                    *x -= &q * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the lattice; returns whether the lattice grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut grew = false;
        let mut col = 0;
        while col < self.dim {
            if v[col].is_zero() {
                col += 1;
                continue;
            }
            match self.pivots.binary_search(&col) {
                Err(at) => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.pivots.insert(at, col);
                    self.rows.insert(at, v);
                    self.hermite_reduce();
                    return true;
                }
                Ok(r) => {
                    let d = self.rows[r][col].clone();
                    let (q, rem) = v[col].div_rem(&d);
                    if rem.is_zero() {
                        for (x, y) in v.iter_mut().zip(&self.rows[r]).skip(col) {
                            *x -= &q * y;
                        }
                    } else {
                        // unimodular 2x2 step on (row, v)
                        let eg = d.extended_gcd(&v[col]);
                        let (g, s, t) = (eg.gcd, eg.x, eg.y);
                        let a = &v[col] / &g;
                        let b = &d / &g;
                        let row = &self.rows[r];
                        let new_row: Vec<BigInt> =
                            row.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                        let new_v: Vec<BigInt> =
                            row.iter().zip(&v).map(|(x, y)| &a * x - &b * y).collect();
                        self.rows[r] = new_row;
                        v = new_v;
                        grew = true;
                    }
                    col += 1;
                }
            }
        }
        if grew {
            self.hermite_reduce();
        }
        grew
    }

    fn hermite_reduce(&mut self) {
        for j in 0..self.rows.len() {
            let pc = self.pivots[j];
            if self.rows[j][pc].is_negative() {
                self.rows[j].iter_mut().for_each(|x| *x = -&*x);
            }
            let (upper, lower) = self.rows.split_at_mut(j);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let q = row[pc].div_floor(&pivot_row[pc]);
                if q.is_zero() {
                    continue;
                }
                for (x, y) in row.iter_mut().zip(pivot_row).skip(pc) {
                    *x -= &q * y;
                }
            }
        }
    }

    /// Structure of `Z^dim / lattice`.
    pub fn quotient_invariants(&self) -> CokernelInvariants {
        let gens = IntMatrix::from_columns(self.dim, &self.rows);
        cokernel_invariants(&gens)
    }

    /// Columns that survive in the canonical quotient representatives: those
    /// with no pivot or with a pivot larger than one.
    pub fn retained_columns(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&c| match self.pivot_value(c) {
                None => true,
                Some(d) => !d.is_one(),
            })
            .collect()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, &self.rows)
    }
}

/// Row-style Hermite normal form of the row lattice of `m` (zero rows dropped).
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    IntLattice::from_generators(m.cols(), m.row_vecs()).to_matrix()
}
