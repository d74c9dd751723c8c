use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::IntMatrix;

/// Abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with `d1 | d2 | ... | dk`
/// and every `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CokernelInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CokernelInvariants {
    /// Dimension of the group tensored with `F_p`.
    pub fn dim_mod_p(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
    }
}

/// Nonzero invariant factors of `m`, in divisibility order (unit factors
/// included, zero factors omitted).
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..rows {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = a.get(i, t).div_floor(a.get(t, t));
            a.row_sub_mul(i, &q, t);
            if !a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = a.get(t, j).div_floor(a.get(t, t));
            a.col_sub_mul(j, &q, t);
            if !a.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            // a strictly smaller remainder now exists; pick it as the next pivot
            continue;
        }
        let pivot = a.get(t, t).clone();
        let offender =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a.get(i, j) % &pivot).is_zero()));
        if let Some(i) = offender {
            // fold the offending row into row t and redo this step
            a.row_sub_mul(t, &BigInt::from(-1), i);
            continue;
        }
        factors.push(pivot.abs());
        t += 1;
    }
    factors
}

/// Cokernel of `m: Z^cols -> Z^rows`, the columns being the relations.
pub fn cokernel_invariants(m: &IntMatrix) -> CokernelInvariants {
    let factors = smith_normal_form(m);
    CokernelInvariants {
        free_rank: m.rows() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), ints(&[1, 6]));
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(
            smith_normal_form(&IntMatrix::identity(4)),
            ints(&[1, 1, 1, 1])
        );
        assert!(smith_normal_form(&IntMatrix::zeros(3, 2)).is_empty());
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_invariants(&IntMatrix::from_rows(1, &[vec![2]]));
        assert_eq!((c.free_rank, c.torsion), (0, ints(&[2])));

        let c = cokernel_invariants(&IntMatrix::zeros(3, 0));
        assert_eq!((c.free_rank, c.torsion.len()), (3, 0));

        let c = cokernel_invariants(&IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 0]]));
        assert_eq!((c.free_rank, c.torsion), (1, ints(&[2])));
    }

    #[test]
    fn divisibility_is_restored() {
        // diag(4, 6) has invariant factors (2, 12)
        let m = IntMatrix::from_rows(2, &[vec![4, 0], vec![0, 6]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 12]));
    }

    #[test]
    fn dim_mod_p_counts_divisible_torsion() {
        let c = CokernelInvariants {
            free_rank: 2,
            torsion: ints(&[2, 6]),
        };
        assert_eq!(c.dim_mod_p(2), 4);
        assert_eq!(c.dim_mod_p(3), 3);
        assert_eq!(c.dim_mod_p(5), 2);
    }
}
