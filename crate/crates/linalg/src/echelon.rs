use crate::{IntMatrix, LinalgError, PrimeField};

/// Reduced row-echelon form over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    /// Same shape as the input; zero rows last.
    pub matrix: Vec<Vec<u64>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref_mod_p(m: &IntMatrix, p: u64) -> Result<RowEchelon, LinalgError> {
    let field = PrimeField::new(p)?;
    let modulus = num_bigint::BigInt::from(p);
    let rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| {
                    let r = ((v % &modulus) + &modulus) % &modulus;
                    u64::try_from(r).expect("residue fits in u64")
                })
                .collect()
        })
        .collect();
    let mut span = ModPSpan::new(field, m.cols());
    for row in rows {
        span.insert(row);
    }
    let mut echelon = span.to_echelon();
    echelon
        .matrix
        .resize(m.rows().max(echelon.rank), vec![0; m.cols()]);
    Ok(echelon)
}

/// Subspace of `F_p^dim` kept in reduced row-echelon form under insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPSpan {
    field: PrimeField,
    dim: usize,
    // sorted by pivot; pivot entry 1; pivot columns cleared in every other row
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModPSpan {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Columns without a pivot, i.e. the canonical complement basis.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    /// Reduces `v` in place to its canonical representative modulo the span
    /// (zero on every pivot column).
    pub fn reduce(&self, v: &mut [u64]) {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                if r != 0 {
                    *x = f.sub_mul(*x, c, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        for x in v.iter_mut() {
            *x %= f.modulus();
        }
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut().skip(pc) {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v).skip(pc) {
                if r != 0 {
                    *x = f.sub_mul(*x, c, r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    pub fn to_echelon(&self) -> RowEchelon {
        RowEchelon {
            matrix: self.rows.clone(),
            rank: self.rows.len(),
            pivots: self.pivots.clone(),
        }
    }
}
