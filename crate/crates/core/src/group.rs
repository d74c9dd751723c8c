//! Finite groups given by multiplication tables.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("bad group spec {0:?} (expected cyc:n, dih:n, sym:n or table:path)")]
    BadSpec(String),
    #[error("sym:{0} is too large (n <= 6)")]
    TooLarge(usize),
    #[error("cannot read group table: {0}")]
    Io(String),
    #[error("not a group table: {0}")]
    NotAGroup(String),
}

/// A finite group on element indices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FiniteGroup {
    /// Builds and checks a group from a full multiplication table.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let bad = |m: String| GroupError::NotAGroup(m);
        if order == 0 {
            return Err(bad("empty table".into()));
        }
        if table.len() != order * order {
            return Err(bad(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&x) = table.iter().find(|&&x| x >= order) {
            return Err(bad(format!("entry {x} out of range")));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverse = vec![0; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or_else(|| bad(format!("element {x} has no inverse")))?;
        }
        let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
            if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                return Err(bad(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
            }
            Ok(())
        };
        if order <= 24 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..100_000 {
                check(
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                )?;
            }
        }

        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..order).map(|g| mul(mul(g, x), inverse[g])).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        Ok(Self {
            name: name.into(),
            order,
            table,
            identity,
            inverse,
            classes,
            class_of,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadSpec("cyc:0".into()));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(format!("cyc:{n}"), n, table)
    }

    /// Dihedral group of order `2n`; index `k + n*f` stands for `r^k s^f`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadSpec("dih:0".into()));
        }
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (k1, f1) = (x % n, x / n);
                let (k2, f2) = (y % n, y / n);
                // r^k1 s^f1 r^k2 s^f2 = r^(k1 ± k2) s^(f1+f2)
                let k = if f1 == 0 {
                    (k1 + k2) % n
                } else {
                    (k1 + n - k2) % n
                };
                table[x * order + y] = k + n * ((f1 + f2) % 2);
            }
        }
        Self::from_table(format!("dih:{n}"), order, table)
    }

    /// Symmetric group on `n` points; elements are permutations in
    /// lexicographic order, composed right to left.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadSpec("sym:0".into()));
        }
        if n > 6 {
            return Err(GroupError::TooLarge(n));
        }
        let perms = permutations(n);
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let order = perms.len();
        let mut table = vec![0; order * order];
        let mut buf = vec![0; n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                for k in 0..n {
                    buf[k] = p[q[k]];
                }
                table[i * order + j] = index[buf.as_slice()];
            }
        }
        Self::from_table(format!("sym:{n}"), order, table)
    }

    /// `table:path` file: first line the order n, then n rows of n
    /// space-separated 0-based indices.
    pub fn from_table_file(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(e.to_string()))?;
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let order: usize = lines
            .next()
            .and_then(|l| l.trim().parse().ok())
            .ok_or_else(|| GroupError::NotAGroup("first line must be the order".into()))?;
        let mut table = Vec::with_capacity(order * order);
        for (r, line) in lines.enumerate() {
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| GroupError::NotAGroup(format!("row {r} is not a list of indices")))?;
            if row.len() != order {
                return Err(GroupError::NotAGroup(format!(
                    "row {r} has {} entries",
                    row.len()
                )));
            }
            table.extend(row);
        }
        Self::from_table(format!("table:{}", path.display()), order, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Conjugacy classes, sorted by smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                current.push(k);
                rec(n, current, used, out);
                current.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Parses `cyc:n`, `dih:n`, `sym:n` or `table:path`.
pub fn make_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| GroupError::BadSpec(spec.into()))?;
    if kind == "table" {
        return FiniteGroup::from_table_file(Path::new(arg));
    }
    let n: usize = arg.parse().map_err(|_| GroupError::BadSpec(spec.into()))?;
    match kind {
        "cyc" => FiniteGroup::cyclic(n),
        "dih" => FiniteGroup::dihedral(n),
        "sym" => FiniteGroup::symmetric(n),
        _ => Err(GroupError::BadSpec(spec.into())),
    }
}
