//! Finite-dimensional algebras given as an ambient product table modulo a
//! two-sided ideal.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use cordalg_linalg::{
    span_closure_int, span_closure_mod_p, CokernelInvariants, IntLattice, ModPSpan, Multiply,
    PrimeField,
};

use crate::algebra::Domain;
use crate::quotient::FiniteQuotient;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    TwistedRing,
    StringCobar,
    CordRelations,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::TwistedRing => "twisted-ring",
            Route::StringCobar => "string-cobar",
            Route::CordRelations => "cord-relations",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisTag {
    Unit,
    Group(usize),
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Unit => write!(f, "1"),
            BasisTag::Group(g) => write!(f, "[g{g}]"),
        }
    }
}

/// Ambient tags `{1} ∪ {[g] : g ∈ image}` in index order.
pub fn ambient_tags(q: &FiniteQuotient) -> Vec<BasisTag> {
    std::iter::once(BasisTag::Unit)
        .chain(q.image_subgroup.iter().map(|&g| BasisTag::Group(g)))
        .collect()
}

/// Ambient index of group element `g` (which must lie in the image).
pub fn ambient_index(q: &FiniteQuotient, g: usize) -> usize {
    1 + q
        .image_subgroup
        .binary_search(&g)
        .unwrap_or_else(|_| panic!("element {g} outside the image subgroup"))
}

/// Products of ambient basis elements as sparse integer combinations.
/// Index 0 is always the formal unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTable {
    dim: usize,
    entries: Vec<Vec<(usize, i64)>>,
}

impl ProductTable {
    /// Table whose unit row and column are the identity and whose other
    /// entries come from `f(i, j)` for `i, j >= 1`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let raw = match (i, j) {
                    (0, j) => vec![(j, 1)],
                    (i, 0) => vec![(i, 1)],
                    _ => f(i, j),
                };
                entries.push(compact(raw));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.entries[i * self.dim + j]
    }

    pub fn mul_int(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for &(k, c) in self.product(i, j) {
                    out[k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn mul_mod(&self, field: PrimeField, u: &[u64], v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for (i, &a) in u.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in v.iter().enumerate().filter(|(_, &b)| b != 0) {
                let ab = field.mul(a, b);
                for &(k, c) in self.product(i, j) {
                    out[k] = field.add(out[k], field.mul(ab, field.from_i64(c)));
                }
            }
        }
        out
    }

    fn basis_left_int(&self, gen: usize, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            for &(k, c) in self.product(gen, j) {
                out[k] += b * c;
            }
        }
        out
    }

    fn basis_right_int(&self, v: &[BigInt], gen: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (i, a) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for &(k, c) in self.product(i, gen) {
                out[k] += a * c;
            }
        }
        out
    }
}

fn compact(mut raw: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    raw.sort_unstable();
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(raw.len());
    for (k, c) in raw {
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

/// The twisted product `[g][h] = [gh] + [gmh]` on the ambient space of `q`.
pub fn twisted_table(q: &FiniteQuotient) -> ProductTable {
    let g = &q.group;
    let elems = &q.image_subgroup;
    ProductTable::from_fn(elems.len() + 1, |i, j| {
        let (a, b) = (elems[i - 1], elems[j - 1]);
        vec![
            (ambient_index(q, g.mul(a, b)), 1),
            (ambient_index(q, g.mul(g.mul(a, q.m_img), b)), 1),
        ]
    })
}

struct IntMul<'a>(&'a ProductTable);

impl Multiply<BigInt> for IntMul<'_> {
    fn dim(&self) -> usize {
        self.0.dim
    }
    fn generators(&self) -> Vec<usize> {
        (1..self.0.dim).collect()
    }
    fn left(&self, gen: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.0.basis_left_int(gen, v)
    }
    fn right(&self, v: &[BigInt], gen: usize) -> Vec<BigInt> {
        self.0.basis_right_int(v, gen)
    }
}

struct ModMul<'a>(&'a ProductTable, PrimeField);

impl ModMul<'_> {
    fn lift(&self, v: Vec<BigInt>) -> Vec<u64> {
        to_mod(self.1, &v)
    }
}

impl Multiply<u64> for ModMul<'_> {
    fn dim(&self) -> usize {
        self.0.dim
    }
    fn generators(&self) -> Vec<usize> {
        (1..self.0.dim).collect()
    }
    fn left(&self, gen: usize, v: &[u64]) -> Vec<u64> {
        self.lift(self.0.basis_left_int(gen, &to_int(v)))
    }
    fn right(&self, v: &[u64], gen: usize) -> Vec<u64> {
        self.lift(self.0.basis_right_int(&to_int(v), gen))
    }
}

pub fn to_mod(field: PrimeField, v: &[BigInt]) -> Vec<u64> {
    let p = BigInt::from(field.modulus());
    v.iter()
        .map(|c| {
            let r = ((c % &p) + &p) % &p;
            r.to_u64().expect("reduced below p")
        })
        .collect()
}

pub fn to_int(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Two-sided ideal generated by some seeds, over `F_p` or `Z`.
#[derive(Debug, Clone)]
pub enum Ideal {
    ModP(ModPSpan),
    Int(IntLattice),
}

impl Ideal {
    pub fn closure(table: &ProductTable, domain: Domain, seeds: &[Vec<BigInt>]) -> Self {
        match domain {
            Domain::Prime(p) => {
                let field = PrimeField::new(p).expect("domain primes are checked");
                let seeds: Vec<Vec<u64>> = seeds.iter().map(|s| to_mod(field, s)).collect();
                Ideal::ModP(span_closure_mod_p(field, &seeds, &ModMul(table, field)))
            }
            Domain::Integers => Ideal::Int(span_closure_int(seeds, &IntMul(table))),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Ideal::ModP(s) => s.rank(),
            Ideal::Int(l) => l.rank(),
        }
    }

    /// Canonical representative of `v` modulo the ideal.
    pub fn normal_form(&self, v: &[BigInt]) -> Vec<BigInt> {
        match self {
            Ideal::ModP(s) => {
                let mut w = to_mod(s.field(), v);
                s.reduce(&mut w);
                to_int(&w)
            }
            Ideal::Int(l) => {
                let mut w = v.to_vec();
                l.reduce(&mut w);
                w
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.normal_form(v).iter().all(Zero::is_zero)
    }

    /// Echelon basis rows; equal ideals give equal rows.
    pub fn echelon_rows(&self) -> Vec<Vec<BigInt>> {
        match self {
            Ideal::ModP(s) => s.basis().iter().map(|r| to_int(r)).collect(),
            Ideal::Int(l) => l.basis().to_vec(),
        }
    }

    /// Ambient columns that carry the quotient's normal forms.
    pub fn retained_columns(&self) -> Vec<usize> {
        match self {
            Ideal::ModP(s) => s.free_columns(),
            Ideal::Int(l) => l.retained_columns(),
        }
    }
}

/// Sparse combination over the retained basis.
pub type Coords = Vec<(usize, BigInt)>;

/// An ambient product table modulo an ideal, with structure constants on the
/// retained basis. Over `Z` the retained basis may include torsion
/// generators, whose coordinates are reduced modulo their HNF pivot.
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    pub route: Route,
    pub domain: Domain,
    pub ambient: Vec<BasisTag>,
    pub table: ProductTable,
    pub ideal: Ideal,
    pub basis: Vec<usize>,
    pub structure: Vec<Coords>,
    pub invariants: Option<CokernelInvariants>,
}

impl PresentedAlgebra {
    pub fn from_seeds(
        route: Route,
        domain: Domain,
        ambient: Vec<BasisTag>,
        table: ProductTable,
        seeds: &[Vec<BigInt>],
    ) -> Self {
        let ideal = Ideal::closure(&table, domain, seeds);
        let basis = ideal.retained_columns();
        let invariants = match &ideal {
            Ideal::Int(l) => Some(l.quotient_invariants()),
            Ideal::ModP(_) => None,
        };
        let mut a = Self {
            route,
            domain,
            ambient,
            table,
            ideal,
            basis,
            structure: Vec::new(),
            invariants,
        };
        let n = a.basis.len();
        let mut structure = Vec::with_capacity(n * n);
        for &i in &a.basis {
            for &j in &a.basis {
                let prod = a.reduce_sparse(a.table.product(i, j));
                structure.push(a.coords(&prod));
            }
        }
        a.structure = structure;
        a
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn z_rank(&self) -> Option<usize> {
        self.invariants.as_ref().map(|inv| inv.free_rank)
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants
            .as_ref()
            .map(|inv| inv.torsion.clone())
            .unwrap_or_default()
    }

    /// `basis[i] * basis[j]` on the retained basis.
    pub fn structure_constant(&self, i: usize, j: usize) -> &Coords {
        &self.structure[i * self.basis.len() + j]
    }

    pub fn basis_tags(&self) -> Vec<BasisTag> {
        self.basis.iter().map(|&i| self.ambient[i]).collect()
    }

    fn reduce_sparse(&self, terms: &[(usize, i64)]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ambient_dim()];
        for &(k, c) in terms {
            v[k] += c;
        }
        self.ideal.normal_form(&v)
    }

    pub fn normal_form(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.ideal.normal_form(v)
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.ideal.contains(v)
    }

    /// Coordinates of a normal form on the retained basis.
    pub fn coords(&self, nf: &[BigInt]) -> Coords {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, &c)| !nf[c].is_zero())
            .map(|(i, &c)| (i, nf[c].clone()))
            .collect()
    }

    pub fn lift(&self, coords: &Coords) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ambient_dim()];
        for (i, c) in coords {
            v[self.basis[*i]] += c;
        }
        v
    }

    /// Product of two ambient vectors, reduced.
    pub fn mul(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        self.normal_form(&self.table.mul_int(u, v))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.ambient_dim()];
        v[self.basis[i]] = BigInt::from(1);
        self.normal_form(&v)
    }

    /// Unit laws on every retained basis element.
    pub fn check_unit(&self) -> bool {
        let one = {
            let mut v = vec![BigInt::zero(); self.ambient_dim()];
            v[0] = BigInt::from(1);
            v
        };
        (0..self.dimension()).all(|i| {
            let b = self.basis_vector(i);
            self.mul(&one, &b) == b && self.mul(&b, &one) == b
        })
    }

    /// Associativity on basis triples: exhaustive up to dimension 64,
    /// otherwise `samples` random triples.
    pub fn check_associativity(&self, samples: usize) -> bool {
        let n = self.dimension();
        let vectors: Vec<Vec<BigInt>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let assoc = |i: usize, j: usize, k: usize| {
            let left = self.mul(&self.mul(&vectors[i], &vectors[j]), &vectors[k]);
            let right = self.mul(&vectors[i], &self.mul(&vectors[j], &vectors[k]));
            left == right
        };
        if n <= 64 {
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| assoc(i, j, k))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..samples).all(|_| {
                assoc(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )
            })
        }
    }

    /// Whether both algebras have the same ambient tags, retained basis and
    /// structure constants.
    pub fn same_table(&self, other: &PresentedAlgebra) -> bool {
        self.domain == other.domain
            && self.ambient == other.ambient
            && self.basis == other.basis
            && self.structure == other.structure
    }
}
