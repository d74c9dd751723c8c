//! Discrete transverse strings and the degree-zero part of their cobar
//! complex.
//!
//! A string of degree `n` is the sequence of its `n + 1` segments, each a
//! group element already transported to the basepoint. Resolving at an
//! intersection merges two neighbouring segments with an `e` or an `m`
//! inserted; splitting cuts the string there.
//!
//! Signs: `D = R - Δ` on a single string, extended to tensor words as a
//! derivation where passing a factor of degree `k` costs `(-1)^k`. With this
//! choice `D((x, y)) = (xy) + (xmy) - (x)⊗(y)` and `D² = 0`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Domain;
use crate::engine::longitude_seeds;
use crate::presented::{ambient_index, ambient_tags, PresentedAlgebra, ProductTable, Route};
use crate::quotient::FiniteQuotient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobarError {
    #[error("a string needs at least one segment")]
    Empty,
    #[error("resolve index {i} out of range for a degree-{degree} string")]
    IndexOutOfRange { i: usize, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TString {
    segments: Vec<usize>,
}

impl TString {
    pub fn new(segments: Vec<usize>) -> Result<Self, CobarError> {
        if segments.is_empty() {
            return Err(CobarError::Empty);
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[usize] {
        &self.segments
    }

    pub fn degree(&self) -> usize {
        self.segments.len() - 1
    }
}

impl fmt::Display for TString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub type TensorWord = Vec<TString>;

pub fn word_degree(w: &[TString]) -> usize {
    w.iter().map(TString::degree).sum()
}

/// Integer combination of nonempty tensor words, without zero terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<TensorWord, i64>,
}

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: TensorWord) -> Self {
        let mut c = Self::zero();
        c.add_term(w, 1);
        c
    }

    pub fn string(s: TString) -> Self {
        Self::word(vec![s])
    }

    pub fn add_term(&mut self, w: TensorWord, coeff: i64) {
        assert!(!w.is_empty(), "tensor words are nonempty");
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if coeff != 0 {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, coeff: i64) {
        for (w, &c) in &other.terms {
            self.add_term(w.clone(), c * coeff);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, w: &[TString]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms().enumerate() {
            let word: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            let body = match c.abs() {
                1 => word.join("⊗"),
                n => format!("{n}{}", word.join("⊗")),
            };
            match (k, c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Deliberate sign errors for sanity-checking the `D² = 0` suite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Drop the alternating sign in the split.
    SplitSign,
}

/// Merge segments `i - 1` and `i`, once through `e` and once through `m`.
pub fn resolve_i(s: &TString, i: usize, q: &FiniteQuotient) -> Result<Chain, CobarError> {
    if i == 0 || i > s.degree() {
        return Err(CobarError::IndexOutOfRange {
            i,
            degree: s.degree(),
        });
    }
    let g = &q.group;
    let seg = s.segments();
    let mut out = Chain::zero();
    for middle in [g.identity(), q.m_img] {
        let mut merged = seg[..i - 1].to_vec();
        merged.push(g.mul(g.mul(seg[i - 1], middle), seg[i]));
        merged.extend_from_slice(&seg[i + 1..]);
        out.add_term(vec![TString { segments: merged }], 1);
    }
    Ok(out)
}

/// `Σ (-1)^(i-1) resolve_i`.
pub fn resolve(s: &TString, q: &FiniteQuotient) -> Chain {
    let mut out = Chain::zero();
    for i in 1..=s.degree() {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        out.add_scaled(&resolve_i(s, i, q).expect("index in range"), sign);
    }
    out
}

/// `Σ (-1)^(i-1) (segments before i) ⊗ (segments from i)`.
pub fn split(s: &TString) -> Chain {
    split_with(s, Mutation::None)
}

pub fn split_with(s: &TString, mutation: Mutation) -> Chain {
    let seg = s.segments();
    let mut out = Chain::zero();
    for i in 1..seg.len() {
        let sign = match mutation {
            Mutation::SplitSign => 1,
            Mutation::None if i % 2 == 1 => 1,
            Mutation::None => -1,
        };
        let left = TString {
            segments: seg[..i].to_vec(),
        };
        let right = TString {
            segments: seg[i..].to_vec(),
        };
        out.add_term(vec![left, right], sign);
    }
    out
}

fn string_differential(s: &TString, q: &FiniteQuotient, mutation: Mutation) -> Chain {
    let mut out = resolve(s, q);
    out.add_scaled(&split_with(s, mutation), -1);
    out
}

pub fn cobar_differential(c: &Chain, q: &FiniteQuotient) -> Chain {
    cobar_differential_with(c, q, Mutation::None)
}

pub fn cobar_differential_with(c: &Chain, q: &FiniteQuotient, mutation: Mutation) -> Chain {
    let mut out = Chain::zero();
    for (w, coeff) in c.terms() {
        let mut preceding = 0;
        for (j, s) in w.iter().enumerate() {
            let sign = if preceding % 2 == 0 { coeff } else { -coeff };
            for (inner, c2) in string_differential(s, q, mutation).terms() {
                let mut word = w[..j].to_vec();
                word.extend(inner.iter().cloned());
                word.extend_from_slice(&w[j + 1..]);
                out.add_term(word, sign * c2);
            }
            preceding += s.degree();
        }
    }
    out
}

/// Product of degree-zero strings read off the degree-one boundary: since
/// `D((x, y))` is a boundary, `(x)⊗(y)` equals its single-string part.
pub fn cobar_product_table(q: &FiniteQuotient) -> ProductTable {
    let elems = &q.image_subgroup;
    ProductTable::from_fn(elems.len() + 1, |i, j| {
        let (x, y) = (elems[i - 1], elems[j - 1]);
        let d = cobar_differential(
            &Chain::string(TString {
                segments: vec![x, y],
            }),
            q,
        );
        let pair = vec![TString { segments: vec![x] }, TString { segments: vec![y] }];
        let scale = -d.coeff(&pair);
        assert_eq!(
            scale.abs(),
            1,
            "boundary of a degree-one string has a unit tensor coefficient"
        );
        d.terms()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (ambient_index(q, w[0].segments[0]), c * scale))
            .collect()
    })
}

/// Degree-zero cobar homology with the longitude relations added and `𝔢`,
/// `m̄` made central, as an algebra on `{1} ∪ {[g]}`.
pub fn h0_presentation(q: &FiniteQuotient, domain: Domain) -> PresentedAlgebra {
    let table = cobar_product_table(q);
    let dim = table.dim();
    let mut seeds = longitude_seeds(q);
    for c in [q.e_img(), q.minv_img] {
        let ci = ambient_index(q, c);
        for &x in &q.image_subgroup {
            let xi = ambient_index(q, x);
            let mut v = vec![BigInt::zero(); dim];
            for &(k, coeff) in table.product(ci, xi) {
                v[k] += coeff;
            }
            for &(k, coeff) in table.product(xi, ci) {
                v[k] -= coeff;
            }
            seeds.push(v);
        }
    }
    PresentedAlgebra::from_seeds(Route::StringCobar, domain, ambient_tags(q), table, &seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use std::sync::Arc;

    fn cyc6() -> FiniteQuotient {
        FiniteQuotient::cyclic_image(Arc::new(make_group("cyc:6").unwrap()), 1, 0)
    }

    fn s(v: &[usize]) -> TString {
        TString::new(v.to_vec()).unwrap()
    }

    #[test]
    fn resolve_in_cyc6() {
        let q = cyc6();
        let r = resolve_i(&s(&[2, 3]), 1, &q).unwrap();
        let mut expected = Chain::string(s(&[5]));
        expected.add_term(vec![s(&[0])], 1);
        assert_eq!(r, expected);
        assert!(resolve_i(&s(&[2]), 1, &q).is_err());
        assert!(resolve(&s(&[4]), &q).is_zero());
    }

    #[test]
    fn split_signs() {
        let mut expected = Chain::word(vec![s(&[1]), s(&[2, 3])]);
        expected.add_term(vec![s(&[1, 2]), s(&[3])], -1);
        assert_eq!(split(&s(&[1, 2, 3])), expected);
        assert!(split(&s(&[1])).is_zero());
    }

    #[test]
    fn degree_one_boundary_is_skein_shape() {
        let q = cyc6();
        let d = cobar_differential(&Chain::string(s(&[2, 3])), &q);
        let mut expected = Chain::string(s(&[5]));
        expected.add_term(vec![s(&[0])], 1);
        expected.add_term(vec![s(&[2]), s(&[3])], -1);
        assert_eq!(d, expected);
    }

    #[test]
    fn d_squared_vanishes_on_small_strings() {
        let q = cyc6();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    let d = cobar_differential(&Chain::string(s(&[a, b, c])), &q);
                    assert!(cobar_differential(&d, &q).is_zero());
                }
            }
        }
    }

    #[test]
    fn split_mutation_breaks_d_squared() {
        let q = cyc6();
        let c = Chain::string(s(&[1, 2, 3]));
        let d = cobar_differential_with(&c, &q, Mutation::SplitSign);
        assert!(!cobar_differential_with(&d, &q, Mutation::SplitSign).is_zero());
    }

    #[test]
    fn chain_display() {
        let mut c = Chain::string(s(&[5]));
        c.add_term(vec![s(&[2]), s(&[3])], -1);
        assert_eq!(c.to_string(), "-(2)⊗(3) + (5)");
    }
}
