//! Wirtinger presentations of knot groups, with the peripheral pair.
//!
//! One generator per over-arc; the arc through edge 1 is generator 0 and is
//! the meridian. At a crossing with sign `s` the outgoing under-arc is
//! `g_out = g_over^s g_in g_over^-s`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::knot::{validate, CodecError, KnotDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Self {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }
}

/// A freely reduced word in the generators; empty is the identity `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: usize) -> Self {
        Self {
            letters: vec![Letter::new(g, 1)],
        }
    }

    /// Reduces on construction.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        free_reduce(&Self { letters })
    }

    /// Builds a word without reducing it.
    pub fn raw(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::from_letters(letters)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.concat(&base))
    }

    /// Image in the abelianization `Z` (all generators are meridians).
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(Letter::exponent).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn evaluate(&self, group: &FiniteGroup, images: &[usize]) -> usize {
        self.letters.iter().fold(group.identity(), |acc, l| {
            let x = images[l.generator];
            group.mul(acc, if l.inverse { group.inv(x) } else { x })
        })
    }
}

/// Cancels adjacent `g g^-1` pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

fn letter_name(l: Letter) -> String {
    let g = l.generator;
    if g < 26 {
        let c = (b'a' + g as u8) as char;
        if l.inverse {
            c.to_ascii_uppercase().to_string()
        } else {
            c.to_string()
        }
    } else if l.inverse {
        format!("X{}", g + 1)
    } else {
        format!("x{}", g + 1)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let names: Vec<String> = self.letters.iter().map(|&l| letter_name(l)).collect();
        f.write_str(&names.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad presentation text: {0}")]
pub struct PresentationParseError(String);

impl FromStr for Word {
    type Err = PresentationParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let bad = || PresentationParseError(format!("bad letter {tok:?}"));
            let letter = if let Some(num) = tok.strip_prefix('x') {
                Letter::new(
                    num.parse::<usize>()
                        .map_err(|_| bad())?
                        .checked_sub(1)
                        .ok_or_else(bad)?,
                    1,
                )
            } else if let Some(num) = tok.strip_prefix('X') {
                Letter::new(
                    num.parse::<usize>()
                        .map_err(|_| bad())?
                        .checked_sub(1)
                        .ok_or_else(bad)?,
                    -1,
                )
            } else {
                let mut chars = tok.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => {
                        Letter::new(c as usize - 'a' as usize, 1)
                    }
                    (Some(c), None) if c.is_ascii_uppercase() => {
                        Letter::new(c as usize - 'A' as usize, -1)
                    }
                    _ => return Err(bad()),
                }
            };
            letters.push(letter);
        }
        Ok(Word::from_letters(letters))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Invalid(#[from] CodecError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub n_generators: usize,
    pub relators: Vec<Word>,
    pub meridian: Word,
    pub longitude: Word,
    pub framing: i64,
}

/// The meridian, its inverse, and the framed longitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeripheralSet {
    pub meridian: Word,
    pub meridian_inverse: Word,
    pub longitude: Word,
}

pub fn peripheral_set(p: &GroupPresentation) -> PeripheralSet {
    PeripheralSet {
        meridian: free_reduce(&p.meridian),
        meridian_inverse: p.meridian.inverse(),
        longitude: free_reduce(&p.longitude),
    }
}

impl fmt::Display for GroupPresentation {
    /// `gens: n; rel: ...; rel: ...; m: a; l: ...; framing: f`, capitals
    /// denoting inverses and `1` the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}", self.n_generators)?;
        for r in &self.relators {
            write!(f, "; rel: {r}")?;
        }
        write!(
            f,
            "; m: {}; l: {}; framing: {}",
            self.meridian, self.longitude, self.framing
        )
    }
}

impl FromStr for GroupPresentation {
    type Err = PresentationParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut n_generators = None;
        let mut relators = Vec::new();
        let mut meridian = Word::generator(0);
        let mut longitude = Word::identity();
        let mut framing = 0;
        for field in s.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field
                .split_once(':')
                .ok_or_else(|| PresentationParseError(format!("field {field:?} has no ':'")))?;
            let value = value.trim();
            match key.trim() {
                "gens" => {
                    n_generators = Some(value.parse().map_err(|_| {
                        PresentationParseError(format!("bad generator count {value:?}"))
                    })?)
                }
                "rel" => relators.push(value.parse()?),
                "m" => meridian = value.parse()?,
                "l" => longitude = value.parse()?,
                "framing" => {
                    framing = value
                        .parse()
                        .map_err(|_| PresentationParseError(format!("bad framing {value:?}")))?
                }
                other => return Err(PresentationParseError(format!("unknown field {other:?}"))),
            }
        }
        let n_generators =
            n_generators.ok_or_else(|| PresentationParseError("missing gens".into()))?;
        let p = GroupPresentation {
            n_generators,
            relators,
            meridian,
            longitude,
            framing,
        };
        let too_big = p
            .relators
            .iter()
            .chain([&p.meridian, &p.longitude])
            .filter_map(Word::max_generator)
            .any(|g| g >= n_generators);
        if too_big {
            return Err(PresentationParseError(
                "letter beyond generator count".into(),
            ));
        }
        Ok(p)
    }
}

/// Wirtinger arcs: edges glued through over-crossings. Returns the generator
/// index of every edge (`arc[label - 1]`) and the arc count.
pub fn arc_assignment(d: &KnotDiagram) -> (Vec<usize>, usize) {
    let n = d.n_edges() as usize;
    if n == 0 {
        return (Vec::new(), 1);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for &[_, b, _, dd] in d.crossings() {
        let (x, y) = (
            find(&mut parent, b as usize - 1),
            find(&mut parent, dd as usize - 1),
        );
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut numbering = BTreeMap::new();
    let mut arc = vec![0; n];
    for (e, slot) in arc.iter_mut().enumerate() {
        let root = find(&mut parent, e);
        let next = numbering.len();
        *slot = *numbering.entry(root).or_insert(next);
    }
    (arc, numbering.len())
}

/// Wirtinger presentation with framed longitude `w * m^(framing + writhe)`,
/// where `w` is the product of `g_over^-s` over the under-passes met walking
/// from edge 1; the correction makes the exponent sum equal `framing`.
pub fn wirtinger_presentation(
    d: &KnotDiagram,
    framing: i64,
) -> Result<GroupPresentation, PresentationError> {
    let report = validate(d);
    if !report.ok {
        return Err(CodecError::Invalid(report).into());
    }
    let meridian = Word::generator(0);
    if d.n_crossings() == 0 {
        return Ok(GroupPresentation {
            n_generators: 1,
            relators: Vec::new(),
            meridian: meridian.clone(),
            longitude: meridian.pow(framing),
            framing,
        });
    }
    let (arc, n_generators) = arc_assignment(d);
    let arc_of = |label: u32| arc[label as usize - 1];

    let relators = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, &[a, b, c, _])| {
            let s = d.sign(i);
            let (g_in, g_out, g_over) = (arc_of(a), arc_of(c), arc_of(b));
            Word::from_letters(vec![
                Letter::new(g_out, 1),
                Letter::new(g_over, s),
                Letter::new(g_in, -1),
                Letter::new(g_over, -s),
            ])
        })
        .collect();

    let passages = d.traversal();
    let mut w = Vec::new();
    // passage k is where edge k+1 starts, so walking from edge 1 meets
    // passages 1, 2, ..., 2n-1, 0
    for p in passages[1..].iter().chain(&passages[..1]) {
        if !p.over {
            let [_, b, _, _] = d.crossings()[p.crossing];
            w.push(Letter::new(arc_of(b), -d.sign(p.crossing)));
        }
    }
    let w = Word::from_letters(w);
    let correction = framing - w.exponent_sum();
    let longitude = w.concat(&meridian.pow(correction));
    Ok(GroupPresentation {
        n_generators,
        relators,
        meridian,
        longitude,
        framing,
    })
}

/// Number of Fox `n`-colorings: arc colors in `Z/n` with
/// `2 * over = in + out` at every crossing. Brute force over all colorings.
pub fn fox_colorings(d: &KnotDiagram, n: u64) -> u64 {
    if d.n_crossings() == 0 {
        return n;
    }
    let (arc, arcs) = arc_assignment(d);
    let arc_of = |label: u32| arc[label as usize - 1];
    let constraints: Vec<(usize, usize, usize)> = d
        .crossings()
        .iter()
        .map(|&[a, b, c, _]| (arc_of(a), arc_of(b), arc_of(c)))
        .collect();
    let mut colors = vec![0u64; arcs];
    let mut count = 0;
    loop {
        if constraints
            .iter()
            .all(|&(i, o, j)| (2 * colors[o]) % n == (colors[i] + colors[j]) % n)
        {
            count += 1;
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == arcs {
                return count;
            }
            colors[k] += 1;
            if colors[k] < n {
                break;
            }
            colors[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse_pd;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(
            free_reduce(&Word::raw(vec![Letter::new(0, 1), Letter::new(0, -1)])),
            Word::identity()
        );
        let raw = Word::raw(vec![
            Letter::new(0, 1),
            Letter::new(1, 1),
            Letter::new(1, -1),
            Letter::new(0, 1),
        ]);
        assert_eq!(free_reduce(&raw), w("a a"));
        assert_eq!(free_reduce(&free_reduce(&raw)), free_reduce(&raw));
    }

    #[test]
    fn unknot_presentation() {
        let p = wirtinger_presentation(&KnotDiagram::unknot(), 0).unwrap();
        assert_eq!(p.n_generators, 1);
        assert!(p.relators.is_empty());
        assert_eq!(p.meridian, w("a"));
        assert!(p.longitude.is_identity());
        let per = peripheral_set(&p);
        assert_eq!(per.meridian_inverse, w("A"));
    }

    #[test]
    fn trefoil_presentation() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let p = wirtinger_presentation(&d, 0).unwrap();
        assert_eq!(p.n_generators, 3);
        assert_eq!(p.relators.len(), 3);
        // arcs: a = {6,1}, b = {2,3}, c = {4,5}; first crossing gives b = c a C
        let expected = w("b").concat(&w("c a C").inverse());
        assert_eq!(p.relators[0], expected);
        assert_eq!(p.longitude.exponent_sum(), 0);
        let per = peripheral_set(&p);
        assert_eq!(per.meridian_inverse.len(), 1);
        assert_eq!(per.meridian_inverse.exponent_sum(), -1);
    }

    #[test]
    fn framing_shifts_longitude_by_meridian_power() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        for f in -3..=3 {
            let p = wirtinger_presentation(&d, f).unwrap();
            assert_eq!(p.longitude.exponent_sum(), f);
        }
    }

    #[test]
    fn text_roundtrip() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let p = wirtinger_presentation(&d, 2).unwrap();
        let text = p.to_string();
        assert!(text.starts_with("gens: 3; rel: "), "{text}");
        assert_eq!(text.parse::<GroupPresentation>().unwrap(), p);
        assert!("gens: 1; rel: b".parse::<GroupPresentation>().is_err());
    }

    #[test]
    fn big_generator_names() {
        let word = Word::raw(vec![Letter::new(30, 1), Letter::new(2, -1)]);
        assert_eq!(word.to_string(), "x31 C");
        assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
    }

    #[test]
    fn invalid_diagram_rejected() {
        let d = KnotDiagram::from_crossings(vec![[1, 2, 3, 4]]);
        assert!(wirtinger_presentation(&d, 0).is_err());
    }

    #[test]
    fn fox_three_colorings() {
        let trefoil = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(fox_colorings(&trefoil, 3), 9);
        assert_eq!(fox_colorings(&KnotDiagram::unknot(), 3), 3);
    }
}
