//! Planar diagram codes: PD and signed Gauss notation.
//!
//! A PD crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting at the incoming under-edge `a`; the under-strand runs `a -> c`.
//! After normalization edges are numbered `1..=2n` in the order they are met
//! when walking the knot, so edge `k` is followed by edge `k % 2n + 1`.
//!
//! Crossing sign: `+1` when the over-strand runs from slot `b` to slot `d`,
//! `-1` when it runs `d -> b`. Gauss tokens carry the same sign.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Slot positions inside a PD 4-tuple.
const UNDER_IN: usize = 0;
const OVER_B: usize = 1;
const UNDER_OUT: usize = 2;
const OVER_D: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    crossings: Vec<[u32; 4]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Diagram,
    Crossing(usize),
    Label(u32),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Diagram => write!(f, "diagram"),
            Location::Crossing(i) => write!(f, "crossing {}", i + 1),
            Location::Label(l) => write!(f, "label {l}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IssueCode {
    LabelMultiplicity,
    LabelRange,
    MultipleComponents,
    Orientation,
    LabelOrder,
}

impl IssueCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            IssueCode::LabelMultiplicity => "label-multiplicity",
            IssueCode::LabelRange => "label-range",
            IssueCode::MultipleComponents => "multiple-components",
            IssueCode::Orientation => "orientation",
            IssueCode::LabelOrder => "label-order",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub code: IssueCode,
    pub message: String,
    pub location: Location,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: {}",
            self.code.as_str(),
            self.location,
            self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    fn from_issues(mut issues: Vec<Issue>) -> Self {
        issues.sort_by_key(|a| (a.location, a.code));
        Self {
            ok: issues.is_empty(),
            issues,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("crossing {index} has {found} labels, expected 4")]
    Arity { index: usize, found: usize },
    #[error("crossing {index} is missing its {missing} occurrence")]
    MissingPartner { index: u32, missing: &'static str },
    #[error("crossing {index} has over sign {over} but under sign {under}")]
    SignMismatch { index: u32, over: char, under: char },
    #[error("crossing {index} occurs more than twice")]
    RepeatedCrossing { index: u32 },
    #[error("invalid diagram:\n{0}")]
    Invalid(ValidationReport),
}

/// One pass of the knot through a crossing, in traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

impl KnotDiagram {
    /// The 0-crossing unknot, `PD[]`.
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
        }
    }

    /// Wraps raw crossings without checking them; see [`validate`].
    pub fn from_crossings(crossings: Vec<[u32; 4]>) -> Self {
        Self { crossings }
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_edges(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    pub fn arc_labels(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.n_edges()
    }

    fn next_label(&self, l: u32) -> u32 {
        l % self.n_edges() + 1
    }

    /// Sign of crossing `i` (normalized diagrams only).
    pub fn sign(&self, i: usize) -> i8 {
        let [_, b, c, d] = self.crossings[i];
        if self.n_edges() == 2 {
            // b and d are each other's successor; edge c returns through d
            // exactly when the over-strand runs d -> b
            return if d == c { -1 } else { 1 };
        }
        if d == self.next_label(b) {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.n_crossings()).map(|i| self.sign(i)).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().map(|&s| s as i64).sum()
    }

    /// Crossing passages met by edge `k`'s starting point, for `k = 1..=2n`.
    pub fn traversal(&self) -> Vec<Passage> {
        let mut start_of: BTreeMap<u32, Passage> = BTreeMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            start_of.insert(
                x[UNDER_OUT],
                Passage {
                    crossing: i,
                    over: false,
                },
            );
            let over_out = if self.sign(i) > 0 {
                x[OVER_D]
            } else {
                x[OVER_B]
            };
            start_of.insert(
                over_out,
                Passage {
                    crossing: i,
                    over: true,
                },
            );
        }
        start_of.into_values().collect()
    }

    pub fn to_pd(&self) -> String {
        if self.crossings.is_empty() {
            return "PD[]".to_string();
        }
        self.crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Signed Gauss code, crossings numbered by first appearance from edge 1.
    pub fn to_gauss(&self) -> String {
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut tokens = Vec::new();
        for p in self.traversal() {
            let next = number.len() + 1;
            let k = *number.entry(p.crossing).or_insert(next);
            let sign = if self.sign(p.crossing) > 0 { '+' } else { '-' };
            tokens.push(format!("{}{}{}", if p.over { 'O' } else { 'U' }, k, sign));
        }
        tokens.join(" ")
    }

    /// Same diagram with crossings in sorted order.
    pub fn sorted(&self) -> Self {
        let mut crossings = self.crossings.clone();
        crossings.sort();
        Self { crossings }
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

/// Walk result on raw crossings.
struct Walk {
    components: usize,
    /// Edge labels in traversal order (single component only).
    edge_order: Vec<u32>,
    orientation_issue: Option<Location>,
}

fn walk(crossings: &[[u32; 4]]) -> Walk {
    let mut slots: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, x) in crossings.iter().enumerate() {
        for (q, &l) in x.iter().enumerate() {
            slots.entry(l).or_default().push((i, q));
        }
    }
    let partner = |(i, q): (usize, usize)| -> (usize, usize) {
        let l = crossings[i][q];
        *slots[&l]
            .iter()
            .find(|&&s| s != (i, q))
            .expect("label occurs twice")
    };

    let mut seen = vec![[false; 4]; crossings.len()];
    let mut components = 0;
    let mut edge_order = Vec::new();
    let mut orientation_issue = None;
    for i0 in 0..crossings.len() {
        for q0 in [UNDER_OUT, OVER_B, UNDER_IN, OVER_D] {
            if seen[i0][q0] {
                continue;
            }
            components += 1;
            // leave through (i0, q0); each step enters a crossing and exits opposite
            let mut out = (i0, q0);
            loop {
                seen[out.0][out.1] = true;
                if components == 1 {
                    edge_order.push(crossings[out.0][out.1]);
                }
                let inn = partner(out);
                seen[inn.0][inn.1] = true;
                if components == 1 && (inn.1 == UNDER_OUT || out.1 == UNDER_IN) {
                    orientation_issue.get_or_insert(Location::Crossing(inn.0.min(out.0)));
                }
                out = (inn.0, (inn.1 + 2) % 4);
                if out == (i0, q0) {
                    break;
                }
            }
        }
    }
    Walk {
        components,
        edge_order,
        orientation_issue,
    }
}

fn multiplicity_issue(crossings: &[[u32; 4]]) -> Option<Issue> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &l in crossings.iter().flatten() {
        *counts.entry(l).or_default() += 1;
    }
    let bad: Vec<(u32, usize)> = counts.into_iter().filter(|&(_, c)| c != 2).collect();
    let first = bad.first()?;
    let listing: Vec<String> = bad.iter().map(|(l, c)| format!("{l} (x{c})")).collect();
    Some(Issue {
        code: IssueCode::LabelMultiplicity,
        message: format!("labels must occur exactly twice: {}", listing.join(", ")),
        location: Location::Label(first.0),
    })
}

/// Structural checks that make sense before relabeling.
fn structural_issues(crossings: &[[u32; 4]]) -> (Vec<Issue>, Option<Walk>) {
    if let Some(issue) = multiplicity_issue(crossings) {
        return (vec![issue], None);
    }
    let w = walk(crossings);
    let mut issues = Vec::new();
    if w.components > 1 {
        issues.push(Issue {
            code: IssueCode::MultipleComponents,
            message: format!(
                "diagram has {} components; only knots are supported",
                w.components
            ),
            location: Location::Diagram,
        });
    } else if let Some(loc) = w.orientation_issue {
        issues.push(Issue {
            code: IssueCode::Orientation,
            message: "under-strands do not agree on a single orientation".into(),
            location: loc,
        });
    }
    (issues, Some(w))
}

/// Checks every diagram invariant. Issues are sorted by location.
pub fn validate(d: &KnotDiagram) -> ValidationReport {
    let crossings = d.crossings();
    let (mut issues, walk) = structural_issues(crossings);
    if issues.is_empty() && !crossings.is_empty() {
        let n = d.n_edges();
        if let Some(&l) = crossings.iter().flatten().find(|&&l| l == 0 || l > n) {
            issues.push(Issue {
                code: IssueCode::LabelRange,
                message: format!("labels must lie in 1..={n}"),
                location: Location::Label(l),
            });
        } else if let Some(w) = walk {
            // traversal order must be 1, 2, ..., 2n up to rotation
            let order = &w.edge_order;
            let rotated = order.iter().position(|&l| l == 1).map(|s| {
                order[s..]
                    .iter()
                    .chain(&order[..s])
                    .copied()
                    .collect::<Vec<_>>()
            });
            let sequential = rotated.is_some_and(|r| r.iter().copied().eq(1..=n));
            if !sequential {
                issues.push(Issue {
                    code: IssueCode::LabelOrder,
                    message: "edge labels do not increase along the knot".into(),
                    location: Location::Diagram,
                });
            }
        }
    }
    ValidationReport::from_issues(issues)
}

/// Relabels edges `1..=2n` along the orientation, starting from the smallest
/// input label. Requires a structurally valid diagram.
fn normalize(crossings: Vec<[u32; 4]>, edge_order: &[u32]) -> KnotDiagram {
    let start = edge_order
        .iter()
        .enumerate()
        .min_by_key(|&(_, l)| *l)
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut relabel = BTreeMap::new();
    for (k, &l) in edge_order[start..]
        .iter()
        .chain(&edge_order[..start])
        .enumerate()
    {
        relabel.insert(l, k as u32 + 1);
    }
    let crossings = crossings
        .into_iter()
        .map(|x| x.map(|l| relabel[&l]))
        .collect();
    KnotDiagram { crossings }
}

fn from_raw(crossings: Vec<[u32; 4]>) -> Result<KnotDiagram, CodecError> {
    let (issues, walk) = structural_issues(&crossings);
    if !issues.is_empty() {
        return Err(CodecError::Invalid(ValidationReport::from_issues(issues)));
    }
    let d = match walk {
        Some(w) if !crossings.is_empty() => normalize(crossings, &w.edge_order),
        _ => KnotDiagram::unknot(),
    };
    debug_assert!(validate(&d).ok, "{}", validate(&d));
    Ok(d)
}

/// Parses `X[a,b,c,d]` terms (or `PD[]`), validates, and normalizes labels.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, CodecError> {
    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix("PD[") {
        body = rest.strip_suffix(']').ok_or_else(|| CodecError::Syntax {
            offset: text.len(),
            message: "unterminated PD[".into(),
        })?;
    }
    let base = body.as_ptr() as usize - text.as_ptr() as usize;
    let bytes = body.as_bytes();
    let mut crossings = Vec::new();
    let mut pos = 0;
    let syntax = |offset: usize, message: &str| CodecError::Syntax {
        offset: base + offset,
        message: message.to_string(),
    };
    loop {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'X' {
            return Err(syntax(pos, "expected X[...]"));
        }
        pos += 1;
        if bytes.get(pos) != Some(&b'[') {
            return Err(syntax(pos, "expected '[' after X"));
        }
        let close = body[pos..]
            .find(']')
            .map(|c| pos + c)
            .ok_or_else(|| syntax(pos, "unterminated X["))?;
        let mut labels = Vec::new();
        for part in body[pos + 1..close].split(',') {
            let part = part.trim();
            let label: u32 = part
                .parse()
                .map_err(|_| syntax(pos + 1, &format!("bad label {part:?}")))?;
            if label == 0 {
                return Err(syntax(pos + 1, "labels are positive"));
            }
            labels.push(label);
        }
        let tuple: [u32; 4] = labels
            .as_slice()
            .try_into()
            .map_err(|_| CodecError::Arity {
                index: crossings.len() + 1,
                found: labels.len(),
            })?;
        crossings.push(tuple);
        pos = close + 1;
    }
    from_raw(crossings)
}

/// Parses a signed Gauss code such as `O1+ U2+ O3+ U1+ O2+ U3+`
/// (`O+1` style tokens are accepted too).
pub fn parse_gauss(text: &str) -> Result<KnotDiagram, CodecError> {
    struct Token {
        over: bool,
        index: u32,
        sign: char,
    }
    let mut tokens = Vec::new();
    let mut offset = 0;
    for raw in text.split(|c: char| c.is_whitespace() || c == ',') {
        let at = offset;
        offset += raw.len() + 1;
        if raw.is_empty() {
            continue;
        }
        let bad = || CodecError::Syntax {
            offset: at,
            message: format!("bad Gauss token {raw:?}"),
        };
        let mut chars = raw.chars();
        let over = match chars.next() {
            Some('O' | 'o') => true,
            Some('U' | 'u') => false,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (digits, sign) = if let Some(d) = rest.strip_suffix(['+', '-']) {
            (d, rest.chars().last().unwrap())
        } else if let Some(d) = rest.strip_prefix(['+', '-']) {
            (d, rest.chars().next().unwrap())
        } else {
            return Err(bad());
        };
        let index: u32 = digits.parse().map_err(|_| bad())?;
        tokens.push(Token { over, index, sign });
    }

    // passage j has incoming edge j (edge 2n for j = 0) and outgoing edge j + 1
    let total = tokens.len() as u32;
    let in_edge = |j: usize| if j == 0 { total } else { j as u32 };
    let out_edge = |j: usize| j as u32 + 1;

    let mut by_index: BTreeMap<u32, (Option<usize>, Option<usize>)> = BTreeMap::new();
    for (j, t) in tokens.iter().enumerate() {
        let entry = by_index.entry(t.index).or_default();
        let slot = if t.over { &mut entry.0 } else { &mut entry.1 };
        if slot.replace(j).is_some() {
            return Err(CodecError::RepeatedCrossing { index: t.index });
        }
    }
    let mut crossings = Vec::new();
    for (&index, &(over, under)) in &by_index {
        let (o, u) = match (over, under) {
            (Some(o), Some(u)) => (o, u),
            (None, _) => {
                return Err(CodecError::MissingPartner {
                    index,
                    missing: "over",
                })
            }
            (_, None) => {
                return Err(CodecError::MissingPartner {
                    index,
                    missing: "under",
                })
            }
        };
        if tokens[o].sign != tokens[u].sign {
            return Err(CodecError::SignMismatch {
                index,
                over: tokens[o].sign,
                under: tokens[u].sign,
            });
        }
        let (a, c) = (in_edge(u), out_edge(u));
        let x = if tokens[o].sign == '+' {
            [a, in_edge(o), c, out_edge(o)]
        } else {
            [a, out_edge(o), c, in_edge(o)]
        };
        crossings.push(x);
    }
    from_raw(crossings)
}
