//! Invariant profiles: string-algebra data over every finite quotient of a
//! knot group into a list of groups.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use cordalg_linalg::is_prime;

use crate::algebra::Domain;
use crate::catalog::UnknownKnot;
use crate::engine::{build_ast, specialize_ast};
use crate::group::{make_group, GroupError};
use crate::knot::KnotDiagram;
use crate::quotient::{dedupe_up_to_conjugacy, enumerate_homs, orbit_size, FiniteQuotient};
use crate::wirtinger::{wirtinger_presentation, PresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    UnknownKnot(#[from] UnknownKnot),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// One conjugacy class of homomorphisms. Group elements are indices in the
/// group's fixed enumeration; the meridian and longitude images are the
/// lexicographically least simultaneous conjugate of the pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientProfile {
    pub group: String,
    pub meridian: usize,
    pub longitude: usize,
    pub image_order: usize,
    pub surjective: bool,
    pub orbit_size: usize,
    pub z_rank: usize,
    pub torsion: Vec<u64>,
    /// `"p,t"` to the dimension of the string algebra over `F_p` at `μ = t`.
    pub specializations: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub knot: String,
    pub framing: i64,
    pub quotients: Vec<QuotientProfile>,
}

impl InvariantProfile {
    /// Compact JSON with sorted keys.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("profile serializes");
        serde_json::to_string(&value).expect("value serializes")
    }
}

fn canonical_peripheral(q: &FiniteQuotient) -> (usize, usize) {
    let g = &q.group;
    (0..g.order())
        .map(|c| (g.conj(c, q.m_img), g.conj(c, q.l_img)))
        .min()
        .expect("nonempty group")
}

pub fn quotient_profile(q: &FiniteQuotient, primes: &[u64]) -> QuotientProfile {
    let z = build_ast(q, Domain::Integers);
    let inv = z.invariants.clone().unwrap_or_default();
    let tasks: Vec<(u64, u64)> = primes
        .iter()
        .flat_map(|&p| (1..p).map(move |t| (p, t)))
        .collect();
    let specializations = tasks
        .par_iter()
        .map(|&(p, t)| {
            let a = specialize_ast(q, p, t).expect("p prime and t a unit");
            (format!("{p},{t}"), a.dimension())
        })
        .collect();
    let (meridian, longitude) = canonical_peripheral(q);
    QuotientProfile {
        group: q.group.name().to_string(),
        meridian,
        longitude,
        image_order: q.image_subgroup.len(),
        surjective: q.is_surjective(),
        orbit_size: orbit_size(q),
        z_rank: inv.free_rank,
        torsion: inv
            .torsion
            .iter()
            .map(|d| d.to_u64().expect("torsion factor fits in u64"))
            .collect(),
        specializations,
    }
}

/// Deduped quotients of the knot group into each group in `specs`.
pub fn deduped_quotients(
    d: &KnotDiagram,
    specs: &[String],
    framing: i64,
) -> Result<Vec<FiniteQuotient>, ProfileError> {
    let p = wirtinger_presentation(d, framing)?;
    let mut out = Vec::new();
    for spec in specs {
        let g = Arc::new(make_group(spec)?);
        out.extend(dedupe_up_to_conjugacy(&enumerate_homs(&p, &g, None)));
    }
    Ok(out)
}

pub fn invariant_profile(
    knot: &str,
    d: &KnotDiagram,
    specs: &[String],
    primes: &[u64],
    framing: i64,
) -> Result<InvariantProfile, ProfileError> {
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(ProfileError::NotPrime(p));
    }
    let quotients = deduped_quotients(d, specs, framing)?;
    let mut entries: Vec<QuotientProfile> = quotients
        .par_iter()
        .map(|q| quotient_profile(q, primes))
        .collect();
    entries.sort();
    Ok(InvariantProfile {
        knot: knot.to_string(),
        framing,
        quotients: entries,
    })
}
