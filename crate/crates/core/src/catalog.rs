//! Small built-in knot diagrams.

use thiserror::Error;

use crate::knot::{parse_gauss, parse_pd, KnotDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown catalog knot {name:?} (known: {})", CATALOG.iter().map(|e| e.name).collect::<Vec<_>>().join(", "))]
pub struct UnknownKnot {
    pub name: String,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Knot type shared by every diagram of the same knot.
    pub knot: &'static str,
    pub code: Code,
}

#[derive(Debug, Clone, Copy)]
pub enum Code {
    Pd(&'static str),
    Gauss(&'static str),
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "unknot",
        knot: "unknot",
        code: Code::Pd("PD[]"),
    },
    // one-crossing kink
    CatalogEntry {
        name: "unknot-1x",
        knot: "unknot",
        code: Code::Gauss("O1+ U1+"),
    },
    CatalogEntry {
        name: "trefoil",
        knot: "trefoil",
        code: Code::Pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
    },
    // the trefoil with an extra kink
    CatalogEntry {
        name: "trefoil-4x",
        knot: "trefoil",
        code: Code::Gauss("O1+ U2+ O3+ U1+ O2+ U3+ O4- U4-"),
    },
    // the trefoil with a strand pushed over another (two extra crossings)
    CatalogEntry {
        name: "trefoil-5x",
        knot: "trefoil",
        code: Code::Gauss("O1+ O4+ O5- U2+ O3+ U1+ U5- U4+ O2+ U3+"),
    },
    CatalogEntry {
        name: "figure8",
        knot: "figure8",
        code: Code::Pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"),
    },
];

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry, UnknownKnot> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| UnknownKnot {
            name: name.to_string(),
        })
}

pub fn catalog_lookup(name: &str) -> Result<KnotDiagram, UnknownKnot> {
    let entry = catalog_entry(name)?;
    let d = match entry.code {
        Code::Pd(s) => parse_pd(s),
        Code::Gauss(s) => parse_gauss(s),
    };
    Ok(d.expect("catalog codes are valid"))
}
