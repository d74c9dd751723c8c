//! Elements of the unitalized group ring `Z ⊕ Z[G]` (or its reduction mod p)
//! and the product twisted by `[e] + [m]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use cordalg_linalg::is_prime;

use crate::quotient::FiniteQuotient;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domain {
    Integers,
    Prime(u64),
}

impl Domain {
    pub fn prime(p: u64) -> Result<Self, EngineError> {
        if is_prime(p) {
            Ok(Domain::Prime(p))
        } else {
            Err(EngineError::NotPrime(p))
        }
    }

    pub fn reduce(&self, c: BigInt) -> BigInt {
        match self {
            Domain::Integers => c,
            Domain::Prime(p) => c.mod_floor(&BigInt::from(*p)),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => write!(f, "Z"),
            Domain::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("t = {t} is not a unit mod {p}")]
    NotAUnit { p: u64, t: u64 },
    #[error("group element {0} lies outside the image subgroup")]
    OutsideImage(usize),
}

/// `unit_coeff * 1 + Σ c_g [g]`, with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub unit_coeff: BigInt,
    pub group_coeffs: BTreeMap<usize, BigInt>,
    pub domain: Domain,
}

impl AlgebraElement {
    pub fn zero(domain: Domain) -> Self {
        Self {
            unit_coeff: BigInt::zero(),
            group_coeffs: BTreeMap::new(),
            domain,
        }
    }

    pub fn one(domain: Domain) -> Self {
        Self::scalar(1, domain)
    }

    pub fn scalar(c: impl Into<BigInt>, domain: Domain) -> Self {
        Self {
            unit_coeff: domain.reduce(c.into()),
            group_coeffs: BTreeMap::new(),
            domain,
        }
        .normalized()
    }

    /// The basis element `[g]`.
    pub fn group(g: usize, domain: Domain) -> Self {
        Self::zero(domain).plus_group(g, BigInt::one())
    }

    pub fn from_terms(unit: impl Into<BigInt>, terms: &[(usize, i64)], domain: Domain) -> Self {
        let mut x = Self::scalar(unit, domain);
        for &(g, c) in terms {
            x = x.plus_group(g, BigInt::from(c));
        }
        x
    }

    fn plus_group(mut self, g: usize, c: BigInt) -> Self {
        let entry = self.group_coeffs.entry(g).or_insert_with(BigInt::zero);
        *entry = self.domain.reduce(&*entry + c);
        if entry.is_zero() {
            self.group_coeffs.remove(&g);
        }
        self
    }

    fn normalized(mut self) -> Self {
        let d = self.domain;
        self.unit_coeff = d.reduce(std::mem::take(&mut self.unit_coeff));
        self.group_coeffs = std::mem::take(&mut self.group_coeffs)
            .into_iter()
            .map(|(g, c)| (g, d.reduce(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.unit_coeff.is_zero() && self.group_coeffs.is_empty()
    }

    pub fn coeff(&self, g: usize) -> BigInt {
        self.group_coeffs.get(&g).cloned().unwrap_or_default()
    }

    fn check_domain(&self, other: &Self) -> Result<(), EngineError> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(EngineError::DomainMismatch(self.domain, other.domain))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        self.check_domain(other)?;
        let mut out = self.clone();
        out.unit_coeff = self.domain.reduce(&out.unit_coeff + &other.unit_coeff);
        for (&g, c) in &other.group_coeffs {
            out = out.plus_group(g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EngineError> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            unit_coeff: &self.unit_coeff * c,
            group_coeffs: self.group_coeffs.iter().map(|(&g, x)| (g, x * c)).collect(),
            domain: self.domain,
        }
        .normalized()
    }

    /// Coordinates in the ambient basis `{1} ∪ image` of `q`.
    pub fn to_ambient(&self, q: &FiniteQuotient) -> Result<Vec<BigInt>, EngineError> {
        let mut v = vec![BigInt::zero(); q.image_subgroup.len() + 1];
        v[0] = self.unit_coeff.clone();
        for (&g, c) in &self.group_coeffs {
            let i = q
                .image_subgroup
                .binary_search(&g)
                .map_err(|_| EngineError::OutsideImage(g))?;
            v[i + 1] = c.clone();
        }
        Ok(v)
    }

    pub fn from_ambient(v: &[BigInt], q: &FiniteQuotient, domain: Domain) -> Self {
        let mut x = Self::scalar(v[0].clone(), domain);
        for (i, c) in v[1..].iter().enumerate() {
            if !c.is_zero() {
                x = x.plus_group(q.image_subgroup[i], c.clone());
            }
        }
        x
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.unit_coeff.is_zero() {
            terms.push((self.unit_coeff.clone(), "1".to_string()));
        }
        for (g, c) in &self.group_coeffs {
            terms.push((c.clone(), format!("[g{g}]")));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, name)) in terms.iter().enumerate() {
            let mag = c.abs();
            let body = match (name.as_str(), mag.is_one()) {
                ("1", _) => mag.to_string(),
                (_, true) => name.clone(),
                _ => format!("{mag}{name}"),
            };
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// `x ∗̃ y`: `[g] ∗̃ [h] = [gh] + [gmh]`, with the formal unit a two-sided
/// identity (`(a, r)(b, s) = (ab, as + br + r∗̃s)`).
pub fn twisted_product(
    x: &AlgebraElement,
    y: &AlgebraElement,
    q: &FiniteQuotient,
) -> Result<AlgebraElement, EngineError> {
    x.check_domain(y)?;
    let g = &q.group;
    let mut out = AlgebraElement::scalar(&x.unit_coeff * &y.unit_coeff, x.domain);
    for (&h, c) in &y.group_coeffs {
        out = out.plus_group(h, &x.unit_coeff * c);
    }
    for (&h, c) in &x.group_coeffs {
        out = out.plus_group(h, &y.unit_coeff * c);
    }
    for (&a, ca) in &x.group_coeffs {
        for (&b, cb) in &y.group_coeffs {
            let c = ca * cb;
            out = out.plus_group(g.mul(a, b), c.clone());
            out = out.plus_group(g.mul(g.mul(a, q.m_img), b), c);
        }
    }
    Ok(out)
}

/// `𝔢 - 1`, the image of `μ`.
pub fn mu(q: &FiniteQuotient, domain: Domain) -> AlgebraElement {
    AlgebraElement::from_terms(-1, &[(q.e_img(), 1)], domain)
}

/// `m̄ - 1`, the image of `μ⁻¹`.
pub fn mu_inverse(q: &FiniteQuotient, domain: Domain) -> AlgebraElement {
    AlgebraElement::from_terms(-1, &[(q.minv_img, 1)], domain)
}

/// Image of `μ^k` in the twisted ring.
pub fn mu_map(k: i64, q: &FiniteQuotient, domain: Domain) -> AlgebraElement {
    let base = if k >= 0 {
        mu(q, domain)
    } else {
        mu_inverse(q, domain)
    };
    let mut acc = AlgebraElement::one(domain);
    for _ in 0..k.unsigned_abs() {
        acc = twisted_product(&acc, &base, q).expect("same domain");
    }
    acc
}

/// `m{k}`: `1` for `k = 0`, `[m^(k-1)]` for `k > 0`, and `m̄{|k|} = [m̄^|k|]`
/// for `k < 0`.
pub fn m_brace(k: i64, q: &FiniteQuotient, domain: Domain) -> AlgebraElement {
    if k == 0 {
        return AlgebraElement::one(domain);
    }
    let g = if k > 0 {
        q.group.pow(q.m_img, k - 1)
    } else {
        q.group.pow(q.minv_img, -k)
    };
    AlgebraElement::group(g, domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use std::sync::Arc;

    fn cyclic(n: usize) -> FiniteQuotient {
        let g = Arc::new(make_group(&format!("cyc:{n}")).unwrap());
        let m = if n > 1 { 1 } else { 0 };
        FiniteQuotient::cyclic_image(g, m, 0)
    }

    #[test]
    fn cyc2_e_squared() {
        let q = cyclic(2);
        let e = AlgebraElement::group(0, Domain::Integers);
        let ee = twisted_product(&e, &e, &q).unwrap();
        assert_eq!(
            ee,
            AlgebraElement::from_terms(0, &[(0, 1), (1, 1)], Domain::Integers)
        );
    }

    #[test]
    fn mu_times_mu_inverse_is_one() {
        for n in 1..=6 {
            let q = cyclic(n);
            let d = Domain::Integers;
            let prod = twisted_product(&mu(&q, d), &mu_inverse(&q, d), &q).unwrap();
            assert_eq!(prod, AlgebraElement::one(d), "cyc:{n}");
        }
    }

    #[test]
    fn unit_is_two_sided() {
        let q = cyclic(4);
        let d = Domain::Prime(5);
        let x = AlgebraElement::from_terms(3, &[(1, 2), (3, 4)], d);
        let one = AlgebraElement::one(d);
        assert_eq!(twisted_product(&one, &x, &q).unwrap(), x);
        assert_eq!(twisted_product(&x, &one, &q).unwrap(), x);
    }

    #[test]
    fn mu_squared_in_cyc2() {
        let q = cyclic(2);
        let d = Domain::Integers;
        assert_eq!(
            mu_map(2, &q, d),
            AlgebraElement::from_terms(1, &[(1, 1), (0, -1)], d)
        );
        assert_eq!(mu_map(1, &q, d), mu(&q, d));
        assert_eq!(mu_map(0, &q, d), AlgebraElement::one(d));
    }

    #[test]
    fn closed_form_alternating_sum() {
        let q = cyclic(5);
        let d = Domain::Integers;
        for k in -7i64..=7 {
            let mut expected = AlgebraElement::zero(d);
            for i in 0..=k.abs() {
                let sign = if (k.abs() - i) % 2 == 0 { 1 } else { -1 };
                let term = m_brace(i * k.signum(), &q, d).scale(&BigInt::from(sign));
                expected = expected.add(&term).unwrap();
            }
            assert_eq!(mu_map(k, &q, d), expected, "k = {k}");
        }
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let q = cyclic(2);
        let a = AlgebraElement::one(Domain::Integers);
        let b = AlgebraElement::one(Domain::Prime(3));
        assert!(matches!(
            twisted_product(&a, &b, &q),
            Err(EngineError::DomainMismatch(..))
        ));
    }

    #[test]
    fn display() {
        let d = Domain::Integers;
        assert_eq!(
            AlgebraElement::from_terms(-1, &[(0, 1)], d).to_string(),
            "-1 + [g0]"
        );
        assert_eq!(AlgebraElement::zero(d).to_string(), "0");
        assert_eq!(
            AlgebraElement::from_terms(0, &[(2, 3), (4, -1)], d).to_string(),
            "3[g2] - [g4]"
        );
    }
}
