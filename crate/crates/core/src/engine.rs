//! The string algebra over a finite quotient, the cord algebra specialized
//! at `μ = t`, and the checks relating them.

use num_bigint::BigInt;
use num_traits::Zero;

use cordalg_linalg::is_prime;

use crate::algebra::{m_brace, mu, mu_map, twisted_product, AlgebraElement, Domain, EngineError};
use crate::presented::{
    ambient_index, ambient_tags, twisted_table, Ideal, PresentedAlgebra, ProductTable, Route,
};
use crate::quotient::FiniteQuotient;

fn unit_vector(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::from(1);
    v
}

/// `[a] - [b]` in the ambient space.
fn difference(q: &FiniteQuotient, a: usize, b: usize) -> Vec<BigInt> {
    let dim = q.image_subgroup.len() + 1;
    let mut v = unit_vector(dim, ambient_index(q, a));
    v[ambient_index(q, b)] -= 1;
    v
}

/// `{[l^j x] - [x], [x l^j] - [x]}` over the longitude powers.
pub fn longitude_seeds(q: &FiniteQuotient) -> Vec<Vec<BigInt>> {
    let g = &q.group;
    let mut seeds = Vec::new();
    for &l in &q.peripheral_images() {
        for &x in &q.image_subgroup {
            seeds.push(difference(q, g.mul(l, x), x));
            seeds.push(difference(q, g.mul(x, l), x));
        }
    }
    seeds
}

/// `{[cx] - [xc]}` for a fixed element `c` of the image.
pub fn commutator_seeds(q: &FiniteQuotient, c: usize) -> Vec<Vec<BigInt>> {
    let g = &q.group;
    q.image_subgroup
        .iter()
        .map(|&x| difference(q, g.mul(c, x), g.mul(x, c)))
        .collect()
}

/// Ambient seeds `a ∗̃ [x] - [x] ∗̃ a` for an algebra element `a`.
fn twisted_commutator_seeds(q: &FiniteQuotient, a: &AlgebraElement) -> Vec<Vec<BigInt>> {
    q.image_subgroup
        .iter()
        .map(|&x| {
            let x = AlgebraElement::group(x, a.domain);
            let c = twisted_product(a, &x, q)
                .and_then(|ax| ax.sub(&twisted_product(&x, a, q)?))
                .expect("same domain");
            c.to_ambient(q).expect("image is closed")
        })
        .collect()
}

fn ast_seeds(q: &FiniteQuotient) -> Vec<Vec<BigInt>> {
    let mut seeds = longitude_seeds(q);
    seeds.extend(commutator_seeds(q, q.m_img));
    seeds
}

/// The string algebra: the unitalized twisted ring on the image subgroup
/// modulo the two-sided ideal of the longitude and meridian-commutator
/// relations.
pub fn build_ast(q: &FiniteQuotient, domain: Domain) -> PresentedAlgebra {
    PresentedAlgebra::from_seeds(
        Route::TwistedRing,
        domain,
        ambient_tags(q),
        twisted_table(q),
        &ast_seeds(q),
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MuReport {
    pub inverse: bool,
    pub central: bool,
    pub recursion: bool,
    pub failures: Vec<String>,
}

impl MuReport {
    pub fn ok(&self) -> bool {
        self.inverse && self.central && self.recursion
    }
}

/// Checks `f(μ) f(μ⁻¹) = 1`, centrality of `f(μ^k)` for `|k| <= 3`, and the
/// recursions `m{k+1} = m{k} ∗̃ (m{1} - 1)` (and the `m̄` analogue) for
/// `1 <= k <= |G|`, all inside `a`.
pub fn check_mu_structure(a: &PresentedAlgebra, q: &FiniteQuotient) -> MuReport {
    let d = a.domain;
    let amb = |x: &AlgebraElement| x.to_ambient(q).expect("image is closed");
    let zero_in_a = |x: &AlgebraElement| a.is_zero(&amb(x));
    let mut report = MuReport {
        inverse: true,
        central: true,
        recursion: true,
        failures: Vec::new(),
    };

    let prod = twisted_product(&mu_map(1, q, d), &mu_map(-1, q, d), q).expect("same domain");
    if !zero_in_a(&prod.sub(&AlgebraElement::one(d)).expect("same domain")) {
        report.inverse = false;
        report
            .failures
            .push(format!("f(mu) f(mu^-1) = {prod}, not 1"));
    }

    for k in -3i64..=3 {
        let f = amb(&mu_map(k, q, d));
        for i in 0..a.dimension() {
            let b = a.basis_vector(i);
            let lhs = a.mul(&f, &b);
            let rhs = a.mul(&b, &f);
            if lhs != rhs {
                report.central = false;
                report.failures.push(format!(
                    "f(mu^{k}) does not commute with {}",
                    a.ambient[a.basis[i]]
                ));
            }
        }
    }

    let order = q.group.order() as i64;
    for sign in [1i64, -1] {
        let step = m_brace(sign, q, d)
            .sub(&AlgebraElement::one(d))
            .expect("same domain");
        for k in 1..=order {
            let lhs = m_brace(sign * (k + 1), q, d);
            let rhs = twisted_product(&m_brace(sign * k, q, d), &step, q).expect("same domain");
            if !zero_in_a(&lhs.sub(&rhs).expect("same domain")) {
                report.recursion = false;
                let name = if sign > 0 { "m" } else { "mbar" };
                report
                    .failures
                    .push(format!("{name}{{{}}} recursion fails at k = {k}", k + 1));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealEqualityReport {
    pub meridian: bool,
    pub meridian_inverse: bool,
    pub meridian_rank: usize,
    pub meridian_inverse_rank: usize,
}

impl IdealEqualityReport {
    pub fn ok(&self) -> bool {
        self.meridian && self.meridian_inverse
    }
}

/// In the unitalized twisted ring (no longitude relations), compares the
/// ideal of `[mx] - [xm]` with that of `𝔢 ∗̃ [x] - [x] ∗̃ 𝔢`, and the ideal
/// of `[m̄x] - [xm̄]` with that of `m̄ ∗̃ [x] - [x] ∗̃ m̄`.
pub fn commutator_ideal_equality(q: &FiniteQuotient, domain: Domain) -> IdealEqualityReport {
    let table = twisted_table(q);
    let compare = |plain: Vec<Vec<BigInt>>, element: usize| {
        let twisted = twisted_commutator_seeds(q, &AlgebraElement::group(element, domain));
        let a = Ideal::closure(&table, domain, &plain);
        let b = Ideal::closure(&table, domain, &twisted);
        (a.echelon_rows() == b.echelon_rows(), a.rank())
    };
    let (meridian, meridian_rank) = compare(commutator_seeds(q, q.m_img), q.e_img());
    let (meridian_inverse, meridian_inverse_rank) =
        compare(commutator_seeds(q, q.minv_img), q.minv_img);
    IdealEqualityReport {
        meridian,
        meridian_inverse,
        meridian_rank,
        meridian_inverse_rank,
    }
}

/// Cord-relation product `[x][y] = [xy] + [xmy]`, read off as a rewriting
/// of length-two tensors.
pub fn cord_table(q: &FiniteQuotient) -> ProductTable {
    let g = &q.group;
    let elems = &q.image_subgroup;
    ProductTable::from_fn(elems.len() + 1, |i, j| {
        let (x, y) = (elems[i - 1], elems[j - 1]);
        let xy = g.mul(x, y);
        let xmy = g.mul(x, g.mul(q.m_img, y));
        vec![(ambient_index(q, xy), 1), (ambient_index(q, xmy), 1)]
    })
}

fn check_unit(p: u64, t: u64) -> Result<(), EngineError> {
    if !is_prime(p) {
        return Err(EngineError::NotPrime(p));
    }
    if t.is_multiple_of(p) {
        return Err(EngineError::NotAUnit { p, t });
    }
    Ok(())
}

/// The cord algebra over `F_p` with `μ = t`.
pub fn build_ang(q: &FiniteQuotient, p: u64, t: u64) -> Result<PresentedAlgebra, EngineError> {
    check_unit(p, t)?;
    let g = &q.group;
    let dim = q.image_subgroup.len() + 1;
    let t_big = BigInt::from(t % p);
    let scaled = |a: usize, x: usize| {
        let mut v = unit_vector(dim, ambient_index(q, a));
        v[ambient_index(q, x)] -= &t_big;
        v
    };
    let mut seeds = Vec::new();
    for &x in &q.image_subgroup {
        seeds.push(scaled(g.mul(q.m_img, x), x));
        seeds.push(scaled(g.mul(x, q.m_img), x));
    }
    seeds.extend(longitude_seeds(q));
    let mut pin = unit_vector(dim, ambient_index(q, q.e_img()));
    pin[0] -= BigInt::from(1) + &t_big;
    seeds.push(pin);
    Ok(PresentedAlgebra::from_seeds(
        Route::CordRelations,
        Domain::Prime(p),
        ambient_tags(q),
        cord_table(q),
        &seeds,
    ))
}

/// The string algebra over `F_p` with `𝔢 - 1 = t` imposed.
pub fn specialize_ast(q: &FiniteQuotient, p: u64, t: u64) -> Result<PresentedAlgebra, EngineError> {
    check_unit(p, t)?;
    let mut seeds = ast_seeds(q);
    let mut pin = mu(q, Domain::Prime(p)).to_ambient(q)?;
    pin[0] -= BigInt::from(t % p);
    seeds.push(pin);
    Ok(PresentedAlgebra::from_seeds(
        Route::TwistedRing,
        Domain::Prime(p),
        ambient_tags(q),
        twisted_table(q),
        &seeds,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationReport {
    pub p: u64,
    pub t: u64,
    pub identities: bool,
    pub ast_dim: usize,
    pub ang_dim: usize,
    pub tables_equal: bool,
    pub failures: Vec<String>,
}

impl SpecializationReport {
    pub fn ok(&self) -> bool {
        self.identities && self.ast_dim == self.ang_dim && self.tables_equal
    }
}

/// Checks, in the string algebra over `F_p`, that
/// `(𝔢 - 1) ∗̃ [x] = [mx]`, `(m̄ - 1) ∗̃ [x] = [m̄x]` and
/// `[e] = 1 + (𝔢 - 1)` for every image element `x`; then compares the
/// string algebra with `𝔢 - 1 = t` against the cord algebra at `μ = t`.
pub fn specialization_check(
    q: &FiniteQuotient,
    p: u64,
    t: u64,
) -> Result<SpecializationReport, EngineError> {
    check_unit(p, t)?;
    let d = Domain::Prime(p);
    let a = build_ast(q, d);
    let g = &q.group;
    let mut failures = Vec::new();
    let in_a = |x: AlgebraElement| a.is_zero(&x.to_ambient(q).expect("image is closed"));
    for &x in &q.image_subgroup {
        let bx = AlgebraElement::group(x, d);
        let first = twisted_product(&mu(q, d), &bx, q)?
            .sub(&AlgebraElement::group(g.mul(q.m_img, x), d))?;
        if !in_a(first) {
            failures.push(format!("mu[x] - [mx] fails at g{x}"));
        }
        let mbar = mu_map(-1, q, d);
        let second =
            twisted_product(&mbar, &bx, q)?.sub(&AlgebraElement::group(g.mul(q.minv_img, x), d))?;
        if !in_a(second) {
            failures.push(format!("mu^-1[x] - [mbar x] fails at g{x}"));
        }
    }
    let e = AlgebraElement::group(q.e_img(), d);
    let third = e.sub(&AlgebraElement::one(d).add(&mu(q, d))?)?;
    if !in_a(third) {
        failures.push("[e] - (1 + mu) does not vanish".into());
    }
    let spec = specialize_ast(q, p, t)?;
    let ang = build_ang(q, p, t)?;
    let tables_equal = spec.same_table(&ang);
    if !tables_equal {
        failures.push("structure constants differ".into());
    }
    Ok(SpecializationReport {
        p,
        t,
        identities: failures.iter().all(|f| f.starts_with("structure")),
        ast_dim: spec.dimension(),
        ang_dim: ang.dimension(),
        tables_equal,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::knot::parse_pd;
    use crate::quotient::{dedupe_up_to_conjugacy, enumerate_homs};
    use crate::wirtinger::wirtinger_presentation;
    use std::sync::Arc;

    fn unknot_cyclic(n: usize) -> FiniteQuotient {
        let g = Arc::new(make_group(&format!("cyc:{n}")).unwrap());
        let m = if n > 1 { 1 } else { 0 };
        FiniteQuotient::cyclic_image(g, m, 0)
    }

    fn trefoil_sym3() -> FiniteQuotient {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let p = wirtinger_presentation(&d, 0).unwrap();
        let g = Arc::new(make_group("sym:3").unwrap());
        let homs: Vec<_> = enumerate_homs(&p, &g, Some(1))
            .into_iter()
            .filter(|h| h.is_surjective())
            .collect();
        dedupe_up_to_conjugacy(&homs).remove(0)
    }

    #[test]
    fn trivial_group_algebra() {
        let q = unknot_cyclic(1);
        let a = build_ast(&q, Domain::Integers);
        assert_eq!(a.dimension(), 2);
        assert_eq!(a.z_rank(), Some(2));
        // 𝔢 ∗̃ 𝔢 = 2𝔢
        assert_eq!(a.structure_constant(1, 1), &vec![(1, BigInt::from(2))]);
    }

    #[test]
    fn unknot_cyclic_ranks() {
        for n in 1..=6 {
            let a = build_ast(&unknot_cyclic(n), Domain::Integers);
            assert_eq!(a.z_rank(), Some(n + 1));
            assert!(a.torsion().is_empty());
            assert!(a.check_unit() && a.check_associativity(0));
        }
    }

    #[test]
    fn mu_structure_on_unknot() {
        let q = unknot_cyclic(6);
        let a = build_ast(&q, Domain::Integers);
        let report = check_mu_structure(&a, &q);
        assert!(report.ok(), "{:?}", report.failures);
    }

    #[test]
    fn trefoil_ideals_agree() {
        let q = trefoil_sym3();
        for d in [Domain::Integers, Domain::Prime(3), Domain::Prime(5)] {
            let r = commutator_ideal_equality(&q, d);
            assert!(r.ok(), "{d}");
            assert!(r.meridian_rank > 0);
        }
    }

    #[test]
    fn ang_unknot_cyc3_table() {
        let q = unknot_cyclic(3);
        for t in 1..7 {
            let a = build_ang(&q, 7, t).unwrap();
            let expected = if [1, 2, 4, 6].contains(&t) { 1 } else { 0 };
            assert_eq!(a.dimension(), expected, "t = {t}");
        }
    }

    #[test]
    fn ang_rejects_zero_t() {
        let q = unknot_cyclic(2);
        assert!(matches!(
            build_ang(&q, 5, 0),
            Err(EngineError::NotAUnit { .. })
        ));
        assert!(matches!(build_ang(&q, 4, 1), Err(EngineError::NotPrime(4))));
    }

    #[test]
    fn ang_trivial_group() {
        assert_eq!(build_ang(&unknot_cyclic(1), 7, 1).unwrap().dimension(), 1);
    }

    #[test]
    fn specialization_matches_on_trefoil() {
        let q = trefoil_sym3();
        for p in [3u64, 5, 7] {
            for t in 1..p {
                let r = specialization_check(&q, p, t).unwrap();
                assert!(r.ok(), "p={p} t={t}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn mod_p_rank_matches_integer_invariants() {
        let q = trefoil_sym3();
        let z = build_ast(&q, Domain::Integers);
        let inv = z.invariants.clone().unwrap();
        for p in [2u64, 3, 5, 7] {
            let fp = build_ast(&q, Domain::Prime(p));
            assert_eq!(fp.dimension(), inv.dim_mod_p(p), "p = {p}");
        }
    }
}
