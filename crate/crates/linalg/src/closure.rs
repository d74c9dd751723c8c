use num_bigint::BigInt;

use crate::{IntLattice, ModPSpan, PrimeField};

/// A bilinear product on a finite-rank free module, exposed through
/// multiplication by the generators of the algebra on either side.
pub trait Multiply<T> {
    fn dim(&self) -> usize;

    /// Indices of the algebra generators the closure multiplies by.
    fn generators(&self) -> Vec<usize>;

    /// `gen * v`
    fn left(&self, gen: usize, v: &[T]) -> Vec<T>;

    /// `v * gen`
    fn right(&self, v: &[T], gen: usize) -> Vec<T>;
}

/// Smallest two-sided ideal over `F_p` containing `seeds`.
///
/// Worklist fixpoint: every vector that enlarged the span is multiplied on
/// both sides by every generator exactly once. Since the accepted vectors
/// span the result, that is enough for closure.
pub fn span_closure_mod_p<M: Multiply<u64> + ?Sized>(
    field: PrimeField,
    seeds: &[Vec<u64>],
    mul: &M,
) -> ModPSpan {
    let mut span = ModPSpan::new(field, mul.dim());
    let mut queue = Vec::new();
    for s in seeds {
        if span.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    let gens = mul.generators();
    while let Some(v) = queue.pop() {
        if span.rank() == span.dim() {
            break;
        }
        for &g in &gens {
            for w in [mul.left(g, &v), mul.right(&v, g)] {
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
    }
    span
}

/// Smallest two-sided ideal over `Z` containing `seeds`, as an HNF lattice.
/// The lattice is not saturated: torsion in the quotient is kept.
pub fn span_closure_int<M: Multiply<BigInt> + ?Sized>(
    seeds: &[Vec<BigInt>],
    mul: &M,
) -> IntLattice {
    let mut lattice = IntLattice::new(mul.dim());
    let mut queue = Vec::new();
    for s in seeds {
        if lattice.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    let gens = mul.generators();
    while let Some(v) = queue.pop() {
        for &g in &gens {
            for w in [mul.left(g, &v), mul.right(&v, g)] {
                if lattice.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
    }
    lattice
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// Z[x]/(x^3) on basis 1, x, x^2; generator x.
    struct Truncated;

    impl Truncated {
        fn shift<T: Clone + Zero>(v: &[T]) -> Vec<T> {
            let mut out = vec![T::zero(); 3];
            out[1] = v[0].clone();
            out[2] = v[1].clone();
            out
        }
    }

    impl Multiply<u64> for Truncated {
        fn dim(&self) -> usize {
            3
        }
        fn generators(&self) -> Vec<usize> {
            vec![1]
        }
        fn left(&self, _: usize, v: &[u64]) -> Vec<u64> {
            Self::shift(v)
        }
        fn right(&self, v: &[u64], _: usize) -> Vec<u64> {
            Self::shift(v)
        }
    }

    impl Multiply<BigInt> for Truncated {
        fn dim(&self) -> usize {
            3
        }
        fn generators(&self) -> Vec<usize> {
            vec![1]
        }
        fn left(&self, _: usize, v: &[BigInt]) -> Vec<BigInt> {
            Self::shift(v)
        }
        fn right(&self, v: &[BigInt], _: usize) -> Vec<BigInt> {
            Self::shift(v)
        }
    }

    #[test]
    fn zero_seed_gives_zero_ideal() {
        let f = PrimeField::new(5).unwrap();
        let span = span_closure_mod_p(f, &[vec![0, 0, 0]], &Truncated);
        assert_eq!(span.rank(), 0);
    }

    #[test]
    fn ideal_generated_by_x() {
        let f = PrimeField::new(5).unwrap();
        let span = span_closure_mod_p(f, &[vec![0, 1, 0]], &Truncated);
        assert_eq!(span.pivots(), &[1, 2]);
    }

    #[test]
    fn unit_seed_gives_everything() {
        let f = PrimeField::new(5).unwrap();
        let span = span_closure_mod_p(f, &[vec![1, 0, 0]], &Truncated);
        assert_eq!(span.rank(), 3);
    }

    #[test]
    fn integer_ideal_keeps_torsion() {
        // (2x) in Z[x]/(x^3): quotient Z ⊕ Z/2 ⊕ Z/2
        let seed = vec![BigInt::zero(), BigInt::from(2), BigInt::zero()];
        let l = span_closure_int(&[seed], &Truncated);
        let inv = l.quotient_invariants();
        assert_eq!(inv.free_rank, 1);
        assert_eq!(inv.torsion, vec![BigInt::from(2), BigInt::from(2)]);
    }
}
