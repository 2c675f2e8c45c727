//! Toric ideals of simplicial semigroups given by a generator matrix whose
//! last `d` columns are scaled coordinate vectors.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{reduced_groebner_basis, reduced_groebner_basis_with, BuchbergerOptions, GroebnerBasis};
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, WeightVector};

/// A `d × n` matrix of naturals with columns `a_1, …, a_n`, where
/// `a_{n-d+i}` is a positive multiple of the `i`-th unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricPresentation {
    rows: Vec<Vec<u32>>,
    weights: WeightVector,
    homogeneous_degree: Option<u64>,
}

impl ToricPresentation {
    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// Row-major entries.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn column(&self, i: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.n()).map(|i| self.column(i)).collect()
    }

    /// Column sums `|a_i|`.
    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Scales of the last `d` columns.
    pub fn extremal_scales(&self) -> Vec<u32> {
        let (n, d) = (self.n(), self.d());
        (0..d).map(|i| self.rows[i][n - d + i]).collect()
    }

    /// The common column sum, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        self.homogeneous_degree
    }

    /// The polynomial ring `k[x_1, …, x_n]` with the weighted reverse
    /// lexicographic order for these weights.
    pub fn ring<K: Field>(&self, field: K) -> PolyRing<K> {
        PolyRing::new(field, MonomialOrder::OmegaRevLex(self.weights.clone())).expect("valid order")
    }
}

/// Checks the normal form and derives weights.
pub fn validate_presentation(matrix: &[Vec<u32>]) -> Result<ToricPresentation> {
    let d = matrix.len();
    if d == 0 {
        return Err(Error::NotSimplicialNormalForm(String::from("matrix has no rows")));
    }
    let n = matrix[0].len();
    for r in matrix {
        if r.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: r.len() });
        }
    }
    if n < d {
        return Err(Error::NotSimplicialNormalForm(format!("{} columns but {} rows", n, d)));
    }
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let s: u64 = matrix.iter().map(|r| r[i] as u64).sum();
        if s == 0 {
            return Err(Error::ZeroColumn(i));
        }
        weights.push(u32::try_from(s).map_err(|_| Error::ExponentOverflow)?);
    }
    for i in 0..d {
        let c = n - d + i;
        for (k, r) in matrix.iter().enumerate() {
            if (k == i) != (r[c] != 0) {
                return Err(Error::NotSimplicialNormalForm(format!(
                    "column {} is not a positive multiple of unit vector {}",
                    c + 1,
                    i + 1
                )));
            }
        }
    }
    let hd = if weights.iter().all(|&w| w == weights[0]) { Some(weights[0] as u64) } else { None };
    Ok(ToricPresentation { rows: matrix.to_vec(), weights: WeightVector::new(weights)?, homogeneous_degree: hd })
}

/// `𝒜·α`.
pub fn multidegree(alpha: &[u32], p: &ToricPresentation) -> Result<Vec<u64>> {
    if alpha.len() != p.n() {
        return Err(Error::LengthMismatch { expected: p.n(), found: alpha.len() });
    }
    Ok(p.rows
        .iter()
        .map(|r| r.iter().zip(alpha).map(|(&a, &e)| a as u64 * e as u64).sum())
        .collect())
}

/// How the parameters are eliminated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Weighted degree first, then total degree in the parameters, then
    /// reverse lexicographic; valid here because the input is homogeneous.
    #[default]
    Graded,
    /// Parameters block before variables block.
    Block,
}

/// The reduced Gröbner basis of `I_𝒜` under the ring order of
/// [`ToricPresentation::ring`].
pub fn toric_groebner_basis<K: Field>(p: &ToricPresentation, field: K) -> GroebnerBasis<K> {
    toric_groebner_basis_with(p, field, EliminationOrder::Graded)
}

pub fn toric_groebner_basis_with<K: Field>(
    p: &ToricPresentation,
    field: K,
    strategy: EliminationOrder,
) -> GroebnerBasis<K> {
    let (n, d) = (p.n(), p.d());
    let ring = p.ring(field.clone());
    let mut wts = vec![1u32; d];
    wts.extend_from_slice(p.weights.weights());
    let wts = WeightVector::new(wts).expect("positive");
    let order = match strategy {
        EliminationOrder::Graded => MonomialOrder::Elimination { split: d, weights: wts.clone() },
        EliminationOrder::Block => MonomialOrder::Block {
            split: d,
            first: Box::new(MonomialOrder::degrevlex(d)),
            second: Box::new(MonomialOrder::OmegaRevLex(p.weights.clone())),
        },
    };
    let mut names: Vec<String> = (1..=d).map(|i| format!("t{}", i)).collect();
    names.extend((1..=n).map(|i| format!("x{}", i)));
    let big = PolyRing::with_names(field.clone(), order, names).expect("valid ring");
    let mut gens = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0u32; n + d];
        e[d + i] = 1;
        let x = Monomial::new(e);
        let mut t = vec![0u32; n + d];
        for k in 0..d {
            t[k] = p.rows[k][i];
        }
        gens.push(big.from_terms(vec![(field.one(), x), (field.neg(&field.one()), Monomial::new(t))]));
    }
    let gb = reduced_groebner_basis_with(&big, &gens, &BuchbergerOptions { sugar_weights: Some(wts) });
    let down: Vec<Option<usize>> = (0..d).map(|_| None).chain((0..n).map(Some)).collect();
    let kept: Vec<Polynomial<K::Elem>> =
        gb.elements().iter().filter_map(|g| big.map_vars(g, &ring, &down)).collect();
    reduced_groebner_basis(&ring, &kept)
}

/// Binomial generators of `I_𝒜`.
pub fn toric_ideal<K: Field>(p: &ToricPresentation, field: K) -> Vec<Polynomial<K::Elem>> {
    toric_groebner_basis(p, field).into_elements()
}

/// Decides `𝒜β − 𝒜γ ∈ 𝒮` by testing `x^β ∈ I_𝒜 + ⟨x^γ⟩`.
pub fn semigroup_contains<K: Field>(gb: &GroebnerBasis<K>, beta: &Monomial, gamma: &Monomial) -> bool {
    let ring = gb.ring();
    let ext = gb.extend(&[ring.monomial(ring.field().one(), gamma.clone())]);
    ext.contains(&ring.monomial(ring.field().one(), beta.clone()))
}

/// Whether `f` is a binomial `x^α − x^β` (or a monomial) with the two terms
/// sharing a multidegree.
pub fn is_homogeneous_binomial<E>(f: &Polynomial<E>, p: &ToricPresentation) -> bool {
    match f.terms() {
        [_] => true,
        [a, b] => multidegree(a.mono.exps(), p).ok() == multidegree(b.mono.exps(), p).ok(),
        _ => false,
    }
}
