use super::{realize, realize_diagonal_tr, BasisVector, K3Error, K3Model, TensorClass};
use crate::algebra::{Monomial, Polynomial, RatMatrix, Rational};
use crate::bv::{self, KIND_D};
use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// `p_{1*}(M · p_2^* η)` on `S^s × S^s`, with every `D(i,j)` in `M` read as
/// the transcendental part of the diagonal. `M` must use each index of
/// `1..=2s` exactly once.
pub fn gamma_action(correspondence: &Monomial, eta: &TensorClass, model: &K3Model) -> Result<TensorClass, K3Error> {
    let s = eta.m();
    let mut seen = BTreeSet::new();
    for g in correspondence.expanded() {
        if g.kind != KIND_D {
            return Err(K3Error::Invalid("correspondence must be a product of D(i,j)".into()));
        }
        for &i in g.idx() {
            if i == 0 || i as usize > 2 * s {
                return Err(K3Error::IndexOutOfRange {
                    index: i,
                    m: 2 * s as u16,
                });
            }
            if !seen.insert(i) {
                return Err(K3Error::RepeatedIndex(i));
            }
        }
    }
    if seen.len() != 2 * s {
        return Err(K3Error::Invalid(format!(
            "correspondence must use every index of 1..={}",
            2 * s
        )));
    }
    let mut lifted = TensorClass::zero(2 * s);
    for (k, v) in eta.terms() {
        let mut slots = vec![BasisVector::Unit; s];
        slots.extend_from_slice(k);
        lifted.add_term(slots, v.clone());
    }
    let mut acc = lifted;
    for g in correspondence.expanded() {
        acc = acc.mul(&realize_diagonal_tr(g.indices[0], g.indices[1], 2 * s, model), model);
    }
    let drop: Vec<usize> = (s..2 * s).collect();
    Ok(acc.push_forward(&drop))
}

fn rank_of(classes: &[TensorClass]) -> usize {
    let cols: BTreeSet<&Vec<BasisVector>> = classes.iter().flat_map(|t| t.terms().keys()).collect();
    let index: BTreeMap<&Vec<BasisVector>, usize> = cols.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut mat = RatMatrix::zeros(classes.len(), index.len());
    for (r, t) in classes.iter().enumerate() {
        for (k, v) in t.terms() {
            mat.set(r, index[k], v.clone());
        }
    }
    mat.rank()
}

/// Number of repeat-free monomials of the given codimension on `S^m` and
/// the rank of their realizations.
pub fn monomial_basis_rank(m: usize, codim: u32, model: &K3Model) -> (usize, usize) {
    let monos = bv::normal_monomials(m as u16, codim, model.rho() as u16);
    let classes: Vec<TensorClass> = monos
        .par_iter()
        .map(|mono| {
            let p = Polynomial::term(bv::BV, mono.clone(), Rational::one());
            realize(&p, m, model).expect("enumerated monomials are in range")
        })
        .collect();
    (monos.len(), rank_of(&classes))
}

fn perfect_matchings(set: &[u16]) -> Vec<Vec<(u16, u16)>> {
    if set.is_empty() {
        return vec![vec![]];
    }
    let first = set[0];
    let mut out = Vec::new();
    for k in 1..set.len() {
        let rest: Vec<u16> = set[1..].iter().copied().filter(|&x| x != set[k]).collect();
        for mut tail in perfect_matchings(&rest) {
            tail.insert(0, (first, set[k]));
            out.push(tail);
        }
    }
    out
}

fn matching_monomial(pairs: &[(u16, u16)]) -> Monomial {
    Monomial::from_factors(pairs.iter().map(|&(a, b)| (bv::d(a, b), 1)))
}

/// Orbits of perfect matchings of `indices` (as products of `D(i,j)`) under
/// the permutations of `indices ∩ 1..=m-2`.
pub fn orbit_sums(m: usize, indices: &[u16]) -> Result<Vec<Vec<Monomial>>, K3Error> {
    if indices.len() % 2 == 1 {
        return Err(K3Error::OddIndexSet(indices.len()));
    }
    let mut set: Vec<u16> = indices.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != indices.len() {
        return Err(K3Error::Invalid("index set has repeated entries".into()));
    }
    if let Some(&bad) = set.iter().find(|&&i| i == 0 || i as usize > m) {
        return Err(K3Error::IndexOutOfRange {
            index: bad,
            m: m as u16,
        });
    }
    let movable: Vec<u16> = set.iter().copied().filter(|&i| (i as usize) + 2 <= m).collect();
    let perms: Vec<Vec<u16>> = movable.iter().copied().permutations(movable.len()).collect();
    let mut orbits: BTreeMap<Monomial, BTreeSet<Monomial>> = BTreeMap::new();
    for pairs in perfect_matchings(&set) {
        let images: BTreeSet<Monomial> = perms
            .iter()
            .map(|img| {
                let act = |x: u16| match movable.iter().position(|&y| y == x) {
                    Some(p) => img[p],
                    None => x,
                };
                let moved: Vec<(u16, u16)> = pairs.iter().map(|&(a, b)| (act(a), act(b))).collect();
                matching_monomial(&moved)
            })
            .collect();
        let rep = images.iter().next().expect("identity image").clone();
        orbits.entry(rep).or_insert(images);
    }
    Ok(orbits.into_values().map(|o| o.into_iter().collect()).collect())
}

fn realize_tr_monomial(mono: &Monomial, m: usize, model: &K3Model) -> TensorClass {
    let mut acc = TensorClass::one(m);
    for g in mono.expanded() {
        acc = acc.mul(&realize_diagonal_tr(g.indices[0], g.indices[1], m, model), model);
    }
    acc
}

/// Number of orbit sums of transcendental-diagonal matchings on `indices`
/// and the rank of their realizations.
pub fn invariant_rank(m: usize, indices: &[u16], model: &K3Model) -> Result<(usize, usize), K3Error> {
    let orbits = orbit_sums(m, indices)?;
    let classes: Vec<TensorClass> = orbits
        .par_iter()
        .map(|orbit| {
            let mut sum = TensorClass::zero(m);
            for mono in orbit {
                sum.add_scaled(&realize_tr_monomial(mono, m, model), &Rational::one());
            }
            sum
        })
        .collect();
    Ok((orbits.len(), rank_of(&classes)))
}
