use super::{BasisVector, K3Error, K3Model, TensorClass};
use crate::algebra::{GenSymbol, Polynomial, Rational};
use crate::bv::{KIND_D, KIND_L, KIND_O};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Künneth components of the diagonal class of `S`:
/// `Σ g^{ab} tr_a⊗tr_b + 1⊗pt + pt⊗1 + Σ h^{st} ns_s⊗ns_t` with `g`, `h`
/// the inverse Gram matrices.
pub fn diagonal_expansion(model: &K3Model) -> Vec<(BasisVector, BasisVector, Rational)> {
    let mut out = tr_part(model);
    out.push((BasisVector::Unit, BasisVector::Pt, Rational::one()));
    out.push((BasisVector::Pt, BasisVector::Unit, Rational::one()));
    let h = model.ns_inverse();
    for s in 0..model.rho() {
        for t in 0..model.rho() {
            let c = h.get(s, t);
            if !c.is_zero() {
                out.push((BasisVector::Ns(s as u16 + 1), BasisVector::Ns(t as u16 + 1), c.clone()));
            }
        }
    }
    out
}

fn tr_part(model: &K3Model) -> Vec<(BasisVector, BasisVector, Rational)> {
    let g = model.tr_inverse();
    let mut out = Vec::new();
    for a in 0..model.b_tr() {
        for b in 0..model.b_tr() {
            let c = g.get(a, b);
            if !c.is_zero() {
                out.push((BasisVector::Tr(a as u16 + 1), BasisVector::Tr(b as u16 + 1), c.clone()));
            }
        }
    }
    out
}

fn two_slot(parts: &[(BasisVector, BasisVector, Rational)], i: u16, j: u16, m: usize) -> TensorClass {
    let mut t = TensorClass::zero(m);
    for (a, b, c) in parts {
        let mut slots = vec![BasisVector::Unit; m];
        slots[i as usize - 1] = *a;
        slots[j as usize - 1] = *b;
        t.add_term(slots, c.clone());
    }
    t
}

/// Transcendental part of the diagonal on slots `i`, `j` (1-based) of `S^m`.
pub fn realize_diagonal_tr(i: u16, j: u16, m: usize, model: &K3Model) -> TensorClass {
    two_slot(&tr_part(model), i, j, m)
}

fn check_index(i: u16, m: usize) -> Result<(), K3Error> {
    if i == 0 || i as usize > m {
        return Err(K3Error::IndexOutOfRange { index: i, m: m as u16 });
    }
    Ok(())
}

fn generator_class(g: &GenSymbol, m: usize, model: &K3Model) -> Result<TensorClass, K3Error> {
    let mut slots = vec![BasisVector::Unit; m];
    match g.kind {
        KIND_O => {
            check_index(g.indices[0], m)?;
            slots[g.indices[0] as usize - 1] = BasisVector::Pt;
            Ok(TensorClass::basis(slots, Rational::one()))
        }
        KIND_L => {
            let (i, s) = (g.indices[0], g.indices[1]);
            check_index(i, m)?;
            if s == 0 || s as usize > model.rho() {
                return Err(K3Error::LabelOutOfRange {
                    label: s,
                    rho: model.rho() as u16,
                });
            }
            slots[i as usize - 1] = BasisVector::Ns(s);
            Ok(TensorClass::basis(slots, Rational::one()))
        }
        KIND_D => {
            let (i, j) = (g.indices[0], g.indices[1]);
            check_index(i, m)?;
            check_index(j, m)?;
            Ok(two_slot(&diagonal_expansion(model), i, j, m))
        }
        _ => Err(K3Error::Invalid(format!(
            "generator kind {} is not a class on S^m",
            g.kind
        ))),
    }
}

/// Cohomology class in `H*(S^m, Q)` of a polynomial in `o(i)`, `L(s,i)`,
/// `D(i,j)`.
pub fn realize(p: &Polynomial, m: usize, model: &K3Model) -> Result<TensorClass, K3Error> {
    let mut factor_cache: HashMap<GenSymbol, TensorClass> = HashMap::new();
    let mut out = TensorClass::zero(m);
    for (mono, c) in p.terms() {
        let mut acc = TensorClass::basis(vec![BasisVector::Unit; m], c.clone());
        for g in mono.expanded() {
            if !factor_cache.contains_key(&g) {
                factor_cache.insert(g, generator_class(&g, m, model)?);
            }
            acc = acc.mul(&factor_cache[&g], model);
            if acc.is_zero() {
                break;
            }
        }
        out.add_scaled(&acc, &Rational::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, RatMatrix};
    use crate::bv::BvRing;
    use BasisVector::*;

    #[test]
    fn diagonal_by_hand() {
        let model = K3Model::new(
            RatMatrix::from_i64(&[&[2]]).unwrap(),
            RatMatrix::from_i64(&[&[1]]).unwrap(),
        )
        .unwrap();
        let ring = BvRing::for_model(2, &model);
        let t = realize(&ring.parse("D(1,2)").unwrap(), 2, &model).unwrap();
        let mut want = TensorClass::zero(2);
        want.add_term(vec![Tr(1), Tr(1)], int(1));
        want.add_term(vec![Unit, Pt], int(1));
        want.add_term(vec![Pt, Unit], int(1));
        want.add_term(vec![Ns(1), Ns(1)], rat(1, 2));
        assert_eq!(t, want);
    }

    #[test]
    fn diagonal_square_degree() {
        for (rho, b) in [(1, 2), (2, 3), (1, 21)] {
            let model = K3Model::diagonal(rho, b);
            let ring = BvRing::for_model(2, &model);
            let t = realize(&ring.parse("D(1,2)^2").unwrap(), 2, &model).unwrap();
            assert_eq!(t.degree(), int((rho + b + 2) as i64));
            assert_eq!(t.terms().len(), 1);
        }
    }

    #[test]
    fn point_squared_vanishes() {
        let model = K3Model::desk(2);
        let ring = BvRing::for_model(1, &model);
        assert!(realize(&ring.parse("o(1)^2").unwrap(), 1, &model).unwrap().is_zero());
    }

    #[test]
    fn diagonal_reproduces_pairing() {
        // ∫_{S×S} Δ · (a ⊗ b) = ∫_S a·b for basis vectors a, b
        let model = K3Model::diagonal(2, 3);
        let mut basis = vec![Unit, Pt];
        basis.extend((1..=2).map(Ns));
        basis.extend((1..=3).map(Tr));
        let delta = two_slot(&diagonal_expansion(&model), 1, 2, 2);
        for &a in &basis {
            for &b in &basis {
                let lhs = delta.mul(&TensorClass::basis(vec![a, b], int(1)), &model).degree();
                let rhs = match a.product(b, &model) {
                    Some((Pt, c)) => c,
                    _ => int(0),
                };
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }
}
