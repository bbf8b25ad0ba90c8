use super::schubert::{integrate_grass, schubert_of_fano, SchubertElement};
use super::{cc, lf, render_fano, FanoError, FANO, KIND_CC, KIND_LF};
use crate::algebra::{int, Polynomial, Rational};
use crate::hilbert::KClass;
use num_traits::Zero;
use std::sync::OnceLock;

fn l() -> Polynomial {
    Polynomial::gen(FANO, lf())
}

fn c() -> Polynomial {
    Polynomial::gen(FANO, cc())
}

/// Total Chern class of `Sym³E` as a polynomial in `l = c_1(E)`, `cc = c_2(E)`.
///
/// Chern roots `3a, 2a+b, a+2b, 3b`; pairing the outer and inner roots,
/// `(1+3a)(1+3b) = 1 + 3l + 9cc` and `(1+2a+b)(1+a+2b) = 1 + 3l + 2l² + cc`.
pub(crate) fn sym3_total() -> Polynomial {
    let one = Polynomial::one(FANO);
    let outer = &(&one + &l().scale(&int(3))) + &c().scale(&int(9));
    let inner = &(&(&one + &l().scale(&int(3))) + &l().pow(2).scale(&int(2))) + &c();
    &outer * &inner
}

/// `c(Sym³E)` in the Schubert basis of `G(2,6)`.
pub fn chern_sym3_quotient() -> SchubertElement {
    schubert_of_fano(&sym3_total()).expect("only l and cc occur")
}

fn c4_sym3() -> &'static SchubertElement {
    static C4: OnceLock<SchubertElement> = OnceLock::new();
    C4.get_or_init(|| chern_sym3_quotient().graded_part(4))
}

/// `∫_F P = ∫_G P·c_4(Sym³E)` for `P` of codimension 4 in `l` and `cc`.
pub fn integrate_fano(p: &Polynomial) -> Result<Rational, FanoError> {
    for m in p.terms().keys() {
        if let Some((g, _)) = m.factors().iter().find(|(g, _)| g.kind != KIND_LF && g.kind != KIND_CC) {
            return Err(FanoError::Generator(render_fano(g)));
        }
        if m.codim() != 4 {
            return Err(FanoError::Codim(format!(
                "integrand has a term of codimension {}, expected 4",
                m.codim()
            )));
        }
    }
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    let e = schubert_of_fano(p)?;
    Ok(integrate_grass(&e.mul(c4_sym3())))
}

/// Chern classes of `T_F` as polynomials in `l` and `cc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentChern {
    /// `c[k-1] = c_k(T_F)`, `k = 1..4`.
    pub c: Vec<Polynomial>,
}

impl TangentChern {
    pub fn c2(&self) -> &Polynomial {
        &self.c[1]
    }

    pub fn c4(&self) -> &Polynomial {
        &self.c[3]
    }
}

/// `c(T_F) = c(T_G|_F) / c(Sym³E)` with `T_G = Hom(E^∨, C⁶/E^∨) = 6E − E⊗E^∨`.
///
/// Fails if `c_1` or `c_3` does not vanish on `F`: `c_1` must be zero as a
/// polynomial, `c_3` must pair to zero with `l` (classes of codimension 3 in
/// `l, cc` are proportional on `F`).
pub fn chern_tangent() -> Result<TangentChern, FanoError> {
    let e = KClass::from_chern(FANO, int(2), &[l(), c()], 4);
    let tg = KClass::trivial(FANO, 0, 4);
    let tg = (0..6).fold(tg, |acc, _| acc.add(&e)).sub(&e.tensor(&e.dual()));
    let sym = sym3_total();
    let sym_c: Vec<Polynomial> = (1..=4).map(|k| sym.graded_part(k)).collect();
    let normal = KClass::from_chern(FANO, int(4), &sym_c, 4);
    let c = tg.sub(&normal).chern();
    if !c[0].is_zero() {
        return Err(FanoError::Bug(format!(
            "c_1(T_F) = {} is not zero",
            super::FanoRing.print(&c[0])
        )));
    }
    let lc3 = integrate_fano(&(&l() * &c[2]))?;
    if !lc3.is_zero() {
        return Err(FanoError::Bug(format!("c_3(T_F) pairs to {lc3} with l")));
    }
    Ok(TangentChern { c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano::FanoRing;

    fn int_of(s: &str) -> Rational {
        integrate_fano(&FanoRing.parse(s).unwrap()).unwrap()
    }

    #[test]
    fn sym3_classes() {
        let s = sym3_total();
        let r = FanoRing;
        assert_eq!(r.print(&s.graded_part(1)), "6*l");
        assert_eq!(s.graded_part(4), r.parse("18*l^2*cc + 9*cc^2").unwrap());
        assert_eq!(s.max_codim(), Some(4));
    }

    #[test]
    fn fano_integrals() {
        assert_eq!(int_of("l^4"), int(108));
        assert_eq!(int_of("l^2*cc"), int(45));
        assert_eq!(int_of("cc^2"), int(27));
        assert!(matches!(
            integrate_fano(&FanoRing.parse("l^3").unwrap()),
            Err(FanoError::Codim(_))
        ));
        assert!(matches!(
            integrate_fano(&FanoRing.parse("o").unwrap()),
            Err(FanoError::Generator(_))
        ));
    }

    #[test]
    fn tangent_numbers() {
        let t = chern_tangent().unwrap();
        assert_eq!(
            FanoRing.print(t.c2()),
            FanoRing.print(&FanoRing.parse("5*l^2 - 8*cc").unwrap())
        );
        assert_eq!(integrate_fano(t.c4()).unwrap(), int(324));
        assert_eq!(integrate_fano(&t.c2().pow(2)).unwrap(), int(828));
    }
}
