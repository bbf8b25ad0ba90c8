use super::{is_bv_kind, o, relabel_symbol, BvError, BvRing, KIND_D, KIND_L, KIND_O};
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::k3::{realize, K3Model};
use crate::verdict::Verdict;
use itertools::Itertools;
use num_traits::One;

/// Index groups over which [`BvRing::symmetrize`] averages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// All permutations of `1..=m`.
    Full,
    /// Permutations of `1..=m-2`.
    AllButLastTwo,
    /// Independent permutations inside each listed index set.
    Product(Vec<Vec<u16>>),
}

/// Result of [`BvRing::verify_vanishing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub verdict: Verdict,
    /// Which hypothesis licensed the lift from cohomology to Chow groups.
    pub hypothesis: Option<&'static str>,
    pub normal_form: Polynomial,
}

pub const HYP_FAITHFUL: &str = "faithful-range";
pub const HYP_SYMMETRIC: &str = "symmetric";

impl BvRing {
    /// Applies an index map to every BV generator.
    pub fn relabel(&self, p: &Polynomial, f: &dyn Fn(u16) -> u16) -> Polynomial {
        let mut out = Polynomial::zero(p.ring());
        for (m, c) in p.terms() {
            out.add_term(m.map_symbols(|g| relabel_symbol(g, f)), c.clone());
        }
        out
    }

    /// Pushforward along the projection forgetting factor `j`. Indices above
    /// `j` shift down by one. The input must be in normal form.
    pub fn forget_index(&self, p: &Polynomial, j: u16) -> Result<Polynomial, BvError> {
        if !self.is_normal(p) {
            return Err(BvError::NotNormal);
        }
        let shift = |i: u16| if i > j { i - 1 } else { i };
        let mut out = Polynomial::zero(p.ring());
        for (m, c) in p.terms() {
            let hit = m
                .factors()
                .iter()
                .find(|(g, _)| is_bv_kind(g.kind) && super::touched(g).contains(&j))
                .map(|(g, _)| *g);
            let Some(g) = hit else { continue };
            let kept = match g.kind {
                KIND_O | KIND_D => m.remove_one(&g).expect("present"),
                KIND_L => continue,
                _ => unreachable!(),
            };
            out.add_term(kept.map_symbols(|g| relabel_symbol(g, &shift)), c.clone());
        }
        Ok(out)
    }

    /// Degree on `S^m`: coefficient of `o(1)⋯o(m)` in the normal form.
    pub fn integrate(&self, p: &Polynomial) -> Rational {
        let top = Monomial::from_factors((1..=self.m).map(|i| (o(i), 1)));
        self.normalize(p).coeff(&top)
    }

    /// Average over the index permutations of `group`.
    pub fn symmetrize(&self, p: &Polynomial, group: &Subgroup) -> Polynomial {
        let blocks: Vec<Vec<u16>> = match group {
            Subgroup::Full => vec![(1..=self.m).collect()],
            Subgroup::AllButLastTwo => vec![(1..=self.m.saturating_sub(2)).collect()],
            Subgroup::Product(b) => b.clone(),
        };
        let mut acc = p.clone();
        for block in blocks.iter().filter(|b| b.len() > 1) {
            let perms: Vec<Vec<u16>> = block.iter().copied().permutations(block.len()).collect();
            let mut sum = Polynomial::zero(p.ring());
            for img in &perms {
                let f = |x: u16| match block.iter().position(|&y| y == x) {
                    Some(k) => img[k],
                    None => x,
                };
                sum.add_scaled(&self.relabel(&acc, &f), &Rational::one());
            }
            acc = sum.scale(&(Rational::one() / Rational::from_integer(perms.len().into())));
        }
        acc
    }

    /// Whether the class of `p` is invariant under `group`, judged on the
    /// polynomial itself or on its normal form.
    pub fn is_invariant(&self, p: &Polynomial, group: &Subgroup) -> bool {
        if self.symmetrize(p, group) == *p {
            return true;
        }
        let nf = self.normalize(p);
        self.symmetrize(&nf, group) == nf
    }

    /// Decides whether `p` vanishes in the Chow ring of `S^m` when that can
    /// be certified: it must vanish in the cohomology of `model`, and either
    /// `m ≤ 2·b_tr + 1` or `p` is invariant under permutations of the first
    /// `m − 2` factors. A vanishing realization with a nonzero normal form
    /// under one of these hypotheses is reported as a bug.
    pub fn verify_vanishing(&self, p: &Polynomial, model: &K3Model) -> Result<VanishingReport, BvError> {
        if !self.matches_model(model) {
            return Err(BvError::ModelMismatch(format!(
                "ring uses χ = {} and its own NS form; model has χ = {}",
                self.euler,
                model.euler_characteristic()
            )));
        }
        let m = self.m as usize;
        let normal_form = self.normalize(p);
        if !realize(p, m, model)?.is_zero() {
            return Ok(VanishingReport {
                verdict: Verdict::CohomologicallyNonzero,
                hypothesis: None,
                normal_form,
            });
        }
        let hypothesis = if m <= 2 * model.b_tr() + 1 {
            Some(HYP_FAITHFUL)
        } else if self.is_invariant(p, &Subgroup::AllButLastTwo) {
            Some(HYP_SYMMETRIC)
        } else {
            None
        };
        match hypothesis {
            Some(h) if !normal_form.is_zero() => Err(BvError::Bug(format!(
                "class vanishes in cohomology under hypothesis {h} but its normal form is {}",
                self.print(&normal_form)
            ))),
            Some(h) => Ok(VanishingReport {
                verdict: Verdict::ChowZero,
                hypothesis: Some(h),
                normal_form,
            }),
            None => Ok(VanishingReport {
                verdict: Verdict::Indeterminate,
                hypothesis: None,
                normal_form,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn forget_examples() {
        let r = BvRing::k3(2);
        let p = |s: &str| r.parse(s).unwrap();
        let r1 = BvRing::k3(1);
        assert_eq!(r.forget_index(&p("o(1)*o(2)"), 2).unwrap(), r1.parse("o(1)").unwrap());
        assert_eq!(r.forget_index(&p("D(1,2)"), 2).unwrap(), r1.parse("1").unwrap());
        assert!(r.forget_index(&p("o(1)"), 2).unwrap().is_zero());
        assert!(r.forget_index(&p("L(1,2)"), 2).unwrap().is_zero());
        assert!(matches!(r.forget_index(&p("o(1)^2"), 1), Err(BvError::NotNormal)));
        let r3 = BvRing::k3(3);
        assert_eq!(
            r3.forget_index(&r3.parse("o(1)*D(2,3)").unwrap(), 1).unwrap(),
            r.parse("D(1,2)").unwrap()
        );
    }

    #[test]
    fn integrals() {
        let r = BvRing::k3(2);
        assert_eq!(r.integrate(&r.parse("o(1)*o(2)").unwrap()), int(1));
        assert_eq!(r.integrate(&r.parse("D(1,2)^2").unwrap()), int(24));
        assert_eq!(r.integrate(&r.parse("L(1,1)^2*L(1,2)^2").unwrap()), int(4));
    }

    #[test]
    fn symmetrize_examples() {
        let r = BvRing::k3(2);
        let p = r.parse("o(1)").unwrap();
        let s = r.symmetrize(&p, &Subgroup::Full);
        assert_eq!(s, r.parse("o(1) + o(2)").unwrap().scale(&rat(1, 2)));
        assert_eq!(r.symmetrize(&s, &Subgroup::Full), s);
        let q = r.parse("L(1,1)*L(1,2)").unwrap();
        assert_eq!(r.symmetrize(&q, &Subgroup::Full), q);
    }

    #[test]
    fn vanishing_verdicts() {
        let model = K3Model::desk(2);
        let r = BvRing::for_model(1, &model);
        let rep = r
            .verify_vanishing(&r.parse("L(1,1)^2 - 2*o(1)").unwrap(), &model)
            .unwrap();
        assert_eq!(rep.verdict, Verdict::ChowZero);
        let rep = r.verify_vanishing(&r.parse("o(1)").unwrap(), &model).unwrap();
        assert_eq!(rep.verdict, Verdict::CohomologicallyNonzero);
        let full = K3Model::diagonal(1, 21);
        let r2 = BvRing::for_model(2, &full);
        let rep = r2
            .verify_vanishing(&r2.parse("D(1,2)^2 - 24*o(1)*o(2)").unwrap(), &full)
            .unwrap();
        assert_eq!(rep.verdict, Verdict::ChowZero);
        assert!(matches!(
            BvRing::k3(1).verify_vanishing(&r.parse("o(1)").unwrap(), &model),
            Err(BvError::ModelMismatch(_))
        ));
    }
}
