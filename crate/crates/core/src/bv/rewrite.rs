use super::{d, is_bv_kind, l, o, BvRing, KIND_D, KIND_L, KIND_O};
use crate::algebra::{GenSymbol, Monomial, Polynomial, Rational};
use num_traits::One;

/// Order in which applicable rules are chosen inside a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Lowest `(rule, index tuple)` first; the canonical strategy.
    #[default]
    Lowest,
    /// Highest `(rule, index tuple)` first; used to probe confluence.
    Highest,
}

/// Counters collected by [`BvRing::normalize_traced`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub applications: usize,
    pub applications_by_rule: [usize; 6],
}

/// A located redex: rule number (1..=6), sort key, and the two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Redex {
    rule: u8,
    key: [u16; 3],
    a: GenSymbol,
    b: GenSymbol,
}

fn classify(a: GenSymbol, b: GenSymbol, i: u16) -> Redex {
    // order the pair so that `a` has the smaller kind
    let (a, b) = if (a.kind, a.indices) <= (b.kind, b.indices) {
        (a, b)
    } else {
        (b, a)
    };
    let (rule, key) = match (a.kind, b.kind) {
        (KIND_O, KIND_O) => (1, [i, 0, 0]),
        (KIND_O, KIND_L) => (1, [i, b.indices[1], 0]),
        (KIND_L, KIND_L) => {
            let (s, t) = (a.indices[1], b.indices[1]);
            (2, [i, s.min(t), s.max(t)])
        }
        (KIND_O, KIND_D) => (3, [i, other(&b, i), 0]),
        (KIND_L, KIND_D) => (4, [i, other(&b, i), a.indices[1]]),
        (KIND_D, KIND_D) if a == b => (6, [a.indices[0], a.indices[1], 0]),
        (KIND_D, KIND_D) => {
            let (x, y) = (other(&a, i), other(&b, i));
            (5, [i, x.min(y), x.max(y)])
        }
        _ => unreachable!("only BV generators are classified"),
    };
    Redex { rule, key, a, b }
}

fn other(diag: &GenSymbol, i: u16) -> u16 {
    if diag.indices[0] == i {
        diag.indices[1]
    } else {
        diag.indices[0]
    }
}

/// `Σ_i C(n_i, 2)` over indices, `n_i` the number of generator occurrences
/// touching `i`. Every rule strictly decreases it.
pub(crate) fn shared_pairs(m: &Monomial) -> u64 {
    let mut counts: std::collections::BTreeMap<u16, u64> = Default::default();
    for g in m.expanded().filter(|g| is_bv_kind(g.kind)) {
        for &i in super::touched(&g) {
            *counts.entry(i).or_default() += 1;
        }
    }
    counts.values().map(|n| n * n.saturating_sub(1) / 2).sum()
}

fn find_redex(m: &Monomial, strategy: Strategy) -> Option<Redex> {
    let occ: Vec<GenSymbol> = m.expanded().filter(|g| is_bv_kind(g.kind)).collect();
    let mut best: Option<Redex> = None;
    for x in 0..occ.len() {
        for y in x + 1..occ.len() {
            let (a, b) = (occ[x], occ[y]);
            let shared = super::touched(&a)
                .iter()
                .copied()
                .filter(|i| super::touched(&b).contains(i))
                .min();
            let Some(i) = shared else { continue };
            let r = classify(a, b, i);
            best = Some(match (best, strategy) {
                (None, _) => r,
                (Some(cur), Strategy::Lowest) => cur.min(r),
                (Some(cur), Strategy::Highest) => cur.max(r),
            });
        }
    }
    best
}

impl BvRing {
    fn replacement(&self, r: &Redex) -> Polynomial {
        let mono = |gs: &[GenSymbol]| Monomial::from_factors(gs.iter().map(|g| (*g, 1)));
        let mut p = Polynomial::zero(super::BV);
        match r.rule {
            1 => {}
            2 => {
                let (i, s, t) = (r.key[0], r.key[1], r.key[2]);
                let g = self.ns_gram.get(s as usize - 1, t as usize - 1).clone();
                p.add_term(Monomial::gen(o(i)), g);
            }
            3 => {
                let (i, j) = (r.key[0], r.key[1]);
                p.add_term(mono(&[o(i), o(j)]), Rational::one());
            }
            4 => {
                let (i, j, s) = (r.key[0], r.key[1], r.key[2]);
                p.add_term(mono(&[l(s, i), o(j)]), Rational::one());
                p.add_term(mono(&[o(i), l(s, j)]), Rational::one());
            }
            5 => {
                let (j, a, b) = (r.key[0], r.key[1], r.key[2]);
                let one = Rational::one();
                p.add_term(mono(&[d(a, j), o(b)]), one.clone());
                p.add_term(mono(&[o(a), d(j, b)]), one.clone());
                p.add_term(mono(&[d(a, b), o(j)]), one.clone());
                p.add_term(mono(&[o(a), o(j)]), -one.clone());
                p.add_term(mono(&[o(j), o(b)]), -one.clone());
                p.add_term(mono(&[o(a), o(b)]), -one);
            }
            6 => {
                let (i, j) = (r.key[0], r.key[1]);
                p.add_term(mono(&[o(i), o(j)]), self.euler.clone());
            }
            _ => unreachable!(),
        }
        p
    }

    fn nf_monomial(&self, m: &Monomial, strategy: Strategy, mut stats: Option<&mut RewriteStats>) -> Polynomial {
        if stats.is_none() {
            if let Some(hit) = self.memo.read().expect("memo lock").get(&(strategy, m.clone())) {
                return hit.clone();
            }
        }
        let result = match find_redex(m, strategy) {
            None => Polynomial::term(super::BV, m.clone(), Rational::one()),
            Some(r) => {
                let rest = m
                    .remove_one(&r.a)
                    .and_then(|x| x.remove_one(&r.b))
                    .expect("redex generators occur in the monomial");
                let before = shared_pairs(m);
                let mut out = Polynomial::zero(super::BV);
                if let Some(s) = stats.as_deref_mut() {
                    s.applications += 1;
                    s.applications_by_rule[r.rule as usize - 1] += 1;
                }
                for (t, c) in self.replacement(&r).terms() {
                    let next = rest.mul(t);
                    let after = shared_pairs(&next);
                    if stats.is_some() {
                        assert!(
                            after < before,
                            "rule R{} did not decrease the measure ({before} -> {after})",
                            r.rule
                        );
                    } else {
                        debug_assert!(after < before);
                    }
                    let sub = self.nf_monomial(&next, strategy, stats.as_deref_mut());
                    out.add_scaled(&sub, c);
                }
                out
            }
        };
        if stats.is_none() {
            self.memo
                .write()
                .expect("memo lock")
                .insert((strategy, m.clone()), result.clone());
        }
        result
    }

    fn normalize_impl(&self, p: &Polynomial, strategy: Strategy, mut stats: Option<&mut RewriteStats>) -> Polynomial {
        let mut out = Polynomial::zero(p.ring());
        for (m, c) in p.terms() {
            let (bv_part, rest) = m.split_by(|g| is_bv_kind(g.kind));
            let nf = self.nf_monomial(&bv_part, strategy, stats.as_deref_mut());
            for (t, k) in nf.terms() {
                out.add_term(t.mul(&rest), k * c);
            }
        }
        out
    }

    /// Normal form under the canonical strategy. Generators of other rings
    /// in mixed monomials are carried along untouched.
    pub fn normalize(&self, p: &Polynomial) -> Polynomial {
        self.normalize_impl(p, Strategy::Lowest, None)
    }

    pub fn normalize_with(&self, p: &Polynomial, strategy: Strategy) -> Polynomial {
        self.normalize_impl(p, strategy, None)
    }

    /// Normalizes without the memo table, asserting at every rule
    /// application that the shared-index measure strictly decreases.
    pub fn normalize_traced(&self, p: &Polynomial, strategy: Strategy) -> (Polynomial, RewriteStats) {
        let mut stats = RewriteStats::default();
        let out = self.normalize_impl(p, strategy, Some(&mut stats));
        (out, stats)
    }

    /// True iff every monomial uses each factor index at most once.
    pub fn is_normal(&self, p: &Polynomial) -> bool {
        p.terms().keys().all(|m| shared_pairs(m) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn single_rules() {
        let r = BvRing::k3(3);
        let n = |s: &str| r.print(&r.normalize(&r.parse(s).unwrap()));
        assert_eq!(n("L(1,1)^2"), "2*o(1)");
        assert_eq!(n("D(1,2)^2"), "24*o(1)*o(2)");
        assert_eq!(n("o(1)^2"), "0");
        assert_eq!(n("L(1,1)*o(1)"), "0");
        assert_eq!(n("D(1,2)*o(2)"), "o(1)*o(2)");
        assert_eq!(n("D(1,2)*L(1,1)"), "o(1)*L(1,2) + o(2)*L(1,1)");
        assert_eq!(
            n("D(1,2)*D(2,3)"),
            "-o(1)*o(2) - o(1)*o(3) + o(1)*D(2,3) - o(2)*o(3) + o(2)*D(1,3) + o(3)*D(1,2)"
        );
    }

    #[test]
    fn cascade_and_measure() {
        let r = BvRing::k3(3);
        let p = r.parse("D(1,2)*D(2,3)*o(3)").unwrap();
        let (nf, stats) = r.normalize_traced(&p, Strategy::Lowest);
        assert!(r.is_normal(&nf));
        assert!(stats.applications >= 2);
        assert_eq!(nf, r.normalize(&p));
        // D(1,2)D(2,3)o(3) = D(1,2)·o(2)o(3) = o(1)o(2)o(3)
        assert_eq!(r.print(&nf), "o(1)*o(2)*o(3)");
        assert_eq!(r.integrate(&p), int(1));
    }

    #[test]
    fn is_normal_examples() {
        let r = BvRing::k3(2);
        assert!(r.is_normal(&r.parse("o(1)*o(2)").unwrap()));
        assert!(!r.is_normal(&r.parse("o(1)^2").unwrap()));
        assert!(!r.is_normal(&r.parse("D(1,2)*L(1,1)").unwrap()));
    }
}
