use super::chern::integrate_fano;
use super::pbundle::ex_class;
use super::{
    cc, cpar, cprime, df, ex, is_parameter, lf, of, qd, qi, ql, FanoRing, FANO, KIND_CC, KIND_CP, KIND_DF, KIND_EX,
    KIND_LF, KIND_OF, KIND_QI, KIND_QL,
};
use crate::algebra::{int, GenSymbol, Monomial, Polynomial, Rational};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

/// Constants fixed by integration over `F` rather than taken on faith.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoConstants {
    pub l4: Rational,
    pub l2cc: Rational,
    pub cc2: Rational,
    /// `l·cc = t·l³` in codimension 3, found by pairing both sides with `l`.
    pub t: Rational,
    /// `Ex = e·l³` once `l·cc` is eliminated.
    pub e: Rational,
    /// `∫ l·Ex`, which forces `C = (∫ l·Ex)·C'`.
    pub l_ex: Rational,
}

impl FanoConstants {
    pub fn get() -> &'static FanoConstants {
        static K: OnceLock<FanoConstants> = OnceLock::new();
        K.get_or_init(|| {
            let r = FanoRing;
            let i = |s: &str| integrate_fano(&r.parse(s).unwrap()).unwrap();
            let (l4, l2cc, cc2) = (i("l^4"), i("l^2*cc"), i("cc^2"));
            let t = &l2cc / &l4;
            let exc = ex_class();
            let l3 = Monomial::power(lf(), 3);
            let lcc = Monomial::from_factors([(lf(), 1), (cc(), 1)]);
            let e = exc.coeff(&l3) + exc.coeff(&lcc) * &t;
            let l_ex = integrate_fano(&(&exc * &Polynomial::gen(FANO, lf()))).unwrap();
            FanoConstants {
                l4,
                l2cc,
                cc2,
                t,
                e,
                l_ex,
            }
        })
    }
}

/// Result of [`fano_normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeReport {
    pub normal_form: Polynomial,
    /// Names of the rules that fired, sorted.
    pub rules: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisTerm {
    pub basis: String,
    pub coefficient: String,
}

impl NormalizeReport {
    /// The normal form grouped by its geometric part, with the parameter
    /// coefficients collected.
    pub fn decomposition(&self) -> Vec<BasisTerm> {
        decompose(&self.normal_form)
    }
}

pub(crate) fn decompose(p: &Polynomial) -> Vec<BasisTerm> {
    let mut groups: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (params, geo) = m.split_by(is_parameter);
        groups
            .entry(geo)
            .or_insert_with(|| Polynomial::zero(FANO))
            .add_term(params, c.clone());
    }
    let r = FanoRing;
    groups
        .into_iter()
        .map(|(geo, coeff)| BasisTerm {
            basis: r.print(&Polynomial::term(FANO, geo, int(1))),
            coefficient: r.print(&coeff),
        })
        .collect()
}

fn gp(s: GenSymbol) -> Polynomial {
    Polynomial::gen(FANO, s)
}

fn mono(m: Monomial) -> Polynomial {
    Polynomial::term(FANO, m, int(1))
}

fn ds(m: &Monomial) -> Vec<u16> {
    m.expanded()
        .filter(|g| g.kind == KIND_DF)
        .map(|g| g.indices[0])
        .collect()
}

/// Removes the listed generators (with multiplicity) from `m`.
fn without(m: &Monomial, gs: &[GenSymbol]) -> Monomial {
    gs.iter()
        .fold(m.clone(), |acc, g| acc.remove_one(g).expect("factor present"))
}

/// One rewrite of a single monomial, or `None` if it is already normal.
fn step(m: &Monomial) -> Option<(&'static str, Polynomial)> {
    let k = FanoConstants::get();
    let codim = m.codim();
    // also covers o times any class of positive codimension
    if codim > 4 {
        return Some(("truncate", Polynomial::zero(FANO)));
    }
    let has = |kind: u16| m.factors().iter().any(|(g, _)| g.kind == kind);
    if has(KIND_QL) && has(KIND_QI) {
        return Some(("q-inverse", mono(without(m, &[ql(), qi()]))));
    }
    if has(KIND_CP) {
        let rest = mono(without(m, &[cprime()]));
        return Some(("Cp", &rest * &gp(cpar()).scale(&(int(1) / &k.l_ex))));
    }
    if has(KIND_EX) {
        return Some(("F7", &mono(without(m, &[ex()])) * &ex_class()));
    }
    let d = ds(m);
    if has(KIND_CC) && !d.is_empty() {
        return Some(("F1", Polynomial::zero(FANO)));
    }
    let l = gp(lf());
    if d.len() >= 3 {
        let (j, kk, r) = (d[0], d[1], d[2]);
        let rest = mono(without(m, &[df(j), df(kk), df(r)]));
        let l2 = l.pow(2);
        let mut sum = &(&gp(qd(j, kk)) * &l2) * &gp(df(r));
        sum = &sum + &(&(&gp(qd(j, r)) * &l2) * &gp(df(kk)));
        sum = &sum + &(&(&gp(qd(kk, r)) * &l2) * &gp(df(j)));
        return Some(("F4", &(&rest * &gp(qi())) * &sum));
    }
    let le = m.exponent(&lf());
    if d.len() == 2 && le >= 2 {
        let rest = mono(without(m, &[lf(), lf(), df(d[0]), df(d[1])]));
        return Some(("F3", &(&rest * &gp(cpar())) * &(&gp(qd(d[0], d[1])) * &gp(of()))));
    }
    if d.len() == 2 && le == 1 {
        let rest = mono(without(m, &[lf(), df(d[0]), df(d[1])]));
        return Some(("F2", &(&rest * &gp(cprime())) * &(&gp(qd(d[0], d[1])) * &gp(ex()))));
    }
    if d.len() == 1 && codim == 4 {
        return Some(("F8", Polynomial::zero(FANO)));
    }
    if le >= 1 && has(KIND_CC) {
        let rest = mono(without(m, &[lf(), cc()]));
        return Some(("F5", &rest * &l.pow(3).scale(&k.t)));
    }
    if codim == 4 && !has(KIND_OF) {
        let (geo, params) = m.split_by(|g| g.kind == KIND_LF || g.kind == KIND_CC);
        let v = integrate_fano(&mono(geo)).expect("pure l, cc monomial of codimension 4");
        return Some(("F6", Polynomial::term(FANO, params.mul(&Monomial::gen(of())), v)));
    }
    None
}

/// Rewrites `P` to its normal form in the basis `1; l, D(k); l², cc, l·D(k),
/// D(j)·D(k); l³, l²·D(k); o`, with coefficients polynomial in the
/// parameters `q(l)` or `qi(l)`, `q(j,k)` and `C`. `Ex`, `l·cc` and `Cp` are
/// eliminated (`C = 6·Cp` follows from `l·Ex = 6·o`).
pub fn fano_normalize(p: &Polynomial) -> NormalizeReport {
    let mut cur = p.clone().with_ring(FANO);
    let mut fired: BTreeSet<&'static str> = BTreeSet::new();
    loop {
        let mut next = Polynomial::zero(FANO);
        let mut changed = false;
        for (m, c) in cur.terms() {
            match step(m) {
                Some((rule, img)) => {
                    fired.insert(rule);
                    next.add_scaled(&img, c);
                    changed = true;
                }
                None => next.add_term(m.clone(), c.clone()),
            }
        }
        cur = next;
        if !changed {
            break;
        }
    }
    NormalizeReport {
        normal_form: cur,
        rules: fired.into_iter().collect(),
    }
}
