use crate::algebra::{int, GenSymbol, Monomial, Polynomial, Rational, RingId};
use crate::expr::{expect_arity, parse_in, print_canonical, Arg, ExprError, Resolved, SymbolTable};
use serde::Serialize;

pub const VERB: RingId = RingId("verbitsky");

const KIND_D: u16 = 80;
const KIND_L: u16 = 81;
const KIND_LAMBDA: u16 = 82;
const KIND_QD: u16 = 83;
const KIND_QL: u16 = 84;
const KIND_QI: u16 = 85;
const KIND_A: u16 = 86;
const KIND_N: u16 = 87;
const KIND_M: u16 = 88;

fn sym(kind: u16) -> GenSymbol {
    let codim = match kind {
        KIND_D | KIND_L => 1,
        _ => 0,
    };
    GenSymbol::nullary(kind, codim)
}

fn v(kind: u16) -> Polynomial {
    Polynomial::gen(VERB, sym(kind))
}

/// Formal symbols of the λ-expansion: a class `d`, the polarization `l`,
/// the parameter `lambda`, the forms `q(d)`, `q(l)`, `qi(l)`, the scalar
/// `a(d)` and the classes `N`, `M`.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerbitskyRing;

impl VerbitskyRing {
    pub fn parse(&self, text: &str) -> Result<Polynomial, ExprError> {
        parse_in(text, self)
    }

    pub fn print(&self, p: &Polynomial) -> String {
        print_canonical(p, self)
    }
}

impl SymbolTable for VerbitskyRing {
    fn ring(&self) -> RingId {
        VERB
    }

    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved {
        let arg = |want: &str| matches!(args, [Arg::Ident(s)] if s == want);
        let kind = match name {
            "d" | "l" | "lambda" | "N" | "M" => {
                if let Err(e) = expect_arity(args, 0) {
                    return e;
                }
                match name {
                    "d" => KIND_D,
                    "l" => KIND_L,
                    "lambda" => KIND_LAMBDA,
                    "N" => KIND_N,
                    _ => KIND_M,
                }
            }
            "q" if arg("d") => KIND_QD,
            "q" if arg("l") => KIND_QL,
            "qi" if arg("l") => KIND_QI,
            "a" if arg("d") => KIND_A,
            "q" | "qi" | "a" => return Resolved::Invalid("unexpected argument".into()),
            _ => return Resolved::Unknown,
        };
        Resolved::Value(v(kind))
    }

    fn render(&self, g: &GenSymbol) -> String {
        match g.kind {
            KIND_D => "d",
            KIND_L => "l",
            KIND_LAMBDA => "lambda",
            KIND_QD => "q(d)",
            KIND_QL => "q(l)",
            KIND_QI => "qi(l)",
            KIND_A => "a(d)",
            KIND_N => "N",
            _ => "M",
        }
        .into()
    }
}

/// `lhs = rhs` in canonical text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerbitskyCertificate {
    /// Coefficients of `lambda^0..lambda^3` of the expanded identity.
    pub by_lambda: Vec<Identity>,
    /// `d³` with `a(d)·N` eliminated.
    pub eliminated: Identity,
    /// `d³ = coefficient · q(d)·l²·d`; always `3·qi(l)`.
    pub coefficient: String,
    /// The rational factor in front of `qi(l)`.
    #[serde(skip)]
    pub factor: Rational,
}

fn lambda_part(p: &Polynomial, k: u16) -> Polynomial {
    let lam = sym(KIND_LAMBDA);
    let mut out = Polynomial::zero(VERB);
    for (m, c) in p.terms() {
        if m.exponent(&lam) == k {
            out.add_term(m.split_by(|g| g.kind == KIND_LAMBDA).1, c.clone());
        }
    }
    out
}

/// Expands `(d + λl)³ = (q(d) + λ²q(l))·(a(d)·N + λ·M)` in `λ`, then solves
/// the `λ²` coefficient `3·d·l² = q(l)·a(d)·N` for `a(d)·N` and substitutes
/// into the `λ⁰` coefficient `d³ = q(d)·a(d)·N`.
pub fn verbitsky_coefficient() -> VerbitskyCertificate {
    let r = VerbitskyRing;
    let (d, l, lam) = (v(KIND_D), v(KIND_L), v(KIND_LAMBDA));
    let lhs = (&d + &(&lam * &l)).pow(3);
    let rhs = &(&v(KIND_QD) + &(&lam.pow(2) * &v(KIND_QL))) * &(&(&v(KIND_A) * &v(KIND_N)) + &(&lam * &v(KIND_M)));
    let by_lambda: Vec<(Polynomial, Polynomial)> =
        (0..=3).map(|k| (lambda_part(&lhs, k), lambda_part(&rhs, k))).collect();

    let an = Monomial::from_factors([(sym(KIND_A), 1), (sym(KIND_N), 1)]);
    // λ²: q(l)·aN = 3dl², so aN = qi(l)·3dl²
    let (l2_lhs, l2_rhs) = &by_lambda[2];
    let ql_an = Monomial::gen(sym(KIND_QL)).mul(&an);
    assert_eq!(
        l2_rhs,
        &Polynomial::term(VERB, ql_an, int(1)),
        "λ² coefficient has the expected shape"
    );
    let an_value = &v(KIND_QI) * l2_lhs;
    let (l0_lhs, l0_rhs) = &by_lambda[0];
    let eliminated_rhs = l0_rhs.flat_map(VERB, |m| {
        match m.remove_one(&sym(KIND_A)).and_then(|x| x.remove_one(&sym(KIND_N))) {
            Some(rest) => &Polynomial::term(VERB, rest, int(1)) * &an_value,
            None => Polynomial::term(VERB, m.clone(), int(1)),
        }
    });
    // d³ = κ·q(d)·l²·d: read off κ
    let base = Monomial::from_factors([(sym(KIND_D), 1), (sym(KIND_L), 2), (sym(KIND_QD), 1)]);
    let mut coefficient = Polynomial::zero(VERB);
    for (m, c) in eliminated_rhs.terms() {
        let rest = m
            .remove_one(&sym(KIND_D))
            .and_then(|x| x.remove_one(&sym(KIND_L)))
            .and_then(|x| x.remove_one(&sym(KIND_L)))
            .and_then(|x| x.remove_one(&sym(KIND_QD)))
            .expect("every term is a multiple of q(d)·l²·d");
        coefficient.add_term(rest, c.clone());
    }
    debug_assert!(eliminated_rhs.terms().keys().all(|m| m.codim() == base.codim()));
    let factor = coefficient.coeff(&Monomial::gen(sym(KIND_QI)));
    VerbitskyCertificate {
        by_lambda: by_lambda
            .iter()
            .map(|(a, b)| Identity {
                lhs: r.print(a),
                rhs: r.print(b),
            })
            .collect(),
        eliminated: Identity {
            lhs: r.print(l0_lhs),
            rhs: r.print(&eliminated_rhs),
        },
        coefficient: r.print(&coefficient),
        factor,
    }
}
