use super::{cc, lf, render_fano, FANO};
use crate::algebra::{rat, GenSymbol, Monomial, Polynomial, RingId};
use crate::expr::{expect_arity, parse_in, print_canonical, Arg, ExprError, Resolved, SymbolTable};

pub const PBUNDLE: RingId = RingId("pbundle");
pub const KIND_H: u16 = 70;

/// Hyperplane class of `P⁵` pulled back to the universal line `P → F`.
pub const fn h() -> GenSymbol {
    GenSymbol::nullary(KIND_H, 1)
}

/// Classes on the universal line `P = P(E)`: `h` and the pullbacks of `l`,
/// `cc` (written without `p^*`).
#[derive(Clone, Copy, Debug, Default)]
pub struct PBundleRing;

impl PBundleRing {
    pub fn parse(&self, text: &str) -> Result<Polynomial, ExprError> {
        parse_in(text, self)
    }

    pub fn print(&self, p: &Polynomial) -> String {
        print_canonical(p, self)
    }

    /// `p^*(A)*h + p^*(B)` for a class of `h`-degree at most 1; other
    /// classes fall back to [`PBundleRing::print`].
    pub fn print_grouped(&self, p: &Polynomial) -> String {
        if p.terms().keys().any(|m| m.exponent(&h()) > 1) {
            return self.print(p);
        }
        let (a, b) = split_h(p);
        let fano = super::FanoRing;
        let mut out = String::new();
        if !a.is_zero() {
            out = format!("p^*({})*h", fano.print(&a));
        }
        if !b.is_zero() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("p^*({})", fano.print(&b)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl SymbolTable for PBundleRing {
    fn ring(&self) -> RingId {
        PBUNDLE
    }

    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved {
        let s = match name {
            "h" => h(),
            "l" => lf(),
            "cc" => cc(),
            _ => return Resolved::Unknown,
        };
        match expect_arity(args, 0) {
            Ok(()) => Resolved::Value(Polynomial::gen(PBUNDLE, s)),
            Err(e) => e,
        }
    }

    fn render(&self, g: &GenSymbol) -> String {
        if g.kind == KIND_H {
            "h".into()
        } else {
            render_fano(g)
        }
    }
}

/// `h^e = a_e·h + b_e` from `h² = l·h − cc`, i.e. `(l − h)·h = cc`.
fn h_power(e: u16) -> (Polynomial, Polynomial) {
    let l = Polynomial::gen(PBUNDLE, lf());
    let c = Polynomial::gen(PBUNDLE, cc());
    let (mut a, mut b) = (Polynomial::zero(PBUNDLE), Polynomial::one(PBUNDLE));
    for _ in 0..e {
        let next_b = -(&a * &c);
        a = &(&a * &l) + &b;
        b = next_b;
    }
    (a, b)
}

/// Rewrites every power of `h` to `h`-degree at most 1.
pub fn reduce_h_powers(p: &Polynomial) -> Polynomial {
    let hh = Polynomial::gen(PBUNDLE, h());
    p.flat_map(PBUNDLE, |m| {
        let e = m.exponent(&h());
        let rest = Polynomial::term(PBUNDLE, m.split_by(|g| g.kind == KIND_H).1, rat(1, 1));
        if e <= 1 {
            return Polynomial::term(PBUNDLE, m.clone(), rat(1, 1));
        }
        let (a, b) = h_power(e);
        &rest * &(&(&a * &hh) + &b)
    })
}

/// Coefficients `(A, B)` of `A·h + B`, as classes on `F`.
fn split_h(p: &Polynomial) -> (Polynomial, Polynomial) {
    let mut a = Polynomial::zero(FANO);
    let mut b = Polynomial::zero(FANO);
    for (m, c) in p.terms() {
        let (hp, rest) = m.split_by(|g| g.kind == KIND_H);
        match hp.total_degree() {
            0 => b.add_term(rest, c.clone()),
            1 => a.add_term(rest, c.clone()),
            _ => unreachable!("reduce first"),
        }
    }
    (a, b)
}

/// `p_*`: the fibres are lines, so `p_*h = 1` and `p_*1 = 0`.
pub fn pushforward_h(p: &Polynomial) -> Polynomial {
    split_h(&reduce_h_powers(p)).0
}

/// `E_x = p_*q^*(x)` for a point `x` of the cubic: `q^*h⁴ = 3·q^*x`, so
/// `E_x = p_*(h⁴)/3`.
pub fn ex_class() -> Polynomial {
    pushforward_h(&Polynomial::term(PBUNDLE, Monomial::power(h(), 4), rat(1, 1))).scale(&rat(1, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano::FanoRing;

    #[test]
    fn h_powers() {
        let r = PBundleRing;
        let red = |s: &str| r.print_grouped(&reduce_h_powers(&r.parse(s).unwrap()));
        assert_eq!(red("h^2"), "p^*(l)*h + p^*(-cc)");
        assert_eq!(red("h^4"), "p^*(-2*l*cc + l^3)*h + p^*(-l^2*cc + cc^2)");
        // the defining relation reduces to zero in one step
        assert!(reduce_h_powers(&r.parse("h*(h - l) + cc").unwrap()).is_zero());
        let want = r.parse("(l^3 - 2*l*cc)*h - (l^2 - cc)*cc").unwrap();
        assert_eq!(r.print(&reduce_h_powers(&r.parse("h^4").unwrap())), r.print(&want));
    }

    #[test]
    fn ex_formula() {
        let want = FanoRing.parse("1/3*(l^3 - 2*l*cc)").unwrap();
        assert_eq!(ex_class(), want);
    }
}
