use super::SymbolTable;
use crate::algebra::{Monomial, Polynomial, Rational};
use num_traits::{One, Signed};

/// `a` or `a/b`.
pub fn print_rational(c: &Rational) -> String {
    c.to_string()
}

fn print_monomial(m: &Monomial, table: &dyn SymbolTable) -> String {
    m.factors()
        .iter()
        .map(|(g, e)| {
            let s = table.render(g);
            if *e > 1 {
                format!("{s}^{e}")
            } else {
                s
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Deterministic text for a polynomial: terms in canonical monomial order,
/// unit coefficients omitted, `"0"` for the zero polynomial. The output is
/// accepted by the parser of the same ring.
pub fn print_canonical(p: &Polynomial, table: &dyn SymbolTable) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&print_rational(&a));
        } else {
            if !a.is_one() {
                out.push_str(&print_rational(&a));
                out.push('*');
            }
            out.push_str(&print_monomial(m, table));
        }
    }
    out
}
