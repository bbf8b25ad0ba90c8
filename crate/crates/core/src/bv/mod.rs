//! The tautological ring of `S^m` generated by point classes `o(i)`,
//! divisor classes `L(s,i)` and diagonals `D(i,j)`, with its rewriting
//! system to normal forms.
//!
//! Rules, applied to two generators sharing an index:
//!
//! | rule | pattern | replacement |
//! |------|---------|-------------|
//! | R1 | `L(s,i)·o(i)`, `o(i)²` | `0` |
//! | R2 | `L(s,i)·L(t,i)` | `⟨s,t⟩·o(i)` |
//! | R3 | `D(i,j)·o(i)` | `o(i)·o(j)` |
//! | R4 | `D(i,j)·L(s,i)` | `L(s,i)·o(j) + o(i)·L(s,j)` |
//! | R5 | `D(a,j)·D(j,b)` | `D(a,j)o(b) + o(a)D(j,b) + D(a,b)o(j) − o(a)o(j) − o(j)o(b) − o(a)o(b)` |
//! | R6 | `D(i,j)²` | `χ·o(i)·o(j)` |
//!
//! R2 is the polarization of `c_1(L)² = deg(L²)·o`: apply it to `L_s`,
//! `L_t` and `L_s ⊗ L_t` and subtract. `χ` is 24 for a K3 surface; rings
//! built for a desk-scale lattice model use the model's Euler
//! characteristic `2 + rho + b_tr` so that R6 stays true in its cohomology.

mod ops;
mod rewrite;

pub use ops::{Subgroup, VanishingReport, HYP_FAITHFUL, HYP_SYMMETRIC};
pub use rewrite::{RewriteStats, Strategy};

use crate::algebra::{int, GenSymbol, Monomial, Polynomial, RatMatrix, Rational, RingId};
use crate::expr::{expect_arity, int_arg, parse_in, print_canonical, Arg, ExprError, Resolved, SymbolTable};
use crate::k3::{K3Error, K3Model};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};
use thiserror::Error;

pub const BV: RingId = RingId("bv");

pub const KIND_O: u16 = 1;
pub const KIND_L: u16 = 2;
pub const KIND_D: u16 = 3;

/// Point class on factor `i`.
pub fn o(i: u16) -> GenSymbol {
    GenSymbol::unary(KIND_O, 2, i)
}

/// Divisor class with NS label `s` on factor `i`.
pub fn l(s: u16, i: u16) -> GenSymbol {
    GenSymbol::binary(KIND_L, 1, i, s)
}

/// Diagonal of factors `i` and `j`.
pub fn d(i: u16, j: u16) -> GenSymbol {
    assert_ne!(i, j, "diagonal needs two distinct factors");
    GenSymbol::symmetric(KIND_D, 2, i, j)
}

pub fn is_bv_kind(kind: u16) -> bool {
    matches!(kind, KIND_O | KIND_L | KIND_D)
}

/// Factor indices a BV generator touches.
pub fn touched(g: &GenSymbol) -> &[u16] {
    match g.kind {
        KIND_O | KIND_L => &g.indices[..1],
        KIND_D => &g.indices[..2],
        _ => &[],
    }
}

/// Applies an index map to a BV generator; other generators are unchanged.
pub fn relabel_symbol(g: &GenSymbol, f: &dyn Fn(u16) -> u16) -> GenSymbol {
    match g.kind {
        KIND_O => o(f(g.indices[0])),
        KIND_L => l(g.indices[1], f(g.indices[0])),
        KIND_D => d(f(g.indices[0]), f(g.indices[1])),
        _ => *g,
    }
}

#[derive(Debug, Error)]
pub enum BvError {
    #[error("input is not in normal form")]
    NotNormal,
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("bug: {0}")]
    Bug(String),
    #[error(transparent)]
    Model(#[from] K3Error),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

type Memo = Arc<RwLock<HashMap<(Strategy, Monomial), Polynomial>>>;

/// The ring on `m` factors together with the data its rules depend on.
#[derive(Clone)]
pub struct BvRing {
    m: u16,
    ns_gram: RatMatrix,
    euler: Rational,
    memo: Memo,
}

impl fmt::Debug for BvRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BvRing")
            .field("m", &self.m)
            .field("rho", &self.rho())
            .field("euler", &self.euler)
            .finish()
    }
}

impl BvRing {
    pub fn new(m: u16, ns_gram: RatMatrix, euler: Rational) -> Self {
        BvRing {
            m,
            ns_gram,
            euler,
            memo: Arc::default(),
        }
    }

    /// K3 surface with a single polarization of degree 2.
    pub fn k3(m: u16) -> Self {
        Self::new(m, RatMatrix::from_i64(&[&[2]]).expect("1x1"), int(24))
    }

    /// K3 rules (`χ = 24`) with the NS lattice of `model`.
    pub fn k3_with_ns(m: u16, model: &K3Model) -> Self {
        Self::new(m, model.ns_gram().clone(), int(24))
    }

    /// Rules matching the cohomology of `model`: NS form from the model and
    /// `χ = 2 + rho + b_tr`.
    pub fn for_model(m: u16, model: &K3Model) -> Self {
        Self::new(m, model.ns_gram().clone(), int(model.euler_characteristic() as i64))
    }

    /// Same rules on a different number of factors; shares the memo table.
    pub fn with_m(&self, m: u16) -> Self {
        BvRing {
            m,
            ns_gram: self.ns_gram.clone(),
            euler: self.euler.clone(),
            memo: Arc::clone(&self.memo),
        }
    }

    pub fn m(&self) -> u16 {
        self.m
    }

    pub fn rho(&self) -> u16 {
        self.ns_gram.rows() as u16
    }

    pub fn ns_gram(&self) -> &RatMatrix {
        &self.ns_gram
    }

    /// The coefficient of rule R6.
    pub fn euler(&self) -> &Rational {
        &self.euler
    }

    /// Whether this ring's rules are sound for the cohomology of `model`.
    pub fn matches_model(&self, model: &K3Model) -> bool {
        self.ns_gram == *model.ns_gram() && self.euler == int(model.euler_characteristic() as i64)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, ExprError> {
        parse_in(text, self)
    }

    pub fn print(&self, p: &Polynomial) -> String {
        print_canonical(p, self)
    }

    pub fn gen(&self, g: GenSymbol) -> Polynomial {
        Polynomial::gen(BV, g)
    }
}

impl SymbolTable for BvRing {
    fn ring(&self) -> RingId {
        BV
    }

    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved {
        let m = self.m as i64;
        let r = (|| -> Result<Polynomial, Resolved> {
            match name {
                "o" => {
                    expect_arity(args, 1)?;
                    Ok(self.gen(o(int_arg(args, 0, 1, m)?)))
                }
                "L" => {
                    expect_arity(args, 2)?;
                    let s = int_arg(args, 0, 1, self.rho() as i64)?;
                    Ok(self.gen(l(s, int_arg(args, 1, 1, m)?)))
                }
                "D" => {
                    expect_arity(args, 2)?;
                    let i = int_arg(args, 0, 1, m)?;
                    let j = int_arg(args, 1, 1, m)?;
                    if i == j {
                        return Err(Resolved::Invalid("D(i,j) needs i != j".into()));
                    }
                    Ok(self.gen(d(i, j)))
                }
                _ => Err(Resolved::Unknown),
            }
        })();
        match r {
            Ok(p) => Resolved::Value(p),
            Err(e) => e,
        }
    }

    fn render(&self, g: &GenSymbol) -> String {
        render_bv(g)
    }
}

/// Text of a BV generator; shared by rings that embed BV classes.
pub fn render_bv(g: &GenSymbol) -> String {
    match g.kind {
        KIND_O => format!("o({})", g.indices[0]),
        KIND_L => format!("L({},{})", g.indices[1], g.indices[0]),
        KIND_D => format!("D({},{})", g.indices[0], g.indices[1]),
        k => format!("?{k}"),
    }
}

/// All repeat-free monomials of the given codimension on `m` factors with
/// `rho` NS labels.
pub fn normal_monomials(m: u16, codim: u32, rho: u16) -> Vec<Monomial> {
    fn go(
        i: u16,
        m: u16,
        left: i64,
        rho: u16,
        used: &mut Vec<bool>,
        acc: &mut Vec<GenSymbol>,
        out: &mut Vec<Monomial>,
    ) {
        if left < 0 {
            return;
        }
        if i > m {
            if left == 0 {
                out.push(Monomial::from_factors(acc.iter().map(|g| (*g, 1))));
            }
            return;
        }
        if used[i as usize] {
            go(i + 1, m, left, rho, used, acc, out);
            return;
        }
        go(i + 1, m, left, rho, used, acc, out);
        acc.push(o(i));
        go(i + 1, m, left - 2, rho, used, acc, out);
        acc.pop();
        for s in 1..=rho {
            acc.push(l(s, i));
            go(i + 1, m, left - 1, rho, used, acc, out);
            acc.pop();
        }
        for j in i + 1..=m {
            if used[j as usize] {
                continue;
            }
            used[j as usize] = true;
            acc.push(d(i, j));
            go(i + 1, m, left - 2, rho, used, acc, out);
            acc.pop();
            used[j as usize] = false;
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; m as usize + 1];
    go(1, m, codim as i64, rho, &mut used, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_roundtrip() {
        let r = BvRing::k3(3);
        let p = r.parse("D(2,1) + o(1) - 1/2*L(1,3)^2").unwrap();
        assert_eq!(r.print(&p), "o(1) - 1/2*L(1,3)^2 + D(1,2)");
        assert_eq!(r.parse(&r.print(&p)).unwrap(), p);
        assert_eq!(r.print(&Polynomial::zero(BV)), "0");
        assert_eq!(r.print(&r.parse("24*o(1)*o(2)").unwrap()), "24*o(1)*o(2)");
    }

    #[test]
    fn parse_errors() {
        let r = BvRing::k3(2);
        assert!(matches!(r.parse("x(1)"), Err(ExprError::UnknownGenerator { .. })));
        assert!(matches!(r.parse("o(1,2)"), Err(ExprError::Arity { .. })));
        assert!(matches!(r.parse("o(3)"), Err(ExprError::Argument { .. })));
        assert!(matches!(r.parse("D(1,1)"), Err(ExprError::Argument { .. })));
        assert!(matches!(r.parse("L(2,1)"), Err(ExprError::Argument { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(normal_monomials(1, 0, 1).len(), 1);
        assert_eq!(normal_monomials(2, 2, 1).len(), 4);
        // every enumerated monomial has the requested codimension
        for mono in normal_monomials(4, 4, 2) {
            assert_eq!(mono.codim(), 4);
        }
    }
}
