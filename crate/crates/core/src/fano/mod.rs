//! Schubert calculus on `G(2,6)` and the relation calculus on the Fano
//! variety of lines `F` of a cubic fourfold.
//!
//! `F ⊂ G(2,6)` is the zero locus of a section of `Sym³E`, where `E` is the
//! rank 2 quotient bundle, so `∫_F P = ∫_G P·c_4(Sym³E)`. `l = c_1(E|_F)` and
//! `cc = c_2(E|_F)`; `o` is the canonical degree 1 zero-cycle, `Ex` the class
//! of the surface of lines through a point, and `D(k)` formal divisors
//! orthogonal to `l` for the Beauville–Bogomolov form `q`.
//!
//! Formal scalar parameters: `q(l)`, its inverse `qi(l)`, `q(j,k)` (the
//! polarized form on the `D`'s, `q(k)` for `q(k,k)`), and the constants `C`,
//! `Cp` of the relations `l²D² = C·q(D)·o` and `lD² = Cp·q(D)·Ex`.

mod chern;
mod cohomology;
mod incidence;
mod normal;
mod pbundle;
mod schubert;
mod verbitsky;

pub use chern::{chern_sym3_quotient, chern_tangent, integrate_fano, TangentChern};
pub use cohomology::{
    fano_cohomology_vanishes, verify_theocubic, CohomologyReport, FanoVerdict, GradedPart, Pairing, TheocubicReport,
};
pub use incidence::{IncidenceLedger, INCIDENCE};
pub use normal::{fano_normalize, BasisTerm, FanoConstants, NormalizeReport};
pub use pbundle::{ex_class, h, pushforward_h, reduce_h_powers, PBundleRing, PBUNDLE};
pub use schubert::{
    fano_of_schubert, integrate_grass, pieri_multiply, s, schubert_of_fano, GrassRing, SchubertElement, GRASS,
};
pub use verbitsky::{verbitsky_coefficient, Identity, VerbitskyCertificate, VerbitskyRing};

use crate::algebra::{GenSymbol, Polynomial, RingId};
use crate::expr::{expect_arity, int_arg, parse_in, print_canonical, Arg, ExprError, Resolved, SymbolTable};
use thiserror::Error;

pub const FANO: RingId = RingId("fano");

pub const KIND_LF: u16 = 40;
pub const KIND_CC: u16 = 41;
pub const KIND_EX: u16 = 42;
pub const KIND_OF: u16 = 43;
pub const KIND_DF: u16 = 44;
pub const KIND_QL: u16 = 45;
pub const KIND_QI: u16 = 46;
pub const KIND_QD: u16 = 47;
pub const KIND_C: u16 = 48;
pub const KIND_CP: u16 = 49;

pub const fn lf() -> GenSymbol {
    GenSymbol::nullary(KIND_LF, 1)
}

pub const fn cc() -> GenSymbol {
    GenSymbol::nullary(KIND_CC, 2)
}

pub const fn ex() -> GenSymbol {
    GenSymbol::nullary(KIND_EX, 3)
}

pub const fn of() -> GenSymbol {
    GenSymbol::nullary(KIND_OF, 4)
}

pub fn df(k: u16) -> GenSymbol {
    GenSymbol::unary(KIND_DF, 1, k)
}

pub const fn ql() -> GenSymbol {
    GenSymbol::nullary(KIND_QL, 0)
}

/// `1/q(l)`.
pub const fn qi() -> GenSymbol {
    GenSymbol::nullary(KIND_QI, 0)
}

pub fn qd(j: u16, k: u16) -> GenSymbol {
    GenSymbol::symmetric(KIND_QD, 0, j, k)
}

pub const fn cpar() -> GenSymbol {
    GenSymbol::nullary(KIND_C, 0)
}

pub const fn cprime() -> GenSymbol {
    GenSymbol::nullary(KIND_CP, 0)
}

pub fn is_parameter(g: &GenSymbol) -> bool {
    matches!(g.kind, KIND_QL | KIND_QI | KIND_QD | KIND_C | KIND_CP)
}

#[derive(Debug, Error)]
pub enum FanoError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("wrong codimension: {0}")]
    Codim(String),
    #[error("unsupported generator: {0}")]
    Generator(String),
    #[error("bug: {0}")]
    Bug(String),
}

/// Symbol table for `CH(F)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FanoRing;

impl FanoRing {
    pub fn parse(&self, text: &str) -> Result<Polynomial, ExprError> {
        parse_in(text, self)
    }

    pub fn print(&self, p: &Polynomial) -> String {
        print_canonical(p, self)
    }
}

pub(crate) fn g(s: GenSymbol) -> Polynomial {
    Polynomial::gen(FANO, s)
}

impl SymbolTable for FanoRing {
    fn ring(&self) -> RingId {
        FANO
    }

    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved {
        let r = (|| -> Result<Polynomial, Resolved> {
            let nullary = |s: GenSymbol| -> Result<Polynomial, Resolved> {
                expect_arity(args, 0)?;
                Ok(g(s))
            };
            match name {
                "l" => nullary(lf()),
                "cc" => nullary(cc()),
                "Ex" => nullary(ex()),
                "o" => nullary(of()),
                "C" => nullary(cpar()),
                "Cp" => nullary(cprime()),
                "D" => {
                    expect_arity(args, 1)?;
                    Ok(g(df(int_arg(args, 0, 1, 99)?)))
                }
                "qi" => match args {
                    [Arg::Ident(s)] if s == "l" => Ok(g(qi())),
                    _ => Err(Resolved::Invalid("only qi(l) is defined".into())),
                },
                "q" => match args {
                    [Arg::Ident(s)] if s == "l" => Ok(g(ql())),
                    [Arg::Int(_)] => {
                        let k = int_arg(args, 0, 1, 99)?;
                        Ok(g(qd(k, k)))
                    }
                    [Arg::Int(_), Arg::Int(_)] => Ok(g(qd(int_arg(args, 0, 1, 99)?, int_arg(args, 1, 1, 99)?))),
                    _ => Err(Resolved::Invalid("expected q(l), q(k) or q(j,k)".into())),
                },
                _ => Err(Resolved::Unknown),
            }
        })();
        match r {
            Ok(p) => Resolved::Value(p),
            Err(e) => e,
        }
    }

    fn render(&self, g: &GenSymbol) -> String {
        render_fano(g)
    }
}

pub fn render_fano(g: &GenSymbol) -> String {
    match g.kind {
        KIND_LF => "l".into(),
        KIND_CC => "cc".into(),
        KIND_EX => "Ex".into(),
        KIND_OF => "o".into(),
        KIND_DF => format!("D({})", g.indices[0]),
        KIND_QL => "q(l)".into(),
        KIND_QI => "qi(l)".into(),
        KIND_QD if g.indices[0] == g.indices[1] => format!("q({})", g.indices[0]),
        KIND_QD => format!("q({},{})", g.indices[0], g.indices[1]),
        KIND_C => "C".into(),
        KIND_CP => "Cp".into(),
        k => format!("?{k}"),
    }
}
