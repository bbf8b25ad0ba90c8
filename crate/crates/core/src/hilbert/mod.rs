//! Tautological classes on `S^[n] × S^l` and their pullbacks to `S^m × S^l`
//! along the partial diagonals `E_μ` indexed by set partitions `μ` of
//! `{1..n}`.
//!
//! Generators: `c(T,k)` (Chern classes of the tangent bundle), `c(O,k)`
//! (of the tautological bundle `O^[n]`), `c(I,k,i)` (of the universal ideal
//! sheaf on `S^[n] × S`, paired with marked point `i`), `L(s)` (the divisor
//! induced by the NS class `s`), and BV classes `o(i)`, `L(s,i)`, `D(i,j)` on
//! the marked points.
//!
//! Pullbacks are computed by peeling off one point at a time on the nested
//! Hilbert scheme `S^[n,n-1]`, then pushing forward to `S^[n-1] × S`. The
//! results are BV polynomials on `S^(m+l)` with block `b` at index `b` and
//! marked point `i` at index `m + i`.

mod egl;
mod kclass;
mod partition;
mod verify;

pub use egl::HilbertEngine;
pub use kclass::KClass;
pub use partition::{PartitionError, SetPartition};
pub use verify::{
    HilbertReport, PartitionCertificate, TAG_CODIM, TAG_NF_ZERO, TAG_NONZERO, TAG_UNLICENSED, TAG_UNSUPPORTED,
};

use crate::algebra::{GenSymbol, Polynomial, RingId};
use crate::bv::{self, BvError};
use crate::expr::{expect_arity, int_arg, parse_in, print_canonical, Arg, ExprError, Resolved, SymbolTable};
use crate::k3::K3Error;
use thiserror::Error;

pub const HILB: RingId = RingId("hilbert");

pub const KIND_CT: u16 = 20;
pub const KIND_CO: u16 = 21;
pub const KIND_CI: u16 = 22;
pub const KIND_LH: u16 = 23;
pub const KIND_ELL: u16 = 24;

/// `c_k(T_{S^[n]})`.
pub fn ct(k: u16) -> GenSymbol {
    GenSymbol::unary(KIND_CT, k as u8, k)
}

/// `c_k(O^[n])`.
pub fn co(k: u16) -> GenSymbol {
    GenSymbol::unary(KIND_CO, k as u8, k)
}

/// `c_k(I_n)` pulled back along the projection to marked point `i`.
pub fn ci(k: u16, i: u16) -> GenSymbol {
    GenSymbol::binary(KIND_CI, k as u8, k, i)
}

/// The divisor on `S^[n]` induced by the NS class `s`.
pub fn lh(s: u16) -> GenSymbol {
    GenSymbol::unary(KIND_LH, 1, s)
}

/// First Chern class of the tautological line bundle on `S^[n,n-1]`.
pub fn ell() -> GenSymbol {
    GenSymbol::nullary(KIND_ELL, 1)
}

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Bv(#[from] BvError),
    #[error(transparent)]
    Model(#[from] K3Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bug: {0}")]
    Bug(String),
}

/// Symbol table for classes on `S^[n] × S^l`.
#[derive(Clone, Debug)]
pub struct HilbertRing {
    pub n: u16,
    pub l: u16,
    pub rho: u16,
}

impl HilbertRing {
    pub fn new(n: u16, l: u16, rho: u16) -> Self {
        HilbertRing { n, l, rho }
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, ExprError> {
        parse_in(text, self)
    }

    pub fn print(&self, p: &Polynomial) -> String {
        print_canonical(p, self)
    }
}

impl SymbolTable for HilbertRing {
    fn ring(&self) -> RingId {
        HILB
    }

    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved {
        let n = self.n as i64;
        let l = self.l as i64;
        let g = |s| Polynomial::gen(HILB, s);
        let r = (|| -> Result<Polynomial, Resolved> {
            match (name, args.len()) {
                ("c", _) => {
                    let which = match args.first() {
                        Some(Arg::Ident(s)) => s.as_str(),
                        _ => return Err(Resolved::Invalid("expected T, O or I as first argument".into())),
                    };
                    let (hi, arity) = match which {
                        "T" => (2 * n, 2),
                        "O" => (n, 2),
                        "I" => (2 * n + 2, 3),
                        other => return Err(Resolved::Invalid(format!("unknown sheaf '{other}'"))),
                    };
                    expect_arity(args, arity)?;
                    let k = int_arg(args, 1, 0, hi)?;
                    if k == 0 {
                        return Ok(Polynomial::one(HILB));
                    }
                    Ok(match which {
                        "T" => g(ct(k)),
                        "O" => g(co(k)),
                        _ => g(ci(k, int_arg(args, 2, 1, l)?)),
                    })
                }
                ("L", 1) => Ok(g(lh(int_arg(args, 0, 1, self.rho as i64)?))),
                ("L", _) => {
                    expect_arity(args, 2)?;
                    let s = int_arg(args, 0, 1, self.rho as i64)?;
                    Ok(g(bv::l(s, int_arg(args, 1, 1, l)?)))
                }
                ("o", _) => {
                    expect_arity(args, 1)?;
                    Ok(g(bv::o(int_arg(args, 0, 1, l)?)))
                }
                ("D", _) => {
                    expect_arity(args, 2)?;
                    let i = int_arg(args, 0, 1, l)?;
                    let j = int_arg(args, 1, 1, l)?;
                    if i == j {
                        return Err(Resolved::Invalid("D(i,j) needs i != j".into()));
                    }
                    Ok(g(bv::d(i, j)))
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
        render_hilbert(g)
    }
}

pub fn render_hilbert(g: &GenSymbol) -> String {
    match g.kind {
        KIND_CT => format!("c(T,{})", g.indices[0]),
        KIND_CO => format!("c(O,{})", g.indices[0]),
        KIND_CI => format!("c(I,{},{})", g.indices[0], g.indices[1]),
        KIND_LH => format!("L({})", g.indices[0]),
        KIND_ELL => "ell".to_string(),
        _ => bv::render_bv(g),
    }
}
