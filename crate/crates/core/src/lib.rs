//! Exact symbolic calculus for tautological relations in the Chow rings of
//! K3 surfaces, their self-products and Hilbert schemes of points, and of the
//! Fano variety of lines of a cubic fourfold.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact rationals, sparse polynomials, rational matrices.
//! * [`expr`]: the expression language, canonical printer and result cache.
//! * [`k3`]: a lattice model of the cohomology of `S^m` and the realization map.
//! * [`bv`]: the rewriting system on powers of a K3 surface.
//! * [`hilbert`]: the recursion computing pullbacks of tautological classes
//!   of `S^[n]` along the correspondences indexed by set partitions.
//! * [`fano`]: Schubert calculus on `G(2,6)` and the relation calculus on the
//!   Fano variety of lines.
//! * [`cli`]: the command-line front end.
//!
//! ```
//! use tautochow::bv::BvRing;
//!
//! let ring = BvRing::k3(2);
//! let p = ring.parse("D(1,2)^2").unwrap();
//! assert_eq!(ring.print(&ring.normalize(&p)), "24*o(1)*o(2)");
//! ```

pub mod algebra;
pub mod bv;
pub mod cli;
pub mod expr;
pub mod fano;
pub mod hilbert;
pub mod k3;
mod verdict;

pub use verdict::Verdict;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/bv-ring.md")]
    pub struct BvRing;
    #[doc = include_str!("../../../book/src/lattice-model.md")]
    pub struct LatticeModel;
    #[doc = include_str!("../../../book/src/hilbert.md")]
    pub struct Hilbert;
    #[doc = include_str!("../../../book/src/fano.md")]
    pub struct Fano;
    #[doc = include_str!("../../../book/src/expressions.md")]
    pub struct Expressions;
}
