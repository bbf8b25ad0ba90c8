//! Lattice model of `H*(S, Q)` for an algebraic K3 surface and of
//! `H*(S^m, Q) = H*(S, Q)^{⊗m}`.
//!
//! Only the Néron–Severi Gram matrix and the transcendental Gram matrix
//! enter; the model works over Q with any nondegenerate symmetric forms, and
//! desk-scale models are free to shrink the transcendental rank.

mod independence;
mod realize;
mod tensor;

pub use independence::{gamma_action, invariant_rank, monomial_basis_rank, orbit_sums};
pub use realize::{diagonal_expansion, realize, realize_diagonal_tr};
pub use tensor::{BasisVector, TensorClass};

use crate::algebra::{rat, RatMatrix, Rational};
use num_traits::Zero;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum K3Error {
    #[error("model file: {0}")]
    Format(String),
    #[error("{0} Gram matrix is degenerate")]
    Degenerate(&'static str),
    #[error("{0} Gram matrix is not symmetric")]
    NotSymmetric(&'static str),
    #[error("index {index} out of range 1..={m}")]
    IndexOutOfRange { index: u16, m: u16 },
    #[error("Néron–Severi label {label} out of range 1..={rho}")]
    LabelOutOfRange { label: u16, rho: u16 },
    #[error("repeated index {0} in correspondence monomial")]
    RepeatedIndex(u16),
    #[error("index set has odd cardinality {0}")]
    OddIndexSet(usize),
    #[error("{0}")]
    Invalid(String),
}

/// Numeric model of the lattice `H*(S, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Model {
    ns_gram: RatMatrix,
    tr_gram: RatMatrix,
    ns_inv: RatMatrix,
    tr_inv: RatMatrix,
    fingerprint: String,
}

impl K3Model {
    pub fn new(ns_gram: RatMatrix, tr_gram: RatMatrix) -> Result<Self, K3Error> {
        for (name, g) in [("NS", &ns_gram), ("transcendental", &tr_gram)] {
            if g.rows() == 0 {
                return Err(K3Error::Format(format!("{name} Gram matrix is empty")));
            }
            if !g.is_symmetric() {
                return Err(K3Error::NotSymmetric(name));
            }
        }
        let ns_inv = ns_gram.inverse().map_err(|_| K3Error::Degenerate("NS"))?;
        let tr_inv = tr_gram.inverse().map_err(|_| K3Error::Degenerate("transcendental"))?;
        let fingerprint = fingerprint(&ns_gram, &tr_gram);
        Ok(K3Model {
            ns_gram,
            tr_gram,
            ns_inv,
            tr_inv,
            fingerprint,
        })
    }

    /// `rho = 1` with a degree-2 polarization and identity transcendental
    /// form of rank `b_tr`.
    pub fn desk(b_tr: usize) -> Self {
        Self::new(RatMatrix::from_i64(&[&[2]]).expect("1x1"), RatMatrix::identity(b_tr)).expect("nondegenerate")
    }

    /// Diagonal NS form `diag(2, -2, -2, ...)` of rank `rho` and identity
    /// transcendental form of rank `b_tr`.
    pub fn diagonal(rho: usize, b_tr: usize) -> Self {
        let mut ns = RatMatrix::zeros(rho, rho);
        for i in 0..rho {
            ns.set(i, i, Rational::from_integer(if i == 0 { 2 } else { -2 }.into()));
        }
        Self::new(ns, RatMatrix::identity(b_tr)).expect("nondegenerate")
    }

    /// `rho = 1`, `ns_gram = [2]`, transcendental form a sum of hyperbolic
    /// planes (rank `2k`). Such forms contain isotropic vectors, which the
    /// correspondence-action checks need.
    pub fn hyperbolic(k: usize) -> Self {
        let mut tr = RatMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            tr.set(2 * i, 2 * i + 1, rat(1, 1));
            tr.set(2 * i + 1, 2 * i, rat(1, 1));
        }
        Self::new(RatMatrix::from_i64(&[&[2]]).expect("1x1"), tr).expect("nondegenerate")
    }

    pub fn rho(&self) -> usize {
        self.ns_gram.rows()
    }

    pub fn b_tr(&self) -> usize {
        self.tr_gram.rows()
    }

    pub fn ns_gram(&self) -> &RatMatrix {
        &self.ns_gram
    }

    pub fn tr_gram(&self) -> &RatMatrix {
        &self.tr_gram
    }

    pub fn ns_inverse(&self) -> &RatMatrix {
        &self.ns_inv
    }

    pub fn tr_inverse(&self) -> &RatMatrix {
        &self.tr_inv
    }

    /// Topological Euler characteristic of the modelled surface,
    /// `2 + rho + b_tr`; equals the degree of the self-intersection of the
    /// diagonal.
    pub fn euler_characteristic(&self) -> usize {
        2 + self.rho() + self.b_tr()
    }

    /// Whether `rho + b_tr = 22`, the rank of a genuine K3 lattice.
    pub fn is_full_rank(&self) -> bool {
        self.rho() + self.b_tr() == 22
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Reads the text format produced by [`K3Model::to_text`]:
    ///
    /// ```text
    /// rho 1
    /// b_tr 2
    /// ns_gram 2
    /// tr_gram 1 0
    ///         0 1
    /// ```
    ///
    /// Entries are integers or `a/b` rationals in row-major order and may
    /// span several lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, K3Error> {
        let mut tokens = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            tokens.extend(line.split_whitespace().map(str::to_string));
        }
        let mut rho = None;
        let mut b_tr = None;
        let mut ns: Option<Vec<Rational>> = None;
        let mut tr: Option<Vec<Rational>> = None;
        let mut i = 0;
        while i < tokens.len() {
            let key = tokens[i].as_str();
            i += 1;
            let start = i;
            while i < tokens.len() && !is_key(&tokens[i]) {
                i += 1;
            }
            let vals = &tokens[start..i];
            match key {
                "rho" | "b_tr" => {
                    let [v] = vals else {
                        return Err(K3Error::Format(format!("'{key}' takes one integer")));
                    };
                    let n: usize = v
                        .parse()
                        .map_err(|_| K3Error::Format(format!("bad integer '{v}' for '{key}'")))?;
                    if n == 0 {
                        return Err(K3Error::Format(format!("'{key}' must be at least 1")));
                    }
                    if key == "rho" {
                        rho = Some(n);
                    } else {
                        b_tr = Some(n);
                    }
                }
                "ns_gram" | "tr_gram" => {
                    let entries = vals.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>, _>>()?;
                    if key == "ns_gram" {
                        ns = Some(entries);
                    } else {
                        tr = Some(entries);
                    }
                }
                other => return Err(K3Error::Format(format!("unknown key '{other}'"))),
            }
        }
        let rho = rho.ok_or_else(|| K3Error::Format("missing 'rho'".into()))?;
        let b_tr = b_tr.ok_or_else(|| K3Error::Format("missing 'b_tr'".into()))?;
        let ns = square(
            ns.ok_or_else(|| K3Error::Format("missing 'ns_gram'".into()))?,
            rho,
            "ns_gram",
        )?;
        let tr = square(
            tr.ok_or_else(|| K3Error::Format("missing 'tr_gram'".into()))?,
            b_tr,
            "tr_gram",
        )?;
        Self::new(ns, tr)
    }

    pub fn from_file(path: &Path) -> Result<Self, K3Error> {
        let text = std::fs::read_to_string(path).map_err(|e| K3Error::Format(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "rho {}", self.rho()).unwrap();
        writeln!(s, "b_tr {}", self.b_tr()).unwrap();
        for (key, g) in [("ns_gram", &self.ns_gram), ("tr_gram", &self.tr_gram)] {
            write!(s, "{key}").unwrap();
            for i in 0..g.rows() {
                if i > 0 {
                    write!(s, "\n{}", " ".repeat(key.len())).unwrap();
                }
                for j in 0..g.cols() {
                    write!(s, " {}", g.get(i, j)).unwrap();
                }
            }
            s.push('\n');
        }
        s
    }
}

fn is_key(t: &str) -> bool {
    t.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
}

fn parse_rational(v: &str) -> Result<Rational, K3Error> {
    let bad = || K3Error::Format(format!("bad rational '{v}'"));
    match v.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(v.parse().map_err(|_| bad())?)),
    }
}

fn square(entries: Vec<Rational>, n: usize, name: &str) -> Result<RatMatrix, K3Error> {
    if entries.len() != n * n {
        return Err(K3Error::Format(format!(
            "'{name}' needs {} entries, found {}",
            n * n,
            entries.len()
        )));
    }
    RatMatrix::from_rows(entries.chunks(n).map(<[Rational]>::to_vec).collect())
        .map_err(|e| K3Error::Format(e.to_string()))
}

fn fingerprint(ns: &RatMatrix, tr: &RatMatrix) -> String {
    let mut h = Sha256::new();
    for (tag, g) in [("ns", ns), ("tr", tr)] {
        h.update(format!("{tag}:{}x{}:", g.rows(), g.cols()));
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                h.update(format!("{},", g.get(i, j)));
            }
        }
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip_and_fingerprint() {
        let m = K3Model::diagonal(2, 3);
        let back = K3Model::parse(&m.to_text()).unwrap();
        assert_eq!(back, m);
        assert_ne!(m.fingerprint(), K3Model::desk(3).fingerprint());
        assert_eq!(m.euler_characteristic(), 7);
    }

    #[test]
    fn parse_with_comments_and_fractions() {
        let m = K3Model::parse("# desk model\nrho 1\nb_tr 2\nns_gram 2\ntr_gram 1/2 0\n 0 3\n").unwrap();
        assert_eq!(m.tr_gram().get(0, 0), &rat(1, 2));
        assert_eq!(m.b_tr(), 2);
    }

    #[test]
    fn rejects_bad_models() {
        assert!(matches!(
            K3Model::parse("rho 1\nb_tr 1\nns_gram 0\ntr_gram 1"),
            Err(K3Error::Degenerate("NS"))
        ));
        assert!(K3Model::parse("rho 1\nb_tr 2\nns_gram 2\ntr_gram 1 1 0 1").is_err());
        assert!(K3Model::parse("rho 1\nb_tr 1\nns_gram 2").is_err());
        assert!(K3Model::parse("rho 1\nb_tr 1\nns_gram 2\ntr_gram 1\nfoo 3").is_err());
        assert!(K3Model::parse("rho 2\nb_tr 1\nns_gram 2\ntr_gram 1").is_err());
    }
}
