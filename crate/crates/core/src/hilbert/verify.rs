use super::egl::HilbertEngine;
use super::partition::SetPartition;
use super::HilbertError;
use crate::algebra::Polynomial;
use crate::bv::{BvError, Subgroup};
use crate::k3::{realize, K3Model};
use crate::verdict::Verdict;
use rayon::prelude::*;
use serde::Serialize;

/// What was established for one partial diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub partition: String,
    pub m: u16,
    /// Canonical text of `E_μ^* P`.
    pub normal_form: String,
    pub realized_zero: bool,
    /// `normal-form-zero`, `codim-shortcut`, `nonzero`, `unlicensed` or
    /// `unsupported`.
    pub tag: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub verdict: Verdict,
    pub certificates: Vec<PartitionCertificate>,
}

pub const TAG_NF_ZERO: &str = "normal-form-zero";
pub const TAG_CODIM: &str = "codim-shortcut";
pub const TAG_NONZERO: &str = "nonzero";
pub const TAG_UNLICENSED: &str = "unlicensed";
pub const TAG_UNSUPPORTED: &str = "unsupported";

impl HilbertEngine {
    /// Decides whether a class on `S^[n]` vanishes in the Chow ring by
    /// pulling it back along every `E_μ`: the family of pullbacks is
    /// injective, and each pullback is a BV polynomial whose normal form
    /// decides it when `m(μ) ≤ 2·b_tr + 1` or `μ` has at most two blocks of
    /// size ≥ 2.
    pub fn verify_chow_zero(&self, p: &Polynomial, n: u16, model: &K3Model) -> Result<HilbertReport, HilbertError> {
        if self.bv().ns_gram() != model.ns_gram() {
            return Err(BvError::ModelMismatch("engine and model have different NS forms".into()).into());
        }
        let codim = p.terms().keys().map(|m| m.codim()).min().unwrap_or(0);
        let certificates = SetPartition::all(n)
            .par_iter()
            .map(|mu| self.certify(p, mu, codim, model))
            .collect::<Result<Vec<_>, _>>()?;
        let verdict = if certificates.iter().any(|c| c.tag == TAG_NONZERO) {
            Verdict::CohomologicallyNonzero
        } else if certificates.iter().all(|c| c.tag == TAG_NF_ZERO || c.tag == TAG_CODIM) {
            Verdict::ChowZero
        } else {
            Verdict::Indeterminate
        };
        Ok(HilbertReport { verdict, certificates })
    }

    fn certify(
        &self,
        p: &Polynomial,
        mu: &SetPartition,
        codim: u32,
        model: &K3Model,
    ) -> Result<PartitionCertificate, HilbertError> {
        let n = mu.n();
        let m = mu.m();
        let cert = |normal_form: String, realized_zero, tag| PartitionCertificate {
            partition: mu.to_string(),
            m,
            normal_form,
            realized_zero,
            tag,
        };
        // E_μ^* lowers codimension by n − m and lands on S^m, so anything of
        // codimension above n + m pulls back to zero.
        if (m as u32) + 2 < n as u32 && codim + 2 >= 2 * n as u32 {
            return Ok(cert("0".into(), true, TAG_CODIM));
        }
        let pulled = match self.pullback(p, mu, 0) {
            Err(HilbertError::Unsupported(_)) => return Ok(cert(String::new(), false, TAG_UNSUPPORTED)),
            other => other?,
        };
        let ring = self.bv().with_m(m);
        let sym = ring.symmetrize(&pulled, &Subgroup::Product(mu.symmetry_groups()));
        if sym != pulled {
            return Err(HilbertError::Bug(format!(
                "pullback along {mu} is not invariant under its symmetry group"
            )));
        }
        let realized_zero = realize(&pulled, m as usize, model)?.is_zero();
        let tag = if pulled.is_zero() {
            TAG_NF_ZERO
        } else if !realized_zero {
            TAG_NONZERO
        } else if m as usize <= 2 * model.b_tr() + 1 || mu.large_blocks() <= 2 {
            return Err(HilbertError::Bug(format!(
                "pullback along {mu} has nonzero normal form {} but vanishes in cohomology",
                ring.print(&pulled)
            )));
        } else {
            TAG_UNLICENSED
        };
        Ok(cert(ring.print(&pulled), realized_zero, tag))
    }
}
