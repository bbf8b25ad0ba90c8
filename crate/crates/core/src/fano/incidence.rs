use serde::Serialize;

/// Shape of the quadratic relation satisfied by the incidence
/// correspondence `I ⊂ F × F` (pairs of lines that meet):
///
/// `I² = α·Δ_F + Γ·I + Γ'`
///
/// with `α` a nonzero scalar, `Γ` of degree 2 in `l_1, l_2` and `Γ'` a
/// weighted polynomial of degree 4 in `l_1, l_2, cc_1, cc_2`. Only the
/// shape is recorded: no values of `α`, `Γ`, `Γ'` are computed, and the
/// relation is not used as a rewrite rule. Its consequence for divisors is
/// the cubic rule `F4`, which the rule set takes directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceLedger {
    pub relation: &'static str,
    pub symbols: &'static [(&'static str, &'static str)],
    pub consequence: &'static str,
}

pub const INCIDENCE: IncidenceLedger = IncidenceLedger {
    relation: "I^2 = alpha*Delta_F + Gamma*I + Gamma'",
    symbols: &[
        ("I", "incidence correspondence in CH^2(F x F)"),
        ("Delta_F", "diagonal of F"),
        ("alpha", "nonzero rational scalar"),
        ("Gamma", "degree 2 polynomial in l_1, l_2"),
        ("Gamma'", "degree 4 polynomial in l_1, l_2, cc_1, cc_2"),
    ],
    consequence: "D(j)*D(k)*D(r) -> qi(l)*(q(j,k)*l^2*D(r) + q(j,r)*l^2*D(k) + q(k,r)*l^2*D(j))",
};
