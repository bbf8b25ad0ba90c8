use serde::Serialize;
use std::fmt;

/// Outcome of a vanishing check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Vanishes in cohomology and the relation is proved in the Chow ring.
    ChowZero,
    /// Nonzero already in cohomology.
    CohomologicallyNonzero,
    /// Vanishes in cohomology, but no available argument lifts this to the
    /// Chow ring (or the answer depends on unspecified parameters).
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ChowZero => "chow_zero",
            Verdict::CohomologicallyNonzero => "cohomologically_nonzero",
            Verdict::Indeterminate => "indeterminate",
        }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::ChowZero => 0,
            Verdict::CohomologicallyNonzero => 1,
            Verdict::Indeterminate => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
