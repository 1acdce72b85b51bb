use serde::Serialize;

/// Printed with every summary.
pub const LIMITATION: &str = "certified for the finite budget and the atomic measures given; \
statements about all multi-indices or about infinite-support measures are not certified";

/// One certification outcome under a stable key.
///
/// Keys: T1 zero bound for linear forms (AT property), T2 zero location and
/// orthogonality of mixed forms, T3 normality of every index, C1 biorthogonal
/// sequences, C2 convergence of type II approximants, C3 interlacing of
/// consecutive forms, L4 inverse decomposition. ID marks the identity suite
/// and SYS system validation.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryLine {
    pub key: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

impl SummaryLine {
    pub fn new(key: &str, claim: &str, passed: bool, detail: impl Into<String>) -> Self {
        SummaryLine { key: key.into(), claim: claim.into(), passed, detail: detail.into() }
    }

    pub fn render(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{}] {mark} {}: {}", self.key, self.claim, self.detail)
    }
}

pub const T1: &str = "linear forms of the tail have at most |n| - 1 zeros off the first hull";
pub const T2: &str = "mixed forms have exactly |n2| simple zeros inside the root hull and satisfy orthogonality";
pub const T3: &str = "every index is normal with a one-dimensional solution space";
pub const C1: &str = "forms along complete sequences are biorthogonal";
pub const C2: &str = "type II approximants converge off the root hull";
pub const C3: &str = "zeros of consecutive diagonal forms interlace";
pub const L4: &str = "inverse decomposition solves the triangular moment system";
pub const ID: &str = "transform identities hold at every sample point";
pub const SYS: &str = "support conditions hold";
