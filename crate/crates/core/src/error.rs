use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameters degenerate: {0}")]
    DegenerateParams(String),

    #[error("capacity exceeded: {what} needs {needed} entries, budget is {budget}")]
    Capacity {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("degenerate prime range: no multipliers in [{lo}, {hi}]; pass an explicit list")]
    DegeneratePrimeRange { lo: f64, hi: f64 },

    #[error("quadrature did not converge after {evaluations} evaluations (estimate {estimate_re} + {estimate_im}i, error {error})")]
    NonConvergence {
        estimate_re: f64,
        estimate_im: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_capacity(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::Capacity {
            what,
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}
