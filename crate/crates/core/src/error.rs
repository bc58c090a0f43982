//! Error type shared by all numerical modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature order must be at least 1")]
    InvalidOrder,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exponent p must satisfy p >= 1 (got {p})")]
    InvalidExponent { p: f64 },

    #[error("(p, alpha) = ({p}, {alpha}) violates the direct/inverse theorem hypothesis")]
    OutOfHypothesis { p: f64, alpha: f64 },

    #[error("point x = {x} lies outside the open interval (-1, 1)")]
    DomainPoint { x: f64 },

    #[error("point x = {x} is too close to an endpoint (1 - x^2 < 1e-13)")]
    NearEndpoint { x: f64 },

    #[error("integrand returned a non-finite value at x = {x} ({context})")]
    NonFiniteSample { x: f64, context: &'static str },

    #[error("{context} did not converge")]
    NonConvergence { context: &'static str },

    #[error("IRLS diverged at iteration {iteration}")]
    IrlsDivergence { iteration: usize },

    #[error("report is degenerate: all best approximations below tolerance")]
    DegenerateReport,

    #[error("stability probe needs at least two non-degenerate reports (got {got})")]
    InsufficientReports { got: usize },

    #[error("unknown function id {id:?}")]
    UnknownFunction { id: String },

    #[error("at index {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attaches a batch index to an error propagated from an elementwise job.
    pub fn at_index(self, index: usize) -> Self {
        Error::AtIndex {
            index,
            source: Box::new(self),
        }
    }
}
