use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("boundary singularity: t = 0 is not a valid boundary point of the sector map")]
    BoundarySingularity,
    #[error("degenerate point: |g'(z)| = {modulus:e} at z = {re} + {im}i")]
    DegeneratePoint { re: f64, im: f64, modulus: f64 },
    #[error("map is not quasiregular on the grid: sup |h'/g'| = {k_sup}")]
    NotQuasiregular { k_sup: f64 },
    #[error("second dilatation reaches {sup_modulus} >= 1 on the grid")]
    DilatationTooLarge { sup_modulus: f64 },
    #[error("singular matrix: smallest singular value {ell:e} vs largest {op:e}")]
    SingularMatrix { op: f64, ell: f64 },
    #[error("coincident points in green function")]
    CoincidentPoints,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("non-finite integrand value {value} at node {node}")]
    NonFinite { node: usize, value: f64 },
    #[error("|{quantity}| = {modulus:e} is too close to zero")]
    NearZero { quantity: &'static str, modulus: f64 },
    #[error("f(z) = {re} + {im}i lies on the branch cut (-inf, 0]")]
    BranchCut { re: f64, im: f64 },
    #[error("finite-difference stencil leaves the domain (|x| + step = {reach})")]
    DomainExit { reach: f64 },
    #[error("regularization schedule did not converge: last difference {last_difference:e}")]
    NoConvergence { last_difference: f64 },
    #[error("invalid quadrature spec: {0}")]
    Spec(String),
    #[error("invalid schedule: {0}")]
    Schedule(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks `p ∈ (1, 2]`, the exponent range of every theorem in this crate.
pub(crate) fn check_p(p: f64) -> Result<()> {
    if p > 1.0 && p <= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "p",
            value: p,
            domain: "(1, 2]",
        })
    }
}
