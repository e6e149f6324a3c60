use thiserror::Error;

/// Which connecting-set axiom an instance violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("connecting set is empty")]
    Empty,
    #[error("identity excluded: rotation exponent 0 is in H")]
    ContainsIdentity,
    #[error("inverse-closure: a^{present} is in H but its inverse a^{missing} is not")]
    NotInverseClosed { present: usize, missing: usize },
    #[error("generation: H generates a subgroup of order {reached}, not the whole group of order {order}")]
    DoesNotGenerate { reached: usize, order: usize },
    #[error("cyclic mode admits no reflections, got {count}")]
    ReflectionsInCyclicMode { count: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("group order must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("exponent {exponent} out of range for order {order}")]
    ExponentOutOfRange { exponent: usize, order: usize },
    #[error("elements come from different groups (orders {left} and {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("invalid connecting set: {0}")]
    InvalidConnectingSet(#[from] AxiomViolation),
    #[error("divisor polynomial must be monic and nonzero")]
    NonMonicDivisor,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: entries ({row},{col}) differ by {diff}")]
    Asymmetric { row: usize, col: usize, diff: f64 },
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("a faithful transitive action of D_{n} has orbit size n or 2n, got {vertices}")]
    UnsupportedOrbitSize { vertices: usize, n: usize },
    #[error("exhaustive census would enumerate {count} candidates, above the cap of {cap}")]
    InstanceCapExceeded { count: u128, cap: u128 },
    #[error("precondition unmet: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
