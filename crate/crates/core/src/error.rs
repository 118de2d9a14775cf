use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid fan: {0}")]
    Validation(String),
    #[error("class group has torsion (invariant factors {0:?})")]
    TorsionClassGroup(Vec<String>),
    #[error("wall {tau:?} does not admit a relation with unit outer coefficients")]
    NonSmoothWall { tau: Vec<usize> },
    #[error("presentation is not a class map for this fan: {0}")]
    BadPresentation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("divisor has {got} coefficients, fan has {expected} rays")]
    Length { expected: usize, got: usize },
    #[error("class {0:?} has no preimage under the class map")]
    NoPreimage(Vec<i64>),
    #[error("violating pattern {pattern:?} has nonzero reduced cohomology on an unbounded chamber")]
    InfiniteContribution { pattern: Vec<usize> },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("computation cancelled")]
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("ray {0} has zero normal")]
    DegenerateArrangement(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("computation cancelled")]
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("no Hom data for ordered pair ({0}, {1})")]
    MissingPair(usize, usize),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("computation cancelled")]
    Cancelled,
}
