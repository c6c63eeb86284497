use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("singular parameter point")]
    SingularPoint,
    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u32, found: u32 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("singular generator has no inverse (position {pos})")]
    NoInverse { pos: usize },
    #[error("index out of range: {index} with {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("not destabilizable")]
    NotDestabilizable,
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("ambient mismatch: (d={d1}, n={n1}) vs (d={d2}, n={n2})")]
    AmbientMismatch { d1: u32, n1: usize, d2: u32, n2: usize },
    #[error("not an E-solution")]
    NotESolution,
    #[error("E-solution has zeta = 0")]
    ZeroZeta,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
