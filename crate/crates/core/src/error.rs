use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not an odd prime.
    InvalidPrime(u64),
    /// Extension degree outside the supported range.
    InvalidDegree(u32),
    /// Field too large for the table-driven representation.
    FieldTooLarge { p: u32, e: u32 },
    ModulusWrongDegree { expected: u32, got: usize },
    ModulusNotMonic,
    ModulusNotIrreducible,
    ModulusNotPrimitive,
    /// Coefficient outside `[0, p)`.
    CoefficientOutOfRange { value: u64, p: u32 },
    /// Two cyclotomic integers over different primes.
    MismatchedPrime { left: u32, right: u32 },
    /// Raw coefficient vector of the wrong length.
    WrongLength { expected: usize, got: usize },
    /// An argument that must be nonzero was zero.
    ZeroArgument(&'static str),
    /// Code parameters violate a structural requirement.
    InvalidCodeSpec(String),
    /// Operation needs a parity of m/d that the parameters do not have.
    WrongParity(&'static str),
    /// A closed form disagreed with its brute-force definition.
    SumMismatch { sum: &'static str, detail: String },
    /// A prediction is requested for parameters outside every theorem.
    NotApplicable(String),
    /// A weight distribution with no nonzero weight.
    NoNonzeroWeight,
    /// An internal consistency check failed.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::InvalidDegree(e) => write!(f, "unsupported extension degree {e}"),
            Error::FieldTooLarge { p, e } => {
                write!(f, "field of order {p}^{e} exceeds the supported size")
            }
            Error::ModulusWrongDegree { expected, got } => {
                write!(f, "modulus has degree {got}, expected {expected}")
            }
            Error::ModulusNotMonic => write!(f, "modulus is not monic"),
            Error::ModulusNotIrreducible => write!(f, "modulus is not irreducible"),
            Error::ModulusNotPrimitive => write!(f, "modulus is irreducible but not primitive"),
            Error::CoefficientOutOfRange { value, p } => {
                write!(f, "coefficient {value} is not a residue mod {p}")
            }
            Error::MismatchedPrime { left, right } => {
                write!(f, "cyclotomic integers over different primes ({left} vs {right})")
            }
            Error::WrongLength { expected, got } => {
                write!(f, "expected {expected} coefficients, got {got}")
            }
            Error::ZeroArgument(name) => write!(f, "argument `{name}` must be nonzero"),
            Error::InvalidCodeSpec(msg) => write!(f, "invalid code parameters: {msg}"),
            Error::WrongParity(msg) => write!(f, "wrong parity: {msg}"),
            Error::SumMismatch { sum, detail } => {
                write!(f, "closed form of {sum} disagrees with its definition: {detail}")
            }
            Error::NotApplicable(msg) => write!(f, "no closed form applies: {msg}"),
            Error::NoNonzeroWeight => write!(f, "weight distribution has no nonzero weight"),
            Error::Inconsistent(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
