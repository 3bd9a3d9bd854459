use core::fmt;

/// Everything that can go wrong in `qlp-core`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value lies outside the region where an operation is defined
    /// (log outside the principal disk, exp outside its disk, `p | a` for
    /// the Teichmüller character, ...).
    Domain(&'static str),
    /// Division by an element that is zero to its known precision.
    DivisionByZero,
    /// A result would be known to fewer p-adic digits than the policy floor.
    PrecisionUnderflow { have: i64, need: i64 },
    /// Evaluation at the pole `s = 1`.
    Pole,
    /// The two operands live in different `Q_p`.
    PrimeMismatch { left: u64, right: u64 },
    /// The character cannot be evaluated in the requested domain.
    UnsupportedCharacter(&'static str),
    /// Character table is not a homomorphism, or its order is inconsistent.
    InvalidCharacter(&'static str),
    /// `q` violates the disk / non-degeneracy requirements.
    InvalidQ(&'static str),
    /// An input parameter violates a stated precondition.
    InvalidArgument(&'static str),
    /// A series did not reach its tail bound within the term budget.
    BudgetExhausted { terms: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::PrecisionUnderflow { have, need } => write!(
                f,
                "precision underflow: result known mod p^{have}, need p^{need}"
            ),
            Error::Pole => f.write_str("evaluation at the pole s = 1"),
            Error::PrimeMismatch { left, right } => {
                write!(f, "operands over different primes ({left} vs {right})")
            }
            Error::UnsupportedCharacter(why) => write!(f, "unsupported character: {why}"),
            Error::InvalidCharacter(why) => write!(f, "invalid character: {why}"),
            Error::InvalidQ(why) => write!(f, "invalid q: {why}"),
            Error::InvalidArgument(why) => write!(f, "invalid argument: {why}"),
            Error::BudgetExhausted { terms } => {
                write!(f, "series budget exhausted after {terms} terms")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
