use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p must be odd (got {0})")]
    EvenCharacteristic(u64),
    #[error("extension degree must be at least 1 (got {0})")]
    ZeroDegree(u32),
    #[error("p^(2m-1) overflows 64-bit counts for p={p}, m={m}")]
    Overflow { p: u64, m: u32 },
    #[error("modulus {0} is not irreducible")]
    NotIrreducible(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("bad field element: {0}")]
    BadElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient of the quadratic is zero")]
    ZeroLeadingCoefficient,
    #[error("b must be nonzero")]
    ZeroB,
    #[error("a must be nonzero")]
    ZeroA,
    #[error("a=0 out of theorem scope")]
    BadA,
    #[error("m={0} unsupported: the weight distribution results need m > 2")]
    UnsupportedM(u32),
    #[error("enumeration cost p^(2m-1)={cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u64, budget: u64 },
    #[error("formula `{0}` did not evaluate to an integer")]
    NonIntegral(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
