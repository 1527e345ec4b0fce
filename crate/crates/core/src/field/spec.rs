use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_prime, poly};
use crate::error::{Error, Result};

/// A validated description of GF(p^m): an odd prime, a degree and a monic
/// irreducible modulus of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct FieldSpec {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    q: u64,
}

impl FieldSpec {
    /// Validates `(p, m)` and the modulus. When `modulus` is `None` the
    /// canonical one is used (see [`poly::canonical_modulus`]).
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree(m));
        }
        // counts up to p^(2m-1) must fit; p itself must fit a coefficient
        if p > u32::MAX as u64 || p.checked_pow(2 * m - 1).is_none() {
            return Err(Error::Overflow { p, m });
        }
        let p32 = p as u32;
        let modulus = match modulus {
            None => poly::canonical_modulus(p32, m as usize),
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients for degree {m}, got {}",
                        m + 1,
                        coeffs.len()
                    )));
                }
                if coeffs.last() != Some(&1) {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= p32) {
                    return Err(Error::BadModulus(format!("coefficient {c} not reduced mod {p}")));
                }
                if !poly::is_irreducible(&coeffs, p32) {
                    return Err(Error::NotIrreducible(format_modulus(&coeffs)));
                }
                coeffs
            }
        };
        Ok(FieldSpec {
            p: p32,
            m,
            modulus,
            q: p.pow(m),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Coefficients `c_0..c_m` of the modulus, `c_m = 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod [{}]", self.p, self.m, format_modulus(&self.modulus))
    }
}

/// Builds a field description; the free-function form of [`FieldSpec::new`].
pub fn make_field(p: u64, m: u32, modulus: Option<Vec<u32>>) -> Result<FieldSpec> {
    FieldSpec::new(p, m, modulus)
}

/// `"c0,c1,...,cm"`.
pub fn format_modulus(coeffs: &[u32]) -> String {
    coeffs
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_modulus(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("modulus coefficient {part:?}: {e}")))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    p: u64,
    m: u32,
    modulus: String,
}

impl From<FieldSpec> for RawSpec {
    fn from(spec: FieldSpec) -> Self {
        RawSpec {
            p: spec.p as u64,
            m: spec.m,
            modulus: format_modulus(&spec.modulus),
        }
    }
}

impl TryFrom<RawSpec> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        FieldSpec::new(raw.p, raw.m, Some(parse_modulus(&raw.modulus)?))
    }
}
