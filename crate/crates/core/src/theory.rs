//! Closed-form predictions for the trace codes: weight distributions, the
//! per-codeword zero counts n_(b,a), and the auxiliary set sizes used to
//! derive them.
//!
//! Exact integer arithmetic throughout. Every division is checked; a formula
//! that fails to evaluate to an integer is reported as [`Error::NonIntegral`].
//! Nothing here calls into the code builder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{legendre, FpElement, FqElement, Field};
use crate::signs::{neg_one_pow, sign_exponent};

fn ipow(p: u32, e: u32) -> i128 {
    (p as i128).pow(e)
}

fn exact_div(num: i128, den: i128, formula: &'static str) -> Result<i128> {
    if num % den != 0 {
        return Err(Error::NonIntegral(formula));
    }
    Ok(num / den)
}

fn to_count(value: i128, formula: &'static str) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::NonIntegral(formula))
}

fn require_theorem_degree(m: u32) -> Result<()> {
    if m <= 2 {
        return Err(Error::UnsupportedM(m));
    }
    Ok(())
}

/// Which parity family a predicted distribution comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistributionFamily {
    OddDegree,
    EvenDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoreticalDistribution {
    pub p: u32,
    pub m: u32,
    /// `(weight, multiplicity)` sorted by weight, including `(0, 1)`.
    pub rows: Vec<(u64, u64)>,
    pub family: DistributionFamily,
}

impl TheoreticalDistribution {
    /// Smallest and largest nonzero weight.
    pub fn weight_range(&self) -> (u64, u64) {
        let nonzero = self.rows.iter().filter(|&&(w, c)| w > 0 && c > 0);
        let min = nonzero.clone().map(|&(w, _)| w).min().unwrap_or(0);
        let max = nonzero.map(|&(w, _)| w).max().unwrap_or(0);
        (min, max)
    }
}

/// Three nonzero weights `(p-1)p^{m-2}` and `(p-1)p^{m-2} ± δ`, with
/// `δ = p^{(m-3)/2}` for odd m and `p^{(m-2)/2}` for even m.
pub fn predicted_distribution(p: u32, m: u32) -> Result<TheoreticalDistribution> {
    require_theorem_degree(m)?;
    let base = (p as i128 - 1) * ipow(p, m - 2);
    let len = ipow(p, m - 1);
    let (delta, spread, family) = if m % 2 == 1 {
        (ipow(p, (m - 3) / 2), ipow(p, (m - 1) / 2), DistributionFamily::OddDegree)
    } else {
        (ipow(p, (m - 2) / 2), ipow(p, (m - 2) / 2), DistributionFamily::EvenDegree)
    };
    let half = |v: i128| exact_div((p as i128 - 1) * v, 2, "(p-1)(p^(m-1) ± spread)/2");
    let raw = [
        (0, 1),
        (base - delta, half(len - spread)?),
        (base, len - 1),
        (base + delta, half(len + spread)?),
    ];
    let mut rows = Vec::with_capacity(4);
    for (w, c) in raw {
        rows.push((to_count(w, "weight")?, to_count(c, "multiplicity")?));
    }
    let total: u64 = rows.iter().map(|&(_, c)| c).sum();
    if total as i128 != ipow(p, m) {
        return Err(Error::NonIntegral("multiplicities summing to p^m"));
    }
    Ok(TheoreticalDistribution { p, m, rows, family })
}

/// η(b) and Tr(b^{-1}) for nonzero b.
fn eta_and_trace_of_inverse(field: &Field, b: &FqElement) -> Result<(i128, FpElement)> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let eta = field.quadratic_character(b) as i128;
    Ok((eta, field.trace(&field.inv(b)?)))
}

/// η(-t) for t in F_p* when m is odd, where η restricted to F_p is the
/// Legendre symbol.
fn eta_of_negated(field: &Field, t: FpElement) -> i128 {
    legendre(field.p() as u64, -(t.value() as i64)) as i128
}

/// Predicted `n_(b,a) = |{x : Tr(x) = a, Tr(b x²) = 0}|` for b ≠ 0, a ≠ 0.
pub fn predicted_nba(field: &Field, b: &FqElement, a: FpElement) -> Result<u64> {
    let (p, m) = (field.p(), field.m());
    if m < 2 {
        return Err(Error::UnsupportedM(m));
    }
    let (eta_b, tr_inv) = eta_and_trace_of_inverse(field, b)?;
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    let main = ipow(p, m - 2);
    let value = if tr_inv.is_zero() {
        main
    } else if m % 2 == 1 {
        let sign = neg_one_pow(sign_exponent(p, m + 1)) as i128;
        main - sign * eta_b * eta_of_negated(field, tr_inv) * ipow(p, (m - 3) / 2)
    } else {
        let sign = neg_one_pow(sign_exponent(p, m)) as i128;
        main - sign * ipow(p, (m - 2) / 2) * eta_b
    };
    to_count(value, "n_(b,a)")
}

/// Predicted `n_(b,0)` (the count includes x = 0) for b ≠ 0.
pub fn predicted_nb0(field: &Field, b: &FqElement) -> Result<u64> {
    let (p, m) = (field.p(), field.m());
    if m < 2 {
        return Err(Error::UnsupportedM(m));
    }
    let (eta_b, tr_inv) = eta_and_trace_of_inverse(field, b)?;
    let main = ipow(p, m - 2);
    let pm1 = p as i128 - 1;
    let value = match (m % 2 == 0, tr_inv.is_zero()) {
        (true, true) => {
            let sign = neg_one_pow(sign_exponent(p, m)) as i128;
            main - sign * pm1 * eta_b * ipow(p, (m - 2) / 2)
        }
        (true, false) | (false, true) => main,
        (false, false) => {
            let sign = neg_one_pow(sign_exponent(p, m + 1)) as i128;
            main + sign * pm1 * eta_b * eta_of_negated(field, tr_inv) * ipow(p, (m - 3) / 2)
        }
    };
    to_count(value, "n_(b,0)")
}

/// Predicted sizes of `M = {b ≠ 0 : η(b) = -1, Tr(b) = 0}` and
/// `N = {b ≠ 0 : η(b) = 1, Tr(b) = 0}`.
pub fn count_m_n(field: &Field) -> Result<(u64, u64)> {
    let (p, m) = (field.p(), field.m());
    let q = ipow(p, m);
    let pi = p as i128;
    // 2p|M| = (q - p) + [m even] (-1)^{(p-1)m/4} (p-1) p^{m/2}
    let correction = if m % 2 == 0 {
        neg_one_pow(sign_exponent(p, m)) as i128 * (pi - 1) * ipow(p, m / 2)
    } else {
        0
    };
    let m_size = exact_div(q - pi + correction, 2 * pi, "|M|")?;
    let n_size = ipow(p, m - 1) - 1 - m_size;
    Ok((to_count(m_size, "|M|")?, to_count(n_size, "|N|")?))
}

/// Predicted size of `M_a = {x : η(x) = -1, Tr(x) = a}` for a ≠ 0.
pub fn count_ma(field: &Field, a: FpElement) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::ZeroA);
    }
    let (p, m) = (field.p(), field.m());
    // 2|M_a| = p^{m-1} - correction
    let correction = if m % 2 == 1 {
        let eta_neg_a = legendre(p as u64, -(a.value() as i64)) as i128;
        eta_neg_a * neg_one_pow(sign_exponent(p, m + 1)) as i128 * ipow(p, (m - 1) / 2)
    } else {
        neg_one_pow(sign_exponent(p, m)) as i128 * ipow(p, (m - 2) / 2)
    };
    let value = exact_div(ipow(p, m - 1) - correction, 2, "|M_a|")?;
    to_count(value, "|M_a|")
}

/// `Σ_{b ≠ 0} n_(b,a)` for a ≠ 0: each of the p^{m-1} nonzero x with
/// Tr(x) = a is counted by every b with Tr(b x²) = 0, of which p^{m-1} - 1 are nonzero.
pub fn nba_total(p: u32, m: u32) -> u64 {
    let fiber = (p as u64).pow(m - 1);
    fiber * (fiber - 1)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioVerdict {
    pub w_min: u64,
    pub w_max: u64,
    /// `w_min / w_max > (p-1)/p`, decided as `p · w_min > (p-1) · w_max`.
    pub holds: bool,
}

/// Checks `p · w_min > (p - 1) · w_max` for two nonzero weights.
pub fn ratio_holds(p: u32, w_min: u64, w_max: u64) -> bool {
    p as u128 * w_min as u128 > (p as u128 - 1) * w_max as u128
}

pub fn ratio_condition(p: u32, m: u32) -> Result<RatioVerdict> {
    let dist = predicted_distribution(p, m)?;
    let (w_min, w_max) = dist.weight_range();
    Ok(RatioVerdict {
        w_min,
        w_max,
        holds: ratio_holds(p, w_min, w_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributions_for_worked_examples() {
        let d = predicted_distribution(5, 3).unwrap();
        assert_eq!(d.rows, vec![(0, 1), (19, 40), (20, 24), (21, 60)]);
        assert_eq!(d.family, DistributionFamily::OddDegree);
        let d = predicted_distribution(5, 4).unwrap();
        assert_eq!(d.rows, vec![(0, 1), (95, 240), (100, 124), (105, 260)]);
        let d = predicted_distribution(3, 3).unwrap();
        assert_eq!(d.rows, vec![(0, 1), (5, 6), (6, 8), (7, 12)]);
        let d = predicted_distribution(3, 4).unwrap();
        assert_eq!(d.rows, vec![(0, 1), (15, 24), (18, 26), (21, 30)]);
        let d = predicted_distribution(3, 5).unwrap();
        assert_eq!(d.rows, vec![(0, 1), (51, 72), (54, 80), (57, 90)]);
        assert_eq!(predicted_distribution(3, 2), Err(Error::UnsupportedM(2)));
    }

    #[test]
    fn multiplicities_sum_to_field_size() {
        for p in [3u32, 5, 7, 11] {
            for m in 3..=9 {
                let d = predicted_distribution(p, m).unwrap();
                let total: u64 = d.rows.iter().map(|r| r.1).sum();
                assert_eq!(total, (p as u64).pow(m));
            }
        }
    }

    #[test]
    fn set_sizes_for_small_fields() {
        let f27 = Field::canonical(3, 3).unwrap();
        assert_eq!(count_m_n(&f27).unwrap(), (4, 4));
        assert_eq!(count_ma(&f27, f27.fp(1)).unwrap(), 6);
        assert_eq!(count_ma(&f27, f27.fp(0)), Err(Error::ZeroA));
        let f81 = Field::canonical(3, 4).unwrap();
        assert_eq!(count_m_n(&f81).unwrap(), (16, 10));
        // even m: independent of a
        let f625 = Field::canonical(5, 4).unwrap();
        let first = count_ma(&f625, f625.fp(1)).unwrap();
        for a in 2..5 {
            assert_eq!(count_ma(&f625, f625.fp(a)).unwrap(), first);
        }
    }

    #[test]
    fn zero_count_cases() {
        let f = Field::canonical(3, 3).unwrap();
        for b in f.elements().skip(1) {
            let tr_inv = f.trace(&f.inv(&b).unwrap());
            for a in 1..3 {
                let n = predicted_nba(&f, &b, f.fp(a)).unwrap();
                assert!((2..=4).contains(&n));
                if tr_inv.is_zero() {
                    assert_eq!(n, 3);
                }
            }
            if tr_inv.is_zero() {
                assert_eq!(predicted_nb0(&f, &b).unwrap(), 3);
            }
        }
        let f = Field::canonical(3, 4).unwrap();
        for b in f.elements().skip(1) {
            if !f.trace(&f.inv(&b).unwrap()).is_zero() {
                assert_eq!(predicted_nb0(&f, &b).unwrap(), 9);
            }
        }
        assert_eq!(predicted_nba(&f, &f.zero(), f.fp(1)), Err(Error::ZeroB));
        assert_eq!(predicted_nba(&f, &f.one(), f.fp(0)), Err(Error::ZeroA));
        assert_eq!(predicted_nb0(&f, &f.zero()), Err(Error::ZeroB));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(
            ratio_condition(3, 4).unwrap(),
            RatioVerdict { w_min: 15, w_max: 21, holds: true }
        );
        assert_eq!(
            ratio_condition(5, 5).unwrap(),
            RatioVerdict { w_min: 495, w_max: 505, holds: true }
        );
        assert_eq!(
            ratio_condition(3, 3).unwrap(),
            RatioVerdict { w_min: 5, w_max: 7, holds: true }
        );
        assert_eq!(ratio_condition(3, 2), Err(Error::UnsupportedM(2)));
    }
}
