//! Cross-checks of every closed form against an independent computation:
//! exhaustive scans and direct sums over the field.
//!
//! Each check returns a [`CheckReport`]; the first failing input is kept as
//! a witness. Small fields are covered exhaustively, larger ones by seeded
//! sampling (see [`Sampling`]).

use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::{prime_gauss_sum_closed_form, CharacterSums};
use crate::code::count_nba;
use crate::error::Result;
use crate::field::{Field, FpElement, FqElement};
use crate::theory;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub witness: Option<String>,
    /// Largest observed |direct - closed| for numeric checks.
    pub max_error: Option<f64>,
    pub exhaustive: bool,
}

impl CheckReport {
    fn new(name: &'static str, exhaustive: bool) -> Self {
        CheckReport {
            name,
            checked: 0,
            failures: 0,
            witness: None,
            max_error: None,
            exhaustive,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn record_numeric(
        &mut self,
        direct: Complex<f64>,
        closed: Complex<f64>,
        tolerance: f64,
        witness: impl FnOnce() -> String,
    ) {
        let err = (direct - closed).norm();
        let ok = err.is_finite() && err <= tolerance;
        self.max_error = Some(self.max_error.map_or(err, |e| e.max(err)));
        self.record(ok, || format!("{} direct={direct} closed={closed}", witness()));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let coverage = if self.exhaustive { "exhaustive" } else { "sampled" };
        write!(f, "{verdict} {:<22} {} cases ({coverage})", self.name, self.checked)?;
        if let Some(err) = self.max_error {
            write!(f, ", max error {err:.3e}")?;
        }
        if self.failures > 0 {
            write!(f, ", {} failures", self.failures)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "; first: {w}")?;
        }
        Ok(())
    }
}

/// Fields with at most `exhaustive_limit` elements are checked over every
/// input; larger ones over `samples` seeded random inputs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            exhaustive_limit: 729,
            samples: 200,
            seed: 0,
        }
    }
}

impl Sampling {
    pub fn with_seed(seed: u64) -> Self {
        Sampling { seed, ..Self::default() }
    }

    fn is_exhaustive(&self, field: &Field) -> bool {
        field.q() <= self.exhaustive_limit
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Nonzero field elements to test.
    pub fn nonzero_elements(&self, field: &Field, salt: u64) -> Vec<FqElement> {
        if self.is_exhaustive(field) {
            return field.elements().skip(1).collect();
        }
        let mut rng = self.rng(salt);
        (0..self.samples)
            .map(|_| field.element(rng.random_range(1..field.q())))
            .collect()
    }

    /// Pairs (b, a) with b ≠ 0 and a ∈ F_p*.
    pub fn nonzero_pairs(&self, field: &Field, salt: u64) -> Vec<(FqElement, FpElement)> {
        let p = field.p() as i64;
        if self.is_exhaustive(field) {
            return field
                .elements()
                .skip(1)
                .flat_map(|b| (1..p).map(move |a| (b.clone(), FpElement::new(a, p as u32))))
                .collect();
        }
        let mut rng = self.rng(salt);
        (0..self.samples)
            .map(|_| {
                let b = field.element(rng.random_range(1..field.q()));
                (b, field.fp(rng.random_range(1..p)))
            })
            .collect()
    }
}

fn relative_tolerance(reference: Complex<f64>) -> f64 {
    1e-6 * reference.norm()
}

/// Numeric Gauss sums over F_q and F_p against the closed forms, plus |G| = √q.
pub fn check_gauss_sums(field: &Field) -> CheckReport {
    let cs = CharacterSums::<f64>::new(field);
    let mut report = CheckReport::new("gauss-sums", true);
    let numeric = cs.gauss_sum_numeric();
    let closed = cs.gauss_sum_closed_form();
    report.record_numeric(numeric, closed, relative_tolerance(closed), || "over F_q".into());
    let root_q = (field.q() as f64).sqrt();
    report.record((numeric.norm() - root_q).abs() <= 1e-6 * root_q, || {
        format!("|G| = {} vs sqrt(q) = {root_q}", numeric.norm())
    });
    let prime_numeric = cs.prime_gauss_sum_numeric();
    let prime_closed = prime_gauss_sum_closed_form::<f64>(field.p());
    report.record_numeric(prime_numeric, prime_closed, relative_tolerance(prime_closed), || {
        "over F_p".into()
    });
    report
}

/// `count` random quadratics a2 x² + a1 x + a0 (a2 ≠ 0): direct sum against
/// the completed-square closed form, tolerance 1e-6·√q.
pub fn check_quadratic_sums(field: &Field, count: usize, seed: u64) -> Result<CheckReport> {
    let cs = CharacterSums::<f64>::new(field);
    let mut report = CheckReport::new("quadratic-sums", false);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = 1e-6 * (field.q() as f64).sqrt();
    for _ in 0..count {
        let a2 = field.element(rng.random_range(1..field.q()));
        let a1 = field.element(rng.random_range(0..field.q()));
        let a0 = field.element(rng.random_range(0..field.q()));
        let pair = cs.quadratic_sum(&a2, &a1, &a0)?;
        report.record_numeric(pair.direct, pair.closed, tol, || {
            format!("a2={a2} a1={a1} a0={a0}")
        });
    }
    Ok(report)
}

/// Σ_{y ∈ F_p*} Σ_x χ_1(b y x²), tolerance 1e-6·p·√q.
pub fn check_scaled_square_sums(field: &Field, sampling: &Sampling) -> Result<CheckReport> {
    let cs = CharacterSums::<f64>::new(field);
    let mut report = CheckReport::new("scaled-square-sums", sampling.is_exhaustive(field));
    let tol = 1e-6 * field.p() as f64 * (field.q() as f64).sqrt();
    for b in sampling.nonzero_elements(field, 4) {
        let closed = cs.scaled_square_sum(&b)?;
        report.record_numeric(cs.scaled_square_sum_direct(&b), closed, tol, || format!("b={b}"));
    }
    Ok(report)
}

fn mixed_tolerance(field: &Field) -> f64 {
    let pm1 = field.p() as f64 - 1.0;
    1e-6 * pm1 * pm1 * (field.q() as f64).sqrt()
}

/// Σ_{y,z ∈ F_p*} Σ_x χ_1(b y x² + z x), tolerance 1e-6·(p-1)²·√q.
pub fn check_mixed_sums(field: &Field, sampling: &Sampling) -> Result<CheckReport> {
    let cs = CharacterSums::<f64>::new(field);
    let mut report = CheckReport::new("mixed-sums", sampling.is_exhaustive(field));
    let tol = mixed_tolerance(field);
    for b in sampling.nonzero_elements(field, 5) {
        let closed = cs.scaled_square_linear_sum(&b)?;
        let direct = cs.scaled_square_linear_sum_direct(&b);
        report.record_numeric(direct, closed, tol, || format!("b={b}"));
    }
    Ok(report)
}

/// Σ_{y,z ∈ F_p*} ζ^{-za} Σ_x ζ^{Tr(b y x² + z x)} over pairs (b, a),
/// tolerance 1e-6·(p-1)²·√q.
pub fn check_twisted_sums(field: &Field, sampling: &Sampling) -> Result<CheckReport> {
    let cs = CharacterSums::<f64>::new(field);
    let mut report = CheckReport::new("twisted-mixed-sums", sampling.is_exhaustive(field));
    let tol = mixed_tolerance(field);
    for (b, a) in sampling.nonzero_pairs(field, 12) {
        let closed = cs.twisted_square_linear_sum(&b, a)?;
        let direct = cs.twisted_square_linear_sum_direct(&b, a);
        report.record_numeric(direct, closed, tol, || format!("b={b} a={a}"));
    }
    Ok(report)
}

/// Exhaustive sizes of {b ≠ 0 : Tr(b) = 0} split by η(b).
pub fn brute_count_m_n(field: &Field) -> (u64, u64) {
    let mut m = 0;
    let mut n = 0;
    for b in field.elements().skip(1) {
        if field.trace(&b).is_zero() {
            match field.quadratic_character(&b) {
                -1 => m += 1,
                _ => n += 1,
            }
        }
    }
    (m, n)
}

/// Exhaustive size of {x : η(x) = -1, Tr(x) = a}.
pub fn brute_count_ma(field: &Field, a: FpElement) -> u64 {
    field
        .elements()
        .filter(|x| field.trace(x) == a && field.quadratic_character(x) == -1)
        .count() as u64
}

/// Trace-zero non-squares and squares: closed form vs exhaustive scan, and
/// |M| + |N| = p^{m-1} - 1.
pub fn check_trace_zero_split(field: &Field) -> Result<CheckReport> {
    let mut report = CheckReport::new("trace-zero-split", true);
    let predicted = theory::count_m_n(field)?;
    let brute = brute_count_m_n(field);
    report.record(predicted == brute, || format!("predicted={predicted:?} brute={brute:?}"));
    let fiber = (field.p() as u64).pow(field.m() - 1);
    report.record(predicted.0 + predicted.1 == fiber - 1, || {
        format!("|M|+|N|={} expected {}", predicted.0 + predicted.1, fiber - 1)
    });
    Ok(report)
}

/// Non-squares of trace a for every a ∈ F_p*: closed form vs exhaustive scan.
pub fn check_fiber_nonsquares(field: &Field) -> Result<CheckReport> {
    let mut report = CheckReport::new("fiber-nonsquares", true);
    for a in 1..field.p() as i64 {
        let a = field.fp(a);
        let predicted = theory::count_ma(field, a)?;
        let brute = brute_count_ma(field, a);
        report.record(predicted == brute, || format!("a={a} predicted={predicted} brute={brute}"));
    }
    Ok(report)
}

/// n_(b,0) closed form vs fiber scan.
pub fn check_zero_trace_counts(field: &Field, sampling: &Sampling) -> Result<CheckReport> {
    let mut report = CheckReport::new("zero-counts-a=0", sampling.is_exhaustive(field));
    for b in sampling.nonzero_elements(field, 8) {
        let predicted = theory::predicted_nb0(field, &b)?;
        let brute = count_nba(field, &b, field.fp(0))?;
        report.record(predicted == brute, || format!("b={b} predicted={predicted} brute={brute}"));
    }
    Ok(report)
}

/// n_(b,a), a ≠ 0, closed form vs fiber scan. When every b is covered the
/// totals over b are also compared with p^{m-1}(p^{m-1} - 1).
pub fn check_zero_counts(field: &Field, sampling: &Sampling) -> Result<CheckReport> {
    let exhaustive = sampling.is_exhaustive(field);
    let mut report = CheckReport::new("zero-counts", exhaustive);
    let p = field.p() as usize;
    let mut predicted_totals = vec![0u64; p];
    let mut brute_totals = vec![0u64; p];
    for (b, a) in sampling.nonzero_pairs(field, 13) {
        let predicted = theory::predicted_nba(field, &b, a)?;
        let brute = count_nba(field, &b, a)?;
        predicted_totals[a.value() as usize] += predicted;
        brute_totals[a.value() as usize] += brute;
        report.record(predicted == brute, || {
            format!("b={b} a={a} predicted={predicted} brute={brute}")
        });
    }
    if exhaustive {
        let expected = theory::nba_total(field.p(), field.m());
        for a in 1..p {
            let (pt, bt) = (predicted_totals[a], brute_totals[a]);
            report.record(pt == expected && bt == expected, || {
                format!("a={a} totals predicted={pt} brute={bt} expected={expected}")
            });
        }
    }
    Ok(report)
}

/// Every check for one field, in a fixed order.
pub fn verify_field(field: &Field, sampling: &Sampling) -> Result<Vec<CheckReport>> {
    Ok(vec![
        check_gauss_sums(field),
        check_quadratic_sums(field, 100, sampling.seed)?,
        check_scaled_square_sums(field, sampling)?,
        check_mixed_sums(field, sampling)?,
        check_trace_zero_split(field)?,
        check_fiber_nonsquares(field)?,
        check_zero_trace_counts(field, sampling)?,
        check_twisted_sums(field, sampling)?,
        check_zero_counts(field, sampling)?,
    ])
}
