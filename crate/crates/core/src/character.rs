//! Additive characters, quadratic Gauss sums and the exponential sums built
//! from them, each available both as a closed form and as a direct sum over
//! the field.
//!
//! Everything is generic over the floating-point scalar; the crate root
//! exposes `f64` aliases. Direct sums first count how often each power of
//! ζ_p occurs (exact integer work) and only then touch floating point, so
//! their error does not grow with the number of field elements visited.

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumCast};

use crate::error::{Error, Result};
use crate::field::{legendre, FieldSpec, FpElement, FqElement, Field};
use crate::signs::{neg_one_pow, sign_exponent};

fn cast<T: Float>(x: impl num_traits::ToPrimitive) -> T {
    <T as NumCast>::from(x).expect("value representable in the float type")
}

/// `i^k`.
pub fn i_pow<T: Float>(k: u64) -> Complex<T> {
    let (z, o) = (T::zero(), T::one());
    match k % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

/// The p-th roots of unity ζ_p^k, k in 0..p, computed once.
#[derive(Clone, Debug)]
pub struct RootsOfUnity<T> {
    table: Vec<Complex<T>>,
}

impl<T: Float + FloatConst> RootsOfUnity<T> {
    pub fn new(p: u32) -> Self {
        let step = T::TAU() / cast::<T>(p);
        let table = (0..p)
            .map(|k| Complex::from_polar(T::one(), step * cast::<T>(k)))
            .collect();
        RootsOfUnity { table }
    }

    pub fn order(&self) -> u32 {
        self.table.len() as u32
    }

    /// ζ_p^k for any integer k.
    pub fn pow(&self, k: i64) -> Complex<T> {
        self.table[k.rem_euclid(self.table.len() as i64) as usize]
    }

    /// `Σ_k weights[k] · ζ_p^k`.
    pub fn weighted_sum<W: Copy + num_traits::ToPrimitive>(&self, weights: &[W]) -> Complex<T> {
        debug_assert_eq!(weights.len(), self.table.len());
        weights
            .iter()
            .zip(&self.table)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&w, &z)| {
                acc + z * cast::<T>(w)
            })
    }
}

/// G(η, χ_1) over GF(p^m): `(-1)^(m-1) · i^((p-1)^2 m / 4) · √q`.
pub fn gauss_sum_closed_form<T: Float>(p: u32, m: u32) -> Complex<T> {
    let pm1 = p as u64 - 1;
    // (p-1)^2 is divisible by 4 for odd p
    let num = pm1 * pm1 * m as u64;
    assert!(num % 4 == 0, "non-integral power of i for p={p}, m={m}");
    let root_q = cast::<T>(p).powi(m as i32).sqrt();
    i_pow::<T>(num / 4) * root_q * cast::<T>(neg_one_pow(m as u64 - 1))
}

/// G(η̄, χ̄_1) over the prime field: `i^((p-1)^2 / 4) · √p`.
pub fn prime_gauss_sum_closed_form<T: Float>(p: u32) -> Complex<T> {
    let pm1 = p as u64 - 1;
    assert!((pm1 * pm1) % 4 == 0, "non-integral power of i for p={p}");
    i_pow::<T>(pm1 * pm1 / 4) * cast::<T>(p).sqrt()
}

/// A direct sum and the closed form it should equal.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SumPair<T> {
    pub direct: Complex<T>,
    pub closed: Complex<T>,
}

impl<T: Float> SumPair<T> {
    pub fn abs_error(&self) -> T {
        (self.direct - self.closed).norm()
    }
}

/// Character-sum evaluator bound to one field.
#[derive(Clone, Debug)]
pub struct CharacterSums<'f, T = f64> {
    field: &'f Field,
    roots: RootsOfUnity<T>,
}

impl<'f, T: Float + FloatConst> CharacterSums<'f, T> {
    pub fn new(field: &'f Field) -> Self {
        CharacterSums {
            field,
            roots: RootsOfUnity::new(field.p()),
        }
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn spec(&self) -> &'f FieldSpec {
        self.field.spec()
    }

    pub fn roots(&self) -> &RootsOfUnity<T> {
        &self.roots
    }

    /// χ_b(x) = ζ_p^{Tr(bx)}.
    pub fn additive_character(&self, b: &FqElement, x: &FqElement) -> Complex<T> {
        let t = self.field.trace(&self.field.mul(b, x));
        self.roots.pow(t.value() as i64)
    }

    /// Σ_x χ_b(x), accumulated term by term.
    pub fn character_sum(&self, b: &FqElement) -> Complex<T> {
        self.field
            .elements()
            .fold(Complex::new(T::zero(), T::zero()), |acc, x| {
                acc + self.additive_character(b, &x)
            })
    }

    /// G(η, χ_1) = Σ_x η(x) χ_1(x) by direct summation.
    pub fn gauss_sum_numeric(&self) -> Complex<T> {
        let mut weights = vec![0i64; self.field.p() as usize];
        for x in self.field.elements() {
            let eta = self.field.quadratic_character(&x) as i64;
            weights[self.field.trace(&x).value() as usize] += eta;
        }
        self.roots.weighted_sum(&weights)
    }

    /// G(η̄, χ̄_1) = Σ_{y ∈ F_p} (y/p) ζ_p^y by direct summation.
    pub fn prime_gauss_sum_numeric(&self) -> Complex<T> {
        let p = self.field.p();
        let weights: Vec<i64> = (0..p).map(|y| legendre(p as u64, y as i64) as i64).collect();
        self.roots.weighted_sum(&weights)
    }

    pub fn gauss_sum_closed_form(&self) -> Complex<T> {
        gauss_sum_closed_form(self.field.p(), self.field.m())
    }

    /// Σ_x χ_1(a2 x² + a1 x + a0) directly, alongside
    /// `χ_1(a0 - a1² (4 a2)^{-1}) η(a2) G(η, χ_1)`.
    pub fn quadratic_sum(
        &self,
        a2: &FqElement,
        a1: &FqElement,
        a0: &FqElement,
    ) -> Result<SumPair<T>> {
        let f = self.field;
        if a2.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let mut counts = vec![0u64; f.p() as usize];
        for x in f.elements() {
            let value = f.add(&f.mul(&f.add(&f.mul(a2, &x), a1), &x), a0);
            counts[f.trace(&value).value() as usize] += 1;
        }
        let direct = self.roots.weighted_sum(&counts);

        let four_a2 = f.scale(f.fp(4), a2);
        let shift = f.mul(&f.square(a1), &f.inv(&four_a2)?);
        let constant = f.sub(a0, &shift);
        let closed = self.additive_character(&f.one(), &constant)
            * cast::<T>(f.quadratic_character(a2))
            * self.gauss_sum_closed_form();
        Ok(SumPair { direct, closed })
    }

    /// For each x, the pair (Tr(b x²), Tr(x)) tallied into a p × p table.
    fn square_and_trace_counts(&self, b: &FqElement) -> Vec<u64> {
        let f = self.field;
        let p = f.p() as usize;
        let mut counts = vec![0u64; p * p];
        for x in f.elements() {
            let t_sq = f.trace(&f.mul(b, &f.square(&x))).value() as usize;
            let t_lin = f.trace(&x).value() as usize;
            counts[t_sq * p + t_lin] += 1;
        }
        counts
    }

    /// Closed form of Σ_{y ∈ F_p*} Σ_x χ_1(b y x²): zero for odd m,
    /// `(p-1) η(b) G(η, χ_1)` for even m.
    pub fn scaled_square_sum(&self, b: &FqElement) -> Result<Complex<T>> {
        let f = self.field;
        if b.is_zero() {
            return Err(Error::ZeroB);
        }
        if f.m() % 2 == 1 {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        let eta = f.quadratic_character(b) as i64;
        Ok(self.gauss_sum_closed_form() * cast::<T>((f.p() as i64 - 1) * eta))
    }

    /// Σ_{y ∈ F_p*} Σ_x χ_1(b y x²) by direct summation.
    pub fn scaled_square_sum_direct(&self, b: &FqElement) -> Complex<T> {
        let p = self.field.p() as usize;
        let counts = self.square_and_trace_counts(b);
        let mut weights = vec![0u64; p];
        for t_sq in 0..p {
            let c: u64 = counts[t_sq * p..(t_sq + 1) * p].iter().sum();
            for y in 1..p {
                weights[(y * t_sq) % p] += c;
            }
        }
        self.roots.weighted_sum(&weights)
    }

    /// Closed form of Σ_{y,z ∈ F_p*} Σ_x χ_1(b y x² + z x), split on the parity
    /// of m and on whether Tr(b^{-1}) vanishes.
    pub fn scaled_square_linear_sum(&self, b: &FqElement) -> Result<Complex<T>> {
        let f = self.field;
        if b.is_zero() {
            return Err(Error::ZeroB);
        }
        let (p, m) = (f.p(), f.m());
        let eta_b = f.quadratic_character(b) as i64;
        let tr_inv = f.trace(&f.inv(b)?);
        let pm1 = p as i64 - 1;
        let g = self.gauss_sum_closed_form();
        let value = match (m % 2 == 1, tr_inv.is_zero()) {
            (true, true) => Complex::new(T::zero(), T::zero()),
            (true, false) => {
                let eta_neg_tr = legendre(p as u64, -(tr_inv.value() as i64)) as i64;
                let sign = neg_one_pow(sign_exponent(p, m + 1));
                let mag = cast::<T>(p).powi(((m + 1) / 2) as i32);
                Complex::new(cast::<T>(eta_b * eta_neg_tr * sign * pm1) * mag, T::zero())
            }
            (false, true) => g * cast::<T>(eta_b * pm1 * pm1),
            (false, false) => g * cast::<T>(-eta_b * pm1),
        };
        Ok(value)
    }

    /// Σ_{y,z ∈ F_p*} Σ_x χ_1(b y x² + z x) by direct summation.
    pub fn scaled_square_linear_sum_direct(&self, b: &FqElement) -> Complex<T> {
        self.twisted_direct(b, 0)
    }

    /// Closed form of Σ_{y,z ∈ F_p*} ζ_p^{-za} Σ_x ζ_p^{Tr(b y x² + z x)} for a ≠ 0.
    pub fn twisted_square_linear_sum(&self, b: &FqElement, a: FpElement) -> Result<Complex<T>> {
        let f = self.field;
        if b.is_zero() {
            return Err(Error::ZeroB);
        }
        if a.is_zero() {
            return Err(Error::ZeroA);
        }
        let (p, m) = (f.p(), f.m());
        let eta_b = f.quadratic_character(b) as i64;
        let tr_inv = f.trace(&f.inv(b)?);
        let value: i64 = match (m % 2 == 1, tr_inv.is_zero()) {
            (true, true) => 0,
            (true, false) => {
                let eta_neg_tr = legendre(p as u64, -(tr_inv.value() as i64)) as i64;
                -neg_one_pow(sign_exponent(p, m + 1)) * eta_b * eta_neg_tr
            }
            (false, true) => neg_one_pow(sign_exponent(p, m)) * eta_b * (p as i64 - 1),
            (false, false) => -neg_one_pow(sign_exponent(p, m)) * eta_b,
        };
        // odd m carries p^{(m+1)/2}, even m carries p^{m/2}
        let power = if m % 2 == 1 { (m + 1) / 2 } else { m / 2 };
        Ok(Complex::new(cast::<T>(value) * cast::<T>(p).powi(power as i32), T::zero()))
    }

    /// Σ_{y,z ∈ F_p*} ζ_p^{-za} Σ_x ζ_p^{Tr(b y x² + z x)} by direct summation.
    pub fn twisted_square_linear_sum_direct(&self, b: &FqElement, a: FpElement) -> Complex<T> {
        self.twisted_direct(b, a.value() as usize)
    }

    // Tr(b y x² + z x) = y Tr(b x²) + z Tr(x) for y, z in the prime field.
    fn twisted_direct(&self, b: &FqElement, a: usize) -> Complex<T> {
        let p = self.field.p() as usize;
        let counts = self.square_and_trace_counts(b);
        let mut weights = vec![0u64; p];
        for t_sq in 0..p {
            for t_lin in 0..p {
                let c = counts[t_sq * p + t_lin];
                if c == 0 {
                    continue;
                }
                for y in 1..p {
                    for z in 1..p {
                        // exponent y·t_sq + z·t_lin - z·a  (mod p)
                        let e = (y * t_sq + z * t_lin + z * (p - a)) % p;
                        weights[e] += c;
                    }
                }
            }
        }
        self.roots.weighted_sum(&weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn additive_character_examples() {
        let f = Field::canonical(3, 3).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        let one = Complex::new(1.0, 0.0);
        for x in f.elements() {
            assert_eq!(cs.additive_character(&f.zero(), &x), one);
            let v = cs.additive_character(&f.element(5), &x);
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let tr = f.trace(&x).value();
            let expected = match tr {
                0 => one,
                1 => Complex::new(-0.5, 0.866_025_403_784_438_6),
                _ => Complex::new(-0.5, -0.866_025_403_784_438_6),
            };
            assert!(close(cs.additive_character(&f.one(), &x), expected, 1e-12));
        }
    }

    #[test]
    fn closed_form_gauss_values_over_prime_fields() {
        let g3 = gauss_sum_closed_form::<f64>(3, 1);
        assert!(close(g3, Complex::new(0.0, 3f64.sqrt()), 1e-12));
        let g5 = gauss_sum_closed_form::<f64>(5, 1);
        assert!(close(g5, Complex::new(5f64.sqrt(), 0.0), 1e-12));
        assert!(close(gauss_sum_closed_form::<f64>(3, 2), Complex::new(3.0, 0.0), 1e-12));
        assert!(close(gauss_sum_closed_form::<f64>(5, 2), Complex::new(-5.0, 0.0), 1e-12));
        for p in [3u32, 5, 7, 11, 13] {
            assert_eq!(prime_gauss_sum_closed_form::<f64>(p), gauss_sum_closed_form::<f64>(p, 1));
        }
    }

    #[test]
    fn numeric_gauss_sums_match_closed_forms() {
        for (p, m) in [(3u64, 1u32), (5, 1), (3, 2), (5, 2), (7, 3), (3, 5)] {
            let f = Field::canonical(p, m).unwrap();
            let cs = CharacterSums::<f64>::new(&f);
            let numeric = cs.gauss_sum_numeric();
            let closed = cs.gauss_sum_closed_form();
            let root_q = (f.q() as f64).sqrt();
            assert!(close(numeric, closed, 1e-6 * root_q), "p={p} m={m} {numeric} vs {closed}");
            assert!((numeric.norm() - root_q).abs() <= 1e-6 * root_q);
            let prime = cs.prime_gauss_sum_numeric();
            assert!(close(prime, prime_gauss_sum_closed_form(f.p()), 1e-9));
        }
    }

    #[test]
    fn single_precision_instantiation() {
        let f = Field::canonical(5, 2).unwrap();
        let cs = CharacterSums::<f32>::new(&f);
        let err = (cs.gauss_sum_numeric() - cs.gauss_sum_closed_form()).norm();
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn quadratic_sum_reduces_to_gauss_sum() {
        let f = Field::canonical(3, 3).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        let pair = cs.quadratic_sum(&f.one(), &f.zero(), &f.zero()).unwrap();
        assert!(close(pair.direct, cs.gauss_sum_numeric(), 1e-9));
        assert!(pair.abs_error() < 1e-9);
        let c = f.element(7);
        let a2 = f.element(11);
        let pair = cs.quadratic_sum(&a2, &f.zero(), &c).unwrap();
        let expected = cs.additive_character(&f.one(), &c)
            * f.quadratic_character(&a2) as f64
            * cs.gauss_sum_closed_form();
        assert!(close(pair.closed, expected, 1e-12));
        assert!(pair.abs_error() < 1e-9);
        assert_eq!(
            cs.quadratic_sum(&f.zero(), &c, &c),
            Err(Error::ZeroLeadingCoefficient)
        );
    }

    #[test]
    fn zero_arguments_rejected() {
        let f = Field::canonical(3, 3).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        assert_eq!(cs.scaled_square_sum(&f.zero()), Err(Error::ZeroB));
        assert_eq!(cs.scaled_square_linear_sum(&f.zero()), Err(Error::ZeroB));
        assert_eq!(cs.twisted_square_linear_sum(&f.zero(), f.fp(1)), Err(Error::ZeroB));
        assert_eq!(cs.twisted_square_linear_sum(&f.one(), f.fp(0)), Err(Error::ZeroA));
    }

    #[test]
    fn closed_form_case_values() {
        // odd m: the plain scaled-square sum vanishes for every b
        let f = Field::canonical(3, 3).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        for b in f.elements().skip(1) {
            assert_eq!(cs.scaled_square_sum(&b).unwrap(), Complex::new(0.0, 0.0));
            let tr_inv = f.trace(&f.inv(&b).unwrap());
            if tr_inv.is_zero() {
                assert_eq!(cs.scaled_square_linear_sum(&b).unwrap().norm(), 0.0);
                assert_eq!(cs.twisted_square_linear_sum(&b, f.fp(1)).unwrap().norm(), 0.0);
            }
        }
        // even m with Tr(b^{-1}) != 0
        let f = Field::canonical(3, 4).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        let g = cs.gauss_sum_closed_form();
        for b in f.elements().skip(1) {
            let eta = f.quadratic_character(&b) as f64;
            if !f.trace(&f.inv(&b).unwrap()).is_zero() {
                let v = cs.scaled_square_linear_sum(&b).unwrap();
                assert!(close(v, g * (-eta * 2.0), 1e-12));
            }
            if eta == 1.0 {
                assert!(close(cs.scaled_square_sum(&b).unwrap(), g * 2.0, 1e-12));
            }
        }
    }

    #[test]
    fn closed_forms_match_direct_sums_in_gf27() {
        let f = Field::canonical(3, 3).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        let tol = 1e-6 * 4.0 * 27f64.sqrt();
        for b in f.elements().skip(1) {
            assert!(close(cs.scaled_square_sum(&b).unwrap(), cs.scaled_square_sum_direct(&b), tol));
            assert!(close(
                cs.scaled_square_linear_sum(&b).unwrap(),
                cs.scaled_square_linear_sum_direct(&b),
                tol
            ));
            for a in 1..3 {
                let a = f.fp(a);
                assert!(close(
                    cs.twisted_square_linear_sum(&b, a).unwrap(),
                    cs.twisted_square_linear_sum_direct(&b, a),
                    tol
                ));
            }
        }
    }

    #[test]
    fn orthogonality_in_small_field() {
        let f = Field::canonical(5, 2).unwrap();
        let cs = CharacterSums::<f64>::new(&f);
        assert!(close(cs.character_sum(&f.zero()), Complex::new(25.0, 0.0), 1e-9));
        for b in f.elements().skip(1) {
            assert!(cs.character_sum(&b).norm() < 1e-9);
        }
    }
}
