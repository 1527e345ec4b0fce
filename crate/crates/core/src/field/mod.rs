//! Exact arithmetic in F_p and GF(p^m) using a polynomial basis.
//!
//! Elements of GF(p^m) are coefficient vectors `c_0 + c_1 α + ... + c_{m-1} α^{m-1}`
//! where α is the class of the indeterminate modulo the field's modulus. The
//! canonical order of elements is the integer whose little-endian base-p
//! digits are the coefficients.

pub mod poly;
mod spec;

use std::fmt;

use smallvec::SmallVec;

pub use spec::{format_modulus, make_field, parse_modulus, FieldSpec};

use crate::error::{Error, Result};

type Coeffs = SmallVec<[u32; 8]>;
type Wide = SmallVec<[u64; 16]>;

/// An element of the prime field, always reduced into `[0, p)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElement(u32);

impl FpElement {
    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn new(value: i64, p: u32) -> Self {
        FpElement(value.rem_euclid(p as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of GF(p^m): `m` coefficients, index `i` holding the coefficient of α^i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqElement(Coeffs);

impl FqElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_modulus(&self.0))
    }
}

/// Arithmetic context for one field. Immutable once built.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    p: u64,
    m: usize,
    /// α^{m+k} reduced by the modulus, for k in 0..m-1.
    reduction: Vec<Coeffs>,
    /// Tr(α^i) for each basis element.
    trace_basis: Vec<u32>,
    /// Products can be summed without intermediate reduction.
    lazy: bool,
}

/// Builds the arithmetic context for a validated field.
pub fn field_arith(spec: FieldSpec) -> Field {
    Field::new(spec)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let p = spec.p() as u64;
        let m = spec.m() as usize;
        let lazy = p
            .checked_mul(p)
            .and_then(|sq| sq.checked_mul(2 * m as u64 + 2))
            .is_some();
        let mut field = Field {
            p,
            m,
            reduction: Vec::new(),
            trace_basis: Vec::new(),
            lazy,
            spec,
        };
        field.reduction = field.reduction_table();
        field.trace_basis = (0..m)
            .map(|i| field.trace_by_frobenius(&field.basis(i)).value())
            .collect();
        field
    }

    /// Builds the canonical field for `(p, m)`.
    pub fn canonical(p: u64, m: u32) -> Result<Self> {
        Ok(Field::new(FieldSpec::new(p, m, None)?))
    }

    fn reduction_table(&self) -> Vec<Coeffs> {
        let m = self.m;
        let p = self.p;
        // α^m = -(c_0 + ... + c_{m-1} α^{m-1})
        let mut current: Coeffs = self.spec.modulus()[..m]
            .iter()
            .map(|&c| ((p - c as u64) % p) as u32)
            .collect();
        let mut table = Vec::with_capacity(m.saturating_sub(1));
        for _ in 0..m.saturating_sub(1) {
            table.push(current.clone());
            // multiply by α: shift up, fold the overflow coefficient back in
            let top = current[m - 1] as u64;
            let mut next: Coeffs = SmallVec::from_elem(0, m);
            for i in 1..m {
                next[i] = current[i - 1];
            }
            for i in 0..m {
                next[i] = ((next[i] as u64 + top * table[0][i] as u64) % p) as u32;
            }
            current = next;
        }
        table
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn m(&self) -> u32 {
        self.m as u32
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    pub fn fp(&self, value: i64) -> FpElement {
        FpElement::new(value, self.p as u32)
    }

    pub fn zero(&self) -> FqElement {
        FqElement(SmallVec::from_elem(0, self.m))
    }

    pub fn one(&self) -> FqElement {
        self.embed(FpElement(1))
    }

    /// The polynomial basis element α^j as a coefficient vector.
    pub fn basis(&self, j: usize) -> FqElement {
        assert!(j < self.m, "basis index {j} out of range for degree {}", self.m);
        let mut coeffs: Coeffs = SmallVec::from_elem(0, self.m);
        coeffs[j] = 1;
        FqElement(coeffs)
    }

    /// The image of `c` under F_p ⊂ F_q.
    pub fn embed(&self, c: FpElement) -> FqElement {
        let mut coeffs: Coeffs = SmallVec::from_elem(0, self.m);
        coeffs[0] = c.0 % self.p as u32;
        FqElement(coeffs)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElement> {
        if coeffs.len() != self.m {
            return Err(Error::BadElement(format!(
                "expected {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= self.p) {
            return Err(Error::BadElement(format!("coefficient {c} not reduced mod {}", self.p)));
        }
        Ok(FqElement(coeffs.iter().copied().collect()))
    }

    /// Element with canonical index `index` (little-endian base-p digits).
    pub fn element(&self, mut index: u64) -> FqElement {
        debug_assert!(index < self.q());
        let mut coeffs: Coeffs = SmallVec::with_capacity(self.m);
        for _ in 0..self.m {
            coeffs.push((index % self.p) as u32);
            index /= self.p;
        }
        FqElement(coeffs)
    }

    pub fn index_of(&self, x: &FqElement) -> u64 {
        x.0.iter().rev().fold(0u64, |acc, &c| acc * self.p + c as u64)
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.q()).map(move |i| self.element(i))
    }

    pub fn add(&self, x: &FqElement, y: &FqElement) -> FqElement {
        let p = self.p;
        FqElement(
            x.0.iter()
                .zip(&y.0)
                .map(|(&a, &b)| {
                    let s = a as u64 + b as u64;
                    (if s >= p { s - p } else { s }) as u32
                })
                .collect(),
        )
    }

    pub fn neg(&self, x: &FqElement) -> FqElement {
        let p = self.p as u32;
        FqElement(x.0.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect())
    }

    pub fn sub(&self, x: &FqElement, y: &FqElement) -> FqElement {
        self.add(x, &self.neg(y))
    }

    /// `c · x` for `c` in the prime field.
    pub fn scale(&self, c: FpElement, x: &FqElement) -> FqElement {
        let c = c.0 as u64;
        FqElement(x.0.iter().map(|&a| ((a as u64 * c) % self.p) as u32).collect())
    }

    pub fn mul(&self, x: &FqElement, y: &FqElement) -> FqElement {
        let (p, m) = (self.p, self.m);
        let mut prod: Wide = SmallVec::from_elem(0, 2 * m - 1);
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                let t = a as u64 * b as u64;
                prod[i + j] = if self.lazy { prod[i + j] + t } else { (prod[i + j] + t % p) % p };
            }
        }
        let mut out: Wide = prod[..m].iter().map(|&c| c % p).collect();
        for (k, row) in self.reduction.iter().enumerate() {
            let c = prod[m + k] % p;
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row.iter()) {
                let t = c * r as u64;
                *o = if self.lazy { *o + t } else { (*o + t % p) % p };
            }
        }
        FqElement(out.into_iter().map(|c| (c % p) as u32).collect())
    }

    pub fn square(&self, x: &FqElement) -> FqElement {
        self.mul(x, x)
    }

    /// Square-and-multiply.
    pub fn pow(&self, x: &FqElement, mut exp: u64) -> FqElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// Inverse via x^(q-2).
    pub fn inv(&self, x: &FqElement) -> Result<FqElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.q() - 2))
    }

    /// The Frobenius map x ↦ x^p.
    pub fn frobenius(&self, x: &FqElement) -> FqElement {
        self.pow(x, self.p)
    }

    /// Absolute trace as the sum of the m Frobenius conjugates of `x`.
    pub fn trace_by_frobenius(&self, x: &FqElement) -> FpElement {
        let mut conj = x.clone();
        let mut sum = x.clone();
        for _ in 1..self.m {
            conj = self.frobenius(&conj);
            sum = self.add(&sum, &conj);
        }
        assert!(
            sum.0[1..].iter().all(|&c| c == 0),
            "trace of {x} left the prime field: {sum}"
        );
        FpElement(sum.0[0])
    }

    /// Absolute trace, evaluated through its values on the polynomial basis.
    pub fn trace(&self, x: &FqElement) -> FpElement {
        let s = x
            .0
            .iter()
            .zip(&self.trace_basis)
            .fold(0u64, |acc, (&c, &t)| (acc + c as u64 * t as u64) % self.p);
        FpElement(s as u32)
    }

    /// Tr(α^i) for i in 0..m.
    pub fn trace_basis(&self) -> &[u32] {
        &self.trace_basis
    }

    /// η(x): 0 at zero, 1 on nonzero squares, -1 otherwise; via x^((q-1)/2).
    pub fn quadratic_character(&self, x: &FqElement) -> i8 {
        if x.is_zero() {
            return 0;
        }
        let r = self.pow(x, (self.q() - 1) / 2);
        if r == self.one() {
            1
        } else {
            assert_eq!(r, self.embed(self.fp(-1)), "Euler criterion produced {r}");
            -1
        }
    }

    /// An element of multiplicative order q - 1, the first one in canonical order.
    pub fn find_generator(&self) -> FqElement {
        let order = self.q() - 1;
        let factors = prime_factors(order);
        let one = self.one();
        (1..self.q())
            .map(|i| self.element(i))
            .find(|g| factors.iter().all(|&r| self.pow(g, order / r) != one))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (y / p) for an odd prime p, by Euler's criterion.
pub fn legendre(p: u64, y: i64) -> i8 {
    let y = y.rem_euclid(p as i64) as u64;
    if y == 0 {
        return 0;
    }
    match pow_mod(y, (p - 1) / 2, p) {
        1 => 1,
        r => {
            assert_eq!(r, p - 1, "Euler criterion failed for ({y}/{p})");
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf27() -> Field {
        Field::canonical(3, 3).unwrap()
    }

    fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> FqElement {
        field.element(rng.random_range(0..field.q()))
    }

    #[test]
    fn alpha_cubed_reduces() {
        let f = gf27();
        let alpha = f.basis(1);
        let alpha2 = f.basis(2);
        // α^3 = α + 2 modulo x^3 + 2x + 1
        assert_eq!(f.mul(&alpha, &alpha2).coeffs(), &[2, 1, 0]);
    }

    #[test]
    fn inverses_in_gf27() {
        let f = gf27();
        let one = f.one();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(&f.inv(&x).unwrap(), &x), one);
        }
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn full_power_is_identity() {
        for (p, m) in [(3, 3), (5, 2), (7, 3), (3, 1)] {
            let f = Field::canonical(p, m).unwrap();
            for x in f.elements() {
                assert_eq!(f.pow(&x, f.q()), x);
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f = gf27();
        assert_eq!(f.trace(&f.basis(1)).value(), 0);
        assert_eq!(f.trace_by_frobenius(&f.basis(1)).value(), 0);
        assert_eq!(f.trace(&f.zero()).value(), 0);
        for c in 0..3 {
            let x = f.embed(f.fp(c));
            assert_eq!(f.trace(&x), f.fp(3 * c));
        }
        // also -(coefficient of x^{m-1} in the modulus) for a quartic
        let f81 = Field::canonical(3, 4).unwrap();
        let c3 = f81.spec().modulus()[3] as i64;
        assert_eq!(f81.trace(&f81.basis(1)), f81.fp(-c3));
    }

    #[test]
    fn trace_routes_agree_exhaustively() {
        for (p, m) in [(3, 3), (3, 4), (5, 3), (7, 2), (3, 6)] {
            let f = Field::canonical(p, m).unwrap();
            for x in f.elements() {
                assert_eq!(f.trace(&x), f.trace_by_frobenius(&x), "{x}");
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(3, 5), (5, 4), (7, 3), (11, 3)] {
            let f = Field::canonical(p, m).unwrap();
            for _ in 0..1000 {
                let x = random_element(&f, &mut rng);
                let y = random_element(&f, &mut rng);
                let lhs = f.frobenius(&f.add(&x, &y));
                let rhs = f.add(&f.frobenius(&x), &f.frobenius(&y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn non_lazy_multiplication_matches() {
        // p near 2^32 forces reduction after every product
        let p = 4_294_967_291u64;
        let f = Field::canonical(p, 1).unwrap();
        assert!(!f.lazy);
        let x = f.embed(f.fp(p as i64 - 2));
        let y = f.embed(f.fp(p as i64 - 3));
        assert_eq!(f.mul(&x, &y).coeffs(), &[6]);
        assert_eq!(f.add(&x, &y).coeffs(), &[(p - 5) as u32]);
        assert_eq!(f.mul(&f.inv(&x).unwrap(), &x), f.one());
    }

    #[test]
    fn quadratic_character_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m) in [(3, 3), (5, 2), (7, 3), (3, 4)] {
            let f = Field::canonical(p, m).unwrap();
            assert_eq!(f.quadratic_character(&f.zero()), 0);
            assert_eq!(f.quadratic_character(&f.find_generator()), -1);
            for _ in 0..50 {
                let y = random_element(&f, &mut rng);
                if !y.is_zero() {
                    assert_eq!(f.quadratic_character(&f.square(&y)), 1);
                }
            }
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(3, 2), -1);
        assert_eq!(legendre(5, 4), 1);
        assert_eq!(legendre(7, 0), 0);
        assert_eq!(legendre(7, -1), -1);
        assert_eq!(legendre(13, -1), 1);
        // brute force: squares mod 11
        let squares: Vec<i64> = (1..11).map(|x: i64| x * x % 11).collect();
        for y in 1..11 {
            assert_eq!(legendre(11, y) == 1, squares.contains(&y));
        }
    }

    #[test]
    fn generator_orbits() {
        let f3 = Field::canonical(3, 1).unwrap();
        assert_eq!(f3.find_generator().coeffs(), &[2]);
        let f25 = Field::canonical(5, 2).unwrap();
        let g = f25.find_generator();
        let mut seen = std::collections::HashSet::new();
        let mut x = f25.one();
        for _ in 0..24 {
            assert!(seen.insert(f25.index_of(&x)));
            x = f25.mul(&x, &g);
        }
        assert_eq!(x, f25.one());
        for (p, m) in [(3, 4), (7, 3), (5, 3)] {
            let f = Field::canonical(p, m).unwrap();
            let g = f.find_generator();
            let order = f.q() - 1;
            assert_eq!(f.pow(&g, order), f.one());
            for r in prime_factors(order) {
                assert_ne!(f.pow(&g, order / r), f.one());
            }
        }
    }

    #[test]
    fn element_index_round_trip() {
        let f = Field::canonical(5, 3).unwrap();
        for i in 0..f.q() {
            assert_eq!(f.index_of(&f.element(i)), i);
        }
        assert!(f.from_coeffs(&[1, 2]).is_err());
        assert!(f.from_coeffs(&[1, 2, 5]).is_err());
        assert_eq!(f.from_coeffs(&[1, 2, 3]).unwrap(), f.element(1 + 2 * 5 + 3 * 25));
    }

    #[test]
    fn helpers() {
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert!(is_prime(2) && is_prime(37) && !is_prime(39) && !is_prime(1));
        assert_eq!(pow_mod(3, 4, 7), 4);
    }
}
