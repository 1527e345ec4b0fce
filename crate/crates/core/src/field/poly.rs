//! Dense polynomials over a prime field, little-endian coefficient vectors.
//!
//! Only what field construction needs: remainder by a monic divisor, the
//! sieve of monic irreducibles, and the canonical modulus search.

/// Drops trailing zero coefficients. The zero polynomial is the empty vector.
fn trim(mut poly: Vec<u32>) -> Vec<u32> {
    while poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

/// Remainder of `num` modulo the monic polynomial `divisor`.
pub(crate) fn rem_monic(num: &[u32], divisor: &[u32], p: u32) -> Vec<u32> {
    debug_assert_eq!(divisor.last(), Some(&1));
    let p64 = p as u64;
    let dlen = divisor.len();
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    if r.len() < dlen {
        return trim(num.to_vec());
    }
    for top in (dlen - 1..r.len()).rev() {
        let lead = r[top] % p64;
        if lead == 0 {
            continue;
        }
        let shift = top + 1 - dlen;
        for (i, &d) in divisor.iter().enumerate() {
            // subtract lead * d, as adding lead * (p - d)
            r[shift + i] = (r[shift + i] + lead * ((p64 - d as u64) % p64)) % p64;
        }
    }
    r.truncate(dlen - 1);
    trim(r.into_iter().map(|c| (c % p64) as u32).collect())
}

/// The monic polynomial of degree `degree` whose lower coefficients are the
/// little-endian base-`p` digits of `index`.
pub(crate) fn monic_from_index(mut index: u64, degree: usize, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push((index % p as u64) as u32);
        index /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// All monic irreducible polynomials of degree `1..=max_degree`, grouped by
/// degree in canonical index order.
pub(crate) fn monic_irreducibles(p: u32, max_degree: usize) -> Vec<Vec<u32>> {
    let mut found: Vec<Vec<u32>> = Vec::new();
    for degree in 1..=max_degree {
        let count = (p as u64).pow(degree as u32);
        for index in 0..count {
            let candidate = monic_from_index(index, degree, p);
            if !has_factor_among(&candidate, &found, p) {
                found.push(candidate);
            }
        }
    }
    found
}

/// True if some polynomial in `divisors` of degree at most half of `poly`'s
/// degree divides `poly`.
fn has_factor_among(poly: &[u32], divisors: &[Vec<u32>], p: u32) -> bool {
    let half = (poly.len() - 1) / 2;
    divisors
        .iter()
        .take_while(|d| d.len() - 1 <= half)
        .any(|d| rem_monic(poly, d, p).is_empty())
}

/// Trial division by every monic irreducible of degree at most `deg / 2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let lead = *poly.last().unwrap() as u64;
    // normalise to monic so the trial divisions are by monic polynomials only
    let inv_lead = super::pow_mod(lead, p as u64 - 2, p as u64);
    let monic: Vec<u32> = poly
        .iter()
        .map(|&c| ((c as u64 * inv_lead) % p as u64) as u32)
        .collect();
    let half = (monic.len() - 1) / 2;
    let sieve = monic_irreducibles(p, half);
    !has_factor_among(&monic, &sieve, p)
}

/// First monic irreducible of degree `m` when candidates are ordered by the
/// integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
pub fn canonical_modulus(p: u32, m: usize) -> Vec<u32> {
    let sieve = monic_irreducibles(p, m / 2);
    let count = (p as u64).pow(m as u32);
    (0..count)
        .map(|index| monic_from_index(index, m, p))
        .find(|candidate| !has_factor_among(candidate, &sieve, p))
        .expect("an irreducible polynomial of every degree exists")
}
