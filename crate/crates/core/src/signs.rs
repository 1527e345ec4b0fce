//! Integer exponents of -1 and i that appear in the closed forms.

/// `(p - 1) · m / 4`. Integral whenever `m` is even (p is odd); for odd `m`
/// only when `p ≡ 1 (mod 4)`. Panics on a non-integral request, since every
/// caller is expected to pass an argument that makes the quotient exact.
pub fn sign_exponent(p: u32, m: u32) -> u64 {
    let num = (p as u64 - 1) * m as u64;
    assert!(
        num % 4 == 0,
        "(p-1)m/4 is not an integer for p={p}, m={m}"
    );
    num / 4
}

/// `(-1)^e`.
pub fn neg_one_pow(e: u64) -> i64 {
    if e % 2 == 0 { 1 } else { -1 }
}
