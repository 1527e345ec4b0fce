//! The codes C_{D_a}: coordinates indexed by the defining set
//! `D_a = {x ≠ 0 : Tr(x) = a}`, the codeword for `b` being `(Tr(b d²))_{d ∈ D_a}`.

mod distribution;
mod matrix;
mod summary;

pub use distribution::{
    enumeration_cost, weight_distribution, weight_distribution_parallel, WeightDistribution,
    DEFAULT_BUDGET,
};
pub use matrix::{generator_matrix, GeneratorMatrix};
pub use summary::{code_summary, code_summary_with, CodeSummary};

use crate::error::{Error, Result};
use crate::field::{Field, FpElement, FqElement};

/// Nonzero elements of trace `a`, in canonical element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    a: FpElement,
    elements: Vec<FqElement>,
}

impl DefiningSet {
    pub fn a(&self) -> FpElement {
        self.a
    }

    pub fn elements(&self) -> &[FqElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn defining_set(field: &Field, a: FpElement) -> DefiningSet {
    let elements = field
        .elements()
        .skip(1)
        .filter(|x| field.trace(x) == a)
        .collect();
    DefiningSet { a, elements }
}

/// `(Tr(b d_1²), ..., Tr(b d_n²))`.
pub fn codeword(field: &Field, set: &DefiningSet, b: &FqElement) -> Vec<u32> {
    set.elements
        .iter()
        .map(|d| field.trace(&field.mul(b, &field.square(d))).value())
        .collect()
}

pub fn hamming_weight(word: &[u32]) -> u64 {
    word.iter().filter(|&&c| c != 0).count() as u64
}

/// `n_(b,a) = |{x ∈ F_q : Tr(x) = a, Tr(b x²) = 0}|` by scanning the trace
/// fiber; includes x = 0 when a = 0.
pub fn count_nba(field: &Field, b: &FqElement, a: FpElement) -> Result<u64> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    Ok(field
        .elements()
        .filter(|x| field.trace(x) == a)
        .filter(|x| field.trace(&field.mul(b, &field.square(x))).is_zero())
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_set_sizes() {
        let f = Field::canonical(3, 3).unwrap();
        let d1 = defining_set(&f, f.fp(1));
        assert_eq!(d1.len(), 9);
        assert!(d1.elements().iter().all(|d| f.trace(d) == f.fp(1) && !d.is_zero()));
        let d0 = defining_set(&f, f.fp(0));
        assert_eq!(d0.len(), 8);
        // canonical order
        let idx: Vec<u64> = d1.elements().iter().map(|d| f.index_of(d)).collect();
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn codeword_weights() {
        let f = Field::canonical(3, 3).unwrap();
        let set = defining_set(&f, f.fp(1));
        assert!(codeword(&f, &set, &f.zero()).iter().all(|&c| c == 0));
        let w = hamming_weight(&codeword(&f, &set, &f.one()));
        assert!((5..=7).contains(&w));
        for b in f.elements().skip(1) {
            let wt = hamming_weight(&codeword(&f, &set, &b));
            assert_eq!(wt, 9 - count_nba(&f, &b, f.fp(1)).unwrap());
        }
    }

    #[test]
    fn zero_counts_in_gf27() {
        let f = Field::canonical(3, 3).unwrap();
        for b in f.elements().skip(1) {
            let tr_inv = f.trace(&f.inv(&b).unwrap());
            for a in 1..3 {
                let n = count_nba(&f, &b, f.fp(a)).unwrap();
                assert!((2..=4).contains(&n), "n={n}");
                if tr_inv.is_zero() {
                    assert_eq!(n, 3);
                }
            }
        }
        assert_eq!(count_nba(&f, &f.zero(), f.fp(1)), Err(Error::ZeroB));
    }
}
