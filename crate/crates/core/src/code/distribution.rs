use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::matrix::{generator_matrix, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::field::{Field, FpElement};

/// Default cap on `p^(2m-1)`, the number of codeword coordinates visited by
/// a full enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// `p^(2m-1)`, or `None` on overflow.
pub fn enumeration_cost(p: u32, m: u32) -> Option<u64> {
    (p as u64).checked_pow(2 * m - 1)
}

/// Exact weight multiset of a code of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    /// `(weight, multiplicity)`, sorted by weight, multiplicities nonzero.
    entries: Vec<(u64, u64)>,
    n: u64,
}

impl WeightDistribution {
    pub fn new(n: u64, counts: BTreeMap<u64, u64>) -> Result<Self> {
        if let Some((&w, _)) = counts.iter().find(|&(&w, _)| w > n) {
            return Err(Error::Parse(format!("weight {w} exceeds length {n}")));
        }
        Ok(WeightDistribution {
            entries: counts.into_iter().filter(|&(_, c)| c > 0).collect(),
            n,
        })
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn multiplicity(&self, weight: u64) -> u64 {
        self.entries
            .iter()
            .find(|&&(w, _)| w == weight)
            .map_or(0, |&(_, c)| c)
    }

    /// Total number of messages b enumerated (q for a full enumeration).
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    /// Smallest nonzero weight, 0 if every codeword is zero.
    pub fn min_nonzero(&self) -> u64 {
        self.entries.iter().map(|&(w, _)| w).find(|&w| w > 0).unwrap_or(0)
    }

    pub fn max_nonzero(&self) -> u64 {
        self.entries.iter().map(|&(w, _)| w).filter(|&w| w > 0).max().unwrap_or(0)
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.entries.iter().map(|&(w, _)| w).filter(|&w| w > 0).collect()
    }

    /// `log_p` of the number of distinct codewords. The message map b ↦ c_b
    /// is F_p-linear, so the code has `total / A_0` distinct words, where
    /// `A_0` counts the messages sent to the zero word.
    pub fn dimension(&self, p: u32) -> Option<u32> {
        let a0 = self.multiplicity(0);
        if a0 == 0 || self.total() % a0 != 0 {
            return None;
        }
        let mut distinct = self.total() / a0;
        let mut k = 0;
        while distinct > 1 {
            if distinct % p as u64 != 0 {
                return None;
            }
            distinct /= p as u64;
            k += 1;
        }
        Some(k)
    }

    /// Weight enumerator with the zero word's coefficient divided out as
    /// `A_0`, e.g. `1 + 6x^5 + 8x^6 + 12x^7`.
    pub fn enumerator_string(&self) -> String {
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|&(w, c)| match w {
                0 => c.to_string(),
                1 => format!("{c}x"),
                _ => format!("{c}x^{w}"),
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.enumerator_string())
    }
}

fn check_budget(field: &Field, budget: u64) -> Result<()> {
    let cost = enumeration_cost(field.p(), field.m()).unwrap_or(u64::MAX);
    if cost > budget {
        return Err(Error::BudgetExceeded { cost, budget });
    }
    Ok(())
}

/// Weight of every codeword c_b, b ∈ F_q, of the code with defining set D_a.
pub fn weight_distribution(field: &Field, a: FpElement, budget: u64) -> Result<WeightDistribution> {
    check_budget(field, budget)?;
    let gen = generator_matrix(field, a);
    let mut counts = BTreeMap::new();
    Enumerator::new(&gen, field.m() as usize).run(0, field.q(), &mut counts);
    WeightDistribution::new(gen.n_cols() as u64, counts)
}

/// Same result as [`weight_distribution`], with the message space split into
/// blocks enumerated on the rayon pool.
pub fn weight_distribution_parallel(
    field: &Field,
    a: FpElement,
    budget: u64,
) -> Result<WeightDistribution> {
    check_budget(field, budget)?;
    let gen = generator_matrix(field, a);
    let m = field.m() as usize;
    let q = field.q();
    let blocks = (field.p() as u64).pow(field.m().min(2));
    let block_len = q / blocks;
    let counts = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut counts = BTreeMap::new();
            Enumerator::new(&gen, m).run(block * block_len, block_len, &mut counts);
            counts
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (w, c) in part {
                *acc.entry(w).or_insert(0) += c;
            }
            acc
        });
    WeightDistribution::new(gen.n_cols() as u64, counts)
}

/// Walks messages b in canonical order, keeping the running codeword
/// `Σ b_i · row_i` up to date with one row addition per digit that changes.
struct Enumerator {
    p: u32,
    m: usize,
    n: usize,
    rows: Vec<u32>,
}

impl Enumerator {
    fn new(gen: &GeneratorMatrix, m: usize) -> Self {
        Enumerator {
            p: gen.p(),
            m,
            n: gen.n_cols(),
            rows: gen.rows().concat(),
        }
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    fn run(&self, start: u64, len: u64, counts: &mut BTreeMap<u64, u64>) {
        if len == 0 {
            return;
        }
        let p = self.p;
        let mut digits = vec![0u32; self.m];
        let mut rest = start;
        for d in digits.iter_mut() {
            *d = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        let mut word = vec![0u32; self.n];
        for (i, &d) in digits.iter().enumerate() {
            for _ in 0..d {
                add_row(&mut word, self.row(i), p);
            }
        }
        let mut weight = word.iter().filter(|&&c| c != 0).count() as u64;
        *counts.entry(weight).or_insert(0) += 1;
        for _ in 1..len {
            let mut i = 0;
            loop {
                digits[i] += 1;
                if digits[i] == p && i + 1 < self.m {
                    // wrapping a digit adds its row a p-th time, i.e. back to zero
                    digits[i] = 0;
                    add_row(&mut word, self.row(i), p);
                    i += 1;
                    continue;
                }
                weight = add_row_weight(&mut word, self.row(i), p);
                break;
            }
            *counts.entry(weight).or_insert(0) += 1;
        }
    }
}

// w, r < p; never overflows even for p close to 2^32
#[inline(always)]
fn mod_add(w: u32, r: u32, p: u32) -> u32 {
    let gap = p - r;
    if w >= gap { w - gap } else { w + r }
}

fn add_row(word: &mut [u32], row: &[u32], p: u32) {
    for (w, &r) in word.iter_mut().zip(row) {
        *w = mod_add(*w, r, p);
    }
}

fn add_row_weight(word: &mut [u32], row: &[u32], p: u32) -> u64 {
    let mut nonzero = 0u32;
    for (w, &r) in word.iter_mut().zip(row) {
        let s = mod_add(*w, r, p);
        *w = s;
        nonzero = nonzero.wrapping_add((s != 0) as u32);
    }
    nonzero as u64
}
