use super::{codeword, defining_set};
use crate::error::{Error, Result};
use crate::field::{pow_mod, Field, FpElement};

/// An m × n matrix over F_p whose rows are the codewords of the polynomial
/// basis elements α^0, ..., α^{m-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    p: u32,
    rows: Vec<Vec<u32>>,
}

pub fn generator_matrix(field: &Field, a: FpElement) -> GeneratorMatrix {
    let set = defining_set(field, a);
    let rows = (0..field.m() as usize)
        .map(|j| codeword(field, &set, &field.basis(j)))
        .collect();
    GeneratorMatrix { p: field.p(), rows }
}

impl GeneratorMatrix {
    pub fn new(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|&c| c >= p) {
            return Err(Error::Parse(format!("entry not reduced mod {p}")));
        }
        Ok(GeneratorMatrix { p, rows })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// `Σ_i coeffs[i] · row_i`.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.n_cols()];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            for (o, &v) in out.iter_mut().zip(row) {
                *o = (*o + c as u64 * v as u64) % p;
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    /// Rank over F_p by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_mod_p(self.rows.clone(), self.p)
    }

    /// True if `word` lies in the row space.
    pub fn spans(&self, word: &[u32]) -> bool {
        let mut extended = self.rows.clone();
        extended.push(word.to_vec());
        rank_mod_p(extended, self.p) == self.rank()
    }

    /// One row per line, entries separated by commas.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(p: u32, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<u32>()
                            .map_err(|e| Error::Parse(format!("matrix entry {v:?}: {e}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorMatrix::new(p, rows)
    }
}

fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let p64 = p as u64;
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col] as u64, p64 - 2, p64);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&v| v as u64 * inv % p64).collect();
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col] as u64;
            for (v, &pv) in rows[r].iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + (p64 - factor) * pv) % p64) as u32;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_rank_for_gf27() {
        let f = Field::canonical(3, 3).unwrap();
        let g = generator_matrix(&f, f.fp(1));
        assert_eq!((g.n_rows(), g.n_cols()), (3, 9));
        assert_eq!(g.rank(), 3);
        let set = defining_set(&f, f.fp(1));
        for b in f.elements() {
            let word = codeword(&f, &set, &b);
            assert!(g.spans(&word));
            assert_eq!(g.combine(b.coeffs()), word);
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = GeneratorMatrix::new(5, vec![vec![1, 2, 3], vec![2, 4, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.spans(&[3, 1, 4]));
        assert!(!m.spans(&[0, 0, 1]));
    }

    #[test]
    fn csv_round_trip() {
        let f = Field::canonical(5, 3).unwrap();
        let g = generator_matrix(&f, f.fp(2));
        let back = GeneratorMatrix::from_csv(5, &g.to_csv()).unwrap();
        assert_eq!(back, g);
        assert!(GeneratorMatrix::from_csv(5, "1,2\n3").is_err());
        assert!(GeneratorMatrix::from_csv(5, "1,7").is_err());
    }
}
