//! Dense matrices over `F_p`, used by the brute-force oracles.

use crate::field::PrimeField;

/// Row-major dense matrix with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, k: PrimeField, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = k.add(self.data[i], v);
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self, k: PrimeField) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = k.inv(m[rank * cols + c]);
            for j in c..cols {
                m[rank * cols + j] = k.mul(m[rank * cols + j], inv);
            }
            for r in rank + 1..rows {
                let f = m[r * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = k.neg(f);
                for j in c..cols {
                    let v = k.mul(nf, m[rank * cols + j]);
                    m[r * cols + j] = k.add(m[r * cols + j], v);
                }
            }
            rank += 1;
        }
        rank
    }
}
