//! Dense GF(2) matrices.

use std::fmt;

/// Row-major 0/1 matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n_rows = rows.len();
        let data = rows.into_iter().flatten().map(|b| u8::from(b != 0)).collect();
        Self {
            rows: n_rows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = u8::from(v != 0);
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|&b| b as usize).sum()
    }

    /// Appends a row.
    pub fn push_row(&mut self, row: &[u8]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&b| u8::from(b != 0)));
        self.rows += 1;
    }

    /// `self · v` over GF(2).
    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        self.iter_rows()
            .map(|row| row.iter().zip(v).fold(0u8, |acc, (&a, &b)| acc ^ (a & b)))
            .collect()
    }

    /// `self · otherᵀ` over GF(2).
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for (i, a) in self.iter_rows().enumerate() {
            for (j, b) in other.iter_rows().enumerate() {
                let dot = a.iter().zip(b).fold(0u8, |acc, (&x, &y)| acc ^ (x & y));
                out.set(i, j, dot);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&b| b == 0)
    }

    /// Rank over GF(2) by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<u8>> = self.iter_rows().map(<[u8]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] == 1) else {
                continue;
            };
            m.swap(rank, pivot);
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] == 1 {
                    for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// True when the matrix is square and each row is the cyclic right shift
    /// of the previous one.
    pub fn is_circulant(&self) -> bool {
        if self.rows != self.cols || self.rows == 0 {
            return false;
        }
        let n = self.cols;
        (1..n).all(|r| (0..n).all(|c| self.get(r, c) == self.get(r - 1, (c + n - 1) % n)))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.iter_rows() {
            for &b in row {
                write!(f, "{b}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_product() {
        let m = BitMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.mul_vec(&[1, 1, 1]), vec![0, 0, 0]);
        assert!(m.is_circulant());
        let id = BitMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(id.mul_transpose(&id), id);
        assert!(id.is_circulant());
        let upper = BitMatrix::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert!(!upper.is_circulant());
    }
}
