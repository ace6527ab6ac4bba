//! Dense matrices over F_p with Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;

use crate::ffpoly::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0, |acc, c| f.add_raw(acc, f.mul_raw(self.get(r, c), v[c])))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    /// Pivots are chosen as the first nonzero entry in column order.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(src) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if src != row {
                for c in 0..self.cols {
                    self.data.swap(src * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv_raw(self.get(row, col));
            for c in col..self.cols {
                let v = f.mul_raw(self.get(row, c), inv);
                self.data[row * self.cols + c] = v;
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub_raw(self.get(r, c), f.mul_raw(factor, self.get(row, c)));
                    self.data[r * self.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column (in column
    /// order) with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u64; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg_raw(m.get(r, free));
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_matrix() {
        let f = PrimeField::new(5).unwrap();
        // [1 2 3; 2 4 2] over F_5 has rank 2
        let mut m = Matrix::zeros(f, 2, 3);
        for (i, v) in [1, 2, 3, 2, 4, 2].into_iter().enumerate() {
            m.set(i / 3, i % 3, v);
        }
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn empty_codomain_gives_full_kernel() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::zeros(f, 0, 4);
        assert_eq!(m.kernel_basis().len(), 4);
    }

    #[test]
    fn rank_nullity_on_structured_matrix() {
        let f = PrimeField::new(7).unwrap();
        let mut m = Matrix::zeros(f, 4, 6);
        for r in 0..4 {
            for c in 0..6 {
                m.set(r, c, ((r + 1) * (c + 2) + r * r) as u64);
            }
        }
        let k = m.kernel_basis();
        assert_eq!(k.len() + m.rank(), 6);
        for v in &k {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }
}
