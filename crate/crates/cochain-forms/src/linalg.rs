//! Dense exact linear algebra over [`Num`].

use std::fmt;

use fq_algebra::{Num, NumPoly};

/// Row-major dense matrix with exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Num>,
}

impl Matrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Num::zero(); rows * cols] }
    }
    /// The identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Num::one());
        }
        m
    }
    /// From a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<Num>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    /// From a list of equal-length columns; `rows` fixes the height when there are no columns.
    pub fn from_cols(rows: usize, cols: &[Vec<Num>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }
    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }
    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }
    /// Entry (i, j).
    pub fn get(&self, i: usize, j: usize) -> &Num {
        &self.data[i * self.cols + j]
    }
    /// Sets entry (i, j).
    pub fn set(&mut self, i: usize, j: usize, v: Num) {
        self.data[i * self.cols + j] = v;
    }
    /// Adds `v` to entry (i, j).
    pub fn add_to(&mut self, i: usize, j: usize, v: &Num) {
        let k = i * self.cols + j;
        self.data[k] = &self.data[k] + v;
    }
    /// Row i as a vector.
    pub fn row(&self, i: usize) -> Vec<Num> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    /// Column j as a vector.
    pub fn col(&self, j: usize) -> Vec<Num> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    /// All columns.
    pub fn columns(&self) -> Vec<Vec<Num>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }
    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Num::is_zero)
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Num]) -> Vec<Num> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&k| !self.get(i, k).is_zero() && !v[k].is_zero())
                    .map(|k| self.get(i, k) * &v[k])
                    .sum()
            })
            .collect()
    }

    /// Entrywise sum.
    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
    /// Entrywise difference.
    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
    /// Scalar multiple.
    pub fn scale(&self, c: &Num) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let k = m.get(i, c).clone();
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &(&k * rv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {x : A x = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Num>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Num::zero(); self.cols];
                v[fc] = Num::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, fc);
                }
                v
            })
            .collect()
    }

    /// Some X with `self * X = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let mut aug = Self::zeros(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, self.cols + j, b.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Characteristic polynomial det(x - A) via Hessenberg reduction.
    pub fn charpoly(&self) -> NumPoly {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        // similarity transform to upper Hessenberg form
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else { continue };
            if p != j + 1 {
                for c in 0..n {
                    h.data.swap(p * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + j + 1);
                }
            }
            let piv_inv = h.get(j + 1, j).inv().expect("nonzero pivot");
            for i in j + 2..n {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let k = h.get(i, j) * &piv_inv;
                for c in 0..n {
                    let v = h.get(i, c) - &(&k * h.get(j + 1, c));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = h.get(r, j + 1) + &(&k * h.get(r, i));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} prod(subdiag) p_{m-i-1}
        let x = NumPoly::from_ints(&[0, 1]);
        let mut p: Vec<NumPoly> = vec![NumPoly::from_ints(&[1])];
        for m in 0..n {
            let mut next = &(&x - &NumPoly::constant(h.get(m, m).clone())) * &p[m];
            let mut prod = Num::one();
            for i in 1..=m {
                prod = &prod * h.get(m - i + 1, m - i);
                let coef = &prod * h.get(m - i, m);
                if !coef.is_zero() {
                    next = &next - &p[m - i].scale(&coef);
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    /// Evaluates a polynomial at this square matrix.
    pub fn eval_poly(&self, poly: &NumPoly) -> Matrix {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.add_to(i, i, c);
            }
        }
        acc
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Num::int(x)).collect()).collect())
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Num::is_zero));
    }

    #[test]
    fn charpoly_matches_cayley_hamilton() {
        let a = m(&[&[0, 1, 2, 0], &[1, 0, 0, 3], &[2, 0, 1, 1], &[0, 3, 1, -2]]);
        let p = a.charpoly();
        assert_eq!(p.degree(), Some(4));
        assert!(a.eval_poly(&p).is_zero());
        let b = m(&[&[2, 1], &[1, 2]]);
        assert_eq!(b.charpoly(), NumPoly::from_ints(&[3, -4, 1]));
        // zero subdiagonal path
        let c = m(&[&[1, 5, 7], &[0, 2, 3], &[0, 0, 3]]);
        assert_eq!(c.charpoly(), NumPoly::from_ints(&[-6, 11, -6, 1]));
    }

    #[test]
    fn solve_roundtrip() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = m(&[&[3], &[5]]);
        let b = a.mul(&x);
        assert_eq!(a.solve(&b).unwrap(), x);
        assert!(a.solve(&m(&[&[1], &[0], &[0]])).is_none());
    }
}
