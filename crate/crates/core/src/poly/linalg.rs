//! Dense linear algebra over F_p.

use super::Field;

/// An incrementally built subspace of `F_p^dim`, kept in echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Field, dim: usize) -> Self {
        RowSpace {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[p];
            if c != 0 {
                let c = f.neg(c);
                for (a, b) in v.iter_mut().zip(row.iter()).skip(p) {
                    if *b != 0 {
                        *a = f.add(*a, f.mul(c, *b));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = self.field.inv(v[p]);
                for x in v.iter_mut().skip(p) {
                    *x = self.field.mul(*x, inv);
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, f: Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| f.add(*a, *b))
                .collect(),
        }
    }

    pub fn scale(&self, f: Field, c: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(*a, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, f: Field) -> usize {
        if self.rows <= self.cols {
            row_space(f, self).rank()
        } else {
            row_space(f, &self.transpose()).rank()
        }
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn kernel(&self, f: Field) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = rref(f, &mut m);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, f: Field, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = rref(f, &mut aug);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                if v != 0 {
                    self.set(r0 + r, c0 + c, v);
                }
            }
        }
    }

    /// Apply to a column vector.
    pub fn apply(&self, f: Field, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = f.p() as u64;
        let support: Vec<(usize, u64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(c, &b)| (c, b as u64))
            .collect();
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = 0u64;
                for &(c, b) in &support {
                    let a = row[c];
                    if a != 0 {
                        acc = (acc + a as u64 * b) % p;
                    }
                }
                acc as u32
            })
            .collect()
    }
}

fn row_space(f: Field, m: &Matrix) -> RowSpace {
    let mut s = RowSpace::new(f, m.cols);
    for r in 0..m.rows {
        if s.rank() == m.cols {
            break;
        }
        s.insert(m.row(r).to_vec());
    }
    s
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(p, j));
                m.set(r, j, b);
                m.set(p, j, a);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i != r {
                let k = m.get(i, c);
                if k != 0 {
                    let k = f.neg(k);
                    for j in c..m.cols {
                        let v = f.add(m.get(i, j), f.mul(k, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field() -> Field {
        Field::new(101).unwrap()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let f = field();
        let m = Matrix {
            rows: 2,
            cols: 3,
            data: vec![1, 2, 3, 2, 4, 6],
        };
        assert_eq!(m.rank(f), 1);
        let k = m.kernel(f);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.apply(f, &v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solving_linear_systems() {
        let f = field();
        let m = Matrix { rows: 2, cols: 2, data: vec![1, 2, 0, 1] };
        let x = m.solve(f, &[5, 1]).unwrap();
        assert_eq!(m.apply(f, &x), vec![5, 1]);
        let singular = Matrix { rows: 2, cols: 2, data: vec![1, 1, 1, 1] };
        assert!(singular.solve(f, &[1, 2]).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(data in proptest::collection::vec(0u32..101, 12)) {
            let f = field();
            let m = Matrix { rows: 3, cols: 4, data };
            let k = m.kernel(f);
            prop_assert_eq!(m.rank(f) + k.len(), 4);
            prop_assert_eq!(m.rank(f), m.transpose().rank(f));
            for v in k {
                prop_assert!(m.apply(f, &v).iter().all(|&x| x == 0));
            }
        }
    }
}
