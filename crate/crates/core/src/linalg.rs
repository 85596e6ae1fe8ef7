//! Dense matrices and semilinear maps over F_q.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldAutomorphism};

/// Row-major matrix of field elements.
#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Field,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}
impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix {}x{} over F_{} [{}]",
            self.rows,
            self.cols,
            self.field.q(),
            self
        )
    }
}

/// Rows separated by `;`, entries by `,`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| self.field.format(x))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: u32) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&x| x >= field.q()) {
            return Err(Error::Parse("entry outside the field".into()));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Parses the `a,b;c,d` text format.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Matrix::from_vec(field, 0, 0, Vec::new());
        }
        let mut rows = Vec::new();
        for row in text.split(';') {
            let mut entries = Vec::new();
            // split on commas that are not inside brackets
            let mut depth = 0;
            let mut start = 0;
            for (i, ch) in row.char_indices() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    ',' if depth == 0 => {
                        entries.push(field.parse(&row[start..i])?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            entries.push(field.parse(&row[start..])?);
            rows.push(entries);
        }
        Matrix::from_rows(field, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                let orow = other.row(t);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Entrywise field automorphism.
    pub fn frobenius(&self, mu: FieldAutomorphism) -> Matrix {
        if mu.is_identity() {
            return self.clone();
        }
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|&a| mu.apply(f, a)).collect(),
            ..self.clone()
        }
    }

    /// A·x for a column vector x.
    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(x).fold(0, |acc, (&a, &b)| {
                    if a == 0 || b == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    /// xᵀ·A for a row vector x.
    pub fn vec_mul(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                if a != 0 {
                    *o = f.add(*o, f.mul(c, a));
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
            field: self.field.clone(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let f = self.field.clone();
        let mut m = self.clone();
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
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(inv, v));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF.
    pub fn row_basis(&self) -> Matrix {
        let r = self.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        r.matrix.submatrix(&rows, &cols)
    }

    /// Basis (as rows) of {x : A·x = 0}.
    pub fn kernel(&self) -> Matrix {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let f = &self.field;
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in r.pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.matrix.get(i, fc)));
            }
        }
        out
    }

    pub fn det(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "det of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.data.clone();
        let mut d = 1u32;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return Ok(0);
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                d = f.neg(d);
            }
            let pv = m[c * n + c];
            d = f.mul(d, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(m[i * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, m[c * n + j]));
                }
            }
        }
        Ok(d)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.matrix.submatrix(&rows, &cols))
    }

    /// A^{-t}.
    pub fn inverse_transpose(&self) -> Result<Matrix> {
        Ok(self.inverse()?.transpose())
    }

    /// κ A^{-t} κ^{-1}, for even size.
    pub fn tilde_inverse_transpose(&self) -> Result<Matrix> {
        if !self.rows.is_multiple_of(2) || !self.is_square() {
            return Err(Error::Dimension(
                "tilde inverse transpose needs even size".into(),
            ));
        }
        let k = kappa(&self.field, self.rows);
        Ok(k.mul(&self.inverse_transpose()?).mul(&k))
    }

    /// Uniformly random entries.
    pub fn random<R: rand::Rng + ?Sized>(
        field: &Field,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Matrix {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..field.q()))
            .collect();
        Matrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    /// Uniformly random element of GL(n, q), by rejection.
    pub fn random_invertible<R: rand::Rng + ?Sized>(
        field: &Field,
        n: usize,
        rng: &mut R,
    ) -> Matrix {
        loop {
            let a = Matrix::random(field, n, n, rng);
            if a.rank() == n {
                return a;
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    /// Exactly one nonzero entry in each row and column.
    pub fn is_monomial(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.row(i).iter().filter(|&&x| x != 0).count() == 1)
            && (0..self.cols).all(|j| (0..self.rows).filter(|&i| self.get(i, j) != 0).count() == 1)
    }
}

/// Antidiagonal permutation matrix e_i ↦ e_{m-i+1}.
pub fn kappa(field: &Field, m: usize) -> Matrix {
    let mut k = Matrix::zeros(field, m, m);
    for i in 0..m {
        k.set(i, m - 1 - i, 1);
    }
    k
}

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>, usize) {
    let r = m.rref();
    (r.matrix, r.pivots, r.rank)
}

pub fn det(m: &Matrix) -> Result<u32> {
    m.det()
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    m.inverse()
}

pub fn inverse_transpose(m: &Matrix) -> Result<Matrix> {
    m.inverse_transpose()
}

pub fn tilde_inverse_transpose(m: &Matrix) -> Result<Matrix> {
    m.tilde_inverse_transpose()
}

/// |GL(m, q)| = ∏ (q^m - q^i).
pub fn gl_order(m: u32, q: u64) -> u128 {
    let q = q as u128;
    let qm = q.pow(m);
    (0..m).map(|i| qm - q.pow(i)).product()
}

/// x ↦ A·μ(x) on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub mu: FieldAutomorphism,
}

impl SemilinearMap {
    pub fn new(matrix: Matrix, mu: FieldAutomorphism) -> Result<Self> {
        if matrix.det()? == 0 {
            return Err(Error::Singular);
        }
        Ok(SemilinearMap { matrix, mu })
    }

    pub fn linear(matrix: Matrix) -> Result<Self> {
        SemilinearMap::new(matrix, FieldAutomorphism::IDENTITY)
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        SemilinearMap {
            matrix: Matrix::identity(field, n),
            mu: FieldAutomorphism::IDENTITY,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        let f = self.matrix.field();
        let y: Vec<u32> = x.iter().map(|&a| self.mu.apply(f, a)).collect();
        self.matrix.mul_vec(&y)
    }

    /// (A,μ)∘(B,ν) = (A·μ(B), μν).
    pub fn compose(&self, other: &SemilinearMap) -> SemilinearMap {
        let f = self.matrix.field();
        SemilinearMap {
            matrix: self.matrix.mul(&other.matrix.frobenius(self.mu)),
            mu: self.mu.compose(&other.mu, f),
        }
    }

    /// (μ^{-1}(A^{-1}), μ^{-1}).
    pub fn inverse(&self) -> SemilinearMap {
        let f = self.matrix.field();
        let mi = self.mu.inverse(f);
        SemilinearMap {
            matrix: self
                .matrix
                .inverse()
                .expect("semilinear maps are invertible")
                .frobenius(mi),
            mu: mi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fq_make;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
        Matrix::from_vec(f, n, n, data).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = fq_make(2, 1).unwrap();
        let (r, piv, rank) = rref(&Matrix::identity(&f2, 3));
        assert_eq!((r, piv, rank), (Matrix::identity(&f2, 3), vec![0, 1, 2], 3));
        assert_eq!(Matrix::zeros(&f2, 2, 3).rank(), 0);
        let m = Matrix::parse(&f2, "1,1;1,1").unwrap();
        let (r, _, rank) = rref(&m);
        assert_eq!(r, Matrix::parse(&f2, "1,1;0,0").unwrap());
        assert_eq!(rank, 1);
    }

    #[test]
    fn det_and_inverse_examples() {
        let f3 = fq_make(3, 1).unwrap();
        assert_eq!(det(&kappa(&f3, 4)).unwrap(), 1);
        assert_eq!(det(&Matrix::identity(&f3, 5)).unwrap(), 1);
        let f5 = fq_make(5, 1).unwrap();
        let a = Matrix::parse(&f5, "2,0;0,3").unwrap();
        assert_eq!(inverse(&a).unwrap(), Matrix::parse(&f5, "3,0;0,2").unwrap());
        assert_eq!(
            inverse(&Matrix::parse(&f5, "1,2;2,4").unwrap()).unwrap_err(),
            Error::Singular
        );
        let i = Matrix::identity(&f5, 3);
        assert_eq!(inverse_transpose(&i).unwrap(), i);
    }

    #[test]
    fn inverse_transpose_is_involution() {
        let f3 = fq_make(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = 0;
        while seen < 30 {
            let a = random_matrix(&f3, 4, &mut rng);
            if a.det().unwrap() == 0 {
                continue;
            }
            seen += 1;
            assert_eq!(
                a.inverse_transpose().unwrap().inverse_transpose().unwrap(),
                a
            );
            assert!(a.mul(&a.inverse().unwrap()).is_identity());
        }
    }

    #[test]
    fn det_multiplicative_over_gl22() {
        let f2 = fq_make(2, 1).unwrap();
        let all: Vec<Matrix> = (0..16u32)
            .map(|b| Matrix::from_vec(&f2, 2, 2, (0..4).map(|i| (b >> i) & 1).collect()).unwrap())
            .collect();
        for a in &all {
            for b in &all {
                let lhs = a.mul(b).det().unwrap();
                let rhs = f2.mul(a.det().unwrap(), b.det().unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(
            all.iter().filter(|a| a.det().unwrap() != 0).count() as u128,
            gl_order(2, 2)
        );
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(4, 2), 20160);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(4, 3), 24261120);
        assert_eq!(gl_order(4, 4), 2961100800);
    }

    #[test]
    fn tilde_preserves_block_parabolic() {
        // every A = [X U; 0 Y] over F_2 with X, Y in GL(2,2)
        let f2 = fq_make(2, 1).unwrap();
        let gl2: Vec<Vec<u32>> = (0..16u32)
            .map(|b| (0..4).map(|i| (b >> i) & 1).collect::<Vec<u32>>())
            .filter(|v| (v[0] * v[3] + v[1] * v[2]) % 2 == 1)
            .collect();
        for x in &gl2 {
            for y in &gl2 {
                for u in 0..16u32 {
                    let mut a = Matrix::zeros(&f2, 4, 4);
                    for i in 0..2 {
                        for j in 0..2 {
                            a.set(i, j, x[2 * i + j]);
                            a.set(2 + i, 2 + j, y[2 * i + j]);
                            a.set(i, 2 + j, (u >> (2 * i + j)) & 1);
                        }
                    }
                    let t = a.tilde_inverse_transpose().unwrap();
                    for i in 2..4 {
                        for j in 0..2 {
                            assert_eq!(t.get(i, j), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn semilinear_composition() {
        let f4 = fq_make(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let frob = FieldAutomorphism { exponent: 1 };
        let mut maps = Vec::new();
        while maps.len() < 6 {
            let a = random_matrix(&f4, 3, &mut rng);
            let mu = if maps.len() % 2 == 0 {
                frob
            } else {
                FieldAutomorphism::IDENTITY
            };
            if let Ok(g) = SemilinearMap::new(a, mu) {
                maps.push(g);
            }
        }
        for g in &maps {
            for h in &maps {
                let x: Vec<u32> = (0..3).map(|_| rng.gen_range(0..4)).collect();
                assert_eq!(g.compose(h).apply(&x), g.apply(&h.apply(&x)));
            }
            let x: Vec<u32> = vec![1, 2, 3];
            assert_eq!(g.inverse().apply(&g.apply(&x)), x);
        }
    }

    #[test]
    fn kernel_and_text() {
        let f3 = fq_make(3, 1).unwrap();
        let a = Matrix::parse(&f3, "1,2,0;0,0,1").unwrap();
        let k = a.kernel();
        assert_eq!(k.rows(), 1);
        assert!(a.mul_vec(k.row(0)).iter().all(|&x| x == 0));
        assert_eq!(a.to_string(), "1,2,0;0,0,1");
        let f4 = fq_make(2, 2).unwrap();
        let b = Matrix::parse(&f4, "[1,1],1;0,[0,1]").unwrap();
        assert_eq!(b.get(0, 0), 3);
        assert_eq!(b.to_string(), "[1,1],[1,0];[0,0],[0,1]");
    }
}
