//! Dense integer matrices with exact Smith normal form.
//!
//! Matrices here are tiny (the rank of a cocharacter lattice), so the
//! implementation favours clarity: BigInt entries, classical pivoting SNF
//! with full transform tracking, Laplace determinants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Result of the Smith normal form: `u * m * v = d` with `u`, `v`
/// unimodular and `d` diagonal with a divisibility chain `d1 | d2 | …`,
/// all diagonal entries nonnegative.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    /// Determinant by Laplace expansion; fine for the small ranks used here.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let mut minor = IntMatrix::zero(n - 1, n - 1);
            for i in 1..n {
                let mut cc = 0;
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    minor[(i - 1, cc)] = self[(i, k)].clone();
                    cc += 1;
                }
            }
            let term = &self[(0, j)] * minor.det();
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// Inverse of a unimodular matrix (det ±1), by the adjugate.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let d = self.det();
        assert!(
            d.clone().abs().is_one(),
            "matrix is not unimodular (det = {d})"
        );
        let mut adj = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut minor = IntMatrix::zero(n - 1, n - 1);
                let mut rr = 0;
                for r in 0..n {
                    if r == i {
                        continue;
                    }
                    let mut cc = 0;
                    for c in 0..n {
                        if c == j {
                            continue;
                        }
                        minor[(rr, cc)] = self[(r, c)].clone();
                        cc += 1;
                    }
                    rr += 1;
                }
                let mut cof = minor.det();
                if (i + j) % 2 == 1 {
                    cof = -cof;
                }
                adj[(j, i)] = cof; // transpose of cofactors
            }
        }
        if d.is_negative() {
            for x in adj.data.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        adj
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ia = a * self.cols + j;
            let ib = b * self.cols + j;
            self.data.swap(ia, ib);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let ia = i * self.cols + a;
            let ib = i * self.cols + b;
            self.data.swap(ia, ib);
        }
    }

    /// row_a += k * row_b
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(b, j)] * k;
            self[(a, j)] += t;
        }
    }

    /// col_a += k * col_b
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, b)] * k;
            self[(i, a)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -std::mem::take(&mut self[(a, j)]);
            self[(a, j)] = t;
        }
    }

    /// Smith normal form with transforms.
    pub fn snf(&self) -> Snf {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);

        for t in 0..n {
            'pivot: loop {
                // smallest nonzero entry in the trailing block
                let mut best: Option<(usize, usize)> = None;
                for i in t..d.rows {
                    for j in t..d.cols {
                        if d[(i, j)].is_zero() {
                            continue;
                        }
                        let is_better = match best {
                            None => true,
                            Some((bi, bj)) => d[(i, j)].abs() < d[(bi, bj)].abs(),
                        };
                        if is_better {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return finish(d, u, v, t);
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);

                // clear column t
                let mut dirty = false;
                for i in t + 1..d.rows {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'pivot;
                }
                // clear row t
                for j in t + 1..d.cols {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    continue 'pivot;
                }
                // enforce divisibility of the trailing block by the pivot
                for i in t + 1..d.rows {
                    for j in t + 1..d.cols {
                        if (&d[(i, j)] % &d[(t, t)]).is_zero() {
                            continue;
                        }
                        let one = BigInt::one();
                        d.add_col(t, j, &one);
                        v.add_col(t, j, &one);
                        continue 'pivot;
                    }
                }
                break;
            }
        }
        finish(d, u, v, n)
    }

    /// Diagonal entries (for a diagonal matrix produced by `snf`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }
}

fn finish(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix, _rank_hint: usize) -> Snf {
    let n = d.rows.min(d.cols);
    for i in 0..n {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    Snf { d, u, v }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}
