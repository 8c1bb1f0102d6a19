//! Smith normal form over an exact Euclidean coefficient ring.
//!
//! [`smith_normal_form`] is the textbook dense algorithm and also returns the
//! unimodular transforms. [`invariant_factors`] is what the `Tor` oracle
//! uses: it first eliminates unit pivots on a sparse representation (the
//! boundary matrices of the resolutions are mostly `±1` entries) and only
//! runs the dense algorithm on whatever is left.

use std::collections::{BTreeMap, BTreeSet};

use crate::scalar::Coefficient;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Coefficient> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row[dst] += f·row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &T) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone();
            if !v.is_zero() {
                self[(dst, j)] = self[(dst, j)].clone() + f.clone() * v;
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &T) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone();
            if !v.is_zero() {
                self[(i, dst)] = self[(i, dst)].clone() + f.clone() * v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)].clone();
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry positive and dividing the next, zeros last.
#[derive(Debug, Clone)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Coefficient> SmithDecomposition<T> {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

struct Transforms<T> {
    u: Matrix<T>,
    v: Matrix<T>,
}

fn reduce<T: Coefficient>(a: &mut Matrix<T>, mut tr: Option<&mut Transforms<T>>) {
    let (m, n) = (a.rows, a.cols);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize, T)> = None;
            for i in t..m {
                for j in t..n {
                    let x = a[(i, j)].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                        best = Some((i, j, x));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some(tr) = tr.as_deref_mut() {
                tr.u.swap_rows(t, pi);
                tr.v.swap_cols(t, pj);
            }
            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(a[(i, t)].div_floor(&pivot));
                a.add_row(i, t, &q);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.u.add_row(i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(a[(t, j)].div_floor(&pivot));
                a.add_col(j, t, &q);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.v.add_col(j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    a.add_row(t, i, &T::one());
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.u.add_row(t, i, &T::one());
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(tr) = tr.as_deref_mut() {
                tr.u.negate_row(t);
            }
        }
    }
}

/// Full Smith decomposition with transforms.
pub fn smith_normal_form<T: Coefficient>(a: &Matrix<T>) -> SmithDecomposition<T> {
    let mut d = a.clone();
    let mut tr = Transforms {
        u: Matrix::identity(a.rows),
        v: Matrix::identity(a.cols),
    };
    reduce(&mut d, Some(&mut tr));
    SmithDecomposition {
        u: tr.u,
        d,
        v: tr.v,
    }
}

/// A sparse matrix given by its nonzero entries, row by row.
#[derive(Debug, Clone)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Coefficient> SparseMatrix<T> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.nrows && j < self.ncols);
        if v.is_zero() {
            return;
        }
        let e = self.rows[i].entry(j).or_insert_with(T::zero);
        *e = e.clone() + v;
        if e.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.nrows, self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }
}

/// Nonzero invariant factors (including the units) of `a`, in divisibility
/// order. Their count is the rank.
pub fn invariant_factors<T: Coefficient>(a: &SparseMatrix<T>) -> Vec<T> {
    let mut rows = a.rows.clone();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.ncols];
    for (i, row) in rows.iter().enumerate() {
        for j in row.keys() {
            cols[*j].insert(i);
        }
    }
    let mut alive: BTreeSet<usize> = (0..a.nrows).filter(|i| !rows[*i].is_empty()).collect();
    let mut units = 0usize;

    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for &r in &alive {
            for (c, v) in &rows[r] {
                if !v.is_unit() {
                    continue;
                }
                let score = (rows[r].len() - 1) * (cols[*c].len() - 1);
                if best.is_none_or(|(_, _, s)| score < s) {
                    best = Some((r, *c, score));
                    if score == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        let pivot = rows[r][&c].clone();
        let pivot_row = rows[r].clone();
        let targets: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in targets {
            // pivot is ±1, so it is its own inverse
            let f = -(rows[i][&c].clone() * pivot.clone());
            for (j, v) in &pivot_row {
                let e = rows[i].entry(*j).or_insert_with(T::zero);
                *e = e.clone() + f.clone() * v.clone();
                if e.is_zero() {
                    rows[i].remove(j);
                    cols[*j].remove(&i);
                } else {
                    cols[*j].insert(i);
                }
            }
            if rows[i].is_empty() {
                alive.remove(&i);
            }
        }
        for j in pivot_row.keys() {
            cols[*j].remove(&r);
        }
        rows[r].clear();
        alive.remove(&r);
        units += 1;
    }

    let live_cols: Vec<usize> = (0..a.ncols).filter(|j| !cols[*j].is_empty()).collect();
    let col_index: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, j)| (*j, k)).collect();
    let mut rest = Matrix::zeros(alive.len(), live_cols.len());
    for (k, r) in alive.iter().enumerate() {
        for (j, v) in &rows[*r] {
            rest[(k, col_index[j])] = v.clone();
        }
    }
    reduce(&mut rest, None);
    let mut out = vec![T::one(); units];
    out.extend(
        (0..rest.rows.min(rest.cols))
            .map(|i| rest[(i, i)].clone())
            .take_while(|x| !x.is_zero()),
    );
    out
}
