use rayon::prelude::*;

use crate::arith::{add_mod, mul_mod};

/// Sparse matrix over `Z/N`, rows of `(column, residue)` with increasing columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, u64)>>,
    modulus: u64,
}

fn normalize_row(mut row: Vec<(usize, u64)>, m: u64) -> Vec<(usize, u64)> {
    row.sort_unstable_by_key(|&(j, _)| j);
    let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len());
    for (j, x) in row {
        let x = x % m;
        match out.last_mut() {
            Some((lj, lx)) if *lj == j => *lx = add_mod(*lx, x, m),
            _ => out.push((j, x)),
        }
    }
    out.retain(|&(_, x)| x != 0);
    out
}

impl SparseMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<(usize, u64)>>, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let rows = rows.into_iter().map(|r| normalize_row(r, modulus)).collect::<Vec<_>>();
        assert!(rows.iter().flatten().all(|&(j, _)| j < ncols), "column index out of range");
        SparseMatrix { ncols, rows, modulus }
    }

    pub fn from_signed(ncols: usize, rows: &[Vec<(usize, i64)>], modulus: u64) -> Self {
        let m = modulus as i128;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&(j, e)| (j, (e as i128).rem_euclid(m) as u64)).collect())
            .collect();
        SparseMatrix::new(ncols, rows, modulus)
    }

    pub fn from_dense(rows: &[Vec<u64>], modulus: u64) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x % modulus != 0).map(|(j, &x)| (j, x)).collect())
            .collect();
        SparseMatrix::new(ncols, rows, modulus)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn rows(&self) -> &[Vec<(usize, u64)>] {
        &self.rows
    }
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn push_row(&mut self, row: Vec<(usize, u64)>) {
        let row = normalize_row(row, self.modulus);
        assert!(row.iter().all(|&(j, _)| j < self.ncols));
        self.rows.push(row);
    }

    /// Widen by `extra` zero columns.
    pub fn add_columns(&mut self, extra: usize) {
        self.ncols += extra;
    }

    /// Entries reduced modulo a divisor of the modulus.
    pub fn reduce(&self, m: u64) -> SparseMatrix {
        assert!(self.modulus % m == 0, "{m} does not divide {}", self.modulus);
        SparseMatrix::new(self.ncols, self.rows.clone(), m)
    }

    /// Repeatedly removes a column of weight one together with its row. Kernel
    /// vectors of the remaining core extend uniquely to the removed columns.
    pub fn singleton_filter(&self) -> Filtered {
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, _) in r {
                col_rows[j].push(i);
            }
        }
        let mut weight: Vec<usize> = col_rows.iter().map(Vec::len).collect();
        let mut row_alive = vec![true; self.rows.len()];
        let mut col_done = vec![false; self.ncols];
        let mut stack: Vec<usize> = (0..self.ncols).filter(|&j| weight[j] == 1).collect();
        let mut eliminated = Vec::new();
        while let Some(j) = stack.pop() {
            if col_done[j] || weight[j] != 1 {
                continue;
            }
            let i = *col_rows[j].iter().find(|&&i| row_alive[i]).expect("weight one");
            row_alive[i] = false;
            col_done[j] = true;
            eliminated.push((i, j));
            for &(k, _) in &self.rows[i] {
                weight[k] -= 1;
                if weight[k] == 1 && !col_done[k] {
                    stack.push(k);
                }
            }
        }
        let core_cols: Vec<usize> = (0..self.ncols).filter(|&j| !col_done[j] && weight[j] > 0).collect();
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &j) in core_cols.iter().enumerate() {
            pos[j] = k;
        }
        let rows = self
            .rows
            .iter()
            .zip(&row_alive)
            .filter(|(_, &a)| a)
            .map(|(r, _)| r.iter().map(|&(j, x)| (pos[j], x)).collect())
            .collect();
        Filtered { core: SparseMatrix { ncols: core_cols.len(), rows, modulus: self.modulus }, core_cols, eliminated }
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.ncols];
                for &(j, x) in r {
                    d[j] = x;
                }
                d
            })
            .collect()
    }

    /// `M·v mod m` for a divisor `m` of the modulus.
    pub fn mul_vec_mod(&self, v: &[u64], m: u64) -> Vec<u64> {
        assert_eq!(v.len(), self.ncols);
        let dot = |r: &Vec<(usize, u64)>| {
            let mut acc = 0u128;
            for &(j, x) in r {
                acc += (x % m) as u128 * v[j] as u128;
                if acc >= 1 << 126 {
                    acc %= m as u128;
                }
            }
            (acc % m as u128) as u64
        };
        if self.nnz() > 20_000 {
            self.rows.par_iter().map(dot).collect()
        } else {
            self.rows.iter().map(dot).collect()
        }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        self.mul_vec_mod(v, self.modulus)
    }

    pub fn is_kernel_vector(&self, v: &[u64]) -> bool {
        self.mul_vec(v).iter().all(|&x| x == 0)
    }

    /// Transpose, as a new matrix with `ncols` rows.
    pub fn transpose(&self) -> SparseMatrix {
        let mut t = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, x) in r {
                t[j].push((i, x));
            }
        }
        SparseMatrix { ncols: self.rows.len(), rows: t, modulus: self.modulus }
    }
}

/// `a·x + y` entrywise mod `m`.
pub(crate) fn axpy(a: u64, x: &[u64], y: &mut [u64], m: u64) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = add_mod(*yi, mul_mod(a, xi, m), m);
    }
}

/// Result of [`SparseMatrix::singleton_filter`].
#[derive(Clone, Debug)]
pub struct Filtered {
    pub core: SparseMatrix,
    /// Original index of each core column.
    pub core_cols: Vec<usize>,
    /// `(row, column)` in elimination order.
    pub eliminated: Vec<(usize, usize)>,
}

impl Filtered {
    /// Extends a kernel vector of the core to one of `m` modulo a prime `p`;
    /// columns outside every row get the values from `free`.
    pub fn lift(&self, m: &SparseMatrix, core: &[u64], p: u64, mut free: impl FnMut() -> u64) -> Vec<u64> {
        let mut x: Vec<Option<u64>> = vec![None; m.ncols()];
        for (&j, &v) in self.core_cols.iter().zip(core) {
            x[j] = Some(v);
        }
        let pivots: std::collections::HashSet<usize> = self.eliminated.iter().map(|&(_, j)| j).collect();
        for (j, xj) in x.iter_mut().enumerate() {
            if xj.is_none() && !pivots.contains(&j) {
                *xj = Some(free() % p);
            }
        }
        for &(i, j) in self.eliminated.iter().rev() {
            let mut acc = 0u64;
            let mut pivot = 0u64;
            for &(k, a) in &m.rows()[i] {
                if k == j {
                    pivot = a % p;
                } else {
                    let xk = x[k].expect("determined before its pivot");
                    acc = add_mod(acc, mul_mod(a % p, xk, p), p);
                }
            }
            let inv = crate::arith::inv_mod(pivot, p).expect("nonzero entry modulo a prime");
            x[j] = Some(mul_mod(p - acc % p, inv, p) % p);
        }
        x.into_iter().map(|v| v.unwrap_or(0)).collect()
    }
}
