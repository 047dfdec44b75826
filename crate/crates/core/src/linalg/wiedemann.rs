//! Scalar Wiedemann over a prime field.

use rand::Rng;

use super::sparse::{axpy, SparseMatrix};
use crate::arith::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

/// Shortest connection polynomial `C` (`C[0] = 1`) with
/// `Σ_{i=0}^{L} C[i]·s[j−i] = 0` for all `L <= j < len`. Returns `(C, L)`.
pub fn berlekamp_massey(s: &[u64], p: u64) -> (Vec<u64>, usize) {
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u64;
    for n in 0..s.len() {
        let mut d = s[n] % p;
        for i in 1..=l.min(c.len() - 1) {
            d = add_mod(d, mul_mod(c[i], s[n - i], p), p);
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = mul_mod(d, inv_mod(bd, p).expect("prime modulus"), p);
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + m] = sub_mod(c[i + m], mul_mod(coef, bi, p), p);
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, 0);
    (c, l)
}

/// Whether `f` (low-to-high) annihilates `s`: `Σ_k f[k]·s[i+k] = 0` for every window.
pub fn annihilates(f: &[u64], s: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    (0..s.len().saturating_sub(deg)).all(|i| {
        let mut acc = 0u64;
        for (k, &fk) in f.iter().enumerate() {
            acc = add_mod(acc, mul_mod(fk, s[i + k], p), p);
        }
        acc == 0
    })
}

/// Square operator built from a rectangular matrix: `[M; 0]` when there are
/// fewer rows than columns, else `M_top + R·M_rest` with a sparse random `R`.
struct Operator<'a> {
    m: &'a SparseMatrix,
    p: u64,
    /// `(target row, source row, coefficient)`
    fold: Vec<(usize, usize, u64)>,
}

impl<'a> Operator<'a> {
    fn new(m: &'a SparseMatrix, p: u64, rng: &mut impl Rng) -> Self {
        let c = m.ncols();
        let mut fold = Vec::new();
        if m.nrows() > c && c > 0 {
            for src in c..m.nrows() {
                for _ in 0..3 {
                    fold.push((rng.gen_range(0..c), src, rng.gen_range(1..p)));
                }
            }
        }
        Operator { m, p, fold }
    }

    fn apply(&self, x: &[u64]) -> Vec<u64> {
        let c = self.m.ncols();
        let mut y = self.m.mul_vec_mod(x, self.p);
        y.resize(y.len().max(c), 0);
        for &(t, s, a) in &self.fold {
            y[t] = add_mod(y[t], mul_mod(a, y[s], self.p), self.p);
        }
        y.truncate(c);
        y
    }
}

fn dot(a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut acc = 0u128;
    for (&x, &y) in a.iter().zip(b) {
        acc += x as u128 * y as u128;
        if acc >= 1 << 126 {
            acc %= p as u128;
        }
    }
    (acc % p as u128) as u64
}

/// A nonzero `v` with `M·v ≡ 0 (mod p)`, or `None` after `tries` attempts.
pub fn wiedemann_kernel(m: &SparseMatrix, p: u64, tries: usize, rng: &mut impl Rng) -> Result<Option<Vec<u64>>> {
    let c = m.ncols();
    if c == 0 {
        return Ok(None);
    }
    for _ in 0..tries {
        let op = Operator::new(m, p, rng);
        // random right scaling makes the eigenvalue 0 semisimple with high
        // probability, so f'(A)·w spreads over the whole kernel
        let scale: Vec<u64> = (0..c).map(|_| rng.gen_range(1..p.max(2))).collect();
        let apply = |x: &[u64]| -> Vec<u64> {
            let xs: Vec<u64> = x.iter().zip(&scale).map(|(&a, &s)| mul_mod(a, s, p)).collect();
            op.apply(&xs)
        };
        let unscale = |z: &[u64]| -> Vec<u64> { z.iter().zip(&scale).map(|(&a, &s)| mul_mod(a, s, p)).collect() };
        let w: Vec<u64> = (0..c).map(|_| rng.gen_range(0..p)).collect();
        let b = apply(&w);
        if b.iter().all(|&x| x == 0) {
            let v = unscale(&w);
            if v.iter().any(|&x| x != 0) && m.reduce_check(&v, p) {
                return Ok(Some(v));
            }
            continue;
        }
        let u: Vec<u64> = (0..c).map(|_| rng.gen_range(0..p)).collect();
        let len = 2 * c + 4;
        let mut seq = Vec::with_capacity(len);
        let mut x = b;
        for _ in 0..len {
            seq.push(dot(&u, &x, p));
            x = apply(&x);
        }
        let (conn, l) = berlekamp_massey(&seq, p);
        let f: Vec<u64> = conn.iter().rev().copied().collect();
        if !annihilates(&f, &seq, p) {
            return Err(Error::Internal("Berlekamp-Massey output does not annihilate the sequence".into()));
        }
        let t = f.iter().take_while(|&&x| x == 0).count();
        if t > l {
            continue;
        }
        let fp = &f[t..];
        // y = f'(A)·w by Horner
        let mut y = vec![0u64; c];
        for &coef in fp.iter().rev() {
            y = apply(&y);
            axpy(coef, &w, &mut y, p);
        }
        if y.iter().all(|&x| x == 0) {
            continue;
        }
        let mut z = y;
        for _ in 0..=t + 1 {
            let az = apply(&z);
            if az.iter().all(|&x| x == 0) {
                let v = unscale(&z);
                if m.reduce_check(&v, p) {
                    return Ok(Some(v));
                }
                break;
            }
            z = az;
        }
    }
    Ok(None)
}

impl SparseMatrix {
    fn reduce_check(&self, v: &[u64], p: u64) -> bool {
        self.mul_vec_mod(v, p).iter().all(|&x| x == 0)
    }
}
