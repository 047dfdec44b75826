//! Smith normal form over `Z` and over `Z/N`.

use super::dense::diagonalize_local;
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Largest dimension accepted by `snf`.
pub const SNF_MAX_DIM: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `d_1 | d_2 | …`, nonnegative, length `min(rows, cols)`; zeros trail.
    pub diagonal: Vec<i128>,
}

impl SnfResult {
    /// Invariant factors `> 1`.
    pub fn nontrivial(&self) -> Vec<i128> {
        self.diagonal.iter().copied().filter(|&d| d != 1).collect()
    }
}

fn overflow() -> Error {
    Error::Resource("integer overflow during Smith normal form".into())
}

fn sub_mul(a: i128, q: i128, b: i128) -> Result<i128> {
    q.checked_mul(b).and_then(|x| a.checked_sub(x)).ok_or_else(overflow)
}

/// Invariant factors of an integer matrix, pivoting on the entry of least
/// absolute value.
pub fn snf(m: &[Vec<i128>]) -> Result<SnfResult> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows > SNF_MAX_DIM || cols > SNF_MAX_DIM {
        return Err(Error::Resource(format!("{rows}×{cols} exceeds the {SNF_MAX_DIM}×{SNF_MAX_DIM} guard")));
    }
    let mut a = m.to_vec();
    let mut diag = Vec::with_capacity(rows.min(cols));
    for k in 0..rows.min(cols) {
        loop {
            let mut best: Option<(i128, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, &x) in row.iter().enumerate().skip(k) {
                    if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                        best = Some((x.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                diag.resize(rows.min(cols), 0);
                return Ok(finish(diag));
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let p = a[k][k];
            let mut clean = true;
            for i in k + 1..rows {
                let q = a[i][k].div_euclid(p);
                if q != 0 {
                    for j in k..cols {
                        a[i][j] = sub_mul(a[i][j], q, a[k][j])?;
                    }
                }
                clean &= a[i][k] == 0;
            }
            for j in k + 1..cols {
                let q = a[k][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut().skip(k) {
                        row[j] = sub_mul(row[j], q, row[k])?;
                    }
                }
                clean &= a[k][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (k + 1..rows).find(|&i| a[i][k + 1..].iter().any(|&x| x % p != 0));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        a[k][j] = a[k][j].checked_add(a[i][j]).ok_or_else(overflow)?;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    Ok(finish(diag))
}

fn finish(mut diag: Vec<i128>) -> SnfResult {
    // the pivot rule already yields a chain; enforce it for the zero tail
    let nz = diag.iter().take_while(|&&d| d != 0).count();
    for i in 1..nz {
        debug_assert_eq!(diag[i] % diag[i - 1], 0);
    }
    let tail = diag.split_off(nz);
    diag.extend(tail);
    SnfResult { diagonal: diag }
}

/// Invariant factors of `(Z/N)^c / rowspan(A)`, ascending, trivial factors dropped.
pub fn snf_mod(a: &[Vec<u64>], ncols: usize, n: u64) -> Vec<u64> {
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (l, e) in factorize(n) {
        let diag = diagonalize_local(a, ncols, l, e, false);
        per_prime.push((l, diag.cokernel_exponents()));
    }
    let len = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (l, exps) in per_prime {
        // align the largest exponents with the last factors
        let off = len - exps.len();
        for (i, &f) in exps.iter().enumerate() {
            out[off + i] *= l.pow(f);
        }
    }
    out
}

