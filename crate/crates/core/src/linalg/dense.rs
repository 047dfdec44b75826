//! Dense elimination over the local ring `Z/ℓ^e`.

use crate::arith::{inv_mod, mul_mod, sub_mod};

fn valuation(mut x: u64, l: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    while x % l == 0 {
        x /= l;
        v += 1;
    }
    v
}

/// Diagonalization `R·A·C = diag(ℓ^{v_0}, …)` of an `r × c` matrix over `Z/ℓ^e`
/// by row and column operations with minimal-valuation pivots.
#[derive(Clone, Debug)]
pub struct LocalDiagonal {
    pub l: u64,
    pub e: u32,
    pub ncols: usize,
    /// Valuations of the pivots, all `< e`.
    pub valuations: Vec<u32>,
    /// Column transform `C`, row-major `c × c`.
    pub transform: Vec<Vec<u64>>,
}

pub fn diagonalize_local(a: &[Vec<u64>], ncols: usize, l: u64, e: u32, track: bool) -> LocalDiagonal {
    let m = l.pow(e);
    let mut a: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
    let rows = a.len();
    let mut cmat: Vec<Vec<u64>> = if track {
        (0..ncols).map(|i| (0..ncols).map(|j| (i == j) as u64).collect()).collect()
    } else {
        Vec::new()
    };
    let mut vals = Vec::new();
    let mut k = 0;
    while k < rows.min(ncols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let v = valuation(x, l, e);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            for row in cmat.iter_mut() {
                row.swap(k, pj);
            }
        }
        let lv = l.pow(v);
        let unit = a[k][k] / lv;
        let uinv = inv_mod(unit, m).expect("unit");
        for x in a[k].iter_mut() {
            *x = mul_mod(*x, uinv, m);
        }
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            let x = row[k];
            if x == 0 {
                continue;
            }
            let f = x / lv;
            for (y, &pv) in row.iter_mut().zip(&pivot_row).skip(k) {
                if pv != 0 {
                    *y = sub_mod(*y, mul_mod(f, pv, m), m);
                }
            }
        }
        if track {
            for j in k + 1..ncols {
                let x = pivot_row[j];
                if x == 0 {
                    continue;
                }
                let f = x / lv;
                for row in cmat.iter_mut() {
                    let ck = row[k];
                    if ck != 0 {
                        row[j] = sub_mod(row[j], mul_mod(f, ck, m), m);
                    }
                }
            }
        }
        for x in a[k].iter_mut().skip(k + 1) {
            *x = 0;
        }
        vals.push(v);
        k += 1;
    }
    LocalDiagonal { l, e, ncols, valuations: vals, transform: cmat }
}

impl LocalDiagonal {
    pub fn modulus(&self) -> u64 {
        self.l.pow(self.e)
    }

    /// Generators of `{x : A·x ≡ 0}`, each given as `(vector, additive order)`.
    pub fn kernel_generators(&self) -> Vec<(Vec<u64>, u64)> {
        let m = self.modulus();
        let mut out = Vec::new();
        for k in 0..self.ncols {
            let v = self.valuations.get(k).copied().unwrap_or(0);
            let (scale, order) = if k < self.valuations.len() {
                if v == 0 {
                    continue;
                }
                (self.l.pow(self.e - v), self.l.pow(v))
            } else {
                (1, m)
            };
            let col: Vec<u64> = self.transform.iter().map(|row| mul_mod(row[k], scale, m)).collect();
            out.push((col, order));
        }
        out
    }

    /// Exponents `f_k` with `(Z/ℓ^e)^c / rowspan ≅ ⊕ Z/ℓ^{f_k}`, ascending, zeros dropped.
    pub fn cokernel_exponents(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.valuations.iter().copied().filter(|&v| v > 0).collect();
        out.extend(std::iter::repeat_n(self.e, self.ncols - self.valuations.len()));
        out.sort_unstable();
        out
    }
}
