use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::{is_prime, mul_mod};

/// Determinant by fraction-free (Bareiss) elimination.
fn det_bareiss(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(i) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    ?;
                a[i][j] = x / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * if n == 0 { 1 } else { a[n - 1][n - 1] })
}


fn random_prime(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> u64 {
    loop {
        let p = rng.gen_range(lo..hi);
        if is_prime(p) {
            return p;
        }
    }
}

fn random_sparse(rng: &mut ChaCha8Rng, rows: usize, cols: usize, per_row: usize, n: u64) -> SparseMatrix {
    let rows = (0..rows)
        .map(|_| (0..per_row).map(|_| (rng.gen_range(0..cols), rng.gen_range(0..n))).collect())
        .collect();
    SparseMatrix::new(cols, rows, n)
}

#[test]
fn berlekamp_massey_fibonacci() {
    let p = 101;
    let mut s = vec![1u64, 1];
    for i in 2..20 {
        s.push((s[i - 1] + s[i - 2]) % p);
    }
    let (c, l) = berlekamp_massey(&s, p);
    assert_eq!(l, 2);
    assert_eq!(c, vec![1, p - 1, p - 1]);
    let f: Vec<u64> = c.iter().rev().copied().collect();
    assert!(annihilates(&f, &s, p));
}

#[test]
fn trivial_and_rank_one_kernels() {
    let id = SparseMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 7);
    assert_eq!(kernel_vector(&id, 1).unwrap(), None);
    let m = SparseMatrix::from_dense(&[vec![1, 1], vec![2, 2]], 5);
    let v = kernel_vector(&m, 2).unwrap().unwrap();
    assert_eq!(v[1], (5 - v[0]) % 5);
    assert_ne!(v[0], 0);
}

#[test]
fn wiedemann_on_wide_and_tall_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (r, c) in [(300, 320), (340, 300)] {
        let p = random_prime(&mut rng, 1 << 20, 1 << 21);
        let mut m = random_sparse(&mut rng, r, c, 10, p);
        if r > c {
            // force a dependency among the columns
            let rows: Vec<Vec<(usize, u64)>> = m
                .rows()
                .iter()
                .map(|row| {
                    let mut row: Vec<(usize, u64)> = row.iter().copied().filter(|&(j, _)| j != 1).collect();
                    let s = row.iter().find(|&&(j, _)| j == 0).map_or(0, |&(_, x)| x);
                    row.push((1, mul_mod(s, 3, p)));
                    row
                })
                .collect();
            m = SparseMatrix::new(c, rows, p);
        }
        let v = wiedemann_kernel(&m, p, 8, &mut rng).unwrap().expect("kernel exists");
        assert!(m.is_kernel_vector(&v) && v.iter().any(|&x| x != 0));
    }
}

#[test]
fn composite_modulus_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 4 * 9 * 1009;
    let m = random_sparse(&mut rng, 60, 64, 6, n);
    let v = kernel_vector(&m, 9).unwrap().unwrap();
    assert!(m.is_kernel_vector(&v));
}

#[test]
fn planted_logs_recovered() {
    // columns carry logs x_j in Z/N; rows are random vectors orthogonal to x
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let n = 2 * 3 * 3 * 101;
    let cols = 25;
    let mut x: Vec<u64> = (0..cols).map(|_| rng.gen_range(0..n)).collect();
    x[0] = 1;
    let rows: Vec<Vec<(usize, u64)>> = (0..40)
        .map(|_| {
            let mut row: Vec<(usize, u64)> = (1..cols).map(|j| (j, rng.gen_range(0..n))).collect();
            let s = row.iter().fold(0, |acc, &(j, a)| (acc + mul_mod(a, x[j], n)) % n);
            row.push((0, (n - s) % n));
            row
        })
        .collect();
    let m = SparseMatrix::new(cols, rows, n);
    for t in 1..cols {
        assert_eq!(solve_logs(&m, 0, t, n, t as u64, 8).unwrap(), Some(x[t]));
    }
}

#[test]
fn non_unit_base_is_reported() {
    // the base coordinate is forced to vanish, so no kernel vector has a unit there
    let m = SparseMatrix::from_dense(&[vec![1, 0], vec![0, 1]], 2 * 7);
    assert_eq!(solve_logs(&m, 0, 1, 14, 3, 4).unwrap(), None);
    // Z/6 with base 2 (order 3) and target 4: rows T − 2B and 3B
    let m = SparseMatrix::from_dense(&[vec![4, 1], vec![3, 0]], 6);
    assert_eq!(solve_logs(&m, 0, 1, 3, 5, 16).unwrap(), Some(2));
    // claiming order 6 needs a unit base coordinate modulo 2, which never occurs
    assert_eq!(solve_logs(&m, 0, 1, 6, 5, 16).unwrap(), None);
}

#[test]
fn snf_small_examples() {
    assert_eq!(snf(&[vec![2, 0], vec![0, 3]]).unwrap().diagonal, vec![1, 6]);
    assert_eq!(snf(&[vec![4, 0], vec![0, 6]]).unwrap().diagonal, vec![2, 12]);
    assert_eq!(snf(&[vec![0, 0], vec![0, 0]]).unwrap().diagonal, vec![0, 0]);
    assert_eq!(snf(&[vec![2, 4, 6]]).unwrap().diagonal, vec![2]);
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i128>> {
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let k = rng.gen_range(-2..=2);
            for j in 0..n {
                u[a][j] += k * u[b][j];
            }
        }
    }
    u
}

fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    a.iter().map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

#[test]
fn snf_recovers_planted_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let mut d = vec![1i128];
        for _ in 1..6 {
            let last = *d.last().unwrap();
            d.push(last * rng.gen_range(1..4));
        }
        let diag: Vec<Vec<i128>> = (0..6).map(|i| (0..6).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        let m = matmul(&matmul(&random_unimodular(&mut rng, 6), &diag), &random_unimodular(&mut rng, 6));
        let res = snf(&m).unwrap();
        assert_eq!(res.diagonal, d);
        let det: i128 = res.diagonal.iter().product();
        assert_eq!(det_bareiss(&m).unwrap().abs(), det);
    }
}

#[test]
fn snf_mod_matches_integer_snf() {
    // Z^3 / <rows, 36·I>
    let a = vec![vec![2u64, 4, 0], vec![0, 6, 0], vec![0, 0, 0]];
    let inv = snf_mod(&a, 3, 36);
    let mut int_rows: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    for i in 0..3 {
        int_rows.push((0..3).map(|j| if i == j { 36 } else { 0 }).collect());
    }
    let expect: Vec<u64> = snf(&int_rows).unwrap().diagonal.iter().filter(|&&x| x != 1).map(|&x| x as u64).collect();
    assert_eq!(inv, expect);
    assert_eq!(inv, vec![2, 6, 36]);
}

#[test]
fn singleton_filter_lifts_core_kernel() {
    let p = 101;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    // dense-ish core on columns 0..40 plus a chain of pendant columns
    let mut rows: Vec<Vec<(usize, u64)>> = (0..36)
        .map(|_| (0..6).map(|_| (rng.gen_range(0..40), rng.gen_range(1..p))).collect())
        .collect();
    for j in 40..60 {
        rows.push(vec![(j, rng.gen_range(1..p)), (j - 1, rng.gen_range(1..p)), (rng.gen_range(0..40), 1)]);
    }
    let m = SparseMatrix::new(64, rows, p);
    let f = m.singleton_filter();
    assert!(f.eliminated.len() >= 20);
    assert!(f.core.ncols() <= 40);
    let diag = diagonalize_local(&f.core.to_dense(), f.core.ncols(), p, 1, true);
    for (g, _) in diag.kernel_generators() {
        let x = f.lift(&m, &g, p, || rng.gen_range(0..p));
        assert!(m.is_kernel_vector(&x));
    }
    let mut sampler = KernelSampler::new(&m, p, 1);
    for _ in 0..5 {
        assert!(m.is_kernel_vector(&sampler.sample(&mut rng).unwrap()));
    }
}
