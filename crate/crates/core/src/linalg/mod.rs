//! Linear algebra modulo the group order: kernel vectors of sparse relation
//! matrices and Smith normal forms.

mod dense;
mod snf;
mod sparse;
mod wiedemann;

pub use dense::{diagonalize_local, LocalDiagonal};
pub use snf::{snf, snf_mod, SnfResult, SNF_MAX_DIM};
pub use sparse::{Filtered, SparseMatrix};
pub use wiedemann::{annihilates, berlekamp_massey, wiedemann_kernel};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{crt, factorize, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Below this many nonzeros the dense solver is used directly.
pub const DENSE_CROSSOVER: usize = 2000;
/// Wiedemann attempts per prime before falling back to dense elimination.
pub const WIEDEMANN_TRIES: usize = 8;

/// Source of random kernel vectors modulo one prime power. Small matrices and
/// prime powers are diagonalized once; large matrices modulo a prime use Wiedemann.
pub enum KernelSampler {
    Dense { modulus: u64, ncols: usize, generators: Vec<(Vec<u64>, u64)> },
    /// Wiedemann on the core left by singleton filtering of `full`.
    Sparse { full: SparseMatrix, filtered: Filtered, fallback: Option<Box<KernelSampler>> },
}

impl KernelSampler {
    pub fn new(m: &SparseMatrix, l: u64, e: u32) -> Self {
        if e == 1 && m.nnz() >= DENSE_CROSSOVER {
            let full = m.reduce(l);
            let filtered = full.singleton_filter();
            return KernelSampler::Sparse { full, filtered, fallback: None };
        }
        let pe = l.pow(e);
        let mp = m.reduce(pe);
        let diag = diagonalize_local(&mp.to_dense(), m.ncols(), l, e, true);
        KernelSampler::Dense { modulus: pe, ncols: m.ncols(), generators: diag.kernel_generators() }
    }

    /// Generators with their additive orders, when the kernel is known exactly.
    pub fn generators(&self) -> Option<&[(Vec<u64>, u64)]> {
        match self {
            KernelSampler::Dense { generators, .. } => Some(generators),
            KernelSampler::Sparse { .. } => None,
        }
    }

    pub fn sample(&mut self, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        match self {
            KernelSampler::Dense { modulus, ncols, generators } => {
                let mut x = vec![0u64; *ncols];
                for (g, order) in generators.iter() {
                    let c = rng.gen_range(0..*order);
                    sparse::axpy(c, g, &mut x, *modulus);
                }
                Ok(x)
            }
            KernelSampler::Sparse { full, filtered, fallback } => {
                let matrix = &filtered.core;
                let p = matrix.modulus();
                let v = match fallback {
                    Some(fb) => fb.sample(rng)?,
                    None => match wiedemann_kernel(matrix, p, WIEDEMANN_TRIES, rng)? {
                        Some(v) => v,
                        None => {
                        // no kernel vector found: settle the question exactly
                            let diag = diagonalize_local(&matrix.to_dense(), matrix.ncols(), p, 1, true);
                            let mut dense = KernelSampler::Dense {
                                modulus: p,
                                ncols: matrix.ncols(),
                                generators: diag.kernel_generators(),
                            };
                            let v = dense.sample(rng)?;
                            *fallback = Some(Box::new(dense));
                            v
                        }
                    },
                };
                let v = if matrix.ncols() == 0 { Vec::new() } else { v };
                Ok(filtered.lift(full, &v, p, || rng.gen_range(0..p)))
            }
        }
    }
}

/// Random vector in the kernel of `M` modulo `ℓ^e`; zero when that kernel is trivial.
pub fn kernel_mod_prime_power(m: &SparseMatrix, l: u64, e: u32, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
    let v = KernelSampler::new(m, l, e).sample(rng)?;
    if !m.reduce(l.pow(e)).is_kernel_vector(&v) {
        return Err(Error::Internal(format!("kernel vector fails modulo {}", l.pow(e))));
    }
    Ok(v)
}

fn combine(parts: &[(Vec<u64>, u64)], len: usize) -> Vec<u64> {
    (0..len)
        .map(|j| {
            let residues: Vec<(u64, u64)> = parts.iter().map(|(v, m)| (v[j], *m)).collect();
            crt(&residues).0
        })
        .collect()
}

/// A nonzero `v` with `M·v ≡ 0 (mod N)`, assembled prime by prime.
pub fn kernel_vector(m: &SparseMatrix, seed: u64) -> Result<Option<Vec<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    for (l, e) in factorize(m.modulus()) {
        let v = kernel_mod_prime_power(m, l, e, &mut rng)?;
        parts.push((v, l.pow(e)));
    }
    let v = combine(&parts, m.ncols());
    if !m.is_kernel_vector(&v) {
        return Err(Error::Internal("kernel vector does not satisfy M·v = 0".into()));
    }
    Ok(v.iter().any(|&x| x != 0).then_some(v))
}

fn valuation(x: u64, l: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let (mut x, mut v) = (x, 0);
    while x % l == 0 {
        x /= l;
        v += 1;
    }
    v
}

/// Discrete log of column `target` to base column `base`, modulo `order`
/// (the order of the base, a divisor of `N`). For each prime power `ℓ^e || N`
/// with `ℓ^a || order`, kernel vectors are sampled until the base coordinate
/// has valuation exactly `e − a`; then `v[target]/v[base]` is read off modulo
/// `ℓ^a`. `None` when some prime never yields such a vector.
pub fn solve_logs(
    m: &SparseMatrix,
    base: usize,
    target: usize,
    order: u64,
    seed: u64,
    tries: usize,
) -> Result<Option<u64>> {
    let n = m.modulus();
    if n % order != 0 {
        return Err(Error::Domain(format!("order {order} does not divide {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    for (l, e) in factorize(n) {
        let a = valuation(order, l, e).min(e);
        let a = if order % l == 0 { a } else { 0 };
        if a == 0 {
            continue;
        }
        let pa = l.pow(a);
        let shift = l.pow(e - a);
        let mut sampler = KernelSampler::new(m, l, e);
        let mut found = None;
        for _ in 0..tries {
            let v = sampler.sample(&mut rng)?;
            if valuation(v[base], l, e) != e - a || v[target] % shift != 0 {
                continue;
            }
            let b = (v[base] / shift) % pa;
            let t = (v[target] / shift) % pa;
            let inv = inv_mod(b, pa).expect("unit by valuation");
            found = Some(mul_mod(t, inv, pa));
            break;
        }
        match found {
            Some(x) => parts.push((x, pa)),
            None => return Ok(None),
        }
    }
    Ok(Some(crt(&parts).0 % order.max(1)))
}

#[cfg(test)]
mod tests;
