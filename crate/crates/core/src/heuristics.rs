//! Empirical checks of the two working heuristics: smoothness of norms
//! behaves like that of random polynomials, and relations span the full
//! relation lattice.

use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Field, Poly};
use crate::arith::factorize;
use crate::curve::CurveModel;
use crate::descent::{next_target, random_cofactors};
use crate::error::{Error, Result};
use crate::linalg::diagonalize_local;
use crate::places::{decompose_function, norm, places_above, FactorBase, Place};
use crate::relations::{relation_matrix, Enumerator, Relation, SearchSpace};

/// Wilson score interval for `hits` successes in `trials`, at normal quantile `z`.
pub fn wilson(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Proportion with a 95% Wilson interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Rate {
    pub hits: u64,
    pub trials: u64,
    pub lo: f64,
    pub hi: f64,
}

impl Rate {
    pub fn new(hits: u64, trials: u64) -> Self {
        let (lo, hi) = wilson(hits, trials, 1.96);
        Rate { hits, trials, lo, hi }
    }

    pub fn value(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.hits as f64 / self.trials as f64
        }
    }
}

fn ratio(a: &Rate, b: &Rate) -> f64 {
    if b.hits == 0 {
        f64::NAN
    } else {
        a.value() / b.value()
    }
}

fn random_monic(c: &CurveModel, deg: usize, rng: &mut impl RngCore) -> Poly<u64> {
    let f = c.ring().field();
    let mut coeffs: Vec<u64> = (0..deg).map(|_| f.random(rng)).collect();
    coeffs.push(f.one());
    c.ring().from_coeffs(coeffs)
}

fn is_smooth(c: &CurveModel, p: &Poly<u64>, mu: usize) -> bool {
    c.ring().smooth_factor(p, mu).is_some()
}

/// Triangle just large enough to contain every `φ` behind `relations`.
pub fn consumed_space(c: &CurveModel, relations: &[Relation], seed: u64) -> SearchSpace {
    let wmax = relations.iter().filter_map(|r| c.weighted_degree(&r.phi)).max().unwrap_or(c.n().max(c.d()));
    SearchSpace::triangle(c, wmax, seed)
}

#[derive(Clone, Debug)]
pub struct Heuristic1 {
    pub mu: usize,
    pub space: SearchSpace,
    /// `μ`-smooth norms among sampled `φ`.
    pub search: Rate,
    /// `μ`-smooth random monic polynomials, one per sample at the same degree.
    pub random: Rate,
    pub ratio: f64,
    /// Samples per norm degree.
    pub degrees: BTreeMap<usize, u64>,
    /// Sampled `φ` that `decompose_function` rejects.
    pub degenerate: Rate,
}

/// Norms of uniformly random nonconstant `φ` from `space` against random
/// polynomials of matched degree.
pub fn heuristic1(c: &CurveModel, space: &SearchSpace, mu: usize, samples: usize, seed: u64) -> Result<Heuristic1> {
    let en = Enumerator::new(c, space);
    if en.len() < 2 {
        return Err(Error::Config("search space holds no nonconstant function".into()));
    }
    let outcomes: Vec<(usize, bool, bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (s as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let phi = en.phi(c, rng.gen_range(1..en.len()));
            let nm = norm(c, &phi);
            let deg = nm.deg().max(0) as usize;
            let smooth = is_smooth(c, &nm, mu);
            let rand_smooth = is_smooth(c, &random_monic(c, deg, &mut rng), mu);
            let degenerate = decompose_function(c, &phi).is_err();
            (deg, smooth, rand_smooth, degenerate)
        })
        .collect();
    let mut degrees = BTreeMap::new();
    for o in &outcomes {
        *degrees.entry(o.0).or_insert(0) += 1;
    }
    let n = samples as u64;
    let search = Rate::new(outcomes.iter().filter(|o| o.1).count() as u64, n);
    let random = Rate::new(outcomes.iter().filter(|o| o.2).count() as u64, n);
    let degenerate = Rate::new(outcomes.iter().filter(|o| o.3).count() as u64, n);
    Ok(Heuristic1 { mu, space: space.clone(), ratio: ratio(&search, &random), search, random, degrees, degenerate })
}

#[derive(Clone, Debug)]
pub struct DescentConditioned {
    pub place: Place,
    pub k: usize,
    pub target: usize,
    /// Target-smooth cofactors `N(φ)/u^m` over lattice elements.
    pub cofactor: Rate,
    /// Target-smooth random monic polynomials of matched degree.
    pub random: Rate,
    pub ratio: f64,
}

/// A random unramified place of degree exactly `deg`.
pub fn random_place(c: &CurveModel, deg: usize, rng: &mut impl RngCore) -> Result<Place> {
    for _ in 0..10_000 {
        let u = random_monic(c, deg, rng);
        if !c.ring().is_irreducible(&u) {
            continue;
        }
        if let Some(ps) = places_above(c, &u) {
            if let Some(p) = ps.into_iter().find(|p| p.degree() == deg) {
                return Ok(p);
            }
        }
    }
    Err(Error::phase("heuristic-stats", format!("no place of degree {deg} found")))
}

/// The same comparison for functions constrained to vanish at a random place
/// `Q` of degree `deg`, as in one descent step.
pub fn heuristic1_descent(
    c: &CurveModel,
    deg: usize,
    mu: usize,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<DescentConditioned> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_place(c, deg, &mut rng)?;
    let target = next_target(deg, mu);
    let cof = random_cofactors(c, &q, k, 1, samples, &mut rng)?;
    let outcomes: Vec<(bool, bool)> = cof
        .par_iter()
        .enumerate()
        .map(|(s, f)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed ^ (s as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let d = f.deg().max(0) as usize;
            (is_smooth(c, f, target), is_smooth(c, &random_monic(c, d, &mut rng), target))
        })
        .collect();
    let n = outcomes.len() as u64;
    let cofactor = Rate::new(outcomes.iter().filter(|o| o.0).count() as u64, n);
    let random = Rate::new(outcomes.iter().filter(|o| o.1).count() as u64, n);
    Ok(DescentConditioned { place: q, k, target, ratio: ratio(&cofactor, &random), cofactor, random })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankComparison {
    pub prime: u64,
    pub rows: usize,
    pub cols: usize,
    pub observed: usize,
    /// Rank of a uniformly random matrix of the same shape.
    pub random: usize,
}

fn rank_mod(rows: &[Vec<u64>], ncols: usize, l: u64) -> usize {
    diagonalize_local(rows, ncols, l, 1, false).valuations.len()
}

/// Rank of the relation matrix modulo each prime dividing `n` against a random
/// matrix of equal shape. Full lattice rank means `|fb| − 1` (the degree map
/// always lies in the kernel).
pub fn heuristic2(fb: &FactorBase, relations: &[Relation], n: u64, seed: u64) -> Vec<RankComparison> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = relation_matrix(relations, fb, n);
    factorize(n)
        .into_iter()
        .map(|(l, _)| {
            let dense = m.reduce(l).to_dense();
            let observed = rank_mod(&dense, fb.len(), l);
            let rnd: Vec<Vec<u64>> =
                (0..dense.len()).map(|_| (0..fb.len()).map(|_| rng.gen_range(0..l)).collect()).collect();
            RankComparison { prime: l, rows: dense.len(), cols: fb.len(), observed, random: rank_mod(&rnd, fb.len(), l) }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct HeuristicReport {
    pub h1: Heuristic1,
    pub h1_descent: Option<DescentConditioned>,
    pub h2: Vec<RankComparison>,
}
