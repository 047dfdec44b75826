//! Relation collection over a rectangle or weighted-degree triangle of
//! candidate functions `φ(X, Y)`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{BiPoly, Field};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::jacobian::Jacobian;
use crate::places::{decompose_if_smooth, FactorBase, Reject, Smoothness};
use crate::planner::{big_m, optimize_rectangle, optimize_triangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rectangle,
    Triangle,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rectangle" => Ok(Mode::Rectangle),
            "triangle" => Ok(Mode::Triangle),
            _ => Err(Error::Config(format!("unknown search mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Rectangle => "rectangle",
            Mode::Triangle => "triangle",
        })
    }
}

/// Candidate functions: monomials `X^i Y^j` with `j <= kmax < n` and either
/// `i <= dmax` (rectangle) or `n·i + d·j <= wmax` (triangle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub mode: Mode,
    pub kmax: usize,
    pub dmax: usize,
    pub wmax: usize,
    pub seed: u64,
}

impl SearchSpace {
    pub fn rectangle(kmax: usize, dmax: usize, seed: u64) -> Self {
        SearchSpace { mode: Mode::Rectangle, kmax, dmax, wmax: 0, seed }
    }

    pub fn triangle(c: &CurveModel, wmax: usize, seed: u64) -> Self {
        let kmax = (wmax / c.d()).min(c.n() - 1);
        SearchSpace { mode: Mode::Triangle, kmax, dmax: 0, wmax, seed }
    }

    /// The next larger space after exhaustion.
    pub fn escalate(&self, c: &CurveModel) -> Self {
        match self.mode {
            Mode::Rectangle => SearchSpace { dmax: self.dmax + 1, ..self.clone() },
            Mode::Triangle => SearchSpace::triangle(c, self.wmax + 1, self.seed),
        }
    }

    /// Monomials `(i, j)` sorted by weight.
    pub fn monomials(&self, c: &CurveModel) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..=self.kmax.min(c.n() - 1) {
            match self.mode {
                Mode::Rectangle => out.extend((0..=self.dmax).map(|i| (i, j))),
                Mode::Triangle => {
                    let mut i = 0;
                    while c.weight(i, j) <= self.wmax {
                        out.push((i, j));
                        i += 1;
                    }
                }
            }
        }
        out.sort_by_key(|&(i, j)| c.weight(i, j));
        out
    }
}

/// Bounds from the asymptotic constants, rounded and clamped to `1 <= kmax < n`.
pub fn make_search_space(c: &CurveModel, mode: Mode, seed: u64) -> Result<SearchSpace> {
    let (q, g) = (c.q() as f64, c.genus() as f64);
    if g < 1.0 {
        return Err(Error::Config("genus 0 curves have a trivial Jacobian".into()));
    }
    let n = c.n() as f64;
    let m = big_m(q, g);
    if m <= 0.0 {
        return Err(Error::Config(format!("g·log q = {} is too small to plan for", g * q.ln())));
    }
    let scale = (g / m).cbrt();
    match mode {
        Mode::Rectangle => {
            let r = optimize_rectangle(c.kappa());
            let kmax = ((r.nu * n / scale).round() as usize).clamp(1, c.n() - 1);
            let dmax = ((r.delta * c.kappa() * g / n / scale).round() as usize).max(1);
            Ok(SearchSpace::rectangle(kmax, dmax, seed))
        }
        Mode::Triangle => {
            let t = optimize_triangle();
            let wmax = (t.lambda * g / scale).round() as usize;
            let s = SearchSpace::triangle(c, wmax, seed);
            if s.kmax < 1 {
                return Err(Error::Config(format!(
                    "triangle bound {wmax} admits no power of Y (d = {}); the curve is in the subcritical regime",
                    c.d()
                )));
            }
            Ok(s)
        }
    }
}

/// Bijective enumeration of normalized `φ`: the leading (heaviest) monomial has
/// coefficient 1. Functions with `L` lower monomials form a block of `q^L`
/// consecutive indices; the constant `1` is index 0.
#[derive(Clone, Debug)]
pub struct Enumerator {
    monomials: Vec<(usize, usize)>,
    q: u128,
    /// `(start, block size, offset)` per leading monomial
    blocks: Vec<(u128, u128, u128)>,
    total: u128,
}

impl Enumerator {
    pub fn new(c: &CurveModel, space: &SearchSpace) -> Self {
        let monomials = space.monomials(c);
        let q = c.q() as u128;
        let mut rng = ChaCha8Rng::seed_from_u64(space.seed);
        let mut blocks = Vec::with_capacity(monomials.len());
        let mut start = 0u128;
        let mut size = 1u128;
        for _ in 0..monomials.len() {
            let off = if space.seed == 0 { 0 } else { rng.gen_range(0..size) };
            blocks.push((start, size, off));
            start = start.saturating_add(size);
            size = size.saturating_mul(q);
        }
        Enumerator { monomials, q, blocks, total: start }
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn monomials(&self) -> &[(usize, usize)] {
        &self.monomials
    }

    pub fn phi(&self, c: &CurveModel, index: u128) -> BiPoly<u64> {
        let lead = self.blocks.partition_point(|&(s, _, _)| s <= index) - 1;
        let (start, size, off) = self.blocks[lead];
        let mut r = ((index - start) % size + off) % size;
        let mut terms = Vec::with_capacity(lead + 1);
        for &(i, j) in &self.monomials[..lead] {
            let digit = (r % self.q) as u64;
            r /= self.q;
            if digit != 0 {
                terms.push((i, j, c.spec().element(digit)));
            }
        }
        let (i, j) = self.monomials[lead];
        terms.push((i, j, c.spec().one()));
        c.bi().from_terms(&terms)
    }
}

/// `div(φ)` as a sparse exponent vector over the factor base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub entries: Vec<(usize, i64)>,
    pub phi: BiPoly<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollectStats {
    pub tested: u64,
    pub smooth: u64,
    pub not_smooth: u64,
    pub content: u64,
    pub shape: u64,
    pub ramified: u64,
    pub ambiguous: u64,
    /// Smooth over `μ` but touching a place outside the factor base.
    pub outside: u64,
    pub duplicates: u64,
    pub verified: u64,
    pub escalations: u32,
    pub exhausted: bool,
}

impl CollectStats {
    pub fn rejected(&self) -> u64 {
        self.content + self.shape + self.ramified + self.ambiguous + self.outside
    }

    pub fn smooth_rate(&self) -> f64 {
        if self.tested == 0 {
            0.0
        } else {
            self.smooth as f64 / self.tested as f64
        }
    }

    fn record_reject(&mut self, r: Reject) {
        match r {
            Reject::Content => self.content += 1,
            Reject::Shape => self.shape += 1,
            Reject::Ramified => self.ramified += 1,
            Reject::Ambiguous => self.ambiguous += 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CollectOptions {
    pub batch: usize,
    pub max_escalations: u32,
    /// Stop after testing this many candidates.
    pub max_candidates: u64,
    pub verify: bool,
}

impl Default for CollectOptions {
    fn default() -> Self {
        CollectOptions { batch: 2048, max_escalations: 8, max_candidates: 50_000_000, verify: true }
    }
}

/// `fb + 20 + ⌈0.05·fb⌉`.
pub fn oversampled_target(fb_len: usize) -> usize {
    fb_len + 20 + fb_len.div_ceil(20)
}

enum Outcome {
    NotSmooth,
    Rejected(Reject),
    Outside,
    Relation(Vec<(usize, i64)>),
}

fn test_candidate(c: &CurveModel, fb: &FactorBase, phi: &BiPoly<u64>) -> Outcome {
    match decompose_if_smooth(c, phi, fb.mu()) {
        Smoothness::NotSmooth => Outcome::NotSmooth,
        Smoothness::Rejected(r) => Outcome::Rejected(r),
        Smoothness::Smooth(d) => match fb.to_relation(&d) {
            Some(rel) => Outcome::Relation(rel),
            None => Outcome::Outside,
        },
    }
}

/// Collect up to `want` relations, enlarging the space on exhaustion. Every
/// relation is checked in the Jacobian when `opts.verify` is set.
pub fn collect(
    c: &CurveModel,
    fb: &FactorBase,
    space: &SearchSpace,
    want: usize,
    opts: &CollectOptions,
) -> Result<(Vec<Relation>, CollectStats)> {
    let jac = Jacobian::new(c);
    let mut stats = CollectStats::default();
    let mut seen: HashSet<BiPoly<u64>> = HashSet::new();
    let mut out = Vec::new();
    let mut space = space.clone();
    loop {
        let en = Enumerator::new(c, &space);
        let mut next = 1u128;
        while out.len() < want && next < en.len() && stats.tested < opts.max_candidates {
            let end = (next + opts.batch as u128).min(en.len());
            let batch: Vec<(BiPoly<u64>, Option<Outcome>)> = (next..end)
                .into_par_iter()
                .map(|ix| {
                    let phi = en.phi(c, ix);
                    if seen.contains(&phi) {
                        (phi, None)
                    } else {
                        let o = test_candidate(c, fb, &phi);
                        (phi, Some(o))
                    }
                })
                .collect();
            next = end;
            let mut fresh = Vec::new();
            for (phi, o) in batch {
                let Some(o) = o else {
                    stats.duplicates += 1;
                    continue;
                };
                stats.tested += 1;
                seen.insert(phi.clone());
                match o {
                    Outcome::NotSmooth => stats.not_smooth += 1,
                    Outcome::Rejected(r) => stats.record_reject(r),
                    Outcome::Outside => stats.outside += 1,
                    Outcome::Relation(entries) => {
                        stats.smooth += 1;
                        if out.len() + fresh.len() < want {
                            fresh.push(Relation { entries, phi });
                        }
                    }
                }
            }
            if opts.verify {
                let ok: Vec<bool> = fresh
                    .par_iter()
                    .map(|r| jac.verify_relation(fb, &r.entries))
                    .collect::<Result<_>>()?;
                if let Some(bad) = ok.iter().position(|&b| !b) {
                    return Err(Error::Internal(format!(
                        "relation from {:?} does not verify in the Jacobian",
                        fresh[bad].phi
                    )));
                }
                stats.verified += fresh.len() as u64;
            }
            out.extend(fresh);
        }
        if out.len() >= want {
            return Ok((out, stats));
        }
        if stats.escalations >= opts.max_escalations || stats.tested >= opts.max_candidates {
            stats.exhausted = true;
            return Ok((out, stats));
        }
        stats.escalations += 1;
        space = space.escalate(c);
    }
}

/// Relation exponents as a sparse matrix over `Z/N`, rows = relations,
/// columns = factor-base indices.
pub fn relation_matrix(relations: &[Relation], fb: &FactorBase, modulus: u64) -> crate::linalg::SparseMatrix {
    let rows: Vec<Vec<(usize, i64)>> = relations.iter().map(|r| r.entries.clone()).collect();
    crate::linalg::SparseMatrix::from_signed(fb.len(), &rows, modulus)
}

/// Number of relations touching each column.
pub fn column_weights(relations: &[Relation], cols: usize) -> Vec<usize> {
    let mut w = vec![0; cols];
    for r in relations {
        for &(i, _) in &r.entries {
            w[i] += 1;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::samples;
    use crate::places::build_factor_base;

    #[test]
    fn desk_bounds_for_c31() {
        let c = samples::c31_g3();
        let s = make_search_space(&c, Mode::Rectangle, 0).unwrap();
        assert_eq!((s.kmax, s.dmax), (2, 2));
        let t = make_search_space(&c, Mode::Triangle, 0).unwrap();
        assert_eq!(t.kmax, 1);
        assert!(t.monomials(&c).iter().all(|&(i, j)| c.weight(i, j) <= t.wmax));
    }

    #[test]
    fn enumeration_is_a_bijection() {
        let c = samples::c5_g2();
        for seed in [0, 7] {
            let s = SearchSpace::rectangle(1, 1, seed);
            let en = Enumerator::new(&c, &s);
            assert_eq!(en.len(), 1 + 5 + 25 + 125);
            let all: HashSet<BiPoly<u64>> = (0..en.len()).map(|i| en.phi(&c, i)).collect();
            assert_eq!(all.len() as u128, en.len());
            for phi in &all {
                let w = c.weighted_degree(phi).unwrap();
                let lead: Vec<_> = c.bi().terms(phi).into_iter().filter(|&(i, j, _)| c.weight(i, j) == w).collect();
                assert_eq!(lead.len(), 1);
                assert_eq!(lead[0].2, 1);
            }
        }
    }

    #[test]
    fn collected_relations_verify_and_are_distinct() {
        let c = samples::c5_g2();
        let fb = build_factor_base(&c, 2);
        let want = oversampled_target(fb.len());
        let space = SearchSpace::rectangle(1, 1, 3);
        let (rels, stats) = collect(&c, &fb, &space, want, &CollectOptions::default()).unwrap();
        assert_eq!(rels.len(), want);
        assert!(stats.escalations >= 1 && !stats.exhausted);
        assert_eq!(stats.verified as usize, want);
        let phis: HashSet<_> = rels.iter().map(|r| r.phi.clone()).collect();
        assert_eq!(phis.len(), rels.len());
        for r in &rels {
            assert!(r.entries.iter().all(|&(_, e)| e != 0));
            let w = c.weighted_degree(&r.phi).unwrap() as i64;
            assert_eq!(r.entries[0], (0, -w));
        }
    }
}
