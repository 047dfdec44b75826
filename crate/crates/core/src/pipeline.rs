//! End-to-end orchestration: factor base, relations, descent, linear algebra,
//! and oracle verification.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::factorize;
use crate::curve::{jacobian_order, CurveModel};
use crate::descent::{full_descent, randomize_target, DescentOptions, DescentTree, Randomized};
use crate::error::{Error, Result};
use crate::jacobian::{Ideal, Jacobian};
use crate::linalg::{diagonalize_local, KernelSampler, SparseMatrix};
use crate::places::{build_factor_base, Divisor, FactorBase, Place};
use crate::relations::{collect, make_search_space, oversampled_target, CollectOptions, CollectStats, Mode, Relation};

/// Largest group order for which the baby-step/giant-step cross-check runs.
pub const BSGS_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Smoothness bound; chosen from the group order when `None`.
    pub mu: Option<usize>,
    pub mode: Mode,
    /// Relation target; `fb + 20 + 5%` when `None`.
    pub want: Option<usize>,
    pub seed: u64,
    pub collect: CollectOptions,
    pub descent: DescentOptions,
    /// Kernel samples per prime when reading off a logarithm.
    pub solve_tries: usize,
    /// Re-randomizations (and relation top-ups) before giving up.
    pub retries: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mu: None,
            mode: Mode::Rectangle,
            want: None,
            seed: 1,
            collect: CollectOptions::default(),
            descent: DescentOptions::default(),
            solve_tries: 24,
            retries: 6,
        }
    }
}

/// Smallest `μ <= g` whose factor base has at least `2·√N` places.
pub fn auto_mu(c: &CurveModel, n: u64) -> (usize, FactorBase) {
    let floor = 2.0 * (n as f64).sqrt();
    let top = c.genus().max(1);
    for mu in 1..top {
        let fb = build_factor_base(c, mu);
        if fb.len() as f64 >= floor {
            return (mu, fb);
        }
    }
    (top, build_factor_base(c, top))
}

#[derive(Clone, Debug, Default)]
pub struct PhaseTimes {
    pub entries: Vec<(&'static str, Duration)>,
}

impl PhaseTimes {
    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.entries.push((phase, t.elapsed()));
        out
    }
}

/// Factor base and relations shared by the dlog and group-structure runs.
#[derive(Clone, Debug)]
pub struct Setup {
    pub group_order: u64,
    pub fb: FactorBase,
    pub relations: Vec<Relation>,
    pub collect_stats: CollectStats,
}

pub fn prepare(c: &CurveModel, cfg: &PipelineConfig, times: &mut PhaseTimes) -> Result<Setup> {
    let zeta = times.time("zeta", || jacobian_order(c))?;
    let n = zeta.jacobian_order;
    let fb = times.time("factor-base", || match cfg.mu {
        Some(mu) => build_factor_base(c, mu.max(1)),
        None => auto_mu(c, n).1,
    });
    let want = cfg.want.unwrap_or_else(|| oversampled_target(fb.len()));
    let space = make_search_space(c, cfg.mode, cfg.seed)?;
    let (relations, collect_stats) = times.time("relations", || collect(c, &fb, &space, want, &cfg.collect))?;
    if relations.len() < fb.len() {
        return Err(Error::phase(
            "relations",
            format!(
                "{} relations for {} factor-base places after {} candidates; enlarge the search space or budget",
                relations.len(),
                fb.len(),
                collect_stats.tested
            ),
        ));
    }
    Ok(Setup { group_order: n, fb, relations, collect_stats })
}

/// Relation matrix with extra columns for descended places and symbols.
struct MatrixBuilder<'a> {
    fb: &'a FactorBase,
    extra: HashMap<Place, usize>,
    symbols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl<'a> MatrixBuilder<'a> {
    fn new(fb: &'a FactorBase, relations: &[Relation]) -> Self {
        MatrixBuilder {
            fb,
            extra: HashMap::new(),
            symbols: 0,
            rows: relations.iter().map(|r| r.entries.clone()).collect(),
        }
    }

    fn column(&mut self, p: &Place) -> usize {
        if let Some(i) = self.fb.index_of(p) {
            return i;
        }
        let next = self.fb.len() + self.extra.len();
        *self.extra.entry(p.clone()).or_insert(next)
    }

    fn add_divisor_row(&mut self, d: &Divisor) {
        let row = d.support().iter().map(|(p, &e)| (self.column(p), e)).collect::<Vec<_>>();
        self.rows.push(row);
    }

    fn add_tree(&mut self, tree: &DescentTree) {
        for node in &tree.nodes {
            self.add_divisor_row(&node.witness);
        }
    }

    /// Columns for symbols are numbered after all place columns, so they are
    /// assigned when the matrix is built.
    fn add_symbol_row(&mut self, rz: &Randomized) -> usize {
        let sym = self.symbols;
        self.symbols += 1;
        // r·S + Σ s_i·(P_i − deg P_i·P∞) − Σ e_j·(Q_j − deg Q_j·P∞) is principal
        let mut row = vec![(usize::MAX - sym, rz.r as i64)];
        let mut inf = 0i64;
        for &(i, s) in &rz.shift {
            row.push((i, s));
            inf -= s * self.fb.place(i).degree() as i64;
        }
        for (p, e) in &rz.places {
            let col = self.column(p);
            row.push((col, -e));
            inf += e * p.degree() as i64;
        }
        row.push((0, inf));
        self.rows.push(row);
        sym
    }

    fn build(self, modulus: u64) -> (SparseMatrix, usize) {
        let place_cols = self.fb.len() + self.extra.len();
        let rows: Vec<Vec<(usize, i64)>> = self
            .rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(j, e)| if j >= usize::MAX - 16 { (place_cols + (usize::MAX - j), e) } else { (j, e) })
                    .collect()
            })
            .collect();
        (SparseMatrix::from_signed(place_cols + self.symbols, &rows, modulus), place_cols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    /// `log·base = target` checked in the Jacobian and matched by baby-step/giant-step.
    Bsgs,
    /// `log·base = target` checked in the Jacobian.
    Oracle,
}

#[derive(Clone, Debug, Default)]
pub struct DlogStats {
    pub fb_size: usize,
    pub mu: usize,
    pub relations: usize,
    pub collect: CollectStats,
    pub descent_nodes: usize,
    pub descent_candidates: u64,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub attempts: usize,
    pub times: PhaseTimes,
}

#[derive(Clone, Debug)]
pub struct DlogResult {
    /// `log` with `log·base = target`, reduced modulo `order`.
    pub log: u64,
    pub order: u64,
    pub group_order: u64,
    pub verification: Verification,
    /// Descent witnesses and randomizations, for replay.
    pub witnesses: Vec<Divisor>,
    pub stats: DlogStats,
}

fn verify_log(jac: &Jacobian, base: &Ideal, target: &Ideal, log: u64, order: u64) -> Result<Option<Verification>> {
    if jac.scalar(base, log as i128)? != *target {
        return Ok(None);
    }
    if order <= BSGS_LIMIT {
        return Ok(match jac.bsgs_dlog(base, target, order)? {
            Some(x) if x % order == log % order => Some(Verification::Bsgs),
            _ => None,
        });
    }
    Ok(Some(Verification::Oracle))
}

fn not_in_subgroup() -> Error {
    Error::Domain("the target is not in the subgroup generated by the base".into())
}

/// `log` with `log·base = target`, modulo the order of `base`.
pub fn run_dlog(c: &CurveModel, cfg: &PipelineConfig, base: &Ideal, target: &Ideal) -> Result<DlogResult> {
    let jac = Jacobian::new(c);
    let mut times = PhaseTimes::default();
    let mut setup = prepare(c, cfg, &mut times)?;
    let n = setup.group_order;
    let order = jac.order(base, n)?;
    let mut stats = DlogStats { mu: setup.fb.mu(), ..Default::default() };
    if target.is_unit() {
        stats.times = times;
        return Ok(DlogResult {
            log: 0,
            order,
            group_order: n,
            verification: verify_log(&jac, base, target, 0, order)?.expect("identity"),
            witnesses: Vec::new(),
            stats,
        });
    }
    let target_order = jac.order(target, n)?;
    if order % target_order != 0 || order == 1 {
        return Err(not_in_subgroup());
    }
    if order <= BSGS_LIMIT && jac.bsgs_dlog(base, target, order)?.is_none() {
        return Err(not_in_subgroup());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd1a6);
    let mut descent = cfg.descent.clone();
    descent.modulus = Some(n);
    for attempt in 0..cfg.retries {
        stats.attempts = attempt + 1;
        let mut builder = MatrixBuilder::new(&setup.fb, &setup.relations);
        let mut witnesses = Vec::new();
        let mut syms = Vec::new();
        for class in [base, target] {
            let rz = times.time("randomize", || {
                randomize_target(&jac, &setup.fb, class, n, 500, attempt == 0, &mut rng)
            })?;
            for (p, _) in &rz.places {
                if setup.fb.index_of(p).is_some() {
                    continue;
                }
                descent.seed = cfg.seed.wrapping_add(attempt as u64);
                let tree = times.time("descent", || full_descent(c, &setup.fb, p, &descent))?;
                stats.descent_nodes += tree.nodes.len();
                stats.descent_candidates += tree.candidates;
                witnesses.extend(tree.nodes.iter().map(|nd| nd.witness.clone()));
                builder.add_tree(&tree);
            }
            syms.push(builder.add_symbol_row(&rz));
        }
        let (m, place_cols) = builder.build(n);
        stats.matrix_rows = m.nrows();
        stats.matrix_cols = m.ncols();
        let seed = cfg.seed.wrapping_mul(31).wrapping_add(attempt as u64);
        let solved = times.time("linalg", || {
            crate::linalg::solve_logs(&m, place_cols + syms[0], place_cols + syms[1], order, seed, cfg.solve_tries)
        })?;
        let Some(log) = solved else {
            // base coordinate never invertible: re-randomize
            continue;
        };
        if let Some(v) = times.time("verify", || verify_log(&jac, base, target, log, order))? {
            stats.fb_size = setup.fb.len();
            stats.relations = setup.relations.len();
            stats.collect = setup.collect_stats.clone();
            stats.times = times;
            return Ok(DlogResult { log, order, group_order: n, verification: v, witnesses, stats });
        }
        // a wrong answer means the relations do not span the full lattice
        let more = setup.relations.len() + setup.relations.len() / 4 + 10;
        let cfg_more = PipelineConfig { want: Some(more), ..cfg.clone() };
        setup = prepare(c, &cfg_more, &mut times)?;
    }
    Err(Error::phase("dlog", format!("no verified logarithm after {} attempts", cfg.retries)))
}

/// Independent replay: every witness is principal and `log·base = target`.
pub fn verify_end_to_end(c: &CurveModel, base: &Ideal, target: &Ideal, result: &DlogResult) -> Result<bool> {
    verify_claim(c, base, target, result.log, &result.witnesses)
}

/// Checks a claimed logarithm and its witness divisors using only the
/// Jacobian oracle.
pub fn verify_claim(c: &CurveModel, base: &Ideal, target: &Ideal, log: u64, witnesses: &[Divisor]) -> Result<bool> {
    let jac = Jacobian::new(c);
    for w in witnesses {
        if !jac.verify_divisor(w)? {
            return Ok(false);
        }
    }
    Ok(jac.scalar(base, log as i128)? == *target)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    /// Invariant factors `d_1 | d_2 | …`, all `> 1`.
    pub invariants: Vec<u64>,
    pub group_order: u64,
    pub generators: Vec<Place>,
}

/// Invariant factors of the subgroup generated by `generators`: homomorphisms
/// to `Z/ℓ^e` are read from the kernel of the relation matrix, evaluated on
/// the generators, and the image is diagonalized.
pub fn structure_from_relations(
    fb: &FactorBase,
    relations: &[Relation],
    n: u64,
    generators: &[usize],
    seed: u64,
) -> Result<Vec<u64>> {
    let m = crate::relations::relation_matrix(relations, fb, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for (l, e) in factorize(n) {
        let pe = l.pow(e);
        let mut sampler = KernelSampler::new(&m, l, e);
        let homs: Vec<Vec<u64>> = match sampler.generators() {
            Some(gens) => gens.iter().map(|(v, _)| v.clone()).collect(),
            None => (0..2 * generators.len().min(64) + 8).map(|_| sampler.sample(&mut rng)).collect::<Result<_>>()?,
        };
        // value of each homomorphism on [g − deg g·P∞]
        let h: Vec<Vec<u64>> = generators
            .iter()
            .map(|&i| {
                let deg = fb.place(i).degree() as u64;
                homs.iter()
                    .map(|x| {
                        let at_inf = crate::arith::mul_mod(x[0], deg % pe, pe);
                        crate::arith::sub_mod(x[i], at_inf, pe)
                    })
                    .collect()
            })
            .collect();
        let diag = diagonalize_local(&h, homs.len(), l, e, false);
        per_prime.push((l, diag.valuations.iter().map(|&v| e - v).filter(|&f| f > 0).collect()));
    }
    let len = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (l, mut exps) in per_prime {
        exps.sort_unstable();
        let off = len - exps.len();
        for (i, &f) in exps.iter().enumerate() {
            out[off + i] *= l.pow(f);
        }
    }
    Ok(out)
}

/// Group structure of `Jac(C)(F_q)` from the classes `[P − deg P·P∞]` of the
/// factor-base places.
pub fn run_group_structure(c: &CurveModel, cfg: &PipelineConfig) -> Result<GroupStructure> {
    let mut times = PhaseTimes::default();
    let mut cfg = cfg.clone();
    let mut last = Vec::new();
    for attempt in 0..cfg.retries {
        let setup = prepare(c, &cfg, &mut times)?;
        let n = setup.group_order;
        if n == 1 {
            return Ok(GroupStructure { invariants: Vec::new(), group_order: 1, generators: Vec::new() });
        }
        let gens: Vec<usize> = (1..setup.fb.len()).collect();
        let inv = structure_from_relations(&setup.fb, &setup.relations, n, &gens, cfg.seed + attempt as u64)?;
        let prod: u128 = inv.iter().map(|&x| x as u128).product();
        if prod == n as u128 {
            return Ok(GroupStructure {
                invariants: inv,
                group_order: n,
                generators: gens.iter().map(|&i| setup.fb.place(i).clone()).collect(),
            });
        }
        last = inv;
        // too large: spurious kernel from missing relations; too small: more places needed
        let more = setup.relations.len() + setup.relations.len() / 2 + 10;
        cfg.want = Some(more);
        if prod < n as u128 && setup.fb.mu() < c.genus() {
            cfg.mu = Some(setup.fb.mu() + 1);
            cfg.want = None;
        }
    }
    Err(Error::phase("group-structure", format!("invariant factors {last:?} never multiplied to the group order")))
}
