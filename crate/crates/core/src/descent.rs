//! Special-Q descent: rewrite a place of large degree as a combination of
//! smaller places using short vectors of the `F_q[X]`-lattice of functions
//! vanishing at it.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rand::{Rng, RngCore, SeedableRng};
use rayon::prelude::*;

use crate::algebra::{BiPoly, Field, PolyRing};
use crate::arith::{add_mod, gcd, inv_mod, mul_mod};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::jacobian::{Ideal, Jacobian};
use crate::lattice::{reduced_basis, Row, Weights};
use crate::places::{decompose_with_factors, fiber, is_ramified, norm, Divisor, FactorBase, Place};
use crate::planner::{big_m, descent_schedule, optimize_rectangle, sigma, tau};

/// Functions `Σ_{t<=k} a_t(X) Y^t` with `φ(X, v) ≡ 0 mod u`.
#[derive(Clone, Debug)]
pub struct DescentLattice {
    pub place: Place,
    pub k: usize,
    /// `(u, 0, …)`, `(−v_1, 1, 0, …)`, …, `(−v_k, 0, …, 1)`
    pub basis: Vec<Row>,
    /// Weak Popov form under `n·deg + d·t`, by increasing weight.
    pub reduced: Vec<Row>,
    /// Pivot weight of each reduced row.
    pub weights: Vec<usize>,
}

pub fn build_lattice(c: &CurveModel, q: &Place, k: usize) -> Result<DescentLattice> {
    let Place::Affine { u, v } = q else {
        return Err(Error::Domain("the infinite place has no descent lattice".into()));
    };
    if k == 0 || k >= c.n() {
        return Err(Error::Domain(format!("lattice Y-degree {k} outside 1..{}", c.n())));
    }
    let ring = c.ring();
    let powers = ring.modcomp_powers(v, u, k)?;
    let mut basis = Vec::with_capacity(k + 1);
    let mut first = vec![ring.zero(); k + 1];
    first[0] = u.clone();
    basis.push(first);
    for (i, vi) in powers.iter().enumerate() {
        let mut row = vec![ring.zero(); k + 1];
        row[0] = ring.neg(vi);
        row[i + 1] = ring.one();
        basis.push(row);
    }
    let w = Weights::cab(c.n(), c.d(), k + 1);
    let reduced = reduced_basis(ring, &basis, &w);
    let weights = reduced.iter().map(|r| w.pivot(r).expect("nonzero").0).collect();
    Ok(DescentLattice { place: q.clone(), k, basis, reduced, weights })
}

impl DescentLattice {
    /// Coefficient slots `(row, X-degree)` with `n·deg + w_row <= bound`, by weight.
    fn slots(&self, n: usize, bound: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, &w) in self.weights.iter().enumerate() {
            let mut e = 0;
            while w + n * e <= bound {
                out.push((r, e));
                e += 1;
            }
        }
        out.sort_by_key(|&(r, e)| self.weights[r] + n * e);
        out
    }

    /// `Σ_{slots} coeff·X^e·b_row` as a bivariate polynomial.
    fn combine(&self, c: &CurveModel, slots: &[(usize, usize)], coeffs: &[(usize, u64)]) -> BiPoly<u64> {
        let ring = c.ring();
        let mut acc = vec![ring.zero(); self.k + 1];
        for &(s, a) in coeffs {
            let (r, e) = slots[s];
            let m = ring.monomial(a, e);
            for (x, b) in acc.iter_mut().zip(&self.reduced[r]) {
                *x = ring.add(x, &ring.mul(&m, b));
            }
        }
        c.bi().normalize(acc)
    }
}

/// One expansion: `div φ = m·Q + Σ children − w(φ)·P∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentNode {
    pub place: Place,
    pub phi: BiPoly<u64>,
    pub multiplicity: i64,
    pub children: Vec<(Place, i64)>,
    pub witness: Divisor,
}

#[derive(Clone, Debug)]
pub struct StepOptions {
    pub k: usize,
    /// Extra coefficient degree over the balanced bound.
    pub z: usize,
    pub budget: u64,
    pub batch: usize,
    /// Reject multiplicities sharing a factor with this modulus.
    pub modulus: Option<u64>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub candidates: u64,
    pub rejected: u64,
    pub space: u128,
}

enum Candidate {
    Miss,
    Reject,
    Hit(DescentNode),
}

fn test_candidate(c: &CurveModel, q: &Place, phi: &BiPoly<u64>, target: usize, modulus: Option<u64>) -> Candidate {
    let Place::Affine { u, v } = q else { unreachable!() };
    let bi = c.bi();
    let ring = c.ring();
    assert!(bi.subst_y_mod(phi, v, u).is_zero(), "lattice element does not vanish at Q");
    if phi.len() < 2 || bi.content_x(phi).deg() > 0 {
        return Candidate::Reject;
    }
    let mut rest = norm(c, phi);
    let mut m = 0u32;
    while let Ok((quo, rem)) = ring.divrem(&rest, u) {
        if !rem.is_zero() {
            break;
        }
        rest = quo;
        m += 1;
    }
    if m == 0 {
        return Candidate::Reject;
    }
    if modulus.is_some_and(|n| gcd(m as u64, n) != 1) {
        return Candidate::Reject;
    }
    let Some(mut factors) = ring.smooth_factor(&rest, target) else {
        return Candidate::Miss;
    };
    factors.push((u.clone(), m));
    let Ok(div) = decompose_with_factors(c, phi, &factors) else {
        return Candidate::Reject;
    };
    if div.exponent(q) != m as i64 {
        return Candidate::Reject;
    }
    let children = div
        .support()
        .iter()
        .filter(|(p, _)| !p.is_infinite() && *p != q)
        .map(|(p, &e)| (p.clone(), e))
        .collect();
    Candidate::Hit(DescentNode { place: q.clone(), phi: phi.clone(), multiplicity: m as i64, children, witness: div })
}

/// Search the lattice of `Q` for `φ` whose divisor away from `Q` and `P∞` is
/// `target`-smooth. Candidates are normalized combinations of the reduced basis
/// (heaviest slot coefficient 1), scanned in batches; the first hit in
/// enumeration order wins.
pub fn descend_step(
    c: &CurveModel,
    q: &Place,
    target: usize,
    opts: &StepOptions,
) -> Result<(Option<DescentNode>, StepStats)> {
    if q.degree() <= target {
        return Err(Error::Domain(format!("place of degree {} is already {target}-smooth", q.degree())));
    }
    let lat = build_lattice(c, q, opts.k)?;
    let n = c.n();
    let bound = lat.weights.iter().copied().max().unwrap_or(0) + n * opts.z;
    let slots = lat.slots(n, bound);
    let qs = c.q() as u128;
    let mut starts = Vec::with_capacity(slots.len() + 1);
    let mut total = 0u128;
    let mut size = 1u128;
    for _ in 0..slots.len() {
        starts.push(total);
        total = total.saturating_add(size);
        size = size.saturating_mul(qs);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let offsets: Vec<u128> = (0..slots.len())
        .map(|l| {
            let sz = qs.saturating_pow(l as u32);
            if opts.seed == 0 { 0 } else { rng.gen_range(0..sz) }
        })
        .collect();
    let decode = |index: u128| -> Vec<(usize, u64)> {
        let lead = starts.partition_point(|&s| s <= index) - 1;
        let sz = qs.saturating_pow(lead as u32);
        let mut r = ((index - starts[lead]) % sz + offsets[lead]) % sz;
        let mut coeffs = Vec::with_capacity(lead + 1);
        for s in 0..lead {
            let digit = (r % qs) as u64;
            r /= qs;
            if digit != 0 {
                coeffs.push((s, c.spec().element(digit)));
            }
        }
        coeffs.push((lead, c.spec().one()));
        coeffs
    };
    let mut stats = StepStats { space: total, ..Default::default() };
    let limit = total.min(opts.budget as u128);
    let mut next = 0u128;
    while next < limit {
        let end = (next + opts.batch as u128).min(limit);
        let found: Vec<Candidate> = (next..end)
            .into_par_iter()
            .map(|ix| {
                let phi = lat.combine(c, &slots, &decode(ix));
                test_candidate(c, q, &phi, target, opts.modulus)
            })
            .collect();
        for cand in found {
            stats.candidates += 1;
            match cand {
                Candidate::Miss => {}
                Candidate::Reject => stats.rejected += 1,
                Candidate::Hit(node) => return Ok((Some(node), stats)),
            }
        }
        next = end;
    }
    Ok((None, stats))
}

/// Norm cofactors `N(φ)/u^m` of random elements of the lattice of `Q`
/// (balanced slots plus `z` extra X-degrees, heaviest slot coefficient 1).
/// Elements with content or without `Y` are skipped.
pub fn random_cofactors(
    c: &CurveModel,
    q: &Place,
    k: usize,
    z: usize,
    count: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<crate::algebra::Poly<u64>>> {
    let Place::Affine { u, .. } = q else {
        return Err(Error::Domain("the infinite place has no descent lattice".into()));
    };
    let lat = build_lattice(c, q, k)?;
    let n = c.n();
    let bound = lat.weights.iter().copied().max().unwrap_or(0) + n * z;
    let slots = lat.slots(n, bound);
    let ring = c.ring();
    let mut out = Vec::with_capacity(count);
    let mut guard = 0usize;
    while out.len() < count && guard < 50 * count + 100 {
        guard += 1;
        let mut coeffs: Vec<(usize, u64)> =
            (0..slots.len() - 1).map(|s| (s, c.spec().element(rng.gen_range(0..c.q())))).collect();
        coeffs.push((slots.len() - 1, c.spec().one()));
        let phi = lat.combine(c, &slots, &coeffs);
        if phi.len() < 2 || c.bi().content_x(&phi).deg() > 0 {
            continue;
        }
        let mut rest = norm(c, &phi);
        while let Ok((quo, rem)) = ring.divrem(&rest, u) {
            if !rem.is_zero() {
                break;
            }
            rest = quo;
        }
        out.push(rest);
    }
    Ok(out)
}

/// Desk-scale target: `min(deg − 1, max(μ, ⌈√(deg·μ)⌉))`.
pub fn next_target(deg: usize, mu: usize) -> usize {
    let geo = ((deg * mu) as f64).sqrt().ceil() as usize;
    geo.max(mu).min(deg - 1)
}

/// Lattice dimension for a descent level from `σ` of the planner schedule,
/// `round(σ·n/(g/M)^{1/3−τ/2})` clamped to `1..n`.
pub fn planned_k(c: &CurveModel, level: u32) -> usize {
    let (q, g, n) = (c.q() as f64, c.genus() as f64, c.n() as f64);
    let kappa = c.kappa();
    let m = big_m(q, g);
    let e = optimize_rectangle(kappa).b;
    let level = level.max(1);
    let sched = descent_schedule(kappa, e, 1.0, level as usize);
    let prev = if level == 1 { 1.0 } else { sched[level as usize - 2].1 };
    let s = sigma(kappa, prev, e);
    let t = tau(level);
    let raw = if m > 0.0 && g / m > 0.0 { s * n / (g / m).powf(1.0 / 3.0 - t / 2.0) } else { 1.0 };
    (raw.round() as usize).clamp(1, c.n() - 1)
}

#[derive(Clone, Debug)]
pub struct DescentOptions {
    pub budget: u64,
    pub batch: usize,
    /// Largest coefficient-degree slack tried before raising `k` or the target.
    pub max_z: usize,
    pub modulus: Option<u64>,
    pub seed: u64,
    /// Verify every witness in the Jacobian.
    pub verify: bool,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions { budget: 200_000, batch: 1024, max_z: 3, modulus: None, seed: 0, verify: true }
    }
}

#[derive(Clone, Debug)]
pub struct DescentTree {
    pub root: Place,
    /// Expanded nodes in breadth-first order.
    pub nodes: Vec<DescentNode>,
    /// Factor-base places reached, with the place that produced them.
    pub leaves: Vec<Place>,
    pub depth: usize,
    pub candidates: u64,
}

/// Expand one place with the escalation policy: raise `z`, then `k`, then the target.
pub fn expand(
    c: &CurveModel,
    fb: &FactorBase,
    q: &Place,
    level: u32,
    opts: &DescentOptions,
    stats: &mut u64,
) -> Result<DescentNode> {
    let deg = q.degree();
    let mut target = next_target(deg, fb.mu());
    let k0 = planned_k(c, level);
    loop {
        for k in k0..c.n() {
            for z in 0..=opts.max_z {
                let step = StepOptions {
                    k,
                    z,
                    budget: opts.budget,
                    batch: opts.batch,
                    modulus: opts.modulus,
                    seed: opts.seed ^ ((level as u64) << 32),
                };
                let (node, st) = descend_step(c, q, target, &step)?;
                *stats += st.candidates;
                if let Some(node) = node {
                    return Ok(node);
                }
            }
        }
        if target + 1 >= deg {
            return Err(Error::phase("descent", format!("no smooth witness for {q} within budget")));
        }
        target += 1;
    }
}

/// Descend `q0` until every place reached lies in the factor base.
pub fn full_descent(c: &CurveModel, fb: &FactorBase, q0: &Place, opts: &DescentOptions) -> Result<DescentTree> {
    if q0.is_infinite() {
        return Err(Error::Domain("cannot descend the infinite place".into()));
    }
    let jac = Jacobian::new(c);
    let mut tree = DescentTree { root: q0.clone(), nodes: Vec::new(), leaves: Vec::new(), depth: 0, candidates: 0 };
    let mut queue = VecDeque::from([(q0.clone(), 1u32)]);
    let mut done: HashSet<Place> = HashSet::new();
    while let Some((p, level)) = queue.pop_front() {
        if !done.insert(p.clone()) {
            continue;
        }
        if fb.index_of(&p).is_some() {
            tree.leaves.push(p);
            continue;
        }
        if matches!(&p, Place::Affine { u, .. } if is_ramified(c, u)) {
            return Err(Error::Domain(format!("place {p} lies over the discriminant")));
        }
        let node = expand(c, fb, &p, level, opts, &mut tree.candidates)?;
        if opts.verify && !jac.verify_divisor(&node.witness)? {
            return Err(Error::Internal(format!("descent witness for {p} does not verify")));
        }
        if node.children.iter().any(|(ch, _)| ch.degree() >= p.degree()) {
            return Err(Error::Internal("descent child not smaller than its parent".into()));
        }
        tree.depth = tree.depth.max(level as usize);
        for (ch, _) in &node.children {
            queue.push_back((ch.clone(), level + 1));
        }
        tree.nodes.push(node);
    }
    Ok(tree)
}

impl DescentTree {
    /// The root as a combination of factor-base places modulo principal
    /// divisors, coefficients modulo `n`. `None` when a multiplicity is not
    /// invertible modulo `n`.
    pub fn telescope(&self, fb: &FactorBase, n: u64) -> Option<Vec<(usize, u64)>> {
        let by_place: HashMap<&Place, &DescentNode> = self.nodes.iter().map(|nd| (&nd.place, nd)).collect();
        let mut memo = HashMap::new();
        telescope_place(&self.root, fb, n, &by_place, &mut memo)
    }
}

fn telescope_place(
    p: &Place,
    fb: &FactorBase,
    n: u64,
    by_place: &HashMap<&Place, &DescentNode>,
    memo: &mut HashMap<Place, Vec<(usize, u64)>>,
) -> Option<Vec<(usize, u64)>> {
    if let Some(i) = fb.index_of(p) {
        return Some(vec![(i, 1 % n)]);
    }
    if let Some(v) = memo.get(p) {
        return Some(v.clone());
    }
    let node = by_place.get(p)?;
    // m·Q ≡ −Σ e_j·P_j over the rest of the witness
    let minv = inv_mod(node.multiplicity as u64 % n, n)?;
    let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
    for (pl, &e) in node.witness.support() {
        if pl == p {
            continue;
        }
        let coeff = mul_mod((-(e as i128)).rem_euclid(n as i128) as u64, minv, n);
        for (i, x) in telescope_place(pl, fb, n, by_place, memo)? {
            let slot = acc.entry(i).or_insert(0);
            *slot = add_mod(*slot, mul_mod(coeff, x, n), n);
        }
    }
    let v: Vec<(usize, u64)> = acc.into_iter().filter(|&(_, x)| x != 0).collect();
    memo.insert(p.clone(), v.clone());
    Some(v)
}

/// Effective divisor of an ideal all of whose prime factors are unramified
/// degree-one-over-`K` places, one per norm factor; `None` otherwise.
pub fn ideal_support(jac: &Jacobian, a: &Ideal) -> Option<Vec<(Place, i64)>> {
    let c = jac.curve();
    let ring = c.ring();
    let norm = a.rows().iter().enumerate().fold(ring.one(), |acc, (j, r)| ring.mul(&acc, &r[j]));
    let mut out = Vec::new();
    for (p, e) in ring.factor(&norm) {
        if is_ramified(c, &p) {
            return None;
        }
        let (k, fy) = fiber(c, &p);
        let ky = PolyRing::new(k.clone());
        let roots = ky.roots(&fy);
        let mut hit = None;
        for v in roots {
            let vanishes = a.rows().iter().all(|r| c.bi().subst_y_mod(r, &v, &p).is_zero());
            if vanishes {
                if hit.is_some() {
                    return None;
                }
                hit = Some(v);
            }
        }
        let v = hit?;
        out.push((Place::affine(p.clone(), v), e as i64));
    }
    let mut d = Divisor::new();
    for (pl, e) in &out {
        d.add_place(pl.clone(), *e);
    }
    // an inert prime above the same norm factor would go unnoticed otherwise
    match jac.ideal_from_divisor(&d) {
        Ok(b) if &b == a => Some(out),
        _ => None,
    }
}

/// `r·D + Σ s_i·[P_i − deg P_i·P∞]` rewritten as `Σ e_j·[Q_j − deg Q_j·P∞]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Randomized {
    pub r: u64,
    /// `(factor-base index, exponent)`
    pub shift: Vec<(usize, i64)>,
    pub places: Vec<(Place, i64)>,
}

/// Find `r` coprime to `n` and a factor-base shift making the class split into
/// unramified places of degree at most `g`. With `plain_first` the first
/// attempt is `r = 1` with no shift.
pub fn randomize_target(
    jac: &Jacobian,
    fb: &FactorBase,
    d: &Ideal,
    n: u64,
    tries: usize,
    plain_first: bool,
    rng: &mut dyn RngCore,
) -> Result<Randomized> {
    let c = jac.curve();
    let g = c.genus();
    let affine: Vec<usize> = (1..fb.len()).collect();
    for attempt in 0..tries {
        let (r, shift) = if attempt == 0 && plain_first {
            (1u64, Vec::new())
        } else {
            let r = loop {
                let r = rng.gen_range(1..n.max(2));
                if gcd(r, n) == 1 {
                    break r;
                }
            };
            let mut shift = Vec::new();
            if !affine.is_empty() {
                for _ in 0..rng.gen_range(0..=2usize) {
                    let i = affine[rng.gen_range(0..affine.len())];
                    shift.push((i, rng.gen_range(1..=3i64)));
                }
            }
            (r, shift)
        };
        let mut cls = jac.scalar(d, r as i128)?;
        for &(i, e) in &shift {
            cls = jac.add(&cls, &jac.scalar(&jac.place_class(fb.place(i))?, e as i128)?)?;
        }
        if let Some(places) = ideal_support(jac, &cls) {
            if places.iter().all(|(p, _)| p.degree() <= g) {
                let mut shift = shift;
                shift.sort_unstable();
                return Ok(Randomized { r, shift, places });
            }
        }
    }
    Err(Error::phase("descent", format!("no randomization split into places within {tries} tries")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::curve::{jacobian_order, samples, validate_cab};
    use crate::places::{build_factor_base, places_above};
    use rand_chacha::ChaCha8Rng;

    fn place_of_degree(c: &CurveModel, deg: usize, seed: u64) -> Place {
        let r = c.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..c.q())).collect();
            coeffs.push(1);
            let u = r.from_u64s(&coeffs);
            if r.is_irreducible(&u) {
                if let Some(p) = places_above(c, &u).and_then(|ps| ps.into_iter().next()) {
                    return p;
                }
            }
        }
    }

    #[test]
    fn lattice_basis_and_degree_sum() {
        let f = FieldSpec::prime(5).unwrap();
        let c = validate_cab(&[(0, 3, 1), (4, 0, 1), (1, 0, 1)], &f).unwrap();
        let r = c.ring();
        let q = Place::affine(r.from_u64s(&[1, 0, 1]), r.x());
        let lat = build_lattice(&c, &q, 2).unwrap();
        assert_eq!(lat.basis[1], vec![r.from_u64s(&[0, 4]), r.one(), r.zero()]);
        assert_eq!(lat.basis[2], vec![r.constant(1), r.zero(), r.one()]);
        let w = Weights::cab(3, 4, 3);
        let degs: usize = lat.reduced.iter().map(|row| row[w.pivot(row).unwrap().1].deg() as usize).sum();
        assert_eq!(degs, 2);
    }

    #[test]
    fn every_lattice_vector_vanishes_at_q() {
        let c = samples::c31_g3();
        let q = place_of_degree(&c, 5, 0);
        let lat = build_lattice(&c, &q, 2).unwrap();
        let slots = lat.slots(c.n(), lat.weights[2] + 3);
        let Place::Affine { u, v } = &q else { unreachable!() };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let coeffs: Vec<(usize, u64)> = (0..slots.len()).map(|s| (s, rng.gen_range(0..31))).collect();
            let phi = lat.combine(&c, &slots, &coeffs);
            assert!(c.bi().subst_y_mod(&phi, v, u).is_zero());
        }
    }

    #[test]
    fn targets_decrease() {
        assert_eq!(next_target(3, 2), 2);
        assert_eq!(next_target(16, 2), 6);
        assert_eq!(next_target(6, 2), 4);
        assert_eq!(next_target(2, 1), 1);
    }

    #[test]
    fn cubic_place_descends_and_telescopes() {
        let c = samples::c31_g3();
        let fb = build_factor_base(&c, 2);
        let n = jacobian_order(&c).unwrap().jacobian_order;
        let jac = Jacobian::new(&c);
        for skip in [0, 7] {
            let q = place_of_degree(&c, 3, skip);
            let tree = full_descent(&c, &fb, &q, &DescentOptions { modulus: Some(n), ..Default::default() }).unwrap();
            assert!(!tree.nodes.is_empty());
            assert!(tree.leaves.iter().all(|p| fb.index_of(p).is_some()));
            let combo = tree.telescope(&fb, n).unwrap();
            let mut acc = jac.identity();
            for (i, x) in combo {
                acc = jac.add(&acc, &jac.scalar(&jac.place_class(fb.place(i)).unwrap(), x as i128).unwrap()).unwrap();
            }
            assert_eq!(acc, jac.place_class(&q).unwrap());
        }
    }

    #[test]
    fn randomization_round_trip() {
        let c = samples::c31_g3();
        let fb = build_factor_base(&c, 1);
        let n = jacobian_order(&c).unwrap().jacobian_order;
        let jac = Jacobian::new(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let d = jac.random_class(&mut rng).unwrap();
            let rz = randomize_target(&jac, &fb, &d, n, 200, true, &mut rng).unwrap();
            assert_eq!(gcd(rz.r, n), 1);
            let mut lhs = jac.scalar(&d, rz.r as i128).unwrap();
            for &(i, e) in &rz.shift {
                lhs = jac.add(&lhs, &jac.scalar(&jac.place_class(fb.place(i)).unwrap(), e as i128).unwrap()).unwrap();
            }
            let mut rhs = Divisor::new();
            for (p, e) in &rz.places {
                assert!(p.degree() <= c.genus());
                rhs.add_place(p.clone(), *e);
            }
            assert_eq!(lhs, jac.class_of_divisor(&rhs).unwrap());
        }
    }
}
