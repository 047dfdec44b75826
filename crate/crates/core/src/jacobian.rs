//! Oracle arithmetic in the Jacobian of a C_ab curve through integral ideals
//! of `O = F_q[X, Y]/(F)`, kept in Hermite normal form over `F_q[X]`.
//!
//! The class of an ideal `I` is `[I − deg(I)·P∞]`. Reduction replaces `I`
//! by `f·I^{-1}` for `f ∈ I` of minimal pole order at infinity; doing this
//! twice yields the unique effective divisor of minimal degree in the class.

use std::collections::{HashMap, HashSet};

use rand::{Rng, RngCore};

use crate::algebra::{BiPoly, Field, FieldSpec, Poly, PolyRing, ResidueField};
use crate::arith::{element_order, factorize};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::lattice::{reduced_basis, Row, Weights};
use crate::places::{Divisor, FactorBase, Place};

/// Integral ideal as an `n×n` lower-triangular `F_q[X]`-basis in power basis
/// `1, Y, …, Y^{n−1}`: row `j` has support in columns `0..=j`, a monic
/// diagonal entry, and entries left of the diagonal reduced modulo the
/// diagonal entry of their column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    rows: Vec<Row>,
}

impl Ideal {
    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Degree of the norm: `dim_{F_q} O/I`.
    pub fn norm_degree(&self) -> usize {
        self.rows.iter().enumerate().map(|(j, r)| r[j].degree().unwrap()).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.norm_degree() == 0
    }

    /// Generator of `I ∩ F_q[X]`.
    pub fn min_poly(&self) -> &Poly<u64> {
        &self.rows[0][0]
    }
}

/// Prime ideal `(u, h(Y))` with `h` an irreducible factor of `F mod u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub u: Poly<u64>,
    pub h: BiPoly<u64>,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct Jacobian {
    curve: CurveModel,
    weights: Weights,
}

impl Jacobian {
    pub fn new(curve: &CurveModel) -> Self {
        let weights = Weights::cab(curve.n(), curve.d(), curve.n());
        Jacobian { curve: curve.clone(), weights }
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    fn ring(&self) -> &PolyRing<FieldSpec> {
        self.curve.ring()
    }

    fn n(&self) -> usize {
        self.curve.n()
    }

    fn to_row(&self, e: &BiPoly<u64>) -> Row {
        let mut r = e.clone();
        r.resize(self.n(), self.ring().zero());
        r
    }

    fn to_elem(&self, r: &Row) -> BiPoly<u64> {
        self.curve.bi().normalize(r.clone())
    }

    /// Product in `O`.
    pub fn mul_elems(&self, a: &BiPoly<u64>, b: &BiPoly<u64>) -> BiPoly<u64> {
        let bi = self.curve.bi();
        bi.rem_monic_y(&bi.mul(a, b), self.curve.equation())
    }

    /// Hermite normal form of the `F_q[X]`-module spanned by `gens`.
    pub fn hnf(&self, gens: Vec<Row>) -> Result<Ideal> {
        let ring = self.ring();
        let n = self.n();
        let mut pool: Vec<Row> = gens.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let mut rows: Vec<Option<Row>> = vec![None; n];
        for j in (0..n).rev() {
            let (mut with, without): (Vec<Row>, Vec<Row>) = pool.into_iter().partition(|r| !r[j].is_zero());
            pool = without;
            if with.is_empty() {
                return Err(Error::Internal("module is not of full rank".into()));
            }
            while with.len() > 1 {
                with.sort_by_key(|r| r[j].degree());
                let piv = with[0].clone();
                let mut next = vec![piv.clone()];
                for mut r in with.into_iter().skip(1) {
                    let (qt, _) = ring.divrem(&r[j], &piv[j])?;
                    for (x, y) in r.iter_mut().zip(&piv) {
                        *x = ring.sub(x, &ring.mul(&qt, y));
                    }
                    if r[j].is_zero() {
                        if r.iter().any(|x| !x.is_zero()) {
                            pool.push(r);
                        }
                    } else {
                        next.push(r);
                    }
                }
                with = next;
            }
            let mut p = with.pop().unwrap();
            let inv = ring.field().inv(p[j].lc().unwrap())?;
            for x in p.iter_mut() {
                *x = ring.scale(x, &inv);
            }
            rows[j] = Some(p);
        }
        let mut rows: Vec<Row> = rows.into_iter().map(|r| r.unwrap()).collect();
        for j in 0..n {
            for i in (0..j).rev() {
                let (qt, _) = ring.divrem(&rows[j][i], &rows[i][i])?;
                if qt.is_zero() {
                    continue;
                }
                let sub: Row = rows[i].iter().map(|y| ring.mul(&qt, y)).collect();
                for (x, y) in rows[j].iter_mut().zip(&sub) {
                    *x = ring.sub(x, y);
                }
            }
        }
        Ok(Ideal { rows })
    }

    /// The ideal generated (as an `O`-ideal) by the given elements.
    pub fn ideal_from_generators(&self, gens: &[BiPoly<u64>]) -> Result<Ideal> {
        let y = self.curve.bi().from_terms(&[(0, 1, 1)]);
        let mut rows = Vec::new();
        for g in gens {
            let mut cur = self.curve.bi().rem_monic_y(g, self.curve.equation());
            for _ in 0..self.n() {
                rows.push(self.to_row(&cur));
                cur = self.mul_elems(&cur, &y);
            }
        }
        self.hnf(rows)
    }

    pub fn unit(&self) -> Ideal {
        let ring = self.ring();
        let n = self.n();
        let rows = (0..n)
            .map(|j| (0..n).map(|t| if t == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        Ideal { rows }
    }

    /// `(u, Y − v)`.
    pub fn place_ideal(&self, p: &Place) -> Result<Ideal> {
        match p {
            Place::Infinity => Err(Error::Domain("the infinite place has no affine ideal".into())),
            Place::Affine { u, v } => {
                let ring = self.ring();
                let gens = vec![vec![u.clone()], vec![ring.neg(v), ring.one()]];
                self.ideal_from_generators(&gens)
            }
        }
    }

    pub fn prime_ideal(&self, p: &PrimeIdeal) -> Result<Ideal> {
        self.ideal_from_generators(&[vec![p.u.clone()], p.h.clone()])
    }

    pub fn mul(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        if a.is_unit() {
            return Ok(b.clone());
        }
        if b.is_unit() {
            return Ok(a.clone());
        }
        let mut gens = Vec::with_capacity(self.n() * self.n());
        for ra in &a.rows {
            let ea = self.to_elem(ra);
            for rb in &b.rows {
                gens.push(self.to_row(&self.mul_elems(&ea, &self.to_elem(rb))));
            }
        }
        self.hnf(gens)
    }

    pub fn pow(&self, a: &Ideal, mut e: u64) -> Result<Ideal> {
        let mut acc = self.unit();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `∏ P^{e_P}` over an effective affine divisor.
    pub fn ideal_from_divisor(&self, d: &Divisor) -> Result<Ideal> {
        let mut acc = self.unit();
        for (p, &e) in d.support() {
            if p.is_infinite() {
                continue;
            }
            if e < 0 {
                return Err(Error::Domain("divisor must be effective".into()));
            }
            acc = self.mul(&acc, &self.pow(&self.place_ideal(p)?, e as u64)?)?;
        }
        Ok(acc)
    }

    /// Nonzero element of minimal weighted degree.
    pub fn min_element(&self, a: &Ideal) -> BiPoly<u64> {
        let red = reduced_basis(self.ring(), &a.rows, &self.weights);
        self.to_elem(&red[0])
    }

    /// `{y ∈ O : y·I ⊆ m·O}` where `m` generates `I ∩ F_q[X]`; this is `m·I^{-1}`.
    fn colon(&self, a: &Ideal) -> Result<Ideal> {
        let ring = self.ring();
        let field = ring.field();
        let n = self.n();
        let m = a.min_poly().clone();
        let dm = m.degree().unwrap();
        if dm == 0 {
            return Ok(self.unit());
        }
        let gens: Vec<BiPoly<u64>> = a.rows.iter().map(|r| self.to_elem(r)).collect();
        // images of the F_q-basis X^s Y^t of O/mO
        let mut images = Vec::with_capacity(n * dm);
        let mut basis = Vec::with_capacity(n * dm);
        for t in 0..n {
            for s in 0..dm {
                let e = self.curve.bi().from_terms(&[(s, t, 1)]);
                let mut img = Vec::with_capacity(n * n * dm);
                for g in &gens {
                    let prod = self.to_row(&self.mul_elems(&e, g));
                    for c in prod {
                        let r = ring.rem(&c, &m)?;
                        for k in 0..dm {
                            img.push(r.coeff(k).copied().unwrap_or(0));
                        }
                    }
                }
                images.push(img);
                basis.push(e);
            }
        }
        let kernel = left_kernel(field, images);
        let mut rows: Vec<Row> = kernel
            .into_iter()
            .map(|c| {
                let mut y: BiPoly<u64> = Vec::new();
                for (ci, e) in c.iter().zip(&basis) {
                    if *ci != 0 {
                        let term = e.iter().map(|x| ring.scale(x, ci)).collect();
                        y = self.curve.bi().add(&y, &term);
                    }
                }
                self.to_row(&y)
            })
            .collect();
        for t in 0..n {
            let mut r = vec![ring.zero(); n];
            r[t] = m.clone();
            rows.push(r);
        }
        self.hnf(rows)
    }

    /// `f·I^{-1}` for `f ∈ I`.
    pub fn principal_over(&self, f: &BiPoly<u64>, a: &Ideal) -> Result<Ideal> {
        let ring = self.ring();
        let l = self.colon(a)?;
        let m = a.min_poly();
        let mut gens = Vec::with_capacity(self.n());
        for r in &l.rows {
            let prod = self.to_row(&self.mul_elems(f, &self.to_elem(r)));
            gens.push(prod.iter().map(|c| ring.div_exact(c, m)).collect::<Result<Row>>()?);
        }
        self.hnf(gens)
    }

    fn reduce_step(&self, a: &Ideal) -> Result<Ideal> {
        if a.is_unit() {
            return Ok(a.clone());
        }
        let f = self.min_element(a);
        self.principal_over(&f, a)
    }

    /// Canonical representative of the class of `a`, of norm degree at most `g`.
    pub fn reduce(&self, a: &Ideal) -> Result<Ideal> {
        let b = self.reduce_step(a)?;
        self.reduce_step(&b)
    }

    pub fn identity(&self) -> Ideal {
        self.unit()
    }

    /// Group law on reduced representatives.
    pub fn add(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.reduce(&self.mul(a, b)?)
    }

    /// Inverse class: one reduction step already lands on the canonical representative.
    pub fn neg(&self, a: &Ideal) -> Result<Ideal> {
        self.reduce_step(a)
    }

    pub fn scalar(&self, a: &Ideal, k: i128) -> Result<Ideal> {
        let base = if k < 0 { self.neg(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut cur = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &cur)?;
            }
            e >>= 1;
            if e > 0 {
                cur = self.add(&cur, &cur)?;
            }
        }
        Ok(acc)
    }

    /// `[P − deg(P)·P∞]`; trivial for `P∞` itself.
    pub fn place_class(&self, p: &Place) -> Result<Ideal> {
        if p.is_infinite() {
            return Ok(self.identity());
        }
        self.reduce(&self.place_ideal(p)?)
    }

    /// Class of `D_aff − deg(D_aff)·P∞` for an arbitrary divisor (the infinite
    /// component is ignored).
    pub fn class_of_divisor(&self, d: &Divisor) -> Result<Ideal> {
        let mut acc = self.identity();
        for (p, &e) in d.support() {
            if p.is_infinite() {
                continue;
            }
            acc = self.add(&acc, &self.scalar(&self.place_class(p)?, e as i128)?)?;
        }
        Ok(acc)
    }

    /// A relation is sound when it has degree zero and its affine part is principal
    /// up to the infinite place.
    pub fn verify_relation(&self, fb: &FactorBase, rel: &[(usize, i64)]) -> Result<bool> {
        if rel.iter().any(|&(i, _)| i >= fb.len()) {
            return Ok(false);
        }
        let d = fb.to_divisor(rel);
        self.verify_divisor(&d)
    }

    pub fn verify_divisor(&self, d: &Divisor) -> Result<bool> {
        if d.degree() != 0 {
            return Ok(false);
        }
        let (pos, neg) = d.affine_parts();
        let a = self.reduce(&self.ideal_from_divisor(&pos)?)?;
        let b = self.reduce(&self.ideal_from_divisor(&neg)?)?;
        Ok(a == b)
    }

    /// Order of a class, given a multiple `n` of it.
    pub fn order(&self, a: &Ideal, n: u64) -> Result<u64> {
        let mut err = None;
        let ord = element_order(n, |k| match self.scalar(a, k as i128) {
            Ok(x) => x.is_unit(),
            Err(e) => {
                err = Some(e);
                false
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(ord),
        }
    }

    /// `x` with `x·base = target`, or `None` if `target ∉ ⟨base⟩`.
    pub fn bsgs_dlog(&self, base: &Ideal, target: &Ideal, n: u64) -> Result<Option<u64>> {
        if n > 100_000_000 {
            return Err(Error::Resource(format!("group order {n} exceeds the oracle guard")));
        }
        let ord = self.order(base, n)?;
        let m = (ord as f64).sqrt().ceil() as u64;
        let mut table: HashMap<Ideal, u64> = HashMap::with_capacity(m as usize);
        let mut cur = self.identity();
        for j in 0..m {
            table.entry(cur.clone()).or_insert(j);
            cur = self.add(&cur, base)?;
        }
        let giant = self.neg(&cur)?;
        let mut g = target.clone();
        for i in 0..=m {
            if let Some(&j) = table.get(&g) {
                return Ok(Some((i * m + j) % ord));
            }
            g = self.add(&g, &giant)?;
        }
        Ok(None)
    }

    /// Prime ideals of degree `<= max_deg`, in the order of their `u`.
    pub fn prime_ideals(&self, max_deg: usize) -> Vec<PrimeIdeal> {
        let ring = self.ring();
        let mut out = Vec::new();
        for u in ring.irreducibles_up_to(max_deg) {
            let du = u.degree().unwrap();
            let k = ResidueField::new(ring.field().clone(), u.clone());
            let ky = PolyRing::new(k.clone());
            let fy = self.curve.bi().reduce_mod(self.curve.equation(), &k);
            for (h, _) in ky.factor(&fy) {
                let deg = du * h.degree().unwrap();
                if deg > max_deg {
                    continue;
                }
                let hb: BiPoly<u64> = h.coeffs().to_vec();
                out.push(PrimeIdeal { u: u.clone(), h: self.curve.bi().normalize(hb), degree: deg });
            }
        }
        out
    }

    /// Every class, from effective affine divisors of degree at most `g`.
    pub fn enumerate_classes(&self) -> Result<Vec<Ideal>> {
        let g = self.curve.genus();
        let primes = self.prime_ideals(g);
        let ideals: Vec<Ideal> = primes.iter().map(|p| self.prime_ideal(p)).collect::<Result<_>>()?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, usize, Ideal)> = vec![(0, 0, self.unit())];
        while let Some((start, deg, acc)) = stack.pop() {
            let r = self.reduce(&acc)?;
            if seen.insert(r.clone()) {
                out.push(r);
            }
            for i in start..primes.len() {
                if deg + primes[i].degree <= g {
                    stack.push((i, deg + primes[i].degree, self.mul(&acc, &ideals[i])?));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Invariant factors `d_1 | d_2 | …` of the full class group by counting
    /// `ℓ^j`-torsion.
    pub fn exhaustive_structure(&self) -> Result<(u64, Vec<u64>)> {
        let classes = self.enumerate_classes()?;
        let total = classes.len() as u64;
        let index: HashMap<Ideal, usize> = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let unit = index[&self.identity()];
        let mut factors: Vec<u64> = Vec::new();
        for (l, e) in factorize(total) {
            let map: Vec<usize> = classes
                .iter()
                .map(|c| Ok(index[&self.scalar(c, l as i128)?]))
                .collect::<Result<_>>()?;
            // cur[x] = ℓ^j · x
            let mut cur: Vec<usize> = (0..classes.len()).collect();
            let mut prev_log = 0u32;
            let mut ranks = Vec::new();
            for _ in 0..e {
                for x in cur.iter_mut() {
                    *x = map[*x];
                }
                let killed = cur.iter().filter(|&&x| x == unit).count() as u64;
                let log = (killed as f64).ln() / (l as f64).ln();
                let log = log.round() as u32;
                if log == prev_log {
                    break;
                }
                ranks.push(log - prev_log);
                prev_log = log;
            }
            // ranks[j] = #{i : a_i > j}; the i-th largest cyclic ℓ-part is ℓ^{#{j : ranks[j] > i}}
            let r0 = ranks.first().copied().unwrap_or(0) as usize;
            let parts: Vec<u64> =
                (0..r0).map(|i| l.pow(ranks.iter().filter(|&&r| r as usize > i).count() as u32)).collect();
            // parts is decreasing; merge into invariant factors aligned from the top
            if factors.len() < parts.len() {
                let pad = parts.len() - factors.len();
                let mut nf = vec![1u64; pad];
                nf.extend(factors);
                factors = nf;
            }
            let len = factors.len();
            for (i, p) in parts.iter().enumerate() {
                factors[len - 1 - i] *= p;
            }
        }
        Ok((total, factors))
    }

    /// A class obtained from a random effective divisor of degree `g`.
    pub fn random_class(&self, rng: &mut dyn RngCore) -> Result<Ideal> {
        let ring = self.ring();
        let g = self.curve.genus();
        let mut acc = self.unit();
        let mut deg = 0;
        while deg < g {
            let du = rng.gen_range(1..=(g - deg));
            let mut coeffs: Vec<u64> = (0..du).map(|_| ring.field().random(rng)).collect();
            coeffs.push(1);
            let u = ring.from_coeffs(coeffs);
            if !ring.is_irreducible(&u) {
                continue;
            }
            let k = ResidueField::new(ring.field().clone(), u.clone());
            let ky = PolyRing::new(k.clone());
            let fy = self.curve.bi().reduce_mod(self.curve.equation(), &k);
            let roots = ky.roots(&fy);
            if roots.is_empty() {
                continue;
            }
            let v = roots[rng.gen_range(0..roots.len())].clone();
            acc = self.mul(&acc, &self.place_ideal(&Place::affine(u, v))?)?;
            deg += du;
        }
        self.reduce(&acc)
    }
}

/// Basis of `{c : c·A = 0}` over `F_q` by row reduction of `[A | I]`.
fn left_kernel(field: &FieldSpec, a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<u64>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..rows).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][c]).expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        rank += 1;
    }
    m.into_iter().skip(rank).map(|r| r[cols..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{jacobian_order, samples};
    use crate::places::{build_factor_base, decompose_function};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_and_single_place() {
        let c = samples::c31_g3();
        let j = Jacobian::new(&c);
        assert_eq!(j.ideal_from_divisor(&Divisor::new()).unwrap(), j.unit());
        let fb = build_factor_base(&c, 2);
        let p = fb.places().iter().find(|p| p.degree() == 2).unwrap();
        let a = j.place_ideal(p).unwrap();
        assert_eq!(a.norm_degree(), 2);
        assert_eq!(j.mul(&a, &j.unit()).unwrap(), a);
    }

    #[test]
    fn full_fiber_is_principal() {
        let c = samples::c31_g3();
        let j = Jacobian::new(&c);
        let fb = build_factor_base(&c, 1);
        // a split fiber over a degree-1 u
        let mut by_u: HashMap<Poly<u64>, Vec<Place>> = HashMap::new();
        for p in fb.places().iter().skip(1) {
            if let Place::Affine { u, .. } = p {
                by_u.entry(u.clone()).or_default().push(p.clone());
            }
        }
        let (u, ps) = by_u.into_iter().find(|(_, ps)| ps.len() == 3).unwrap();
        let mut d = Divisor::new();
        for p in ps {
            d.add_place(p, 1);
        }
        let a = j.ideal_from_divisor(&d).unwrap();
        assert_eq!(a.norm_degree(), 3);
        let principal = j.ideal_from_generators(&[vec![u]]).unwrap();
        assert_eq!(a, principal);
        assert!(j.reduce(&a).unwrap().is_unit());
    }

    #[test]
    fn class_group_laws() {
        let c = samples::c5_g2();
        let j = Jacobian::new(&c);
        let n = jacobian_order(&c).unwrap().jacobian_order;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = j.random_class(&mut rng).unwrap();
            let b = j.random_class(&mut rng).unwrap();
            let x = j.random_class(&mut rng).unwrap();
            assert!(a.norm_degree() <= 2);
            assert_eq!(j.reduce(&a).unwrap(), a);
            assert_eq!(j.add(&a, &b).unwrap(), j.add(&b, &a).unwrap());
            let l = j.add(&j.add(&a, &b).unwrap(), &x).unwrap();
            let r = j.add(&a, &j.add(&b, &x).unwrap()).unwrap();
            assert_eq!(l, r);
            assert!(j.add(&a, &j.neg(&a).unwrap()).unwrap().is_unit());
            assert!(j.scalar(&a, n as i128).unwrap().is_unit());
        }
    }

    #[test]
    fn exhaustive_count_matches_zeta() {
        let c = samples::c5_g2();
        let j = Jacobian::new(&c);
        let n = jacobian_order(&c).unwrap().jacobian_order;
        let (total, factors) = j.exhaustive_structure().unwrap();
        assert_eq!(total, n);
        assert_eq!(factors.iter().product::<u64>(), n);
        for w in factors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn relations_from_functions_verify() {
        let c = samples::c31_g3();
        let j = Jacobian::new(&c);
        let phi = c.bi().from_terms(&[(0, 2, 1), (1, 1, 3), (2, 0, 5), (0, 0, 7)]);
        let d = decompose_function(&c, &phi).unwrap();
        assert!(j.verify_divisor(&d).unwrap());
        // perturbing by a rational place breaks the relation
        let fb = build_factor_base(&c, 1);
        let p = fb.place(1);
        let mut bad = d.clone();
        bad.add_place(p.clone(), 1);
        bad.add_place(Place::Infinity, -(p.degree() as i64));
        assert!(!j.verify_divisor(&bad).unwrap());
        assert!(j.verify_divisor(&Divisor::new()).unwrap());
    }

    #[test]
    fn bsgs_round_trip() {
        let c = samples::c5_g2();
        let j = Jacobian::new(&c);
        let n = jacobian_order(&c).unwrap().jacobian_order;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let base = j.random_class(&mut rng).unwrap();
        let ord = j.order(&base, n).unwrap();
        assert_eq!(j.bsgs_dlog(&base, &j.identity(), n).unwrap(), Some(0));
        assert_eq!(j.bsgs_dlog(&base, &base, n).unwrap(), Some(1 % ord));
        for _ in 0..10 {
            let x = rng.gen_range(0..n);
            let t = j.scalar(&base, x as i128).unwrap();
            assert_eq!(j.bsgs_dlog(&base, &t, n).unwrap(), Some(x % ord));
        }
    }
}
