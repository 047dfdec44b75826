//! Places, divisors and the factor base of a C_ab curve, and the
//! decomposition of `div(φ)` by factoring the norm `Res_Y(φ, F)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{BiPoly, Factorization, Field, Poly, PolyRing, ResidueField};
use crate::curve::CurveModel;

/// A place of degree one over `u`'s residue field: `(u, Y − v)`, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Affine { u: Poly<u64>, v: Poly<u64> },
}

impl Place {
    pub fn affine(u: Poly<u64>, v: Poly<u64>) -> Self {
        Place::Affine { u, v }
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Affine { u, .. } => u.degree().unwrap_or(0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// `F(X, v(X)) ≡ 0 mod u`
    pub fn lies_on(&self, c: &CurveModel) -> bool {
        match self {
            Place::Infinity => true,
            Place::Affine { u, v } => c.bi().subst_y_mod(c.equation(), v, u).is_zero(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "INF"),
            Place::Affine { u, v } => write!(f, "({:?}, Y - {:?})", u.coeffs(), v.coeffs()),
        }
    }
}

/// Formal integer combination of places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_place(p: Place, e: i64) -> Self {
        let mut d = Self::new();
        d.add_place(p, e);
        d
    }

    pub fn add_place(&mut self, p: Place, e: i64) {
        if e == 0 {
            return;
        }
        let entry = self.support.entry(p.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.support.remove(&p);
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, &e) in &other.support {
            out.add_place(p.clone(), e);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let mut out = Divisor::new();
        for (p, &e) in &self.support {
            out.add_place(p.clone(), e * k);
        }
        out
    }

    pub fn support(&self) -> &BTreeMap<Place, i64> {
        &self.support
    }

    pub fn exponent(&self, p: &Place) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.support.iter().map(|(p, e)| p.degree() as i64 * e).sum()
    }

    /// Degree of the affine part.
    pub fn affine_degree(&self) -> i64 {
        self.support
            .iter()
            .filter(|(p, _)| !p.is_infinite())
            .map(|(p, e)| p.degree() as i64 * e)
            .sum()
    }

    /// Split into (positive part, negative part) restricted to affine places.
    pub fn affine_parts(&self) -> (Divisor, Divisor) {
        let mut pos = Divisor::new();
        let mut neg = Divisor::new();
        for (p, &e) in &self.support {
            if p.is_infinite() {
                continue;
            }
            if e > 0 {
                pos.add_place(p.clone(), e);
            } else {
                neg.add_place(p.clone(), -e);
            }
        }
        (pos, neg)
    }
}

#[derive(Clone, Debug)]
pub struct FactorBase {
    mu: usize,
    places: Vec<Place>,
    index: HashMap<Place, usize>,
}

impl FactorBase {
    pub fn from_places(mu: usize, places: Vec<Place>) -> Self {
        let index = places.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        FactorBase { mu, places, index }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }
    pub fn len(&self) -> usize {
        self.places.len()
    }
    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }
    pub fn places(&self) -> &[Place] {
        &self.places
    }
    pub fn place(&self, i: usize) -> &Place {
        &self.places[i]
    }
    pub fn index_of(&self, p: &Place) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Sparse exponent vector of a divisor, if it is supported on the factor base.
    pub fn to_relation(&self, d: &Divisor) -> Option<Vec<(usize, i64)>> {
        let mut out = d
            .support()
            .iter()
            .map(|(p, &e)| self.index_of(p).map(|i| (i, e)))
            .collect::<Option<Vec<_>>>()?;
        out.sort_unstable();
        Some(out)
    }

    pub fn to_divisor(&self, rel: &[(usize, i64)]) -> Divisor {
        let mut d = Divisor::new();
        for &(i, e) in rel {
            d.add_place(self.places[i].clone(), e);
        }
        d
    }
}

/// Residue field `F_q[X]/(u)` and `F mod u` as a polynomial in `Y` over it.
pub fn fiber(c: &CurveModel, u: &Poly<u64>) -> (ResidueField<crate::algebra::FieldSpec>, Poly<Poly<u64>>) {
    let k = ResidueField::new(c.spec().clone(), c.ring().monic(u));
    let fy = c.bi().reduce_mod(c.equation(), &k);
    (k, fy)
}

/// Whether the fiber over `u` meets the ramification/singular locus.
pub fn is_ramified(c: &CurveModel, u: &Poly<u64>) -> bool {
    c.ring().divides(u, c.discriminant())
}

/// Degree-one places above an unramified irreducible `u`; `None` when ramified.
pub fn places_above(c: &CurveModel, u: &Poly<u64>) -> Option<Vec<Place>> {
    if is_ramified(c, u) {
        return None;
    }
    let (k, fy) = fiber(c, u);
    let ky = PolyRing::new(k);
    Some(ky.roots(&fy).into_iter().map(|v| Place::affine(u.clone(), v)).collect())
}

/// Infinite place at index 0, then `(u, v)` by degree, `u`, `v`. Fibers meeting
/// the discriminant are left out.
pub fn build_factor_base(c: &CurveModel, mu: usize) -> FactorBase {
    assert!(mu >= 1, "smoothness bound must be positive");
    let us = c.ring().irreducibles_up_to(mu);
    let per_u: Vec<Vec<Place>> = us.par_iter().map(|u| places_above(c, u).unwrap_or_default()).collect();
    let mut places = vec![Place::Infinity];
    places.extend(per_u.into_iter().flatten());
    FactorBase::from_places(mu, places)
}

/// Reasons a candidate function is discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reject {
    /// φ has a nonconstant factor in `F_q[X]`.
    Content,
    /// `deg_Y φ >= n`, or φ is zero.
    Shape,
    /// Some norm factor lies under the discriminant.
    Ramified,
    /// More than one place above a norm factor divides φ.
    Ambiguous,
}

/// `Res_Y(φ, F)`.
pub fn norm(c: &CurveModel, phi: &BiPoly<u64>) -> Poly<u64> {
    c.bi().resultant_y(phi, c.equation()).expect("nonzero inputs")
}

fn check_shape(c: &CurveModel, phi: &BiPoly<u64>) -> Result<(), Reject> {
    if phi.is_empty() || phi.len() > c.n() {
        return Err(Reject::Shape);
    }
    if c.bi().content_x(phi).deg() > 0 {
        return Err(Reject::Content);
    }
    Ok(())
}

/// Assign each norm factor to its unique place.
pub fn decompose_with_factors(
    c: &CurveModel,
    phi: &BiPoly<u64>,
    factors: &Factorization<u64>,
) -> Result<Divisor, Reject> {
    let mut div = Divisor::new();
    for (p, m) in factors {
        if is_ramified(c, p) {
            return Err(Reject::Ramified);
        }
        let (k, fy) = fiber(c, p);
        let ky = PolyRing::new(k.clone());
        let phibar = c.bi().reduce_mod(phi, &k);
        let g = ky.gcd(&fy, &phibar);
        if g.degree() != Some(1) {
            return Err(Reject::Ambiguous);
        }
        let v = k.neg(&g.coeffs()[0]);
        div.add_place(Place::affine(p.clone(), v), *m as i64);
    }
    let w = c.weighted_degree(phi).expect("nonzero");
    div.add_place(Place::Infinity, -(w as i64));
    Ok(div)
}

/// `div(φ)` including the infinite place, or the reason φ is discarded.
pub fn decompose_function(c: &CurveModel, phi: &BiPoly<u64>) -> Result<Divisor, Reject> {
    check_shape(c, phi)?;
    let nm = norm(c, phi);
    let factors = c.ring().factor(&nm);
    decompose_with_factors(c, phi, &factors)
}

/// Outcome of a smoothness test on one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    NotSmooth,
    Rejected(Reject),
    Smooth(Divisor),
}

/// Factor the norm with early abort at `mu`, then decompose.
pub fn decompose_if_smooth(c: &CurveModel, phi: &BiPoly<u64>, mu: usize) -> Smoothness {
    if let Err(r) = check_shape(c, phi) {
        return Smoothness::Rejected(r);
    }
    let nm = norm(c, phi);
    match smoothness_test(c, &nm, mu) {
        None => Smoothness::NotSmooth,
        Some(f) => match decompose_with_factors(c, phi, &f) {
            Ok(d) => Smoothness::Smooth(d),
            Err(r) => Smoothness::Rejected(r),
        },
    }
}

/// Full factorization of `norm` if it is `mu`-smooth.
pub fn smoothness_test(c: &CurveModel, norm: &Poly<u64>, mu: usize) -> Option<Factorization<u64>> {
    c.ring().smooth_factor(norm, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::samples;

    #[test]
    fn factor_base_degree_one_is_affine_points() {
        let c = samples::c31_g3();
        let fb = build_factor_base(&c, 1);
        assert_eq!(fb.place(0), &Place::Infinity);
        let mut pts = 0;
        for x in 0..31u64 {
            for y in 0..31u64 {
                if (y.pow(3) + x.pow(4) + 1) % 31 == 0 {
                    pts += 1;
                }
            }
        }
        assert_eq!(fb.len() - 1, pts);
        for (i, p) in fb.places().iter().enumerate() {
            assert_eq!(fb.index_of(p), Some(i));
            assert!(p.lies_on(&c));
        }
    }

    #[test]
    fn factor_base_size_near_estimate() {
        for c in [samples::c31_g3(), samples::c5_g2()] {
            for mu in 1..=2 {
                let fb = build_factor_base(&c, mu);
                let q = c.q() as f64;
                let est: f64 = (1..=mu).map(|m| q.powi(m as i32) / m as f64).sum();
                let got = (fb.len() - 1) as f64;
                assert!(got > est / 3.0 && got < est * 3.0, "got {got} est {est}");
            }
        }
    }

    #[test]
    fn content_is_rejected() {
        let c = samples::c31_g3();
        let phi = vec![c.ring().from_u64s(&[1, 1])];
        assert_eq!(decompose_function(&c, &phi), Err(Reject::Content));
    }

    #[test]
    fn linear_function_degree() {
        let c = samples::c31_g3();
        let phi = c.bi().from_terms(&[(0, 1, 1), (1, 0, 30)]);
        let d = decompose_function(&c, &phi).unwrap();
        assert_eq!(d.affine_degree(), 4);
        assert_eq!(d.degree(), 0);
        for p in d.support().keys() {
            assert!(p.lies_on(&c));
        }
    }

    #[test]
    fn smoothness_example() {
        let c = samples::c5_g2();
        let r = c.ring();
        let nm = r.mul(&r.from_u64s(&[1, 1]), &r.from_u64s(&[2, 0, 1]));
        assert!(smoothness_test(&c, &nm, 1).is_none());
        assert_eq!(smoothness_test(&c, &nm, 2).unwrap().len(), 2);
    }
}
