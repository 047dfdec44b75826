//! C_ab curve models `Y^n + X^d + f(X, Y)`: validation, point counting and
//! the Jacobian order from the zeta function.

use rayon::prelude::*;

use crate::algebra::{BiPoly, BiRing, Field, FieldSpec, Poly, PolyRing, ResidueField};
use crate::arith::gcd;
use crate::error::{Error, Result};

/// Desk-scale guard on the size of the field enumerated by `count_points`.
pub const MAX_COUNT_FIELD: u64 = 100_000_000;

#[derive(Clone, Debug)]
pub struct CurveModel {
    spec: FieldSpec,
    bi: BiRing<FieldSpec>,
    f: BiPoly<u64>,
    n: usize,
    d: usize,
    genus: usize,
    disc: Poly<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    pub point_counts: Vec<u64>,
    /// Coefficients of `L(T)` from `T^0` to `T^{2g}`.
    pub l_poly: Vec<i128>,
    pub jacobian_order: u64,
}

impl CurveModel {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn bi(&self) -> &BiRing<FieldSpec> {
        &self.bi
    }
    pub fn ring(&self) -> &PolyRing<FieldSpec> {
        self.bi.ring()
    }
    /// The defining polynomial, monic in `Y`.
    pub fn equation(&self) -> &BiPoly<u64> {
        &self.f
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn kappa(&self) -> f64 {
        (self.n * self.d) as f64 / self.genus as f64
    }
    pub fn q(&self) -> u64 {
        self.spec.q()
    }
    /// `Res_Y(F, F_Y)`; places above its roots are ramified or singular.
    pub fn discriminant(&self) -> &Poly<u64> {
        &self.disc
    }
    /// `w(X^i Y^j) = n·i + d·j`, the pole order at infinity.
    pub fn weight(&self, i: usize, j: usize) -> usize {
        self.n * i + self.d * j
    }
    /// Weighted degree of a nonzero bivariate polynomial.
    pub fn weighted_degree(&self, phi: &BiPoly<u64>) -> Option<usize> {
        phi.iter()
            .enumerate()
            .filter_map(|(j, c)| c.degree().map(|i| self.weight(i, j)))
            .max()
    }

    pub fn terms(&self) -> Vec<(usize, usize, u64)> {
        self.bi.terms(&self.f)
    }
}

/// Check the C_ab conditions and build the model. The `Y^n` coefficient is
/// normalized to 1.
pub fn validate_cab(terms: &[(usize, usize, u64)], spec: &FieldSpec) -> Result<CurveModel> {
    let bi = BiRing::new(spec.clone());
    let ring = bi.ring();
    let f = bi.from_terms(terms);
    if f.is_empty() {
        return Err(Error::InvalidCurve("zero polynomial".into()));
    }
    let n = f.len() - 1;
    let lead = &f[n];
    if lead.degree() != Some(0) {
        return Err(Error::InvalidCurve(format!(
            "Y^{n} coefficient must be a nonzero constant"
        )));
    }
    let f = bi.normalize(f.iter().map(|c| ring.scale(c, &spec.inv(&lead.coeffs()[0]).unwrap())).collect());
    let d = f[0].degree().unwrap_or(0);
    if n < 2 || d < 2 {
        return Err(Error::InvalidCurve(format!("need n >= 2 and d >= 2, got n={n} d={d}")));
    }
    if gcd(n as u64, d as u64) != 1 {
        return Err(Error::InvalidCurve(format!("gcd(n, d) = gcd({n}, {d}) != 1")));
    }
    for (i, j, _) in bi.terms(&f) {
        let w = n * i + d * j;
        let corner = (i, j) == (0, n) || (i, j) == (d, 0);
        if w > n * d || (w == n * d && !corner) {
            return Err(Error::InvalidCurve(format!(
                "monomial X^{i} Y^{j} has weighted degree {w} exceeding n*d = {}",
                n * d
            )));
        }
    }
    let fy = bi.derivative_y(&f);
    if fy.is_empty() {
        return Err(Error::InvalidCurve("F is inseparable in Y".into()));
    }
    let disc = bi.resultant_y(&f, &fy)?;
    if disc.is_zero() {
        return Err(Error::InvalidCurve("F is not squarefree in Y".into()));
    }
    if let Some(point) = find_singularity(&bi, &f, &fy, &disc)? {
        return Err(Error::InvalidCurve(format!("affine singular point {point}")));
    }
    let genus = (n - 1) * (d - 1) / 2;
    Ok(CurveModel { spec: spec.clone(), bi, f, n, d, genus, disc })
}

/// Exact search for common zeros of `F`, `F_X`, `F_Y` over the algebraic closure.
fn find_singularity(
    bi: &BiRing<FieldSpec>,
    f: &BiPoly<u64>,
    fy: &BiPoly<u64>,
    disc: &Poly<u64>,
) -> Result<Option<String>> {
    let ring = bi.ring();
    let fx = bi.derivative_x(f);
    let h = if fx.is_empty() { disc.clone() } else { ring.gcd(disc, &bi.resultant_y(f, &fx)?) };
    if h.deg() <= 0 {
        return Ok(None);
    }
    for (p, _) in ring.factor(&h) {
        let k = ResidueField::new(ring.field().clone(), p.clone());
        let ky = PolyRing::new(k.clone());
        let mut g = ky.gcd(&bi.reduce_mod(f, &k), &bi.reduce_mod(fy, &k));
        if !fx.is_empty() {
            g = ky.gcd(&g, &bi.reduce_mod(&fx, &k));
        }
        if g.deg() > 0 {
            let desc = if p.degree() == Some(1) && g.degree() == Some(1) {
                let x = ring.field().neg(&p.coeffs()[0]);
                let y = ky.field().neg(&g.coeffs()[0]);
                format!("(x, y) = ({x}, {})", y.coeffs().first().copied().unwrap_or(0))
            } else {
                format!("over X-place {:?} with Y-factor {:?}", p.coeffs(), g.coeffs())
            };
            return Ok(Some(desc));
        }
    }
    Ok(None)
}

fn count_affine<G: Field>(field: &G, f: &BiPoly<G::Elem>) -> u64 {
    let bi = BiRing::new(field.clone());
    let size = field.size_u64().expect("small field");
    (0..size)
        .into_par_iter()
        .map(|idx| {
            let x = field.element(idx);
            let fx = bi.eval_x(f, &x);
            bi.ring().count_roots(&fx) as u64
        })
        .sum()
}

/// Number of degree-1 places over `F_{q^i}`: affine points plus the one
/// rational place at infinity.
pub fn count_points(c: &CurveModel, i: u32) -> Result<u64> {
    if i == 0 {
        return Err(Error::Domain("extension degree must be >= 1".into()));
    }
    let q = c.q();
    let size = q
        .checked_pow(i)
        .filter(|&s| s <= MAX_COUNT_FIELD)
        .ok_or_else(|| Error::Resource(format!("q^i = {q}^{i} exceeds {MAX_COUNT_FIELD}")))?;
    let spec = c.spec();
    let affine = if i == 1 {
        count_affine(spec, c.equation())
    } else if spec.k() == 1 {
        let base = PolyRing::new(spec.clone());
        let m = base
            .monic_of_degree(i as usize)
            .find(|u| base.is_irreducible(u))
            .expect("irreducibles exist in every degree");
        let ext = FieldSpec::extension(spec.p(), m.coeffs().to_vec())?;
        debug_assert_eq!(ext.q(), size);
        count_affine(&ext, c.equation())
    } else {
        let base = PolyRing::new(spec.clone());
        let m = base
            .monic_of_degree(i as usize)
            .find(|u| base.is_irreducible(u))
            .expect("irreducibles exist in every degree");
        let k = ResidueField::new(spec.clone(), m);
        let lifted: BiPoly<Poly<u64>> = c
            .equation()
            .iter()
            .map(|cj| PolyRing::new(k.clone()).from_coeffs(cj.coeffs().iter().map(|e| k.embed(e)).collect()))
            .collect();
        count_affine(&k, &lifted)
    };
    Ok(affine + 1)
}

/// Reconstruct `L(T)` from `N_1..N_g` (Newton identities plus the functional equation).
pub fn l_poly_from_counts(q: u64, g: usize, counts: &[u64]) -> Result<Vec<i128>> {
    if counts.len() < g {
        return Err(Error::Domain(format!("need {g} point counts, got {}", counts.len())));
    }
    let q = q as i128;
    let s: Vec<i128> = (1..=g).map(|i| q.pow(i as u32) + 1 - counts[i - 1] as i128).collect();
    let mut c = vec![0i128; 2 * g + 1];
    c[0] = 1;
    for k in 1..=g {
        let sum: i128 = (1..=k).map(|i| s[i - 1] * c[k - i]).sum();
        if sum % k as i128 != 0 {
            return Err(Error::Internal(format!(
                "Newton identity not integral at k={k}: point counts are inconsistent"
            )));
        }
        c[k] = -sum / k as i128;
    }
    for k in 0..g {
        c[2 * g - k] = q.pow((g - k) as u32) * c[k];
    }
    Ok(c)
}

/// Power sums `s_i = Σ α_j^i` for `i = 1..=count` from the L-polynomial.
pub fn power_sums(l_poly: &[i128], count: usize) -> Vec<i128> {
    let deg = l_poly.len() - 1;
    let c = |k: usize| if k <= deg { l_poly[k] } else { 0 };
    let mut s = Vec::with_capacity(count);
    for k in 1..=count {
        // s_k = −k·c_k − Σ_{i<k} s_i c_{k−i}
        let mut v = -(k as i128) * c(k);
        for i in 1..k {
            v -= s[i - 1] * c(k - i);
        }
        s.push(v);
    }
    s
}

/// `#Jac(F_{q^r})` from the L-polynomial over `F_q`.
pub fn jacobian_order_ext(l_poly: &[i128], r: usize) -> i128 {
    let g2 = l_poly.len() - 1;
    let s = power_sums(l_poly, g2 * r);
    // L_r has power sums s_{r·i}
    let mut c = vec![0i128; g2 + 1];
    c[0] = 1;
    for k in 1..=g2 {
        let sum: i128 = (1..=k).map(|i| s[r * i - 1] * c[k - i]).sum();
        c[k] = -sum / k as i128;
    }
    c.iter().sum()
}

/// Point counts for `i = 1..=g` and the resulting zeta data.
pub fn jacobian_order(c: &CurveModel) -> Result<ZetaData> {
    let g = c.genus();
    let counts = (1..=g as u32).map(|i| count_points(c, i)).collect::<Result<Vec<_>>>()?;
    let q = c.q();
    for (i, &n) in counts.iter().enumerate() {
        let qi = (q as f64).powi(i as i32 + 1);
        if (n as f64 - qi - 1.0).abs() > 2.0 * g as f64 * qi.sqrt() + 1e-6 {
            return Err(Error::Internal(format!("N_{} = {n} violates the Weil bound", i + 1)));
        }
    }
    let l_poly = l_poly_from_counts(q, g, &counts)?;
    let order: i128 = l_poly.iter().sum();
    let sq = (q as f64).sqrt();
    let (lo, hi) = ((sq - 1.0).powi(2 * g as i32), (sq + 1.0).powi(2 * g as i32));
    if order <= 0 || (order as f64) < lo - 1e-6 || (order as f64) > hi + 1e-6 {
        return Err(Error::Internal(format!("L(1) = {order} outside the Weil interval")));
    }
    Ok(ZetaData { point_counts: counts, l_poly, jacobian_order: order as u64 })
}

/// Small curves used by tests, examples and the CLI.
pub mod samples {
    use super::*;

    /// `Y^3 + X^4 + 1` over `F_31`, genus 3.
    pub fn c31_g3() -> CurveModel {
        validate_cab(&[(0, 3, 1), (4, 0, 1), (0, 0, 1)], &FieldSpec::prime(31).unwrap()).unwrap()
    }

    /// `Y^2 + X^5 + X + 1` over `F_5`, genus 2.
    pub fn c5_g2() -> CurveModel {
        validate_cab(&[(0, 2, 1), (5, 0, 1), (1, 0, 1), (0, 0, 1)], &FieldSpec::prime(5).unwrap())
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::{c31_g3 as curve1, c5_g2 as curve2};
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(curve1().genus(), 3);
        assert_eq!(curve2().genus(), 2);
        assert!((curve1().kappa() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejections() {
        let f5 = FieldSpec::prime(5).unwrap();
        let e = validate_cab(&[(0, 2, 1), (4, 0, 1)], &f5).unwrap_err();
        assert!(e.to_string().contains("gcd"));
        let e = validate_cab(&[(0, 2, 1), (5, 0, 1), (3, 1, 1)], &f5).unwrap_err();
        assert!(e.to_string().contains("X^3 Y^1"));
        // Y^2 = X^5 + X^2 is singular at the origin
        let e = validate_cab(&[(0, 2, 1), (5, 0, 4), (2, 0, 4)], &f5).unwrap_err();
        assert!(e.to_string().contains("singular"), "{e}");
    }

    #[test]
    fn counts_match_exhaustive_scan() {
        let c = curve2();
        let mut affine = 0;
        for x in 0..5u64 {
            for y in 0..5u64 {
                if (y * y + x.pow(5) + x + 1) % 5 == 0 {
                    affine += 1;
                }
            }
        }
        assert_eq!(count_points(&c, 1).unwrap(), affine + 1);
    }

    #[test]
    fn zeta_consistency() {
        for c in [curve1(), curve2()] {
            let z = jacobian_order(&c).unwrap();
            let g = c.genus();
            assert_eq!(z.l_poly.len(), 2 * g + 1);
            assert_eq!(z.l_poly[2 * g], (c.q() as i128).pow(g as u32));
            let n2 = jacobian_order_ext(&z.l_poly, 2);
            assert_eq!(n2 % z.jacobian_order as i128, 0);
        }
        // N_{g+1} predicted by L agrees with a direct count
        let c = curve2();
        let z = jacobian_order(&c).unwrap();
        let s = power_sums(&z.l_poly, 4);
        for i in 3..=4u32 {
            let predicted = 5i128.pow(i) + 1 - s[i as usize - 1];
            assert_eq!(predicted, count_points(&c, i).unwrap() as i128);
        }
    }

    #[test]
    fn genus_zero_reconstruction() {
        assert_eq!(l_poly_from_counts(7, 0, &[]).unwrap(), vec![1]);
    }

    #[test]
    fn too_large_extension() {
        assert!(matches!(count_points(&curve1(), 6), Err(Error::Resource(_))));
    }
}
