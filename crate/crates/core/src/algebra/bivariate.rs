//! Bivariate polynomials stored as `Poly`-in-`X` coefficients indexed by the
//! power of `Y`, and the `Y`-resultant via the subresultant sequence.

use super::field::{Field, ResidueField};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// `coeffs[j]` is the coefficient of `Y^j`; trailing zero entries are trimmed.
pub type BiPoly<E> = Vec<Poly<E>>;

#[derive(Clone, Debug)]
pub struct BiRing<F: Field> {
    ring: PolyRing<F>,
}

impl<F: Field> BiRing<F> {
    pub fn new(field: F) -> Self {
        BiRing { ring: PolyRing::new(field) }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn normalize(&self, mut a: BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    /// From `(i, j, c)` monomials `c·X^i·Y^j`.
    pub fn from_terms(&self, terms: &[(usize, usize, F::Elem)]) -> BiPoly<F::Elem> {
        let ny = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut out = vec![self.ring.zero(); ny];
        for (i, j, c) in terms {
            let m = self.ring.monomial(c.clone(), *i);
            out[*j] = self.ring.add(&out[*j], &m);
        }
        self.normalize(out)
    }

    /// Nonzero monomials `(i, j, c)` sorted by `(j, i)`.
    pub fn terms(&self, a: &BiPoly<F::Elem>) -> Vec<(usize, usize, F::Elem)> {
        let mut out = Vec::new();
        for (j, cj) in a.iter().enumerate() {
            for (i, c) in cj.coeffs().iter().enumerate() {
                if !self.field().is_zero(c) {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn deg_y(&self, a: &BiPoly<F::Elem>) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn deg_x(&self, a: &BiPoly<F::Elem>) -> Option<usize> {
        a.iter().filter_map(|c| c.degree()).max()
    }

    pub fn add(&self, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        let n = a.len().max(b.len());
        let z = self.ring.zero();
        let out = (0..n)
            .map(|j| self.ring.add(a.get(j).unwrap_or(&z), b.get(j).unwrap_or(&z)))
            .collect();
        self.normalize(out)
    }

    pub fn sub(&self, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        let n = a.len().max(b.len());
        let z = self.ring.zero();
        let out = (0..n)
            .map(|j| self.ring.sub(a.get(j).unwrap_or(&z), b.get(j).unwrap_or(&z)))
            .collect();
        self.normalize(out)
    }

    pub fn mul(&self, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.ring.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(x, y));
            }
        }
        self.normalize(out)
    }

    pub fn scale_x(&self, a: &BiPoly<F::Elem>, c: &Poly<F::Elem>) -> BiPoly<F::Elem> {
        self.normalize(a.iter().map(|x| self.ring.mul(x, c)).collect())
    }

    /// Remainder modulo a polynomial that is monic in `Y`.
    pub fn rem_monic_y(&self, a: &BiPoly<F::Elem>, m: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        let n = m.len() - 1;
        debug_assert!(self.ring.is_one(&m[n]));
        let mut r = a.clone();
        while r.len() > n {
            let top = r.len() - 1;
            let c = r[top].clone();
            if !c.is_zero() {
                for (j, mj) in m.iter().enumerate() {
                    let idx = top - n + j;
                    r[idx] = self.ring.sub(&r[idx], &self.ring.mul(&c, mj));
                }
            }
            r.pop();
            r = self.normalize(r);
        }
        r
    }

    pub fn derivative_y(&self, a: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| self.ring.scale(c, &self.field().from_u64(j as u64)))
            .collect();
        self.normalize(out)
    }

    pub fn derivative_x(&self, a: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        self.normalize(a.iter().map(|c| self.ring.derivative(c)).collect())
    }

    /// gcd of the `X`-coefficients (the `X`-content), monic.
    pub fn content_x(&self, a: &BiPoly<F::Elem>) -> Poly<F::Elem> {
        a.iter().fold(self.ring.zero(), |g, c| self.ring.gcd(&g, c))
    }

    /// `a(X, v(X))`
    pub fn subst_y(&self, a: &BiPoly<F::Elem>, v: &Poly<F::Elem>) -> Poly<F::Elem> {
        a.iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, v), c))
    }

    /// `a(X, v(X)) mod u`
    pub fn subst_y_mod(&self, a: &BiPoly<F::Elem>, v: &Poly<F::Elem>, u: &Poly<F::Elem>) -> Poly<F::Elem> {
        a.iter().rev().fold(self.ring.zero(), |acc, c| {
            let t = self.ring.add(&self.ring.mulmod(&acc, v, u), c);
            self.ring.rem(&t, u).expect("nonzero modulus")
        })
    }

    /// Evaluate at `X = x`, giving a univariate polynomial in `Y`.
    pub fn eval_x(&self, a: &BiPoly<F::Elem>, x: &F::Elem) -> Poly<F::Elem> {
        self.ring.from_coeffs(a.iter().map(|c| self.ring.eval(c, x)).collect())
    }

    /// Reduce the `X`-coefficients into `K = F[X]/(u)`, giving a polynomial in `Y` over `K`.
    pub fn reduce_mod(
        &self,
        a: &BiPoly<F::Elem>,
        k: &ResidueField<F>,
    ) -> Poly<Poly<F::Elem>> {
        let ky = PolyRing::new(k.clone());
        ky.from_coeffs(a.iter().map(|c| k.reduce(c)).collect())
    }

    /// Evaluate at `X = x` for `x` in an extension field given as `F[t]/(m)`.
    pub fn eval_x_ext(
        &self,
        a: &BiPoly<F::Elem>,
        k: &ResidueField<F>,
        x: &Poly<F::Elem>,
    ) -> Poly<Poly<F::Elem>> {
        let ky = PolyRing::new(k.clone());
        let px = PolyRing::new(k.clone());
        ky.from_coeffs(
            a.iter()
                .map(|c| {
                    let lifted = px.from_coeffs(c.coeffs().iter().map(|e| k.embed(e)).collect());
                    px.eval(&lifted, x)
                })
                .collect(),
        )
    }

    /// Pseudo-remainder `lc(b)^(deg a − deg b + 1)·a mod b` over `F[X]`.
    fn prem(&self, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> BiPoly<F::Elem> {
        let db = b.len() - 1;
        let lb = &b[db];
        let mut r = a.clone();
        let mut steps = a.len() - b.len() + 1;
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            for x in r.iter_mut() {
                *x = self.ring.mul(x, lb);
            }
            for (j, bj) in b.iter().enumerate() {
                let idx = top - db + j;
                r[idx] = self.ring.sub(&r[idx], &self.ring.mul(&c, bj));
            }
            r.pop();
            r = self.normalize(r);
            steps -= 1;
        }
        // account for skipped steps when the degree dropped by more than one
        if steps > 0 {
            let f = self.ring.pow(lb, steps as u32);
            r = self.scale_x(&r, &f);
        }
        r
    }

    /// `Res_Y(a, b)` as a polynomial in `X` (subresultant pseudo-remainder sequence).
    pub fn resultant_y(&self, a: &BiPoly<F::Elem>, b: &BiPoly<F::Elem>) -> Result<Poly<F::Elem>> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Domain("resultant of a zero polynomial".into()));
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut s_neg = false;
        if a.len() < b.len() {
            if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
                s_neg = true;
            }
            std::mem::swap(&mut a, &mut b);
        }
        let r = &self.ring;
        if b.len() == 1 {
            let res = r.pow(&b[0], (a.len() - 1) as u32);
            return Ok(if s_neg { r.neg(&res) } else { res });
        }
        let mut g = r.one();
        let mut h = r.one();
        loop {
            let da = a.len() - 1;
            let db = b.len() - 1;
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                s_neg = !s_neg;
            }
            let rem = self.prem(&a, &b);
            a = b;
            let div = r.mul(&g, &r.pow(&h, delta));
            b = self.normalize(rem.iter().map(|c| r.div_exact(c, &div)).collect::<Result<_>>()?);
            g = a.last().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                r.div_exact(&r.pow(&g, delta), &r.pow(&h, delta - 1))?
            };
            if b.len() <= 1 {
                break;
            }
        }
        if b.is_empty() {
            return Ok(r.zero());
        }
        let da = (a.len() - 1) as u32;
        let res = if da == 0 {
            r.one()
        } else {
            r.div_exact(&r.pow(&b[0], da), &r.pow(&h, da - 1))?
        };
        Ok(if s_neg { r.neg(&res) } else { res })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    fn bi(p: u64) -> BiRing<FieldSpec> {
        BiRing::new(FieldSpec::prime(p).unwrap())
    }

    #[test]
    fn resultant_with_linear() {
        let b = bi(31);
        let r = b.ring();
        // F = Y^3 + X^4 + 1, phi = Y - X
        let f = b.from_terms(&[(0, 3, 1), (4, 0, 1), (0, 0, 1)]);
        let phi = b.from_terms(&[(0, 1, 1), (1, 0, 30)]);
        let res = b.resultant_y(&phi, &f).unwrap();
        let expect = r.from_u64s(&[1, 0, 0, 1, 1]);
        assert!(res == expect || res == r.neg(&expect));
        assert_eq!(b.subst_y(&f, &r.x()), expect);
    }

    #[test]
    fn shared_factor_gives_zero() {
        let b = bi(5);
        let common = b.from_terms(&[(0, 1, 1), (2, 0, 1), (0, 0, 3)]);
        let a = b.mul(&common, &b.from_terms(&[(0, 1, 1), (1, 0, 1)]));
        let c = b.mul(&common, &b.from_terms(&[(0, 2, 1), (3, 0, 2)]));
        assert!(b.resultant_y(&a, &c).unwrap().is_zero());
    }

    #[test]
    fn rem_monic() {
        let b = bi(5);
        let f = b.from_terms(&[(0, 2, 1), (5, 0, 1), (1, 0, 1), (0, 0, 1)]);
        let y3 = b.from_terms(&[(0, 3, 1)]);
        let r = b.rem_monic_y(&y3, &f);
        // Y^3 = Y·Y^2 = −Y(X^5+X+1)
        assert_eq!(r, b.from_terms(&[(5, 1, 4), (1, 1, 4), (0, 1, 4)]));
    }
}
