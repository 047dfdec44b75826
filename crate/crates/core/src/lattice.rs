//! Row reduction of polynomial matrices over `F_q[X]` to weak Popov form
//! (Mulders–Storjohann) under a weighted degree `scale·deg(x_t) + shift_t`.
//!
//! Shared by the ideal reduction in the Jacobian oracle and the descent lattice.

use crate::algebra::{Field, FieldSpec, Poly, PolyRing};

pub type Row = Vec<Poly<u64>>;

/// Column weights: an entry `x_t` contributes `scale·deg(x_t) + shift[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    pub scale: usize,
    pub shift: Vec<usize>,
}

impl Weights {
    /// Weights of `Σ x_t Y^t` on a C_ab curve: `n·deg + d·t`.
    pub fn cab(n: usize, d: usize, cols: usize) -> Self {
        Weights { scale: n, shift: (0..cols).map(|t| d * t).collect() }
    }

    pub fn uniform(cols: usize) -> Self {
        Weights { scale: 1, shift: vec![0; cols] }
    }

    /// `(weight, pivot)` of a row: maximal entry weight, ties broken towards
    /// the rightmost column. `None` for the zero row.
    pub fn pivot(&self, row: &[Poly<u64>]) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (t, x) in row.iter().enumerate() {
            if let Some(dx) = x.degree() {
                let w = self.scale * dx + self.shift[t];
                if best.is_none_or(|(bw, _)| w >= bw) {
                    best = Some((w, t));
                }
            }
        }
        best
    }
}

/// Reduce `rows` in place to weak Popov form; zero rows are dropped.
pub fn weak_popov(ring: &PolyRing<FieldSpec>, rows: &mut Vec<Row>, w: &Weights) {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    loop {
        let piv: Vec<(usize, usize)> = rows.iter().map(|r| w.pivot(r).expect("nonzero")).collect();
        let mut clash = None;
        'search: for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if piv[i].1 == piv[j].1 {
                    clash = Some(if piv[i].0 >= piv[j].0 { (i, j) } else { (j, i) });
                    break 'search;
                }
            }
        }
        let Some((a, b)) = clash else { break };
        let t = piv[a].1;
        let (ea, eb) = (&rows[a][t], &rows[b][t]);
        let shift = ea.degree().unwrap() - eb.degree().unwrap();
        let c = ring.field().div(ea.lc().unwrap(), eb.lc().unwrap()).expect("nonzero");
        let factor = ring.monomial(c, shift);
        let sub: Row = rows[b].iter().map(|x| ring.mul(x, &factor)).collect();
        for (x, y) in rows[a].iter_mut().zip(&sub) {
            *x = ring.sub(x, y);
        }
        if rows[a].iter().all(|x| x.is_zero()) {
            rows.swap_remove(a);
        }
    }
}

/// Weak Popov form sorted by increasing weight; the first row has minimal
/// weight among all nonzero module elements.
pub fn reduced_basis(ring: &PolyRing<FieldSpec>, rows: &[Row], w: &Weights) -> Vec<Row> {
    let mut out = rows.to_vec();
    weak_popov(ring, &mut out, w);
    out.sort_by_key(|r| w.pivot(r));
    out
}

/// Degrees of the pivot entries of a weak Popov basis.
pub fn pivot_degrees(rows: &[Row], w: &Weights) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            let (_, t) = w.pivot(r).expect("nonzero row");
            r[t].degree().unwrap()
        })
        .collect()
}
