//! Line-oriented text formats. Every file starts with `# curve-dlp schema=1`.
//!
//! - polynomial: coefficients low to high, comma separated (`0` for zero);
//! - bivariate: its `Y`-coefficients, `;` separated;
//! - place: `inf` or `<u>/<v>`;
//! - divisor: space-separated `<e>*<place>` terms (`0` for the zero divisor);
//! - class: `identity`, or reduced ideal rows as bivariates joined by `&`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{BiPoly, FieldSpec, Poly};
use crate::curve::{samples, validate_cab, CurveModel};
use crate::descent::DescentTree;
use crate::error::{Error, Result};
use crate::jacobian::{Ideal, Jacobian};
use crate::linalg::SparseMatrix;
use crate::places::{Divisor, FactorBase, Place};
use crate::relations::Relation;

pub const SCHEMA: u32 = 1;

pub fn header(kind: &str) -> String {
    format!("# curve-dlp schema={SCHEMA} kind={kind}\n")
}

fn perr(what: &str, text: &str) -> Error {
    Error::Parse(format!("bad {what}: '{text}'"))
}

pub fn poly_to_text(p: &Poly<u64>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_poly(c: &CurveModel, text: &str) -> Result<Poly<u64>> {
    let coeffs = text
        .trim()
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| perr("polynomial", text)))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.iter().any(|&x| x >= c.q()) {
        return Err(Error::Parse(format!("coefficient outside F_{} in '{text}'", c.q())));
    }
    Ok(c.ring().from_coeffs(coeffs))
}

pub fn bi_to_text(a: &BiPoly<u64>) -> String {
    if a.is_empty() {
        return "0".into();
    }
    a.iter().map(poly_to_text).collect::<Vec<_>>().join(";")
}

pub fn parse_bi(c: &CurveModel, text: &str) -> Result<BiPoly<u64>> {
    let parts = text.trim().split(';').map(|s| parse_poly(c, s)).collect::<Result<Vec<_>>>()?;
    Ok(c.bi().normalize(parts))
}

pub fn place_to_text(p: &Place) -> String {
    match p {
        Place::Infinity => "inf".into(),
        Place::Affine { u, v } => format!("{}/{}", poly_to_text(u), poly_to_text(v)),
    }
}

pub fn parse_place(c: &CurveModel, text: &str) -> Result<Place> {
    let text = text.trim();
    if text == "inf" {
        return Ok(Place::Infinity);
    }
    let (u, v) = text.split_once('/').ok_or_else(|| perr("place", text))?;
    let p = Place::affine(parse_poly(c, u)?, parse_poly(c, v)?);
    let Place::Affine { u, .. } = &p else { unreachable!() };
    if u.degree().is_none_or(|d| d == 0) || u.coeffs().last() != Some(&1) || !c.ring().is_irreducible(u) {
        return Err(Error::Parse(format!("place '{text}' needs a monic irreducible u")));
    }
    if !p.lies_on(c) {
        return Err(Error::Parse(format!("place '{text}' is not on the curve")));
    }
    Ok(p)
}

pub fn divisor_to_text(d: &Divisor) -> String {
    if d.is_zero() {
        return "0".into();
    }
    d.support().iter().map(|(p, e)| format!("{e}*{}", place_to_text(p))).collect::<Vec<_>>().join(" ")
}

pub fn parse_divisor(c: &CurveModel, text: &str) -> Result<Divisor> {
    let mut d = Divisor::new();
    for term in text.split_whitespace().filter(|t| *t != "0") {
        let (e, p) = term.split_once('*').ok_or_else(|| perr("divisor term", term))?;
        let e: i64 = e.parse().map_err(|_| perr("divisor exponent", term))?;
        d.add_place(parse_place(c, p)?, e);
    }
    Ok(d)
}

pub fn class_to_text(jac: &Jacobian, a: &Ideal) -> String {
    if a.is_unit() {
        return "identity".into();
    }
    let bi = jac.curve().bi();
    a.rows().iter().map(|r| bi_to_text(&bi.normalize(r.clone()))).collect::<Vec<_>>().join("&")
}

/// A class: `identity`, ideal rows joined by `&`, or `div:<divisor>`.
pub fn parse_class(jac: &Jacobian, text: &str) -> Result<Ideal> {
    let c = jac.curve();
    let text = text.trim();
    if text == "identity" {
        return Ok(jac.identity());
    }
    if let Some(d) = text.strip_prefix("div:") {
        return jac.class_of_divisor(&parse_divisor(c, d)?);
    }
    let gens = text.split('&').map(|s| parse_bi(c, s)).collect::<Result<Vec<_>>>()?;
    jac.reduce(&jac.ideal_from_generators(&gens)?)
}

/// Key/value lines (`key=value`, `#` comments); repeated keys keep every value.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, Vec<String>>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected key=value", no + 1)))?;
        out.entry(k.trim().to_string()).or_default().push(v.trim().to_string());
    }
    Ok(out)
}

pub fn check_header(text: &str) -> Result<()> {
    let first = text.lines().next().unwrap_or("");
    let Some(rest) = first.strip_prefix("# curve-dlp schema=") else {
        return Err(Error::Parse("missing '# curve-dlp schema=' header".into()));
    };
    let v: u32 = rest.split_whitespace().next().and_then(|s| s.parse().ok()).ok_or_else(|| perr("header", first))?;
    if v != SCHEMA {
        return Err(Error::Parse(format!("schema {v} is not supported (expected {SCHEMA})")));
    }
    Ok(())
}

/// `field=p=31` and `equation=i,j,c;…` (terms of `F(X, Y)`), or `builtin=<name>`.
pub fn curve_to_text(c: &CurveModel) -> String {
    let terms: Vec<String> = c.terms().iter().map(|(i, j, a)| format!("{i},{j},{a}")).collect();
    format!("{}field={}\nequation={}\n", header("curve"), c.spec().encode(), terms.join(";"))
}

pub fn builtin_curve(name: &str) -> Result<CurveModel> {
    match name {
        "c31_g3" => Ok(samples::c31_g3()),
        "c5_g2" => Ok(samples::c5_g2()),
        _ => Err(Error::Config(format!("unknown builtin curve '{name}' (known: c31_g3, c5_g2)"))),
    }
}

pub fn curve_from_kv(kv: &BTreeMap<String, Vec<String>>) -> Result<CurveModel> {
    let get = |k: &str| kv.get(k).and_then(|v| v.last()).map(String::as_str);
    if let Some(name) = get("builtin") {
        return builtin_curve(name);
    }
    let field = get("field").ok_or_else(|| Error::Config("curve needs 'field' or 'builtin'".into()))?;
    let eq = get("equation").ok_or_else(|| Error::Config("curve needs 'equation'".into()))?;
    let spec = FieldSpec::parse(field)?;
    let terms = eq
        .split(';')
        .map(|t| {
            let v: Vec<u64> = t.split(',').map(|s| s.trim().parse().map_err(|_| perr("term", t))).collect::<Result<_>>()?;
            match v[..] {
                [i, j, a] => Ok((i as usize, j as usize, a)),
                _ => Err(perr("term", t)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    validate_cab(&terms, &spec)
}

pub fn parse_curve(text: &str) -> Result<CurveModel> {
    check_header(text)?;
    curve_from_kv(&parse_kv(text)?)
}

pub fn factor_base_to_text(fb: &FactorBase) -> String {
    let mut s = header("factor-base");
    let _ = writeln!(s, "mu={} size={}", fb.mu(), fb.len());
    for (i, p) in fb.places().iter().enumerate() {
        let _ = writeln!(s, "{i} {}", place_to_text(p));
    }
    s
}

pub fn parse_factor_base(c: &CurveModel, text: &str) -> Result<FactorBase> {
    check_header(text)?;
    let mut lines = text.lines().skip(1);
    let meta = lines.next().ok_or_else(|| Error::Parse("factor base without 'mu=' line".into()))?;
    let mu = meta
        .split_whitespace()
        .find_map(|t| t.strip_prefix("mu="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| perr("factor-base header", meta))?;
    let mut places = Vec::new();
    for (k, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let (i, p) = line.trim().split_once(' ').ok_or_else(|| perr("factor-base line", line))?;
        if i.parse::<usize>().ok() != Some(k) {
            return Err(perr("factor-base index", line));
        }
        places.push(parse_place(c, p)?);
    }
    Ok(FactorBase::from_places(mu, places))
}

fn entries_to_text(e: &[(usize, i64)]) -> String {
    e.iter().map(|(i, x)| format!("{i}:{x}")).collect::<Vec<_>>().join(",")
}

pub fn relations_to_text(rels: &[Relation]) -> String {
    let mut s = header("relations");
    let _ = writeln!(s, "count={}", rels.len());
    for r in rels {
        let _ = writeln!(s, "phi={}|{}", bi_to_text(&r.phi), entries_to_text(&r.entries));
    }
    s
}

pub fn parse_relations(c: &CurveModel, text: &str) -> Result<Vec<Relation>> {
    check_header(text)?;
    let mut out = Vec::new();
    for line in text.lines().skip(1) {
        let Some(body) = line.trim().strip_prefix("phi=") else {
            continue;
        };
        let (phi, ents) = body.split_once('|').ok_or_else(|| perr("relation", line))?;
        let entries = ents
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|t| {
                let (i, x) = t.split_once(':').ok_or_else(|| perr("relation entry", t))?;
                Ok((i.parse().map_err(|_| perr("relation entry", t))?, x.parse().map_err(|_| perr("relation entry", t))?))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Relation { entries, phi: parse_bi(c, phi)? });
    }
    Ok(out)
}

pub fn matrix_to_text(m: &SparseMatrix) -> String {
    let mut s = header("matrix");
    let _ = writeln!(s, "rows={} cols={} mod={}", m.nrows(), m.ncols(), m.modulus());
    for r in m.rows() {
        let _ = writeln!(s, "{}", r.iter().map(|(j, x)| format!("{j}:{x}")).collect::<Vec<_>>().join(" "));
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<SparseMatrix> {
    check_header(text)?;
    let mut lines = text.lines().skip(1);
    let meta = lines.next().ok_or_else(|| Error::Parse("matrix without size line".into()))?;
    let field = |key: &str| -> Result<u64> {
        meta.split_whitespace()
            .find_map(|t| t.strip_prefix(key))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| perr("matrix header", meta))
    };
    let (nrows, ncols, modulus) = (field("rows=")? as usize, field("cols=")? as usize, field("mod=")?);
    let rows = lines
        .take(nrows)
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    let (j, x) = t.split_once(':').ok_or_else(|| perr("matrix entry", t))?;
                    let j: usize = j.parse().map_err(|_| perr("matrix entry", t))?;
                    if j >= ncols {
                        return Err(perr("matrix column", t));
                    }
                    Ok((j, x.parse().map_err(|_| perr("matrix entry", t))?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != nrows {
        return Err(Error::Parse(format!("matrix declares {nrows} rows but has {}", rows.len())));
    }
    if modulus < 2 {
        return Err(Error::Parse("matrix modulus must be at least 2".into()));
    }
    Ok(SparseMatrix::new(ncols, rows, modulus))
}

pub fn descent_to_text(tree: &DescentTree) -> String {
    let mut s = header("descent");
    let _ = writeln!(s, "root={} depth={} nodes={} candidates={}", place_to_text(&tree.root), tree.depth, tree.nodes.len(), tree.candidates);
    for n in &tree.nodes {
        let children: Vec<String> = n.children.iter().map(|(p, e)| format!("{e}*{}", place_to_text(p))).collect();
        let _ = writeln!(
            s,
            "Q={} m={} phi={} children={}",
            place_to_text(&n.place),
            n.multiplicity,
            bi_to_text(&n.phi),
            children.join(" ")
        );
    }
    for p in &tree.leaves {
        let _ = writeln!(s, "leaf={}", place_to_text(p));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_and_places_round_trip() {
        let c = samples::c31_g3();
        let c2 = parse_curve(&curve_to_text(&c)).unwrap();
        assert_eq!(c2.terms(), c.terms());
        let fb = crate::places::build_factor_base(&c, 1);
        let fb2 = parse_factor_base(&c, &factor_base_to_text(&fb)).unwrap();
        assert_eq!(fb.places(), fb2.places());
    }

    #[test]
    fn class_round_trip() {
        let c = samples::c5_g2();
        let jac = Jacobian::new(&c);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        for _ in 0..10 {
            let a = jac.random_class(&mut rng).unwrap();
            assert_eq!(parse_class(&jac, &class_to_text(&jac, &a)).unwrap(), a);
        }
        assert!(parse_class(&jac, "identity").unwrap().is_unit());
    }

    #[test]
    fn matrix_round_trip_and_bad_input() {
        let m = SparseMatrix::from_signed(4, &[vec![(0, 1), (3, -2)], vec![], vec![(2, 5)]], 12);
        assert_eq!(parse_matrix(&matrix_to_text(&m)).unwrap(), m);
        assert!(parse_matrix("rows=1 cols=1 mod=5\n0:1\n").is_err());
        assert!(parse_matrix(&format!("{}rows=1 cols=1 mod=5\n3:1\n", header("matrix"))).is_err());
    }
}
