//! Text and JSON serialization: the `GRCODE 1` code file format and the JSON
//! form of function tables.
//!
//! ```text
//! GRCODE 1
//! GR p=2 n=2 ell=1
//! m=2 k=3
//! col: 1|0
//! col: 0|1
//! col: 1|1
//! ```
//!
//! Each entry is `ell` comma-separated coefficients in `[0, p^n)`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::codes::GeneratorMultiset;
use crate::constructions::{canonical_f, DomainMode, Family, FunctionRule, FunctionTable, MonomialPoly};
use crate::error::{Error, Result};
use crate::ring::{Elem, GaloisRing};

pub const GRCODE_MAGIC: &str = "GRCODE 1";

pub fn write_grcode(ring: &GaloisRing, gens: &GeneratorMultiset) -> String {
    let mut s = String::new();
    s.push_str(GRCODE_MAGIC);
    s.push('\n');
    s.push_str(&ring.descriptor());
    s.push('\n');
    s.push_str(&format!("m={} k={}\n", gens.m(), gens.k()));
    for col in gens.columns() {
        let entries: Vec<String> = col.iter().map(|&a| ring.format_elem(a)).collect();
        s.push_str("col: ");
        s.push_str(&entries.join("|"));
        s.push('\n');
    }
    s
}

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

fn parse_entry(ring: &GaloisRing, text: &str, line: usize) -> Result<Elem> {
    let coeffs: Vec<u64> = text
        .split(',')
        .map(|c| c.parse::<u64>().map_err(|_| format_err(line, format!("bad coefficient in {text:?}"))))
        .collect::<Result<_>>()?;
    if coeffs.len() != ring.ell() {
        return Err(format_err(line, format!("entry {text:?} needs {} coefficients", ring.ell())));
    }
    if let Some(c) = coeffs.iter().find(|&&c| c >= ring.modulus()) {
        return Err(format_err(line, format!("coefficient {c} outside [0, {})", ring.modulus())));
    }
    ring.element(&coeffs).map_err(|e| format_err(line, e.to_string()))
}

/// Parses a `GRCODE 1` file; the ring comes from its descriptor line.
pub fn read_grcode(text: &str) -> Result<(Arc<GaloisRing>, GeneratorMultiset)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| lines.next().ok_or_else(|| format_err(0, format!("missing {what}")));
    let (ln, magic) = next("header")?;
    if magic != GRCODE_MAGIC {
        return Err(format_err(ln, format!("expected {GRCODE_MAGIC:?}")));
    }
    let (ln, desc) = next("ring descriptor")?;
    let ring = Arc::new(GaloisRing::from_descriptor(desc).map_err(|e| format_err(ln, e.to_string()))?);
    let (ln, dims) = next("dimensions")?;
    let bad_dims = || format_err(ln, format!("expected `m=<m> k=<k>`, got {dims:?}"));
    let (m, k) = match dims.split(' ').collect::<Vec<_>>()[..] {
        [a, b] => {
            let m = a.strip_prefix("m=").and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad_dims)?;
            let k = b.strip_prefix("k=").and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad_dims)?;
            (m, k)
        }
        _ => return Err(bad_dims()),
    };
    let mut columns = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, line) = next("column")?;
        let body = line.strip_prefix("col: ").ok_or_else(|| format_err(ln, "expected `col: `"))?;
        let col: Vec<Elem> = body.split('|').map(|e| parse_entry(&ring, e, ln)).collect::<Result<_>>()?;
        if col.len() != m {
            return Err(format_err(ln, format!("column has {} entries, expected {m}", col.len())));
        }
        columns.push(col);
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(format_err(ln, "unexpected content after the last column"));
    }
    let gens = GeneratorMultiset::new(m, columns)?;
    Ok((ring, gens))
}

/// `{family, m, ring, params}`; explicit tables list their values in domain order.
pub fn function_to_json(f: &FunctionTable) -> Value {
    let ring = f.ring();
    let mut params = json!({ "domain": f.domain().name() });
    match f.rule() {
        FunctionRule::Poly(poly) => params["poly"] = json!(poly.format(ring)),
        FunctionRule::Explicit(_) => {
            let values: Vec<String> = f.domain_points().iter().map(|x| ring.format_elem(f.eval(x))).collect();
            params["values"] = json!(values);
        }
        FunctionRule::Thm43 | FunctionRule::Thm46 => {}
    }
    json!({
        "family": f.family_name(),
        "m": f.m(),
        "ring": ring.descriptor(),
        "params": params,
    })
}

pub fn function_from_json(value: &Value, budget: &Budget) -> Result<FunctionTable> {
    let bad = |msg: &str| Error::InvalidParameter(format!("function table JSON: {msg}"));
    let ring_desc = value["ring"].as_str().ok_or_else(|| bad("missing ring"))?;
    let ring = Arc::new(GaloisRing::from_descriptor(ring_desc)?);
    let m = value["m"].as_u64().ok_or_else(|| bad("missing m"))? as usize;
    let params = &value["params"];
    let domain = match params["domain"].as_str() {
        Some("all_nonzero") | None => DomainMode::AllNonzero,
        Some("root_words_only") => DomainMode::RootWordsOnly,
        Some(other) => return Err(bad(&format!("unknown domain {other:?}"))),
    };
    match value["family"].as_str().ok_or_else(|| bad("missing family"))? {
        "thm43" => canonical_f(ring, Family::Thm43, m, domain),
        "thm46" => canonical_f(ring, Family::Thm46, m, domain),
        "poly" => {
            let text = params["poly"].as_str().ok_or_else(|| bad("missing params.poly"))?;
            let poly = MonomialPoly::parse(&ring, m, text)?;
            canonical_f(ring, Family::Poly(poly), m, domain)
        }
        "explicit" => {
            let values = params["values"].as_array().ok_or_else(|| bad("missing params.values"))?;
            let values: Vec<Elem> = values
                .iter()
                .map(|v| {
                    let s = v.as_str().ok_or_else(|| bad("values must be element literals"))?;
                    Ok(ring.parse_elem(s)?)
                })
                .collect::<Result<_>>()?;
            FunctionTable::explicit(ring, m, domain, &values, budget)
        }
        other => Err(bad(&format!("unknown family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lambda0;

    #[test]
    fn grcode_round_trip() {
        let ring = GaloisRing::new(2, 2, 2, None).unwrap();
        let gens = lambda0(&ring, 2).unwrap();
        let text = write_grcode(&ring, &gens);
        assert!(text.starts_with("GRCODE 1\nGR p=2 n=2 ell=2 h=1,1,1\nm=2 k=20\ncol: 1,0|0,0\n"));
        let (ring2, gens2) = read_grcode(&text).unwrap();
        assert_eq!(*ring2, ring);
        assert_eq!(gens2, gens);
        assert_eq!(write_grcode(&ring2, &gens2), text);
    }

    #[test]
    fn grcode_errors() {
        let err = |t: &str| read_grcode(t).unwrap_err().to_string();
        assert!(err("GRCODE 2\n").contains("line 1"));
        assert!(err("GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=1\ncol: 1|4\n").contains("outside"));
        assert!(err("GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=2\ncol: 1|0\n").contains("missing column"));
        assert!(err("GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=1\ncol: 1\n").contains("expected 2"));
        assert!(err("GRCODE 1\nGR p=2 n=2 ell=1\nm=2 k=1\ncol: 1|0\ncol: 0|1\n").contains("unexpected"));
    }

    #[test]
    fn function_json_round_trip() {
        let ring = Arc::new(GaloisRing::new(2, 2, 1, None).unwrap());
        let poly = MonomialPoly::parse(&ring, 6, "x1*x2*x3 + 3*x4*x5*x6").unwrap();
        let f = canonical_f(ring.clone(), Family::Poly(poly), 6, DomainMode::RootWordsOnly).unwrap();
        let j = function_to_json(&f);
        assert_eq!(j["params"]["poly"], "x1*x2*x3 + 3*x4*x5*x6");
        let g = function_from_json(&j, &Budget::default()).unwrap();
        assert_eq!(g.rule(), f.rule());
        assert_eq!(g.domain(), DomainMode::RootWordsOnly);

        let values: Vec<Elem> = (0..15).map(|i| ring.from_int(i % 4)).collect();
        let e = FunctionTable::explicit(ring.clone(), 2, DomainMode::AllNonzero, &values, &Budget::default()).unwrap();
        let j = function_to_json(&e);
        assert_eq!(j["family"], "explicit");
        assert_eq!(j["params"]["values"].as_array().unwrap().len(), 15);
        let back = function_from_json(&j, &Budget::default()).unwrap();
        assert_eq!(back.rule(), e.rule());
    }
}
