//! Helpers shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use grmin::codes::{build_code, GeneratorMultiset, LinearCode};
use grmin::constructions::{
    fullweight_basis_nonroot, lemma19_basis, lemma20_basis, lemma25_ortho_basis, lemma26_scaled,
};
use grmin::linalg::{
    all_vectors, dot, is_root_word, mccoy_rank, orthogonal_bruteforce, row_standard_form, scale, span_set, weight,
    RingMatrix, RingVector,
};
use grmin::{Budget, Elem, Error, GaloisRing};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn z(p: u64, n: u32) -> Arc<GaloisRing> {
    Arc::new(GaloisRing::new(p, n, 1, None).unwrap())
}

pub fn gr42() -> Arc<GaloisRing> {
    Arc::new(GaloisRing::new(2, 2, 2, None).unwrap())
}

pub fn elements(ring: &GaloisRing) -> Vec<Elem> {
    ring.elements().collect()
}

pub fn random_vector(ring: &GaloisRing, m: usize, rng: &mut ChaCha8Rng) -> RingVector {
    let elems = elements(ring);
    (0..m).map(|_| elems[rng.gen_range(0..elems.len())]).collect()
}

pub fn random_nonzero(ring: &GaloisRing, m: usize, rng: &mut ChaCha8Rng) -> RingVector {
    loop {
        let v = random_vector(ring, m, rng);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn random_root_word(ring: &GaloisRing, m: usize, rng: &mut ChaCha8Rng) -> RingVector {
    loop {
        let v = random_vector(ring, m, rng);
        if is_root_word(ring, &v) {
            return v;
        }
    }
}

/// A nonzero non-root vector; each coordinate is zero with probability 1/3.
pub fn random_nonroot(ring: &GaloisRing, m: usize, rng: &mut ChaCha8Rng) -> RingVector {
    let elems = elements(ring);
    loop {
        let v: RingVector = (0..m)
            .map(|_| {
                if rng.gen_range(0..3) == 0 {
                    Elem::ZERO
                } else {
                    let r = rng.gen_range(1..ring.n());
                    ring.mul(ring.p_pow(r), elems[rng.gen_range(0..elems.len())])
                }
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A full-rank code of dimension `m` with `k` random nonzero columns.
pub fn random_code(ring: &Arc<GaloisRing>, m: usize, k: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    loop {
        let cols = (0..k).map(|_| random_nonzero(ring, m, rng)).collect();
        if let Ok(code) = build_code(ring.clone(), GeneratorMultiset::new(m, cols).unwrap()) {
            return code;
        }
    }
}

/// Literal definition for `<v>`: every nonzero `c'` in the span with
/// `supp(c') ⊆ supp(c)` is a nonzero multiple of `c`, for every nonzero `c`.
pub fn onedim_minimal_bruteforce(ring: &GaloisRing, v: &[Elem]) -> bool {
    let code: Vec<RingVector> =
        elements(ring).iter().map(|&a| scale(ring, a, v)).collect::<HashSet<_>>().into_iter().collect();
    let nonzero: Vec<&RingVector> = code.iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let covers = |c: &[Elem], d: &[Elem]| c.iter().zip(d).all(|(x, y)| y.is_zero() || !x.is_zero());
    nonzero.iter().all(|c| {
        nonzero
            .iter()
            .filter(|d| covers(c, d))
            .all(|d| elements(ring).iter().any(|&a| !a.is_zero() && scale(ring, a, c) == **d))
    })
}

fn is_basis(ring: &GaloisRing, rows: &RingMatrix) -> bool {
    rows.nrows() == rows.ncols()
        && row_standard_form(ring, rows).size_exponent() == ring.n() as u64 * rows.ncols() as u64
}

/// Cofactor expansion along the first row.
pub fn det(ring: &GaloisRing, rows: &[RingVector]) -> Elem {
    let m = rows.len();
    if m == 1 {
        return rows[0][0];
    }
    let mut acc = Elem::ZERO;
    for j in 0..m {
        let minor: Vec<RingVector> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let term = ring.mul(rows[0][j], det(ring, &minor));
        acc = if j % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
    }
    acc
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Unit entries, full weight, determinant `a^{m-1}(a - m)` and a unit, basis.
pub fn check_lemma19(ring: &GaloisRing, m: usize, a: Elem) -> Check {
    let basis = lemma19_basis(ring, m, Some(a)).map_err(|e| e.to_string())?;
    let rows = basis.rows();
    ensure(rows.iter().flatten().all(|&x| ring.is_unit(x)), || "non-unit entry".into())?;
    let expected = ring.mul(ring.pow(a, m as u64 - 1), ring.sub(a, ring.from_int(m as i64)));
    let d = det(ring, rows);
    ensure(d == expected && ring.is_unit(d), || {
        format!("det {} != {}", ring.format_elem(d), ring.format_elem(expected))
    })?;
    ensure(is_basis(ring, &basis), || "not a basis".into())
}

/// Weights 1..=2, `v . beta_i = 1`, basis.
pub fn check_lemma20(ring: &GaloisRing, v: &[Elem]) -> Check {
    let basis = lemma20_basis(ring, v).map_err(|e| e.to_string())?;
    for b in basis.rows() {
        ensure((1..=2).contains(&weight(b)), || "weight outside 1..=2".into())?;
        ensure(dot(ring, v, b) == ring.one(), || "dot is not 1".into())?;
    }
    ensure(is_basis(ring, &basis), || "not a basis".into())
}

/// `v . beta_i = v_i`, full weight, basis, and rows at zero coordinates carry
/// at least two unit entries. Errors are accepted only where the construction
/// does not apply.
pub fn check_fullweight(ring: &GaloisRing, v: &[Elem]) -> Check {
    let zeros = v.iter().filter(|x| x.is_zero()).count();
    let basis = match fullweight_basis_nonroot(ring, v) {
        Ok(b) => b,
        Err(Error::InvalidParameter(_)) if zeros >= 2 && ring.q() <= 3 => return Ok(()),
        Err(Error::Dimension(_)) if zeros == 1 && v.len() == 2 => return Ok(()),
        Err(e) => return Err(e.to_string()),
    };
    for (i, b) in basis.rows().iter().enumerate() {
        ensure(weight(b) == v.len(), || format!("row {i} is not full weight"))?;
        ensure(dot(ring, v, b) == v[i], || format!("row {i}: dot != v_i"))?;
        if v[i].is_zero() {
            let units = b.iter().filter(|&&x| ring.is_unit(x)).count();
            ensure(units >= 2, || format!("row {i} has {units} unit entries"))?;
        }
    }
    ensure(is_basis(ring, &basis), || "not a basis".into())
}

/// Rows of weight 1..=2 orthogonal to `v` spanning all of `O(v)`; compared
/// against an enumeration of `O(v)` when `exhaustive`.
pub fn check_lemma25(ring: &GaloisRing, v: &[Elem], exhaustive: bool) -> Check {
    let basis = lemma25_ortho_basis(ring, v).map_err(|e| e.to_string())?;
    for b in basis.rows() {
        ensure((1..=2).contains(&weight(b)), || "weight outside 1..=2".into())?;
        ensure(dot(ring, v, b).is_zero(), || "row not orthogonal".into())?;
    }
    let m = v.len() as u64;
    let n = ring.n() as u64;
    ensure(row_standard_form(ring, &basis).size_exponent() == n * (m - 1), || "span smaller than O(v)".into())?;
    if exhaustive {
        let o: HashSet<RingVector> = orthogonal_bruteforce(ring, v, &Budget::default()).unwrap().into_iter().collect();
        ensure(span_set(ring, basis.rows(), v.len()) == o, || "span differs from enumerated O(v)".into())?;
    }
    ensure(mccoy_rank(ring, &basis) == v.len() - 1, || "rows not independent".into())
}

/// Rows of weight 1..=2 in `O(p^{n-r} v)` with `v . beta_i = p^r`.
pub fn check_lemma26(ring: &GaloisRing, v: &[Elem], r: u32) -> Check {
    let rows = lemma26_scaled(ring, v, r).map_err(|e| e.to_string())?;
    let scaled = scale(ring, ring.p_pow(ring.n() - r), v);
    ensure(rows.nrows() == v.len(), || "wrong row count".into())?;
    for b in rows.rows() {
        ensure((1..=2).contains(&weight(b)), || "weight outside 1..=2".into())?;
        ensure(dot(ring, &scaled, b).is_zero(), || "row outside O(p^{n-r} v)".into())?;
        ensure(dot(ring, v, b) == ring.p_pow(r), || "dot is not p^r".into())?;
    }
    Ok(())
}

#[derive(Debug, Default, Clone)]
pub struct LemmaTally {
    pub checked: [usize; 5],
    pub failures: Vec<String>,
}

impl LemmaTally {
    fn record(&mut self, lemma: usize, what: impl FnOnce() -> String, result: Check) {
        self.checked[lemma] += 1;
        if let Err(e) = result {
            self.failures.push(format!("{}: {e}", what()));
        }
    }
}

/// Every valid `a` for lemma 19, every root word for lemmas 20/25/26 and every
/// nonzero non-root vector for the full-weight bases, over `R^m`.
pub fn lemma_sweep_exhaustive(ring: &GaloisRing, m: usize, tally: &mut LemmaTally) {
    if ring.q() > 3 {
        for a in elements(ring) {
            if lemma19_basis(ring, m, Some(a)).is_ok() {
                tally.record(0, || format!("lemma19 a={}", ring.format_elem(a)), check_lemma19(ring, m, a));
            }
        }
    } else {
        tally.record(
            0,
            || "lemma19 q<=3".into(),
            ensure(lemma19_basis(ring, m, None).is_err(), || "accepted q <= 3".into()),
        );
    }
    let show = |v: &[Elem]| grmin::linalg::fmt_vec(ring, v);
    for v in all_vectors(ring, m).skip(1) {
        if is_root_word(ring, &v) {
            tally.record(1, || format!("lemma20 {}", show(&v)), check_lemma20(ring, &v));
            tally.record(3, || format!("lemma25 {}", show(&v)), check_lemma25(ring, &v, true));
            for r in 1..ring.n() {
                tally.record(4, || format!("lemma26 {} r={r}", show(&v)), check_lemma26(ring, &v, r));
            }
        } else {
            tally.record(2, || format!("fullweight {}", show(&v)), check_fullweight(ring, &v));
        }
    }
}

/// `draws` random inputs per construction over `R^m`.
pub fn lemma_sweep_random(ring: &GaloisRing, m: usize, draws: usize, rng: &mut ChaCha8Rng, tally: &mut LemmaTally) {
    let elems = elements(ring);
    let show = |v: &[Elem]| grmin::linalg::fmt_vec(ring, v);
    for _ in 0..draws {
        if ring.q() > 3 {
            let a = loop {
                let a = elems[rng.gen_range(0..elems.len())];
                if lemma19_basis(ring, m, Some(a)).is_ok() {
                    break a;
                }
            };
            tally.record(0, || format!("lemma19 a={}", ring.format_elem(a)), check_lemma19(ring, m, a));
        }
        let v = random_root_word(ring, m, rng);
        tally.record(1, || format!("lemma20 {}", show(&v)), check_lemma20(ring, &v));
        tally.record(3, || format!("lemma25 {}", show(&v)), check_lemma25(ring, &v, false));
        let r = rng.gen_range(1..ring.n());
        tally.record(4, || format!("lemma26 {} r={r}", show(&v)), check_lemma26(ring, &v, r));
        let w = random_nonroot(ring, m, rng);
        tally.record(2, || format!("fullweight {}", show(&w)), check_fullweight(ring, &w));
    }
}
