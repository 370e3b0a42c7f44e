//! Linear codes `C = { v G : v in R^m }` whose generator matrix `G` has the
//! multiset columns `alpha_1..alpha_k`, together with two independent ways of
//! deciding minimality: the literal support-containment definition, and the
//! structural test comparing the span of the columns orthogonal to `v` with
//! the full orthogonal module `O(v)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{
    self, all_vectors, dot, fmt_vec, is_root_word, min_valuation, module_size, root_part, standard_form_of,
    vector_from_index, RingMatrix, RingVector, StandardForm,
};
use crate::ring::{Elem, GaloisRing};

/// Maximum number of failing message vectors kept in a report.
pub const MAX_WITNESSES: usize = 16;

/// The columns `alpha_1..alpha_k` of a generator matrix, in order, repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMultiset {
    m: usize,
    columns: Vec<RingVector>,
}

impl GeneratorMultiset {
    pub fn new(m: usize, columns: Vec<RingVector>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Dimension("dimension m must be positive".into()));
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != m) {
            return Err(Error::LengthMismatch(bad.len(), m));
        }
        Ok(GeneratorMultiset { m, columns })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[RingVector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<RingVector> {
        self.columns
    }

    /// The m x k generator matrix.
    pub fn generator_rows(&self) -> RingMatrix {
        let rows = (0..self.m).map(|j| self.columns.iter().map(|c| c[j]).collect()).collect();
        RingMatrix::new(rows, self.columns.len()).expect("rectangular")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub coords: RingVector,
    pub message: RingVector,
}

impl Codeword {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }
}

/// A validated code: the generator matrix has McCoy rank m, so `v -> vG` is injective.
#[derive(Debug, Clone)]
pub struct LinearCode {
    ring: Arc<GaloisRing>,
    gens: GeneratorMultiset,
}

pub fn build_code(ring: Arc<GaloisRing>, gens: GeneratorMultiset) -> Result<LinearCode> {
    if gens.k() < gens.m() {
        return Err(Error::RankDeficient { rank: gens.k(), expected: gens.m() });
    }
    let rank = linalg::mccoy_rank(&ring, &gens.generator_rows());
    if rank != gens.m() {
        return Err(Error::RankDeficient { rank, expected: gens.m() });
    }
    Ok(LinearCode { ring, gens })
}

impl LinearCode {
    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn gens(&self) -> &GeneratorMultiset {
        &self.gens
    }

    pub fn m(&self) -> usize {
        self.gens.m
    }

    pub fn k(&self) -> usize {
        self.gens.columns.len()
    }

    /// `log_q |C| = n m`.
    pub fn size_exponent(&self) -> u64 {
        self.ring.n() as u64 * self.m() as u64
    }

    /// Number of codewords (= number of messages).
    pub fn size(&self) -> u128 {
        module_size(&self.ring, self.m())
    }

    pub fn encode(&self, v: &[Elem]) -> Result<RingVector> {
        if v.len() != self.m() {
            return Err(Error::LengthMismatch(v.len(), self.m()));
        }
        Ok(encode_raw(&self.ring, &self.gens.columns, v))
    }

    pub fn codeword(&self, v: &[Elem]) -> Result<Codeword> {
        Ok(Codeword { coords: self.encode(v)?, message: v.to_vec() })
    }

    /// Every codeword, indexed by the lexicographic index of its message.
    pub fn codewords(&self, budget: &Budget) -> Result<Vec<RingVector>> {
        Budget::check("codewords", self.size(), budget.codewords)?;
        Ok(all_vectors(&self.ring, self.m()).map(|v| encode_raw(&self.ring, &self.gens.columns, &v)).collect())
    }
}

fn encode_raw(ring: &GaloisRing, columns: &[RingVector], v: &[Elem]) -> RingVector {
    columns.iter().map(|c| dot(ring, v, c)).collect()
}

/// True when `Supp(b)` is contained in `Supp(a)`.
pub fn covers(a: &Codeword, b: &Codeword) -> bool {
    support_covers(&a.coords, &b.coords)
}

fn support_covers(a: &[Elem], b: &[Elem]) -> bool {
    a.iter().zip(b).all(|(x, y)| y.is_zero() || !x.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Criterion,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bruteforce => "bruteforce",
            Method::Criterion => "criterion",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    RootWordsOnly,
    AllNonzero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub message: RingVector,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct MinimalityReport {
    pub verdict: bool,
    pub method: Method,
    pub witnesses: Vec<Witness>,
    pub checked: u64,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct WitnessJson {
    v: Vec<String>,
    reason: String,
}

#[derive(Serialize)]
struct ReportJson {
    verdict: bool,
    method: Method,
    checked: u64,
    witnesses: Vec<WitnessJson>,
    elapsed_ms: u64,
}

impl MinimalityReport {
    pub fn to_json(&self, ring: &GaloisRing) -> serde_json::Value {
        let report = ReportJson {
            verdict: self.verdict,
            method: self.method,
            checked: self.checked,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    v: w.message.iter().map(|&x| ring.format_elem(x)).collect(),
                    reason: w.reason.clone(),
                })
                .collect(),
            elapsed_ms: self.elapsed.as_millis() as u64,
        };
        serde_json::to_value(report).expect("report serializes")
    }
}

/// Literal definition: every nonzero codeword covered by `c` is `a c` for some nonzero scalar `a`.
pub fn is_minimal_codeword_bruteforce(code: &LinearCode, c: &Codeword, budget: &Budget) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroVector);
    }
    check_bruteforce_budget(code, budget)?;
    let ring = &code.ring;
    let multiples = scalar_multiples(ring, &c.coords);
    for v in all_vectors(ring, code.m()) {
        let b = encode_raw(ring, &code.gens.columns, &v);
        if b.iter().any(|x| !x.is_zero()) && support_covers(&c.coords, &b) && !multiples.contains(&b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_bruteforce_budget(code: &LinearCode, budget: &Budget) -> Result<()> {
    Budget::check("codewords", code.size(), budget.codewords)?;
    Budget::check("length", code.k() as u128, budget.max_length as u64)
}

fn scalar_multiples(ring: &GaloisRing, c: &[Elem]) -> HashSet<RingVector> {
    ring.elements().filter(|a| !a.is_zero()).map(|a| c.iter().map(|&x| ring.mul(a, x)).collect()).collect()
}

/// Brute-force minimality of the whole code, one pass over all codeword pairs.
pub fn is_minimal_code_bruteforce(code: &LinearCode, budget: &Budget) -> Result<MinimalityReport> {
    let start = Instant::now();
    check_bruteforce_budget(code, budget)?;
    let ring = &code.ring;
    let words = code.codewords(budget)?;
    let k = code.k();
    let blocks = k.div_ceil(64);
    let supports: Vec<Vec<u64>> = words
        .iter()
        .map(|w| {
            let mut bits = vec![0u64; blocks];
            for (i, x) in w.iter().enumerate() {
                if !x.is_zero() {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let index: HashMap<&RingVector, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let nonzero: Vec<usize> = (0..words.len()).filter(|&i| supports[i].iter().any(|&b| b != 0)).collect();

    let failures: Vec<(usize, usize)> = nonzero
        .par_iter()
        .filter_map(|&ci| {
            let multiples: HashSet<usize> = ring
                .elements()
                .filter(|a| !a.is_zero())
                .filter_map(|a| {
                    let w: RingVector = words[ci].iter().map(|&x| ring.mul(a, x)).collect();
                    index.get(&w).copied()
                })
                .collect();
            let sc = &supports[ci];
            nonzero
                .iter()
                .find(|&&bi| supports[bi].iter().zip(sc).all(|(b, c)| b & !c == 0) && !multiples.contains(&bi))
                .map(|&bi| (ci, bi))
        })
        .collect();

    let witnesses = failures
        .iter()
        .take(MAX_WITNESSES)
        .map(|&(ci, bi)| Witness {
            message: vector_from_index(ring, code.m(), ci as u64),
            reason: format!("covers {} which is not a scalar multiple", fmt_vec(ring, &words[bi])),
        })
        .collect::<Vec<_>>();
    Ok(MinimalityReport {
        verdict: failures.is_empty(),
        method: Method::Bruteforce,
        witnesses,
        checked: nonzero.len() as u64,
        elapsed: start.elapsed(),
    })
}

/// `log_q |O(v)| = n(m-1) + r` where `r` is the least valuation among the entries of `v`.
pub fn orthogonal_size_exponent(ring: &GaloisRing, v: &[Elem]) -> u64 {
    ring.n() as u64 * (v.len() as u64 - 1) + min_valuation(ring, v) as u64
}

/// `|O(v)|` (saturating) and the standard form of the span of the columns annihilated by `v`.
pub fn o_and_m(ring: &GaloisRing, v: &[Elem], gens: &GeneratorMultiset) -> Result<(u128, StandardForm)> {
    check_message(v, gens)?;
    let exp = orthogonal_size_exponent(ring, v);
    let o_size = (ring.q() as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    Ok((o_size, annihilated_span(ring, v, &gens.columns)))
}

/// The columns `alpha` of the multiset with `v . alpha = 0`.
pub fn annihilated_columns(ring: &GaloisRing, v: &[Elem], gens: &GeneratorMultiset) -> Vec<RingVector> {
    gens.columns.iter().filter(|c| dot(ring, v, c).is_zero()).cloned().collect()
}

fn annihilated_span(ring: &GaloisRing, v: &[Elem], columns: &[RingVector]) -> StandardForm {
    let rows: Vec<RingVector> = columns.iter().filter(|c| dot(ring, v, c).is_zero()).cloned().collect();
    standard_form_of(ring, rows, v.len())
}

fn check_message(v: &[Elem], gens: &GeneratorMultiset) -> Result<()> {
    if v.len() != gens.m {
        return Err(Error::LengthMismatch(v.len(), gens.m));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// `c(v)` is minimal iff the annihilated columns span all of `O(v)`.
pub fn is_minimal_codeword_criterion(ring: &GaloisRing, v: &[Elem], gens: &GeneratorMultiset) -> Result<bool> {
    check_message(v, gens)?;
    let form = annihilated_span(ring, v, &gens.columns);
    Ok(form.size_exponent() == orthogonal_size_exponent(ring, v))
}

struct CriterionFailure {
    index: u64,
    m_exp: u64,
    o_exp: u64,
}

/// Runs the structural test over every nonzero message (or every root word).
///
/// With `Scope::RootWordsOnly` the verdict is the code verdict only for
/// `m >= 2`, and each root word's result is cross-checked against the
/// freeness test (the span must be free of rank `m - 1` exactly when minimal).
pub fn is_minimal_code_criterion(code: &LinearCode, scope: Scope) -> Result<MinimalityReport> {
    let start = Instant::now();
    let ring = &*code.ring;
    let m = code.m();
    if scope == Scope::RootWordsOnly && m < 2 {
        return Err(Error::Dimension(
            "root-word reduction needs m >= 2; use onedim_minimal for one-dimensional codes".into(),
        ));
    }
    let total = module_size(ring, m);
    let total = u64::try_from(total).map_err(|_| Error::BudgetExceeded {
        what: "criterion sweep",
        needed: total,
        cap: u64::MAX,
    })?;
    let columns = &code.gens.columns;
    let outcomes: Vec<Result<CriterionFailure>> = (1..total)
        .into_par_iter()
        .filter_map(|index| {
            let v = vector_from_index(ring, m, index);
            let root = is_root_word(ring, &v);
            if scope == Scope::RootWordsOnly && !root {
                return None;
            }
            let form = annihilated_span(ring, &v, columns);
            let m_exp = form.size_exponent();
            let o_exp = orthogonal_size_exponent(ring, &v);
            let minimal = m_exp == o_exp;
            if scope == Scope::RootWordsOnly && minimal != form.is_free_of_rank(ring, m - 1) {
                return Some(Err(Error::Inconsistent(format!(
                    "size test and freeness test disagree at {}",
                    fmt_vec(ring, &v)
                ))));
            }
            (!minimal).then_some(Ok(CriterionFailure { index, m_exp, o_exp }))
        })
        .collect();
    let failures = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let checked = match scope {
        Scope::AllNonzero => total - 1,
        Scope::RootWordsOnly => root_word_count(ring, m),
    };
    let witnesses = failures
        .iter()
        .take(MAX_WITNESSES)
        .map(|f| Witness {
            message: vector_from_index(ring, m, f.index),
            reason: format!("annihilated columns span q^{} elements, orthogonal module has q^{}", f.m_exp, f.o_exp),
        })
        .collect();
    Ok(MinimalityReport {
        verdict: failures.is_empty(),
        method: Method::Criterion,
        witnesses,
        checked,
        elapsed: start.elapsed(),
    })
}

/// `q^{nm} - q^{m(n-1)}`.
pub fn root_word_count(ring: &GaloisRing, m: usize) -> u64 {
    let q = ring.q();
    let n = ring.n();
    q.pow(n * m as u32) - q.pow((n - 1) * m as u32)
}

/// Minimality of the one-dimensional code `<v>`: writing `v = p^s w` with `w` a
/// root word, every valuation `s..n-1` must occur among the entries of `v`.
pub fn onedim_minimal(ring: &GaloisRing, v: &[Elem]) -> Result<bool> {
    let (s, _) = root_part(ring, v).ok_or(Error::ZeroVector)?;
    let present: HashSet<u32> = v.iter().filter(|x| !x.is_zero()).map(|&x| ring.val(x)).collect();
    Ok((s..ring.n()).all(|r| present.contains(&r)))
}

/// Drops every column that is not a root word.
pub fn purify(ring: &GaloisRing, gens: &GeneratorMultiset) -> Result<GeneratorMultiset> {
    if gens.m < 2 {
        return Err(Error::Dimension("purification needs m >= 2".into()));
    }
    let columns: Vec<RingVector> = gens.columns.iter().filter(|c| is_root_word(ring, c)).cloned().collect();
    let out = GeneratorMultiset::new(gens.m, columns)?;
    let rank = if out.k() == 0 { 0 } else { linalg::mccoy_rank(ring, &out.generator_rows()) };
    if rank < gens.m {
        return Err(Error::RankDeficient { rank, expected: gens.m });
    }
    Ok(out)
}

/// `{x in R^k : x . row = 0 for every row}` by enumeration, in standard form.
pub fn dual_of_rows(ring: &GaloisRing, rows: &[RingVector], k: usize, budget: &Budget) -> Result<StandardForm> {
    Budget::check("dual", module_size(ring, k), budget.dual)?;
    let mut gens: Vec<RingVector> = Vec::new();
    let mut form = standard_form_of(ring, Vec::new(), k);
    for x in all_vectors(ring, k) {
        if rows.iter().all(|r| dot(ring, r, &x).is_zero()) && !form.contains(ring, &x) {
            gens.push(x);
            form = standard_form_of(ring, gens.clone(), k);
        }
    }
    Ok(form)
}

/// The dual code `C^perp` in R^k.
pub fn dual_bruteforce(code: &LinearCode, budget: &Budget) -> Result<StandardForm> {
    dual_of_rows(&code.ring, code.gens.generator_rows().rows(), code.k(), budget)
}
