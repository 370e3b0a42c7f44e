//! Code constructions: the explicit multiset `Lambda_0`, codes `C_f` built from
//! a function `f: R^m -> R` (generator columns `(f(x), x)`), the basis
//! lemmas used to certify their minimality, and a witness search that
//! produces, for a root word `(first, rest)` of `R^{m+1}`, the family of
//! domain points showing that `c(first, rest)` is minimal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::codes::GeneratorMultiset;
use crate::error::{Error, Result};
use crate::linalg::{
    self, all_vectors, dot, first_unit, fmt_vec, is_root_word, module_size, orthogonal_basis_rootword, root_part,
    scale, unit_vector, unit_weight, vector_index, weight, RingMatrix, RingVector,
};
use crate::ring::{Elem, GaloisRing};

/// `Lambda_0 = {e_i} u {e_i + u e_j} u {e_i + d e_j} u {d e_i + e_j}` (i < j, u a unit,
/// d a nonzero zero divisor), in that order.
pub fn lambda0(ring: &GaloisRing, m: usize) -> Result<GeneratorMultiset> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("lambda0 needs m >= 2, got {m}")));
    }
    let one = ring.one();
    let units: Vec<Elem> = ring.elements().filter(|&a| ring.is_unit(a)).collect();
    let zds: Vec<Elem> = ring.elements().filter(|&a| !a.is_zero() && !ring.is_unit(a)).collect();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut cols: Vec<RingVector> = (0..m).map(|i| unit_vector(m, i, one)).collect();
    let pair_vec = |i: usize, a: Elem, j: usize, b: Elem| {
        let mut c = vec![Elem::ZERO; m];
        c[i] = a;
        c[j] = b;
        c
    };
    for &(i, j) in &pairs {
        cols.extend(units.iter().map(|&u| pair_vec(i, one, j, u)));
    }
    for &(i, j) in &pairs {
        cols.extend(zds.iter().map(|&d| pair_vec(i, one, j, d)));
    }
    for &(i, j) in &pairs {
        cols.extend(zds.iter().map(|&d| pair_vec(i, d, j, one)));
    }
    GeneratorMultiset::new(m, cols)
}

fn require_root(ring: &GaloisRing, v: &[Elem]) -> Result<usize> {
    first_unit(ring, v).ok_or_else(|| Error::NotRootWord(fmt_vec(ring, v)))
}

/// Smallest element (index order) `a` with `a`, `a - 1` and `a - m` all units.
fn lemma19_default_a(ring: &GaloisRing, m: usize) -> Option<Elem> {
    let m_elem = ring.from_int(m as i64);
    ring.elements().find(|&a| lemma19_valid(ring, a, m_elem))
}

fn lemma19_valid(ring: &GaloisRing, a: Elem, m_elem: Elem) -> bool {
    ring.is_unit(a) && ring.is_unit(ring.sub(a, ring.one())) && ring.is_unit(ring.sub(a, m_elem))
}

/// Rows are the columns of `aI - A` (A all ones): full weight, all entries units,
/// determinant `a^{m-1}(a - m)`.
pub fn lemma19_basis(ring: &GaloisRing, m: usize, a: Option<Elem>) -> Result<RingMatrix> {
    if ring.q() <= 3 {
        return Err(Error::InvalidParameter(format!("needs q > 3, got q = {}", ring.q())));
    }
    if m == 0 {
        return Err(Error::Dimension("m must be positive".into()));
    }
    let m_elem = ring.from_int(m as i64);
    let a = match a {
        Some(a) if lemma19_valid(ring, a, m_elem) => a,
        Some(a) => {
            return Err(Error::InvalidParameter(format!("a = {} must avoid 0, 1 and m modulo p", ring.format_elem(a))))
        }
        None => lemma19_default_a(ring, m).expect("q > 3 leaves a valid residue"),
    };
    let minus_one = ring.neg(ring.one());
    let rows = (0..m)
        .map(|i| {
            let mut row = vec![minus_one; m];
            row[i] = ring.sub(a, ring.one());
            row
        })
        .collect();
    RingMatrix::new(rows, m)
}

/// For a root word `v`: a basis with weights 1..=2 and `v . beta_i = 1`.
pub fn lemma20_basis(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    let piv = require_root(ring, v)?;
    let inv = ring.inverse(v[piv])?;
    let m = v.len();
    let rows = (0..m)
        .map(|j| {
            if j == piv {
                unit_vector(m, piv, inv)
            } else {
                let mut row = unit_vector(m, j, ring.one());
                row[piv] = ring.mul(inv, ring.sub(ring.one(), v[j]));
                row
            }
        })
        .collect();
    RingMatrix::new(rows, m)
}

fn require_nonroot(ring: &GaloisRing, v: &[Elem]) -> Result<()> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    if is_root_word(ring, v) {
        return Err(Error::IsRootWord(fmt_vec(ring, v)));
    }
    Ok(())
}

/// Full-support nonroot `v`: rows `beta_i` of full weight with `v . beta_i = v_i`.
pub fn lemma21_basis(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    require_nonroot(ring, v)?;
    if v.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidParameter("every coordinate must be nonzero".into()));
    }
    RingMatrix::new(lemma21_rows(ring, v), v.len())
}

fn lemma21_rows(ring: &GaloisRing, v: &[Elem]) -> Vec<RingVector> {
    let m = v.len();
    (0..m)
        .map(|i| {
            let form = ring.valuation(v[i]);
            let pr = ring.p_pow(form.r);
            let mut row = vec![pr; m];
            row[i] = ring.one();
            // v . row = p^{r_i} u for a unit u; rescale by u^{-1} u_i
            let u = ring.valuation(dot(ring, v, &row)).unit_part.expect("nonzero dot");
            let c = ring.mul(ring.inverse(u).expect("unit"), form.unit_part.unwrap());
            scale(ring, c, &row)
        })
        .collect()
}

/// Nonroot `v` with at least two zero coordinates (q > 3).
pub fn lemma23_basis(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    require_nonroot(ring, v)?;
    let zeros: Vec<usize> = (0..v.len()).filter(|&i| v[i].is_zero()).collect();
    if zeros.len() < 2 {
        return Err(Error::InvalidParameter("needs at least two zero coordinates".into()));
    }
    if ring.q() <= 3 {
        return Err(Error::InvalidParameter(format!("needs q > 3, got q = {}", ring.q())));
    }
    let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    let m = v.len();
    let sub: RingVector = nonzero.iter().map(|&i| v[i]).collect();
    let top = lemma21_rows(ring, &sub);
    let bottom = lemma19_basis(ring, zeros.len(), None)?.into_rows();
    let mut rows = vec![Vec::new(); m];
    for (t, &i) in nonzero.iter().enumerate() {
        let mut row = vec![v[i]; m];
        for (s, &j) in nonzero.iter().enumerate() {
            row[j] = top[t][s];
        }
        rows[i] = row;
    }
    let pad = ring.p_pow(ring.n() - 1);
    for (t, &i) in zeros.iter().enumerate() {
        let mut row = vec![pad; m];
        for (s, &j) in zeros.iter().enumerate() {
            row[j] = bottom[t][s];
        }
        rows[i] = row;
    }
    RingMatrix::new(rows, m)
}

/// Nonroot `v` with exactly one zero coordinate and at least two nonzero ones.
pub fn lemma24_basis(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    require_nonroot(ring, v)?;
    let zeros: Vec<usize> = (0..v.len()).filter(|&i| v[i].is_zero()).collect();
    if zeros.len() != 1 {
        return Err(Error::InvalidParameter("needs exactly one zero coordinate".into()));
    }
    let z = zeros[0];
    let nonzero: Vec<usize> = (0..v.len()).filter(|&i| i != z).collect();
    if nonzero.len() < 2 {
        return Err(Error::Dimension(
            "an orthogonal full-weight row with two unit entries needs at least two nonzero coordinates".into(),
        ));
    }
    let m = v.len();
    let n = ring.n();
    let sub: RingVector = nonzero.iter().map(|&i| v[i]).collect();
    let top = lemma21_rows(ring, &sub);
    let mut rows = vec![Vec::new(); m];
    for (t, &i) in nonzero.iter().enumerate() {
        let mut row = vec![Elem::ZERO; m];
        for (s, &j) in nonzero.iter().enumerate() {
            row[j] = top[t][s];
        }
        row[z] = v[i];
        rows[i] = row;
    }
    let forms: Vec<_> = nonzero.iter().map(|&i| ring.valuation(v[i])).collect();
    let vals: Vec<u32> = forms.iter().map(|f| f.r).collect();
    let unit = |t: usize| forms[t].unit_part.unwrap();
    let mut last = vec![Elem::ZERO; m];
    last[z] = ring.one();
    if vals.iter().all(|&r| r == vals[0]) {
        let (i, j) = (0, 1);
        let r = vals[0];
        for &k in &nonzero {
            last[k] = ring.p_pow(n - r);
        }
        last[nonzero[i]] = ring.one();
        last[nonzero[j]] = ring.neg(ring.mul(ring.inverse(unit(j))?, unit(i)));
    } else {
        let i = (0..vals.len()).max_by_key(|&t| (vals[t], std::cmp::Reverse(t))).unwrap();
        let j = (0..vals.len()).min_by_key(|&t| (vals[t], t)).unwrap();
        for (t, &k) in nonzero.iter().enumerate() {
            last[k] = ring.p_pow(n - vals[t]);
        }
        last[nonzero[i]] = ring.one();
        let c = ring.mul(ring.mul(ring.inverse(unit(j))?, unit(i)), ring.p_pow(vals[i] - vals[j]));
        last[nonzero[j]] = ring.neg(c);
    }
    rows[z] = last;
    RingMatrix::new(rows, m)
}

/// Dispatch on the number of zero coordinates: none, one, or several.
pub fn fullweight_basis_nonroot(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    require_nonroot(ring, v)?;
    match v.iter().filter(|x| x.is_zero()).count() {
        0 => lemma21_basis(ring, v),
        1 => lemma24_basis(ring, v),
        _ => lemma23_basis(ring, v),
    }
}

/// Basis of `O(v)` for a root word, every row of weight 1 or 2.
pub fn lemma25_ortho_basis(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    let basis = orthogonal_basis_rootword(ring, v)?;
    if let Some(row) = basis.rows().iter().find(|r| !(1..=2).contains(&weight(r))) {
        return Err(Error::Inconsistent(format!("orthogonal basis row {} has weight > 2", fmt_vec(ring, row))));
    }
    Ok(basis)
}

/// For a root word `v` and `1 <= r <= n-1`: rows of weight 1..=2 in
/// `O(p^{n-r} v)` with `v . beta_i = p^r`.
pub fn lemma26_scaled(ring: &GaloisRing, v: &[Elem], r: u32) -> Result<RingMatrix> {
    if r == 0 || r >= ring.n() {
        return Err(Error::InvalidParameter(format!("r = {r} must lie in 1..{}", ring.n())));
    }
    let piv = require_root(ring, v)?;
    let u_inv = ring.inverse(v[piv])?;
    let pr_u = ring.mul(ring.p_pow(r), u_inv);
    let m = v.len();
    let mut rows = vec![unit_vector(m, piv, pr_u)];
    for j in (0..m).filter(|&j| j != piv) {
        let mut row = unit_vector(m, j, ring.one());
        row[piv] = ring.sub(pr_u, ring.mul(v[j], u_inv));
        rows.push(row);
    }
    RingMatrix::new(rows, m)
}

/// Monomial-sum function `sum_i a_i prod_j x_j^{b_ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialPoly {
    terms: Vec<(Elem, Vec<u32>)>,
}

impl MonomialPoly {
    pub fn new(terms: Vec<(Elem, Vec<u32>)>) -> Result<Self> {
        let m = terms.first().map(|t| t.1.len()).unwrap_or(0);
        if terms.iter().any(|t| t.1.len() != m) {
            return Err(Error::InvalidParameter("monomials have different arity".into()));
        }
        Ok(MonomialPoly { terms })
    }

    /// Parses `u*x1*x2*x3 + x4^2*x5*x6`; coefficient factors are element
    /// literals (parenthesized when they contain commas), variables are 1-based.
    pub fn parse(ring: &GaloisRing, m: usize, text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParameter(format!("polynomial {text:?}: {msg}"));
        let mut terms = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let mut coef = ring.one();
            let mut exps = vec![0u32; m];
            for factor in term.split('*').map(str::trim) {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad(format!("bad exponent in {factor}")))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad(format!("bad variable {factor}")))?;
                    if idx == 0 || idx > m {
                        return Err(bad(format!("variable {factor} outside x1..x{m}")));
                    }
                    exps[idx - 1] += exp;
                } else {
                    coef = ring.mul(coef, ring.parse_elem(factor)?);
                }
            }
            terms.push((coef, exps));
        }
        MonomialPoly::new(terms)
    }

    pub fn terms(&self) -> &[(Elem, Vec<u32>)] {
        &self.terms
    }

    pub fn support(&self, i: usize) -> Vec<usize> {
        (0..self.terms[i].1.len()).filter(|&j| self.terms[i].1[j] > 0).collect()
    }

    pub fn eval(&self, ring: &GaloisRing, x: &[Elem]) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, (a, exps)| {
            let g = exps.iter().zip(x).fold(
                *a,
                |g, (&b, &xi)| {
                    if b == 0 {
                        g
                    } else {
                        ring.mul(g, ring.pow(xi, b as u64))
                    }
                },
            );
            ring.add(acc, g)
        })
    }

    pub fn format(&self, ring: &GaloisRing) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(a, exps)| {
                let mut parts = Vec::new();
                if *a != ring.one() {
                    let lit = ring.format_elem(*a);
                    parts.push(if ring.ell() > 1 { format!("({lit})") } else { lit });
                }
                for (j, &b) in exps.iter().enumerate().filter(|(_, &b)| b > 0) {
                    parts.push(if b == 1 { format!("x{}", j + 1) } else { format!("x{}^{b}", j + 1) });
                }
                if parts.is_empty() {
                    parts.push("1".into());
                }
                parts.join("*")
            })
            .collect();
        terms.join(" + ")
    }

    /// Structural requirements of the monomial construction, as (name, ok) pairs.
    pub fn structure_checks(&self, ring: &GaloisRing) -> Vec<(&'static str, bool)> {
        let supports: Vec<Vec<usize>> = (0..self.terms.len()).map(|i| self.support(i)).collect();
        let disjoint = supports
            .iter()
            .enumerate()
            .all(|(i, s)| supports[i + 1..].iter().all(|t| s.iter().all(|x| !t.contains(x))));
        vec![
            ("at least two terms", self.terms.len() >= 2),
            ("unit coefficients", self.terms.iter().all(|(a, _)| ring.is_unit(*a))),
            ("each monomial has a linear variable", self.terms.iter().all(|(_, e)| e.contains(&1))),
            ("pairwise disjoint supports", disjoint),
            ("supports of size at least 3", supports.iter().all(|s| s.len() >= 3)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionRule {
    Thm43,
    Thm46,
    Poly(MonomialPoly),
    /// Values for every vector of R^m by lexicographic index; entries outside
    /// the domain are ignored.
    Explicit(Vec<Elem>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainMode {
    AllNonzero,
    RootWordsOnly,
}

impl DomainMode {
    pub fn name(self) -> &'static str {
        match self {
            DomainMode::AllNonzero => "all_nonzero",
            DomainMode::RootWordsOnly => "root_words_only",
        }
    }
}

/// A function `f: R^m -> R` on a declared domain.
#[derive(Debug, Clone)]
pub struct FunctionTable {
    ring: Arc<GaloisRing>,
    m: usize,
    rule: FunctionRule,
    domain: DomainMode,
}

/// The constructions with a canonical function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Thm43,
    Thm46,
    Poly(MonomialPoly),
}

impl FunctionTable {
    /// `values` lists `f(x)` for the domain points in lexicographic order.
    pub fn explicit(
        ring: Arc<GaloisRing>,
        m: usize,
        domain: DomainMode,
        values: &[Elem],
        budget: &Budget,
    ) -> Result<Self> {
        Budget::check("enumeration", module_size(&ring, m), budget.enumeration)?;
        let mut table = FunctionTable { ring, m, rule: FunctionRule::Explicit(Vec::new()), domain };
        let points = table.domain_points();
        if points.len() != values.len() {
            return Err(Error::LengthMismatch(values.len(), points.len()));
        }
        let mut full = vec![Elem::ZERO; module_size(&table.ring, m) as usize];
        for (x, &val) in points.iter().zip(values) {
            if !table.ring.contains(val) {
                return Err(Error::InvalidParameter("value outside the ring".into()));
            }
            full[vector_index(&table.ring, x) as usize] = val;
        }
        table.rule = FunctionRule::Explicit(full);
        Ok(table)
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rule(&self) -> &FunctionRule {
        &self.rule
    }

    pub fn domain(&self) -> DomainMode {
        self.domain
    }

    pub fn family_name(&self) -> &'static str {
        match self.rule {
            FunctionRule::Thm43 => "thm43",
            FunctionRule::Thm46 => "thm46",
            FunctionRule::Poly(_) => "poly",
            FunctionRule::Explicit(_) => "explicit",
        }
    }

    pub fn in_domain(&self, x: &[Elem]) -> bool {
        x.len() == self.m
            && match self.domain {
                DomainMode::AllNonzero => x.iter().any(|v| !v.is_zero()),
                DomainMode::RootWordsOnly => is_root_word(&self.ring, x),
            }
    }

    /// Domain points in lexicographic order.
    pub fn domain_points(&self) -> Vec<RingVector> {
        all_vectors(&self.ring, self.m).filter(|x| self.in_domain(x)).collect()
    }

    pub fn eval(&self, x: &[Elem]) -> Elem {
        let ring = &*self.ring;
        match &self.rule {
            FunctionRule::Thm43 => canonical_thm43(ring, x),
            FunctionRule::Thm46 => canonical_thm46(ring, x),
            FunctionRule::Poly(poly) => poly.eval(ring, x),
            FunctionRule::Explicit(values) => values[vector_index(ring, x) as usize],
        }
    }
}

/// `Some(r)` when `x` has full weight, exactly one unit entry, and every other
/// entry of valuation exactly `r`.
fn single_unit_uniform(ring: &GaloisRing, x: &[Elem]) -> Option<u32> {
    if weight(x) != x.len() || unit_weight(ring, x) != 1 || x.len() < 2 {
        return None;
    }
    let mut vals = x.iter().map(|&a| ring.val(a)).filter(|&r| r > 0);
    let r = vals.next()?;
    vals.all(|s| s == r).then_some(r)
}

fn canonical_thm43(ring: &GaloisRing, x: &[Elem]) -> Elem {
    let w = weight(x);
    if w == 0 {
        return Elem::ZERO;
    }
    if w <= 2 {
        return ring.one();
    }
    if w == x.len() {
        if unit_weight(ring, x) >= 2 {
            return Elem::ZERO;
        }
        if let Some(r) = single_unit_uniform(ring, x) {
            return ring.p_pow(r);
        }
    }
    Elem::ZERO
}

fn canonical_thm46(ring: &GaloisRing, x: &[Elem]) -> Elem {
    let m = x.len();
    let w = weight(x);
    if w <= 2 {
        return Elem::ZERO;
    }
    if let Some(r) = single_unit_uniform(ring, x) {
        return ring.p_pow(r);
    }
    if w + 1 >= m && unit_weight(ring, x) + 1 >= m {
        return ring.one();
    }
    Elem::ZERO
}

/// The canonical function of a family, after checking the family's parameter guards.
pub fn canonical_f(ring: Arc<GaloisRing>, family: Family, m: usize, domain: DomainMode) -> Result<FunctionTable> {
    let rule = match family {
        Family::Thm43 => {
            if ring.q() <= 3 || m < 3 {
                return Err(Error::InvalidParameter(format!(
                    "thm43 needs q > 3 and m >= 3, got q = {}, m = {m}",
                    ring.q()
                )));
            }
            FunctionRule::Thm43
        }
        Family::Thm46 => {
            if m <= 3 {
                return Err(Error::InvalidParameter(format!("thm46 needs m > 3, got m = {m}")));
            }
            FunctionRule::Thm46
        }
        Family::Poly(poly) => {
            if poly.terms.first().map(|t| t.1.len()) != Some(m) {
                return Err(Error::InvalidParameter("polynomial arity differs from m".into()));
            }
            if let Some((name, _)) = poly.structure_checks(&ring).into_iter().find(|(_, ok)| !ok) {
                return Err(Error::InvalidParameter(format!("polynomial fails: {name}")));
            }
            FunctionRule::Poly(poly)
        }
    };
    Ok(FunctionTable { ring, m, rule, domain })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionFamily {
    Thm43,
    Thm43NoCond2,
    Thm46,
    Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<RingVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub conditions: Vec<ConditionResult>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn get(&self, name_prefix: &str) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.name.starts_with(name_prefix))
    }
}

fn condition(name: &str, points: &[RingVector], mut fails: impl FnMut(&RingVector) -> bool) -> ConditionResult {
    let counterexample = points.iter().find(|x| fails(x)).cloned();
    ConditionResult { name: name.to_string(), passed: counterexample.is_none(), counterexample }
}

/// Exhaustive check of a family's hypotheses over the domain of `f`;
/// each failing condition reports its lexicographically least counterexample.
pub fn check_conditions(f: &FunctionTable, family: ConditionFamily) -> ConditionReport {
    let ring = &*f.ring;
    let m = f.m;
    let points = f.domain_points();
    let units: Vec<Elem> = ring.elements().filter(|&a| ring.is_unit(a)).collect();
    let values: HashMap<&RingVector, Elem> = points.iter().map(|x| (x, f.eval(x))).collect();
    let value = |x: &RingVector| values.get(x).copied().unwrap_or_else(|| f.eval(x));
    let scale_invariant_unit = |x: &RingVector| {
        let fx = value(x);
        !ring.is_unit(fx) || units.iter().any(|&u| f.eval(&scale(ring, u, x)) != fx)
    };
    let low_weight = |x: &RingVector| (1..=2).contains(&weight(x));
    let mut out = Vec::new();
    match family {
        ConditionFamily::Thm43 | ConditionFamily::Thm43NoCond2 => {
            out.push(ConditionResult {
                name: "parameters: q > 3 and m >= 3".into(),
                passed: ring.q() > 3 && m >= 3,
                counterexample: None,
            });
            out.push(condition("weight 1-2: f(ux) = f(x) is a unit", &points, |x| {
                low_weight(x) && scale_invariant_unit(x)
            }));
            if family == ConditionFamily::Thm43 {
                let mut seen: HashMap<Vec<usize>, Elem> = HashMap::new();
                out.push(condition("weight 1-2 root words: f depends only on x mod p", &points, |x| {
                    if !low_weight(x) || !is_root_word(ring, x) {
                        return false;
                    }
                    let key: Vec<usize> = x.iter().map(|&a| ring.residue_index(a)).collect();
                    *seen.entry(key).or_insert_with(|| value(x)) != value(x)
                }));
            }
            out.push(condition("full weight, >= 2 units: f(x) = 0", &points, |x| {
                weight(x) == m && unit_weight(ring, x) >= 2 && !value(x).is_zero()
            }));
            out.push(condition("full weight, one unit, others p^r u: f(x) = p^r", &points, |x| {
                single_unit_uniform(ring, x).is_some_and(|r| value(x) != ring.p_pow(r))
            }));
        }
        ConditionFamily::Thm46 => {
            out.push(ConditionResult { name: "parameters: m > 3".into(), passed: m > 3, counterexample: None });
            out.push(condition("weight 1-2: f(x) = 0", &points, |x| low_weight(x) && !value(x).is_zero()));
            out.push(condition("full weight, one unit, others p^r u: f(x) = p^r", &points, |x| {
                single_unit_uniform(ring, x).is_some_and(|r| value(x) != ring.p_pow(r))
            }));
            out.push(condition("w(x), w(x mod p) >= m-1: f(ax) = f(x) is a unit", &points, |x| {
                weight(x) + 1 >= m && unit_weight(ring, x) + 1 >= m && scale_invariant_unit(x)
            }));
        }
        ConditionFamily::Poly => match &f.rule {
            FunctionRule::Poly(poly) => {
                for (name, ok) in poly.structure_checks(ring) {
                    out.push(ConditionResult { name: name.into(), passed: ok, counterexample: None });
                }
            }
            _ => out.push(ConditionResult {
                name: "function is a monomial sum".into(),
                passed: false,
                counterexample: None,
            }),
        },
    }
    ConditionReport { conditions: out }
}

/// Columns `(f(x), x)` over the domain in lexicographic order of `x`.
pub fn build_cf(f: &FunctionTable) -> Result<GeneratorMultiset> {
    let columns: Vec<RingVector> = f
        .domain_points()
        .into_iter()
        .map(|x| {
            let mut col = Vec::with_capacity(f.m + 1);
            col.push(f.eval(&x));
            col.extend(x);
            col
        })
        .collect();
    let gens = GeneratorMultiset::new(f.m + 1, columns)?;
    let rank = if gens.k() == 0 { 0 } else { linalg::mccoy_rank(&f.ring, &gens.generator_rows()) };
    if rank != f.m + 1 {
        return Err(Error::RankDeficient { rank, expected: f.m + 1 });
    }
    Ok(gens)
}

/// The five kinds of root words `(first, rest)` of `R^{m+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootWordTag {
    /// `(u, 0)`, u a unit.
    T1UnitZero,
    /// `(u, v)`, u a unit, v a root word.
    T2UnitRoot,
    /// `(u, v)`, u a unit, v nonzero and not a root word.
    T3UnitNonroot,
    /// `(0, v)`, v a root word.
    T4ZeroRoot,
    /// `(d, v)`, d a nonzero zero divisor, v a root word.
    T5ZeroDivisorRoot,
}

impl fmt::Display for RootWordTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootWordTag::T1UnitZero => "T1_unit_zero",
            RootWordTag::T2UnitRoot => "T2_unit_root",
            RootWordTag::T3UnitNonroot => "T3_unit_nonroot",
            RootWordTag::T4ZeroRoot => "T4_zero_root",
            RootWordTag::T5ZeroDivisorRoot => "T5_zd_root",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootWordType {
    pub tag: RootWordTag,
    pub first: Elem,
    pub rest: RingVector,
}

pub fn classify_codeword_vector(ring: &GaloisRing, first: Elem, rest: &[Elem]) -> Result<RootWordType> {
    let rest_root = is_root_word(ring, rest);
    let rest_zero = rest.iter().all(|x| x.is_zero());
    let tag = if ring.is_unit(first) {
        if rest_zero {
            RootWordTag::T1UnitZero
        } else if rest_root {
            RootWordTag::T2UnitRoot
        } else {
            RootWordTag::T3UnitNonroot
        }
    } else if rest_root {
        if first.is_zero() {
            RootWordTag::T4ZeroRoot
        } else {
            RootWordTag::T5ZeroDivisorRoot
        }
    } else {
        let mut full = vec![first];
        full.extend_from_slice(rest);
        return Err(Error::NotRootWord(fmt_vec(ring, &full)));
    };
    Ok(RootWordType { tag, first, rest: rest.to_vec() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    Recipe,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityWitness {
    pub tag: RootWordTag,
    pub betas: Vec<RingVector>,
    pub source: WitnessSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(MinimalityWitness),
    /// The search exhausted the domain; `rank` is the best rank reached.
    NotFound {
        tag: RootWordTag,
        rank: usize,
    },
}

impl WitnessOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, WitnessOutcome::Found(_))
    }
}

/// The equality each `beta_i` must satisfy, and which vectors must be independent.
enum Sync {
    /// `f(beta) = 0`; the betas form a basis.
    Zero,
    /// `f(beta) = w . beta`; the betas form a basis.
    Linear(RingVector),
    /// `v . beta = 0`; the columns `(f(beta), beta)` are independent.
    Ortho(RingVector),
    /// `p^r f(beta) = w . beta`; the columns `(f(beta), beta)` are independent.
    Scaled(Elem, RingVector),
}

impl Sync {
    fn new(ring: &GaloisRing, t: &RootWordType) -> Result<Sync> {
        let minus_inv = |a: Elem| -> Result<Elem> { Ok(ring.neg(ring.inverse(a)?)) };
        Ok(match t.tag {
            RootWordTag::T1UnitZero => Sync::Zero,
            RootWordTag::T2UnitRoot | RootWordTag::T3UnitNonroot => {
                Sync::Linear(scale(ring, minus_inv(t.first)?, &t.rest))
            }
            RootWordTag::T4ZeroRoot => Sync::Ortho(t.rest.clone()),
            RootWordTag::T5ZeroDivisorRoot => {
                let form = ring.valuation(t.first);
                let w = scale(ring, minus_inv(form.unit_part.unwrap())?, &t.rest);
                Sync::Scaled(ring.p_pow(form.r), w)
            }
        })
    }

    fn holds(&self, ring: &GaloisRing, beta: &[Elem], fb: Elem) -> bool {
        match self {
            Sync::Zero => fb.is_zero(),
            Sync::Linear(w) => fb == dot(ring, w, beta),
            Sync::Ortho(v) => dot(ring, v, beta).is_zero(),
            Sync::Scaled(pr, w) => ring.mul(*pr, fb) == dot(ring, w, beta),
        }
    }

    fn rank_vector(&self, beta: &[Elem], fb: Elem) -> RingVector {
        match self {
            Sync::Zero | Sync::Linear(_) => beta.to_vec(),
            Sync::Ortho(_) | Sync::Scaled(..) => {
                let mut col = vec![fb];
                col.extend_from_slice(beta);
                col
            }
        }
    }
}

/// Incremental rank modulo p via unit-pivot elimination in the ring.
struct ResidueEchelon {
    rows: Vec<(usize, RingVector)>,
}

impl ResidueEchelon {
    fn new() -> Self {
        ResidueEchelon { rows: Vec::new() }
    }

    fn insert(&mut self, ring: &GaloisRing, x: &[Elem]) -> bool {
        let mut x = x.to_vec();
        for (col, row) in &self.rows {
            let c = x[*col];
            if !c.is_zero() {
                for (xi, &ri) in x.iter_mut().zip(row) {
                    *xi = ring.sub(*xi, ring.mul(c, ri));
                }
            }
        }
        match first_unit(ring, &x) {
            Some(col) => {
                let inv = ring.inverse(x[col]).expect("unit");
                self.rows.push((col, scale(ring, inv, &x)));
                true
            }
            None => false,
        }
    }
}

/// Witness search for one function; precomputes the domain once.
pub struct WitnessSearch<'a> {
    f: &'a FunctionTable,
    /// Domain points with their values, weight <= 2 first, lexicographic within.
    candidates: Vec<(RingVector, Elem)>,
}

impl<'a> WitnessSearch<'a> {
    pub fn new(f: &'a FunctionTable, budget: &Budget) -> Result<Self> {
        Budget::check("enumeration", module_size(&f.ring, f.m), budget.enumeration)?;
        let points = f.domain_points();
        let (low, high): (Vec<_>, Vec<_>) = points.into_iter().partition(|x| weight(x) <= 2);
        let candidates = low.into_iter().chain(high).map(|x| {
            let fx = f.eval(&x);
            (x, fx)
        });
        Ok(WitnessSearch { f, candidates: candidates.collect() })
    }

    pub fn witness(&self, first: Elem, rest: &[Elem]) -> Result<WitnessOutcome> {
        let ring = &*self.f.ring;
        if rest.len() != self.f.m {
            return Err(Error::LengthMismatch(rest.len(), self.f.m));
        }
        let t = classify_codeword_vector(ring, first, rest)?;
        let sync = Sync::new(ring, &t)?;
        for betas in recipes(self.f, &t) {
            if verify_family(self.f, &sync, &betas) {
                return Ok(WitnessOutcome::Found(MinimalityWitness {
                    tag: t.tag,
                    betas,
                    source: WitnessSource::Recipe,
                }));
            }
        }
        let mut echelon = ResidueEchelon::new();
        let mut betas = Vec::new();
        for (x, fx) in &self.candidates {
            if sync.holds(ring, x, *fx) && echelon.insert(ring, &sync.rank_vector(x, *fx)) {
                betas.push(x.clone());
                if betas.len() == self.f.m {
                    return Ok(WitnessOutcome::Found(MinimalityWitness {
                        tag: t.tag,
                        betas,
                        source: WitnessSource::Search,
                    }));
                }
            }
        }
        Ok(WitnessOutcome::NotFound { tag: t.tag, rank: betas.len() })
    }

    /// Checks a proposed family against the characterization for `(first, rest)`.
    pub fn verify(&self, first: Elem, rest: &[Elem], betas: &[RingVector]) -> Result<bool> {
        let t = classify_codeword_vector(&self.f.ring, first, rest)?;
        Ok(verify_family(self.f, &Sync::new(&self.f.ring, &t)?, betas))
    }
}

/// Finds the family `{beta_i}` characterizing minimality of `c(first, rest)` in `C_f`.
pub fn minimality_witness(f: &FunctionTable, first: Elem, rest: &[Elem]) -> Result<WitnessOutcome> {
    WitnessSearch::new(f, &Budget::default())?.witness(first, rest)
}

fn verify_family(f: &FunctionTable, sync: &Sync, betas: &[RingVector]) -> bool {
    let ring = &*f.ring;
    if betas.len() != f.m || !betas.iter().all(|b| f.in_domain(b)) {
        return false;
    }
    let mut rank_rows = Vec::with_capacity(betas.len());
    for b in betas {
        let fb = f.eval(b);
        if !sync.holds(ring, b, fb) {
            return false;
        }
        rank_rows.push(sync.rank_vector(b, fb));
    }
    let width = rank_rows[0].len();
    linalg::mccoy_rank(ring, &RingMatrix::new(rank_rows, width).expect("rectangular")) == f.m
}

/// A unit `a` with `a != 1 mod p`, if the residue field has one.
fn non_one_unit(ring: &GaloisRing) -> Option<Elem> {
    ring.elements().find(|&a| ring.is_unit(a) && ring.is_unit(ring.sub(a, ring.one())))
}

/// Candidate families from the constructive proofs, most specific first.
fn recipes(f: &FunctionTable, t: &RootWordType) -> Vec<Vec<RingVector>> {
    let ring = &*f.ring;
    let out = match &f.rule {
        FunctionRule::Thm43 => thm43_recipes(ring, t),
        FunctionRule::Thm46 => thm46_recipes(ring, t),
        FunctionRule::Poly(poly) => poly_recipes(ring, poly, t),
        FunctionRule::Explicit(_) => Ok(Vec::new()),
    };
    out.unwrap_or_default()
}

fn rows(m: RingMatrix) -> Vec<RingVector> {
    m.into_rows()
}

fn thm43_recipes(ring: &GaloisRing, t: &RootWordType) -> Result<Vec<Vec<RingVector>>> {
    let m = t.rest.len();
    Ok(match t.tag {
        RootWordTag::T1UnitZero => vec![rows(lemma19_basis(ring, m, None)?)],
        RootWordTag::T2UnitRoot => {
            // w . beta = 1 and f = 1 on weight <= 2, so beta already synchronizes
            let w = scale(ring, ring.neg(ring.inverse(t.first)?), &t.rest);
            vec![rows(lemma20_basis(ring, &w)?)]
        }
        RootWordTag::T3UnitNonroot => {
            let w = scale(ring, ring.neg(ring.inverse(t.first)?), &t.rest);
            let basis = fullweight_basis_nonroot(ring, &w)?;
            let betas = basis
                .rows()
                .iter()
                .zip(&w)
                .map(|(b, &wi)| match ring.valuation(wi).unit_part {
                    Some(u) => scale(ring, ring.inverse(u).expect("unit"), b),
                    None => b.clone(),
                })
                .collect();
            vec![betas]
        }
        RootWordTag::T4ZeroRoot => {
            let mut betas = rows(lemma25_ortho_basis(ring, &t.rest)?);
            let a = non_one_unit(ring).ok_or_else(|| Error::InvalidParameter("q = 2".into()))?;
            betas.push(scale(ring, a, &betas[0]));
            vec![betas]
        }
        RootWordTag::T5ZeroDivisorRoot => {
            let form = ring.valuation(t.first);
            let minus_u = ring.neg(form.unit_part.unwrap());
            let scaled: Vec<RingVector> =
                rows(lemma26_scaled(ring, &t.rest, form.r)?).iter().map(|b| scale(ring, minus_u, b)).collect();
            let mut out = vec![scaled.clone()];
            // root-word-only domains: swap the weight-one row for a root word
            let piv = require_root(ring, &t.rest)?;
            if let (Some(j), Some(u2)) = ((0..m).find(|&j| j != piv), non_one_unit(ring)) {
                let u_inv = ring.inverse(t.rest[piv])?;
                let mut b = unit_vector(m, j, u2);
                b[piv] = ring.mul(ring.sub(ring.p_pow(form.r), ring.mul(u2, t.rest[j])), u_inv);
                let mut alt = scaled[1..].to_vec();
                alt.push(scale(ring, minus_u, &b));
                out.push(alt);
            }
            out
        }
    })
}

/// `e_j - c_j e_piv` for `j != piv`: a weight <= 2 basis of `O(y)` when `c = y / y_piv`.
fn ortho_rows(ring: &GaloisRing, y: &[Elem], piv: usize) -> Result<Vec<RingVector>> {
    let inv = ring.inverse(y[piv])?;
    Ok((0..y.len())
        .filter(|&j| j != piv)
        .map(|j| {
            let mut row = unit_vector(y.len(), j, ring.one());
            row[piv] = ring.neg(ring.mul(y[j], inv));
            row
        })
        .collect())
}

fn thm46_recipes(ring: &GaloisRing, t: &RootWordType) -> Result<Vec<Vec<RingVector>>> {
    let m = t.rest.len();
    let one = ring.one();
    Ok(match t.tag {
        RootWordTag::T1UnitZero => vec![(0..m).map(|i| unit_vector(m, i, one)).collect()],
        RootWordTag::T2UnitRoot => {
            let w = scale(ring, ring.neg(ring.inverse(t.first)?), &t.rest);
            let piv = require_root(ring, &w)?;
            let mut betas = ortho_rows(ring, &w, piv)?;
            // some x among 1 and 1 - e_i has w . x a unit, and f = 1 on all of them
            let ones = vec![one; m];
            let x = std::iter::once(ones.clone())
                .chain((0..m).map(|i| {
                    let mut x = ones.clone();
                    x[i] = Elem::ZERO;
                    x
                }))
                .find(|x| ring.is_unit(dot(ring, &w, x)))
                .expect("w is nonzero mod p");
            betas.push(scale(ring, ring.inverse(dot(ring, &w, &x))?, &x));
            vec![betas]
        }
        RootWordTag::T3UnitNonroot => {
            let w = scale(ring, ring.neg(ring.inverse(t.first)?), &t.rest);
            let (r, y) = root_part(ring, &w).ok_or(Error::ZeroVector)?;
            let piv = require_root(ring, &y)?;
            // w = p^r y_piv (y / y_piv)
            let u2 = y[piv];
            let yn = scale(ring, ring.inverse(u2)?, &y);
            let mut betas = ortho_rows(ring, &yn, piv)?;
            let pr = ring.p_pow(r);
            let mut b1 = unit_vector(m, piv, one);
            for b in &betas {
                b1 = linalg::add(ring, &b1, &scale(ring, pr, b));
            }
            betas.push(scale(ring, ring.inverse(u2)?, &b1));
            vec![betas]
        }
        RootWordTag::T4ZeroRoot => {
            let piv = require_root(ring, &t.rest)?;
            let mut betas = ortho_rows(ring, &t.rest, piv)?;
            let sum = betas.iter().fold(vec![Elem::ZERO; m], |acc, b| linalg::add(ring, &acc, b));
            betas.push(sum);
            vec![betas]
        }
        RootWordTag::T5ZeroDivisorRoot => {
            let form = ring.valuation(t.first);
            let piv = require_root(ring, &t.rest)?;
            let mut betas = ortho_rows(ring, &t.rest, piv)?;
            let u_inv = ring.inverse(t.rest[piv])?;
            let mut b1 = unit_vector(m, piv, ring.mul(ring.p_pow(form.r), u_inv));
            for b in &betas {
                b1 = linalg::add(ring, &b1, b);
            }
            betas.push(scale(ring, ring.neg(form.unit_part.unwrap()), &b1));
            vec![betas]
        }
    })
}

/// A term whose support avoids `piv`, with its coefficient and support.
fn term_avoiding(poly: &MonomialPoly, piv: usize) -> Option<(Elem, Vec<usize>, usize)> {
    (0..poly.terms.len()).find_map(|i| {
        let support = poly.support(i);
        if support.contains(&piv) {
            return None;
        }
        let linear = *support.iter().find(|&&j| poly.terms[i].1[j] == 1)?;
        Some((poly.terms[i].0, support, linear))
    })
}

/// `c e_piv + sum_{l in support} beta_l` with the `linear` variable's row scaled by `s`,
/// where `beta_l = e_l - (y_l / y_piv) e_piv`.
fn poly_vector(
    ring: &GaloisRing,
    y: &[Elem],
    piv: usize,
    c: Elem,
    support: &[usize],
    linear: usize,
    s: Elem,
) -> Result<RingVector> {
    let inv = ring.inverse(y[piv])?;
    let mut x = unit_vector(y.len(), piv, c);
    for &l in support {
        let coef = if l == linear { s } else { ring.one() };
        x[l] = ring.add(x[l], coef);
        x[piv] = ring.sub(x[piv], ring.mul(coef, ring.mul(y[l], inv)));
    }
    Ok(x)
}

fn poly_recipes(ring: &GaloisRing, poly: &MonomialPoly, t: &RootWordType) -> Result<Vec<Vec<RingVector>>> {
    let m = t.rest.len();
    let one = ring.one();
    let missing = || Error::InvalidParameter("no monomial avoids the pivot".into());
    Ok(match t.tag {
        RootWordTag::T1UnitZero => vec![(0..m).map(|i| unit_vector(m, i, one)).collect()],
        RootWordTag::T2UnitRoot => {
            let w = scale(ring, ring.neg(ring.inverse(t.first)?), &t.rest);
            let piv = require_root(ring, &w)?;
            let (a, support, linear) = term_avoiding(poly, piv).ok_or_else(missing)?;
            let mut betas = ortho_rows(ring, &w, piv)?;
            // w . x = w_piv c and f(x) = a
            let c = ring.mul(a, ring.inverse(w[piv])?);
            betas.push(poly_vector(ring, &w, piv, c, &support, linear, one)?);
            vec![betas]
        }
        RootWordTag::T3UnitNonroot => {
            let w = scale(ring, ring.neg(ring.inverse(t.first)?), &t.rest);
            let (r, y) = root_part(ring, &w).ok_or(Error::ZeroVector)?;
            let piv = require_root(ring, &y)?;
            let (a, support, linear) = term_avoiding(poly, piv).ok_or_else(missing)?;
            let mut betas = ortho_rows(ring, &y, piv)?;
            // w . x = p^r y_piv and f(x) = a s
            let target = ring.mul(ring.p_pow(r), y[piv]);
            let s = ring.mul(ring.inverse(a)?, target);
            let c = ring.inverse(y[piv])?;
            betas.push(poly_vector(ring, &y, piv, c, &support, linear, s)?);
            vec![betas]
        }
        RootWordTag::T4ZeroRoot => {
            let piv = require_root(ring, &t.rest)?;
            let (_, support, linear) = term_avoiding(poly, piv).ok_or_else(missing)?;
            let mut betas = ortho_rows(ring, &t.rest, piv)?;
            betas.push(poly_vector(ring, &t.rest, piv, Elem::ZERO, &support, linear, one)?);
            vec![betas]
        }
        RootWordTag::T5ZeroDivisorRoot => {
            let form = ring.valuation(t.first);
            let piv = require_root(ring, &t.rest)?;
            let (a, support, linear) = term_avoiding(poly, piv).ok_or_else(missing)?;
            let mut betas = ortho_rows(ring, &t.rest, piv)?;
            // v . x = v_piv c must equal -u' p^r a
            let target = ring.neg(ring.mul(ring.mul(form.unit_part.unwrap(), ring.p_pow(form.r)), a));
            let c = ring.mul(target, ring.inverse(t.rest[piv])?);
            betas.push(poly_vector(ring, &t.rest, piv, c, &support, linear, one)?);
            vec![betas]
        }
    })
}
