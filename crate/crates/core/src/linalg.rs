//! Linear algebra over the free module GR(p^n, l)^m.
//!
//! Row reduction works on the chain of ideals (p^s): a pivot is an entry of
//! least valuation in its column, and for a pivot `p^s u` with `s > 0` the
//! row `p^{n-s} * pivot_row` (which vanishes in the pivot column) is fed back
//! into the remaining rows. The resulting [`StandardForm`] therefore lists a
//! generating set with the Howell property, which makes both the closed form
//! size `prod q^{n - s_i}` and membership by back-substitution exact.

use std::collections::HashSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ring::{Elem, GaloisRing};

pub type RingVector = Vec<Elem>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    rows: Vec<RingVector>,
    ncols: usize,
}

impl RingMatrix {
    pub fn new(rows: Vec<RingVector>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch(bad.len(), ncols));
        }
        Ok(RingMatrix { rows, ncols })
    }

    /// Column count taken from the first row; panics on an empty or ragged list.
    pub fn from_rows(rows: Vec<RingVector>) -> Self {
        let ncols = rows.first().map(|r| r.len()).expect("at least one row");
        RingMatrix::new(rows, ncols).expect("rectangular rows")
    }

    pub fn empty(ncols: usize) -> Self {
        RingMatrix { rows: Vec::new(), ncols }
    }

    pub fn rows(&self) -> &[RingVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RingVector> {
        self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn transpose(&self) -> RingMatrix {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect();
        RingMatrix { rows, ncols: self.rows.len() }
    }
}

/// A generating set in row standard form (see module docs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    matrix: RingMatrix,
    pivot_cols: Vec<usize>,
    pivot_vals: Vec<u32>,
    n: u32,
    q: u64,
}

impl StandardForm {
    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Valuations `s_i` of the pivot entries.
    pub fn pivot_vals(&self) -> &[u32] {
        &self.pivot_vals
    }

    /// `log_q` of the submodule size, `sum (n - s_i)`.
    pub fn size_exponent(&self) -> u64 {
        self.pivot_vals.iter().map(|&s| (self.n - s) as u64).sum()
    }

    /// Submodule size, if it fits in a u128.
    pub fn size(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.size_exponent() as u32)
    }

    /// Free of rank `t`: size `q^{nt}` and `t` generators independent mod p.
    pub fn is_free_of_rank(&self, ring: &GaloisRing, t: usize) -> bool {
        self.size_exponent() == self.n as u64 * t as u64 && mccoy_rank(ring, &self.matrix) == t
    }

    pub fn contains(&self, ring: &GaloisRing, x: &[Elem]) -> bool {
        if x.len() != self.matrix.ncols {
            return false;
        }
        let mut x = x.to_vec();
        let mut next = 0;
        for col in 0..x.len() {
            let is_pivot = self.pivot_cols.get(next) == Some(&col);
            if x[col].is_zero() {
                if is_pivot {
                    next += 1;
                }
                continue;
            }
            if !is_pivot {
                return false;
            }
            let s = self.pivot_vals[next];
            let form = ring.valuation(x[col]);
            if form.r < s {
                return false;
            }
            let factor = ring.mul(ring.p_pow(form.r - s), form.unit_part.unwrap());
            axpy_neg(ring, &mut x, factor, &self.matrix.rows[next]);
            next += 1;
        }
        true
    }

    /// Every element of the submodule, each exactly once.
    pub fn elements(&self, ring: &GaloisRing) -> Vec<RingVector> {
        let reps: Vec<Vec<Elem>> = self.pivot_vals.iter().map(|&s| truncated_reps(ring, self.n - s)).collect();
        let ncols = self.matrix.ncols;
        let mut out = vec![vec![Elem::ZERO; ncols]];
        for (row, coefs) in self.matrix.rows.iter().zip(&reps) {
            let mut next = Vec::with_capacity(out.len() * coefs.len());
            for base in &out {
                for &c in coefs {
                    let mut v = base.clone();
                    for (slot, &r) in v.iter_mut().zip(row) {
                        *slot = ring.add(*slot, ring.mul(c, r));
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }
}

/// Elements whose Teichmuller digits vanish from position `k` on: a transversal of R / (p^k).
fn truncated_reps(ring: &GaloisRing, k: u32) -> Vec<Elem> {
    ring.elements().filter(|&a| ring.teichmuller_decompose(a).iter().skip(k as usize).all(|d| d.is_zero())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubmoduleRelation {
    Equal,
    AInB,
    BInA,
    Incomparable,
}

/// x <- x - c * y
#[inline]
fn axpy_neg(ring: &GaloisRing, x: &mut [Elem], c: Elem, y: &[Elem]) {
    if c.is_zero() {
        return;
    }
    for (xi, &yi) in x.iter_mut().zip(y) {
        *xi = ring.sub(*xi, ring.mul(c, yi));
    }
}

#[inline]
pub fn dot(ring: &GaloisRing, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)))
}

pub fn inner_product(ring: &GaloisRing, a: &[Elem], b: &[Elem]) -> Result<Elem> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(dot(ring, a, b))
}

pub fn is_root_word(ring: &GaloisRing, v: &[Elem]) -> bool {
    v.iter().any(|&x| ring.is_unit(x))
}

pub fn first_unit(ring: &GaloisRing, v: &[Elem]) -> Option<usize> {
    v.iter().position(|&x| ring.is_unit(x))
}

/// Hamming weight.
pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Weight of the reduction modulo p: the number of unit entries.
pub fn unit_weight(ring: &GaloisRing, v: &[Elem]) -> usize {
    v.iter().filter(|&&x| ring.is_unit(x)).count()
}

/// Least valuation among the entries; `n` for the zero vector.
pub fn min_valuation(ring: &GaloisRing, v: &[Elem]) -> u32 {
    v.iter().map(|&x| ring.val(x)).min().unwrap_or(ring.n())
}

pub fn scale(ring: &GaloisRing, c: Elem, v: &[Elem]) -> RingVector {
    v.iter().map(|&x| ring.mul(c, x)).collect()
}

pub fn add(ring: &GaloisRing, a: &[Elem], b: &[Elem]) -> RingVector {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

pub fn sub(ring: &GaloisRing, a: &[Elem], b: &[Elem]) -> RingVector {
    a.iter().zip(b).map(|(&x, &y)| ring.sub(x, y)).collect()
}

pub fn unit_vector(m: usize, i: usize, one: Elem) -> RingVector {
    let mut e = vec![Elem::ZERO; m];
    e[i] = one;
    e
}

/// Writes a nonzero `v` as `p^r * w` with `w` a root word (`w_i = p^{r_i - r} u_i`).
pub fn root_part(ring: &GaloisRing, v: &[Elem]) -> Option<(u32, RingVector)> {
    let r = min_valuation(ring, v);
    if r >= ring.n() {
        return None;
    }
    let w = v
        .iter()
        .map(|&x| match ring.valuation(x) {
            form if form.unit_part.is_none() => Elem::ZERO,
            form => ring.mul(ring.p_pow(form.r - r), form.unit_part.unwrap()),
        })
        .collect();
    Some((r, w))
}

/// Largest t with a unit t x t minor; computed as the rank of the reduction
/// mod p by unit-pivot elimination inside the ring.
pub fn mccoy_rank(ring: &GaloisRing, g: &RingMatrix) -> usize {
    let mut rows = g.rows.clone();
    let mut rank = 0;
    for col in 0..g.ncols {
        let Some(pos) = (rank..rows.len()).find(|&i| ring.is_unit(rows[i][col])) else {
            continue;
        };
        rows.swap(rank, pos);
        let inv = ring.inverse(rows[rank][col]).expect("unit pivot");
        let pivot = scale(ring, inv, &rows[rank]);
        for row in rows.iter_mut().skip(rank + 1) {
            let c = row[col];
            axpy_neg(ring, row, c, &pivot);
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn row_standard_form(ring: &GaloisRing, g: &RingMatrix) -> StandardForm {
    standard_form_of(ring, g.rows.clone(), g.ncols)
}

pub(crate) fn standard_form_of(ring: &GaloisRing, mut work: Vec<RingVector>, ncols: usize) -> StandardForm {
    let n = ring.n();
    let nonzero = |r: &RingVector| r.iter().any(|x| !x.is_zero());
    work.retain(nonzero);
    let mut pivots = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut pivot_vals = Vec::new();
    for col in 0..ncols {
        if work.is_empty() {
            break;
        }
        let best = work
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(i, r)| (ring.val(r[col]), *i))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let raw = work.swap_remove(best);
        let form = ring.valuation(raw[col]);
        let s = form.r;
        // normalise so the pivot entry is exactly p^s
        let pivot = scale(ring, ring.inverse(form.unit_part.unwrap()).unwrap(), &raw);
        for row in work.iter_mut() {
            let x = row[col];
            if x.is_zero() {
                continue;
            }
            let f = ring.valuation(x);
            debug_assert!(f.r >= s);
            let factor = ring.mul(ring.p_pow(f.r - s), f.unit_part.unwrap());
            axpy_neg(ring, row, factor, &pivot);
        }
        if s > 0 {
            work.push(scale(ring, ring.p_pow(n - s), &pivot));
        }
        work.retain(nonzero);
        pivots.push(pivot);
        pivot_cols.push(col);
        pivot_vals.push(s);
    }
    debug_assert!(work.is_empty());
    StandardForm { matrix: RingMatrix { rows: pivots, ncols }, pivot_cols, pivot_vals, n, q: ring.q() }
}

pub fn submodule_compare(ring: &GaloisRing, a: &RingMatrix, b: &RingMatrix) -> Result<SubmoduleRelation> {
    if a.ncols != b.ncols {
        return Err(Error::LengthMismatch(a.ncols, b.ncols));
    }
    let fa = row_standard_form(ring, a);
    let fb = row_standard_form(ring, b);
    let a_in_b = a.rows.iter().all(|r| fb.contains(ring, r));
    let b_in_a = b.rows.iter().all(|r| fa.contains(ring, r));
    Ok(match (a_in_b, b_in_a) {
        (true, true) => SubmoduleRelation::Equal,
        (true, false) => SubmoduleRelation::AInB,
        (false, true) => SubmoduleRelation::BInA,
        (false, false) => SubmoduleRelation::Incomparable,
    })
}

/// Basis of the orthogonal module of a root word: one row per non-pivot
/// coordinate j, `-v_j u^{-1}` at the first unit coordinate and 1 at j.
pub fn orthogonal_basis_rootword(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    let pivot = first_unit(ring, v).ok_or_else(|| Error::NotRootWord(fmt_vec(ring, v)))?;
    let u_inv = ring.inverse(v[pivot])?;
    let rows = (0..v.len())
        .filter(|&j| j != pivot)
        .map(|j| {
            let mut row = unit_vector(v.len(), j, ring.one());
            row[pivot] = ring.neg(ring.mul(v[j], u_inv));
            row
        })
        .collect();
    RingMatrix::new(rows, v.len())
}

fn nonroot_parts(ring: &GaloisRing, v: &[Elem]) -> Result<(u32, RingVector, usize, Elem)> {
    let (r, w) = root_part(ring, v).ok_or(Error::ZeroVector)?;
    if r == 0 {
        return Err(Error::IsRootWord(fmt_vec(ring, v)));
    }
    let pivot = first_unit(ring, &w).expect("root part has a unit");
    let u_inv = ring.inverse(w[pivot])?;
    Ok((r, w, pivot, u_inv))
}

/// Generating set of the orthogonal module of `v = p^r w` (w a root word):
/// the root-word basis rows of `w` plus `p^{n-r} u^{-1}` at the pivot.
pub fn orthogonal_genset_nonroot(ring: &GaloisRing, v: &[Elem]) -> Result<RingMatrix> {
    let (r, w, pivot, u_inv) = nonroot_parts(ring, v)?;
    let mut rows = orthogonal_basis_rootword(ring, &w)?.into_rows();
    let mut last = vec![Elem::ZERO; v.len()];
    last[pivot] = ring.mul(ring.p_pow(ring.n() - r), u_inv);
    rows.push(last);
    RingMatrix::new(rows, v.len())
}

/// The alternative generating set built from `p^{n-r}u^{-1} - w_j u^{-1}` rows
/// plus one row scaled by a unit `u2` with `u2 != 1 mod p`.
pub fn orthogonal_genset_nonroot_alt(ring: &GaloisRing, v: &[Elem], u2: Elem) -> Result<RingMatrix> {
    let (r, w, pivot, u_inv) = nonroot_parts(ring, v)?;
    if !ring.is_unit(u2) || !ring.is_unit(ring.sub(u2, ring.one())) {
        return Err(Error::InvalidParameter(format!(
            "u2 = {} must be a unit not congruent to 1 mod p",
            ring.format_elem(u2)
        )));
    }
    if v.len() < 2 {
        return Err(Error::Dimension("need at least two coordinates".into()));
    }
    let shift = ring.mul(ring.p_pow(ring.n() - r), u_inv);
    let others: Vec<usize> = (0..v.len()).filter(|&j| j != pivot).collect();
    let mut rows: Vec<RingVector> = others
        .iter()
        .map(|&j| {
            let mut row = unit_vector(v.len(), j, ring.one());
            row[pivot] = ring.sub(shift, ring.mul(w[j], u_inv));
            row
        })
        .collect();
    let j1 = others[0];
    let mut last = unit_vector(v.len(), j1, u2);
    last[pivot] = ring.sub(shift, ring.mul(ring.mul(w[j1], u_inv), u2));
    rows.push(last);
    RingMatrix::new(rows, v.len())
}

/// Number of vectors in R^m, if representable.
pub fn module_size(ring: &GaloisRing, m: usize) -> u128 {
    (ring.size() as u128).checked_pow(m as u32).unwrap_or(u128::MAX)
}

/// Index of `v` in the lexicographic enumeration of R^m.
pub fn vector_index(ring: &GaloisRing, v: &[Elem]) -> u64 {
    v.iter().fold(0u64, |acc, x| acc * ring.size() + x.index() as u64)
}

pub fn vector_from_index(ring: &GaloisRing, m: usize, mut idx: u64) -> RingVector {
    let mut v = vec![Elem::ZERO; m];
    for slot in v.iter_mut().rev() {
        *slot = Elem((idx % ring.size()) as u32);
        idx /= ring.size();
    }
    v
}

/// All of R^m in lexicographic order.
pub fn all_vectors(ring: &GaloisRing, m: usize) -> impl Iterator<Item = RingVector> + '_ {
    let total = module_size(ring, m) as u64;
    (0..total).map(move |i| vector_from_index(ring, m, i))
}

/// Exhaustive `{x : v . x = 0}`.
pub fn orthogonal_bruteforce(ring: &GaloisRing, v: &[Elem], budget: &Budget) -> Result<Vec<RingVector>> {
    Budget::check("enumeration", module_size(ring, v.len()), budget.enumeration)?;
    Ok(all_vectors(ring, v.len()).filter(|x| dot(ring, v, x).is_zero()).collect())
}

/// The set of all `R`-combinations of `rows`, by enumeration.
pub fn span_set(ring: &GaloisRing, rows: &[RingVector], ncols: usize) -> HashSet<RingVector> {
    standard_form_of(ring, rows.to_vec(), ncols).elements(ring).into_iter().collect()
}

pub fn fmt_vec(ring: &GaloisRing, v: &[Elem]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|&x| {
            let s = ring.format_elem(x);
            if ring.ell() > 1 {
                format!("[{s}]")
            } else {
                s
            }
        })
        .collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, n: u32) -> GaloisRing {
        GaloisRing::new(p, n, 1, None).unwrap()
    }

    fn v(ring: &GaloisRing, xs: &[i64]) -> RingVector {
        xs.iter().map(|&x| ring.from_int(x)).collect()
    }

    fn mat(ring: &GaloisRing, rows: &[&[i64]]) -> RingMatrix {
        RingMatrix::from_rows(rows.iter().map(|r| v(ring, r)).collect())
    }

    #[test]
    fn inner_product_examples() {
        let z4 = z(2, 2);
        assert_eq!(inner_product(&z4, &v(&z4, &[1, 2]), &v(&z4, &[3, 1])).unwrap(), z4.one());
        assert_eq!(inner_product(&z4, &v(&z4, &[1, 2]), &v(&z4, &[0, 0])).unwrap(), Elem::ZERO);
        let z9 = z(3, 2);
        assert_eq!(inner_product(&z9, &v(&z9, &[1, 3]), &v(&z9, &[3, 2])).unwrap(), Elem::ZERO);
        assert!(matches!(inner_product(&z9, &v(&z9, &[1]), &v(&z9, &[1, 2])), Err(Error::LengthMismatch(1, 2))));
    }

    #[test]
    fn root_word_examples() {
        let z4 = z(2, 2);
        assert!(is_root_word(&z4, &v(&z4, &[1, 2])));
        assert!(!is_root_word(&z4, &v(&z4, &[2, 2])));
        assert!(!is_root_word(&z4, &v(&z4, &[0, 0])));
    }

    #[test]
    fn mccoy_rank_examples() {
        let z4 = z(2, 2);
        assert_eq!(mccoy_rank(&z4, &mat(&z4, &[&[1, 0], &[0, 1]])), 2);
        assert_eq!(mccoy_rank(&z4, &mat(&z4, &[&[2, 0], &[0, 2]])), 0);
        assert_eq!(mccoy_rank(&z4, &mat(&z4, &[&[1, 1], &[1, 3]])), 1);
    }

    #[test]
    fn standard_form_examples() {
        let z4 = z(2, 2);
        let f = row_standard_form(&z4, &mat(&z4, &[&[2, 2], &[0, 2]]));
        assert_eq!(f.pivot_vals(), &[1, 1]);
        assert_eq!(f.size(), Some(4));
        assert!(!f.is_free_of_rank(&z4, 1));
        let f = row_standard_form(&z4, &mat(&z4, &[&[1, 0], &[0, 1]]));
        assert_eq!(f.pivot_vals(), &[0, 0]);
        assert_eq!(f.size(), Some(16));
        let z9 = z(3, 2);
        let f = row_standard_form(&z9, &mat(&z9, &[&[3, 0]]));
        assert_eq!(f.pivot_vals(), &[1]);
        assert_eq!(f.size(), Some(3));
    }

    #[test]
    fn standard_form_closes_under_torsion() {
        // span{(2,1)} over Z4 = {(0,0),(2,1),(0,2),(2,3)}
        let z4 = z(2, 2);
        let f = row_standard_form(&z4, &mat(&z4, &[&[2, 1]]));
        assert_eq!(f.size(), Some(4));
        assert!(f.is_free_of_rank(&z4, 1));
        assert!(f.contains(&z4, &v(&z4, &[0, 2])));
        assert!(!f.contains(&z4, &v(&z4, &[0, 1])));
        assert_eq!(f.elements(&z4).len(), 4);
    }

    #[test]
    fn submodule_compare_examples() {
        let z4 = z(2, 2);
        let rel = |a: &[&[i64]], b: &[&[i64]]| submodule_compare(&z4, &mat(&z4, a), &mat(&z4, b)).unwrap();
        assert_eq!(rel(&[&[2, 0]], &[&[1, 0]]), SubmoduleRelation::AInB);
        assert_eq!(rel(&[&[1, 0]], &[&[1, 0], &[0, 1]]), SubmoduleRelation::AInB);
        assert_eq!(rel(&[&[1, 0]], &[&[0, 1]]), SubmoduleRelation::Incomparable);
        assert_eq!(rel(&[&[1, 1]], &[&[3, 3]]), SubmoduleRelation::Equal);
        assert_eq!(rel(&[&[1, 0], &[0, 1]], &[&[2, 1]]), SubmoduleRelation::BInA);
    }

    #[test]
    fn orthogonal_basis_examples() {
        let z4 = z(2, 2);
        assert_eq!(orthogonal_basis_rootword(&z4, &v(&z4, &[1, 2])).unwrap(), mat(&z4, &[&[2, 1]]));
        assert_eq!(orthogonal_basis_rootword(&z4, &v(&z4, &[1, 0, 0])).unwrap(), mat(&z4, &[&[0, 1, 0], &[0, 0, 1]]));
        let z9 = z(3, 2);
        assert_eq!(orthogonal_basis_rootword(&z9, &v(&z9, &[2, 1])).unwrap(), mat(&z9, &[&[4, 1]]));
        assert!(matches!(orthogonal_basis_rootword(&z4, &v(&z4, &[2, 2])), Err(Error::NotRootWord(_))));
    }

    #[test]
    fn orthogonal_nonroot_examples() {
        let z4 = z(2, 2);
        let g = orthogonal_genset_nonroot(&z4, &v(&z4, &[2, 2])).unwrap();
        assert_eq!(g, mat(&z4, &[&[3, 1], &[2, 0]]));
        assert_eq!(row_standard_form(&z4, &g).size(), Some(8));
        let z9 = z(3, 2);
        let g = orthogonal_genset_nonroot(&z9, &v(&z9, &[3, 0])).unwrap();
        assert_eq!(g, mat(&z9, &[&[0, 1], &[3, 0]]));
        assert_eq!(row_standard_form(&z9, &g).size(), Some(27));
        assert!(matches!(orthogonal_genset_nonroot(&z4, &v(&z4, &[1, 2])), Err(Error::IsRootWord(_))));
        assert!(matches!(orthogonal_genset_nonroot(&z4, &v(&z4, &[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn orthogonal_bruteforce_examples() {
        let z4 = z(2, 2);
        let b = Budget::default();
        let sols = orthogonal_bruteforce(&z4, &v(&z4, &[1, 2]), &b).unwrap();
        let expected: Vec<RingVector> = [[0, 0], [0, 2], [2, 1], [2, 3]].iter().map(|x| v(&z4, x)).collect();
        assert_eq!(sols, expected);
        assert_eq!(orthogonal_bruteforce(&z4, &v(&z4, &[0, 0]), &b).unwrap().len(), 16);
        assert_eq!(orthogonal_bruteforce(&z4, &v(&z4, &[2, 2]), &b).unwrap().len(), 8);
        let tiny = Budget { enumeration: 10, ..Budget::default() };
        assert!(matches!(orthogonal_bruteforce(&z4, &v(&z4, &[2, 2]), &tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn alt_genset_spans_the_same_module() {
        let z8 = z(2, 3);
        // no unit u2 with u2 != 1 mod 2 exists over Z8
        assert!(orthogonal_genset_nonroot_alt(&z8, &v(&z8, &[2, 4]), z8.from_int(3)).is_err());
        let z9 = z(3, 2);
        let vv = v(&z9, &[3, 6, 0]);
        let alt = orthogonal_genset_nonroot_alt(&z9, &vv, z9.from_int(2)).unwrap();
        let main = orthogonal_genset_nonroot(&z9, &vv).unwrap();
        assert_eq!(submodule_compare(&z9, &alt, &main).unwrap(), SubmoduleRelation::Equal);
    }

    #[test]
    fn vector_index_round_trip() {
        let z9 = z(3, 2);
        for i in [0u64, 1, 80, 500, 728] {
            assert_eq!(vector_index(&z9, &vector_from_index(&z9, 3, i)), i);
        }
    }
}
