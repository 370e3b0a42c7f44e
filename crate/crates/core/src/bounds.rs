//! Length bounds for minimal codes of dimension m over GR(p^n, l), and an
//! exhaustive search for the shortest minimal code of dimension 2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::codes::{is_minimal_codeword_criterion, GeneratorMultiset};
use crate::error::{Error, Result};
use crate::linalg::{self, all_vectors, first_unit, RingVector};
use crate::ring::GaloisRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    /// The bound as an exact rational.
    pub value: BigRational,
    /// `k > value` when strict, `k >= value` otherwise.
    pub strict: bool,
    pub case: &'static str,
}

impl LowerBound {
    pub fn satisfied_by(&self, k: u64) -> bool {
        let k = BigRational::from_integer(BigInt::from(k));
        if self.strict {
            k > self.value
        } else {
            k >= self.value
        }
    }

    /// Smallest integer length the bound admits.
    pub fn min_length(&self) -> BigInt {
        if self.strict {
            self.value.floor().to_integer() + 1
        } else {
            self.value.ceil().to_integer()
        }
    }
}

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `q^e` for a possibly negative exponent.
fn q_pow(q: u64, e: i64) -> BigRational {
    let base = big(q);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        BigRational::one() / num_traits::pow(base, (-e) as usize)
    }
}

/// The lower bound on the length `k` of a minimal code of dimension `m`.
pub fn length_lower_bound(m: usize, ring: &GaloisRing) -> Result<LowerBound> {
    let q = ring.q();
    let n = ring.n() as i64;
    if m < 2 {
        return Err(Error::InvalidParameter(format!("length bound needs m >= 2, got {m}")));
    }
    let (value, strict, case) = if m >= 3 {
        (big(m as u64 - 1) * q_pow(q, n) + q_pow(q, n - m as i64), true, "m >= 3")
    } else if n >= 3 {
        (q_pow(q, n) + q_pow(q, n - 2) + BigRational::one(), true, "m = 2, n >= 3")
    } else if n == 2 {
        (q_pow(q, 2) + big(2), false, "m = 2, n = 2")
    } else {
        (big(q) + BigRational::one(), false, "m = 2, n = 1")
    };
    Ok(LowerBound { value, strict, case })
}

/// Shortest length of a minimal code of dimension 2: `q^n + q^{n-1}`.
pub fn k2_exact(ring: &GaloisRing) -> u64 {
    let q = ring.q();
    q.pow(ring.n()) + q.pow(ring.n() - 1)
}

/// `m(m-1)/2 (q^n + q^{n-1} - 2) + m`.
pub fn lambda0_length(ring: &GaloisRing, m: usize) -> u64 {
    let m = m as u64;
    m * (m - 1) / 2 * (k2_exact(ring) - 2) + m
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub p: u64,
    pub n: u32,
    pub ell: usize,
    /// Exact rational, e.g. `"17/2"`.
    pub lower: String,
    pub strict: bool,
    pub case: String,
    pub min_length: String,
    pub lambda0_length: u64,
    pub k2_exact: Option<u64>,
}

pub fn bound_report(ring: &GaloisRing, m: usize) -> Result<BoundReport> {
    let lb = length_lower_bound(m, ring)?;
    Ok(BoundReport {
        m,
        p: ring.p(),
        n: ring.n(),
        ell: ring.ell(),
        lower: lb.value.to_string(),
        strict: lb.strict,
        case: lb.case.to_string(),
        min_length: lb.min_length().to_string(),
        lambda0_length: lambda0_length(ring, m),
        k2_exact: (m == 2).then(|| k2_exact(ring)),
    })
}

/// Root words of R^2 normalized so the first unit coordinate is 1: `(1, a)`
/// for every `a` and `(d, 1)` for every non-unit `d`, in lexicographic order.
pub fn normalized_root_columns(ring: &GaloisRing) -> Vec<RingVector> {
    all_vectors(ring, 2).filter(|c| first_unit(ring, c).is_some_and(|i| c[i] == ring.one())).collect()
}

#[derive(Debug, Clone)]
pub struct K2SearchResult {
    /// Smallest length with a minimal code and the lexicographically first witness.
    pub found: Option<(usize, GeneratorMultiset)>,
    /// Lengths certified to admit no minimal code.
    pub excluded: Vec<usize>,
    pub examined: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { break };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

fn is_minimal_2d(ring: &GaloisRing, gens: &GeneratorMultiset) -> bool {
    if linalg::mccoy_rank(ring, &gens.generator_rows()) != 2 {
        return false;
    }
    all_vectors(ring, 2).skip(1).all(|v| is_minimal_codeword_criterion(ring, &v, gens).expect("nonzero message"))
}

/// Tries k = 2..=k_max over sets of normalized root-word columns.
///
/// Scaling a column by a unit or repeating it leaves every support relation
/// unchanged, so a minimal code of length k exists iff some set of at most k
/// distinct normalized columns gives one.
pub fn exhaustive_k2_search(ring: &GaloisRing, k_max: usize, budget: &Budget) -> Result<K2SearchResult> {
    let classes = normalized_root_columns(ring);
    let total: u128 = (2..=k_max).map(|k| binomial(classes.len(), k)).sum();
    Budget::check("enumeration", total, budget.enumeration)?;
    let mut excluded = Vec::new();
    let mut examined = 0u64;
    for k in 2..=k_max {
        let combos = combinations(classes.len(), k);
        examined += combos.len() as u64;
        let hit = combos.par_iter().find_first(|c| {
            let gens =
                GeneratorMultiset::new(2, c.iter().map(|&i| classes[i].clone()).collect()).expect("length-2 columns");
            is_minimal_2d(ring, &gens)
        });
        match hit {
            Some(c) => {
                let gens = GeneratorMultiset::new(2, c.iter().map(|&i| classes[i].clone()).collect())?;
                return Ok(K2SearchResult { found: Some((k, gens)), excluded, examined });
            }
            None => excluded.push(k),
        }
    }
    Ok(K2SearchResult { found: None, excluded, examined })
}
