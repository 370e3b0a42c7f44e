//! Exact arithmetic in the Galois ring GR(p^n, l) = Z_{p^n}[x] / (h(x)).
//!
//! Elements are stored as compact indices ([`Elem`]) into the lexicographic
//! enumeration of coefficient vectors `(c_0, ..., c_{l-1})`, `c_0` most
//! significant. Index order therefore *is* lexicographic order, which keeps
//! every enumeration in the crate reproducible. Small rings get full
//! addition/multiplication tables; larger ones fall back to polynomial
//! arithmetic on decoded coefficients.

use std::fmt;

use thiserror::Error;

use crate::residue;

/// Rings above this many elements are rejected.
pub const MAX_RING_SIZE: u64 = 1 << 24;
/// Rings up to this size get precomputed operation tables.
const TABLE_LIMIT: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("exponents must satisfy n >= 1 and ell >= 1 (got n = {n}, ell = {ell})")]
    BadExponent { n: u32, ell: usize },
    #[error("defining polynomial must be monic of degree {expected}, got {got:?}")]
    NotMonic { expected: usize, got: Vec<u64> },
    #[error("defining polynomial {0:?} is reducible modulo p")]
    Reducible(Vec<u64>),
    #[error("coefficient {0} is outside [0, p^n)")]
    CoefficientRange(u64),
    #[error("ring GR(p^n, ell) with {0} elements exceeds the supported size")]
    TooLarge(u128),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("valuation class r = {r} outside 1..={max}")]
    ValuationOutOfRange { r: u32, max: u32 },
    #[error("element does not belong to this ring")]
    ForeignElement,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// An element of a [`GaloisRing`], as its lexicographic index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `a = p^r * unit_part`; `r = n` and no unit part for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationForm {
    pub r: u32,
    pub unit_part: Option<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    All,
    Units,
    /// Nonzero zero divisors.
    ZeroDivisors,
    ValuationExactly(u32),
    Teichmuller,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Census {
    pub size: u64,
    pub units: u64,
    pub zero_divisors: u64,
    /// `valuation_classes[r - 1]` counts elements of valuation exactly `r`.
    pub valuation_classes: Vec<u64>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    /// `u32::MAX` marks non-units.
    inv: Vec<u32>,
    val: Vec<u8>,
}

pub struct GaloisRing {
    p: u64,
    n: u32,
    ell: usize,
    modulus: u64,
    h: Vec<u64>,
    size: u64,
    q: u64,
    one: Elem,
    teich: Vec<Elem>,
    teich_by_residue: Vec<Elem>,
    xi: Elem,
    tables: Option<Tables>,
}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.h == other.h
    }
}

impl Eq for GaloisRing {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisRing {
    /// Builds GR(p^n, ell). Without `h`, ell = 1 uses `h(x) = x` and larger
    /// degrees lift the lexicographically smallest monic irreducible mod p.
    pub fn new(p: u64, n: u32, ell: usize, h: Option<&[u64]>) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if n == 0 || ell == 0 {
            return Err(RingError::BadExponent { n, ell });
        }
        let total = (p as u128).checked_pow(n * ell as u32).unwrap_or(u128::MAX);
        if total > MAX_RING_SIZE as u128 {
            return Err(RingError::TooLarge(total));
        }
        let modulus = p.pow(n);
        let h = match h {
            Some(h) => {
                if h.len() != ell + 1 || h[ell] != 1 {
                    return Err(RingError::NotMonic { expected: ell, got: h.to_vec() });
                }
                if let Some(&c) = h.iter().find(|&&c| c >= modulus) {
                    return Err(RingError::CoefficientRange(c));
                }
                if !residue::is_irreducible(h, p) {
                    return Err(RingError::Reducible(h.to_vec()));
                }
                h.to_vec()
            }
            None if ell == 1 => vec![0, 1],
            None => residue::smallest_irreducible(p, ell),
        };
        let size = total as u64;
        let q = p.pow(ell as u32);
        let mut ring = GaloisRing {
            p,
            n,
            ell,
            modulus,
            h,
            size,
            q,
            one: Elem(0),
            teich: Vec::new(),
            teich_by_residue: Vec::new(),
            xi: Elem(0),
            tables: None,
        };
        let mut one = vec![0; ell];
        one[0] = 1;
        ring.one = ring.encode(&one);
        if size <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        ring.build_teichmuller();
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Residue field size q = p^ell.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Characteristic p^n.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements q^n.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Defining polynomial, constant term first.
    pub fn h(&self) -> &[u64] {
        &self.h
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn contains(&self, a: Elem) -> bool {
        (a.0 as u64) < self.size
    }

    /// The image of an integer in the prime subring Z_{p^n}.
    pub fn from_int(&self, v: i64) -> Elem {
        let m = self.modulus as i64;
        let mut c = vec![0; self.ell];
        c[0] = v.rem_euclid(m) as u64;
        self.encode(&c)
    }

    pub fn p_pow(&self, r: u32) -> Elem {
        if r >= self.n {
            Elem::ZERO
        } else {
            self.from_int(self.p.pow(r) as i64)
        }
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<Elem, RingError> {
        if coeffs.len() != self.ell {
            return Err(RingError::WrongLength { expected: self.ell, got: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.modulus) {
            return Err(RingError::CoefficientRange(c));
        }
        Ok(self.encode(coeffs))
    }

    pub(crate) fn encode(&self, coeffs: &[u64]) -> Elem {
        let mut idx = 0u64;
        for &c in coeffs {
            idx = idx * self.modulus + c;
        }
        Elem(idx as u32)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        let mut out = vec![0; self.ell];
        let mut idx = a.0 as u64;
        for slot in out.iter_mut().rev() {
            *slot = idx % self.modulus;
            idx /= self.modulus;
        }
        out
    }

    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let c: Vec<u64> = x.iter().zip(&y).map(|(s, t)| (s + t) % self.modulus).collect();
        self.encode(&c)
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        let c: Vec<u64> = self.coeffs(a).iter().map(|&s| (self.modulus - s) % self.modulus).collect();
        self.encode(&c)
    }

    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let m = self.modulus;
        let l = self.ell;
        let mut prod = vec![0u64; 2 * l - 1];
        for (i, &s) in x.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for (j, &t) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + s * t) % m;
            }
        }
        // h is monic: x^l = -(h_0 + ... + h_{l-1} x^{l-1})
        for d in (l..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..l {
                let sub = c * self.h[j] % m;
                prod[d - l + j] = (prod[d - l + j] + m - sub) % m;
            }
        }
        self.encode(&prod[..l])
    }

    fn build_tables(&self) -> Tables {
        let n = self.size as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        for a in 0..n {
            neg[a] = self.neg_raw(Elem(a as u32)).0;
            for b in 0..n {
                add[a * n + b] = self.add_raw(Elem(a as u32), Elem(b as u32)).0;
                mul[a * n + b] = self.mul_raw(Elem(a as u32), Elem(b as u32)).0;
            }
        }
        let mut inv = vec![u32::MAX; n];
        let one = self.one.0;
        for a in 0..n {
            if inv[a] != u32::MAX {
                continue;
            }
            if let Some(b) = (0..n).find(|&b| mul[a * n + b] == one) {
                inv[a] = b as u32;
                inv[b] = a as u32;
            }
        }
        let val = (0..n).map(|a| self.valuation_raw(Elem(a as u32)).0 as u8).collect();
        Tables { add, mul, neg, inv, val }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[a.index() * self.size as usize + b.index()]),
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.neg[a.index()]),
            None => self.neg_raw(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[a.index() * self.size as usize + b.index()]),
            None => self.mul_raw(a, b),
        }
    }

    /// Checked binary operation; rejects elements outside this ring.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem, RingError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(RingError::ForeignElement);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = self.one;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Index in 0..q of the residue class of `a` modulo p.
    pub fn residue_index(&self, a: Elem) -> usize {
        let mut idx = 0u64;
        for c in self.coeffs(a) {
            idx = idx * self.p + c % self.p;
        }
        idx as usize
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.tables {
            Some(t) => t.inv[a.index()] != u32::MAX,
            None => self.coeffs(a).iter().any(|c| c % self.p != 0),
        }
    }

    /// Valuation only; `n` for zero.
    #[inline]
    pub fn val(&self, a: Elem) -> u32 {
        match &self.tables {
            Some(t) => t.val[a.index()] as u32,
            None => self.valuation_raw(a).0,
        }
    }

    fn valuation_raw(&self, a: Elem) -> (u32, Option<Elem>) {
        if a.is_zero() {
            return (self.n, None);
        }
        let c = self.coeffs(a);
        let vp = |mut x: u64| {
            let mut r = 0;
            while x.is_multiple_of(self.p) {
                x /= self.p;
                r += 1;
            }
            r
        };
        let r = c.iter().filter(|&&x| x != 0).map(|&x| vp(x)).min().unwrap();
        let div = self.p.pow(r);
        let unit: Vec<u64> = c.iter().map(|x| x / div).collect();
        (r, Some(self.encode(&unit)))
    }

    /// Canonical `p^r * u` form: `u` has coefficients `c_i / p^r`.
    pub fn valuation(&self, a: Elem) -> ValuationForm {
        let (r, unit_part) = self.valuation_raw(a);
        ValuationForm { r, unit_part }
    }

    /// Inverse of a unit: inverse modulo p by extended Euclid over F_q,
    /// then Newton/Hensel lifting up to p^n.
    pub fn inverse(&self, a: Elem) -> Result<Elem, RingError> {
        if !self.contains(a) {
            return Err(RingError::ForeignElement);
        }
        if let Some(t) = &self.tables {
            return match t.inv[a.index()] {
                u32::MAX => Err(RingError::NotAUnit(self.format_elem(a))),
                b => Ok(Elem(b)),
            };
        }
        self.inverse_hensel(a)
    }

    fn inverse_hensel(&self, a: Elem) -> Result<Elem, RingError> {
        let hbar = residue::reduce(&self.h, self.p);
        let abar = residue::reduce(&self.coeffs(a), self.p);
        let inv0 =
            residue::inverse_mod(&abar, &hbar, self.p).ok_or_else(|| RingError::NotAUnit(self.format_elem(a)))?;
        let mut c = vec![0; self.ell];
        for (i, v) in inv0.into_iter().enumerate() {
            c[i] = v;
        }
        let mut b = self.encode(&c);
        let two = self.from_int(2);
        // each step doubles the p-adic precision
        let mut precision = 1;
        while precision < self.n {
            b = self.mul(b, self.sub(two, self.mul(a, b)));
            precision *= 2;
        }
        debug_assert_eq!(self.mul(a, b), self.one);
        Ok(b)
    }

    fn build_teichmuller(&mut self) {
        let q = self.q as usize;
        let mut by_residue = vec![Elem::ZERO; q];
        for (r, slot) in by_residue.iter_mut().enumerate() {
            // canonical lift of the residue class, then y -> y^q, n - 1 times
            let mut digits = vec![0u64; self.ell];
            let mut t = r as u64;
            for d in digits.iter_mut().rev() {
                *d = t % self.p;
                t /= self.p;
            }
            let mut y = self.encode(&digits);
            for _ in 1..self.n {
                y = self.pow(y, self.q);
            }
            *slot = y;
        }
        let mut teich = by_residue.clone();
        teich.sort();
        self.teich = teich;
        self.teich_by_residue = by_residue;
        let order = self.q - 1;
        self.xi = self
            .teich
            .iter()
            .copied()
            .filter(|&t| !t.is_zero())
            .find(|&t| multiplicative_order(self, t) == order)
            .expect("the Teichmuller units form a cyclic group");
    }

    /// The Teichmuller set in lexicographic order.
    pub fn teichmuller(&self) -> &[Elem] {
        &self.teich
    }

    /// A primitive (q-1)-th root of unity inside the Teichmuller set.
    pub fn teich_generator(&self) -> Elem {
        self.xi
    }

    /// The Teichmuller representative congruent to `a` modulo p.
    pub fn teich_rep(&self, a: Elem) -> Elem {
        self.teich_by_residue[self.residue_index(a)]
    }

    /// Digits `c_0, ..., c_{n-1}` in the Teichmuller set with `a = sum c_i p^i`.
    pub fn teichmuller_decompose(&self, a: Elem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut rest = a;
        for _ in 0..self.n {
            let digit = self.teich_rep(rest);
            out.push(digit);
            let diff = self.sub(rest, digit);
            // diff is divisible by p; shift one p-adic place down
            let c: Vec<u64> = self.coeffs(diff).iter().map(|x| x / self.p).collect();
            rest = self.encode(&c);
        }
        out
    }

    pub fn teichmuller_recompose(&self, digits: &[Elem]) -> Elem {
        digits.iter().enumerate().fold(Elem::ZERO, |acc, (i, &d)| self.add(acc, self.mul(self.p_pow(i as u32), d)))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size as u32).map(Elem)
    }

    pub fn enumerate(&self, kind: ElementKind) -> Result<Vec<Elem>, RingError> {
        Ok(match kind {
            ElementKind::All => self.elements().collect(),
            ElementKind::Units => self.elements().filter(|&a| self.is_unit(a)).collect(),
            ElementKind::ZeroDivisors => self.elements().filter(|&a| !a.is_zero() && !self.is_unit(a)).collect(),
            ElementKind::ValuationExactly(r) => {
                if r == 0 || r >= self.n {
                    return Err(RingError::ValuationOutOfRange { r, max: self.n.saturating_sub(1) });
                }
                self.elements().filter(|&a| self.val(a) == r).collect()
            }
            ElementKind::Teichmuller => self.teich.clone(),
        })
    }

    pub fn census(&self) -> Census {
        let mut classes = vec![0u64; self.n as usize];
        for a in self.elements() {
            let r = self.val(a);
            if r < self.n {
                classes[r as usize] += 1;
            }
        }
        Census {
            size: self.size,
            units: classes[0],
            zero_divisors: classes[1..].iter().sum(),
            valuation_classes: classes[1..].to_vec(),
        }
    }

    /// `GR p=<p> n=<n> ell=<ell> h=<c0,...,1>`; the `h=` field is omitted for ell = 1.
    pub fn descriptor(&self) -> String {
        let mut s = format!("GR p={} n={} ell={}", self.p, self.n, self.ell);
        if self.ell > 1 {
            let h: Vec<String> = self.h.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!(" h={}", h.join(",")));
        }
        s
    }

    pub fn from_descriptor(line: &str) -> Result<Self, RingError> {
        let bad = || RingError::Parse { what: "ring descriptor", input: line.to_string() };
        let mut fields = line.split_whitespace();
        if fields.next() != Some("GR") {
            return Err(bad());
        }
        let (mut p, mut n, mut ell, mut h) = (None, None, None, None);
        for field in fields {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "p" => p = Some(value.parse::<u64>().map_err(|_| bad())?),
                "n" => n = Some(value.parse::<u32>().map_err(|_| bad())?),
                "ell" => ell = Some(value.parse::<usize>().map_err(|_| bad())?),
                "h" => {
                    let coeffs: Result<Vec<u64>, _> = value.split(',').map(|c| c.parse::<u64>()).collect();
                    h = Some(coeffs.map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        let (p, n, ell) = (p.ok_or_else(bad)?, n.ok_or_else(bad)?, ell.ok_or_else(bad)?);
        if ell > 1 && h.is_none() || ell == 1 && h.is_some() {
            return Err(bad());
        }
        GaloisRing::new(p, n, ell, h.as_deref())
    }

    /// Element literal: the integer for ell = 1, else comma-separated coefficients.
    pub fn format_elem(&self, a: Elem) -> String {
        let c: Vec<String> = self.coeffs(a).iter().map(|x| x.to_string()).collect();
        c.join(",")
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem, RingError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coeffs: Result<Vec<u64>, _> = s.split(',').map(|c| c.trim().parse::<u64>()).collect();
        let coeffs = coeffs.map_err(|_| RingError::Parse { what: "element", input: s.to_string() })?;
        self.element(&coeffs)
    }
}

fn multiplicative_order(ring: &GaloisRing, a: Elem) -> u64 {
    let mut x = a;
    let mut k = 1;
    while x != ring.one() {
        x = ring.mul(x, a);
        k += 1;
    }
    k
}
