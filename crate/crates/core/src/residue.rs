//! Polynomial arithmetic over the prime field F_p.
//!
//! Polynomials are coefficient vectors, constant term first, with no trailing
//! zeros (the zero polynomial is the empty vector). Used to pick and validate
//! defining polynomials and to invert units modulo p before Hensel lifting.

pub(crate) type FpPoly = Vec<u64>;

fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small.
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn reduce(a: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().map(|c| c % p).collect();
    trim(&mut out);
    out
}

fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let len = a.len().max(b.len());
    let mut out = vec![0; len];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem: FpPoly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv_mod_prime(*b.last().unwrap(), p);
    let mut quot = vec![0; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coef = rem.last().unwrap() * lead_inv % p;
        quot[shift] = coef;
        for (j, &bj) in b.iter().enumerate() {
            rem[shift + j] = (rem[shift + j] + p - coef * bj % p) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo the irreducible `h` by the extended Euclidean algorithm.
pub(crate) fn inverse_mod(a: &[u64], h: &[u64], p: u64) -> Option<FpPoly> {
    let (mut r0, mut r1) = (h.to_vec(), reduce(a, p));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_prime(r0[0], p);
    let out: FpPoly = s0.iter().map(|x| x * c % p).collect();
    Some(divrem(&out, h, p).1)
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(h: &[u64], p: u64) -> bool {
    let h = reduce(h, p);
    let deg = match h.len() {
        0 => return false,
        len => len - 1,
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for t in 0..count {
            let mut g = digits(t, p, d);
            g.push(1);
            if divrem(&h, &g, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Little-endian base-p digits of `t`, exactly `len` of them.
fn digits(mut t: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(t % p);
        t /= p;
    }
    out
}

/// The lexicographically smallest monic irreducible of degree `deg` over F_p,
/// comparing coefficient lists constant term first.
pub(crate) fn smallest_irreducible(p: u64, deg: usize) -> FpPoly {
    let count = p.pow(deg as u32);
    for t in 0..count {
        // big-endian digits so that c0 is the most significant position
        let mut coeffs = digits(t, p, deg);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 5));
    }

    #[test]
    fn smallest_irreducible_choices() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(smallest_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn inverse_in_f4() {
        let h = [1, 1, 1];
        let x = [0, 1];
        let inv = inverse_mod(&x, &h, 2).unwrap();
        // x * (x + 1) = x^2 + x = 1 mod h
        assert_eq!(inv, vec![1, 1]);
        assert!(inverse_mod(&[], &h, 2).is_none());
    }
}
