use std::sync::{Arc, OnceLock};

use grmin::codes::{build_code, is_minimal_codeword_criterion, GeneratorMultiset};
use grmin::linalg::{dot, row_standard_form, scale, RingMatrix};
use grmin::{Elem, GaloisRing};
use proptest::prelude::*;

/// Z4, Z8, Z9, Z25, GR(4,2), GR(8,2), GR(9,2) and a large ring without tables.
fn rings() -> &'static [Arc<GaloisRing>] {
    static RINGS: OnceLock<Vec<Arc<GaloisRing>>> = OnceLock::new();
    RINGS.get_or_init(|| {
        [(2, 2, 1), (2, 3, 1), (3, 2, 1), (5, 2, 1), (2, 2, 2), (2, 3, 2), (3, 2, 2), (7, 3, 2)]
            .iter()
            .map(|&(p, n, ell)| Arc::new(GaloisRing::new(p, n, ell, None).unwrap()))
            .collect()
    })
}

fn ring_strategy() -> impl Strategy<Value = Arc<GaloisRing>> {
    (0..rings().len()).prop_map(|i| rings()[i].clone())
}

fn elem(ring: &GaloisRing, seed: u64) -> Elem {
    ring.elements().nth((seed % ring.size()) as usize).unwrap()
}

fn ring_and_elems(count: usize) -> impl Strategy<Value = (Arc<GaloisRing>, Vec<Elem>)> {
    (ring_strategy(), prop::collection::vec(any::<u64>(), count)).prop_map(|(ring, seeds)| {
        let elems = seeds.iter().map(|&s| elem(&ring, s)).collect();
        (ring, elems)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ring_axioms((ring, e) in ring_and_elems(3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(ring.add(a, b), ring.add(b, a));
        prop_assert_eq!(ring.mul(a, b), ring.mul(b, a));
        prop_assert_eq!(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
        prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        prop_assert_eq!(ring.mul(a, ring.one()), a);
        prop_assert_eq!(ring.sub(ring.add(a, b), b), a);
    }

    #[test]
    fn units_and_valuations((ring, e) in ring_and_elems(2)) {
        let (a, b) = (e[0], e[1]);
        prop_assert_eq!(ring.is_unit(a), ring.inverse(a).is_ok());
        if let Ok(inv) = ring.inverse(a) {
            prop_assert_eq!(ring.mul(a, inv), ring.one());
        }
        if !a.is_zero() {
            let form = ring.valuation(a);
            prop_assert!(ring.is_unit(form.unit_part.unwrap()));
            prop_assert_eq!(ring.mul(ring.p_pow(form.r), form.unit_part.unwrap()), a);
        }
        let ab = ring.mul(a, b);
        if !ab.is_zero() {
            prop_assert_eq!(ring.val(ab), ring.val(a) + ring.val(b));
        }
    }

    #[test]
    fn teichmuller_digits_round_trip((ring, e) in ring_and_elems(1)) {
        let digits = ring.teichmuller_decompose(e[0]);
        prop_assert_eq!(digits.len(), ring.n() as usize);
        prop_assert!(digits.iter().all(|d| ring.teichmuller().contains(d)));
        prop_assert_eq!(ring.teichmuller_recompose(&digits), e[0]);
    }

    #[test]
    fn literals_round_trip((ring, e) in ring_and_elems(1)) {
        prop_assert_eq!(ring.parse_elem(&ring.format_elem(e[0])).unwrap(), e[0]);
    }

    #[test]
    fn standard_form_contains_rows_and_combinations((ring, e) in ring_and_elems(9)) {
        let rows = vec![e[0..3].to_vec(), e[3..6].to_vec()];
        let form = row_standard_form(&ring, &RingMatrix::new(rows.clone(), 3).unwrap());
        prop_assert!(rows.iter().all(|r| form.contains(&ring, r)));
        let combo: Vec<Elem> = (0..3).map(|j| ring.add(ring.mul(e[6], rows[0][j]), ring.mul(e[7], rows[1][j]))).collect();
        prop_assert!(form.contains(&ring, &combo));
        prop_assert!(form.size_exponent() <= 2 * ring.n() as u64);
    }

    /// Multiplying the message by a unit does not change minimality.
    #[test]
    fn criterion_is_unit_invariant((ring, e) in ring_and_elems(16).prop_filter("small", |(r, _)| r.size() <= 16)) {
        let cols: Vec<Vec<Elem>> = e[..12].chunks(2).map(|c| c.to_vec()).collect();
        let gens = GeneratorMultiset::new(2, cols).unwrap();
        let v = e[12..14].to_vec();
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let base = is_minimal_codeword_criterion(&ring, &v, &gens).unwrap();
        for u in ring.elements().filter(|&u| ring.is_unit(u)) {
            prop_assert_eq!(is_minimal_codeword_criterion(&ring, &scale(&ring, u, &v), &gens).unwrap(), base);
        }
        if let Ok(code) = build_code(ring.clone(), gens) {
            let c = code.encode(&v).unwrap();
            prop_assert!(c.iter().zip(code.gens().columns()).all(|(&ci, col)| ci == dot(&ring, &v, col)));
        }
    }
}
