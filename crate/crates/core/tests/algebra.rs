use cyclicdec::codes::BENCHMARK_CODES;
use cyclicdec::galois::{poly_divide, poly_lcm};
use cyclicdec::{BinaryPolynomial, CyclicCode, GaloisField};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = BinaryPolynomial> {
    prop::collection::vec(0u8..2, 0..24).prop_map(BinaryPolynomial::from_coeffs)
}

proptest! {
    #[test]
    fn division_round_trips(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = poly_divide(&a, &b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn lcm_is_divisible_by_both(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let l = poly_lcm(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(poly_divide(&l, &a).unwrap().1.is_zero());
        prop_assert!(poly_divide(&l, &b).unwrap().1.is_zero());
        prop_assert!(l.degree().unwrap() <= a.degree().unwrap() + b.degree().unwrap());
    }

    #[test]
    fn field_multiplication_distributes(m in 2u32..=10, a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let f = GaloisField::new(m).unwrap();
        let mask = (f.size() - 1) as u16;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    }

    #[test]
    fn encoded_messages_are_codewords(idx in 0usize..BENCHMARK_CODES.len(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let code = CyclicCode::from_id(BENCHMARK_CODES[idx].parse().unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let msg: Vec<u8> = (0..code.k).map(|_| rng.random_range(0..2)).collect();
        let cw = code.encode(&msg);
        prop_assert!(code.is_codeword(&cw));
        let mut shifted = cw.clone();
        shifted.rotate_right(1 + (seed as usize % (code.n - 1)));
        prop_assert!(code.is_codeword(&shifted));
    }
}

#[test]
fn generator_times_parity_is_x_n_plus_1() {
    for id in BENCHMARK_CODES {
        let c = CyclicCode::from_id(id.parse().unwrap()).unwrap();
        let prod = c.g.mul(&c.h);
        assert_eq!(prod, BinaryPolynomial::monomial(c.n).add(&BinaryPolynomial::one()), "{id}");
        assert!(c.generator.mul_transpose(&c.parity_cyclic).is_zero(), "{id}");
        assert_eq!(c.parity_std.rank(), c.n - c.k, "{id}");
        assert_eq!(c.parity_cyclic.rank(), c.n - c.k, "{id}");
    }
}
