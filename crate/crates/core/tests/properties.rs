use proptest::prelude::*;

use tracecode::code::{codeword, defining_set};
use tracecode::Field;

fn small_field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(3u64, 3u32), (3, 4), (5, 3), (7, 2), (11, 1), (13, 3)])
        .prop_map(|(p, m)| Field::canonical(p, m).unwrap())
}

/// A field together with three element indices.
fn field_and_triple() -> impl Strategy<Value = (Field, u64, u64, u64)> {
    small_field().prop_flat_map(|f| {
        let q = f.q();
        (Just(f), 0..q, 0..q, 0..q)
    })
}

proptest! {
    #[test]
    fn field_axioms((f, i, j, k) in field_and_triple()) {
        let (x, y, z) = (f.element(i), f.element(j), f.element(k));
        prop_assert_eq!(f.add(&x, &y), f.add(&y, &x));
        prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
        prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
        prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(&x, f.q()), x);
    }

    #[test]
    fn trace_is_linear_and_frobenius_invariant((f, i, j, c) in field_and_triple()) {
        let (x, y) = (f.element(i), f.element(j));
        let c = f.fp(c as i64);
        let tx = f.trace(&x).value() as i64;
        prop_assert_eq!(f.trace(&f.add(&x, &y)), f.fp(tx + f.trace(&y).value() as i64));
        prop_assert_eq!(f.trace(&f.scale(c, &x)), f.fp(c.value() as i64 * tx));
        prop_assert_eq!(f.trace(&f.frobenius(&x)), f.trace(&x));
        prop_assert_eq!(f.trace(&x), f.trace_by_frobenius(&x));
    }

    #[test]
    fn quadratic_character_is_multiplicative((f, i, j, _k) in field_and_triple()) {
        let (x, y) = (f.element(i), f.element(j));
        prop_assert_eq!(
            f.quadratic_character(&f.mul(&x, &y)),
            f.quadratic_character(&x) * f.quadratic_character(&y)
        );
        prop_assert_eq!(f.quadratic_character(&f.square(&x)), if x.is_zero() { 0 } else { 1 });
    }

    #[test]
    fn codewords_are_linear_in_the_message((f, i, j, a) in field_and_triple()) {
        let p = f.p();
        let set = defining_set(&f, f.fp(a as i64));
        let (b1, b2) = (f.element(i), f.element(j));
        let c1 = codeword(&f, &set, &b1);
        let c2 = codeword(&f, &set, &b2);
        let expected: Vec<u32> = c1.iter().zip(&c2).map(|(&u, &v)| (u + v) % p).collect();
        prop_assert_eq!(codeword(&f, &set, &f.add(&b1, &b2)), expected);
        let lambda = f.fp(a as i64 + 1);
        let scaled: Vec<u32> = c1.iter().map(|&u| (u as u64 * lambda.value() as u64 % p as u64) as u32).collect();
        prop_assert_eq!(codeword(&f, &set, &f.scale(lambda, &b1)), scaled);
    }

    #[test]
    fn index_round_trip((f, i, _j, _k) in field_and_triple()) {
        prop_assert_eq!(f.index_of(&f.element(i)), i);
    }
}
