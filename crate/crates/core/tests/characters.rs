use num_complex::Complex64;
use proptest::prelude::*;
use rstwist::characters::{enumerate_characters, primitive_characters, primitive_root, DirichletCharacter};
use std::f64::consts::PI;

const PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 101];

fn order(g: u64, p: u64) -> u64 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
    }
    k
}

#[test]
fn least_primitive_roots() {
    for p in PRIMES {
        let g = primitive_root(p).unwrap();
        assert_eq!(order(g, p), p - 1);
        assert!((2..g).all(|h| order(h, p) < p - 1), "p = {p}");
    }
    assert_eq!(
        (
            primitive_root(3).unwrap(),
            primitive_root(5).unwrap(),
            primitive_root(7).unwrap()
        ),
        (2, 2, 3)
    );
}

#[test]
fn group_sizes() {
    for p in PRIMES {
        assert_eq!(enumerate_characters(p).unwrap().len() as u64, p - 1);
        assert_eq!(primitive_characters(p).unwrap().len() as u64, p - 2);
    }
}

#[test]
fn gauss_sum_fixtures() {
    let t3 = DirichletCharacter::new(3, 1).unwrap().gauss_sum().unwrap();
    assert!((t3 - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
    let t5 = DirichletCharacter::new(5, 2).unwrap().gauss_sum().unwrap();
    assert!((t5 - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
    assert!((DirichletCharacter::new(5, 2).unwrap().chi(2) + 1.0).norm() < 1e-15);
}

fn any_character() -> impl Strategy<Value = DirichletCharacter> {
    (0..PRIMES.len(), 0u64..1000).prop_map(|(i, j)| {
        let p = PRIMES[i];
        DirichletCharacter::new(p, j % (p - 1)).unwrap()
    })
}

fn primitive_character() -> impl Strategy<Value = DirichletCharacter> {
    (0..PRIMES.len(), 0u64..1000).prop_map(|(i, j)| {
        let p = PRIMES[i];
        DirichletCharacter::new(p, 1 + j % (p - 2)).unwrap()
    })
}

proptest! {
    #[test]
    fn completely_multiplicative(chi in any_character(), m in -500i64..500, n in -500i64..500) {
        prop_assert!((chi.chi(m * n) - chi.chi(m) * chi.chi(n)).norm() < 1e-12);
    }

    #[test]
    fn periodic_and_unimodular(chi in any_character(), n in -1000i64..1000) {
        let p = chi.modulus() as i64;
        prop_assert!((chi.chi(n + p) - chi.chi(n)).norm() < 1e-12);
        if n % p == 0 {
            prop_assert_eq!(chi.chi(n), Complex64::new(0.0, 0.0));
        } else {
            prop_assert!((chi.chi(n).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn values_from_discrete_log(chi in any_character(), n in 1i64..1000) {
        let p = chi.modulus();
        prop_assume!(!(n as u64).is_multiple_of(p));
        let g = chi.generator();
        let mut x = 1u64;
        let mut k = 0u64;
        while x != n as u64 % p {
            x = x * g % p;
            k += 1;
        }
        let angle = 2.0 * PI * (chi.index() * k % (p - 1)) as f64 / (p - 1) as f64;
        prop_assert!((chi.chi(n) - Complex64::from_polar(1.0, angle)).norm() < 1e-12);
    }

    #[test]
    fn nontrivial_characters_sum_to_zero(chi in primitive_character()) {
        let s: Complex64 = (0..chi.modulus() as i64).map(|n| chi.chi(n)).sum();
        prop_assert!(s.norm() < 1e-10);
    }

    #[test]
    fn conjugate_is_inverse(chi in any_character(), n in 1i64..1000) {
        prop_assume!(!(n as u64).is_multiple_of(chi.modulus()));
        prop_assert!((chi.chi(n) * chi.conjugate().chi(n) - 1.0).norm() < 1e-12);
        prop_assert!((chi.chi(-1) - chi.parity() as f64).norm() < 1e-12);
    }

    #[test]
    fn gauss_sum_identities(chi in primitive_character()) {
        let p = chi.modulus() as f64;
        let t = chi.gauss_sum().unwrap();
        let tb = chi.conjugate().gauss_sum().unwrap();
        prop_assert!((t.norm_sqr() - p).abs() < 1e-10 * p);
        prop_assert!((t * tb - chi.parity() as f64 * p).norm() < 1e-10 * p);
    }

    #[test]
    fn additive_expansion(chi in primitive_character(), m in -300i64..300) {
        prop_assert!((chi.additive_expansion(m).unwrap() - chi.chi(m)).norm() < 1e-10);
    }
}
