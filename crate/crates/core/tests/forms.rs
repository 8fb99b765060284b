use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rstwist::forms::{build_delta, build_form, build_form_capped, CuspForm, SUPPORTED_WEIGHTS};
use rstwist::Error;
use std::sync::OnceLock;

const ORACLE_LEN: usize = 300;

fn mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `q prod (1 - q^n)^24` by repeated multiplication by `(1 - q^n)`.
fn delta_oracle(len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::one();
    for n in 1..len {
        for _ in 0..24 {
            for i in (n..len).rev() {
                let t = p[i - n].clone();
                p[i] -= t;
            }
        }
    }
    let mut out = vec![BigInt::zero(); len];
    out[1..len].clone_from_slice(&p[..len - 1]);
    out
}

fn eisenstein(c: i64, power: u32, len: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); len];
    e[0] = BigInt::one();
    for (n, slot) in e.iter_mut().enumerate().skip(1) {
        let sigma: BigInt = (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(power)).sum();
        *slot = sigma * c;
    }
    e
}

fn form_oracle(weight: u32, len: usize) -> Vec<BigInt> {
    let (a, b) = match weight {
        12 => (0, 0),
        16 => (1, 0),
        18 => (0, 1),
        20 => (2, 0),
        22 => (1, 1),
        26 => (2, 1),
        _ => unreachable!(),
    };
    let mut f = delta_oracle(len);
    for _ in 0..a {
        f = mul(&f, &eisenstein(240, 3, len), len);
    }
    for _ in 0..b {
        f = mul(&f, &eisenstein(-504, 5, len), len);
    }
    f
}

fn delta_10k() -> &'static CuspForm {
    static F: OnceLock<CuspForm> = OnceLock::new();
    F.get_or_init(|| build_delta(10_000).unwrap())
}

fn weight16_10k() -> &'static CuspForm {
    static F: OnceLock<CuspForm> = OnceLock::new();
    F.get_or_init(|| build_form(16, 10_000).unwrap())
}

#[test]
fn every_weight_matches_product_oracle() {
    for k in SUPPORTED_WEIGHTS {
        let f = build_form(k, ORACLE_LEN - 1).unwrap();
        let want = form_oracle(k, ORACLE_LEN);
        assert_eq!(f.coefficients()[..ORACLE_LEN], want[..], "weight {k}");
    }
}

#[test]
fn small_fixtures() {
    let d = build_delta(10).unwrap();
    assert_eq!(d.coefficient(2).unwrap(), &BigInt::from(-24));
    assert_eq!(d.coefficient(3).unwrap(), &BigInt::from(252));
    assert_eq!(d.coefficient(4).unwrap(), &BigInt::from(-1472));
    assert_eq!(d.coefficient(6).unwrap(), &BigInt::from(-6048));
    assert!((d.lambda(2).unwrap() + 0.530_330_085_9).abs() < 1e-10);
    assert_eq!(build_form(16, 5).unwrap().coefficient(2).unwrap(), &BigInt::from(216));
    assert_eq!(build_form(18, 5).unwrap().coefficient(2).unwrap(), &BigInt::from(-528));
}

#[test]
fn errors_name_the_problem() {
    assert!(matches!(build_form(14, 10), Err(Error::UnsupportedWeight(14))));
    assert!(matches!(
        build_form_capped(12, 100, 50),
        Err(Error::TableCapExceeded { .. })
    ));
    let d = build_delta(10).unwrap();
    assert!(matches!(
        d.require(11),
        Err(Error::TableTooShort {
            required: 11,
            available: 10
        })
    ));
}

#[test]
fn tau_congruence_mod_691() {
    let d = delta_10k();
    let m = BigInt::from(691);
    for n in 1..=1000u64 {
        let sigma: BigInt = (1..=n).filter(|x| n % x == 0).map(|x| BigInt::from(x).pow(11)).sum();
        assert!(
            (&d.coefficients()[n as usize] - sigma).mod_floor(&m).is_zero(),
            "n = {n}"
        );
    }
}

#[test]
fn deligne_bound_up_to_ten_thousand() {
    for f in [delta_10k(), weight16_10k()] {
        for n in 1..=10_000u64 {
            let d = (1..=n)
                .filter(|x| x * x <= n && n % x == 0)
                .map(|x| if x * x == n { 1 } else { 2 })
                .sum::<u64>();
            assert!(
                f.lambdas()[n as usize].abs() <= d as f64 + 1e-12,
                "weight {} n {n}",
                f.weight()
            );
        }
    }
}

#[test]
fn hecke_relations_exhaustive() {
    for f in [delta_10k(), weight16_10k()] {
        let a = f.coefficients();
        for m in 2..=100usize {
            for n in (m + 1)..=10_000 / m {
                if m.gcd(&n) == 1 {
                    assert_eq!(&a[m] * &a[n], a[m * n], "m {m} n {n}");
                }
            }
        }
        let lk = |l: usize| BigInt::from(l).pow(f.weight() - 1);
        for l in [2usize, 3, 5, 7, 11, 13, 97] {
            let mut pows = vec![1usize, l];
            while pows.last().unwrap() * l <= 10_000 {
                pows.push(pows.last().unwrap() * l);
            }
            for j in 1..pows.len() - 1 {
                assert_eq!(a[pows[j + 1]], &a[l] * &a[pows[j]] - lk(l) * &a[pows[j - 1]]);
            }
        }
    }
}

proptest! {
    #[test]
    fn multiplicative_on_coprime_pairs(m in 1usize..100, n in 1usize..100) {
        prop_assume!(m.gcd(&n) == 1);
        let a = delta_10k().coefficients();
        prop_assert_eq!(&a[m] * &a[n], a[m * n].clone());
    }

    #[test]
    fn prime_power_recursion(idx in 0usize..25, j in 1u32..6) {
        let primes = [2usize, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
        let l = primes[idx];
        prop_assume!(l.pow(j + 1) <= 10_000);
        for f in [delta_10k(), weight16_10k()] {
            let a = f.coefficients();
            let lk = BigInt::from(l).pow(f.weight() - 1);
            let want = &a[l] * &a[l.pow(j)] - lk * &a[l.pow(j - 1)];
            prop_assert_eq!(a[l.pow(j + 1)].clone(), want);
        }
    }

    #[test]
    fn lambda_is_normalized_coefficient(n in 1usize..10_000) {
        let f = weight16_10k();
        let a = f.coefficients()[n].clone();
        let want = a.to_f64().unwrap() / (n as f64).powf(7.5);
        let got = f.lambdas()[n];
        prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        prop_assert_eq!(got.is_sign_negative(), a.is_negative());
    }
}
