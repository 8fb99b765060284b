use num_complex::Complex64;
use proptest::prelude::*;
use rstwist::characters::{primitive_characters, DirichletCharacter};
use rstwist::forms::{build_delta, build_form, CuspForm};
use rstwist::sums::{self, CharSumInstance, ClosedForm, Convention};
use std::f64::consts::PI;
use std::sync::OnceLock;

fn delta() -> &'static CuspForm {
    static F: OnceLock<CuspForm> = OnceLock::new();
    F.get_or_init(|| build_delta(6_000).unwrap())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn unit_root(num: i64, den: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * num.rem_euclid(den) as f64 / den as f64)
}

fn ramanujan_direct(q: i64, n: i64) -> f64 {
    (0..q).filter(|&a| gcd(a, q) == 1).map(|a| unit_root(a * n, q).re).sum()
}

#[test]
fn ramanujan_grid() {
    for q in 1..=50i64 {
        for n in -50..=50 {
            let closed = sums::ramanujan_sum(q as u64, n) as f64;
            assert!((closed - ramanujan_direct(q, n)).abs() < 1e-9, "q {q} n {n}");
        }
    }
}

#[test]
fn char_sum_fixtures() {
    let chi = DirichletCharacter::new(3, 1).unwrap();
    let i_root3 = Complex64::new(0.0, 3f64.sqrt());
    for (conv, want) in [(Convention::Plus, i_root3), (Convention::Minus, -i_root3)] {
        let inst = CharSumInstance::new(chi.clone(), 2, 1, 1, conv).unwrap();
        assert!((sums::char_sum_bruteforce(&inst).unwrap() - want).norm() < 1e-12);
        assert!((sums::char_sum_closed(&inst).unwrap() - want).norm() < 1e-12);
    }
    let inst = CharSumInstance::new(chi.clone(), 2, 1, 1, Convention::Plus).unwrap();
    let printed = sums::char_sum_closed_variant(&inst, ClosedForm::LemmaStatement).unwrap();
    assert!((printed - i_root3).norm() < 1e-12);
}

/// `sum*_{beta mod p} sum*_{gamma mod q} chibar(beta) e((m cbar - n gamma p) / pq)`
/// with `c = gamma p + s beta q`, enumerated over every `x mod pq`.
fn char_sum_oracle(chi: &DirichletCharacter, q: i64, m: i64, n: i64, s: i64) -> Complex64 {
    let p = chi.modulus() as i64;
    let pq = p * q;
    let mut acc = Complex64::new(0.0, 0.0);
    for beta in 1..p {
        for gamma in (0..q).filter(|&g| gcd(g, q) == 1) {
            let c = (gamma * p + s * beta * q).rem_euclid(pq);
            let cbar = (1..=pq).find(|&x| (x * c) % pq == 1 % pq).unwrap_or(0);
            acc += chi.conjugate().chi(beta) * unit_root(m * cbar - n * gamma * p, pq);
        }
    }
    acc
}

#[test]
fn brute_force_matches_enumeration_oracle() {
    for p in [3u64, 5, 7] {
        for chi in primitive_characters(p).unwrap() {
            for q in [1i64, 2, 4, 8] {
                for (m, n) in [(1, 1), (2, 5), (7, 3), (12, 12)] {
                    for conv in [Convention::Plus, Convention::Minus] {
                        let inst = CharSumInstance::new(chi.clone(), q as u64, m, n, conv).unwrap();
                        let got = sums::char_sum_bruteforce(&inst).unwrap();
                        let want = char_sum_oracle(&chi, q, m, n, conv.sign());
                        assert!(
                            (got - want).norm() < 1e-10,
                            "p {p} chi {} q {q} m {m} n {n} {conv}",
                            chi.index()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_on_full_grid() {
    let mut cases = 0;
    for p in [3u64, 5, 7] {
        for chi in primitive_characters(p).unwrap() {
            for q in [1u64, 2, 3, 4, 6, 8, 9, 12].into_iter().filter(|q| q % p != 0) {
                for m in 1..=12 {
                    for n in 1..=12 {
                        for conv in [Convention::Plus, Convention::Minus] {
                            let inst = CharSumInstance::new(chi.clone(), q, m, n, conv).unwrap();
                            let brute = sums::char_sum_bruteforce(&inst).unwrap();
                            let closed = sums::char_sum_closed(&inst).unwrap();
                            assert!((brute - closed).norm() <= 1e-9 * brute.norm().max(1.0));
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(cases, 19_584);
}

fn bump_unit(x: f64) -> f64 {
    let step = |t: f64| {
        let b = |t: f64| if t <= 0.0 { 0.0 } else { (-1.0 / t).exp() };
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else {
            b(t) / (b(t) + b(1.0 - t))
        }
    };
    match x {
        x if x <= 0.5 || x >= 3.0 => 0.0,
        x if x < 1.0 => step(2.0 * (x - 0.5)),
        x if x <= 2.0 => 1.0,
        x => step(3.0 - x),
    }
}

fn shifted_oracle(g: &CuspForm, q1: i64, q1p: i64, shift: i64, m: u64) -> f64 {
    let mf = m as f64;
    let l = g.lambdas();
    let mut acc = 0.0;
    for u in 1..=3 * m as i64 {
        for v in 1..=3 * m as i64 {
            if q1p * u - q1 * v == shift {
                acc += l[u as usize] * l[v as usize] * bump_unit(u as f64 / mf) * bump_unit(v as f64 / mf);
            }
        }
    }
    acc
}

#[test]
fn shifted_convolution_fixture() {
    let got = sums::shifted_convolution(delta(), 2, 3, 0, 40).unwrap();
    let want = shifted_oracle(delta(), 2, 3, 0, 40);
    assert!((got - want).abs() < 1e-13);
    assert!(sums::shifted_convolution(delta(), 2, 3, 0, 0).unwrap() == 0.0);
    let bound = sums::shifted_convolution_bound(2, 3, 40, 7.0 / 64.0);
    assert!((bound - 200f64.powf(0.5 + 7.0 / 64.0)).abs() < 1e-9);
}

#[test]
fn distinguishing_index() {
    let f = build_delta(100).unwrap();
    let g = build_form(16, 100).unwrap();
    for p in [3u64, 5, 7, 11] {
        for chi in primitive_characters(p).unwrap() {
            assert_eq!(sums::first_distinguishing_index(&f, &g, &chi, 100).unwrap(), Some(2));
            let same = sums::first_distinguishing_index(&f, &f, &chi, 100).unwrap().unwrap();
            assert!(same <= p);
        }
    }
}

#[test]
fn short_twisted_sum_matches_loop() {
    let chi = DirichletCharacter::new(11, 3).unwrap();
    let m0 = (11f64.powf(2.1)).ceil() as u64;
    let got = sums::short_twisted_sum(delta(), &chi, m0).unwrap();
    let want: Complex64 = (1..3 * m0)
        .map(|m| chi.chi(m as i64) * delta().lambdas()[m as usize] * bump_unit(m as f64 / m0 as f64))
        .sum();
    assert!((got - want).norm() < 1e-10 * want.norm().max(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ramanujan_random(q in 1i64..400, n in -5000i64..5000) {
        prop_assert!((sums::ramanujan_sum(q as u64, n) as f64 - ramanujan_direct(q, n)).abs() < 1e-8);
    }

    #[test]
    fn shifted_matches_double_loop(q1 in 1i64..6, q1p in 1i64..6, shift in -60i64..60, m in 1u64..120) {
        let got = sums::shifted_convolution(delta(), q1 as u64, q1p as u64, shift, m).unwrap();
        prop_assert!((got - shifted_oracle(delta(), q1, q1p, shift, m)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_random(pi in 0usize..4, j in 0u64..100, q in 1u64..30, m in -40i64..40, n in -40i64..40, plus in any::<bool>()) {
        let p = [3u64, 5, 7, 11][pi];
        prop_assume!(q % p != 0);
        let chi = DirichletCharacter::new(p, 1 + j % (p - 2)).unwrap();
        let conv = if plus { Convention::Plus } else { Convention::Minus };
        let inst = CharSumInstance::new(chi, q, m, n, conv).unwrap();
        let brute = sums::char_sum_bruteforce(&inst).unwrap();
        prop_assert!((brute - sums::char_sum_closed(&inst).unwrap()).norm() <= 1e-9 * brute.norm().max(1.0));
    }
}
