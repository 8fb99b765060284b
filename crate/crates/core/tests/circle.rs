use num_complex::Complex64;
use proptest::prelude::*;
use rstwist::characters::DirichletCharacter;
use rstwist::circle::{build_family, build_product_family, i_tilde, i_tilde_mass, l2_error, s_direct, s_tilde};
use rstwist::forms::{build_delta, build_form};

fn bump(x: f64) -> f64 {
    if x <= 1.0 || x >= 2.0 {
        0.0
    } else {
        let u = 2.0 * x - 3.0;
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

#[test]
fn s_direct_golden_p3_n4() {
    let d = build_delta(20).unwrap();
    let chi = DirichletCharacter::new(3, 1).unwrap();
    let got = s_direct(&d, &d, &chi, 4).unwrap();
    let tau = |n: u64| [0.0, 1.0, -24.0, 252.0, -1472.0, 4830.0, -6048.0, -16744.0][n as usize];
    let lambda = |n: u64| tau(n) / (n as f64).powf(5.5);
    let plain: Complex64 = (5..=7)
        .map(|n| chi.chi(n as i64) * lambda(n) * lambda(n) * bump(n as f64 / 4.0))
        .sum();
    assert!((got - plain).norm() < 1e-15);
    assert!((got.re + 0.240_745_710_038_668_5).abs() < 1e-15 && got.im.abs() < 1e-15);
}

#[test]
fn unit_family_reproduces_direct_sum() {
    let f = build_delta(40).unwrap();
    let g = build_form(16, 40).unwrap();
    let chi = DirichletCharacter::new(5, 1).unwrap();
    let fam = build_family(5, 1, 1, 0.5).unwrap();
    for n in [4u64, 10] {
        let direct = s_direct(&f, &g, &chi, n).unwrap();
        let tilde = s_tilde(&f, &g, &chi, n, &fam, 64).unwrap();
        assert!((direct - tilde).norm() < 1e-10 * direct.norm().max(1.0), "N = {n}");
    }
}

#[test]
fn approximant_fixtures() {
    let fam = build_family(5, 2, 3, 0.05).unwrap();
    assert_eq!(fam.l(), 3);
    assert!((i_tilde(&fam, 1.0 / 3.0) - 1.0 / 0.3).abs() < 1e-12);
    assert_eq!(i_tilde(&fam, 0.25), 0.0);
    let unit = build_family(3, 1, 1, 0.5).unwrap();
    assert!((l2_error(&unit) - 1.0).abs() < 1e-12);
    let fam = build_family(7, 2, 10, 0.01).unwrap();
    assert_eq!(fam.moduli(), &[2, 3, 4, 5, 6, 8, 9, 10]);
    assert_eq!(fam.l(), 25);
}

#[test]
fn product_family_centres() {
    let fam = build_product_family(11, 1.0 / 14.0, 1e-3).unwrap();
    let ps = fam.product_structure().unwrap();
    let want = [
        11f64.powf(0.2 + 1.0 / 140.0),
        11f64.powf(0.4 + 1.0 / 70.0),
        11f64.powf(0.4 + 1.0 / 70.0),
    ];
    for (c, w) in ps.centers.iter().zip(want) {
        assert!((c - w).abs() < 1e-12);
    }
    let ratio = fam.l() as f64 / (fam.q_scale() * fam.q_scale());
    assert!(ratio > 0.0 && ratio <= 1.0);
}

#[test]
fn l2_error_matches_fine_riemann_sum() {
    let fam = build_family(7, 3, 6, 0.02).unwrap();
    let steps = 400_000;
    let h = 2.0 / steps as f64;
    let riemann: f64 = (0..steps)
        .map(|i| {
            let x = -0.5 + (i as f64 + 0.5) * h;
            let ind = if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
            (ind - i_tilde(&fam, x)).powi(2) * h
        })
        .sum();
    assert!((riemann - l2_error(&fam)).abs() < 1e-3 * riemann);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn approximant_has_unit_mass(q_min in 1u64..15, width in 0u64..15, delta in 1e-4f64..0.2) {
        let fam = build_family(11, q_min, q_min + width, delta).unwrap();
        prop_assert!((i_tilde_mass(&fam) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn approximant_is_a_scaled_count(q_min in 1u64..10, width in 0u64..10, delta in 1e-3f64..0.1, x in -0.2f64..1.2) {
        let fam = build_family(13, q_min, q_min + width, delta).unwrap();
        let v = i_tilde(&fam, x) * 2.0 * delta * fam.l() as f64;
        prop_assert!(v >= 0.0 && (v - v.round()).abs() < 1e-9);
    }
}
