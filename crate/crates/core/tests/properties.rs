use instanton_core::action::evaluate_action;
use instanton_core::background::{
    boundary_size, size_for_energy, solve_energy_for_size, Branch, ClassicalPath, KinkPath,
};
use instanton_core::elliptic::{jacobi_sn_cn_dn, EllipticModulus};
use instanton_core::model::potential;
use instanton_core::propagator::amplitude_finite;
use instanton_core::DoubleWellParams;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn jacobi_identities_on_ten_thousand_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let u: f64 = rng.gen_range(-40.0..40.0);
        let s2: f64 = rng.gen_range(0.0..=1.0);
        let m = EllipticModulus::from_s_squared(s2).unwrap();
        let t = jacobi_sn_cn_dn(u, &m);
        assert!(
            (t.sn * t.sn + t.cn * t.cn - 1.0).abs() < 1e-12,
            "u={u} s2={s2}"
        );
        assert!(
            (t.dn * t.dn + s2 * t.sn * t.sn - 1.0).abs() < 1e-12,
            "u={u} s2={s2}"
        );
    }
}

fn params() -> impl Strategy<Value = DoubleWellParams> {
    (0.2f64..5.0, 0.2f64..5.0, 0.1f64..5.0)
        .prop_map(|(m, w, d)| DoubleWellParams::new(m, w, d, 1.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn kink_is_odd_monotone_and_bounded(p in params(), t in 0.01f64..20.0) {
        let k = KinkPath::new(p);
        let a = p.well_position();
        let tau = t / p.omega();
        let (x, y) = (k.position(tau), k.position(-tau));
        prop_assert_eq!(x, -y);
        prop_assert!(x > 0.0 && x <= a);
        prop_assert!(k.position(1.01 * tau) >= x);
        prop_assert!(k.velocity(tau) >= 0.0);
    }

    #[test]
    fn solved_instanton_invariants(p in params(), wl in 2.0f64..25.0, frac in 0.05f64..0.95) {
        let size = wl / p.omega();
        let f = solve_energy_for_size(&p, size).unwrap();
        let a = p.well_position();
        prop_assert!(f.energy > 0.0);
        prop_assert!(f.period_ratio() < 1.0);
        prop_assert!((f.position(0.5 * size) - a).abs() < 1e-10 * a);

        let t = frac * 0.5 * size;
        prop_assert_eq!(f.position(t), -f.position(-t));

        // first integral against the larger of E and the local energy scale
        let v = f.velocity(t);
        let kin = 0.5 * p.mass() * v * v;
        let scale = f.energy.max(kin + potential(&p, f.position(t)));
        prop_assert!((kin - potential(&p, f.position(t)) - f.energy).abs() < 1e-8 * scale);

        let h = 1e-5 * size;
        let fd = (f.position(t + h) - f.position(t - h)) / (2.0 * h);
        prop_assert!((fd - v).abs() < 1e-6 * v.abs().max(1e-3 * a * p.omega()));
    }

    #[test]
    fn branches_share_the_boundary_size(p in params(), log_e in -20.0f64..1.0) {
        let e = 10f64.powf(log_e) * p.energy_scale();
        let l = size_for_energy(&p, e).unwrap();
        let l1 = boundary_size(&p, e, Branch::First).unwrap();
        let l2 = boundary_size(&p, e, Branch::Second).unwrap();
        prop_assert!((l1 - l).abs() < 1e-8 * l, "{} {} {}", l, l1, l2);
        prop_assert!((l2 - l).abs() < 1e-8 * l, "{} {} {}", l, l1, l2);
    }

    #[test]
    fn first_integral_over_the_window(p in params(), wl in 2.0f64..10.0) {
        let size = wl / p.omega();
        let f = solve_energy_for_size(&p, size).unwrap();
        let r = evaluate_action(&f, size).unwrap();
        prop_assert!(r.action > 0.0);
        let el = f.energy * size;
        prop_assert!((r.kinetic - r.potential - el).abs() < 1e-6 * el, "{} vs {}", r.kinetic - r.potential, el);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn tunneling_frequency_is_positive_and_finite(wl in 3.0f64..25.0) {
        let p = DoubleWellParams::default();
        let r = amplitude_finite(&p, wl).unwrap();
        prop_assert!(r.omega_tunnel > 0.0 && r.omega_tunnel.is_finite());
        prop_assert!(r.amplitude.unwrap() > 0.0);
        let product: f64 = r.ledger.iter().map(|e| e.value).product();
        prop_assert!((product / r.amplitude.unwrap() - 1.0).abs() < 1e-12);
    }
}
