use std::f64::consts::PI;

use magchain_core::continuum::{finite_part_power, lattice_sum};
use magchain_core::discrete::{per_magnet_energies, total_energy};
use magchain_core::geometry::{
    build_circular_ring, read_chain_csv, write_chain_csv, FourierMode, MagnetSpec, RingPerturbation,
};
use magchain_core::harness::{Check, ExperimentKind, ResultRecord, RowKind};
use magchain_core::ring::{e_loc, e_nonloc, mode_frequencies, NonlocalMethod};
use magchain_core::{ChainConfig, Topology, Vec3};
use proptest::prelude::*;

fn unit(theta: f64, phi: f64) -> Vec3 {
    Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
}

fn angles() -> impl Strategy<Value = (f64, f64)> {
    (0.0..PI, 0.0..2.0 * PI)
}

/// Open chain built as a self-avoiding-ish random walk with random moments.
fn random_chain() -> impl Strategy<Value = ChainConfig> {
    (2usize..=32)
        .prop_flat_map(|len| {
            (
                prop::collection::vec(angles(), len - 1),
                prop::collection::vec(angles(), len),
            )
        })
        .prop_filter_map("walk folds back on itself", |(steps, moments)| {
            let n = steps.len();
            let h = 1.0 / n as f64;
            let mut p = vec![Vec3::ZERO];
            for &(t, f) in &steps {
                let last = *p.last().unwrap();
                p.push(last + unit(t, f) * h);
            }
            for i in 0..p.len() {
                for j in i + 2..p.len() {
                    if (p[i] - p[j]).norm() < 0.5 * h {
                        return None;
                    }
                }
            }
            let m = moments.iter().map(|&(t, f)| unit(t, f)).collect();
            ChainConfig::new(n, Topology::Open, p, m).ok()
        })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_is_half_the_per_magnet_sum(c in random_chain()) {
        let total = total_energy(&c).unwrap();
        let per: f64 = per_magnet_energies(&c).unwrap().iter().sum();
        prop_assert!(rel(total, 0.5 * per) < 1e-12);
    }

    #[test]
    fn energy_is_invariant_under_rigid_motion(
        c in random_chain(),
        axis in angles(),
        angle in -PI..PI,
        shift in prop::array::uniform3(-5.0..5.0f64),
    ) {
        let a = unit(axis.0, axis.1);
        let t = Vec3::from_array(shift);
        let moved = c.map_rigid(|p| p.rotate_about(a, angle) + t, |m| m.rotate_about(a, angle)).unwrap();
        prop_assert!(rel(total_energy(&c).unwrap(), total_energy(&moved).unwrap()) < 1e-12);
    }

    #[test]
    fn energy_is_invariant_under_global_flip(c in random_chain()) {
        let flipped = c.with_moments(c.moments().iter().map(|m| -*m).collect()).unwrap();
        prop_assert!(rel(total_energy(&c).unwrap(), total_energy(&flipped).unwrap()) < 1e-12);
    }

    #[test]
    fn chain_csv_round_trips(c in random_chain()) {
        let mut buf = Vec::new();
        write_chain_csv(&c, &mut buf).unwrap();
        let back = read_chain_csv(&buf[..], c.n(), Topology::Open).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn lattice_sums_are_periodic_with_parity(x in 0.01..0.99f64, shift in -3i32..3) {
        let xs = x + shift as f64;
        for k in 1..=3 {
            let a = lattice_sum(k, x).unwrap().value;
            let b = lattice_sum(k, xs).unwrap().value;
            let mirror = lattice_sum(k, 1.0 - x).unwrap().value;
            prop_assert!(rel(a, b) < 1e-9);
            let parity = if k == 2 { -1.0 } else { 1.0 };
            prop_assert!(rel(a, parity * mirror) < 1e-12);
        }
    }

    #[test]
    fn cubic_finite_part_matches_closed_form(s in 0.05..0.95f64) {
        let v = finite_part_power(s, 0.0, 1.0, 3).unwrap();
        let exact = -0.5 / (s * s) - 0.5 / ((1.0 - s) * (1.0 - s));
        prop_assert!((v - exact).abs() < 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn ring_functionals_are_phase_invariant(
        a2 in -1.0..1.0f64, b2 in -1.0..1.0f64, a3 in -1.0..1.0f64, c in 0.0..2.0 * PI,
    ) {
        let p = RingPerturbation::new(0.1, vec![
            FourierMode { k: 2, a: a2, b: b2 },
            FourierMode { k: 3, a: a3, b: 0.0 },
        ]).unwrap();
        let q = p.shifted(c);
        prop_assert!(rel(e_loc(&p).quadratic, e_loc(&q).quadratic) < 1e-10);
        let s1 = e_nonloc(&p, NonlocalMethod::Simplified).unwrap().quadratic;
        let s2 = e_nonloc(&q, NonlocalMethod::Simplified).unwrap().quadratic;
        prop_assert!(rel(s1, s2) < 1e-10);
    }

    #[test]
    fn spectrum_ratios_are_exact(n in 3usize..200, a in 1e-4..1e-2f64, b in 0.1..2.0f64, rho in 1e3..1e4f64) {
        let spec = MagnetSpec::new(a, b, rho, MagnetSpec::vacuum_permeability()).unwrap();
        let s = mode_frequencies(&spec, n, 6).unwrap();
        let w2 = s.omega(2).unwrap();
        for k in 2..=6usize {
            let kf = k as f64;
            let expect = (kf * kf * (kf * kf - 1.0).powi(2) / (kf * kf + 1.0) / 7.2).sqrt();
            prop_assert!((s.omega(k).unwrap() / w2 - expect).abs() < 1e-13 * expect);
        }
    }

    #[test]
    fn check_verdict_matches_scalars(v in -1.0..1.0f64, t in 1e-6..1.0f64) {
        let r = ResultRecord::new(ExperimentKind::Align, RowKind::Point, 24, 0, Check::new(v.abs(), t));
        prop_assert_eq!(r.check.passed, r.check.recompute());
    }
}

#[test]
fn ring_per_magnet_energies_are_uniform() {
    let c = build_circular_ring(37).unwrap();
    let e = per_magnet_energies(&c).unwrap();
    assert!(e.iter().all(|x| (x - e[0]).abs() < 1e-12));
}
