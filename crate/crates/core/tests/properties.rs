#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use proptest::prelude::*;
use tripartite_core::analysis::{spectrum_report, subspace_report};
use tripartite_core::gates::{collective, collective_block, project_block, rotation, Axis};
use tripartite_core::hamiltonians::{
    build_rabi_triangular, build_triangular, CouplingParams, Variant,
};
use tripartite_core::linalg::{apply, eig_hermitian, evolve, max_abs_diff, DIM};
use tripartite_core::verify::taylor_propagator;
use tripartite_core::{states, Complex, Operator, StateVector};

fn hermitian() -> impl Strategy<Value = Operator> {
    (
        prop::array::uniform8(-1.0f64..1.0),
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 28),
    )
        .prop_map(|(diag, off)| {
            let mut m = [[Complex::new(0.0, 0.0); DIM]; DIM];
            let mut k = 0;
            for r in 0..DIM {
                m[r][r] = Complex::new(diag[r], 0.0);
                for c in (r + 1)..DIM {
                    let z = Complex::new(off[k].0, off[k].1);
                    m[r][c] = z;
                    m[c][r] = z.conj();
                    k += 1;
                }
            }
            Operator::hermitian(m).unwrap()
        })
}

fn state() -> impl Strategy<Value = StateVector> {
    prop::array::uniform8((-1.0f64..1.0, -1.0f64..1.0))
        .prop_filter("nonzero", |a| {
            a.iter().any(|(r, i)| r.abs() + i.abs() > 1e-3)
        })
        .prop_map(|a| {
            StateVector::from_amps(a.map(|(r, i)| Complex::new(r, i)))
                .unwrap()
                .normalized()
        })
}

fn frobenius(h: &Operator) -> f64 {
    h.entries()
        .iter()
        .flatten()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn axis() -> impl Strategy<Value = Axis> {
    prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_then_backward_is_identity(h in hermitian(), t in 0.0f64..10.0) {
        let u = evolve(&h, t).unwrap().compose(&evolve(&h, -t).unwrap());
        prop_assert!(u.max_abs_diff(&Operator::identity()) < 1e-11);
    }

    #[test]
    fn semigroup(h in hermitian(), t1 in 0.0f64..10.0, t2 in 0.0f64..10.0) {
        let lhs = evolve(&h, t1 + t2).unwrap();
        let rhs = evolve(&h, t1).unwrap().compose(&evolve(&h, t2).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn norm_preserved(h in hermitian(), psi in state(), t in -10.0f64..10.0) {
        let out = apply(&evolve(&h, t).unwrap(), &psi);
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_reconstruction(h in hermitian()) {
        let eig = eig_hermitian(&h).unwrap();
        prop_assert!(max_abs_diff(&eig.reconstruct(), h.entries()) < 1e-10);
        prop_assert!(eig.max_residual(&h) < 1e-10);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn agrees_with_taylor_series(h in hermitian(), s in 0.0f64..1.0) {
        // Operator norm ≤ Frobenius norm, so ‖H‖t ≤ 10.
        let t = 10.0 * s / frobenius(&h);
        let u = evolve(&h, t).unwrap();
        prop_assert!(max_abs_diff(u.entries(), &taylor_propagator(&h, t)) < 1e-9);
    }

    #[test]
    fn rotations_unitary(ax in axis(), angles in prop::array::uniform3(-4.0 * PI..4.0 * PI)) {
        prop_assert!(rotation(ax, angles).unitary_deviation() < 1e-12);
    }

    #[test]
    fn collective_rotations_block_diagonal(
        ax in prop_oneof![Just(Axis::X), Just(Axis::Y)],
        theta in -4.0 * PI..4.0 * PI,
    ) {
        let r = collective(ax, theta);
        let sym = states::symmetric_block_basis();
        let rest = states::rest_basis();
        for a in &sym {
            for b in &rest {
                prop_assert!(r.matrix_element(a, b).norm() < 1e-12);
                prop_assert!(r.matrix_element(b, a).norm() < 1e-12);
            }
        }
        // The Ψ₁ and Ψ₂ doublets do not mix either.
        for a in &rest[..2] {
            for b in &rest[2..] {
                prop_assert!(r.matrix_element(a, b).norm() < 1e-12);
                prop_assert!(r.matrix_element(b, a).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_block_matches_projection(ax in axis(), theta in -4.0 * PI..4.0 * PI) {
        let a = collective_block(ax, theta);
        let b = project_block(&collective(ax, theta));
        for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn spectra_match_closed_forms(
        g in 0.5f64..2.0,
        ratio in 0.0f64..0.1,
        omega_ratio in -1.0f64..1.0,
    ) {
        let gt = ratio * g;
        let omega = omega_ratio * g;
        let gap = |p: CouplingParams, v| spectrum_report(&p, v).unwrap().max_difference;
        prop_assert!(gap(CouplingParams::triangular(g, gt), Variant::Bare) < 1e-10);
        prop_assert!(gap(CouplingParams::linear(g, gt), Variant::Bare) < 1e-10);
        prop_assert!(gap(CouplingParams::triangular(g, gt).with_omega(omega), Variant::Rabi) < 1e-10);
    }

    #[test]
    fn subspace_weights_sum_to_one(psi in state()) {
        let w = subspace_report(&psi);
        prop_assert!((w.total() - 1.0).abs() < 1e-12);
        prop_assert!(w.ghz >= 0.0 && w.w >= 0.0 && w.rest >= 0.0);
    }

    #[test]
    fn rest_space_invariant(
        g in 0.5f64..2.0,
        gt in 0.0f64..0.2,
        t in 0.0f64..20.0,
        coeffs in prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0)),
    ) {
        let mut psi = StateVector::zero();
        for (v, (r, i)) in states::rest_basis().iter().zip(coeffs) {
            psi = psi + *v * Complex::new(r, i);
        }
        prop_assume!(psi.norm() > 1e-3);
        let psi = psi.normalized();
        let h = build_triangular(&CouplingParams::triangular(g, gt)).unwrap();
        let out = apply(&evolve(&h, t).unwrap(), &psi);
        prop_assert!((subspace_report(&out).rest - 1.0).abs() < 1e-12);
    }

    #[test]
    fn driven_hamiltonian_hermitian(g in -2.0f64..2.0, gt in -1.0f64..1.0, om in -2.0f64..2.0) {
        let h = build_rabi_triangular(&CouplingParams::triangular(g, gt).with_omega(om)).unwrap();
        prop_assert!(h.hermitian_deviation() == 0.0);
    }
}
