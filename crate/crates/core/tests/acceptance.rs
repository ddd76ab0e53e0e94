//! Acceptance criteria, one test each. Run with `--nocapture` to see the
//! PASS/FAIL lines.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tripartite_core::analysis::{subspace_report, time_sweep, w_analytic_state};
use tripartite_core::gates::{collective, collective_block, project_block, Axis};
use tripartite_core::hamiltonians::{
    build_linear, build_rabi_triangular, build_triangular, from_hamming_order, CouplingParams,
};
use tripartite_core::linalg::{
    apply, eig_hermitian, evolve, fidelity, max_abs_diff, phase_distance,
};
use tripartite_core::protocols::{
    execute, ghz_isotropic, ghz_linear, ghz_linear_diagnostic, ghz_triangular,
    symmetric_evolved_state, w_generalized, w_rabi, Protocol,
};
use tripartite_core::verify::{self, reference, taylor_propagator, VerifyOptions};
use tripartite_core::{states, Complex, Operator, StateVector};

fn report(id: u8, title: &str, passed: bool, detail: String) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("{tag} [{id:>2}] {title}: {detail}");
    assert!(passed, "criterion {id} ({title}) failed: {detail}");
}

fn sorted_eigenvalues(h: &Operator) -> Vec<f64> {
    eig_hermitian(h).unwrap().values.to_vec()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect()
}

fn run(p: &Protocol) -> (f64, Complex) {
    let r = execute(p, &states::ground()).unwrap();
    (
        r.fidelity,
        r.measured_phase.expect("output not phase-related"),
    )
}

fn symmetric() -> StateVector {
    apply(&collective(Axis::Y, FRAC_PI_2), &states::ground())
}

#[test]
fn criterion_01_triangular_spectrum() {
    let mut worst = 0.0f64;
    for gt in [0.0, 0.05, 0.1] {
        let g = 1.0;
        let h = build_triangular(&CouplingParams::triangular(g, gt)).unwrap();
        let e = 3.0 * gt / 2.0;
        let expect = sorted(vec![
            e,
            e,
            2.0 * g - gt / 2.0,
            2.0 * g - gt / 2.0,
            -g - gt / 2.0,
            -g - gt / 2.0,
            -g - gt / 2.0,
            -g - gt / 2.0,
        ]);
        worst = worst.max(max_diff(&sorted_eigenvalues(&h), &expect));
    }
    report(
        1,
        "triangular spectrum",
        worst < 1e-10,
        format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_02_linear_spectrum() {
    let mut worst = 0.0f64;
    for gt in [0.0, 0.05, 0.1] {
        let g: f64 = 1.0;
        let h = build_linear(&CouplingParams::linear(g, gt)).unwrap();
        let root = (2.0 * g * g + gt * gt / 4.0).sqrt();
        let (ep, em) = (root - gt / 2.0, -root - gt / 2.0);
        let expect = sorted(vec![gt, gt, ep, ep, em, em, 0.0, 0.0]);
        worst = worst.max(max_diff(&sorted_eigenvalues(&h), &expect));
    }
    report(
        2,
        "linear-chain spectrum",
        worst < 1e-10,
        format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_03_rabi_spectrum() {
    let mut worst = 0.0f64;
    for gt in [0.0, 0.05] {
        let g: f64 = 1.0;
        let d = g - gt;
        let om = -d / 2.0;
        let h = build_rabi_triangular(&CouplingParams::triangular(g, gt).with_omega(om)).unwrap();
        let (ep, em) = (g + gt / 2.0 + om / 2.0, g + gt / 2.0 - om / 2.0);
        let cp = (d * d + d * om + om * om).sqrt();
        let cm = (d * d - d * om + om * om).sqrt();
        let (a, b) = (-g - gt / 2.0 + om / 2.0, -g - gt / 2.0 - om / 2.0);
        let expect = sorted(vec![ep + cp, ep - cp, em + cm, em - cm, a, a, b, b]);
        worst = worst.max(max_diff(&sorted_eigenvalues(&h), &expect));
    }
    report(
        3,
        "Rabi-driven spectrum",
        worst < 1e-10,
        format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_04_ghz_triangular() {
    let (mut deficit, mut phase) = (0.0f64, 0.0f64);
    for gt in linspace(0.0, 0.099, 25) {
        let p = ghz_triangular(&CouplingParams::triangular(1.0, gt)).unwrap();
        let t = PI / (2.0 * (1.0 - gt));
        let (f, ph) = run(&p);
        deficit = deficit.max(1.0 - f);
        phase = phase.max(phase_distance(
            ph,
            Complex::from_polar(1.0, -1.5 * gt * t + FRAC_PI_4),
        ));
    }
    report(
        4,
        "GHZ triangular protocol",
        deficit <= 1e-9 && phase < 1e-8,
        format!("max 1-F {deficit:.2e}, max phase error {phase:.2e}"),
    );
}

#[test]
fn criterion_05_ghz_linear() {
    let p = ghz_linear(&CouplingParams::linear(1.0, 0.0)).unwrap();
    let deficit = 1.0 - execute(&p, &states::ground()).unwrap().fidelity;
    assert!(ghz_linear(&CouplingParams::linear(1.0, 0.05)).is_err());
    let forced = ghz_linear_diagnostic(&CouplingParams::linear(1.0, 0.05)).unwrap();
    let rows = time_sweep(&forced, &states::ground(), 0.0, 4.0 * PI, 2001).unwrap();
    let best = rows.iter().map(|r| r.fidelity_target).fold(0.0, f64::max);
    report(
        5,
        "GHZ linear protocol",
        deficit <= 1e-9 && best < 1.0 - 1e-4,
        format!("g~=0 1-F {deficit:.2e}; g~=0.05 best F {best:.6}"),
    );
}

#[test]
fn criterion_06_w_rabi() {
    let (mut deficit, mut phase) = (0.0f64, 0.0f64);
    for gt in [0.0, 0.05, 0.09] {
        let p = w_rabi(&CouplingParams::triangular(1.0, gt)).unwrap();
        let d: f64 = 1.0 - gt;
        let om = -d / 2.0;
        let t = PI / (3f64.sqrt() * d.abs());
        let e = 1.0 + gt / 2.0 + om / 2.0;
        let chi = (d * d + d * om + om * om).sqrt();
        let expect = -Complex::from_polar(d.signum(), -(e + chi) * t);
        let (f, ph) = run(&p);
        deficit = deficit.max(1.0 - f);
        phase = phase.max(phase_distance(ph, expect));
    }
    report(
        6,
        "W Rabi protocol",
        deficit <= 1e-9 && phase < 1e-8,
        format!("max 1-F {deficit:.2e}, max phase error {phase:.2e}"),
    );
}

#[test]
fn criterion_07_ghz_isotropic() {
    let (f, ph) = run(&ghz_isotropic(1.0).unwrap());
    let phase = phase_distance(ph, Complex::new(0.0, 1.0));
    report(
        7,
        "isotropic GHZ",
        1.0 - f <= 1e-9 && phase < 1e-8,
        format!("1-F {:.2e}, phase error {phase:.2e}", 1.0 - f),
    );
}

#[test]
fn criterion_08_w_generalized() {
    let (mut deficit, mut phase) = (0.0f64, 0.0f64);
    for (g, gt) in [(1.0, 1.0), (1.0, 0.0), (1.0, 0.05)] {
        let p = w_generalized(&CouplingParams::triangular(g, gt)).unwrap();
        let alpha = (5.0 * g - 2.0 * gt) * PI / (18.0 * g);
        let (f, ph) = run(&p);
        deficit = deficit.max(1.0 - f);
        phase = phase.max(phase_distance(ph, Complex::from_polar(1.0, -alpha)));
    }
    report(
        8,
        "generalized W",
        deficit <= 1e-9 && phase < 1e-8,
        format!("max 1-F {deficit:.2e}, max phase error {phase:.2e}"),
    );
}

#[test]
fn criterion_09_intermediate_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let gt = rng.random_range(0.0..0.1);
        let t = rng.random_range(0.0..10.0);
        let p = CouplingParams::triangular(1.0, gt);
        let numeric = apply(
            &evolve(&build_triangular(&p).unwrap(), t).unwrap(),
            &symmetric(),
        );
        // (|000⟩ + |111⟩)/√8 picks up e^{-i3g̃t/2}; √3(|W⟩ + |W′⟩)/√8 picks up e^{-i(2g-g̃/2)t}.
        let r8 = 8f64.sqrt();
        let ghz_part = (states::ground() + states::top()) * (1.0 / r8);
        let w_part = (states::w() + states::w_prime()) * (3f64.sqrt() / r8);
        let expect = ghz_part * Complex::from_polar(1.0, -1.5 * gt * t)
            + w_part * Complex::from_polar(1.0, -(2.0 - gt / 2.0) * t);
        worst = worst.max(numeric.max_abs_diff(&symmetric_evolved_state(&p, t)));
        worst = worst.max(numeric.max_abs_diff(&expect));
    }
    report(
        9,
        "intermediate-state identity",
        worst < 1e-10,
        format!("max deviation {worst:.2e}"),
    );
}

#[test]
fn criterion_10_analytic_w_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    let mut norm = 0.0f64;
    for _ in 0..20 {
        let gt = rng.random_range(0.0..0.099);
        let t = rng.random_range(0.0..2.0 * PI);
        let p = CouplingParams::triangular(1.0, gt).with_omega(-(1.0 - gt) / 2.0);
        let analytic = w_analytic_state(&p, t).unwrap();
        let numeric = apply(
            &evolve(&build_rabi_triangular(&p).unwrap(), t).unwrap(),
            &symmetric(),
        );
        worst = worst.max(analytic.state.max_abs_diff(&numeric));
        norm = norm.max((analytic.raw_norm - 1.0).abs());
    }
    report(
        10,
        "analytic W state",
        worst < 1e-9,
        format!("max deviation {worst:.2e}, raw norm deviation {norm:.2e}"),
    );
}

#[test]
fn criterion_11_no_go() {
    let x_half = collective(Axis::X, FRAC_PI_2);
    let y_half = collective(Axis::Y, FRAC_PI_2);
    let iso = build_triangular(&CouplingParams::triangular(1.0, 1.0)).unwrap();
    let fids: Vec<f64> = linspace(0.0, 10.0, 50)
        .into_iter()
        .map(|t| {
            fidelity(
                &apply(&x_half, &apply(&evolve(&iso, t).unwrap(), &symmetric())),
                &states::ghz(),
            )
        })
        .collect();
    let mean = fids.iter().sum::<f64>() / 50.0;
    let var = fids.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / 50.0;
    assert!(ghz_triangular(&CouplingParams::triangular(1.0, 1.0)).is_err());

    let bare = build_triangular(&CouplingParams::triangular(1.0, 0.0)).unwrap();
    let best_w = linspace(0.0, PI, 400)
        .into_iter()
        .map(|t| {
            fidelity(
                &apply(&y_half, &apply(&evolve(&bare, t).unwrap(), &symmetric())),
                &states::w(),
            )
        })
        .fold(0.0, f64::max);

    let mut leak = 0.0f64;
    for gt in [0.0, 0.05, 0.1] {
        let h = build_triangular(&CouplingParams::triangular(1.0, gt)).unwrap();
        for t in linspace(0.0, 20.0, 101) {
            let w = subspace_report(&apply(&evolve(&h, t).unwrap(), &states::ground()));
            leak = leak.max((w.ghz - 1.0).abs());
        }
    }
    report(
        11,
        "no-go properties",
        var < 1e-20 && best_w < 1.0 - 1e-3 && leak < 1e-12,
        format!("isotropic variance {var:.2e}; best W fidelity {best_w:.6}; GHZ-weight drift {leak:.2e}"),
    );
}

#[test]
fn criterion_12_structure() {
    let mut golden = 0.0f64;
    for (g, gt) in [(1.0, 0.05), (0.7, 0.2)] {
        let om = 0.3;
        golden = golden.max(max_abs_diff(
            build_triangular(&CouplingParams::triangular(g, gt))
                .unwrap()
                .entries(),
            &from_hamming_order(&reference::triangular(g, gt)),
        ));
        golden = golden.max(max_abs_diff(
            build_linear(&CouplingParams::linear(g, gt))
                .unwrap()
                .entries(),
            &from_hamming_order(&reference::linear(g, gt)),
        ));
        golden = golden.max(max_abs_diff(
            build_rabi_triangular(&CouplingParams::triangular(g, gt).with_omega(om))
                .unwrap()
                .entries(),
            &from_hamming_order(&reference::rabi(g, gt, om)),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut block = 0.0f64;
    let mut leak = 0.0f64;
    for _ in 0..20 {
        let theta = rng.random_range(-PI..PI);
        for axis in [Axis::X, Axis::Y] {
            let r = collective(axis, theta);
            let (a, b) = (collective_block(axis, theta), project_block(&r));
            for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
                block = block.max((x - y).norm());
            }
            for s in states::symmetric_block_basis() {
                for o in states::rest_basis() {
                    leak = leak.max(r.matrix_element(&s, &o).norm());
                }
            }
        }
    }
    let w = subspace_report(&symmetric());
    let weights = (w.ghz - 0.25).abs().max((w.w - 0.75).abs());
    report(
        12,
        "structural identities",
        golden <= 1e-15 && block < 1e-12 && leak < 1e-12 && weights < 1e-12,
        format!(
            "golden {golden:.1e}; block {block:.1e}; leakage {leak:.1e}; weights {weights:.1e}"
        ),
    );
}

#[test]
fn criterion_13_numerics() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut unit, mut group, mut taylor) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10 {
        let gt = rng.random_range(0.0..0.1);
        let om = rng.random_range(-1.0..1.0);
        let h = build_rabi_triangular(&CouplingParams::triangular(1.0, gt).with_omega(om)).unwrap();
        let (t1, t2) = (rng.random_range(0.0..5.0), rng.random_range(0.0..5.0));
        let u1 = evolve(&h, t1).unwrap();
        unit = unit.max(u1.unitary_deviation());
        group = group.max(
            evolve(&h, t1 + t2)
                .unwrap()
                .max_abs_diff(&u1.compose(&evolve(&h, t2).unwrap())),
        );
        // ‖H‖ ≤ 3 here, so t ≤ 3 keeps ‖H‖t ≤ 10.
        let t = rng.random_range(0.0..3.0);
        taylor = taylor.max(max_abs_diff(
            evolve(&h, t).unwrap().entries(),
            &taylor_propagator(&h, t),
        ));
    }
    report(
        13,
        "numerical core properties",
        unit < 1e-12 && group < 1e-11 && taylor < 1e-9,
        format!("unitarity {unit:.1e}; semigroup {group:.1e}; Taylor {taylor:.1e}"),
    );
}

#[test]
fn library_checklist_passes() {
    let results = verify::run(&VerifyOptions::default());
    assert_eq!(results.len(), 13);
    for c in &results {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {} (library): {}", c.id, c.title, c.detail);
    }
    assert!(verify::all_passed(&results));
}
