//! Time sweeps, subspace and spectrum reports, and the closed-form driven
//! W-protocol state.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

use crate::gates::{run_sequence, xy_eigenbases};
use crate::hamiltonians::{analytic_spectrum, build, CouplingParams, Topology, Variant};
use crate::linalg::{eig_hermitian, fidelity, Complex, StateVector, DIM};
use crate::protocols::Protocol;
use crate::states;
use crate::tolerances::OVERLAP_FLOOR;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub fidelity_target: f64,
    pub fidelity_ghz: f64,
    pub fidelity_w: f64,
    /// `arg⟨target|ψ⟩` in `(−π, π]`; zero when the overlap vanishes.
    pub phase_arg: f64,
}

/// `arg z` folded into `(−π, π]`.
pub fn principal_arg(z: Complex) -> f64 {
    let a = z.arg();
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Runs the protocol with its free-evolution duration replaced by each point
/// of the uniform grid `t_min..=t_max` (`steps` points).
pub fn time_sweep(
    protocol: &Protocol,
    initial: &StateVector,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<Vec<SweepRow>> {
    if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max || steps < 2 {
        return Err(Error::InvalidGrid);
    }
    if t_min < 0.0 {
        return Err(Error::NegativeDuration(t_min));
    }
    let target = protocol.spec.target;
    let ghz = states::ghz();
    let w = states::w();
    let step = (t_max - t_min) / (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            let t = if k + 1 == steps {
                t_max
            } else {
                t_min + k as f64 * step
            };
            let seq = protocol.sequence.with_evolution_duration(t)?;
            let psi = run_sequence(&seq, initial)?;
            let overlap = target.inner(&psi);
            Ok(SweepRow {
                t,
                fidelity_target: fidelity(&psi, &target),
                fidelity_ghz: fidelity(&psi, &ghz),
                fidelity_w: fidelity(&psi, &w),
                phase_arg: if overlap.norm() < OVERLAP_FLOOR {
                    0.0
                } else {
                    principal_arg(overlap)
                },
            })
        })
        .collect()
}

/// Grid maximum of the target fidelity together with its neighbours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPeak {
    pub index: usize,
    pub row: SweepRow,
    pub previous: Option<SweepRow>,
    pub next: Option<SweepRow>,
    /// Grid spacing.
    pub step: f64,
}

impl SweepPeak {
    /// Whether `t` lies within one grid step of the peak.
    pub fn brackets(&self, t: f64) -> bool {
        (self.row.t - t).abs() <= self.step * (1.0 + 1e-9)
    }
}

/// First row with the largest `fidelity_target`. `None` for an empty slice.
pub fn sweep_peak(rows: &[SweepRow]) -> Option<SweepPeak> {
    let (index, row) =
        rows.iter()
            .enumerate()
            .fold(None::<(usize, &SweepRow)>, |best, (k, r)| match best {
                Some((_, b)) if b.fidelity_target >= r.fidelity_target => best,
                _ => Some((k, r)),
            })?;
    let step = if rows.len() > 1 {
        (rows[rows.len() - 1].t - rows[0].t) / (rows.len() - 1) as f64
    } else {
        0.0
    };
    Some(SweepPeak {
        index,
        row: *row,
        previous: index.checked_sub(1).map(|k| rows[k]),
        next: rows.get(index + 1).copied(),
        step,
    })
}

/// Coefficients of the closed-form driven evolution of the symmetric state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WCoefficients {
    pub a: Complex,
    pub b: Complex,
    pub chi_plus: f64,
    /// `δ = −2χ^(+) t`
    pub delta: f64,
    /// `α = (ε^(+) + χ^(+)) t`
    pub alpha: f64,
}

pub fn w_coefficients(p: &CouplingParams, t: f64) -> Result<WCoefficients> {
    check_driven(p, t)?;
    let d = p.g - p.g_tilde;
    let w = p.omega;
    let (eps_plus, _) = p.rabi_offsets();
    let (chi, _) = p.rabi_splittings();
    let delta = -2.0 * chi * t;
    let phase = Complex::from_polar(1.0, -delta);
    let a = Complex::from((d + w + chi) * (d + 2.0 * w - chi))
        - phase * ((d + w - chi) * (d + 2.0 * w + chi));
    let b = Complex::from((d + w + chi) * (d - chi)) - phase * ((d + w - chi) * (d + chi));
    Ok(WCoefficients {
        a,
        b,
        chi_plus: chi,
        delta,
        alpha: (eps_plus + chi) * t,
    })
}

fn check_driven(p: &CouplingParams, t: f64) -> Result<()> {
    p.validate()?;
    if p.topology != Topology::Triangular {
        return Err(Error::WrongTopology {
            expected: Topology::Triangular,
            found: p.topology,
        });
    }
    if !t.is_finite() {
        return Err(Error::NonFinite("evolution time"));
    }
    if p.omega == 0.0 {
        return Err(Error::ZeroRabi);
    }
    if p.g == p.g_tilde {
        return Err(Error::IsotropicSingularity);
    }
    Ok(())
}

/// Closed-form `U_Ω(t) Y_{π/2}|000⟩` expanded over the `𝒴` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WAnalyticState {
    /// Unit-normalized state.
    pub state: StateVector,
    /// Norm of the expression before normalization (1 when the closed-form
    /// prefactor is exact).
    pub raw_norm: f64,
    pub coefficients: WCoefficients,
}

pub fn w_analytic_state(p: &CouplingParams, t: f64) -> Result<WAnalyticState> {
    let k = w_coefficients(p, t)?;
    let xy = xy_eigenbases();
    let y = |n: usize| xy.y_state(n);
    let i = Complex::new(0.0, 1.0);
    let q = Complex::from_polar(1.0, FRAC_PI_4);
    let qc = q.conj();
    let first = y(0) * (i * q) - y(1) * qc;
    let second = y(2) * qc - y(3) * (i * q);
    let prefactor =
        Complex::from_polar(1.0, -k.alpha) / (4.0 * core::f64::consts::SQRT_2 * k.chi_plus);
    let raw = (first * (k.a / p.omega) + second * (k.b * libm::sqrt(3.0) / p.omega)) * prefactor;
    let raw_norm = raw.norm();
    Ok(WAnalyticState {
        state: raw.normalized(),
        raw_norm,
        coefficients: k,
    })
}

/// Squared projections onto `ℋ_GHZ`, `ℋ_W`, `ℋ_rest`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceWeights {
    pub ghz: f64,
    pub w: f64,
    pub rest: f64,
}

impl SubspaceWeights {
    pub fn total(&self) -> f64 {
        self.ghz + self.w + self.rest
    }
}

pub fn subspace_report(psi: &StateVector) -> SubspaceWeights {
    let weight =
        |basis: &[StateVector]| -> f64 { basis.iter().map(|b| b.inner(psi).norm_sqr()).sum() };
    SubspaceWeights {
        ghz: weight(&[states::ground(), states::top()]),
        w: weight(&[states::w(), states::w_prime()]),
        rest: weight(&states::rest_basis()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub numeric: f64,
    pub analytic: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumReport {
    pub params: CouplingParams,
    pub variant: Variant,
    pub rows: [SpectrumRow; DIM],
    pub max_difference: f64,
}

/// Numerical eigenvalues of the selected Hamiltonian next to the closed-form
/// multiset, both sorted ascending.
pub fn spectrum_report(p: &CouplingParams, variant: Variant) -> Result<SpectrumReport> {
    let analytic = analytic_spectrum(p, variant)?;
    let numeric = eig_hermitian(&build(p, variant)?)?.values;
    let rows = core::array::from_fn(|k| SpectrumRow {
        numeric: numeric[k],
        analytic: analytic.values[k],
        difference: (numeric[k] - analytic.values[k]).abs(),
    });
    let max_difference = rows
        .iter()
        .map(|r: &SpectrumRow| r.difference)
        .fold(0.0, f64::max);
    Ok(SpectrumReport {
        params: *p,
        variant,
        rows,
        max_difference,
    })
}

/// Groups sorted values into `(value, multiplicity)` pairs, merging entries
/// closer than `tol`.
pub fn multiplicities(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((last, n)) if (v - *last).abs() <= tol => *n += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}
