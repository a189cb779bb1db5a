//! Quantum correlation measures: concurrence, PPT separability, quantum
//! discord and one-way quantum work deficit, in bits (base-2 entropies).
//!
//! Discord and deficit both minimize a measured-entropy functional over
//! projective measurement directions on one qubit. States that are X-form
//! (or reach the X form through a family canonicalizer) get the fast
//! route: phase-normalize u and v, after which the azimuthal angle drops
//! out and a single one-dimensional search over the polar angle remains,
//! evaluated against the two fixed-angle branches θ = 0 and θ = π/2.
//! Everything else, and every oracle cross-check, runs on a dense
//! (θ, φ) grid with local refinement.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;

use crate::eigen::{eig2_closed, hermitian_eig4, matrix_function};
use crate::error::{Error, Result};
use crate::families::{in_family, FamilyId};
use crate::matrix::{partial_trace, partial_transpose, C64, Mat2, Mat4, Side};
use crate::pauli::{pauli_pair, PauliIndex};
use crate::transforms::{canonicalizer, conjugate, phase_normalize_x};

/// Default per-axis resolution of the dense measurement-angle grid.
pub const DEFAULT_GRID_RESOLUTION: usize = 181;

/// Negative round-off floor: measure values in [-1e-9, 0) clamp to zero,
/// anything lower is reported as an error.
pub const MEASURE_FLOOR: f64 = -1e-9;

const DENSITY_TRACE_TOL: f64 = 1e-9;
const DENSITY_EIG_TOL: f64 = -1e-10;

/// The seven parameters of an X-form density matrix: diagonal a, b, c, d
/// and anti-diagonal u (|00><11|) and v (|01><10|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub u: C64,
    pub v: C64,
}

impl XParams {
    /// Validates positivity (a..d ≥ 0, ad ≥ |u|², bc ≥ |v|²) and unit
    /// normalization, all with a 1e-12 rounding allowance.
    pub fn new(a: f64, b: f64, c: f64, d: f64, u: C64, v: C64) -> Result<XParams> {
        let mut diag = [a, b, c, d];
        for x in diag.iter_mut() {
            if *x < -1e-12 {
                return Err(Error::InvalidXParams(format!(
                    "negative diagonal entry {x}"
                )));
            }
            *x = x.max(0.0);
        }
        let [a, b, c, d] = diag;
        let sum = a + b + c + d;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidXParams(format!("diagonal sums to {sum}")));
        }
        if a * d - u.norm_sqr() < -1e-12 {
            return Err(Error::InvalidXParams("ad < |u|^2".into()));
        }
        if b * c - v.norm_sqr() < -1e-12 {
            return Err(Error::InvalidXParams("bc < |v|^2".into()));
        }
        Ok(XParams { a, b, c, d, u, v })
    }

    /// Reads the parameters off an X-form matrix; entries outside the X
    /// pattern must be numerically negligible.
    pub fn from_matrix(rho: &Mat4) -> Result<XParams> {
        let scale = rho.norm_fro().max(1.0);
        let mut off = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    off = off.max(rho[(i, j)].norm());
                }
            }
        }
        if off > 1e-8 * scale {
            return Err(Error::InvalidXParams(format!(
                "matrix is not X-form (off-pattern entry {off:.3e})"
            )));
        }
        XParams::new(
            rho[(0, 0)].re,
            rho[(1, 1)].re,
            rho[(2, 2)].re,
            rho[(3, 3)].re,
            rho[(0, 3)],
            rho[(1, 2)],
        )
    }

    pub fn to_matrix(&self) -> Mat4 {
        let mut m = Mat4::from_diag([self.a, self.b, self.c, self.d]);
        m[(0, 3)] = self.u;
        m[(3, 0)] = self.u.conj();
        m[(1, 2)] = self.v;
        m[(2, 1)] = self.v.conj();
        m
    }
}

/// A projective measurement direction: polar angle θ ∈ [0, π/2] and
/// azimuth φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementAngles {
    pub fn new(theta: f64, phi: f64) -> MeasurementAngles {
        MeasurementAngles { theta, phi }
    }
}

/// Which of the three branches won the minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    Zero,
    Interior,
    PiHalf,
}

impl std::fmt::Display for BranchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchKind::Zero => write!(f, "zero"),
            BranchKind::Interior => write!(f, "interior"),
            BranchKind::PiHalf => write!(f, "pi_half"),
        }
    }
}

/// Per-branch diagnostics of a discord or deficit minimization, in bits.
#[derive(Debug, Clone, Copy)]
pub struct BranchReport {
    pub value_at_zero: f64,
    pub value_at_pi_half: f64,
    pub interior_value: f64,
    pub interior_theta: f64,
    pub winner: BranchKind,
}

impl BranchReport {
    /// The reported measure: min of the three branch values.
    pub fn minimum(&self) -> f64 {
        self.value_at_zero
            .min(self.value_at_pi_half)
            .min(self.interior_value)
    }
}

/// A measure value together with its branch diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct MeasureReport {
    pub value: f64,
    pub branches: BranchReport,
}

/// Every measure of a state, both measurement sides for the asymmetric
/// ones.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub discord_first: MeasureReport,
    pub discord_second: MeasureReport,
    pub deficit_first: MeasureReport,
    pub deficit_second: MeasureReport,
    pub ppt_separable: bool,
    pub min_pt_eigenvalue: f64,
}

fn validate_density(rho: &Mat4) -> Result<()> {
    rho.require_hermitian().map_err(|_| Error::NotDensityMatrix {
        reason: format!(
            "not Hermitian (deviation {:.3e})",
            rho.hermiticity_error()
        ),
    })?;
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > DENSITY_TRACE_TOL {
        return Err(Error::NotDensityMatrix {
            reason: format!("trace is {tr}"),
        });
    }
    let spec = hermitian_eig4(rho)?;
    if spec.eigenvalues[0] < DENSITY_EIG_TOL {
        return Err(Error::NotDensityMatrix {
            reason: format!("negative eigenvalue {:.3e}", spec.eigenvalues[0]),
        });
    }
    Ok(())
}

fn entropy_from_eigs(eigs: &[f64]) -> f64 {
    let mut s = 0.0;
    for &l in eigs {
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    s
}

/// Von Neumann entropy of a two-qubit density matrix, in bits.
pub fn von_neumann_entropy(rho: &Mat4) -> Result<f64> {
    validate_density(rho)?;
    let spec = hermitian_eig4(rho)?;
    Ok(entropy_from_eigs(&spec.eigenvalues))
}

/// Von Neumann entropy of a single-qubit density matrix, in bits.
pub fn von_neumann_entropy2(rho: &Mat2) -> Result<f64> {
    rho.require_hermitian().map_err(|_| Error::NotDensityMatrix {
        reason: "not Hermitian".into(),
    })?;
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > DENSITY_TRACE_TOL {
        return Err(Error::NotDensityMatrix {
            reason: format!("trace is {tr}"),
        });
    }
    let (lo, hi) = eig2_closed(rho);
    if lo < DENSITY_EIG_TOL {
        return Err(Error::NotDensityMatrix {
            reason: format!("negative eigenvalue {lo:.3e}"),
        });
    }
    Ok(entropy_from_eigs(&[lo, hi]))
}

/// Concurrence of an X state: 2 max{0, |u| - √(bc), |v| - √(ad)}.
pub fn concurrence_x(x: &XParams) -> f64 {
    let c1 = x.u.norm() - (x.b * x.c).sqrt();
    let c2 = x.v.norm() - (x.a * x.d).sqrt();
    2.0 * c1.max(c2).max(0.0)
}

/// Concurrence of an arbitrary two-qubit density matrix via the spin-flip
/// construction: max{0, √μ₁ - √μ₂ - √μ₃ - √μ₄} with μ_i the descending
/// eigenvalues of ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
///
/// Evaluated as the spectrum of the Hermitian product √ρ ρ̃ √ρ, which has
/// the same eigenvalues and keeps everything inside Hermitian solvers.
pub fn concurrence_general(rho: &Mat4) -> Result<f64> {
    validate_density(rho)?;
    let yy = pauli_pair(PauliIndex::Y, PauliIndex::Y);
    let flipped = yy * rho.conj() * yy;
    let sqrt_rho = matrix_function(rho, |x| x.max(0.0).sqrt())?;
    let herm = (sqrt_rho * flipped * sqrt_rho).symmetrize();
    let spec = hermitian_eig4(&herm)?;
    let mut roots = spec.eigenvalues.map(|l| l.max(0.0).sqrt());
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Positive-partial-transpose test, exact separability for two qubits.
/// Returns the verdict and the minimum eigenvalue of ρ^{T₂}.
pub fn ppt_separable(rho: &Mat4) -> Result<(bool, f64)> {
    validate_density(rho)?;
    let pt = partial_transpose(rho);
    let spec = hermitian_eig4(&pt)?;
    let min = spec.eigenvalues[0];
    Ok((min >= -1e-10, min))
}

/// The two unnormalized single-qubit blocks <n_k| ρ |n_k> left after
/// measuring `side` along direction (θ, φ). The trace of each block is
/// the outcome probability; normalized they are the conditional states of
/// the unmeasured qubit, and their joint spectrum is the spectrum of the
/// dephased post-measurement state.
fn conditional_blocks(rho: &Mat4, side: Side, theta: f64, phi: f64) -> [Mat2; 2] {
    let (ct, st) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let ph = C64::from_polar(1.0, phi);
    let plus = [C64::new(ct, 0.0), ph * st];
    let minus = [C64::new(st, 0.0), -ph * ct];

    let mut blocks = [Mat2::zero(), Mat2::zero()];
    for (k, n) in [plus, minus].iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for a in 0..2 {
                    for b in 0..2 {
                        let elem = match side {
                            Side::Second => rho[(2 * i + a, 2 * j + b)],
                            Side::First => rho[(2 * a + i, 2 * b + j)],
                        };
                        acc += n[a].conj() * n[b] * elem;
                    }
                }
                blocks[k][(i, j)] = acc;
            }
        }
    }
    blocks
}

fn block_eigs(block: &Mat2) -> (f64, f64) {
    let (lo, hi) = eig2_closed(block);
    (lo.max(0.0), hi.max(0.0))
}

/// Σ_k p_k S(ρ|k): the average entropy of the unmeasured qubit
/// conditioned on the outcome. Zero-probability outcomes contribute
/// nothing.
fn conditional_entropy_from_blocks(blocks: &[Mat2; 2]) -> f64 {
    let mut s = 0.0;
    for block in blocks {
        let (lo, hi) = block_eigs(block);
        let p = lo + hi;
        if p <= 0.0 {
            continue;
        }
        s += p * entropy_from_eigs(&[lo / p, hi / p]);
    }
    s
}

/// S(Σ_k Π_k ρ Π_k): the blocks live on orthogonal supports, so the
/// post-measurement spectrum is the union of the unnormalized block
/// spectra.
fn post_measurement_entropy_from_blocks(blocks: &[Mat2; 2]) -> f64 {
    let mut eigs = [0.0; 4];
    for (k, block) in blocks.iter().enumerate() {
        let (lo, hi) = block_eigs(block);
        eigs[2 * k] = lo;
        eigs[2 * k + 1] = hi;
    }
    entropy_from_eigs(&eigs)
}

/// Average conditional entropy of the unmeasured qubit after a projective
/// measurement of `side` along the given direction.
pub fn measured_conditional_entropy(
    rho: &Mat4,
    side: Side,
    angles: MeasurementAngles,
) -> Result<f64> {
    validate_density(rho)?;
    let blocks = conditional_blocks(rho, side, angles.theta, angles.phi);
    Ok(conditional_entropy_from_blocks(&blocks))
}

#[derive(Clone, Copy)]
enum AngleFunctional {
    /// Measured conditional entropy (discord).
    Conditional,
    /// Post-measurement entropy (work deficit).
    PostMeasurement,
}

impl AngleFunctional {
    fn eval(self, rho: &Mat4, side: Side, theta: f64, phi: f64) -> f64 {
        let blocks = conditional_blocks(rho, side, theta, phi);
        match self {
            AngleFunctional::Conditional => conditional_entropy_from_blocks(&blocks),
            AngleFunctional::PostMeasurement => post_measurement_entropy_from_blocks(&blocks),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct BranchValues {
    at_zero: f64,
    at_pi_half: f64,
    interior: f64,
    interior_theta: f64,
}

const GOLDEN_TOL: f64 = 1e-9;
const SCAN_POINTS: usize = 64;

fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > GOLDEN_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// One-dimensional branch search used on phase-normalized X states, where
/// φ = 0 is optimal: fixed-angle values plus a scan-and-refine interior
/// minimization over θ ∈ (0, π/2).
fn branches_1d(f: &dyn Fn(f64) -> f64) -> BranchValues {
    let at_zero = f(0.0);
    let at_pi_half = f(FRAC_PI_2);
    let step = FRAC_PI_2 / (SCAN_POINTS as f64 + 1.0);
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    for i in 0..SCAN_POINTS {
        let v = f((i as f64 + 1.0) * step);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = best_i as f64 * step;
    let hi = (best_i as f64 + 2.0) * step;
    let (interior_theta, interior) = golden_min(f, lo, hi);
    BranchValues {
        at_zero,
        at_pi_half,
        interior,
        interior_theta,
    }
}

/// Dense-grid branch search over the full (θ, φ) rectangle with local
/// golden-section refinement of the best cell. This is the oracle route
/// and the fallback for states with no X reduction.
fn branches_grid<F>(f: &F, resolution: usize) -> BranchValues
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let res = resolution.max(3);
    let dtheta = FRAC_PI_2 / (res - 1) as f64;
    let dphi = TAU / res as f64;

    let (best_k, best_v) = (0..res * res)
        .into_par_iter()
        .map(|k| {
            let theta = (k / res) as f64 * dtheta;
            let phi = (k % res) as f64 * dphi;
            (k, f(theta, phi))
        })
        .reduce_with(|x, y| {
            // Deterministic regardless of split: smaller value wins, ties
            // break toward the smaller flat index.
            if y.1 < x.1 || (y.1 == x.1 && y.0 < x.0) {
                y
            } else {
                x
            }
        })
        .expect("grid is non-empty");

    let mut theta = (best_k / res) as f64 * dtheta;
    let mut phi = (best_k % res) as f64 * dphi;
    let mut val = best_v;
    for _ in 0..3 {
        let (t, _) = golden_min(
            &|t| f(t, phi),
            (theta - dtheta).max(0.0),
            (theta + dtheta).min(FRAC_PI_2),
        );
        theta = t;
        let (p, v) = golden_min(&|p| f(theta, p), phi - dphi, phi + dphi);
        phi = p;
        val = v;
    }

    let at_zero = f(0.0, 0.0);

    // θ = π/2 boundary branch: one-dimensional scan over the azimuth.
    let (bk, bv) = (0..res)
        .into_par_iter()
        .map(|k| (k, f(FRAC_PI_2, k as f64 * dphi)))
        .reduce_with(|x, y| {
            if y.1 < x.1 || (y.1 == x.1 && y.0 < x.0) {
                y
            } else {
                x
            }
        })
        .expect("non-empty");
    let p0 = bk as f64 * dphi;
    let (_, at_pi_half) = golden_min(&|p| f(FRAC_PI_2, p), p0 - dphi, p0 + dphi);
    let at_pi_half = at_pi_half.min(bv);

    BranchValues {
        at_zero,
        at_pi_half,
        interior: val.min(best_v),
        interior_theta: theta,
    }
}

/// Winner selection with the tie precedence zero < pi_half < interior.
fn pick_winner(b: &BranchValues) -> BranchKind {
    let best = b.at_zero.min(b.at_pi_half).min(b.interior);
    if b.at_zero <= best + 1e-12 {
        BranchKind::Zero
    } else if b.at_pi_half <= best + 1e-12 {
        BranchKind::PiHalf
    } else {
        BranchKind::Interior
    }
}

/// Finds the inner family whose canonicalizer brings `rho` to the X form,
/// preferring the X family itself.
fn x_reduction(rho: &Mat4) -> Option<Mat4> {
    let zz = FamilyId::new(PauliIndex::Z, PauliIndex::Z).unwrap();
    if in_family(rho, zz) {
        return Some(*rho);
    }
    for f in FamilyId::inner() {
        if in_family(rho, f) {
            return Some(conjugate(rho, &canonicalizer(f)));
        }
    }
    None
}

/// Branch minimization of an angle functional, choosing the fast X route
/// when the state admits one and the dense grid otherwise.
fn minimize_functional(
    rho: &Mat4,
    side: Side,
    functional: AngleFunctional,
    resolution: Option<usize>,
) -> Result<BranchValues> {
    if let Some(reduced) = x_reduction(rho) {
        let x = XParams::from_matrix(&reduced)?;
        let (xn, _) = phase_normalize_x(&x);
        let rho_n = xn.to_matrix();
        let f = move |theta: f64| functional.eval(&rho_n, side, theta, 0.0);
        Ok(branches_1d(&f))
    } else {
        let f = move |theta: f64, phi: f64| functional.eval(rho, side, theta, phi);
        Ok(branches_grid(
            &f,
            resolution.unwrap_or(DEFAULT_GRID_RESOLUTION),
        ))
    }
}

fn finish_measure(offset: f64, b: BranchValues) -> Result<MeasureReport> {
    let clamp = |v: f64| -> Result<f64> {
        let shifted = offset + v;
        if shifted < MEASURE_FLOOR {
            return Err(Error::NegativeMeasure(shifted));
        }
        Ok(shifted.max(0.0))
    };
    let branches = BranchReport {
        value_at_zero: clamp(b.at_zero)?,
        value_at_pi_half: clamp(b.at_pi_half)?,
        interior_value: clamp(b.interior)?,
        interior_theta: b.interior_theta,
        winner: pick_winner(&b),
    };
    Ok(MeasureReport {
        value: branches.minimum(),
        branches,
    })
}

/// Quantum discord with the projective measurement on `side`:
/// S(marginal of the measured qubit) - S(ρ) plus the minimized
/// conditional entropy, reported with its three branch values.
pub fn discord(rho: &Mat4, side: Side) -> Result<MeasureReport> {
    validate_density(rho)?;
    let s_rho = entropy_from_eigs(&hermitian_eig4(rho)?.eigenvalues);
    let marginal = partial_trace(rho, side);
    let (lo, hi) = eig2_closed(&marginal);
    let s_marg = entropy_from_eigs(&[lo.max(0.0), hi.max(0.0)]);
    let b = minimize_functional(rho, side, AngleFunctional::Conditional, None)?;
    finish_measure(s_marg - s_rho, b)
}

/// Brute-force discord: the same functional minimized on a dense grid of
/// the stated per-axis resolution, with no X-structure shortcuts.
pub fn discord_oracle(rho: &Mat4, side: Side, resolution: usize) -> Result<f64> {
    validate_density(rho)?;
    let s_rho = entropy_from_eigs(&hermitian_eig4(rho)?.eigenvalues);
    let marginal = partial_trace(rho, side);
    let (lo, hi) = eig2_closed(&marginal);
    let s_marg = entropy_from_eigs(&[lo.max(0.0), hi.max(0.0)]);
    let f = |theta: f64, phi: f64| {
        AngleFunctional::Conditional.eval(rho, side, theta, phi)
    };
    let b = branches_grid(&f, resolution);
    Ok((s_marg - s_rho + b.at_zero.min(b.at_pi_half).min(b.interior)).max(0.0))
}

/// One-way quantum work deficit: the entropy produced by the best
/// projective dephasing of `side`, min over angles of S(Σ Π ρ Π) - S(ρ).
pub fn work_deficit(rho: &Mat4, side: Side) -> Result<MeasureReport> {
    validate_density(rho)?;
    let s_rho = entropy_from_eigs(&hermitian_eig4(rho)?.eigenvalues);
    let b = minimize_functional(rho, side, AngleFunctional::PostMeasurement, None)?;
    finish_measure(-s_rho, b)
}

/// Brute-force work deficit on a dense angle grid.
pub fn work_deficit_oracle(rho: &Mat4, side: Side, resolution: usize) -> Result<f64> {
    validate_density(rho)?;
    let s_rho = entropy_from_eigs(&hermitian_eig4(rho)?.eigenvalues);
    let f = |theta: f64, phi: f64| {
        AngleFunctional::PostMeasurement.eval(rho, side, theta, phi)
    };
    let b = branches_grid(&f, resolution);
    Ok((b.at_zero.min(b.at_pi_half).min(b.interior) - s_rho).max(0.0))
}

/// Every measure of a two-qubit state: concurrence (X fast path when the
/// state is X-form, spin-flip construction otherwise), both discords,
/// both deficits, and the PPT verdict.
pub fn correlation_report(rho: &Mat4) -> Result<CorrelationReport> {
    validate_density(rho)?;
    let zz = FamilyId::new(PauliIndex::Z, PauliIndex::Z).unwrap();
    let concurrence = if in_family(rho, zz) {
        concurrence_x(&XParams::from_matrix(rho)?)
    } else {
        concurrence_general(rho)?
    };
    let (ppt, min_pt) = ppt_separable(rho)?;
    Ok(CorrelationReport {
        concurrence,
        discord_first: discord(rho, Side::First)?,
        discord_second: discord(rho, Side::Second)?,
        deficit_first: work_deficit(rho, Side::First)?,
        deficit_second: work_deficit(rho, Side::Second)?,
        ppt_separable: ppt,
        min_pt_eigenvalue: min_pt,
    })
}
