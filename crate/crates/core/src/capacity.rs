//! Channel mutual information and the capacity optimization.
//!
//! `mutual_information` evaluates `I = S(rho) + S(rho') - S(Omega)` through
//! the matrix pipeline. For the amplitude damping channel the same quantity
//! has a closed form in `(eta, w)`: every one of the three matrices is a
//! two-level unit-trace matrix, so each entropy is a binary entropy of
//! `(1 + r)/2` for the respective radius
//!
//! ```text
//! r_in  = |w|
//! r_out = sqrt((eta + (1-eta) w3)^2 + (1-eta)(w1^2 + w2^2))
//! r_env = sqrt((1 - eta + eta w3)^2 +     eta (w1^2 + w2^2))
//! ```
//!
//! `I` depends on `(w1, w2)` only through `w1^2 + w2^2` and is concave, so
//! the maximum sits on the `w3` axis and `optimize_w3` finds it by bisecting
//! the (monotone decreasing) derivative. `capacity_grid_oracle` is the
//! brute-force cross-check: it scans the whole ball through the matrix
//! pipeline with no knowledge of the closed form.

use rayon::prelude::*;

use crate::channel::{apply_channel, exchange_matrix, KrausChannel};
use crate::qmat::{
    binary_entropy, bloch_to_density, von_neumann_entropy, BlochVector, DensityMatrix,
};
use crate::{Error, Result};

/// The three entropies of the mutual information and their combination
/// `i = s_in + s_out - s_exchange`, all in bits.
#[derive(Debug, Clone, Copy)]
pub struct MutualInfoBreakdown {
    pub s_in: f64,
    pub s_out: f64,
    pub s_exchange: f64,
    pub i: f64,
}

/// One row of the capacity sweep.
#[derive(Debug, Clone, Copy)]
pub struct CapacityRecord {
    pub eta: f64,
    /// Stationary point of the on-axis mutual information.
    pub w3_opt: f64,
    /// Capacity `C(eta)` in bits.
    pub capacity: f64,
    /// Mutual information at the ball center, `I(eta, w = 0)`.
    pub i_center: f64,
    /// `capacity - i_center`; nonnegative, and small for every `eta`.
    pub gap: f64,
}

/// Tolerances and resolutions for the optimizer and the grid oracle.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerConfig {
    /// Guaranteed bound on the returned `w3` root.
    pub tol_w3: f64,
    /// Derivative magnitude accepted as stationary.
    pub tol_grad: f64,
    /// Oracle lattice points per axis; odd so the center is a lattice point.
    pub grid_n: usize,
    /// Central-difference step for the `w3` derivative.
    pub fd_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            tol_w3: 1e-9,
            tol_grad: 1e-12,
            grid_n: 101,
            fd_step: 1e-6,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_w3 > 0.0 && self.tol_grad > 0.0 && self.fd_step > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive"));
        }
        if self.grid_n < 3 || self.grid_n.is_multiple_of(2) {
            return Err(Error::InvalidConfig("grid_n must be odd and at least 3"));
        }
        Ok(())
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// `I(eps, rho) = S(rho) + S(eps(rho)) - S(Omega)` through the matrix
/// pipeline, valid for any channel.
pub fn mutual_information(ch: &KrausChannel, rho: &DensityMatrix) -> Result<MutualInfoBreakdown> {
    let s_in = von_neumann_entropy(rho.matrix())?;
    let out = apply_channel(ch, rho)?;
    let s_out = von_neumann_entropy(out.matrix())?;
    let omega = exchange_matrix(ch, rho)?;
    let s_exchange = von_neumann_entropy(omega.matrix())?;
    Ok(MutualInfoBreakdown {
        s_in,
        s_out,
        s_exchange,
        i: s_in + s_out - s_exchange,
    })
}

/// Closed form of the amplitude damping mutual information `I(eta, w)`.
///
/// Agrees with [`mutual_information`] through the Kraus pipeline to better
/// than 1e-12 everywhere on the ball.
pub fn mutual_information_ad_closed(eta: f64, w: &BlochVector) -> Result<f64> {
    check_eta(eta)?;
    let r_in = w.norm();
    if r_in > 1.0 + crate::qmat::BALL_TOL {
        return Err(Error::BlochOutOfBall(r_in));
    }
    let planar = w.w1 * w.w1 + w.w2 * w.w2;
    let axial_out = eta + (1.0 - eta) * w.w3;
    let axial_env = 1.0 - eta + eta * w.w3;
    let r_out = (axial_out * axial_out + (1.0 - eta) * planar).sqrt();
    let r_env = (axial_env * axial_env + eta * planar).sqrt();
    let h = |r: f64| binary_entropy(0.5 * (1.0 + r));
    Ok(h(r_in)? + h(r_out)? - h(r_env)?)
}

/// Mutual information at the ball center:
/// `I(eta, 0) = 1 + H2((1+eta)/2) - H2(eta/2)`.
///
/// An independent anchor for the full pipeline at `w = 0`.
pub fn i_center_closed(eta: f64) -> Result<f64> {
    check_eta(eta)?;
    Ok(1.0 + binary_entropy(0.5 * (1.0 + eta))? - binary_entropy(0.5 * eta)?)
}

/// Central finite difference of the on-axis closed form along `w3`.
pub fn grad_w3(eta: f64, w3: f64, cfg: &OptimizerConfig) -> Result<f64> {
    cfg.validate()?;
    check_eta(eta)?;
    if w3.abs() >= 1.0 - cfg.fd_step {
        return Err(Error::OutOfRange {
            name: "w3",
            value: w3,
            lo: -1.0 + cfg.fd_step,
            hi: 1.0 - cfg.fd_step,
        });
    }
    let h = cfg.fd_step;
    let above = mutual_information_ad_closed(eta, &BlochVector::new(0.0, 0.0, w3 + h))?;
    let below = mutual_information_ad_closed(eta, &BlochVector::new(0.0, 0.0, w3 - h))?;
    Ok((above - below) / (2.0 * h))
}

/// Find the on-axis maximum of `I(eta, (0, 0, w3))` and the capacity there.
///
/// Concavity makes the derivative monotone decreasing, so a sign change on
/// the bracket pins the root and bisection cannot fail. Bisection continues
/// below `tol_w3` (down to a 1e-13 bracket or a `tol_grad` derivative) so
/// the returned digits are stable well past the guaranteed tolerance. The
/// endpoints `eta = 0, 1` are exact: capacities 2 and 0 at `w3 = 0`.
pub fn optimize_w3(eta: f64, cfg: &OptimizerConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    check_eta(eta)?;
    if eta == 0.0 {
        return Ok((0.0, 2.0));
    }
    if eta == 1.0 {
        return Ok((0.0, 0.0));
    }

    const WIDTH_FLOOR: f64 = 1e-13;
    let mut lo = -1.0 + 10.0 * cfg.fd_step;
    let mut hi = 1.0 - 10.0 * cfg.fd_step;
    let g_lo = grad_w3(eta, lo, cfg)?;
    let g_hi = grad_w3(eta, hi, cfg)?;
    if g_lo < 0.0 || g_hi > 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = grad_w3(eta, mid, cfg)?;
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = hi - lo;
        if width < WIDTH_FLOOR || (width < cfg.tol_w3 && g.abs() <= cfg.tol_grad) {
            break;
        }
    }
    let w3 = 0.5 * (lo + hi);
    let capacity = mutual_information_ad_closed(eta, &BlochVector::new(0.0, 0.0, w3))?;
    Ok((w3, capacity))
}

/// Assemble one sweep row from [`optimize_w3`] and [`i_center_closed`].
pub fn capacity_record(eta: f64, cfg: &OptimizerConfig) -> Result<CapacityRecord> {
    let (w3_opt, capacity) = optimize_w3(eta, cfg)?;
    let i_center = i_center_closed(eta)?;
    Ok(CapacityRecord {
        eta,
        w3_opt,
        capacity,
        i_center,
        gap: capacity - i_center,
    })
}

/// Brute-force realization of `C = sup_rho I(eps, rho)` for any channel.
///
/// Evaluates [`mutual_information`] on a `grid_n^3` lattice over the cube
/// intersected with the closed unit ball (lexicographic scan order, first
/// maximum wins ties), then refines the best point by coordinate descent
/// with step halving down to 1e-7. Validates the symmetry reduction; not
/// meant for production accuracy.
pub fn capacity_grid_oracle(
    ch: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<(BlochVector, f64)> {
    cfg.validate()?;
    let n = cfg.grid_n;
    let spacing = 2.0 / (n - 1) as f64;
    let coord = |k: usize| -1.0 + spacing * k as f64;

    let best = (0..n * n * n)
        .into_par_iter()
        .map(|idx| -> Result<Option<(f64, usize)>> {
            let w = BlochVector::new(
                coord(idx / (n * n)),
                coord((idx / n) % n),
                coord(idx % n),
            );
            if w.norm_sq() > 1.0 {
                return Ok(None);
            }
            let info = mutual_information(ch, &bloch_to_density(&w)?)?;
            Ok(Some((info.i, idx)))
        })
        .try_reduce(|| None, |a, b| Ok(pick_better(a, b)))?;

    let (value, idx) = best.expect("the lattice always contains the ball center");
    let start = BlochVector::new(coord(idx / (n * n)), coord((idx / n) % n), coord(idx % n));
    refine_coordinate_descent(ch, start, value, spacing)
}

/// Larger value wins; exact ties go to the lower lattice index so the
/// parallel reduction matches a sequential lexicographic scan.
fn pick_better(
    a: Option<(f64, usize)>,
    b: Option<(f64, usize)>,
) -> Option<(f64, usize)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((va, ia)), Some((vb, ib))) => {
            if vb > va || (vb == va && ib < ia) {
                Some((vb, ib))
            } else {
                Some((va, ia))
            }
        }
    }
}

fn refine_coordinate_descent(
    ch: &KrausChannel,
    start: BlochVector,
    start_value: f64,
    initial_step: f64,
) -> Result<(BlochVector, f64)> {
    let mut best = start;
    let mut value = start_value;
    let mut step = initial_step;
    while step >= 1e-7 {
        loop {
            let mut improved = false;
            for axis in 0..3 {
                for sign in [1.0, -1.0] {
                    let mut cand = best;
                    match axis {
                        0 => cand.w1 += sign * step,
                        1 => cand.w2 += sign * step,
                        _ => cand.w3 += sign * step,
                    }
                    if cand.norm_sq() > 1.0 {
                        continue;
                    }
                    let v = mutual_information(ch, &bloch_to_density(&cand)?)?.i;
                    if v > value {
                        best = cand;
                        value = v;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        step *= 0.5;
    }
    Ok((best, value))
}
