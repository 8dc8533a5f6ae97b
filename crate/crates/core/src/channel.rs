//! Qubit channels in Kraus form, channel application, and the
//! entropy-exchange matrix.
//!
//! A channel is a list of 2x2 Kraus operators `E_0 .. E_{k-1}` with
//! `sum_i E_i† E_i = I`. Applying the channel maps `rho` to
//! `sum_i E_i rho E_i†`; the entropy exchange is the von Neumann entropy of
//! the k x k matrix `Omega_ij = tr(E_i rho E_j†)`. `Omega` is always built
//! from that trace formula so Hermiticity holds by construction rather than
//! by transcription.

use num_complex::Complex64;

use crate::qmat::{eig2, eig_jacobi, DensityMatrix, HermitianMatrix, TRACE_TOL};
use crate::{Error, Result};

/// A raw 2x2 complex matrix, row major.
pub type Mat2 = [[Complex64; 2]; 2];

/// Completeness residual above this is rejected at channel construction.
pub const COMPLETENESS_TOL: f64 = 1e-12;
/// Exchange-matrix eigenvalues below `-PSD_EXCHANGE_TOL` are rejected.
pub const PSD_EXCHANGE_TOL: f64 = 1e-10;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

fn mat2_adjoint(m: &Mat2) -> Mat2 {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[C0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mat2_trace(m: &Mat2) -> Complex64 {
    m[0][0] + m[1][1]
}

/// Max elementwise deviation of `sum_i E_i† E_i` from the identity.
pub fn completeness_residual_of(kraus: &[Mat2]) -> f64 {
    let mut sum = [[C0; 2]; 2];
    for e in kraus {
        let ee = mat2_mul(&mat2_adjoint(e), e);
        for (srow, erow) in sum.iter_mut().zip(ee) {
            for (s, v) in srow.iter_mut().zip(erow) {
                *s += v;
            }
        }
    }
    let mut residual: f64 = 0.0;
    for (i, row) in sum.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let target = if i == j { C1 } else { C0 };
            residual = residual.max((z - target).norm());
        }
    }
    residual
}

/// A qubit channel as an immutable list of at most four Kraus operators,
/// with a text label and named real parameters for CSV output.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    name: String,
    kraus: Vec<Mat2>,
    params: Vec<(String, f64)>,
}

impl KrausChannel {
    /// Validates the operator count and the completeness relation
    /// (residual at most [`COMPLETENESS_TOL`]).
    pub fn new(
        name: impl Into<String>,
        kraus: Vec<Mat2>,
        params: Vec<(String, f64)>,
    ) -> Result<Self> {
        if kraus.is_empty() || kraus.len() > 4 {
            return Err(Error::BadKrausCount(kraus.len()));
        }
        let residual = completeness_residual_of(&kraus);
        if residual > COMPLETENESS_TOL {
            return Err(Error::KrausIncomplete(residual));
        }
        Ok(Self {
            name: name.into(),
            kraus,
            params,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kraus_ops(&self) -> &[Mat2] {
        &self.kraus
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn completeness_residual(&self) -> f64 {
        completeness_residual_of(&self.kraus)
    }
}

/// Amplitude damping channel with decay probability `eta`:
/// `E_0 = [[1, 0], [0, sqrt(1-eta)]]`, `E_1 = [[0, sqrt(eta)], [0, 0]]`.
///
/// The zero operator at `eta = 0` is kept in the list; the exchange matrix
/// then has a zero row and column, which the entropy convention absorbs.
pub fn make_amplitude_damping(eta: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let keep = Complex64::new((1.0 - eta).sqrt(), 0.0);
    let decay = Complex64::new(eta.sqrt(), 0.0);
    let kraus = vec![[[C1, C0], [C0, keep]], [[C0, decay], [C0, C0]]];
    KrausChannel::new("amplitude_damping", kraus, vec![("eta".into(), eta)])
}

/// Depolarizing channel with error probability `p`: Kraus operators
/// `sqrt(1-3p/4) I` and `sqrt(p/4)` times each Pauli matrix.
pub fn make_depolarizing(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let w0 = Complex64::new((1.0 - 0.75 * p).sqrt(), 0.0);
    let wp = (0.25 * p).sqrt();
    let kraus = vec![
        [[w0, C0], [C0, w0]],
        [[C0, Complex64::new(wp, 0.0)], [Complex64::new(wp, 0.0), C0]],
        [[C0, Complex64::new(0.0, -wp)], [Complex64::new(0.0, wp), C0]],
        [[Complex64::new(wp, 0.0), C0], [C0, Complex64::new(-wp, 0.0)]],
    ];
    KrausChannel::new("depolarizing", kraus, vec![("p".into(), p)])
}

fn density_as_mat2(rho: &DensityMatrix) -> Mat2 {
    [
        [rho.get(0, 0), rho.get(0, 1)],
        [rho.get(1, 0), rho.get(1, 1)],
    ]
}

/// Apply the channel: `rho' = sum_i E_i rho E_i†`.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let r = density_as_mat2(rho);
    let mut out = [[C0; 2]; 2];
    for e in ch.kraus_ops() {
        let term = mat2_mul(&mat2_mul(e, &r), &mat2_adjoint(e));
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += term[i][j];
            }
        }
    }
    let data = vec![out[0][0], out[0][1], out[1][0], out[1][1]];
    DensityMatrix::new(HermitianMatrix::new(2, data)?)
}

/// The k x k entropy-exchange matrix `Omega_ij = tr(E_i rho E_j†)`.
///
/// Hermitian with unit trace and nonnegative spectrum for any valid channel
/// and state; construction re-checks all three.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeMatrix {
    m: HermitianMatrix,
}

impl ExchangeMatrix {
    pub fn new(m: HermitianMatrix) -> Result<Self> {
        let tr = m.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne(tr));
        }
        let min_eig = if m.dim() == 2 {
            eig2(&m).1
        } else {
            *eig_jacobi(&m)?
                .last()
                .expect("eigensolver returns dim eigenvalues")
        };
        if min_eig < -PSD_EXCHANGE_TOL {
            return Err(Error::NegativeEigenvalue(min_eig));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m.get(i, j)
    }
}

/// Build the entropy-exchange matrix of `ch` at input `rho` from the trace
/// formula, entry by entry.
pub fn exchange_matrix(ch: &KrausChannel, rho: &DensityMatrix) -> Result<ExchangeMatrix> {
    let ops = ch.kraus_ops();
    let k = ops.len();
    let r = density_as_mat2(rho);
    // precompute rho * E_j† once per column
    let right: Vec<Mat2> = ops.iter().map(|e| mat2_mul(&r, &mat2_adjoint(e))).collect();
    let mut data = vec![C0; k * k];
    for i in 0..k {
        for j in 0..k {
            data[i * k + j] = mat2_trace(&mat2_mul(&ops[i], &right[j]));
        }
    }
    ExchangeMatrix::new(HermitianMatrix::new(k, data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{bloch_to_density, density_to_bloch, BlochVector};
    use proptest::prelude::*;

    #[test]
    fn amplitude_damping_noiseless_limit() {
        let ch = make_amplitude_damping(0.0).unwrap();
        let ops = ch.kraus_ops();
        assert_eq!(ops[0], [[C1, C0], [C0, C1]]);
        assert_eq!(ops[1], [[C0, C0], [C0, C0]]);
    }

    #[test]
    fn amplitude_damping_full_damping() {
        let ch = make_amplitude_damping(1.0).unwrap();
        let ops = ch.kraus_ops();
        assert_eq!(ops[0], [[C1, C0], [C0, C0]]);
        assert_eq!(ops[1], [[C0, C1], [C0, C0]]);
    }

    #[test]
    fn amplitude_damping_keep_amplitude() {
        let ch = make_amplitude_damping(0.2).unwrap();
        let keep = ch.kraus_ops()[0][1][1];
        // sqrt(0.8)
        assert!((keep.re - 0.8944271909999159).abs() < 1e-15);
        assert_eq!(keep.im, 0.0);
        assert!((keep.re - 0.8944272).abs() < 5e-8);
    }

    #[test]
    fn amplitude_damping_rejects_bad_eta() {
        assert!(make_amplitude_damping(-0.1).is_err());
        assert!(make_amplitude_damping(1.1).is_err());
        assert!(make_amplitude_damping(f64::NAN).is_err());
    }

    #[test]
    fn depolarizing_extremes() {
        let none = make_depolarizing(0.0).unwrap();
        assert_eq!(none.kraus_ops()[0], [[C1, C0], [C0, C1]]);
        for op in &none.kraus_ops()[1..] {
            assert!(op.iter().flatten().all(|z| z.norm() == 0.0));
        }
        let full = make_depolarizing(1.0).unwrap();
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(full.kraus_ops()[0], [[half, C0], [C0, half]]);
        assert_eq!(full.kraus_ops()[1][0][1], half);
    }

    #[test]
    fn completeness_holds_to_machine_precision() {
        assert!(make_amplitude_damping(0.3).unwrap().completeness_residual() <= 1e-15);
        assert!(make_depolarizing(0.7).unwrap().completeness_residual() <= 1e-15);
    }

    #[test]
    fn completeness_residual_detects_scaling_fault() {
        let ch = make_amplitude_damping(0.3).unwrap();
        let mut ops = ch.kraus_ops().to_vec();
        for row in ops[1].iter_mut() {
            for z in row.iter_mut() {
                *z *= 1.01;
            }
        }
        // residual = (1.01^2 - 1) * eta
        let residual = completeness_residual_of(&ops);
        assert!(residual >= 1e-3, "residual {residual}");
        assert!((residual - 0.0201 * 0.3).abs() < 1e-12);
        assert!(KrausChannel::new("broken", ops, vec![]).is_err());
    }

    #[test]
    fn kraus_channel_rejects_bad_counts() {
        assert!(matches!(
            KrausChannel::new("empty", vec![], vec![]),
            Err(Error::BadKrausCount(0))
        ));
        let id = [[C1, C0], [C0, C1]];
        let zero = [[C0; 2]; 2];
        assert!(matches!(
            KrausChannel::new("five", vec![id, zero, zero, zero, zero], vec![]),
            Err(Error::BadKrausCount(5))
        ));
    }

    #[test]
    fn apply_damps_excited_state() {
        let eta = 0.37;
        let ch = make_amplitude_damping(eta).unwrap();
        let excited = bloch_to_density(&BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        let out = apply_channel(&ch, &excited).unwrap();
        assert!((out.get(0, 0).re - eta).abs() < 1e-15);
        assert!((out.get(1, 1).re - (1.0 - eta)).abs() < 1e-15);
        assert!(out.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn apply_fixes_ground_state() {
        let ch = make_amplitude_damping(0.6).unwrap();
        let ground = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let out = apply_channel(&ch, &ground).unwrap();
        let w = density_to_bloch(&out);
        assert!((w.w3 - 1.0).abs() < 1e-15);
        assert!(w.w1.abs() < 1e-15 && w.w2.abs() < 1e-15);
    }

    #[test]
    fn apply_shrinks_coherence() {
        let ch = make_amplitude_damping(0.36).unwrap();
        let plus = bloch_to_density(&BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        let out = apply_channel(&ch, &plus).unwrap();
        // off-diagonal magnitude sqrt(1 - eta) * w1 / 2 = 0.8 / 2
        assert!((out.get(0, 1).norm() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn exchange_matrix_at_center() {
        let ch = make_amplitude_damping(0.2).unwrap();
        let omega = exchange_matrix(&ch, &DensityMatrix::maximally_mixed()).unwrap();
        assert!((omega.get(0, 0).re - 0.9).abs() < 1e-14);
        assert!((omega.get(1, 1).re - 0.1).abs() < 1e-14);
        assert!(omega.get(0, 1).norm() < 1e-14);
    }

    #[test]
    fn exchange_matrix_pure_environment() {
        let ch = make_amplitude_damping(0.42).unwrap();
        let ground = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let omega = exchange_matrix(&ch, &ground).unwrap();
        assert!((omega.get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(omega.get(0, 1).norm() < 1e-14);
        assert!(omega.get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn exchange_matrix_off_diagonal_is_conjugate_pair() {
        let ch = make_amplitude_damping(0.25).unwrap();
        let plus = bloch_to_density(&BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        let omega = exchange_matrix(&ch, &plus).unwrap();
        assert!((omega.get(0, 0).re - 0.875).abs() < 1e-14);
        assert!((omega.get(1, 1).re - 0.125).abs() < 1e-14);
        assert!((omega.get(0, 1) - Complex64::new(0.25, 0.0)).norm() < 1e-14);
        assert!((omega.get(1, 0) - Complex64::new(0.25, 0.0)).norm() < 1e-14);

        // with w2 in play the pair is genuinely complex conjugate
        let tilted = bloch_to_density(&BlochVector::new(0.4, 0.5, 0.1)).unwrap();
        let omega = exchange_matrix(&ch, &tilted).unwrap();
        let upper = omega.get(0, 1);
        let lower = omega.get(1, 0);
        assert!((upper - lower.conj()).norm() < 1e-15);
        assert!(upper.im < 0.0, "upper entry carries -i*w2");
    }

    #[test]
    fn exchange_matrix_depolarizing_is_four_dimensional() {
        let ch = make_depolarizing(0.5).unwrap();
        let rho = bloch_to_density(&BlochVector::new(0.2, -0.3, 0.4)).unwrap();
        let omega = exchange_matrix(&ch, &rho).unwrap();
        assert_eq!(omega.dim(), 4);
        let tr: f64 = (0..4).map(|i| omega.get(i, i).re).sum();
        assert!((tr - 1.0).abs() < 1e-14);
    }

    fn ball_vector() -> impl Strategy<Value = BlochVector> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_map(|(a, b, c)| BlochVector::new(a, b, c))
            .prop_filter("inside unit ball", |w| w.norm_sq() <= 1.0)
    }

    proptest! {
        #[test]
        fn prop_apply_preserves_state_validity(eta in 0.0..=1.0f64, w in ball_vector()) {
            let ch = make_amplitude_damping(eta).unwrap();
            let out = apply_channel(&ch, &bloch_to_density(&w).unwrap()).unwrap();
            prop_assert!((out.matrix().trace() - 1.0).abs() < 1e-12);
            prop_assert!(eig2(out.matrix()).1 >= -1e-10);
        }

        #[test]
        fn prop_exchange_matrix_is_valid(eta in 0.0..=1.0f64, w in ball_vector()) {
            let ch = make_amplitude_damping(eta).unwrap();
            let omega = exchange_matrix(&ch, &bloch_to_density(&w).unwrap()).unwrap();
            // constructor enforces Hermiticity, unit trace, PSD; re-check trace
            prop_assert!((omega.matrix().trace() - 1.0).abs() < 1e-12);
        }
    }
}
