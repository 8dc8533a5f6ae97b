//! Complex Hermitian matrix core for dimensions 2 through 4.
//!
//! Provides the Bloch parameterization of qubit density matrices, a closed
//! form eigensolver for 2x2 Hermitian matrices, a cyclic Jacobi eigensolver
//! for 3x3 and 4x4, and entropy functions in bits. The problem never needs
//! anything larger than 4x4 (the exchange matrix of a four-operator
//! channel), so storage is dense and dimensions are fixed at construction.

use num_complex::Complex64;

use crate::{Error, Result};

/// Elementwise tolerance for Hermiticity of stored matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on unit trace for density-like matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero by the entropy
/// functions; anything more negative is rejected.
pub const PSD_TOL: f64 = 1e-10;
/// Slack admitted on `|w| <= 1` and on probability arguments.
pub const BALL_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A real 3-vector parameterizing a qubit density matrix as
/// `rho = (I + w1*sx + w2*sy + w3*sz) / 2`.
///
/// Physical states satisfy `w1^2 + w2^2 + w3^2 <= 1`; operations that build
/// states reject vectors outside the closed unit ball (within [`BALL_TOL`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl BlochVector {
    /// The center of the Bloch ball (the maximally mixed state).
    pub const CENTER: Self = Self {
        w1: 0.0,
        w2: 0.0,
        w3: 0.0,
    };

    pub fn new(w1: f64, w2: f64, w3: f64) -> Self {
        Self { w1, w2, w3 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.w1 * self.w1 + self.w2 * self.w2 + self.w3 * self.w3
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

/// A dense complex Hermitian matrix of dimension 2, 3, or 4.
///
/// Construction validates finiteness, `m[j][i] = conj(m[i][j])` to
/// [`HERMITICITY_TOL`] elementwise, and real diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Build from row-major entries; `data.len()` must equal `dim * dim`.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(Error::UnsupportedDim(dim));
        }
        if data.len() != dim * dim {
            return Err(Error::BadEntryCount {
                dim,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        let mut asym: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                let d = data[i * dim + j] - data[j * dim + i].conj();
                asym = asym.max(d.norm());
            }
        }
        if asym > HERMITICITY_TOL {
            return Err(Error::NotHermitian(asym));
        }
        Ok(Self { dim, data })
    }

    /// Diagonal matrix with the given real entries.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let dim = entries.len();
        let mut data = vec![ZERO; dim * dim];
        for (i, &v) in entries.iter().enumerate() {
            data[i * dim + i] = Complex64::new(v, 0.0);
        }
        Self::new(dim, data)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// Trace; real up to the diagonal tolerance admitted at construction.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }
}

/// A 2x2 Hermitian matrix with unit trace and nonnegative spectrum
/// (eigenvalues at worst `-1e-12` from rounding).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: HermitianMatrix,
}

impl DensityMatrix {
    pub fn new(m: HermitianMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::UnsupportedDim(m.dim()));
        }
        let tr = m.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne(tr));
        }
        let (_, lo) = eig2(&m);
        if lo < -BALL_TOL {
            return Err(Error::NegativeEigenvalue(lo));
        }
        Ok(Self { m })
    }

    pub fn maximally_mixed() -> Self {
        bloch_to_density(&BlochVector::CENTER).expect("center of the ball is a state")
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m.get(i, j)
    }
}

/// Map a Bloch vector to its density matrix
/// `rho = [[1+w3, w1-i*w2], [w1+i*w2, 1-w3]] / 2`.
///
/// Rejects vectors outside the closed unit ball (within [`BALL_TOL`]).
pub fn bloch_to_density(w: &BlochVector) -> Result<DensityMatrix> {
    let norm = w.norm();
    if norm > 1.0 + BALL_TOL {
        return Err(Error::BlochOutOfBall(norm));
    }
    let data = vec![
        Complex64::new(0.5 * (1.0 + w.w3), 0.0),
        Complex64::new(0.5 * w.w1, -0.5 * w.w2),
        Complex64::new(0.5 * w.w1, 0.5 * w.w2),
        Complex64::new(0.5 * (1.0 - w.w3), 0.0),
    ];
    DensityMatrix::new(HermitianMatrix::new(2, data)?)
}

/// Inverse of [`bloch_to_density`]:
/// `w1 = 2 re(rho[1][0])`, `w2 = 2 im(rho[1][0])`, `w3 = rho[0][0] - rho[1][1]`.
pub fn density_to_bloch(rho: &DensityMatrix) -> BlochVector {
    let lower = rho.get(1, 0);
    BlochVector::new(
        2.0 * lower.re,
        2.0 * lower.im,
        rho.get(0, 0).re - rho.get(1, 1).re,
    )
}

/// Eigenvalues of a 2x2 Hermitian matrix in descending order, via the closed
/// form `t/2 +- sqrt((a-d)^2/4 + |b|^2)`.
///
/// # Panics
/// If the matrix is not 2x2.
pub fn eig2(m: &HermitianMatrix) -> (f64, f64) {
    assert_eq!(m.dim(), 2, "eig2 requires a 2x2 matrix");
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let mid = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b.norm());
    (mid + radius, mid - radius)
}

/// Eigenvalues of a Hermitian matrix (dimension 2 to 4) in descending order.
///
/// Cyclic Jacobi sweeps with complex plane rotations run until the
/// off-diagonal Frobenius mass drops below 1e-14. Fails if 100 sweeps do not
/// converge, which signals a malformed input.
pub fn eig_jacobi(m: &HermitianMatrix) -> Result<Vec<f64>> {
    const MAX_SWEEPS: usize = 100;
    const OFF_TOL: f64 = 1e-14;

    let n = m.dim();
    let mut a = m.data.clone();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a[i * n + j].norm_sqr();
                    }
                }
            }
            s.sqrt()
        };
        if off < OFF_TOL {
            let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
            eigs.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
            return Ok(eigs);
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut a, n, p, q);
            }
        }
    }
    Err(Error::JacobiNoConvergence(MAX_SWEEPS))
}

/// One complex Jacobi rotation zeroing `a[p][q]`.
///
/// The pivot `a[p][q] = g * exp(i*phi)` is first made real by a diagonal
/// phase, then annihilated by the standard real rotation; the combined
/// unitary is applied as a column pass followed by a row pass.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let alpha = a[p * n + p].re;
    let beta = a[q * n + q].re;

    let tau = (beta - alpha) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let phase_conj = phase.conj();
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * phase_conj * akq;
        a[k * n + q] = s * akp + c * phase_conj * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * phase * aqk;
        a[q * n + k] = s * apk + c * phase * aqk;
    }
    // the pivot is now zero up to rounding; pin it to keep sweeps monotone
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
}

/// Binary entropy `-p log2 p - (1-p) log2 (1-p)` in bits, with `0 log 0 = 0`.
///
/// Inputs within [`BALL_TOL`] of the [0, 1] boundary are clamped; anything
/// further out is rejected.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !p.is_finite() || !(-BALL_TOL..=1.0 + BALL_TOL).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let p = p.clamp(0.0, 1.0);
    Ok(entropy_term(p) + entropy_term(1.0 - p))
}

fn entropy_term(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Von Neumann entropy `-sum_i l_i log2 l_i` in bits over the eigenvalues
/// of a unit-trace Hermitian matrix.
///
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; a trace off 1 by more
/// than 1e-10 or an eigenvalue below `-PSD_TOL` is rejected.
pub fn von_neumann_entropy(m: &HermitianMatrix) -> Result<f64> {
    let tr = m.trace();
    if (tr - 1.0).abs() > PSD_TOL {
        return Err(Error::TraceNotOne(tr));
    }
    let eigs = if m.dim() == 2 {
        let (hi, lo) = eig2(m);
        vec![hi, lo]
    } else {
        eig_jacobi(m)?
    };
    let mut s = 0.0;
    for &lambda in &eigs {
        if lambda < -PSD_TOL {
            return Err(Error::NegativeEigenvalue(lambda));
        }
        s += entropy_term(lambda.max(0.0));
    }
    Ok(s)
}
