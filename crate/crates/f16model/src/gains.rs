//! Gain derivation: closed-loop sign resolution, exact command
//! feedforward, and the Lyapunov certificate that drives the adaptation
//! law.
//!
//! The published feedback gain is stated without a sign convention, so
//! the loop is formed as `A_r = A + S * B * Kx` and `S` is resolved by
//! scanning both signs for the (unique) Hurwitz closed loop. The
//! feedforward gain is re-derived from the DC-gain identity
//! `C (-A_r)^{-1} B Kr = I` rather than taken from the published table,
//! which carries ~1% of DC error and would leave a visible steady-state
//! tracking offset.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix2x4, Matrix4, Matrix4x2, Vector2, Vector4};

use crate::matrices::{PlantMatrices, ADAPTATION_RATE, LYAPUNOV_Q_SCALE};
use crate::ModelError;

/// Relative residual ceiling accepted from the Lyapunov solve; the 16x16
/// Kronecker system is solved by LU at unit scale, so anything beyond
/// this indicates a near-singular (non-Hurwitz) input.
const LYAPUNOV_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Acceptable departure of `C (-A_r)^{-1} B_r` from the identity for a
/// derived feedforward gain.
const DC_GAIN_TOLERANCE: f64 = 1e-6;

/// Everything derived from the plant and the published feedback gain.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSet {
    /// Feedback gain `Kx` as published.
    pub kx: Matrix2x4<f64>,
    /// Published feedforward gain, kept as data only.
    pub kr_published: Matrix2<f64>,
    /// DC-exact feedforward gain `(C (-A_r)^{-1} B)^{-1}` actually used.
    pub kr: Matrix2<f64>,
    /// Resolved feedback sign: `A_r = A + sign * B * Kx` is Hurwitz.
    pub sign: f64,
    /// Closed-loop/reference system matrix.
    pub a_r: Matrix4<f64>,
    /// Reference input matrix `B_r = B * Kr`.
    pub b_r: Matrix4x2<f64>,
    /// Lyapunov certificate: `A_r^T P + P A_r = -q_scale * I`, `P > 0`.
    pub p_lyap: Matrix4<f64>,
    /// Precomputed `P * B_ail` used by the weight update.
    pub pb: Vector4<f64>,
    /// Adaptation rate.
    pub gamma: f64,
}

/// Resolve the feedback sign: return the unique `S` in `{+1, -1}` for
/// which `A + S * B * Kx` is Hurwitz.
pub fn hurwitz_sign(plant: &PlantMatrices, kx: &Matrix2x4<f64>) -> Result<f64, ModelError> {
    let mut found = None;
    for s in [1.0f64, -1.0] {
        let acl = plant.a + (plant.b * kx) * s;
        let hurwitz = acl.complex_eigenvalues().iter().all(|ev| ev.re < 0.0);
        if hurwitz {
            if found.is_some() {
                return Err(ModelError::GainDerivation(
                    "both feedback signs yield a Hurwitz loop; sign is ambiguous".into(),
                ));
            }
            found = Some(s);
        }
    }
    found.ok_or_else(|| {
        ModelError::GainDerivation("neither feedback sign yields a Hurwitz loop".into())
    })
}

/// Solve the continuous Lyapunov equation `A^T P + P A = -Q` for
/// symmetric `P` via the 16-dimensional Kronecker linearization
/// `(I (x) A^T + A^T (x) I) vec(P) = -vec(Q)`.
pub fn solve_lyapunov(a: &Matrix4<f64>, q: &Matrix4<f64>) -> Result<Matrix4<f64>, ModelError> {
    let at = a.transpose();
    let mut m = DMatrix::<f64>::zeros(16, 16);
    // vec(A^T P) = (I (x) A^T) vec(P);  vec(P A) = (A^T (x) I) vec(P),
    // with column-major vec: entry vec-index r = i + 4j for P[i][j].
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                // (A^T P)[i][j] = sum_k A^T[i][k] P[k][j]
                m[(i + 4 * j, k + 4 * j)] += at[(i, k)];
                // (P A)[i][j] = sum_k P[i][k] A[k][j]
                m[(i + 4 * j, i + 4 * k)] += a[(k, j)];
            }
        }
    }
    let rhs = DVector::from_fn(16, |r, _| -q[(r % 4, r / 4)]);
    let lu = m.lu();
    let sol = lu
        .solve(&rhs)
        .ok_or_else(|| ModelError::GainDerivation("Lyapunov system is singular".into()))?;
    let mut p = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            p[(i, j)] = sol[i + 4 * j];
        }
    }
    // Symmetrize away LU roundoff, then verify the residual for real.
    let p = (p + p.transpose()) * 0.5;
    let resid = (at * p + p * *a + *q).abs().max();
    let scale = q.abs().max().max(1.0);
    if resid > LYAPUNOV_RESIDUAL_TOLERANCE * scale {
        return Err(ModelError::GainDerivation(format!(
            "Lyapunov residual {resid:.3e} exceeds tolerance"
        )));
    }
    Ok(p)
}

impl GainSet {
    /// Derive the full gain set from the plant and published gains.
    ///
    /// Fails if no unique Hurwitz sign exists, if the DC gain is singular
    /// (feedforward underdetermined), or if the Lyapunov certificate is
    /// not positive definite.
    pub fn derive(
        plant: &PlantMatrices,
        kx: Matrix2x4<f64>,
        kr_published: Matrix2<f64>,
    ) -> Result<Self, ModelError> {
        let sign = hurwitz_sign(plant, &kx)?;
        let a_r = plant.a + (plant.b * kx) * sign;
        let neg_ar_inv = (-a_r).try_inverse().ok_or_else(|| {
            ModelError::GainDerivation("closed-loop matrix is singular".into())
        })?;
        let dc = plant.c * neg_ar_inv * plant.b;
        let kr = dc.try_inverse().ok_or_else(|| {
            ModelError::GainDerivation("DC gain is singular; feedforward underdetermined".into())
        })?;
        let b_r = plant.b * kr;
        let dc_err = (plant.c * neg_ar_inv * b_r - Matrix2::identity()).abs().max();
        if dc_err > DC_GAIN_TOLERANCE {
            return Err(ModelError::GainDerivation(format!(
                "derived feedforward leaves DC error {dc_err:.3e}"
            )));
        }
        let q = Matrix4::identity() * LYAPUNOV_Q_SCALE;
        let p_lyap = solve_lyapunov(&a_r, &q)?;
        let eigs = p_lyap.symmetric_eigenvalues();
        if eigs.min() <= 0.0 {
            return Err(ModelError::GainDerivation(format!(
                "Lyapunov certificate not positive definite (min eigenvalue {:.3e})",
                eigs.min()
            )));
        }
        let pb = p_lyap * plant.aileron_column();
        Ok(Self {
            kx,
            kr_published,
            kr,
            sign,
            a_r,
            b_r,
            p_lyap,
            pb,
            gamma: ADAPTATION_RATE,
        })
    }

    /// Steady state of the reference model under constant command `c`:
    /// `x_ss = -A_r^{-1} B_r c`. With the DC-exact feedforward,
    /// `C x_ss = c` to machine precision.
    pub fn steady_reference(&self, command: &Vector2<f64>) -> Result<Vector4<f64>, ModelError> {
        self.a_r
            .lu()
            .solve(&(-(self.b_r * command)))
            .ok_or_else(|| ModelError::GainDerivation("closed-loop matrix is singular".into()))
    }
}
