use serde::{Deserialize, Serialize};

use crate::report::Report;

use super::eigen::{canonicalize, sym_eigen};
use super::matrix::{dot, norm};
use super::{DenseMatrix, LinalgError};

pub const DEFAULT_TOL: f64 = 1e-10;

/// `Φ = V·diag(σ)·U‡` with `U` (cols×r) and `V` (rows×r) isometries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralNucleus {
    #[serde(rename = "U")]
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    #[serde(rename = "V")]
    pub v: DenseMatrix,
    pub tol: f64,
    pub rank: usize,
}

impl SpectralNucleus {
    /// `V·diag(σ)·U‡`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let mut vs = self.v.clone();
        for j in 0..self.rank {
            for i in 0..vs.rows() {
                vs[(i, j)] *= self.sigma[j];
            }
        }
        vs.matmul(&self.u.adjoint()).expect("shapes agree")
    }

    pub fn residual(&self, m: &DenseMatrix) -> f64 {
        m.sub(&self.reconstruct()).map_or(f64::INFINITY, |d| d.frobenius())
    }
}

/// One-sided Jacobi: rotate pairs of columns of `w` (and the same pairs of
/// `u`) until the columns of `w` are mutually orthogonal.
fn hestenes(w: &mut [Vec<f64>], u: &mut [Vec<f64>]) -> Result<(), LinalgError> {
    let k = w.len();
    for _ in 0..super::eigen::MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..k {
            for j in i + 1..k {
                let alpha = dot(&w[i], &w[i]);
                let beta = dot(&w[j], &w[j]);
                let gamma = dot(&w[i], &w[j]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for m in [&mut *w, &mut *u] {
                    let (a, b) = m.split_at_mut(j);
                    for (x, y) in a[i].iter_mut().zip(b[0].iter_mut()) {
                        let (p, q) = (*x, *y);
                        *x = c * p - s * q;
                        *y = s * p + c * q;
                    }
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(LinalgError::NoConvergence(super::eigen::MAX_SWEEPS))
}

/// The diagonal nucleus of `m`: eigendecompose the smaller Gram matrix,
/// recover the other basis by `V = Φ·U·diag(σ)⁻¹`, and keep the singular
/// values above `tol·σ_max` (or above `tol` when `m` is zero).
pub fn svd_nucleus(m: &DenseMatrix, tol: f64) -> Result<SpectralNucleus, LinalgError> {
    if !(tol > 0.0) {
        return Err(LinalgError::BadTolerance(tol));
    }
    if m.rows() < m.cols() {
        let t = svd_nucleus(&m.adjoint(), tol)?;
        let (mut u, mut v) = (t.v, t.u);
        // Restore the sign rule on U.
        for j in 0..t.rank {
            let mut col = u.column(j);
            let before = col.clone();
            super::eigen::fix_sign(&mut col);
            if col != before {
                u.set_column(j, &col);
                let flipped: Vec<f64> = v.column(j).iter().map(|x| -x).collect();
                v.set_column(j, &flipped);
            }
        }
        return Ok(SpectralNucleus {
            u,
            sigma: t.sigma,
            v,
            tol,
            rank: t.rank,
        });
    }
    let n = m.cols();
    let gram = m.adjoint().matmul(m)?;
    let eig = sym_eigen(&gram, tol)?;
    let mut u: Vec<Vec<f64>> = (0..n).map(|j| eig.vectors.column(j)).collect();
    let mut w: Vec<Vec<f64>> = u.iter().map(|c| m.apply(c)).collect::<Result<_, _>>()?;
    hestenes(&mut w, &mut u)?;

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = w.iter().map(|c| norm(c)).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let smax = norms.iter().fold(0.0f64, |a, &b| a.max(b));
    let cut = if smax > 0.0 { tol * smax } else { tol };
    let rank = order.iter().take_while(|&&i| norms[i] > cut).count();
    let mut u: Vec<Vec<f64>> = order[..rank].iter().map(|&i| u[i].clone()).collect();
    let sigma: Vec<f64> = order[..rank].iter().map(|&i| norms[i]).collect();

    // Deterministic basis inside clusters of equal singular values, and the
    // sign rule; V follows from U.
    canonicalize(&mut u, &sigma, tol * smax);
    let mut pairs: Vec<(f64, Vec<f64>, Vec<f64>)> = u
        .into_iter()
        .map(|c| {
            let w = m.apply(&c).expect("shape");
            let s = norm(&w);
            let v: Vec<f64> = w.iter().map(|x| x / s).collect();
            (s, c, v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let sigma: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let us: Vec<Vec<f64>> = pairs.iter().map(|p| p.1.clone()).collect();
    let vs: Vec<Vec<f64>> = pairs.iter().map(|p| p.2.clone()).collect();
    Ok(SpectralNucleus {
        u: DenseMatrix::from_columns(n, &us),
        sigma,
        v: DenseMatrix::from_columns(m.rows(), &vs),
        tol,
        rank,
    })
}

/// `Φ = left·right` with `left = V` (orthonormal columns, the embedding of
/// the rank space) and `right = diag(σ)·U‡`.
pub fn rank_factorization(m: &DenseMatrix, tol: f64) -> Result<(DenseMatrix, DenseMatrix), LinalgError> {
    let s = svd_nucleus(m, tol)?;
    let right = DenseMatrix::diag(&s.sigma).matmul(&s.u.adjoint())?;
    Ok((s.v, right))
}

/// Tolerances for [`check_spectral`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralTolerances {
    /// Relative reconstruction residual, scaled by `max(1, ‖Φ‖_F)`.
    pub residual: f64,
    /// `‖U‡U − I‖_max` and `‖V‡V − I‖_max`.
    pub isometry: f64,
    /// Off-diagonal Gram entries, scaled by `σ_max`.
    pub gram: f64,
}

impl Default for SpectralTolerances {
    fn default() -> Self {
        SpectralTolerances {
            residual: 1e-8,
            isometry: 1e-8,
            gram: 1e-8,
        }
    }
}

/// Measured deviations of a nucleus from its defining properties.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralDeviations {
    pub residual: f64,
    pub u_isometry: f64,
    pub v_isometry: f64,
    /// Largest off-diagonal entry of `(ΦU)‡(ΦU)` and `(Φ‡V)‡(Φ‡V)`.
    pub gram_off_diagonal: f64,
}

pub fn spectral_deviations(m: &DenseMatrix, s: &SpectralNucleus) -> SpectralDeviations {
    let eye = DenseMatrix::identity(s.rank);
    let iso = |x: &DenseMatrix| {
        x.adjoint()
            .matmul(x)
            .and_then(|g| g.sub(&eye))
            .map_or(f64::INFINITY, |d| d.max_abs())
    };
    let gram = |x: DenseMatrix| x.adjoint().matmul(&x).map_or(f64::INFINITY, |g| g.max_off_diagonal());
    let left = m.matmul(&s.u).map_or(f64::INFINITY, gram);
    let right = m.adjoint().matmul(&s.v).map_or(f64::INFINITY, gram);
    SpectralDeviations {
        residual: s.residual(m),
        u_isometry: iso(&s.u),
        v_isometry: iso(&s.v),
        gram_off_diagonal: left.max(right),
    }
}

/// Check reconstruction, isometry, Gram diagonality and ordering of `s`.
pub fn check_spectral(m: &DenseMatrix, s: &SpectralNucleus, tols: SpectralTolerances) -> Report {
    let d = spectral_deviations(m, s);
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    let mut r = Report::new();
    r.require(
        d.residual <= tols.residual * m.frobenius().max(1.0),
        "reconstruction Φ = V·diag(σ)·U‡",
        || format!("residual {:e}", d.residual),
    );
    r.require(d.u_isometry <= tols.isometry, "U‡U = I", || format!("deviation {:e}", d.u_isometry));
    r.require(d.v_isometry <= tols.isometry, "V‡V = I", || format!("deviation {:e}", d.v_isometry));
    r.require(d.gram_off_diagonal <= tols.gram * smax.max(f64::MIN_POSITIVE), "nucleus Grams diagonal", || {
        format!("off-diagonal {:e}", d.gram_off_diagonal)
    });
    r.require(s.sigma.windows(2).all(|w| w[0] >= w[1]), "σ nonincreasing", || format!("{:?}", s.sigma));
    r.require(s.sigma.iter().all(|&x| x > 0.0), "σ positive", || format!("{:?}", s.sigma));
    r
}

/// Outcome of re-running the nucleus on `diag(σ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Idempotence {
    pub sigma: Vec<f64>,
    pub again: Vec<f64>,
    pub max_deviation: f64,
    pub report: Report,
}

/// The nucleus of `diag(σ)` must have the same singular values.
pub fn nucleus_idempotence_check(m: &DenseMatrix, tol: f64) -> Result<Idempotence, LinalgError> {
    let s = svd_nucleus(m, tol)?;
    let again = svd_nucleus(&DenseMatrix::diag(&s.sigma), tol)?;
    let mut r = Report::new();
    let max_deviation = if again.rank == s.rank {
        s.sigma
            .iter()
            .zip(&again.sigma)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()))
    } else {
        f64::INFINITY
    };
    r.require(again.rank == s.rank, "re-nucleus preserves rank", || {
        format!("{} vs {}", s.rank, again.rank)
    });
    let scale = s.sigma.first().copied().unwrap_or(0.0).max(1.0);
    r.require(max_deviation <= tol.max(1e-9) * scale, "re-nucleus preserves σ", || {
        format!("max deviation {max_deviation:e}")
    });
    Ok(Idempotence {
        sigma: s.sigma,
        again: again.sigma,
        max_deviation,
        report: r,
    })
}
