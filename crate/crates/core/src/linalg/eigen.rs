use super::matrix::{dot, norm};
use super::{DenseMatrix, LinalgError};

pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in nonincreasing order and the matching orthonormal
/// eigenvectors as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Rotate columns `p`, `q` of `m` by `(c, s)`.
fn rotate_columns(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..m.rows() {
        let (x, y) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = c * x - s * y;
        m[(k, q)] = s * x + c * y;
    }
}

/// Cyclic Jacobi on a symmetric matrix.
pub fn sym_eigen(g: &DenseMatrix, tol: f64) -> Result<Eigen, LinalgError> {
    if !(tol > 0.0) {
        return Err(LinalgError::BadTolerance(tol));
    }
    let asym = g.asymmetry();
    if asym > tol * g.max_abs().max(1.0) {
        return Err(LinalgError::Asymmetric(asym));
    }
    let n = g.rows();
    let mut a = g.clone();
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = m;
            a[(j, i)] = m;
        }
    }
    let mut v = DenseMatrix::identity(n);
    let scale = a.frobenius();
    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off.sqrt() <= f64::EPSILON * scale || off == 0.0 {
            converged = true;
            break;
        }
        // Threshold strategy: early sweeps skip small entries.
        let threshold = if sweep < 3 { 0.2 * off.sqrt() / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A ← Jᵀ A J with J the rotation in the (p, q) plane.
                rotate_columns(&mut a, p, q, c, s);
                for k in 0..n {
                    let (x, y) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * x - s * y;
                    a[(q, k)] = s * x + c * y;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                rotate_columns(&mut v, p, q, c, s);
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence(MAX_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut columns: Vec<Vec<f64>> = order.iter().map(|&i| v.column(i)).collect();
    let spread = values.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    canonicalize(&mut columns, &values, tol * spread);
    Ok(Eigen {
        values,
        vectors: DenseMatrix::from_columns(n, &columns),
    })
}

/// Make an eigenbasis deterministic: within each cluster of values closer
/// than `gap`, replace the basis by Gram-Schmidt on the projections of the
/// standard axes taken in order; then make the first clearly nonzero entry
/// of every column positive.
pub fn canonicalize(columns: &mut [Vec<f64>], values: &[f64], gap: f64) {
    let mut start = 0;
    while start < columns.len() {
        let mut end = start + 1;
        while end < columns.len() && (values[end - 1] - values[end]).abs() <= gap {
            end += 1;
        }
        if end - start > 1 {
            let basis = canonical_basis(&columns[start..end]);
            columns[start..end].clone_from_slice(&basis);
        }
        start = end;
    }
    for c in columns.iter_mut() {
        fix_sign(c);
    }
}

pub fn fix_sign(c: &mut [f64]) {
    if let Some(&x) = c.iter().find(|x| x.abs() > 1e-8) {
        if x < 0.0 {
            c.iter_mut().for_each(|y| *y = -*y);
        }
    }
}

fn canonical_basis(cluster: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = cluster[0].len();
    let k = cluster.len();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(k);
    for axis in 0..n {
        if out.len() == k {
            break;
        }
        // Projection of e_axis onto the cluster's span.
        let mut w = vec![0.0; n];
        for q in cluster {
            let coef = q[axis];
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi += coef * qi;
            }
        }
        for _ in 0..2 {
            for b in &out {
                let d = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= d * bi;
                }
            }
        }
        let len = norm(&w);
        if len > 1e-3 {
            out.push(w.into_iter().map(|x| x / len).collect());
        }
    }
    debug_assert_eq!(out.len(), k);
    out
}
