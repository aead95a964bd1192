//! Eigenvalues of small dense complex matrices.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! complex QR iteration with Wilkinson shifts and Givens rotations.
//! Exact input is rounded entrywise to the nearest double before iterating.
//! Accuracy is about machine epsilon times the matrix norm for
//! well-conditioned eigenvalues; a defective eigenvalue of multiplicity `m`
//! is only resolved to roughly `eps^(1/m)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::require_square;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Largest dimension the solver accepts.
pub const EIGEN_DIM_BOUND: usize = 8;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 100;

fn sqrt(x: f64) -> f64 {
    num_traits::Float::sqrt(x)
}

/// All `n` eigenvalues with multiplicity, sorted by real then imaginary part.
pub fn eigenvalues<S: Scalar>(a: &Matrix<S>) -> Result<Vec<Complex64>> {
    require_square(a)?;
    let n = a.rows();
    if n > EIGEN_DIM_BOUND {
        return Err(Error::DimensionTooLarge { dim: n, bound: EIGEN_DIM_BOUND });
    }
    let mut h = a.to_float();
    if h.entries().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NoConvergence("non-finite matrix entry"));
    }
    hessenberg(&mut h);
    let mut values = qr_iterate(&mut h)?;
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(values)
}

fn hessenberg(h: &mut Matrix<Complex64>) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let norm = sqrt((k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>());
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = sqrt(v.iter().map(Complex64::norm_sqr).sum::<f64>());
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // h <- (I - 2vv*) h on rows k+1..n
        for j in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i - k - 1].conj() * h[(i, j)]).sum();
            for i in k + 1..n {
                h[(i, j)] -= v[i - k - 1] * dot * 2.0;
            }
        }
        // h <- h (I - 2vv*) on columns k+1..n
        for i in 0..n {
            let dot: Complex64 = (k + 1..n).map(|j| h[(i, j)] * v[j - k - 1]).sum();
            for j in k + 1..n {
                h[(i, j)] -= dot * v[j - k - 1].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    /// Rotation mapping `(x, y)` to `(r, 0)`.
    fn zeroing(x: Complex64, y: Complex64) -> Self {
        let r = sqrt(x.norm_sqr() + y.norm_sqr());
        if r == 0.0 {
            return Givens { c: 1.0, s: Complex64::new(0.0, 0.0) };
        }
        let ax = x.norm();
        if ax == 0.0 {
            return Givens { c: 0.0, s: y.conj() / y.norm() };
        }
        Givens { c: ax / r, s: (x / ax) * y.conj() / r }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // eigenvalue of [[a, b], [c, d]] closest to d
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_iterate(h: &mut Matrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut values = Vec::with_capacity(n);
    if n == 0 {
        return Ok(values);
    }
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    loop {
        if hi == 0 {
            values.push(h[(0, 0)]);
            break;
        }
        // locate the bottom of the unreduced block ending at hi
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let thresh = if local == 0.0 { eps * scale } else { eps * local };
            if sub <= thresh {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            values.push(h[(hi, hi)]);
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NoConvergence("QR iteration exceeded its sweep cap"));
        }
        let mu = if sweeps.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(h, lo, hi, mu);
    }
    Ok(values)
}

fn qr_step(h: &mut Matrix<Complex64>, lo: usize, hi: usize, mu: Complex64) {
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let g = Givens::zeroing(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (x, y) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = x * g.c + g.s * y;
            h[(k + 1, j)] = -g.s.conj() * x + y * g.c;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        rotations.push(g);
    }
    for (offset, g) in rotations.iter().enumerate() {
        let k = lo + offset;
        for i in lo..=(k + 1).min(hi) {
            let (x, y) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = x * g.c + y * g.s.conj();
            h[(i, k + 1)] = -x * g.s + y * g.c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ExactMatrix, FloatMatrix};

    fn close(got: &[Complex64], want: &[(f64, f64)], tol: f64) -> bool {
        got.len() == want.len() && got.iter().zip(want).all(|(g, &(re, im))| (g - Complex64::new(re, im)).norm() <= tol)
    }

    #[test]
    fn diagonal() {
        let a = ExactMatrix::from_i64(3, &[3, 0, 0, 0, 1, 0, 0, 0, 2]);
        let ev = eigenvalues(&a).unwrap();
        assert!(close(&ev, &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], 1e-12), "{ev:?}");
    }

    #[test]
    fn nilpotent_shift() {
        let ev = eigenvalues(&ExactMatrix::shift(4)).unwrap();
        assert!(ev.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn idempotent_two_by_two() {
        let ev = eigenvalues(&FloatMatrix::from_i64(2, &[1, 1, 0, 0])).unwrap();
        assert!(close(&ev, &[(0.0, 0.0), (1.0, 0.0)], 1e-12), "{ev:?}");
    }

    #[test]
    fn rotation_has_complex_pair() {
        let ev = eigenvalues(&FloatMatrix::from_i64(2, &[0, -1, 1, 0])).unwrap();
        assert!(close(&ev, &[(0.0, -1.0), (0.0, 1.0)], 1e-12), "{ev:?}");
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let a = FloatMatrix::from_i64(4, &[10, -35, 50, -24, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0]);
        let ev = eigenvalues(&a).unwrap();
        assert!(close(&ev, &[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)], 1e-9), "{ev:?}");
    }

    #[test]
    fn trace_and_size_are_preserved() {
        let a = FloatMatrix::from_i64(
            6,
            &[
                1, 2, 0, -1, 3, 1, 0, 1, 2, 2, -1, 0, 4, 0, -2, 1, 1, 1, 1, 1, 1, 0, 2, -3, 0, 2, 2, 1, 1, 0, -1, 0, 1,
                3, 2, 2,
            ],
        );
        let ev = eigenvalues(&a).unwrap();
        assert_eq!(ev.len(), 6);
        let sum: Complex64 = ev.iter().sum();
        assert!((sum - a.trace()).norm() < 1e-9);
    }

    #[test]
    fn too_large() {
        assert!(matches!(eigenvalues(&FloatMatrix::identity(9)), Err(Error::DimensionTooLarge { dim: 9, bound: 8 })));
    }
}
