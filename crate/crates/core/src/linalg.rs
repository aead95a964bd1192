//! Elimination-based kernels: echelon form, rank, inverse, null space,
//! full-rank factorization and commutant bases.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Backend, Scalar, Tolerance};

/// Default size bound for [`commutant_basis`]; the linear system has `n²`
/// unknowns.
pub const COMMUTANT_DIM_BOUND: usize = 6;

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub(crate) fn require_square<S>(a: &Matrix<S>) -> Result<()>
where
    S: Scalar,
{
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    Ok(())
}

/// Gauss-Jordan elimination.
///
/// Exact backend: the first nonzero entry of each column is the pivot and
/// only true zeros are skipped. Float backend: partial pivoting on the
/// largest modulus; a candidate pivot is treated as zero when it falls below
/// `rank_tol` times the largest entry of the input (the leading pivot under
/// complete pivoting), which keeps the rank decision scale invariant.
pub fn rref<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Echelon<S> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let reference = a.max_abs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let candidate = match S::BACKEND {
            Backend::Exact => (r..rows).find(|&i| !m[(i, c)].is_zero()),
            Backend::F64 => (r..rows)
                .max_by(|&i, &k| m[(i, c)].modulus().total_cmp(&m[(k, c)].modulus()))
                .filter(|&i| !m[(i, c)].negligible(reference, tol.rank_tol)),
        };
        let Some(p) = candidate else {
            if S::BACKEND == Backend::F64 {
                for i in r..rows {
                    m[(i, c)] = S::zero();
                }
            }
            continue;
        };
        m.swap_rows(r, p);
        let inv = S::one() / m[(r, c)].clone();
        for j in c..cols {
            let v = m[(r, j)].clone() * inv.clone();
            m[(r, j)] = v;
        }
        m[(r, c)] = S::one();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..cols {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                m[(i, j)] = v;
            }
            m[(i, c)] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    if S::BACKEND == Backend::F64 {
        for i in r..rows {
            for j in 0..cols {
                m[(i, j)] = S::zero();
            }
        }
    }
    Echelon { reduced: m, pivots }
}

/// Rank over ℚ(i) (exact) or numerical rank (float).
pub fn rank<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> usize {
    rref(a, tol).rank()
}

pub fn is_invertible<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> bool {
    a.is_square() && rank(a, tol) == a.rows()
}

/// Two-sided inverse via Gauss-Jordan on `[a | I]`.
pub fn inverse<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    require_square(a)?;
    let n = a.rows();
    let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            S::one()
        } else {
            S::zero()
        }
    });
    let ech = rref(&augmented, tol);
    if ech.pivots.iter().take_while(|&&c| c < n).count() < n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| ech.reduced[(i, n + j)].clone()))
}

/// Basis of `{x : a x = 0}`, one vector per free column.
pub fn null_space<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Vec<Vec<S>> {
    let ech = rref(a, tol);
    let cols = a.cols();
    let mut is_pivot = alloc::vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = alloc::vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// `a = left · right` with `left` of full column rank (`n×r`, the pivot
/// columns of `a`) and `right` of full row rank (`r×n`, the nonzero rows of
/// the reduced echelon form). For `r = 0` both factors are empty.
pub fn full_rank_factorization<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> (Matrix<S>, Matrix<S>) {
    let ech = rref(a, tol);
    let left = a.select_columns(&ech.pivots);
    let right = ech.reduced.top_rows(ech.rank());
    (left, right)
}

/// Float full-rank factorization `a ≈ left · right` by Householder QR with
/// column pivoting: `left` has orthonormal columns and `right` is the
/// leading `r` rows of `R`, unpermuted. Elimination stops once the largest
/// remaining column norm is at most `rank_tol * reference`, so callers can
/// hold the threshold fixed across a chain of derived matrices.
///
/// Orthonormal factors keep `right · left` as well conditioned as the
/// nonzero part of `a`; the pivot-column factorization used in exact mode
/// can lose several digits here.
pub fn qr_rank_factorization(
    a: &Matrix<Complex64>,
    reference: f64,
    rank_tol: f64,
) -> (Matrix<Complex64>, Matrix<Complex64>) {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut q = Matrix::<Complex64>::identity(m);
    let mut perm: Vec<usize> = (0..n).collect();
    let threshold = rank_tol * reference;
    let mut rank = 0;
    while rank < m.min(n) {
        let k = rank;
        let col_norm = |r: &Matrix<Complex64>, j: usize| (k..m).map(|i| r[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        let (best, norm) =
            (k..n).map(|j| (j, col_norm(&r, j))).fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if norm <= threshold {
            break;
        }
        if best != k {
            for i in 0..m {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, best)];
                r[(i, best)] = t;
            }
            perm.swap(k, best);
        }
        // reflector v with (I - 2vv*) x = alpha e1
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm > 0.0 {
            for z in &mut v {
                *z /= v_norm;
            }
            for j in k..n {
                let dot: Complex64 = (k..m).map(|i| v[i - k].conj() * r[(i, j)]).sum();
                for i in k..m {
                    r[(i, j)] -= v[i - k] * dot * 2.0;
                }
            }
            for i in 0..m {
                let dot: Complex64 = (k..m).map(|l| q[(i, l)] * v[l - k]).sum();
                for l in k..m {
                    q[(i, l)] -= dot * v[l - k].conj() * 2.0;
                }
            }
        }
        r[(k, k)] = alpha;
        for i in k + 1..m {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
        rank += 1;
    }
    let left = Matrix::from_fn(m, rank, |i, j| q[(i, j)]);
    let mut right = Matrix::zeros(rank, n);
    for (j, &p) in perm.iter().enumerate() {
        for i in 0..rank.min(j + 1) {
            right[(i, p)] = r[(i, j)];
        }
    }
    (left, right)
}

/// Basis of `comm(a) = {k : ka = ak}` as exact matrices.
///
/// Solves the `n² × n²` homogeneous system `ka - ak = 0`; only available on
/// the exact backend and for `n <= bound`.
pub fn commutant_basis<S: Scalar>(a: &Matrix<S>, bound: usize) -> Result<Vec<Matrix<S>>> {
    require_square(a)?;
    if S::BACKEND != Backend::Exact {
        return Err(Error::RequiresExact(S::BACKEND));
    }
    let n = a.rows();
    if n > bound {
        return Err(Error::DimensionTooLarge { dim: n, bound });
    }
    let unknowns = n * n;
    // Row (i, j) of the system is entry (i, j) of ka - ak; unknown (p, q) is k_pq.
    let mut system: Matrix<S> = Matrix::zeros(unknowns, unknowns);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for q in 0..n {
                let v = system[(row, i * n + q)].clone() + a[(q, j)].clone();
                system[(row, i * n + q)] = v;
            }
            for p in 0..n {
                let v = system[(row, p * n + j)].clone() - a[(i, p)].clone();
                system[(row, p * n + j)] = v;
            }
        }
    }
    let basis = null_space(&system, &Tolerance::default());
    Ok(basis.into_iter().map(|v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ExactMatrix, FloatMatrix};
    use crate::scalar::GaussianRational;

    type M = ExactMatrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&M::zeros(3, 3), &tol()), 0);
        assert_eq!(rank(&M::identity(5), &tol()), 5);
        assert_eq!(rank(&M::shift(4), &tol()), 3);
    }

    #[test]
    fn float_rank_is_scale_invariant() {
        let a = FloatMatrix::from_i64(3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(rank(&a, &tol()), 2);
        let tiny = a.scale(&num_complex::Complex64::new(1e-20, 0.0));
        assert_eq!(rank(&tiny, &tol()), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&M::identity(4), &tol()).unwrap(), M::identity(4));
        let d = M::diag(&[q(2, 1), q(1, 2)]);
        assert_eq!(inverse(&d, &tol()).unwrap(), M::diag(&[q(1, 2), q(2, 1)]));
        let n = M::shift(4).pow(2);
        let a = &M::identity(4) - &n;
        assert_eq!(inverse(&a, &tol()).unwrap(), &M::identity(4) + &n);
    }

    #[test]
    fn inverse_of_singular_fails() {
        assert_eq!(inverse(&M::shift(3), &tol()), Err(Error::Singular));
        assert!(matches!(inverse(&M::zeros(2, 3), &tol()), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn full_rank_factorization_reproduces_input() {
        let a = M::from_i64(3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]);
        let (b, c) = full_rank_factorization(&a, &tol());
        assert_eq!((b.rows(), b.cols(), c.rows(), c.cols()), (3, 2, 2, 3));
        assert_eq!(&b * &c, a);
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant_basis(&M::identity(2), 6).unwrap().len(), 4);
        let d = M::diag(&[q(1, 1), q(2, 1)]);
        assert_eq!(commutant_basis(&d, 6).unwrap().len(), 2);

        // comm(J2) = span{I, J2}
        let j = M::shift(2);
        let basis = commutant_basis(&j, 6).unwrap();
        assert_eq!(basis.len(), 2);
        for k in &basis {
            assert_eq!(&(k * &j), &(&j * k));
            assert_eq!(k[(1, 0)], q(0, 1));
            assert_eq!(k[(0, 0)], k[(1, 1)]);
        }
    }

    #[test]
    fn commutant_guards() {
        assert_eq!(commutant_basis(&M::identity(7), 6).unwrap_err(), Error::DimensionTooLarge { dim: 7, bound: 6 });
        assert_eq!(commutant_basis(&FloatMatrix::identity(2), 6).unwrap_err(), Error::RequiresExact(Backend::F64));
    }
}
