//! Drazin index, Drazin and group inverses, core-nilpotent decomposition,
//! and the axiom verifier used as the oracle throughout the crate.
//!
//! The Drazin inverse is computed with Cline's rank-factorization
//! recursion: factor `a = B₁C₁` with full-rank factors, continue with
//! `a₁ = C₁B₁`, and stop once `a_k` is invertible or zero. Then
//!
//! ```text
//! a^D = B₁⋯B_k · a_k^{-(k+1)} · C_k⋯C₁      (a_k invertible)
//! a^D = 0                                   (a_k = 0)
//! ```
//!
//! Every step is division-free apart from the echelon reduction and the
//! final inverse, so the exact backend reproduces `a^D` with no round-off.
//!
//! In `M_n(ℂ)` every quasinilpotent is nilpotent, so the generalized
//! (g-)Drazin inverse and the Drazin inverse coincide; a single routine
//! serves both.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, require_square, COMMUTANT_DIM_BOUND};
use crate::matrix::Matrix;
use crate::report::{HypothesisReport, Residual};
use crate::scalar::{Backend, Scalar, Tolerance};

/// Drazin inverse of `a` together with its index and the core-nilpotent
/// split `a = core + nilpotent`.
#[derive(Debug, Clone, PartialEq)]
pub struct DrazinResult<S> {
    /// `a^D`.
    pub inverse: Matrix<S>,
    /// `i(a)`, the smallest `k` with `rank a^k = rank a^{k+1}`.
    pub index: usize,
    /// Spectral idempotent `a·a^D`.
    pub projector: Matrix<S>,
    /// `a²a^D`, group invertible.
    pub core: Matrix<S>,
    /// `a - a²a^D`, nilpotent of order `index`.
    pub nilpotent: Matrix<S>,
}

impl<S: Scalar> DrazinResult<S> {
    /// Packages `x` as the Drazin inverse of `a` with the given index,
    /// deriving the projector and the core-nilpotent parts.
    pub fn assemble(a: &Matrix<S>, inverse: Matrix<S>, index: usize) -> Self {
        let projector = a * &inverse;
        let core = a * &projector;
        let nilpotent = a - &core;
        DrazinResult { inverse, index, projector, core, nilpotent }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupResult<S> {
    /// `a^#`.
    pub inverse: Matrix<S>,
}

fn check_input<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Result<()> {
    require_square(a)?;
    if a.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if S::BACKEND == Backend::F64 && !tol.is_valid() {
        return Err(Error::InvalidTolerance);
    }
    Ok(())
}

/// Drazin index from the rank chain `rank a⁰ ≥ rank a¹ ≥ …`.
///
/// `index(a) = 0` exactly when `a` is invertible. For `a = 0` (any `n ≥ 1`)
/// the chain is `n, 0, 0, …`, giving index 1, and `0` is its own group
/// inverse.
pub fn index<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Result<usize> {
    check_input(a, tol)?;
    Ok(index_unchecked(a, tol))
}

pub(crate) fn index_unchecked<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> usize {
    if S::BACKEND == Backend::F64 {
        // float ranks of powers drift with the scale of a^k; the chain keeps
        // one threshold throughout
        return factor_chain(a, tol).index();
    }
    let n = a.rows();
    let mut power = Matrix::identity(n);
    let mut prev_rank = n;
    for k in 0..=n {
        let next = &power * a;
        let r = linalg::rank(&next, tol);
        if r == prev_rank {
            return k;
        }
        prev_rank = r;
        power = next;
    }
    // the chain has at most n strict decreases
    n
}

/// Factors `a = B₁C₁`, `C₁B₁ = B₂C₂`, … until the current block is
/// invertible (`core = Some`) or zero (`core = None`).
struct FactorChain<S> {
    lefts: Vec<Matrix<S>>,
    rights: Vec<Matrix<S>>,
    core: Option<Matrix<S>>,
}

impl<S> FactorChain<S> {
    fn index(&self) -> usize {
        self.lefts.len() + usize::from(self.core.is_none())
    }
}

/// Exact mode: pivot columns times reduced echelon rows. Float mode:
/// pivoted QR with the threshold fixed at `rank_tol` times the largest
/// column norm of `a`, so round-off left in a block that is zero in exact
/// arithmetic is not mistaken for rank.
fn factor_chain<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> FactorChain<S> {
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    let mut current = a.clone();
    let float_scale = column_norm_max(a);
    loop {
        let (b, c) = match S::BACKEND {
            Backend::Exact => linalg::full_rank_factorization(&current, tol),
            Backend::F64 => {
                let (b, c) = linalg::qr_rank_factorization(&current.to_float(), float_scale, tol.rank_tol);
                (from_float(&b), from_float(&c))
            }
        };
        let r = b.cols();
        if r == current.rows() {
            return FactorChain { lefts, rights, core: Some(current) };
        }
        if r == 0 {
            return FactorChain { lefts, rights, core: None };
        }
        current = &c * &b;
        lefts.push(b);
        rights.push(c);
    }
}

fn column_norm_max<S: Scalar>(a: &Matrix<S>) -> f64 {
    (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].to_c64().norm_sqr()).sum::<f64>().sqrt()).fold(0.0, f64::max)
}

fn from_float<S: Scalar>(m: &crate::matrix::FloatMatrix) -> Matrix<S> {
    m.map(|z| S::from_c64(*z).expect("finite float entry"))
}

/// The invertible block `a_k = C_kB_k` ending the rank-factorization
/// recursion (`0×0` when `a` is nilpotent). Each step maps `BC` to `CB`,
/// which keeps the nonzero eigenvalues with their multiplicities, so the
/// spectrum of the block is exactly the nonzero spectrum of `a`.
pub fn invertible_core<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    check_input(a, tol)?;
    Ok(factor_chain(a, tol).core.unwrap_or_else(|| Matrix::zeros(0, 0)))
}

/// Drazin inverse by the rank-factorization recursion.
///
/// Exact mode cannot fail on square nonempty input, and the recursion depth
/// always equals the index read off the rank chain of powers. In float mode
/// the index is the recursion depth itself; a final block that the pivoted
/// QR kept as full rank but elimination finds singular means the input is
/// too ill-conditioned for the tolerances and is reported as
/// [`Error::NoConvergence`].
pub fn drazin<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Result<DrazinResult<S>> {
    check_input(a, tol)?;
    let n = a.rows();
    let chain = factor_chain(a, tol);
    let index = chain.index();
    debug_assert!(S::BACKEND == Backend::F64 || index == index_unchecked(a, tol), "rank chain and recursion disagree");

    let inverse = match &chain.core {
        Some(core) => {
            let core_inverse = linalg::inverse(core, tol).map_err(|e| match e {
                Error::Singular => {
                    Error::NoConvergence("rank decisions of the factorization recursion are inconsistent")
                }
                e => e,
            })?;
            let mut middle = core_inverse.pow(index as u32 + 1);
            for b in chain.lefts.iter().rev() {
                middle = b * &middle;
            }
            for c in chain.rights.iter().rev() {
                middle = &middle * c;
            }
            middle
        }
        None => Matrix::zeros(n, n),
    };
    Ok(DrazinResult::assemble(a, inverse, index))
}

/// Group inverse; exists iff `index(a) <= 1`.
pub fn group<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Result<GroupResult<S>> {
    let d = drazin(a, tol)?;
    if d.index >= 2 {
        return Err(Error::NoGroupInverse { index: d.index });
    }
    Ok(GroupResult { inverse: d.inverse })
}

pub const AXIOM_XAX: &str = "xax = x";
pub const AXIOM_COMMUTE: &str = "ax = xa";
pub const AXIOM_POWER: &str = "a^(k+1) x = a^k";
pub const AXIOM_COMM2: &str = "x in comm2(a)";

/// Checks `xax = x`, `ax = xa`, `a^{k+1}x = a^k` and, in exact mode for
/// `n <= 6`, `x ∈ comm²(a)`. Failures are reported, never raised.
pub fn verify_drazin_axioms<S: Scalar>(
    a: &Matrix<S>,
    x: &Matrix<S>,
    k: usize,
    tol: &Tolerance,
) -> Result<HypothesisReport> {
    verify_drazin_axioms_bounded(a, x, k, tol, COMMUTANT_DIM_BOUND)
}

/// [`verify_drazin_axioms`] with an explicit size bound for the
/// double-commutant clause; above the bound (or in float mode) that clause
/// is reported as skipped.
pub fn verify_drazin_axioms_bounded<S: Scalar>(
    a: &Matrix<S>,
    x: &Matrix<S>,
    k: usize,
    tol: &Tolerance,
    comm2_bound: usize,
) -> Result<HypothesisReport> {
    require_square(a)?;
    if x.rows() != a.rows() || x.cols() != a.cols() {
        return Err(Error::DimensionMismatch { left: (a.rows(), a.cols()), right: (x.rows(), x.cols()) });
    }
    let mut report = HypothesisReport::new();
    let ax = a * x;
    let xa = x * a;
    report.push_eq(AXIOM_XAX, &(&xa * x), x, tol);
    report.push_eq(AXIOM_COMMUTE, &ax, &xa, tol);
    let ak = a.pow(k as u32);
    report.push_eq(AXIOM_POWER, &(&(&ak * a) * x), &ak, tol);
    report.push(AXIOM_COMM2, double_commutant_residual(a, x, comm2_bound), tol);
    Ok(report)
}

/// Max residual of `xK - Kx` over a basis `K` of `comm(a)`, or `Skipped`
/// when the commutant cannot be computed (float mode or `n > bound`).
pub fn double_commutant_residual<S: Scalar>(a: &Matrix<S>, x: &Matrix<S>, bound: usize) -> Residual {
    match linalg::commutant_basis(a, bound) {
        Ok(basis) => basis.iter().map(|k| (x * k).residual(&(k * x))).fold(Residual::ExactZero, Residual::max),
        Err(_) => Residual::Skipped,
    }
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
    fn index_examples() {
        assert_eq!(index(&M::identity(3), &tol()).unwrap(), 0);
        assert_eq!(index(&M::shift(4), &tol()).unwrap(), 4);
        assert_eq!(index(&M::shift(4).pow(2), &tol()).unwrap(), 2);
        assert_eq!(index(&M::zeros(3, 3), &tol()).unwrap(), 1);
    }

    #[test]
    fn drazin_examples() {
        let d = drazin(&M::identity(4), &tol()).unwrap();
        assert_eq!((d.inverse, d.index), (M::identity(4), 0));

        let d = drazin(&M::shift(3), &tol()).unwrap();
        assert_eq!((d.inverse.clone(), d.index), (M::zeros(3, 3), 3));
        assert_eq!(d.nilpotent, M::shift(3));

        let p = M::from_i64(2, &[1, 1, 0, 0]);
        let d = drazin(&p, &tol()).unwrap();
        assert_eq!((d.inverse.clone(), d.index), (p.clone(), 1));
        let report = verify_drazin_axioms(&p, &d.inverse, 1, &tol()).unwrap();
        assert!(report.overall && report.all_exact_zero(), "{report:?}");
    }

    #[test]
    fn zero_matrix_is_its_own_group_inverse() {
        let z = M::zeros(3, 3);
        let d = drazin(&z, &tol()).unwrap();
        assert_eq!((d.inverse, d.index), (z.clone(), 1));
        assert_eq!(group(&z, &tol()).unwrap().inverse, z);
    }

    #[test]
    fn drazin_of_mixed_block() {
        // diag(2, J2): a^D = diag(1/2, 0, 0), index 2
        let a = M::diag(&[q(2, 1)]).direct_sum(&M::shift(2));
        let d = drazin(&a, &tol()).unwrap();
        assert_eq!(d.index, 2);
        assert_eq!(d.inverse, M::diag(&[q(1, 2), q(0, 1), q(0, 1)]));
        assert_eq!(&d.core + &d.nilpotent, a);
        assert_eq!(&d.projector * &d.projector, d.projector);
    }

    #[test]
    fn float_drazin_matches_exact() {
        let a = M::from_i64(3, &[1, 2, 0, 0, 0, 1, 0, 0, 0]);
        let exact = drazin(&a, &tol()).unwrap();
        let float = drazin(&a.to_float(), &tol()).unwrap();
        assert_eq!(exact.index, float.index);
        assert!(exact.inverse.to_float().approx_eq(&float.inverse, &tol()));
    }

    #[test]
    fn group_examples() {
        let g = group(&M::diag(&[q(3, 1), q(0, 1)]), &tol()).unwrap();
        assert_eq!(g.inverse, M::diag(&[q(1, 3), q(0, 1)]));
        assert_eq!(group(&M::shift(2), &tol()), Err(Error::NoGroupInverse { index: 2 }));
        let p = M::from_i64(2, &[1, 1, 0, 0]);
        assert_eq!(group(&p, &tol()).unwrap().inverse, p);
    }

    #[test]
    fn axiom_verifier_examples() {
        let r = verify_drazin_axioms(&M::identity(3), &M::identity(3), 0, &tol()).unwrap();
        assert!(r.overall && r.all_exact_zero());

        let j = M::shift(3);
        let r = verify_drazin_axioms(&j, &M::zeros(3, 3), 3, &tol()).unwrap();
        assert!(r.overall);

        let r = verify_drazin_axioms(&j, &j.transpose(), 1, &tol()).unwrap();
        assert!(!r.overall);
        assert!(!r.get(AXIOM_COMMUTE).unwrap().holds);
    }

    #[test]
    fn comm2_is_skipped_in_float_mode() {
        let a = FloatMatrix::identity(2);
        let r = verify_drazin_axioms(&a, &a, 0, &tol()).unwrap();
        assert!(r.overall);
        assert!(r.get(AXIOM_COMM2).unwrap().skipped());
    }

    #[test]
    fn comm2_rejects_non_polynomial_candidate() {
        // a = I: every matrix commutes with a, but comm²(I) is the scalars
        let a = M::identity(2);
        let x = M::diag(&[q(1, 1), q(2, 1)]);
        let r = verify_drazin_axioms(&a, &x, 0, &tol()).unwrap();
        assert!(!r.get(AXIOM_COMM2).unwrap().holds);
    }

    #[test]
    fn rejects_empty_and_rectangular() {
        assert_eq!(drazin(&M::zeros(0, 0), &tol()), Err(Error::EmptyMatrix));
        assert!(matches!(index(&M::zeros(2, 3), &tol()), Err(Error::NotSquare { .. })));
        assert_eq!(drazin(&FloatMatrix::identity(2), &Tolerance::new(0.0, 1e-9)), Err(Error::InvalidTolerance));
    }
}
