//! Spectral transfer between `ac` and `bd`.
//!
//! For matrices every element is g-Drazin invertible, so the Drazin-type
//! spectra `σ_d` and `σ_D` are empty and equality between them says
//! nothing. What survives at finite size:
//!
//! * for each `λ ≠ 0`, `λI - ac` is invertible iff `λI - bd` is, with the
//!   explicit inverse from [`crate::cline::jacobson_inverse`] applied to `(a/λ, b, c, d/λ)`;
//! * the nonzero eigenvalues of `ac` and `bd` agree as multisets.
//!
//! Nonzero eigenvalues are read off the invertible block that ends the
//! rank-factorization recursion ([`drazin::invertible_core`]) rather than
//! off the full matrix. The nilpotent part would otherwise smear the zero
//! eigenvalue into a ring of radius about `eps^(1/m)`, which can exceed
//! any sensible cut-off. Computed eigenvalues closer than
//! [`CLUSTER_RADIUS`] (relative) are replaced by their cluster mean, which
//! recovers defective eigenvalues to near machine precision.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cline::{jacobson_formula, require_family, ClineQuadruple, ConditionFamily};
use crate::drazin;
use crate::eigen;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::report::Residual;
use crate::scalar::{Backend, Scalar, Tolerance};

pub const DEFAULT_MATCH_TOL: f64 = 1e-6;

/// Relative radius under which computed eigenvalues are merged.
pub const CLUSTER_RADIUS: f64 = 1e-4;

/// Offset added to eigenvalues of `ac` when sampling `λ` near the spectrum.
pub const NEAR_EIGEN_OFFSET: f64 = 1e-3;

pub const DEFAULT_LAMBDA_SAMPLES: usize = 20;

/// Multiset of complex numbers compared up to `match_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    pub values: Vec<Complex64>,
    pub match_tol: f64,
}

impl SpectrumSet {
    pub fn new(values: Vec<Complex64>, match_tol: f64) -> Self {
        SpectrumSet { values, match_tol }
    }

    /// All eigenvalues of `a`, with multiplicity.
    pub fn of<S: Scalar>(a: &Matrix<S>) -> Result<Self> {
        Ok(SpectrumSet::new(eigen::eigenvalues(a)?, DEFAULT_MATCH_TOL))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Drops values of modulus below `match_tol`.
    pub fn nonzero(&self) -> Self {
        let values = self.values.iter().copied().filter(|z| z.norm() >= self.match_tol).collect();
        SpectrumSet::new(values, self.match_tol)
    }

    /// Multiset equality: repeatedly pair the closest remaining values and
    /// require every pair to lie within the larger of the two tolerances.
    pub fn matches(&self, other: &SpectrumSet) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let tol = self.match_tol.max(other.match_tol);
        let mut left: Vec<Complex64> = self.values.clone();
        let mut right: Vec<Complex64> = other.values.clone();
        while !left.is_empty() {
            let mut best = (0, 0, f64::INFINITY);
            for (i, x) in left.iter().enumerate() {
                for (j, y) in right.iter().enumerate() {
                    let dist = (x - y).norm();
                    if dist < best.2 {
                        best = (i, j, dist);
                    }
                }
            }
            if best.2.is_nan() || best.2 > tol {
                return false;
            }
            left.swap_remove(best.0);
            right.swap_remove(best.1);
        }
        true
    }
}

/// Replaces each value by the mean of its cluster (single linkage at
/// `CLUSTER_RADIUS · max(1, |z|)`).
fn merge_clusters(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let radius = CLUSTER_RADIUS * values[i].norm().max(values[j].norm()).max(1.0);
            if (values[i] - values[j]).norm() <= radius {
                let (ri, rj) = (root(&mut label, i), root(&mut label, j));
                label[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| root(&mut label, i)).collect();
    (0..n)
        .map(|i| {
            let members: Vec<Complex64> = (0..n).filter(|&j| roots[j] == roots[i]).map(|j| values[j]).collect();
            members.iter().sum::<Complex64>() / members.len() as f64
        })
        .collect()
}

/// Nonzero eigenvalues of `m` with multiplicity, from its invertible core.
pub fn nonzero_eigenvalues<S: Scalar>(m: &Matrix<S>, tol: &Tolerance) -> Result<SpectrumSet> {
    let core = drazin::invertible_core(m, tol)?;
    let mut values = merge_clusters(&eigen::eigenvalues(&core)?);
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(SpectrumSet::new(values, DEFAULT_MATCH_TOL).nonzero())
}

/// Outcome at one `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaCheck {
    pub lambda: Complex64,
    pub ac_invertible: bool,
    pub bd_invertible: bool,
    /// Whether the explicit inverse of `I - (b)(d/λ)` passed its two-sided
    /// check; `None` when `λI - ac` is singular or RingFour fails.
    pub formula_verified: Option<bool>,
    pub transfer_holds: bool,
}

fn lambda_scalar<S: Scalar>(lambda: Complex64) -> Result<S> {
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(Error::ZeroLambda);
    }
    S::from_c64(lambda).ok_or(Error::InvalidInput("lambda is not a finite complex number"))
}

fn shifted_invertible<S: Scalar>(m: &Matrix<S>, lambda: &S, tol: &Tolerance) -> bool {
    let shifted = &Matrix::identity(m.rows()).scale(lambda) - m;
    linalg::is_invertible(&shifted, tol)
}

/// Two-sided inverse test. Float mode bounds the residual by `eq_tol`
/// times `n·|x|·|m|` (max-entry norms), the size of the rounding error in
/// the products themselves; near an eigenvalue `x` is large and an
/// absolute bound would reject correct inverses.
fn inverts<S: Scalar>(x: &Matrix<S>, m: &Matrix<S>, tol: &Tolerance) -> bool {
    let id = Matrix::identity(m.rows());
    let (left, right) = ((x * m).residual(&id), (m * x).residual(&id));
    match S::BACKEND {
        Backend::Exact => left == Residual::ExactZero && right == Residual::ExactZero,
        Backend::F64 => {
            let scale = (m.rows() as f64 * x.max_abs() * m.max_abs()).max(1.0);
            let bound = tol.eq_tol * scale;
            [left, right].iter().all(|r| r.value().is_some_and(|v| v <= bound))
        }
    }
}

/// Full per-`λ` check behind [`invertibility_transfer`].
pub fn lambda_check<S: Scalar>(q: &ClineQuadruple<S>, lambda: Complex64, tol: &Tolerance) -> Result<LambdaCheck> {
    let mut checks = lambda_checks(q, &[lambda], tol)?;
    Ok(checks.remove(0))
}

/// [`lambda_check`] at several points, checking the hypotheses once.
pub fn lambda_checks<S: Scalar>(
    q: &ClineQuadruple<S>,
    lambdas: &[Complex64],
    tol: &Tolerance,
) -> Result<Vec<LambdaCheck>> {
    let scalars = lambdas.iter().map(|&l| lambda_scalar::<S>(l)).collect::<Result<Vec<_>>>()?;
    require_family(q, q.family, tol)?;
    let ring_four = q.family != ConditionFamily::BanachWeak
        || crate::cline::family_report(q, ConditionFamily::RingFour, tol).overall;
    let (ac, bd) = (q.ac(), q.bd());
    lambdas
        .iter()
        .zip(scalars)
        .map(|(&lambda, l)| {
            let ac_invertible = shifted_invertible(&ac, &l, tol);
            let bd_invertible = shifted_invertible(&bd, &l, tol);
            let formula_verified = if ac_invertible && ring_four {
                let scaled = q.scaled(&(S::one() / l));
                match jacobson_formula(&scaled, tol) {
                    Ok(x) => Some(inverts(&x, &(&Matrix::identity(ac.rows()) - &scaled.bd()), tol)),
                    Err(Error::SingularAC) => Some(false),
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            let transfer_holds = ac_invertible == bd_invertible && formula_verified != Some(false);
            Ok(LambdaCheck { lambda, ac_invertible, bd_invertible, formula_verified, transfer_holds })
        })
        .collect()
}

/// `(λI - ac invertible) == (λI - bd invertible)`, plus the explicit inverse
/// check whenever it applies.
pub fn invertibility_transfer<S: Scalar>(q: &ClineQuadruple<S>, lambda: Complex64, tol: &Tolerance) -> Result<bool> {
    Ok(lambda_check(q, lambda, tol)?.transfer_holds)
}

/// Nonzero eigenvalues of `ac` and `bd` agree as multisets within
/// [`DEFAULT_MATCH_TOL`].
pub fn nonzero_spectrum_equal<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<bool> {
    require_family(q, q.family, tol)?;
    let ac = nonzero_eigenvalues(&q.ac(), tol)?;
    let bd = nonzero_eigenvalues(&q.bd(), tol)?;
    Ok(ac.matches(&bd))
}

/// `σ_d(a)` together with the reason it is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedSpectrum {
    pub spectrum: SpectrumSet,
    pub note: &'static str,
}

pub const SIGMA_D_NOTE: &str = "every square matrix has a Drazin inverse, and for matrices the \
generalized Drazin inverse coincides with it, so the Drazin spectrum is empty";

pub fn sigma_d_report<S: Scalar>(_a: &Matrix<S>) -> AnnotatedSpectrum {
    AnnotatedSpectrum { spectrum: SpectrumSet::new(Vec::new(), DEFAULT_MATCH_TOL), note: SIGMA_D_NOTE }
}

/// Grid step for near-eigenvalue samples. Snapping keeps exact
/// arithmetic at `λ` cheap (short dyadic denominators) and moves the
/// sample by at most `2^-21` per component.
const SAMPLE_GRID: f64 = 1_048_576.0;

fn snap(z: Complex64) -> Complex64 {
    Complex64::new((z.re * SAMPLE_GRID).round() / SAMPLE_GRID, (z.im * SAMPLE_GRID).round() / SAMPLE_GRID)
}

/// Deterministic `λ` samples: `1`, each distinct eigenvalue in `near`
/// offset by `1e-3` (real, then imaginary) and snapped to multiples of
/// `2^-20`, then random points on the grid `{k/4 + l/4·i : |k|, |l| <= 8}`
/// minus the origin.
pub fn lambda_samples(near: &[Complex64], seed: u64, count: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(count);
    out.push(Complex64::new(1.0, 0.0));
    let mut distinct: Vec<Complex64> = Vec::new();
    for &z in near {
        if !distinct.iter().any(|w| (w - z).norm() <= DEFAULT_MATCH_TOL) {
            distinct.push(z);
        }
    }
    for offset in [Complex64::new(NEAR_EIGEN_OFFSET, 0.0), Complex64::new(0.0, NEAR_EIGEN_OFFSET)] {
        for z in &distinct {
            out.push(snap(z + offset));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x5350_4543);
    while out.len() < count {
        let re: i32 = rng.gen_range(-8..=8);
        let im: i32 = rng.gen_range(-8..=8);
        if re != 0 || im != 0 {
            out.push(Complex64::new(re as f64 / 4.0, im as f64 / 4.0));
        }
    }
    out.truncate(count);
    out
}

/// Everything the spectral properties check on one quadruple.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub lambda_checks: Vec<LambdaCheck>,
    pub ac_nonzero: SpectrumSet,
    pub bd_nonzero: SpectrumSet,
    pub nonzero_spectrum_equal: bool,
}

impl SpectralReport {
    pub fn all_hold(&self) -> bool {
        self.nonzero_spectrum_equal && self.lambda_checks.iter().all(|c| c.transfer_holds)
    }
}

pub fn spectral_report<S: Scalar>(
    q: &ClineQuadruple<S>,
    lambdas: &[Complex64],
    tol: &Tolerance,
) -> Result<SpectralReport> {
    require_family(q, q.family, tol)?;
    let ac_nonzero = nonzero_eigenvalues(&q.ac(), tol)?;
    let bd_nonzero = nonzero_eigenvalues(&q.bd(), tol)?;
    let nonzero_spectrum_equal = ac_nonzero.matches(&bd_nonzero);
    let lambda_checks = lambda_checks(q, lambdas, tol)?;
    Ok(SpectralReport { lambda_checks, ac_nonzero, bd_nonzero, nonzero_spectrum_equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::example_3_7;
    use crate::matrix::{ExactMatrix, FloatMatrix};
    use alloc::vec;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matching_is_order_free() {
        let x = SpectrumSet::new(vec![c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)], 1e-6);
        let y = SpectrumSet::new(vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0 + 1e-9)], 1e-6);
        assert!(x.matches(&y));
        let z = SpectrumSet::new(vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.1)], 1e-6);
        assert!(!x.matches(&z));
        let short = SpectrumSet::new(vec![c(2.0, 0.0)], 1e-6);
        assert!(!x.matches(&short));
    }

    #[test]
    fn multiplicity_matters() {
        let x = SpectrumSet::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 1e-6);
        let y = SpectrumSet::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)], 1e-6);
        assert!(!x.matches(&y));
    }

    #[test]
    fn defective_eigenvalue_is_recovered() {
        // J3(1) + small nilpotent tail: eigenvalue 1 with multiplicity 3
        let mut a = FloatMatrix::identity(5);
        a[(0, 1)] = c(1.0, 0.0);
        a[(1, 2)] = c(1.0, 0.0);
        a[(3, 3)] = c(0.0, 0.0);
        a[(4, 4)] = c(0.0, 0.0);
        a[(3, 4)] = c(1.0, 0.0);
        let s = nonzero_eigenvalues(&a, &tol()).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.values.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-9), "{s:?}");
    }

    #[test]
    fn example_quadruple() {
        let q = example_3_7();
        assert!(invertibility_transfer(&q, c(1.0, 0.0), &tol()).unwrap());
        let check = lambda_check(&q, c(1.0, 0.0), &tol()).unwrap();
        assert!(check.ac_invertible && check.bd_invertible);
        assert_eq!(check.formula_verified, Some(true));
        assert!(nonzero_spectrum_equal(&q, &tol()).unwrap());
        assert!(nonzero_eigenvalues(&q.ac(), &tol()).unwrap().is_empty());
    }

    #[test]
    fn identity_quadruple() {
        let i = ExactMatrix::identity(3);
        let q = ClineQuadruple::classical(i.clone(), i).unwrap();
        let check = lambda_check(&q, c(1.0, 0.0), &tol()).unwrap();
        assert!(!check.ac_invertible && !check.bd_invertible && check.transfer_holds);
        assert!(nonzero_spectrum_equal(&q, &tol()).unwrap());
        let s = nonzero_eigenvalues(&q.ac(), &tol()).unwrap();
        assert!(s.matches(&SpectrumSet::new(vec![c(1.0, 0.0); 3], 1e-6)));
    }

    #[test]
    fn classical_shift_pair() {
        let j = ExactMatrix::shift(2);
        let q = ClineQuadruple::classical(j.clone(), j.transpose()).unwrap();
        assert!(nonzero_spectrum_equal(&q, &tol()).unwrap());
        let s = nonzero_eigenvalues(&q.ac(), &tol()).unwrap();
        assert!(s.matches(&SpectrumSet::new(vec![c(1.0, 0.0)], 1e-6)));
        for l in lambda_samples(&s.values, 3, 20) {
            assert!(invertibility_transfer(&q, l, &tol()).unwrap(), "{l}");
        }
        let at_one = lambda_check(&q, c(1.0, 0.0), &tol()).unwrap();
        assert!(!at_one.ac_invertible && !at_one.bd_invertible);
    }

    #[test]
    fn float_backend_agrees() {
        let q = example_3_7();
        let f = ClineQuadruple::new(q.a.to_float(), q.b.to_float(), q.c.to_float(), q.d.to_float(), q.family).unwrap();
        assert!(nonzero_spectrum_equal(&f, &tol()).unwrap());
        assert!(invertibility_transfer(&f, c(0.5, -0.25), &tol()).unwrap());
    }

    #[test]
    fn errors() {
        let q = example_3_7();
        assert_eq!(invertibility_transfer(&q, c(0.0, 0.0), &tol()), Err(Error::ZeroLambda));
        let broken = ClineQuadruple::new(
            q.a.clone(),
            q.b.clone(),
            q.c.clone(),
            &q.d + &ExactMatrix::unit(4, 0, 0),
            ConditionFamily::RingFour,
        )
        .unwrap();
        assert!(matches!(invertibility_transfer(&broken, c(1.0, 0.0), &tol()), Err(Error::HypothesisViolated { .. })));
        assert!(matches!(nonzero_spectrum_equal(&broken, &tol()), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn sigma_d_is_empty() {
        assert!(sigma_d_report(&ExactMatrix::shift(4)).spectrum.is_empty());
        assert!(sigma_d_report(&FloatMatrix::identity(3)).spectrum.is_empty());
    }

    #[test]
    fn samples_are_deterministic_and_nonzero() {
        let near = [c(1.0, 0.0), c(1.0, 0.0), c(-0.5, 2.0)];
        let s = lambda_samples(&near, 9, 20);
        assert_eq!(s, lambda_samples(&near, 9, 20));
        assert_eq!(s.len(), 20);
        assert!(s.iter().all(|z| z.norm() > 0.0));
        assert!((s[1] - c(1.0 + NEAR_EIGEN_OFFSET, 0.0)).norm() < 1e-6);
        assert!((s[2] - c(-0.5 + NEAR_EIGEN_OFFSET, 2.0)).norm() < 1e-6);
    }
}
