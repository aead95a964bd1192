//! Seeded generators of exact quadruples for each condition family.
//!
//! Every generator draws from a ChaCha8 stream keyed by `(seed, family,
//! dim)`, so identical [`GenSpec`]s give bit-identical output on every
//! platform. Candidates are checked with [`check_conditions`] before they
//! are returned; a generator that runs out of attempts reports
//! [`Error::GenerationFailed`] instead of substituting a trivial instance.
//!
//! Strategies:
//!
//! | family          | strategies                                                              |
//! |-----------------|-------------------------------------------------------------------------|
//! | classical       | `(a, b, b, a)` with `a`, `b` random                                       |
//! | lian-zeng       | `c = b + n` with `a n a = 0` from an exact null-space basis, `d = a`     |
//! | miller-zguitti  | the lian-zeng construction, strictly upper-triangular rejection, and     |
//! |                 | direct sums of the two                                                  |
//! | banach-weak     | weighted shifts (Example-style), sparse rejection sampling              |
//! | ring-four       | any of the above families, or sparse rejection filtered by RingFour     |
//!
//! Weighted shifts satisfy the BanachWeak equations structurally up to
//! dimension 4 (all products of four shifts vanish) and by rejection above.
//! Strictly upper-triangular quadruples satisfy the Miller–Zguitti
//! equations structurally up to dimension 3.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cline::{check_conditions, ClineQuadruple, ConditionFamily};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{ExactMatrix, Matrix};
use crate::scalar::{GaussianRational, Scalar, Tolerance};

/// Generator parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: ConditionFamily,
    pub dim: usize,
    pub seed: u64,
    pub entry_pool: Vec<GaussianRational>,
    pub max_attempts: u32,
}

/// `{-2, -1, -1/2, 0, 1/2, 1, 2}`: small integers and their halves.
pub fn default_pool() -> Vec<GaussianRational> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .into_iter()
        .map(|(n, d)| GaussianRational::from_ratio(n, d))
        .collect()
}

impl GenSpec {
    pub fn new(family: ConditionFamily, dim: usize, seed: u64) -> Self {
        GenSpec { family, dim, seed, entry_pool: default_pool(), max_attempts: 10_000 }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dim must be at least 1"));
        }
        if self.entry_pool.is_empty() {
            return Err(Error::InvalidSpec("entry pool is empty"));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidSpec("max_attempts must be positive"));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let family = ConditionFamily::ALL.iter().position(|&f| f == self.family).unwrap_or(0) as u64;
        rng.set_stream((family << 32) | self.dim as u64);
        rng
    }

    /// Independent stream for per-call strategy choices.
    fn chooser(&self) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(rng.get_stream() | (1 << 63));
        rng
    }
}

/// A generated quadruple with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub quadruple: ClineQuadruple<GaussianRational>,
    /// Name of the construction that produced it.
    pub strategy: &'static str,
    /// Candidates drawn before one passed (1 for structural strategies).
    pub attempts: u32,
    /// Whether the four RingFour equations also hold. BanachWeak instances
    /// with `false` here are "weak-only".
    pub also_ring_four: bool,
}

/// Dispatches on `spec.family`.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    match spec.family {
        ConditionFamily::Classical => gen_classical(spec),
        ConditionFamily::RingFour => gen_ring_four(spec),
        ConditionFamily::BanachWeak => gen_banach_weak(spec),
        ConditionFamily::LianZeng => gen_lian_zeng(spec),
        ConditionFamily::MillerZguitti => gen_miller_zguitti(spec),
    }
}

fn pick(rng: &mut ChaCha8Rng, pool: &[GaussianRational]) -> GaussianRational {
    pool[rng.gen_range(0..pool.len())].clone()
}

fn pick_nonzero(rng: &mut ChaCha8Rng, pool: &[GaussianRational]) -> GaussianRational {
    let nonzero: Vec<&GaussianRational> = pool.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.is_empty() {
        return GaussianRational::zero();
    }
    nonzero[rng.gen_range(0..nonzero.len())].clone()
}

fn dense(rng: &mut ChaCha8Rng, rows: usize, cols: usize, pool: &[GaussianRational]) -> ExactMatrix {
    Matrix::from_fn(rows, cols, |_, _| pick(rng, pool))
}

fn sparse(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational], zero_prob: f64) -> ExactMatrix {
    Matrix::from_fn(
        n,
        n,
        |_, _| if rng.gen_bool(zero_prob) { GaussianRational::zero() } else { pick_nonzero(rng, pool) },
    )
}

fn strictly_upper(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational]) -> ExactMatrix {
    Matrix::from_fn(n, n, |i, j| if j > i && rng.gen_bool(0.6) { pick(rng, pool) } else { GaussianRational::zero() })
}

/// Random exact matrix drawn from a mixture of shapes: dense, sparse,
/// low rank (product of `n×r` and `r×n` factors), and strictly upper
/// triangular (nilpotent). The mixture keeps singular and nilpotent inputs
/// frequent.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational]) -> ExactMatrix {
    match rng.gen_range(0..4) {
        0 => dense(rng, n, n, pool),
        1 => sparse(rng, n, pool, 0.6),
        2 => {
            let r = rng.gen_range(0..n.max(1));
            if r == 0 {
                return Matrix::zeros(n, n);
            }
            &dense(rng, n, r, pool) * &dense(rng, r, n, pool)
        }
        _ => strictly_upper(rng, n, pool),
    }
}

fn random_singular_biased(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational]) -> ExactMatrix {
    if rng.gen_bool(0.25) {
        dense(rng, n, n, pool)
    } else {
        match rng.gen_range(0..3) {
            0 => sparse(rng, n, pool, 0.6),
            1 => strictly_upper(rng, n, pool),
            _ => {
                let r = rng.gen_range(0..n.max(1));
                if r == 0 {
                    Matrix::zeros(n, n)
                } else {
                    &dense(rng, n, r, pool) * &dense(rng, r, n, pool)
                }
            }
        }
    }
}

/// Random exact matrix for a standalone corpus (Drazin oracle tests).
pub fn random_exact_matrix(seed: u64, dim: usize, pool: &[GaussianRational]) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0xd1a2_0000 | dim as u64);
    random_matrix(&mut rng, dim, pool)
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational], attempts: u32) -> Option<ExactMatrix> {
    let tol = Tolerance::default();
    (0..attempts).map(|_| dense(rng, n, n, pool)).find(|m| linalg::is_invertible(m, &tol))
}

fn finish(
    spec: &GenSpec,
    quadruple: ClineQuadruple<GaussianRational>,
    strategy: &'static str,
    attempts: u32,
) -> Option<Generated> {
    let check = check_conditions(&quadruple, &Tolerance::default());
    check.report.overall.then(|| Generated {
        also_ring_four: check.holds(ConditionFamily::RingFour),
        quadruple: quadruple.with_family(spec.family),
        strategy,
        attempts,
    })
}

fn run_attempts(
    spec: &GenSpec,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> (ClineQuadruple<GaussianRational>, &'static str),
) -> Result<Generated> {
    spec.validate()?;
    let mut rng = spec.rng();
    for attempt in 1..=spec.max_attempts {
        let (quad, strategy) = draw(&mut rng);
        if let Some(g) = finish(spec, quad.with_family(spec.family), strategy, attempt) {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed { family: spec.family.as_str(), attempts: spec.max_attempts })
}

/// `(a, b, b, a)` with random `a`, `b`.
pub fn gen_classical(spec: &GenSpec) -> Result<Generated> {
    run_attempts(spec, |rng| {
        let a = random_matrix(rng, spec.dim, &spec.entry_pool);
        let b = random_matrix(rng, spec.dim, &spec.entry_pool);
        (ClineQuadruple::classical(a, b).expect("same shape"), "random-pair")
    })
}

/// Random element of `{n : a n a = 0}`, a linear combination of an exact
/// null-space basis with pool coefficients.
fn annihilated_by(rng: &mut ChaCha8Rng, a: &ExactMatrix, pool: &[GaussianRational]) -> ExactMatrix {
    let n = a.rows();
    // (a N a)_ij = sum_pq a_ip N_pq a_qj
    let system = Matrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (p, q) = (col / n, col % n);
        a[(i, p)].clone() * a[(q, j)].clone()
    });
    let basis = linalg::null_space(&system, &Tolerance::default());
    let mut out = Matrix::zeros(n, n);
    for v in &basis {
        let coeff = pick(rng, pool);
        if coeff.is_zero() {
            continue;
        }
        let term = Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()).scale(&coeff);
        out = &out + &term;
    }
    out
}

fn lian_zeng_draw(rng: &mut ChaCha8Rng, spec: &GenSpec) -> ClineQuadruple<GaussianRational> {
    let a = random_singular_biased(rng, spec.dim, &spec.entry_pool);
    let b = random_matrix(rng, spec.dim, &spec.entry_pool);
    let n = annihilated_by(rng, &a, &spec.entry_pool);
    let c = &b + &n;
    ClineQuadruple::lian_zeng(a, b, c).expect("same shape")
}

/// `c = b + n` with `a n a = 0`, so `aca = aba` and all four equations hold;
/// `d = a`. Invertible `a` forces `n = 0`.
pub fn gen_lian_zeng(spec: &GenSpec) -> Result<Generated> {
    run_attempts(spec, |rng| (lian_zeng_draw(rng, spec), "annihilator-perturbation"))
}

fn upper_quadruple(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational]) -> [ExactMatrix; 4] {
    [
        strictly_upper(rng, n, pool),
        strictly_upper(rng, n, pool),
        strictly_upper(rng, n, pool),
        strictly_upper(rng, n, pool),
    ]
}

/// Miller–Zguitti quadruples, `acd = dbd` and `dba = aca`.
///
/// Strategies, chosen per attempt: the annihilator construction with
/// `d = a`; strictly upper-triangular quadruples filtered by the equations;
/// and direct sums of the two (blockwise equations).
pub fn gen_miller_zguitti(spec: &GenSpec) -> Result<Generated> {
    let n = spec.dim;
    run_attempts(spec, |rng| match rng.gen_range(0..3) {
        0 => (lian_zeng_draw(rng, spec).with_family(ConditionFamily::MillerZguitti), "annihilator-perturbation"),
        1 => {
            let [a, b, c, d] = upper_quadruple(rng, n, &spec.entry_pool);
            (ClineQuadruple::new(a, b, c, d, ConditionFamily::MillerZguitti).expect("same shape"), "upper-triangular")
        }
        _ => {
            if n < 2 {
                return (lian_zeng_draw(rng, spec), "annihilator-perturbation");
            }
            let k = rng.gen_range(1..n);
            let sub = GenSpec { dim: k, ..spec.clone() };
            let left = lian_zeng_draw(rng, &sub);
            let [a, b, c, d] = upper_quadruple(rng, n - k, &spec.entry_pool);
            let quad = ClineQuadruple::new(
                left.a.direct_sum(&a),
                left.b.direct_sum(&b),
                left.c.direct_sum(&c),
                left.d.direct_sum(&d),
                ConditionFamily::MillerZguitti,
            )
            .expect("same shape");
            (quad, "block-sum")
        }
    })
}

fn weighted_shift(rng: &mut ChaCha8Rng, n: usize, pool: &[GaussianRational]) -> ExactMatrix {
    let weights: Vec<GaussianRational> = (0..n.saturating_sub(1)).map(|_| pick(rng, pool)).collect();
    Matrix::weighted_shift(n, &weights)
}

fn sparse_quadruple(rng: &mut ChaCha8Rng, spec: &GenSpec, family: ConditionFamily) -> ClineQuadruple<GaussianRational> {
    let pool = &spec.entry_pool;
    let n = spec.dim;
    let zero_prob = 1.0 - 1.5 / (n as f64 + 1.0);
    ClineQuadruple::new(
        sparse(rng, n, pool, zero_prob),
        sparse(rng, n, pool, zero_prob),
        sparse(rng, n, pool, zero_prob),
        sparse(rng, n, pool, zero_prob),
        family,
    )
    .expect("same shape")
}

/// BanachWeak quadruples, `(ac)² = (db)(ac)` and `(db)² = (ac)(db)`.
///
/// The seed picks one strategy for the whole call: independent weighted
/// shifts for `a, b, c, d` (the shape of the 4×4 shift example), or sparse
/// rejection sampling. The second strategy regularly produces weak-only
/// instances (RingFour fails); they are kept and flagged.
pub fn gen_banach_weak(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let mut chooser = spec.chooser();
    let use_shifts = chooser.gen_bool(0.5);
    let n = spec.dim;
    let pool = spec.entry_pool.clone();
    run_attempts(spec, move |rng| {
        if use_shifts {
            let quad = ClineQuadruple::new(
                weighted_shift(rng, n, &pool),
                weighted_shift(rng, n, &pool),
                weighted_shift(rng, n, &pool),
                weighted_shift(rng, n, &pool),
                ConditionFamily::BanachWeak,
            )
            .expect("same shape");
            (quad, "weighted-shift")
        } else {
            (sparse_quadruple(rng, spec, ConditionFamily::BanachWeak), "sparse-rejection")
        }
    })
}

/// RingFour quadruples: relabeled classical, lian-zeng or miller-zguitti
/// instances (each implies RingFour), weighted shifts, or sparse rejection
/// filtered by the four equations.
pub fn gen_ring_four(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let mut chooser = spec.chooser();
    let strategy = chooser.gen_range(0..5u32);
    let sub_spec = |family| GenSpec { family, seed: spec.seed ^ 0x5249_4e47, ..spec.clone() };
    let relabel = |g: Result<Generated>| {
        g.map(|g| Generated { quadruple: g.quadruple.with_family(ConditionFamily::RingFour), ..g })
    };
    match strategy {
        0 => relabel(gen_classical(&sub_spec(ConditionFamily::Classical))),
        1 => relabel(gen_lian_zeng(&sub_spec(ConditionFamily::LianZeng))),
        2 => relabel(gen_miller_zguitti(&sub_spec(ConditionFamily::MillerZguitti))),
        3 => {
            let n = spec.dim;
            run_attempts(spec, |rng| {
                let pool = &spec.entry_pool;
                let quad = ClineQuadruple::new(
                    weighted_shift(rng, n, pool),
                    weighted_shift(rng, n, pool),
                    weighted_shift(rng, n, pool),
                    weighted_shift(rng, n, pool),
                    ConditionFamily::RingFour,
                )
                .expect("same shape");
                (quad, "weighted-shift")
            })
        }
        _ => run_attempts(spec, |rng| (sparse_quadruple(rng, spec, ConditionFamily::RingFour), "sparse-rejection")),
    }
}

/// The 4×4 shift example: `a = b = c = J₄`, `d = J₄` with its `(1,2)`
/// entry replaced by 2, family BanachWeak.
pub fn example_3_7() -> ClineQuadruple<GaussianRational> {
    let j = Matrix::shift(4);
    let two = GaussianRational::from_i64(2);
    let one = GaussianRational::one();
    let d = Matrix::weighted_shift(4, &[two, one.clone(), one]);
    ClineQuadruple::new(j.clone(), j.clone(), j, d, ConditionFamily::BanachWeak).expect("4x4")
}

/// `a = T·diag(S, N)·T⁻¹` with its Drazin inverse `T·diag(S⁻¹, 0)·T⁻¹`
/// and index built independently of the rank-factorization recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityInstance {
    pub a: ExactMatrix,
    pub expected_inverse: ExactMatrix,
    pub expected_index: usize,
}

/// Builds a [`SimilarityInstance`] with a random invertible block `S` of
/// size `0..=dim` and a strictly upper-triangular (nilpotent) block `N`.
pub fn similarity_instance(seed: u64, dim: usize, pool: &[GaussianRational]) -> Result<SimilarityInstance> {
    const ATTEMPTS: u32 = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0x51b1_0000 | dim as u64);
    let tol = Tolerance::default();
    let core_size = rng.gen_range(0..=dim);
    let nil_size = dim - core_size;
    let failed = Error::GenerationFailed { family: "similarity", attempts: ATTEMPTS };
    let s = random_invertible(&mut rng, core_size, pool, ATTEMPTS).ok_or(failed.clone())?;
    let n = strictly_upper(&mut rng, nil_size, pool);
    let t = random_invertible(&mut rng, dim, pool, ATTEMPTS).ok_or(failed)?;
    let t_inv = linalg::inverse(&t, &tol).expect("drawn invertible");
    let s_inv = linalg::inverse(&s, &tol).expect("drawn invertible");

    let block = s.direct_sum(&n);
    let block_inverse = s_inv.direct_sum(&Matrix::zeros(nil_size, nil_size));
    let expected_index =
        if nil_size == 0 { 0 } else { (1..=nil_size).find(|&k| n.pow(k as u32).is_zero()).unwrap_or(nil_size) };
    Ok(SimilarityInstance {
        a: &(&t * &block) * &t_inv,
        expected_inverse: &(&t * &block_inverse) * &t_inv,
        expected_index,
    })
}
