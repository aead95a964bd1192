//! Property suite over seeded corpora.
//!
//! For every `(seed, dim)` the suite draws one random matrix, one
//! similarity instance and one quadruple per condition family, runs every
//! property on them and tallies pass/fail/skip per property. Instances are
//! evaluated in parallel; results are collected in task order, so the
//! report depends only on the configuration.

use std::collections::BTreeMap;

use ginv_core::cline::{self, ClineQuadruple, ConditionFamily};
use ginv_core::gen::{self, GenSpec, Generated};
use ginv_core::linalg::{self, COMMUTANT_DIM_BOUND};
use ginv_core::spectral;
use ginv_core::{
    drazin, eigen, Backend, Complex64, Error, ExactMatrix, GaussianRational, Matrix, Residual, Scalar, Tolerance,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::json;

/// Size bound for the double-commutant check on transferred inverses.
pub const TRANSFER_COMM2_BOUND: usize = 4;

/// Seeds needed before the coverage properties are evaluated.
pub const COVERAGE_SEEDS: u64 = 200;

pub const PROPERTIES: &[&str] = &[
    "inverse-exact",
    "rank-product",
    "commutant",
    "float-exact-rank",
    "drazin-axioms",
    "index-zero-iff-invertible",
    "similarity-oracle",
    "gen-soundness",
    "gen-determinism",
    "transfer",
    "transfer-comm2",
    "transfer-symmetry",
    "transfer-via-squares",
    "index-bound",
    "jacobson",
    "jacobson-equivalence",
    "nilpotency-transfer",
    "family-hierarchy",
    "group-formula",
    "classical-cline",
    "pdrazin-collapse",
    "spectral-invertibility",
    "spectral-nonzero",
    "spectral-consistency",
    "coverage-banach-weak",
    "coverage-lian-zeng",
];

/// Hook applied to every generated quadruple before it is checked. Only
/// used by negative-control tests.
pub type Tamper = fn(&mut ClineQuadruple<GaussianRational>);

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Seeds `0..seeds`.
    pub seeds: u64,
    pub dims: Vec<usize>,
    pub backend: Backend,
    pub tol: Tolerance,
    /// Failing instances dumped in full per property; the rest are listed
    /// by `(seed, dim, family)` only.
    pub dump_limit: usize,
    pub tamper: Option<Tamper>,
}

impl SuiteConfig {
    pub fn new(seeds: u64, dims: Vec<usize>) -> Self {
        SuiteConfig { seeds, dims, backend: Backend::Exact, tol: Tolerance::default(), dump_limit: 3, tamper: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

impl Outcome {
    fn check(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(detail())
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Fail(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Matrix,
    Family(ConditionFamily),
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Matrix => "matrix",
            Kind::Family(f) => f.as_str(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Task {
    seed: u64,
    dim: usize,
    kind: Kind,
}

#[derive(Debug, Default)]
struct InstanceResult {
    outcomes: Vec<(&'static str, Outcome)>,
    dump: Option<Value>,
    weak_only: bool,
    strategy: Option<&'static str>,
    /// `ac ≠ db` for banach-weak, `c ≠ b` for lian-zeng.
    nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub seed: u64,
    pub dim: usize,
    pub family: &'static str,
    pub detail: String,
    pub instance: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PropertyTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config_value: Value,
    pub properties: Vec<(&'static str, PropertyTally)>,
    pub instances: usize,
    pub weak_only: Vec<(u64, usize)>,
    pub strategies: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn total_failures(&self) -> usize {
        self.properties.iter().map(|(_, t)| t.failed).sum()
    }

    pub fn all_pass(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn tally(&self, name: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|(n, _)| *n == name).map(|(_, t)| t)
    }

    pub fn to_json(&self) -> Value {
        let properties: Vec<Value> = self
            .properties
            .iter()
            .map(|(name, t)| {
                json!({
                    "name": name,
                    "passed": t.passed,
                    "failed": t.failed,
                    "skipped": t.skipped,
                    "failures": t.failures.iter().map(|f| {
                        let mut v = json!({"seed": f.seed, "dim": f.dim, "family": f.family, "detail": f.detail});
                        if let Some(inst) = &f.instance {
                            v["instance"] = inst.clone();
                        }
                        v
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "config": self.config_value,
            "properties": properties,
            "corpus": {
                "instances": self.instances,
                "weak_only": self.weak_only.iter().map(|&(s, d)| json!({"seed": s, "dim": d})).collect::<Vec<_>>(),
                "strategies": self.strategies,
            },
            "total_failures": self.total_failures(),
            "all_pass": self.all_pass(),
        })
    }
}

pub fn run(config: &SuiteConfig) -> SuiteReport {
    let mut tasks = Vec::new();
    for seed in 0..config.seeds {
        for &dim in &config.dims {
            tasks.push(Task { seed, dim, kind: Kind::Matrix });
            for f in ConditionFamily::ALL {
                tasks.push(Task { seed, dim, kind: Kind::Family(f) });
            }
        }
    }
    let results: Vec<InstanceResult> = tasks.par_iter().map(|t| evaluate(t, config)).collect();

    let mut tallies: BTreeMap<&'static str, PropertyTally> = BTreeMap::new();
    let mut weak_only = Vec::new();
    let mut strategies = BTreeMap::new();
    let mut coverage: BTreeMap<ConditionFamily, bool> = BTreeMap::new();
    for (task, result) in tasks.iter().zip(&results) {
        if result.weak_only {
            weak_only.push((task.seed, task.dim));
        }
        if let (Kind::Family(f), Some(s)) = (task.kind, result.strategy) {
            *strategies.entry(format!("{}/{}", f.as_str(), s)).or_insert(0) += 1;
        }
        if let Kind::Family(f) = task.kind {
            let wanted_dim = match f {
                ConditionFamily::BanachWeak => 4,
                ConditionFamily::LianZeng => 3,
                _ => usize::MAX,
            };
            if task.dim == wanted_dim {
                *coverage.entry(f).or_insert(false) |= result.nondegenerate;
            }
        }
        for (name, outcome) in &result.outcomes {
            let tally = tallies.entry(name).or_default();
            match outcome {
                Outcome::Pass => tally.passed += 1,
                Outcome::Skip => tally.skipped += 1,
                Outcome::Fail(detail) => {
                    tally.failed += 1;
                    let instance = (tally.failures.len() < config.dump_limit).then(|| result.dump.clone()).flatten();
                    tally.failures.push(Failure {
                        seed: task.seed,
                        dim: task.dim,
                        family: task.kind.label(),
                        detail: detail.clone(),
                        instance,
                    });
                }
            }
        }
    }

    for (name, family, dim) in
        [("coverage-banach-weak", ConditionFamily::BanachWeak, 4), ("coverage-lian-zeng", ConditionFamily::LianZeng, 3)]
    {
        let tally = tallies.entry(name).or_default();
        match coverage.get(&family) {
            Some(&found) if config.seeds >= COVERAGE_SEEDS => {
                if found {
                    tally.passed += 1;
                } else {
                    tally.failed += 1;
                    tally.failures.push(Failure {
                        seed: 0,
                        dim,
                        family: family.as_str(),
                        detail: format!("no non-degenerate {family} instance over {} seeds", config.seeds),
                        instance: None,
                    });
                }
            }
            _ => tally.skipped += 1,
        }
    }

    let properties = PROPERTIES.iter().map(|&name| (name, tallies.remove(name).unwrap_or_default())).collect();
    SuiteReport {
        config_value: json!({
            "seeds": (0..config.seeds).collect::<Vec<_>>(),
            "dims": config.dims,
            "backend": config.backend.as_str(),
            "eq_tol": config.tol.eq_tol,
            "rank_tol": config.tol.rank_tol,
        }),
        properties,
        instances: tasks.len(),
        weak_only,
        strategies,
    }
}

fn evaluate(task: &Task, config: &SuiteConfig) -> InstanceResult {
    match task.kind {
        Kind::Matrix => matrix_instance(task, config),
        Kind::Family(f) => quadruple_instance(task, f, config),
    }
}

fn exact_tol() -> Tolerance {
    Tolerance::default()
}

/// Exact-backend "holds": every evaluated residual identically zero.
fn report_passes<S: Scalar>(r: &ginv_core::HypothesisReport) -> bool {
    match S::BACKEND {
        Backend::Exact => r.all_exact_zero() && r.overall,
        Backend::F64 => r.overall,
    }
}

fn matrix_instance(task: &Task, config: &SuiteConfig) -> InstanceResult {
    let pool = gen::default_pool();
    let n = task.dim;
    let a = gen::random_exact_matrix(task.seed, n, &pool);
    let b = gen::random_exact_matrix(task.seed ^ 0xb5ad_4ece_da1c_e2a9, n, &pool);
    let tol = exact_tol();
    let id = ExactMatrix::identity(n);
    let mut out: Vec<(&'static str, Outcome)> = Vec::new();

    let inverse = linalg::inverse(&a, &tol);
    out.push((
        "inverse-exact",
        match &inverse {
            Ok(inv) => Outcome::check((inv * &a) == id && (&a * inv) == id, || "inverse(a)·a ≠ I".into()),
            Err(Error::Singular) => Outcome::check(linalg::rank(&a, &tol) < n, || "inverse failed on full rank".into()),
            Err(e) => e.clone().into(),
        },
    ));

    let (ra, rb, rab) = (linalg::rank(&a, &tol), linalg::rank(&b, &tol), linalg::rank(&(&a * &b), &tol));
    out.push(("rank-product", Outcome::check(rab <= ra.min(rb), || format!("rank(ab) = {rab}, ranks {ra}, {rb}"))));

    out.push((
        "commutant",
        match linalg::commutant_basis(&a, COMMUTANT_DIM_BOUND) {
            Ok(basis) => {
                let commute = basis.iter().all(|k| (k * &a) == (&a * k));
                let stacked = Matrix::from_fn(basis.len(), n * n, |r, c| basis[r].entries()[c].clone());
                let independent = basis.is_empty() || linalg::rank(&stacked, &tol) == basis.len();
                Outcome::check(commute && independent, || format!("commute {commute}, independent {independent}"))
            }
            Err(Error::DimensionTooLarge { .. }) => Outcome::Skip,
            Err(e) => e.into(),
        },
    ));

    let float_rank = linalg::rank(&a.to_float(), &config.tol);
    out.push(("float-exact-rank", Outcome::check(float_rank == ra, || format!("float {float_rank}, exact {ra}"))));

    out.push((
        "drazin-axioms",
        match config.backend {
            Backend::Exact => drazin_axioms(&a, &tol),
            Backend::F64 => drazin_axioms(&a.to_float(), &config.tol),
        },
    ));

    out.push((
        "index-zero-iff-invertible",
        match drazin::drazin(&a, &tol) {
            Ok(d) => match &inverse {
                Ok(inv) => Outcome::check(d.index == 0 && &d.inverse == inv, || {
                    format!("index {} on invertible input", d.index)
                }),
                Err(_) => Outcome::check(d.index > 0, || "index 0 on singular input".into()),
            },
            Err(e) => e.into(),
        },
    ));

    out.push((
        "similarity-oracle",
        match gen::similarity_instance(task.seed, n, &pool) {
            Ok(inst) => match drazin::drazin(&inst.a, &tol) {
                Ok(d) => Outcome::check(d.inverse == inst.expected_inverse && d.index == inst.expected_index, || {
                    format!("index {} (expected {})", d.index, inst.expected_index)
                }),
                Err(e) => e.into(),
            },
            Err(e) => e.into(),
        },
    ));

    let failed = out.iter().any(|(_, o)| matches!(o, Outcome::Fail(_)));
    InstanceResult {
        dump: failed.then(|| json!({"a": json::any_matrix_value(&a), "b": json::any_matrix_value(&b)})),
        outcomes: out,
        ..Default::default()
    }
}

fn drazin_axioms<S: Scalar>(a: &Matrix<S>, tol: &Tolerance) -> Outcome {
    match drazin::drazin(a, tol).and_then(|d| drazin::verify_drazin_axioms(a, &d.inverse, d.index, tol)) {
        Ok(r) => Outcome::check(report_passes::<S>(&r), || format!("failed: {}", r.failed_names())),
        Err(e) => e.into(),
    }
}

const QUADRUPLE_PROPERTIES: &[&str] = &[
    "gen-soundness",
    "gen-determinism",
    "transfer",
    "transfer-comm2",
    "transfer-symmetry",
    "transfer-via-squares",
    "index-bound",
    "jacobson",
    "jacobson-equivalence",
    "nilpotency-transfer",
    "family-hierarchy",
    "group-formula",
    "classical-cline",
    "pdrazin-collapse",
    "spectral-invertibility",
    "spectral-nonzero",
    "spectral-consistency",
];

fn quadruple_instance(task: &Task, family: ConditionFamily, config: &SuiteConfig) -> InstanceResult {
    let spec = GenSpec::new(family, task.dim, task.seed);
    let generated = match gen::generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            let mut outcomes = vec![("gen-soundness", Outcome::Fail(e.to_string()))];
            outcomes.extend(QUADRUPLE_PROPERTIES[1..].iter().map(|&p| (p, Outcome::Skip)));
            return InstanceResult { outcomes, ..Default::default() };
        }
    };
    let mut q = generated.quadruple.clone();
    if let Some(tamper) = config.tamper {
        tamper(&mut q);
    }
    let mut out = vec![
        ("gen-soundness", {
            let check = cline::check_conditions(&q, &exact_tol());
            Outcome::check(check.report.overall, || format!("failed: {}", check.report.failed_names()))
        }),
        ("gen-determinism", {
            let again = gen::generate(&spec);
            Outcome::check(again.as_ref() == Ok(&generated), || "regeneration differs".into())
        }),
    ];
    match config.backend {
        Backend::Exact => out.extend(cline_properties(&q, &q, task, &exact_tol())),
        Backend::F64 => out.extend(cline_properties(&json::float_quadruple(&q), &q, task, &config.tol)),
    }
    out.extend(spectral_properties(&q, task, config));

    let nondegenerate = match family {
        ConditionFamily::BanachWeak => generated.quadruple.ac() != generated.quadruple.db(),
        ConditionFamily::LianZeng => generated.quadruple.c != generated.quadruple.b,
        _ => false,
    };
    let failed = out.iter().any(|(_, o)| matches!(o, Outcome::Fail(_)));
    InstanceResult {
        dump: failed.then(|| json::quadruple_value(&q)),
        outcomes: out,
        weak_only: family == ConditionFamily::BanachWeak && !is_ring_four(&generated),
        strategy: Some(generated.strategy),
        nondegenerate,
    }
}

fn is_ring_four(g: &Generated) -> bool {
    g.also_ring_four
}

fn cline_properties<S: Scalar>(
    q: &ClineQuadruple<S>,
    exact: &ClineQuadruple<GaussianRational>,
    task: &Task,
    tol: &Tolerance,
) -> Vec<(&'static str, Outcome)> {
    let mut out: Vec<(&'static str, Outcome)> = Vec::new();
    let n = task.dim;
    let ac = q.ac();
    let bd = q.bd();
    let acd = match drazin::drazin(&ac, tol) {
        Ok(d) => d,
        Err(e) => {
            return QUADRUPLE_PROPERTIES[2..14].iter().map(|&p| (p, Outcome::from(e.clone()))).collect();
        }
    };

    let transferred = cline::transfer_gdrazin(q, &acd, tol);
    out.push((
        "transfer",
        match &transferred {
            Ok(e) => match drazin::verify_drazin_axioms_bounded(&bd, &e.inverse, e.index, tol, 0) {
                Ok(r) => {
                    Outcome::check(report_passes::<S>(&r), || format!("b((ac)^D)^2 d fails: {}", r.failed_names()))
                }
                Err(err) => err.into(),
            },
            Err(err) => err.clone().into(),
        },
    ));

    out.push((
        "transfer-comm2",
        match (&transferred, S::BACKEND) {
            (Ok(e), Backend::Exact) if n <= TRANSFER_COMM2_BOUND => {
                let r = drazin::double_commutant_residual(&bd, &e.inverse, TRANSFER_COMM2_BOUND);
                Outcome::check(r == Residual::ExactZero, || format!("residual {r:?}"))
            }
            (Err(err), _) => err.clone().into(),
            _ => Outcome::Skip,
        },
    ));

    out.push((
        "transfer-symmetry",
        match &transferred {
            Ok(e) => match cline::reverse_transfer(q, e, tol) {
                Ok(back) => Outcome::check(back.inverse.approx_eq(&acd.inverse, tol), || {
                    "reverse transfer differs from (ac)^D".into()
                }),
                Err(err) => err.into(),
            },
            Err(err) => err.clone().into(),
        },
    ));

    out.push((
        "transfer-via-squares",
        match cline::transfer_via_squares(q, &acd, tol) {
            Ok(e) => match drazin::verify_drazin_axioms_bounded(&bd, &e.inverse, e.index, tol, 0) {
                Ok(r) => Outcome::check(report_passes::<S>(&r), || format!("failed: {}", r.failed_names())),
                Err(err) => err.into(),
            },
            Err(err) => err.into(),
        },
    ));

    out.push((
        "index-bound",
        match cline::transfer_drazin_with_bound(q, &acd, tol) {
            Ok((e, holds)) => Outcome::check(holds, || {
                format!(
                    "index(bd) = {} > index(ac) + {} = {}",
                    e.index,
                    q.family.index_slack(),
                    acd.index + q.family.index_slack()
                )
            }),
            Err(err) => err.into(),
        },
    ));

    let id = Matrix::<S>::identity(n);
    let ac_side = linalg::is_invertible(&(&id - &ac), tol);
    let bd_side = linalg::is_invertible(&(&id - &bd), tol);
    let ring_four = cline::family_report(q, ConditionFamily::RingFour, tol).overall;
    out.push((
        "jacobson",
        if ac_side && ring_four {
            match cline::jacobson_inverse(q, tol) {
                Ok(_) => Outcome::Pass,
                Err(e) => e.into(),
            }
        } else {
            Outcome::Skip
        },
    ));
    out.push((
        "jacobson-equivalence",
        Outcome::check(ac_side == bd_side, || format!("I - ac invertible: {ac_side}, I - bd invertible: {bd_side}")),
    ));

    out.push((
        "nilpotency-transfer",
        match cline::qnil_transfer_check(q, tol) {
            Ok(ok) => Outcome::check(ok, || "nilpotency of ac and bd differs".into()),
            Err(e) => e.into(),
        },
    ));

    let implied: &[ConditionFamily] = match exact.family {
        ConditionFamily::Classical => {
            &[ConditionFamily::LianZeng, ConditionFamily::RingFour, ConditionFamily::BanachWeak]
        }
        ConditionFamily::LianZeng | ConditionFamily::MillerZguitti => {
            &[ConditionFamily::RingFour, ConditionFamily::BanachWeak]
        }
        ConditionFamily::RingFour => &[ConditionFamily::BanachWeak],
        ConditionFamily::BanachWeak => &[],
    };
    out.push((
        "family-hierarchy",
        if implied.is_empty() {
            Outcome::Skip
        } else {
            let check = cline::check_conditions(exact, &exact_tol());
            if !check.report.overall {
                Outcome::Fail(format!("declared family fails: {}", check.report.failed_names()))
            } else {
                let missing: Vec<&str> = implied.iter().filter(|f| !check.holds(**f)).map(|f| f.as_str()).collect();
                Outcome::check(missing.is_empty(), || format!("implied families fail: {}", missing.join(", ")))
            }
        },
    ));

    out.push((
        "group-formula",
        if q.family.forces_d_equal_a() && acd.index <= 1 {
            match drazin::group(&ac, tol).and_then(|g| cline::transfer_group(q, &g, tol)) {
                Ok(_) => Outcome::Pass,
                Err(e) => e.into(),
            }
        } else {
            Outcome::Skip
        },
    ));

    out.push((
        "classical-cline",
        if q.family == ConditionFamily::Classical {
            let ab = &q.a * &q.b;
            let ba = &q.b * &q.a;
            match (drazin::drazin(&ab, tol), drazin::drazin(&ba, tol)) {
                (Ok(abd), Ok(bad)) => {
                    let h = &abd.inverse;
                    let x = ginv_core::matrix::product(&[&q.b, h, h, &q.a]);
                    match drazin::verify_drazin_axioms_bounded(&ba, &x, bad.index, tol, 0) {
                        Ok(r) => Outcome::check(report_passes::<S>(&r) && x.approx_eq(&bad.inverse, tol), || {
                            format!("b((ab)^D)^2 a differs from (ba)^D; failed: {}", r.failed_names())
                        }),
                        Err(e) => e.into(),
                    }
                }
                (Err(e), _) | (_, Err(e)) => e.into(),
            }
        } else {
            Outcome::Skip
        },
    ));

    out.push((
        "pdrazin-collapse",
        match cline::pdrazin_collapse_check(q, tol) {
            Ok(ok) => Outcome::check(ok, || "b((ac)^D)^2 d fails the Drazin axioms for bd".into()),
            Err(e) => e.into(),
        },
    ));
    out
}

fn spectral_properties(
    q: &ClineQuadruple<GaussianRational>,
    task: &Task,
    config: &SuiteConfig,
) -> Vec<(&'static str, Outcome)> {
    if task.dim > eigen::EIGEN_DIM_BOUND {
        return ["spectral-invertibility", "spectral-nonzero", "spectral-consistency"]
            .map(|p| (p, Outcome::Skip))
            .to_vec();
    }
    let mut out: Vec<(&'static str, Outcome)> = Vec::new();
    let fq = json::float_quadruple(q);
    let float_tol = config.tol;
    let ac_nonzero = match spectral::nonzero_eigenvalues(&q.ac(), &exact_tol()) {
        Ok(s) => s,
        Err(e) => {
            return ["spectral-invertibility", "spectral-nonzero", "spectral-consistency"]
                .map(|p| (p, Outcome::from(e.clone())))
                .to_vec()
        }
    };

    let lambdas = spectral::lambda_samples(&ac_nonzero.values, task.seed, spectral::DEFAULT_LAMBDA_SAMPLES);
    let checks = match config.backend {
        Backend::Exact => lambda_failures(q, &lambdas, &exact_tol()),
        Backend::F64 => lambda_failures(&fq, &lambdas, &float_tol),
    };
    out.push((
        "spectral-invertibility",
        match checks {
            Ok(bad) => Outcome::check(bad.is_empty(), || format!("transfer fails at lambda = {}", bad.join(", "))),
            Err(e) => e.into(),
        },
    ));

    out.push((
        "spectral-nonzero",
        match spectral::nonzero_spectrum_equal(&fq, &float_tol) {
            Ok(ok) => Outcome::check(ok, || {
                let ac = spectral::nonzero_eigenvalues(&fq.ac(), &float_tol).map(|s| s.values);
                let bd = spectral::nonzero_eigenvalues(&fq.bd(), &float_tol).map(|s| s.values);
                format!("nonzero spectra differ: ac {ac:?}, bd {bd:?}")
            }),
            Err(e) => e.into(),
        },
    ));

    out.push((
        "spectral-consistency",
        if ac_nonzero.is_empty() {
            Outcome::Skip
        } else {
            let mut bad = Vec::new();
            let mut error = None;
            match spectral::lambda_checks(&fq, &ac_nonzero.values, &float_tol) {
                Ok(checks) => {
                    for c in checks.iter().filter(|c| c.ac_invertible || c.bd_invertible) {
                        bad.push(format!(
                            "{} (ac invertible {}, bd invertible {})",
                            c.lambda, c.ac_invertible, c.bd_invertible
                        ));
                    }
                }
                Err(e) => error = Some(e),
            }
            match error {
                Some(e) => e.into(),
                None => Outcome::check(bad.is_empty(), || {
                    format!("eigenvalue not singular on both sides: {}", bad.join(", "))
                }),
            }
        },
    ));
    out
}

fn lambda_failures<S: Scalar>(
    q: &ClineQuadruple<S>,
    lambdas: &[Complex64],
    tol: &Tolerance,
) -> Result<Vec<String>, Error> {
    Ok(spectral::lambda_checks(q, lambdas, tol)?
        .into_iter()
        .filter(|c| !c.transfer_holds)
        .map(|c| c.lambda.to_string())
        .collect())
}
