//! Generalized Cline transfer engine.
//!
//! A [`ClineQuadruple`] `(a, b, c, d)` carries a [`ConditionFamily`]. When the
//! family's equations hold, the Drazin inverse of `ac` transfers to `bd` as
//!
//! ```text
//! (bd)^D = b · ((ac)^D)² · d,        i(bd) <= i(ac) + 2
//! ```
//!
//! with the sharper bound `i(ba) <= i(ac) + 1` when `d = a`. Transfers refuse
//! to run on quadruples whose hypotheses fail: the statements are vacuous
//! there and a wrong answer would look like a counterexample.
//!
//! Family implications used throughout: Classical ⊂ LianZeng ⊂ RingFour,
//! MillerZguitti ⊂ RingFour ⊂ BanachWeak (LianZeng and Classical read with
//! `d = a`).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::drazin::{self, DrazinResult, GroupResult};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{product, Matrix};
use crate::report::HypothesisReport;
use crate::scalar::{Scalar, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionFamily {
    /// `c = b`, `d = a`: Cline's original setting.
    Classical,
    /// `(ac)² = (db)(ac)`, `(db)² = (ac)(db)`, `b(ac)a = b(db)a`, `c(ac)d = c(db)d`.
    RingFour,
    /// The first two equations of `RingFour` only.
    BanachWeak,
    /// `(aba)b = (aca)b`, `b(aba) = b(aca)`, `(aba)c = (aca)c`,
    /// `c(aba) = c(aca)`, with `d = a`.
    LianZeng,
    /// `acd = dbd`, `dba = aca`.
    MillerZguitti,
}

impl ConditionFamily {
    pub const ALL: [ConditionFamily; 5] = [
        ConditionFamily::Classical,
        ConditionFamily::RingFour,
        ConditionFamily::BanachWeak,
        ConditionFamily::LianZeng,
        ConditionFamily::MillerZguitti,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionFamily::Classical => "classical",
            ConditionFamily::RingFour => "ring-four",
            ConditionFamily::BanachWeak => "banach-weak",
            ConditionFamily::LianZeng => "lian-zeng",
            ConditionFamily::MillerZguitti => "miller-zguitti",
        }
    }

    /// Families whose quadruples always have `d = a`.
    pub fn forces_d_equal_a(self) -> bool {
        matches!(self, ConditionFamily::Classical | ConditionFamily::LianZeng)
    }

    /// Slack in the index bound `i(bd) <= i(ac) + slack`.
    pub fn index_slack(self) -> usize {
        if self.forces_d_equal_a() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for ConditionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown condition family {0:?}")]
pub struct UnknownFamily(pub String);

impl FromStr for ConditionFamily {
    type Err = UnknownFamily;
    fn from_str(s: &str) -> core::result::Result<Self, UnknownFamily> {
        ConditionFamily::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| UnknownFamily(s.into()))
    }
}

/// Four same-size square matrices and the hypothesis family they claim.
#[derive(Debug, Clone, PartialEq)]
pub struct ClineQuadruple<S> {
    pub a: Matrix<S>,
    pub b: Matrix<S>,
    pub c: Matrix<S>,
    pub d: Matrix<S>,
    pub family: ConditionFamily,
}

impl<S: Scalar> ClineQuadruple<S> {
    pub fn new(a: Matrix<S>, b: Matrix<S>, c: Matrix<S>, d: Matrix<S>, family: ConditionFamily) -> Result<Self> {
        linalg::require_square(&a)?;
        if a.rows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        for m in [&b, &c, &d] {
            if m.rows() != a.rows() || m.cols() != a.cols() {
                return Err(Error::DimensionMismatch { left: (a.rows(), a.cols()), right: (m.rows(), m.cols()) });
            }
        }
        Ok(ClineQuadruple { a, b, c, d, family })
    }

    /// `(a, b, b, a)`.
    pub fn classical(a: Matrix<S>, b: Matrix<S>) -> Result<Self> {
        Self::new(a.clone(), b.clone(), b, a, ConditionFamily::Classical)
    }

    /// `(a, b, c, a)`.
    pub fn lian_zeng(a: Matrix<S>, b: Matrix<S>, c: Matrix<S>) -> Result<Self> {
        Self::new(a.clone(), b, c, a, ConditionFamily::LianZeng)
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn with_family(&self, family: ConditionFamily) -> Self {
        ClineQuadruple { family, ..self.clone() }
    }

    pub fn ac(&self) -> Matrix<S> {
        &self.a * &self.c
    }

    pub fn bd(&self) -> Matrix<S> {
        &self.b * &self.d
    }

    pub fn db(&self) -> Matrix<S> {
        &self.d * &self.b
    }

    /// `(μa, b, c, μd)`. Every RingFour and BanachWeak equation has the same
    /// degree in `{a, d}` on both sides, so scaling preserves them.
    pub fn scaled(&self, mu: &S) -> Self {
        ClineQuadruple { a: self.a.scale(mu), d: self.d.scale(mu), ..self.clone() }
    }

    /// `(d, c, b, a)`: the roles that carry `(db)^D` to `(ca)^D`. Its
    /// RingFour/BanachWeak equations are those of `self`, permuted.
    pub fn swapped(&self) -> Self {
        ClineQuadruple {
            a: self.d.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.a.clone(),
            family: match self.family {
                ConditionFamily::BanachWeak => ConditionFamily::BanachWeak,
                _ => ConditionFamily::RingFour,
            },
        }
    }
}

/// Evaluates the equations of `family` on the matrices of `q`.
pub fn family_report<S: Scalar>(q: &ClineQuadruple<S>, family: ConditionFamily, tol: &Tolerance) -> HypothesisReport {
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let mut r = HypothesisReport::new();
    match family {
        ConditionFamily::Classical => {
            r.push_eq("c = b", c, b, tol);
            r.push_eq("d = a", d, a, tol);
        }
        ConditionFamily::RingFour | ConditionFamily::BanachWeak => {
            let ac = a * c;
            let db = d * b;
            r.push_eq("(ac)^2 = (db)(ac)", &(&ac * &ac), &(&db * &ac), tol);
            r.push_eq("(db)^2 = (ac)(db)", &(&db * &db), &(&ac * &db), tol);
            if family == ConditionFamily::RingFour {
                r.push_eq("b(ac)a = b(db)a", &product(&[b, &ac, a]), &product(&[b, &db, a]), tol);
                r.push_eq("c(ac)d = c(db)d", &product(&[c, &ac, d]), &product(&[c, &db, d]), tol);
            }
        }
        ConditionFamily::LianZeng => {
            let aba = product(&[a, b, a]);
            let aca = product(&[a, c, a]);
            r.push_eq("(aba)b = (aca)b", &(&aba * b), &(&aca * b), tol);
            r.push_eq("b(aba) = b(aca)", &(b * &aba), &(b * &aca), tol);
            r.push_eq("(aba)c = (aca)c", &(&aba * c), &(&aca * c), tol);
            r.push_eq("c(aba) = c(aca)", &(c * &aba), &(c * &aca), tol);
            r.push_eq("d = a", d, a, tol);
        }
        ConditionFamily::MillerZguitti => {
            r.push_eq("acd = dbd", &product(&[a, c, d]), &product(&[d, b, d]), tol);
            r.push_eq("dba = aca", &product(&[d, b, a]), &product(&[a, c, a]), tol);
        }
    }
    r
}

/// Verdict for the declared family plus every family that also holds.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCheck {
    pub family: ConditionFamily,
    pub report: HypothesisReport,
    /// All families (declared one included) whose equations hold.
    pub also_holds: Vec<ConditionFamily>,
}

impl ConditionCheck {
    pub fn holds(&self, family: ConditionFamily) -> bool {
        self.also_holds.contains(&family)
    }
}

pub fn check_conditions<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> ConditionCheck {
    let report = family_report(q, q.family, tol);
    let also_holds = ConditionFamily::ALL
        .into_iter()
        .filter(|&f| if f == q.family { report.overall } else { family_report(q, f, tol).overall })
        .collect();
    ConditionCheck { family: q.family, report, also_holds }
}

pub(crate) fn require_family<S: Scalar>(q: &ClineQuadruple<S>, family: ConditionFamily, tol: &Tolerance) -> Result<()> {
    let report = family_report(q, family, tol);
    if report.overall {
        Ok(())
    } else {
        Err(Error::HypothesisViolated { family: family.as_str(), failed: report.failed_names() })
    }
}

fn require_drazin_of<S: Scalar>(m: &Matrix<S>, given: &DrazinResult<S>, tol: &Tolerance) -> Result<()> {
    let report = drazin::verify_drazin_axioms_bounded(m, &given.inverse, given.index, tol, 0)?;
    if report.overall {
        Ok(())
    } else {
        Err(Error::InvalidInput("supplied Drazin inverse fails its axioms"))
    }
}

/// `(bd)^D = b h² d` with `h = (ac)^D`, packaged with `bd`'s own index.
///
/// The g-Drazin and Drazin inverses coincide for matrices, so this is
/// also the generalized-Drazin transfer.
pub fn transfer_gdrazin<S: Scalar>(
    q: &ClineQuadruple<S>,
    acd: &DrazinResult<S>,
    tol: &Tolerance,
) -> Result<DrazinResult<S>> {
    require_family(q, q.family, tol)?;
    let ac = q.ac();
    require_drazin_of(&ac, acd, tol)?;
    Ok(transfer_formula(&q.b, &acd.inverse, &q.d, tol))
}

/// Transfer that is valid under the two BanachWeak equations alone:
///
/// ```text
/// (bd)^D = [(bd)²]^D · bd = b · ((ac)^D)⁴ · dbd · bd
/// ```
///
/// `(aca, b, c, dbd)` satisfies all four RingFour equations whenever
/// `(a, b, c, d)` satisfies the two BanachWeak ones, and its products are
/// `(ac)²` and `(bd)²`. The plain formula `b((ac)^D)²d` can fail on
/// quadruples that satisfy BanachWeak but not RingFour; this one does not.
pub fn transfer_via_squares<S: Scalar>(
    q: &ClineQuadruple<S>,
    acd: &DrazinResult<S>,
    tol: &Tolerance,
) -> Result<DrazinResult<S>> {
    require_family(q, ConditionFamily::BanachWeak, tol)?;
    let ac = q.ac();
    require_drazin_of(&ac, acd, tol)?;
    let h = &acd.inverse;
    let bd = q.bd();
    let e = product(&[&q.b, h, h, h, h, &q.d, &q.b, &q.d, &bd]);
    let index = drazin::index_unchecked(&bd, tol);
    Ok(DrazinResult::assemble(&bd, e, index))
}

fn transfer_formula<S: Scalar>(b: &Matrix<S>, h: &Matrix<S>, d: &Matrix<S>, tol: &Tolerance) -> DrazinResult<S> {
    let e = product(&[b, h, h, d]);
    let bd = b * d;
    let index = drazin::index_unchecked(&bd, tol);
    DrazinResult::assemble(&bd, e, index)
}

/// Drazin transfer plus the index bound `i(bd) <= i(ac) + 2`
/// (`+ 1` when the family forces `d = a`).
pub fn transfer_drazin_with_bound<S: Scalar>(
    q: &ClineQuadruple<S>,
    acd: &DrazinResult<S>,
    tol: &Tolerance,
) -> Result<(DrazinResult<S>, bool)> {
    let bdd = transfer_gdrazin(q, acd, tol)?;
    let bound_holds = bdd.index <= acd.index + q.family.index_slack();
    Ok((bdd, bound_holds))
}

/// Reverse direction: recovers `(ac)^D` from `(bd)^D` through
/// `(db)^D = d((bd)^D)²b`, the transfer on `(d, c, b, a)` giving `(ca)^D`,
/// and `(ac)^D = a((ca)^D)²c`.
pub fn reverse_transfer<S: Scalar>(
    q: &ClineQuadruple<S>,
    bdd: &DrazinResult<S>,
    tol: &Tolerance,
) -> Result<DrazinResult<S>> {
    require_family(q, q.family, tol)?;
    require_drazin_of(&q.bd(), bdd, tol)?;
    let db = transfer_formula(&q.d, &bdd.inverse, &q.b, tol);
    let swapped = q.swapped();
    let ca = transfer_formula(&swapped.b, &db.inverse, &swapped.d, tol);
    Ok(transfer_formula(&q.a, &ca.inverse, &q.c, tol))
}

/// Group-inverse formula `(ac)^# = a[(ba)²]^# c` for quadruples with `d = a`.
///
/// `x = (ba)^D` is obtained by the transfer `b((ac)^#)²a`; `[(ba)²]^# = x²`
/// is checked against the group-inverse axioms and `index((ba)²) <= 1`, and
/// the reassembled `a x² c` must equal the supplied `(ac)^#`.
pub fn transfer_group<S: Scalar>(q: &ClineQuadruple<S>, acg: &GroupResult<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    if !q.family.forces_d_equal_a() {
        return Err(Error::HypothesisViolated {
            family: ConditionFamily::LianZeng.as_str(),
            failed: alloc::format!("declared family {} does not force d = a", q.family),
        });
    }
    require_family(q, q.family, tol)?;
    let ac = q.ac();
    let ac_index = drazin::index_unchecked(&ac, tol);
    if ac_index >= 2 {
        return Err(Error::NoGroupInverse { index: ac_index });
    }
    let g = &acg.inverse;
    let group_axioms = ac.approx_eq(&product(&[&ac, g, &ac]), tol)
        && g.approx_eq(&product(&[g, &ac, g]), tol)
        && (&ac * g).approx_eq(&(g * &ac), tol);
    if !group_axioms {
        return Err(Error::InvalidInput("supplied group inverse fails its axioms"));
    }

    let x = product(&[&q.b, g, g, &q.a]);
    let ba = &q.b * &q.a;
    let ba2 = &ba * &ba;
    if drazin::index_unchecked(&ba2, tol) > 1 {
        return Err(Error::FormulaMismatch("index((ba)^2) exceeds 1"));
    }
    let y = &x * &x;
    let y_is_group_inverse = ba2.approx_eq(&product(&[&ba2, &y, &ba2]), tol)
        && y.approx_eq(&product(&[&y, &ba2, &y]), tol)
        && (&ba2 * &y).approx_eq(&(&y * &ba2), tol);
    if !y_is_group_inverse {
        return Err(Error::FormulaMismatch("((ba)^D)^2 is not the group inverse of (ba)^2"));
    }
    let result = product(&[&q.a, &y, &q.c]);
    if !result.approx_eq(g, tol) {
        return Err(Error::FormulaMismatch("a[(ba)^2]^# c differs from (ac)^#"));
    }
    Ok(result)
}

/// `(ac nilpotent) == (bd nilpotent)`, testing `mⁿ = 0` with `n = dim`.
pub fn qnil_transfer_check<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<bool> {
    require_family(q, q.family, tol)?;
    Ok(is_nilpotent(&q.ac(), tol) == is_nilpotent(&q.bd(), tol))
}

pub fn is_nilpotent<S: Scalar>(m: &Matrix<S>, tol: &Tolerance) -> bool {
    let n = m.rows();
    m.pow(n as u32).approx_eq(&Matrix::zeros(n, n), tol)
}

/// Explicit inverse of `I - bd`:
///
/// ```text
/// (I - bd)^{-1} = [I - b s (acd - dbd)] [I + b s d],   s = (I - ac)^{-1}
/// ```
///
/// The RingFour equations are required whatever family the quadruple
/// declares. The result is checked as a two-sided inverse before it is
/// returned.
pub fn jacobson_inverse<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    require_family(q, ConditionFamily::RingFour, tol)?;
    jacobson_inverse_unchecked(q, tol)
}

/// [`jacobson_inverse`] without the RingFour check, for callers that
/// already established it (the equations are invariant under scaling `a`
/// and `d` by the same factor).
pub(crate) fn jacobson_inverse_unchecked<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    let x = jacobson_formula(q, tol)?;
    let id = Matrix::identity(q.dim());
    let one_minus_bd = &id - &q.bd();
    if !(&x * &one_minus_bd).approx_eq(&id, tol) || !(&one_minus_bd * &x).approx_eq(&id, tol) {
        return Err(Error::FormulaMismatch("Jacobson-type formula is not a two-sided inverse of I - bd"));
    }
    Ok(x)
}

/// The displayed formula alone, unverified. Errors only when `I - ac` is
/// singular.
pub(crate) fn jacobson_formula<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<Matrix<S>> {
    let id = Matrix::identity(q.dim());
    let ac = q.ac();
    let s = match linalg::inverse(&(&id - &ac), tol) {
        Ok(s) => s,
        Err(Error::Singular) => return Err(Error::SingularAC),
        Err(e) => return Err(e),
    };
    let (a, b, c, d) = (&q.a, &q.b, &q.c, &q.d);
    let gap = &product(&[a, c, d]) - &product(&[d, b, d]);
    let left = &id - &product(&[b, &s, &gap]);
    let right = &id + &product(&[b, &s, d]);
    Ok(&left * &right)
}

/// In `M_n(ℂ)` the Jacobson radical is zero and the p-Drazin inverse is the
/// Drazin inverse, so the p-Drazin transfer reduces to: under the
/// BanachWeak equations, `b((ac)^D)²d` passes every Drazin axiom for `bd`
/// (double commutant included, exact mode, `n <= 6`).
pub fn pdrazin_collapse_check<S: Scalar>(q: &ClineQuadruple<S>, tol: &Tolerance) -> Result<bool> {
    require_family(q, ConditionFamily::BanachWeak, tol)?;
    let acd = drazin::drazin(&q.ac(), tol)?;
    let e = transfer_formula(&q.b, &acd.inverse, &q.d, tol);
    let report = drazin::verify_drazin_axioms(&q.bd(), &e.inverse, e.index, tol)?;
    Ok(report.overall)
}

/// For `d = a` quadruples, axiom reports for the two candidate formulas
/// `b((ac)^D)²a` (the `d = a` specialization of the transfer) and
/// `b((ab)^D)²a` (as sometimes printed). Only the first is correct in
/// general; both are returned so callers can log them.
pub fn lian_zeng_formula_candidates<S: Scalar>(
    q: &ClineQuadruple<S>,
    tol: &Tolerance,
) -> Result<(HypothesisReport, HypothesisReport)> {
    let ba = &q.b * &q.a;
    let ba_index = drazin::index_unchecked(&ba, tol);
    let from_ac = drazin::drazin(&q.ac(), tol)?.inverse;
    let from_ab = drazin::drazin(&(&q.a * &q.b), tol)?.inverse;
    let check = |h: &Matrix<S>| {
        let e = product(&[&q.b, h, h, &q.a]);
        drazin::verify_drazin_axioms_bounded(&ba, &e, ba_index, tol, 0)
    };
    Ok((check(&from_ac)?, check(&from_ab)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::scalar::GaussianRational;

    type M = ExactMatrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    fn example_3_7() -> ClineQuadruple<GaussianRational> {
        let j = M::shift(4);
        let d = M::weighted_shift(4, &[q(2, 1), q(1, 1), q(1, 1)]);
        ClineQuadruple::new(j.clone(), j.clone(), j, d, ConditionFamily::BanachWeak).unwrap()
    }

    fn identity_quad(n: usize, family: ConditionFamily) -> ClineQuadruple<GaussianRational> {
        let i = M::identity(n);
        ClineQuadruple::new(i.clone(), i.clone(), i.clone(), i, family).unwrap()
    }

    #[test]
    fn family_names_roundtrip() {
        for f in ConditionFamily::ALL {
            assert_eq!(f.as_str().parse::<ConditionFamily>().unwrap(), f);
        }
        assert!("cline".parse::<ConditionFamily>().is_err());
    }

    #[test]
    fn example_satisfies_weak_conditions() {
        let check = check_conditions(&example_3_7(), &tol());
        assert!(check.report.overall && check.report.all_exact_zero());
        assert!(check.holds(ConditionFamily::BanachWeak));
        assert!(!check.holds(ConditionFamily::MillerZguitti));
    }

    #[test]
    fn broken_example_fails() {
        let mut quad = example_3_7();
        quad.d = &M::shift(4) + &M::unit(4, 0, 0);
        assert!(!check_conditions(&quad, &tol()).report.overall);
        assert!(matches!(
            transfer_gdrazin(&quad, &drazin::drazin(&quad.ac(), &tol()).unwrap(), &tol()),
            Err(Error::HypothesisViolated { family: "banach-weak", .. })
        ));
    }

    #[test]
    fn classical_pairs_satisfy_ring_four() {
        let a = M::from_i64(2, &[1, 2, 0, -1]);
        let b = M::from_i64(2, &[0, 1, 3, 1]);
        let quad = ClineQuadruple::classical(a, b).unwrap().with_family(ConditionFamily::RingFour);
        assert!(check_conditions(&quad, &tol()).report.overall);
    }

    #[test]
    fn transfer_on_example_is_zero() {
        let quad = example_3_7();
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        let (bdd, bound) = transfer_drazin_with_bound(&quad, &acd, &tol()).unwrap();
        assert_eq!(bdd.inverse, M::zeros(4, 4));
        assert_eq!((acd.index, bdd.index), (2, 2));
        assert!(bound);
    }

    #[test]
    fn classical_shift_transfer() {
        let j = M::shift(2);
        let quad = ClineQuadruple::classical(j.clone(), j.transpose()).unwrap();
        let abd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        assert_eq!(abd.inverse, M::unit(2, 0, 0));
        let (bad, bound) = transfer_drazin_with_bound(&quad, &abd, &tol()).unwrap();
        assert_eq!(bad.inverse, M::unit(2, 1, 1));
        assert_eq!((abd.index, bad.index), (1, 1));
        assert!(bound);
        let r = drazin::verify_drazin_axioms(&quad.bd(), &bad.inverse, bad.index, &tol()).unwrap();
        assert!(r.overall && r.all_exact_zero());
    }

    #[test]
    fn identity_transfer() {
        let quad = identity_quad(3, ConditionFamily::RingFour);
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        let (bdd, bound) = transfer_drazin_with_bound(&quad, &acd, &tol()).unwrap();
        assert_eq!((bdd.inverse, bdd.index, bound), (M::identity(3), 0, true));
    }

    #[test]
    fn rejects_forged_drazin_input() {
        let quad = identity_quad(2, ConditionFamily::RingFour);
        let mut forged = drazin::drazin(&quad.ac(), &tol()).unwrap();
        forged.inverse = M::zeros(2, 2);
        assert!(matches!(transfer_gdrazin(&quad, &forged, &tol()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn reverse_transfer_recovers_original() {
        let quad = example_3_7();
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        let bdd = transfer_gdrazin(&quad, &acd, &tol()).unwrap();
        assert_eq!(reverse_transfer(&quad, &bdd, &tol()).unwrap().inverse, acd.inverse);

        let a = M::diag(&[q(2, 1), q(0, 1)]).direct_sum(&M::shift(2));
        let b = M::from_i64(4, &[1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 2, 0, 0, 0, 0, 1]);
        let quad = ClineQuadruple::classical(a, b).unwrap();
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        let bdd = transfer_gdrazin(&quad, &acd, &tol()).unwrap();
        assert_eq!(reverse_transfer(&quad, &bdd, &tol()).unwrap().inverse, acd.inverse);
    }

    #[test]
    fn group_formula_examples() {
        let p = M::diag(&[q(1, 1), q(0, 1)]);
        let quad = ClineQuadruple::lian_zeng(p.clone(), p.clone(), p.clone()).unwrap();
        let g = drazin::group(&quad.ac(), &tol()).unwrap();
        assert_eq!(transfer_group(&quad, &g, &tol()).unwrap(), p);

        let quad = identity_quad(2, ConditionFamily::LianZeng);
        let g = drazin::group(&quad.ac(), &tol()).unwrap();
        assert_eq!(transfer_group(&quad, &g, &tol()).unwrap(), M::identity(2));

        let a = M::diag(&[q(2, 1), q(0, 1)]);
        let quad = ClineQuadruple::lian_zeng(a, M::identity(2), M::identity(2)).unwrap();
        let g = drazin::group(&quad.ac(), &tol()).unwrap();
        assert_eq!(g.inverse, M::diag(&[q(1, 2), q(0, 1)]));
        assert_eq!(transfer_group(&quad, &g, &tol()).unwrap(), g.inverse);
    }

    #[test]
    fn group_formula_needs_index_at_most_one() {
        let j = M::shift(2);
        let quad = ClineQuadruple::lian_zeng(j.clone(), M::identity(2), M::identity(2)).unwrap();
        let fake = GroupResult { inverse: M::zeros(2, 2) };
        assert_eq!(transfer_group(&quad, &fake, &tol()), Err(Error::NoGroupInverse { index: 2 }));
        assert!(matches!(transfer_group(&example_3_7(), &fake, &tol()), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn qnil_examples() {
        assert!(qnil_transfer_check(&example_3_7(), &tol()).unwrap());
        assert!(qnil_transfer_check(&identity_quad(3, ConditionFamily::RingFour), &tol()).unwrap());
        let b = M::from_i64(3, &[1, 2, 0, -1, 1, 1, 2, 0, 1]);
        let quad = ClineQuadruple::classical(M::shift(3), b).unwrap();
        assert!(qnil_transfer_check(&quad, &tol()).unwrap());
    }

    #[test]
    fn jacobson_examples() {
        let one = M::identity(1);
        let half = M::diag(&[q(1, 2)]);
        let quad = ClineQuadruple::new(one.clone(), one, half.clone(), half, ConditionFamily::RingFour).unwrap();
        assert_eq!(jacobson_inverse(&quad, &tol()).unwrap(), M::diag(&[q(2, 1)]));

        let quad = example_3_7();
        let x = jacobson_inverse(&quad, &tol()).unwrap();
        let n = M::shift(4).pow(2);
        assert_eq!(x, &M::identity(4) + &n);
        assert_eq!(x, linalg::inverse(&(&M::identity(4) - &quad.bd()), &tol()).unwrap());

        let z = M::zeros(3, 3);
        let quad = ClineQuadruple::new(z.clone(), z.clone(), z.clone(), z, ConditionFamily::RingFour).unwrap();
        assert_eq!(jacobson_inverse(&quad, &tol()).unwrap(), M::identity(3));

        assert_eq!(jacobson_inverse(&identity_quad(2, ConditionFamily::RingFour), &tol()), Err(Error::SingularAC));
    }

    #[test]
    fn pdrazin_examples() {
        assert!(pdrazin_collapse_check(&example_3_7(), &tol()).unwrap());
        assert!(pdrazin_collapse_check(&identity_quad(2, ConditionFamily::BanachWeak), &tol()).unwrap());
        let a = M::from_i64(3, &[0, 1, 2, 0, 0, 1, 1, 0, 0]);
        let b = M::from_i64(3, &[1, 0, 0, 2, 0, 0, 0, 1, 0]);
        let quad = ClineQuadruple::classical(a, b).unwrap();
        assert!(pdrazin_collapse_check(&quad, &tol()).unwrap());
    }

    #[test]
    fn lian_zeng_candidates_agree_when_c_equals_b() {
        let j = M::shift(2);
        let e11 = M::unit(2, 0, 0);
        let quad = ClineQuadruple::lian_zeng(j, e11.clone(), e11).unwrap();
        let (from_ac, from_ab) = lian_zeng_formula_candidates(&quad, &tol()).unwrap();
        assert!(from_ac.overall);
        assert!(from_ab.overall);
    }

    /// a = d = I, c = e11, b = e11 + e12 satisfies the two BanachWeak
    /// equations but not RingFour, and the plain formula fails there.
    fn weak_only() -> ClineQuadruple<GaussianRational> {
        let i = M::identity(2);
        let c = M::unit(2, 0, 0);
        let b = M::from_i64(2, &[1, 1, 0, 0]);
        ClineQuadruple::new(i.clone(), b, c, i, ConditionFamily::BanachWeak).unwrap()
    }

    #[test]
    fn plain_formula_fails_on_weak_only_quadruple() {
        let quad = weak_only();
        let check = check_conditions(&quad, &tol());
        assert!(check.report.overall);
        assert!(!check.holds(ConditionFamily::RingFour));
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        let e = transfer_gdrazin(&quad, &acd, &tol()).unwrap();
        assert_eq!(e.inverse, M::unit(2, 0, 0));
        let r = drazin::verify_drazin_axioms(&quad.bd(), &e.inverse, e.index, &tol()).unwrap();
        assert!(!r.overall);
        assert!(!pdrazin_collapse_check(&quad, &tol()).unwrap());
    }

    #[test]
    fn squared_transfer_repairs_weak_only_quadruple() {
        let quad = weak_only();
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        let e = transfer_via_squares(&quad, &acd, &tol()).unwrap();
        assert_eq!(e.inverse, drazin::drazin(&quad.bd(), &tol()).unwrap().inverse);

        let quad = example_3_7();
        let acd = drazin::drazin(&quad.ac(), &tol()).unwrap();
        assert_eq!(transfer_via_squares(&quad, &acd, &tol()).unwrap().inverse, M::zeros(4, 4));
    }
}
