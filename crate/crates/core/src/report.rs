//! Per-equation verdicts for hypothesis and axiom checks.

use alloc::string::String;
use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::{Backend, Scalar, Tolerance};

/// Max-entry residual of one equation `LHS - RHS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    /// Exact backend, difference is identically zero.
    ExactZero,
    /// Exact backend, nonzero difference; payload is its max-entry modulus.
    Exact(f64),
    /// Float backend max-entry modulus.
    Float(f64),
    /// The check was not run (for example the double-commutant test in
    /// float mode). Never counted as passing.
    Skipped,
}

impl Residual {
    pub fn of_difference<S: Scalar>(diff: &Matrix<S>) -> Self {
        match S::BACKEND {
            Backend::Exact if diff.is_zero() => Residual::ExactZero,
            Backend::Exact => Residual::Exact(diff.max_abs()),
            Backend::F64 => Residual::Float(diff.max_abs()),
        }
    }

    /// Numeric value; `None` when skipped.
    pub fn value(&self) -> Option<f64> {
        match *self {
            Residual::ExactZero => Some(0.0),
            Residual::Exact(v) | Residual::Float(v) => Some(v),
            Residual::Skipped => None,
        }
    }

    pub fn holds(&self, tol: &Tolerance) -> bool {
        match *self {
            Residual::ExactZero => true,
            Residual::Exact(_) | Residual::Skipped => false,
            Residual::Float(v) => v <= tol.eq_tol,
        }
    }

    /// Larger of two residuals; used to fold several matrix residuals into
    /// one condition entry.
    pub fn max(self, other: Residual) -> Residual {
        use Residual::*;
        match (self, other) {
            (Skipped, r) | (r, Skipped) => r,
            (ExactZero, r) | (r, ExactZero) => r,
            (Exact(a), Exact(b)) => Exact(a.max(b)),
            (Float(a), Float(b)) => Float(a.max(b)),
            (Exact(a), Float(b)) | (Float(b), Exact(a)) => Float(a.max(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: String,
    pub residual: Residual,
    pub holds: bool,
}

impl Condition {
    pub fn skipped(&self) -> bool {
        matches!(self.residual, Residual::Skipped)
    }
}

/// Verdicts for a set of equations.
///
/// `overall` is the conjunction of every entry that was actually evaluated;
/// skipped entries are listed but neither pass nor fail.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HypothesisReport {
    pub conditions: Vec<Condition>,
    pub overall: bool,
}

impl HypothesisReport {
    pub fn new() -> Self {
        HypothesisReport { conditions: Vec::new(), overall: true }
    }

    pub fn push(&mut self, name: impl Into<String>, residual: Residual, tol: &Tolerance) {
        let holds = residual.holds(tol);
        if !matches!(residual, Residual::Skipped) {
            self.overall &= holds;
        }
        self.conditions.push(Condition { name: name.into(), residual, holds });
    }

    /// Pushes `lhs == rhs`.
    pub fn push_eq<S: Scalar>(&mut self, name: impl Into<String>, lhs: &Matrix<S>, rhs: &Matrix<S>, tol: &Tolerance) {
        self.push(name, lhs.residual(rhs), tol);
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.holds && !c.skipped())
    }

    /// Names of failed entries, comma separated.
    pub fn failed_names(&self) -> String {
        let names: Vec<&str> = self.failed().map(|c| c.name.as_str()).collect();
        names.join(", ")
    }

    /// True when every evaluated residual is exactly zero (exact backend).
    pub fn all_exact_zero(&self) -> bool {
        self.conditions.iter().filter(|c| !c.skipped()).all(|c| c.residual == Residual::ExactZero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_entries_do_not_pass_silently() {
        let tol = Tolerance::default();
        let mut r = HypothesisReport::new();
        r.push("a", Residual::ExactZero, &tol);
        r.push("comm2", Residual::Skipped, &tol);
        assert!(r.overall);
        let c = r.get("comm2").unwrap();
        assert!(!c.holds && c.skipped());
        r.push("b", Residual::Float(1e-3), &tol);
        assert!(!r.overall);
        assert_eq!(r.failed_names(), "b");
    }

    #[test]
    fn residual_max() {
        assert_eq!(Residual::ExactZero.max(Residual::Exact(2.0)), Residual::Exact(2.0));
        assert_eq!(Residual::Float(1.0).max(Residual::Float(3.0)), Residual::Float(3.0));
        assert_eq!(Residual::Skipped.max(Residual::ExactZero), Residual::ExactZero);
    }
}
