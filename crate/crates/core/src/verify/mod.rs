//! Exact residual checks for the identities satisfied by 2D q-Appell tables.
//!
//! Every check computes `LHS - RHS` as a [`Poly2`] and passes only when the
//! residual is the zero polynomial. There are no tolerances anywhere.
//!
//! - [`identities`]: lowering, k-fold lowering, numbers, y=0 slice, classical
//!   limit and the q-exponential inverse pair. These hold by construction.
//! - [`recurrence`]: the linear recurrence and the partial q-difference
//!   equations, evaluated over a finite space of readings ([`VariantSpec`]).
//! - [`lemmas`]: printed closed forms for the alpha/beta sequences of the
//!   named families, compared cell by cell.
//! - [`suite`]: configuration, the suite runner and the [`Report`].

use alloc::string::String;
use alloc::vec::Vec;

use crate::polyring::Poly2;
use crate::rational::Rational;

pub mod identities;
pub mod lemmas;
pub mod recurrence;
pub mod suite;

pub use identities::{
    check_classical_limit, check_euler_inverse, check_kfold, check_kfold_y_printed, check_lowering, check_numbers, check_slice,
};
pub use lemmas::{check_family_lemmas, LemmaCell, LemmaMatrix, LemmaRow};
pub use recurrence::{
    check_qde, check_recurrence, passing_variants, search_recurrence_variants, Axis, BetaConvention, BetaIndex,
    BetaScale, QPowerForm, VariantSpec, XTermForm,
};
pub use suite::{run_suite, run_tables, FamilySpec, Report, ReportConfig, Suite, SuiteConfig};

/// Which identity a residual belongs to; enough to recompute it standalone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Identity {
    LoweringX,
    LoweringY,
    KfoldX,
    KfoldY,
    KfoldYPrinted,
    Numbers,
    Slice,
    ClassicalLimit,
    EulerInverse,
    Recurrence,
    QdeX,
    QdeY,
}

/// First nonzero residual met by a failing check.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub identity: Identity,
    pub n: usize,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub k: Option<usize>,
    pub residual: Poly2,
}

/// Outcome of one check on one family at one q.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckResult {
    pub name: String,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub family: Option<String>,
    pub q: Rational,
    pub max_n: usize,
    pub passed: bool,
    /// Hard checks decide the exit status; the rest are findings.
    pub hard: bool,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub variant: Option<VariantSpec>,
    /// Per-n status `residuals[n-1]` for checks that run over `1..=max_n`.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub residuals: Option<Vec<bool>>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub matrix: Option<LemmaMatrix>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub passing: Option<Vec<VariantSpec>>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub note: Option<String>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub first_failure: Option<Witness>,
}

impl CheckResult {
    pub(crate) fn new(name: &str, family: Option<&str>, q: &Rational, max_n: usize) -> Self {
        CheckResult {
            name: name.into(),
            family: family.map(String::from),
            q: q.clone(),
            max_n,
            passed: true,
            hard: true,
            variant: None,
            residuals: None,
            matrix: None,
            passing: None,
            note: None,
            first_failure: None,
        }
    }

    /// Records a residual; the first nonzero one becomes the witness.
    pub(crate) fn record(&mut self, identity: Identity, n: usize, k: Option<usize>, residual: Poly2) -> bool {
        let ok = residual.is_zero();
        if !ok {
            self.passed = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(Witness { identity, n, k, residual });
            }
        }
        ok
    }

    pub(crate) fn informational(mut self) -> Self {
        self.hard = false;
        self
    }
}

/// Recomputes the residual named by a witness on `fam`.
///
/// `variant` is needed for recurrence and q-difference witnesses.
pub fn witness_residual(
    fam: &crate::appell::AppellFamily,
    witness: &Witness,
    variant: Option<&VariantSpec>,
) -> Result<Poly2, crate::error::Error> {
    use identities as id;
    let n = witness.n;
    let k = witness.k.unwrap_or(1);
    Ok(match witness.identity {
        Identity::LoweringX => id::lowering_x_residual(fam, n),
        Identity::LoweringY => id::lowering_y_residual(fam, n),
        Identity::KfoldX => id::kfold_x_residual(fam, n, k),
        Identity::KfoldY => id::kfold_y_residual(fam, n, k),
        Identity::KfoldYPrinted => id::kfold_y_printed_residual(fam, n, k),
        Identity::Numbers => id::numbers_residual(fam, n),
        Identity::Slice => id::slice_residual(fam, n),
        Identity::ClassicalLimit => id::classical_residual(fam, n)?,
        Identity::EulerInverse => id::euler_inverse_residual(fam.ctx(), n),
        Identity::Recurrence => recurrence::recurrence_residual(fam, variant.ok_or(crate::error::Error::MissingVariant)?, n),
        Identity::QdeX => recurrence::qde_residual(fam, Axis::X, variant.ok_or(crate::error::Error::MissingVariant)?, n),
        Identity::QdeY => recurrence::qde_residual(fam, Axis::Y, variant.ok_or(crate::error::Error::MissingVariant)?, n),
    })
}
