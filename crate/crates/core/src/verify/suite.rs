//! Suite configuration and the runner that turns it into a [`Report`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::appell::{AppellFamily, FamilyKind};
use crate::error::Error;
use crate::qcore::QContext;
use crate::rational::Rational;

use super::identities::{
    check_classical_limit, check_euler_inverse, check_kfold, check_kfold_y_printed, check_lowering, check_numbers, check_slice,
};
use super::lemmas::{check_family_lemmas, LemmaMatrix};
use super::recurrence::{
    check_qde, check_qde_pairing, check_recurrence, passing_variants, search_recurrence_variants, Axis, VariantSpec,
};
use super::CheckResult;

/// Order to which the q-exponential inverse pair is checked.
pub const EULER_INVERSE_ORDER: usize = 16;

/// Largest `n` used for the q-difference pairing check.
pub const QDE_PAIRING_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Suite {
    /// Identities guaranteed by the generating function.
    Core,
    /// Recurrence readings, q-difference equations and lemma matrices.
    Theorems,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Theorems => "theorems",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Named(FamilyKind),
    /// `coefficients` are `c_0..c_M` in q-exponential normalization.
    Custom { name: String, coefficients: Vec<Rational> },
}

impl FamilySpec {
    pub fn label(&self) -> &str {
        match self {
            FamilySpec::Named(kind) => kind.name(),
            FamilySpec::Custom { name, .. } => name,
        }
    }

    pub fn build(&self, ctx: &QContext, order: usize) -> Result<AppellFamily, Error> {
        match self {
            FamilySpec::Named(kind) => AppellFamily::named(*kind, ctx, order),
            FamilySpec::Custom { name, coefficients } => AppellFamily::custom(name, coefficients, ctx, order),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub qs: Vec<Rational>,
    pub degree: usize,
    pub families: Vec<FamilySpec>,
    pub suites: Vec<Suite>,
    /// Run the full recurrence variant search instead of the printed reading alone.
    pub variants: bool,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if let Some(bad) = self.qs.iter().find(|q| !q.is_positive()) {
            return Err(Error::InvalidQ(bad.clone()));
        }
        if self.degree < 2 {
            return Err(Error::Config(format!("degree must be at least 2, got {}", self.degree)));
        }
        Ok(())
    }
}

/// The configuration echoed into a report.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReportConfig {
    pub qs: Vec<Rational>,
    pub degree: usize,
    pub families: Vec<String>,
    pub suites: Vec<Suite>,
    pub variants: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Report {
    pub version: String,
    pub config: ReportConfig,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn hard_failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.hard && !r.passed)
    }

    pub fn all_hard_passed(&self) -> bool {
        self.hard_failures().next().is_none()
    }
}

/// Runs the selected suites over families x q values.
///
/// Results are ordered by configuration: the q-exponential check per q, then
/// per family, per q, the core checks followed by the theorem checks, then
/// the cross-q and cross-family summaries.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, Error> {
    config.validate()?;
    let ctxs = config
        .qs
        .iter()
        .map(|q| QContext::new(q.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut families = Vec::new();
    for spec in &config.families {
        for ctx in &ctxs {
            families.push(spec.build(ctx, config.degree)?);
        }
    }
    let echo = ReportConfig {
        qs: config.qs.clone(),
        degree: config.degree,
        families: config.families.iter().map(|f| f.label().into()).collect(),
        suites: config.suites.clone(),
        variants: config.variants,
    };
    let qs = if config.families.is_empty() { Vec::new() } else { ctxs };
    Ok(run_checks(echo, &qs, &families))
}

/// Runs the selected suites on already built (for instance imported) tables.
///
/// The report configuration lists the distinct q values and family names in
/// order of first appearance and the largest table degree.
pub fn run_tables(families: &[AppellFamily], suites: &[Suite], variants: bool) -> Report {
    let mut ctxs: Vec<QContext> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for fam in families {
        if !ctxs.iter().any(|c| c.q() == fam.q()) {
            ctxs.push(fam.ctx().clone());
        }
        if !names.iter().any(|n| n == fam.name()) {
            names.push(fam.name().into());
        }
    }
    let echo = ReportConfig {
        qs: ctxs.iter().map(|c| c.q().clone()).collect(),
        degree: families.iter().map(|f| f.order()).max().unwrap_or(0),
        families: names,
        suites: suites.to_vec(),
        variants,
    };
    run_checks(echo, &ctxs, families)
}

fn run_checks(config: ReportConfig, ctxs: &[QContext], families: &[AppellFamily]) -> Report {
    let core = config.suites.contains(&Suite::Core);
    let theorems = config.suites.contains(&Suite::Theorems);

    let mut results = Vec::new();
    if core {
        for ctx in ctxs {
            results.push(check_euler_inverse(ctx, EULER_INVERSE_ORDER));
        }
    }

    // (family label, q, passing set) for the invariance summary
    let mut searches: Vec<(String, Rational, Vec<VariantSpec>)> = Vec::new();
    // (family label, q, lemma matrix) for the q-stability summary
    let mut matrices: Vec<(String, Rational, LemmaMatrix)> = Vec::new();

    for fam in families {
        let n = fam.order();
        if core {
            results.push(check_lowering(fam));
            results.push(check_kfold(fam, n));
            results.push(check_kfold_y_printed(fam, n));
            results.push(check_numbers(fam));
            results.push(check_slice(fam));
            if fam.ctx().is_classical() {
                results.push(check_classical_limit(fam).expect("classical q"));
            }
        }
        if theorems {
            run_theorems(fam, config.variants, &mut results, &mut searches);
            if fam.kind() != FamilyKind::Custom {
                let lemma = check_family_lemmas(fam);
                if let Some(m) = &lemma.matrix {
                    matrices.push((fam.name().into(), fam.q().clone(), m.clone()));
                }
                results.push(lemma);
            }
        }
    }

    if theorems && config.variants && !searches.is_empty() {
        results.push(search_invariance(&searches));
    }
    if theorems {
        for label in &config.families {
            let per_q: Vec<_> = matrices.iter().filter(|(l, _, _)| l == label).collect();
            if !per_q.is_empty() {
                results.push(lemma_stability(label, &per_q));
            }
        }
    }

    Report {
        version: env!("CARGO_PKG_VERSION").into(),
        config,
        results,
    }
}

fn run_theorems(
    fam: &AppellFamily,
    variants: bool,
    results: &mut Vec<CheckResult>,
    searches: &mut Vec<(String, Rational, Vec<VariantSpec>)>,
) {
    if !variants {
        let v = VariantSpec::PRINTED;
        results.push(check_recurrence(fam, &v));
        for axis in [Axis::X, Axis::Y] {
            results.push(check_qde(fam, axis, Some(&v)).expect("variant supplied"));
        }
        return;
    }
    let search = search_recurrence_variants(fam);
    let passing = passing_variants(&search);
    results.push(check_qde_pairing(fam, &search, QDE_PAIRING_MAX_N));
    for v in &passing {
        for axis in [Axis::X, Axis::Y] {
            results.push(check_qde(fam, axis, Some(v)).expect("variant supplied"));
        }
    }
    let mut summary = CheckResult::new("recurrence_search", Some(fam.name()), fam.q(), fam.order()).informational();
    summary.passed = !passing.is_empty();
    summary.note = Some(format!("{} of {} variants pass", passing.len(), search.len()));
    summary.passing = Some(passing.clone());
    searches.push((fam.name().into(), fam.q().clone(), passing));
    results.extend(search.into_iter().map(|(_, r)| r));
    results.push(summary);
}

/// Hard check: the passing set is the same for every family and every q != 1.
///
/// At `q = 1` every power of `q` and every `[1]_q` weight equals one, so
/// readings that differ only there coincide and also pass. The requirement at
/// `q = 1` is therefore that every generic passing reading passes; the extra
/// classical coincidences are counted in the note.
fn search_invariance(searches: &[(String, Rational, Vec<VariantSpec>)]) -> CheckResult {
    let one = Rational::one();
    let q = searches[0].1.clone();
    let mut res = CheckResult::new("recurrence_search_invariance", None, &q, 0);
    let generic: Vec<_> = searches.iter().filter(|(_, q, _)| *q != one).collect();
    let reference = generic.first().map(|(_, _, p)| p.clone());
    let mut problems: Vec<String> = Vec::new();
    let mut extra = Vec::new();
    if let Some(reference) = &reference {
        for (fam, q, passing) in &generic {
            if passing != reference {
                problems.push(format!("{fam} at q={q} differs"));
            }
        }
        for (fam, q, passing) in searches.iter().filter(|(_, q, _)| *q == one) {
            if !reference.iter().all(|v| passing.contains(v)) {
                problems.push(format!("{fam} at q={q} misses a generic passing variant"));
            }
            extra.push(passing.len() - reference.iter().filter(|v| passing.contains(v)).count());
        }
    }
    res.passing = reference.clone();
    if problems.is_empty() {
        let mut note = format!(
            "{} passing variants, identical across {} family/q pairs with q != 1",
            reference.as_ref().map_or(0, |r| r.len()),
            generic.len()
        );
        if let Some(max) = extra.iter().max() {
            note.push_str(&format!("; at q=1 all of them pass plus up to {max} classical coincidences"));
        }
        res.note = Some(note);
    } else {
        res.passed = false;
        res.note = Some(problems.join("; "));
    }
    res
}

/// Hard check: the lemma match pattern does not depend on q (q != 1).
fn lemma_stability(label: &str, per_q: &[&(String, Rational, LemmaMatrix)]) -> CheckResult {
    let one = Rational::one();
    let q = per_q[0].1.clone();
    let mut res = CheckResult::new("lemma_q_stability", Some(label), &q, 0);
    let generic: Vec<_> = per_q.iter().filter(|(_, q, _)| *q != one).collect();
    if let Some((_, q0, m0)) = generic.first() {
        let reference = m0.pattern();
        for (_, q, m) in &generic[1..] {
            if m.pattern() != reference {
                res.passed = false;
                res.note = Some(format!("pattern at q={q} differs from q={q0}"));
                break;
            }
        }
        if res.passed {
            res.note = Some(format!("pattern identical across {} values of q != 1", generic.len()));
        }
    }
    res
}
