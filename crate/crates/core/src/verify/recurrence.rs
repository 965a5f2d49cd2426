//! The linear recurrence for `A_n(qx, y)` and its q-difference forms.
//!
//! The printed recurrence comes in several renderings that disagree on the
//! beta normalization, the beta index, the weight attached to beta, the power
//! of `q` in the sum and the weight of the `x A_{n-1}` term. A [`VariantSpec`]
//! fixes one reading of each; [`search_recurrence_variants`] evaluates every
//! reading against the table built from the generating function.
//!
//! For a variant `v` the recurrence reads, for `n >= 1`,
//!
//! ```text
//! A_n(qx,y) = 1/[n]_q * sum_{k=0}^{n} [n k]_q q^{e(n,k)} A_{n-k}(x,y) (alpha_k + b(k) y)
//!           + X(n) x A_{n-1}(x,y)
//! ```
//!
//! with `b(0) = 0`. The `k = 0` term carries `alpha_0`, which vanishes unless
//! `A_q(0) = 0` (Genocchi).
//!
//! The q-difference equations replace each `A_{n-k}` by
//! `([n-k]_q!/[n]_q!) D^k A_n` (x-axis) or by
//! `([n-k]_q!/[n]_q!) q^{-k(k-1)/2} (D_y^k A_n)(x, y/q^k)` (y-axis), so their residual is
//! `-[n]_q` times the recurrence residual whenever the lowering identities hold.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::appell::AppellFamily;
use crate::error::Error;
use crate::polyring::Poly2;
use crate::rational::Rational;

use super::{CheckResult, Identity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BetaConvention {
    /// `A_q(t)/A_q(qt)`
    NoT,
    /// `t A_q(t)/A_q(qt)`
    WithT,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BetaIndex {
    /// `beta_k`
    K,
    /// `beta_{k-1}`
    KMinus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BetaScale {
    /// `beta`
    One,
    /// `beta / [k]_q`
    DivK,
    /// `[k]_q beta`
    MulK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum QPowerForm {
    /// `q^{n-k}`
    NMinusK,
    /// `q^{n-k-1}`
    NMinusKMinus1,
    /// `q^{k-1}`
    KMinus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum XTermForm {
    /// `x q^n A_{n-1}`
    QPowN,
    /// `x [n]_q q^n A_{n-1}`
    QIntQPowN,
}

/// One reading of the printed recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VariantSpec {
    pub beta_convention: BetaConvention,
    pub beta_index_shift: BetaIndex,
    pub beta_scale: BetaScale,
    pub qpower_exponent_form: QPowerForm,
    pub x_term_form: XTermForm,
}

impl VariantSpec {
    /// The recurrence as usually printed: `beta_{k-1}/[k]_q` with
    /// `beta = t A_q(t)/A_q(qt)`, `q^{n-k}` and `x q^n A_{n-1}`.
    pub const PRINTED: VariantSpec = VariantSpec {
        beta_convention: BetaConvention::WithT,
        beta_index_shift: BetaIndex::KMinus1,
        beta_scale: BetaScale::DivK,
        qpower_exponent_form: QPowerForm::NMinusK,
        x_term_form: XTermForm::QPowN,
    };

    /// Every variant, in a fixed order.
    pub fn all() -> Vec<VariantSpec> {
        let mut out = Vec::new();
        for beta_convention in [BetaConvention::NoT, BetaConvention::WithT] {
            for beta_index_shift in [BetaIndex::K, BetaIndex::KMinus1] {
                for beta_scale in [BetaScale::One, BetaScale::DivK, BetaScale::MulK] {
                    for qpower_exponent_form in [QPowerForm::NMinusK, QPowerForm::NMinusKMinus1, QPowerForm::KMinus1] {
                        for x_term_form in [XTermForm::QPowN, XTermForm::QIntQPowN] {
                            out.push(VariantSpec {
                                beta_convention,
                                beta_index_shift,
                                beta_scale,
                                qpower_exponent_form,
                                x_term_form,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    fn exponent(&self, n: usize, k: usize) -> i64 {
        let (n, k) = (n as i64, k as i64);
        match self.qpower_exponent_form {
            QPowerForm::NMinusK => n - k,
            QPowerForm::NMinusKMinus1 => n - k - 1,
            QPowerForm::KMinus1 => k - 1,
        }
    }

    /// `(alpha_k, b(k))` so that the bracket reads `alpha_k + b(k) y`.
    fn bracket(&self, fam: &AppellFamily, k: usize) -> (Rational, Rational) {
        let alpha = fam.alpha()[k].clone();
        if k == 0 {
            return (alpha, Rational::zero());
        }
        let seq = match self.beta_convention {
            BetaConvention::NoT => fam.beta_no_t(),
            BetaConvention::WithT => fam.beta_with_t(),
        };
        let idx = match self.beta_index_shift {
            BetaIndex::K => k,
            BetaIndex::KMinus1 => k - 1,
        };
        let qk = fam.ctx().q_int(k);
        let beta = match self.beta_scale {
            BetaScale::One => seq[idx].clone(),
            BetaScale::DivK => &seq[idx] / &qk,
            BetaScale::MulK => &seq[idx] * &qk,
        };
        (alpha, beta)
    }

    fn x_weight(&self, fam: &AppellFamily, n: usize) -> Rational {
        let qn = fam.ctx().q_pow(n as i64);
        match self.x_term_form {
            XTermForm::QPowN => qn,
            XTermForm::QIntQPowN => &fam.ctx().q_int(n) * &qn,
        }
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conv = match self.beta_convention {
            BetaConvention::NoT => "no_t",
            BetaConvention::WithT => "with_t",
        };
        let idx = match self.beta_index_shift {
            BetaIndex::K => "k",
            BetaIndex::KMinus1 => "k-1",
        };
        let scale = match self.beta_scale {
            BetaScale::One => "1",
            BetaScale::DivK => "1/[k]",
            BetaScale::MulK => "[k]",
        };
        let qp = match self.qpower_exponent_form {
            QPowerForm::NMinusK => "n-k",
            QPowerForm::NMinusKMinus1 => "n-k-1",
            QPowerForm::KMinus1 => "k-1",
        };
        let xt = match self.x_term_form {
            XTermForm::QPowN => "q^n",
            XTermForm::QIntQPowN => "[n]q^n",
        };
        write!(f, "beta={conv} idx={idx} scale={scale} qpow={qp} x={xt}")
    }
}

/// Largest `n` the recurrence can be evaluated at.
fn recurrence_order(fam: &AppellFamily) -> usize {
    fam.order().min(fam.aux_order())
}

/// One equation at one `n`, independent of the variant.
///
/// Every equation in this module has the shape
/// `sum_k q^{e(n,k)} (alpha_k + b(k) y) T_k + X(n) x T_1 = target`.
struct Equation {
    terms: Vec<Poly2>,
    target: Poly2,
}

/// Partial sums of an [`Equation`], cached by the variant fields they depend on.
struct Sums<'a> {
    fam: &'a AppellFamily,
    n: usize,
    eq: Equation,
    plain: BTreeMap<QPowerForm, Poly2>,
    with_y: BTreeMap<(BetaConvention, BetaIndex, BetaScale, QPowerForm), Poly2>,
}

impl<'a> Sums<'a> {
    fn new(fam: &'a AppellFamily, n: usize, eq: Equation) -> Self {
        Sums {
            fam,
            n,
            eq,
            plain: BTreeMap::new(),
            with_y: BTreeMap::new(),
        }
    }

    /// `LHS_v - target`.
    fn residual(&mut self, v: &VariantSpec) -> Poly2 {
        let (fam, n, eq) = (self.fam, self.n, &self.eq);
        let q = |k: usize| fam.ctx().q_pow(v.exponent(n, k));
        let plain = self.plain.entry(v.qpower_exponent_form).or_insert_with(|| {
            let mut acc = Poly2::zero();
            for (k, t) in eq.terms.iter().enumerate() {
                acc.add_scaled(t, &(&q(k) * &fam.alpha()[k]));
            }
            acc
        });
        let key = (v.beta_convention, v.beta_index_shift, v.beta_scale, v.qpower_exponent_form);
        let with_y = self.with_y.entry(key).or_insert_with(|| {
            let mut acc = Poly2::zero();
            for (k, t) in eq.terms.iter().enumerate().skip(1) {
                acc.add_scaled(t, &(&q(k) * &v.bracket(fam, k).1));
            }
            acc.shift(0, 1)
        });
        let mut lhs = plain.add(with_y);
        lhs.add_scaled(&eq.terms[1].shift(1, 0), &v.x_weight(fam, n));
        lhs.sub(&eq.target)
    }
}

/// `T_k = [n k]_q A_{n-k} / [n]_q`, target `A_n(qx, y)`.
fn recurrence_equation(fam: &AppellFamily, n: usize) -> Equation {
    let ctx = fam.ctx();
    let inv_n = ctx.q_int(n).recip().expect("[n]_q > 0");
    Equation {
        terms: (0..=n).map(|k| fam.poly(n - k).scale(&(&ctx.binom(n, k) * &inv_n))).collect(),
        target: fam.poly(n).dilate(ctx.q(), &Rational::one()),
    }
}

/// `A_n(qx,y) - RHS_v(n)`.
pub fn recurrence_residual(fam: &AppellFamily, v: &VariantSpec, n: usize) -> Poly2 {
    Sums::new(fam, n, recurrence_equation(fam, n)).residual(v).neg()
}

pub fn check_recurrence(fam: &AppellFamily, v: &VariantSpec) -> CheckResult {
    let max_n = recurrence_order(fam);
    let mut res = CheckResult::new("recurrence", Some(fam.name()), fam.q(), max_n).informational();
    res.variant = Some(*v);
    let statuses = (1..=max_n)
        .map(|n| res.record(Identity::Recurrence, n, None, recurrence_residual(fam, v, n)))
        .collect();
    res.residuals = Some(statuses);
    res
}

/// Evaluates every variant; the result lists all of them in [`VariantSpec::all`] order.
pub fn search_recurrence_variants(fam: &AppellFamily) -> Vec<(VariantSpec, CheckResult)> {
    let max_n = recurrence_order(fam);
    let variants = VariantSpec::all();
    let mut results: Vec<CheckResult> = variants
        .iter()
        .map(|v| {
            let mut res = CheckResult::new("recurrence", Some(fam.name()), fam.q(), max_n).informational();
            res.variant = Some(*v);
            res.residuals = Some(Vec::with_capacity(max_n));
            res
        })
        .collect();
    for n in 1..=max_n {
        let mut sums = Sums::new(fam, n, recurrence_equation(fam, n));
        for (v, res) in variants.iter().zip(results.iter_mut()) {
            let ok = res.record(Identity::Recurrence, n, None, sums.residual(v).neg());
            res.residuals.as_mut().expect("initialized").push(ok);
        }
    }
    variants.into_iter().zip(results).collect()
}

/// The variants whose residuals all vanished.
pub fn passing_variants(results: &[(VariantSpec, CheckResult)]) -> Vec<VariantSpec> {
    results.iter().filter(|(_, r)| r.passed).map(|(v, _)| *v).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    X,
    Y,
}

/// Residual of the partial q-difference equation built from variant `v`.
pub fn qde_residual(fam: &AppellFamily, axis: Axis, v: &VariantSpec, n: usize) -> Poly2 {
    Sums::new(fam, n, qde_equation(fam, axis, n)).residual(v)
}

/// x-axis: `T_k = D_x^k A_n / [k]_q!`.
/// y-axis: `T_k = q^{-k(k-1)/2} (D_y^k A_n)(x, y/q^k) / [k]_q!`.
/// The target is `[n]_q A_n(qx, y)` on both axes.
fn qde_equation(fam: &AppellFamily, axis: Axis, n: usize) -> Equation {
    match axis {
        Axis::X => qde_equation_with(fam, n, |p| p.q_derivative_x(fam.ctx()), |_| None),
        Axis::Y => qde_y_equation(fam, n, |k| -(k as i64)),
    }
}

fn qde_equation_with(
    fam: &AppellFamily,
    n: usize,
    step: impl Fn(&Poly2) -> Poly2,
    y_dilation: impl Fn(usize) -> Option<Rational>,
) -> Equation {
    let ctx = fam.ctx();
    let one = Rational::one();
    let mut terms = Vec::with_capacity(n + 1);
    let mut deriv = fam.poly(n).clone();
    for k in 0..=n {
        if k > 0 {
            deriv = step(&deriv);
        }
        let mut w = ctx.q_factorial(k).recip().expect("[k]_q! > 0");
        let evaluated = match y_dilation(k) {
            Some(b) => {
                w = &w / &ctx.q_gauss_power(k);
                deriv.dilate(&one, &b)
            }
            None => deriv.clone(),
        };
        terms.push(evaluated.scale(&w));
    }
    Equation {
        terms,
        target: fam.poly(n).dilate(ctx.q(), &one).scale(&ctx.q_int(n)),
    }
}

fn qde_y_equation(fam: &AppellFamily, n: usize, e: impl Fn(usize) -> i64) -> Equation {
    let ctx = fam.ctx();
    qde_equation_with(fam, n, |p| p.q_derivative_y(ctx), |k| Some(ctx.q_pow(e(k))))
}

/// y-axis residual where the k-th derivative is evaluated at `y q^{e(k)}`.
///
/// The equation itself uses `e(k) = -k`; other exponents exist for negative
/// controls.
pub fn qde_y_with_dilation(fam: &AppellFamily, v: &VariantSpec, n: usize, e: impl Fn(usize) -> i64) -> Poly2 {
    Sums::new(fam, n, qde_y_equation(fam, n, e)).residual(v)
}

/// Checks one q-difference equation for `1 <= n <= N`.
pub fn check_qde(fam: &AppellFamily, axis: Axis, v: Option<&VariantSpec>) -> Result<CheckResult, Error> {
    let v = v.ok_or(Error::MissingVariant)?;
    let max_n = recurrence_order(fam);
    let (name, identity) = match axis {
        Axis::X => ("qde_x", Identity::QdeX),
        Axis::Y => ("qde_y", Identity::QdeY),
    };
    let mut res = CheckResult::new(name, Some(fam.name()), fam.q(), max_n).informational();
    res.variant = Some(*v);
    let statuses = (1..=max_n)
        .map(|n| res.record(identity, n, None, qde_residual(fam, axis, v, n)))
        .collect();
    res.residuals = Some(statuses);
    Ok(res)
}

/// Hard check: for every variant, each q-difference residual vanishes at
/// exactly the same `n` as the recurrence residual, on both axes.
pub fn check_qde_pairing(fam: &AppellFamily, search: &[(VariantSpec, CheckResult)], max_n: usize) -> CheckResult {
    let max_n = max_n.min(recurrence_order(fam));
    let mut res = CheckResult::new("qde_pairing", Some(fam.name()), fam.q(), max_n);
    let mut mismatches: Vec<String> = Vec::new();
    for axis in [Axis::X, Axis::Y] {
        for n in 1..=max_n {
            let mut sums = Sums::new(fam, n, qde_equation(fam, axis, n));
            for (v, rec) in search {
                let zero = sums.residual(v).is_zero();
                let rec_zero = rec.residuals.as_deref().and_then(|r| r.get(n - 1)).copied();
                if rec_zero != Some(zero) {
                    mismatches.push(format!("{v} axis={axis:?} n={n}"));
                }
            }
        }
    }
    if !mismatches.is_empty() {
        res.passed = false;
        res.note = Some(format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]));
    }
    res
}
