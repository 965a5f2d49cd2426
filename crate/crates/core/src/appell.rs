//! 2D q-Appell families generated by `A_q(t) e_q(tx) E_q(ty)`.
//!
//! An [`AppellFamily`] carries the polynomial table `A_{n,q}(x,y)`, the
//! number sequence `A_{n,q}(0,0)`, and the auxiliary sequences
//!
//! ```text
//! alpha:        t D_{q,t}A_q(t) / A_q(qt) = sum alpha_n t^n/[n]_q!
//! beta_no_t:    A_q(t) / A_q(qt)          = sum beta_n  t^n/[n]_q!
//! beta_with_t:  t A_q(t) / A_q(qt)        = sum beta_n  t^n/[n]_q!
//! ```
//!
//! all in q-exponential normalization.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::polyring::Poly2;
use crate::pseries::{q_exp_big, q_exp_small, TSeries};
use crate::qcore::QContext;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum FamilyKind {
    Custom,
    /// `t / (e_q(t) - 1)`
    Bernoulli,
    /// `2 / (e_q(t) + 1)`
    Euler,
    /// `2t / (e_q(t) + 1)`
    Genocchi,
}

impl FamilyKind {
    pub const NAMED: [FamilyKind; 3] = [FamilyKind::Bernoulli, FamilyKind::Euler, FamilyKind::Genocchi];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Custom => "custom",
            FamilyKind::Bernoulli => "bernoulli",
            FamilyKind::Euler => "euler",
            FamilyKind::Genocchi => "genocchi",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "custom" => Ok(FamilyKind::Custom),
            "bernoulli" => Ok(FamilyKind::Bernoulli),
            "euler" => Ok(FamilyKind::Euler),
            "genocchi" => Ok(FamilyKind::Genocchi),
            other => Err(Error::Config(alloc::format!("unknown family {other:?}"))),
        }
    }
}

/// The determining series `A_q(t)` of a named family, plain coefficients to `order`.
pub fn family_aq(kind: FamilyKind, ctx: &QContext, order: usize) -> Result<TSeries<Rational>, Error> {
    match kind {
        FamilyKind::Custom => Err(Error::CustomNeedsSeries),
        FamilyKind::Bernoulli => {
            // t/(e_q(t)-1) is the reciprocal of (e_q(t)-1)/t = 1 + t/[2]_q! + ...
            let e = q_exp_small(&Rational::one(), order + 1, ctx);
            let quotient = e.sub(&TSeries::one(order + 1)).shift_down(1)?;
            quotient.reciprocal()
        }
        FamilyKind::Euler => {
            let e = q_exp_small(&Rational::one(), order, ctx);
            let denom = e.add(&TSeries::one(order));
            Ok(denom.reciprocal()?.scale(&Rational::from(2)))
        }
        FamilyKind::Genocchi => {
            if order == 0 {
                return Ok(TSeries::zero(0));
            }
            Ok(family_aq(FamilyKind::Euler, ctx, order - 1)?.shift_up(1))
        }
    }
}

/// A built 2D q-Appell family, immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct AppellFamily {
    name: String,
    kind: FamilyKind,
    ctx: QContext,
    order: usize,
    aq: TSeries<Rational>,
    polys: Vec<Poly2>,
    numbers: Vec<Rational>,
    alpha: Vec<Rational>,
    beta_no_t: Vec<Rational>,
    beta_with_t: Vec<Rational>,
}

/// Builds the table of a custom family from its determining series.
///
/// `aq` must reach order `order` and must not vanish identically. A zero
/// constant term is accepted (the Genocchi series has one); the auxiliary
/// sequences then cancel the common power of `t` and are known to index
/// `aq.order() - valuation`.
pub fn build_family(aq: TSeries<Rational>, ctx: &QContext, order: usize, name: &str) -> Result<AppellFamily, Error> {
    AppellFamily::build(aq, ctx, order, name.into(), FamilyKind::Custom)
}

impl AppellFamily {
    /// Builds a named family. The determining series is expanded one order
    /// further than the table so that the auxiliary sequences reach index
    /// `order` even when `A_q(0) = 0`.
    pub fn named(kind: FamilyKind, ctx: &QContext, order: usize) -> Result<Self, Error> {
        let aq = family_aq(kind, ctx, order + 1)?;
        Self::build(aq, ctx, order, kind.name().into(), kind)
    }

    /// Builds a custom family from `c_0..c_M` in q-exponential normalization.
    pub fn custom(name: &str, cs: &[Rational], ctx: &QContext, order: usize) -> Result<Self, Error> {
        if cs.is_empty() {
            return Err(Error::SeriesTooShort { have: 0, need: order });
        }
        build_family(TSeries::from_q_exponential(cs, ctx), ctx, order, name)
    }

    fn build(aq: TSeries<Rational>, ctx: &QContext, order: usize, name: String, kind: FamilyKind) -> Result<Self, Error> {
        if aq.order() < order {
            return Err(Error::SeriesTooShort { have: aq.order(), need: order });
        }
        let valuation = aq.valuation().ok_or(Error::ZeroSeries(aq.order()))?;

        let kernel = q_exp_small(&Poly2::x(), order, ctx).mul(&q_exp_big(&Poly2::y(), order, ctx));
        let generating = aq.truncate(order).lift().mul(&kernel);
        let polys: Vec<Poly2> = (0..=order)
            .map(|n| generating.coeff(n).scale(&ctx.q_factorial(n)))
            .collect();
        let numbers = aq.truncate(order).to_q_exponential(ctx);

        let known = order.min(aq.order() - valuation);
        let dilated = aq.dilate_t(ctx.q());
        let ratio = aq.divide(&dilated)?.truncate(known);
        let alpha_series = if aq.order() == 0 {
            TSeries::zero(0)
        } else {
            aq.q_derivative_t(ctx)?.shift_up(1).divide(&dilated)?.truncate(known)
        };
        let alpha = alpha_series.to_q_exponential(ctx);
        let beta_no_t = ratio.to_q_exponential(ctx);
        let beta_with_t = ratio.shift_up(1).truncate(known).to_q_exponential(ctx);

        Ok(AppellFamily {
            name,
            kind,
            ctx: ctx.clone(),
            order,
            aq,
            polys,
            numbers,
            alpha,
            beta_no_t,
            beta_with_t,
        })
    }

    /// Reassembles a family from stored parts without re-deriving anything.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: String,
        kind: FamilyKind,
        ctx: QContext,
        aq: TSeries<Rational>,
        polys: Vec<Poly2>,
        alpha: Vec<Rational>,
        beta_no_t: Vec<Rational>,
        beta_with_t: Vec<Rational>,
    ) -> Result<Self, Error> {
        if polys.is_empty() {
            return Err(Error::Config("family table has no rows".into()));
        }
        let order = polys.len() - 1;
        if aq.order() < order {
            return Err(Error::SeriesTooShort { have: aq.order(), need: order });
        }
        if alpha.is_empty() || beta_no_t.len() != alpha.len() || beta_with_t.len() != alpha.len() || alpha.len() > order + 1 {
            return Err(Error::Config("auxiliary sequences have inconsistent lengths".into()));
        }
        let numbers = aq.truncate(order).to_q_exponential(&ctx);
        Ok(AppellFamily {
            name,
            kind,
            ctx,
            order,
            aq,
            polys,
            numbers,
            alpha,
            beta_no_t,
            beta_with_t,
        })
    }

    /// Copy with row `n` of the table replaced; used for negative controls.
    pub fn with_poly(&self, n: usize, p: Poly2) -> Self {
        let mut out = self.clone();
        out.polys[n] = p;
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn q(&self) -> &Rational {
        self.ctx.q()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn aq(&self) -> &TSeries<Rational> {
        &self.aq
    }

    pub fn polys(&self) -> &[Poly2] {
        &self.polys
    }

    pub fn poly(&self, n: usize) -> &Poly2 {
        &self.polys[n]
    }

    /// `A_{n,q} = c_n`, the q-exponential coefficients of `A_q(t)`.
    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }

    /// `alpha_0..alpha_M`.
    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta_no_t(&self) -> &[Rational] {
        &self.beta_no_t
    }

    pub fn beta_with_t(&self) -> &[Rational] {
        &self.beta_with_t
    }

    /// Largest index at which the auxiliary sequences are known.
    pub fn aux_order(&self) -> usize {
        self.alpha.len() - 1
    }
}

/// The number sequence `c_0..c_N` of a family.
pub fn q_numbers(fam: &AppellFamily) -> &[Rational] {
    fam.numbers()
}

pub fn alpha_sequence(fam: &AppellFamily) -> &[Rational] {
    fam.alpha()
}

/// Both normalizations of the beta sequence, `(no_t, with_t)`.
pub fn beta_sequences(fam: &AppellFamily) -> (&[Rational], &[Rational]) {
    (fam.beta_no_t(), fam.beta_with_t())
}
