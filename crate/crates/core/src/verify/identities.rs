//! Identities that hold by construction of the generating function.
//!
//! A failure here means the table is wrong (or was tampered with), never
//! that the underlying mathematics is in doubt.

use crate::appell::AppellFamily;
use crate::error::Error;
use crate::polyring::Poly2;
use crate::pseries::{q_exp_big, q_exp_small};
use crate::qcore::QContext;
use crate::rational::Rational;

use super::{CheckResult, Identity};

/// `D_{q,x} A_n - [n]_q A_{n-1}`.
pub fn lowering_x_residual(fam: &AppellFamily, n: usize) -> Poly2 {
    let ctx = fam.ctx();
    fam.poly(n)
        .q_derivative_x(ctx)
        .sub(&fam.poly(n - 1).scale(&ctx.q_int(n)))
}

/// `D_{q,y} A_n(x,y) - [n]_q A_{n-1}(x,qy)`.
pub fn lowering_y_residual(fam: &AppellFamily, n: usize) -> Poly2 {
    let ctx = fam.ctx();
    let shifted = fam.poly(n - 1).dilate(&Rational::one(), ctx.q());
    fam.poly(n).q_derivative_y(ctx).sub(&shifted.scale(&ctx.q_int(n)))
}

pub fn check_lowering(fam: &AppellFamily) -> CheckResult {
    let mut res = CheckResult::new("lowering", Some(fam.name()), fam.q(), fam.order());
    for n in 1..=fam.order() {
        res.record(Identity::LoweringX, n, None, lowering_x_residual(fam, n));
        res.record(Identity::LoweringY, n, None, lowering_y_residual(fam, n));
    }
    res
}

fn repeated(p: &Poly2, k: usize, step: impl Fn(&Poly2) -> Poly2) -> Poly2 {
    let mut out = p.clone();
    for _ in 0..k {
        out = step(&out);
    }
    out
}

fn falling_ratio(ctx: &QContext, n: usize, k: usize) -> Rational {
    &ctx.q_factorial(n - k) / &ctx.q_factorial(n)
}

/// `([n-k]_q!/[n]_q!) D_{q,x}^k A_n - A_{n-k}`.
pub fn kfold_x_residual(fam: &AppellFamily, n: usize, k: usize) -> Poly2 {
    let ctx = fam.ctx();
    repeated(fam.poly(n), k, |p| p.q_derivative_x(ctx))
        .scale(&falling_ratio(ctx, n, k))
        .sub(fam.poly(n - k))
}

/// `([n-k]_q!/[n]_q!) D_{q,y}^k A_n(x,y) - q^{k(k-1)/2} A_{n-k}(x, q^k y)`.
///
/// Each application of `D_{q,y}` to `A_m(x, q^j y)` contributes a factor
/// `q^j`, which accumulates to `q^{k(k-1)/2}`.
pub fn kfold_y_residual(fam: &AppellFamily, n: usize, k: usize) -> Poly2 {
    let ctx = fam.ctx();
    let target = fam
        .poly(n - k)
        .dilate(&Rational::one(), &ctx.q_pow(k as i64))
        .scale(&ctx.q_gauss_power(k));
    repeated(fam.poly(n), k, |p| p.q_derivative_y(ctx))
        .scale(&falling_ratio(ctx, n, k))
        .sub(&target)
}

/// The y-axis k-fold identity without the `q^{k(k-1)/2}` factor:
/// `([n-k]_q!/[n]_q!) D_{q,y}^k A_n(x,y) - A_{n-k}(x, q^k y)`.
pub fn kfold_y_printed_residual(fam: &AppellFamily, n: usize, k: usize) -> Poly2 {
    let ctx = fam.ctx();
    let target = fam.poly(n - k).dilate(&Rational::one(), &ctx.q_pow(k as i64));
    repeated(fam.poly(n), k, |p| p.q_derivative_y(ctx))
        .scale(&falling_ratio(ctx, n, k))
        .sub(&target)
}

/// Informational: the y-axis k-fold identity as printed, without the Gaussian
/// factor. It holds at `q = 1` and for `k = 1` only.
pub fn check_kfold_y_printed(fam: &AppellFamily, kmax: usize) -> CheckResult {
    let mut res = CheckResult::new("kfold_y_printed", Some(fam.name()), fam.q(), fam.order()).informational();
    for n in 1..=fam.order() {
        for k in 1..=kmax.min(n) {
            res.record(Identity::KfoldYPrinted, n, Some(k), kfold_y_printed_residual(fam, n, k));
        }
    }
    res
}

/// Both k-fold operator identities for `1 <= k <= min(n, kmax)`, `n <= N`.
pub fn check_kfold(fam: &AppellFamily, kmax: usize) -> CheckResult {
    let mut res = CheckResult::new("kfold", Some(fam.name()), fam.q(), fam.order());
    let ctx = fam.ctx();
    for n in 1..=fam.order() {
        let kmax = kmax.min(n);
        let mut dx = fam.poly(n).clone();
        let mut dy = fam.poly(n).clone();
        for k in 1..=kmax {
            dx = dx.q_derivative_x(ctx);
            dy = dy.q_derivative_y(ctx);
            let ratio = falling_ratio(ctx, n, k);
            let rx = dx.scale(&ratio).sub(fam.poly(n - k));
            let ry = dy.scale(&ratio).sub(
                &fam.poly(n - k)
                    .dilate(&Rational::one(), &ctx.q_pow(k as i64))
                    .scale(&ctx.q_gauss_power(k)),
            );
            res.record(Identity::KfoldX, n, Some(k), rx);
            res.record(Identity::KfoldY, n, Some(k), ry);
        }
    }
    res
}

/// `A_{n,q} - A_{n,q}(0,0)` as a constant polynomial.
pub fn numbers_residual(fam: &AppellFamily, n: usize) -> Poly2 {
    let at_origin = fam.poly(n).evaluate(&Rational::zero(), &Rational::zero());
    Poly2::constant(&fam.numbers()[n] - &at_origin)
}

pub fn check_numbers(fam: &AppellFamily) -> CheckResult {
    let mut res = CheckResult::new("numbers", Some(fam.name()), fam.q(), fam.order());
    for n in 0..=fam.order() {
        res.record(Identity::Numbers, n, None, numbers_residual(fam, n));
    }
    res
}

/// `A_n(x,0) - sum_k [n k]_q c_k x^{n-k}`, the one-variable q-Appell form.
pub fn slice_residual(fam: &AppellFamily, n: usize) -> Poly2 {
    let ctx = fam.ctx();
    let slice = Poly2::from_terms(
        fam.poly(n)
            .terms()
            .filter(|(m, _)| m.y == 0)
            .map(|(m, c)| (m.x, 0, c.clone())),
    );
    let mut oracle = Poly2::zero();
    for k in 0..=n {
        let c = &ctx.binom(n, k) * &fam.numbers()[k];
        oracle.add_scaled(&Poly2::monomial((n - k) as u32, 0, Rational::one()), &c);
    }
    slice.sub(&oracle)
}

pub fn check_slice(fam: &AppellFamily) -> CheckResult {
    let mut res = CheckResult::new("y0_slice", Some(fam.name()), fam.q(), fam.order());
    for n in 0..=fam.order() {
        res.record(Identity::Slice, n, None, slice_residual(fam, n));
    }
    res
}

fn classical_binomial(n: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::new((n - i) as i64, (i + 1) as i64);
    }
    acc
}

/// At `q = 1`: `A_n(x,y) - sum_k C(n,k) c_k (x+y)^{n-k}`.
pub fn classical_residual(fam: &AppellFamily, n: usize) -> Result<Poly2, Error> {
    if !fam.ctx().is_classical() {
        return Err(Error::Config("classical limit needs q = 1".into()));
    }
    let s = Poly2::x().add(&Poly2::y());
    let mut oracle = Poly2::zero();
    for k in 0..=n {
        let c = &classical_binomial(n, k) * &fam.numbers()[k];
        oracle.add_scaled(&s.pow((n - k) as u32), &c);
    }
    Ok(fam.poly(n).sub(&oracle))
}

pub fn check_classical_limit(fam: &AppellFamily) -> Result<CheckResult, Error> {
    let mut res = CheckResult::new("classical_limit", Some(fam.name()), fam.q(), fam.order());
    for n in 0..=fam.order() {
        res.record(Identity::ClassicalLimit, n, None, classical_residual(fam, n)?);
    }
    Ok(res)
}

/// Coefficient of `t^n` in `e_q(tx) E_q(-tx) - 1`.
pub fn euler_inverse_residual(ctx: &QContext, n: usize) -> Poly2 {
    let prod = q_exp_small(&Poly2::x(), n, ctx).mul(&q_exp_big(&Poly2::x().neg(), n, ctx));
    let c = prod.coeff(n).clone();
    if n == 0 {
        c.sub(&Poly2::one())
    } else {
        c
    }
}

/// `e_q(tx) E_q(-tx) = 1 + O(t^{order+1})`.
pub fn check_euler_inverse(ctx: &QContext, order: usize) -> CheckResult {
    let mut res = CheckResult::new("euler_inverse", None, ctx.q(), order);
    let prod = q_exp_small(&Poly2::x(), order, ctx).mul(&q_exp_big(&Poly2::x().neg(), order, ctx));
    for n in 0..=order {
        let mut c = prod.coeff(n).clone();
        if n == 0 {
            c = c.sub(&Poly2::one());
        }
        res.record(Identity::EulerInverse, n, None, c);
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::FamilyKind;

    fn ctx(p: i64, d: i64) -> QContext {
        QContext::new(Rational::new(p, d)).unwrap()
    }

    #[test]
    fn lowering_holds_and_tamper_is_caught() {
        let c = ctx(2, 3);
        let fam = AppellFamily::named(FamilyKind::Bernoulli, &c, 12).unwrap();
        assert!(check_lowering(&fam).passed);
        let euler = AppellFamily::named(FamilyKind::Euler, &ctx(1, 1), 8).unwrap();
        assert!(check_lowering(&euler).passed);

        let bad = fam.with_poly(3, fam.poly(3).add(&Poly2::monomial(1, 1, Rational::one())));
        let res = check_lowering(&bad);
        assert!(!res.passed);
        let w = res.first_failure.unwrap();
        assert_eq!(w.n, 3);
        assert_eq!(w.identity, Identity::LoweringX);
    }

    #[test]
    fn kfold_with_k_one_matches_lowering() {
        let c = ctx(1, 2);
        let fam = AppellFamily::named(FamilyKind::Genocchi, &c, 10).unwrap();
        assert!(check_kfold(&fam, 1).passed);
        assert!(check_kfold(&fam, 10).passed);
        for n in 1..=10 {
            let scaled = lowering_x_residual(&fam, n).scale(&c.q_int(n).recip().unwrap());
            assert_eq!(kfold_x_residual(&fam, n, 1), scaled);
        }
    }

    #[test]
    fn kfold_y_compares_against_q_squared_dilation() {
        let c = ctx(3, 2);
        let fam = AppellFamily::named(FamilyKind::Euler, &c, 5).unwrap();
        let q2 = c.q_pow(2);
        let d2 = fam.poly(5).q_derivative_y(&c).q_derivative_y(&c);
        let lhs = d2.scale(&falling_ratio(&c, 5, 2));
        assert_eq!(lhs, fam.poly(3).dilate(&Rational::one(), &q2).scale(c.q()));
        assert!(kfold_y_residual(&fam, 5, 2).is_zero());
        assert!(!kfold_y_printed_residual(&fam, 5, 2).is_zero());
        assert!(kfold_y_printed_residual(&fam, 5, 1).is_zero());
    }

    #[test]
    fn printed_y_form_holds_only_classically() {
        let classical = AppellFamily::named(FamilyKind::Euler, &ctx(1, 1), 6).unwrap();
        assert!(check_kfold_y_printed(&classical, 6).passed);
        let q = AppellFamily::named(FamilyKind::Euler, &ctx(1, 2), 6).unwrap();
        let res = check_kfold_y_printed(&q, 6);
        assert!(!res.passed && !res.hard);
        assert_eq!(res.first_failure.unwrap().k, Some(2));
    }

    #[test]
    fn euler_inverse_to_order_sixteen() {
        for (p, d) in [(1, 2), (2, 3), (1, 1), (3, 2), (2, 1)] {
            assert!(check_euler_inverse(&ctx(p, d), 16).passed);
        }
    }

    #[test]
    fn classical_limit_requires_q_one() {
        let fam = AppellFamily::named(FamilyKind::Bernoulli, &ctx(1, 2), 3).unwrap();
        assert!(check_classical_limit(&fam).is_err());
        let classical = AppellFamily::named(FamilyKind::Bernoulli, &ctx(1, 1), 6).unwrap();
        assert!(check_classical_limit(&classical).unwrap().passed);
    }
}
