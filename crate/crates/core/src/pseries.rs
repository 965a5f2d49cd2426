//! Truncated power series in `t` over [`Rational`] or [`Poly2`].
//!
//! A [`TSeries`] of order `N` stores `a_0..=a_N` and stands for
//! `sum a_n t^n + O(t^{N+1})`. Binary operations truncate to the smaller
//! operand order. Coefficients are stored plain; the q-exponential
//! normalization `c_n = a_n [n]_q!` is applied only through
//! [`TSeries::from_q_exponential`] and [`TSeries::to_q_exponential`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::polyring::Poly2;
use crate::qcore::QContext;
use crate::rational::Rational;

/// The coefficient rings a [`TSeries`] can be built over.
pub trait Coefficient: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
}

impl Coefficient for Poly2 {
    fn zero() -> Self {
        Poly2::zero()
    }
    fn one() -> Self {
        Poly2::one()
    }
    fn is_zero(&self) -> bool {
        Poly2::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Poly2::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly2::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly2::mul(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        Poly2::scale(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        Poly2::constant(c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> TSeries<R> {
    /// Series with the given coefficients; its order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least a_0");
        TSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TSeries {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c t^k`, truncated at `order`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    /// Drops coefficients above `order` (no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        TSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Index of the first nonzero coefficient, `None` when all are zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = R::zero();
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        TSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies by `t^k`; the order grows by `k` since the product is known
    /// that far.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TSeries { coeffs }
    }

    /// Divides by `t^k`, requiring `a_0..a_{k-1}` to vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self, Error> {
        if k > self.order() {
            return Err(Error::OrderExhausted);
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(TSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `D_{q,t}`: `a_n t^n -> [n]_q a_n t^{n-1}`; the order drops by one.
    pub fn q_derivative_t(&self, ctx: &QContext) -> Result<Self, Error> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted);
        }
        Ok(TSeries {
            coeffs: (1..=self.order())
                .map(|n| self.coeffs[n].scale(&ctx.q_int(n)))
                .collect(),
        })
    }

    /// Substitutes `t -> a t`.
    pub fn dilate_t(&self, a: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c.scale(&power);
                power *= a;
                out
            })
            .collect();
        TSeries { coeffs }
    }

    /// Maps each coefficient through `f`.
    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> TSeries<S> {
        TSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TSeries<Rational> {
    /// Plain coefficients from `c_0..c_N` given as `sum c_n t^n / [n]_q!`.
    pub fn from_q_exponential(cs: &[Rational], ctx: &QContext) -> Self {
        assert!(!cs.is_empty(), "a truncated series needs at least c_0");
        TSeries {
            coeffs: cs
                .iter()
                .enumerate()
                .map(|(n, c)| c / &ctx.q_factorial(n))
                .collect(),
        }
    }

    /// `c_n = a_n [n]_q!`.
    pub fn to_q_exponential(&self, ctx: &QContext) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a * &ctx.q_factorial(n))
            .collect()
    }

    /// Multiplicative inverse to the same order.
    pub fn reciprocal(&self) -> Result<Self, Error> {
        let inv0 = self.coeffs[0].recip().ok_or(Error::NonInvertible)?;
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            // a_0 b_k = -(a_1 b_{k-1} + ... + a_k b_0)
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &(&self.coeffs[i] * &out[k - i]);
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(TSeries { coeffs: out })
    }

    /// `self / divisor`, cancelling a common power of `t`.
    ///
    /// If the divisor has valuation `v`, the numerator must vanish below `t^v`
    /// and the quotient is known to order `min(orders) - v`.
    pub fn divide(&self, divisor: &Self) -> Result<Self, Error> {
        let n = self.order().min(divisor.order());
        let v = divisor.truncate(n).valuation().ok_or(Error::NonInvertible)?;
        let num = self.truncate(n).shift_down(v)?;
        let den = divisor.truncate(n).shift_down(v)?;
        Ok(num.mul(&den.reciprocal()?))
    }

    /// Reinterprets the coefficients as constant polynomials.
    pub fn lift(&self) -> TSeries<Poly2> {
        self.map(|c| Poly2::constant(c.clone()))
    }
}

/// `e_q(t * arg) = sum arg^n t^n / [n]_q!`, to order `order`.
pub fn q_exp_small<R: Coefficient>(arg: &R, order: usize, ctx: &QContext) -> TSeries<R> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = R::one();
    for n in 0..=order {
        if n > 0 {
            power = power.mul(arg);
        }
        coeffs.push(power.scale(&ctx.q_factorial(n).recip().expect("[n]_q! > 0")));
    }
    TSeries { coeffs }
}

/// `E_q(t * arg) = sum q^{n(n-1)/2} arg^n t^n / [n]_q!`, to order `order`.
pub fn q_exp_big<R: Coefficient>(arg: &R, order: usize, ctx: &QContext) -> TSeries<R> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = R::one();
    for n in 0..=order {
        if n > 0 {
            power = power.mul(arg);
        }
        let w = &ctx.q_gauss_power(n) / &ctx.q_factorial(n);
        coeffs.push(power.scale(&w));
    }
    TSeries { coeffs }
}
