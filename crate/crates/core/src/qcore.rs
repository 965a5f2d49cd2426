//! q-integers, q-factorials, q-binomials and the Gaussian power `q^{n(n-1)/2}`.
//!
//! All of them hang off a [`QContext`], which validates `q > 0` once and
//! memoizes tables on demand. The memo is behind a spin lock so a context can
//! be shared between threads; results never depend on what is cached.

use alloc::vec::Vec;

use spin::Mutex;

use crate::error::Error;
use crate::rational::Rational;

#[derive(Default)]
struct Memo {
    /// `ints[n] = [n]_q`
    ints: Vec<Rational>,
    /// `facts[n] = [n]_q!`
    facts: Vec<Rational>,
}

impl Memo {
    fn grow(&mut self, q: &Rational, n: usize) {
        if self.ints.is_empty() {
            self.ints.push(Rational::zero());
            self.facts.push(Rational::one());
        }
        while self.ints.len() <= n {
            let m = self.ints.len();
            // [m]_q = 1 + q [m-1]_q
            let next = Rational::one() + q * &self.ints[m - 1];
            let fact = &self.facts[m - 1] * &next;
            self.ints.push(next);
            self.facts.push(fact);
        }
    }
}

/// A validated base `q > 0` with memoized q-combinatorial tables.
pub struct QContext {
    q: Rational,
    memo: Mutex<Memo>,
}

impl QContext {
    pub fn new(q: Rational) -> Result<Self, Error> {
        if !q.is_positive() {
            return Err(Error::InvalidQ(q));
        }
        Ok(QContext {
            q,
            memo: Mutex::new(Memo::default()),
        })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_classical(&self) -> bool {
        self.q.is_one()
    }

    /// `q^e` for any integer exponent.
    pub fn q_pow(&self, e: i64) -> Rational {
        self.q.pow(e)
    }

    /// `[n]_q = 1 + q + ... + q^{n-1}`.
    pub fn q_int(&self, n: usize) -> Rational {
        let mut memo = self.memo.lock();
        memo.grow(&self.q, n);
        memo.ints[n].clone()
    }

    /// `[n]_q! = [1]_q [2]_q ... [n]_q`.
    pub fn q_factorial(&self, n: usize) -> Rational {
        let mut memo = self.memo.lock();
        memo.grow(&self.q, n);
        memo.facts[n].clone()
    }

    /// Gaussian binomial `[n k]_q`, a domain error unless `k <= n`.
    pub fn q_binomial(&self, n: usize, k: usize) -> Result<Rational, Error> {
        if k > n {
            return Err(Error::BinomialRange { n, k });
        }
        let mut memo = self.memo.lock();
        memo.grow(&self.q, n);
        Ok(&memo.facts[n] / &(&memo.facts[k] * &memo.facts[n - k]))
    }

    /// Same as [`QContext::q_binomial`] for callers that already know `k <= n`.
    pub(crate) fn binom(&self, n: usize, k: usize) -> Rational {
        self.q_binomial(n, k).expect("q-binomial index in range")
    }

    /// `q^{n(n-1)/2}`, the weight in the big q-exponential `E_q`.
    pub fn q_gauss_power(&self, n: usize) -> Rational {
        let e = (n as i64) * (n as i64 - 1) / 2;
        self.q.pow(e)
    }
}

impl Clone for QContext {
    fn clone(&self) -> Self {
        QContext {
            q: self.q.clone(),
            memo: Mutex::new(Memo::default()),
        }
    }
}

impl PartialEq for QContext {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for QContext {}

impl core::fmt::Debug for QContext {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("QContext").field("q", &self.q).finish()
    }
}
