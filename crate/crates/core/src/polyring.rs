//! Sparse bivariate polynomials in `x`, `y` over [`Rational`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic. Public iteration and serialization run leading term first
//! (highest total degree, then highest power of `x`).

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use crate::qcore::QContext;
use crate::rational::Rational;

/// The exponent pair of `x^i y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `x` and `y` with exact rational coefficients; never stores zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly2::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Poly2::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Poly2::monomial(0, 1, Rational::one())
    }

    /// `c x^i y^j`.
    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(i, j), c);
        }
        Poly2 { terms }
    }

    /// Builds from arbitrary `(i, j, c)` triples, merging repeats and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut p = Poly2::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms, leading (graded-lex largest) first.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().rev().map(|(m, c)| (*m, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// `self += c * other`, the inner loop of every recurrence assembly.
    pub fn add_scaled(&mut self, other: &Poly2, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(*m, &(v * c));
        }
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x + i, m.y + j), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `D_{q,x}`: `x^i y^j -> [i]_q x^{i-1} y^j`.
    pub fn q_derivative_x(&self, ctx: &QContext) -> Poly2 {
        Poly2::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (m.x - 1, m.y, c * &ctx.q_int(m.x as usize))),
        )
    }

    /// `D_{q,y}`: `x^i y^j -> [j]_q x^i y^{j-1}`.
    pub fn q_derivative_y(&self, ctx: &QContext) -> Poly2 {
        Poly2::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (m.x, m.y - 1, c * &ctx.q_int(m.y as usize))),
        )
    }

    /// Substitutes `x -> a x`, `y -> b y`.
    pub fn dilate(&self, a: &Rational, b: &Rational) -> Poly2 {
        Poly2::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.x, m.y, c * &a.pow(m.x as i64) * b.pow(m.y as i64))),
        )
    }

    pub fn evaluate(&self, x0: &Rational, y0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += &(c * &x0.pow(m.x as i64) * y0.pow(m.y as i64));
        }
        acc
    }

    /// LaTeX rendering, e.g. `x^{2} + 2xy - \frac{1}{6}`.
    pub fn to_latex(&self) -> String {
        render(self, Style::Latex)
    }
}

#[derive(Clone, Copy)]
enum Style {
    Text,
    Latex,
}

fn render(p: &Poly2, style: Style) -> String {
    use core::fmt::Write;
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut vars = String::new();
        for (name, e) in [("x", m.x), ("y", m.y)] {
            match (e, style) {
                (0, _) => {}
                (1, Style::Text) => {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(name);
                }
                (e, Style::Text) => {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    let _ = write!(vars, "{name}^{e}");
                }
                (1, Style::Latex) => vars.push_str(name),
                (e, Style::Latex) => {
                    let _ = write!(vars, "{name}^{{{e}}}");
                }
            }
        }
        let coef = match style {
            Style::Text => alloc::format!("{mag}"),
            Style::Latex if mag.is_integer() => alloc::format!("{mag}"),
            Style::Latex => alloc::format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()),
        };
        match (mag.is_one(), vars.is_empty(), style) {
            (_, true, _) => out.push_str(&coef),
            (true, false, _) => out.push_str(&vars),
            (false, false, Style::Text) => {
                let _ = write!(out, "{coef}*{vars}");
            }
            (false, false, Style::Latex) => {
                let _ = write!(out, "{coef}{vars}");
            }
        }
    }
    out
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, Style::Text))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Poly2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (m, c) in self.terms() {
            seq.serialize_element(&(m.x, m.y, c))?;
        }
        seq.end()
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Poly2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples: alloc::vec::Vec<(u32, u32, Rational)> = serde::Deserialize::deserialize(d)?;
        Ok(Poly2::from_terms(triples))
    }
}
