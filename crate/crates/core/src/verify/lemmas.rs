//! Printed closed forms for the alpha/beta sequences of the named families.
//!
//! Each printed formula becomes a [`LemmaRow`]; each cell holds the printed
//! value at one `n` and the computed sequences it equals. A mismatch is a
//! finding about the formula, so lemma checks never fail on content.

use alloc::string::String;
use alloc::vec::Vec;

use crate::appell::{AppellFamily, FamilyKind};
use crate::rational::Rational;

use super::CheckResult;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaCell {
    pub n: usize,
    pub printed: Rational,
    /// Subset of `alpha`, `beta_no_t`, `beta_with_t`.
    pub matches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaRow {
    pub formula: String,
    pub cells: Vec<LemmaCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaMatrix {
    pub rows: Vec<LemmaRow>,
}

impl LemmaMatrix {
    /// `(formula, n, matches)` triples; comparing patterns across q ignores
    /// the printed values themselves.
    pub fn pattern(&self) -> Vec<(String, usize, Vec<String>)> {
        self.rows
            .iter()
            .flat_map(|row| {
                row.cells
                    .iter()
                    .map(move |c| (row.formula.clone(), c.n, c.matches.clone()))
            })
            .collect()
    }
}

#[derive(Clone, Copy)]
enum Target {
    Alpha,
    Beta,
}

struct Printed {
    formula: &'static str,
    target: Target,
    range: core::ops::RangeInclusive<usize>,
    value: fn(&AppellFamily, usize) -> Rational,
}

/// `sum_{k=0}^{n} [n k]_q c_k`
fn binomial_sum(fam: &AppellFamily, n: usize) -> Rational {
    let ctx = fam.ctx();
    let mut acc = Rational::zero();
    for k in 0..=n {
        acc += &(&ctx.binom(n, k) * &fam.numbers()[k]);
    }
    acc
}

fn q(fam: &AppellFamily) -> Rational {
    fam.q().clone()
}

fn printed_forms(kind: FamilyKind, m: usize) -> Vec<Printed> {
    match kind {
        FamilyKind::Bernoulli => alloc::vec![
            Printed {
                formula: "alpha_n = -b_n/q",
                target: Target::Alpha,
                range: 0..=m,
                value: |f, n| -(&f.numbers()[n] / f.q()),
            },
            Printed {
                formula: "alpha_1 = -1/[2]_q",
                target: Target::Alpha,
                range: 1..=1,
                value: |f, _| -f.ctx().q_int(2).recip().unwrap(),
            },
            Printed {
                formula: "beta_n = (q-1)/q sum_k [n k]_q b_k",
                target: Target::Beta,
                range: 1..=m,
                value: |f, n| (q(f) - Rational::one()) / q(f) * binomial_sum(f, n),
            },
            Printed {
                formula: "beta_0 = 1",
                target: Target::Beta,
                range: 0..=0,
                value: |_, _| Rational::one(),
            },
        ],
        FamilyKind::Euler => alloc::vec![
            Printed {
                formula: "alpha_n = E_{n-1}/2",
                target: Target::Alpha,
                range: 1..=m,
                value: |f, n| &f.numbers()[n - 1] * &Rational::new(1, 2),
            },
            Printed {
                formula: "alpha_1 = -1/2",
                target: Target::Alpha,
                range: 1..=1,
                value: |_, _| Rational::new(-1, 2),
            },
            Printed {
                formula: "beta_n = (q-1)/2 sum_k [n k]_q E_k",
                target: Target::Beta,
                range: 1..=m,
                value: |f, n| (q(f) - Rational::one()) * Rational::new(1, 2) * binomial_sum(f, n),
            },
            Printed {
                formula: "beta_0 = (q+1)/2",
                target: Target::Beta,
                range: 0..=0,
                value: |f, _| (q(f) + Rational::one()) * Rational::new(1, 2),
            },
        ],
        FamilyKind::Genocchi => alloc::vec![
            Printed {
                formula: "alpha_n = G_n/(2q)",
                target: Target::Alpha,
                range: 2..=m,
                value: |f, n| &f.numbers()[n] / &(q(f) * Rational::from(2)),
            },
            Printed {
                formula: "alpha_0 = 1/q",
                target: Target::Alpha,
                range: 0..=0,
                value: |f, _| f.q().recip().unwrap(),
            },
            Printed {
                formula: "alpha_1 = -1/q",
                target: Target::Alpha,
                range: 1..=1,
                value: |f, _| -f.q().recip().unwrap(),
            },
            Printed {
                formula: "beta_n = (q-1)/(2q) sum_k [n k]_q G_k",
                target: Target::Beta,
                range: 1..=m,
                value: |f, n| (q(f) - Rational::one()) * Rational::new(1, 2) / q(f) * binomial_sum(f, n),
            },
            Printed {
                formula: "beta_0 = 1/q",
                target: Target::Beta,
                range: 0..=0,
                value: |f, _| f.q().recip().unwrap(),
            },
        ],
        FamilyKind::Custom => Vec::new(),
    }
}

/// The match matrix for a named family; `None` for custom families.
pub fn lemma_matrix(fam: &AppellFamily) -> Option<LemmaMatrix> {
    let m = fam.aux_order().min(fam.order());
    let forms = printed_forms(fam.kind(), m);
    if forms.is_empty() {
        return None;
    }
    let rows = forms
        .into_iter()
        .map(|p| {
            let cells = p
                .range
                .clone()
                .filter(|&n| n <= m)
                .map(|n| {
                    let printed = (p.value)(fam, n);
                    let candidates: &[(&str, &[Rational])] = match p.target {
                        Target::Alpha => &[("alpha", fam.alpha())],
                        Target::Beta => &[("beta_no_t", fam.beta_no_t()), ("beta_with_t", fam.beta_with_t())],
                    };
                    let matches = candidates
                        .iter()
                        .filter(|(_, seq)| seq[n] == printed)
                        .map(|(name, _)| String::from(*name))
                        .collect();
                    LemmaCell { n, printed, matches }
                })
                .collect();
            LemmaRow {
                formula: p.formula.into(),
                cells,
            }
        })
        .collect();
    Some(LemmaMatrix { rows })
}

/// Informational: passes when every printed formula produced at least one cell.
pub fn check_family_lemmas(fam: &AppellFamily) -> CheckResult {
    let mut res = CheckResult::new("lemmas", Some(fam.name()), fam.q(), fam.aux_order()).informational();
    match lemma_matrix(fam) {
        Some(matrix) => {
            res.passed = matrix.rows.iter().all(|r| !r.cells.is_empty());
            res.matrix = Some(matrix);
        }
        None => {
            res.passed = false;
            res.note = Some("no printed closed forms for this family".into());
        }
    }
    res
}
