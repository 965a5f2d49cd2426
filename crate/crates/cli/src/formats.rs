//! Renderers for tables, number sequences and reports.
//!
//! Every rational is written as an exact `p/q` string. Rendering is a pure
//! function of its input, so identical inputs give byte-identical output.

use std::fmt::Write as _;

use qappell_core::verify::{CheckResult, Report};
use qappell_core::{AppellFamily, FamilyKind, Poly2, QContext, Rational, TSeries};
use serde::{Deserialize, Serialize};

/// A family table as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub name: String,
    pub kind: FamilyKind,
    pub q: Rational,
    pub degree: usize,
    /// Determining series `c_0..c_M`, q-exponential normalization.
    pub aq: Vec<Rational>,
    pub polys: Vec<Poly2>,
    pub numbers: Vec<Rational>,
    pub alpha: Vec<Rational>,
    pub beta_no_t: Vec<Rational>,
    pub beta_with_t: Vec<Rational>,
}

impl FamilyRecord {
    pub fn from_family(fam: &AppellFamily) -> Self {
        FamilyRecord {
            name: fam.name().into(),
            kind: fam.kind(),
            q: fam.q().clone(),
            degree: fam.order(),
            aq: fam.aq().to_q_exponential(fam.ctx()),
            polys: fam.polys().to_vec(),
            numbers: fam.numbers().to_vec(),
            alpha: fam.alpha().to_vec(),
            beta_no_t: fam.beta_no_t().to_vec(),
            beta_with_t: fam.beta_with_t().to_vec(),
        }
    }

    /// Reassembles the family exactly as stored; nothing is re-derived
    /// except the numbers, which must agree with `aq`.
    pub fn into_family(self) -> Result<AppellFamily, String> {
        let ctx = QContext::new(self.q).map_err(|e| e.to_string())?;
        if self.polys.len() != self.degree + 1 {
            return Err(format!("degree {} but {} polynomial rows", self.degree, self.polys.len()));
        }
        if self.aq.is_empty() {
            return Err("empty aq".into());
        }
        let aq = TSeries::from_q_exponential(&self.aq, &ctx);
        let fam = AppellFamily::from_parts(
            self.name,
            self.kind,
            ctx,
            aq,
            self.polys,
            self.alpha,
            self.beta_no_t,
            self.beta_with_t,
        )
        .map_err(|e| e.to_string())?;
        if fam.numbers() != self.numbers.as_slice() {
            return Err("numbers do not match aq".into());
        }
        Ok(fam)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumbersRecord {
    pub family: String,
    pub q: Rational,
    pub numbers: Vec<Rational>,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn table_json(fams: &[AppellFamily]) -> String {
    json(&fams.iter().map(FamilyRecord::from_family).collect::<Vec<_>>())
}

pub fn parse_table_json(text: &str) -> Result<Vec<AppellFamily>, String> {
    let records: Vec<FamilyRecord> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    records.into_iter().map(FamilyRecord::into_family).collect()
}

pub fn numbers_json(fams: &[AppellFamily]) -> String {
    let records: Vec<_> = fams
        .iter()
        .map(|f| NumbersRecord {
            family: f.name().into(),
            q: f.q().clone(),
            numbers: f.numbers().to_vec(),
        })
        .collect();
    json(&records)
}

pub fn report_json(report: &Report) -> String {
    json(report)
}

pub fn parse_report_json(text: &str) -> Result<Report, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// One row per nonzero term; a zero polynomial is written as a single
/// `(0, 0, 0)` row so that every index appears.
pub fn table_csv(fams: &[AppellFamily]) -> String {
    let mut rows = Vec::new();
    for f in fams {
        for (n, p) in f.polys().iter().enumerate() {
            let base = [f.name().to_string(), f.q().to_string(), n.to_string()];
            if p.is_zero() {
                rows.push([&base[..], &["0".into(), "0".into(), "0".into()]].concat());
            }
            for (m, c) in p.terms() {
                rows.push([&base[..], &[m.x.to_string(), m.y.to_string(), c.to_string()]].concat());
            }
        }
    }
    csv_string(&["family", "q", "n", "i", "j", "coef"], rows)
}

pub fn numbers_csv(fams: &[AppellFamily]) -> String {
    let rows = fams.iter().flat_map(|f| {
        f.numbers()
            .iter()
            .enumerate()
            .map(move |(n, c)| vec![f.name().to_string(), f.q().to_string(), n.to_string(), c.to_string()])
    });
    csv_string(&["family", "q", "n", "value"], rows)
}

pub fn report_csv(report: &Report) -> String {
    let rows = report.results.iter().map(|r| {
        vec![
            r.name.clone(),
            r.family.clone().unwrap_or_default(),
            r.q.to_string(),
            r.hard.to_string(),
            r.passed.to_string(),
            r.variant.map(|v| v.to_string()).unwrap_or_default(),
            witness_label(r),
        ]
    });
    csv_string(&["name", "family", "q", "hard", "passed", "variant", "first_failure"], rows)
}

fn witness_label(r: &CheckResult) -> String {
    match &r.first_failure {
        None => String::new(),
        Some(w) => {
            let id = serde_json::to_value(w.identity).expect("serializable");
            let id = id.as_str().unwrap_or_default();
            match w.k {
                Some(k) => format!("{id} n={} k={k}", w.n),
                None => format!("{id} n={}", w.n),
            }
        }
    }
}

fn latex_value(r: &Rational) -> String {
    Poly2::constant(r.clone()).to_latex()
}

fn latex_block(out: &mut String, fam: &AppellFamily, head: &str, rows: impl Iterator<Item = String>) {
    let _ = writeln!(out, "% {} q = {}", fam.name(), fam.q());
    out.push_str("\\begin{tabular}{rl}\n\\hline\n");
    let _ = writeln!(out, "$n$ & {head} \\\\");
    out.push_str("\\hline\n");
    for (n, cell) in rows.enumerate() {
        let _ = writeln!(out, "{n} & ${cell}$ \\\\");
    }
    out.push_str("\\hline\n\\end{tabular}\n");
}

/// Standalone `tabular` fragments, one per family and q.
pub fn table_latex(fams: &[AppellFamily]) -> String {
    let mut out = String::new();
    for (i, f) in fams.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        latex_block(&mut out, f, "$A_{n,q}(x,y)$", f.polys().iter().map(Poly2::to_latex));
    }
    out
}

pub fn numbers_latex(fams: &[AppellFamily]) -> String {
    let mut out = String::new();
    for (i, f) in fams.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        latex_block(&mut out, f, "$c_{n,q}$", f.numbers().iter().map(latex_value));
    }
    out
}

fn text_blocks(fams: &[AppellFamily], rows: impl Fn(&AppellFamily) -> Vec<String>) -> String {
    let mut out = String::new();
    for (i, f) in fams.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "# family={} q={}", f.name(), f.q());
        for row in rows(f) {
            out.push_str(&row);
            out.push('\n');
        }
    }
    out
}

/// One polynomial per line under a `# family=.. q=..` header; line `n`
/// after the header is `A_n`.
pub fn table_text(fams: &[AppellFamily]) -> String {
    text_blocks(fams, |f| f.polys().iter().map(ToString::to_string).collect())
}

pub fn numbers_text(fams: &[AppellFamily]) -> String {
    text_blocks(fams, |f| f.numbers().iter().map(ToString::to_string).collect())
}

pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.results {
        let status = match (r.passed, r.hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "MISS",
        };
        let _ = write!(out, "{status} {}", r.name);
        if let Some(f) = &r.family {
            let _ = write!(out, " {f}");
        }
        let _ = write!(out, " q={}", r.q);
        if let Some(v) = &r.variant {
            let _ = write!(out, " [{v}]");
        }
        if r.first_failure.is_some() {
            let _ = write!(out, " first_failure: {}", witness_label(r));
        }
        if let Some(note) = &r.note {
            let _ = write!(out, " ({note})");
        }
        out.push('\n');
    }
    let failures = report.hard_failures().count();
    let _ = writeln!(out, "{} results, {failures} hard failures", report.results.len());
    out
}
