use std::fs;
use std::path::Path;

use qappell_core::verify::{run_suite, run_tables, FamilySpec, Report, Suite, SuiteConfig};
use qappell_core::{AppellFamily, FamilyKind, QContext, Rational};

use crate::args::{Artifact, Cli, Command, Format, Selection, SuiteArgs, SuiteChoice, Toggle};
use crate::error::CliError;
use crate::formats;

/// What a successful invocation prints and how it exits.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Runs one command. `out_dir` is the default output directory (normally
/// taken from the environment).
pub fn execute(cli: &Cli, out_dir: Option<&Path>) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Table(a) => emit(render_table(&build(&a.selection)?, a.format), a.out.as_deref()),
        Command::Numbers(a) => emit(render_numbers(&build(&a.selection)?, a.format), a.out.as_deref()),
        Command::Verify(a) => {
            let report = match &a.table {
                Some(path) => {
                    let fams = formats::parse_table_json(&read(path)?).map_err(|e| CliError::input(path, e))?;
                    run_tables(&fams, &suites(&a.suites), a.suites.variants == Toggle::On)
                }
                None => run_suite(&suite_config(&a.selection, &a.suites)?)?,
            };
            let text = formats::report_json(&report);
            let target = a.out.clone().or_else(|| out_dir.map(|d| d.join("report.json")));
            let mut outcome = emit(text, target.as_deref())?;
            outcome.stderr.push_str(&summary(&report));
            outcome.code = if report.all_hard_passed() { 0 } else { 1 };
            Ok(outcome)
        }
        Command::Export(a) => {
            let text = match a.what {
                Artifact::Table => render_table(&build(&a.selection)?, a.format),
                Artifact::Numbers => render_numbers(&build(&a.selection)?, a.format),
                Artifact::Report => {
                    let report = run_suite(&suite_config(&a.selection, &a.suites)?)?;
                    match a.format {
                        Format::Json => formats::report_json(&report),
                        Format::Csv => formats::report_csv(&report),
                        Format::Text => formats::report_text(&report),
                        Format::Latex => return Err(CliError::Usage("reports have no latex format".into())),
                    }
                }
            };
            let target = a.out.clone().unwrap_or_else(|| {
                out_dir
                    .unwrap_or(Path::new("."))
                    .join(format!("{}.{}", a.what.name(), a.format.extension()))
            });
            write(&target, &text)?;
            Ok(Outcome {
                stdout: format!("{}\n", target.display()),
                ..Outcome::default()
            })
        }
    }
}

fn render_table(fams: &[AppellFamily], format: Format) -> String {
    match format {
        Format::Json => formats::table_json(fams),
        Format::Csv => formats::table_csv(fams),
        Format::Latex => formats::table_latex(fams),
        Format::Text => formats::table_text(fams),
    }
}

fn render_numbers(fams: &[AppellFamily], format: Format) -> String {
    match format {
        Format::Json => formats::numbers_json(fams),
        Format::Csv => formats::numbers_csv(fams),
        Format::Latex => formats::numbers_latex(fams),
        Format::Text => formats::numbers_text(fams),
    }
}

fn emit(text: String, target: Option<&Path>) -> Result<Outcome, CliError> {
    match target {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::default())
        }
        None => Ok(Outcome {
            stdout: text,
            ..Outcome::default()
        }),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn read_aq(path: &Path) -> Result<Vec<Rational>, CliError> {
    let cs: Vec<Rational> = serde_json::from_str(&read(path)?).map_err(|e| CliError::input(path, e))?;
    if cs.is_empty() {
        return Err(CliError::input(path, "no coefficients"));
    }
    Ok(cs)
}

fn family_specs(sel: &Selection) -> Result<Vec<FamilySpec>, CliError> {
    let mut specs: Vec<FamilySpec> = Vec::new();
    let mut push = |spec: FamilySpec| {
        if !specs.contains(&spec) {
            specs.push(spec);
        }
    };
    let mut custom = false;
    for name in &sel.family {
        match name.trim() {
            "all" => FamilyKind::NAMED.into_iter().for_each(|k| push(FamilySpec::Named(k))),
            "custom" => {
                let path = sel
                    .aq
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("--family custom needs --aq <path>".into()))?;
                custom = true;
                push(FamilySpec::Custom {
                    name: "custom".into(),
                    coefficients: read_aq(path)?,
                });
            }
            other => match other.parse::<FamilyKind>() {
                Ok(kind) if kind != FamilyKind::Custom => push(FamilySpec::Named(kind)),
                _ => return Err(CliError::Usage(format!("unknown family `{other}`"))),
            },
        }
    }
    if sel.aq.is_some() && !custom {
        return Err(CliError::Usage("--aq is only used with --family custom".into()));
    }
    Ok(specs)
}

fn contexts(sel: &Selection) -> Result<Vec<QContext>, CliError> {
    sel.qs.iter().map(|q| QContext::new(q.clone()).map_err(CliError::from)).collect()
}

/// Families in selection order, each at every q in order.
fn build(sel: &Selection) -> Result<Vec<AppellFamily>, CliError> {
    let ctxs = contexts(sel)?;
    let mut out = Vec::new();
    for spec in family_specs(sel)? {
        for ctx in &ctxs {
            out.push(spec.build(ctx, sel.degree)?);
        }
    }
    Ok(out)
}

fn suites(a: &SuiteArgs) -> Vec<Suite> {
    match a.suite {
        SuiteChoice::Core => vec![Suite::Core],
        SuiteChoice::Theorems => vec![Suite::Theorems],
        SuiteChoice::All => vec![Suite::Core, Suite::Theorems],
    }
}

fn suite_config(sel: &Selection, a: &SuiteArgs) -> Result<SuiteConfig, CliError> {
    contexts(sel)?;
    Ok(SuiteConfig {
        qs: sel.qs.clone(),
        degree: sel.degree,
        families: family_specs(sel)?,
        suites: suites(a),
        variants: a.variants == Toggle::On,
    })
}

fn summary(report: &Report) -> String {
    let mut out = String::new();
    for r in report.hard_failures() {
        out.push_str(&format!(
            "FAIL {} {} q={}\n",
            r.name,
            r.family.as_deref().unwrap_or("-"),
            r.q
        ));
    }
    let failures = report.hard_failures().count();
    out.push_str(&format!("{} results, {failures} hard failures\n", report.results.len()));
    out
}

