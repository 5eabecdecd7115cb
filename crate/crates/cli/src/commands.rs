use std::path::Path;

use ncg_core::actions::{fermionic_kernel, identification, match_template, ActionError, Subspace, Template};
use ncg_core::fluctuations::{check_transparency, one_form_space, selfadjoint_family, Adjointness, FluctuationError};
use ncg_core::linalg::Mat;
use ncg_core::models::{build_with, check_suite, descriptor, field_directions, restrict, Model, ModelError, CATALOG};
use ncg_core::scalars::{Kind, Scalar, ScalarError, Symbol};
use ncg_core::twists::{minimal_twist, spinor_flip, twist_by_grading, TwistError};
use thiserror::Error;

use crate::report::{entries, ActionBody, Body, CheckBody, CheckLine, Direction, ExpectedStatus, FluctuateBody, ModelEntry, Report};

/// Every variant is an input problem and exits with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path} is not a JSON array of rows of scalars: {reason}")]
    TwistFile { path: String, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Fluctuation(#[from] FluctuationError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub fn list_models() -> Report {
    let models = CATALOG
        .iter()
        .map(|d| ModelEntry {
            name: d.name,
            summary: d.summary,
            twisted: d.twisted,
            blocks: d.blocks.to_vec(),
            expected: d.expected.iter().map(|&(check, status)| ExpectedStatus { check, status }).collect(),
        })
        .collect();
    Report::new("list-models", Body::Models { models })
}

fn load(name: &str, generations: usize, part: &str) -> Result<(Model, Model), CliError> {
    let model = build_with(name, generations)?;
    let restricted = restrict(&model, part)?;
    Ok((model, restricted))
}

/// `Γ̃` from a JSON file holding rows of scalar strings.
fn read_twisting(path: &Path) -> Result<Mat, CliError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: display.clone(), source })?;
    let bad = |reason: String| CliError::TwistFile { path: display.clone(), reason };
    let rows: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| Scalar::parse(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| bad(e.to_string()))?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(bad("matrix is not square".into()));
    }
    Ok(Mat::from_rows(rows))
}

fn apply_twist(model: Model, twist: &str) -> Result<Model, CliError> {
    let Model::Real(t) = model else {
        return Err(CliError::Usage(format!("model {} is already twisted", model.name())));
    };
    let r = spinor_flip(t.dim());
    let mut tw = if twist == "grading" { twist_by_grading(&t, &r)? } else { minimal_twist(&t, &read_twisting(Path::new(twist))?, &r)? };
    tw.base.name = format!("{}+twist", t.name);
    Ok(Model::Twisted(tw))
}

pub fn check(name: &str, twist: Option<&str>, part: &str, generations: usize) -> Result<Report, CliError> {
    let desc = descriptor(name)?;
    let (_, mut model) = load(name, generations, part)?;
    if let Some(tw) = twist {
        model = apply_twist(model, tw)?;
    }
    let (report, extra) = check_suite(&model)?;
    let checks =
        report.checks.iter().chain(&extra).map(|c| CheckLine { check: c.clone(), expected: desc.expected_status(&c.name) }).collect();
    let body = CheckBody {
        model: name.into(),
        generations,
        twist: twist.map(str::to_string),
        part: part.into(),
        dim: report.dim,
        ko_dimension: report.ko_dimension,
        signs: report.signs,
        checks,
    };
    Ok(Report::new("check", Body::Check(body)))
}

pub fn fluctuate(name: &str, product: Adjointness, part: &str, generations: usize) -> Result<Report, CliError> {
    let (model, restricted) = load(name, generations, part)?;
    let d = &restricted.base().dirac;
    let space = one_form_space(&model, d)?;
    let transparent = check_transparency(&model, d)?;
    let mut family = selfadjoint_family(&model, d, product)?;
    if let (false, Some(named)) = (family.is_empty(), field_directions(name)) {
        // Named directions only cover the full family; a part keeps x{k}.
        if let Ok(f) = family.renamed(&named) {
            family = f;
        }
    }
    let directions = family.params.iter().zip(&family.directions).map(|(p, m)| Direction { param: *p, entries: entries(m) }).collect();
    let body = FluctuateBody {
        model: name.into(),
        generations,
        product,
        part: part.into(),
        one_form_dim: space.dim(),
        transparent,
        params: family.params.clone(),
        directions,
    };
    Ok(Report::new("fluctuate", Body::Fluctuate(body)))
}

/// Whether the kernel is expected to reproduce the template.
fn expected_match(model: &str) -> bool {
    model != "manifold-twist"
}

fn planewave_scalar(src: &str) -> Result<Scalar, CliError> {
    let ident = src.chars().next().is_some_and(char::is_alphabetic) && src.chars().all(char::is_alphanumeric);
    if ident && src != "i" {
        Ok(Scalar::from(Symbol::field(src, Kind::Real)?))
    } else {
        Ok(Scalar::parse(src)?)
    }
}

pub fn action(name: &str, template: Template, planewave: &str) -> Result<Report, CliError> {
    descriptor(name)?;
    let model = build_with(name, 1)?;
    let id = identification(name, template)?;
    let mut family = selfadjoint_family(&model, &model.base().dirac, Adjointness::Standard)?;
    if let Some(named) = field_directions(name) {
        family = family.renamed(&named)?;
    }
    let k = fermionic_kernel(&model, &family.operator(), Subspace::Hr)?;
    let f0 = planewave_scalar(planewave)?;
    let m = match_template(&k, template, &id, &f0)?;
    let body = ActionBody {
        model: name.into(),
        template: template.name(),
        planewave: f0,
        subspace: k.subspace,
        identification: id.description.clone(),
        prefactor: id.prefactor.clone(),
        bindings: id.bindings.clone(),
        antisymmetric: k.is_antisymmetric(),
        matched: m.matched,
        expected_match: expected_match(name),
        kernel: k.kernel,
        residual: m.residual,
    };
    Ok(Report::new("action", Body::Action(body)))
}
