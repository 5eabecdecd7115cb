use super::{Model, ModelError};
use crate::linalg::ConstraintSet;
use crate::triples::{check_first_order_part, check_order_zero, validate_triple, Check, Status, ValidationReport};
use crate::twists::{check_twisted_first_order_part, check_twisted_order_zero, validate_twisted};

fn status_of(c: &ConstraintSet) -> Status {
    if c.is_infeasible() {
        Status::Fail
    } else {
        Status::Constrained
    }
}

fn condition(name: &str, c: ConstraintSet) -> Check {
    let failing = status_of(&c);
    Check::from_constraints(name, c, failing)
}

/// Restricts the Dirac operator of a model to one named part (`"all"` keeps it whole).
pub fn restrict(model: &Model, part: &str) -> Result<Model, ModelError> {
    if part == "all" {
        return Ok(model.clone());
    }
    let p = model.base().part(part)?.clone();
    let parts = vec![(part.to_string(), p)];
    Ok(match model {
        Model::Real(t) => Model::Real(t.with_parts(parts)),
        Model::Twisted(t) => Model::Twisted(t.with_parts(parts)),
    })
}

/// Validation, order zero and first order for every part of the Dirac
/// operator and for the whole of it, twisted where the model is. The checks
/// run on separate threads; the result order does not depend on scheduling.
pub fn check_suite(model: &Model) -> Result<(ValidationReport, Vec<Check>), ModelError> {
    let base = model.base();
    let mut parts: Vec<(String, _)> = base.parts.iter().map(|(n, p)| (n.clone(), p.clone())).collect();
    if parts.len() > 1 {
        parts.push(("all".into(), base.dirac.clone()));
    }
    std::thread::scope(|s| {
        let report = s.spawn(|| -> Result<ValidationReport, ModelError> {
            Ok(match model {
                Model::Real(t) => validate_triple(t)?,
                Model::Twisted(t) => validate_twisted(t)?,
            })
        });
        let zero = s.spawn(|| match model {
            Model::Real(t) => check_order_zero(t),
            Model::Twisted(t) => check_twisted_order_zero(t),
        });
        let first: Vec<_> = parts
            .iter()
            .map(|(name, d)| {
                s.spawn(move || -> Result<Check, ModelError> {
                    let c = match model {
                        Model::Real(t) => check_first_order_part(t, d)?,
                        Model::Twisted(t) => check_twisted_first_order_part(t, d)?,
                    };
                    Ok(condition(&format!("first_order.{name}"), c))
                })
            })
            .collect();
        let mut checks = vec![condition("order_zero", zero.join().expect("order-zero thread"))];
        for h in first {
            checks.push(h.join().expect("first-order thread")?);
        }
        Ok((report.join().expect("validation thread")?, checks))
    })
}
