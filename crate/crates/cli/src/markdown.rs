use std::fmt::Write;

use ncg_core::clifford::OperatorExpr;
use ncg_core::linalg::Mat;

use crate::report::{ActionBody, Body, CheckBody, FluctuateBody, ModelEntry, Report};

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    match &r.result {
        Body::Models { models } => models_md(&mut out, models),
        Body::Check(c) => check_md(&mut out, c),
        Body::Fluctuate(f) => fluctuate_md(&mut out, f),
        Body::Action(a) => action_md(&mut out, a),
    }
    let verdict = if r.expectations_met { "met" } else { "NOT met" };
    let _ = writeln!(out, "\nExpectations {verdict}.\n");
    let _ = writeln!(out, "_schema {} · ncg-core {} · {}_", r.schema_version, r.engine_version, r.gamma_basis);
    out
}

fn models_md(out: &mut String, models: &[ModelEntry]) {
    let _ = writeln!(out, "# Models\n");
    for m in models {
        let kind = if m.twisted { "twisted" } else { "real" };
        let _ = writeln!(out, "## `{}` ({kind})\n\n{}\n", m.name, m.summary);
        for b in &m.blocks {
            let _ = writeln!(out, "- {b}");
        }
        if !m.expected.is_empty() {
            let _ = writeln!(out, "\nExpected not to pass:\n");
            for e in &m.expected {
                let _ = writeln!(out, "- `{}`: {}", e.check, e.status.label());
            }
        }
        let _ = writeln!(out);
    }
}

fn check_md(out: &mut String, c: &CheckBody) {
    let twist = c.twist.as_deref().map(|t| format!(", twist `{t}`")).unwrap_or_default();
    let _ = writeln!(out, "# Check `{}` (part `{}`{twist})\n", c.model, c.part);
    let ko = c.ko_dimension.map_or("undetermined".to_string(), |k| k.to_string());
    let _ = writeln!(out, "dimension {}, KO-dimension {ko}, generations {}\n", c.dim, c.generations);
    let _ = writeln!(out, "| check | status | expected | constraints |");
    let _ = writeln!(out, "|---|---|---|---|");
    for k in &c.checks {
        let _ =
            writeln!(out, "| `{}` | {} | {} | {} |", k.check.name, k.check.status.label(), k.expected.label(), k.check.constraints.len());
    }
    for k in c.checks.iter().filter(|k| !k.check.constraints.is_empty() || !k.check.note.is_empty()) {
        let _ = writeln!(out, "\n### `{}`\n", k.check.name);
        if !k.check.note.is_empty() {
            let _ = writeln!(out, "{}\n", k.check.note);
        }
        for p in k.check.constraints.polys() {
            let _ = writeln!(out, "- `{p} = 0`");
        }
    }
}

fn fluctuate_md(out: &mut String, f: &FluctuateBody) {
    let _ = writeln!(out, "# Fluctuations of `{}` (part `{}`, {:?} adjoint)\n", f.model, f.part, f.product);
    let _ = writeln!(out, "one-form space: {} real dimensions; transparent: {}\n", f.one_form_dim, f.transparent);
    if f.params.is_empty() {
        let _ = writeln!(out, "The selfadjoint family is empty.");
        return;
    }
    let names: Vec<String> = f.params.iter().map(|p| p.name()).collect();
    let _ = writeln!(out, "{} real parameters: {}", names.len(), names.join(", "));
    for d in &f.directions {
        let _ = writeln!(out, "\n## `{}`\n", d.param.name());
        for e in &d.entries {
            let _ = writeln!(out, "- ({}, {}): `{}`", e.row, e.col, e.value);
        }
    }
}

fn mat_md(out: &mut String, m: &Mat) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        let _ = writeln!(out, "    [{}]", row.join(", "));
    }
}

fn operator_md(out: &mut String, o: &OperatorExpr) {
    if o.is_zero() {
        let _ = writeln!(out, "    0");
        return;
    }
    if !o.order0.is_zero() {
        let _ = writeln!(out, "order 0:\n");
        mat_md(out, &o.order0);
    }
    for (mu, b) in o.order1.iter().enumerate() {
        if !b.is_zero() {
            let _ = writeln!(out, "\n∂{mu}:\n");
            mat_md(out, b);
        }
    }
}

fn action_md(out: &mut String, a: &ActionBody) {
    let _ = writeln!(out, "# Action of `{}` against the `{}` template\n", a.model, a.template);
    let _ = writeln!(out, "- subspace: {}", a.subspace.label());
    let _ = writeln!(out, "- identification: {}", a.identification);
    let _ = writeln!(out, "- prefactor: {}", a.prefactor);
    let _ = writeln!(out, "- plane wave: ∂0 → i·{}", a.planewave);
    let _ = writeln!(out, "- antisymmetric kernel: {}", a.antisymmetric);
    let _ = writeln!(out, "- matched: {} (expected {})\n", a.matched, a.expected_match);
    let _ = writeln!(out, "## Kernel\n");
    operator_md(out, &a.kernel);
    let _ = writeln!(out, "\n## Residual\n");
    operator_md(out, &a.residual);
}
