//! Driver behind the `unimodal` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails (the
//! JSON on stdout says which), 2 for malformed input or usage.

pub mod expr;

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use unimodal_core::cohomology::{canonical_classes_for, integrate, membership_necessary};
use unimodal_core::io::{parse_input, AbstractData, Input};
use unimodal_core::verifier::{
    contradiction_certificate, full_report, index4_kernel, restriction_rank_2_to_4,
    ContradictionOutcome,
};
use unimodal_core::{
    CircleSelector, DelzantPolytope, EquivariantClass, Error, FixedPointSet, GkmGraph, Rational,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Ingest,
    Validate,
    Integrate,
    Canonical,
    Witness,
    Contradict,
    Report,
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    /// Class expression for `integrate`.
    pub class: Option<String>,
    /// Coefficients for `contradict`, overriding any in the input file.
    pub c: Option<Vec<Rational>>,
    /// On a failed index-4 vanishing precondition, retry with a kernel vector.
    pub solve_kernel: bool,
    pub pretty: bool,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub xi: Option<Vec<i64>>,
    pub output_path: Option<PathBuf>,
    pub flags: Flags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub json: String,
}

enum Fail {
    Malformed(String),
    Verification(Value),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NonGeneric { .. } => Fail::Verification(json!({
                "pass": false,
                "stage": "restrict",
                "error": e.to_string(),
            })),
            other => Fail::Malformed(other.to_string()),
        }
    }
}

impl From<expr::ExprError> for Fail {
    fn from(e: expr::ExprError) -> Self {
        match e {
            expr::ExprError::Core(inner) => inner.into(),
            other => Fail::Malformed(other.to_string()),
        }
    }
}

type Step<T> = Result<T, Fail>;

fn render(value: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs one command. With `output_path` set the JSON goes to that file and
/// `Outcome::json` is empty.
pub fn run(config: &RunConfig) -> Outcome {
    let (code, value) = if config.input_path.is_dir() {
        run_directory(config)
    } else {
        run_file(config, &config.input_path)
    };
    let json = render(&value, config.flags.pretty);
    match &config.output_path {
        Some(path) => match std::fs::write(path, &json) {
            Ok(()) => Outcome {
                code,
                json: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_MALFORMED,
                json: render(
                    &json!({ "error": format!("cannot write {}: {e}", path.display()) }),
                    false,
                ),
            },
        },
        None => Outcome { code, json },
    }
}

fn run_directory(config: &RunConfig) -> (i32, Value) {
    let entries = match std::fs::read_dir(&config.input_path) {
        Ok(rd) => rd,
        Err(e) => return (EXIT_MALFORMED, json!({ "error": e.to_string() })),
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut results = serde_json::Map::new();
    let mut code = EXIT_PASS;
    for f in files {
        let (c, v) = run_file(config, &f);
        code = code.max(c);
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        results.insert(name, json!({ "exit": c, "output": v }));
    }
    (code, json!({ "results": results }))
}

fn run_file(config: &RunConfig, path: &Path) -> (i32, Value) {
    match execute(config, path) {
        Ok(pair) => pair,
        Err(Fail::Malformed(msg)) => (EXIT_MALFORMED, json!({ "error": msg })),
        Err(Fail::Verification(v)) => (EXIT_FAIL, v),
    }
}

fn execute(config: &RunConfig, path: &Path) -> Step<(i32, Value)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Fail::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let input = parse_input(&text)
        .map_err(|e| Fail::Malformed(format!("{}: {e}", path.display())))?;
    match input {
        Input::Polytope(p) => {
            let xi = match (&config.xi, config.command) {
                (Some(xi), _) => Some(CircleSelector::new(xi.clone())),
                (None, Command::Ingest) => None,
                (None, _) => {
                    return Err(Fail::Malformed(
                        "--xi is required for polytope input".into(),
                    ))
                }
            };
            polytope_command(config, &p, xi.as_ref())
        }
        Input::FixedPoints(d) => {
            if config.xi.is_some() {
                return Err(Fail::Malformed(
                    "--xi is not accepted for fixed-point input".into(),
                ));
            }
            abstract_command(config, &d)
        }
    }
}

fn pass_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn require_delzant(graph: &GkmGraph) -> Step<()> {
    let report = graph.check_delzant();
    if report.pass {
        Ok(())
    } else {
        Err(Fail::Verification(json!({
            "pass": false,
            "stage": "ingest",
            "error": "polytope is not Delzant",
            "delzant": report,
        })))
    }
}

fn polytope_command(
    config: &RunConfig,
    p: &DelzantPolytope,
    xi: Option<&CircleSelector>,
) -> Step<(i32, Value)> {
    let graph = p.enumerate_vertices()?;
    if let Some(xi) = xi {
        if xi.xi.len() != p.dim {
            return Err(Fail::Malformed(format!(
                "--xi has {} entries for a {}-dimensional polytope",
                xi.xi.len(),
                p.dim
            )));
        }
    }
    let xi_required = || xi.expect("checked in execute");
    match config.command {
        Command::Ingest => {
            let delzant = graph.check_delzant();
            let mut out = json!({
                "kind": "polytope",
                "graph": graph,
                "delzant": delzant,
            });
            if let Some(xi) = xi {
                out["fixed_points"] = to_value(graph.restrict_to_circle(xi)?);
            }
            Ok((pass_code(delzant.pass), out))
        }
        Command::Validate => {
            require_delzant(&graph)?;
            let s = graph.restrict_to_circle(xi_required())?;
            Ok(validation(&s))
        }
        Command::Integrate => {
            require_delzant(&graph)?;
            let xi = xi_required();
            let s = graph.restrict_to_circle(xi)?;
            let factors = parse_class_flag(config)?;
            let needs_canon = factors
                .iter()
                .any(|f| matches!(f.atom, expr::Atom::Canon(_)));
            let canon = if needs_canon {
                Some(canonical_classes_for(&graph, xi)?)
            } else {
                None
            };
            let ctx = expr::Context {
                set: &s,
                toric: Some((&graph, xi)),
                canonical: canon.as_deref(),
            };
            integrate_class(&expr::evaluate(&factors, &ctx)?, &s)
        }
        Command::Canonical => {
            require_delzant(&graph)?;
            let xi = xi_required();
            let s = graph.restrict_to_circle(xi)?;
            let canon = canonical_classes_for(&graph, xi)?;
            let mut pass = true;
            let mut rows = Vec::new();
            for c in &canon {
                let m = membership_necessary(&c.class, &s)?;
                pass &= m.pass && c.certificate.all();
                rows.push(json!({
                    "base": c.base,
                    "index": s.get(&c.base).map(|p| p.index_of()),
                    "class": c.class,
                    "certificate": c.certificate,
                    "membership": m,
                }));
            }
            Ok((pass_code(pass), json!({ "pass": pass, "canonical": rows })))
        }
        Command::Witness => {
            require_delzant(&graph)?;
            let xi = xi_required();
            let s = graph.restrict_to_circle(xi)?;
            let canon = canonical_classes_for(&graph, xi)?;
            let w = restriction_rank_2_to_4(&canon, &s)?;
            let pass = w.unimodal && w.full_rank();
            let mut out = to_value(&w);
            out["pass"] = pass.into();
            Ok((pass_code(pass), out))
        }
        Command::Contradict => {
            require_delzant(&graph)?;
            let xi = xi_required();
            let s = graph.restrict_to_circle(xi)?;
            let canon = canonical_classes_for(&graph, xi)?;
            let claimed: Vec<EquivariantClass> = s
                .points
                .iter()
                .filter(|p| p.index_of() == 2)
                .filter_map(|p| canon.iter().find(|c| c.base == p.id))
                .map(|c| c.class.clone())
                .collect();
            contradict(&s, &claimed, config.flags.c.clone(), config.flags.solve_kernel)
        }
        Command::Report => {
            let r = full_report(p, xi_required());
            Ok((pass_code(r.pass), to_value(&r)))
        }
    }
}

fn abstract_command(config: &RunConfig, d: &AbstractData) -> Step<(i32, Value)> {
    let s = &d.set;
    match config.command {
        Command::Ingest => Ok((
            EXIT_PASS,
            json!({
                "kind": "fixed_points",
                "fixed_points": s,
                "betti": s.betti_from_morse(),
            }),
        )),
        Command::Validate => Ok(validation(s)),
        Command::Integrate => {
            let factors = parse_class_flag(config)?;
            let ctx = expr::Context {
                set: s,
                toric: None,
                canonical: None,
            };
            integrate_class(&expr::evaluate(&factors, &ctx)?, s)
        }
        Command::Contradict => {
            let claimed = d.claimed.as_ref().ok_or_else(|| {
                Fail::Malformed("fixed-point input has no \"claimed\" classes".into())
            })?;
            let c = config.flags.c.clone().or_else(|| d.c.clone());
            contradict(s, claimed, c, config.flags.solve_kernel)
        }
        Command::Canonical | Command::Witness | Command::Report => Err(Fail::Malformed(
            "this command needs polytope input (canonical classes come from the toric flow-up basis)"
                .into(),
        )),
    }
}

fn parse_class_flag(config: &RunConfig) -> Step<Vec<expr::Factor>> {
    let text = config
        .flags
        .class
        .as_deref()
        .ok_or_else(|| Fail::Malformed("integrate needs --class".into()))?;
    Ok(expr::parse(text)?)
}

fn validation(s: &FixedPointSet) -> (i32, Value) {
    let report = s.validate();
    let pass = report.passed();
    (
        pass_code(pass),
        json!({
            "pass": pass,
            "betti": s.betti_from_morse(),
            "checks": report.checks,
        }),
    )
}

fn integrate_class(class: &EquivariantClass, s: &FixedPointSet) -> Step<(i32, Value)> {
    let v = integrate(class, s)?;
    Ok((pass_code(v.is_admissible()), to_value(&v)))
}

fn contradict(
    s: &FixedPointSet,
    claimed: &[EquivariantClass],
    c: Option<Vec<Rational>>,
    solve_kernel: bool,
) -> Step<(i32, Value)> {
    let zeros = || vec![Rational::zero(); claimed.len()];
    let c = c.unwrap_or_else(zeros);
    let outcome = match contradiction_certificate(s, claimed, &c) {
        Err(Error::Precondition(msg)) if solve_kernel => {
            let kernel = index4_kernel(s, claimed)?;
            match kernel.into_iter().next() {
                None => {
                    return Ok((
                        EXIT_PASS,
                        json!({
                            "outcome": "no_contradiction",
                            "kernel": "trivial",
                            "precondition": msg,
                        }),
                    ))
                }
                Some(k) => {
                    let out = contradiction_certificate(s, claimed, &k);
                    return finish_contradiction(s, out, Some(msg));
                }
            }
        }
        other => other,
    };
    finish_contradiction(s, outcome, None)
}

fn finish_contradiction(
    s: &FixedPointSet,
    outcome: unimodal_core::Result<ContradictionOutcome>,
    retried: Option<String>,
) -> Step<(i32, Value)> {
    let (code, mut value) = match outcome {
        Ok(ContradictionOutcome::Certificate(cert)) => {
            let verified = cert.verify(s);
            let mut v = to_value(ContradictionOutcome::Certificate(cert));
            v["verified"] = verified.into();
            (EXIT_FAIL, v)
        }
        Ok(o @ ContradictionOutcome::NoContradiction { .. }) => (EXIT_PASS, to_value(o)),
        Err(Error::Precondition(msg)) => (
            EXIT_FAIL,
            json!({ "outcome": "precondition_violation", "error": msg }),
        ),
        Err(e) => return Err(e.into()),
    };
    if let Some(msg) = retried {
        value["retried_with_kernel"] = json!({ "original_precondition": msg });
    }
    Ok((code, value))
}
