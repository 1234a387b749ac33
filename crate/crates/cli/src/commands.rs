use forests_core::arith::StructureChecker;
use forests_core::asymptotics::{convergence_report, mahler_report, Precision};
use forests_core::dsl::{format_family, parse_family, ParseError};
use forests_core::family::build_family_with;
use forests_core::forest::{char_poly, forest_count_oracle};
use forests_core::graph::{expand, FoliationSpec};
use forests_core::{Complex64, Error};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{Command, NSelection, Request, LARGE_N};
use crate::CliError;

pub type Row = Map<String, Value>;

/// A command's result before rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub family: String,
    pub command: Command,
    /// Field order for tabular formats.
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
    /// Set for `expand`, which can also be written in graph formats.
    pub graph: Option<GraphText>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphText {
    pub edge_list: String,
    pub graph_text: String,
}

fn columns(command: Command) -> Vec<&'static str> {
    match command {
        Command::Poly => vec![
            "q", "f_z", "eta", "s", "m", "m_prime", "leading", "q1", "qm1",
        ],
        Command::Count | Command::Oracle => vec!["n", "f", "f_base", "method"],
        Command::Verify => vec!["n", "f", "f_base", "qm1", "p", "a", "parity", "verified"],
        Command::Mahler => vec![
            "a_roots",
            "a_roots_error",
            "a_quadrature",
            "a_quadrature_error",
            "discrepancy",
            "digits",
            "roots",
        ],
        Command::Converge => vec!["n", "f", "nth_root", "ratio", "log_deviation", "a"],
        Command::Expand => vec!["from", "to", "multiplicity"],
    }
}

/// Error text with the offending line and a caret under the position.
fn describe_parse_error(text: &str, e: &ParseError) -> String {
    let (line, col) = e.position();
    let src = text.lines().nth(line - 1).unwrap_or("");
    format!(
        "invalid family descriptor: {e}\n  {src}\n  {}^",
        " ".repeat(col.saturating_sub(1))
    )
}

fn row(pairs: Vec<(&str, Value)>) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn skipped(n: u64, e: &Error) -> Row {
    row(vec![("n", json!(n)), ("skipped", json!(e.to_string()))])
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}

/// Runs `f` on every selected `n` in parallel and keeps the rows in order.
/// Inadmissible `n` become skipped rows in a range and an error otherwise.
fn sweep<F>(spec: &FoliationSpec, sel: NSelection, f: F) -> Result<Vec<Row>, CliError>
where
    F: Fn(u64) -> Result<Row, Error> + Sync,
{
    let check = |n: u64| -> Result<(), Error> {
        if n == 0 {
            Err(Error::InvalidN)
        } else if !spec.admits(n) {
            Err(Error::JumpTooLargeForN {
                n,
                max_jump: spec.max_jump(),
            })
        } else {
            Ok(())
        }
    };
    if let NSelection::Single(n) = sel {
        check(n)?;
    }
    let results: Vec<Result<Row, Error>> = sel
        .values()
        .into_par_iter()
        .map(|n| match check(n) {
            Ok(()) => f(n),
            Err(e) => Ok(skipped(n, &e)),
        })
        .collect();
    first_failure(results)
}

/// An invariant violation anywhere wins over an earlier domain error.
fn first_failure(results: Vec<Result<Row, Error>>) -> Result<Vec<Row>, CliError> {
    if let Some(Err(e)) = results
        .iter()
        .find(|r| matches!(r, Err(e) if e.is_invariant_violation()))
    {
        return Err(e.clone().into());
    }
    results
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

fn need_n(request: &Request, sel: NSelection) -> Result<(), CliError> {
    if sel == NSelection::None {
        return Err(CliError::usage(format!(
            "{} needs --n or --range",
            request.command.name()
        )));
    }
    Ok(())
}

/// Parses, builds and evaluates a request. Warnings are appended to
/// `warnings`.
pub fn evaluate(request: &Request, warnings: &mut Vec<String>) -> Result<Document, CliError> {
    let desc = parse_family(&request.family).map_err(|e| {
        let mut err = CliError::usage(describe_parse_error(&request.family, &e));
        if let ParseError::Semantic { error, .. } = &e {
            if error.is_invariant_violation() {
                err.status = crate::EXIT_INVARIANT;
            }
        }
        err
    })?;
    let command = request.command;
    let sel = match (desc.n, request.n) {
        (None, sel) => sel,
        (Some(v), NSelection::None) => NSelection::Single(v),
        (Some(v), NSelection::Single(w)) if v == w => NSelection::Single(v),
        (Some(v), _) => {
            return Err(CliError::usage(format!(
                "the descriptor fixes n = {v}; drop --n/--range or write n in the descriptor"
            )))
        }
    };
    let sel = if command.ignores_n() {
        NSelection::None
    } else {
        sel
    };
    let spec = build_family_with(&desc, request.allow_disconnected)?;
    if !spec.base().is_connected() {
        warnings.push("base graph is not connected".into());
        if !matches!(command, Command::Oracle | Command::Expand) {
            return Err(CliError::usage(format!(
                "{} requires a connected base graph; only oracle and expand accept --allow-disconnected",
                command.name()
            )));
        }
    }
    if let Some(max) = sel.max() {
        if max > LARGE_N && command != Command::Expand {
            warnings.push(format!("n = {max} exceeds {LARGE_N}; expect a long run"));
        }
    }
    let mut graph = None;
    let rows = match command {
        Command::Poly => {
            let b = char_poly(&spec)?;
            let strings = |p: &forests_core::algebra::IntegerPolynomial| -> Value {
                p.coeffs()
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect()
            };
            vec![row(vec![
                ("q", strings(&b.q)),
                ("f_z", strings(&b.f_z)),
                ("eta", json!(b.eta.to_string())),
                ("s", json!(b.shift)),
                ("m", json!(b.m)),
                ("m_prime", json!(b.m_prime)),
                (
                    "leading",
                    json!(b.q.leading().map(ToString::to_string).unwrap_or_default()),
                ),
                ("q1", json!(b.q_at_one().to_string())),
                ("qm1", json!(b.q_at_minus_one().to_string())),
            ])]
        }
        Command::Count => {
            need_n(request, sel)?;
            let b = char_poly(&spec)?;
            sweep(&spec, sel, |n| {
                let r = b.forest_count(n)?;
                Ok(count_row(n, &r.f_n, &r.f_base, r.method.tag()))
            })?
        }
        Command::Oracle => {
            need_n(request, sel)?;
            sweep(&spec, sel, |n| {
                let r = forest_count_oracle(&spec, n)?;
                Ok(count_row(n, &r.f_n, &r.f_base, r.method.tag()))
            })?
        }
        Command::Verify => {
            need_n(request, sel)?;
            let checker = StructureChecker::new(&spec)?;
            sweep(&spec, sel, |n| {
                let r = checker.check(n)?;
                Ok(row(vec![
                    ("n", json!(n)),
                    ("f", json!(r.f_n.to_string())),
                    ("f_base", json!(r.f_base.to_string())),
                    ("qm1", json!(r.q_minus_one.to_string())),
                    ("p", json!(r.square_free_p.to_string())),
                    ("a", json!(r.a_n.to_string())),
                    ("parity", json!(r.parity.to_string())),
                    ("verified", json!(r.verified)),
                ]))
            })?
        }
        Command::Mahler => {
            let precision = Precision::new(request.precision)?;
            let b = char_poly(&spec)?;
            let r = mahler_report(&b, precision)?;
            let roots: Vec<Value> = r
                .roots_used
                .roots()
                .iter()
                .map(|z| json!(complex_text(*z)))
                .collect();
            vec![row(vec![
                ("a_roots", json!(r.a_roots.value)),
                ("a_roots_error", json!(r.a_roots.error)),
                ("a_quadrature", json!(r.a_quadrature.value)),
                ("a_quadrature_error", json!(r.a_quadrature.error)),
                ("discrepancy", json!(r.discrepancy)),
                ("digits", json!(precision.digits())),
                ("roots", Value::Array(roots)),
            ])]
        }
        Command::Converge => {
            need_n(request, sel)?;
            let n_max = sel.max().unwrap_or(0);
            let report = convergence_report(&spec, n_max)?;
            let first = report.rows.first().map_or(n_max + 1, |r| r.n);
            let wanted = match sel {
                NSelection::Range(a, b) => (a..=b).collect(),
                _ => (first..=n_max).collect::<Vec<_>>(),
            };
            wanted
                .into_iter()
                .map(|n| match report.rows.iter().find(|r| r.n == n) {
                    Some(r) => row(vec![
                        ("n", json!(n)),
                        ("f", json!(r.f_n.to_string())),
                        ("nth_root", json!(r.nth_root)),
                        ("ratio", json!(r.ratio)),
                        ("log_deviation", json!(r.log_deviation)),
                        ("a", json!(report.a)),
                    ]),
                    None => row(vec![
                        ("n", json!(n)),
                        ("skipped", json!(format!("rows start at n = {first}"))),
                    ]),
                })
                .collect()
        }
        Command::Expand => {
            let n = match sel {
                NSelection::Single(n) => n,
                _ => return Err(CliError::usage("expand needs a single --n".into())),
            };
            let g = expand(&spec, n)?;
            let label = |v: usize| {
                let (k, i) = g.label(v);
                format!("{},{}", k + 1, i + 1)
            };
            let rows = g
                .edges()
                .map(|(u, v, m)| {
                    row(vec![
                        ("from", json!(label(u))),
                        ("to", json!(label(v))),
                        ("multiplicity", json!(m)),
                    ])
                })
                .collect();
            graph = Some(GraphText {
                edge_list: g.to_edge_list(),
                graph_text: g.to_graph_text(),
            });
            rows
        }
    };
    Ok(Document {
        family: format_family(&desc),
        command,
        columns: columns(command),
        rows,
        graph,
    })
}

fn count_row(n: u64, f: &num_bigint::BigUint, f_base: &num_bigint::BigUint, method: &str) -> Row {
    row(vec![
        ("n", json!(n)),
        ("f", json!(f.to_string())),
        ("f_base", json!(f_base.to_string())),
        ("method", json!(method)),
    ])
}
