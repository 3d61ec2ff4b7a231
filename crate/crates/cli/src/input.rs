use std::fs;

use qbranch::branching::{AtQ, BetaSign, GraphKind, GtGraph};
use qbranch::scalar::parse_rational;
use qbranch::{Partition, Rational, Signature};
use serde_json::{json, Value};

use crate::{Failure, GraphArgs};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn signature(s: &str) -> Result<Signature, Failure> {
    serde_json::from_str(s).map_err(|e| usage(format!("bad signature {s:?}: {e}")))
}

pub fn partition(s: &str) -> Result<Partition, Failure> {
    serde_json::from_str(s).map_err(|e| usage(format!("bad partition {s:?}: {e}")))
}

pub fn integers(s: &str) -> Result<Vec<i64>, Failure> {
    serde_json::from_str(s).map_err(|e| usage(format!("bad integer list {s:?}: {e}")))
}

pub fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

/// Inline JSON when the argument starts with `{` or `[`, otherwise a path.
pub fn json_arg(s: &str) -> Result<Value, Failure> {
    let trimmed = s.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        s.to_string()
    } else {
        fs::read_to_string(s).map_err(|e| usage(format!("cannot read {s}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("bad JSON in {s}: {e}")))
}

/// A numerically specialized graph.
#[derive(Clone, Debug)]
pub enum Graph {
    Gt(AtQ<GtGraph>),
    Young,
}

pub fn graph_kind(name: &str, beta: &str) -> Result<GraphKind, Failure> {
    let kind: GraphKind = name.parse()?;
    let flip = match beta.trim() {
        "-1" | "-" => false,
        "+1" | "1" | "+" => true,
        other => return Err(usage(format!("beta must be -1 or +1, got {other:?}"))),
    };
    Ok(match (kind, flip) {
        (GraphKind::GtQ(b), true) => GraphKind::GtQ(b.flip()),
        (k, _) => k,
    })
}

/// `q` must lie in `(0, 1]`.
pub fn q_value(s: &str) -> Result<Rational, Failure> {
    let q = rational(s)?;
    if q <= Rational::from_integer(0.into()) || q > Rational::from_integer(1.into()) {
        return Err(usage(format!("q must lie in (0,1], got {q}")));
    }
    Ok(q)
}

pub fn graph(args: &GraphArgs) -> Result<Graph, Failure> {
    let kind = graph_kind(&args.graph, &args.beta)?;
    match kind {
        GraphKind::Young => Ok(Graph::Young),
        GraphKind::GtClassical => Ok(Graph::Gt(AtQ::new(
            GtGraph::classical(),
            Rational::from_integer(1.into()),
        )?)),
        kind => Ok(Graph::Gt(AtQ::new(GtGraph::from_kind(kind)?, q_value(&args.q)?)?)),
    }
}

pub fn graph_meta(args: &GraphArgs) -> Result<Value, Failure> {
    let kind = graph_kind(&args.graph, &args.beta)?;
    let beta = match kind {
        GraphKind::GtQ(BetaSign::Minus) => json!("-1"),
        GraphKind::GtQ(BetaSign::Plus) => json!("+1"),
        _ => Value::Null,
    };
    let q = match kind {
        GraphKind::GtQ(_) => json!(q_value(&args.q)?.to_string()),
        GraphKind::GtClassical => json!("1"),
        GraphKind::Young => Value::Null,
    };
    Ok(json!({"graph": kind.to_string(), "beta": beta, "q": q}))
}

/// Parses `a..b` into a half-open range.
pub fn level_range(s: &str) -> Result<std::ops::Range<usize>, Failure> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("expected a range like 0..3, got {s:?}")))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| usage(format!("bad level {t:?}")));
    Ok(parse(a)?..parse(b)?)
}
