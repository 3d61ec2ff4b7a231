//! JSON forms of the exchanged values. Scalars always travel as exact
//! strings.
//!
//! * `L1Vector`: `{"level": n, "entries": [[vertex, "scalar"], ...]}`
//! * `CoherentSystem`: `{"graph": "gtq", "q": "9/10", "levels": [L1Vector, ...]}`
//! * `ZhatElement`: `[{"level": n, "sig": [...], "coef": "laurent"}, ...]`

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::branching::{AtQ, BranchingGraph, GraphKind, GtGraph, L1Vector, YoungGraph};
use crate::error::{Error, Result};
use crate::harmonic::CoherentSystem;
use crate::repsystem::ZhatElement;
use crate::scalar::{parse_rational, LaurentPoly, Rational, Scalar};
use crate::signature::Signature;

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct VectorDoc<V> {
    level: usize,
    entries: Vec<(V, String)>,
}

pub fn vector_to_json<V, S>(v: &L1Vector<V, S>) -> Value
where
    V: Clone + Ord + Serialize,
    S: Scalar,
{
    let doc = VectorDoc {
        level: v.level(),
        entries: v.iter().map(|(k, s)| (k.clone(), s.to_string())).collect(),
    };
    serde_json::to_value(doc).expect("vector serializes")
}

pub fn vector_from_json<V, S>(value: &Value) -> Result<L1Vector<V, S>>
where
    V: Clone + Ord + DeserializeOwned,
    S: Scalar,
{
    let doc: VectorDoc<V> = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let entries = doc
        .entries
        .into_iter()
        .map(|(k, s)| Ok((k, S::parse_scalar(&s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(L1Vector::from_entries(doc.level, entries))
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    levels: Vec<Value>,
}

pub fn system_to_json<G>(sys: &CoherentSystem<G>) -> Value
where
    G: BranchingGraph<Scalar = Rational>,
    G::Vertex: Serialize,
{
    let doc = SystemDoc {
        graph: sys.graph().kind().to_string(),
        q: sys.graph().q().map(|q| q.to_string()),
        levels: sys.levels().iter().map(vector_to_json).collect(),
    };
    serde_json::to_value(doc).expect("system serializes")
}

fn system_levels<V: Clone + Ord + DeserializeOwned>(doc: &SystemDoc) -> Result<Vec<L1Vector<V, Rational>>> {
    doc.levels.iter().map(vector_from_json).collect()
}

/// A parsed coherent system on either vertex type.
#[derive(Clone, Debug)]
pub enum AnySystem {
    Gt(CoherentSystem<AtQ<GtGraph>>),
    Young(CoherentSystem<YoungGraph>),
}

pub fn system_from_json(value: &Value) -> Result<AnySystem> {
    let doc: SystemDoc = serde_json::from_value(value.clone()).map_err(parse_err)?;
    match doc.graph.parse::<GraphKind>()? {
        GraphKind::Young => Ok(AnySystem::Young(CoherentSystem::new(YoungGraph, system_levels(&doc)?)?)),
        kind => {
            let q = match (&doc.q, kind) {
                (Some(q), _) => parse_rational(q)?,
                (None, GraphKind::GtClassical) => Rational::from_integer(1.into()),
                (None, _) => return Err(Error::Parse("a quantum system needs \"q\"".into())),
            };
            let g = AtQ::new(GtGraph::from_kind(kind)?, q)?;
            Ok(AnySystem::Gt(CoherentSystem::new(g, system_levels(&doc)?)?))
        }
    }
}

/// Parses a system that must live on a GT graph.
pub fn gt_system_from_json(value: &Value) -> Result<CoherentSystem<AtQ<GtGraph>>> {
    match system_from_json(value)? {
        AnySystem::Gt(s) => Ok(s),
        AnySystem::Young(_) => Err(Error::GraphMismatch("expected a GT system, got young".into())),
    }
}

#[derive(Serialize, Deserialize)]
struct ZhatTerm {
    level: usize,
    sig: Signature,
    coef: String,
}

pub fn zhat_to_json(x: &ZhatElement) -> Value {
    let terms: Vec<ZhatTerm> = x
        .terms()
        .iter()
        .map(|(s, c)| ZhatTerm {
            level: s.level(),
            sig: s.clone(),
            coef: c.to_string(),
        })
        .collect();
    serde_json::to_value(terms).expect("zhat serializes")
}

pub fn zhat_from_json(value: &Value) -> Result<ZhatElement> {
    let terms: Vec<ZhatTerm> = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let mut out = ZhatElement::zero();
    for t in terms {
        if t.sig.level() != t.level {
            return Err(Error::LevelMismatch {
                expected: t.level,
                got: t.sig.level(),
            });
        }
        out.add_term(t.sig, t.coef.parse::<LaurentPoly>()?);
    }
    Ok(out)
}
