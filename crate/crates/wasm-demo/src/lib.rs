//! Browser bindings for the static demo page in `www/`. Every export takes
//! plain strings and numbers and returns a JSON string.

use std::collections::BTreeMap;

use qbranch::branching::{pushdown_chain, AtQ, GraphKind, GtGraph, L1Vector};
use qbranch::charfun::{char_restriction, TorusPoint};
use qbranch::harmonic::from_top;
use qbranch::sampler::{rng_from_seed, DownSampler};
use qbranch::scalar::{parse_rational, to_f64};
use qbranch::symfunc::qdim;
use qbranch::wire::system_to_json;
use qbranch::{Error, Rational, Result, Signature};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn graph(kind: &str, q: &str) -> Result<AtQ<GtGraph>> {
    let kind: GraphKind = kind.parse()?;
    let q = match kind {
        GraphKind::GtClassical => Rational::from_integer(1.into()),
        _ => parse_rational(q)?,
    };
    AtQ::new(GtGraph::from_kind(kind)?, q)
}

fn signature(s: &str) -> Result<Signature> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad signature {s:?}: {e}")))
}

/// The coherent system pushed down from `top`, plus `qdim(top)`.
pub fn pushdown_json(kind: &str, q: &str, top: &str) -> Result<String> {
    let g = graph(kind, q)?;
    let top = signature(top)?;
    let sys = from_top(&g, &L1Vector::delta(top.level(), top.clone()))?;
    let levels: Vec<Value> = sys
        .levels()
        .iter()
        .map(|v| {
            json!(v
                .iter()
                .map(|(s, w)| json!({"sig": s.to_string(), "exact": w.to_string(), "p": to_f64(w)}))
                .collect::<Vec<_>>())
        })
        .collect();
    Ok(json!({"qdim": qdim(&top).to_string(), "levels": levels, "system": system_to_json(&sys)}).to_string())
}

/// Empirical and exact level distributions of `count` down-walks.
pub fn sample_json(kind: &str, q: &str, top: &str, count: u32, seed: u64) -> Result<String> {
    let g = graph(kind, q)?;
    let top = signature(top)?;
    let mut sampler = DownSampler::new(g.clone())?;
    let mut rng = rng_from_seed(seed);
    let mut hists: Vec<BTreeMap<Signature, u64>> = vec![BTreeMap::new(); top.level() + 1];
    for _ in 0..count {
        for v in sampler.path(&top, &mut rng)? {
            *hists[v.level()].entry(v).or_insert(0) += 1;
        }
    }
    let delta = L1Vector::delta(top.level(), top.clone());
    let levels = hists
        .iter()
        .enumerate()
        .map(|(level, h)| {
            let exact = pushdown_chain(&g, &delta, level)?;
            let rows: Vec<Value> = exact
                .iter()
                .map(|(s, w)| {
                    let seen = h.get(s).copied().unwrap_or(0);
                    json!({"sig": s.to_string(), "exact": to_f64(w), "empirical": seen as f64 / f64::from(count.max(1))})
                })
                .collect();
            Ok(json!({"level": level, "rows": rows}))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"count": count, "seed": seed, "levels": levels}).to_string())
}

/// `|chi(t1, t2)|` of the level-2 marginal on a `steps x steps` grid of
/// angles in `[0, 2 pi)`.
pub fn charfun_grid_json(q: &str, top: &str, steps: u32) -> Result<String> {
    let g = graph("gtq", q)?;
    let top = signature(top)?;
    if top.level() < 2 {
        return Err(Error::Invalid("the torus grid needs a top level of at least 2".into()));
    }
    let sys = from_top(&g, &L1Vector::delta(top.level(), top.clone()))?;
    let nu = sys.level(2)?;
    let step = std::f64::consts::TAU / f64::from(steps.max(1));
    let mut grid = Vec::with_capacity(steps as usize);
    for i in 0..steps {
        let mut row = Vec::with_capacity(steps as usize);
        for j in 0..steps {
            let t = TorusPoint::from_angles(&[f64::from(i) * step, f64::from(j) * step]);
            row.push(char_restriction(&g, nu, &t)?.norm());
        }
        grid.push(row);
    }
    Ok(json!({"steps": steps, "grid": grid}).to_string())
}

fn to_js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn pushdown(kind: &str, q: &str, top: &str) -> std::result::Result<String, JsError> {
    to_js(pushdown_json(kind, q, top))
}

#[wasm_bindgen]
pub fn sample(kind: &str, q: &str, top: &str, count: u32, seed: u64) -> std::result::Result<String, JsError> {
    to_js(sample_json(kind, q, top, count, seed))
}

#[wasm_bindgen]
pub fn charfun_grid(q: &str, top: &str, steps: u32) -> std::result::Result<String, JsError> {
    to_js(charfun_grid_json(q, top, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pushdown_reports_exact_levels() {
        let v: Value = serde_json::from_str(&pushdown_json("gtq", "9/10", "[1,0]").unwrap()).unwrap();
        assert_eq!(v["qdim"], "q^-1 + q");
        assert_eq!(v["levels"][1][1]["exact"], "100/181");
    }

    #[test]
    fn sample_is_seeded() {
        let a = sample_json("gt", "1", "[2,1,0]", 500, 9).unwrap();
        assert_eq!(a, sample_json("gt", "1", "[2,1,0]", 500, 9).unwrap());
        let v: Value = serde_json::from_str(&a).unwrap();
        let total: f64 = v["levels"][1]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["empirical"].as_f64().unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn grid_is_one_at_the_origin() {
        let v: Value = serde_json::from_str(&charfun_grid_json("9/10", "[1,0,-1]", 8).unwrap()).unwrap();
        assert!((v["grid"][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!(charfun_grid_json("9/10", "[1]", 8).is_err());
        assert!(pushdown_json("young", "9/10", "[1]").is_err());
    }
}
