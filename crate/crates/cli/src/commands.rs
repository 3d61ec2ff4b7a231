use std::collections::BTreeMap;

use qbranch::branching::{
    check_stochastic_row, check_stochastic_row_laurent, export_dot, pushdown_chain, AtQ, BranchingGraph, GtGraph,
    L1Vector, YoungGraph,
};
use qbranch::charfun::{char_restriction, coherence_check, CharVerdict, TorusPoint};
use qbranch::harmonic::{character_product, check_harmonic, from_top, CoherentSystem, HarmonicVerdict};
use qbranch::repsystem::{zhat_mul, RingConfig, ZhatElement};
use qbranch::sampler::{empirical_tv, rng_from_seed, DownSampler};
use qbranch::scalar::to_f64;
use qbranch::signature::{partitions_of, signatures_in_box};
use qbranch::symfunc::{cartan_moment, dim_classical, lr_splice, lr_tensor, qdim, syt_count};
use qbranch::verify::{verify_all, VerifyConfig};
use qbranch::wire::{
    gt_system_from_json, system_from_json, system_to_json, vector_from_json, vector_to_json, zhat_from_json,
    zhat_to_json, AnySystem,
};
use qbranch::{Rational, Signature};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, Graph};
use crate::{Command, Failure};

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value prints")
}

fn verdict_output(report: Value, passed: bool) -> Result<String, Failure> {
    if passed {
        Ok(pretty(&report))
    } else {
        Err(Failure::Verification(pretty(&report)))
    }
}

/// Rounds to 15 significant digits so that output is stable across
/// platforms.
fn float15(x: f64) -> Value {
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    json!(if rounded == 0.0 { 0.0 } else { rounded })
}

fn complex_json(re: f64, im: f64) -> Value {
    json!({"re": float15(re), "im": float15(im)})
}

pub fn run(cmd: &Command) -> Result<String, Failure> {
    match cmd {
        Command::Qdim { sig, q } => {
            let lam = input::signature(sig)?;
            let p = qdim(&lam);
            let mut out = json!({"sig": lam, "qdim": p.to_string()});
            if let Some(q) = q {
                out["value"] = json!(p.eval(&input::rational(q)?)?.to_string());
            }
            Ok(pretty(&out))
        }
        Command::Dim { sig, partition } => match (sig, partition) {
            (Some(s), _) => {
                let lam = input::signature(s)?;
                Ok(pretty(&json!({"sig": lam, "dim": dim_classical(&lam).to_string()})))
            }
            (None, Some(p)) => {
                let p = input::partition(p)?;
                Ok(pretty(&json!({"partition": p, "dim": syt_count(&p).to_string()})))
            }
            (None, None) => Err(Failure::Usage("give --sig or --partition".into())),
        },
        Command::LrSplice { lam, mu, nu } => {
            let (l, m, n) = (input::signature(lam)?, input::signature(mu)?, input::signature(nu)?);
            let c = lr_splice(&l, &m, &n)?;
            Ok(pretty(&json!({"lam": l, "mu": m, "nu": n, "c": c})))
        }
        Command::LrTensor { lam, mu, nu } => {
            let (l, m, n) = (input::signature(lam)?, input::signature(mu)?, input::signature(nu)?);
            let c = lr_tensor(&l, &m, &n)?;
            Ok(pretty(&json!({"lam": l, "mu": m, "nu": n, "c": c})))
        }
        Command::CartanMoment { sig, exponents } => {
            let lam = input::signature(sig)?;
            let m = match exponents {
                Some(e) => input::integers(e)?,
                None => vec![0; lam.level()],
            };
            let t = cartan_moment(&lam, &m)?;
            Ok(pretty(&json!({"sig": lam, "exponents": m, "moment": t.to_string()})))
        }
        Command::Link { graph, lam, mu } => {
            let meta = input::graph_meta(graph)?;
            match input::graph(graph)? {
                Graph::Gt(g) => {
                    let (l, m) = (input::signature(lam)?, input::signature(mu)?);
                    let symbolic = g.inner().link(&l, &m)?;
                    let value = g.link(&l, &m)?;
                    Ok(pretty(&json!({
                        "lam": l, "mu": m, "link": symbolic.to_string(), "value": value.to_string(), "meta": meta
                    })))
                }
                Graph::Young => {
                    let (l, m) = (input::partition(lam)?, input::partition(mu)?);
                    let value = YoungGraph.link(&l, &m)?;
                    Ok(pretty(
                        &json!({"lam": l, "mu": m, "link": value.to_string(), "value": value.to_string(), "meta": meta}),
                    ))
                }
            }
        }
        Command::StochasticCheck {
            graph,
            level,
            part_bound,
        } => stochastic_check(graph, *level, *part_bound),
        Command::RingMul {
            x,
            y,
            mu,
            nu,
            classical,
            floor,
        } => {
            let factor = |json: &Option<String>, basis: &Option<String>| -> Result<ZhatElement, Failure> {
                match (json, basis) {
                    (_, Some(s)) => Ok(ZhatElement::basis(input::signature(s)?)),
                    (Some(j), None) => Ok(zhat_from_json(&input::json_arg(j)?)?),
                    (None, None) => Err(Failure::Usage("each factor needs --x/--mu or --y/--nu".into())),
                }
            };
            let (a, b) = (factor(x, mu)?, factor(y, nu)?);
            let mut cfg = if *classical {
                RingConfig::classical()
            } else {
                RingConfig::quantum()
            };
            cfg.floor = *floor;
            let default_floor = a.min_part().into_iter().chain(b.min_part()).fold(0, i64::min);
            let prod = zhat_mul(&a, &b, &cfg)?;
            Ok(pretty(&json!({
                "product": zhat_to_json(&prod),
                "meta": {"mode": if *classical { "classical" } else { "quantum" }, "floor": floor.unwrap_or(default_floor)}
            })))
        }
        Command::HarmonicCheck { nu } => {
            let report = match system_from_json(&input::json_arg(nu)?)? {
                AnySystem::Gt(s) => harmonic_report(&s)?,
                AnySystem::Young(s) => harmonic_report(&s)?,
            };
            let passed = report["status"] == "pass";
            verdict_output(report, passed)
        }
        Command::Pushdown {
            graph,
            top,
            vector,
            target,
        } => {
            let meta = input::graph_meta(graph)?;
            let out = match input::graph(graph)? {
                Graph::Gt(g) => pushdown(&g, top.as_deref().map(input::signature).transpose()?, vector, *target)?,
                Graph::Young => pushdown(
                    &YoungGraph,
                    top.as_deref().map(input::partition).transpose()?,
                    vector,
                    *target,
                )?,
            };
            let mut out = out;
            out["meta"] = meta;
            Ok(pretty(&out))
        }
        Command::CharProduct { nu1, nu2, level } => {
            let a = gt_system_from_json(&input::json_arg(nu1)?)?;
            let b = gt_system_from_json(&input::json_arg(nu2)?)?;
            let prod = character_product(&a, &b, *level)?;
            Ok(pretty(
                &json!({"vector": vector_to_json(&prod), "mass": prod.mass().to_string()}),
            ))
        }
        Command::Charfun { nu, q, graph, t } => {
            let doc = input::json_arg(nu)?;
            let point: TorusPoint = t.parse()?;
            let (g, vector) = if doc.get("levels").is_some() {
                let sys = gt_system_from_json(&doc)?;
                let v = sys.level(point.len())?.clone();
                (sys.graph().clone(), v)
            } else {
                let kind = input::graph_kind(graph, "-1")?;
                let g = AtQ::new(GtGraph::from_kind(kind)?, input::q_value(q)?)?;
                (g, vector_from_json::<Signature, Rational>(&doc)?)
            };
            let z = char_restriction(&g, &vector, &point)?;
            Ok(pretty(&json!({
                "value": complex_json(z.re, z.im),
                "meta": {"graph": g.kind().to_string(), "q": g.q_value().to_string(), "level": vector.level()}
            })))
        }
        Command::CoherenceCheck {
            nu,
            level,
            t,
            points,
            seed,
            tol,
        } => {
            let sys = gt_system_from_json(&input::json_arg(nu)?)?;
            let pts: Vec<TorusPoint> = match t {
                Some(t) => vec![t.parse()?],
                None => {
                    let mut rng = rng_from_seed(*seed);
                    (0..*points).map(|_| TorusPoint::random(*level, &mut rng)).collect()
                }
            };
            let verdicts = pts
                .iter()
                .map(|p| coherence_check(&sys, *level, p, *tol))
                .collect::<qbranch::Result<Vec<CharVerdict>>>()?;
            let max = verdicts.iter().map(|v| v.defect).fold(0.0, f64::max);
            let passed = verdicts.iter().all(CharVerdict::passes);
            let report = json!({
                "status": if passed { "pass" } else { "fail" },
                "points": verdicts.len(),
                "max_defect": float15(max),
                "meta": {"level": level, "tol": tol, "seed": seed, "q": sys.graph().q_value().to_string()}
            });
            verdict_output(report, passed)
        }
        Command::Sample {
            graph,
            top,
            count,
            seed,
        } => {
            let meta = input::graph_meta(graph)?;
            let hist = match input::graph(graph)? {
                Graph::Gt(g) => sample(&g, &input::signature(top)?, *count, *seed)?,
                Graph::Young => sample(&YoungGraph, &input::partition(top)?, *count, *seed)?,
            };
            let mut meta = meta;
            meta["seed"] = json!(seed);
            meta["count"] = json!(count);
            meta["generator"] = json!("ChaCha8 (rand_chacha 0.9), seed_from_u64");
            Ok(pretty(&json!({"histograms": hist, "meta": meta})))
        }
        Command::ExportDot {
            graph,
            levels,
            part_bound,
            cap,
        } => {
            let range = input::level_range(levels)?;
            Ok(match input::graph(graph)? {
                Graph::Gt(g) => export_dot(&g, range, *part_bound, *cap)?,
                Graph::Young => export_dot(&YoungGraph, range, *part_bound, *cap)?,
            })
        }
        Command::VerifyAll {
            max_level,
            part_bound,
            q,
            seed,
            samples,
            tol,
        } => {
            let cfg = VerifyConfig {
                max_level: *max_level,
                part_bound: *part_bound,
                q: input::q_value(q)?,
                seed: *seed,
                tol: *tol,
                samples: *samples,
            };
            let outcomes = verify_all(&cfg)?;
            let passed = outcomes.iter().all(|o| o.passed);
            let checks: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({"name": o.name, "status": if o.passed { "pass" } else { "fail" }, "cases": o.cases, "detail": o.detail}))
                .collect();
            let report = json!({
                "status": if passed { "pass" } else { "fail" },
                "checks": checks,
                "meta": {"max_level": max_level, "part_bound": part_bound, "q": cfg.q.to_string(), "seed": seed, "samples": samples, "tol": tol}
            });
            verdict_output(report, passed)
        }
    }
}

fn stochastic_check(graph: &crate::GraphArgs, level: usize, part_bound: i64) -> Result<String, Failure> {
    if level == 0 {
        return Err(Failure::Usage("level must be at least 1".into()));
    }
    let meta = input::graph_meta(graph)?;
    let mut failures = Vec::new();
    let rows = match input::graph(graph)? {
        Graph::Gt(g) => {
            let window = signatures_in_box(level, -part_bound, part_bound);
            for lam in &window {
                let defect = check_stochastic_row_laurent(g.inner(), lam)?;
                if !defect.is_empty() {
                    failures.push(json!({"vertex": lam, "defect": defect.to_string()}));
                }
            }
            window.len()
        }
        Graph::Young => {
            let window: Vec<_> = partitions_of(level)
                .into_iter()
                .filter(|p| p.part(0) <= part_bound)
                .collect();
            for p in &window {
                let v = check_stochastic_row(&YoungGraph, p)?;
                if !v.pass() {
                    failures.push(json!({"vertex": p, "defect": v.defect.to_string()}));
                }
            }
            window.len()
        }
    };
    let passed = failures.is_empty();
    let mut meta = meta;
    meta["level"] = json!(level);
    meta["part_bound"] = json!(part_bound);
    let report =
        json!({"status": if passed { "pass" } else { "fail" }, "rows": rows, "failures": failures, "meta": meta});
    verdict_output(report, passed)
}

fn harmonic_report<G>(sys: &CoherentSystem<G>) -> Result<Value, Failure>
where
    G: BranchingGraph<Scalar = Rational>,
    G::Vertex: Serialize,
{
    Ok(match check_harmonic(sys)? {
        HarmonicVerdict::Pass => json!({"status": "pass", "top_level": sys.top_level()}),
        HarmonicVerdict::Fail { level, vertex, reason } => json!({
            "status": "fail",
            "top_level": sys.top_level(),
            "level": level,
            "vertex": vertex,
            "reason": reason
        }),
    })
}

fn pushdown<G>(g: &G, top: Option<G::Vertex>, vector: &Option<String>, target: Option<usize>) -> Result<Value, Failure>
where
    G: BranchingGraph<Scalar = Rational>,
    G::Vertex: Serialize + serde::de::DeserializeOwned,
{
    let p: L1Vector<G::Vertex, Rational> = match (top, vector) {
        (Some(v), _) => L1Vector::delta(g.level_of(&v), v),
        (None, Some(j)) => vector_from_json(&input::json_arg(j)?)?,
        (None, None) => return Err(Failure::Usage("give --top or --vector".into())),
    };
    match target {
        Some(n) => Ok(vector_to_json(&pushdown_chain(g, &p, n)?)),
        None => Ok(system_to_json(&from_top(g, &p)?)),
    }
}

fn sample<G>(g: &G, top: &G::Vertex, count: usize, seed: u64) -> Result<Vec<Value>, Failure>
where
    G: BranchingGraph<Scalar = Rational>,
    G::Vertex: Serialize,
{
    let n = g.level_of(top);
    let mut sampler = DownSampler::new(g.clone())?;
    let mut rng = rng_from_seed(seed);
    let mut hists: Vec<BTreeMap<G::Vertex, u64>> = vec![BTreeMap::new(); n + 1];
    for _ in 0..count {
        let path = sampler.path(top, &mut rng)?;
        for v in path {
            *hists[g.level_of(&v)].entry(v).or_insert(0) += 1;
        }
    }
    let delta = L1Vector::delta(n, top.clone());
    hists
        .iter()
        .enumerate()
        .map(|(level, h)| {
            let exact = pushdown_chain(g, &delta, level)?;
            let tv = empirical_tv(h, &exact);
            let counts: Vec<Value> = h.iter().map(|(v, c)| json!([v, c])).collect();
            Ok(json!({"level": level, "counts": counts, "tv_to_exact": float15(to_f64(&tv))}))
        })
        .collect()
}
