use std::fmt::Write;
use std::ops::Range;

use super::BranchingGraph;
use crate::error::{Error, Result};
use crate::scalar::Rational;

pub const DEFAULT_VERTEX_CAP: usize = 2000;

/// Renders the window `levels x [-part_bound, part_bound]` of a numerically
/// specialized graph as DOT. Edges are labeled with the link value and the
/// multiplicity.
pub fn export_dot<G>(g: &G, levels: Range<usize>, part_bound: i64, cap: usize) -> Result<String>
where
    G: BranchingGraph<Scalar = Rational>,
{
    let layers: Vec<Vec<G::Vertex>> = levels.clone().map(|n| g.window(n, part_bound)).collect();
    let total: usize = layers.iter().map(Vec::len).sum();
    if total > cap {
        return Err(Error::WindowTooLarge { vertices: total, cap });
    }
    let id = |level: usize, v: &G::Vertex| format!("\"{level}:{v}\"");
    let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n");
    if let Some(q) = g.q() {
        let _ = writeln!(out, "  label=\"{} q={}\";", g.kind(), q);
    } else {
        let _ = writeln!(out, "  label=\"{}\";", g.kind());
    }
    for (level, layer) in levels.clone().zip(&layers) {
        let _ = write!(out, "  {{ rank=same;");
        for v in layer {
            let shown = if level == 0 { "∅".to_string() } else { v.to_string() };
            let _ = write!(out, " {} [label=\"{}\"];", id(level, v), shown);
        }
        out.push_str(" }\n");
    }
    for (i, level) in levels.clone().enumerate().skip(1) {
        for lam in &layers[i] {
            for mu in g.covers_below(lam) {
                if !layers[i - 1].contains(&mu) {
                    continue;
                }
                let k = g.link(lam, &mu)?;
                let m = g.multiplicity(lam, &mu);
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{} m={}\"];",
                    id(level, lam),
                    id(level - 1, &mu),
                    k,
                    m
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{BetaSign, GtGraph};
    use crate::scalar::rational;

    #[test]
    fn small_window() {
        let g = GtGraph::quantum(BetaSign::Minus).at(rational(1, 2));
        let dot = export_dot(&g, 0..3, 1, 100).unwrap();
        // 1/(1 + 1/4) = 4/5
        assert!(dot.contains("\"2:(1,0)\" -> \"1:(1)\" [label=\"4/5 m=1\"]"));
        assert!(dot.contains("\"1:(-1)\" -> \"0:()\" [label=\"1 m=1\"]"));
        let empty = export_dot(&g, 0..0, 1, 100).unwrap();
        assert!(!empty.contains("->"));
        assert!(matches!(export_dot(&g, 0..5, 3, 10), Err(Error::WindowTooLarge { .. })));
    }
}
