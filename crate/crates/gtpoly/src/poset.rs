//! The refinement order on weights for a fixed shape, annotated with the
//! status of each polytope, and its DOT rendering (solid frame = unimodular
//! simplex, dashed = integral non-simplex, dotted = non-integral).

use crate::error::Result;
use crate::partition::{Composition, Partition};
use crate::polytope::{idp_check, is_unimodular_simplex, PolytopeSpec};
use crate::shape::SkewShape;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeStatus {
    pub integral: bool,
    pub unimodular_simplex: bool,
    /// Largest checked dilation with the decomposition property; `None` for
    /// non-integral nodes (where it is undefined) or when not requested.
    pub idp_up_to: Option<u64>,
    pub num_lattice_points: u64,
    pub num_vertices: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetNode {
    pub weight: Vec<u64>,
    pub label: String,
    pub status: NodeStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementPoset {
    pub lambda: Vec<u64>,
    pub mu: Vec<u64>,
    pub nodes: Vec<PosetNode>,
    /// Edges as (coarse node index, fine node index): one covering split.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug)]
pub struct PosetOptions {
    /// Check the decomposition property up to this dilation on integral
    /// nodes (0 = skip).
    pub max_k_for_idp: u64,
    /// Evaluate all compositions instead of just partitions.
    pub permutations: bool,
    /// Worker threads for the per-node analyses.
    pub threads: usize,
}

impl Default for PosetOptions {
    fn default() -> Self {
        PosetOptions {
            max_k_for_idp: 0,
            permutations: false,
            threads: 1,
        }
    }
}

/// Builds the refinement poset of non-empty polytopes over the weights of
/// `|lambda| - |mu|`. Nodes are partitions by default (each evaluated at its
/// weakly decreasing composition); edges are single-part splits re-sorted.
pub fn build_poset(lambda: &Partition, mu: &Partition, opts: &PosetOptions) -> Result<RefinementPoset> {
    let shape = SkewShape::new(lambda.clone(), mu.clone())?;
    let boxes = shape.boxes();
    let weights: Vec<Vec<u64>> = if opts.permutations {
        compositions_of(boxes)
    } else {
        Partition::all_of(boxes)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect()
    };

    // analyse all candidate weights (in parallel when asked to)
    let statuses = analyse_all(&shape, &weights, opts)?;

    let mut nodes: Vec<PosetNode> = Vec::new();
    let mut index_of: std::collections::HashMap<Vec<u64>, usize> = Default::default();
    for (w, status) in weights.iter().zip(statuses) {
        let Some(status) = status else { continue }; // empty polytope
        let label = if w.iter().all(|&p| p <= 9) {
            w.iter().map(|p| p.to_string()).collect::<String>()
        } else {
            w.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        };
        index_of.insert(w.clone(), nodes.len());
        nodes.push(PosetNode {
            weight: w.clone(),
            label,
            status,
        });
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (ci, node) in nodes.iter().enumerate() {
        for target in covering_splits(&node.weight, opts.permutations) {
            if let Some(&fi) = index_of.get(&target) {
                edges.push((ci, fi));
            }
        }
    }
    edges.sort();
    edges.dedup();
    Ok(RefinementPoset {
        lambda: lambda.parts().to_vec(),
        mu: mu.parts().to_vec(),
        nodes,
        edges,
    })
}

fn analyse_all(
    shape: &SkewShape,
    weights: &[Vec<u64>],
    opts: &PosetOptions,
) -> Result<Vec<Option<NodeStatus>>> {
    let threads = opts.threads.max(1).min(weights.len().max(1));
    if threads <= 1 {
        return weights.iter().map(|w| analyse_node(shape, w, opts)).collect();
    }
    let mut results: Vec<Option<NodeStatus>> = vec![None; weights.len()];
    let chunk = weights.len().div_ceil(threads);
    let errors = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for (slot, work) in results.chunks_mut(chunk).zip(weights.chunks(chunk)) {
            let errors = &errors;
            scope.spawn(move || {
                for (out, w) in slot.iter_mut().zip(work) {
                    match analyse_node(shape, w, opts) {
                        Ok(status) => *out = status,
                        Err(e) => errors.lock().unwrap().push(e),
                    }
                }
            });
        }
    });
    if let Some(e) = errors.into_inner().unwrap().pop() {
        return Err(e);
    }
    Ok(results)
}

fn analyse_node(shape: &SkewShape, w: &[u64], opts: &PosetOptions) -> Result<Option<NodeStatus>> {
    let spec = PolytopeSpec::weighted(shape.clone(), Composition::new(w.to_vec()), 1)?;
    let vertices = spec.vertices()?;
    if vertices.is_empty() {
        return Ok(None);
    }
    let integral = vertices.iter().all(crate::pattern::GTPattern::is_integral);
    let unimodular = integral && is_unimodular_simplex(&spec)?;
    let idp_up_to = if integral && opts.max_k_for_idp >= 2 {
        idp_check(&spec, opts.max_k_for_idp)?
            .holds()
            .then_some(opts.max_k_for_idp)
    } else {
        None
    };
    Ok(Some(NodeStatus {
        integral,
        unimodular_simplex: unimodular,
        idp_up_to,
        num_lattice_points: spec.lattice_points().len() as u64,
        num_vertices: vertices.len() as u64,
    }))
}

/// All single-part splits of a weight. In partition mode the result is
/// re-sorted; in composition mode the two parts stay in place.
pub fn covering_splits(w: &[u64], keep_order: bool) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for (i, &p) in w.iter().enumerate() {
        for a in 1..p {
            let b = p - a;
            let mut parts: Vec<u64> = w[..i].to_vec();
            parts.push(a);
            parts.push(b);
            parts.extend_from_slice(&w[i + 1..]);
            if !keep_order {
                parts.sort_unstable_by(|x, y| y.cmp(x));
            }
            out.push(parts);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn compositions_of(n: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    fn rec(rem: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut Vec::new(), &mut out);
    out
}

impl RefinementPoset {
    /// DOT rendering: arrows point from coarse to fine, node frames encode
    /// the status (solid = unimodular simplex, dashed = integral, dotted =
    /// non-integral).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph refinement {\n");
        out.push_str("  rankdir=TB;\n  node [shape=box];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let style = if node.status.unimodular_simplex {
                "solid"
            } else if node.status.integral {
                "dashed"
            } else {
                "dotted"
            };
            out.push_str(&format!(
                "  n{i} [label=\"{}\", style={style}];\n",
                node.label
            ));
        }
        for &(c, f) in &self.edges {
            out.push_str(&format!("  n{c} -> n{f};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn node_by_label(&self, label: &str) -> Option<&PosetNode> {
        self.nodes.iter().find(|n| n.label == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_box_poset_is_one_unimodular_point() {
        let p = build_poset(
            &Partition::new(vec![1]).unwrap(),
            &Partition::empty(),
            &PosetOptions::default(),
        )
        .unwrap();
        assert_eq!(p.nodes.len(), 1);
        assert!(p.nodes[0].status.unimodular_simplex);
        assert!(p.edges.is_empty());
    }

    #[test]
    fn two_one_poset_statuses_match_direct_queries() {
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let p = build_poset(&lambda, &Partition::empty(), &PosetOptions::default()).unwrap();
        for node in &p.nodes {
            let spec = PolytopeSpec::weighted(
                SkewShape::straight(lambda.clone()),
                Composition::new(node.weight.clone()),
                1,
            )
            .unwrap();
            assert_eq!(spec.is_integral().unwrap(), node.status.integral);
            assert_eq!(
                is_unimodular_simplex(&spec).unwrap(),
                node.status.unimodular_simplex
            );
            assert_eq!(
                spec.lattice_points().len() as u64,
                node.status.num_lattice_points
            );
        }
    }

    #[test]
    fn covering_splits_resort_to_partitions() {
        assert_eq!(
            covering_splits(&[4, 2, 2], false),
            vec![
                vec![2, 2, 2, 2],
                vec![3, 2, 2, 1],
                vec![4, 2, 1, 1],
            ]
        );
        // composition mode keeps positions
        assert!(covering_splits(&[2, 1], true).contains(&vec![1, 1, 1]));
    }

    #[test]
    fn threads_produce_the_same_poset() {
        let lambda = Partition::new(vec![3, 1]).unwrap();
        let serial = build_poset(&lambda, &Partition::empty(), &PosetOptions::default()).unwrap();
        let parallel = build_poset(
            &lambda,
            &Partition::empty(),
            &PosetOptions {
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(serial.edges, parallel.edges);
        assert_eq!(
            serial.nodes.iter().map(|n| &n.label).collect::<Vec<_>>(),
            parallel.nodes.iter().map(|n| &n.label).collect::<Vec<_>>()
        );
    }

    #[test]
    fn dot_output_mentions_styles() {
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let p = build_poset(&lambda, &Partition::empty(), &PosetOptions::default()).unwrap();
        let dot = p.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("style=solid"));
    }
}
