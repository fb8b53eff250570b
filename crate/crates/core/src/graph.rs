//! Exchange graphs, acyclicity, source-mutation twists and variable inventories.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{GraphError, SeedError};
use crate::qtorus::TorusElement;
use crate::seed::{canonicalize, CanonicalKey, ExchangeMatrix, QuantumSeed};

/// Seeds reachable from a root, deduplicated by canonical key.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    /// Canonical representative of each node.
    pub nodes: BTreeMap<CanonicalKey, QuantumSeed>,
    /// `(u, k, w)`: mutating the representative of `u` at `k` gives `w`.
    pub edges: BTreeSet<(CanonicalKey, usize, CanonicalKey)>,
    pub root: CanonicalKey,
    pub depth: BTreeMap<CanonicalKey, usize>,
}

struct Step {
    parent: CanonicalKey,
    k: usize,
    child: CanonicalKey,
    seed: QuantumSeed,
    back: usize,
}

/// Breadth-first closure under mutation up to `depth` steps.
pub fn explore(root: &QuantumSeed, depth: usize) -> Result<ExchangeGraph, GraphError> {
    let (root_key, root_seed, _) = canonicalize(root);
    let m = root.mutable_count();
    let mut graph = ExchangeGraph {
        nodes: BTreeMap::from([(root_key.clone(), root_seed)]),
        edges: BTreeSet::new(),
        root: root_key.clone(),
        depth: BTreeMap::from([(root_key.clone(), 0)]),
    };
    let mut frontier = vec![root_key];
    for level in 0..depth {
        let steps: Vec<Step> = frontier
            .par_iter()
            .flat_map_iter(|key| (0..m).map(move |k| (key, k)))
            .map(|(key, k)| -> Result<Step, SeedError> {
                let child = graph.nodes[key].mutate(k)?;
                let (child_key, rep, perm) = canonicalize(&child);
                let back = perm.iter().position(|&p| p == k).expect("permutation covers k");
                Ok(Step {
                    parent: key.clone(),
                    k,
                    child: child_key,
                    seed: rep,
                    back,
                })
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for step in steps {
            graph.edges.insert((step.parent.clone(), step.k, step.child.clone()));
            graph.edges.insert((step.child.clone(), step.back, step.parent));
            if !graph.nodes.contains_key(&step.child) {
                graph.depth.insert(step.child.clone(), level + 1);
                graph.nodes.insert(step.child.clone(), step.seed);
                next.push(step.child);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(graph)
}

impl ExchangeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of nodes first reached at each depth.
    pub fn level_sizes(&self) -> Vec<usize> {
        let top = self.depth.values().copied().max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for d in self.depth.values() {
            out[*d] += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let nodes: serde_json::Map<String, Value> = self
            .nodes
            .iter()
            .map(|(k, s)| (k.0.clone(), s.to_json()))
            .collect();
        let depth: serde_json::Map<String, Value> =
            self.depth.iter().map(|(k, d)| (k.0.clone(), json!(d))).collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(a, k, b)| json!([a.0, k + 1, b.0]))
            .collect();
        json!({
            "root": self.root.0,
            "nodes": nodes,
            "depth": depth,
            "edges": edges,
            "inventory": variable_inventory(self).iter().map(TorusElement::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Source-first topological order of the mutable quiver (lowest index among
/// available sources first), or `None` when the quiver has an oriented cycle.
pub fn acyclic_order(b: &ExchangeMatrix) -> Option<Vec<usize>> {
    let m = b.mutable_count();
    let mut indeg: Vec<i64> = (0..m)
        .map(|i| (0..m).filter(|&j| b.get(j, i) > 0).count() as i64)
        .collect();
    let mut done = vec![false; m];
    let mut order = Vec::with_capacity(m);
    while order.len() < m {
        let i = (0..m).find(|&i| !done[i] && indeg[i] == 0)?;
        done[i] = true;
        order.push(i);
        for j in 0..m {
            if b.get(i, j) > 0 {
                indeg[j] -= 1;
            }
        }
    }
    Some(order)
}

pub fn is_acyclic(seed: &QuantumSeed) -> Option<Vec<usize>> {
    acyclic_order(seed.exchange())
}

/// Mutates once at every mutable vertex, always at the lowest-index current
/// source not yet used.
pub fn twist(seed: &QuantumSeed) -> Result<(QuantumSeed, Vec<usize>), GraphError> {
    if is_acyclic(seed).is_none() {
        return Err(GraphError::Cyclic);
    }
    let m = seed.mutable_count();
    let mut used = vec![false; m];
    let mut seq = Vec::with_capacity(m);
    let mut cur = seed.clone();
    while seq.len() < m {
        let b = cur.exchange();
        let i = (0..m)
            .find(|&i| !used[i] && b.is_source(i))
            .ok_or(GraphError::Cyclic)?;
        cur = cur.mutate(i)?;
        used[i] = true;
        seq.push(i);
    }
    Ok((cur, seq))
}

/// Distinct cluster variables of the graph in fingerprint order.
pub fn variable_inventory(graph: &ExchangeGraph) -> Vec<TorusElement> {
    let mut seen: BTreeMap<String, TorusElement> = BTreeMap::new();
    for seed in graph.nodes.values() {
        for v in seed.variables() {
            seen.entry(v.fingerprint()).or_insert_with(|| v.clone());
        }
    }
    seen.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::SkewForm;

    fn seed(b: &[Vec<i64>], l: &[Vec<i64>]) -> QuantumSeed {
        let n = l.len();
        QuantumSeed::initial(
            SkewForm::new(l).unwrap(),
            ExchangeMatrix::new(b).unwrap(),
            (0..n).map(|i| format!("x{}", i + 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn a2_pentagon() {
        let s = seed(&[vec![0, 1], vec![-1, 0]], &[vec![0, 1], vec![-1, 0]]);
        let g = explore(&s, 5).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(variable_inventory(&g).len(), 5);
        let g6 = explore(&s, 6).unwrap();
        assert_eq!(g6.node_count(), 5);
    }

    #[test]
    fn rank_one() {
        let s = seed(&[vec![0]], &[vec![0]]);
        assert_eq!(explore(&s, 3).unwrap().node_count(), 2);
        let s = seed(&[vec![0], vec![1]], &[vec![0, -1], vec![1, 0]]);
        assert_eq!(explore(&s, 3).unwrap().node_count(), 2);
    }

    #[test]
    fn acyclicity() {
        let chain = ExchangeMatrix::new(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        assert_eq!(acyclic_order(&chain), Some(vec![0, 1, 2]));
        let cyc = ExchangeMatrix::new(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        assert_eq!(acyclic_order(&cyc), None);
    }

    #[test]
    fn depth_zero_inventory_is_root() {
        let s = seed(&[vec![0, 1], vec![-1, 0]], &[vec![0, 1], vec![-1, 0]]);
        let g = explore(&s, 0).unwrap();
        assert_eq!(g.node_count(), 1);
        let inv = variable_inventory(&g);
        assert_eq!(inv.len(), 2);
        assert!(s.variables().iter().all(|v| inv.contains(v)));
    }
}
