use std::collections::BTreeSet;

use crate::ids::{EdgeId, NodeId};

/// A directed edge of a finite multigraph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub id: EdgeId,
    pub src: NodeId,
    pub dst: NodeId,
}

/// A finite directed multigraph. Nodes and edges are kept sorted by id, so
/// structurally equal graphs compare equal regardless of construction order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinGraph {
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
}

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(NodeId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("edge `{edge}` references unknown node `{node}`")]
    UnknownEndpoint { edge: EdgeId, node: NodeId },
}

impl FinGraph {
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (EdgeId, NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        let mut node_list: Vec<NodeId> = nodes.into_iter().collect();
        node_list.sort();
        if let Some(dup) = first_adjacent_dup(&node_list) {
            return Err(GraphError::DuplicateNode(dup.clone()));
        }
        let node_set: BTreeSet<&NodeId> = node_list.iter().collect();

        let mut edge_list: Vec<Edge> = edges
            .into_iter()
            .map(|(id, src, dst)| Edge { id, src, dst })
            .collect();
        edge_list.sort();
        for w in edge_list.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateEdge(w[0].id.clone()));
            }
        }
        for e in &edge_list {
            for end in [&e.src, &e.dst] {
                if !node_set.contains(end) {
                    return Err(GraphError::UnknownEndpoint {
                        edge: e.id.clone(),
                        node: end.clone(),
                    });
                }
            }
        }
        Ok(FinGraph {
            nodes: node_list,
            edges: edge_list,
        })
    }

    pub fn empty() -> Self {
        FinGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn has_node(&self, id: &NodeId) -> bool {
        self.nodes.binary_search(id).is_ok()
    }

    /// Same nodes, every edge reversed. Applying it twice gives back the
    /// original graph.
    pub fn reversed(&self) -> FinGraph {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                src: e.dst.clone(),
                dst: e.src.clone(),
            })
            .collect();
        edges.sort();
        FinGraph {
            nodes: self.nodes.clone(),
            edges,
        }
    }

    /// True if the graph has a directed cycle through at least one edge
    /// (a self-loop counts).
    pub fn has_directed_cycle(&self) -> bool {
        // Kahn's algorithm; leftover nodes mean a cycle.
        let mut indegree: std::collections::BTreeMap<&NodeId, usize> =
            self.nodes.iter().map(|n| (n, 0)).collect();
        for e in &self.edges {
            *indegree.get_mut(&e.dst).unwrap() += 1;
        }
        let mut queue: Vec<&NodeId> = indegree
            .iter()
            .filter(|(_, d)| **d == 0)
            .map(|(n, _)| *n)
            .collect();
        let mut seen = 0usize;
        while let Some(n) = queue.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| &e.src == n) {
                let d = indegree.get_mut(&e.dst).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push(&e.dst);
                }
            }
        }
        seen != self.nodes.len()
    }
}

fn first_adjacent_dup(sorted: &[NodeId]) -> Option<&NodeId> {
    sorted.windows(2).find(|w| w[0] == w[1]).map(|w| &w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> NodeId {
        NodeId::from(s)
    }
    fn e(s: &str) -> EdgeId {
        EdgeId::from(s)
    }

    #[test]
    fn rejects_duplicate_ids() {
        assert!(matches!(
            FinGraph::new([n("a"), n("a")], []),
            Err(GraphError::DuplicateNode(_))
        ));
        assert!(matches!(
            FinGraph::new(
                [n("a")],
                [(e("f"), n("a"), n("a")), (e("f"), n("a"), n("a"))]
            ),
            Err(GraphError::DuplicateEdge(_))
        ));
    }

    #[test]
    fn rejects_unknown_endpoint() {
        let err = FinGraph::new([n("a")], [(e("f"), n("a"), n("b"))]).unwrap_err();
        assert_eq!(
            err,
            GraphError::UnknownEndpoint {
                edge: e("f"),
                node: n("b")
            }
        );
    }

    #[test]
    fn cycle_detection() {
        let acyclic = FinGraph::new(
            [n("a"), n("b"), n("c")],
            [(e("f"), n("a"), n("b")), (e("g"), n("b"), n("c"))],
        )
        .unwrap();
        assert!(!acyclic.has_directed_cycle());

        let loop_graph = FinGraph::new([n("a")], [(e("f"), n("a"), n("a"))]).unwrap();
        assert!(loop_graph.has_directed_cycle());

        let two_cycle = FinGraph::new(
            [n("a"), n("b")],
            [(e("f"), n("a"), n("b")), (e("g"), n("b"), n("a"))],
        )
        .unwrap();
        assert!(two_cycle.has_directed_cycle());
    }

    #[test]
    fn reversal_is_involutive() {
        let g = FinGraph::new(
            [n("a"), n("b")],
            [(e("f"), n("a"), n("b")), (e("g"), n("a"), n("b"))],
        )
        .unwrap();
        assert_eq!(g.reversed().reversed(), g);
    }
}
