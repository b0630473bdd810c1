use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{CatError, FinCat};
use crate::graph::FinGraph;
use crate::ids::{EdgeId, Elem, MorId, NodeId, ObjId};
use crate::set_functor::{SetFunctor, SetFunctorError};

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum FreeCatError {
    #[error("graph has a directed cycle; its free category would be infinite")]
    CyclicGraph,
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// The free (path) category on an acyclic graph, remembering how each
/// morphism decomposes into generating edges. The decomposition is what lets
/// callers define functors on generators only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeCategory {
    pub cat: Arc<FinCat>,
    /// Morphism id → (start node, edge sequence in traversal order).
    /// Identities have an empty edge sequence.
    pub paths: BTreeMap<MorId, (NodeId, Vec<EdgeId>)>,
}

/// `id(<node>)` for empty paths, otherwise edge ids joined right-to-left
/// with `.` so that the name reads as a composite: the path a --f--> b --g--> c
/// is named `g.f`.
pub fn path_mor_id(start: &NodeId, edges: &[EdgeId]) -> MorId {
    if edges.is_empty() {
        MorId::new(format!("id({})", start))
    } else {
        let names: Vec<&str> = edges.iter().rev().map(|e| e.as_str()).collect();
        MorId::new(names.join("."))
    }
}

impl FreeCategory {
    pub fn build(graph: &FinGraph) -> Result<Self, FreeCatError> {
        if graph.has_directed_cycle() {
            return Err(FreeCatError::CyclicGraph);
        }

        // Enumerate every directed path, including the empty path at each node.
        let mut paths: Vec<(NodeId, Vec<EdgeId>, NodeId)> = graph
            .nodes()
            .iter()
            .map(|n| (n.clone(), Vec::new(), n.clone()))
            .collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (start, edges, end) in &frontier {
                for e in graph.edges().iter().filter(|e| e.src == *end) {
                    let mut extended = edges.clone();
                    extended.push(e.id.clone());
                    next.push((start.clone(), extended, e.dst.clone()));
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }

        let mut path_table: BTreeMap<MorId, (NodeId, Vec<EdgeId>)> = BTreeMap::new();
        let mut by_route: BTreeMap<(NodeId, Vec<EdgeId>), MorId> = BTreeMap::new();
        let mut morphisms = Vec::new();
        for (start, edges, end) in &paths {
            let id = path_mor_id(start, edges);
            path_table.insert(id.clone(), (start.clone(), edges.clone()));
            by_route.insert((start.clone(), edges.clone()), id.clone());
            morphisms.push((
                id,
                ObjId::new(start.as_str()),
                ObjId::new(end.as_str()),
            ));
        }

        let identity = graph.nodes().iter().map(|n| {
            (
                ObjId::new(n.as_str()),
                path_mor_id(n, &[]),
            )
        });

        let mut compose = Vec::new();
        for (f_start, f_edges, f_end) in &paths {
            for (g_start, g_edges, _) in &paths {
                if g_start != f_end {
                    continue;
                }
                let mut combined = f_edges.clone();
                combined.extend(g_edges.iter().cloned());
                let composite = by_route
                    .get(&(f_start.clone(), combined))
                    .expect("concatenated path was enumerated");
                compose.push((
                    (
                        path_mor_id(g_start, g_edges),
                        path_mor_id(f_start, f_edges),
                    ),
                    composite.clone(),
                ));
            }
        }

        let cat = FinCat::new(
            graph.nodes().iter().map(|n| ObjId::new(n.as_str())),
            morphisms,
            identity,
            compose,
        )?;
        Ok(FreeCategory {
            cat: Arc::new(cat),
            paths: path_table,
        })
    }

    /// The generating edges of a morphism, in application order.
    pub fn generators_of(&self, mor: &MorId) -> Option<&(NodeId, Vec<EdgeId>)> {
        self.paths.get(mor)
    }

    /// Builds a set-valued functor from element sets plus functions on the
    /// generating edges only. Identities and composite paths are induced, so
    /// the result always satisfies the functor laws.
    pub fn set_functor_on_generators(
        &self,
        object_sets: BTreeMap<ObjId, Vec<Elem>>,
        edge_fns: &BTreeMap<EdgeId, BTreeMap<Elem, Elem>>,
    ) -> Result<SetFunctor, SetFunctorError> {
        let mut arrow_fns = BTreeMap::new();
        for (mor, (start, edges)) in &self.paths {
            let start_obj = ObjId::new(start.as_str());
            let start_set = object_sets
                .get(&start_obj)
                .ok_or_else(|| SetFunctorError::MissingObjectSet(start_obj.clone()))?;
            let mut table: BTreeMap<Elem, Elem> = start_set
                .iter()
                .map(|e| (e.clone(), e.clone()))
                .collect();
            for edge in edges {
                let step = edge_fns
                    .get(edge)
                    .ok_or_else(|| SetFunctorError::MissingArrowFn(MorId::new(edge.as_str())))?;
                for value in table.values_mut() {
                    *value = step
                        .get(value)
                        .ok_or_else(|| SetFunctorError::NotTotal {
                            mor: mor.clone(),
                            elem: value.clone(),
                        })?
                        .clone();
                }
            }
            arrow_fns.insert(mor.clone(), table);
        }
        SetFunctor::new(Arc::clone(&self.cat), object_sets, arrow_fns)
    }
}

/// The free category on an acyclic graph: objects are nodes, morphisms are
/// directed paths (identities are the empty paths), composition is path
/// concatenation.
pub fn free_category(graph: &FinGraph) -> Result<FinCat, FreeCatError> {
    FreeCategory::build(graph).map(|f| (*f.cat).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;

    fn n(s: &str) -> NodeId {
        NodeId::from(s)
    }
    fn e(s: &str) -> EdgeId {
        EdgeId::from(s)
    }

    /// Brute-force path counter, independent of the construction above:
    /// depth-first extension of partial paths.
    fn count_paths(graph: &FinGraph) -> usize {
        fn extend(graph: &FinGraph, end: &NodeId) -> usize {
            let mut total = 1; // the path ending here
            for edge in graph.edges().iter().filter(|edge| &edge.src == end) {
                total += extend(graph, &edge.dst);
            }
            total
        }
        graph.nodes().iter().map(|s| extend(graph, s)).sum()
    }

    #[test]
    fn single_node_gives_terminal() {
        let g = FinGraph::new([n("x")], []).unwrap();
        let c = free_category(&g).unwrap();
        assert_eq!(c.objects().len(), 1);
        assert_eq!(c.morphisms().len(), 1);
        assert!(validate_category(&c).is_empty());
    }

    #[test]
    fn parallel_pair_has_four_morphisms() {
        let g = FinGraph::new(
            [n("p"), n("q")],
            [(e("u"), n("p"), n("q")), (e("v"), n("p"), n("q"))],
        )
        .unwrap();
        let c = free_category(&g).unwrap();
        assert_eq!(c.morphisms().len(), 4);
        assert!(validate_category(&c).is_empty());
        let ids: Vec<&str> = c.morphisms().iter().map(|m| m.id.as_str()).collect();
        assert_eq!(ids, vec!["id(p)", "id(q)", "u", "v"]);
    }

    #[test]
    fn chain_morphism_count_matches_path_oracle() {
        let g = FinGraph::new(
            [n("a"), n("b"), n("c")],
            [(e("f"), n("a"), n("b")), (e("g"), n("b"), n("c"))],
        )
        .unwrap();
        let c = free_category(&g).unwrap();
        assert_eq!(c.morphisms().len(), 6);
        assert_eq!(c.morphisms().len(), count_paths(&g));
        assert!(validate_category(&c).is_empty());
        let gf = c
            .compose(&MorId::from("g"), &MorId::from("f"))
            .expect("f then g composes");
        assert_eq!(gf.as_str(), "g.f");
    }

    #[test]
    fn cyclic_graph_is_rejected() {
        let g = FinGraph::new([n("a")], [(e("f"), n("a"), n("a"))]).unwrap();
        assert_eq!(free_category(&g).unwrap_err(), FreeCatError::CyclicGraph);
    }

    #[test]
    fn morphism_count_matches_path_oracle_on_diamond() {
        let g = FinGraph::new(
            [n("a"), n("b"), n("c"), n("d")],
            [
                (e("f"), n("a"), n("b")),
                (e("g"), n("a"), n("c")),
                (e("h"), n("b"), n("d")),
                (e("k"), n("c"), n("d")),
            ],
        )
        .unwrap();
        let c = free_category(&g).unwrap();
        assert_eq!(c.morphisms().len(), count_paths(&g));
        assert!(validate_category(&c).is_empty());
    }
}
