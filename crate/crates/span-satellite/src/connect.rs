use std::collections::BTreeMap;

use cat_core::solver::{solve_squares, Site, SquareConstraint};
use cat_core::{EdgeId, Elem, NodeId, SetFunctor};

use crate::span::SpanSchema;

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum ConnectError {
    #[error("left functor does not live on the span's source category X")]
    LeftSourceMismatch,
    #[error("right functor does not live on the span's target category Y")]
    RightSourceMismatch,
    #[error("component at node `{node}` is not a total function T(F(node)) → V(G(node))")]
    ComponentShape { node: NodeId },
    #[error("edge square fails at `{edge}`, element `{at}`")]
    EdgeSquare { edge: EdgeId, at: Elem },
}

/// An S-connecting morphism δ: T → V: a function
/// `δ(S): T(F(S)) → V(G(S))` per shape node, commuting with every shape
/// edge. Together with T and V it forms a connected pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConnectingMorphism {
    span: SpanSchema,
    left: SetFunctor,
    right: SetFunctor,
    components: BTreeMap<NodeId, BTreeMap<Elem, Elem>>,
}

impl ConnectingMorphism {
    pub fn new(
        span: SpanSchema,
        left: SetFunctor,
        right: SetFunctor,
        components: BTreeMap<NodeId, BTreeMap<Elem, Elem>>,
    ) -> Result<Self, ConnectError> {
        if left.source() != span.x_cat() {
            return Err(ConnectError::LeftSourceMismatch);
        }
        if right.source() != span.y_cat() {
            return Err(ConnectError::RightSourceMismatch);
        }
        for node in span.shape().nodes() {
            let table = components
                .get(node)
                .ok_or_else(|| ConnectError::ComponentShape { node: node.clone() })?;
            let dom = left.set(span.left().on_node(node));
            let cod = right.set(span.right().on_node(node));
            if table.len() != dom.len() {
                return Err(ConnectError::ComponentShape { node: node.clone() });
            }
            for elem in dom {
                match table.get(elem) {
                    Some(v) if cod.binary_search(v).is_ok() => {}
                    _ => return Err(ConnectError::ComponentShape { node: node.clone() }),
                }
            }
        }
        for edge in span.shape().edges() {
            let pre = left.arrow_fn(span.left().on_edge(&edge.id));
            let post = right.arrow_fn(span.right().on_edge(&edge.id));
            let c_src = &components[&edge.src];
            let c_dst = &components[&edge.dst];
            for elem in left.set(span.left().on_node(&edge.src)) {
                if c_dst[&pre[elem]] != post[&c_src[elem]] {
                    return Err(ConnectError::EdgeSquare {
                        edge: edge.id.clone(),
                        at: elem.clone(),
                    });
                }
            }
        }
        Ok(ConnectingMorphism {
            span,
            left,
            right,
            components,
        })
    }

    pub fn span(&self) -> &SpanSchema {
        &self.span
    }

    /// T, the functor on X.
    pub fn left_functor(&self) -> &SetFunctor {
        &self.left
    }

    /// V, the functor on Y.
    pub fn right_functor(&self) -> &SetFunctor {
        &self.right
    }

    pub fn component(&self, node: &NodeId) -> &BTreeMap<Elem, Elem> {
        &self.components[node]
    }

    pub fn components(&self) -> &BTreeMap<NodeId, BTreeMap<Elem, Elem>> {
        &self.components
    }

    pub fn apply(&self, node: &NodeId, elem: &Elem) -> &Elem {
        &self.components[node][elem]
    }
}

/// All connecting morphisms from T to V over the span, by backtracking over
/// shape nodes with edge-square propagation. Canonical order.
pub fn connecting_morphisms(
    span: &SpanSchema,
    left: &SetFunctor,
    right: &SetFunctor,
) -> Vec<ConnectingMorphism> {
    assert_eq!(
        left.source(),
        span.x_cat(),
        "connecting_morphisms: T must live on X"
    );
    assert_eq!(
        right.source(),
        span.y_cat(),
        "connecting_morphisms: V must live on Y"
    );
    let nodes = span.shape().nodes().to_vec();
    let site_index: BTreeMap<&NodeId, usize> =
        nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let sites: Vec<Site> = nodes
        .iter()
        .map(|n| Site {
            key: n.as_str().to_owned(),
            domain: left.set(span.left().on_node(n)).to_vec(),
            codomain: right.set(span.right().on_node(n)).to_vec(),
        })
        .collect();
    let constraints: Vec<SquareConstraint> = span
        .shape()
        .edges()
        .iter()
        .map(|e| SquareConstraint {
            src: site_index[&e.src],
            dst: site_index[&e.dst],
            pre: left.arrow_fn(span.left().on_edge(&e.id)).clone(),
            post: right.arrow_fn(span.right().on_edge(&e.id)).clone(),
        })
        .collect();

    solve_squares(&sites, &constraints)
        .into_iter()
        .map(|tables| {
            let components = nodes.iter().cloned().zip(tables).collect();
            ConnectingMorphism::new(span.clone(), left.clone(), right.clone(), components)
                .expect("solver output satisfies the edge squares")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::fixtures::{e1_span, el, t2};
    use cat_core::SetFunctor;
    use std::sync::Arc;

    #[test]
    fn constant_singleton_target_has_exactly_one() {
        let span = e1_span();
        let t = t2();
        let v = SetFunctor::constant(Arc::clone(span.y_cat()), vec![el("*")]);
        let all = connecting_morphisms(&span, &t, &v);
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn edgeless_shape_gives_full_product() {
        // Shape with two nodes, no edges, both mapped to p and star.
        use cat_core::{Diagram, FinGraph, NodeId, ObjId};
        use std::collections::BTreeMap;

        let x = crate::span::fixtures::parallel_pair_cat();
        let y = cat_core::FinCat::terminal("star");
        let shape = Arc::new(
            FinGraph::new([NodeId::from("m"), NodeId::from("n")], []).unwrap(),
        );
        let f = Diagram::new(
            Arc::clone(&shape),
            Arc::clone(&x),
            BTreeMap::from([
                (NodeId::from("m"), ObjId::from("p")),
                (NodeId::from("n"), ObjId::from("p")),
            ]),
            BTreeMap::new(),
        )
        .unwrap();
        let g = Diagram::constant(Arc::clone(&shape), Arc::clone(&y), &ObjId::from("star")).unwrap();
        let span = crate::span::build_span(shape, f, g).unwrap();

        let t = t2();
        let v = SetFunctor::constant(Arc::clone(&y), vec![el("0"), el("1")]);
        // Each node contributes |{0,1}|^|T2(p)| = 4 independent functions.
        assert_eq!(connecting_morphisms(&span, &t, &v).len(), 16);
    }

    #[test]
    fn e1_with_two_element_target_matches_blind_filter() {
        let span = e1_span();
        let t = t2();
        let v = SetFunctor::constant(Arc::clone(span.y_cat()), vec![el("0"), el("1")]);
        let fast = connecting_morphisms(&span, &t, &v);

        // Blind oracle: all 2^2 × 2^3 component families, filtered by the two
        // edge squares by hand.
        let p_tables: Vec<BTreeMap<Elem, Elem>> = {
            let mut out = Vec::new();
            for a in ["0", "1"] {
                for b in ["0", "1"] {
                    out.push(BTreeMap::from([
                        (el("0"), el(a)),
                        (el("1"), el(b)),
                    ]));
                }
            }
            out
        };
        let q_tables: Vec<BTreeMap<Elem, Elem>> = {
            let mut out = Vec::new();
            for a in ["0", "1"] {
                for b in ["0", "1"] {
                    for c in ["0", "1"] {
                        out.push(BTreeMap::from([
                            (el("x"), el(a)),
                            (el("y"), el(b)),
                            (el("z"), el(c)),
                        ]));
                    }
                }
            }
            out
        };
        let mut slow = Vec::new();
        for cp in &p_tables {
            for cq in &q_tables {
                // squares: cq(T2(u)(t)) = cp(t) and cq(T2(v)(t)) = cp(t)
                let ok_u = cq[&el("x")] == cp[&el("0")] && cq[&el("y")] == cp[&el("1")];
                let ok_v = cq[&el("x")] == cp[&el("0")] && cq[&el("z")] == cp[&el("1")];
                if ok_u && ok_v {
                    slow.push((cp.clone(), cq.clone()));
                }
            }
        }
        assert_eq!(fast.len(), slow.len());
        assert_eq!(fast.len(), 4);
        for cm in &fast {
            let pair = (
                cm.component(&"n_p".into()).clone(),
                cm.component(&"n_q".into()).clone(),
            );
            assert!(slow.contains(&pair));
        }
    }

    #[test]
    fn broken_square_rejected_by_constructor() {
        let span = e1_span();
        let t = t2();
        let v = SetFunctor::constant(Arc::clone(span.y_cat()), vec![el("0"), el("1")]);
        let components = BTreeMap::from([
            (
                NodeId::from("n_p"),
                BTreeMap::from([(el("0"), el("0")), (el("1"), el("1"))]),
            ),
            (
                NodeId::from("n_q"),
                BTreeMap::from([
                    (el("x"), el("1")), // should be 0 to commute with e_u at t=0
                    (el("y"), el("1")),
                    (el("z"), el("1")),
                ]),
            ),
        ]);
        let err = ConnectingMorphism::new(span, t, v, components).unwrap_err();
        assert!(matches!(err, ConnectError::EdgeSquare { .. }));
    }

    use cat_core::NodeId;
}
