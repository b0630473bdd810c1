use std::sync::Arc;

use cat_core::{opposite_category, Diagram, EdgeId, FinCat, FinGraph, NodeId};

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum SpanError {
    #[error("left diagram is not defined on the span shape")]
    LeftShapeMismatch,
    #[error("right diagram is not defined on the span shape")]
    RightShapeMismatch,
    #[error("edge `{edge}` endpoint check failed in the {side} diagram")]
    EndpointMismatch { side: &'static str, edge: EdgeId },
}

/// A span schema: a shape graph `S` with two diagrams `F: S → X` and
/// `G: S → Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanSchema {
    shape: Arc<FinGraph>,
    left: Diagram,
    right: Diagram,
}

impl SpanSchema {
    pub fn shape(&self) -> &Arc<FinGraph> {
        &self.shape
    }

    /// The diagram F into X.
    pub fn left(&self) -> &Diagram {
        &self.left
    }

    /// The diagram G into Y.
    pub fn right(&self) -> &Diagram {
        &self.right
    }

    pub fn x_cat(&self) -> &Arc<FinCat> {
        self.left.target()
    }

    pub fn y_cat(&self) -> &Arc<FinCat> {
        self.right.target()
    }
}

/// Assembles a span schema, re-checking that both diagrams are defined on
/// `shape` and that every edge image has the endpoints demanded by the node
/// images.
pub fn build_span(
    shape: Arc<FinGraph>,
    left: Diagram,
    right: Diagram,
) -> Result<SpanSchema, SpanError> {
    if left.source().as_ref() != shape.as_ref() {
        return Err(SpanError::LeftShapeMismatch);
    }
    if right.source().as_ref() != shape.as_ref() {
        return Err(SpanError::RightShapeMismatch);
    }
    for (side, diagram) in [("left", &left), ("right", &right)] {
        let cat = diagram.target();
        for edge in shape.edges() {
            let mor = diagram.on_edge(&edge.id);
            let info = cat.mor(mor).expect("diagram images are known morphisms");
            if &info.dom != diagram.on_node(&edge.src) || &info.cod != diagram.on_node(&edge.dst) {
                return Err(SpanError::EndpointMismatch {
                    side,
                    edge: edge.id.clone(),
                });
            }
        }
    }
    Ok(SpanSchema { shape, left, right })
}

/// The identity span on a category: the shape is the underlying graph and
/// both diagrams are the inclusion.
pub fn identity_span(cat: &Arc<FinCat>) -> SpanSchema {
    let (shape, inclusion) = Diagram::identity_inclusion(cat);
    SpanSchema {
        shape,
        left: inclusion.clone(),
        right: inclusion,
    }
}

/// The structural dual: shape edges reversed, the old right diagram becomes
/// the left diagram into Y°, the old left becomes the right into X°.
/// Involutive.
pub fn opposite_span(span: &SpanSchema) -> SpanSchema {
    let shape = Arc::new(span.shape.reversed());
    let flip = |d: &Diagram| -> Diagram {
        let target = Arc::new(opposite_category(d.target()));
        Diagram::new(
            Arc::clone(&shape),
            target,
            d.node_map().clone(),
            d.edge_map().clone(),
        )
        .expect("reversing both the shape and the category preserves endpoints")
    };
    SpanSchema {
        shape: Arc::clone(&shape),
        left: flip(&span.right),
        right: flip(&span.left),
    }
}

/// Test and generator fixtures shared across the crate.
pub mod fixtures {
    use super::*;
    use cat_core::{free_category, Elem, MorId, ObjId, SetFunctor};
    use std::collections::BTreeMap;

    pub fn el(s: &str) -> Elem {
        Elem::from(s)
    }

    /// free(p ⇉ q) with edges u, v.
    pub fn parallel_pair_cat() -> Arc<FinCat> {
        let g = FinGraph::new(
            [NodeId::from("p"), NodeId::from("q")],
            [
                (EdgeId::from("u"), NodeId::from("p"), NodeId::from("q")),
                (EdgeId::from("v"), NodeId::from("p"), NodeId::from("q")),
            ],
        )
        .unwrap();
        Arc::new(free_category(&g).unwrap())
    }

    /// T2 on free(p⇉q): p ↦ {0,1}, q ↦ {x,y,z}, u = (0↦x,1↦y), v = (0↦x,1↦z).
    pub fn t2() -> SetFunctor {
        let cat = parallel_pair_cat();
        SetFunctor::new(
            Arc::clone(&cat),
            [
                (ObjId::from("p"), vec![el("0"), el("1")]),
                (ObjId::from("q"), vec![el("x"), el("y"), el("z")]),
            ]
            .into(),
            [
                (
                    MorId::from("id(p)"),
                    [(el("0"), el("0")), (el("1"), el("1"))].into(),
                ),
                (
                    MorId::from("id(q)"),
                    [(el("x"), el("x")), (el("y"), el("y")), (el("z"), el("z"))].into(),
                ),
                (
                    MorId::from("u"),
                    [(el("0"), el("x")), (el("1"), el("y"))].into(),
                ),
                (
                    MorId::from("v"),
                    [(el("0"), el("x")), (el("1"), el("z"))].into(),
                ),
            ]
            .into(),
        )
        .unwrap()
    }

    /// The E1 span: shape n_p ⇉ n_q (edges e_u, e_v), F the evident
    /// inclusion into free(p⇉q), G constant at the terminal category.
    pub fn e1_span() -> SpanSchema {
        let x = parallel_pair_cat();
        let y = FinCat::terminal("star");
        let shape = Arc::new(
            FinGraph::new(
                [NodeId::from("n_p"), NodeId::from("n_q")],
                [
                    (EdgeId::from("e_u"), NodeId::from("n_p"), NodeId::from("n_q")),
                    (EdgeId::from("e_v"), NodeId::from("n_p"), NodeId::from("n_q")),
                ],
            )
            .unwrap(),
        );
        let f = Diagram::new(
            Arc::clone(&shape),
            Arc::clone(&x),
            BTreeMap::from([
                (NodeId::from("n_p"), ObjId::from("p")),
                (NodeId::from("n_q"), ObjId::from("q")),
            ]),
            BTreeMap::from([
                (EdgeId::from("e_u"), MorId::from("u")),
                (EdgeId::from("e_v"), MorId::from("v")),
            ]),
        )
        .unwrap();
        let g = Diagram::constant(Arc::clone(&shape), y, &ObjId::from("star")).unwrap();
        build_span(shape, f, g).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use cat_core::{Diagram, FinCat, MorId, ObjId};
    use std::collections::BTreeMap;

    #[test]
    fn identity_span_over_terminal_is_self_opposite_up_to_involution() {
        let t = FinCat::terminal("star");
        let s = identity_span(&t);
        let op = opposite_span(&s);
        assert_eq!(opposite_span(&op), s);
        // The terminal category is its own opposite, so the whole span is fixed.
        assert_eq!(op, s);
    }

    #[test]
    fn opposite_span_is_involutive_on_e1() {
        let s = e1_span();
        assert_eq!(opposite_span(&opposite_span(&s)), s);
    }

    #[test]
    fn opposite_span_reverses_edges() {
        let s = e1_span();
        let op = opposite_span(&s);
        let edge = op.shape().edge(&"e_u".into()).unwrap();
        assert_eq!(edge.src.as_str(), "n_q");
        assert_eq!(edge.dst.as_str(), "n_p");
        // Left of the opposite is the old right, into the opposite category.
        assert_eq!(
            op.left().on_node(&"n_p".into()),
            s.right().on_node(&"n_p".into())
        );
    }

    #[test]
    fn mismatched_edge_image_is_rejected() {
        let x = parallel_pair_cat();
        let shape = Arc::new(
            cat_core::FinGraph::new(
                [cat_core::NodeId::from("n")],
                [(
                    cat_core::EdgeId::from("e"),
                    cat_core::NodeId::from("n"),
                    cat_core::NodeId::from("n"),
                )],
            )
            .unwrap(),
        );
        // u: p→q cannot be the image of a loop at p.
        let err = Diagram::new(
            Arc::clone(&shape),
            Arc::clone(&x),
            BTreeMap::from([(cat_core::NodeId::from("n"), ObjId::from("p"))]),
            BTreeMap::from([(cat_core::EdgeId::from("e"), MorId::from("u"))]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            cat_core::DiagramError::EndpointMismatch { .. }
        ));
    }

    #[test]
    fn e1_span_builds() {
        let s = e1_span();
        assert_eq!(s.shape().nodes().len(), 2);
        assert_eq!(s.x_cat().objects().len(), 2);
        assert_eq!(s.y_cat().objects().len(), 1);
    }
}
