use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::FinCat;
use crate::graph::FinGraph;
use crate::ids::{EdgeId, MorId, NodeId, ObjId};

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum DiagramError {
    #[error("no object assigned to node `{0}`")]
    MissingNode(NodeId),
    #[error("no morphism assigned to edge `{0}`")]
    MissingEdge(EdgeId),
    #[error("node `{node}` maps to unknown object `{obj}`")]
    UnknownObject { node: NodeId, obj: ObjId },
    #[error("edge `{edge}` maps to unknown morphism `{mor}`")]
    UnknownMorphism { edge: EdgeId, mor: MorId },
    #[error("edge `{edge}` maps to `{mor}`, whose endpoints disagree with the node images")]
    EndpointMismatch { edge: EdgeId, mor: MorId },
}

/// A graph morphism from a finite graph into (the underlying graph of) a
/// category: nodes go to objects, edges go to morphisms with the matching
/// endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    source: Arc<FinGraph>,
    target: Arc<FinCat>,
    node_map: BTreeMap<NodeId, ObjId>,
    edge_map: BTreeMap<EdgeId, MorId>,
}

impl Diagram {
    pub fn new(
        source: Arc<FinGraph>,
        target: Arc<FinCat>,
        node_map: BTreeMap<NodeId, ObjId>,
        edge_map: BTreeMap<EdgeId, MorId>,
    ) -> Result<Self, DiagramError> {
        for node in source.nodes() {
            let obj = node_map
                .get(node)
                .ok_or_else(|| DiagramError::MissingNode(node.clone()))?;
            if !target.has_object(obj) {
                return Err(DiagramError::UnknownObject {
                    node: node.clone(),
                    obj: obj.clone(),
                });
            }
        }
        for edge in source.edges() {
            let mor = edge_map
                .get(&edge.id)
                .ok_or_else(|| DiagramError::MissingEdge(edge.id.clone()))?;
            let info = target.mor(mor).ok_or_else(|| DiagramError::UnknownMorphism {
                edge: edge.id.clone(),
                mor: mor.clone(),
            })?;
            if Some(&info.dom) != node_map.get(&edge.src) || Some(&info.cod) != node_map.get(&edge.dst)
            {
                return Err(DiagramError::EndpointMismatch {
                    edge: edge.id.clone(),
                    mor: mor.clone(),
                });
            }
        }
        Ok(Diagram {
            source,
            target,
            node_map,
            edge_map,
        })
    }

    /// The inclusion of a category's underlying graph back into the category.
    pub fn identity_inclusion(cat: &Arc<FinCat>) -> (Arc<FinGraph>, Diagram) {
        let graph = Arc::new(cat.underlying_graph());
        let node_map = cat
            .objects()
            .iter()
            .map(|o| (NodeId::new(o.as_str()), o.clone()))
            .collect();
        let edge_map = cat
            .morphisms()
            .iter()
            .map(|m| (EdgeId::new(m.id.as_str()), m.id.clone()))
            .collect();
        let diagram = Diagram::new(Arc::clone(&graph), Arc::clone(cat), node_map, edge_map)
            .expect("inclusion endpoints match by construction");
        (graph, diagram)
    }

    /// The constant diagram at one object: every node to `obj`, every edge to
    /// its identity.
    pub fn constant(
        source: Arc<FinGraph>,
        target: Arc<FinCat>,
        obj: &ObjId,
    ) -> Result<Self, DiagramError> {
        let id_mor = target
            .identity_of(obj)
            .ok_or_else(|| DiagramError::UnknownObject {
                node: NodeId::new("<constant>"),
                obj: obj.clone(),
            })?
            .clone();
        let node_map = source
            .nodes()
            .iter()
            .map(|n| (n.clone(), obj.clone()))
            .collect();
        let edge_map = source
            .edges()
            .iter()
            .map(|e| (e.id.clone(), id_mor.clone()))
            .collect();
        Diagram::new(source, target, node_map, edge_map)
    }

    pub fn source(&self) -> &Arc<FinGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn on_node(&self, node: &NodeId) -> &ObjId {
        &self.node_map[node]
    }

    pub fn on_edge(&self, edge: &EdgeId) -> &MorId {
        &self.edge_map[edge]
    }

    pub fn node_map(&self) -> &BTreeMap<NodeId, ObjId> {
        &self.node_map
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, MorId> {
        &self.edge_map
    }
}

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum CatFunctorError {
    #[error("no image assigned to object `{0}`")]
    MissingObject(ObjId),
    #[error("no image assigned to morphism `{0}`")]
    MissingMorphism(MorId),
    #[error("object `{obj}` maps to unknown object `{image}`")]
    UnknownObjectImage { obj: ObjId, image: ObjId },
    #[error("morphism `{mor}` maps to unknown morphism `{image}`")]
    UnknownMorphismImage { mor: MorId, image: MorId },
    #[error("image of `{mor}` has endpoints disagreeing with the object images")]
    EndpointMismatch { mor: MorId },
    #[error("identity of `{obj}` does not map to the identity of its image")]
    IdentityNotPreserved { obj: ObjId },
    #[error("composition not preserved on the pair ({g}, {f})")]
    CompositionNotPreserved { g: MorId, f: MorId },
}

/// A functor between finite categories, given by explicit object and
/// morphism tables. The constructor checks all functor laws.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    object_map: BTreeMap<ObjId, ObjId>,
    morphism_map: BTreeMap<MorId, MorId>,
}

impl CatFunctor {
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        object_map: BTreeMap<ObjId, ObjId>,
        morphism_map: BTreeMap<MorId, MorId>,
    ) -> Result<Self, CatFunctorError> {
        for obj in source.objects() {
            let image = object_map
                .get(obj)
                .ok_or_else(|| CatFunctorError::MissingObject(obj.clone()))?;
            if !target.has_object(image) {
                return Err(CatFunctorError::UnknownObjectImage {
                    obj: obj.clone(),
                    image: image.clone(),
                });
            }
        }
        for m in source.morphisms() {
            let image = morphism_map
                .get(&m.id)
                .ok_or_else(|| CatFunctorError::MissingMorphism(m.id.clone()))?;
            let info = target
                .mor(image)
                .ok_or_else(|| CatFunctorError::UnknownMorphismImage {
                    mor: m.id.clone(),
                    image: image.clone(),
                })?;
            if Some(&info.dom) != object_map.get(&m.dom) || Some(&info.cod) != object_map.get(&m.cod)
            {
                return Err(CatFunctorError::EndpointMismatch { mor: m.id.clone() });
            }
        }
        for obj in source.objects() {
            let id_src = source.identity_of(obj).expect("identity total");
            let id_dst = target
                .identity_of(&object_map[obj])
                .expect("identity total");
            if morphism_map.get(id_src) != Some(id_dst) {
                return Err(CatFunctorError::IdentityNotPreserved { obj: obj.clone() });
            }
        }
        for ((g, f), h) in source.composition_table() {
            let image_h = target.compose(&morphism_map[g], &morphism_map[f]);
            if image_h != Some(&morphism_map[h]) {
                return Err(CatFunctorError::CompositionNotPreserved {
                    g: g.clone(),
                    f: f.clone(),
                });
            }
        }
        Ok(CatFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(cat: &Arc<FinCat>) -> CatFunctor {
        CatFunctor {
            source: Arc::clone(cat),
            target: Arc::clone(cat),
            object_map: cat.objects().iter().map(|o| (o.clone(), o.clone())).collect(),
            morphism_map: cat
                .morphisms()
                .iter()
                .map(|m| (m.id.clone(), m.id.clone()))
                .collect(),
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn on_object(&self, obj: &ObjId) -> &ObjId {
        &self.object_map[obj]
    }

    pub fn on_morphism(&self, mor: &MorId) -> &MorId {
        &self.morphism_map[mor]
    }
}
