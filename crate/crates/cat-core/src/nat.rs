use std::collections::BTreeMap;

use crate::ids::{Elem, MorId, ObjId};
use crate::set_functor::SetFunctor;
use crate::solver::{solve_squares, Site, SquareConstraint};

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum NatError {
    #[error("source and target functors live on different categories")]
    SourceCategoryMismatch,
    #[error("component at `{obj}` is not a total function into the target set")]
    ComponentShape { obj: ObjId },
    #[error("naturality fails at morphism `{mor}`, element `{at}`")]
    Naturality { mor: MorId, at: Elem },
    #[error("cannot compose: middle functors differ")]
    CompositionMismatch,
}

/// A natural transformation between two set-valued functors on the same
/// category. Construction verifies every naturality square.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NatTransformation {
    source: SetFunctor,
    target: SetFunctor,
    components: BTreeMap<ObjId, BTreeMap<Elem, Elem>>,
}

impl NatTransformation {
    pub fn new(
        source: SetFunctor,
        target: SetFunctor,
        components: BTreeMap<ObjId, BTreeMap<Elem, Elem>>,
    ) -> Result<Self, NatError> {
        if source.source() != target.source() {
            return Err(NatError::SourceCategoryMismatch);
        }
        let cat = source.source().clone();
        for obj in cat.objects() {
            let table = components
                .get(obj)
                .ok_or_else(|| NatError::ComponentShape { obj: obj.clone() })?;
            let dom = source.set(obj);
            let cod = target.set(obj);
            if table.len() != dom.len() {
                return Err(NatError::ComponentShape { obj: obj.clone() });
            }
            for elem in dom {
                match table.get(elem) {
                    Some(img) if cod.binary_search(img).is_ok() => {}
                    _ => return Err(NatError::ComponentShape { obj: obj.clone() }),
                }
            }
        }
        for m in cat.morphisms() {
            let c_dom = &components[&m.dom];
            let c_cod = &components[&m.cod];
            for elem in source.set(&m.dom) {
                let around = &c_cod[source.apply(&m.id, elem)];
                let across = target.apply(&m.id, &c_dom[elem]);
                if around != across {
                    return Err(NatError::Naturality {
                        mor: m.id.clone(),
                        at: elem.clone(),
                    });
                }
            }
        }
        Ok(NatTransformation {
            source,
            target,
            components,
        })
    }

    pub fn identity(functor: &SetFunctor) -> NatTransformation {
        let components = functor
            .source()
            .objects()
            .iter()
            .map(|o| {
                let table = functor
                    .set(o)
                    .iter()
                    .map(|e| (e.clone(), e.clone()))
                    .collect();
                (o.clone(), table)
            })
            .collect();
        NatTransformation {
            source: functor.clone(),
            target: functor.clone(),
            components,
        }
    }

    /// Vertical composite `self ∘ first` (apply `first`, then `self`).
    pub fn after(&self, first: &NatTransformation) -> Result<NatTransformation, NatError> {
        if first.target != self.source {
            return Err(NatError::CompositionMismatch);
        }
        let components = self
            .components
            .iter()
            .map(|(obj, outer)| {
                let inner = &first.components[obj];
                let table = first
                    .source
                    .set(obj)
                    .iter()
                    .map(|e| (e.clone(), outer[&inner[e]].clone()))
                    .collect();
                (obj.clone(), table)
            })
            .collect();
        Ok(NatTransformation {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn source_functor(&self) -> &SetFunctor {
        &self.source
    }

    pub fn target_functor(&self) -> &SetFunctor {
        &self.target
    }

    pub fn component(&self, obj: &ObjId) -> &BTreeMap<Elem, Elem> {
        &self.components[obj]
    }

    pub fn components(&self) -> &BTreeMap<ObjId, BTreeMap<Elem, Elem>> {
        &self.components
    }

    pub fn apply(&self, obj: &ObjId, elem: &Elem) -> &Elem {
        &self.components[obj][elem]
    }

    /// Componentwise bijectivity, i.e. the transformation is a natural
    /// isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.source().objects().iter().all(|obj| {
            let table = &self.components[obj];
            let mut images: Vec<&Elem> = table.values().collect();
            images.sort();
            images.dedup();
            images.len() == table.len() && images.len() == self.target.set(obj).len()
        })
    }
}

/// All natural transformations from `source` to `target`, in canonical
/// (lexicographic on component tables) order.
///
/// Both functors must live on the same category. The search backtracks over
/// objects in ascending constraint-density order, propagating naturality
/// squares; the result order does not depend on the search order.
pub fn nat_set(source: &SetFunctor, target: &SetFunctor) -> Vec<NatTransformation> {
    assert_eq!(
        source.source(),
        target.source(),
        "nat_set requires functors on the same category"
    );
    let cat = source.source().clone();
    let objects = cat.objects().to_vec();
    let site_index: BTreeMap<&ObjId, usize> =
        objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let sites: Vec<Site> = objects
        .iter()
        .map(|o| Site {
            key: o.as_str().to_owned(),
            domain: source.set(o).to_vec(),
            codomain: target.set(o).to_vec(),
        })
        .collect();
    let constraints: Vec<SquareConstraint> = cat
        .morphisms()
        .iter()
        .filter(|m| !cat.is_identity(&m.id))
        .map(|m| SquareConstraint {
            src: site_index[&m.dom],
            dst: site_index[&m.cod],
            pre: source.arrow_fn(&m.id).clone(),
            post: target.arrow_fn(&m.id).clone(),
        })
        .collect();

    solve_squares(&sites, &constraints)
        .into_iter()
        .map(|tables| {
            let components = objects.iter().cloned().zip(tables).collect();
            NatTransformation::new(source.clone(), target.clone(), components)
                .expect("solver output satisfies naturality")
        })
        .collect()
}
