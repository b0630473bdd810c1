use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graph::FinGraph;
use crate::ids::{EdgeId, MorId, NodeId, ObjId};

/// A morphism together with its endpoints.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MorInfo {
    pub id: MorId,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category presented by an explicit, total composition table.
///
/// The constructor checks structure only (ids resolve, the table covers
/// exactly the composable pairs). Whether the table satisfies the category
/// laws is a separate question answered by [`validate_category`]: law
/// violations are data, not construction failures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinCat {
    objects: Vec<ObjId>,
    morphisms: Vec<MorInfo>,
    identity: BTreeMap<ObjId, MorId>,
    compose: BTreeMap<(MorId, MorId), MorId>,
}

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum CatError {
    #[error("duplicate object id `{0}`")]
    DuplicateObject(ObjId),
    #[error("duplicate morphism id `{0}`")]
    DuplicateMorphism(MorId),
    #[error("morphism `{mor}` references unknown object `{obj}`")]
    UnknownObject { mor: MorId, obj: ObjId },
    #[error("identity entry for `{obj}` references unknown morphism `{mor}`")]
    UnknownIdentity { obj: ObjId, mor: MorId },
    #[error("no identity assigned to object `{0}`")]
    MissingIdentity(ObjId),
    #[error("identity of `{obj}` is `{mor}`, whose endpoints are not `{obj}`")]
    IdentityEndpoints { obj: ObjId, mor: MorId },
    #[error("composition table entry ({g}, {f}) is not a composable pair")]
    NotComposable { g: MorId, f: MorId },
    #[error("composition table is missing the composable pair ({g}, {f})")]
    MissingComposite { g: MorId, f: MorId },
    #[error("composition table references unknown morphism `{0}`")]
    UnknownComposite(MorId),
}

impl FinCat {
    pub fn new(
        objects: impl IntoIterator<Item = ObjId>,
        morphisms: impl IntoIterator<Item = (MorId, ObjId, ObjId)>,
        identity: impl IntoIterator<Item = (ObjId, MorId)>,
        compose: impl IntoIterator<Item = ((MorId, MorId), MorId)>,
    ) -> Result<Self, CatError> {
        let mut objs: Vec<ObjId> = objects.into_iter().collect();
        objs.sort();
        for w in objs.windows(2) {
            if w[0] == w[1] {
                return Err(CatError::DuplicateObject(w[0].clone()));
            }
        }

        let mut mors: Vec<MorInfo> = morphisms
            .into_iter()
            .map(|(id, dom, cod)| MorInfo { id, dom, cod })
            .collect();
        mors.sort();
        for w in mors.windows(2) {
            if w[0].id == w[1].id {
                return Err(CatError::DuplicateMorphism(w[0].id.clone()));
            }
        }
        let mor_ids: BTreeMap<&MorId, &MorInfo> = mors.iter().map(|m| (&m.id, m)).collect();
        for m in &mors {
            for end in [&m.dom, &m.cod] {
                if objs.binary_search(end).is_err() {
                    return Err(CatError::UnknownObject {
                        mor: m.id.clone(),
                        obj: end.clone(),
                    });
                }
            }
        }

        let identity: BTreeMap<ObjId, MorId> = identity.into_iter().collect();
        for obj in &objs {
            let id_mor = identity
                .get(obj)
                .ok_or_else(|| CatError::MissingIdentity(obj.clone()))?;
            let info = mor_ids.get(id_mor).ok_or_else(|| CatError::UnknownIdentity {
                obj: obj.clone(),
                mor: id_mor.clone(),
            })?;
            if &info.dom != obj || &info.cod != obj {
                return Err(CatError::IdentityEndpoints {
                    obj: obj.clone(),
                    mor: id_mor.clone(),
                });
            }
        }

        let compose: BTreeMap<(MorId, MorId), MorId> = compose.into_iter().collect();
        for ((g, f), h) in &compose {
            let (gi, fi) = match (mor_ids.get(g), mor_ids.get(f)) {
                (Some(gi), Some(fi)) => (gi, fi),
                _ => {
                    let missing = if mor_ids.contains_key(g) { f } else { g };
                    return Err(CatError::UnknownComposite(missing.clone()));
                }
            };
            if fi.cod != gi.dom {
                return Err(CatError::NotComposable {
                    g: g.clone(),
                    f: f.clone(),
                });
            }
            if !mor_ids.contains_key(h) {
                return Err(CatError::UnknownComposite(h.clone()));
            }
        }
        for f in &mors {
            for g in &mors {
                if f.cod == g.dom && !compose.contains_key(&(g.id.clone(), f.id.clone())) {
                    return Err(CatError::MissingComposite {
                        g: g.id.clone(),
                        f: f.id.clone(),
                    });
                }
            }
        }

        Ok(FinCat {
            objects: objs,
            morphisms: mors,
            identity,
            compose,
        })
    }

    /// The category with one object and only its identity.
    pub fn terminal(obj: impl Into<ObjId>) -> Arc<FinCat> {
        let obj = obj.into();
        let id = MorId::new(format!("id({})", obj));
        Arc::new(
            FinCat::new(
                [obj.clone()],
                [(id.clone(), obj.clone(), obj.clone())],
                [(obj, id.clone())],
                [((id.clone(), id.clone()), id)],
            )
            .expect("terminal category is well formed"),
        )
    }

    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[MorInfo] {
        &self.morphisms
    }

    pub fn has_object(&self, obj: &ObjId) -> bool {
        self.objects.binary_search(obj).is_ok()
    }

    pub fn mor(&self, id: &MorId) -> Option<&MorInfo> {
        self.morphisms
            .binary_search_by(|m| m.id.cmp(id))
            .ok()
            .map(|i| &self.morphisms[i])
    }

    pub fn dom(&self, id: &MorId) -> Option<&ObjId> {
        self.mor(id).map(|m| &m.dom)
    }

    pub fn cod(&self, id: &MorId) -> Option<&ObjId> {
        self.mor(id).map(|m| &m.cod)
    }

    pub fn identity_of(&self, obj: &ObjId) -> Option<&MorId> {
        self.identity.get(obj)
    }

    pub fn is_identity(&self, mor: &MorId) -> bool {
        self.mor(mor)
            .map(|m| self.identity.get(&m.dom) == Some(mor))
            .unwrap_or(false)
    }

    /// `g ∘ f` (apply `f` first), or None when the pair is not composable.
    pub fn compose(&self, g: &MorId, f: &MorId) -> Option<&MorId> {
        self.compose.get(&(g.clone(), f.clone()))
    }

    /// Composes a nonempty chain given in application order: `[f, g, h]`
    /// yields `h ∘ g ∘ f`.
    pub fn compose_chain(&self, chain: &[MorId]) -> Option<MorId> {
        let mut iter = chain.iter();
        let mut acc = iter.next()?.clone();
        for next in iter {
            acc = self.compose(next, &acc)?.clone();
        }
        Some(acc)
    }

    pub fn composition_table(&self) -> &BTreeMap<(MorId, MorId), MorId> {
        &self.compose
    }

    pub fn homs_from<'a>(&'a self, a: &'a ObjId) -> impl Iterator<Item = &'a MorInfo> + 'a {
        self.morphisms.iter().filter(move |m| &m.dom == a)
    }

    pub fn homs_into<'a>(&'a self, b: &'a ObjId) -> impl Iterator<Item = &'a MorInfo> + 'a {
        self.morphisms.iter().filter(move |m| &m.cod == b)
    }

    pub fn hom_set(&self, a: &ObjId, b: &ObjId) -> Vec<&MorInfo> {
        self.morphisms
            .iter()
            .filter(|m| &m.dom == a && &m.cod == b)
            .collect()
    }

    /// Nodes are the objects, edges are all morphisms (identities included).
    pub fn underlying_graph(&self) -> FinGraph {
        FinGraph::new(
            self.objects.iter().map(|o| NodeId::new(o.as_str())),
            self.morphisms.iter().map(|m| {
                (
                    EdgeId::new(m.id.as_str()),
                    NodeId::new(m.dom.as_str()),
                    NodeId::new(m.cod.as_str()),
                )
            }),
        )
        .expect("object/morphism ids are unique")
    }
}

/// One broken category law, with the witnesses that break it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LawViolation {
    /// compose(f, id_dom(f)) ≠ f
    RightUnit { f: MorId, got: MorId },
    /// compose(id_cod(f), f) ≠ f
    LeftUnit { f: MorId, got: MorId },
    /// compose(h, compose(g, f)) ≠ compose(compose(h, g), f)
    Associativity {
        h: MorId,
        g: MorId,
        f: MorId,
        left: MorId,
        right: MorId,
    },
    /// The assigned composite has the wrong endpoints.
    CompositeEndpoints { g: MorId, f: MorId, got: MorId },
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LawViolation::RightUnit { f, got } => {
                write!(w, "right unit law: compose({f}, id) = {got}, expected {f}")
            }
            LawViolation::LeftUnit { f, got } => {
                write!(w, "left unit law: compose(id, {f}) = {got}, expected {f}")
            }
            LawViolation::Associativity { h, g, f, left, right } => write!(
                w,
                "associativity: {h}∘({g}∘{f}) = {left} but ({h}∘{g})∘{f} = {right}"
            ),
            LawViolation::CompositeEndpoints { g, f, got } => write!(
                w,
                "endpoints: compose({g}, {f}) = {got} has mismatched domain or codomain"
            ),
        }
    }
}

/// Checks the unit, associativity and endpoint laws of a composition table.
/// An empty report means the table presents a category.
pub fn validate_category(cat: &FinCat) -> Vec<LawViolation> {
    let mut out = Vec::new();

    for m in cat.morphisms() {
        let id_dom = cat.identity_of(&m.dom).expect("identity is total");
        let id_cod = cat.identity_of(&m.cod).expect("identity is total");
        if let Some(got) = cat.compose(&m.id, id_dom) {
            if got != &m.id {
                out.push(LawViolation::RightUnit {
                    f: m.id.clone(),
                    got: got.clone(),
                });
            }
        }
        if let Some(got) = cat.compose(id_cod, &m.id) {
            if got != &m.id {
                out.push(LawViolation::LeftUnit {
                    f: m.id.clone(),
                    got: got.clone(),
                });
            }
        }
    }

    for ((g, f), h) in cat.composition_table() {
        let (gi, fi, hi) = (
            cat.mor(g).unwrap(),
            cat.mor(f).unwrap(),
            cat.mor(h).unwrap(),
        );
        if hi.dom != fi.dom || hi.cod != gi.cod {
            out.push(LawViolation::CompositeEndpoints {
                g: g.clone(),
                f: f.clone(),
                got: h.clone(),
            });
        }
    }

    for f in cat.morphisms() {
        for g in cat.homs_from(&f.cod) {
            let gf = cat.compose(&g.id, &f.id).expect("table is total");
            for h in cat.homs_from(&g.cod) {
                let hg = cat.compose(&h.id, &g.id).expect("table is total");
                let left = cat.compose(&h.id, gf);
                let right = cat.compose(hg, &f.id);
                match (left, right) {
                    (Some(l), Some(r)) if l == r => {}
                    (l, r) => out.push(LawViolation::Associativity {
                        h: h.id.clone(),
                        g: g.id.clone(),
                        f: f.id.clone(),
                        left: l.cloned().unwrap_or_else(|| MorId::new("<undefined>")),
                        right: r.cloned().unwrap_or_else(|| MorId::new("<undefined>")),
                    }),
                }
            }
        }
    }

    out
}

/// Same objects and morphism ids, endpoints swapped, composition reversed:
/// `compose_op(g, f) = compose(f, g)`. Involutive.
pub fn opposite_category(cat: &FinCat) -> FinCat {
    let mut morphisms: Vec<MorInfo> = cat
        .morphisms()
        .iter()
        .map(|m| MorInfo {
            id: m.id.clone(),
            dom: m.cod.clone(),
            cod: m.dom.clone(),
        })
        .collect();
    morphisms.sort();
    let compose = cat
        .composition_table()
        .iter()
        .map(|((g, f), h)| ((f.clone(), g.clone()), h.clone()))
        .collect();
    FinCat {
        objects: cat.objects.clone(),
        morphisms,
        identity: cat.identity.clone(),
        compose,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> ObjId {
        ObjId::from(s)
    }
    fn m(s: &str) -> MorId {
        MorId::from(s)
    }

    /// Z/2 as a one-object category: s ∘ s = id.
    fn z2() -> FinCat {
        FinCat::new(
            [o("a")],
            [(m("id"), o("a"), o("a")), (m("s"), o("a"), o("a"))],
            [(o("a"), m("id"))],
            [
                ((m("id"), m("id")), m("id")),
                ((m("id"), m("s")), m("s")),
                ((m("s"), m("id")), m("s")),
                ((m("s"), m("s")), m("id")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn terminal_category_is_valid() {
        let t = FinCat::terminal("star");
        assert!(validate_category(&t).is_empty());
        assert_eq!(t.objects().len(), 1);
        assert_eq!(t.morphisms().len(), 1);
    }

    #[test]
    fn z2_is_valid_and_self_opposite() {
        let c = z2();
        assert!(validate_category(&c).is_empty());
        assert_eq!(opposite_category(&c), c);
    }

    #[test]
    fn broken_unit_law_is_reported() {
        // compose(s, id) = id instead of s.
        let c = FinCat::new(
            [o("a")],
            [(m("id"), o("a"), o("a")), (m("s"), o("a"), o("a"))],
            [(o("a"), m("id"))],
            [
                ((m("id"), m("id")), m("id")),
                ((m("id"), m("s")), m("s")),
                ((m("s"), m("id")), m("id")),
                ((m("s"), m("s")), m("id")),
            ],
        )
        .unwrap();
        let report = validate_category(&c);
        assert!(report
            .iter()
            .any(|v| matches!(v, LawViolation::RightUnit { f, .. } if f == &m("s"))));
    }

    #[test]
    fn missing_composite_is_a_construction_error() {
        let err = FinCat::new(
            [o("a")],
            [(m("id"), o("a"), o("a")), (m("s"), o("a"), o("a"))],
            [(o("a"), m("id"))],
            [
                ((m("id"), m("id")), m("id")),
                ((m("id"), m("s")), m("s")),
                ((m("s"), m("id")), m("s")),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, CatError::MissingComposite { .. }));
    }

    #[test]
    fn opposite_is_involutive() {
        let c = z2();
        assert_eq!(opposite_category(&opposite_category(&c)), c);
        let t = FinCat::terminal("x");
        assert_eq!(opposite_category(&t), *t);
    }
}
