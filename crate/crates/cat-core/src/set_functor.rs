use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::FinCat;
use crate::ids::{Elem, MorId, ObjId};

#[derive(thiserror::Error, Clone, PartialEq, Eq, Debug)]
pub enum SetFunctorError {
    #[error("no element set assigned to object `{0}`")]
    MissingObjectSet(ObjId),
    #[error("duplicate element `{elem}` at object `{obj}`")]
    DuplicateElement { obj: ObjId, elem: Elem },
    #[error("no function assigned to morphism `{0}`")]
    MissingArrowFn(MorId),
    #[error("function for `{mor}` is not total: `{elem}` has no image")]
    NotTotal { mor: MorId, elem: Elem },
    #[error("function for `{mor}` maps `{elem}` outside the codomain set")]
    OutOfCodomain { mor: MorId, elem: Elem },
    #[error("function for `{mor}` has spurious key `{elem}`")]
    SpuriousKey { mor: MorId, elem: Elem },
    #[error("unknown object `{0}`")]
    UnknownObject(ObjId),
}

/// One broken functor law.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FunctorLawViolation {
    /// The function assigned to an identity morphism is not the identity.
    Identity { obj: ObjId, at: Elem },
    /// arrow(g∘f) disagrees with arrow(g) ∘ arrow(f) at some element.
    Composition { g: MorId, f: MorId, at: Elem },
}

impl std::fmt::Display for FunctorLawViolation {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctorLawViolation::Identity { obj, at } => {
                write!(w, "identity law at object `{obj}`, element `{at}`")
            }
            FunctorLawViolation::Composition { g, f, at } => {
                write!(w, "composition law at ({g}, {f}), element `{at}`")
            }
        }
    }
}

/// A functor from a finite category to finite sets: an explicit element set
/// per object and an explicit function per morphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFunctor {
    source: Arc<FinCat>,
    object_sets: BTreeMap<ObjId, Vec<Elem>>,
    arrow_fns: BTreeMap<MorId, BTreeMap<Elem, Elem>>,
}

impl SetFunctor {
    /// Structural construction: sets are sorted and deduplicated, functions
    /// must be total with values in the codomain set. Functor laws are
    /// checked separately by [`SetFunctor::validate`].
    pub fn new(
        source: Arc<FinCat>,
        object_sets: BTreeMap<ObjId, Vec<Elem>>,
        arrow_fns: BTreeMap<MorId, BTreeMap<Elem, Elem>>,
    ) -> Result<Self, SetFunctorError> {
        let mut sets = BTreeMap::new();
        for obj in source.objects() {
            let mut elems = object_sets
                .get(obj)
                .ok_or_else(|| SetFunctorError::MissingObjectSet(obj.clone()))?
                .clone();
            elems.sort();
            if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
                return Err(SetFunctorError::DuplicateElement {
                    obj: obj.clone(),
                    elem: w[0].clone(),
                });
            }
            sets.insert(obj.clone(), elems);
        }
        for m in source.morphisms() {
            let table = arrow_fns
                .get(&m.id)
                .ok_or_else(|| SetFunctorError::MissingArrowFn(m.id.clone()))?;
            let dom_set = &sets[&m.dom];
            let cod_set = &sets[&m.cod];
            for elem in dom_set {
                match table.get(elem) {
                    None => {
                        return Err(SetFunctorError::NotTotal {
                            mor: m.id.clone(),
                            elem: elem.clone(),
                        })
                    }
                    Some(img) if cod_set.binary_search(img).is_err() => {
                        return Err(SetFunctorError::OutOfCodomain {
                            mor: m.id.clone(),
                            elem: elem.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
            for key in table.keys() {
                if dom_set.binary_search(key).is_err() {
                    return Err(SetFunctorError::SpuriousKey {
                        mor: m.id.clone(),
                        elem: key.clone(),
                    });
                }
            }
        }
        Ok(SetFunctor {
            source,
            object_sets: sets,
            arrow_fns,
        })
    }

    /// The constant functor at a single fixed set, all arrows acting as the
    /// identity.
    pub fn constant(source: Arc<FinCat>, elems: Vec<Elem>) -> SetFunctor {
        let object_sets = source
            .objects()
            .iter()
            .map(|o| (o.clone(), elems.clone()))
            .collect();
        let id_table: BTreeMap<Elem, Elem> =
            elems.iter().map(|e| (e.clone(), e.clone())).collect();
        let arrow_fns = source
            .morphisms()
            .iter()
            .map(|m| (m.id.clone(), id_table.clone()))
            .collect();
        SetFunctor::new(source, object_sets, arrow_fns).expect("constant functor is well formed")
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn set(&self, obj: &ObjId) -> &[Elem] {
        &self.object_sets[obj]
    }

    pub fn object_sets(&self) -> &BTreeMap<ObjId, Vec<Elem>> {
        &self.object_sets
    }

    pub fn arrow_fn(&self, mor: &MorId) -> &BTreeMap<Elem, Elem> {
        &self.arrow_fns[mor]
    }

    pub fn apply(&self, mor: &MorId, elem: &Elem) -> &Elem {
        &self.arrow_fns[mor][elem]
    }

    /// Checks the identity and composition laws; empty report means the data
    /// is a functor.
    pub fn validate(&self) -> Vec<FunctorLawViolation> {
        let mut out = Vec::new();
        for obj in self.source.objects() {
            let id_mor = self.source.identity_of(obj).expect("identity total");
            let table = &self.arrow_fns[id_mor];
            for elem in self.set(obj) {
                if table.get(elem) != Some(elem) {
                    out.push(FunctorLawViolation::Identity {
                        obj: obj.clone(),
                        at: elem.clone(),
                    });
                }
            }
        }
        for ((g, f), h) in self.source.composition_table() {
            let f_info = self.source.mor(f).expect("known morphism");
            for elem in self.set(&f_info.dom) {
                let via_f = &self.arrow_fns[f][elem];
                let stepwise = &self.arrow_fns[g][via_f];
                let direct = &self.arrow_fns[h][elem];
                if stepwise != direct {
                    out.push(FunctorLawViolation::Composition {
                        g: g.clone(),
                        f: f.clone(),
                        at: elem.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Total number of elements over all objects.
    pub fn total_size(&self) -> usize {
        self.object_sets.values().map(|s| s.len()).sum()
    }
}

/// The representable functor `hom(x, ?)`: at `z`, all morphisms x→z (element
/// labels are the morphism ids); an arrow f acts by post-composition.
pub fn hom_functor(cat: &Arc<FinCat>, x: &ObjId) -> Result<SetFunctor, SetFunctorError> {
    if !cat.has_object(x) {
        return Err(SetFunctorError::UnknownObject(x.clone()));
    }
    let mut object_sets: BTreeMap<ObjId, Vec<Elem>> = BTreeMap::new();
    for z in cat.objects() {
        let mut elems: Vec<Elem> = cat
            .hom_set(x, z)
            .iter()
            .map(|m| Elem::new(m.id.as_str()))
            .collect();
        elems.sort();
        object_sets.insert(z.clone(), elems);
    }
    let mut arrow_fns = BTreeMap::new();
    for f in cat.morphisms() {
        let mut table = BTreeMap::new();
        for g in cat.hom_set(x, &f.dom) {
            let composite = cat
                .compose(&f.id, &g.id)
                .expect("cod(g) = dom(f) by construction");
            table.insert(Elem::new(g.id.as_str()), Elem::new(composite.as_str()));
        }
        arrow_fns.insert(f.id.clone(), table);
    }
    SetFunctor::new(Arc::clone(cat), object_sets, arrow_fns)
}

/// Enumerates every set-valued functor on `cat` whose element set at each
/// object is a prefix of the canonical alphabet `v0, v1, …` of size at most
/// `max_size`. Used to bound universality audits.
pub fn enumerate_set_functors(cat: &Arc<FinCat>, max_size: usize) -> Vec<SetFunctor> {
    let alphabet: Vec<Elem> = (0..max_size).map(|i| Elem::new(format!("v{i}"))).collect();
    let objects = cat.objects().to_vec();
    let mut results = Vec::new();
    let mut sizes = vec![0usize; objects.len()];

    loop {
        let object_sets: BTreeMap<ObjId, Vec<Elem>> = objects
            .iter()
            .zip(&sizes)
            .map(|(o, &k)| (o.clone(), alphabet[..k].to_vec()))
            .collect();
        enumerate_arrow_tables(cat, &object_sets, &mut results);

        // Next size vector, odometer style.
        let mut i = 0;
        loop {
            if i == sizes.len() {
                return results;
            }
            if sizes[i] < max_size {
                sizes[i] += 1;
                break;
            }
            sizes[i] = 0;
            i += 1;
        }
        if objects.is_empty() {
            return results;
        }
    }
}

fn enumerate_arrow_tables(
    cat: &Arc<FinCat>,
    object_sets: &BTreeMap<ObjId, Vec<Elem>>,
    results: &mut Vec<SetFunctor>,
) {
    // Identities are forced; search over the rest in sorted order, checking
    // each composition-table entry as soon as all three functions are known.
    let free_mors: Vec<&crate::category::MorInfo> = cat
        .morphisms()
        .iter()
        .filter(|m| !cat.is_identity(&m.id))
        .collect();

    let mut assigned: BTreeMap<MorId, BTreeMap<Elem, Elem>> = cat
        .objects()
        .iter()
        .map(|o| {
            let id_mor = cat.identity_of(o).expect("identity total").clone();
            let table = object_sets[o]
                .iter()
                .map(|e| (e.clone(), e.clone()))
                .collect();
            (id_mor, table)
        })
        .collect();

    fn consistent(
        cat: &FinCat,
        object_sets: &BTreeMap<ObjId, Vec<Elem>>,
        assigned: &BTreeMap<MorId, BTreeMap<Elem, Elem>>,
    ) -> bool {
        for ((g, f), h) in cat.composition_table() {
            let (Some(tg), Some(tf), Some(th)) = (assigned.get(g), assigned.get(f), assigned.get(h))
            else {
                continue;
            };
            let dom = &cat.mor(f).expect("known").dom;
            for elem in &object_sets[dom] {
                if &tg[&tf[elem]] != &th[elem] {
                    return false;
                }
            }
        }
        true
    }

    fn recurse(
        cat: &Arc<FinCat>,
        object_sets: &BTreeMap<ObjId, Vec<Elem>>,
        free_mors: &[&crate::category::MorInfo],
        assigned: &mut BTreeMap<MorId, BTreeMap<Elem, Elem>>,
        results: &mut Vec<SetFunctor>,
    ) {
        let Some((mor, rest)) = free_mors.split_first() else {
            let functor = SetFunctor::new(
                Arc::clone(cat),
                object_sets.clone(),
                assigned.clone(),
            )
            .expect("enumerated tables are structurally sound");
            debug_assert!(functor.is_valid());
            results.push(functor);
            return;
        };
        let dom_set = object_sets[&mor.dom].clone();
        let cod_set = &object_sets[&mor.cod];
        if dom_set.is_empty() {
            assigned.insert(mor.id.clone(), BTreeMap::new());
            if consistent(cat, object_sets, assigned) {
                recurse(cat, object_sets, rest, assigned, results);
            }
            assigned.remove(&mor.id);
            return;
        }
        if cod_set.is_empty() {
            return; // no function from a nonempty set into the empty set
        }
        let mut choice = vec![0usize; dom_set.len()];
        loop {
            let table: BTreeMap<Elem, Elem> = dom_set
                .iter()
                .zip(&choice)
                .map(|(e, &i)| (e.clone(), cod_set[i].clone()))
                .collect();
            assigned.insert(mor.id.clone(), table);
            if consistent(cat, object_sets, assigned) {
                recurse(cat, object_sets, rest, assigned, results);
            }
            assigned.remove(&mor.id);

            let mut i = 0;
            loop {
                if i == choice.len() {
                    return;
                }
                if choice[i] + 1 < cod_set.len() {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    recurse(cat, object_sets, &free_mors, &mut assigned, results);
}
