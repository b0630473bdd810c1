//! Finite graphs, finite categories with explicit composition tables,
//! set-valued functors, and natural transformations.
//!
//! Everything here is finite and explicit: categories are composition
//! tables (or free categories on acyclic graphs), functors are element
//! tables, and all enumeration problems are solved exactly. Values are
//! immutable after construction and every operation is a pure function of
//! its inputs.

pub mod category;
pub mod diagram;
pub mod free;
pub mod graph;
pub mod ids;
pub mod nat;
pub mod set_functor;
pub mod solver;

pub use category::{opposite_category, validate_category, CatError, FinCat, LawViolation, MorInfo};
pub use diagram::{CatFunctor, CatFunctorError, Diagram, DiagramError};
pub use free::{free_category, path_mor_id, FreeCatError, FreeCategory};
pub use graph::{Edge, FinGraph, GraphError};
pub use ids::{EdgeId, Elem, MorId, NodeId, ObjId};
pub use nat::{nat_set, NatError, NatTransformation};
pub use set_functor::{
    enumerate_set_functors, hom_functor, FunctorLawViolation, SetFunctor, SetFunctorError,
};
