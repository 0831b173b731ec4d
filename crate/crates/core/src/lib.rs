//! Computational companion for geodesic flows on the `(2,k)` Hecke orbifolds.
//!
//! * [`hyperbolic`]: Möbius isometries, pointers, geodesic and horocycle flows.
//! * [`hecke`]: the `(2,k)` triangle group at a given cone-point distance,
//!   cyclic group words and their classification.
//! * [`seifert`]: Seifert invariants, gluing matrices and lens spaces.
//! * [`template`]: Lorenz and `(2,k)` templates, strand diagrams and braids.
//! * [`knotinv`]: invariants of braid closures and a diagram-level oracle.
//! * [`tdl`]: the template description language.

pub mod hecke;
pub mod hyperbolic;
pub mod knotinv;
pub mod necklace;
pub mod seifert;
pub mod tdl;
pub mod template;
pub mod tolerance;

pub use hecke::{GroupWord, HeckeGroup, IsometryClass, IsometryKind};
pub use hyperbolic::{MobiusTransform, Pointer, UpperHalfPoint};
pub use seifert::{GluingMatrix, LensSpace};
pub use template::{BraidWord, StrandDiagram, TemplateModel};
