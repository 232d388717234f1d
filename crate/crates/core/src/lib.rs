//! Geometry of the extended hyperbolic plane: complex-valued lengths and
//! angles, cycles with inversion and similitude, Steiner's construction
//! for Malfatti's problem and triangle centers.

pub mod cycles;
pub mod extmeasure;
pub mod malfatti;
pub mod projplane;
pub mod triangle_centers;
pub mod trig;

pub use cycles::{Cycle, CycleError, CycleKind, Inversion, TangencyKind};
pub use extmeasure::{ExtError, ExtReal, ExtScalar};
pub use malfatti::{MalfattiError, MalfattiInstance, MalfattiSolution};
pub use projplane::{Category, MVec, ProjError, ProjLine, ProjPoint, SegmentPair};
pub use triangle_centers::{CenterError, HypTriangle};
pub use trig::{TriangleData, TrigError};
