//! Deterministic computational design-and-manufacturing kernel.
//!
//! The crate is organized as a set of orthogonal subsystems:
//!
//! - [`math`] — vectors, rotations, rigid transforms, bounding boxes
//! - [`solids`] — box/cylinder CSG trees, meshing, STL export
//! - [`sketchcad`] — parser and evaluator for the sketch-extrude CAD language
//! - [`design_space`] — parameter spaces with bounds and constraints
//! - [`performance`] — first-order structural and stability evaluators
//! - [`robotics`] — component assemblies, mass properties, URDF emission
//! - [`qcontrol`] — quadcopter dynamics, LQR synthesis, simulation
//! - [`inverse`] — bounded/constrained optimizers, NSGA-II, planners
//! - [`fabricate`] — panel extraction, sheet layout, SVG/DXF export
//! - [`formats`] — JSON file schemas shared with the CLI
//! - [`templates`] — small parametric design fixtures (lego brick, cabinet)

pub mod design_space;
pub mod fabricate;
pub mod formats;
pub mod inverse;
pub mod math;
pub mod performance;
pub mod qcontrol;
pub mod robotics;
pub mod sketchcad;
pub mod solids;
pub mod templates;

pub use math::{Aabb, Mat3, RigidTransform, Vec3};
pub use solids::{SolidNode, TriMesh};
