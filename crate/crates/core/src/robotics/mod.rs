//! Component/assembly model for articulated designs: named massed links with
//! absolute poses, parent relations forming a single-rooted tree, relative
//! pose computation, mass properties via the parallel axis theorem, and URDF
//! emission.
//!
//! Dimensions and translations are in millimetres; masses in kg. URDF output
//! and mass properties convert to metres.

mod builders;
mod urdf;

pub use builders::{build_n_link_arm, build_quadcopter, build_quadcopter_with_bar_mass,
    build_wheeled_robot, FRAME_BAR_MASS_DEFAULT, FRAME_BAR_MASS_HEAVY};

use crate::math::{matrix_to_rpy, rpy_to_matrix, Mat3, RigidTransform, Vec3};
use crate::solids::{Primitive, SolidNode};
use std::collections::BTreeMap;
use thiserror::Error;

pub const MM_PER_M: f64 = 1000.0;

#[derive(Debug, Error, PartialEq)]
pub enum RobotError {
    #[error("component name {0:?} already present in assembly")]
    DuplicateName(String),
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error("a robot can only have one root joint; found roots {0:?}")]
    MultipleRoots(Vec<String>),
    #[error("assembly has no root (every component has a parent)")]
    NoRoot,
    #[error("parent cycle detected through component {0:?}")]
    Cycle(String),
    #[error("component {0:?} is the root and has no relative pose")]
    RootHasNoPose(String),
    #[error("component {0:?} has zero mass")]
    ZeroMass(String),
    #[error("assembly must be finalized first")]
    NotFinalized,
    #[error("assembly total mass is zero")]
    ZeroTotalMass,
    #[error("dimension must be strictly positive, got {0}")]
    NonPositiveDimension(f64),
    #[error("unsupported wheel count {0}; expected 2 or 4")]
    UnsupportedWheelCount(u32),
    #[error("arm needs at least one link")]
    EmptyArm,
}

/// Link geometry, dimensions in mm. Cylinder axis is local z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Cuboid { w: f64, h: f64, d: f64 },
    Cylinder { r: f64, h: f64 },
}

impl Geometry {
    fn check(self) -> Result<Self, RobotError> {
        let dims: &[f64] = match &self {
            Geometry::Cuboid { w, h, d } => &[*w, *h, *d],
            Geometry::Cylinder { r, h } => &[*r, *h],
        };
        for &v in dims {
            if !(v > 0.0) {
                return Err(RobotError::NonPositiveDimension(v));
            }
        }
        Ok(self)
    }
}

/// A named, massed, posed link. `translation`/`rotation` are absolute;
/// `place` sets yaw only. `geometry_offset` shifts the geometry relative to
/// the component frame (used when a frame must sit at a joint rather than at
/// the geometry center).
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub name: String,
    pub mass: f64,
    pub geometry: Geometry,
    pub translation: Vec3,
    /// Roll-pitch-yaw, radians, absolute.
    pub rotation: Vec3,
    pub geometry_offset: Vec3,
}

impl Component {
    pub fn rotation_matrix(&self) -> Mat3 {
        rpy_to_matrix(self.rotation.x, self.rotation.y, self.rotation.z)
    }

    pub fn frame(&self) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation_matrix(),
            translation: self.translation,
        }
    }

    /// World position of the geometry center, mm.
    pub fn geometry_center(&self) -> Vec3 {
        self.frame().apply(&self.geometry_offset)
    }
}

/// Box component at the origin with zero rotation and no parent.
pub fn create_box(name: &str, mass: f64, w: f64, h: f64, d: f64) -> Result<Component, RobotError> {
    Ok(Component {
        name: name.into(),
        mass,
        geometry: Geometry::Cuboid { w, h, d }.check()?,
        translation: Vec3::zeros(),
        rotation: Vec3::zeros(),
        geometry_offset: Vec3::zeros(),
    })
}

/// Cylinder component (axis z) at the origin with zero rotation, no parent.
pub fn create_cylinder(name: &str, mass: f64, r: f64, h: f64) -> Result<Component, RobotError> {
    Ok(Component {
        name: name.into(),
        mass,
        geometry: Geometry::Cylinder { r, h }.check()?,
        translation: Vec3::zeros(),
        rotation: Vec3::zeros(),
        geometry_offset: Vec3::zeros(),
    })
}

/// Deep copy with absolute translation `(x, y, z)` and yaw `a_deg`; the
/// copy's name gains `suffix` when one is given. Fields are set, not
/// accumulated, so re-placing overrides the pose.
pub fn place(c: &Component, x: f64, y: f64, z: f64, a_deg: f64, suffix: Option<&str>) -> Component {
    let mut out = c.clone();
    out.translation = Vec3::new(x, y, z);
    out.rotation = Vec3::new(0.0, 0.0, a_deg / 180.0 * std::f64::consts::PI);
    if let Some(s) = suffix {
        out.name = format!("{}{}", c.name, s);
    }
    out
}

/// Convert a component to a placed CSG solid (for meshing and export).
pub fn component_solid(c: &Component) -> SolidNode {
    let primitive = match c.geometry {
        Geometry::Cuboid { w, h, d } => Primitive::Box { w, h, d },
        Geometry::Cylinder { r, h } => Primitive::Cylinder {
            r,
            h,
            segments: crate::solids::DEFAULT_SEGMENTS,
        },
    };
    let frame = c.frame();
    let transform = frame.compose(&RigidTransform {
        rotation: Mat3::identity(),
        translation: c.geometry_offset,
    });
    SolidNode::Leaf {
        primitive,
        transform,
    }
}

/// Joint type for the connection from a component to its parent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JointKind {
    Fixed,
    Continuous { axis: Vec3 },
    Revolute { axis: Vec3, lower: f64, upper: f64 },
}

/// Ordered collection of components with parent relations. Build, set
/// parents and joints, then [`Assembly::finalize`] to validate the tree.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Assembly {
    components: Vec<Component>,
    index: BTreeMap<String, usize>,
    parents: BTreeMap<String, String>,
    joint_types: BTreeMap<String, JointKind>,
    finalized: bool,
}

/// Assembly mass, center of mass (m) and inertia (kg·m²) about the COM.
#[derive(Debug, Clone, PartialEq)]
pub struct MassProperties {
    pub mass: f64,
    pub com: Vec3,
    pub inertia: Mat3,
}

impl Assembly {
    pub fn new() -> Self {
        Assembly::default()
    }

    pub fn add(&mut self, c: Component) -> Result<(), RobotError> {
        if self.index.contains_key(&c.name) {
            return Err(RobotError::DuplicateName(c.name));
        }
        self.index.insert(c.name.clone(), self.components.len());
        self.components.push(c);
        self.finalized = false;
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Component> {
        self.index.get(name).map(|&i| &self.components[i])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn parent_of(&self, child: &str) -> Option<&str> {
        self.parents.get(child).map(|s| s.as_str())
    }

    pub fn joint_kind(&self, child: &str) -> JointKind {
        self.joint_types
            .get(child)
            .copied()
            .unwrap_or(JointKind::Fixed)
    }

    pub fn is_finalized(&self) -> bool {
        self.finalized
    }

    /// Set or clear (`None`) the parent of `child`.
    pub fn set_parent(&mut self, child: &str, parent: Option<&str>) -> Result<(), RobotError> {
        if !self.index.contains_key(child) {
            return Err(RobotError::UnknownComponent(child.into()));
        }
        match parent {
            Some(p) => {
                if !self.index.contains_key(p) {
                    return Err(RobotError::UnknownComponent(p.into()));
                }
                self.parents.insert(child.into(), p.into());
            }
            None => {
                self.parents.remove(child);
            }
        }
        self.finalized = false;
        Ok(())
    }

    pub fn set_joint(&mut self, child: &str, kind: JointKind) -> Result<(), RobotError> {
        if !self.index.contains_key(child) {
            return Err(RobotError::UnknownComponent(child.into()));
        }
        self.joint_types.insert(child.into(), kind);
        Ok(())
    }

    /// Verify the parent graph is a single-rooted tree.
    pub fn finalize(&mut self) -> Result<(), RobotError> {
        let roots: Vec<String> = self
            .components
            .iter()
            .filter(|c| !self.parents.contains_key(&c.name))
            .map(|c| c.name.clone())
            .collect();
        if roots.is_empty() {
            return Err(if self.components.is_empty() {
                RobotError::NoRoot
            } else {
                // every component has a parent, so some parent chain loops
                RobotError::Cycle(self.components[0].name.clone())
            });
        }
        if roots.len() > 1 {
            return Err(RobotError::MultipleRoots(roots));
        }
        for c in &self.components {
            let mut seen = std::collections::BTreeSet::new();
            let mut cur = c.name.as_str();
            while let Some(p) = self.parents.get(cur) {
                if !seen.insert(cur.to_string()) {
                    return Err(RobotError::Cycle(c.name.clone()));
                }
                cur = p;
            }
        }
        self.finalized = true;
        Ok(())
    }

    /// Pose of `child`'s frame expressed in its parent's frame:
    /// `t_rel = R_pᵀ (t_c − t_p)`, `R_rel = R_pᵀ R_c`, rpy in ZYX convention.
    pub fn relative_pose(&self, child: &str) -> Result<(Vec3, Vec3), RobotError> {
        let c = self
            .get(child)
            .ok_or_else(|| RobotError::UnknownComponent(child.into()))?;
        let parent_name = self
            .parents
            .get(child)
            .ok_or_else(|| RobotError::RootHasNoPose(child.into()))?;
        let p = self
            .get(parent_name)
            .ok_or_else(|| RobotError::UnknownComponent(parent_name.clone()))?;
        let rp = p.rotation_matrix();
        let t_rel = rp.transpose() * (c.translation - p.translation);
        let r_rel = rp.transpose() * c.rotation_matrix();
        let (roll, pitch, yaw) = matrix_to_rpy(&r_rel);
        Ok((t_rel, Vec3::new(roll, pitch, yaw)))
    }

    /// Sum of component masses, exactly.
    pub fn total_mass(&self) -> f64 {
        self.components.iter().map(|c| c.mass).sum()
    }

    /// Assembly center of mass and inertia about it, combining link inertias
    /// with the parallel axis theorem. Output in SI (m, kg·m²).
    pub fn mass_properties(&self) -> Result<MassProperties, RobotError> {
        if !self.finalized {
            return Err(RobotError::NotFinalized);
        }
        let total = self.total_mass();
        if !(total > 0.0) {
            return Err(RobotError::ZeroTotalMass);
        }
        let mut com = Vec3::zeros();
        for c in &self.components {
            com += c.mass * (c.geometry_center() / MM_PER_M);
        }
        com /= total;

        let mut inertia = Mat3::zeros();
        for c in &self.components {
            if c.mass == 0.0 {
                continue;
            }
            let r = c.rotation_matrix();
            let local = link_inertia(c)?;
            let d = c.geometry_center() / MM_PER_M - com;
            let shift = c.mass * (Mat3::identity() * d.dot(&d) - d * d.transpose());
            inertia += r * local * r.transpose() + shift;
        }
        Ok(MassProperties {
            mass: total,
            com,
            inertia,
        })
    }
}

/// Inertia tensor of a single link about its own geometry center, in the
/// local frame (diagonal). mm converted to m.
///
/// Box: `(m/12)·(h²+d², w²+d², w²+h²)`.
/// Cylinder (axis z): `(m(3r²+h²)/12, m(3r²+h²)/12, m r²/2)`.
pub fn link_inertia(c: &Component) -> Result<Mat3, RobotError> {
    if !(c.mass > 0.0) {
        return Err(RobotError::ZeroMass(c.name.clone()));
    }
    let m = c.mass;
    Ok(match c.geometry {
        Geometry::Cuboid { w, h, d } => {
            let (w, h, d) = (w / MM_PER_M, h / MM_PER_M, d / MM_PER_M);
            Mat3::from_diagonal(&Vec3::new(
                m / 12.0 * (h * h + d * d),
                m / 12.0 * (w * w + d * d),
                m / 12.0 * (w * w + h * h),
            ))
        }
        Geometry::Cylinder { r, h } => {
            let (r, h) = (r / MM_PER_M, h / MM_PER_M);
            let lateral = m * (3.0 * r * r + h * h) / 12.0;
            Mat3::from_diagonal(&Vec3::new(lateral, lateral, m * r * r / 2.0))
        }
    })
}

/// Emit the URDF document for a finalized assembly (mm → m).
pub fn to_urdf(assembly: &Assembly, robot_name: &str) -> Result<String, RobotError> {
    urdf::emit(assembly, robot_name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn create_and_place() {
        let motor = create_cylinder("motor", 0.030, 14.0, 32.0).unwrap();
        assert_eq!(motor.translation, Vec3::zeros());
        let placed = place(&motor, 220.0, 0.0, 31.0, 0.0, Some("_1"));
        assert_eq!(placed.name, "motor_1");
        assert_eq!(placed.translation, Vec3::new(220.0, 0.0, 31.0));
        // absolute semantics: re-placing overrides
        let again = place(&placed, 1.0, 2.0, 3.0, 90.0, None);
        assert_eq!(again.name, "motor_1");
        assert_eq!(again.translation, Vec3::new(1.0, 2.0, 3.0));

        let battery = create_box("battery", 0.015, 70.0, 35.0, 33.0).unwrap();
        assert_eq!(battery.mass, 0.015);
        // zero mass allowed at creation
        assert!(create_box("ghost", 0.0, 1.0, 1.0, 1.0).is_ok());
        assert!(create_box("bad", 1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut asm = Assembly::new();
        asm.add(create_box("a", 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        let err = asm.add(create_box("a", 1.0, 2.0, 2.0, 2.0).unwrap());
        assert_eq!(err, Err(RobotError::DuplicateName("a".into())));
    }

    #[test]
    fn finalize_enforces_single_root() {
        let mut asm = Assembly::new();
        asm.add(create_box("bar1", 0.01, 10.0, 1.0, 1.0).unwrap()).unwrap();
        asm.add(create_box("bar2", 0.01, 10.0, 1.0, 1.0).unwrap()).unwrap();
        let err = asm.finalize();
        assert_eq!(
            err,
            Err(RobotError::MultipleRoots(vec!["bar1".into(), "bar2".into()]))
        );
        asm.set_parent("bar2", Some("bar1")).unwrap();
        asm.finalize().unwrap();
        assert!(asm.is_finalized());
    }

    #[test]
    fn finalize_detects_cycles() {
        let mut asm = Assembly::new();
        asm.add(create_box("a", 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        asm.add(create_box("b", 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        asm.add(create_box("root", 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        asm.set_parent("a", Some("b")).unwrap();
        asm.set_parent("b", Some("a")).unwrap();
        assert!(matches!(asm.finalize(), Err(RobotError::Cycle(_))));
    }

    #[test]
    fn relative_pose_accounts_for_parent_rotation() {
        let mut asm = Assembly::new();
        let parent = place(
            &create_box("p", 1.0, 1.0, 1.0, 1.0).unwrap(),
            0.0,
            0.0,
            0.0,
            90.0,
            None,
        );
        let child = place(
            &create_box("c", 1.0, 1.0, 1.0, 1.0).unwrap(),
            1.0,
            0.0,
            0.0,
            0.0,
            None,
        );
        asm.add(parent).unwrap();
        asm.add(child).unwrap();
        asm.set_parent("c", Some("p")).unwrap();
        let (t, _rpy) = asm.relative_pose("c").unwrap();
        assert!((t - Vec3::new(0.0, -1.0, 0.0)).amax() < 1e-12);

        // identical poses give the identity relative pose
        let mut asm2 = Assembly::new();
        asm2.add(create_box("p", 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        asm2.add(create_box("c", 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        asm2.set_parent("c", Some("p")).unwrap();
        let (t, rpy) = asm2.relative_pose("c").unwrap();
        assert_eq!(t, Vec3::zeros());
        assert_eq!(rpy, Vec3::zeros());

        assert_eq!(
            asm.relative_pose("p"),
            Err(RobotError::RootHasNoPose("p".into()))
        );
    }

    #[test]
    fn relative_pose_round_trip() {
        let mut asm = Assembly::new();
        let mut p = create_box("p", 1.0, 1.0, 1.0, 1.0).unwrap();
        p.translation = Vec3::new(3.0, -2.0, 5.0);
        p.rotation = Vec3::new(0.3, -0.2, 1.1);
        let mut c = create_cylinder("c", 1.0, 1.0, 2.0).unwrap();
        c.translation = Vec3::new(-1.0, 4.0, 2.0);
        c.rotation = Vec3::new(-0.8, 0.5, 0.4);
        asm.add(p.clone()).unwrap();
        asm.add(c.clone()).unwrap();
        asm.set_parent("c", Some("p")).unwrap();

        let (t_rel, rpy_rel) = asm.relative_pose("c").unwrap();
        let rel = RigidTransform {
            rotation: rpy_to_matrix(rpy_rel.x, rpy_rel.y, rpy_rel.z),
            translation: t_rel,
        };
        let reconstructed = p.frame().compose(&rel);
        assert!((reconstructed.translation - c.translation).amax() < 1e-9);
        assert!((reconstructed.rotation - c.rotation_matrix()).amax() < 1e-9);
    }

    #[test]
    fn unit_cube_inertia() {
        let mut c = create_box("cube", 12.0, 1000.0, 1000.0, 1000.0).unwrap();
        let i = link_inertia(&c).unwrap();
        assert_relative_eq!(i[(0, 0)], 2.0, epsilon = 1e-12);
        assert_relative_eq!(i[(1, 1)], 2.0, epsilon = 1e-12);
        assert_relative_eq!(i[(2, 2)], 2.0, epsilon = 1e-12);
        c.mass = 0.0;
        assert!(link_inertia(&c).is_err());
    }

    #[test]
    fn cylinder_axial_inertia() {
        let c = create_cylinder("disk", 2.0, 500.0, 1000.0).unwrap();
        let i = link_inertia(&c).unwrap();
        assert_relative_eq!(i[(2, 2)], 2.0 * 0.5 * 0.5 / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn mass_properties_single_and_symmetric() {
        let mut asm = Assembly::new();
        let c = place(
            &create_box("solo", 2.0, 100.0, 200.0, 300.0).unwrap(),
            5.0,
            6.0,
            7.0,
            0.0,
            None,
        );
        asm.add(c.clone()).unwrap();
        asm.finalize().unwrap();
        let props = asm.mass_properties().unwrap();
        assert_relative_eq!(props.mass, 2.0, epsilon = 1e-15);
        assert!((props.com - Vec3::new(0.005, 0.006, 0.007)).amax() < 1e-12);
        let own = link_inertia(&c).unwrap();
        assert!((props.inertia - own).amax() < 1e-15);

        // two equal boxes symmetric about the origin
        let mut asm2 = Assembly::new();
        let b = create_box("b", 1.0, 10.0, 10.0, 10.0).unwrap();
        asm2.add(place(&b, 50.0, 0.0, 0.0, 0.0, Some("_1"))).unwrap();
        asm2.add(place(&b, -50.0, 0.0, 0.0, 0.0, Some("_2"))).unwrap();
        asm2.set_parent("b_2", Some("b_1")).unwrap();
        asm2.finalize().unwrap();
        let props = asm2.mass_properties().unwrap();
        assert!(props.com.amax() < 1e-15);
        assert_relative_eq!(props.mass, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn parallel_axis_makes_com_inertia_minimal() {
        let mut asm = Assembly::new();
        asm.add(place(&create_box("a", 1.5, 60.0, 20.0, 10.0).unwrap(), 30.0, 0.0, 0.0, 0.0, None))
            .unwrap();
        asm.add(place(&create_box("b", 0.7, 20.0, 50.0, 10.0).unwrap(), -10.0, 25.0, 5.0, 30.0, None))
            .unwrap();
        asm.add(place(&create_box("c", 0.9, 10.0, 10.0, 40.0).unwrap(), 0.0, -15.0, 20.0, -45.0, None))
            .unwrap();
        asm.set_parent("b", Some("a")).unwrap();
        asm.set_parent("c", Some("a")).unwrap();
        asm.finalize().unwrap();
        let props = asm.mass_properties().unwrap();

        // inertia about any shifted reference point dominates the COM inertia
        let shifted_about = |point: Vec3| -> Mat3 {
            let d = props.com - point;
            props.inertia + props.mass * (Mat3::identity() * d.dot(&d) - d * d.transpose())
        };
        for p in [
            Vec3::new(0.01, 0.0, 0.0),
            Vec3::new(-0.02, 0.015, 0.03),
            Vec3::new(0.1, -0.05, 0.02),
        ] {
            let shifted = shifted_about(props.com + p);
            for k in 0..3 {
                assert!(shifted[(k, k)] >= props.inertia[(k, k)] - 1e-15);
            }
        }
    }

    #[test]
    fn component_solid_matches_pose() {
        let c = place(
            &create_cylinder("wheel", 0.1, 50.0, 10.0).unwrap(),
            0.0,
            55.0,
            0.0,
            0.0,
            None,
        );
        let solid = component_solid(&c);
        let bb = crate::solids::aabb(&solid);
        assert!((bb.center() - Vec3::new(0.0, 55.0, 0.0)).amax() < 1e-12);
    }
}
