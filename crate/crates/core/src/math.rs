//! Shared geometric primitives: vectors, rotations, rigid transforms and
//! axis-aligned bounding boxes. All other modules build on these.

use nalgebra::{Matrix3, Vector2, Vector3};

/// Coordinate triple. Unit-agnostic; robotics uses millimetres, the flight
/// model uses metres.
pub type Vec3 = Vector3<f64>;

/// Planar point, used by support polygons and panel layouts.
pub type Vec2 = Vector2<f64>;

/// Row-major 3x3 real matrix.
pub type Mat3 = Matrix3<f64>;

/// Tolerance used when checking that a rotation matrix is orthonormal.
pub const ORTHONORMAL_TOL: f64 = 1e-9;

/// Rotation about the global z axis, angle in radians.
pub fn rot_z(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// Rotation from roll-pitch-yaw (fixed-axis x, y, z; URDF convention):
/// `R = Rz(yaw) * Ry(pitch) * Rx(roll)`.
pub fn rpy_to_matrix(roll: f64, pitch: f64, yaw: f64) -> Mat3 {
    let (sr, cr) = roll.sin_cos();
    let (sp, cp) = pitch.sin_cos();
    let (sy, cy) = yaw.sin_cos();
    Mat3::new(
        cy * cp,
        cy * sp * sr - sy * cr,
        cy * sp * cr + sy * sr,
        sy * cp,
        sy * sp * sr + cy * cr,
        sy * sp * cr - cy * sr,
        -sp,
        cp * sr,
        cp * cr,
    )
}

/// Extract roll-pitch-yaw (ZYX convention) from a rotation matrix.
///
/// At the gimbal-lock branch (pitch = ±π/2) roll is set to zero and the
/// remaining freedom is absorbed into yaw.
pub fn matrix_to_rpy(r: &Mat3) -> (f64, f64, f64) {
    let sp = -r[(2, 0)];
    if sp.abs() > 1.0 - 1e-12 {
        let pitch = if sp > 0.0 {
            std::f64::consts::FRAC_PI_2
        } else {
            -std::f64::consts::FRAC_PI_2
        };
        let yaw = f64::atan2(-r[(0, 1)], r[(1, 1)]);
        (0.0, pitch, yaw)
    } else {
        let pitch = sp.asin();
        let roll = f64::atan2(r[(2, 1)], r[(2, 2)]);
        let yaw = f64::atan2(r[(1, 0)], r[(0, 0)]);
        (roll, pitch, yaw)
    }
}

/// Rigid placement: rotation followed by translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            rotation: Mat3::identity(),
            translation: Vec3::zeros(),
        }
    }

    /// Rotation about global z by `a_deg` degrees, then translation.
    pub fn from_yaw_deg(x: f64, y: f64, z: f64, a_deg: f64) -> Self {
        Self {
            rotation: rot_z(a_deg.to_radians()),
            translation: Vec3::new(x, y, z),
        }
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// Max-norm of `RᵀR − I`; zero for an exact rotation.
    pub fn orthonormality_defect(&self) -> f64 {
        let d = self.rotation.transpose() * self.rotation - Mat3::identity();
        d.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_rigid(&self) -> bool {
        self.orthonormality_defect() <= ORTHONORMAL_TOL && self.rotation.determinant() > 0.0
    }
}

/// Axis-aligned bounding box, `min ≤ max` componentwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        debug_assert!(min.x <= max.x && min.y <= max.y && min.z <= max.z);
        Self { min, max }
    }

    /// Smallest box containing a set of points. Panics on an empty iterator.
    pub fn from_points<I: IntoIterator<Item = Vec3>>(points: I) -> Self {
        let mut it = points.into_iter();
        let first = it.next().expect("Aabb::from_points: empty iterator");
        let mut min = first;
        let mut max = first;
        for p in it {
            min = min.inf(&p);
            max = max.sup(&p);
        }
        Self { min, max }
    }

    pub fn hull(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: self.min.inf(&other.min),
            max: self.max.sup(&other.max),
        }
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) * 0.5
    }

    pub fn extents(&self) -> Vec3 {
        self.max - self.min
    }

    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        p.x >= self.min.x - tol
            && p.y >= self.min.y - tol
            && p.z >= self.min.z - tol
            && p.x <= self.max.x + tol
            && p.y <= self.max.y + tol
            && p.z <= self.max.z + tol
    }

    pub fn approx_eq(&self, other: &Aabb, tol: f64) -> bool {
        (self.min - other.min).amax() <= tol && (self.max - other.max).amax() <= tol
    }
}
