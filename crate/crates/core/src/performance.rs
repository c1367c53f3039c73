//! First-order performance evaluators: structural stress checks for chairs
//! and spoons, static stability via support polygons, and cabinet
//! storage/cost metrics.
//!
//! All quantities are SI (kg, m, Pa) unless a function says otherwise; the
//! cabinet evaluators work in any consistent length unit (the CLI feeds them
//! inches).

use crate::math::{Vec2, Vec3};
use thiserror::Error;

/// Gravitational acceleration used by the structural checks.
pub const G: f64 = 9.8;

#[derive(Debug, Error, PartialEq)]
pub enum PerfError {
    #[error("quantity {0} must be strictly positive, got {1}")]
    NonPositive(&'static str, f64),
    #[error("need at least 3 non-collinear contact points for a support polygon")]
    DegenerateContacts,
    #[error("cabinet spec invalid: board thickness {0} too large for outer dimensions")]
    BoardTooThick(f64),
}

/// Homogeneous material properties. Strengths in Pa, density kg/m³, cost per m³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub density: f64,
    pub compressive_strength: f64,
    pub bending_strength: f64,
    pub yield_strength: f64,
    pub elastic_modulus: f64,
    pub cost_per_volume: f64,
}

impl Material {
    /// Oak preset; compressive strength around 37 MPa.
    pub fn oak() -> Material {
        Material {
            density: 750.0,
            compressive_strength: 37.0e6,
            bending_strength: 100.0e6,
            yield_strength: 40.0e6,
            elastic_modulus: 11.0e9,
            cost_per_volume: 800.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StressMode {
    LegCompression,
    SeatBending,
    BackStress,
    NeckBending,
}

/// Stress against capacity; `pass ⇔ stress ≤ capacity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressReport {
    pub mode: StressMode,
    pub stress: f64,
    pub capacity: f64,
    pub pass: bool,
}

impl StressReport {
    fn new(mode: StressMode, stress: f64, capacity: f64) -> Self {
        StressReport {
            mode,
            stress,
            capacity,
            pass: stress <= capacity,
        }
    }
}

/// Compressive stress in a chair leg with the load split evenly:
/// `σ = (W·g/n)/A`.
pub fn leg_compression(
    weight: f64,
    n_legs: u32,
    leg_area: f64,
    strength: f64,
) -> Result<StressReport, PerfError> {
    if !(leg_area > 0.0) {
        return Err(PerfError::NonPositive("leg_area", leg_area));
    }
    if n_legs == 0 {
        return Err(PerfError::NonPositive("n_legs", 0.0));
    }
    let stress = weight * G / (n_legs as f64) / leg_area;
    Ok(StressReport::new(
        StressMode::LegCompression,
        stress,
        strength,
    ))
}

/// Seat as a simply supported plank with a center point load:
/// `σ = 3·W·g·span / (2·breadth·thickness²)`.
pub fn seat_bending(
    weight: f64,
    span: f64,
    breadth: f64,
    thickness: f64,
    bending_strength: f64,
) -> Result<StressReport, PerfError> {
    if !(thickness > 0.0) {
        return Err(PerfError::NonPositive("thickness", thickness));
    }
    if !(breadth > 0.0) {
        return Err(PerfError::NonPositive("breadth", breadth));
    }
    let stress = 3.0 * weight * G * span / (2.0 * breadth * thickness * thickness);
    Ok(StressReport::new(
        StressMode::SeatBending,
        stress,
        bending_strength,
    ))
}

/// Back attachment stress with one third of the total weight on the back:
/// `σ = (W·g/3)/A`.
pub fn back_stress(
    weight: f64,
    attach_area: f64,
    strength: f64,
) -> Result<StressReport, PerfError> {
    if !(attach_area > 0.0) {
        return Err(PerfError::NonPositive("attach_area", attach_area));
    }
    let stress = weight * G / 3.0 / attach_area;
    Ok(StressReport::new(StressMode::BackStress, stress, strength))
}

/// Bending stress at a spoon neck of rectangular section:
/// `σ = M·y/I = 6·F·L/(b·t²)` with `M = F·L`, `y = t/2`, `I = b·t³/12`.
pub fn spoon_neck_bending(
    force: f64,
    lever_arm: f64,
    breadth: f64,
    thickness: f64,
    yield_strength: f64,
) -> Result<StressReport, PerfError> {
    if !(thickness > 0.0) {
        return Err(PerfError::NonPositive("thickness", thickness));
    }
    if !(breadth > 0.0) {
        return Err(PerfError::NonPositive("breadth", breadth));
    }
    let stress = 6.0 * force * lever_arm / (breadth * thickness * thickness);
    Ok(StressReport::new(
        StressMode::NeckBending,
        stress,
        yield_strength,
    ))
}

/// Convex polygon of ground-contact points, counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportPolygon {
    vertices: Vec<Vec2>,
}

impl SupportPolygon {
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let mut a = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            a += p.x * q.y - q.x * p.y;
        }
        a / 2.0
    }

    /// Signed distance from `p` to the edge line `a→b`; positive inside a
    /// CCW polygon.
    fn edge_distance(a: Vec2, b: Vec2, p: Vec2) -> f64 {
        let e = b - a;
        let len = e.norm();
        (e.x * (p.y - a.y) - e.y * (p.x - a.x)) / len
    }

    /// Minimum signed distance over all edges; positive iff strictly inside.
    pub fn signed_inset(&self, p: Vec2) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| Self::edge_distance(self.vertices[i], self.vertices[(i + 1) % n], p))
            .fold(f64::INFINITY, f64::min)
    }
}

fn cross2(o: Vec2, a: Vec2, b: Vec2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex hull of the contact points (monotone chain), counterclockwise.
pub fn support_polygon(contact_points: &[Vec2]) -> Result<SupportPolygon, PerfError> {
    if contact_points.len() < 3 {
        return Err(PerfError::DegenerateContacts);
    }
    let mut pts = contact_points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| (a.x - b.x).abs() == 0.0 && (a.y - b.y).abs() == 0.0);

    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross2(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(PerfError::DegenerateContacts);
    }
    Ok(SupportPolygon { vertices: lower })
}

/// A body is statically stable when its center of mass projects strictly
/// inside the support polygon: signed inset must exceed `tol`, so a COM
/// exactly on the boundary with `tol = 0` counts as unstable.
pub fn is_statically_stable(com: &Vec3, poly: &SupportPolygon, tol: f64) -> bool {
    poly.signed_inset(Vec2::new(com.x, com.y)) > tol
}

/// Minimum tilt (radians) about any support-polygon edge that moves the COM
/// over that edge: `min over edges of atan2(d_e, com.z)`. Zero when the COM
/// projection is outside the hull.
pub fn tipping_angle(com: &Vec3, poly: &SupportPolygon) -> f64 {
    assert!(com.z > 0.0, "tipping angle needs the COM above the ground");
    let inset = poly.signed_inset(Vec2::new(com.x, com.y));
    if inset <= 0.0 {
        return 0.0;
    }
    let n = poly.vertices.len();
    (0..n)
        .map(|i| {
            let d = SupportPolygon::edge_distance(
                poly.vertices[i],
                poly.vertices[(i + 1) % n],
                Vec2::new(com.x, com.y),
            );
            f64::atan2(d, com.z)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Cabinet parametrization. Lengths share one unit; the CLI uses inches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CabinetSpec {
    pub height: f64,
    pub width: f64,
    pub depth: f64,
    pub board_thickness: f64,
    pub n_shelves: u32,
}

impl CabinetSpec {
    pub fn new(
        height: f64,
        width: f64,
        depth: f64,
        board_thickness: f64,
        n_shelves: u32,
    ) -> Result<Self, PerfError> {
        for (name, v) in [("height", height), ("width", width), ("depth", depth)] {
            if !(v > 0.0) {
                return Err(PerfError::NonPositive(name, v));
            }
        }
        if board_thickness < 0.0
            || board_thickness >= height.min(width).min(depth) / 2.0
        {
            return Err(PerfError::BoardTooThick(board_thickness));
        }
        Ok(CabinetSpec {
            height,
            width,
            depth,
            board_thickness,
            n_shelves,
        })
    }
}

/// Enclosed storage volume, excluding shelf boards:
/// `(W−2t)(H−2t)(D−t) − n·(W−2t)(D−t)·t`.
pub fn cabinet_storage(spec: &CabinetSpec) -> f64 {
    let t = spec.board_thickness;
    let iw = spec.width - 2.0 * t;
    let ih = spec.height - 2.0 * t;
    let id = spec.depth - t;
    iw * ih * id - spec.n_shelves as f64 * iw * id * t
}

/// Board volume: top and bottom (`2·W·D·t`), sides (`2·(H−2t)·D·t`),
/// back (`W·(H−2t)·t`), shelves (`n·(W−2t)·(D−t)·t`).
pub fn cabinet_material_volume(spec: &CabinetSpec) -> f64 {
    let t = spec.board_thickness;
    let ih = spec.height - 2.0 * t;
    2.0 * spec.width * spec.depth * t
        + 2.0 * ih * spec.depth * t
        + spec.width * ih * t
        + spec.n_shelves as f64 * (spec.width - 2.0 * t) * (spec.depth - t) * t
}

pub fn cabinet_material_cost(spec: &CabinetSpec, cost_per_volume: f64) -> f64 {
    cabinet_material_volume(spec) * cost_per_volume
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn leg_compression_matches_reference_arithmetic() {
        let r = leg_compression(100.0, 4, 0.00258064, 37.0e6).unwrap();
        assert!((r.stress - 94937.7).abs() < 0.05);
        assert!(r.pass);

        let zero = leg_compression(0.0, 4, 0.00258064, 37.0e6).unwrap();
        assert_eq!(zero.stress, 0.0);
        assert!(zero.pass);

        let half = leg_compression(100.0, 4, 2.0 * 0.00258064, 37.0e6).unwrap();
        assert_relative_eq!(half.stress, r.stress / 2.0, epsilon = 1e-9);

        assert!(leg_compression(100.0, 4, 0.0, 37.0e6).is_err());
    }

    #[test]
    fn seat_bending_formula_and_scaling() {
        let r = seat_bending(80.0, 0.45, 0.40, 0.02, 20.0e6).unwrap();
        assert_relative_eq!(r.stress, 3_307_500.0, epsilon = 1e-6);
        assert!(r.pass);

        let thick = seat_bending(80.0, 0.45, 0.40, 0.04, 20.0e6).unwrap();
        assert_relative_eq!(thick.stress, r.stress / 4.0, epsilon = 1e-9);

        assert_eq!(
            seat_bending(0.0, 0.45, 0.40, 0.02, 20.0e6).unwrap().stress,
            0.0
        );
        assert!(seat_bending(80.0, 0.45, 0.40, 0.0, 20.0e6).is_err());
    }

    #[test]
    fn back_stress_third_of_weight() {
        let r = back_stress(90.0, 0.003, 1.0e6).unwrap();
        assert_relative_eq!(r.stress, 98_000.0, epsilon = 1e-9);
        assert_eq!(back_stress(0.0, 0.003, 1.0e6).unwrap().stress, 0.0);
        let fail = back_stress(90.0, 0.003, 90_000.0).unwrap();
        assert!(!fail.pass);
        assert!(fail.stress > fail.capacity);
    }

    #[test]
    fn spoon_neck_bending_formula() {
        let r = spoon_neck_bending(20.0, 0.05, 0.01, 0.002, 2.0e8).unwrap();
        assert_relative_eq!(r.stress, 1.5e8, epsilon = 1.0);
        assert!(r.pass);
        // linear in force
        let r2 = spoon_neck_bending(40.0, 0.05, 0.01, 0.002, 2.0e8).unwrap();
        assert_relative_eq!(r2.stress, 2.0 * r.stress, epsilon = 1e-6);
        // same as M·y/I evaluated separately
        let m = 20.0 * 0.05;
        let y = 0.002 / 2.0;
        let i = 0.01 * 0.002f64.powi(3) / 12.0;
        assert_relative_eq!(r.stress, m * y / i, epsilon = 1e-12);
    }

    #[test]
    fn every_report_satisfies_pass_contract() {
        let reports = [
            leg_compression(120.0, 4, 1e-3, 5e5).unwrap(),
            seat_bending(90.0, 0.5, 0.4, 0.01, 2e7).unwrap(),
            back_stress(150.0, 1e-4, 1e6).unwrap(),
            spoon_neck_bending(50.0, 0.08, 0.008, 0.001, 1e8).unwrap(),
        ];
        for r in reports {
            assert_eq!(r.pass, r.stress <= r.capacity);
        }
    }

    #[test]
    fn hull_of_square_feet() {
        let pts = [
            Vec2::new(0.2, 0.2),
            Vec2::new(-0.2, 0.2),
            Vec2::new(-0.2, -0.2),
            Vec2::new(0.2, -0.2),
        ];
        let poly = support_polygon(&pts).unwrap();
        assert_eq!(poly.vertices().len(), 4);
        assert_relative_eq!(poly.area(), 0.16, epsilon = 1e-12);
    }

    #[test]
    fn hull_discards_interior_points() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.5, 0.5),
            Vec2::new(0.25, 0.75),
        ];
        let poly = support_polygon(&pts).unwrap();
        assert_eq!(poly.vertices().len(), 4);
    }

    #[test]
    fn hull_rejects_collinear() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(2.0, 2.0),
        ];
        assert_eq!(
            support_polygon(&pts).unwrap_err(),
            PerfError::DegenerateContacts
        );
    }

    #[test]
    fn hull_contains_all_inputs() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let pts: Vec<Vec2> = (0..20)
                .map(|_| Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let poly = match support_polygon(&pts) {
                Ok(p) => p,
                Err(_) => continue,
            };
            for p in &pts {
                assert!(poly.signed_inset(*p) >= -1e-12);
            }
        }
    }

    #[test]
    fn stability_predicate() {
        let poly = support_polygon(&[
            Vec2::new(0.2, 0.2),
            Vec2::new(-0.2, 0.2),
            Vec2::new(-0.2, -0.2),
            Vec2::new(0.2, -0.2),
        ])
        .unwrap();
        assert!(is_statically_stable(&Vec3::new(0.0, 0.0, 1.0), &poly, 0.0));
        assert!(!is_statically_stable(&Vec3::new(0.5, 0.0, 1.0), &poly, 0.0));
        // exactly on an edge with tol 0 counts as unstable
        assert!(!is_statically_stable(&Vec3::new(0.2, 0.0, 1.0), &poly, 0.0));
    }

    #[test]
    fn tipping_angle_square_feet() {
        let poly = support_polygon(&[
            Vec2::new(0.2, 0.2),
            Vec2::new(-0.2, 0.2),
            Vec2::new(-0.2, -0.2),
            Vec2::new(0.2, -0.2),
        ])
        .unwrap();
        let a = tipping_angle(&Vec3::new(0.0, 0.0, 0.4), &poly);
        assert_relative_eq!(a, 0.5f64.atan(), epsilon = 1e-12);
        // on the boundary
        assert_eq!(tipping_angle(&Vec3::new(0.2, 0.0, 0.4), &poly), 0.0);
        // raising the COM strictly decreases the angle
        let higher = tipping_angle(&Vec3::new(0.0, 0.0, 0.8), &poly);
        assert!(higher < a);
        // consistency with the stability predicate
        assert_eq!(
            tipping_angle(&Vec3::new(0.1, 0.05, 0.4), &poly) > 0.0,
            is_statically_stable(&Vec3::new(0.1, 0.05, 0.4), &poly, 0.0)
        );
    }

    #[test]
    fn cabinet_storage_and_material() {
        // zero thickness degenerates to the outer volume
        let open = CabinetSpec::new(10.0, 8.0, 6.0, 0.0, 0).unwrap();
        assert_relative_eq!(cabinet_storage(&open), 480.0, epsilon = 1e-12);
        assert_eq!(cabinet_material_volume(&open), 0.0);

        // thicker boards store less
        let thin = CabinetSpec::new(55.0, 55.0, 55.0, 0.25, 0).unwrap();
        let thick = CabinetSpec::new(55.0, 55.0, 55.0, 0.5, 0).unwrap();
        assert!(cabinet_storage(&thin) > cabinet_storage(&thick));
        assert_relative_eq!(cabinet_storage(&thick), 158_922.0, epsilon = 1e-9);

        // shelf bookkeeping: every shelf board converts storage into material
        // volume one-for-one, so their sum is shelf-invariant
        let base = CabinetSpec::new(30.0, 20.0, 18.0, 0.75, 0).unwrap();
        let total0 = cabinet_storage(&base) + cabinet_material_volume(&base);
        for n in 1..5u32 {
            let spec = CabinetSpec { n_shelves: n, ..base };
            let total = cabinet_storage(&spec) + cabinet_material_volume(&spec);
            assert_relative_eq!(total, total0, epsilon = 1e-9);
        }

        assert_relative_eq!(
            cabinet_material_cost(&thick, 0.05),
            cabinet_material_volume(&thick) * 0.05,
            epsilon = 1e-12
        );
        assert!(CabinetSpec::new(10.0, 10.0, 10.0, 5.0, 0).is_err());
    }
}
