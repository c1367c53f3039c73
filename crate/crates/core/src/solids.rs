//! CSG solids: box/cylinder primitives, rigid placement, union/difference
//! trees, interference predicates for axis-aligned boxes, triangulation and
//! mesh analytics, and the ASCII STL writer.
//!
//! `Difference` is representational only: the mesh pipeline concatenates part
//! meshes and refuses to evaluate booleans, so `triangulate` rejects any tree
//! containing a `Difference` node.

use crate::math::{Aabb, RigidTransform, Vec3};
use thiserror::Error;

/// Default cylinder tessellation.
pub const DEFAULT_SEGMENTS: u32 = 64;

#[derive(Debug, Error, PartialEq)]
pub enum SolidError {
    #[error("dimension must be strictly positive, got {0}")]
    NonPositiveDimension(f64),
    #[error("cylinder needs at least 8 segments, got {0}")]
    TooFewSegments(u32),
    #[error("union of zero solids")]
    EmptyUnion,
    #[error("mesh booleans are unsupported: difference nodes cannot be triangulated")]
    UnsupportedBoolean,
    #[error("expected an axis-aligned placed box (rotation a multiple of 90 degrees about z)")]
    NotAxisAlignedBox,
}

/// Solid primitive, centered at the local origin. Cylinder axis is local z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Box { w: f64, h: f64, d: f64 },
    Cylinder { r: f64, h: f64, segments: u32 },
}

impl Primitive {
    /// Local-frame bounding box.
    pub fn local_aabb(&self) -> Aabb {
        match *self {
            Primitive::Box { w, h, d } => {
                let e = Vec3::new(w / 2.0, h / 2.0, d / 2.0);
                Aabb::new(-e, e)
            }
            Primitive::Cylinder { r, h, .. } => {
                let e = Vec3::new(r, r, h / 2.0);
                Aabb::new(-e, e)
            }
        }
    }
}

/// CSG tree over placed primitives.
#[derive(Debug, Clone, PartialEq)]
pub enum SolidNode {
    Leaf {
        primitive: Primitive,
        transform: RigidTransform,
    },
    Union {
        children: Vec<SolidNode>,
    },
    Difference {
        base: Box<SolidNode>,
        tools: Vec<SolidNode>,
    },
}

/// Axis-aligned box of size `w × h × d` centered at the origin.
pub fn make_box(w: f64, h: f64, d: f64) -> Result<SolidNode, SolidError> {
    for dim in [w, h, d] {
        if !(dim > 0.0) {
            return Err(SolidError::NonPositiveDimension(dim));
        }
    }
    Ok(SolidNode::Leaf {
        primitive: Primitive::Box { w, h, d },
        transform: RigidTransform::identity(),
    })
}

/// Cylinder of radius `r` and height `h`, axis z, centered at the origin.
pub fn make_cylinder(r: f64, h: f64, segments: u32) -> Result<SolidNode, SolidError> {
    for dim in [r, h] {
        if !(dim > 0.0) {
            return Err(SolidError::NonPositiveDimension(dim));
        }
    }
    if segments < 8 {
        return Err(SolidError::TooFewSegments(segments));
    }
    Ok(SolidNode::Leaf {
        primitive: Primitive::Cylinder { r, h, segments },
        transform: RigidTransform::identity(),
    })
}

/// Rotate `node` about the global z axis by `a_deg` degrees, then translate
/// by `(x, y, z)`. Distributes over the tree so the node kinds are preserved.
pub fn place(node: &SolidNode, x: f64, y: f64, z: f64, a_deg: f64) -> SolidNode {
    transformed(node, &RigidTransform::from_yaw_deg(x, y, z, a_deg))
}

/// Apply an arbitrary rigid transform to a whole tree.
pub fn transformed(node: &SolidNode, t: &RigidTransform) -> SolidNode {
    match node {
        SolidNode::Leaf {
            primitive,
            transform,
        } => SolidNode::Leaf {
            primitive: *primitive,
            transform: t.compose(transform),
        },
        SolidNode::Union { children } => SolidNode::Union {
            children: children.iter().map(|c| transformed(c, t)).collect(),
        },
        SolidNode::Difference { base, tools } => SolidNode::Difference {
            base: Box::new(transformed(base, t)),
            tools: tools.iter().map(|c| transformed(c, t)).collect(),
        },
    }
}

pub fn union(nodes: Vec<SolidNode>) -> Result<SolidNode, SolidError> {
    if nodes.is_empty() {
        return Err(SolidError::EmptyUnion);
    }
    Ok(SolidNode::Union { children: nodes })
}

/// Boolean subtraction node. Not renderable; see module docs.
pub fn difference(base: SolidNode, tools: Vec<SolidNode>) -> SolidNode {
    SolidNode::Difference {
        base: Box::new(base),
        tools,
    }
}

/// Bounding box of a tree. Exact for axis-aligned boxes; conservative for
/// rotated cylinders (box of transformed corner points). A difference is
/// bounded by its base.
pub fn aabb(node: &SolidNode) -> Aabb {
    match node {
        SolidNode::Leaf {
            primitive,
            transform,
        } => {
            let local = primitive.local_aabb();
            let (lo, hi) = (local.min, local.max);
            let corners = (0..8).map(|i| {
                let p = Vec3::new(
                    if i & 1 == 0 { lo.x } else { hi.x },
                    if i & 2 == 0 { lo.y } else { hi.y },
                    if i & 4 == 0 { lo.z } else { hi.z },
                );
                transform.apply(&p)
            });
            Aabb::from_points(corners)
        }
        SolidNode::Union { children } => children
            .iter()
            .map(aabb)
            .reduce(|a, b| a.hull(&b))
            .expect("union is nonempty by construction"),
        SolidNode::Difference { base, .. } => aabb(base),
    }
}

fn axis_aligned_box_aabb(node: &SolidNode) -> Result<Aabb, SolidError> {
    let SolidNode::Leaf {
        primitive: Primitive::Box { .. },
        transform,
    } = node
    else {
        return Err(SolidError::NotAxisAlignedBox);
    };
    let r = &transform.rotation;
    // Rotation about z by a multiple of 90 degrees: z maps to z and x maps
    // onto an axis direction.
    let ex = r * Vec3::new(1.0, 0.0, 0.0);
    let ez = r * Vec3::new(0.0, 0.0, 1.0);
    let tol = 1e-9;
    let x_axis_aligned = ex.iter().filter(|c| c.abs() > tol).count() == 1;
    if !x_axis_aligned || (ez - Vec3::new(0.0, 0.0, 1.0)).amax() > tol {
        return Err(SolidError::NotAxisAlignedBox);
    }
    Ok(aabb(node))
}

/// Do the interiors of two axis-aligned placed boxes intersect by more than
/// `eps`? Contact within `eps` counts as touch, not overlap.
pub fn boxes_overlap(a: &SolidNode, b: &SolidNode, eps: f64) -> Result<bool, SolidError> {
    let (pa, pb) = (axis_aligned_box_aabb(a)?, axis_aligned_box_aabb(b)?);
    Ok(penetrations(&pa, &pb).iter().all(|&p| p > eps))
}

/// Do two axis-aligned placed boxes touch: closed sets intersect (within
/// `eps`) while interiors do not?
pub fn boxes_touch(a: &SolidNode, b: &SolidNode, eps: f64) -> Result<bool, SolidError> {
    let (pa, pb) = (axis_aligned_box_aabb(a)?, axis_aligned_box_aabb(b)?);
    let p = penetrations(&pa, &pb);
    let closed_intersect = p.iter().all(|&v| v >= -eps);
    let interiors_intersect = p.iter().all(|&v| v > eps);
    Ok(closed_intersect && !interiors_intersect)
}

/// Per-axis interval penetration depth; negative values are gaps.
fn penetrations(a: &Aabb, b: &Aabb) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = a.max[i].min(b.max[i]) - a.min[i].max(b.min[i]);
    }
    out
}

/// Indexed triangle mesh.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    fn append(&mut self, mut other: TriMesh) {
        let offset = self.vertices.len();
        self.vertices.append(&mut other.vertices);
        self.triangles.extend(
            other
                .triangles
                .iter()
                .map(|t| [t[0] + offset, t[1] + offset, t[2] + offset]),
        );
    }

    /// True when every undirected edge belongs to exactly two triangles.
    pub fn is_watertight(&self) -> bool {
        use std::collections::HashMap;
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (a.min(b), a.max(b));
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        !counts.is_empty() && counts.values().all(|&c| c == 2)
    }
}

/// Triangulate a tree of placed primitives by concatenating primitive meshes
/// with transforms baked into the vertices.
pub fn triangulate(node: &SolidNode) -> Result<TriMesh, SolidError> {
    let mut mesh = TriMesh::default();
    collect_meshes(node, &mut mesh)?;
    Ok(mesh)
}

fn collect_meshes(node: &SolidNode, out: &mut TriMesh) -> Result<(), SolidError> {
    match node {
        SolidNode::Leaf {
            primitive,
            transform,
        } => {
            let mut m = primitive_mesh(primitive);
            for v in &mut m.vertices {
                *v = transform.apply(v);
            }
            out.append(m);
            Ok(())
        }
        SolidNode::Union { children } => {
            for c in children {
                collect_meshes(c, out)?;
            }
            Ok(())
        }
        SolidNode::Difference { .. } => Err(SolidError::UnsupportedBoolean),
    }
}

fn primitive_mesh(p: &Primitive) -> TriMesh {
    match *p {
        Primitive::Box { w, h, d } => box_mesh(w, h, d),
        Primitive::Cylinder { r, h, segments } => cylinder_mesh(r, h, segments),
    }
}

fn box_mesh(w: f64, h: f64, d: f64) -> TriMesh {
    let (x, y, z) = (w / 2.0, h / 2.0, d / 2.0);
    let vertices = vec![
        Vec3::new(-x, -y, -z),
        Vec3::new(x, -y, -z),
        Vec3::new(x, y, -z),
        Vec3::new(-x, y, -z),
        Vec3::new(-x, -y, z),
        Vec3::new(x, -y, z),
        Vec3::new(x, y, z),
        Vec3::new(-x, y, z),
    ];
    // Outward-facing winding (counterclockwise seen from outside).
    let triangles = vec![
        [0, 2, 1],
        [0, 3, 2], // bottom (-z)
        [4, 5, 6],
        [4, 6, 7], // top (+z)
        [0, 1, 5],
        [0, 5, 4], // front (-y)
        [2, 3, 7],
        [2, 7, 6], // back (+y)
        [0, 4, 7],
        [0, 7, 3], // left (-x)
        [1, 2, 6],
        [1, 6, 5], // right (+x)
    ];
    TriMesh {
        vertices,
        triangles,
    }
}

fn cylinder_mesh(r: f64, h: f64, segments: u32) -> TriMesh {
    let n = segments as usize;
    let hz = h / 2.0;
    let mut vertices = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        let a = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
        vertices.push(Vec3::new(r * a.cos(), r * a.sin(), -hz));
    }
    for i in 0..n {
        let a = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
        vertices.push(Vec3::new(r * a.cos(), r * a.sin(), hz));
    }
    let bottom_center = vertices.len();
    vertices.push(Vec3::new(0.0, 0.0, -hz));
    let top_center = vertices.len();
    vertices.push(Vec3::new(0.0, 0.0, hz));

    let mut triangles = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        // side quad, outward
        triangles.push([i, j, n + j]);
        triangles.push([i, n + j, n + i]);
        // bottom cap faces -z
        triangles.push([bottom_center, j, i]);
        // top cap faces +z
        triangles.push([top_center, n + i, n + j]);
    }
    TriMesh {
        vertices,
        triangles,
    }
}

/// Signed volume by the divergence theorem: `Σ v0 · (v1 × v2) / 6`.
/// Positive for outward-oriented watertight meshes.
pub fn mesh_volume(mesh: &TriMesh) -> f64 {
    mesh.triangles
        .iter()
        .map(|t| {
            let (a, b, c) = (
                mesh.vertices[t[0]],
                mesh.vertices[t[1]],
                mesh.vertices[t[2]],
            );
            a.dot(&b.cross(&c)) / 6.0
        })
        .sum()
}

/// ASCII STL with normals recomputed from vertex winding, fixed 6-decimal
/// formatting, and triangles emitted in mesh order.
pub fn write_stl_ascii(mesh: &TriMesh, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("solid {name}"));
    for t in &mesh.triangles {
        let (a, b, c) = (
            mesh.vertices[t[0]],
            mesh.vertices[t[1]],
            mesh.vertices[t[2]],
        );
        let n = (b - a).cross(&(c - a));
        let n = if n.norm() > 0.0 { n / n.norm() } else { n };
        out.push_str(&format!(
            "\nfacet normal {:.6} {:.6} {:.6}\n  outer loop\n",
            n.x, n.y, n.z
        ));
        for v in [a, b, c] {
            out.push_str(&format!("    vertex {:.6} {:.6} {:.6}\n", v.x, v.y, v.z));
        }
        out.push_str("  endloop\nendfacet");
    }
    out.push_str(&format!("\nendsolid {name}"));
    out
}
