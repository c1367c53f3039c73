//! URDF emission: one `<link>` per component (visual, collision, inertial)
//! and one `<joint>` per non-root component with the origin taken from the
//! relative pose. Elements are written in insertion order.

use super::{Assembly, Geometry, JointKind, RobotError, MM_PER_M};
use crate::math::Vec3;
use std::fmt::Write;

pub(super) fn emit(assembly: &Assembly, robot_name: &str) -> Result<String, RobotError> {
    if !assembly.is_finalized() {
        return Err(RobotError::NotFinalized);
    }
    let mut out = String::new();
    writeln!(out, "<?xml version=\"1.0\"?>").unwrap();
    writeln!(out, "<robot name=\"{}\">", xml_escape(robot_name)).unwrap();

    for c in assembly.components() {
        let name = xml_escape(&c.name);
        writeln!(out, "  <link name=\"{name}\">").unwrap();
        let geom = geometry_tag(&c.geometry);
        let offset = c.geometry_offset / MM_PER_M;
        for section in ["visual", "collision"] {
            writeln!(out, "    <{section}>").unwrap();
            writeln!(out, "      <origin xyz=\"{}\" rpy=\"0 0 0\"/>", fmt3(&offset)).unwrap();
            writeln!(out, "      <geometry>{geom}</geometry>").unwrap();
            writeln!(out, "    </{section}>").unwrap();
        }
        writeln!(out, "    <inertial>").unwrap();
        writeln!(out, "      <origin xyz=\"{}\" rpy=\"0 0 0\"/>", fmt3(&offset)).unwrap();
        writeln!(out, "      <mass value=\"{}\"/>", fmt(c.mass)).unwrap();
        let i = if c.mass > 0.0 {
            super::link_inertia(c)?
        } else {
            crate::math::Mat3::zeros()
        };
        writeln!(
            out,
            "      <inertia ixx=\"{}\" ixy=\"{}\" ixz=\"{}\" iyy=\"{}\" iyz=\"{}\" izz=\"{}\"/>",
            fmt(i[(0, 0)]),
            fmt(i[(0, 1)]),
            fmt(i[(0, 2)]),
            fmt(i[(1, 1)]),
            fmt(i[(1, 2)]),
            fmt(i[(2, 2)]),
        )
        .unwrap();
        writeln!(out, "    </inertial>").unwrap();
        writeln!(out, "  </link>").unwrap();
    }

    for c in assembly.components() {
        let Some(parent) = assembly.parent_of(&c.name) else {
            continue;
        };
        let (t_rel, rpy_rel) = assembly.relative_pose(&c.name)?;
        let kind = assembly.joint_kind(&c.name);
        let type_name = match kind {
            JointKind::Fixed => "fixed",
            JointKind::Continuous { .. } => "continuous",
            JointKind::Revolute { .. } => "revolute",
        };
        writeln!(
            out,
            "  <joint name=\"{}_to_{}\" type=\"{type_name}\">",
            xml_escape(parent),
            xml_escape(&c.name)
        )
        .unwrap();
        writeln!(out, "    <parent link=\"{}\"/>", xml_escape(parent)).unwrap();
        writeln!(out, "    <child link=\"{}\"/>", xml_escape(&c.name)).unwrap();
        writeln!(
            out,
            "    <origin xyz=\"{}\" rpy=\"{}\"/>",
            fmt3(&(t_rel / MM_PER_M)),
            fmt3(&rpy_rel)
        )
        .unwrap();
        match kind {
            JointKind::Fixed => {}
            JointKind::Continuous { axis } => {
                writeln!(out, "    <axis xyz=\"{}\"/>", fmt3(&axis)).unwrap();
            }
            JointKind::Revolute { axis, lower, upper } => {
                writeln!(out, "    <axis xyz=\"{}\"/>", fmt3(&axis)).unwrap();
                writeln!(
                    out,
                    "    <limit lower=\"{}\" upper=\"{}\" effort=\"10\" velocity=\"10\"/>",
                    fmt(lower),
                    fmt(upper)
                )
                .unwrap();
            }
        }
        writeln!(out, "  </joint>").unwrap();
    }

    writeln!(out, "</robot>").unwrap();
    Ok(out)
}

fn geometry_tag(g: &Geometry) -> String {
    match *g {
        Geometry::Cuboid { w, h, d } => format!(
            "<box size=\"{} {} {}\"/>",
            fmt(w / MM_PER_M),
            fmt(h / MM_PER_M),
            fmt(d / MM_PER_M)
        ),
        Geometry::Cylinder { r, h } => format!(
            "<cylinder radius=\"{}\" length=\"{}\"/>",
            fmt(r / MM_PER_M),
            fmt(h / MM_PER_M)
        ),
    }
}

fn fmt(v: f64) -> String {
    // -0.0 and tiny rounding noise would churn the output
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

fn fmt3(v: &Vec3) -> String {
    format!("{} {} {}", fmt(v.x), fmt(v.y), fmt(v.z))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
