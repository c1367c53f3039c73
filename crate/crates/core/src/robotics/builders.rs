//! Assembly builders for the three reference robots: quadcopter, serial-link
//! arm, and wheeled platform. Dimensions in mm, masses in kg.

use super::{create_box, create_cylinder, place, Assembly, JointKind, RobotError};
use crate::math::Vec3;

/// Frame bar mass used by [`build_quadcopter`].
pub const FRAME_BAR_MASS_DEFAULT: f64 = 0.01;

/// Alternative heavier frame bar mass used by the co-design variant of the
/// same craft; pass to [`build_quadcopter_with_bar_mass`] if wanted.
pub const FRAME_BAR_MASS_HEAVY: f64 = 0.2526;

/// Reference quadcopter: two crossed frame bars of half-span parameters
/// `l1`/`l2`, four motor stations (base parts, motor, propeller), and a
/// center stack (body, battery, controller, receiver).
///
/// A bar is `2·l·1.5 + 31` long; motor stations sit `l·1.5 + 25` from the
/// center along ±x (bar 1) and ±y (bar 2). `frameBar1` is the root;
/// propellers connect with continuous joints about their axis.
pub fn build_quadcopter(l1: f64, l2: f64) -> Result<Assembly, RobotError> {
    build_quadcopter_with_bar_mass(l1, l2, FRAME_BAR_MASS_DEFAULT)
}

pub fn build_quadcopter_with_bar_mass(
    l1: f64,
    l2: f64,
    bar_mass: f64,
) -> Result<Assembly, RobotError> {
    if !(l1 > 0.0) {
        return Err(RobotError::NonPositiveDimension(l1));
    }
    if !(l2 > 0.0) {
        return Err(RobotError::NonPositiveDimension(l2));
    }

    let motor = create_cylinder("motor", 0.030, 14.0, 32.0)?;
    let motor_base_part1 = create_cylinder("motorBasePart1", 0.01, 14.0, 10.0)?;
    let propeller = create_cylinder("propeller", 0.0135, 65.0, 8.0)?;
    let controller = create_box("controller", 0.0107, 41.0, 38.0, 8.1)?;
    let battery = create_box("battery", 0.015, 70.0, 35.0, 33.0)?;
    let receiver = create_box("receiver", 0.0015, 16.0, 11.0, 5.4)?;
    let motor_base_part2 = create_box("motorBasePart2", 0.01, 20.0, 7.0, 10.0)?;
    let frame_bar1 = create_box("frameBar1", bar_mass, 2.0 * l1 * 1.5 + 31.0, 15.0, 25.0)?;
    let frame_bar2 = create_box("frameBar2", bar_mass, 2.0 * l2 * 1.5 + 31.0, 15.0, 25.0)?;
    let stack_height = 33.0 + 8.1 + 5.4;
    let body = create_box("body", 0.05, 75.0, 75.0, stack_height / 2.0 * 1.2 * 1.5)?;

    let mut asm = Assembly::new();
    asm.add(place(&frame_bar1, 0.0, 0.0, 0.0, 0.0, None))?;
    asm.add(place(&frame_bar2, 0.0, 0.0, 0.0, 90.0, None))?;

    let body_z = stack_height / 4.0 * 1.2 * 1.5 - 4.0;
    asm.add(place(&body, 0.0, 0.0, body_z, 0.0, None))?;

    // four motor stations at distance l·1.5 + 25 (half the bar length minus
    // the tip margin), exact axis placement
    let d1 = l1 * 1.5 + 25.0;
    let d2 = l2 * 1.5 + 25.0;
    let stations = [
        (d1, 0.0, 0.0),
        (0.0, d2, 90.0),
        (-d1, 0.0, 180.0),
        (0.0, -d2, 270.0),
    ];
    let motor_z = 10.0 + 32.0 / 2.0 + 5.0;
    let prop_z = 10.0 + 32.0 + 8.0 / 2.0 + 5.0;
    for (i, (x, y, angle)) in stations.iter().enumerate() {
        let suffix = format!("_{}", i + 1);
        asm.add(place(&motor_base_part1, *x, *y, 10.0, *angle, Some(&suffix)))?;
        asm.add(place(&motor_base_part2, *x, *y, 0.0, *angle, Some(&suffix)))?;
        asm.add(place(&motor, *x, *y, motor_z, *angle, Some(&suffix)))?;
        asm.add(place(&propeller, *x, *y, prop_z, *angle, Some(&suffix)))?;
    }

    // stack battery, controller, receiver above the body plate
    asm.add(place(&battery, 0.0, 0.0, 33.0 / 2.0 + 2.0 + 13.0, 0.0, None))?;
    asm.add(place(
        &controller,
        0.0,
        0.0,
        33.0 + 8.1 / 2.0 + 2.0 + 13.0,
        0.0,
        None,
    ))?;
    asm.add(place(
        &receiver,
        0.0,
        0.0,
        33.0 + 8.1 + 5.4 / 2.0 + 2.0 + 13.0,
        0.0,
        None,
    ))?;

    // frameBar1 is the root
    asm.set_parent("frameBar2", Some("frameBar1"))?;
    asm.set_parent("body", Some("frameBar1"))?;
    for i in 1..=4 {
        asm.set_parent(&format!("motorBasePart1_{i}"), Some("frameBar1"))?;
        asm.set_parent(&format!("motorBasePart2_{i}"), Some("frameBar1"))?;
        asm.set_parent(&format!("motor_{i}"), Some(&format!("motorBasePart1_{i}")))?;
        asm.set_parent(&format!("propeller_{i}"), Some(&format!("motor_{i}")))?;
        asm.set_joint(
            &format!("propeller_{i}"),
            JointKind::Continuous {
                axis: Vec3::new(0.0, 0.0, 1.0),
            },
        )?;
    }
    asm.set_parent("battery", Some("body"))?;
    asm.set_parent("controller", Some("body"))?;
    asm.set_parent("receiver", Some("body"))?;

    asm.finalize()?;
    Ok(asm)
}

/// Serial chain of `n` identical links along z with revolute joints about x.
/// Each joint origin sits at the end of its parent link, half the link length
/// past the link center.
pub fn build_n_link_arm(
    n: u32,
    link_len: f64,
    cross_w: f64,
    cross_h: f64,
) -> Result<Assembly, RobotError> {
    if n < 1 {
        return Err(RobotError::EmptyArm);
    }
    let mut asm = Assembly::new();
    for i in 1..=n {
        let name = format!("link_{i}");
        let mut link = create_box(&name, 0.1, cross_w, cross_h, link_len)?;
        if i == 1 {
            // root frame at the geometry center
            link.translation = Vec3::new(0.0, 0.0, link_len / 2.0);
        } else {
            // frame at the joint (base of this link), geometry extends +z
            link.translation = Vec3::new(0.0, 0.0, (i - 1) as f64 * link_len);
            link.geometry_offset = Vec3::new(0.0, 0.0, link_len / 2.0);
        }
        asm.add(link)?;
        if i > 1 {
            let parent = format!("link_{}", i - 1);
            asm.set_parent(&name, Some(&parent))?;
            asm.set_joint(
                &name,
                JointKind::Revolute {
                    axis: Vec3::new(1.0, 0.0, 0.0),
                    lower: -std::f64::consts::PI,
                    upper: std::f64::consts::PI,
                },
            )?;
        }
    }
    asm.finalize()?;
    Ok(asm)
}

/// Wheeled platform: a box root with 2 or 4 cylinder wheels whose circular
/// faces are normal to global y. Wheels are offset on y by half the platform
/// width plus half the wheel height, so they touch the platform sides without
/// protruding into them; four-wheel variants shift the pairs to the front and
/// back edges along x. Wheel joints are continuous about the local z axis.
pub fn build_wheeled_robot(
    n_wheels: u32,
    platform_w: f64,
    platform_d: f64,
    platform_h: f64,
    wheel_r: f64,
    wheel_h: f64,
) -> Result<Assembly, RobotError> {
    for v in [platform_w, platform_d, platform_h, wheel_r, wheel_h] {
        if !(v > 0.0) {
            return Err(RobotError::NonPositiveDimension(v));
        }
    }
    let mut asm = Assembly::new();
    asm.add(create_box("platform", 0.5, platform_w, platform_d, platform_h)?)?;

    let y_off = platform_d / 2.0 + wheel_h / 2.0;
    let wheel = create_cylinder("wheel", 0.05, wheel_r, wheel_h)?;
    let positions: Vec<(String, f64, f64)> = match n_wheels {
        2 => vec![
            ("wheel_left".into(), 0.0, y_off),
            ("wheel_right".into(), 0.0, -y_off),
        ],
        4 => vec![
            ("wheel_front_left".into(), platform_w / 2.0, y_off),
            ("wheel_front_right".into(), platform_w / 2.0, -y_off),
            ("wheel_back_left".into(), -platform_w / 2.0, y_off),
            ("wheel_back_right".into(), -platform_w / 2.0, -y_off),
        ],
        other => return Err(RobotError::UnsupportedWheelCount(other)),
    };
    for (name, x, y) in positions {
        let mut w = wheel.clone();
        w.name = name.clone();
        w.translation = Vec3::new(x, y, 0.0);
        // roll 90°: cylinder axis becomes global y, circular faces normal to y
        w.rotation = Vec3::new(std::f64::consts::FRAC_PI_2, 0.0, 0.0);
        asm.add(w)?;
        asm.set_parent(&name, Some("platform"))?;
        asm.set_joint(
            &name,
            JointKind::Continuous {
                axis: Vec3::new(0.0, 0.0, 1.0),
            },
        )?;
    }
    asm.finalize()?;
    Ok(asm)
}
