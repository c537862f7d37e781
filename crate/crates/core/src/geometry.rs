//! Node placement and the distance / elevation primitives every channel
//! model is built on.
//!
//! Users are indexed `k = 0..=U` with `k = 0` the UAV and `k = 1..=U` the
//! ground users. Elevation angles are depression angles: positive when the
//! node sits below the AP.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::SimConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn horizontal_distance(&self, other: &Point3) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Unit vector pointing from `self` towards `other`; zero if they coincide.
    pub fn direction_to(&self, other: &Point3) -> [f64; 3] {
        let d = distance(self, other);
        if d == 0.0 {
            return [0.0; 3];
        }
        [
            (other.x - self.x) / d,
            (other.y - self.y) / d,
            (other.z - self.z) / d,
        ]
    }
}

/// Euclidean distance in meters.
pub fn distance(a: &Point3, b: &Point3) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Depression angle of `node` seen from `ap`, in degrees.
///
/// `arctan((h_ap - h_node) / horizontal_distance)`; a node directly above or
/// below the AP maps to -90 / +90.
pub fn elevation_angle_deg(ap: &Point3, node: &Point3) -> f64 {
    let dh = ap.z - node.z;
    let horiz = ap.horizontal_distance(node);
    if horiz == 0.0 {
        return if dh > 0.0 {
            90.0
        } else if dh < 0.0 {
            -90.0
        } else {
            0.0
        };
    }
    (dh / horiz).atan().to_degrees()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkLayout {
    pub ap_pos: Vec<Point3>,
    pub gue_pos: Vec<Point3>,
    pub uav_pos: Point3,
    pub ris_pos: Point3,
}

impl NetworkLayout {
    pub fn num_aps(&self) -> usize {
        self.ap_pos.len()
    }

    /// `U + 1`.
    pub fn num_users(&self) -> usize {
        self.gue_pos.len() + 1
    }

    /// Position of user `k` (`k = 0` is the UAV).
    pub fn user(&self, k: usize) -> Point3 {
        if k == 0 {
            self.uav_pos
        } else {
            self.gue_pos[k - 1]
        }
    }

    pub fn users(&self) -> impl Iterator<Item = Point3> + '_ {
        std::iter::once(self.uav_pos).chain(self.gue_pos.iter().copied())
    }
}

/// Drops APs, the UAV and the GUEs uniformly on `[0, D]^2` at their fixed
/// heights. The RIS sits at `(ris_x, 0, h_ris)`.
///
/// Draw order is APs, then UAV, then GUEs, two uniforms each. Changing only
/// heights or RIS parameters therefore leaves every horizontal position
/// unchanged for a given stream.
pub fn place_nodes<R: Rng + ?Sized>(cfg: &SimConfig, rng: &mut R) -> NetworkLayout {
    let side = cfg.area_side;
    let horizontal = |rng: &mut R| -> (f64, f64) {
        let x = rng.random::<f64>() * side;
        let y = rng.random::<f64>() * side;
        (x, y)
    };
    let ap_pos = (0..cfg.num_aps)
        .map(|_| {
            let (x, y) = horizontal(rng);
            Point3::new(x, y, cfg.h_ap)
        })
        .collect();
    let (ux, uy) = horizontal(rng);
    let uav_pos = Point3::new(ux, uy, cfg.h_uav);
    let gue_pos = (0..cfg.num_gues)
        .map(|_| {
            let (x, y) = horizontal(rng);
            Point3::new(x, y, cfg.h_gue)
        })
        .collect();
    NetworkLayout {
        ap_pos,
        gue_pos,
        uav_pos,
        ris_pos: Point3::new(cfg.ris_x, 0.0, cfg.h_ris),
    }
}
