//! Hand-transcribed sample networks with known answers, shared by tests,
//! examples and the CLI.

use crate::geometry::{self, Energy, Level, Point, Space};
use crate::maned::Hop;
use crate::netgen::{CostParams, Device, Network, DEFAULT_SECTOR_SIZE, DEFAULT_SPACE_SIDE};
use crate::DeviceId;

/// Device ids and planar coordinates of the sample topology.
pub const SAMPLE_DEVICES: [(DeviceId, u32, u32); 20] = [
    (45, 10, 521),
    (12, 107, 501),
    (37, 261, 433),
    (30, 309, 456),
    (14, 362, 398),
    (28, 366, 358),
    (43, 624, 76),
    (49, 682, 16),
    (38, 678, 162),
    (41, 611, 297),
    (44, 573, 363),
    (7, 579, 410),
    (33, 566, 544),
    (25, 398, 673),
    (5, 258, 619),
    (35, 135, 678),
    (13, 57, 408),
    (34, 224, 365),
    (46, 332, 276),
    (42, 341, 116),
];

/// A known route: sending hops, destination, swing count and total cost
/// with `Cb = 1`, `Cd = 2`.
#[derive(Debug, Clone, Copy)]
pub struct SampleRoute {
    pub hops: &'static [(DeviceId, Level)],
    pub destination: DeviceId,
    pub swings: u32,
    pub total_cost: Energy,
}

impl SampleRoute {
    pub fn hops(&self) -> Vec<Hop> {
        self.hops.iter().map(|&(d, l)| Hop::new(d, l)).collect()
    }

    pub fn source(&self) -> DeviceId {
        self.hops[0].0
    }
}

pub const SAMPLE_ROUTES: [SampleRoute; 3] = [
    SampleRoute {
        hops: &[(45, 2), (12, 2), (37, 1), (30, 1), (14, 1), (28, 3), (43, 1)],
        destination: 49,
        swings: 3,
        total_cost: 237,
    },
    SampleRoute {
        hops: &[(38, 2), (41, 1), (44, 1), (7, 2), (33, 2), (25, 2), (5, 2)],
        destination: 35,
        swings: 2,
        total_cost: 192,
    },
    SampleRoute {
        hops: &[(13, 2), (34, 2), (46, 2)],
        destination: 42,
        swings: 0,
        total_cost: 110,
    },
];

fn network_of(devices: impl IntoIterator<Item = (DeviceId, u32, u32)>) -> Network {
    let devices = devices
        .into_iter()
        .map(|(id, x, y)| Device::new(id, Point::planar(x, y), 3))
        .collect();
    Network::new(
        Space {
            x: DEFAULT_SPACE_SIDE,
            y: DEFAULT_SPACE_SIDE,
            z: 0,
        },
        DEFAULT_SECTOR_SIZE,
        geometry::standard_levels(3).expect("three levels"),
        devices,
        CostParams::default(),
    )
    .expect("sample network is valid")
}

/// All twenty sample devices, each supporting three levels.
pub fn sample_network() -> Network {
    network_of(SAMPLE_DEVICES)
}

/// Only the devices of the third route (13, 34, 46, 42).
pub fn short_route_network() -> Network {
    let keep = [13, 34, 46, 42];
    network_of(SAMPLE_DEVICES.into_iter().filter(|(id, _, _)| keep.contains(id)))
}

/// Five devices on a line whose lowest levels along 1 -> 2 -> 3 -> 4 -> 5 are
/// 1, 1, 2, 3: gaps of 2, 2, 6 and 12 sectors.
pub fn level_staircase_network() -> Network {
    let s = DEFAULT_SECTOR_SIZE;
    network_of([(1, 0, 0), (2, 2 * s, 0), (3, 4 * s, 0), (4, 10 * s, 0), (5, 22 * s, 0)])
}

pub const STAIRCASE_HOPS: [(DeviceId, Level); 4] = [(1, 1), (2, 1), (3, 2), (4, 3)];
