//! Space, sector grid, distances and the power-level range/cost functions.
//!
//! Ranges are measured in sectors: level `l` covers `l * (l + 1)` sectors and
//! costs the square of that range. Two reachability rules are available. The
//! sector rule compares the Chebyshev distance between the sectors holding two
//! points against the level range; the Euclidean rule compares the straight
//! line distance, converted to sector units, against the same range.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a transmission power level. Level 0 is reserved for an idle device.
pub type Level = u32;

/// Energy, in the integral units used throughout the model.
pub type Energy = u64;

/// Integer pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Point {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        Point { x, y, z }
    }

    pub const fn planar(x: u32, y: u32) -> Self {
        Point { x, y, z: 0 }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{};{}]", self.x, self.y, self.z)
    }
}

/// Extent of the simulated space in pixels. Valid coordinates run from 0 to
/// the extent inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Space {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Space {
    pub fn contains(&self, p: Point) -> bool {
        p.x <= self.x && p.y <= self.y && p.z <= self.z
    }

    pub fn check(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                x: p.x,
                y: p.y,
                z: p.z,
                width: self.x,
                height: self.y,
                depth: self.z,
            })
        }
    }
}

/// Column/row of a grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sector {
    pub col: u32,
    pub row: u32,
}

impl Sector {
    pub const fn new(col: u32, row: u32) -> Self {
        Sector { col, row }
    }
}

/// Square sectors of `sector_size` pixels laid over the plane of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorGrid {
    sector_size: u32,
    space: Space,
}

impl SectorGrid {
    pub fn new(sector_size: u32, space: Space) -> Result<Self> {
        if sector_size == 0 {
            return Err(Error::Config("sector size must be positive".into()));
        }
        Ok(SectorGrid { sector_size, space })
    }

    pub fn sector_size(&self) -> u32 {
        self.sector_size
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Number of sector columns needed to cover the space width.
    pub fn columns(&self) -> u32 {
        self.space.x.div_ceil(self.sector_size).max(1)
    }

    pub fn rows(&self) -> u32 {
        self.space.y.div_ceil(self.sector_size).max(1)
    }
}

/// A transmission level with its range in sectors and its energy cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerLevel {
    pub id: Level,
    pub range_sectors: u64,
    pub cost: Energy,
}

impl PowerLevel {
    pub fn standard(id: Level) -> Result<Self> {
        Ok(PowerLevel {
            id,
            range_sectors: level_range_sectors(id)?,
            cost: level_cost(id)?,
        })
    }
}

/// Levels `1..=count` built from the standard range and cost functions.
pub fn standard_levels(count: u32) -> Result<Vec<PowerLevel>> {
    if count == 0 {
        return Err(Error::Config("at least one power level is required".into()));
    }
    (1..=count).map(PowerLevel::standard).collect()
}

/// Checks that ids run `1..=L` and that ranges and costs strictly increase.
pub fn validate_levels(levels: &[PowerLevel]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::Validation("level table is empty".into()));
    }
    for (i, level) in levels.iter().enumerate() {
        if level.id as usize != i + 1 {
            return Err(Error::Validation(format!(
                "level at position {} has id {}, expected {}",
                i,
                level.id,
                i + 1
            )));
        }
    }
    for pair in levels.windows(2) {
        if pair[1].range_sectors <= pair[0].range_sectors || pair[1].cost <= pair[0].cost {
            return Err(Error::Validation(format!(
                "level {} does not strictly exceed level {} in range and cost",
                pair[1].id, pair[0].id
            )));
        }
    }
    Ok(())
}

/// Distance, in sectors, covered by level `l`: `l * (l + 1)`.
pub fn level_range_sectors(l: Level) -> Result<u64> {
    if l < 1 {
        return Err(Error::InvalidLevel(l));
    }
    let l = u64::from(l);
    Ok(l * (l + 1))
}

/// Energy needed to transmit at level `l`, the square of its range.
pub fn level_cost(l: Level) -> Result<Energy> {
    let range = level_range_sectors(l)?;
    Ok(range * range)
}

pub fn euclidean_distance(p: Point, q: Point) -> f64 {
    let dx = f64::from(p.x) - f64::from(q.x);
    let dy = f64::from(p.y) - f64::from(q.y);
    let dz = f64::from(p.z) - f64::from(q.z);
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Validates a channel-loss exponent.
pub fn check_alpha(alpha: f64) -> Result<()> {
    if (2.0..=4.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "channel-loss exponent {alpha} is outside [2, 4]"
        )))
    }
}

/// Minimum transmit energy between two points, `d^alpha` with unit
/// proportionality.
pub fn pair_energy(p: Point, q: Point, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(euclidean_distance(p, q).powf(alpha))
}

pub fn sector_of(p: Point, grid: &SectorGrid) -> Result<Sector> {
    grid.space().check(p)?;
    let size = grid.sector_size();
    Ok(Sector::new(p.x / size, p.y / size))
}

/// Chebyshev distance between two sectors.
pub fn sector_distance(a: Sector, b: Sector) -> u64 {
    let dc = a.col.abs_diff(b.col);
    let dr = a.row.abs_diff(b.row);
    u64::from(dc.max(dr))
}

/// How reachability between two devices is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMode {
    /// Chebyshev distance between sectors against the level range.
    #[default]
    Sector,
    /// Euclidean distance in sector units against the level range, i.e. a
    /// radius of `range * sector_size` pixels.
    Euclidean,
}

impl fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceMode::Sector => f.write_str("sector"),
            DistanceMode::Euclidean => f.write_str("euclidean"),
        }
    }
}

impl std::str::FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sector" => Ok(DistanceMode::Sector),
            "euclidean" => Ok(DistanceMode::Euclidean),
            other => Err(Error::Config(format!("unknown distance mode `{other}`"))),
        }
    }
}
