//! Devices, network snapshots, seeded random generation and the JSON network
//! file.
//!
//! Level support is sampled as a chain: every device supports level 1, level 2
//! is kept with probability 3/4 and level 3 with probability 1/2 given level 2.
//! Levels above 3 continue the chain at 1/2. A device therefore always supports
//! the prefix `1..=max_level`.
//!
//! Generation uses ChaCha8 seeded through `SeedableRng::seed_from_u64`; the
//! algorithm name is written into the `rng` field of saved files.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    self, check_alpha, sector_distance, sector_of, DistanceMode, Energy, Level, Point, PowerLevel,
    Sector, SectorGrid, Space,
};
use crate::DeviceId;

pub const FILE_VERSION: u32 = 1;
pub const RNG_NAME: &str = "chacha8";

pub const DEFAULT_SWING_COST: Energy = 1;
pub const DEFAULT_DESTINATION_COST: Energy = 2;
pub const DEFAULT_ALPHA: f64 = 2.0;
pub const DEFAULT_SECTOR_SIZE: u32 = 26;
/// 27 sectors of 26 pixels.
pub const DEFAULT_SPACE_SIDE: u32 = 702;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Device {
    pub id: DeviceId,
    pub position: Point,
    pub max_level: Level,
}

impl Device {
    pub fn new(id: DeviceId, position: Point, max_level: Level) -> Self {
        Device {
            id,
            position,
            max_level,
        }
    }

    pub fn supports(&self, level: Level) -> bool {
        level >= 1 && level <= self.max_level
    }

    pub fn supported_levels(&self) -> impl Iterator<Item = Level> {
        1..=self.max_level
    }
}

/// Channel exponent plus the swing and destination charges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    pub alpha: f64,
    pub swing_cost: Energy,
    pub destination_cost: Energy,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            alpha: DEFAULT_ALPHA,
            swing_cost: DEFAULT_SWING_COST,
            destination_cost: DEFAULT_DESTINATION_COST,
        }
    }
}

/// Immutable snapshot of an ad-hoc network.
///
/// Devices are kept sorted by id; device indices used by the search code are
/// positions in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    grid: SectorGrid,
    levels: Vec<PowerLevel>,
    devices: Vec<Device>,
    costs: CostParams,
    seed: Option<u64>,
    mode: DistanceMode,
    sectors: Vec<Sector>,
    index: HashMap<DeviceId, usize>,
    // per level, the largest reach metric it covers under `mode`
    thresholds: Vec<u128>,
}

impl Network {
    pub fn new(
        space: Space,
        sector_size: u32,
        levels: Vec<PowerLevel>,
        mut devices: Vec<Device>,
        costs: CostParams,
    ) -> Result<Self> {
        let grid = SectorGrid::new(sector_size, space)?;
        geometry::validate_levels(&levels)?;
        check_alpha(costs.alpha)?;
        devices.sort_by_key(|d| d.id);
        for pair in devices.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::Validation(format!("duplicate device id {}", pair[0].id)));
            }
        }
        let mut sectors = Vec::with_capacity(devices.len());
        for device in &devices {
            if device.max_level < 1 || device.max_level as usize > levels.len() {
                return Err(Error::Validation(format!(
                    "device {} has max_level {}, expected 1..={}",
                    device.id,
                    device.max_level,
                    levels.len()
                )));
            }
            sectors.push(sector_of(device.position, &grid)?);
        }
        let index = devices.iter().enumerate().map(|(i, d)| (d.id, i)).collect();
        let mut net = Network {
            grid,
            levels,
            devices,
            costs,
            seed: None,
            mode: DistanceMode::Sector,
            sectors,
            index,
            thresholds: Vec::new(),
        };
        net.thresholds = net.compute_thresholds();
        Ok(net)
    }

    fn compute_thresholds(&self) -> Vec<u128> {
        let size = u128::from(self.grid.sector_size());
        self.levels
            .iter()
            .map(|l| match self.mode {
                DistanceMode::Sector => u128::from(l.range_sectors),
                DistanceMode::Euclidean => {
                    let radius = u128::from(l.range_sectors) * size;
                    radius * radius
                }
            })
            .collect()
    }

    /// Chebyshev sector distance in sector mode, squared pixel distance in
    /// Euclidean mode.
    #[inline]
    pub(crate) fn reach_metric(&self, from: usize, to: usize) -> u128 {
        match self.mode {
            DistanceMode::Sector => u128::from(sector_distance(self.sectors[from], self.sectors[to])),
            DistanceMode::Euclidean => {
                let (p, q) = (self.devices[from].position, self.devices[to].position);
                let dx = u128::from(p.x.abs_diff(q.x));
                let dy = u128::from(p.y.abs_diff(q.y));
                let dz = u128::from(p.z.abs_diff(q.z));
                dx * dx + dy * dy + dz * dz
            }
        }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_distance_mode(mut self, mode: DistanceMode) -> Self {
        self.mode = mode;
        self.thresholds = self.compute_thresholds();
        self
    }

    pub fn with_swing_cost(mut self, cb: Energy) -> Self {
        self.costs.swing_cost = cb;
        self
    }

    pub fn with_destination_cost(mut self, cd: Energy) -> Self {
        self.costs.destination_cost = cd;
        self
    }

    pub fn space(&self) -> Space {
        self.grid.space()
    }

    pub fn grid(&self) -> &SectorGrid {
        &self.grid
    }

    pub fn levels(&self) -> &[PowerLevel] {
        &self.levels
    }

    pub fn level_count(&self) -> Level {
        self.levels.len() as Level
    }

    pub fn devices(&self) -> &[Device] {
        &self.devices
    }

    pub fn len(&self) -> usize {
        self.devices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.devices.is_empty()
    }

    pub fn costs(&self) -> CostParams {
        self.costs
    }

    pub fn alpha(&self) -> f64 {
        self.costs.alpha
    }

    pub fn swing_cost(&self) -> Energy {
        self.costs.swing_cost
    }

    pub fn destination_cost(&self) -> Energy {
        self.costs.destination_cost
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn distance_mode(&self) -> DistanceMode {
        self.mode
    }

    pub fn device(&self, id: DeviceId) -> Option<&Device> {
        self.index.get(&id).map(|&i| &self.devices[i])
    }

    pub fn index_of(&self, id: DeviceId) -> Result<usize> {
        self.index.get(&id).copied().ok_or(Error::UnknownDevice(id))
    }

    pub fn sector(&self, index: usize) -> Sector {
        self.sectors[index]
    }

    /// Cost of transmitting at `level`; 0 for the idle level, `None` beyond
    /// the level table.
    pub fn level_cost(&self, level: Level) -> Option<Energy> {
        if level == 0 {
            return Some(0);
        }
        self.levels.get(level as usize - 1).map(|l| l.cost)
    }

    /// Whether device `from` transmitting at `level` reaches device `to`,
    /// ignoring whether `from` supports that level.
    pub fn reaches(&self, from: usize, to: usize, level: Level) -> bool {
        match level.checked_sub(1).and_then(|i| self.thresholds.get(i as usize)) {
            Some(&limit) => self.reach_metric(from, to) <= limit,
            None => false,
        }
    }

    /// Lowest level supported by `from` that reaches `to`.
    pub fn lowest_level(&self, from: usize, to: usize) -> Option<Level> {
        self.lowest_level_for_metric(from, self.reach_metric(from, to))
    }

    pub(crate) fn lowest_level_for_metric(&self, from: usize, metric: u128) -> Option<Level> {
        let max = self.devices[from].max_level as usize;
        self.thresholds[..max]
            .iter()
            .position(|&limit| metric <= limit)
            .map(|i| i as Level + 1)
    }

    /// Range in sectors of the highest level device index `index` supports.
    pub fn max_range(&self, index: usize) -> u64 {
        self.levels[self.devices[index].max_level as usize - 1].range_sectors
    }

    /// Energy needed for `from` to reach `to`.
    ///
    /// In Euclidean mode this is `d^alpha` with `d` in sector units. In sector
    /// mode it is the cost of the lowest level of the table that reaches,
    /// whether or not `from` supports it. `None` when no level reaches.
    pub fn required_energy(&self, from: usize, to: usize) -> Option<f64> {
        match self.mode {
            DistanceMode::Sector => (1..=self.level_count())
                .find(|&l| self.reaches(from, to, l))
                .and_then(|l| self.level_cost(l))
                .map(|c| c as f64),
            DistanceMode::Euclidean => {
                let top = self.levels.last()?;
                if !self.reaches(from, to, top.id) {
                    return None;
                }
                let (p, q) = (self.devices[from].position, self.devices[to].position);
                let d = geometry::euclidean_distance(p, q) / f64::from(self.grid.sector_size());
                Some(d.powf(self.costs.alpha))
            }
        }
    }

    /// Energy budget of a device operating at `level`, comparable with
    /// [`Network::required_energy`]. In Euclidean mode a level's budget is
    /// `range^alpha`, which is its cost when `alpha = 2`.
    pub fn level_budget(&self, level: Level) -> Option<f64> {
        if level == 0 {
            return Some(0.0);
        }
        let entry = self.levels.get(level as usize - 1)?;
        Some(match self.mode {
            DistanceMode::Sector => entry.cost as f64,
            DistanceMode::Euclidean => (entry.range_sectors as f64).powf(self.costs.alpha),
        })
    }
}

/// Inputs to [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub struct GenerateParams {
    pub devices: usize,
    pub space: Space,
    pub sector_size: u32,
    pub levels: u32,
    pub seed: u64,
    pub costs: CostParams,
}

impl GenerateParams {
    pub fn new(devices: usize, seed: u64) -> Self {
        GenerateParams {
            devices,
            space: Space {
                x: DEFAULT_SPACE_SIDE,
                y: DEFAULT_SPACE_SIDE,
                z: 0,
            },
            sector_size: DEFAULT_SECTOR_SIZE,
            levels: 3,
            seed,
            costs: CostParams::default(),
        }
    }
}

/// Probability that a device supporting `level - 1` also supports `level`.
fn chain_probability(level: Level) -> f64 {
    if level == 2 {
        0.75
    } else {
        0.5
    }
}

/// Builds a random network; a pure function of `params`.
pub fn generate(params: &GenerateParams) -> Result<Network> {
    if params.devices == 0 {
        return Err(Error::Config("device count must be positive".into()));
    }
    if params.space.x == 0 || params.space.y == 0 {
        return Err(Error::Config("space width and height must be positive".into()));
    }
    if params.levels == 0 {
        return Err(Error::Config("level count must be positive".into()));
    }
    let levels = geometry::standard_levels(params.levels)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let devices = (0..params.devices)
        .map(|i| {
            let x = rng.gen_range(0..params.space.x);
            let y = rng.gen_range(0..params.space.y);
            let mut max_level = 1;
            while max_level < params.levels && rng.gen_bool(chain_probability(max_level + 1)) {
                max_level += 1;
            }
            Device::new(i as DeviceId, Point::planar(x, y), max_level)
        })
        .collect();
    Ok(Network::new(
        params.space,
        params.sector_size,
        levels,
        devices,
        params.costs,
    )?
    .with_seed(Some(params.seed)))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeviceRecord {
    id: DeviceId,
    x: u32,
    y: u32,
    z: u32,
    max_level: Level,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    version: u32,
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rng: Option<String>,
    space: Space,
    sector_size: u32,
    alpha: f64,
    cb: Energy,
    cd: Energy,
    levels: Vec<PowerLevel>,
    devices: Vec<DeviceRecord>,
}

impl From<&Network> for NetworkFile {
    fn from(net: &Network) -> Self {
        NetworkFile {
            version: FILE_VERSION,
            seed: net.seed,
            rng: net.seed.map(|_| RNG_NAME.to_string()),
            space: net.space(),
            sector_size: net.grid.sector_size(),
            alpha: net.costs.alpha,
            cb: net.costs.swing_cost,
            cd: net.costs.destination_cost,
            levels: net.levels.clone(),
            devices: net
                .devices
                .iter()
                .map(|d| DeviceRecord {
                    id: d.id,
                    x: d.position.x,
                    y: d.position.y,
                    z: d.position.z,
                    max_level: d.max_level,
                })
                .collect(),
        }
    }
}

impl TryFrom<NetworkFile> for Network {
    type Error = Error;

    fn try_from(file: NetworkFile) -> Result<Self> {
        if file.version != FILE_VERSION {
            return Err(Error::Parse {
                field: "version".into(),
                message: format!("unsupported version {}", file.version),
            });
        }
        if let Some(rng) = &file.rng {
            if rng != RNG_NAME {
                return Err(Error::Parse {
                    field: "rng".into(),
                    message: format!("unknown generator `{rng}`"),
                });
            }
        }
        let devices = file
            .devices
            .into_iter()
            .map(|r| Device::new(r.id, Point::new(r.x, r.y, r.z), r.max_level))
            .collect();
        let costs = CostParams {
            alpha: file.alpha,
            swing_cost: file.cb,
            destination_cost: file.cd,
        };
        Ok(Network::new(file.space, file.sector_size, file.levels, devices, costs)?.with_seed(file.seed))
    }
}

/// Writes the canonical JSON document for `network`.
pub fn save<W: Write>(network: &Network, writer: W) -> Result<()> {
    let mut writer = writer;
    serde_json::to_writer_pretty(&mut writer, &NetworkFile::from(network))
        .map_err(|e| Error::Io(e.into()))?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}

pub fn to_json(network: &Network) -> String {
    let mut buf = Vec::new();
    save(network, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn load<R: Read>(reader: R) -> Result<Network> {
    let mut de = serde_json::Deserializer::from_reader(reader);
    let file: NetworkFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        Error::Parse {
            field,
            message: e.into_inner().to_string(),
        }
    })?;
    Network::try_from(file)
}

pub fn from_json(text: &str) -> Result<Network> {
    load(text.as_bytes())
}

pub fn save_to_path(network: &Network, path: impl AsRef<Path>) -> Result<()> {
    save(network, BufWriter::new(File::create(path)?))
}

pub fn load_from_path(path: impl AsRef<Path>) -> Result<Network> {
    load(BufReader::new(File::open(path)?))
}
