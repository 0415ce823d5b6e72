//! Minimum-energy path search.
//!
//! The cost of a path is the sum of the transmit costs of every sending
//! device, plus `Cb` at each relay whose transmit level differs from the level
//! it received on, plus `Cd` at the destination. Because the swing charge
//! depends on the inbound level, the search runs Dijkstra over
//! `(device, inbound level)` states rather than over devices.
//!
//! Ties between equal-cost paths are broken by fewer hops, then by the
//! lexicographically smaller sequence of `(device, level)` pairs. The brute
//! force oracle applies the same order, so both return identical paths.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sector_distance, DistanceMode, Energy, Level, Sector};
use crate::netgen::Network;
use crate::DeviceId;

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 14;

/// A directed connection at a given level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelEdge {
    pub from: DeviceId,
    pub to: DeviceId,
    pub level: Level,
    pub cost: Energy,
}

/// Which levels produce edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgePolicy {
    /// One edge per reachable pair, at the sender's lowest feasible level.
    #[default]
    LowestLevel,
    /// One edge per supported level that reaches. Only pays off when the
    /// swing cost exceeds the gap between level costs.
    AllFeasibleLevels,
}

/// A sending device and the level it transmits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hop {
    pub device: DeviceId,
    pub level: Level,
}

impl Hop {
    pub const fn new(device: DeviceId, level: Level) -> Self {
        Hop { device, level }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopCost {
    pub from: DeviceId,
    pub to: DeviceId,
    pub level: Level,
    pub cost: Energy,
}

/// A source to destination path with its cost breakdown.
///
/// `hops` lists the source and every relay with their transmit levels; the
/// destination is kept apart. When source and destination coincide `hops` is
/// empty and every cost is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub source: DeviceId,
    pub destination: DeviceId,
    pub hops: Vec<Hop>,
    pub swings: u32,
    pub breakdown: Vec<HopCost>,
    pub swing_total: Energy,
    pub destination_cost: Energy,
    pub total_cost: Energy,
}

impl PathResult {
    fn empty(device: DeviceId) -> Self {
        PathResult {
            source: device,
            destination: device,
            hops: Vec::new(),
            swings: 0,
            breakdown: Vec::new(),
            swing_total: 0,
            destination_cost: 0,
            total_cost: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    /// Every device on the path, destination included.
    pub fn devices(&self) -> Vec<DeviceId> {
        self.hops
            .iter()
            .map(|h| h.device)
            .chain(std::iter::once(self.destination))
            .collect()
    }

    /// Sum of the transmit costs alone.
    pub fn transmit_cost(&self) -> Energy {
        self.breakdown.iter().map(|h| h.cost).sum()
    }

    /// Devices where the transmit level changes.
    pub fn swing_devices(&self) -> Vec<DeviceId> {
        self.hops
            .windows(2)
            .filter(|w| w[0].level != w[1].level)
            .map(|w| w[1].device)
            .collect()
    }
}

impl fmt::Display for PathResult {
    /// Total and per-level counts, e.g. `4*C1 + 2*C2 + 1*C3 + 3*Cb + Cd = 237`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let top = self.hops.iter().map(|h| h.level).max().unwrap_or(0);
        for level in 1..=top {
            let n = self.hops.iter().filter(|h| h.level == level).count();
            if n > 0 {
                write!(f, "{n}*C{level} + ")?;
            }
        }
        write!(f, "{}*Cb + Cd = {}", self.swings, self.total_cost)
    }
}

/// Number of adjacent pairs with differing levels.
pub fn swing_count(levels: &[Level]) -> u32 {
    levels.windows(2).filter(|w| w[0] != w[1]).count() as u32
}

/// Cost of one candidate path given as sending hops and a destination.
///
/// Every hop must be supported by its device and reach the next device on the
/// path; devices must be pairwise distinct.
pub fn evaluate_path(network: &Network, hops: &[Hop], destination: DeviceId) -> Result<PathResult> {
    let dest_index = network.index_of(destination)?;
    if hops.is_empty() {
        return Ok(PathResult::empty(destination));
    }
    let mut seen = vec![false; network.len()];
    seen[dest_index] = true;
    let mut breakdown = Vec::with_capacity(hops.len());
    for (i, hop) in hops.iter().enumerate() {
        let from = network.index_of(hop.device)?;
        if std::mem::replace(&mut seen[from], true) {
            return Err(Error::Validation(format!(
                "device {} appears more than once on the path",
                hop.device
            )));
        }
        let next = hops.get(i + 1).map_or(destination, |h| h.device);
        let to = network.index_of(next)?;
        let device = &network.devices()[from];
        if !device.supports(hop.level) {
            return Err(Error::Validation(format!(
                "hop {} -> {}: device {} does not support level {}",
                hop.device, next, hop.device, hop.level
            )));
        }
        if !network.reaches(from, to, hop.level) {
            return Err(Error::Validation(format!(
                "hop {} -> {}: level {} does not reach",
                hop.device, next, hop.level
            )));
        }
        let cost = network
            .level_cost(hop.level)
            .expect("supported levels are in the table");
        breakdown.push(HopCost {
            from: hop.device,
            to: next,
            level: hop.level,
            cost,
        });
    }
    let levels: Vec<Level> = hops.iter().map(|h| h.level).collect();
    let swings = swing_count(&levels);
    let swing_total = Energy::from(swings) * network.swing_cost();
    let destination_cost = network.destination_cost();
    let total_cost = breakdown.iter().map(|h| h.cost).sum::<Energy>() + swing_total + destination_cost;
    Ok(PathResult {
        source: hops[0].device,
        destination,
        hops: hops.to_vec(),
        swings,
        breakdown,
        swing_total,
        destination_cost,
        total_cost,
    })
}

/// Adjacency in compressed rows; targets are device indices. The out-edges
/// of each device are grouped by level in ascending order.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    levels: usize,
    // edges of device u at level l: offsets[u * levels + l - 1]..offsets[u * levels + l]
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl LevelGraph {
    pub fn build(network: &Network, policy: EdgePolicy) -> Self {
        let n = network.len();
        let levels = network.level_count() as usize;
        let grid = network.grid();
        let (cols, rows) = (grid.columns() as usize, grid.rows() as usize);

        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); cols * rows];
        for i in 0..n {
            let s = network.sector(i);
            buckets[s.row as usize * cols + s.col as usize].push(i as u32);
        }

        let mut offsets = Vec::with_capacity(n * levels + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        let mut by_level: Vec<Vec<u32>> = vec![Vec::new(); levels];
        for u in 0..n {
            let origin = network.sector(u);
            let reach = network.max_range(u).min(cols.max(rows) as u64) as u32;
            let col_lo = origin.col.saturating_sub(reach) as usize;
            let col_hi = (origin.col as usize + reach as usize).min(cols - 1);
            let row_lo = origin.row.saturating_sub(reach) as usize;
            let row_hi = (origin.row as usize + reach as usize).min(rows - 1);
            for row in row_lo..=row_hi {
                for col in col_lo..=col_hi {
                    let bucket = &buckets[row * cols + col];
                    if bucket.is_empty() {
                        continue;
                    }
                    match network.distance_mode() {
                        DistanceMode::Sector => {
                            let metric = u128::from(sector_distance(origin, Sector::new(col as u32, row as u32)));
                            if let Some(level) = network.lowest_level_for_metric(u, metric) {
                                for &v in bucket {
                                    if v as usize != u {
                                        by_level[level as usize - 1].push(v);
                                    }
                                }
                            }
                        }
                        DistanceMode::Euclidean => {
                            for &v in bucket {
                                if v as usize == u {
                                    continue;
                                }
                                if let Some(level) = network.lowest_level(u, v as usize) {
                                    by_level[level as usize - 1].push(v);
                                }
                            }
                        }
                    }
                }
            }
            if policy == EdgePolicy::AllFeasibleLevels {
                let top = network.devices()[u].max_level as usize;
                for l in 1..top {
                    let (lower, upper) = by_level.split_at_mut(l);
                    upper[0].extend_from_slice(&lower[l - 1]);
                }
            }
            for group in &mut by_level {
                targets.extend_from_slice(group);
                offsets.push(targets.len());
                group.clear();
            }
        }
        LevelGraph {
            levels,
            offsets,
            targets,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn device_count(&self) -> usize {
        (self.offsets.len() - 1) / self.levels
    }

    /// Targets of device index `u` at `level`.
    pub fn targets_at(&self, u: usize, level: Level) -> &[u32] {
        let k = u * self.levels + level as usize;
        &self.targets[self.offsets[k - 1]..self.offsets[k]]
    }

    /// Out-edges of device index `u` as `(target index, level)`, by level.
    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = (u32, Level)> + '_ {
        (1..=self.levels as Level).flat_map(move |l| self.targets_at(u, l).iter().map(move |&v| (v, l)))
    }
}

/// Every directed edge of the network at the lowest feasible level, ordered
/// by `(from, to)`.
pub fn build_edges(network: &Network) -> Vec<LevelEdge> {
    edges_with_policy(network, EdgePolicy::LowestLevel)
}

pub fn edges_with_policy(network: &Network, policy: EdgePolicy) -> Vec<LevelEdge> {
    let graph = LevelGraph::build(network, policy);
    let devices = network.devices();
    let mut edges: Vec<LevelEdge> = (0..graph.device_count())
        .flat_map(|u| {
            graph.out_edges(u).map(move |(v, level)| LevelEdge {
                from: devices[u].id,
                to: devices[v as usize].id,
                level,
                cost: network.level_cost(level).expect("level in table"),
            })
        })
        .collect();
    edges.sort_unstable();
    edges
}

const NONE: u32 = u32::MAX;

/// Optimal costs to every `(device, inbound level)` state from one source.
#[derive(Debug, Clone)]
pub struct StateCosts {
    stride: usize,
    dist: Vec<Energy>,
    hops: Vec<u32>,
    pred: Vec<u32>,
}

impl StateCosts {
    /// Cost, without the destination charge, of the best path arriving at
    /// device index `device` on `inbound` (0 for the source itself).
    pub fn cost(&self, device: usize, inbound: Level) -> Option<Energy> {
        if inbound as usize >= self.stride {
            return None;
        }
        let d = *self.dist.get(device * self.stride + inbound as usize)?;
        (d != Energy::MAX).then_some(d)
    }

    fn states_to(&self, state: usize) -> Vec<usize> {
        let mut chain = vec![state];
        let mut cur = state;
        while self.pred[cur] != NONE {
            cur = self.pred[cur] as usize;
            chain.push(cur);
        }
        chain.reverse();
        chain
    }
}

/// Whether the best path into state `a` precedes the one into state `b` in
/// the `(device, level)` order. Both paths must have the same hop count.
///
/// Walking both predecessor chains back in lockstep finds the first position
/// where the state sequences differ. The element before it shares its device
/// and differs only if the inbound levels differ; otherwise the devices at
/// that position decide.
fn precedes(costs: &StateCosts, a: usize, b: usize) -> bool {
    let stride = costs.stride;
    let (mut x, mut y) = (a, b);
    let (mut first_x, mut first_y) = (a, b);
    while x != y {
        first_x = x;
        first_y = y;
        x = costs.pred[x] as usize;
        y = costs.pred[y] as usize;
    }
    if first_x == first_y {
        return false;
    }
    let (lx, ly) = (first_x % stride, first_y % stride);
    if lx != ly {
        lx < ly
    } else {
        first_x / stride < first_y / stride
    }
}

/// The minimum-energy path solver over a prebuilt edge graph.
#[derive(Debug, Clone)]
pub struct Maned<'a> {
    network: &'a Network,
    graph: LevelGraph,
}

impl<'a> Maned<'a> {
    pub fn new(network: &'a Network) -> Self {
        Self::with_policy(network, EdgePolicy::LowestLevel)
    }

    pub fn with_policy(network: &'a Network, policy: EdgePolicy) -> Self {
        Maned {
            network,
            graph: LevelGraph::build(network, policy),
        }
    }

    pub fn network(&self) -> &Network {
        self.network
    }

    pub fn graph(&self) -> &LevelGraph {
        &self.graph
    }

    fn stride(&self) -> usize {
        self.network.level_count() as usize + 1
    }

    /// Runs the state search from `source`. With `target` set, stops once
    /// every state of that device tied for the best key has been settled, and
    /// skips relaxations that already exceed the best known cost to it.
    fn search(&self, source: usize, target: Option<usize>) -> (StateCosts, Option<usize>) {
        let stride = self.stride();
        let states = self.network.len() * stride;
        let cb = self.network.swing_cost();
        let level_costs: Vec<Energy> = (0..stride as Level)
            .map(|l| self.network.level_cost(l).expect("level in table"))
            .collect();

        let mut costs = StateCosts {
            stride,
            dist: vec![Energy::MAX; states],
            hops: vec![u32::MAX; states],
            pred: vec![NONE; states],
        };
        let mut settled = vec![false; states];
        let mut heap = BinaryHeap::new();
        let start = source * stride;
        costs.dist[start] = 0;
        costs.hops[start] = 0;
        heap.push(Reverse((0, 0u32, start as u32)));

        // tentative cost of the cheapest known arrival at the target
        let mut bound = Energy::MAX;
        let mut best_key: Option<(Energy, u32)> = None;
        let mut best_state: Option<usize> = None;

        while let Some(Reverse((d, h, s))) = heap.pop() {
            let s = s as usize;
            if settled[s] || costs.dist[s] != d || costs.hops[s] != h {
                continue;
            }
            if let Some(key) = best_key {
                if (d, h) > key {
                    break;
                }
            }
            settled[s] = true;
            let (u, inbound) = (s / stride, (s % stride) as Level);

            if Some(u) == target && s != start {
                match best_state {
                    None => {
                        best_key = Some((d, h));
                        best_state = Some(s);
                    }
                    Some(prev) => {
                        if precedes(&costs, s, prev) {
                            best_state = Some(s);
                        }
                    }
                }
                continue;
            }

            for level in 1..stride as Level {
                let base = d + level_costs[level as usize];
                if base > bound {
                    break;
                }
                let swing = if inbound != 0 && inbound != level { cb } else { 0 };
                let cand = base + swing;
                if cand > bound {
                    continue;
                }
                let cand_hops = h + 1;
                for &v in self.graph.targets_at(u, level) {
                    let t = v as usize * stride + level as usize;
                    if settled[t] {
                        continue;
                    }
                    let better = match (cand, cand_hops).cmp(&(costs.dist[t], costs.hops[t])) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => precedes(&costs, s, costs.pred[t] as usize),
                    };
                    if better {
                        costs.dist[t] = cand;
                        costs.hops[t] = cand_hops;
                        costs.pred[t] = s as u32;
                        heap.push(Reverse((cand, cand_hops, t as u32)));
                        if Some(v as usize) == target {
                            bound = bound.min(cand);
                        }
                    }
                }
            }
        }
        (costs, best_state)
    }

    /// Optimal costs from `source` to every state.
    pub fn state_costs(&self, source: DeviceId) -> Result<StateCosts> {
        let s = self.network.index_of(source)?;
        Ok(self.search(s, None).0)
    }

    pub fn solve(&self, source: DeviceId, destination: DeviceId) -> Result<PathResult> {
        let s = self.network.index_of(source)?;
        let d = self.network.index_of(destination)?;
        if s == d {
            return Ok(PathResult::empty(source));
        }
        let (costs, best) = self.search(s, Some(d));
        let Some(state) = best else {
            return Err(Error::NoFeasiblePath {
                origin: source,
                destination,
            });
        };
        let stride = costs.stride;
        let chain = costs.states_to(state);
        let devices = self.network.devices();
        let hops: Vec<Hop> = chain
            .windows(2)
            .map(|w| Hop::new(devices[w[0] / stride].id, (w[1] % stride) as Level))
            .collect();
        let result = evaluate_path(self.network, &hops, destination)?;
        debug_assert_eq!(
            result.total_cost,
            costs.dist[state] + self.network.destination_cost()
        );
        Ok(result)
    }

    /// Exhaustive search over all simple paths on the same edge graph.
    pub fn brute_force(&self, source: DeviceId, destination: DeviceId, device_limit: usize) -> Result<PathResult> {
        if self.network.len() > device_limit {
            return Err(Error::LimitExceeded {
                devices: self.network.len(),
                limit: device_limit,
            });
        }
        let s = self.network.index_of(source)?;
        let d = self.network.index_of(destination)?;
        if s == d {
            return Ok(PathResult::empty(source));
        }
        let mut search = Enumeration {
            graph: &self.graph,
            network: self.network,
            destination: d,
            visited: vec![false; self.network.len()],
            path: Vec::new(),
            best: None,
        };
        search.visited[s] = true;
        search.walk(s);
        let Some((_, hops)) = search.best else {
            return Err(Error::NoFeasiblePath {
                origin: source,
                destination,
            });
        };
        let devices = self.network.devices();
        let hops: Vec<Hop> = hops
            .into_iter()
            .map(|(u, l)| Hop::new(devices[u].id, l))
            .collect();
        evaluate_path(self.network, &hops, destination)
    }
}

type Candidate = ((Energy, usize), Vec<(usize, Level)>);

struct Enumeration<'g> {
    graph: &'g LevelGraph,
    network: &'g Network,
    destination: usize,
    visited: Vec<bool>,
    path: Vec<(usize, Level)>,
    best: Option<Candidate>,
}

impl Enumeration<'_> {
    fn walk(&mut self, u: usize) {
        for (v, level) in self.graph.out_edges(u) {
            let v = v as usize;
            if self.visited[v] {
                continue;
            }
            self.path.push((u, level));
            if v == self.destination {
                self.offer();
            } else {
                self.visited[v] = true;
                self.walk(v);
                self.visited[v] = false;
            }
            self.path.pop();
        }
    }

    fn offer(&mut self) {
        let net = self.network;
        let levels: Vec<Level> = self.path.iter().map(|&(_, l)| l).collect();
        let transmit: Energy = levels
            .iter()
            .map(|&l| net.level_cost(l).expect("level in table"))
            .sum();
        let total = transmit + Energy::from(swing_count(&levels)) * net.swing_cost() + net.destination_cost();
        let key = (total, self.path.len());
        let better = match &self.best {
            None => true,
            Some((best_key, best_path)) => match key.cmp(best_key) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.path < *best_path,
            },
        };
        if better {
            self.best = Some((key, self.path.clone()));
        }
    }
}

/// Cheapest path from `source` to `destination` using lowest-level edges.
pub fn maned_solve(network: &Network, source: DeviceId, destination: DeviceId) -> Result<PathResult> {
    Maned::new(network).solve(source, destination)
}

/// Reference answer by exhaustive enumeration, for networks of at most
/// `device_limit` devices.
pub fn brute_force_min_path(
    network: &Network,
    source: DeviceId,
    destination: DeviceId,
    device_limit: usize,
) -> Result<PathResult> {
    Maned::new(network).brute_force(source, destination, device_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, SAMPLE_ROUTES};
    use crate::geometry::{standard_levels, Point, Space};
    use crate::netgen::{CostParams, Device};

    fn line(devices: &[(DeviceId, u32, Level)]) -> Network {
        Network::new(
            Space { x: 2000, y: 10, z: 0 },
            26,
            standard_levels(3).unwrap(),
            devices
                .iter()
                .map(|&(id, x, max)| Device::new(id, Point::planar(x, 0), max))
                .collect(),
            CostParams::default(),
        )
        .unwrap()
    }

    #[test]
    fn swing_counting() {
        assert_eq!(swing_count(&[]), 0);
        assert_eq!(swing_count(&[2]), 0);
        assert_eq!(swing_count(&[2, 2, 1, 1, 1, 3, 1]), 3);
        assert_eq!(swing_count(&[2, 1, 1, 2, 2, 2, 2]), 2);
        assert_eq!(swing_count(&[1, 1, 2, 3]), 2);
    }

    #[test]
    fn lowest_level_edge_between_sample_devices() {
        let net = fixtures::sample_network();
        let edges = build_edges(&net);
        let e = edges.iter().find(|e| e.from == 45 && e.to == 12).unwrap();
        assert_eq!((e.level, e.cost), (2, 36));
        assert!(edges.windows(2).all(|w| (w[0].from, w[0].to) < (w[1].from, w[1].to)));
    }

    #[test]
    fn no_edge_beyond_supported_range() {
        let net = line(&[(1, 0, 1), (2, 5 * 26, 1)]);
        assert!(build_edges(&net).is_empty());
    }

    #[test]
    fn edges_are_directed() {
        let net = line(&[(1, 0, 3), (2, 6 * 26, 1)]);
        let edges = build_edges(&net);
        assert_eq!(
            edges,
            vec![LevelEdge { from: 1, to: 2, level: 2, cost: 36 }]
        );
    }

    #[test]
    fn all_levels_policy_adds_upgrades() {
        let net = line(&[(1, 0, 3), (2, 26, 2)]);
        let edges = edges_with_policy(&net, EdgePolicy::AllFeasibleLevels);
        let levels: Vec<_> = edges.iter().map(|e| (e.from, e.level)).collect();
        assert_eq!(levels, vec![(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]);
    }

    #[test]
    fn sample_routes_evaluate_to_known_totals() {
        let net = fixtures::sample_network();
        for route in SAMPLE_ROUTES {
            let r = evaluate_path(&net, &route.hops(), route.destination).unwrap();
            assert_eq!(r.swings, route.swings);
            assert_eq!(r.total_cost, route.total_cost);
            assert_eq!(r.transmit_cost() + r.swing_total + r.destination_cost, r.total_cost);
        }
    }

    #[test]
    fn sample_route_display() {
        let net = fixtures::sample_network();
        let route = SAMPLE_ROUTES[0];
        let r = evaluate_path(&net, &route.hops(), route.destination).unwrap();
        assert_eq!(r.to_string(), "4*C1 + 2*C2 + 1*C3 + 3*Cb + Cd = 237");
        assert_eq!(r.swing_devices(), vec![37, 28, 43]);
    }

    #[test]
    fn evaluate_rejects_bad_hops() {
        let net = fixtures::sample_network();
        // 12 -> 37 needs level 2
        let err = evaluate_path(&net, &[Hop::new(12, 1)], 37).unwrap_err();
        assert!(err.to_string().contains("12 -> 37"), "{err}");
        let err = evaluate_path(&net, &[Hop::new(12, 4)], 37).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let err = evaluate_path(&net, &[Hop::new(30, 1), Hop::new(37, 1), Hop::new(30, 1)], 14).unwrap_err();
        assert!(err.to_string().contains("more than once"), "{err}");
        assert!(matches!(evaluate_path(&net, &[Hop::new(30, 1)], 999), Err(Error::UnknownDevice(999))));
        let empty = evaluate_path(&net, &[], 30).unwrap();
        assert_eq!(empty.total_cost, 0);
    }

    #[test]
    fn short_route_is_optimal() {
        let net = fixtures::short_route_network();
        let r = maned_solve(&net, 13, 42).unwrap();
        assert_eq!(r.hops, SAMPLE_ROUTES[2].hops());
        assert_eq!(r.swings, 0);
        assert_eq!(r.total_cost, 110);
        assert_eq!(brute_force_min_path(&net, 13, 42, DEFAULT_BRUTE_FORCE_LIMIT).unwrap(), r);
    }

    #[test]
    fn same_source_and_destination() {
        let net = fixtures::short_route_network();
        let r = maned_solve(&net, 34, 34).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.total_cost, 0);
        assert_eq!(r.devices(), vec![34]);
        assert_eq!(brute_force_min_path(&net, 34, 34, 14).unwrap(), r);
    }

    #[test]
    fn isolated_devices_have_no_path() {
        let net = line(&[(1, 0, 1), (2, 1500, 1)]);
        assert!(matches!(maned_solve(&net, 1, 2), Err(Error::NoFeasiblePath { origin: 1, destination: 2 })));
        assert!(matches!(brute_force_min_path(&net, 1, 2, 14), Err(Error::NoFeasiblePath { .. })));
        assert!(matches!(maned_solve(&net, 1, 3), Err(Error::UnknownDevice(3))));
    }

    #[test]
    fn single_hop_costs_level_one_plus_destination() {
        let net = line(&[(1, 0, 1), (2, 26, 1)]);
        let r = brute_force_min_path(&net, 1, 2, 14).unwrap();
        assert_eq!(r.total_cost, 6);
        assert_eq!(maned_solve(&net, 1, 2).unwrap(), r);
    }

    #[test]
    fn brute_force_limit() {
        let net = fixtures::sample_network();
        assert!(matches!(
            brute_force_min_path(&net, 45, 49, 14),
            Err(Error::LimitExceeded { devices: 20, limit: 14 })
        ));
    }

    #[test]
    fn swing_cost_steers_the_route() {
        // 1 -> 3 directly needs level 2 (4 sectors); via 2 both hops are
        // level 1 but 2 only supports level 1, so the route 1 -> 2 -> 3 has no
        // swing while 1 -(2)-> 3 is a single hop.
        let net = line(&[(1, 0, 2), (2, 2 * 26, 1), (3, 4 * 26, 1)]);
        let r = maned_solve(&net, 1, 3).unwrap();
        assert_eq!(r.devices(), vec![1, 2, 3]);
        assert_eq!(r.total_cost, 4 + 4 + 2);
    }

    #[test]
    fn large_swing_cost_matches_brute_force() {
        let net = line(&[(1, 0, 2), (2, 2 * 26, 2), (3, 6 * 26, 2), (4, 12 * 26, 2)])
            .with_swing_cost(50);
        let fast = maned_solve(&net, 1, 4).unwrap();
        let slow = brute_force_min_path(&net, 1, 4, 14).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn ties_prefer_fewer_hops_then_smaller_ids() {
        // 1 and 4 sit 4 sectors apart; 2 and 3 are both midway. Both relays
        // give 4 + 4 + 2, the direct level-2 hop gives 36 + 2.
        let net = line(&[(1, 0, 2), (2, 2 * 26, 1), (3, 2 * 26 + 1, 1), (4, 4 * 26, 1)]);
        let r = maned_solve(&net, 1, 4).unwrap();
        assert_eq!(r.devices(), vec![1, 2, 4]);
        assert_eq!(brute_force_min_path(&net, 1, 4, 14).unwrap(), r);
    }

    #[test]
    fn all_levels_policy_avoids_expensive_swings() {
        // 1 -> 2 is 2 sectors (level 1), 2 -> 3 is 6 sectors (level 2) and 3
        // is out of reach of 1.
        let net = line(&[(1, 0, 2), (2, 2 * 26, 2), (3, 8 * 26, 2)]).with_swing_cost(1000);
        let lowest = Maned::new(&net).solve(1, 3).unwrap();
        assert_eq!(lowest.total_cost, 4 + 36 + 1000 + 2);
        let all = Maned::with_policy(&net, EdgePolicy::AllFeasibleLevels);
        let r = all.solve(1, 3).unwrap();
        assert_eq!(r, all.brute_force(1, 3, 14).unwrap());
        assert_eq!(r.hops, vec![Hop::new(1, 2), Hop::new(2, 2)]);
        assert_eq!(r.total_cost, 36 + 36 + 2);
    }

    #[test]
    fn state_costs_cover_prefixes() {
        let net = fixtures::short_route_network();
        let solver = Maned::new(&net);
        let costs = solver.state_costs(13).unwrap();
        let idx = |id| net.index_of(id).unwrap();
        assert_eq!(costs.cost(idx(13), 0), Some(0));
        assert_eq!(costs.cost(idx(34), 2), Some(36));
        assert_eq!(costs.cost(idx(46), 2), Some(72));
        assert_eq!(costs.cost(idx(42), 2), Some(108));
        assert_eq!(costs.cost(idx(42), 1), None);
        assert_eq!(costs.cost(idx(42), 9), None);
    }
}
