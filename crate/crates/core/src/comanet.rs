//! The constraint model of a network snapshot.
//!
//! Binary indicators `v_il` select the level device `i` operates at and
//! `x_ij` mark the directed links in use. The constraints are:
//!
//! 1. each device selects exactly one level;
//! 2. a link `i -> j` is only used when the level of `i` provides the energy
//!    the link needs;
//! 3. the destination is reachable from the source over the used links.
//!
//! The objective sums the cost of every selected level. Level 0 is an idle
//! level of cost 0, so devices that take no part in a transmission still
//! satisfy the one-level constraint without adding to the objective.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::{Energy, Level};
use crate::maned::{evaluate_path, Hop, PathResult};
use crate::netgen::Network;
use crate::DeviceId;

/// Default cap for [`count_simple_paths`].
pub const DEFAULT_PATH_CAP: u64 = 1_000_000;

/// Relative slack when comparing real-valued energies in Euclidean mode.
const ENERGY_TOLERANCE: f64 = 1e-9;

/// Variable state: the set of `(device, level)` pairs with `v_il = 1` and the
/// set of links with `x_ij = 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    levels: BTreeSet<(DeviceId, Level)>,
    links: BTreeSet<(DeviceId, DeviceId)>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every device of `network` idle, no links.
    pub fn idle(network: &Network) -> Self {
        Assignment {
            levels: network.devices().iter().map(|d| (d.id, 0)).collect(),
            links: BTreeSet::new(),
        }
    }

    /// Sets `v_il = 1`. Other levels of the same device are left untouched.
    pub fn select(&mut self, device: DeviceId, level: Level) {
        self.levels.insert((device, level));
    }

    /// Replaces whatever `device` had selected with `level`.
    pub fn set_level(&mut self, device: DeviceId, level: Level) {
        self.levels.retain(|&(d, _)| d != device);
        self.levels.insert((device, level));
    }

    pub fn link(&mut self, from: DeviceId, to: DeviceId) {
        self.links.insert((from, to));
    }

    pub fn selections(&self) -> impl Iterator<Item = (DeviceId, Level)> + '_ {
        self.levels.iter().copied()
    }

    pub fn links(&self) -> impl Iterator<Item = (DeviceId, DeviceId)> + '_ {
        self.links.iter().copied()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    /// The selected level of `device` when exactly one is selected.
    pub fn level_of(&self, device: DeviceId) -> Option<Level> {
        let mut it = self.levels.range((device, 0)..=(device, Level::MAX));
        match (it.next(), it.next()) {
            (Some(&(_, l)), None) => Some(l),
            _ => None,
        }
    }

    /// Device to level, keeping the lowest level when several are selected.
    pub fn level_map(&self) -> BTreeMap<DeviceId, Level> {
        let mut map = BTreeMap::new();
        for &(d, l) in self.levels.iter().rev() {
            map.insert(d, l);
        }
        map
    }

    /// Levels and links exactly as a path declares them, without checking
    /// that the path is feasible: hop devices at their transmit level, every
    /// other device idle, one link per hop.
    pub fn declared_by(network: &Network, hops: &[Hop], destination: DeviceId) -> Self {
        let mut a = Assignment::idle(network);
        for (i, hop) in hops.iter().enumerate() {
            a.set_level(hop.device, hop.level);
            let next = hops.get(i + 1).map_or(destination, |h| h.device);
            a.link(hop.device, next);
        }
        a
    }
}

/// Items that break a constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation<T> {
    pub items: Vec<T>,
}

impl<T: fmt::Debug> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violated by {:?}", self.items)
    }
}

fn outcome<T>(items: Vec<T>) -> Result<(), Violation<T>> {
    if items.is_empty() {
        Ok(())
    } else {
        Err(Violation { items })
    }
}

/// Directed weighted graph of the links available under some level choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGraph {
    ids: Vec<DeviceId>,
    index: HashMap<DeviceId, usize>,
    adjacency: Vec<Vec<(usize, Energy)>>,
}

impl InducedGraph {
    fn empty(network: &Network) -> Self {
        let ids: Vec<DeviceId> = network.devices().iter().map(|d| d.id).collect();
        let index = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let adjacency = vec![Vec::new(); ids.len()];
        InducedGraph {
            ids,
            index,
            adjacency,
        }
    }

    /// Graph over the devices of `network` with the given weighted edges.
    pub fn from_edges(
        network: &Network,
        edges: impl IntoIterator<Item = (DeviceId, DeviceId, Energy)>,
    ) -> Result<Self> {
        let mut g = Self::empty(network);
        for (from, to, cost) in edges {
            let (i, j) = (g.position(from)?, g.position(to)?);
            g.adjacency[i].push((j, cost));
        }
        for row in &mut g.adjacency {
            row.sort_unstable();
            row.dedup();
        }
        Ok(g)
    }

    fn position(&self, id: DeviceId) -> Result<usize> {
        self.index.get(&id).copied().ok_or(Error::UnknownDevice(id))
    }

    pub fn vertices(&self) -> &[DeviceId] {
        &self.ids
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (DeviceId, DeviceId, Energy)> + '_ {
        self.adjacency.iter().enumerate().flat_map(move |(i, row)| {
            row.iter().map(move |&(j, c)| (self.ids[i], self.ids[j], c))
        })
    }

    pub fn has_edge(&self, from: DeviceId, to: DeviceId) -> bool {
        match (self.index.get(&from), self.index.get(&to)) {
            (Some(&i), Some(&j)) => self.adjacency[i].iter().any(|&(k, _)| k == j),
            _ => false,
        }
    }
}

/// Links available when every device operates at the level given in `levels`.
/// Devices absent from the map are idle.
pub fn induce_graph(network: &Network, levels: &BTreeMap<DeviceId, Level>) -> Result<InducedGraph> {
    let mut g = InducedGraph::empty(network);
    for (&id, &level) in levels {
        let i = network.index_of(id)?;
        if level == 0 {
            continue;
        }
        if !network.devices()[i].supports(level) {
            return Err(Error::Validation(format!(
                "device {id} does not support level {level}"
            )));
        }
        let cost = network.level_cost(level).expect("supported level is in the table");
        g.adjacency[i] = (0..network.len())
            .filter(|&j| j != i && network.reaches(i, j, level))
            .map(|j| (j, cost))
            .collect();
    }
    Ok(g)
}

/// Every device selects exactly one level, and only levels that exist.
/// Reports offending devices in id order.
pub fn check_one_level(assignment: &Assignment, network: &Network) -> Result<(), Violation<DeviceId>> {
    let mut counts: BTreeMap<DeviceId, usize> =
        network.devices().iter().map(|d| (d.id, 0)).collect();
    let mut bad = BTreeSet::new();
    for (device, level) in assignment.selections() {
        match counts.get_mut(&device) {
            Some(n) => *n += 1,
            None => {
                bad.insert(device);
            }
        }
        if level > network.level_count() {
            bad.insert(device);
        }
    }
    bad.extend(counts.into_iter().filter(|&(_, n)| n != 1).map(|(d, _)| d));
    outcome(bad.into_iter().collect())
}

/// Every used link is within the energy of the sender's level.
pub fn check_edge_feasibility(
    assignment: &Assignment,
    network: &Network,
) -> Result<(), Violation<(DeviceId, DeviceId)>> {
    let bad = assignment
        .links()
        .filter(|&(i, j)| !link_feasible(assignment, network, i, j))
        .collect();
    outcome(bad)
}

fn link_feasible(assignment: &Assignment, network: &Network, from: DeviceId, to: DeviceId) -> bool {
    if from == to {
        return false;
    }
    let (Ok(i), Ok(j)) = (network.index_of(from), network.index_of(to)) else {
        return false;
    };
    let Some(level) = assignment.level_of(from) else {
        return false;
    };
    if !network.devices()[i].supports(level) {
        return false;
    }
    match (network.required_energy(i, j), network.level_budget(level)) {
        (Some(need), Some(budget)) => need <= budget * (1.0 + ENERGY_TOLERANCE),
        _ => false,
    }
}

/// Result of a capped path count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCount {
    Exactly(u64),
    /// More than the cap; counting stopped.
    Exceeds(u64),
}

impl PathCount {
    pub fn at_least_one(&self) -> bool {
        !matches!(self, PathCount::Exactly(0))
    }
}

/// Number of simple paths from `source` to `destination`, or
/// [`PathCount::Exceeds`] once the count passes `cap`. A device has no path
/// to itself.
pub fn count_simple_paths(
    graph: &InducedGraph,
    source: DeviceId,
    destination: DeviceId,
    cap: u64,
) -> Result<PathCount> {
    if cap == 0 {
        return Err(Error::Config("path count cap must be at least 1".into()));
    }
    let s = graph.position(source)?;
    let d = graph.position(destination)?;
    if s == d {
        return Ok(PathCount::Exactly(0));
    }

    struct Counter<'g> {
        graph: &'g InducedGraph,
        destination: usize,
        on_path: Vec<bool>,
        count: u64,
        cap: u64,
    }

    impl Counter<'_> {
        // returns false once the cap is exceeded
        fn walk(&mut self, u: usize) -> bool {
            for &(v, _) in &self.graph.adjacency[u] {
                if self.on_path[v] {
                    continue;
                }
                if v == self.destination {
                    self.count += 1;
                    if self.count > self.cap {
                        return false;
                    }
                    continue;
                }
                self.on_path[v] = true;
                let go_on = self.walk(v);
                self.on_path[v] = false;
                if !go_on {
                    return false;
                }
            }
            true
        }
    }

    let mut counter = Counter {
        graph,
        destination: d,
        on_path: vec![false; graph.ids.len()],
        count: 0,
        cap,
    };
    counter.on_path[s] = true;
    Ok(if counter.walk(s) {
        PathCount::Exactly(counter.count)
    } else {
        PathCount::Exceeds(cap)
    })
}

/// `destination` is reachable from `source` by breadth-first search. A device
/// trivially reaches itself.
pub fn check_connectivity(
    graph: &InducedGraph,
    source: DeviceId,
    destination: DeviceId,
) -> Result<(), Violation<(DeviceId, DeviceId)>> {
    let violation = || Err(Violation {
        items: vec![(source, destination)],
    });
    let (Ok(s), Ok(d)) = (graph.position(source), graph.position(destination)) else {
        return violation();
    };
    let mut seen = vec![false; graph.ids.len()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = queue.pop_front() {
        if u == d {
            return Ok(());
        }
        for &(v, _) in &graph.adjacency[u] {
            if !std::mem::replace(&mut seen[v], true) {
                queue.push_back(v);
            }
        }
    }
    violation()
}

/// Sum of the costs of every selected level.
pub fn objective_value(assignment: &Assignment, network: &Network) -> Energy {
    assignment
        .selections()
        .map(|(_, l)| network.level_cost(l).unwrap_or(0))
        .sum()
}

/// Graph of the links an assignment uses, weighted by the sender's level cost.
pub fn link_graph(assignment: &Assignment, network: &Network) -> Result<InducedGraph> {
    InducedGraph::from_edges(
        network,
        assignment.links().map(|(i, j)| {
            let cost = assignment
                .level_of(i)
                .and_then(|l| network.level_cost(l))
                .unwrap_or(0);
            (i, j, cost)
        }),
    )
}

/// The assignment a solved path implies: senders at their transmit levels,
/// everyone else idle, and every link the resulting levels make available.
pub fn assignment_from_path(path: &PathResult, network: &Network) -> Result<Assignment> {
    evaluate_path(network, &path.hops, path.destination)?;
    let mut a = Assignment::idle(network);
    for hop in &path.hops {
        a.set_level(hop.device, hop.level);
    }
    let graph = induce_graph(network, &a.level_map())?;
    for (i, j, _) in graph.edges() {
        a.link(i, j);
    }
    Ok(a)
}

/// Writes the model as a CPLEX-style LP file.
///
/// Reachability is not linear as stated, so it is exported as one unit of
/// flow from `source` to `destination`: `f_i_j <= x_i_j` on every ordered
/// pair and flow conservation at every device.
pub fn export_lp<W: Write>(network: &Network, source: DeviceId, destination: DeviceId, out: W) -> Result<()> {
    if network.len() < 2 {
        return Err(Error::Config(
            "an LP export needs at least two devices".into(),
        ));
    }
    if source == destination {
        return Err(Error::Config("source and destination must differ".into()));
    }
    network.index_of(source)?;
    network.index_of(destination)?;

    let mut w = LpWriter::new(out);
    let devices = network.devices();
    let v = |id: DeviceId, l: Level| format!("v_{id}_{l}");
    let x = |i: DeviceId, j: DeviceId| format!("x_{i}_{j}");
    let f = |i: DeviceId, j: DeviceId| format!("f_{i}_{j}");

    w.line(&format!(
        "\\ Minimum-energy unicast model: {} devices, {} levels, source {}, destination {}",
        devices.len(),
        network.level_count(),
        source,
        destination
    ))?;
    w.line(&format!(
        "\\ distance mode {}, alpha {}; level 0 is idle with cost 0",
        network.distance_mode(),
        network.alpha()
    ))?;
    w.line("\\ Reachability of the destination is linearized as a unit flow:")?;
    w.line("\\ f_i_j <= x_i_j for every ordered pair, conservation at every device.")?;
    w.line("Minimize")?;
    let mut objective = Vec::new();
    for d in devices {
        for l in d.supported_levels() {
            let cost = network.level_cost(l).expect("supported level");
            objective.push(format!("{cost} {}", v(d.id, l)));
        }
    }
    w.expression(" obj:", &objective, "")?;

    w.line("Subject To")?;
    for d in devices {
        let terms: Vec<String> = (0..=d.max_level).map(|l| v(d.id, l)).collect();
        w.expression(&format!(" one_level_{}:", d.id), &terms, "= 1")?;
    }
    for (i, a) in devices.iter().enumerate() {
        for (j, b) in devices.iter().enumerate() {
            if i == j {
                continue;
            }
            let name = format!(" link_{}_{}:", a.id, b.id);
            match network.required_energy(i, j) {
                Some(need) => {
                    let mut terms = vec![format!("{need} {}", x(a.id, b.id))];
                    for l in a.supported_levels() {
                        let budget = network.level_budget(l).expect("supported level");
                        terms.push(format!("- {budget} {}", v(a.id, l)));
                    }
                    w.expression(&name, &terms, "<= 0")?;
                }
                None => w.expression(&name, &[x(a.id, b.id)], "<= 0")?,
            }
        }
    }
    for a in devices {
        for b in devices {
            if a.id != b.id {
                let terms = [f(a.id, b.id), format!("- {}", x(a.id, b.id))];
                w.expression(&format!(" carry_{}_{}:", a.id, b.id), &terms, "<= 0")?;
            }
        }
    }
    for a in devices {
        let mut terms = Vec::new();
        for b in devices.iter().filter(|b| b.id != a.id) {
            terms.push(format!("+ {}", f(a.id, b.id)));
            terms.push(format!("- {}", f(b.id, a.id)));
        }
        let rhs = if a.id == source {
            1
        } else if a.id == destination {
            -1
        } else {
            0
        };
        w.expression(&format!(" flow_{}:", a.id), &terms, &format!("= {rhs}"))?;
    }

    w.line("Bounds")?;
    for a in devices {
        for b in devices.iter().filter(|b| b.id != a.id) {
            w.line(&format!(" 0 <= {} <= 1", f(a.id, b.id)))?;
        }
    }

    w.line("Binary")?;
    let mut binaries = Vec::new();
    for d in devices {
        binaries.extend((0..=d.max_level).map(|l| v(d.id, l)));
    }
    for a in devices {
        binaries.extend(devices.iter().filter(|b| b.id != a.id).map(|b| x(a.id, b.id)));
    }
    w.words("", &binaries, "")?;
    w.line("End")?;
    w.finish()
}

/// Line-oriented LP output; long expressions wrap onto continuation lines.
struct LpWriter<W: Write> {
    out: W,
}

impl<W: Write> LpWriter<W> {
    const WIDTH: usize = 200;

    fn new(out: W) -> Self {
        LpWriter { out }
    }

    fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    /// Writes `head` followed by the terms joined with `+` unless a term
    /// carries its own sign.
    fn expression(&mut self, head: &str, terms: &[String], tail: &str) -> Result<()> {
        let signed: Vec<String> = terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                if k == 0 {
                    t.strip_prefix("+ ").unwrap_or(t).to_string()
                } else if t.starts_with('+') || t.starts_with('-') {
                    t.clone()
                } else {
                    format!("+ {t}")
                }
            })
            .collect();
        self.words(head, &signed, tail)
    }

    fn words(&mut self, head: &str, terms: &[String], tail: &str) -> Result<()> {
        let mut current = head.to_string();
        for term in terms {
            if current.len() + term.len() + 1 > Self::WIDTH && !current.trim().is_empty() {
                self.line(&current)?;
                current = "   ".to_string();
            }
            current.push(' ');
            current.push_str(term);
        }
        if !tail.is_empty() {
            current.push(' ');
            current.push_str(tail);
        }
        self.line(&current)
    }

    fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::{standard_levels, Point, Space};
    use crate::maned::maned_solve;
    use crate::netgen::{CostParams, Device};

    fn net(devices: &[(DeviceId, u32, u32, Level)]) -> Network {
        Network::new(
            Space { x: 1000, y: 1000, z: 0 },
            26,
            standard_levels(3).unwrap(),
            devices
                .iter()
                .map(|&(id, x, y, m)| Device::new(id, Point::planar(x, y), m))
                .collect(),
            CostParams::default(),
        )
        .unwrap()
    }

    /// Graph on ids 0..n with the given edges, all of cost 4.
    fn graph(n: u32, edges: &[(u32, u32)]) -> InducedGraph {
        let network = net(&(0..n).map(|i| (i, i, 0, 1)).collect::<Vec<_>>());
        InducedGraph::from_edges(&network, edges.iter().map(|&(a, b)| (a, b, 4))).unwrap()
    }

    #[test]
    fn idle_devices_induce_nothing() {
        let n = fixtures::sample_network();
        let levels = n.devices().iter().map(|d| (d.id, 0)).collect();
        assert_eq!(induce_graph(&n, &levels).unwrap().edge_count(), 0);
    }

    #[test]
    fn same_sector_level_one_edge() {
        let n = net(&[(1, 3, 3, 1), (2, 20, 20, 1)]);
        let g = induce_graph(&n, &BTreeMap::from([(1, 1), (2, 0)])).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2, 4)]);
    }

    #[test]
    fn induce_rejects_unknown_and_unsupported() {
        let n = net(&[(1, 3, 3, 1)]);
        assert!(matches!(
            induce_graph(&n, &BTreeMap::from([(9, 1)])),
            Err(Error::UnknownDevice(9))
        ));
        assert!(matches!(
            induce_graph(&n, &BTreeMap::from([(1, 2)])),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn one_level_checks() {
        let n = net(&[(3, 0, 0, 1), (5, 30, 0, 2), (7, 60, 0, 1)]);
        let mut a = Assignment::idle(&n);
        assert_eq!(check_one_level(&a, &n), Ok(()));

        let mut missing = Assignment::new();
        missing.select(5, 0);
        missing.select(7, 1);
        assert_eq!(check_one_level(&missing, &n), Err(Violation { items: vec![3] }));

        a.select(5, 2);
        assert_eq!(check_one_level(&a, &n), Err(Violation { items: vec![5] }));
        assert_eq!(a.level_of(5), None);

        let mut stray = Assignment::idle(&n);
        stray.select(11, 1);
        stray.set_level(7, 4);
        assert_eq!(check_one_level(&stray, &n), Err(Violation { items: vec![7, 11] }));
    }

    #[test]
    fn edge_feasibility_checks() {
        // 1 and 2 are six sectors apart.
        let n = net(&[(1, 0, 0, 3), (2, 6 * 26, 0, 3)]);
        let mut a = Assignment::idle(&n);
        assert_eq!(check_edge_feasibility(&a, &n), Ok(()));
        a.set_level(1, 1);
        a.link(1, 2);
        assert_eq!(check_edge_feasibility(&a, &n), Err(Violation { items: vec![(1, 2)] }));
        a.set_level(1, 2);
        assert_eq!(check_edge_feasibility(&a, &n), Ok(()));
        a.link(2, 1);
        a.link(2, 2);
        assert_eq!(
            check_edge_feasibility(&a, &n),
            Err(Violation { items: vec![(2, 1), (2, 2)] })
        );
    }

    #[test]
    fn induced_links_are_feasible() {
        let n = fixtures::sample_network();
        let mut a = Assignment::idle(&n);
        for (k, d) in n.devices().iter().enumerate() {
            a.set_level(d.id, (k % 4) as Level);
        }
        for (i, j, _) in induce_graph(&n, &a.level_map()).unwrap().edges() {
            a.link(i, j);
        }
        assert!(a.link_count() > 0);
        assert_eq!(check_edge_feasibility(&a, &n), Ok(()));
    }

    #[test]
    fn path_counts() {
        assert_eq!(count_simple_paths(&graph(3, &[(0, 1), (1, 2)]), 0, 2, 10).unwrap(), PathCount::Exactly(1));
        assert_eq!(
            count_simple_paths(&graph(3, &[(0, 2), (0, 1), (1, 2)]), 0, 2, 10).unwrap(),
            PathCount::Exactly(2)
        );
        let complete: Vec<_> = (0..4).flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let k4 = graph(4, &complete);
        assert_eq!(count_simple_paths(&k4, 0, 3, 100).unwrap(), PathCount::Exactly(5));
        assert_eq!(count_simple_paths(&k4, 0, 3, 4).unwrap(), PathCount::Exceeds(4));
        assert_eq!(count_simple_paths(&k4, 2, 2, 4).unwrap(), PathCount::Exactly(0));
        assert!(count_simple_paths(&k4, 0, 3, 0).is_err());
        assert!(count_simple_paths(&k4, 0, 9, 1).is_err());
    }

    #[test]
    fn connectivity_checks() {
        let g = graph(3, &[(1, 0)]);
        assert!(check_connectivity(&g, 0, 2).is_err());
        assert!(check_connectivity(&g, 1, 0).is_ok());
        let cliques = graph(6, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0), (3, 4), (4, 3), (4, 5), (5, 4), (3, 5), (5, 3)]);
        assert_eq!(check_connectivity(&cliques, 0, 5), Err(Violation { items: vec![(0, 5)] }));
        assert!(check_connectivity(&cliques, 0, 2).is_ok());
    }

    #[test]
    fn objective_examples() {
        let n = fixtures::sample_network();
        let mut a = Assignment::idle(&n);
        assert_eq!(objective_value(&a, &n), 0);
        a.set_level(12, 2);
        assert_eq!(objective_value(&a, &n), 36);
        let route = fixtures::SAMPLE_ROUTES[0];
        let mut a = Assignment::idle(&n);
        for h in route.hops() {
            a.set_level(h.device, h.level);
        }
        assert_eq!(objective_value(&a, &n), 232);
    }

    #[test]
    fn assignment_of_sample_route() {
        let n = fixtures::sample_network();
        let route = fixtures::SAMPLE_ROUTES[0];
        let path = evaluate_path(&n, &route.hops(), route.destination).unwrap();
        let a = assignment_from_path(&path, &n).unwrap();
        let expected = [(45, 2), (12, 2), (37, 1), (30, 1), (14, 1), (28, 3), (43, 1), (49, 0)];
        for (d, l) in expected {
            assert_eq!(a.level_of(d), Some(l), "device {d}");
        }
        assert_eq!(a.level_of(42), Some(0));
        assert_eq!(check_one_level(&a, &n), Ok(()));
        assert_eq!(check_edge_feasibility(&a, &n), Ok(()));
        assert!(check_connectivity(&link_graph(&a, &n).unwrap(), 45, 49).is_ok());
        assert_eq!(objective_value(&a, &n), path.total_cost - 3 - 2);
    }

    #[test]
    fn assignment_of_trivial_paths() {
        let n = net(&[(1, 0, 0, 1), (2, 26, 0, 1)]);
        let empty = maned_solve(&n, 1, 1).unwrap();
        assert_eq!(assignment_from_path(&empty, &n).unwrap(), Assignment::idle(&n));
        let hop = maned_solve(&n, 1, 2).unwrap();
        let a = assignment_from_path(&hop, &n).unwrap();
        assert_eq!((a.level_of(1), a.level_of(2)), (Some(1), Some(0)));
        let mut bad = hop.clone();
        bad.hops[0].level = 3;
        assert!(assignment_from_path(&bad, &n).is_err());
    }

    #[test]
    fn declared_assignment_keeps_bad_levels() {
        let n = fixtures::sample_network();
        let a = Assignment::declared_by(&n, &[Hop::new(12, 1)], 37);
        assert_eq!(a.level_of(12), Some(1));
        assert_eq!(check_edge_feasibility(&a, &n), Err(Violation { items: vec![(12, 37)] }));
    }

    #[test]
    fn lp_rejects_degenerate_queries() {
        let one = net(&[(1, 0, 0, 1)]);
        assert!(matches!(export_lp(&one, 1, 1, Vec::new()), Err(Error::Config(_))));
        let two = net(&[(1, 0, 0, 1), (2, 0, 0, 1)]);
        assert!(matches!(export_lp(&two, 1, 1, Vec::new()), Err(Error::Config(_))));
        assert!(matches!(export_lp(&two, 1, 3, Vec::new()), Err(Error::UnknownDevice(3))));
    }

    #[test]
    fn lp_row_counts() {
        let n = net(&[(1, 0, 0, 3), (2, 30, 0, 2), (3, 400, 0, 1), (4, 900, 900, 3)]);
        let mut buf = Vec::new();
        export_lp(&n, 1, 4, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows = |prefix: &str| text.lines().filter(|l| l.trim_start().starts_with(prefix)).count();
        assert_eq!(rows("one_level_"), 4);
        assert_eq!(rows("link_"), 12);
        assert_eq!(rows("carry_"), 12);
        assert_eq!(rows("flow_"), 4);
        assert!(text.contains(" one_level_3: v_3_0 + v_3_1 = 1"));
        assert!(text.contains(" link_3_4: x_3_4 <= 0"));
        assert!(text.contains(" flow_1:") && text.lines().any(|l| l.starts_with(" flow_1:") && l.ends_with("= 1")));
        assert!(text.trim_end().ends_with("End"));
    }
}
