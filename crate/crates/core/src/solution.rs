//! Solution files and the arrow notation for paths.
//!
//! The arrow notation lists each device as `id[x;y;z]` joined by `-Cl->` for a
//! transmission at level `l`. A device where the level changes is written
//! twice, joined by `-Cb->`, and the path ends with `-Cd->` and the
//! destination repeated:
//!
//! ```text
//! 13[57;408;0] -C2-> 34[224;365;0] -C2-> 46[332;276;0] -C2-> 42[341;116;0] -Cd-> 42[341;116;0]
//! ```

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Energy, Level};
use crate::maned::{evaluate_path, Hop, HopCost, PathResult};
use crate::netgen::Network;
use crate::DeviceId;

/// On-disk form of a solved path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub source: DeviceId,
    pub destination: DeviceId,
    pub hops: Vec<Hop>,
    pub swings: u32,
    pub total_cost: Energy,
    pub breakdown: Vec<HopCost>,
    pub cb: Energy,
    pub cd: Energy,
}

impl SolutionFile {
    pub fn new(path: &PathResult, network: &Network) -> Self {
        SolutionFile {
            source: path.source,
            destination: path.destination,
            hops: path.hops.clone(),
            swings: path.swings,
            total_cost: path.total_cost,
            breakdown: path.breakdown.clone(),
            cb: network.swing_cost(),
            cd: network.destination_cost(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution serializes");
        s.push('\n');
        s
    }

    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(self.to_json().as_bytes())?;
        out.flush()?;
        Ok(())
    }

    pub fn load<R: Read>(reader: R) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_reader(reader);
        serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Parse {
            field: e.path().to_string(),
            message: e.into_inner().to_string(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::load(text.as_bytes())
    }

    /// Re-evaluates the recorded hops on `network`.
    pub fn evaluate(&self, network: &Network) -> Result<PathResult> {
        let path = evaluate_path(network, &self.hops, self.destination)?;
        if path.source != self.source {
            return Err(Error::Validation(format!(
                "solution source {} does not match its first hop {}",
                self.source, path.source
            )));
        }
        Ok(path)
    }
}

fn device_token(network: &Network, id: DeviceId) -> String {
    match network.device(id) {
        Some(d) => format!("{}{}", id, d.position),
        None => id.to_string(),
    }
}

/// Renders `path` in arrow notation.
pub fn format_arrow(network: &Network, path: &PathResult) -> String {
    let mut out = String::new();
    let Some(first) = path.hops.first() else {
        return device_token(network, path.destination);
    };
    out.push_str(&device_token(network, first.device));
    for (i, hop) in path.hops.iter().enumerate() {
        if i > 0 && path.hops[i - 1].level != hop.level {
            let _ = write!(out, " -Cb-> {}", device_token(network, hop.device));
        }
        let next = path.hops.get(i + 1).map_or(path.destination, |h| h.device);
        let _ = write!(out, " -C{}-> {}", hop.level, device_token(network, next));
    }
    let _ = write!(out, " -Cd-> {}", device_token(network, path.destination));
    out
}

fn parse_device(token: &str) -> Result<DeviceId> {
    let id = token.split('[').next().unwrap_or_default();
    id.trim().parse().map_err(|_| Error::Parse {
        field: "arrow".into(),
        message: format!("bad device token `{token}`"),
    })
}

/// Reads arrow notation back into sending hops and a destination.
pub fn parse_arrow(text: &str) -> Result<(Vec<Hop>, DeviceId)> {
    let bad = |message: String| Error::Parse {
        field: "arrow".into(),
        message,
    };
    let mut parts = text.trim().split(" -");
    let mut current = parse_device(parts.next().ok_or_else(|| bad("empty path".into()))?)?;
    let mut hops = Vec::new();
    let mut finished = false;
    for part in parts {
        if finished {
            return Err(bad("text after the destination".into()));
        }
        let (label, device) = part
            .split_once("-> ")
            .ok_or_else(|| bad(format!("bad arrow `-{part}`")))?;
        let next = parse_device(device)?;
        match label {
            "Cb" | "Cd" => {
                if next != current {
                    return Err(bad(format!("-{label}-> must repeat device {current}")));
                }
                finished = label == "Cd";
            }
            _ => {
                let level: Level = label
                    .strip_prefix('C')
                    .and_then(|l| l.parse().ok())
                    .ok_or_else(|| bad(format!("bad level label `{label}`")))?;
                hops.push(Hop::new(current, level));
                current = next;
            }
        }
    }
    if !hops.is_empty() && !finished {
        return Err(bad("path does not end with -Cd->".into()));
    }
    Ok((hops, current))
}
