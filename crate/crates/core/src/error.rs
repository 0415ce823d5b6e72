use std::io;

use thiserror::Error;

use crate::DeviceId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid power level {0}: levels start at 1")]
    InvalidLevel(u32),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("point ({x}, {y}, {z}) lies outside the {width}x{height}x{depth} space")]
    OutOfBounds {
        x: u32,
        y: u32,
        z: u32,
        width: u32,
        height: u32,
        depth: u32,
    },

    #[error("malformed network document at `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown device {0}")]
    UnknownDevice(DeviceId),

    #[error("no feasible path from device {origin} to device {destination}")]
    NoFeasiblePath {
        origin: DeviceId,
        destination: DeviceId,
    },

    #[error("network has {devices} devices, brute force is limited to {limit}")]
    LimitExceeded { devices: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] io::Error),
}
