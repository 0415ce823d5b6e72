#![allow(dead_code)]

use manet_core::geometry::Space;
use manet_core::netgen::{generate, GenerateParams, Network};
use manet_core::DeviceId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A small random network and query drawn from `seed`: 2 to `max_devices`
/// devices in a space of 702, 1040 or 1404 pixels per side, and a random
/// source/destination pair.
pub fn small_case(seed: u64, max_devices: usize) -> (Network, DeviceId, DeviceId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_cafe);
    let n = rng.gen_range(2..=max_devices);
    let side = [702, 1040, 1404][rng.gen_range(0..3)];
    let mut params = GenerateParams::new(n, seed);
    params.space = Space { x: side, y: side, z: 0 };
    let net = generate(&params).unwrap();
    let s = rng.gen_range(0..n) as DeviceId;
    let d = rng.gen_range(0..n) as DeviceId;
    (net, s, d)
}
