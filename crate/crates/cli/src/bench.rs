//! Timing of generation, graph construction and solving.

use std::time::{Duration, Instant};

use manet_core::maned::Maned;
use manet_core::netgen::{generate, GenerateParams};
use manet_core::DeviceId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliResult;

#[derive(clap::Args)]
pub struct BenchArgs {
    /// Comma-separated device counts.
    #[arg(long, value_delimiter = ',', default_values_t = [100, 500, 1000, 2000, 3000, 4000, 5000])]
    sizes: Vec<usize>,
    /// Runs per size; the median is reported.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(5..))]
    runs: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn run(args: BenchArgs) -> CliResult {
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return Err(crate::Failure::new(crate::EXIT_USAGE, "sizes must be positive"));
    }
    println!("{:>8} {:>12} {:>12} {:>12} {:>10}", "devices", "generate_ms", "build_ms", "solve_ms", "found");
    for &n in &args.sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ n as u64);
        let (mut gen_t, mut build_t, mut solve_t) = (Vec::new(), Vec::new(), Vec::new());
        let mut found = 0;
        for run in 0..u64::from(args.runs) {
            let t = Instant::now();
            let net = generate(&GenerateParams::new(n, args.seed.wrapping_add(run)))?;
            gen_t.push(t.elapsed());
            let t = Instant::now();
            let solver = Maned::new(&net);
            build_t.push(t.elapsed());
            let s = rng.gen_range(0..n) as DeviceId;
            let d = rng.gen_range(0..n) as DeviceId;
            let t = Instant::now();
            let result = solver.solve(s, d);
            solve_t.push(t.elapsed());
            found += u32::from(result.is_ok());
        }
        println!(
            "{n:>8} {:>12.3} {:>12.3} {:>12.3} {:>10}",
            ms(median(gen_t)),
            ms(median(build_t)),
            ms(median(solve_t)),
            format!("{found}/{}", args.runs)
        );
    }
    Ok(())
}
