//! Inputs shared by the chern-core benchmarks.

use chern_core::random::{case_rng, random_matrix};
use chern_core::{CycleDescriptor, FredholmRealization, Result};

/// Random `(p|q)` matrix model with `k` generators and a random operator.
pub fn model(p: usize, q: usize, k: usize, seed: u64) -> Result<(CycleDescriptor, FredholmRealization)> {
    let cycle = CycleDescriptor::random(p, q, k, seed)?;
    let mut rng = case_rng(seed, "bench-operator");
    let r = FredholmRealization::from_block(&random_matrix(&mut rng, q, p));
    Ok((cycle, r))
}
