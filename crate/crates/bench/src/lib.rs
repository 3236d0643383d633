//! Shared workloads for the engine benchmarks.

use b2tensor::Fundamental;

/// Powers benchmarked for each module; the vector grows faster.
pub fn powers(module: Fundamental) -> &'static [u32] {
    match module {
        Fundamental::Vector => &[4, 8, 12],
        Fundamental::Spinor => &[4, 8, 16],
    }
}

/// Benchmark id such as `vector/p8`.
pub fn label(module: Fundamental, p: u32) -> String {
    format!("{}/p{p}", module.name())
}
