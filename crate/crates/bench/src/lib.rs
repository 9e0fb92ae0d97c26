//! Fixture clusters shared by the benchmarks.

use crw_core::{CavitySite, ClusterSpec, Emitter, LatticeParams};

/// Chain of `n` sites alternating two emitters and a detuned cavity.
pub fn long_chain(n: usize) -> Vec<CavitySite> {
    (0..n)
        .map(|i| match i % 3 {
            0 => CavitySite::with_emitter(Emitter::new(2.0, 1.0)),
            1 => CavitySite::with_emitter(Emitter::new(3.0, 0.8)),
            _ => CavitySite::with_epsilon(4.6),
        })
        .collect()
}

/// `m` distinct channels of length `len` at `ω = 5`.
pub fn bundle(m: usize, len: usize) -> ClusterSpec {
    let channels = (0..m)
        .map(|j| {
            let mut ch = long_chain(len);
            ch.rotate_left(j % len.max(1));
            ch
        })
        .collect();
    ClusterSpec::parallel(LatticeParams::unit(5.0), channels)
}

/// The 30-copy mirror cluster.
pub fn mirror(copies: usize) -> ClusterSpec {
    let a = CavitySite::with_emitter(Emitter::new(2.0, 1.0));
    let b = CavitySite::with_emitter(Emitter::new(3.0, 1.0));
    ClusterSpec::identical_parallel(LatticeParams::unit(5.0), copies, vec![a, b, a])
}
