#![allow(dead_code)]

use crw_core::{CavitySite, ClusterSpec, Emitter, LatticeParams};
use proptest::prelude::*;

pub fn site() -> impl Strategy<Value = CavitySite> {
    prop_oneof![
        Just(CavitySite::bare()),
        (-3.0f64..3.0).prop_map(CavitySite::with_epsilon),
        (0.0f64..10.0, 0.0f64..2.0).prop_map(|(w, g)| CavitySite::with_emitter(Emitter::new(w, g))),
    ]
}

pub fn channel(max_len: usize) -> impl Strategy<Value = Vec<CavitySite>> {
    prop::collection::vec(site(), 1..=max_len)
}

pub fn params() -> impl Strategy<Value = LatticeParams> {
    (0.0f64..10.0).prop_map(LatticeParams::unit)
}

pub fn cluster() -> impl Strategy<Value = ClusterSpec> {
    prop_oneof![
        (params(), channel(20)).prop_map(|(p, c)| ClusterSpec::serial(p, c)),
        (params(), prop::collection::vec(channel(12), 1..=8))
            .prop_map(|(p, c)| ClusterSpec::parallel(p, c)),
        (params(), prop::collection::vec(channel(1), 1..=8)).prop_map(|(p, c)| {
            // ring: bare-energy single resonators
            let c = c
                .into_iter()
                .map(|ch| {
                    vec![CavitySite {
                        epsilon: None,
                        ..ch[0]
                    }]
                })
                .collect();
            ClusterSpec::parallel(p, c)
        }),
        (params(), 1usize..=8, channel(12))
            .prop_map(|(p, n, c)| ClusterSpec::identical_parallel(p, n, c)),
    ]
}

/// Distance of `k` from the nearest emitter resonance, in energy units.
pub fn pole_distance(cluster: &ClusterSpec, k: f64) -> f64 {
    let e = cluster.params.energy(k);
    cluster
        .channels()
        .iter()
        .flat_map(|c| c.iter())
        .filter_map(|s| s.emitter)
        .map(|em| (e - em.transition_frequency).abs())
        .fold(f64::INFINITY, f64::min)
}
