use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("wavenumber k = {k} is outside the open band (0, π)")]
    BandEdge { k: f64 },
    #[error("hopping must be a positive finite number, got {0}")]
    InvalidHopping(f64),
    #[error("non-finite value in transfer matrix or amplitude")]
    NonFinite,
    #[error("channel has no sites")]
    EmptyChannel,
    #[error("cluster has no channels")]
    NoChannels,
    #[error("emitter at site {site} is resonant with the photon")]
    ResonantPole { site: usize },
    #[error("channel {channel} has a near-zero a-entry; closed form is ill-defined")]
    DegenerateChannel { channel: usize },
    #[error("ring denominator 1 - 2γe^(ik) vanishes")]
    GammaPole,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("tight-binding system is numerically singular (condition estimate {condition:.3e})")]
    SingularSystem { condition: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClusterError {
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("ring arm {0} is empty")]
    EmptyArm(&'static str),
    #[error("atom pattern is empty")]
    EmptyPattern,
    #[error("invalid character {ch:?} at position {position} in atom pattern")]
    InvalidPatternChar { ch: char, position: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep range: need 0 < k_min < k_max < π, got [{k_min}, {k_max}]")]
    InvalidRange { k_min: f64, k_max: f64 },
    #[error("a sweep needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("window threshold must lie in (0, 1), got {0}")]
    InvalidThreshold(f64),
    #[error("reference emitter ({channel}, {site}) does not exist")]
    MissingReference { channel: usize, site: usize },
    #[error("sweep failed at k = {k}: {source}")]
    Point {
        k: f64,
        #[source]
        source: OracleError,
    },
}
