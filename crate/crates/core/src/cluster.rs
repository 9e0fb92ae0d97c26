//! Two-terminal cluster topologies and their builders.

use std::fmt;

use crate::error::{ClusterError, ScatteringError};
use crate::scattering::{
    dispersion, identical_parallel_amplitudes, parallel_amplitudes, ring_amplitudes,
    serial_amplitudes, CavitySite, Emitter, LatticeParams, ModeContext, ScatteringResult,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Topology {
    Serial {
        channel: Vec<CavitySite>,
    },
    /// Channels keep their input order; the physics does not depend on it.
    Parallel {
        channels: Vec<Vec<CavitySite>>,
    },
    IdenticalParallel {
        copies: usize,
        channel: Vec<CavitySite>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSpec {
    pub params: LatticeParams,
    pub topology: Topology,
}

/// Which closed form a cluster is evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    Serial,
    Parallel,
    Ring,
    IdenticalParallel,
}

impl ClusterSpec {
    pub fn serial(params: LatticeParams, channel: Vec<CavitySite>) -> Self {
        Self {
            params,
            topology: Topology::Serial { channel },
        }
    }

    pub fn parallel(params: LatticeParams, channels: Vec<Vec<CavitySite>>) -> Self {
        Self {
            params,
            topology: Topology::Parallel { channels },
        }
    }

    pub fn identical_parallel(
        params: LatticeParams,
        copies: usize,
        channel: Vec<CavitySite>,
    ) -> Self {
        Self {
            params,
            topology: Topology::IdenticalParallel { copies, channel },
        }
    }

    /// Distinct channels as written, without expanding copies.
    pub fn channels(&self) -> Vec<&[CavitySite]> {
        match &self.topology {
            Topology::Serial { channel } | Topology::IdenticalParallel { channel, .. } => {
                vec![channel.as_slice()]
            }
            Topology::Parallel { channels } => channels.iter().map(Vec::as_slice).collect(),
        }
    }

    /// Every physical channel, with identical copies repeated.
    pub fn expanded_channels(&self) -> Vec<&[CavitySite]> {
        match &self.topology {
            Topology::IdenticalParallel { copies, channel } => vec![channel.as_slice(); *copies],
            _ => self.channels(),
        }
    }

    /// Total number of sites between the junctions, `N = Σ n_i`.
    pub fn total_sites(&self) -> usize {
        self.expanded_channels().iter().map(|c| c.len()).sum()
    }

    pub fn is_hermitian(&self) -> bool {
        self.channels()
            .iter()
            .all(|ch| ch.iter().all(CavitySite::is_hermitian))
    }

    /// First coupled emitter in channel then site order.
    pub fn first_emitter(&self) -> Option<(usize, usize)> {
        self.channels()
            .iter()
            .enumerate()
            .find_map(|(i, ch)| ch.iter().position(|s| s.emitter.is_some()).map(|j| (i, j)))
    }

    pub fn emitter_at(&self, channel: usize, site: usize) -> Option<Emitter> {
        self.channels()
            .get(channel)
            .and_then(|ch| ch.get(site))
            .and_then(|s| s.emitter)
    }

    pub fn mode(&self, k: f64) -> Result<ModeContext, ScatteringError> {
        dispersion(k, self.params)
    }

    /// Same cluster with every channel traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let rev = |ch: &Vec<CavitySite>| ch.iter().rev().copied().collect::<Vec<_>>();
        let topology = match &self.topology {
            Topology::Serial { channel } => Topology::Serial {
                channel: rev(channel),
            },
            Topology::Parallel { channels } => Topology::Parallel {
                channels: channels.iter().map(rev).collect(),
            },
            Topology::IdenticalParallel { copies, channel } => Topology::IdenticalParallel {
                copies: *copies,
                channel: rev(channel),
            },
        };
        Self {
            params: self.params,
            topology,
        }
    }

    /// Parallel bundles of single lead-energy resonators are rings.
    pub fn closed_form_kind(&self) -> ClosedForm {
        match &self.topology {
            Topology::Serial { .. } => ClosedForm::Serial,
            Topology::IdenticalParallel { .. } => ClosedForm::IdenticalParallel,
            Topology::Parallel { channels } => {
                if channels
                    .iter()
                    .all(|ch| ch.len() == 1 && ch[0].epsilon.is_none())
                {
                    ClosedForm::Ring
                } else {
                    ClosedForm::Parallel
                }
            }
        }
    }

    /// Evaluates the closed form matching the topology.
    pub fn closed_form(&self, mode: &ModeContext) -> Result<ScatteringResult, ScatteringError> {
        match &self.topology {
            Topology::Serial { channel } => serial_amplitudes(channel, mode),
            Topology::IdenticalParallel { copies, channel } => {
                identical_parallel_amplitudes(*copies, channel, mode)
            }
            Topology::Parallel { channels } => match self.closed_form_kind() {
                ClosedForm::Ring => {
                    let branches: Vec<Option<Emitter>> =
                        channels.iter().map(|ch| ch[0].emitter).collect();
                    ring_amplitudes(&branches, mode)
                }
                _ => parallel_amplitudes(channels, mode),
            },
        }
    }
}

/// Sequence of two emitter species, e.g. `ABA`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomPattern {
    sequence: String,
    pub atom_a: Emitter,
    pub atom_b: Emitter,
}

impl AtomPattern {
    pub fn new(
        sequence: impl Into<String>,
        atom_a: Emitter,
        atom_b: Emitter,
    ) -> Result<Self, ClusterError> {
        let sequence = sequence.into();
        if sequence.is_empty() {
            return Err(ClusterError::EmptyPattern);
        }
        if let Some((position, ch)) = sequence
            .chars()
            .enumerate()
            .find(|(_, ch)| !matches!(ch, 'A' | 'B'))
        {
            return Err(ClusterError::InvalidPatternChar { ch, position });
        }
        Ok(Self {
            sequence,
            atom_a,
            atom_b,
        })
    }

    pub fn sequence(&self) -> &str {
        &self.sequence
    }

    pub fn sites(&self) -> Vec<CavitySite> {
        self.sequence
            .chars()
            .map(|ch| CavitySite::with_emitter(if ch == 'A' { self.atom_a } else { self.atom_b }))
            .collect()
    }
}

/// `n` cavities at the lead frequency, each holding the same emitter.
pub fn build_identical_chain(
    n: usize,
    emitter: Emitter,
    params: LatticeParams,
) -> Result<ClusterSpec, ClusterError> {
    if n == 0 {
        return Err(ClusterError::EmptyChain);
    }
    Ok(ClusterSpec::serial(
        params,
        vec![CavitySite::with_emitter(emitter); n],
    ))
}

pub fn build_pattern_chain(pattern: &AtomPattern, params: LatticeParams) -> ClusterSpec {
    ClusterSpec::serial(params, pattern.sites())
}

/// Two-arm ring: the upper arm is channel 0, the lower arm channel 1.
pub fn build_ring(
    upper: Vec<CavitySite>,
    lower: Vec<CavitySite>,
    params: LatticeParams,
) -> Result<ClusterSpec, ClusterError> {
    if upper.is_empty() {
        return Err(ClusterError::EmptyArm("upper"));
    }
    if lower.is_empty() {
        return Err(ClusterError::EmptyArm("lower"));
    }
    Ok(ClusterSpec::parallel(params, vec![upper, lower]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    /// Reported but does not invalidate the cluster.
    Notice,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Document-style location, e.g. `channels[1][2].emitter.g`.
    pub path: String,
    pub message: String,
    pub severity: Severity,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
    }

    fn push(&mut self, path: impl Into<String>, message: impl Into<String>, severity: Severity) {
        self.violations.push(Violation {
            path: path.into(),
            message: message.into(),
            severity,
        });
    }
}

pub fn validate(cluster: &ClusterSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let params = cluster.params;
    if !params.omega.is_finite() {
        report.push("omega", "omega must be finite", Severity::Error);
    }
    if !(params.hopping > 0.0 && params.hopping.is_finite()) {
        report.push("hopping", "hopping must be > 0", Severity::Error);
    }
    match &cluster.topology {
        Topology::IdenticalParallel { copies, .. } if *copies < 1 => {
            report.push("copies", "copies must be ≥ 1", Severity::Error);
        }
        Topology::Parallel { channels } if channels.is_empty() => {
            report.push(
                "channels",
                "at least one channel is required",
                Severity::Error,
            );
        }
        _ => {}
    }
    for (i, channel) in cluster.channels().iter().enumerate() {
        if channel.is_empty() {
            report.push(
                format!("channels[{i}]"),
                "channel must contain at least one site",
                Severity::Error,
            );
        }
        for (j, site) in channel.iter().enumerate() {
            if let Some(eps) = site.epsilon {
                if !eps.is_finite() {
                    report.push(
                        format!("channels[{i}][{j}].epsilon"),
                        "epsilon must be finite",
                        Severity::Error,
                    );
                } else if eps.im != 0.0 {
                    report.push(
                        format!("channels[{i}][{j}].epsilon"),
                        "complex site energy: cluster is non-Hermitian, flux checks skipped",
                        Severity::Notice,
                    );
                }
            }
            if let Some(e) = site.emitter {
                if !e.transition_frequency.is_finite() {
                    report.push(
                        format!("channels[{i}][{j}].emitter.omega0"),
                        "omega0 must be finite",
                        Severity::Error,
                    );
                }
                if !(e.coupling >= 0.0 && e.coupling.is_finite()) {
                    report.push(
                        format!("channels[{i}][{j}].emitter.g"),
                        "coupling must be ≥ 0",
                        Severity::Error,
                    );
                }
            }
        }
    }
    report
}
