//! JSON cluster documents.
//!
//! ```json
//! {
//!   "omega": 5.0,
//!   "hopping": 1.0,
//!   "topology": { "type": "identical_parallel" },
//!   "channels": [[{ "emitter": { "omega0": 2.0, "g": 1.0 } }, { "epsilon": 4.5 }]],
//!   "copies": 30
//! }
//! ```
//!
//! Unknown keys are rejected at every level.

use std::fs;
use std::path::Path;

use crw_core::{
    validate, CavitySite, ClusterSpec, Complex64, Emitter, LatticeParams, Severity, Topology,
    Violation,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub omega: f64,
    #[serde(default = "unit_hopping")]
    pub hopping: f64,
    pub topology: TopologyDoc,
    pub channels: Vec<Vec<SiteDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<i64>,
}

fn unit_hopping() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDoc {
    #[serde(rename = "type")]
    pub kind: TopologyKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    Serial,
    Parallel,
    IdenticalParallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emitter: Option<EmitterDoc>,
}

/// A real site energy, or `[re, im]` for a complex one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsilonDoc {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmitterDoc {
    pub omega0: f64,
    pub g: f64,
}

impl From<&CavitySite> for SiteDoc {
    fn from(site: &CavitySite) -> Self {
        SiteDoc {
            epsilon: site.epsilon.map(|e| {
                if e.im == 0.0 {
                    EpsilonDoc::Real(e.re)
                } else {
                    EpsilonDoc::Complex([e.re, e.im])
                }
            }),
            emitter: site.emitter.map(|e| EmitterDoc {
                omega0: e.transition_frequency,
                g: e.coupling,
            }),
        }
    }
}

impl From<&SiteDoc> for CavitySite {
    fn from(doc: &SiteDoc) -> Self {
        CavitySite {
            epsilon: doc.epsilon.map(|e| match e {
                EpsilonDoc::Real(re) => Complex64::new(re, 0.0),
                EpsilonDoc::Complex([re, im]) => Complex64::new(re, im),
            }),
            emitter: doc.emitter.map(|e| Emitter::new(e.omega0, e.g)),
        }
    }
}

impl ConfigDocument {
    pub fn from_cluster(cluster: &ClusterSpec) -> Self {
        let row = |ch: &[CavitySite]| ch.iter().map(SiteDoc::from).collect::<Vec<_>>();
        let (kind, copies) = match &cluster.topology {
            Topology::Serial { .. } => (TopologyKind::Serial, None),
            Topology::Parallel { .. } => (TopologyKind::Parallel, None),
            Topology::IdenticalParallel { copies, .. } => {
                (TopologyKind::IdenticalParallel, Some(*copies as i64))
            }
        };
        ConfigDocument {
            omega: cluster.params.omega,
            hopping: cluster.params.hopping,
            topology: TopologyDoc { kind },
            channels: cluster.channels().into_iter().map(row).collect(),
            copies,
        }
    }

    /// Structural checks, then the cluster-level validation.
    pub fn to_cluster(&self) -> Result<ClusterSpec, CliError> {
        let invalid = |path: &str, message: &str| CliError::Validation {
            violations: vec![Violation {
                path: path.to_string(),
                message: message.to_string(),
                severity: Severity::Error,
            }],
        };
        let params = LatticeParams {
            omega: self.omega,
            hopping: self.hopping,
        };
        let channels: Vec<Vec<CavitySite>> = self
            .channels
            .iter()
            .map(|ch| ch.iter().map(CavitySite::from).collect())
            .collect();
        let single = |channels: Vec<Vec<CavitySite>>| {
            if channels.len() == 1 {
                Ok(channels.into_iter().next().unwrap_or_default())
            } else {
                Err(invalid("channels", "exactly one channel is required"))
            }
        };
        let cluster = match self.topology.kind {
            TopologyKind::Serial | TopologyKind::Parallel if self.copies.is_some() => {
                return Err(invalid(
                    "copies",
                    "copies is only allowed with identical_parallel",
                ));
            }
            TopologyKind::Serial => ClusterSpec::serial(params, single(channels)?),
            TopologyKind::Parallel => ClusterSpec::parallel(params, channels),
            TopologyKind::IdenticalParallel => {
                let copies = self.copies.ok_or_else(|| {
                    invalid("copies", "copies is required for identical_parallel")
                })?;
                ClusterSpec::identical_parallel(params, copies.max(0) as usize, single(channels)?)
            }
        };
        let report = validate(&cluster);
        if !report.is_valid() {
            return Err(CliError::Validation {
                violations: report.errors().cloned().collect(),
            });
        }
        Ok(cluster)
    }
}

pub fn parse_config(text: &str) -> Result<ClusterSpec, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ConfigDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Parse {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    doc.to_cluster()
}

pub fn load_config(path: &Path) -> Result<ClusterSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn to_json(cluster: &ClusterSpec) -> String {
    serde_json::to_string_pretty(&ConfigDocument::from_cluster(cluster))
        .expect("config documents always serialize")
}
