//! Wavenumber sweeps, perfect-reflection windows and oracle campaigns.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cluster::ClusterSpec;
use crate::error::{OracleError, ScatteringError, SweepError};
use crate::oracle::solve_network;
use crate::scattering::{ModeContext, ScatteringResult};

/// Resonance window used by sweeps: rows this close to a pole take the
/// analytic limit.
pub const SWEEP_POLE_TOLERANCE: f64 = 1e-9;

/// Default threshold for perfect-reflection windows.
pub const DEFAULT_WINDOW_THRESHOLD: f64 = 1.0 - 1e-6;

/// Pole neighbourhood skipped by the oracle comparison.
const VERIFY_POLE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Oracle => "oracle",
        }
    }
}

/// Closed form where it is defined, brute-force solve where a channel is
/// degenerate.
pub fn evaluate_point(
    cluster: &ClusterSpec,
    mode: &ModeContext,
) -> Result<(ScatteringResult, Method), OracleError> {
    match cluster.closed_form(mode) {
        Ok(res) => Ok((res, Method::ClosedForm)),
        Err(ScatteringError::DegenerateChannel { .. }) => {
            let sol = solve_network(cluster, mode)?;
            Ok((sol.result(), Method::Oracle))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub cluster: ClusterSpec,
    pub k_min: f64,
    pub k_max: f64,
    pub points: usize,
    /// (channel, site) of the emitter whose detuning is reported.
    pub reference_emitter: Option<(usize, usize)>,
}

impl SweepSpec {
    pub fn new(cluster: ClusterSpec, k_min: f64, k_max: f64, points: usize) -> Self {
        Self {
            cluster,
            k_min,
            k_max,
            points,
            reference_emitter: None,
        }
    }

    pub fn with_reference(mut self, reference: Option<(usize, usize)>) -> Self {
        self.reference_emitter = reference;
        self
    }

    pub fn check(&self) -> Result<(), SweepError> {
        if !(self.k_min > 0.0 && self.k_min < self.k_max && self.k_max < PI) {
            return Err(SweepError::InvalidRange {
                k_min: self.k_min,
                k_max: self.k_max,
            });
        }
        if self.points < 2 {
            return Err(SweepError::TooFewPoints(self.points));
        }
        if let Some((channel, site)) = self.reference_emitter {
            if self.cluster.emitter_at(channel, site).is_none() {
                return Err(SweepError::MissingReference { channel, site });
            }
        }
        Ok(())
    }

    /// Uniform grid with both endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let step = (self.k_max - self.k_min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.k_max
                } else {
                    self.k_min + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub k: f64,
    pub energy: f64,
    pub detuning: Option<f64>,
    pub reflectance: f64,
    pub transmittance: f64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    pub rows: Vec<SpectrumRow>,
    pub hermitian: bool,
}

impl SpectrumRecord {
    pub fn reflectances(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.reflectance).collect()
    }

    /// Fraction of rows with `R > threshold`.
    pub fn fraction_above(&self, threshold: f64) -> f64 {
        let n = self
            .rows
            .iter()
            .filter(|r| r.reflectance > threshold)
            .count();
        n as f64 / self.rows.len() as f64
    }
}

/// Evaluates the cluster on the sweep grid. Rows come back in ascending `k`;
/// the first failing row (lowest `k`) aborts the sweep.
pub fn sweep_k(spec: &SweepSpec) -> Result<SpectrumRecord, SweepError> {
    spec.check()?;
    let cluster = &spec.cluster;
    let reference = spec
        .reference_emitter
        .and_then(|(c, s)| cluster.emitter_at(c, s));
    let rows: Vec<Result<SpectrumRow, SweepError>> = spec
        .grid()
        .into_par_iter()
        .map(|k| {
            let point = |source: OracleError| SweepError::Point { k, source };
            let mode = cluster
                .mode(k)
                .map_err(|e| point(e.into()))?
                .with_pole_tolerance(SWEEP_POLE_TOLERANCE);
            let (res, method) = evaluate_point(cluster, &mode).map_err(point)?;
            Ok(SpectrumRow {
                k,
                energy: mode.energy(),
                detuning: reference.map(|e| mode.energy() - e.transition_frequency),
                reflectance: res.reflectance,
                transmittance: res.transmittance,
                method,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(SpectrumRecord {
        rows,
        hermitian: cluster.is_hermitian(),
    })
}

/// A maximal run of rows with `R >= threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionWindow {
    pub k_lo: f64,
    pub k_hi: f64,
    pub max_reflectance: f64,
    /// `dR/dk` at the lower and upper edge.
    pub edge_slopes: (f64, f64),
}

impl ReflectionWindow {
    pub fn contains(&self, k: f64) -> bool {
        self.k_lo <= k && k <= self.k_hi
    }

    pub fn width(&self) -> f64 {
        self.k_hi - self.k_lo
    }
}

/// Edges are interpolated linearly between the last row outside and the
/// first row inside the run. A run touching the end of the record stops at
/// that row, with a one-sided slope.
pub fn find_windows(
    record: &SpectrumRecord,
    threshold: f64,
) -> Result<Vec<ReflectionWindow>, SweepError> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(SweepError::InvalidThreshold(threshold));
    }
    let rows = &record.rows;
    let n = rows.len();
    let inside = |i: usize| rows[i].reflectance >= threshold;
    let slope =
        |i: usize, j: usize| (rows[j].reflectance - rows[i].reflectance) / (rows[j].k - rows[i].k);
    let crossing = |i: usize, j: usize| {
        let (ri, rj) = (rows[i].reflectance, rows[j].reflectance);
        rows[i].k + (threshold - ri) / (rj - ri) * (rows[j].k - rows[i].k)
    };

    let mut windows = Vec::new();
    let mut i = 0;
    while i < n {
        if !inside(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < n && inside(i + 1) {
            i += 1;
        }
        let end = i;
        let (k_lo, slope_lo) = if start > 0 {
            (crossing(start - 1, start), slope(start - 1, start))
        } else if n > 1 {
            (rows[0].k, slope(0, 1))
        } else {
            (rows[0].k, 0.0)
        };
        let (k_hi, slope_hi) = if end + 1 < n {
            (crossing(end, end + 1), slope(end, end + 1))
        } else if n > 1 {
            (rows[n - 1].k, slope(n - 2, n - 1))
        } else {
            (rows[0].k, 0.0)
        };
        let max_reflectance = rows[start..=end]
            .iter()
            .map(|r| r.reflectance)
            .fold(f64::NEG_INFINITY, f64::max);
        windows.push(ReflectionWindow {
            k_lo,
            k_hi,
            max_reflectance,
            edge_slopes: (slope_lo, slope_hi),
        });
        i += 1;
    }
    Ok(windows)
}

/// Maximum closed-form vs oracle deviation over a sample of wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    pub samples: usize,
    pub seed: u64,
    /// Points actually compared (draws at poles or degeneracies are retried,
    /// and dropped after repeated failure).
    pub compared: usize,
    pub max_abs_dr: f64,
    pub max_abs_dt: f64,
    pub worst_k: f64,
}

impl VerificationReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.compared > 0 && self.max_abs_dr < tolerance && self.max_abs_dt < tolerance
    }
}

fn near_pole(cluster: &ClusterSpec, mode: &ModeContext) -> bool {
    let scale = mode.energy().abs().max(1.0);
    cluster.channels().iter().any(|ch| {
        ch.iter().filter_map(|s| s.emitter).any(|e| {
            e.is_coupled()
                && (mode.energy() - e.transition_frequency).abs() < VERIFY_POLE_MARGIN * scale
        })
    })
}

const MAX_DRAWS: usize = 32;

/// Draws one `k` per stratum `((i + u)/samples) π` with seeded jitter `u`,
/// redrawing inside pole neighbourhoods, and compares the closed form with
/// the oracle.
pub fn verify_against_oracle(
    cluster: &ClusterSpec,
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport {
        samples,
        seed,
        compared: 0,
        max_abs_dr: 0.0,
        max_abs_dt: 0.0,
        worst_k: f64::NAN,
    };
    let mut worst = -1.0;
    for i in 0..samples {
        for _ in 0..MAX_DRAWS {
            let u: f64 = rng.gen_range(0.0..1.0);
            let k = PI * (i as f64 + u) / samples as f64;
            let Ok(mode) = cluster.mode(k) else { continue };
            if near_pole(cluster, &mode) {
                continue;
            }
            let (Ok(closed), Ok(oracle)) =
                (cluster.closed_form(&mode), solve_network(cluster, &mode))
            else {
                continue;
            };
            let dr = (closed.r - oracle.r).norm();
            let dt = (closed.t_n - oracle.t_n).norm();
            report.compared += 1;
            report.max_abs_dr = report.max_abs_dr.max(dr);
            report.max_abs_dt = report.max_abs_dt.max(dt);
            if dr.max(dt) > worst {
                worst = dr.max(dt);
                report.worst_k = k;
            }
            break;
        }
    }
    report
}
