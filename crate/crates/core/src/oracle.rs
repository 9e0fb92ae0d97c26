//! Brute-force reference solution of the full tight-binding network.
//!
//! Every cavity and every emitter gets its own unknown. The leads enter only
//! through the plane-wave ansatz at the two junction sites, so no lead
//! truncation is involved: the unknowns are `r`, `t`, all `ψ_i(j)` and all
//! `φ`, with one equation per site.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cluster::ClusterSpec;
use crate::error::{OracleError, ScatteringError};
use crate::linalg::{self, DenseMatrix};
use crate::scattering::{effective_alpha, ModeContext, ScatteringResult};

/// How emitter amplitudes enter the linear system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmitterTreatment {
    /// One unknown `φ` per coupled emitter.
    #[default]
    Explicit,
    /// Emitters folded into the cavity energy `g²/(E_k - ω₀)`.
    Eliminated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSolution {
    pub r: Complex64,
    /// Right-lead amplitude with the right junction at site `N`.
    pub t: Complex64,
    pub t_n: Complex64,
    /// `ψ_i(j)` keyed by (expanded channel index, site index).
    pub site_amplitudes: BTreeMap<(usize, usize), Complex64>,
    /// `φ` keyed like `site_amplitudes`; empty for the eliminated path.
    pub emitter_amplitudes: BTreeMap<(usize, usize), Complex64>,
    /// Max-norm of `A x - b` for the assembled (unscaled) system.
    pub residual: f64,
    /// Max-norm of `A` and `b` together.
    pub system_norm: f64,
    pub hermitian: bool,
}

impl NetworkSolution {
    pub fn result(&self) -> ScatteringResult {
        ScatteringResult::new(self.r, self.t_n, self.hermitian)
    }

    /// `(Σ ψ_i(0), Σ ψ_i(n_i - 1))`.
    pub fn junction_sums(&self) -> (Complex64, Complex64) {
        let mut last: BTreeMap<usize, (usize, Complex64)> = BTreeMap::new();
        let mut left = Complex64::new(0.0, 0.0);
        for (&(channel, site), &psi) in &self.site_amplitudes {
            if site == 0 {
                left += psi;
            }
            let entry = last.entry(channel).or_insert((site, psi));
            if site >= entry.0 {
                *entry = (site, psi);
            }
        }
        let right = last.values().map(|&(_, psi)| psi).sum();
        (left, right)
    }
}

/// Solves the network with explicit emitter amplitudes.
pub fn solve_network(
    cluster: &ClusterSpec,
    mode: &ModeContext,
) -> Result<NetworkSolution, OracleError> {
    solve_network_with(cluster, mode, EmitterTreatment::Explicit)
}

pub fn solve_network_with(
    cluster: &ClusterSpec,
    mode: &ModeContext,
    treatment: EmitterTreatment,
) -> Result<NetworkSolution, OracleError> {
    let channels = cluster.expanded_channels();
    if channels.is_empty() {
        return Err(ScatteringError::NoChannels.into());
    }
    if channels.iter().any(|c| c.is_empty()) {
        return Err(ScatteringError::EmptyChannel.into());
    }
    let params = cluster.params;
    let hop = params.hopping;
    let energy = mode.energy();
    let k = mode.k();
    let total = cluster.total_sites();
    let phase = |x: f64| Complex64::from_polar(1.0, x);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    const R: usize = 0;
    const T: usize = 1;
    let mut site_index = BTreeMap::new();
    let mut next = 2;
    for (i, ch) in channels.iter().enumerate() {
        for j in 0..ch.len() {
            site_index.insert((i, j), next);
            next += 1;
        }
    }
    let mut emitter_index = BTreeMap::new();
    if treatment == EmitterTreatment::Explicit {
        for (i, ch) in channels.iter().enumerate() {
            for (j, site) in ch.iter().enumerate() {
                if site.emitter.is_some_and(|e| e.is_coupled()) {
                    emitter_index.insert((i, j), next);
                    next += 1;
                }
            }
        }
    }
    let n = next;
    let mut a = DenseMatrix::zeros(n);
    let mut b = vec![zero; n];

    // Lead values: ψ(-1) = e^{-ik} + r e^{ik}, ψ(-2) = e^{-2ik} + r e^{2ik},
    // ψ(N) = t e^{ikN}, ψ(N+1) = t e^{ik(N+1)}.
    let lead_alpha = Complex64::new((params.omega - energy) / hop, 0.0);
    let nf = total as f64;

    // left junction: α_J ψ(-1) - ψ(-2) - Σ ψ_i(0) = 0
    a.add(0, R, lead_alpha * phase(k) - phase(2.0 * k));
    b[0] -= lead_alpha * phase(-k) - phase(-2.0 * k);
    // right junction: α_J ψ(N) - ψ(N+1) - Σ ψ_i(n_i-1) = 0
    a.add(1, T, lead_alpha * phase(k * nf) - phase(k * (nf + 1.0)));
    for (i, ch) in channels.iter().enumerate() {
        a.add(0, site_index[&(i, 0)], -one);
        a.add(1, site_index[&(i, ch.len() - 1)], -one);
    }

    for (i, ch) in channels.iter().enumerate() {
        let last = ch.len() - 1;
        for (j, site) in ch.iter().enumerate() {
            let row = site_index[&(i, j)];
            let diag = match treatment {
                EmitterTreatment::Explicit => (site.site_energy(&params) - energy) / hop,
                EmitterTreatment::Eliminated => {
                    let term = effective_alpha(site, mode);
                    if term.pole {
                        return Err(ScatteringError::ResonantPole { site: j }.into());
                    }
                    term.alpha
                }
            };
            a.add(row, row, diag);
            if j == 0 {
                a.add(row, R, -phase(k));
                b[row] += phase(-k);
            } else {
                a.add(row, site_index[&(i, j - 1)], -one);
            }
            if j == last {
                a.add(row, T, -phase(k * nf));
            } else {
                a.add(row, site_index[&(i, j + 1)], -one);
            }
            if let (Some(&col), Some(e)) = (emitter_index.get(&(i, j)), site.emitter) {
                // cavity: (ε - E)ψ - Jψ(j-1) - Jψ(j+1) + gφ = 0
                // emitter: (E - ω₀)φ - gψ = 0
                a.add(row, col, Complex64::new(e.coupling / hop, 0.0));
                a.add(
                    col,
                    col,
                    Complex64::new((energy - e.transition_frequency) / hop, 0.0),
                );
                a.add(col, row, Complex64::new(-e.coupling / hop, 0.0));
            }
        }
    }

    let x = linalg::solve(&a, &b).map_err(|s| OracleError::SingularSystem {
        condition: s.condition,
    })?;
    let ax = a.mul_vec(&x);
    let residual = ax
        .iter()
        .zip(&b)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);
    let system_norm = a
        .max_norm()
        .max(b.iter().map(|z| z.norm()).fold(0.0, f64::max));

    let r = x[R];
    let t = x[T];
    Ok(NetworkSolution {
        r,
        t,
        t_n: t * phase(k * (nf - 1.0)),
        site_amplitudes: site_index
            .iter()
            .map(|(&key, &col)| (key, x[col]))
            .collect(),
        emitter_amplitudes: emitter_index
            .iter()
            .map(|(&key, &col)| (key, x[col]))
            .collect(),
        residual,
        system_norm,
        hermitian: cluster.is_hermitian(),
    })
}
