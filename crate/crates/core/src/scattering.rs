//! Closed-form single-photon scattering amplitudes for tight-binding clusters.
//!
//! Every formula is evaluated in hopping units: site energies and the photon
//! energy are divided by `J` before they enter a transfer matrix, so the
//! amplitudes depend only on the dimensionless ratios.
//!
//! Lead convention: on the left lead `ψ(j) = e^{ikj} + r e^{-ikj}` for
//! `j <= -1`, on the right lead `ψ(j) = t e^{ikj}` for `j >= N`. The junction
//! sites at `-1` and `N` carry the lead energy `ω`, which gives
//! `Σ ψ_i(0) = 1 + r` and `Σ ψ_i(n_i - 1) = t_N` with `t_N = t e^{ik(N-1)}`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use crate::error::ScatteringError;

/// Relative tolerance on `|E_k - ω₀|` below which an emitter is treated as
/// exactly resonant.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Relative tolerance on `|a_i|` against the channel matrix norm below which
/// the parallel aggregates are not formed.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

/// Smallest admissible `|1 - 2γe^{ik}|` for the ring amplitudes.
pub const GAMMA_POLE_TOLERANCE: f64 = 1e-14;

/// Flux conservation tolerance for Hermitian clusters.
pub const FLUX_TOLERANCE: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Global waveguide parameters: cavity mode frequency `ω` and hopping `J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeParams {
    pub omega: f64,
    pub hopping: f64,
}

impl LatticeParams {
    pub fn new(omega: f64, hopping: f64) -> Result<Self, ScatteringError> {
        if hopping.is_nan() || hopping <= 0.0 || !hopping.is_finite() {
            return Err(ScatteringError::InvalidHopping(hopping));
        }
        if !omega.is_finite() {
            return Err(ScatteringError::NonFinite);
        }
        Ok(Self { omega, hopping })
    }

    /// Unit hopping, the setting used by every figure.
    pub fn unit(omega: f64) -> Self {
        Self {
            omega,
            hopping: 1.0,
        }
    }

    /// Band energy `E_k = ω - 2J cos k`.
    pub fn energy(&self, k: f64) -> f64 {
        self.omega - 2.0 * self.hopping * k.cos()
    }
}

/// A propagating lead mode: wavenumber, its band energy and the lattice it
/// lives on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeContext {
    k: f64,
    energy: f64,
    params: LatticeParams,
    pole_tolerance: f64,
}

impl ModeContext {
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn params(&self) -> LatticeParams {
        self.params
    }

    pub fn pole_tolerance(&self) -> f64 {
        self.pole_tolerance
    }

    /// Same mode with a wider (or narrower) resonance detection window.
    pub fn with_pole_tolerance(mut self, tolerance: f64) -> Self {
        self.pole_tolerance = tolerance;
        self
    }

    pub fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.k)
    }

    /// Lead site energy in hopping units, `(ω - E_k)/J = 2 cos k`.
    pub fn lead_alpha(&self) -> f64 {
        (self.params.omega - self.energy) / self.params.hopping
    }
}

/// Resolves wavenumber `k` on the lead band.
///
/// Only right-movers strictly inside the band are accepted; at `k = 0` and
/// `k = π` the group velocity vanishes and every amplitude formula divides by
/// `sin k = 0`.
pub fn dispersion(k: f64, params: LatticeParams) -> Result<ModeContext, ScatteringError> {
    if !(k > 0.0 && k < PI) {
        return Err(ScatteringError::BandEdge { k });
    }
    Ok(ModeContext {
        k,
        energy: params.energy(k),
        params,
        pole_tolerance: POLE_TOLERANCE,
    })
}

/// Two-level emitter inside a cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Emitter {
    pub transition_frequency: f64,
    pub coupling: f64,
}

impl Emitter {
    pub fn new(transition_frequency: f64, coupling: f64) -> Self {
        Self {
            transition_frequency,
            coupling,
        }
    }

    /// An emitter with zero coupling never exchanges the excitation.
    pub fn is_coupled(&self) -> bool {
        self.coupling != 0.0
    }
}

/// One resonator of a channel.
///
/// `epsilon = None` means the bare cavity frequency of the lattice (`ω`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CavitySite {
    pub epsilon: Option<Complex64>,
    pub emitter: Option<Emitter>,
}

impl CavitySite {
    pub fn bare() -> Self {
        Self::default()
    }

    pub fn with_emitter(emitter: Emitter) -> Self {
        Self {
            epsilon: None,
            emitter: Some(emitter),
        }
    }

    pub fn with_epsilon(epsilon: impl Into<Complex64>) -> Self {
        Self {
            epsilon: Some(epsilon.into()),
            emitter: None,
        }
    }

    pub fn site_energy(&self, params: &LatticeParams) -> Complex64 {
        self.epsilon.unwrap_or(Complex64::new(params.omega, 0.0))
    }

    pub fn is_hermitian(&self) -> bool {
        self.epsilon.is_none_or(|e| e.im == 0.0)
    }

    /// True when the site is indistinguishable from a lead site.
    pub fn is_lead_like(&self) -> bool {
        self.epsilon.is_none() && !self.emitter.is_some_and(|e| e.is_coupled())
    }
}

/// Effective site energy of a cavity after the emitter amplitude has been
/// eliminated from the single-excitation equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaTerm {
    pub alpha: Complex64,
    /// `Δ_k = E_k - ω₀`; zero when there is no emitter.
    pub detuning: f64,
    pub pole: bool,
}

/// `α = (ε - E_k)/J + g²/(J (E_k - ω₀))`.
///
/// When the emitter sits on resonance the second term diverges; the pole is
/// flagged and `alpha` then carries only the finite part.
pub fn effective_alpha(site: &CavitySite, mode: &ModeContext) -> AlphaTerm {
    let params = mode.params;
    let base = (site.site_energy(&params) - mode.energy) / params.hopping;
    match site.emitter {
        Some(emitter) if emitter.is_coupled() => {
            let detuning = mode.energy - emitter.transition_frequency;
            let pole = detuning.abs() < mode.pole_tolerance * mode.energy.abs().max(1.0);
            let alpha = if pole {
                base
            } else {
                base + emitter.coupling * emitter.coupling / (params.hopping * detuning)
            };
            AlphaTerm {
                alpha,
                detuning,
                pole,
            }
        }
        Some(emitter) => AlphaTerm {
            alpha: base,
            detuning: mode.energy - emitter.transition_frequency,
            pole: false,
        },
        None => AlphaTerm {
            alpha: base,
            detuning: 0.0,
            pole: false,
        },
    }
}

/// 2×2 complex transfer matrix `[[a, b], [c, d]]` acting on
/// `(ψ(j), ψ(j-1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl TransferMatrix {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Determinant of a product of elementary steps, which is exactly 1.
    ///
    /// `ad - bc` evaluated from the entries keeps no significant digits once
    /// `|a d|` passes ~1e16, so formulas use this instead. Falls back to the
    /// entries for matrices that are visibly not such a product.
    fn unit_determinant(&self) -> Complex64 {
        let det = self.determinant();
        if (det - 1.0).norm() <= 1e-8 * self.norm().powi(2).max(1.0) {
            Complex64::new(1.0, 0.0)
        } else {
            det
        }
    }

    /// Largest entry modulus.
    pub fn norm(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn apply(&self, upper: Complex64, lower: Complex64) -> (Complex64, Complex64) {
        (
            self.a * upper + self.b * lower,
            self.c * upper + self.d * lower,
        )
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Single-site step `[[α, -1], [1, 0]]`.
pub fn elementary_matrix(alpha: Complex64) -> Result<TransferMatrix, ScatteringError> {
    if !alpha.is_finite() {
        return Err(ScatteringError::NonFinite);
    }
    Ok(TransferMatrix::new(
        alpha,
        Complex64::new(-1.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ))
}

/// Channel matrix `M = T(α_{n-1}) ⋯ T(α_0)` mapping `(ψ(0), ψ(-1))` to
/// `(ψ(n), ψ(n-1))`, built by the entry recursion rather than by 2×2 products.
pub fn channel_matrix(
    channel: &[CavitySite],
    mode: &ModeContext,
) -> Result<TransferMatrix, ScatteringError> {
    let alphas = channel_alphas(channel, mode)?;
    if let Some(site) = alphas.iter().position(|term| term.pole) {
        return Err(ScatteringError::ResonantPole { site });
    }
    recursion(alphas.iter().map(|term| term.alpha))
}

fn channel_alphas(
    channel: &[CavitySite],
    mode: &ModeContext,
) -> Result<Vec<AlphaTerm>, ScatteringError> {
    if channel.is_empty() {
        return Err(ScatteringError::EmptyChannel);
    }
    Ok(channel.iter().map(|s| effective_alpha(s, mode)).collect())
}

fn recursion(
    mut alphas: impl Iterator<Item = Complex64>,
) -> Result<TransferMatrix, ScatteringError> {
    let first = alphas.next().ok_or(ScatteringError::EmptyChannel)?;
    let mut m = elementary_matrix(first)?;
    for alpha in alphas {
        if !alpha.is_finite() {
            return Err(ScatteringError::NonFinite);
        }
        m = TransferMatrix {
            a: alpha * m.a - m.c,
            b: alpha * m.b - m.d,
            c: m.a,
            d: m.b,
        };
    }
    Ok(m)
}

/// How a channel couples its two ends.
///
/// A resonant emitter pins the photon amplitude of its cavity to zero, which
/// cuts the channel. What survives are two stubs: the segment before the
/// first resonant site, hanging off the left junction, and the segment after
/// the last one, hanging off the right junction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelTransfer {
    Open(TransferMatrix),
    /// `head` is the first row `(v₁, v₂)` of the matrix of the leading
    /// segment, so `v₁ ψ(0) + v₂ ψ(-1) = 0`. `tail` is the first column
    /// `(u₁, u₂)` of the matrix of the trailing segment, so
    /// `ψ(n) = u₁ x`, `ψ(n-1) = u₂ x`.
    Blocked {
        head: (Complex64, Complex64),
        tail: (Complex64, Complex64),
    },
}

/// Channel transfer with resonant emitters replaced by their exact limit.
pub fn channel_transfer(
    channel: &[CavitySite],
    mode: &ModeContext,
) -> Result<ChannelTransfer, ScatteringError> {
    let alphas = channel_alphas(channel, mode)?;
    let first = alphas.iter().position(|t| t.pole);
    let Some(first) = first else {
        return recursion(alphas.iter().map(|t| t.alpha)).map(ChannelTransfer::Open);
    };
    let last = alphas.iter().rposition(|t| t.pole).unwrap_or(first);
    let head = if first == 0 {
        TransferMatrix::identity()
    } else {
        recursion(alphas[..first].iter().map(|t| t.alpha))?
    };
    let tail = if last + 1 == alphas.len() {
        TransferMatrix::identity()
    } else {
        recursion(alphas[last + 1..].iter().map(|t| t.alpha))?
    };
    Ok(ChannelTransfer::Blocked {
        head: (head.a, head.b),
        tail: (tail.a, tail.c),
    })
}

/// Reflection and transmission amplitudes of a two-terminal cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub r: Complex64,
    /// `t_N = t e^{ik(N-1)}`, the sum of the channel amplitudes next to the
    /// right junction.
    pub t_n: Complex64,
    pub reflectance: f64,
    pub transmittance: f64,
    pub hermitian: bool,
}

impl ScatteringResult {
    pub fn new(r: Complex64, t_n: Complex64, hermitian: bool) -> Self {
        Self {
            r,
            t_n,
            reflectance: r.norm_sqr(),
            transmittance: t_n.norm_sqr(),
            hermitian,
        }
    }

    /// `|R + T - 1|`.
    pub fn flux_defect(&self) -> f64 {
        (self.reflectance + self.transmittance - 1.0).abs()
    }

    pub fn conserves_flux(&self) -> bool {
        !self.hermitian || self.flux_defect() < FLUX_TOLERANCE
    }

    fn checked(self) -> Result<Self, ScatteringError> {
        if self.r.is_finite() && self.t_n.is_finite() {
            Ok(self)
        } else {
            Err(ScatteringError::NonFinite)
        }
    }
}

fn channels_hermitian<'a>(channels: impl IntoIterator<Item = &'a [CavitySite]>) -> bool {
    channels
        .into_iter()
        .all(|ch| ch.iter().all(CavitySite::is_hermitian))
}

/// Serial chain between the two leads.
pub fn serial_amplitudes(
    channel: &[CavitySite],
    mode: &ModeContext,
) -> Result<ScatteringResult, ScatteringError> {
    let hermitian = channels_hermitian([channel]);
    match channel_transfer(channel, mode)? {
        ChannelTransfer::Open(m) => serial_from_matrix(&m, mode, hermitian),
        ChannelTransfer::Blocked { head, .. } => Ok(ScatteringResult::new(
            blocked_reflection(head, 1.0, mode)?,
            Complex64::new(0.0, 0.0),
            hermitian,
        )),
    }
}

/// Serial amplitudes from an already accumulated channel matrix.
pub fn serial_from_matrix(
    m: &TransferMatrix,
    mode: &ModeContext,
    hermitian: bool,
) -> Result<ScatteringResult, ScatteringError> {
    identical_from_matrix(m, 1.0, mode, hermitian)
}

/// `r` for `copies` identical channels that are all cut by a resonant site.
fn blocked_reflection(
    head: (Complex64, Complex64),
    copies: f64,
    mode: &ModeContext,
) -> Result<Complex64, ScatteringError> {
    let e = mode.phase();
    let (v1, v2) = head;
    let den = v1 + copies * v2 * e;
    let r = -(v1 + copies * v2 * e.conj()) / den;
    if r.is_finite() {
        Ok(r)
    } else {
        Err(ScatteringError::DegenerateChannel { channel: 0 })
    }
}

/// Sums over channels of the junction response coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelAggregates {
    pub p: Complex64,
    pub q: Complex64,
    pub p_prime: Complex64,
    pub q_prime: Complex64,
}

impl ParallelAggregates {
    fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            p: z,
            q: z,
            p_prime: z,
            q_prime: z,
        }
    }

    fn add_open(&mut self, m: &TransferMatrix, weight: f64) {
        let inv = 1.0 / m.a;
        self.p += weight * inv;
        self.q -= weight * m.b * inv;
        self.p_prime += weight * m.c * inv;
        // d - bc/a = det/a = 1/a; the difference itself cancels badly once
        // the entries grow inside evanescent channels
        self.q_prime += weight * inv;
    }

    /// Scale every aggregate, as for `n` identical copies.
    pub fn scaled(&self, n: f64) -> Self {
        Self {
            p: self.p * n,
            q: self.q * n,
            p_prime: self.p_prime * n,
            q_prime: self.q_prime * n,
        }
    }
}

/// `P = Σ 1/a_i`, `Q = -Σ b_i/a_i`, `P' = Σ c_i/a_i`,
/// `Q' = Σ (d_i - b_i c_i / a_i)`.
///
/// A channel cut by a resonant emitter contributes only through its stubs:
/// `Q_i = -v₂/v₁` and `P'_i = u₂/u₁`, while `P_i` and `Q'_i` vanish.
pub fn parallel_aggregates(
    channels: &[Vec<CavitySite>],
    mode: &ModeContext,
) -> Result<ParallelAggregates, ScatteringError> {
    if channels.is_empty() {
        return Err(ScatteringError::NoChannels);
    }
    let mut agg = ParallelAggregates::zero();
    for (index, channel) in channels.iter().enumerate() {
        let transfer = channel_transfer(channel, mode)?;
        add_channel(&mut agg, &transfer, index, 1.0)?;
    }
    Ok(agg)
}

fn add_channel(
    agg: &mut ParallelAggregates,
    transfer: &ChannelTransfer,
    index: usize,
    weight: f64,
) -> Result<(), ScatteringError> {
    match transfer {
        ChannelTransfer::Open(m) => {
            if m.a.norm() < DEGENERACY_TOLERANCE * m.norm() {
                return Err(ScatteringError::DegenerateChannel { channel: index });
            }
            agg.add_open(m, weight);
        }
        ChannelTransfer::Blocked { head, tail } => {
            let (v1, v2) = *head;
            let (u1, u2) = *tail;
            if v1.norm() < DEGENERACY_TOLERANCE * v1.norm().max(v2.norm())
                || u1.norm() < DEGENERACY_TOLERANCE * u1.norm().max(u2.norm())
            {
                return Err(ScatteringError::DegenerateChannel { channel: index });
            }
            agg.q -= weight * v2 / v1;
            agg.p_prime += weight * u2 / u1;
        }
    }
    Ok(())
}

/// Amplitudes from the junction aggregates.
///
/// Written with `Δ = QP' - PQ'` rather than the factored products, which
/// cancel badly when the aggregates are large and nearly equal.
pub fn amplitudes_from_aggregates(
    agg: &ParallelAggregates,
    mode: &ModeContext,
    hermitian: bool,
) -> Result<ScatteringResult, ScatteringError> {
    let e = mode.phase();
    let one = Complex64::new(1.0, 0.0);
    let ParallelAggregates {
        p,
        q,
        p_prime,
        q_prime,
    } = *agg;
    let delta = q * p_prime - p * q_prime;
    let den = one - e * (q + p_prime) + e * e * delta;
    let r = (p_prime * e + q * e.conj() - one - delta) / den;
    let t_n = -2.0 * I * q_prime * mode.k.sin() / den;
    ScatteringResult::new(r, t_n, hermitian).checked()
}

/// General bundle of parallel channels sharing both junctions.
pub fn parallel_amplitudes(
    channels: &[Vec<CavitySite>],
    mode: &ModeContext,
) -> Result<ScatteringResult, ScatteringError> {
    let agg = parallel_aggregates(channels, mode)?;
    let hermitian = channels_hermitian(channels.iter().map(Vec::as_slice));
    amplitudes_from_aggregates(&agg, mode, hermitian)
}

/// Per-branch quantities of a ring of single resonators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingTerm {
    /// `G_j = g_j/(E_k - ω_j)`; zero for an empty cavity, infinite on
    /// resonance.
    pub g_factor: f64,
    /// `ω - E_k + g_j G_j`, in energy units.
    pub denominator: f64,
    pub pole: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingAggregates {
    pub gamma: Complex64,
    pub terms: Vec<RingTerm>,
}

/// `γ = Σ_j J/(ω - E_k + g_j G_j)`; a resonant branch contributes nothing.
pub fn ring_aggregates(branch_emitters: &[Option<Emitter>], mode: &ModeContext) -> RingAggregates {
    let params = mode.params;
    let mut gamma = Complex64::new(0.0, 0.0);
    let terms = branch_emitters
        .iter()
        .map(|emitter| {
            let site = emitter.map_or_else(CavitySite::bare, CavitySite::with_emitter);
            let term = effective_alpha(&site, mode);
            let g_factor = match emitter {
                Some(e) if term.pole => f64::INFINITY.copysign(e.coupling),
                Some(e) if e.is_coupled() => e.coupling / term.detuning,
                _ => 0.0,
            };
            let denominator = if term.pole {
                f64::INFINITY
            } else {
                term.alpha.re * params.hopping
            };
            if !term.pole {
                gamma += 1.0 / term.alpha;
            }
            RingTerm {
                g_factor,
                denominator,
                pole: term.pole,
            }
        })
        .collect();
    RingAggregates { gamma, terms }
}

/// Ring of single-resonator branches between the two junctions.
pub fn ring_amplitudes(
    branch_emitters: &[Option<Emitter>],
    mode: &ModeContext,
) -> Result<ScatteringResult, ScatteringError> {
    if branch_emitters.is_empty() {
        return Err(ScatteringError::NoChannels);
    }
    let gamma = ring_aggregates(branch_emitters, mode).gamma;
    ring_from_gamma(gamma, mode)
}

/// `r = (2γ cos k - 1)/(1 - 2γe^{ik})`, `t_N = -2iγ sin k/(1 - 2γe^{ik})`.
pub fn ring_from_gamma(
    gamma: Complex64,
    mode: &ModeContext,
) -> Result<ScatteringResult, ScatteringError> {
    let e = mode.phase();
    let den = 1.0 - 2.0 * gamma * e;
    if den.norm().is_nan() || den.norm() < GAMMA_POLE_TOLERANCE {
        return Err(ScatteringError::GammaPole);
    }
    let r = (2.0 * gamma * mode.k.cos() - 1.0) / den;
    let t_n = -2.0 * I * gamma * mode.k.sin() / den;
    ScatteringResult::new(r, t_n, gamma.im == 0.0).checked()
}

/// `copies` identical channels in parallel.
pub fn identical_parallel_amplitudes(
    copies: usize,
    channel: &[CavitySite],
    mode: &ModeContext,
) -> Result<ScatteringResult, ScatteringError> {
    if copies == 0 {
        return Err(ScatteringError::NoChannels);
    }
    let hermitian = channels_hermitian([channel]);
    let n0 = copies as f64;
    match channel_transfer(channel, mode)? {
        ChannelTransfer::Open(m) => identical_from_matrix(&m, n0, mode, hermitian),
        ChannelTransfer::Blocked { head, .. } => Ok(ScatteringResult::new(
            blocked_reflection(head, n0, mode)?,
            Complex64::new(0.0, 0.0),
            hermitian,
        )),
    }
}

/// `N₀` identical channels with matrix `(a, b, c, d)`:
///
/// ```text
/// r   = (-a - N₀ b e^{-ik} + N₀ c e^{ik} + N₀² d) / D
/// t_N = -2i N₀ (ad - bc) sin k / D
/// D   = a + N₀ e^{ik} (b - c - N₀ d e^{ik})
/// ```
pub fn identical_from_matrix(
    m: &TransferMatrix,
    copies: f64,
    mode: &ModeContext,
    hermitian: bool,
) -> Result<ScatteringResult, ScatteringError> {
    let e = mode.phase();
    let TransferMatrix { a, b, c, d } = *m;
    let n0 = copies;
    let den = a + n0 * e * (b - c - n0 * d * e);
    let r = (-a - n0 * b * e.conj() + n0 * c * e + n0 * n0 * d) / den;
    let t_n = -2.0 * I * n0 * m.unit_determinant() * mode.k.sin() / den;
    ScatteringResult::new(r, t_n, hermitian).checked()
}
