//! Domain types for a two-source, two-destination cooperative network.
//!
//! Two sources S1 and S2 each want to reach their own destination (D1 and
//! D2). Either source can overhear the other and act as its relay, so the
//! network has six directed links. Channel reciprocity is *not* assumed:
//! S1->S2 and S2->S1 are independent links with their own fading statistics.
//!
//! Conventions used throughout the crate:
//!
//! * `rho` is the linear input SNR. With transmit power P, bandwidth W and
//!   noise variance sigma^2 it equals `2P / (W sigma^2)`; the factor 2 comes
//!   from the half-duplex two-block schedule.
//! * Power gains are squared magnitudes `g = |h|^2` of complex fading gains.
//! * Precoder entries `f_ij` are the nonnegative square roots of the power
//!   fractions source `S_i` spends on the codeword meant for `D_j`. Phases
//!   are unobservable in the rate expressions, so real entries lose nothing.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance for unit-power precoder norm checks.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Validation failure when constructing a domain value.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("SNR in dB must be finite, got {0}")]
    NonFiniteSnrDb(f64),
    #[error("linear SNR must be finite and >= 0, got {0}")]
    InvalidSnr(f64),
    #[error("fading variance for link {link} must be finite and > 0, got {value}")]
    InvalidLinkVariance { link: LinkId, value: f64 },
    #[error("noise variance must be finite and > 0, got {0}")]
    InvalidNoiseVariance(f64),
    #[error("power gain for link {link} must be finite and >= 0, got {value}")]
    InvalidPowerGain { link: LinkId, value: f64 },
    #[error("precoder entries must be finite and >= 0, got [{0}, {1}, {2}, {3}]")]
    InvalidPrecoderEntry(f64, f64, f64, f64),
    #[error("precoder norm for source S{source_index} exceeds unit power: |F|^2 = {norm_sq}")]
    PrecoderNormExceeded { source_index: u8, norm_sq: f64 },
    #[error("target rate must be finite and > 0, got {0}")]
    InvalidTargetRate(f64),
    #[error("bandwidth must be finite and > 0, got {0}")]
    InvalidBandwidth(f64),
    #[error("unknown strategy {0:?}, expected one of rdf, pdf, lnc-rdf, dpc-nc-pdf")]
    UnknownStrategy(String),
    #[error("unknown norm mode {0:?}, expected equality or inequality")]
    UnknownNormMode(String),
    #[error("unknown destination {0:?}, expected d1 or d2")]
    UnknownDestination(String),
}

// ---------------------------------------------------------------------------
// Links
// ---------------------------------------------------------------------------

/// One of the six directed links of the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkId {
    /// Source S1 heard by source S2 (inter-source link used when S2 relays).
    S1ToS2,
    /// Source S2 heard by source S1.
    S2ToS1,
    /// Direct link S1 -> D1.
    S1ToD1,
    /// Cross link S1 -> D2 (carries relayed traffic for user 2).
    S1ToD2,
    /// Cross link S2 -> D1 (carries relayed traffic for user 1).
    S2ToD1,
    /// Direct link S2 -> D2.
    S2ToD2,
}

impl LinkId {
    /// Every link, in the canonical order used for indexing and RNG streams.
    pub const ALL: [LinkId; 6] = [
        LinkId::S1ToS2,
        LinkId::S2ToS1,
        LinkId::S1ToD1,
        LinkId::S1ToD2,
        LinkId::S2ToD1,
        LinkId::S2ToD2,
    ];

    /// Position of this link in [`LinkId::ALL`].
    pub fn ordinal(self) -> usize {
        self as usize
    }

    /// The link this one maps to when the user labels are swapped
    /// (S1 <-> S2 together with D1 <-> D2).
    pub fn swapped_users(self) -> LinkId {
        match self {
            LinkId::S1ToS2 => LinkId::S2ToS1,
            LinkId::S2ToS1 => LinkId::S1ToS2,
            LinkId::S1ToD1 => LinkId::S2ToD2,
            LinkId::S1ToD2 => LinkId::S2ToD1,
            LinkId::S2ToD1 => LinkId::S1ToD2,
            LinkId::S2ToD2 => LinkId::S1ToD1,
        }
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LinkId::S1ToS2 => "S1->S2",
            LinkId::S2ToS1 => "S2->S1",
            LinkId::S1ToD1 => "S1->D1",
            LinkId::S1ToD2 => "S1->D2",
            LinkId::S2ToD1 => "S2->D1",
            LinkId::S2ToD2 => "S2->D2",
        };
        f.write_str(name)
    }
}

// ---------------------------------------------------------------------------
// Fading statistics and channel draws
// ---------------------------------------------------------------------------

/// Per-link Rayleigh fading variances plus the receiver noise variance.
///
/// Each complex gain `h` is zero-mean circularly symmetric Gaussian with
/// `E|h|^2` equal to the link variance, so `|h|^2` is exponential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingProfile {
    variance: [f64; 6],
    noise_variance: f64,
}

impl FadingProfile {
    /// Builds a profile from per-link variances in [`LinkId::ALL`] order.
    pub fn new(variance: [f64; 6], noise_variance: f64) -> Result<Self, ModelError> {
        for (link, &v) in LinkId::ALL.iter().zip(variance.iter()) {
            if !(v.is_finite() && v > 0.0) {
                return Err(ModelError::InvalidLinkVariance { link: *link, value: v });
            }
        }
        if !(noise_variance.is_finite() && noise_variance > 0.0) {
            return Err(ModelError::InvalidNoiseVariance(noise_variance));
        }
        Ok(Self { variance, noise_variance })
    }

    /// All six links share one variance.
    pub fn symmetric(variance: f64, noise_variance: f64) -> Result<Self, ModelError> {
        Self::new([variance; 6], noise_variance)
    }

    pub fn variance(&self, link: LinkId) -> f64 {
        self.variance[link.ordinal()]
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// True when every link has the same variance.
    pub fn is_symmetric(&self) -> bool {
        self.variance.iter().all(|&v| v == self.variance[0])
    }
}

/// One draw of the six complex channel gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelRealization {
    gains: [Complex64; 6],
}

impl ChannelRealization {
    /// Wraps raw complex gains given in [`LinkId::ALL`] order.
    pub fn new(gains: [Complex64; 6]) -> Self {
        Self { gains }
    }

    /// Builds a realization from power gains `|h|^2`, taking real square
    /// roots. Useful when only the gains matter, e.g. for spot checks.
    pub fn from_power_gains(gains2: [f64; 6]) -> Result<Self, ModelError> {
        let mut gains = [Complex64::new(0.0, 0.0); 6];
        for (link, (&g2, slot)) in LinkId::ALL.iter().zip(gains2.iter().zip(gains.iter_mut())) {
            if !(g2.is_finite() && g2 >= 0.0) {
                return Err(ModelError::InvalidPowerGain { link: *link, value: g2 });
            }
            *slot = Complex64::new(g2.sqrt(), 0.0);
        }
        Ok(Self { gains })
    }

    pub fn gain(&self, link: LinkId) -> Complex64 {
        self.gains[link.ordinal()]
    }

    /// Power gain `|h|^2` of the given link.
    pub fn gain2(&self, link: LinkId) -> f64 {
        self.gains[link.ordinal()].norm_sqr()
    }

    /// The same physical draw with the user labels swapped
    /// (S1 <-> S2, D1 <-> D2).
    pub fn swapped_users(&self) -> ChannelRealization {
        let mut gains = self.gains;
        for link in LinkId::ALL {
            gains[link.swapped_users().ordinal()] = self.gains[link.ordinal()];
        }
        Self { gains }
    }
}

// ---------------------------------------------------------------------------
// SNR
// ---------------------------------------------------------------------------

/// A linear input SNR `rho >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SnrPoint {
    rho: f64,
}

impl SnrPoint {
    pub fn from_linear(rho: f64) -> Result<Self, ModelError> {
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(ModelError::InvalidSnr(rho));
        }
        Ok(Self { rho })
    }

    /// Converts from decibels: `rho = 10^(db/10)`.
    pub fn from_db(db: f64) -> Result<Self, ModelError> {
        if !db.is_finite() {
            return Err(ModelError::NonFiniteSnrDb(db));
        }
        Ok(Self { rho: 10f64.powf(db / 10.0) })
    }

    pub fn rho(self) -> f64 {
        self.rho
    }

    /// `10 log10(rho)`; negative infinity when `rho` is zero.
    pub fn db(self) -> f64 {
        10.0 * self.rho.log10()
    }
}

// ---------------------------------------------------------------------------
// Power allocation
// ---------------------------------------------------------------------------

/// How the per-source power budget constraint is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// Each source spends its full budget: `f_i1^2 + f_i2^2 = 1`.
    Equality,
    /// Sources may leave power unused: `f_i1^2 + f_i2^2 <= 1`.
    Inequality,
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormMode::Equality => "equality",
            NormMode::Inequality => "inequality",
        })
    }
}

impl FromStr for NormMode {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "equality" => Ok(NormMode::Equality),
            "inequality" => Ok(NormMode::Inequality),
            other => Err(ModelError::UnknownNormMode(other.to_string())),
        }
    }
}

/// Nonnegative precoder entries `[f11, f12, f21, f22]`, where `f_ij` belongs
/// to the codeword source `S_i` transmits for destination `D_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAllocation {
    f11: f64,
    f12: f64,
    f21: f64,
    f22: f64,
}

impl PowerAllocation {
    /// The four one-hot allocations, each source spending everything on a
    /// single codeword.
    pub const CORNERS: [PowerAllocation; 4] = [
        PowerAllocation { f11: 1.0, f12: 0.0, f21: 1.0, f22: 0.0 },
        PowerAllocation { f11: 1.0, f12: 0.0, f21: 0.0, f22: 1.0 },
        PowerAllocation { f11: 0.0, f12: 1.0, f21: 1.0, f22: 0.0 },
        PowerAllocation { f11: 0.0, f12: 1.0, f21: 0.0, f22: 1.0 },
    ];

    /// Validates entries: finite, nonnegative, and per-source norms at most
    /// one (within [`NORM_TOLERANCE`]).
    pub fn new(f11: f64, f12: f64, f21: f64, f22: f64) -> Result<Self, ModelError> {
        let finite_nonneg =
            |x: f64| x.is_finite() && x >= 0.0;
        if !(finite_nonneg(f11) && finite_nonneg(f12) && finite_nonneg(f21) && finite_nonneg(f22)) {
            return Err(ModelError::InvalidPrecoderEntry(f11, f12, f21, f22));
        }
        let n1 = f11 * f11 + f12 * f12;
        if n1 > 1.0 + NORM_TOLERANCE {
            return Err(ModelError::PrecoderNormExceeded { source_index: 1, norm_sq: n1 });
        }
        let n2 = f21 * f21 + f22 * f22;
        if n2 > 1.0 + NORM_TOLERANCE {
            return Err(ModelError::PrecoderNormExceeded { source_index: 2, norm_sq: n2 });
        }
        Ok(Self { f11, f12, f21, f22 })
    }

    /// Unit-norm allocation from one angle per source:
    /// `f_i1 = cos(theta_i)`, `f_i2 = sin(theta_i)` with angles in
    /// `[0, pi/2]`.
    pub fn from_angles(theta1: f64, theta2: f64) -> Self {
        Self {
            f11: theta1.cos(),
            f12: theta1.sin(),
            f21: theta2.cos(),
            f22: theta2.sin(),
        }
    }

    /// Entries known valid by construction (optimizer grids).
    pub(crate) fn new_unchecked(f11: f64, f12: f64, f21: f64, f22: f64) -> Self {
        Self { f11, f12, f21, f22 }
    }

    pub fn f11(&self) -> f64 {
        self.f11
    }

    pub fn f12(&self) -> f64 {
        self.f12
    }

    pub fn f21(&self) -> f64 {
        self.f21
    }

    pub fn f22(&self) -> f64 {
        self.f22
    }

    /// `f11^2 + f12^2`, source S1's spent power fraction.
    pub fn norm1_sq(&self) -> f64 {
        self.f11 * self.f11 + self.f12 * self.f12
    }

    /// `f21^2 + f22^2`, source S2's spent power fraction.
    pub fn norm2_sq(&self) -> f64 {
        self.f21 * self.f21 + self.f22 * self.f22
    }

    /// Checks the budget constraint for the given mode within
    /// [`NORM_TOLERANCE`].
    pub fn satisfies_norm(&self, mode: NormMode) -> bool {
        let (n1, n2) = (self.norm1_sq(), self.norm2_sq());
        match mode {
            NormMode::Equality => {
                (n1 - 1.0).abs() <= NORM_TOLERANCE && (n2 - 1.0).abs() <= NORM_TOLERANCE
            }
            NormMode::Inequality => n1 <= 1.0 + NORM_TOLERANCE && n2 <= 1.0 + NORM_TOLERANCE,
        }
    }

    /// The allocation seen after swapping the user labels:
    /// `f11 <-> f22`, `f12 <-> f21`.
    pub fn swapped_users(&self) -> PowerAllocation {
        Self { f11: self.f22, f12: self.f21, f21: self.f12, f22: self.f11 }
    }
}

// ---------------------------------------------------------------------------
// Dirty-paper encoding orders
// ---------------------------------------------------------------------------

/// Destination a source shields from its own cross-codeword interference
/// when dirty-paper precoding its two superposed codewords.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FavoredDest {
    D1,
    D2,
}

impl fmt::Display for FavoredDest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FavoredDest::D1 => "d1",
            FavoredDest::D2 => "d2",
        })
    }
}

impl FromStr for FavoredDest {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "d1" => Ok(FavoredDest::D1),
            "d2" => Ok(FavoredDest::D2),
            other => Err(ModelError::UnknownDestination(other.to_string())),
        }
    }
}

/// Encoding choice per source: `pi1` is the destination S1 favors, `pi2`
/// the one S2 favors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpcOrderingPair {
    pub pi1: FavoredDest,
    pub pi2: FavoredDest,
}

impl DpcOrderingPair {
    /// All four ordering pairs, in tie-break order.
    pub const ALL: [DpcOrderingPair; 4] = [
        DpcOrderingPair { pi1: FavoredDest::D1, pi2: FavoredDest::D1 },
        DpcOrderingPair { pi1: FavoredDest::D1, pi2: FavoredDest::D2 },
        DpcOrderingPair { pi1: FavoredDest::D2, pi2: FavoredDest::D1 },
        DpcOrderingPair { pi1: FavoredDest::D2, pi2: FavoredDest::D2 },
    ];

    /// Position of this pair in [`DpcOrderingPair::ALL`].
    pub fn index(self) -> usize {
        let hi = matches!(self.pi1, FavoredDest::D2) as usize;
        let lo = matches!(self.pi2, FavoredDest::D2) as usize;
        hi * 2 + lo
    }

    /// The pair seen after swapping the user labels: the sources trade
    /// roles and the favored destinations flip.
    pub fn swapped_users(self) -> DpcOrderingPair {
        let flip = |d: FavoredDest| match d {
            FavoredDest::D1 => FavoredDest::D2,
            FavoredDest::D2 => FavoredDest::D1,
        };
        DpcOrderingPair { pi1: flip(self.pi2), pi2: flip(self.pi1) }
    }
}

impl fmt::Display for DpcOrderingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.pi1, self.pi2)
    }
}

// ---------------------------------------------------------------------------
// Strategies and outage thresholds
// ---------------------------------------------------------------------------

/// The four cooperative transmission strategies under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StrategyId {
    /// Orthogonal repetition decode-and-forward.
    Rdf,
    /// Orthogonal parallel-channel decode-and-forward.
    Pdf,
    /// Linear network coding on top of RDF; both sources transmit in both
    /// blocks.
    LncRdf,
    /// Network coding with dirty-paper precoded superposition on top of PDF.
    DpcNcPdf,
}

impl StrategyId {
    /// Every strategy in canonical (reporting) order.
    pub const ALL: [StrategyId; 4] =
        [StrategyId::Rdf, StrategyId::Pdf, StrategyId::LncRdf, StrategyId::DpcNcPdf];

    /// Stable lowercase identifier used by the CLI and CSV output.
    pub fn label(self) -> &'static str {
        match self {
            StrategyId::Rdf => "rdf",
            StrategyId::Pdf => "pdf",
            StrategyId::LncRdf => "lnc-rdf",
            StrategyId::DpcNcPdf => "dpc-nc-pdf",
        }
    }

    /// Network-coded strategies serve both users in every block, so their
    /// per-user throughput is the full mutual information and their outage
    /// threshold is not doubled.
    pub fn is_network_coded(self) -> bool {
        matches!(self, StrategyId::LncRdf | StrategyId::DpcNcPdf)
    }

    /// True for strategies that take a power allocation.
    pub fn needs_allocation(self) -> bool {
        self.is_network_coded()
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StrategyId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        match s {
            "rdf" => Ok(StrategyId::Rdf),
            "pdf" => Ok(StrategyId::Pdf),
            "lnc-rdf" => Ok(StrategyId::LncRdf),
            "dpc-nc-pdf" => Ok(StrategyId::DpcNcPdf),
            other => Err(ModelError::UnknownStrategy(other.to_string())),
        }
    }
}

/// Target rate `r` (b/s) over bandwidth `W` (Hz), with the two spectral
/// efficiency thresholds it implies.
///
/// Orthogonal strategies deliver a user's data in half the degrees of
/// freedom, so they must clear `r / (W/2)`; network-coded strategies use all
/// of them and must clear `r / W`. The first is exactly twice the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageSpec {
    target_rate: f64,
    bandwidth: f64,
}

impl OutageSpec {
    pub fn new(target_rate: f64, bandwidth: f64) -> Result<Self, ModelError> {
        if !(target_rate.is_finite() && target_rate > 0.0) {
            return Err(ModelError::InvalidTargetRate(target_rate));
        }
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(ModelError::InvalidBandwidth(bandwidth));
        }
        Ok(Self { target_rate, bandwidth })
    }

    pub fn target_rate(&self) -> f64 {
        self.target_rate
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Threshold `r / (W/2)` in b/s/Hz for the orthogonal strategies.
    pub fn threshold_orthogonal(&self) -> f64 {
        self.target_rate / (self.bandwidth / 2.0)
    }

    /// Threshold `r / W` in b/s/Hz for the network-coded strategies.
    pub fn threshold_nc(&self) -> f64 {
        self.target_rate / self.bandwidth
    }

    /// The threshold a strategy's mutual information is compared against.
    pub fn threshold_for(&self, strategy: StrategyId) -> f64 {
        if strategy.is_network_coded() {
            self.threshold_nc()
        } else {
            self.threshold_orthogonal()
        }
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_link_ordinals_are_dense_and_distinct() {
        for (i, link) in LinkId::ALL.iter().enumerate() {
            assert_eq!(link.ordinal(), i);
        }
    }

    #[test]
    fn test_link_user_swap_is_involutive() {
        for link in LinkId::ALL {
            assert_eq!(link.swapped_users().swapped_users(), link);
        }
    }

    #[test]
    fn test_db_conversion_3db() {
        let snr = SnrPoint::from_db(3.0).unwrap();
        assert!(
            (snr.rho() - 1.9952623149688795).abs() < 1e-12,
            "3 dB -> rho = {}",
            snr.rho()
        );
    }

    #[test]
    fn test_db_round_trip() {
        for &db in &[-20.0, -3.0, 0.0, 0.1, 10.0, 17.5, 40.0] {
            let back = SnrPoint::from_db(db).unwrap().db();
            let rel = if db == 0.0 { back.abs() } else { ((back - db) / db).abs() };
            assert!(rel < 1e-12, "round trip {} -> {}", db, back);
        }
    }

    #[test]
    fn test_db_rejects_non_finite() {
        assert!(SnrPoint::from_db(f64::NAN).is_err());
        assert!(SnrPoint::from_db(f64::INFINITY).is_err());
        assert!(SnrPoint::from_linear(-0.5).is_err());
        assert!(SnrPoint::from_linear(0.0).is_ok());
    }

    #[test]
    fn test_fading_profile_rejects_bad_variance() {
        let err = FadingProfile::new([1.0, 1.0, -1.0, 1.0, 1.0, 1.0], 1.0).unwrap_err();
        match err {
            ModelError::InvalidLinkVariance { link, value } => {
                assert_eq!(link, LinkId::S1ToD1);
                assert_eq!(value, -1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(FadingProfile::symmetric(1.0, 0.0).is_err());
    }

    #[test]
    fn test_fading_profile_symmetry_flag() {
        assert!(FadingProfile::symmetric(2.0, 1.0).unwrap().is_symmetric());
        let lopsided = FadingProfile::new([1.0, 1.0, 1.0, 1.0, 1.0, 4.0], 1.0).unwrap();
        assert!(!lopsided.is_symmetric());
    }

    #[test]
    fn test_gain2_matches_squared_magnitude() {
        let mut gains = [Complex64::new(0.0, 0.0); 6];
        gains[LinkId::S2ToD1.ordinal()] = Complex64::new(3.0, -4.0);
        let ch = ChannelRealization::new(gains);
        assert_eq!(ch.gain2(LinkId::S2ToD1), 25.0);
        assert_eq!(ch.gain2(LinkId::S1ToD1), 0.0);
    }

    #[test]
    fn test_channel_from_power_gains() {
        let ch = ChannelRealization::from_power_gains([3.0, 0.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!((ch.gain2(LinkId::S1ToS2) - 3.0).abs() < 1e-15);
        assert_eq!(ch.gain2(LinkId::S2ToS1), 0.0);
        assert!(ChannelRealization::from_power_gains([-1.0; 6]).is_err());
    }

    #[test]
    fn test_channel_user_swap_moves_gains() {
        let gains = [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(4.0, 0.0),
            Complex64::new(5.0, 0.0),
            Complex64::new(6.0, 0.0),
        ];
        let ch = ChannelRealization::new(gains).swapped_users();
        assert_eq!(ch.gain(LinkId::S2ToS1), gains[LinkId::S1ToS2.ordinal()]);
        assert_eq!(ch.gain(LinkId::S2ToD2), gains[LinkId::S1ToD1.ordinal()]);
        assert_eq!(ch.gain(LinkId::S2ToD1), gains[LinkId::S1ToD2.ordinal()]);
        assert_eq!(ch.gain(LinkId::S1ToD2), gains[LinkId::S2ToD1.ordinal()]);
    }

    #[test]
    fn test_allocation_validation() {
        assert!(PowerAllocation::new(0.6, 0.8, 1.0, 0.0).is_ok());
        assert!(PowerAllocation::new(0.8, 0.8, 0.0, 1.0).is_err());
        assert!(PowerAllocation::new(-0.1, 0.0, 0.0, 0.0).is_err());
        assert!(PowerAllocation::new(f64::NAN, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn test_allocation_from_angles_is_unit_norm() {
        let a = PowerAllocation::from_angles(0.3, 1.2);
        assert!(a.satisfies_norm(NormMode::Equality));
        assert!(a.satisfies_norm(NormMode::Inequality));
        let half = PowerAllocation::new(0.5, 0.5, 0.1, 0.1).unwrap();
        assert!(!half.satisfies_norm(NormMode::Equality));
        assert!(half.satisfies_norm(NormMode::Inequality));
    }

    #[test]
    fn test_allocation_swap_is_involutive() {
        let a = PowerAllocation::new(0.1, 0.2, 0.3, 0.4).unwrap();
        let s = a.swapped_users();
        assert_eq!(s.f11(), 0.4);
        assert_eq!(s.f12(), 0.3);
        assert_eq!(s.f21(), 0.2);
        assert_eq!(s.f22(), 0.1);
        assert_eq!(s.swapped_users(), a);
    }

    #[test]
    fn test_corners_are_feasible_in_both_modes() {
        for c in PowerAllocation::CORNERS {
            assert!(c.satisfies_norm(NormMode::Equality));
            assert!(c.satisfies_norm(NormMode::Inequality));
        }
    }

    #[test]
    fn test_ordering_pair_index_matches_all() {
        for (i, pair) in DpcOrderingPair::ALL.iter().enumerate() {
            assert_eq!(pair.index(), i);
            assert_eq!(pair.swapped_users().swapped_users(), *pair);
        }
    }

    #[test]
    fn test_strategy_labels_round_trip() {
        for s in StrategyId::ALL {
            assert_eq!(s.label().parse::<StrategyId>().unwrap(), s);
        }
        assert!("dpc".parse::<StrategyId>().is_err());
    }

    #[test]
    fn test_outage_thresholds_are_exactly_doubled() {
        for &(r, w) in &[(1.0, 1.0), (0.3, 2.0), (2.5, 0.7), (1e-3, 10.0)] {
            let spec = OutageSpec::new(r, w).unwrap();
            assert_eq!(spec.threshold_orthogonal(), 2.0 * spec.threshold_nc());
        }
        let spec = OutageSpec::new(1.0, 1.0).unwrap();
        assert_eq!(spec.threshold_for(StrategyId::Rdf), 2.0);
        assert_eq!(spec.threshold_for(StrategyId::DpcNcPdf), 1.0);
        assert!(OutageSpec::new(0.0, 1.0).is_err());
        assert!(OutageSpec::new(1.0, f64::NAN).is_err());
    }
}
