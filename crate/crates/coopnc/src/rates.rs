//! Mutual information and throughput for the four cooperative strategies.
//!
//! Every transmission spans two equal blocks and all rates are spectral
//! efficiencies in b/s/Hz, so each expression carries a leading factor 1/2.
//! Logs are base 2. Writing `g(link)` for `rho * |h|^2` on a link, the
//! User 1 expressions are:
//!
//! * RDF, the relay repeats the source block and the destination combines:
//!   `I = 1/2 min{ log2(1 + g(S1->S2)), log2(1 + g(S1->D1) + g(S2->D1)) }`
//! * PDF, the relay re-encodes on an independent parallel channel:
//!   `I = 1/2 min{ log2(1 + g(S1->S2)), log2(1 + g(S1->D1)) + log2(1 + g(S2->D1)) }`
//! * LNC, both sources transmit weighted sums of the fresh and the relayed
//!   codewords in both blocks; the unwanted component of each received sum
//!   shows up as interference inside one combined SINR:
//!   `I = 1/2 min{ log2(1 + g(S1->S2) f11^2),
//!                 log2(1 + g(S1->D1) f11^2 / (1 + g(S1->D1) f12^2)
//!                        + g(S2->D1) f21^2 / (1 + g(S2->D1) f22^2)) }`
//! * DPC, same superposition but each source dirty-paper encodes, so the
//!   destination it favors sees no interference from that source and the
//!   two contributions add as separate parallel channels:
//!   `I = 1/2 min{ log2(1 + g(S1->S2) f11^2),
//!                 log2(1 + SINR_11) + log2(1 + SINR_21) }`
//!   with `SINR_ij = g(Si->Dj) f_ij^2` when `S_i` favors `D_j` and
//!   `SINR_ij = g(Si->Dj) f_ij^2 / (1 + g(Si->Dj) f_ik^2)` otherwise.
//!
//! User 2's expressions are obtained from User 1's by the relabeling
//! S1 <-> S2, D1 <-> D2, f11 <-> f22, f12 <-> f21 (orderings flip
//! accordingly). The code applies that table through per-user views rather
//! than spelling the formulas out twice, which makes the label symmetry
//! hold by construction; the tests still check it against independently
//! written expressions.

use std::f64::consts::LN_2;
use std::fmt;

use thiserror::Error;

use crate::model::{
    ChannelRealization, DpcOrderingPair, FavoredDest, LinkId, PowerAllocation, SnrPoint,
    StrategyId,
};

/// One of the two source-destination pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UserId {
    User1,
    User2,
}

impl UserId {
    pub const ALL: [UserId; 2] = [UserId::User1, UserId::User2];

    /// The other user; the map is its own inverse.
    pub fn complement(self) -> UserId {
        match self {
            UserId::User1 => UserId::User2,
            UserId::User2 => UserId::User1,
        }
    }

    /// 0 for User 1, 1 for User 2; handy for indexing pairs.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UserId::User1 => "user1",
            UserId::User2 => "user2",
        })
    }
}

/// Invalid argument combination for [`rate_report`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateReportError {
    #[error("strategy {0} requires a power allocation")]
    MissingAllocation(StrategyId),
    #[error("strategy {0} requires a DPC ordering pair")]
    MissingOrdering(StrategyId),
    #[error("strategy {0} does not take a power allocation")]
    UnexpectedAllocation(StrategyId),
    #[error("strategy {0} does not take a DPC ordering pair")]
    UnexpectedOrdering(StrategyId),
}

/// Per-user mutual information and throughput for one strategy on one
/// channel draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    strategy: StrategyId,
    mutual_info: [f64; 2],
    throughput: [f64; 2],
    network_throughput: f64,
}

impl RateReport {
    pub fn strategy(&self) -> StrategyId {
        self.strategy
    }

    /// Achievable spectral efficiency of the user's own message, b/s/Hz.
    pub fn mutual_info(&self, user: UserId) -> f64 {
        self.mutual_info[user.index()]
    }

    /// The user's share of long-run throughput, b/s/Hz. Orthogonal
    /// strategies dedicate only every other two-block slot to a given user,
    /// so their per-user throughput is half the mutual information;
    /// network-coded strategies deliver it in full.
    pub fn throughput(&self, user: UserId) -> f64 {
        self.throughput[user.index()]
    }

    /// Sum of the two per-user throughputs.
    pub fn network_throughput(&self) -> f64 {
        self.network_throughput
    }
}

// ---------------------------------------------------------------------------
// Per-user views of the channel and the allocation
// ---------------------------------------------------------------------------

#[inline]
fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

/// `rho`-scaled power gains of the three links carrying one user's data.
#[derive(Debug, Clone, Copy)]
pub(crate) struct UserGains {
    /// Source to relaying partner; bounds what the relay can decode.
    pub relay_decode: f64,
    /// Source to its own destination.
    pub direct: f64,
    /// Relaying partner to the user's destination.
    pub cross: f64,
}

pub(crate) fn user_gains(ch: &ChannelRealization, snr: SnrPoint, user: UserId) -> UserGains {
    let rho = snr.rho();
    match user {
        UserId::User1 => UserGains {
            relay_decode: rho * ch.gain2(LinkId::S1ToS2),
            direct: rho * ch.gain2(LinkId::S1ToD1),
            cross: rho * ch.gain2(LinkId::S2ToD1),
        },
        UserId::User2 => UserGains {
            relay_decode: rho * ch.gain2(LinkId::S2ToS1),
            direct: rho * ch.gain2(LinkId::S2ToD2),
            cross: rho * ch.gain2(LinkId::S1ToD2),
        },
    }
}

/// Precoder entries in user-relative roles.
#[derive(Debug, Clone, Copy)]
pub(crate) struct UserAlloc {
    /// Own source's weight on the user's fresh codeword (signal on the
    /// direct link, also the power the partner must decode through).
    pub own_data: f64,
    /// Own source's weight on the partner's relayed codeword (interference
    /// on the direct link).
    pub own_relay: f64,
    /// Partner's weight on this user's relayed codeword (signal on the
    /// cross link).
    pub partner_relay: f64,
    /// Partner's weight on its own codeword (interference on the cross
    /// link).
    pub partner_data: f64,
}

pub(crate) fn user_alloc(alloc: &PowerAllocation, user: UserId) -> UserAlloc {
    match user {
        UserId::User1 => UserAlloc {
            own_data: alloc.f11(),
            own_relay: alloc.f12(),
            partner_relay: alloc.f21(),
            partner_data: alloc.f22(),
        },
        UserId::User2 => UserAlloc {
            own_data: alloc.f22(),
            own_relay: alloc.f21(),
            partner_relay: alloc.f12(),
            partner_data: alloc.f11(),
        },
    }
}

/// Whether (own source, partner source) dirty-paper encode in favor of this
/// user's destination.
pub(crate) fn dpc_favors(ordering: DpcOrderingPair, user: UserId) -> (bool, bool) {
    match user {
        UserId::User1 => (ordering.pi1 == FavoredDest::D1, ordering.pi2 == FavoredDest::D1),
        UserId::User2 => (ordering.pi2 == FavoredDest::D2, ordering.pi1 == FavoredDest::D2),
    }
}

// ---------------------------------------------------------------------------
// Rate kernels
// ---------------------------------------------------------------------------

pub(crate) fn rdf_kernel(g: &UserGains) -> f64 {
    0.5 * f64::min(log2_1p(g.relay_decode), log2_1p(g.direct + g.cross))
}

pub(crate) fn pdf_kernel(g: &UserGains) -> f64 {
    0.5 * f64::min(log2_1p(g.relay_decode), log2_1p(g.direct) + log2_1p(g.cross))
}

pub(crate) fn lnc_kernel(g: &UserGains, f: &UserAlloc) -> f64 {
    let relay = log2_1p(g.relay_decode * f.own_data * f.own_data);
    let own = g.direct * f.own_data * f.own_data / (1.0 + g.direct * f.own_relay * f.own_relay);
    let via_partner =
        g.cross * f.partner_relay * f.partner_relay / (1.0 + g.cross * f.partner_data * f.partner_data);
    let dest = log2_1p(own + via_partner);
    0.5 * relay.min(dest)
}

#[inline]
fn dpc_sinr(gain: f64, signal: f64, interference: f64, favored: bool) -> f64 {
    let s = gain * signal * signal;
    if favored {
        s
    } else {
        s / (1.0 + gain * interference * interference)
    }
}

pub(crate) fn dpc_kernel(g: &UserGains, f: &UserAlloc, own_favored: bool, partner_favored: bool) -> f64 {
    let relay = log2_1p(g.relay_decode * f.own_data * f.own_data);
    let own = dpc_sinr(g.direct, f.own_data, f.own_relay, own_favored);
    let via_partner = dpc_sinr(g.cross, f.partner_relay, f.partner_data, partner_favored);
    let dest = log2_1p(own) + log2_1p(via_partner);
    0.5 * relay.min(dest)
}

// ---------------------------------------------------------------------------
// Public rate functions
// ---------------------------------------------------------------------------

/// Repetition decode-and-forward mutual information for one user.
pub fn mutual_info_rdf(ch: &ChannelRealization, snr: SnrPoint, user: UserId) -> f64 {
    rdf_kernel(&user_gains(ch, snr, user))
}

/// Parallel-channel decode-and-forward mutual information for one user.
pub fn mutual_info_pdf(ch: &ChannelRealization, snr: SnrPoint, user: UserId) -> f64 {
    pdf_kernel(&user_gains(ch, snr, user))
}

/// Linear network coding mutual information for one user at a fixed power
/// allocation.
pub fn mutual_info_lnc(
    ch: &ChannelRealization,
    snr: SnrPoint,
    alloc: &PowerAllocation,
    user: UserId,
) -> f64 {
    lnc_kernel(&user_gains(ch, snr, user), &user_alloc(alloc, user))
}

/// Dirty-paper network coding mutual information for one user at a fixed
/// power allocation and encoding order pair.
pub fn mutual_info_dpc(
    ch: &ChannelRealization,
    snr: SnrPoint,
    alloc: &PowerAllocation,
    ordering: DpcOrderingPair,
    user: UserId,
) -> f64 {
    let (own_favored, partner_favored) = dpc_favors(ordering, user);
    dpc_kernel(&user_gains(ch, snr, user), &user_alloc(alloc, user), own_favored, partner_favored)
}

/// Evaluates one strategy on one channel draw, checking that exactly the
/// arguments the strategy needs were supplied.
pub fn rate_report(
    strategy: StrategyId,
    ch: &ChannelRealization,
    snr: SnrPoint,
    alloc: Option<&PowerAllocation>,
    ordering: Option<DpcOrderingPair>,
) -> Result<RateReport, RateReportError> {
    if strategy.needs_allocation() && alloc.is_none() {
        return Err(RateReportError::MissingAllocation(strategy));
    }
    if !strategy.needs_allocation() && alloc.is_some() {
        return Err(RateReportError::UnexpectedAllocation(strategy));
    }
    match strategy {
        StrategyId::DpcNcPdf if ordering.is_none() => {
            return Err(RateReportError::MissingOrdering(strategy))
        }
        StrategyId::DpcNcPdf => {}
        _ if ordering.is_some() => return Err(RateReportError::UnexpectedOrdering(strategy)),
        _ => {}
    }

    let mi_of = |user: UserId| match strategy {
        StrategyId::Rdf => mutual_info_rdf(ch, snr, user),
        StrategyId::Pdf => mutual_info_pdf(ch, snr, user),
        StrategyId::LncRdf => mutual_info_lnc(ch, snr, alloc.unwrap(), user),
        StrategyId::DpcNcPdf => mutual_info_dpc(ch, snr, alloc.unwrap(), ordering.unwrap(), user),
    };
    let mutual_info = [mi_of(UserId::User1), mi_of(UserId::User2)];
    let share = if strategy.is_network_coded() { 1.0 } else { 0.5 };
    let throughput = [share * mutual_info[0], share * mutual_info[1]];
    Ok(RateReport {
        strategy,
        mutual_info,
        throughput,
        network_throughput: throughput[0] + throughput[1],
    })
}

// ---------------------------------------------------------------------------
