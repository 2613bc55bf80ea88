//! Cooperative relaying with and without network coding, evaluated by
//! seeded Monte Carlo over Rayleigh fading.
//!
//! Two sources help each other reach their destinations. Each transmission
//! block has a listening phase and a relaying phase. The four strategies
//! compared here differ in how the relayed signal is built:
//!
//! * `rdf`: orthogonal repetition, relay re-encodes the partner's message
//!   after decoding it (decode-and-forward with repetition coding);
//! * `pdf`: orthogonal transmission with an independent parity codebook at
//!   the relay (parallel-channel decode-and-forward);
//! * `lnc-rdf`: both sources transmit a power-weighted linear combination
//!   of both messages in the relaying phase (linear network coding);
//! * `dpc-nc-pdf`: same superposition, but each source dirty-paper codes
//!   one destination's message against the other's known interference.
//!
//! [`model`] holds the shared vocabulary (links, channels, SNR, power
//! allocations), [`rates`] the per-strategy mutual information and
//! throughput formulas, [`allocator`] the deterministic power allocation
//! search for the network-coded strategies, [`montecarlo`] the seeded
//! simulation driver, and [`harness`] the config/CSV/SVG/CLI layer.

pub mod allocator;
pub mod harness;
pub mod model;
pub mod montecarlo;
pub mod rates;
