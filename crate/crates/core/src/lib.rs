//! Downlink simulator for a cell-free MIMO network of single-antenna APs
//! serving ground users (GUEs) and one UAV, optionally assisted by a
//! reconfigurable intelligent surface whose phases are aligned toward the
//! UAV.
//!
//! The pipeline of one Monte-Carlo trial is
//! [`geometry::place_nodes`] → [`channel::large_scale`] →
//! [`channel::draw_channels`] → [`beamforming::ris_align_uav`] →
//! [`channel::aggregate_channel`] → [`beamforming::cb_precoders`] →
//! [`beamforming::gamma_analytic`] → [`beamforming::ppa_allocate`] →
//! [`link::sinr_all`]. [`experiments`] runs batches of trials and reduces
//! them to rate regions, CDFs and RIS gains; [`cli`] wraps that behind a
//! config file and CSV output.

pub mod beamforming;
pub mod channel;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod link;

pub use config::SimConfig;
pub use error::{Error, Result};
