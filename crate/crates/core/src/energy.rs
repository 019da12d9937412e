//! First-order radio and processing energy model.
//!
//! Every joule the engine spends comes from one of these functions. Costs are
//! linear in the packet size `k`, and the amplifier term scales with `d^2`
//! below the crossover distance `d0` and with `d^4` above it.

use core::num::NonZeroU32;

use crate::model::EnergyParams;

/// Energy charged to one node during one round, split by cause.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyDebit {
    /// Transmission (electronics and amplifier).
    pub tx: f64,
    /// Reception.
    pub rx: f64,
    /// Processing of originated or fused packets.
    pub cpu: f64,
    /// Data fusion at a cluster head.
    pub aggregation: f64,
}

impl EnergyDebit {
    /// Sum of all components.
    pub fn total(&self) -> f64 {
        self.tx + self.rx + self.cpu + self.aggregation
    }
}

/// Path-loss exponent for a link of length `d`: 2 up to and including `d0`,
/// 4 beyond it.
pub fn path_loss_exponent(d: f64, d0: f64) -> u32 {
    if d <= d0 {
        2
    } else {
        4
    }
}

fn amplifier_gain(d: f64, d0: f64) -> f64 {
    let d2 = d * d;
    match path_loss_exponent(d, d0) {
        2 => d2,
        _ => d2 * d2,
    }
}

/// Energy to transmit `k` bits over `d` meters.
pub fn tx_cost(k: NonZeroU32, d: f64, params: &EnergyParams) -> f64 {
    let k = f64::from(k.get());
    params.e_elec * k + params.e_amp * amplifier_gain(d, params.d0) * k
}

/// Energy to receive `k` bits.
pub fn rx_cost(k: NonZeroU32, params: &EnergyParams) -> f64 {
    params.e_elec * f64::from(k.get())
}

/// Energy to process `k` bits.
pub fn cpu_cost(k: NonZeroU32, params: &EnergyParams) -> f64 {
    params.e_cpu * f64::from(k.get())
}

/// Energy to fuse `n_signals` packets of `k` bits into one.
pub fn aggregation_cost(k: NonZeroU32, n_signals: NonZeroU32, params: &EnergyParams) -> f64 {
    params.e_da * f64::from(k.get()) * f64::from(n_signals.get())
}

/// Combined send, receive and processing energy for `k` bits over `d`
/// meters.
pub fn total_cost(k: NonZeroU32, d: f64, params: &EnergyParams) -> f64 {
    tx_cost(k, d, params) + rx_cost(k, params) + cpu_cost(k, params)
}
