//! Certified Lipschitz bounds for network-shaped computation graphs and the
//! singular-value calculus behind them.

pub mod matcore;
pub mod svdcalc;
pub mod specest;
pub mod activations;
pub mod netbounds;
pub mod fourlip;
pub mod dynamics;
pub mod specgame;
