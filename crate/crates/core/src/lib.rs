//! Exact symbolic computation of motivic Milnor fibers of plane curves.

pub mod error;
pub mod gamma_calc;
pub mod groth_core;
pub mod milnor_calc;
pub mod newton_engine;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod realize_maps;
pub mod zeta_engine;
pub mod convolution_ts;
pub mod cli;
