pub mod config;
pub mod coulomb;
pub mod error;
pub mod geonium;
pub mod maps;
pub mod oscillator;
pub mod qdt;
pub mod radial;
pub mod specfun;
pub mod susy;
pub mod verify;

pub use error::{Error, Result};
