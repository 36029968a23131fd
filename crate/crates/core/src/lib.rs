pub mod error;
pub mod exactlin;
pub mod liealg;
pub mod lsb;
pub mod matgrp;
mod par;
pub mod postlie;
pub mod report;
pub mod tablerepro;

pub use error::{Error, Result};
