pub mod error;
pub mod exact;
pub mod fin_bool;
pub mod fin_meas;
pub mod fin_cstar;
pub mod fin_stoch;
pub mod cli;
pub mod law_harness;
pub mod schema;

pub use error::{Error, Result};
