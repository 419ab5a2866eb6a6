pub mod error;
pub mod exactlin;
pub mod freealg;

pub use error::{Error, Result};
pub mod simplicial;
pub mod bar;
pub mod tower;
pub mod sseq;
