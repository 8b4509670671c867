pub mod bitpack;
pub mod error;
pub mod ingest;
pub mod lsq;
pub mod matcher;
pub mod selftest;
pub mod slp;
pub mod synth;
pub mod tree;
pub mod treecolor;

pub use error::{Error, Result};
pub use lsq::{LsIndex, LsStats};
pub use matcher::{match_minimal, oracle_match_minimal, MinimalMatches, Occurrence};
pub use slp::{Alphabet, Rule, Slp};
pub use treecolor::Flavor;
