pub mod error;
pub mod graph;
pub mod matching;
pub mod mocp;
pub mod oracles;
pub mod par;
pub mod skips;
pub mod bcpm;
pub mod cpm;
pub mod em;
pub mod format;
pub mod generate;
