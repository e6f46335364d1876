pub mod fincat;
pub mod fixtures;
pub mod present;
pub mod dwyer;
pub mod pushout;
pub mod sset;
pub mod homology;
pub mod scat;
pub mod random;
pub mod cli;
