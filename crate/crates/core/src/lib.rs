pub mod bdd;
pub mod benchgen;
pub mod cube;
pub mod dsop;
pub mod embed;
pub mod lines;
pub mod oracle;
pub mod pla;
