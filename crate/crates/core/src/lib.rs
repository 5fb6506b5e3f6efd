//! Rules engine, oracle format, proof search and oracle verification for
//! Gardner's 5x5 minichess.

pub mod build;
pub mod oracle;
pub mod rules;
pub mod search;
pub mod verify;
