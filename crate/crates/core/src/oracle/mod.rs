//! Draw-oracle proof trees: data model, `.gdo` text format, PGN export and
//! the bundled transcriptions.

mod bundle;
mod model;
mod parse;
mod pgn;
mod print;

pub use bundle::{bundled, bundled_document, BundleEntry, Completeness};
pub use model::{
    is_root_id, leaves_of, Claim, Edge, Leaf, Node, NodeKind, OpponentNode, OracleDocument, Visit,
};
pub use parse::parse_oracle;
pub use pgn::export_pgn;
pub use print::print_oracle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("illegal move in line `{path}`: {reason}")]
    IllegalMoveInLine { path: String, reason: String },
    #[error("reference to unknown variation {0}")]
    DanglingReference(String),
    #[error("variation id {0} used twice")]
    DuplicateId(String),
    #[error("unknown variation id {0}")]
    UnknownVariationId(String),
}
