//! Board representation, move generation, notation and game-end rules.

mod attacks;
mod fen;
mod position;
mod san;
mod status;
mod types;
pub mod zobrist;

pub use attacks::{
    bishop as bishop_attacks, king as king_attacks, knight as knight_attacks, pawn as pawn_attacks,
    queen as queen_attacks, rook as rook_attacks,
};
pub use fen::{format_fen, parse_fen, START_FEN};
pub use position::{MoveList, Position, Undo, MAX_MOVES};
pub use san::{format_san, parse_san, san_line};
pub use status::{game_status, insufficient_material, GameStatus, RuleProfile};
pub use types::{
    file_index, rank_index, squares, Bitboard, Color, Kind, Move, Piece, Square, Squares,
    ALL_SQUARES, FILE_NAMES, RANK_NAMES,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RulesError {
    #[error("illegal move {0}")]
    IllegalMove(String),
    #[error("ambiguous SAN {0}")]
    AmbiguousSan(String),
    #[error("no legal move matches {0}")]
    UnmatchedSan(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid position: {0}")]
    InvariantViolation(String),
}
