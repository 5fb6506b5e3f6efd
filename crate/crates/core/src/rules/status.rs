use serde::{Deserialize, Serialize};

use super::position::Position;
use super::types::{Color, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameStatus {
    Ongoing,
    Checkmate { loser: Color },
    Stalemate,
    DrawByRepetition,
    DrawByHalfmoveRule,
    DrawInsufficientMaterial,
}

impl GameStatus {
    pub fn is_over(self) -> bool {
        self != GameStatus::Ongoing
    }

    pub fn is_draw(self) -> bool {
        !matches!(self, GameStatus::Ongoing | GameStatus::Checkmate { .. })
    }
}

impl std::fmt::Display for GameStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GameStatus::Ongoing => f.write_str("Ongoing"),
            GameStatus::Checkmate { loser } => write!(f, "Checkmate ({loser} is mated)"),
            GameStatus::Stalemate => f.write_str("Stalemate"),
            GameStatus::DrawByRepetition => f.write_str("DrawByRepetition"),
            GameStatus::DrawByHalfmoveRule => f.write_str("DrawByHalfmoveRule"),
            GameStatus::DrawInsufficientMaterial => f.write_str("DrawInsufficientMaterial"),
        }
    }
}

/// Draw rules that depend on configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleProfile {
    /// Occurrences of a position (counting the current one) that end the game.
    pub repetition: u32,
    /// Halfmove clock value that ends the game; `None` disables the rule.
    pub halfmove_limit: Option<u32>,
}

impl Default for RuleProfile {
    fn default() -> RuleProfile {
        RuleProfile {
            repetition: 3,
            halfmove_limit: None,
        }
    }
}

impl RuleProfile {
    pub fn with_repetition(repetition: u32) -> RuleProfile {
        assert!(repetition >= 2, "repetition threshold below 2");
        RuleProfile {
            repetition,
            ..RuleProfile::default()
        }
    }
}

/// K v K, K+B v K, K+N v K.
pub fn insufficient_material(pos: &Position) -> bool {
    let heavy = pos.kind_bb(Kind::Pawn) | pos.kind_bb(Kind::Rook) | pos.kind_bb(Kind::Queen);
    if heavy != 0 {
        return false;
    }
    let minors = pos.kind_bb(Kind::Knight) | pos.kind_bb(Kind::Bishop);
    minors.count_ones() <= 1
}

/// `history` holds the hashes of all earlier positions of the line, not
/// including `pos` itself.
pub fn game_status(pos: &Position, history: &[u64], profile: &RuleProfile) -> GameStatus {
    if !pos.has_legal_move() {
        return if pos.in_check() {
            GameStatus::Checkmate {
                loser: pos.side_to_move(),
            }
        } else {
            GameStatus::Stalemate
        };
    }
    let seen = 1 + history.iter().filter(|&&h| h == pos.hash()).count() as u32;
    if seen >= profile.repetition {
        return GameStatus::DrawByRepetition;
    }
    if profile
        .halfmove_limit
        .is_some_and(|limit| pos.halfmove_clock() >= limit)
    {
        return GameStatus::DrawByHalfmoveRule;
    }
    if insufficient_material(pos) {
        return GameStatus::DrawInsufficientMaterial;
    }
    GameStatus::Ongoing
}
