//! Proof machinery over the rules engine.

mod eval;
mod mate;
mod nonloss;
mod tt;

pub use eval::{evaluate, evaluate_white, mobility};
pub use mate::{
    check_immediate_checkmate, prove_mate, Budget, Exhausted, MateQuery, MateResult, MateStatus,
};
pub use nonloss::{check_non_loss, moves_within, NonLoss};
pub use tt::{Entry as TtEntry, Table as TranspositionTable};
