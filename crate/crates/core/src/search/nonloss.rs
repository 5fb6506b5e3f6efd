use serde::Serialize;

use super::mate::{prove_mate, Budget, Exhausted, MateQuery, MateStatus};
use crate::rules::{Color, Move, Position};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum NonLoss {
    /// No forced mate of the side within `horizon` plies.
    Safe {
        horizon: u32,
    },
    /// The opponent mates by force; `pv` is the forcing line.
    Unsafe {
        pv: Vec<Move>,
    },
    Unknown {
        exhausted: Exhausted,
    },
}

impl NonLoss {
    pub fn is_safe(&self) -> bool {
        matches!(self, NonLoss::Safe { .. })
    }
}

/// Attacker moves that fit in `horizon` plies from `pos`.
pub fn moves_within(pos: &Position, attacker: Color, horizon: u32) -> u32 {
    if pos.side_to_move() == attacker {
        horizon.div_ceil(2)
    } else {
        horizon / 2
    }
}

/// Can `side` avoid being checkmated for `horizon` plies from `pos`?
/// Stalemate and repetition count as safe outcomes.
pub fn check_non_loss(pos: &Position, side: Color, horizon: u32, budget: Budget) -> (NonLoss, u64) {
    if pos.side_to_move() == side && pos.in_check() && !pos.has_legal_move() {
        return (NonLoss::Unsafe { pv: Vec::new() }, 1);
    }
    let x = moves_within(pos, side.opposite(), horizon);
    if x == 0 {
        return (NonLoss::Safe { horizon }, 0);
    }
    let r = prove_mate(&MateQuery::new(*pos, side.opposite(), x).with_budget(budget));
    let verdict = match r.status {
        MateStatus::Proven { pv, .. } => NonLoss::Unsafe { pv },
        MateStatus::Disproven => NonLoss::Safe { horizon },
        MateStatus::Unknown { exhausted } => NonLoss::Unknown { exhausted },
    };
    (verdict, r.nodes)
}
