use crate::rules::{Color, MoveList, Position};

/// Pseudo-legal move count of `color`, regardless of whose turn it is.
pub fn mobility(pos: &Position, color: Color) -> i32 {
    let mut moves = MoveList::new();
    pos.pseudo_moves_for(color, &mut moves);
    moves.len() as i32
}

/// Centipawn score from the side to move's point of view: material plus two
/// points per move of mobility advantage. Used for move ordering only.
pub fn evaluate(pos: &Position) -> i32 {
    let us = pos.side_to_move();
    let them = us.opposite();
    pos.material(us) - pos.material(them) + 2 * (mobility(pos, us) - mobility(pos, them))
}

/// Score from White's point of view.
pub fn evaluate_white(pos: &Position) -> i32 {
    match pos.side_to_move() {
        Color::White => evaluate(pos),
        Color::Black => -evaluate(pos),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::parse_fen;

    #[test]
    fn start_is_level() {
        assert_eq!(evaluate(&Position::initial()), 0);
    }

    #[test]
    fn missing_queen_dominates() {
        let p = parse_fen("rnb1k/ppppp/5/PPPPP/RNBQK w 0 1").unwrap();
        let mob = mobility(&p, Color::White) - mobility(&p, Color::Black);
        assert_eq!(evaluate(&p), 900 + 2 * mob);
        assert!(evaluate(&p) > 850);
    }
}
