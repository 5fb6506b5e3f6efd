//! Four-field FEN for the 5x5 board: placement, side, halfmove clock,
//! fullmove number. No castling or en-passant fields.

use super::position::Position;
use super::types::{Color, Piece, Square};
use super::RulesError;

pub const START_FEN: &str = "rnbqk/ppppp/5/PPPPP/RNBQK w 0 1";

pub fn parse_fen(text: &str) -> Result<Position, RulesError> {
    let syntax = |msg: &str| RulesError::Syntax(format!("{msg} in FEN {text:?}"));
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(syntax("expected 4 fields"));
    }
    let rows: Vec<&str> = fields[0].split('/').collect();
    if rows.len() != 5 {
        return Err(syntax("expected 5 ranks"));
    }
    let mut pieces = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let rank = 4 - i as u8;
        let mut file = 0u8;
        for c in row.chars() {
            if let Some(d) = c.to_digit(10) {
                if d == 0 {
                    return Err(syntax("zero run length"));
                }
                file += d as u8;
            } else {
                let piece = Piece::from_fen_char(c).ok_or_else(|| syntax("bad piece letter"))?;
                let sq = Square::new(file, rank).ok_or_else(|| syntax("rank too long"))?;
                pieces.push((sq, piece));
                file += 1;
            }
            if file > 5 {
                return Err(syntax("rank too long"));
            }
        }
        if file != 5 {
            return Err(syntax("rank too short"));
        }
    }
    let side = match fields[1] {
        "w" => Color::White,
        "b" => Color::Black,
        _ => return Err(syntax("side must be w or b")),
    };
    let halfmove: u32 = fields[2]
        .parse()
        .map_err(|_| syntax("bad halfmove clock"))?;
    let fullmove: u32 = fields[3]
        .parse()
        .map_err(|_| syntax("bad fullmove number"))?;
    Position::from_parts(&pieces, side, halfmove, fullmove)
}

pub fn format_fen(pos: &Position) -> String {
    let mut out = String::with_capacity(40);
    for rank in (0..5u8).rev() {
        let mut empty = 0;
        for file in 0..5u8 {
            match pos.piece_at(Square::new(file, rank).unwrap()) {
                Some(p) => {
                    if empty > 0 {
                        out.push(char::from(b'0' + empty));
                        empty = 0;
                    }
                    out.push(p.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            out.push(char::from(b'0' + empty));
        }
        if rank > 0 {
            out.push('/');
        }
    }
    let side = match pos.side_to_move() {
        Color::White => 'w',
        Color::Black => 'b',
    };
    out.push_str(&format!(
        " {side} {} {}",
        pos.halfmove_clock(),
        pos.fullmove_number()
    ));
    out
}

impl std::str::FromStr for Position {
    type Err = RulesError;

    fn from_str(s: &str) -> Result<Position, RulesError> {
        parse_fen(s)
    }
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_fen(self))
    }
}
