//! Standard algebraic notation over files b..f and ranks 2..6.
//!
//! Output never uses `#`; a check is always written `+`. On input the check
//! suffix is ignored and recomputed, and `#`, `!`, `?` are accepted.

use super::position::Position;
use super::types::{file_index, rank_index, Kind, Move, Square};
use super::RulesError;

pub fn format_san(pos: &Position, m: &Move) -> String {
    let mut s = String::with_capacity(8);
    if m.piece == Kind::Pawn {
        if m.capture {
            s.push(m.from.file_char());
        }
    } else {
        s.push(m.piece.letter());
        let rivals: Vec<Square> = pos
            .legal_moves_unordered()
            .iter()
            .filter(|o| o.piece == m.piece && o.to == m.to && o.from != m.from)
            .map(|o| o.from)
            .collect();
        if !rivals.is_empty() {
            let file_unique = rivals.iter().all(|r| r.file() != m.from.file());
            let rank_unique = rivals.iter().all(|r| r.rank() != m.from.rank());
            if file_unique {
                s.push(m.from.file_char());
            } else if rank_unique {
                s.push(m.from.rank_char());
            } else {
                s.push(m.from.file_char());
                s.push(m.from.rank_char());
            }
        }
    }
    if m.capture {
        s.push('x');
    }
    s.push_str(&m.to.to_string());
    if let Some(p) = m.promotion {
        s.push('=');
        s.push(p.letter());
    }
    if pos.play(m).in_check() {
        s.push('+');
    }
    s
}

pub fn parse_san(pos: &Position, text: &str) -> Result<Move, RulesError> {
    let syntax = || RulesError::Syntax(format!("bad SAN {text:?}"));
    let mut body = text.trim().trim_end_matches(['+', '#', '!', '?']);
    let mut promotion = None;
    if let Some(last) = body.chars().last() {
        if matches!(last, 'Q' | 'R' | 'B' | 'N') && body.len() >= 3 {
            promotion = Kind::from_letter(last);
            body = &body[..body.len() - 1];
            body = body.strip_suffix('=').unwrap_or(body);
        }
    }
    if body.len() < 2 || !body.is_ascii() {
        return Err(syntax());
    }
    let to: Square = body[body.len() - 2..].parse().map_err(|_| syntax())?;
    let mut head = &body[..body.len() - 2];
    let capture = match head.strip_suffix('x') {
        Some(h) => {
            head = h;
            true
        }
        None => false,
    };
    let mut chars = head.chars().peekable();
    let piece = match chars.peek() {
        Some(&c) if c.is_ascii_uppercase() => {
            chars.next();
            match Kind::from_letter(c) {
                Some(Kind::Pawn) | None => return Err(syntax()),
                Some(k) => k,
            }
        }
        _ => Kind::Pawn,
    };
    let mut from_file = None;
    let mut from_rank = None;
    for c in chars {
        if let (Some(f), None, None) = (file_index(c), from_file, from_rank) {
            from_file = Some(f);
        } else if let (Some(r), None) = (rank_index(c), from_rank) {
            from_rank = Some(r);
        } else {
            return Err(syntax());
        }
    }
    if piece == Kind::Pawn && (from_rank.is_some() || (capture && from_file.is_none())) {
        return Err(syntax());
    }

    let candidates: Vec<Move> = pos
        .legal_moves()
        .into_iter()
        .filter(|m| {
            m.piece == piece
                && m.to == to
                && m.promotion == promotion
                && m.capture == capture
                && from_file.is_none_or(|f| m.from.file() == f)
                && from_rank.is_none_or(|r| m.from.rank() == r)
        })
        .collect();
    match candidates.as_slice() {
        [m] => Ok(*m),
        [] => Err(RulesError::UnmatchedSan(text.to_string())),
        _ => Err(RulesError::AmbiguousSan(text.to_string())),
    }
}

/// Replays a whitespace-separated SAN line from `pos`. Move numbers such as
/// `3.` or `3...`, optionally glued to the move (`3.exd5`), are skipped.
pub fn san_line(pos: &Position, text: &str) -> Result<(Vec<Move>, Position), RulesError> {
    let mut cur = *pos;
    let mut moves = Vec::new();
    for raw in text.split_whitespace() {
        let tok = raw.trim_start_matches(|c: char| c.is_ascii_digit() || c == '.');
        if tok.is_empty() {
            continue;
        }
        let m = parse_san(&cur, tok)?;
        cur = cur.play(&m);
        moves.push(m);
    }
    Ok((moves, cur))
}
