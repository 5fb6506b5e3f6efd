//! Two oracles playing each other.

use std::fmt::Write;

use serde::Serialize;

use super::numbered_line;
use crate::oracle::{Node, NodeKind, OracleDocument};
use crate::rules::{format_san, game_status, Color, GameStatus, Move, Position, RuleProfile};
use crate::search::{check_non_loss, evaluate, Budget};

/// Where an oracle stands during a game.
#[derive(Clone, Copy)]
enum Cursor<'a> {
    /// Still replaying the document's prefix moves.
    Prefix(usize),
    In(&'a Node),
    Left,
}

/// Tracks a game's moves through an oracle document.
pub struct Follower<'a> {
    doc: &'a OracleDocument,
    cursor: Cursor<'a>,
    left_at: Option<usize>,
}

impl<'a> Follower<'a> {
    pub fn new(doc: &'a OracleDocument) -> Follower<'a> {
        let cursor = if doc.prefix.is_empty() {
            Cursor::In(&doc.tree)
        } else {
            Cursor::Prefix(0)
        };
        Follower {
            doc,
            cursor,
            left_at: None,
        }
    }

    /// The oracle's move here, if the game is still inside its tree.
    pub fn own_move(&self) -> Option<Move> {
        match self.cursor {
            Cursor::In(Node {
                kind: NodeKind::Own(e),
                ..
            }) => Some(e.mv),
            _ => None,
        }
    }

    /// Ply at which the game left the document, if it has.
    pub fn left_at(&self) -> Option<usize> {
        self.left_at
    }

    /// Records move `m`, played as ply `ply` of the game.
    pub fn advance(&mut self, m: &Move, ply: usize) {
        self.cursor = match self.cursor {
            Cursor::Prefix(i) if self.doc.prefix[i] == *m => {
                if i + 1 == self.doc.prefix.len() {
                    Cursor::In(&self.doc.tree)
                } else {
                    Cursor::Prefix(i + 1)
                }
            }
            Cursor::In(node) => match node.edges().iter().find(|e| e.mv == *m) {
                Some(e) => Cursor::In(&e.node),
                None => Cursor::Left,
            },
            _ => Cursor::Left,
        };
        if matches!(self.cursor, Cursor::Left) && self.left_at.is_none() {
            self.left_at = Some(ply);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JointGame {
    pub moves: Vec<String>,
    pub line: String,
    pub status: GameStatus,
    pub drawn: bool,
    /// Ply at which each oracle ran out of tree, if it did.
    pub white_left_at: Option<usize>,
    pub black_left_at: Option<usize>,
}

impl JointGame {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "joint game: {}", self.line);
        let _ = writeln!(
            out,
            "  white oracle left at ply {}, black oracle left at ply {}",
            opt(self.white_left_at),
            opt(self.black_left_at)
        );
        let _ = writeln!(
            out,
            "  {} {}",
            if self.drawn { "PASS" } else { "FAIL" },
            self.status
        );
        out
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |p| p.to_string())
}

/// Move for a side that has run out of oracle: repeat a position if that is
/// safe, else keep the best two-ply evaluation among moves that avoid a
/// short forced mate.
pub fn shuffle_move(pos: &Position, history: &[u64]) -> Option<Move> {
    let me = pos.side_to_move();
    let mut best: Option<((usize, i32), Move)> = None;
    for m in pos.legal_moves() {
        let next = pos.play(&m);
        let (v, _) = check_non_loss(&next, me, 4, Budget::nodes(200_000));
        if !v.is_safe() {
            continue;
        }
        let repeats = history.iter().filter(|&&h| h == next.hash()).count();
        let score = (repeats, worst_reply(&next, me));
        if best.is_none_or(|(b, _)| score > b) {
            best = Some((score, m));
        }
    }
    best.map(|(_, m)| m)
        .or_else(|| pos.legal_moves().first().copied())
}

/// Evaluation for `me` after the opponent's most damaging reply.
fn worst_reply(pos: &Position, me: Color) -> i32 {
    let replies = pos.legal_moves();
    if replies.is_empty() {
        return if pos.in_check() { i32::MAX } else { 0 };
    }
    replies
        .iter()
        .map(|r| {
            let p = pos.play(r);
            if p.side_to_move() == me {
                evaluate(&p)
            } else {
                -evaluate(&p)
            }
        })
        .min()
        .unwrap_or(0)
}

/// Plays `white` against `black` from the common start until the game ends
/// or `max_plies` is reached. Sides off their oracle use [`shuffle_move`].
pub fn joint_game(
    white: &OracleDocument,
    black: &OracleDocument,
    profile: &RuleProfile,
    max_plies: usize,
) -> JointGame {
    let start = white.start;
    let mut w = Follower::new(white);
    let mut b = Follower::new(black);
    if black.start != start {
        b.cursor = Cursor::Left;
        b.left_at = Some(0);
    }
    let mut pos = start;
    let mut history: Vec<u64> = Vec::new();
    let mut moves = Vec::new();
    let mut status = game_status(&pos, &history, profile);
    while !status.is_over() && moves.len() < max_plies {
        let mover = match pos.side_to_move() {
            Color::White => &w,
            Color::Black => &b,
        };
        let m = mover
            .own_move()
            .filter(|m| pos.is_legal(m))
            .or_else(|| shuffle_move(&pos, &history))
            .expect("ongoing game has a legal move");
        let ply = moves.len();
        moves.push(format_san(&pos, &m));
        w.advance(&m, ply);
        b.advance(&m, ply);
        history.push(pos.hash());
        pos = pos.play(&m);
        status = game_status(&pos, &history, profile);
    }
    JointGame {
        line: numbered_line(&start, &moves),
        moves,
        status,
        drawn: status.is_draw(),
        white_left_at: w.left_at,
        black_left_at: b.left_at,
    }
}
