//! PGN export: one game per claim, i.e. per leaf and per default claim.

use super::model::{Claim, Leaf, NodeKind, OracleDocument};
use crate::rules::{format_fen, Color, Position};

fn result_for(claim: &Claim, at: &Position) -> &'static str {
    match claim {
        Claim::Mate {
            defender: Color::Black,
            ..
        } => "1-0",
        Claim::Mate {
            defender: Color::White,
            ..
        } => "0-1",
        Claim::Checkmate => match at.side_to_move() {
            Color::White => "0-1",
            Color::Black => "1-0",
        },
        Claim::Draw { .. } => "1/2-1/2",
        _ => "*",
    }
}

fn comment_for(leaf: &Leaf, default: bool) -> String {
    let body = match &leaf.claim {
        Claim::Mate { moves, .. } => format!("mate in <={moves}"),
        Claim::Checkmate => "checkmate".to_string(),
        Claim::Draw { reason } => format!("draw: {reason}"),
        Claim::CannotWin { side } => format!("{side} cannot win"),
        Claim::Ref { id } => format!("transposition to {id}"),
        Claim::Unverified { note } => format!("unverified: {note}"),
    };
    let mut s = if default {
        format!("{{any other move: {body}}}")
    } else {
        format!("{{{body}}}")
    };
    if let Some(note) = &leaf.note {
        s.push_str(&format!(" {{{}}}", note.replace('}', ")")));
    }
    s
}

/// SAN tokens with move numbers, as PGN movetext starting at `pos`.
fn numbered(pos: &Position, sans: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(sans.len() * 2);
    let mut n = pos.fullmove_number();
    let mut side = pos.side_to_move();
    for (i, san) in sans.iter().enumerate() {
        match side {
            Color::White => out.push(format!("{n}.")),
            Color::Black if i == 0 => out.push(format!("{n}...")),
            Color::Black => {}
        }
        out.push(san.clone());
        if side == Color::Black {
            n += 1;
        }
        side = side.opposite();
    }
    out
}

fn wrap(tokens: &[String], width: usize) -> String {
    let mut out = String::new();
    let mut line_len = 0;
    for t in tokens {
        if line_len > 0 && line_len + 1 + t.len() > width {
            out.push('\n');
            line_len = 0;
        } else if line_len > 0 {
            out.push(' ');
            line_len += 1;
        }
        out.push_str(t);
        line_len += t.len();
    }
    out
}

struct Game {
    moves: Vec<String>,
    leaf: Leaf,
    default: bool,
    variation: Option<String>,
    end: Position,
    before_last: Position,
}

pub fn export_pgn(doc: &OracleDocument) -> String {
    let mut games = Vec::new();
    let mut ids: Vec<Option<String>> = Vec::new();
    doc.visit(&mut |v| {
        ids.truncate(v.path.len());
        let nearest = v.node.id.clone().or_else(|| ids.last().cloned().flatten());
        ids.push(nearest.clone());
        let mut moves = doc.prefix_san.clone();
        moves.extend(v.moves.iter().cloned());
        let before_last = {
            let mut p = doc.start;
            let all: Vec<_> = doc
                .prefix
                .iter()
                .copied()
                .chain(path_moves(doc, v.path))
                .collect();
            for m in all.iter().take(all.len().saturating_sub(1)) {
                p = p.play(m);
            }
            p
        };
        let (leaf, default) = match &v.node.kind {
            NodeKind::Leaf(l) => (l.clone(), false),
            NodeKind::Opponent(op) => match &op.default {
                Some(d) => (d.clone(), true),
                None => return,
            },
            NodeKind::Own(_) => return,
        };
        games.push(Game {
            moves,
            leaf,
            default,
            variation: nearest,
            end: *v.pos,
            before_last,
        });
    });

    let mut out = String::new();
    for (i, g) in games.iter().enumerate() {
        let result = if g.default {
            "*"
        } else {
            result_for(&g.leaf.claim, &g.end)
        };
        out.push_str(&format!(
            "[Event \"Gardner minichess {} oracle\"]\n",
            doc.side
        ));
        out.push_str("[Site \"?\"]\n[Date \"????.??.??\"]\n");
        out.push_str(&format!("[Round \"{}\"]\n", i + 1));
        out.push_str("[White \"?\"]\n[Black \"?\"]\n");
        out.push_str(&format!("[Result \"{result}\"]\n"));
        out.push_str("[Variant \"Gardner 5x5\"]\n[SetUp \"1\"]\n");
        out.push_str(&format!("[FEN \"{}\"]\n", format_fen(&doc.start)));
        if let Some(id) = &g.variation {
            out.push_str(&format!("[Variation \"{id}\"]\n"));
        }
        out.push('\n');

        let mut tokens = numbered(&doc.start, &g.moves);
        tokens.push(comment_for(&g.leaf, g.default));
        if !g.leaf.justify_san.is_empty() {
            match g.moves.last() {
                Some(last) if !g.default => {
                    let mut line = vec![last.clone()];
                    line.extend(g.leaf.justify_san.iter().cloned());
                    let mut rav = numbered(&g.before_last, &line);
                    rav[0] = format!("({}", rav[0]);
                    let n = rav.len();
                    rav[n - 1].push(')');
                    tokens.extend(rav);
                }
                _ => {
                    let text = numbered(&g.end, &g.leaf.justify_san).join(" ");
                    tokens.push(format!("{{e.g. {text}}}"));
                }
            }
        }
        tokens.push(result.to_string());
        out.push_str(&wrap(&tokens, 79));
        out.push_str("\n\n");
    }
    out
}

fn path_moves(doc: &OracleDocument, path: &[usize]) -> Vec<crate::rules::Move> {
    let mut node = &doc.tree;
    let mut out = Vec::with_capacity(path.len());
    for &i in path {
        let e = &node.edges()[i];
        out.push(e.mv);
        node = &e.node;
    }
    out
}
