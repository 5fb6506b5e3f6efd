//! Canonical `.gdo` writer. `parse_oracle(print_oracle(d)) == d` for every
//! document, and printing is a fixpoint after one parse.

use std::fmt::Write;

use super::model::{Claim, Edge, Leaf, Node, NodeKind, OracleDocument};
use crate::rules::{format_fen, Position};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub(crate) fn claim_text(claim: &Claim) -> String {
    match claim {
        Claim::Mate { defender, moves } => format!("mate {defender} {moves}"),
        Claim::Checkmate => "checkmate".into(),
        Claim::Draw { reason } => format!("draw {}", quote(reason)),
        Claim::CannotWin { side } => format!("cannotwin {side}"),
        Claim::Ref { id } => format!("ref {id}"),
        Claim::Unverified { note } => format!("unverified {}", quote(note)),
    }
}

fn leaf_text(leaf: &Leaf) -> String {
    let mut s = claim_text(&leaf.claim);
    if let Some(note) = &leaf.note {
        s.push(' ');
        s.push_str(&quote(note));
    }
    if !leaf.justify_san.is_empty() {
        s.push_str(" justify ");
        s.push_str(&quote(&leaf.justify_san.join(" ")));
    }
    s
}

/// Moves and final leaf of a branch that prints as a single `=>` line.
fn as_chain(edge: &Edge) -> Option<(Vec<&str>, &Node)> {
    let mut sans = vec![edge.san.as_str()];
    let mut node = &edge.node;
    loop {
        match &node.kind {
            NodeKind::Leaf(_) => return Some((sans, node)),
            NodeKind::Own(own) if node.id.is_none() => {
                sans.push(&own.san);
                match &own.node.kind {
                    NodeKind::Leaf(_) => return Some((sans, &own.node)),
                    NodeKind::Opponent(op)
                        if own.node.id.is_none()
                            && op.default.is_none()
                            && op.branches.len() == 1 =>
                    {
                        sans.push(&op.branches[0].san);
                        node = &op.branches[0].node;
                    }
                    _ => return None,
                }
            }
            _ => return None,
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn print_node(out: &mut String, node: &Node, depth: usize) {
    if let Some(id) = &node.id {
        indent(out, depth);
        let _ = writeln!(out, "id {id}");
    }
    match &node.kind {
        NodeKind::Own(edge) => {
            indent(out, depth);
            let _ = writeln!(out, "move {}", edge.san);
            print_node(out, &edge.node, depth);
        }
        NodeKind::Leaf(leaf) => {
            indent(out, depth);
            let _ = writeln!(out, "leaf {}", leaf_text(leaf));
        }
        NodeKind::Opponent(op) => {
            indent(out, depth);
            out.push_str("opponent {\n");
            for edge in &op.branches {
                match as_chain(edge) {
                    Some((sans, last)) => {
                        let NodeKind::Leaf(leaf) = &last.kind else {
                            unreachable!()
                        };
                        if let Some(id) = &last.id {
                            indent(out, depth + 1);
                            let _ = writeln!(out, "id {id}");
                        }
                        indent(out, depth + 1);
                        let _ = writeln!(out, "{} => {}", sans.join(" "), leaf_text(leaf));
                    }
                    None => {
                        indent(out, depth + 1);
                        let _ = writeln!(out, "{} -> {{", edge.san);
                        print_node(out, &edge.node, depth + 2);
                        indent(out, depth + 1);
                        out.push_str("}\n");
                    }
                }
            }
            if let Some(d) = &op.default {
                indent(out, depth + 1);
                let _ = writeln!(out, "default {}", leaf_text(d));
            }
            indent(out, depth);
            out.push_str("}\n");
        }
    }
}

pub fn print_oracle(doc: &OracleDocument) -> String {
    let mut out = format!("oracle {}\n", doc.side);
    if doc.start != Position::initial() {
        let _ = writeln!(out, "root {}", quote(&format_fen(&doc.start)));
    }
    if !doc.prefix_san.is_empty() {
        let _ = writeln!(out, "after {}", quote(&doc.prefix_san.join(" ")));
    }
    print_node(&mut out, &doc.tree, 0);
    out
}
