//! Seeded position samples shared by the property and acceptance tests.

#![allow(dead_code)]

use gardner::oracle::{bundled, bundled_document, Claim, NodeKind};
use gardner::rules::Position;
use gardner::search::MateQuery;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Position after `plies` random legal moves from the start.
pub fn random_game(seed: u64, plies: usize) -> Position {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = Position::initial();
    for _ in 0..plies {
        let moves = pos.legal_moves();
        match moves.choose(&mut rng) {
            Some(m) => pos = pos.play(m),
            None => break,
        }
    }
    pos
}

/// Fifty mate queries: the first thirty short mate claims of the bundled
/// documents, then mate-in-2 questions on random middlegames.
pub fn regression_queries() -> Vec<MateQuery> {
    let mut out = Vec::new();
    for entry in bundled() {
        let doc = bundled_document(entry.name).unwrap();
        doc.visit(&mut |v| {
            if let NodeKind::Leaf(l) = &v.node.kind {
                if let Claim::Mate { defender, moves } = l.claim {
                    if moves <= 6 && out.len() < 30 {
                        out.push(MateQuery::new(*v.pos, defender.opposite(), moves));
                    }
                }
            }
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    while out.len() < 50 {
        let pos = random_game(rng.gen(), rng.gen_range(6..30));
        if pos.has_legal_move() {
            out.push(MateQuery::new(pos, pos.side_to_move(), 2));
        }
    }
    out
}
