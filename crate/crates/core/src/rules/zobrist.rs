//! Zobrist keys. Generated once from a fixed seed so hashes are stable for a
//! given build and identical across threads.

use std::sync::LazyLock;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::types::{Color, Kind, Square};

struct Keys {
    pieces: [[[u64; 25]; 6]; 2],
    black_to_move: u64,
}

const SEED: u64 = 0x6761_7264_6e65_7235;

static KEYS: LazyLock<Keys> = LazyLock::new(|| {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut keys = Keys {
        pieces: [[[0; 25]; 6]; 2],
        black_to_move: 0,
    };
    for color in &mut keys.pieces {
        for kind in color.iter_mut() {
            for key in kind.iter_mut() {
                *key = rng.next_u64();
            }
        }
    }
    keys.black_to_move = rng.next_u64();
    keys
});

#[inline]
pub fn piece(color: Color, kind: Kind, sq: Square) -> u64 {
    KEYS.pieces[color.index()][kind.index()][sq.index()]
}

#[inline]
pub fn side() -> u64 {
    KEYS.black_to_move
}
