//! Precomputed attack tables for the 5x5 board.

use std::sync::LazyLock;

use super::types::{Bitboard, Color, Square};

// (file delta, rank delta)
const DIRECTIONS: [(i8, i8); 8] = [
    (0, 1),   // north
    (1, 0),   // east
    (1, 1),   // north-east
    (-1, 1),  // north-west
    (0, -1),  // south
    (-1, 0),  // west
    (-1, -1), // south-west
    (1, -1),  // south-east
];

const ROOK_DIRS: [usize; 4] = [0, 1, 4, 5];
const BISHOP_DIRS: [usize; 4] = [2, 3, 6, 7];

struct Tables {
    knight: [Bitboard; 25],
    king: [Bitboard; 25],
    // pawn[color][sq]: squares attacked by a pawn of `color` standing on `sq`
    pawn: [[Bitboard; 25]; 2],
    rays: [[Bitboard; 25]; 8],
}

fn offset(sq: usize, df: i8, dr: i8) -> Option<usize> {
    let f = (sq % 5) as i8 + df;
    let r = (sq / 5) as i8 + dr;
    ((0..5).contains(&f) && (0..5).contains(&r)).then(|| (r * 5 + f) as usize)
}

fn leaper(sq: usize, deltas: &[(i8, i8)]) -> Bitboard {
    deltas
        .iter()
        .filter_map(|&(df, dr)| offset(sq, df, dr))
        .fold(0, |bb, t| bb | 1 << t)
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    const KNIGHT: [(i8, i8); 8] = [
        (1, 2),
        (2, 1),
        (2, -1),
        (1, -2),
        (-1, -2),
        (-2, -1),
        (-2, 1),
        (-1, 2),
    ];
    let mut t = Tables {
        knight: [0; 25],
        king: [0; 25],
        pawn: [[0; 25]; 2],
        rays: [[0; 25]; 8],
    };
    for sq in 0..25 {
        t.knight[sq] = leaper(sq, &KNIGHT);
        t.king[sq] = leaper(sq, &DIRECTIONS);
        t.pawn[0][sq] = leaper(sq, &[(-1, 1), (1, 1)]);
        t.pawn[1][sq] = leaper(sq, &[(-1, -1), (1, -1)]);
        for (d, &(df, dr)) in DIRECTIONS.iter().enumerate() {
            let mut bb = 0;
            let mut cur = sq;
            while let Some(next) = offset(cur, df, dr) {
                bb |= 1 << next;
                cur = next;
            }
            t.rays[d][sq] = bb;
        }
    }
    t
});

#[inline]
pub fn knight(sq: Square) -> Bitboard {
    TABLES.knight[sq.index()]
}

#[inline]
pub fn king(sq: Square) -> Bitboard {
    TABLES.king[sq.index()]
}

#[inline]
pub fn pawn(color: Color, sq: Square) -> Bitboard {
    TABLES.pawn[color.index()][sq.index()]
}

#[inline]
fn slide(sq: Square, occupied: Bitboard, dirs: &[usize; 4]) -> Bitboard {
    let t = &*TABLES;
    let mut attacks = 0;
    for &d in dirs {
        let ray = t.rays[d][sq.index()];
        let blockers = ray & occupied;
        if blockers == 0 {
            attacks |= ray;
            continue;
        }
        // Directions 0..4 increase the square index, 4..8 decrease it.
        let first = if d < 4 {
            blockers.trailing_zeros()
        } else {
            31 - blockers.leading_zeros()
        };
        attacks |= ray ^ t.rays[d][first as usize];
    }
    attacks
}

#[inline]
pub fn rook(sq: Square, occupied: Bitboard) -> Bitboard {
    slide(sq, occupied, &ROOK_DIRS)
}

#[inline]
pub fn bishop(sq: Square, occupied: Bitboard) -> Bitboard {
    slide(sq, occupied, &BISHOP_DIRS)
}

#[inline]
pub fn queen(sq: Square, occupied: Bitboard) -> Bitboard {
    rook(sq, occupied) | bishop(sq, occupied)
}
