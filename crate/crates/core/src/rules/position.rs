use arrayvec::ArrayVec;

use super::attacks;
use super::types::{squares, Bitboard, Color, Kind, Move, Piece, Square};
use super::zobrist;
use super::RulesError;

/// Upper bound on the number of pseudo-legal moves in any position.
pub const MAX_MOVES: usize = 160;

pub type MoveList = ArrayVec<Move, MAX_MOVES>;

/// Complete game state of a 5x5 board. Value type; `play` returns a new
/// position and leaves the receiver untouched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    by_kind: [Bitboard; 6],
    by_color: [Bitboard; 2],
    side: Color,
    halfmove_clock: u32,
    fullmove_number: u32,
    hash: u64,
}

/// State needed to take back a move made with [`Position::make`].
#[derive(Clone, Copy, Debug)]
pub struct Undo {
    captured: Option<Kind>,
    halfmove_clock: u32,
    fullmove_number: u32,
    hash: u64,
}

const BACK_RANK: [Kind; 5] = [
    Kind::Rook,
    Kind::Knight,
    Kind::Bishop,
    Kind::Queen,
    Kind::King,
];

impl Position {
    /// Start position: `rnbqk/ppppp/5/PPPPP/RNBQK w 0 1`.
    pub fn initial() -> Position {
        let mut pieces = Vec::with_capacity(20);
        for (file, &kind) in BACK_RANK.iter().enumerate() {
            let f = file as u8;
            pieces.push((Square::new(f, 0).unwrap(), Piece::new(Color::White, kind)));
            pieces.push((
                Square::new(f, 1).unwrap(),
                Piece::new(Color::White, Kind::Pawn),
            ));
            pieces.push((
                Square::new(f, 3).unwrap(),
                Piece::new(Color::Black, Kind::Pawn),
            ));
            pieces.push((Square::new(f, 4).unwrap(), Piece::new(Color::Black, kind)));
        }
        Position::from_parts(&pieces, Color::White, 0, 1).expect("start position is legal")
    }

    /// Builds a position and checks every structural invariant.
    pub fn from_parts(
        pieces: &[(Square, Piece)],
        side: Color,
        halfmove_clock: u32,
        fullmove_number: u32,
    ) -> Result<Position, RulesError> {
        let mut pos = Position {
            by_kind: [0; 6],
            by_color: [0; 2],
            side,
            halfmove_clock,
            fullmove_number,
            hash: 0,
        };
        for &(sq, piece) in pieces {
            if pos.occupied() & sq.bit() != 0 {
                return Err(RulesError::InvariantViolation(format!(
                    "two pieces on {sq}"
                )));
            }
            pos.put(sq, piece);
        }
        pos.hash = pos.compute_hash();
        pos.validate()?;
        Ok(pos)
    }

    fn validate(&self) -> Result<(), RulesError> {
        let bad = |msg: String| Err(RulesError::InvariantViolation(msg));
        if self.fullmove_number == 0 {
            return bad("fullmove number must be at least 1".into());
        }
        for color in Color::BOTH {
            let kings = self.pieces(color, Kind::King).count_ones();
            if kings != 1 {
                return bad(format!("{color} has {kings} kings"));
            }
            let pawns = self.pieces(color, Kind::Pawn);
            if pawns.count_ones() > 5 {
                return bad(format!("{color} has more than 5 pawns"));
            }
            if self.by_color[color.index()].count_ones() > 10 {
                return bad(format!("{color} has more than 10 pieces"));
            }
            if squares(pawns).any(|sq| sq.rank() == color.promotion_rank()) {
                return bad(format!("{color} pawn on its promotion rank"));
            }
        }
        let wk = self.king_square(Color::White);
        let bk = self.king_square(Color::Black);
        if attacks::king(wk) & bk.bit() != 0 {
            return bad("kings are adjacent".into());
        }
        if self.is_in_check(self.side.opposite()) {
            return bad(format!(
                "{} is in check but not to move",
                self.side.opposite()
            ));
        }
        Ok(())
    }

    #[inline]
    fn put(&mut self, sq: Square, piece: Piece) {
        self.by_kind[piece.kind.index()] |= sq.bit();
        self.by_color[piece.color.index()] |= sq.bit();
    }

    #[inline]
    fn remove(&mut self, sq: Square, piece: Piece) {
        self.by_kind[piece.kind.index()] &= !sq.bit();
        self.by_color[piece.color.index()] &= !sq.bit();
    }

    pub fn compute_hash(&self) -> u64 {
        let mut h = 0;
        for color in Color::BOTH {
            for kind in Kind::ALL {
                for sq in squares(self.pieces(color, kind)) {
                    h ^= zobrist::piece(color, kind, sq);
                }
            }
        }
        if self.side == Color::Black {
            h ^= zobrist::side();
        }
        h
    }

    #[inline]
    pub fn hash(&self) -> u64 {
        self.hash
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side
    }

    #[inline]
    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    #[inline]
    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    #[inline]
    pub fn occupied(&self) -> Bitboard {
        self.by_color[0] | self.by_color[1]
    }

    #[inline]
    pub fn color_bb(&self, color: Color) -> Bitboard {
        self.by_color[color.index()]
    }

    #[inline]
    pub fn kind_bb(&self, kind: Kind) -> Bitboard {
        self.by_kind[kind.index()]
    }

    #[inline]
    pub fn pieces(&self, color: Color, kind: Kind) -> Bitboard {
        self.by_color[color.index()] & self.by_kind[kind.index()]
    }

    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        let bit = sq.bit();
        let color = if self.by_color[0] & bit != 0 {
            Color::White
        } else if self.by_color[1] & bit != 0 {
            Color::Black
        } else {
            return None;
        };
        let kind = Kind::ALL
            .into_iter()
            .find(|k| self.by_kind[k.index()] & bit != 0)?;
        Some(Piece::new(color, kind))
    }

    #[inline]
    fn kind_at(&self, sq: Square) -> Option<Kind> {
        let bit = sq.bit();
        Kind::ALL
            .into_iter()
            .find(|k| self.by_kind[k.index()] & bit != 0)
    }

    /// All pieces on the board in square-index order.
    pub fn placement(&self) -> Vec<(Square, Piece)> {
        Square::all()
            .filter_map(|sq| self.piece_at(sq).map(|p| (sq, p)))
            .collect()
    }

    #[inline]
    pub fn king_square(&self, color: Color) -> Square {
        let bb = self.pieces(color, Kind::King);
        debug_assert!(bb != 0);
        Square::from_index(bb.trailing_zeros() as usize)
    }

    /// Pieces of `by` attacking `sq` given occupancy `occupied`.
    #[inline]
    pub fn attackers(&self, sq: Square, by: Color, occupied: Bitboard) -> Bitboard {
        let them = self.by_color[by.index()];
        let diag = self.by_kind[Kind::Bishop.index()] | self.by_kind[Kind::Queen.index()];
        let orth = self.by_kind[Kind::Rook.index()] | self.by_kind[Kind::Queen.index()];
        them & ((attacks::knight(sq) & self.by_kind[Kind::Knight.index()])
            | (attacks::king(sq) & self.by_kind[Kind::King.index()])
            | (attacks::pawn(by.opposite(), sq) & self.by_kind[Kind::Pawn.index()])
            | (attacks::bishop(sq, occupied) & diag)
            | (attacks::rook(sq, occupied) & orth))
    }

    #[inline]
    pub fn is_attacked(&self, sq: Square, by: Color) -> bool {
        self.attackers(sq, by, self.occupied()) != 0
    }

    /// True iff `color`'s king is attacked.
    #[inline]
    pub fn is_in_check(&self, color: Color) -> bool {
        self.is_attacked(self.king_square(color), color.opposite())
    }

    #[inline]
    pub fn in_check(&self) -> bool {
        self.is_in_check(self.side)
    }

    /// Squares attacked by one piece standing on `sq`.
    pub fn piece_attacks(&self, sq: Square, piece: Piece) -> Bitboard {
        let occ = self.occupied();
        match piece.kind {
            Kind::Pawn => attacks::pawn(piece.color, sq),
            Kind::Knight => attacks::knight(sq),
            Kind::Bishop => attacks::bishop(sq, occ),
            Kind::Rook => attacks::rook(sq, occ),
            Kind::Queen => attacks::queen(sq, occ),
            Kind::King => attacks::king(sq),
        }
    }

    /// Pseudo-legal moves for `color` (ignoring whose turn it is), in
    /// generation order.
    pub fn pseudo_moves_for(&self, color: Color, out: &mut MoveList) {
        let us = self.by_color[color.index()];
        let them = self.by_color[color.opposite().index()];
        let occ = us | them;
        let push = |out: &mut MoveList, piece, from: Square, to: Square, promo| {
            out.push(Move {
                piece,
                from,
                to,
                promotion: promo,
                capture: them & to.bit() != 0,
            });
        };

        let promo_rank = color.promotion_rank();
        for from in squares(self.pieces(color, Kind::Pawn)) {
            let forward = match color {
                Color::White => Square::new(from.file(), from.rank() + 1),
                Color::Black => from
                    .rank()
                    .checked_sub(1)
                    .and_then(|r| Square::new(from.file(), r)),
            };
            let mut targets = attacks::pawn(color, from) & them;
            if let Some(f) = forward.filter(|f| occ & f.bit() == 0) {
                targets |= f.bit();
            }
            for to in squares(targets) {
                if to.rank() == promo_rank {
                    for promo in Kind::PROMOTIONS {
                        push(out, Kind::Pawn, from, to, Some(promo));
                    }
                } else {
                    push(out, Kind::Pawn, from, to, None);
                }
            }
        }
        for kind in [
            Kind::Knight,
            Kind::Bishop,
            Kind::Rook,
            Kind::Queen,
            Kind::King,
        ] {
            for from in squares(self.pieces(color, kind)) {
                let targets = match kind {
                    Kind::Knight => attacks::knight(from),
                    Kind::Bishop => attacks::bishop(from, occ),
                    Kind::Rook => attacks::rook(from, occ),
                    Kind::Queen => attacks::queen(from, occ),
                    _ => attacks::king(from),
                } & !us;
                for to in squares(targets) {
                    push(out, kind, from, to, None);
                }
            }
        }
    }

    /// Whether `m` (assumed pseudo-legal for the side to move) keeps the
    /// mover's king safe.
    #[inline]
    pub fn is_legal_pseudo(&self, m: &Move) -> bool {
        let us = self.side;
        let occ = (self.occupied() & !m.from.bit()) | m.to.bit();
        let king = if m.piece == Kind::King {
            m.to
        } else {
            self.king_square(us)
        };
        // Captured piece no longer attacks.
        let not_captured = !m.to.bit();
        let them = self.by_color[us.opposite().index()] & not_captured;
        let diag = (self.by_kind[Kind::Bishop.index()] | self.by_kind[Kind::Queen.index()]) & them;
        let orth = (self.by_kind[Kind::Rook.index()] | self.by_kind[Kind::Queen.index()]) & them;
        let attackers = (attacks::knight(king) & self.by_kind[Kind::Knight.index()] & them)
            | (attacks::king(king) & self.by_kind[Kind::King.index()] & them)
            | (attacks::pawn(us, king) & self.by_kind[Kind::Pawn.index()] & them)
            | (attacks::bishop(king, occ) & diag)
            | (attacks::rook(king, occ) & orth);
        attackers == 0
    }

    /// Legal moves in the deterministic display order.
    pub fn legal_moves(&self) -> MoveList {
        let mut moves = self.legal_moves_unordered();
        moves.sort_unstable_by_key(Move::order_key);
        moves
    }

    /// Legal moves in generation order (cheaper; used by search).
    pub fn legal_moves_unordered(&self) -> MoveList {
        let mut pseudo = MoveList::new();
        self.pseudo_moves_for(self.side, &mut pseudo);
        pseudo.retain(|m| self.is_legal_pseudo(m));
        pseudo
    }

    pub fn has_legal_move(&self) -> bool {
        let mut pseudo = MoveList::new();
        self.pseudo_moves_for(self.side, &mut pseudo);
        pseudo.iter().any(|m| self.is_legal_pseudo(m))
    }

    pub fn is_legal(&self, m: &Move) -> bool {
        self.legal_moves_unordered().contains(m)
    }

    /// Plays a move known to be legal, returning the new position.
    #[inline]
    pub fn play(&self, m: &Move) -> Position {
        let mut next = *self;
        next.make(m);
        next
    }

    /// Plays `m` after checking that it is legal here.
    pub fn apply_move(&self, m: &Move) -> Result<Position, RulesError> {
        if !self.is_legal(m) {
            return Err(RulesError::IllegalMove(m.uci()));
        }
        Ok(self.play(m))
    }

    /// Makes a legal move in place, returning what [`Position::unmake`] needs.
    pub fn make(&mut self, m: &Move) -> Undo {
        let us = self.side;
        let them = us.opposite();
        let undo = Undo {
            captured: None,
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
            hash: self.hash,
        };
        let captured = if m.capture { self.kind_at(m.to) } else { None };
        if let Some(kind) = captured {
            self.remove(m.to, Piece::new(them, kind));
            self.hash ^= zobrist::piece(them, kind, m.to);
        }
        self.remove(m.from, Piece::new(us, m.piece));
        self.hash ^= zobrist::piece(us, m.piece, m.from);
        let placed = m.promotion.unwrap_or(m.piece);
        self.put(m.to, Piece::new(us, placed));
        self.hash ^= zobrist::piece(us, placed, m.to);

        if m.piece == Kind::Pawn || captured.is_some() {
            self.halfmove_clock = 0;
        } else {
            self.halfmove_clock += 1;
        }
        if us == Color::Black {
            self.fullmove_number += 1;
        }
        self.side = them;
        self.hash ^= zobrist::side();
        Undo { captured, ..undo }
    }

    /// Takes back `m`, which must be the last move made with [`Position::make`].
    pub fn unmake(&mut self, m: &Move, undo: &Undo) {
        let them = self.side;
        let us = them.opposite();
        let placed = m.promotion.unwrap_or(m.piece);
        self.remove(m.to, Piece::new(us, placed));
        self.put(m.from, Piece::new(us, m.piece));
        if let Some(kind) = undo.captured {
            self.put(m.to, Piece::new(them, kind));
        }
        self.side = us;
        self.halfmove_clock = undo.halfmove_clock;
        self.fullmove_number = undo.fullmove_number;
        self.hash = undo.hash;
    }

    /// Half-turn rotation of the board with colors swapped (side to move too).
    pub fn mirrored(&self) -> Position {
        let pieces: Vec<(Square, Piece)> = self
            .placement()
            .into_iter()
            .map(|(sq, p)| (sq.rotated(), Piece::new(p.color.opposite(), p.kind)))
            .collect();
        let mut pos = Position {
            by_kind: [0; 6],
            by_color: [0; 2],
            side: self.side.opposite(),
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
            hash: 0,
        };
        for (sq, p) in pieces {
            pos.put(sq, p);
        }
        pos.hash = pos.compute_hash();
        pos
    }

    /// Same position with the turn passed to the other side, if that is legal.
    pub fn with_side_to_move(&self, side: Color) -> Result<Position, RulesError> {
        Position::from_parts(
            &self.placement(),
            side,
            self.halfmove_clock,
            self.fullmove_number,
        )
    }

    /// Material of `color` in centipawns (kings excluded).
    pub fn material(&self, color: Color) -> i32 {
        Kind::ALL
            .into_iter()
            .map(|k| k.value() * self.pieces(color, k).count_ones() as i32)
            .sum()
    }

    /// Perft by make/unmake.
    pub fn perft(&self, depth: u32) -> u64 {
        fn go(pos: &mut Position, depth: u32) -> u64 {
            let moves = pos.legal_moves_unordered();
            if depth == 1 {
                return moves.len() as u64;
            }
            let mut total = 0;
            for m in &moves {
                let undo = pos.make(m);
                total += go(pos, depth - 1);
                pos.unmake(m, &undo);
            }
            total
        }
        if depth == 0 {
            return 1;
        }
        let mut pos = *self;
        go(&mut pos, depth)
    }

    /// Per-root-move perft counts in display order.
    pub fn perft_divide(&self, depth: u32) -> Vec<(Move, u64)> {
        if depth == 0 {
            return Vec::new();
        }
        self.legal_moves()
            .into_iter()
            .map(|m| (m, self.play(&m).perft(depth - 1)))
            .collect()
    }
}

impl Default for Position {
    fn default() -> Position {
        Position::initial()
    }
}
