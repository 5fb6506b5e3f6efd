use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A set of squares, one bit per square (bit `rank * 5 + file`).
pub type Bitboard = u32;

pub const ALL_SQUARES: Bitboard = (1 << 25) - 1;

pub const FILE_NAMES: [char; 5] = ['b', 'c', 'd', 'e', 'f'];
pub const RANK_NAMES: [char; 5] = ['2', '3', '4', '5', '6'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::White, Color::Black];

    #[inline]
    pub fn opposite(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Rank index on which this color's pawns promote.
    #[inline]
    pub fn promotion_rank(self) -> u8 {
        match self {
            Color::White => 4,
            Color::Black => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Black => "black",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Color {
    type Err = ();

    fn from_str(s: &str) -> Result<Color, ()> {
        match s {
            "white" | "w" | "White" => Ok(Color::White),
            "black" | "b" | "Black" => Ok(Color::Black),
            _ => Err(()),
        }
    }
}

/// Piece kinds in move-ordering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Pawn,
    Knight,
    Bishop,
    Rook,
    Queen,
    King,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Pawn,
        Kind::Knight,
        Kind::Bishop,
        Kind::Rook,
        Kind::Queen,
        Kind::King,
    ];

    pub const PROMOTIONS: [Kind; 4] = [Kind::Queen, Kind::Rook, Kind::Bishop, Kind::Knight];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Uppercase letter as used in SAN and (for White) FEN.
    pub fn letter(self) -> char {
        match self {
            Kind::Pawn => 'P',
            Kind::Knight => 'N',
            Kind::Bishop => 'B',
            Kind::Rook => 'R',
            Kind::Queen => 'Q',
            Kind::King => 'K',
        }
    }

    pub fn from_letter(c: char) -> Option<Kind> {
        match c.to_ascii_uppercase() {
            'P' => Some(Kind::Pawn),
            'N' => Some(Kind::Knight),
            'B' => Some(Kind::Bishop),
            'R' => Some(Kind::Rook),
            'Q' => Some(Kind::Queen),
            'K' => Some(Kind::King),
            _ => None,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Kind::Pawn => 100,
            Kind::Knight | Kind::Bishop => 300,
            Kind::Rook => 500,
            Kind::Queen => 900,
            Kind::King => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub color: Color,
    pub kind: Kind,
}

impl Piece {
    pub fn new(color: Color, kind: Kind) -> Piece {
        Piece { color, kind }
    }

    pub fn fen_char(self) -> char {
        match self.color {
            Color::White => self.kind.letter(),
            Color::Black => self.kind.letter().to_ascii_lowercase(),
        }
    }

    pub fn from_fen_char(c: char) -> Option<Piece> {
        let kind = Kind::from_letter(c)?;
        let color = if c.is_ascii_uppercase() {
            Color::White
        } else {
            Color::Black
        };
        Some(Piece { color, kind })
    }
}

/// One of the 25 squares. Internally 0-based; displayed as files `b..f`
/// and ranks `2..6`, so the lower-left corner prints as `b2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square(u8);

impl Square {
    pub const COUNT: usize = 25;

    pub fn new(file: u8, rank: u8) -> Option<Square> {
        (file < 5 && rank < 5).then_some(Square(rank * 5 + file))
    }

    #[inline]
    pub fn from_index(index: usize) -> Square {
        debug_assert!(index < Self::COUNT);
        Square(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn file(self) -> u8 {
        self.0 % 5
    }

    #[inline]
    pub fn rank(self) -> u8 {
        self.0 / 5
    }

    #[inline]
    pub fn bit(self) -> Bitboard {
        1 << self.0
    }

    /// The square reached by a half-turn of the board.
    #[inline]
    pub fn rotated(self) -> Square {
        Square(24 - self.0)
    }

    /// Key for the display ordering: files left to right, then ranks top to bottom.
    #[inline]
    pub fn order_key(self) -> u8 {
        self.file() * 5 + (4 - self.rank())
    }

    pub fn all() -> impl Iterator<Item = Square> {
        (0..25u8).map(Square)
    }

    pub fn file_char(self) -> char {
        FILE_NAMES[self.file() as usize]
    }

    pub fn rank_char(self) -> char {
        RANK_NAMES[self.rank() as usize]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.file_char(), self.rank_char())
    }
}

impl FromStr for Square {
    type Err = ();

    fn from_str(s: &str) -> Result<Square, ()> {
        let mut chars = s.chars();
        let (Some(f), Some(r), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(());
        };
        let file = FILE_NAMES.iter().position(|&c| c == f).ok_or(())?;
        let rank = RANK_NAMES.iter().position(|&c| c == r).ok_or(())?;
        Ok(Square((rank * 5 + file) as u8))
    }
}

pub fn file_index(c: char) -> Option<u8> {
    FILE_NAMES.iter().position(|&f| f == c).map(|i| i as u8)
}

pub fn rank_index(c: char) -> Option<u8> {
    RANK_NAMES.iter().position(|&r| r == c).map(|i| i as u8)
}

/// Iterates the squares of a bitboard from the lowest index up.
pub struct Squares(Bitboard);

impl Iterator for Squares {
    type Item = Square;

    #[inline]
    fn next(&mut self) -> Option<Square> {
        if self.0 == 0 {
            return None;
        }
        let idx = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Square(idx as u8))
    }
}

#[inline]
pub fn squares(bb: Bitboard) -> Squares {
    Squares(bb)
}

/// A move. Castling and en passant do not exist in this variant, so a move is
/// fully described by its endpoints and an optional promotion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub piece: Kind,
    pub from: Square,
    pub to: Square,
    pub promotion: Option<Kind>,
    pub capture: bool,
}

impl Move {
    /// Long-algebraic form, e.g. `c5b4` or `c5c6q`.
    pub fn uci(&self) -> String {
        let mut s = format!("{}{}", self.from, self.to);
        if let Some(p) = self.promotion {
            s.push(p.letter().to_ascii_lowercase());
        }
        s
    }

    /// Sort key implementing the deterministic move order: pawns first,
    /// then N, B, R, Q, K; within a kind by origin then destination square.
    pub fn order_key(&self) -> u32 {
        let promo = match self.promotion {
            None => 0,
            Some(Kind::Queen) => 1,
            Some(Kind::Rook) => 2,
            Some(Kind::Bishop) => 3,
            Some(_) => 4,
        };
        (self.piece.index() as u32) << 24
            | (self.from.order_key() as u32) << 16
            | (self.to.order_key() as u32) << 8
            | promo
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.uci())
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.uci())
    }
}
