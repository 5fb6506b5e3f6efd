//! Reference move generator: a 5x5 mailbox scanned square by square.
//! Shares no code with the library apart from the FEN text it is fed.

#![allow(dead_code)]

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    White,
    Black,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Man {
    pub side: Side,
    pub letter: char, // uppercase: P N B R Q K
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Board {
    pub cells: [[Option<Man>; 5]; 5], // [rank][file], rank 0 = "2"
    pub to_move: Side,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct NaiveMove {
    pub from: (usize, usize), // (file, rank)
    pub to: (usize, usize),
    pub promo: Option<char>,
}

impl NaiveMove {
    pub fn uci(&self) -> String {
        let f = |(x, y): (usize, usize)| format!("{}{}", (b'b' + x as u8) as char, y + 2);
        let mut s = format!("{}{}", f(self.from), f(self.to));
        if let Some(p) = self.promo {
            s.push(p.to_ascii_lowercase());
        }
        s
    }
}

pub fn other(s: Side) -> Side {
    match s {
        Side::White => Side::Black,
        Side::Black => Side::White,
    }
}

impl Board {
    pub fn from_fen(fen: &str) -> Board {
        let mut parts = fen.split(' ');
        let rows = parts.next().unwrap();
        let side = parts.next().unwrap();
        let mut cells = [[None; 5]; 5];
        for (i, row) in rows.split('/').enumerate() {
            let rank = 4 - i;
            let mut file = 0;
            for c in row.chars() {
                if let Some(d) = c.to_digit(10) {
                    file += d as usize;
                } else {
                    let side = if c.is_ascii_uppercase() {
                        Side::White
                    } else {
                        Side::Black
                    };
                    cells[rank][file] = Some(Man {
                        side,
                        letter: c.to_ascii_uppercase(),
                    });
                    file += 1;
                }
            }
        }
        Board {
            cells,
            to_move: if side == "w" {
                Side::White
            } else {
                Side::Black
            },
        }
    }

    fn at(&self, f: i32, r: i32) -> Option<Option<Man>> {
        if (0..5).contains(&f) && (0..5).contains(&r) {
            Some(self.cells[r as usize][f as usize])
        } else {
            None
        }
    }

    /// Does any piece of `by` attack square (f, r)?
    pub fn attacked(&self, f: i32, r: i32, by: Side) -> bool {
        for rank in 0..5i32 {
            for file in 0..5i32 {
                let Some(Some(man)) = self.at(file, rank) else {
                    continue;
                };
                if man.side != by {
                    continue;
                }
                if self.piece_hits(file, rank, man, f, r) {
                    return true;
                }
            }
        }
        false
    }

    fn piece_hits(&self, pf: i32, pr: i32, man: Man, f: i32, r: i32) -> bool {
        let (df, dr) = (f - pf, r - pr);
        match man.letter {
            'P' => {
                let dir = if man.side == Side::White { 1 } else { -1 };
                dr == dir && df.abs() == 1
            }
            'N' => (df.abs() == 1 && dr.abs() == 2) || (df.abs() == 2 && dr.abs() == 1),
            'K' => df.abs() <= 1 && dr.abs() <= 1 && (df, dr) != (0, 0),
            'B' => df.abs() == dr.abs() && df != 0 && self.clear_between(pf, pr, f, r),
            'R' => (df == 0) != (dr == 0) && self.clear_between(pf, pr, f, r),
            'Q' => {
                (df.abs() == dr.abs() && df != 0 || (df == 0) != (dr == 0))
                    && self.clear_between(pf, pr, f, r)
            }
            _ => unreachable!(),
        }
    }

    fn clear_between(&self, pf: i32, pr: i32, f: i32, r: i32) -> bool {
        let (sf, sr) = ((f - pf).signum(), (r - pr).signum());
        let (mut x, mut y) = (pf + sf, pr + sr);
        while (x, y) != (f, r) {
            if self.cells[y as usize][x as usize].is_some() {
                return false;
            }
            x += sf;
            y += sr;
        }
        true
    }

    fn pseudo(&self) -> Vec<NaiveMove> {
        let me = self.to_move;
        let mut out = Vec::new();
        for r in 0..5i32 {
            for f in 0..5i32 {
                let Some(Some(man)) = self.at(f, r) else {
                    continue;
                };
                if man.side != me {
                    continue;
                }
                for tr in 0..5i32 {
                    for tf in 0..5i32 {
                        let target = self.cells[tr as usize][tf as usize];
                        if target.is_some_and(|t| t.side == me) {
                            continue;
                        }
                        let ok = if man.letter == 'P' {
                            let dir = if me == Side::White { 1 } else { -1 };
                            (tf == f && tr == r + dir && target.is_none())
                                || (target.is_some() && self.piece_hits(f, r, man, tf, tr))
                        } else {
                            self.piece_hits(f, r, man, tf, tr)
                        };
                        if !ok {
                            continue;
                        }
                        let from = (f as usize, r as usize);
                        let to = (tf as usize, tr as usize);
                        let last = if me == Side::White { 4 } else { 0 };
                        if man.letter == 'P' && tr == last {
                            for p in ['Q', 'R', 'B', 'N'] {
                                out.push(NaiveMove {
                                    from,
                                    to,
                                    promo: Some(p),
                                });
                            }
                        } else {
                            out.push(NaiveMove {
                                from,
                                to,
                                promo: None,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn play(&self, m: &NaiveMove) -> Board {
        let mut b = self.clone();
        let mut man = b.cells[m.from.1][m.from.0].take().unwrap();
        if let Some(p) = m.promo {
            man.letter = p;
        }
        b.cells[m.to.1][m.to.0] = Some(man);
        b.to_move = other(self.to_move);
        b
    }

    fn king(&self, side: Side) -> (i32, i32) {
        for r in 0..5 {
            for f in 0..5 {
                if self.cells[r][f] == Some(Man { side, letter: 'K' }) {
                    return (f as i32, r as i32);
                }
            }
        }
        panic!("no king");
    }

    pub fn in_check(&self, side: Side) -> bool {
        let (f, r) = self.king(side);
        self.attacked(f, r, other(side))
    }

    pub fn legal(&self) -> Vec<NaiveMove> {
        let me = self.to_move;
        let mut v: Vec<NaiveMove> = self
            .pseudo()
            .into_iter()
            .filter(|m| !self.play(m).in_check(me))
            .collect();
        v.sort();
        v
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let moves = self.legal();
        if depth == 1 {
            return moves.len() as u64;
        }
        moves.iter().map(|m| self.play(m).perft(depth - 1)).sum()
    }
}

pub const START: &str = "rnbqk/ppppp/5/PPPPP/RNBQK w 0 1";
