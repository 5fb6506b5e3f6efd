//! Bounded forced-mate prover: iterative deepening over attacker moves,
//! depth-first AND/OR search, per-query transposition table.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::tt::Table;
use crate::rules::{Color, Kind, Move, MoveList, Position};

/// Resource limits for one query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub nodes: u64,
    /// Wall-clock limit; ignored when `deterministic` is set.
    pub time: Option<Duration>,
    pub deterministic: bool,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            nodes: 10_000_000,
            time: Some(Duration::from_secs(60)),
            deterministic: false,
        }
    }
}

impl Budget {
    pub fn nodes(nodes: u64) -> Budget {
        Budget {
            nodes,
            time: None,
            deterministic: true,
        }
    }

    fn time_limit(&self) -> Option<Duration> {
        if self.deterministic {
            None
        } else {
            self.time
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exhausted {
    Nodes,
    Time,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MateStatus {
    /// Mate in `moves` attacker moves; `pv` alternates from the root side to move.
    Proven {
        moves: u32,
        pv: Vec<Move>,
    },
    /// No forced mate within the bound.
    Disproven,
    Unknown {
        exhausted: Exhausted,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateResult {
    pub status: MateStatus,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl MateResult {
    pub fn is_proven(&self) -> bool {
        matches!(self.status, MateStatus::Proven { .. })
    }

    pub fn is_disproven(&self) -> bool {
        self.status == MateStatus::Disproven
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MateQuery {
    pub position: Position,
    pub attacker: Color,
    /// Attacker moves allowed, counted from the query position.
    pub max_moves: u32,
    pub budget: Budget,
    pub use_tt: bool,
}

impl MateQuery {
    pub fn new(position: Position, attacker: Color, max_moves: u32) -> MateQuery {
        MateQuery {
            position,
            attacker,
            max_moves,
            budget: Budget::default(),
            use_tt: true,
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> MateQuery {
        self.budget = budget;
        self
    }

    pub fn without_tt(mut self) -> MateQuery {
        self.use_tt = false;
        self
    }

    /// Plies searched: `2x` with the defender to move, `2x - 1` otherwise.
    pub fn ply_bound(&self) -> u32 {
        if self.position.side_to_move() == self.attacker {
            (2 * self.max_moves).saturating_sub(1)
        } else {
            2 * self.max_moves
        }
    }
}

/// Result of a search call: (mate found, result depended on a path cycle).
type Outcome = Result<(bool, bool), Exhausted>;

struct Searcher {
    tt: Option<Table>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    path: Vec<u64>,
}

const TIME_CHECK_MASK: u64 = 0xfff;

impl Searcher {
    fn tick(&mut self) -> Result<(), Exhausted> {
        if self.nodes >= self.max_nodes {
            return Err(Exhausted::Nodes);
        }
        self.nodes += 1;
        if self.nodes & TIME_CHECK_MASK == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Exhausted::Time);
                }
            }
        }
        Ok(())
    }

    fn probe(&self, key: u64, n: u32) -> Option<bool> {
        self.tt.as_ref().and_then(|t| t.probe(key, n))
    }

    fn best(&self, key: u64) -> Option<Move> {
        self.tt.as_ref().and_then(|t| t.best(key))
    }

    fn proof(&mut self, key: u64, n: u32, best: Option<Move>) {
        if let Some(t) = self.tt.as_mut() {
            t.store_proof(key, n, best);
        }
    }

    fn disproof(&mut self, key: u64, n: u32, refutation: Option<Move>) {
        if let Some(t) = self.tt.as_mut() {
            t.store_disproof(key, n, refutation);
        }
    }

    /// Attacker to move with `n` moves left, the last of which must mate.
    fn attack(&mut self, pos: &mut Position, n: u32) -> Outcome {
        self.tick()?;
        if n == 0 {
            return Ok((false, false));
        }
        let key = pos.hash();
        if let Some(known) = self.probe(key, n) {
            return Ok((known, false));
        }
        if self.path.contains(&key) {
            return Ok((false, true));
        }
        let moves = self.attacker_moves(pos, n, key);
        self.path.push(key);
        let mut tainted = false;
        for m in &moves {
            let undo = pos.make(m);
            let r = self.defend(pos, n);
            pos.unmake(m, &undo);
            let (mated, t) = match r {
                Ok(v) => v,
                Err(e) => {
                    self.path.pop();
                    return Err(e);
                }
            };
            if mated {
                self.path.pop();
                self.proof(key, n, Some(*m));
                return Ok((true, false));
            }
            tainted |= t;
        }
        self.path.pop();
        if !tainted {
            self.disproof(key, n, None);
        }
        Ok((false, tainted))
    }

    /// Defender to move right after the attacker spent its `n`-th-from-last
    /// move; mated now, or after every reply within `n - 1` more moves.
    fn defend(&mut self, pos: &mut Position, n: u32) -> Outcome {
        self.tick()?;
        if n <= 1 {
            return Ok((!pos.has_legal_move() && pos.in_check(), false));
        }
        let key = pos.hash();
        if let Some(known) = self.probe(key, n) {
            return Ok((known, false));
        }
        let mut moves = pos.legal_moves_unordered();
        if moves.is_empty() {
            let mated = pos.in_check();
            if mated {
                self.proof(key, 1, None);
            }
            return Ok((mated, false));
        }
        if self.path.contains(&key) {
            return Ok((false, true));
        }
        order_defence(&mut moves, self.best(key));
        self.path.push(key);
        for m in &moves {
            let undo = pos.make(m);
            let r = self.attack(pos, n - 1);
            pos.unmake(m, &undo);
            let (mated, t) = match r {
                Ok(v) => v,
                Err(e) => {
                    self.path.pop();
                    return Err(e);
                }
            };
            if !mated {
                self.path.pop();
                if !t {
                    self.disproof(key, n, Some(*m));
                }
                return Ok((false, t));
            }
        }
        self.path.pop();
        self.proof(key, n, None);
        Ok((true, false))
    }

    fn attacker_moves(&self, pos: &Position, n: u32, key: u64) -> MoveList {
        let mut moves = pos.legal_moves_unordered();
        if n == 1 {
            moves.retain(|m| pos.play(m).in_check());
        }
        let best = self.best(key);
        let mut scored: Vec<(i32, Move)> = moves
            .iter()
            .map(|m| {
                let next = pos.play(m);
                let mut s = 0;
                if Some(*m) == best {
                    s += 100_000;
                }
                if next.in_check() {
                    s += 10_000;
                }
                if m.capture {
                    s += 1_000;
                }
                if let Some(p) = m.promotion {
                    s += p.value();
                }
                // Fewer defender replies first.
                s -= 10 * next.legal_moves_unordered().len() as i32;
                (s, *m)
            })
            .collect();
        scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.order_key().cmp(&b.1.order_key())));
        scored.into_iter().map(|(_, m)| m).collect()
    }

    /// Longest-resisting line from a proven position.
    fn principal_variation(
        &mut self,
        pos: &Position,
        attacker_to_move: bool,
        n: u32,
    ) -> Result<Vec<Move>, Exhausted> {
        let mut pv = Vec::new();
        let mut cur = *pos;
        let mut n = n;
        let mut attacker_turn = attacker_to_move;
        loop {
            if attacker_turn {
                let key = cur.hash();
                let moves = self.attacker_moves(&cur, n, key);
                let mut chosen = None;
                for m in moves {
                    let mut next = cur.play(&m);
                    if self.defend(&mut next, n)?.0 {
                        chosen = Some(m);
                        break;
                    }
                }
                let m = chosen.expect("proven position has a mating move");
                pv.push(m);
                cur = cur.play(&m);
            } else {
                let moves = cur.legal_moves();
                if moves.is_empty() {
                    return Ok(pv);
                }
                // Reply that needs the most attacker moves to be mated.
                let mut worst: Option<(u32, Move)> = None;
                for m in moves {
                    let mut next = cur.play(&m);
                    let mut k = 1;
                    while !self.attack(&mut next, k)?.0 {
                        k += 1;
                        debug_assert!(k < n, "reply escapes a proven mate");
                    }
                    if worst.is_none_or(|(w, _)| k > w) {
                        worst = Some((k, m));
                    }
                }
                let (k, m) = worst.unwrap();
                pv.push(m);
                cur = cur.play(&m);
                n = k;
            }
            attacker_turn = !attacker_turn;
        }
    }
}

fn order_defence(moves: &mut MoveList, best: Option<Move>) {
    moves.sort_by_key(|m| {
        let mut s = 0i32;
        if Some(*m) == best {
            s -= 100_000;
        }
        if m.capture {
            s -= 1_000;
        }
        if m.piece == Kind::King {
            s -= 100;
        }
        (s, m.order_key())
    });
}

pub fn prove_mate(q: &MateQuery) -> MateResult {
    let started = Instant::now();
    let mut s = Searcher {
        tt: q.use_tt.then(Table::new),
        nodes: 0,
        max_nodes: q.budget.nodes,
        deadline: q.budget.time_limit().map(|d| started + d),
        path: Vec::new(),
    };
    let mut pos = q.position;
    let attacker_to_move = pos.side_to_move() == q.attacker;
    let status = (|| {
        if !attacker_to_move && !pos.has_legal_move() && pos.in_check() {
            return Ok(MateStatus::Proven {
                moves: 0,
                pv: Vec::new(),
            });
        }
        for n in 1..=q.max_moves {
            let (found, _) = if attacker_to_move {
                s.attack(&mut pos, n)?
            } else {
                s.defend(&mut pos, n + 1)?
            };
            if found {
                let pv = if attacker_to_move {
                    s.principal_variation(&pos, true, n)?
                } else {
                    s.principal_variation(&pos, false, n + 1)?
                };
                return Ok(MateStatus::Proven { moves: n, pv });
            }
        }
        Ok(MateStatus::Disproven)
    })()
    .unwrap_or_else(|exhausted| MateStatus::Unknown { exhausted });
    MateResult {
        status,
        nodes: s.nodes,
        elapsed: started.elapsed(),
    }
}

/// True iff the side to move is checkmated.
pub fn check_immediate_checkmate(pos: &Position) -> bool {
    pos.in_check() && !pos.has_legal_move()
}
