//! Machine checks for oracle documents.
//!
//! Obligations are collected in document order, discharged in parallel and
//! reported in document order again, so the record stream does not depend on
//! scheduling.

mod joint;
mod mutate;
mod report;

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::oracle::{bundled, is_root_id, Claim, Leaf, Node, NodeKind, OracleDocument};
use crate::rules::{format_san, game_status, Color, GameStatus, Move, Position, RuleProfile};
use crate::search::{
    check_immediate_checkmate, check_non_loss, prove_mate, Budget, MateQuery, MateStatus, NonLoss,
};

pub use joint::{joint_game, shuffle_move, Follower, JointGame};
pub use mutate::{branch_sites, delete_branch, BranchSite};
pub use report::{AggregateReport, Report, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Every line replays legally with alternating sides.
    L0,
    /// Every opponent reply is covered.
    L1,
    /// Mate and checkmate claims are proven.
    L2,
    /// Draw and cannot-win leaves survive the horizon check.
    L3,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Level, String> {
        match s.trim_start_matches(['L', 'l']) {
            "0" => Ok(Level::L0),
            "1" => Ok(Level::L1),
            "2" => Ok(Level::L2),
            "3" => Ok(Level::L3),
            _ => Err(format!("unknown level {s:?}; expected 0..3")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Obligation {
    Legality,
    Coverage,
    Reference,
    Mate,
    Checkmate,
    Nonloss,
    Claim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    UnverifiedClaim,
}

/// Outcome of one obligation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    /// Numbered move line from the document start.
    pub path: String,
    /// Nearest labelled ancestor, if any.
    pub variation: Option<String>,
    pub obligation: Obligation,
    pub status: Status,
    pub claim: Option<String>,
    /// The obligation comes from a node's default claim.
    pub via_default: bool,
    pub detail: String,
    /// Concrete evidence: offending moves, uncovered replies or a forcing line.
    pub witness: Vec<String>,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub level: Level,
    pub budget: Budget,
    /// Plies for draw and cannot-win leaves.
    pub horizon: u32,
    pub profile: RuleProfile,
    /// Mate claims above this many moves are reported unknown without search.
    pub mate_cap: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            level: Level::L1,
            budget: Budget::default(),
            horizon: 8,
            profile: RuleProfile::default(),
            mate_cap: None,
        }
    }
}

impl VerifyOptions {
    pub fn at(level: Level) -> VerifyOptions {
        VerifyOptions {
            level,
            ..VerifyOptions::default()
        }
    }
}

/// Worker pool honouring `GARDNER_THREADS`.
pub fn worker_pool() -> rayon::ThreadPool {
    let threads = std::env::var("GARDNER_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

enum Work {
    Done,
    Mate {
        pos: Position,
        attacker: Color,
        moves: u32,
    },
    Checkmate(Position),
    NonLoss {
        pos: Position,
        side: Color,
    },
}

struct Pending {
    record: Record,
    work: Work,
}

/// Numbered SAN line, `1.b4 cxb4 2.cxb4`, starting at `pos`.
pub fn numbered_line(pos: &Position, sans: &[String]) -> String {
    let mut out = String::new();
    let mut n = pos.fullmove_number();
    let mut side = pos.side_to_move();
    for (i, san) in sans.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match side {
            Color::White => out.push_str(&format!("{n}.")),
            Color::Black if i == 0 => out.push_str(&format!("{n}...")),
            Color::Black => {}
        }
        out.push_str(san);
        if side == Color::Black {
            n += 1;
        }
        side = side.opposite();
    }
    out
}

struct Collector<'a> {
    doc: &'a OracleDocument,
    opts: &'a VerifyOptions,
    out: Vec<Pending>,
}

impl Collector<'_> {
    fn record(
        &self,
        line: &[String],
        variation: &Option<String>,
        obligation: Obligation,
    ) -> Record {
        let mut all = self.doc.prefix_san.clone();
        all.extend(line.iter().cloned());
        Record {
            path: numbered_line(&self.doc.start, &all),
            variation: variation.clone(),
            obligation,
            status: Status::Pass,
            claim: None,
            via_default: false,
            detail: String::new(),
            witness: Vec::new(),
            nodes: 0,
            elapsed_ms: None,
        }
    }

    fn done(&mut self, mut record: Record, status: Status, detail: String, witness: Vec<String>) {
        record.status = status;
        record.detail = detail;
        record.witness = witness;
        self.out.push(Pending {
            record,
            work: Work::Done,
        });
    }

    fn walk(
        &mut self,
        node: &Node,
        pos: &Position,
        line: &mut Vec<String>,
        history: &mut Vec<u64>,
        variation: Option<String>,
    ) {
        let variation = node.id.clone().or(variation);
        let side = self.doc.side;
        match &node.kind {
            NodeKind::Own(edge) => {
                if let Some(bad) = self.bad_edge(pos, &edge.mv, side, line, &variation) {
                    self.out.push(bad);
                    return;
                }
                line.push(edge.san.clone());
                history.push(pos.hash());
                self.walk(&edge.node, &pos.play(&edge.mv), line, history, variation);
                history.pop();
                line.pop();
            }
            NodeKind::Opponent(op) => {
                if self.opts.level >= Level::L1 {
                    self.coverage(pos, node, line, &variation);
                }
                if let Some(default) = &op.default {
                    let listed: HashSet<Move> = op.branches.iter().map(|e| e.mv).collect();
                    for m in pos.legal_moves() {
                        if listed.contains(&m) {
                            continue;
                        }
                        line.push(format_san(pos, &m));
                        history.push(pos.hash());
                        self.claim(default, &pos.play(&m), line, history, &variation, true);
                        history.pop();
                        line.pop();
                    }
                }
                for edge in &op.branches {
                    if let Some(bad) =
                        self.bad_edge(pos, &edge.mv, side.opposite(), line, &variation)
                    {
                        self.out.push(bad);
                        continue;
                    }
                    line.push(edge.san.clone());
                    history.push(pos.hash());
                    self.walk(
                        &edge.node,
                        &pos.play(&edge.mv),
                        line,
                        history,
                        variation.clone(),
                    );
                    history.pop();
                    line.pop();
                }
            }
            NodeKind::Leaf(leaf) => self.claim(leaf, pos, line, history, &variation, false),
        }
    }

    /// A legality failure for `mv`, if any.
    fn bad_edge(
        &self,
        pos: &Position,
        mv: &Move,
        mover: Color,
        line: &[String],
        variation: &Option<String>,
    ) -> Option<Pending> {
        let problem = if pos.side_to_move() != mover {
            Some(format!(
                "{mover} move where {} is to move",
                pos.side_to_move()
            ))
        } else if !pos.is_legal(mv) {
            Some("illegal move".to_string())
        } else {
            None
        };
        problem.map(|detail| {
            let mut record = self.record(line, variation, Obligation::Legality);
            record.status = Status::Fail;
            record.detail = detail;
            record.witness = vec![mv.uci()];
            Pending {
                record,
                work: Work::Done,
            }
        })
    }

    fn coverage(
        &mut self,
        pos: &Position,
        node: &Node,
        line: &[String],
        variation: &Option<String>,
    ) {
        let NodeKind::Opponent(op) = &node.kind else {
            return;
        };
        let listed: HashSet<Move> = op.branches.iter().map(|e| e.mv).collect();
        let uncovered: Vec<String> = pos
            .legal_moves()
            .iter()
            .filter(|m| !listed.contains(m))
            .map(|m| format_san(pos, m))
            .collect();
        let mut record = self.record(line, variation, Obligation::Coverage);
        let detail;
        let status = if uncovered.is_empty() {
            detail = format!("{} replies, all listed", listed.len());
            Status::Pass
        } else if op.default.is_some() {
            record.via_default = true;
            detail = format!(
                "{} replies listed, {} covered by the default claim",
                listed.len(),
                uncovered.len()
            );
            Status::Pass
        } else {
            detail = format!(
                "{} of {} replies uncovered",
                uncovered.len(),
                listed.len() + uncovered.len()
            );
            Status::Fail
        };
        self.done(record, status, detail, uncovered);
    }

    fn claim(
        &mut self,
        leaf: &Leaf,
        pos: &Position,
        line: &[String],
        history: &[u64],
        variation: &Option<String>,
        via_default: bool,
    ) {
        let opts = self.opts;
        let mut base = self.record(line, variation, Obligation::Legality);
        base.claim = Some(leaf.claim.to_string());
        base.via_default = via_default;

        // Justification lines replay from the claim position.
        let mut p = *pos;
        let mut bad = None;
        for m in &leaf.justify {
            if !p.is_legal(m) {
                bad = Some(m.uci());
                break;
            }
            p = p.play(m);
        }
        match bad {
            Some(m) => {
                let b = base.clone();
                self.done(
                    b,
                    Status::Fail,
                    "justification line is illegal".into(),
                    vec![m],
                );
            }
            None => {
                let b = base.clone();
                self.done(b, Status::Pass, "line replays legally".into(), Vec::new());
            }
        }

        let oracle_side = self.doc.side;
        match &leaf.claim {
            Claim::Ref { id } => {
                if opts.level < Level::L1 {
                    return;
                }
                let mut r = base;
                r.obligation = Obligation::Reference;
                let (status, detail) = if via_default {
                    (
                        Status::Fail,
                        "a reference cannot stand for unlisted moves".to_string(),
                    )
                } else if is_root_id(id) {
                    let same = self.doc.root.hash() == pos.hash();
                    (
                        pass_if(same),
                        format!("position vs root: {}", same_text(same)),
                    )
                } else {
                    match self.doc.resolve_variation(id) {
                        Ok((target, _)) => {
                            let same = target.hash() == pos.hash();
                            (
                                pass_if(same),
                                format!("position vs {id}: {}", same_text(same)),
                            )
                        }
                        Err(e) => (Status::Fail, e.to_string()),
                    }
                };
                let witness = if status == Status::Fail {
                    vec![id.clone()]
                } else {
                    Vec::new()
                };
                self.done(r, status, detail, witness);
            }
            Claim::Unverified { note } => {
                if opts.level < Level::L2 {
                    return;
                }
                let mut r = base;
                r.obligation = Obligation::Claim;
                self.done(r, Status::UnverifiedClaim, note.clone(), Vec::new());
            }
            Claim::Mate { defender, moves } => {
                if opts.level < Level::L2 {
                    return;
                }
                let mut r = base;
                r.obligation = Obligation::Mate;
                if let Some(cap) = opts.mate_cap.filter(|&c| *moves > c) {
                    self.done(
                        r,
                        Status::Unknown,
                        format!("skipped: above mate cap {cap}"),
                        Vec::new(),
                    );
                    return;
                }
                self.out.push(Pending {
                    record: r,
                    work: Work::Mate {
                        pos: *pos,
                        attacker: defender.opposite(),
                        moves: *moves,
                    },
                });
            }
            Claim::Checkmate => {
                if opts.level < Level::L2 {
                    return;
                }
                let mut r = base;
                r.obligation = Obligation::Checkmate;
                self.out.push(Pending {
                    record: r,
                    work: Work::Checkmate(*pos),
                });
            }
            Claim::Draw { .. } | Claim::CannotWin { .. } => {
                if opts.level < Level::L3 {
                    return;
                }
                let claimant = match &leaf.claim {
                    Claim::CannotWin { side } => side.opposite(),
                    _ => oracle_side,
                };
                let mut r = base;
                r.obligation = Obligation::Nonloss;
                let status = game_status(pos, history, &opts.profile);
                match status {
                    GameStatus::Ongoing => self.out.push(Pending {
                        record: r,
                        work: Work::NonLoss {
                            pos: *pos,
                            side: claimant,
                        },
                    }),
                    GameStatus::Checkmate { loser } => {
                        let (s, d) = if loser == claimant {
                            (Status::Fail, format!("{claimant} is checkmated"))
                        } else {
                            (Status::Pass, format!("{loser} is checkmated"))
                        };
                        self.done(r, s, d, Vec::new());
                    }
                    drawn => self.done(r, Status::Pass, format!("game over: {drawn}"), Vec::new()),
                }
            }
        }
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn same_text(same: bool) -> &'static str {
    if same {
        "same position"
    } else {
        "different positions"
    }
}

fn san_line(pos: &Position, moves: &[Move]) -> Vec<String> {
    let mut p = *pos;
    moves
        .iter()
        .map(|m| {
            let s = format_san(&p, m);
            p = p.play(m);
            s
        })
        .collect()
}

fn discharge(mut p: Pending, opts: &VerifyOptions) -> Record {
    let started = Instant::now();
    let r = &mut p.record;
    match p.work {
        Work::Done => return p.record,
        Work::Checkmate(pos) => {
            let mated = check_immediate_checkmate(&pos);
            r.status = pass_if(mated);
            r.detail = if mated {
                format!("{} is checkmated", pos.side_to_move())
            } else if pos.in_check() {
                format!("{} is in check but can move", pos.side_to_move())
            } else {
                format!("{} is not in check", pos.side_to_move())
            };
            if !mated {
                r.witness = san_line(
                    &pos,
                    &pos.legal_moves().into_iter().take(1).collect::<Vec<_>>(),
                );
            }
            r.nodes = 1;
        }
        Work::Mate {
            pos,
            attacker,
            moves,
        } => {
            let q = MateQuery::new(pos, attacker, moves).with_budget(opts.budget);
            let res = prove_mate(&q);
            r.nodes = res.nodes;
            match res.status {
                MateStatus::Proven { moves: used, pv } => {
                    r.status = Status::Pass;
                    r.detail = format!("mate in {used}");
                    r.witness = san_line(&pos, &pv);
                }
                MateStatus::Disproven => {
                    r.status = Status::Fail;
                    r.detail = format!("no forced mate within {moves}");
                    r.witness = refutation(&pos, attacker, moves, opts.budget);
                }
                MateStatus::Unknown { exhausted } => {
                    r.status = Status::Unknown;
                    r.detail = format!("{exhausted:?} budget exhausted").to_lowercase();
                }
            }
        }
        Work::NonLoss { pos, side } => {
            let (v, nodes) = check_non_loss(&pos, side, opts.horizon, opts.budget);
            r.nodes = nodes;
            match v {
                NonLoss::Safe { horizon } => {
                    r.status = Status::Pass;
                    r.detail = format!("{side} not mated within {horizon} plies");
                }
                NonLoss::Unsafe { pv } => {
                    r.status = Status::Fail;
                    r.detail = format!("{side} is mated by force");
                    r.witness = san_line(&pos, &pv);
                }
                NonLoss::Unknown { exhausted } => {
                    r.status = Status::Unknown;
                    r.detail = format!("{exhausted:?} budget exhausted").to_lowercase();
                }
            }
        }
    }
    if !opts.budget.deterministic {
        r.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    p.record
}

/// A defender reply that escapes the claimed mate, when one is found.
fn refutation(pos: &Position, attacker: Color, moves: u32, budget: Budget) -> Vec<String> {
    if pos.side_to_move() == attacker {
        return Vec::new();
    }
    for m in pos.legal_moves() {
        let next = pos.play(&m);
        let q = MateQuery::new(next, attacker, moves).with_budget(budget);
        if prove_mate(&q).is_disproven() {
            return vec![format_san(pos, &m)];
        }
    }
    Vec::new()
}

/// Checks `doc` up to `opts.level`; records come back in document order.
pub fn verify_document(name: &str, doc: &OracleDocument, opts: &VerifyOptions) -> Report {
    let mut c = Collector {
        doc,
        opts,
        out: Vec::new(),
    };
    let mut history = doc.prefix_history();
    c.walk(&doc.tree, &doc.root, &mut Vec::new(), &mut history, None);
    let pending = c.out;
    let records: Vec<Record> = worker_pool().install(|| {
        pending
            .into_par_iter()
            .map(|p| discharge(p, opts))
            .collect()
    });
    let mut report = Report::new(name, doc.side, opts.level, records);
    if opts.level >= Level::L3 {
        report.horizon = Some(opts.horizon);
    }
    report
}

/// Verifies every bundled document and plays the joint main-line game.
pub fn verify_all_bundled(opts: &VerifyOptions) -> AggregateReport {
    let mut reports = Vec::new();
    for entry in bundled() {
        let doc = crate::oracle::bundled_document(entry.name).expect("bundled document");
        let mut r = verify_document(entry.name, &doc, opts);
        r.completeness = Some(entry.completeness);
        reports.push(r);
    }
    let joint = match (
        crate::oracle::bundled_document("white-b4"),
        crate::oracle::bundled_document("black-b4"),
    ) {
        (Some(w), Some(b)) => Some(joint_game(&w, &b, &opts.profile, 400)),
        _ => None,
    };
    AggregateReport { reports, joint }
}
