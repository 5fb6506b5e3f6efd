//! `gardner`: perft, notation, mate solving, oracle verification, building,
//! PGN export and terminal play.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gardner::build::{build_oracle_after, parse_guide, BuildPolicy, DrawClose};
use gardner::oracle::{bundled, export_pgn, parse_oracle, print_oracle, OracleDocument};
use gardner::rules::{
    format_fen, format_san, game_status, parse_fen, parse_san, san_line, Color, GameStatus, Move,
    Position, RuleProfile,
};
use gardner::search::{prove_mate, Budget, MateQuery, MateStatus};
use gardner::verify::{
    numbered_line, shuffle_move, verify_all_bundled, verify_document, AggregateReport, Follower,
    Level, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "gardner", version, about = "Gardner 5x5 minichess toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count leaf nodes of the legal move tree, split by first move.
    Perft {
        #[arg(long)]
        fen: Option<String>,
        #[arg(long)]
        depth: u32,
    },
    /// List legal moves, optionally after a SAN line.
    Moves {
        #[arg(long)]
        fen: Option<String>,
        /// Moves to play first, e.g. "1.b4 cxb4".
        #[arg(long, default_value = "")]
        line: String,
    },
    /// Decide "mate in at most N" for the attacker.
    Solve {
        #[arg(long)]
        fen: String,
        #[arg(long, value_enum)]
        attacker: Side,
        #[arg(long)]
        mate_in: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check oracle documents.
    Verify(VerifyArgs),
    /// Build an oracle: one own move per node, every opponent reply.
    Build(BuildArgs),
    /// Play against an oracle in the terminal.
    Play {
        /// Document path or bundled name.
        #[arg(long)]
        oracle: String,
        /// Defaults to the colour the oracle does not play.
        #[arg(long, value_enum)]
        human_color: Option<Side>,
        /// Occurrences of a position that end the game.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
        repetition: u32,
    },
    /// Write a document as PGN with variations.
    ExportPgn {
        input: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    White,
    Black,
}

impl From<Side> for Color {
    fn from(s: Side) -> Color {
        match s {
            Side::White => Color::White,
            Side::Black => Color::Black,
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Search nodes per query.
    #[arg(long, default_value_t = 10_000_000)]
    mate_nodes: u64,
    /// Seconds per query.
    #[arg(long, default_value_t = 60)]
    mate_time: u64,
    /// Ignore wall time so results repeat exactly.
    #[arg(long)]
    deterministic: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            nodes: self.mate_nodes,
            time: Some(Duration::from_secs(self.mate_time)),
            deterministic: self.deterministic,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Document paths or bundled names.
    paths: Vec<String>,
    /// Every bundled document plus the joint main-line game.
    #[arg(long)]
    bundled: bool,
    #[arg(long, default_value = "1")]
    level: Level,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Plies for draw and cannot-win leaves.
    #[arg(long, default_value_t = 8)]
    horizon: u32,
    /// Occurrences of a position that make a draw.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
    repetition: u32,
    /// Mate claims longer than this are reported unknown without search.
    #[arg(long)]
    mate_cap: Option<u32>,
    /// Emit the JSON record stream instead of text.
    #[arg(long)]
    json: bool,
    /// Include passing records in the text report.
    #[arg(long)]
    all: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    /// Start position; defaults to the initial position.
    #[arg(long)]
    fen: Option<String>,
    /// Moves from the start to the build root.
    #[arg(long, default_value = "")]
    after: String,
    #[arg(long, value_enum)]
    side: Side,
    /// Lines of `<moves from root> => <move>`.
    #[arg(long)]
    guide: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    max_depth: u32,
    /// Search nodes per mate proof.
    #[arg(long, default_value_t = 200_000)]
    mate_nodes: u64,
    /// Longest mate, in moves, the builder tries.
    #[arg(long, default_value_t = 12)]
    mate_bound: u32,
    /// Evaluation in centipawns from which mate proofs are tried.
    #[arg(long, default_value_t = 500)]
    threshold: i32,
    /// Also close lines as drawn where no loss is found within this many plies.
    #[arg(long)]
    safe_horizon: Option<u32>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
    repetition: u32,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// JSON-lines build log.
    #[arg(long)]
    log: Option<PathBuf>,
}

/// Error carrying the exit code.
struct Fail(u8, String);

impl<E: std::fmt::Display + 'static> From<E> for Fail {
    fn from(e: E) -> Fail {
        // A closed stdout (`| head`) ends the command quietly.
        let any: &dyn std::any::Any = &e;
        match any.downcast_ref::<std::io::Error>() {
            Some(io) if io.kind() == std::io::ErrorKind::BrokenPipe => Fail(0, String::new()),
            _ => Fail(2, e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Fail> {
    match cmd {
        Command::Perft { fen, depth } => perft(fen.as_deref(), depth),
        Command::Moves { fen, line } => moves(fen.as_deref(), &line),
        Command::Solve {
            fen,
            attacker,
            mate_in,
            budget,
        } => solve(&fen, attacker.into(), mate_in, budget.budget()),
        Command::Verify(a) => verify(a),
        Command::Build(a) => build(a),
        Command::Play {
            oracle,
            human_color,
            repetition,
        } => play(&oracle, human_color.map(Color::from), repetition),
        Command::ExportPgn { input, output } => {
            let (_, doc) = load(&input)?;
            emit(output.as_deref(), &export_pgn(&doc))?;
            Ok(0)
        }
    }
}

fn position(fen: Option<&str>) -> Result<Position, Fail> {
    Ok(match fen {
        Some(f) => parse_fen(f)?,
        None => Position::initial(),
    })
}

/// Reads a document from a path, falling back to the bundled set by name.
fn load(source: &str) -> Result<(String, OracleDocument), Fail> {
    let path = Path::new(source);
    let name = path
        .file_stem()
        .map_or(source.to_string(), |s| s.to_string_lossy().into_owned());
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Fail(2, format!("{source}: {e}")))?;
        let doc = parse_oracle(&text).map_err(|e| Fail(2, format!("{source}: {e}")))?;
        return Ok((name, doc));
    }
    match bundled().iter().find(|e| e.name == source) {
        Some(e) => Ok((name, parse_oracle(e.text)?)),
        None => Err(Fail(
            2,
            format!("{source}: no such file or bundled document"),
        )),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fail(2, format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn perft(fen: Option<&str>, depth: u32) -> Result<u8, Fail> {
    let pos = position(fen)?;
    if depth == 0 {
        println!("total {}", pos.perft(0));
        return Ok(0);
    }
    let mut total = 0;
    for (m, n) in pos.perft_divide(depth) {
        println!("{} {n}", format_san(&pos, &m));
        total += n;
    }
    println!("total {total}");
    Ok(0)
}

fn moves(fen: Option<&str>, line: &str) -> Result<u8, Fail> {
    let start = position(fen)?;
    let (_, pos) = san_line(&start, line)?;
    println!("fen {}", format_fen(&pos));
    let sans: Vec<String> = pos
        .legal_moves()
        .iter()
        .map(|m| format_san(&pos, m))
        .collect();
    println!("moves {}", sans.join(" "));
    println!("status {}", game_status(&pos, &[], &RuleProfile::default()));
    Ok(0)
}

fn solve(fen: &str, attacker: Color, mate_in: u32, budget: Budget) -> Result<u8, Fail> {
    let pos = parse_fen(fen)?;
    let r = prove_mate(&MateQuery::new(pos, attacker, mate_in).with_budget(budget));
    match r.status {
        MateStatus::Proven { moves, pv } => {
            let sans = san_sequence(&pos, &pv);
            println!("proven mate in {moves}: {}", numbered_line(&pos, &sans));
        }
        MateStatus::Disproven => println!("disproven: no forced mate within {mate_in}"),
        MateStatus::Unknown { exhausted } => {
            println!(
                "unknown: {} budget exhausted",
                format!("{exhausted:?}").to_lowercase()
            )
        }
    }
    println!("nodes {}", r.nodes);
    if !budget.deterministic {
        println!("elapsed_ms {}", r.elapsed.as_millis());
    }
    Ok(0)
}

fn san_sequence(pos: &Position, moves: &[Move]) -> Vec<String> {
    let mut cur = *pos;
    moves
        .iter()
        .map(|m| {
            let s = format_san(&cur, m);
            cur = cur.play(m);
            s
        })
        .collect()
}

fn verify(a: VerifyArgs) -> Result<u8, Fail> {
    if a.paths.is_empty() && !a.bundled {
        return Err(Fail(2, "nothing to verify: give paths or --bundled".into()));
    }
    let opts = VerifyOptions {
        level: a.level,
        budget: a.budget.budget(),
        horizon: a.horizon,
        profile: RuleProfile::with_repetition(a.repetition),
        mate_cap: a.mate_cap,
    };
    let mut agg = if a.bundled {
        verify_all_bundled(&opts)
    } else {
        AggregateReport {
            reports: Vec::new(),
            joint: None,
        }
    };
    for p in &a.paths {
        let (name, doc) = load(p)?;
        let mut r = verify_document(&name, &doc, &opts);
        let printed = print_oracle(&doc);
        r.completeness = bundled()
            .iter()
            .find(|e| e.name == name && e.text == printed)
            .map(|e| e.completeness);
        agg.reports.push(r);
    }
    let text = if a.json {
        agg.to_json_lines()
    } else {
        agg.to_text(a.all)
    };
    emit(a.output.as_deref(), &text)?;
    Ok(u8::from(agg.has_failures()))
}

fn build(a: BuildArgs) -> Result<u8, Fail> {
    let start = position(a.fen.as_deref())?;
    let (prefix, root) = san_line(&start, &a.after)?;
    let mut policy = BuildPolicy::new(a.side.into());
    policy.max_depth = a.max_depth;
    policy.mate_budget = Budget::nodes(a.mate_nodes);
    policy.mate_bound = a.mate_bound;
    policy.decided_threshold = a.threshold;
    policy.profile = RuleProfile::with_repetition(a.repetition);
    if let Some(h) = a.safe_horizon {
        policy.draw_close = DrawClose::SafeHorizon(h);
    }
    if let Some(g) = &a.guide {
        let text = fs::read_to_string(g).map_err(|e| Fail(2, format!("{}: {e}", g.display())))?;
        policy.guide = parse_guide(&root, &text)?;
    }
    let out = build_oracle_after(&start, &prefix, &policy)?;
    emit(a.output.as_deref(), &print_oracle(&out.document))?;
    if let Some(l) = &a.log {
        emit(Some(l), &out.log_json_lines())?;
    }
    let s = &out.stats;
    let root_claim = match out.root_mate {
        Some(x) => format!("mate in <={x}"),
        None => "not proven".into(),
    };
    eprintln!(
        "built: {} own nodes, {} opponent nodes, {} leaves, {} search nodes; root {root_claim}",
        s.own_nodes, s.opponent_nodes, s.leaves, s.search_nodes
    );
    Ok(0)
}

struct Game<'a> {
    doc: &'a OracleDocument,
    profile: RuleProfile,
    moves: Vec<Move>,
}

impl Game<'_> {
    /// Current position, history before it and the oracle follower, all
    /// replayed from the start so that undo is trivial.
    fn state(&self) -> (Position, Vec<u64>, Follower<'_>) {
        let mut pos = self.doc.start;
        let mut history = Vec::new();
        let mut f = Follower::new(self.doc);
        for (ply, m) in self.moves.iter().enumerate() {
            history.push(pos.hash());
            f.advance(m, ply);
            pos = pos.play(m);
        }
        (pos, history, f)
    }

    fn status(&self) -> GameStatus {
        let (pos, history, _) = self.state();
        game_status(&pos, &history, &self.profile)
    }
}

fn play(source: &str, human: Option<Color>, repetition: u32) -> Result<u8, Fail> {
    let (_, doc) = load(source)?;
    let human = human.unwrap_or(doc.side.opposite());
    if human == doc.side {
        return Err(Fail(
            2,
            format!("the oracle plays {}; choose the other colour", doc.side),
        ));
    }
    let mut game = Game {
        doc: &doc,
        profile: RuleProfile::with_repetition(repetition),
        moves: Vec::new(),
    };
    let mut warned = false;
    let stdin = io::stdin();
    let mut input = stdin.lock().lines();
    println!("you play {}; commands: <SAN>, undo, fen, quit", human);
    loop {
        let status = game.status();
        if status.is_over() {
            println!("game over: {status}");
            return Ok(0);
        }
        let (pos, history, follower) = game.state();
        if pos.side_to_move() == doc.side {
            let m = match follower.own_move().filter(|m| pos.is_legal(m)) {
                Some(m) => m,
                None => {
                    if !warned {
                        println!(
                            "warning: left oracle; moves now come from a guarded engine choice"
                        );
                        warned = true;
                    }
                    shuffle_move(&pos, &history).ok_or_else(|| Fail(2, "no legal move".into()))?
                }
            };
            let sans = [format_san(&pos, &m)];
            println!("{}", numbered_line(&pos, &sans));
            game.moves.push(m);
            continue;
        }
        print!("> ");
        io::stdout().flush()?;
        let Some(line) = input.next() else {
            return Ok(0);
        };
        let line = line?;
        match line.trim() {
            "" => {}
            "quit" => return Ok(0),
            "fen" => println!("{}", format_fen(&pos)),
            "undo" => {
                if game.moves.is_empty() {
                    println!("nothing to undo");
                    continue;
                }
                game.moves.pop();
                while game.moves.last().is_some() && game.state().0.side_to_move() != human {
                    game.moves.pop();
                }
                println!("{}", format_fen(&game.state().0));
            }
            san => match parse_san(&pos, san) {
                Ok(m) => game.moves.push(m),
                Err(e) => {
                    let legal: Vec<String> = pos
                        .legal_moves()
                        .iter()
                        .map(|m| format_san(&pos, m))
                        .collect();
                    println!("illegal move ({e}); legal moves: {}", legal.join(" "));
                }
            },
        }
    }
}
