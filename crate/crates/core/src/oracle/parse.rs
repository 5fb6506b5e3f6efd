//! Reader for the `.gdo` oracle text format.

use super::model::{Claim, Edge, Leaf, Node, NodeKind, OpponentNode, OracleDocument};
use super::OracleError;
use crate::rules::{parse_fen, parse_san, san_line, Color, Position};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
}

struct Token {
    tok: Tok,
    line: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, OracleError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let mut chars = line.chars().peekable();
        loop {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            let Some(&c) = chars.peek() else { break };
            if c == '#' {
                break;
            }
            if c == '"' {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => {
                            return Err(OracleError::Syntax {
                                line: line_no,
                                msg: "unterminated string".into(),
                            })
                        }
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => {
                                return Err(OracleError::Syntax {
                                    line: line_no,
                                    msg: "bad escape in string".into(),
                                })
                            }
                        },
                        Some(other) => s.push(other),
                    }
                }
                out.push(Token {
                    tok: Tok::Str(s),
                    line: line_no,
                });
            } else {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '"' {
                        break;
                    }
                    w.push(c);
                    chars.next();
                }
                out.push(Token {
                    tok: Tok::Word(w),
                    line: line_no,
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    at: usize,
    side: Color,
    moves: Vec<String>,
}

impl Parser<'_> {
    fn line(&self) -> usize {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map_or(0, |t| t.line)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, OracleError> {
        Err(OracleError::Syntax {
            line: self.line(),
            msg: msg.into(),
        })
    }

    fn peek_word(&self) -> Option<&str> {
        match self.toks.get(self.at).map(|t| &t.tok) {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn peek_str(&self) -> Option<&str> {
        match self.toks.get(self.at).map(|t| &t.tok) {
            Some(Tok::Str(s)) => Some(s),
            _ => None,
        }
    }

    fn word(&mut self, what: &str) -> Result<String, OracleError> {
        match self.peek_word() {
            Some(w) => {
                let w = w.to_string();
                self.at += 1;
                Ok(w)
            }
            None => self.err(format!("expected {what}")),
        }
    }

    fn string(&mut self, what: &str) -> Result<String, OracleError> {
        match self.peek_str() {
            Some(s) => {
                let s = s.to_string();
                self.at += 1;
                Ok(s)
            }
            None => self.err(format!("expected quoted {what}")),
        }
    }

    fn expect(&mut self, kw: &str) -> Result<(), OracleError> {
        if self.peek_word() == Some(kw) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{kw}`"))
        }
    }

    fn eat(&mut self, kw: &str) -> bool {
        if self.peek_word() == Some(kw) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn color(&mut self) -> Result<Color, OracleError> {
        let w = self.word("colour")?;
        match w.as_str() {
            "white" => Ok(Color::White),
            "black" => Ok(Color::Black),
            _ => self.err(format!("expected white or black, got {w:?}")),
        }
    }

    fn illegal(&self, san: &str, reason: impl ToString) -> OracleError {
        let mut path = self.moves.clone();
        path.push(san.to_string());
        OracleError::IllegalMoveInLine {
            path: path.join(" "),
            reason: format!("line {}: {}", self.line(), reason.to_string()),
        }
    }

    fn play_san(&mut self, pos: &Position, san: &str) -> Result<Edge, OracleError> {
        let m = parse_san(pos, san).map_err(|e| self.illegal(san, e))?;
        Ok(Edge::new(
            pos,
            m,
            Node::leaf(Leaf::new(Claim::Unverified {
                note: String::new(),
            })),
        ))
    }

    fn claim(&mut self) -> Result<Claim, OracleError> {
        let kw = self.word("claim")?;
        Ok(match kw.as_str() {
            "mate" => {
                let defender = self.color()?;
                let n = self.word("move count")?;
                let moves: u32 = match n.parse() {
                    Ok(v) if v >= 1 => v,
                    _ => return self.err(format!("bad mate distance {n:?}")),
                };
                Claim::Mate { defender, moves }
            }
            "checkmate" => Claim::Checkmate,
            "draw" => Claim::Draw {
                reason: self.string("draw reason")?,
            },
            "cannotwin" => Claim::CannotWin {
                side: self.color()?,
            },
            "ref" => Claim::Ref {
                id: self.word("variation id")?,
            },
            "unverified" => Claim::Unverified {
                note: self.string("note")?,
            },
            other => return self.err(format!("unknown claim {other:?}")),
        })
    }

    /// Claim, optional note, optional justification, at position `pos`.
    fn leaf(&mut self, pos: &Position) -> Result<Leaf, OracleError> {
        let claim = self.claim()?;
        let mut leaf = Leaf::new(claim);
        if !matches!(leaf.claim, Claim::Draw { .. } | Claim::Unverified { .. }) {
            if let Some(s) = self.peek_str() {
                leaf.note = Some(s.to_string());
                self.at += 1;
            }
        }
        if self.eat("justify") {
            let text = self.string("justification line")?;
            let (moves, _) = san_line(pos, &text).map_err(|e| self.illegal(&text, e))?;
            let mut cur = *pos;
            for m in &moves {
                leaf.justify_san.push(crate::rules::format_san(&cur, m));
                cur = cur.play(m);
            }
            leaf.justify = moves;
        }
        Ok(leaf)
    }

    fn node(&mut self, pos: &Position) -> Result<Node, OracleError> {
        let id = if self.eat("id") {
            Some(self.word("variation id")?)
        } else {
            None
        };
        let kw = self.word("node")?;
        let kind = match kw.as_str() {
            "move" => {
                if pos.side_to_move() != self.side {
                    return self.err("`move` where the opponent is to move");
                }
                let san = self.word("move")?;
                let mut edge = self.play_san(pos, &san)?;
                let next = pos.play(&edge.mv);
                self.moves.push(edge.san.clone());
                edge.node = self.node(&next)?;
                self.moves.pop();
                NodeKind::Own(Box::new(edge))
            }
            "opponent" => {
                if pos.side_to_move() == self.side {
                    return self.err("`opponent` where the oracle side is to move");
                }
                NodeKind::Opponent(self.opponent(pos)?)
            }
            "leaf" => NodeKind::Leaf(self.leaf(pos)?),
            other => return self.err(format!("expected move, opponent or leaf, got {other:?}")),
        };
        Ok(Node { id, kind })
    }

    fn opponent(&mut self, pos: &Position) -> Result<OpponentNode, OracleError> {
        self.expect("{")?;
        let mut op = OpponentNode::default();
        loop {
            match self.peek_word() {
                Some("}") => {
                    self.at += 1;
                    break;
                }
                Some("default") => {
                    self.at += 1;
                    if op.default.is_some() {
                        return self.err("second `default` in one opponent block");
                    }
                    op.default = Some(self.leaf(pos)?);
                }
                Some(_) => {
                    let edge = self.branch(pos)?;
                    if op.branches.iter().any(|b| b.mv == edge.mv) {
                        return self.err(format!("duplicate branch {}", edge.san));
                    }
                    op.branches.push(edge);
                }
                None => return self.err("unterminated opponent block"),
            }
        }
        Ok(op)
    }

    fn branch(&mut self, pos: &Position) -> Result<Edge, OracleError> {
        let id = if self.eat("id") {
            Some(self.word("variation id")?)
        } else {
            None
        };
        let mut sans: Vec<String> = Vec::new();
        loop {
            let w = self.word("move, `->` or `=>`")?;
            match w.as_str() {
                "->" | "=>" => {
                    if sans.is_empty() {
                        return self.err("branch without a move");
                    }
                    if w == "->" {
                        if sans.len() != 1 || id.is_some() {
                            return self.err("`->` takes exactly one move and no id");
                        }
                        let mut edge = self.play_san(pos, &sans[0])?;
                        let next = pos.play(&edge.mv);
                        self.moves.push(edge.san.clone());
                        self.expect("{")?;
                        edge.node = self.node(&next)?;
                        self.expect("}")?;
                        self.moves.pop();
                        return Ok(edge);
                    }
                    return self.chain(pos, &sans, id);
                }
                "{" | "}" => return self.err("expected a move"),
                _ => sans.push(w),
            }
        }
    }

    /// `m1 m2 ... => claim`: alternating opponent and own moves ending in a leaf.
    fn chain(
        &mut self,
        pos: &Position,
        sans: &[String],
        id: Option<String>,
    ) -> Result<Edge, OracleError> {
        let depth = self.moves.len();
        let mut edges = Vec::with_capacity(sans.len());
        let mut cur = *pos;
        for san in sans {
            let edge = self.play_san(&cur, san)?;
            cur = cur.play(&edge.mv);
            self.moves.push(edge.san.clone());
            edges.push(edge);
        }
        let leaf = self.leaf(&cur)?;
        self.moves.truncate(depth);
        let mut node = Node {
            id,
            kind: NodeKind::Leaf(leaf),
        };
        // Rebuild inside out: odd-numbered moves are own moves.
        while let Some(mut edge) = edges.pop() {
            edge.node = node;
            if edges.is_empty() {
                return Ok(edge);
            }
            node = if edges.len() % 2 == 1 {
                Node::own(edge)
            } else {
                Node::opponent(OpponentNode {
                    branches: vec![edge],
                    default: None,
                })
            };
        }
        unreachable!("chain has at least one move")
    }
}

pub fn parse_oracle(text: &str) -> Result<OracleDocument, OracleError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        side: Color::White,
        moves: Vec::new(),
    };
    p.expect("oracle")?;
    p.side = p.color()?;
    let mut start = Position::initial();
    let mut prefix = Vec::new();
    loop {
        if p.eat("root") {
            let fen = p.string("FEN")?;
            start = parse_fen(&fen).map_err(|e| OracleError::Syntax {
                line: p.line(),
                msg: e.to_string(),
            })?;
        } else if p.eat("after") {
            let line = p.string("move list")?;
            let (moves, _) =
                san_line(&start, &line).map_err(|e| OracleError::IllegalMoveInLine {
                    path: line.clone(),
                    reason: e.to_string(),
                })?;
            prefix = moves;
        } else {
            break;
        }
    }
    let mut root = start;
    for m in &prefix {
        root = root.play(m);
    }
    let tree = p.node(&root)?;
    if p.at != toks.len() {
        return p.err("trailing input after the tree");
    }
    OracleDocument::new(p.side, start, prefix, tree)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
oracle white
move b4
opponent {
  cxb4 -> {
    move cxb4
    leaf draw "king shuffle"
  }
}
"#;

    #[test]
    fn minimal_document() {
        let doc = parse_oracle(MINIMAL).unwrap();
        assert_eq!(doc.side, Color::White);
        assert_eq!(doc.node_count(), 4);
        let NodeKind::Own(edge) = &doc.tree.kind else {
            panic!()
        };
        assert_eq!(edge.san, "b4");
    }

    #[test]
    fn chain_branch_claim() {
        let doc =
            parse_oracle("oracle white\nmove b4\nopponent {\n  d4 bxc5 => mate black 47\n}\n")
                .unwrap();
        let (_, root_child) = doc.follow(&[0]);
        let NodeKind::Opponent(op) = &root_child.kind else {
            panic!()
        };
        let NodeKind::Own(own) = &op.branches[0].node.kind else {
            panic!()
        };
        assert_eq!(own.san, "bxc5");
        assert_eq!(
            own.node.kind,
            NodeKind::Leaf(Leaf::new(Claim::Mate {
                defender: Color::Black,
                moves: 47
            }))
        );
    }

    #[test]
    fn illegal_move_is_reported_with_path() {
        let err =
            parse_oracle("oracle white\nmove b4\nopponent {\n  b4 => checkmate\n}\n").unwrap_err();
        match err {
            OracleError::IllegalMoveInLine { path, .. } => assert_eq!(path, "b4 b4"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        for (text, want_syntax) in [
            ("oracle green\nleaf checkmate", true),
            ("oracle white\nopponent { }", true),
            ("oracle black\nmove b4 leaf checkmate", true),
            (
                "oracle white\nmove b4\nopponent {\n  c4 => ref nowhere\n}",
                false,
            ),
            ("oracle white\nleaf draw \"x\" leaf draw \"y\"", true),
            ("oracle white\nleaf draw \"unterminated", true),
        ] {
            let err = parse_oracle(text).unwrap_err();
            assert_eq!(
                matches!(err, OracleError::Syntax { .. }),
                want_syntax,
                "{text}: {err}"
            );
        }
    }

    #[test]
    fn ids_and_references() {
        let text = r#"
oracle white
move b4
id 1
opponent {
  id 1/1 c4 d4 => draw "blocked"
  cxb4 => ref 1/1
  default cannotwin black
}
"#;
        let doc = parse_oracle(text).unwrap();
        let (pos, node) = doc.resolve_variation("1/1").unwrap();
        assert_eq!(pos.fullmove_number(), 2);
        assert!(matches!(node.kind, NodeKind::Leaf(_)));
        assert!(doc.resolve_variation("2").is_err());
        let (root, _) = doc.resolve_variation("root").unwrap();
        assert_eq!(root, Position::initial());
    }

    #[test]
    fn justification_replays_from_claim_position() {
        let text = "oracle white\nmove b4\nopponent {\n  cxb4 cxb4 => draw \"x\" justify \"2... d4 3.e4\"\n}\n";
        let doc = parse_oracle(text).unwrap();
        let (_, node) = doc.follow(&[0, 0, 0]);
        let NodeKind::Leaf(leaf) = &node.kind else {
            panic!()
        };
        assert_eq!(leaf.justify_san, ["d4", "e4"]);
        let bad = text.replace("3.e4", "3.e5");
        assert!(matches!(
            parse_oracle(&bad),
            Err(OracleError::IllegalMoveInLine { .. })
        ));
    }

    #[test]
    fn prefix_moves() {
        let doc =
            parse_oracle("oracle black\nafter \"1.b4\"\nmove cxb4\nleaf cannotwin white").unwrap();
        assert_eq!(doc.prefix_san, ["b4"]);
        assert_eq!(doc.root.side_to_move(), Color::Black);
    }
}
