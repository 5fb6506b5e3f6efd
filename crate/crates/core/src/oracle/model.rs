use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::rules::{format_san, Color, Move, Position};

/// Terminal judgement attached to a position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `defender` is mated within `moves` attacker moves.
    Mate {
        defender: Color,
        moves: u32,
    },
    /// The side to move is checkmated now.
    Checkmate,
    Draw {
        reason: String,
    },
    /// `side` cannot win from here.
    CannotWin {
        side: Color,
    },
    /// Same position as the node labelled `id`.
    Ref {
        id: String,
    },
    /// Doubtful or missing annotation; never counts as verified.
    Unverified {
        note: String,
    },
}

impl Claim {
    /// Short human form used in reports and PGN comments.
    pub fn describe(&self) -> String {
        match self {
            Claim::Mate { defender, moves } => format!("mate in <={moves} ({defender} is mated)"),
            Claim::Checkmate => "checkmate".into(),
            Claim::Draw { reason } => format!("draw: {reason}"),
            Claim::CannotWin { side } => format!("{side} cannot win"),
            Claim::Ref { id } => format!("transposition to {id}"),
            Claim::Unverified { note } => format!("unverified: {note}"),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A claim plus the optional free-text note and justifying line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub claim: Claim,
    pub note: Option<String>,
    /// Moves played from the claim position; illustration only.
    pub justify: Vec<Move>,
    pub justify_san: Vec<String>,
}

impl Leaf {
    pub fn new(claim: Claim) -> Leaf {
        Leaf {
            claim,
            note: None,
            justify: Vec::new(),
            justify_san: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Leaf {
        self.note = Some(note.into());
        self
    }
}

/// A move out of a node, with its canonical SAN in the parent position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub mv: Move,
    pub san: String,
    pub node: Node,
}

impl Edge {
    pub fn new(parent: &Position, mv: Move, node: Node) -> Edge {
        Edge {
            mv,
            san: format_san(parent, &mv),
            node,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OpponentNode {
    pub branches: Vec<Edge>,
    /// Covers every opponent move without a branch.
    pub default: Option<Leaf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// The oracle side plays exactly one move.
    Own(Box<Edge>),
    Opponent(OpponentNode),
    Leaf(Leaf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: Option<String>,
    pub kind: NodeKind,
}

impl Node {
    pub fn leaf(leaf: Leaf) -> Node {
        Node {
            id: None,
            kind: NodeKind::Leaf(leaf),
        }
    }

    pub fn own(edge: Edge) -> Node {
        Node {
            id: None,
            kind: NodeKind::Own(Box::new(edge)),
        }
    }

    pub fn opponent(op: OpponentNode) -> Node {
        Node {
            id: None,
            kind: NodeKind::Opponent(op),
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Node {
        self.id = Some(id.into());
        self
    }

    /// Child edges in order (one for an own node, none for a leaf).
    pub fn edges(&self) -> &[Edge] {
        match &self.kind {
            NodeKind::Own(e) => std::slice::from_ref(e.as_ref()),
            NodeKind::Opponent(op) => &op.branches,
            NodeKind::Leaf(_) => &[],
        }
    }

    pub fn edges_mut(&mut self) -> &mut [Edge] {
        match &mut self.kind {
            NodeKind::Own(e) => std::slice::from_mut(e.as_mut()),
            NodeKind::Opponent(op) => &mut op.branches,
            NodeKind::Leaf(_) => &mut [],
        }
    }

    pub fn count(&self) -> usize {
        1 + self.edges().iter().map(|e| e.node.count()).sum::<usize>()
    }
}

/// Everything known about a node during a traversal.
pub struct Visit<'a> {
    pub node: &'a Node,
    pub pos: &'a Position,
    /// Indices of the edges taken from the root.
    pub path: &'a [usize],
    /// SAN of the moves taken from the root.
    pub moves: &'a [String],
    /// Hashes of every earlier position, starting with the document start.
    pub history: &'a [u64],
}

impl Visit<'_> {
    pub fn path_string(&self) -> String {
        if self.moves.is_empty() {
            "(root)".into()
        } else {
            self.moves.join(" ")
        }
    }
}

/// A draw oracle: a strategy tree for `side` rooted at `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDocument {
    pub side: Color,
    /// Position the document text starts from.
    pub start: Position,
    /// Moves leading from `start` to `root`, outside the tree.
    pub prefix: Vec<Move>,
    pub prefix_san: Vec<String>,
    pub root: Position,
    pub tree: Node,
    pub(crate) ids: BTreeMap<String, Vec<usize>>,
}

impl OracleDocument {
    /// Assembles a document, indexing and checking its ids.
    pub fn new(
        side: Color,
        start: Position,
        prefix: Vec<Move>,
        tree: Node,
    ) -> Result<OracleDocument, OracleError> {
        let mut root = start;
        let mut prefix_san = Vec::with_capacity(prefix.len());
        for m in &prefix {
            prefix_san.push(format_san(&root, m));
            root = root
                .apply_move(m)
                .map_err(|e| OracleError::IllegalMoveInLine {
                    path: prefix_san.join(" "),
                    reason: e.to_string(),
                })?;
        }
        let mut doc = OracleDocument {
            side,
            start,
            prefix,
            prefix_san,
            root,
            tree,
            ids: BTreeMap::new(),
        };
        doc.index_ids()?;
        Ok(doc)
    }

    fn index_ids(&mut self) -> Result<(), OracleError> {
        fn go(
            node: &Node,
            path: &mut Vec<usize>,
            ids: &mut BTreeMap<String, Vec<usize>>,
        ) -> Result<(), OracleError> {
            if let Some(id) = &node.id {
                if is_root_id(id) || ids.insert(id.clone(), path.clone()).is_some() {
                    return Err(OracleError::DuplicateId(id.clone()));
                }
            }
            for (i, e) in node.edges().iter().enumerate() {
                path.push(i);
                go(&e.node, path, ids)?;
                path.pop();
            }
            Ok(())
        }
        let mut ids = BTreeMap::new();
        go(&self.tree, &mut Vec::new(), &mut ids)?;
        self.ids = ids;
        let mut dangling = None;
        self.visit(&mut |v| {
            for leaf in leaves_of(v.node) {
                if let Claim::Ref { id } = &leaf.claim {
                    if !is_root_id(id) && !self.ids.contains_key(id) && dangling.is_none() {
                        dangling = Some(id.clone());
                    }
                }
            }
        });
        match dangling {
            Some(id) => Err(OracleError::DanglingReference(id)),
            None => Ok(()),
        }
    }

    /// Swaps in a new tree, tolerating references left dangling by the edit.
    pub(crate) fn replace_tree(&mut self, tree: Node) {
        self.tree = tree;
        match self.index_ids() {
            Ok(()) | Err(OracleError::DanglingReference(_)) => {}
            Err(e) => panic!("tree edit produced {e}"),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = (&str, &[usize])> {
        self.ids.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Edge-index path of a labelled node.
    pub fn id_path(&self, id: &str) -> Option<&[usize]> {
        if is_root_id(id) {
            return Some(&[]);
        }
        self.ids.get(id).map(Vec::as_slice)
    }

    /// Position and subtree reached by following the labelled variation.
    pub fn resolve_variation(&self, id: &str) -> Result<(Position, &Node), OracleError> {
        let path = self
            .id_path(id)
            .ok_or_else(|| OracleError::UnknownVariationId(id.to_string()))?;
        Ok(self.follow(path))
    }

    /// Position and node at an edge-index path (which must exist).
    pub fn follow(&self, path: &[usize]) -> (Position, &Node) {
        let mut pos = self.root;
        let mut node = &self.tree;
        for &i in path {
            let e = &node.edges()[i];
            pos = pos.play(&e.mv);
            node = &e.node;
        }
        (pos, node)
    }

    /// Hashes of the positions before `root` (start and prefix positions).
    pub fn prefix_history(&self) -> Vec<u64> {
        let mut pos = self.start;
        let mut out = Vec::with_capacity(self.prefix.len());
        for m in &self.prefix {
            out.push(pos.hash());
            pos = pos.play(m);
        }
        out
    }

    /// Depth-first, pre-order traversal in document order.
    pub fn visit(&self, f: &mut dyn FnMut(&Visit)) {
        fn go(
            node: &Node,
            pos: &Position,
            path: &mut Vec<usize>,
            moves: &mut Vec<String>,
            history: &mut Vec<u64>,
            f: &mut dyn FnMut(&Visit),
        ) {
            f(&Visit {
                node,
                pos,
                path,
                moves,
                history,
            });
            for (i, e) in node.edges().iter().enumerate() {
                let next = pos.play(&e.mv);
                path.push(i);
                moves.push(e.san.clone());
                history.push(pos.hash());
                go(&e.node, &next, path, moves, history, f);
                history.pop();
                moves.pop();
                path.pop();
            }
        }
        let mut history = self.prefix_history();
        go(
            &self.tree,
            &self.root,
            &mut Vec::new(),
            &mut Vec::new(),
            &mut history,
            f,
        );
    }

    pub fn node_count(&self) -> usize {
        self.tree.count()
    }

    /// Move number and colour prefix for the position `plies` into the tree.
    pub fn label_for(&self, path_moves: &[String]) -> String {
        let mut out = String::new();
        let mut pos = self.root;
        let mut first = true;
        for san in path_moves {
            let n = pos.fullmove_number();
            match pos.side_to_move() {
                Color::White => out.push_str(&format!("{n}.{san} ")),
                Color::Black if first => out.push_str(&format!("{n}...{san} ")),
                Color::Black => out.push_str(&format!("{san} ")),
            }
            first = false;
            match crate::rules::parse_san(&pos, san) {
                Ok(m) => pos = pos.play(&m),
                Err(_) => break,
            }
        }
        out.trim_end().to_string()
    }
}

pub fn is_root_id(id: &str) -> bool {
    id.is_empty() || id == "root"
}

/// The leaf claim at a node, or its default claim.
pub fn leaves_of(node: &Node) -> Vec<&Leaf> {
    match &node.kind {
        NodeKind::Leaf(l) => vec![l],
        NodeKind::Opponent(op) => op.default.iter().collect(),
        NodeKind::Own(_) => Vec::new(),
    }
}
