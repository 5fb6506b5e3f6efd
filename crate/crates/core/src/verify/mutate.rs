//! Tree edits for mutation testing.

use crate::oracle::{Node, NodeKind, OracleDocument};

/// One branch of an opponent node, addressed by the node's edge path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSite {
    pub node_path: Vec<usize>,
    pub index: usize,
    pub san: String,
    /// The node has a default claim, so deleting this branch leaves the
    /// move covered.
    pub under_default: bool,
}

/// Every opponent-node branch in document order.
pub fn branch_sites(doc: &OracleDocument) -> Vec<BranchSite> {
    fn go(node: &Node, path: &mut Vec<usize>, out: &mut Vec<BranchSite>) {
        if let NodeKind::Opponent(op) = &node.kind {
            for (i, e) in op.branches.iter().enumerate() {
                out.push(BranchSite {
                    node_path: path.clone(),
                    index: i,
                    san: e.san.clone(),
                    under_default: op.default.is_some(),
                });
            }
        }
        for (i, e) in node.edges().iter().enumerate() {
            path.push(i);
            go(&e.node, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(&doc.tree, &mut Vec::new(), &mut out);
    out
}

/// `doc` without the branch at `site`. References into the removed subtree
/// are left dangling for the verifier to report.
pub fn delete_branch(doc: &OracleDocument, site: &BranchSite) -> OracleDocument {
    let mut tree = doc.tree.clone();
    let mut node = &mut tree;
    for &i in &site.node_path {
        node = &mut node.edges_mut()[i].node;
    }
    match &mut node.kind {
        NodeKind::Opponent(op) => {
            op.branches.remove(site.index);
        }
        _ => panic!("branch site does not address an opponent node"),
    }
    let mut out = doc.clone();
    out.replace_tree(tree);
    out
}
