use gardner::build::{build_oracle, build_oracle_after, parse_guide, BuildError, BuildPolicy};
use gardner::oracle::{print_oracle, Claim, NodeKind};
use gardner::rules::{san_line, Color, Position};
use gardner::search::Budget;
use gardner::verify::{verify_document, Level, Status, VerifyOptions};

fn after(line: &str) -> (Position, Vec<gardner::rules::Move>) {
    let start = Position::initial();
    let (moves, _) = san_line(&start, line).unwrap();
    (start, moves)
}

fn assert_l1_clean(doc: &gardner::oracle::OracleDocument) {
    let r = verify_document("built", doc, &VerifyOptions::at(Level::L1));
    let fails: Vec<_> = r
        .records
        .iter()
        .filter(|r| r.status == Status::Fail)
        .collect();
    assert!(fails.is_empty(), "{fails:#?}");
}

#[test]
fn piece_up_build_is_reproducible() {
    let (start, prefix) = after("b4 Nd4");
    let mut policy = BuildPolicy::new(Color::White);
    policy.max_depth = 4;
    policy.mate_budget = Budget::nodes(20_000);
    let a = build_oracle_after(&start, &prefix, &policy).unwrap();
    let b = build_oracle_after(&start, &prefix, &policy).unwrap();
    assert_eq!(print_oracle(&a.document), print_oracle(&b.document));
    assert_eq!(a.log_json_lines(), b.log_json_lines());
    assert!(a.root_mate.is_none_or(|x| x <= 17));
    assert_l1_clean(&a.document);

    // One child per own node, full width at opponent nodes.
    assert_eq!(a.stats.max_own_children, 1);
    assert!(a.stats.max_own_per_line <= 2);
    assert!(a.stats.leaves > a.stats.own_nodes);
}

#[test]
fn guided_king_shuffle_closes_as_repetition() {
    let (start, prefix) = after("b4 cxb4 cxb4 d4 e4 f4 Bxf4 exf4 Qd2 Be5 Ke2");
    let root = prefix.iter().fold(start, |p, m| p.play(m));
    let mut policy = BuildPolicy::new(Color::White);
    policy.max_depth = 4;
    policy.mate_budget = Budget::nodes(5_000);
    policy.guide = parse_guide(&root, "Bd6 => Kf2").unwrap();
    let out = build_oracle_after(&start, &prefix, &policy).unwrap();
    assert_l1_clean(&out.document);

    // Bishop and king both return home, recreating the position after 5.Qd2.
    let NodeKind::Opponent(op) = &out.document.tree.kind else {
        panic!("root should be an opponent node")
    };
    let bd6 = op.branches.iter().find(|e| e.san == "Bd6").unwrap();
    let NodeKind::Own(kf2) = &bd6.node.kind else {
        panic!("{:?}", bd6.node)
    };
    assert_eq!(kf2.san, "Kf2");
    let NodeKind::Leaf(leaf) = &kf2.node.kind else {
        panic!("{:?}", kf2.node)
    };
    assert_eq!(
        leaf.claim,
        Claim::Draw {
            reason: "repetition".into()
        }
    );
}

#[test]
fn guide_errors_are_reported() {
    let root = Position::initial();
    assert!(matches!(
        parse_guide(&root, "=> Ke5"),
        Err(BuildError::GuideConflict { .. })
    ));
    assert!(matches!(
        parse_guide(&root, "b4 cxb4 Qxb1 => b5"),
        Err(BuildError::GuideSyntax { line: 1, .. })
    ));
    assert!(matches!(
        parse_guide(&root, "\n\nb4"),
        Err(BuildError::GuideSyntax { line: 3, .. })
    ));
    let g = parse_guide(&root, "# nothing but a comment\n=> b4").unwrap();
    assert_eq!(g.get(&root.hash()).map(String::as_str), Some("b4"));
}

#[test]
fn mated_root_builds_a_single_leaf() {
    let root = gardner::rules::parse_fen("4k/4Q/4K/5/5 b 0 1").unwrap();
    let out = build_oracle(&root, &BuildPolicy::new(Color::White)).unwrap();
    assert_eq!(out.document.node_count(), 1);
    assert_eq!(out.root_mate, Some(0));
}
