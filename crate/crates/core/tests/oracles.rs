use gardner::oracle::{bundled, bundled_document, parse_oracle, print_oracle, Completeness};
use gardner::verify::{
    branch_sites, delete_branch, verify_document, Level, Obligation, Status, VerifyOptions,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bundled_files_are_canonical() {
    for e in bundled() {
        let doc = parse_oracle(e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert_eq!(
            print_oracle(&doc),
            e.text,
            "{} is not in canonical form",
            e.name
        );
    }
}

#[test]
fn every_bundled_document_is_covered_and_legal() {
    let opts = VerifyOptions::at(Level::L1);
    for e in bundled() {
        let doc = bundled_document(e.name).unwrap();
        let r = verify_document(e.name, &doc, &opts);
        let fails: Vec<_> = r
            .records
            .iter()
            .filter(|r| r.status == Status::Fail)
            .collect();
        assert!(fails.is_empty(), "{}: {fails:#?}", e.name);
        assert!(r.summary.pass > 0);
    }
}

#[test]
fn manifest_marks_the_main_trees_complete() {
    let complete: Vec<_> = bundled()
        .iter()
        .filter(|e| e.completeness == Completeness::Complete)
        .map(|e| e.name)
        .collect();
    for name in ["white-b4", "black-b4", "black-c4", "black-nb4", "black-nd4"] {
        assert!(complete.contains(&name), "{name}");
    }
}

#[test]
fn deleting_any_branch_breaks_coverage() {
    let opts = VerifyOptions::at(Level::L1);
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for e in bundled()
        .iter()
        .filter(|e| e.completeness == Completeness::Complete)
    {
        let doc = bundled_document(e.name).unwrap();
        let sites: Vec<_> = branch_sites(&doc)
            .into_iter()
            .filter(|s| !s.under_default)
            .collect();
        if sites.is_empty() {
            continue;
        }
        let picks: Vec<_> = (0..20)
            .map(|_| sites.choose(&mut rng).unwrap().clone())
            .collect();
        for site in picks {
            let cut = delete_branch(&doc, &site);
            let r = verify_document(e.name, &cut, &opts);
            let caught = r
                .records
                .iter()
                .any(|r| r.status == Status::Fail && r.obligation == Obligation::Coverage);
            assert!(
                caught,
                "{}: deleting {} at {:?} went unnoticed",
                e.name, site.san, site.node_path
            );
        }
    }
}
